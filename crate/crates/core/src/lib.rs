//! Hyperbolic views of higher-dimensional integer grids.

pub mod color;
pub mod engine_io;
pub mod honeycomb3d;
pub mod hypmath;
pub mod scene2d;
pub mod tiling2d;
pub mod worlds;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hyperboloid.md")]
    mod hyperboloid {}
    #[doc = include_str!("../../../book/src/tiling.md")]
    mod tiling {}
    #[doc = include_str!("../../../book/src/frames.md")]
    mod frames {}
    #[doc = include_str!("../../../book/src/worlds.md")]
    mod worlds {}
    #[doc = include_str!("../../../book/src/protocol.md")]
    mod protocol {}
    #[doc = include_str!("../../../book/src/honeycombs.md")]
    mod honeycombs {}
}

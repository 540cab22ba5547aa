//! Reference checks for the game worlds, written against plain integer
//! arithmetic rather than the engine's own helpers.

use hypergrid::engine_io::{Command, Message, Session, SessionConfig};
use hypergrid::worlds::{Level, Status, World, WorldId};
use num::{BigInt, BigRational};

use super::grid_bfs;

/// Walls of the house: the shell `max|zᵢ| = 2` of the first three axes,
/// inside the slice where every later axis is zero.
pub fn house_wall(z: &[i64]) -> bool {
    z[3..].iter().all(|&x| x == 0) && z[..3].iter().map(|x| x.abs()).max() == Some(2)
}

pub struct HouseReport {
    /// Shortest path from outside to the center within the slice `z₄ = 0`.
    pub slice_path: Option<usize>,
    /// Shortest path from the spawn to the center in four dimensions.
    pub spawn_path: Option<usize>,
    /// Whether the engine agrees with [`house_wall`] on a box of cells.
    pub walls_agree: bool,
    /// Status after replaying the shortest path through a session.
    pub replay_status: Status,
}

pub fn house() -> Result<HouseReport, String> {
    let center = [0, 0, 0, 0];
    let in_slice = |z: &[i64]| z[3] == 0 && z.iter().all(|x| x.abs() <= 6);
    let slice_path = grid_bfs(4, &[4, 0, 0, 0], &center, &house_wall, &in_slice, 100_000);
    let near = |z: &[i64]| z.iter().all(|x| x.abs() <= 4);
    let spawn = [0, 0, 0, 2];
    let spawn_path = grid_bfs(4, &spawn, &center, &house_wall, &near, 100_000);

    let mut session = Session::new(SessionConfig::new(WorldId::House, 4, 0)).map_err(|e| e.to_string())?;
    let World::Puzzle(p) = session.world().clone() else {
        return Err("house is not a puzzle world".into());
    };
    if p.player != spawn {
        return Err(format!("spawn is {:?}", p.player));
    }
    let mut walls_agree = true;
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                for t in -1..=1 {
                    let z = [a, b, c, t];
                    let engine = p.classify(&z) == hypergrid::worlds::CellKind::Wall;
                    walls_agree &= engine == house_wall(&z);
                }
            }
        }
    }
    for _ in 0..spawn_path.unwrap_or(0) {
        session.handle(&Command::Move { dir: 3, sign: -1 });
    }
    Ok(HouseReport {
        slice_path,
        spawn_path,
        walls_agree,
        replay_status: session.world().status(),
    })
}

/// The two-attackers position as a level file.
pub const TWO_ATTACKERS: &str = r#"{"format":1,"world":"rogue","d":3,"player":[0,0,0],
    "enemies":[[1,0,0],[0,1,0]]}"#;

/// The player runs away, alternating `−x` and `−z`.
pub const FLEE: [(usize, i8); 2] = [(0, -1), (2, -1)];

/// Replays `turns` flight attempts from the two-attackers position and
/// returns, for each completed enemy phase, the L1 distances of both
/// enemies to the player.
pub fn rogue_replay(turns: usize) -> Result<Vec<Vec<i64>>, String> {
    let level = Level::parse(TWO_ATTACKERS).map_err(|e| e.to_string())?;
    let config = SessionConfig {
        level: Some(level),
        ..SessionConfig::new(WorldId::Rogue, 3, 0)
    };
    let mut session = Session::new(config).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for t in 0..turns {
        let (dir, sign) = FLEE[t % FLEE.len()];
        let msgs = session.handle(&Command::Move { dir, sign });
        let last = msgs.last().and_then(Message::frame).ok_or("no frame")?;
        if last.frame.events.iter().any(|e| e.payload["rejected"] == true) {
            return Err(format!("turn {t}: move rejected"));
        }
        let World::Rogue(r) = session.world() else {
            return Err("not a rogue world".into());
        };
        if r.status != Status::Playing {
            break;
        }
        let l1 = |e: &Vec<i64>| e.iter().zip(&r.player).map(|(a, b)| (a - b).abs()).sum::<i64>();
        out.push(r.enemies.iter().map(l1).collect());
    }
    Ok(out)
}

/// Exponents of 2, 3, 5 and 7 in each pitch generator.
const PRIME_EXPONENTS: [[i64; 4]; 4] = [
    [-1, 1, 0, 0], // 3/2
    [2, -1, 0, 0], // 4/3
    [-2, 0, 1, 0], // 5/4
    [0, 0, -1, 1], // 7/5
];

/// Pitch ratio of a cell by factoring into primes first.
pub fn pitch_oracle(cell: &[i64]) -> BigRational {
    let mut exps = [0i64; 4];
    for (g, &e) in PRIME_EXPONENTS.iter().zip(cell) {
        for (x, p) in exps.iter_mut().zip(g) {
            *x += p * e;
        }
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for (&p, &e) in [2u32, 3, 5, 7].iter().zip(&exps) {
        let power = BigInt::from(p).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            num *= power;
        } else {
            den *= power;
        }
    }
    BigRational::new(num, den)
}

/// Runs `lines` (protocol JSON) through a fresh session and returns the
/// whole output stream.
pub fn frame_stream(config: &SessionConfig, lines: &[&str]) -> Result<String, String> {
    let mut session = Session::new(config.clone()).map_err(|e| e.to_string())?;
    let mut out = session.current_frame().map_err(|e| e.to_string())?.to_line();
    out.push('\n');
    for line in lines {
        for m in session.handle_line(line) {
            out.push_str(&m.to_line());
            out.push('\n');
        }
    }
    Ok(out)
}

/// A command log touching every command type.
pub const MIXED_LOG: [&str; 9] = [
    r#"{"type":"move","dir":0,"sign":1}"#,
    r#"{"type":"move","dir":2,"sign":-1}"#,
    r#"{"type":"wait"}"#,
    r#"{"type":"click","at":[0.3,0.1]}"#,
    r#"{"type":"slider","name":"altitude_scale","value":0.25}"#,
    r#"{"type":"move","dir":9,"sign":1}"#,
    r#"{"type":"mode","world":"grid","d":5}"#,
    r#"{"type":"move","dir":4,"sign":-1}"#,
    r#"{"type":"reset","seed":3}"#,
];

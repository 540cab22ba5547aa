//! Command-line front end.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::honeycomb3d::{place_camera, render, CameraSpec, HoneycombKind, RenderOptions, Scene, SceneId};
use crate::worlds::{Level, WorldId};

use super::image_io::{write_image, ImageFormat};
use super::protocol::{parse_script_line, Message};
use super::raster::rasterize;
use super::session::{Session, SessionConfig};
use super::{server, EngineError};

#[derive(Debug, Parser)]
#[command(name = "hypergrid", version, about = "Walk higher-dimensional grids on hyperbolic tilings")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Draw one view of a world on the Poincaré disk.
    #[command(name = "render-2d")]
    Render2d(Render2d),
    /// Ray-trace a scene of a three-dimensional honeycomb.
    #[command(name = "render-3d")]
    Render3d(Render3d),
    /// Run a script of commands headlessly and print the final state.
    Play(Play),
    /// Serve the line protocol over TCP, one session per connection.
    Serve(Serve),
}

#[derive(Debug, Args)]
struct WorldArgs {
    #[arg(long, default_value = "grid")]
    world: WorldId,
    /// Grid dimension; defaults to the world's own.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Level file for the roguelike or Sokoban.
    #[arg(long)]
    level: Option<PathBuf>,
}

impl WorldArgs {
    fn config(&self) -> Result<SessionConfig, EngineError> {
        let level = match &self.level {
            Some(path) => Some(Level::parse(&std::fs::read_to_string(path)?)?),
            None => None,
        };
        let (world, d) = match &level {
            Some(l) => (l.world, l.d),
            None => (self.world, self.d.unwrap_or(self.world.default_d())),
        };
        Ok(SessionConfig {
            level,
            ..SessionConfig::new(world, d, self.seed)
        })
    }
}

#[derive(Debug, Args)]
struct Render2d {
    #[command(flatten)]
    world: WorldArgs,
    #[arg(long)]
    out: PathBuf,
    /// Image side in pixels.
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(1..=8192))]
    size: u32,
    #[arg(long, default_value_t = crate::scene2d::DEFAULT_CUTOFF)]
    cutoff: f64,
    /// Defaults to the output file's extension.
    #[arg(long, value_enum)]
    format: Option<ImageFormat>,
}

#[derive(Debug, Args)]
struct Render3d {
    /// `344` or `534`.
    #[arg(long, default_value = "344")]
    honeycomb: HoneycombKind,
    /// Scene letter `A` to `J`.
    #[arg(long, default_value = "A")]
    scene: SceneId,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 320, value_parser = clap::value_parser!(u32).range(1..=8192))]
    width: u32,
    #[arg(long, default_value_t = 240, value_parser = clap::value_parser!(u32).range(1..=8192))]
    height: u32,
    /// `x,y,z` offset from the start cell's center, optionally followed by
    /// yaw and pitch in degrees.
    #[arg(long, value_parser = parse_camera)]
    camera: Option<CameraArg>,
    #[arg(long, default_value_t = 600)]
    max_steps: u32,
    /// Horizontal field of view in degrees.
    #[arg(long, default_value_t = 90.0)]
    fov: f64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum)]
    format: Option<ImageFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct CameraArg {
    offset: [f64; 3],
    angles: Option<[f64; 2]>,
}

fn parse_camera(s: &str) -> Result<CameraArg, String> {
    let nums: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect::<Result<_, _>>()?;
    if nums.iter().any(|x| !x.is_finite()) {
        return Err("camera values must be finite".into());
    }
    match nums.as_slice() {
        [x, y, z] => Ok(CameraArg {
            offset: [*x, *y, *z],
            angles: None,
        }),
        [x, y, z, yaw, pitch] => Ok(CameraArg {
            offset: [*x, *y, *z],
            angles: Some([*yaw, *pitch]),
        }),
        _ => Err("expected x,y,z or x,y,z,yaw,pitch".into()),
    }
}

#[derive(Debug, Args)]
struct Play {
    #[command(flatten)]
    world: WorldArgs,
    /// Script file, `-` for standard input.
    #[arg(long)]
    script: PathBuf,
    /// Also write every message as NDJSON here.
    #[arg(long)]
    frames: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Serve {
    #[command(flatten)]
    world: WorldArgs,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    #[arg(long, default_value_t = 7878)]
    port: u16,
}

fn render_2d(a: &Render2d) -> Result<(), EngineError> {
    let config = SessionConfig {
        cutoff: a.cutoff,
        ..a.world.config()?
    };
    let mut session = Session::new(config)?;
    let Message::Frame(f) = session.current_frame()? else {
        unreachable!("current_frame returns a frame")
    };
    let img = rasterize(&f.frame, a.size);
    write_image(&img, &a.out, a.format.unwrap_or(ImageFormat::from_path(&a.out)))
}

fn render_3d(a: &Render3d) -> Result<(), EngineError> {
    let spec = a.honeycomb.spec();
    let scene = Scene::new(a.scene, a.honeycomb.d());
    let camera = match a.camera {
        None => CameraSpec::looking_at_face(&spec, 0),
        Some(c) => {
            let [yaw, pitch] = match c.angles {
                Some([y, p]) => [y.to_radians(), p.to_radians()],
                None => {
                    let base = CameraSpec::looking_at_face(&spec, 0);
                    [base.yaw, base.pitch]
                }
            };
            CameraSpec {
                offset: c.offset,
                yaw,
                pitch,
            }
        }
    };
    let pose = place_camera(&spec, &scene.start_cell(), &camera)?;
    let opts = RenderOptions {
        width: a.width,
        height: a.height,
        fov_deg: a.fov,
        max_steps: a.max_steps,
        threads: Some(a.threads),
    };
    let img = render(&spec, &|z| scene.fill(z), &pose, &opts)?;
    write_image(&img, &a.out, a.format.unwrap_or(ImageFormat::from_path(&a.out)))
}

fn play(a: &Play, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), EngineError> {
    let text = if a.script.as_os_str() == "-" {
        let mut s = String::new();
        for line in std::io::stdin().lock().lines() {
            s.push_str(&line?);
            s.push('\n');
        }
        s
    } else {
        std::fs::read_to_string(&a.script)?
    };
    let mut session = Session::new(a.world.config()?)?;
    let mut log: Vec<String> = vec![session.current_frame()?.to_line()];
    for (n, line) in text.lines().enumerate() {
        match parse_script_line(line) {
            Ok(Some(cmd)) => {
                for m in session.handle(&cmd) {
                    match &m {
                        Message::Error(e) => writeln!(stderr, "line {}: {}", n + 1, e.message)?,
                        Message::Frame(f) => {
                            for e in f.frame.events.iter().filter(|e| e.payload["rejected"] == true) {
                                writeln!(stderr, "line {}: {}", n + 1, e.payload["message"].as_str().unwrap_or(""))?;
                            }
                        }
                        Message::Bye => {}
                    }
                    log.push(m.to_line());
                }
            }
            Ok(None) => {}
            Err(e) => writeln!(stderr, "line {}: {}", n + 1, e.message)?,
        }
        if session.is_closed() {
            break;
        }
    }
    if let Some(path) = &a.frames {
        let mut body = log.join("\n");
        body.push('\n');
        std::fs::write(path, body)?;
    }
    writeln!(stdout, "{}", super::canonical::value_to_canonical(&session.state_json()))?;
    Ok(())
}

/// Runs the command line; returns the process exit code. Usage errors
/// exit with 2, runtime failures with 1.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Cmd::Render2d(a) => render_2d(a),
        Cmd::Render3d(a) => render_3d(a),
        Cmd::Play(a) => play(a, stdout, stderr),
        Cmd::Serve(a) => a
            .world
            .config()
            .and_then(|config| server::serve(&a.host, a.port, config, |addr| {
                let _ = writeln!(std::io::stderr(), "listening on {addr}");
            })),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tweb_core::focal::{self, Point};
use tweb_core::verify::{self, Check, SuiteConfig, VerificationReport};
use tweb_core::viz::{self, ChartWindow, LatticeSpec, RenderOptions, SvgScene};
use tweb_core::webs::{self, WebCoords, WebId};
use tweb_core::Error;

#[derive(Parser)]
#[command(name = "tweb", version, about = "Confocal conic and Apollonian pencil webs")]
struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Focal measures f, g, h, e of a quadrant point.
    Eval {
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        point: (f64, f64),
    },
    /// Image of chart coordinates under a web map.
    Map {
        #[arg(long)]
        web: WebId,
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        coords: (f64, f64),
    },
    /// Chart coordinates of a quadrant point.
    Invert {
        #[arg(long)]
        web: WebId,
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        point: (f64, f64),
    },
    /// Run the verification suite; exits 1 unless every report passes.
    Verify {
        /// Restrict to one web (tangency sweeps are web-independent).
        #[arg(long)]
        web: Option<WebId>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Override every per-check sample count.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Render a web lattice figure; unset flags fall back to the web's preset.
    Render {
        #[arg(long)]
        web: WebId,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long, value_parser = pair, allow_hyphen_values = true)]
        shift: Option<(f64, f64)>,
        /// X0,X1,Y0,Y1 in chart coordinates.
        #[arg(long, value_parser = window, allow_hyphen_values = true)]
        window: Option<ChartWindow>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tangency sweep for a scaling factor, with an optional figure.
    Tangency {
        #[arg(long, allow_hyphen_values = true)]
        k1: f64,
        #[arg(long, default_value_t = verify::DEFAULT_TANGENCY_MEMBERS)]
        members: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    LevelSets,
    ClosedForms,
    Roundtrip,
    Jacobian,
    Hexagon,
    Tangency,
}

impl Suite {
    fn checks(self) -> Vec<Check> {
        match self {
            Suite::All => Check::ALL.to_vec(),
            Suite::LevelSets => vec![Check::LevelSets],
            Suite::ClosedForms => vec![Check::ClosedForms],
            Suite::Roundtrip => vec![Check::Roundtrip],
            Suite::Jacobian => vec![Check::Jacobian],
            Suite::Hexagon => vec![Check::Hexagon],
            Suite::Tangency => vec![Check::Tangency],
        }
    }
}

fn numbers(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", parts.len()));
    }
    Ok(parts)
}

fn pair(s: &str) -> Result<(f64, f64), String> {
    let v = numbers(s, 2)?;
    Ok((v[0], v[1]))
}

fn window(s: &str) -> Result<ChartWindow, String> {
    let v = numbers(s, 4)?;
    Ok(ChartWindow { x_min: v[0], x_max: v[1], y_min: v[2], y_max: v[3] })
}

enum Outcome {
    Done,
    /// Ran to completion but some check failed.
    Failed,
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable output"));
}

fn write_scene(scene: &SvgScene, out: &PathBuf) -> Result<(), Error> {
    std::fs::write(out, scene.to_svg())
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", out.display())))
}

fn summarize(reports: &[VerificationReport]) {
    for r in reports {
        let web = r.web.map_or("-".to_owned(), |w| w.to_string());
        println!(
            "{:<5} {:<14} {:<3} n={:<6} max_error={:.3e} tol={:.0e}",
            if r.passed { "PASS" } else { "FAIL" },
            r.check_name,
            web,
            r.samples,
            r.max_error,
            r.tolerance
        );
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} reports, {} failed", reports.len(), failed);
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Eval { point: (s, t) } => {
            let m = focal::measures(Point::new(s, t))?;
            if pretty {
                println!("a={} b={}\nf={} g={} h={} e={}", m.a, m.b, m.f, m.g, m.h, m.e);
            } else {
                emit(&m);
            }
        }
        Command::Map { web, coords: (x, y) } => {
            let p = webs::forward(web, WebCoords::new(x, y))?;
            if pretty {
                println!("{web}({x}, {y}) = ({}, {})", p.s, p.t);
            } else {
                emit(&p);
            }
        }
        Command::Invert { web, point: (s, t) } => {
            let c = webs::inverse(web, Point::new(s, t))?;
            if pretty {
                println!("{web}^-1({s}, {t}) = ({}, {})", c.x, c.y);
            } else {
                emit(&c);
            }
        }
        Command::Verify { web, suite, seed, samples } => {
            let config = SuiteConfig {
                webs: web.map_or_else(|| WebId::ALL.to_vec(), |w| vec![w]),
                checks: suite.checks(),
                seed,
                samples,
            };
            let reports = verify::run_suite(&config)?;
            if pretty {
                summarize(&reports);
            } else {
                emit(&reports);
            }
            if !verify::all_passed(&reports) {
                return Ok(Outcome::Failed);
            }
        }
        Command::Render { web, step, shift, window, out } => {
            let mut spec = LatticeSpec::preset(web);
            if let Some(step) = step {
                spec.step = step;
            }
            if let Some(shift) = shift {
                spec.shift = shift;
            }
            if let Some(window) = window {
                spec.window = window;
            }
            let scene = viz::render_web_lattice(&spec, &RenderOptions::default())?;
            write_scene(&scene, &out)?;
            let vertices: usize = scene.polylines.iter().map(|p| p.points.len()).sum();
            if pretty {
                println!("{}: {} curves, {vertices} vertices", out.display(), scene.polylines.len());
            } else {
                emit(&serde_json::json!({
                    "out": out,
                    "curves": scene.polylines.len(),
                    "vertices": vertices,
                }));
            }
        }
        Command::Tangency { k1, members, out } => {
            let report = verify::verify_tangency_sweep(k1, members)?;
            if let Some(out) = &out {
                let scene = viz::render_tangency_figure(k1, members, &RenderOptions::default())?;
                write_scene(&scene, out)?;
            }
            if pretty {
                summarize(std::slice::from_ref(&report));
            } else {
                emit(&report);
            }
            if !report.passed {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            let body = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}

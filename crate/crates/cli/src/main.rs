//! `rkd`: command-line access to rail arcs and rail knotoid diagrams.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 usage error, 3 when
//! `equiv` finds no path within its bounds.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rail_knotoid::geometry::{perturb, project_perpendicular, project_railplane, random_arc, RailArc3D};
use rail_knotoid::invariants::{f2_normal_form, f2_word, normalized_bracket, rail_writhe, writhe};
use rail_knotoid::io::{
    parse_arc, parse_diagram, parse_knotoid, parse_theta, serialize_arc, serialize_diagram, serialize_knotoid,
    serialize_theta, IoError,
};
use rail_knotoid::isotopy::{decompose_to_nice, random_isotopy, TriangleMove3D};
use rail_knotoid::knotoid::KnotoidDiagram;
use rail_knotoid::moves::{
    apply_move, enumerate_creations, enumerate_neutral, enumerate_reductions, kind_of, simplify, MoveSite,
};
use rail_knotoid::render::{render_diagram, render_knotoid};
use rail_knotoid::search::{connect, SearchOutcome};
use rail_knotoid::theta::{from_theta, to_theta};
use rail_knotoid::RailDiagram;

#[derive(Parser)]
#[command(name = "rkd", version, about = "Rail arcs and rail knotoid diagrams")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a file of any supported format.
    Validate { file: PathBuf },
    /// Project a rail arc to a diagram.
    Project {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "rail")]
        plane: Plane,
    },
    /// Move a rail arc's vertices to a nearby generic position.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// List or apply diagram moves.
    Moves {
        #[command(subcommand)]
        cmd: MovesCmd,
    },
    /// Greedily remove crossings.
    Simplify { file: PathBuf },
    /// Search for a move sequence between two diagrams.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
    },
    /// Compute an invariant.
    Invariant {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Print a random generic rail arc.
    RandomArc {
        #[arg(long)]
        segments: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Apply random triangle moves to a rail arc; moves go to stderr.
    RandomIsotopy {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Turn one triangle move on an arc into diagram moves.
    Decompose {
        file: PathBuf,
        #[arg(long = "move")]
        mv: String,
    },
    /// Convert between rail diagrams and theta-curve diagrams.
    Theta {
        #[arg(value_enum)]
        dir: Dir,
        file: PathBuf,
    },
    /// Draw a diagram (or an arc's rail-plane projection) as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MovesCmd {
    /// Print every available move site with its kind.
    List {
        file: PathBuf,
        /// Crossing cap for creation moves (default: current count + 2).
        #[arg(long)]
        max_crossings: Option<usize>,
    },
    Apply {
        file: PathBuf,
        #[arg(long)]
        site: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Plane {
    Rail,
    Perp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    F2,
    Bracket,
    Writhe,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    To,
    From,
}

enum Input {
    Arc(RailArc3D),
    Rail(RailDiagram),
    Knotoid(KnotoidDiagram),
    Theta(rail_knotoid::theta::ThetaDiagram),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn located(path: &Path, e: IoError) -> anyhow::Error {
    anyhow!("{}: {e}", path.display())
}

fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let header = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let e = |err| located(path, err);
    Ok(match header {
        "rail-arc v1" => Input::Arc(parse_arc(&text).map_err(e)?),
        "rkd v1" => Input::Rail(parse_diagram(&text).map_err(e)?),
        "knotoid v1" => Input::Knotoid(parse_knotoid(&text).map_err(e)?),
        "theta v1" => Input::Theta(parse_theta(&text).map_err(e)?),
        other => bail!("{}: unknown format header {other:?}", path.display()),
    })
}

fn load_arc(path: &Path) -> Result<RailArc3D> {
    match load(path)? {
        Input::Arc(a) => {
            a.ensure_valid()?;
            Ok(a)
        }
        _ => bail!("{}: expected a rail-arc file", path.display()),
    }
}

/// A rail diagram, projecting arcs to the rail plane.
fn load_diagram(path: &Path) -> Result<RailDiagram> {
    match load(path)? {
        Input::Rail(d) => Ok(d),
        Input::Arc(a) => Ok(project_railplane(&a)?),
        _ => bail!("{}: expected a rail diagram or rail arc", path.display()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut out = String::new();
    match cli.cmd {
        Cmd::Validate { file } => {
            let summary = match load(&file)? {
                Input::Arc(a) => {
                    a.ensure_valid()?;
                    format!("rail arc, {} segments", a.segment_count())
                }
                Input::Rail(d) => format!(
                    "rail diagram, {} darts, {} arc crossings, {} rail crossings",
                    d.dart_count(),
                    d.xing_count(),
                    d.railx_count()
                ),
                Input::Knotoid(k) => format!("knotoid diagram, {} crossings", k.xing_count()),
                Input::Theta(t) => format!("theta diagram, {} crossings", t.crossing_count()),
            };
            out = format!("ok: {summary}\n");
        }
        Cmd::Project { file, plane } => {
            let a = load_arc(&file)?;
            match plane {
                Plane::Rail => {
                    let d = project_railplane(&a)?;
                    eprintln!("{} arc crossings, {} rail crossings", d.xing_count(), d.railx_count());
                    out = serialize_diagram(&d);
                }
                Plane::Perp => {
                    let k = project_perpendicular(&a)?;
                    eprintln!("{} crossings", k.xing_count());
                    out = serialize_knotoid(&k);
                }
            }
        }
        Cmd::Perturb { file, seed } => out = serialize_arc(&perturb(&load_arc(&file)?, seed)?),
        Cmd::Moves { cmd: MovesCmd::List { file, max_crossings } } => {
            let d = load_diagram(&file)?.canonical();
            let cap = max_crossings.unwrap_or(d.crossing_count() + 2);
            let mut sites = enumerate_reductions(&d)?;
            sites.extend(enumerate_neutral(&d)?);
            sites.extend(enumerate_creations(&d, cap)?);
            for s in sites {
                out.push_str(&format!("{s}\t{}\n", kind_of(&d, &s)));
            }
        }
        Cmd::Moves { cmd: MovesCmd::Apply { file, site } } => {
            let d = load_diagram(&file)?.canonical();
            let s: MoveSite = site.parse().map_err(|e: String| anyhow!("bad site {site:?}: {e}"))?;
            out = serialize_diagram(&apply_move(&d, &s)?);
        }
        Cmd::Simplify { file } => {
            let (s, path) = simplify(&load_diagram(&file)?)?;
            eprintln!("{} moves", path.len());
            out = serialize_diagram(&s);
        }
        Cmd::Equiv { a, b, max_crossings, max_depth } => {
            let (d1, d2) = (load_diagram(&a)?, load_diagram(&b)?);
            match connect(&d1, &d2, max_crossings, max_depth)? {
                SearchOutcome::Connected { path, explored, .. } => {
                    out = format!("CONNECTED {} moves, {explored} diagrams explored\n", path.len());
                    for s in path {
                        out.push_str(&format!("{s}\n"));
                    }
                }
                SearchOutcome::NotFound { explored, depth, reason, .. } => {
                    println!("NOT_FOUND {reason:?}, depth {depth}, {explored} diagrams explored");
                    return Ok(ExitCode::from(3));
                }
            }
        }
        Cmd::Invariant { file, kind } => {
            let input = load(&file)?;
            let knotoid = |input: &Input| -> Result<KnotoidDiagram> {
                Ok(match input {
                    Input::Arc(a) => project_perpendicular(a)?,
                    Input::Rail(d) => KnotoidDiagram::forget_rails(d),
                    Input::Knotoid(k) => k.clone(),
                    Input::Theta(_) => bail!("no knotoid diagram for a theta file"),
                })
            };
            let value = match kind {
                Kind::F2 => {
                    let d = match &input {
                        Input::Arc(a) => project_railplane(a)?,
                        Input::Rail(d) => d.clone(),
                        _ => bail!("f2 needs a rail diagram or rail arc"),
                    };
                    f2_normal_form(&f2_word(&d)?).to_string()
                }
                Kind::Bracket => normalized_bracket(&knotoid(&input)?)?.to_string(),
                Kind::Writhe => match &input {
                    Input::Rail(d) => rail_writhe(d)?.to_string(),
                    other => writhe(&knotoid(other)?)?.to_string(),
                },
            };
            out = format!("{value}\n");
        }
        Cmd::RandomArc { segments, seed } => out = serialize_arc(&random_arc(segments, seed)?),
        Cmd::RandomIsotopy { file, steps, seed } => {
            let (b, moves) = random_isotopy(&load_arc(&file)?, steps, seed)?;
            for m in moves {
                eprintln!("{m}");
            }
            out = serialize_arc(&b);
        }
        Cmd::Decompose { file, mv } => {
            let a = load_arc(&file)?;
            let m: TriangleMove3D = mv.parse().map_err(|e: String| anyhow!("bad move {mv:?}: {e}"))?;
            for s in decompose_to_nice(&a, &m)? {
                out.push_str(&format!("{s}\n"));
            }
        }
        Cmd::Theta { dir: Dir::To, file } => out = serialize_theta(&to_theta(&load_diagram(&file)?)?),
        Cmd::Theta { dir: Dir::From, file } => match load(&file)? {
            Input::Theta(t) => out = serialize_diagram(&from_theta(&t)?),
            _ => bail!("{}: expected a theta file", file.display()),
        },
        Cmd::Render { file, output } => {
            let svg = match load(&file)? {
                Input::Knotoid(k) => render_knotoid(&k),
                Input::Theta(_) => bail!("rendering theta diagrams is not supported"),
                _ => render_diagram(&load_diagram(&file)?),
            };
            match output {
                Some(p) => fs::write(&p, svg).with_context(|| format!("writing {}", p.display()))?,
                None => out = svg,
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

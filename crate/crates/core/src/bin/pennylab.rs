use std::error::Error;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pennylab::coloring::{list_color, verify_coloring, ColoringError};
use pennylab::faces::DEFAULT_ISOPERIMETRIC_CONSTANT;
use pennylab::generators::InstanceSpec;
use pennylab::geometry::{normalize, PennyConfiguration, PointSet, DEFAULT_EPSILON};
use pennylab::io;
use pennylab::report::{verify_configuration, verify_graph, CheckId, Source, VerifyOptions, DEFAULT_SEED};
use pennylab::suite::{run_suite, Scale, SuiteOptions};

const EXIT_CODES: &str = "Exit codes:
  0  every asserted check passed
  1  a check failed (or no coloring was found)
  2  input error: unreadable or malformed file, duplicate or overlapping points, bad parameters
  3  internal error";

#[derive(Parser)]
#[command(name = "pennylab", version, about = "Penny graph instances, checks and reports", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance in the point-set format.
    Generate {
        #[command(subcommand)]
        family: FamilyArg,
        /// Write the points here and print the instance spec as JSON.
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run the checks on a point set or an embedded graph; prints a JSON report.
    #[command(after_help = EXIT_CODES)]
    Verify(VerifyArgs),
    /// List-color a graph; prints `vertex color` lines.
    #[command(after_help = EXIT_CODES)]
    Color {
        /// Edge-list file.
        graph: PathBuf,
        /// Lists file, one line of colors per vertex.
        lists: PathBuf,
    },
    /// Run the whole battery; prints a JSON summary.
    #[command(after_help = EXIT_CODES)]
    Suite {
        #[arg(value_enum, default_value = "small")]
        scale: Scale,
        #[arg(long, env = "PENNYLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        tunables: Tunables,
    },
}

#[derive(Subcommand)]
enum FamilyArg {
    Grid {
        #[arg(long)]
        m: usize,
    },
    Hex {
        #[arg(long)]
        rings: usize,
    },
    Cycle {
        #[arg(long)]
        len: usize,
    },
    Path {
        #[arg(long)]
        len: usize,
    },
    TrimmedGrid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        remove: usize,
    },
    RandomSubgrid {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, env = "PENNYLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    Squaregraph {
        #[arg(long)]
        n: usize,
    },
}

impl FamilyArg {
    fn spec(&self) -> InstanceSpec {
        match *self {
            FamilyArg::Grid { m } => InstanceSpec::grid(m),
            FamilyArg::Hex { rings } => InstanceSpec::hex_packing(rings),
            FamilyArg::Cycle { len } => InstanceSpec::cycle(len),
            FamilyArg::Path { len } => InstanceSpec::path(len),
            FamilyArg::TrimmedGrid { rows, cols, remove } => InstanceSpec::trimmed_grid(rows, cols, remove),
            FamilyArg::RandomSubgrid { m, density, seed } => InstanceSpec::random_subgrid(m, density, seed),
            FamilyArg::Squaregraph { n } => InstanceSpec::squaregraph_tight(n),
        }
    }
}

#[derive(Args)]
struct Tunables {
    /// Relative tangency tolerance.
    #[arg(long, env = "PENNYLAB_EPSILON", default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Additive constant C in the outer-face threshold.
    #[arg(long, env = "PENNYLAB_ISOPERIMETRIC_CONSTANT", default_value_t = DEFAULT_ISOPERIMETRIC_CONSTANT)]
    isoperimetric_constant: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Point-set file.
    #[arg(required_unless_present = "edges", conflicts_with = "edges")]
    points: Option<PathBuf>,
    /// Edge-list file (instead of a point set).
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Rotation file for the edge list.
    #[arg(long, requires = "edges")]
    rotation: Option<PathBuf>,
    /// Use the points as disk centers without rescaling.
    #[arg(long)]
    as_centers: bool,
    /// Comma-separated check ids (default: all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Fail when the outer-face threshold does not hold.
    #[arg(long)]
    assert_outer_face: bool,
    /// Fail when D < 0.5·√n.
    #[arg(long)]
    assert_diameter_growth: bool,
    #[arg(long, env = "PENNYLAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    tunables: Tunables,
}

enum Failure {
    Check,
    Input(String),
    Internal(String),
}

impl<E: Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))
}

fn generate(family: &FamilyArg, out: Option<&PathBuf>) -> Result<(), Failure> {
    let spec = family.spec();
    let config = spec.build()?;
    let text = io::write_points(config.points());
    match out {
        Some(path) => {
            fs::write(path, text)?;
            println!("{}", json(&spec)?);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let checks = if args.checks.is_empty() {
        None
    } else {
        let ids = args
            .checks
            .iter()
            .map(|s| CheckId::parse(s.trim()).ok_or_else(|| Failure::Input(format!("unknown check `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Some(ids)
    };
    let opts = VerifyOptions {
        epsilon: args.tunables.epsilon,
        isoperimetric_constant: args.tunables.isoperimetric_constant,
        seed: args.seed,
        assert_outer_face: args.assert_outer_face,
        assert_diameter_growth: args.assert_diameter_growth,
        checks,
    };
    let report = if let Some(path) = &args.points {
        let points = io::read_points(path)?;
        let config = if args.as_centers {
            PennyConfiguration::from_centers(points, opts.epsilon)?
        } else {
            normalize(&PointSet::new(points), opts.epsilon)?
        };
        verify_configuration(&config, Source::PointFile { path: path.display().to_string() }, &opts)?
    } else {
        let edges = args.edges.as_ref().expect("clap requires points or edges");
        let g = match &args.rotation {
            Some(rot) => io::read_embedded_graph(edges, rot)?,
            None => io::read_edge_list(edges)?,
        };
        let source = Source::GraphFile {
            edges: edges.display().to_string(),
            rotation: args.rotation.as_ref().map(|p| p.display().to_string()),
        };
        verify_graph(&g, source, &opts)
    };
    println!("{}", json(&report)?);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn color(graph: &PathBuf, lists: &PathBuf) -> Result<(), Failure> {
    let g = io::read_edge_list(graph)?;
    let lists = io::read_lists(lists)?;
    match list_color(&g, &lists) {
        Ok(res) => {
            verify_coloring(&g, &lists, &res.colors).map_err(|e| Failure::Internal(e.to_string()))?;
            print!("{}", io::write_coloring(&res.colors));
            Ok(())
        }
        Err(e @ ColoringError::ListCountMismatch { .. }) => Err(Failure::Input(e.to_string())),
        Err(e) => {
            eprintln!("no coloring: {e}");
            Err(Failure::Check)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Generate { family, out } => generate(family, out.as_ref()),
        Command::Verify(args) => verify(args),
        Command::Color { graph, lists } => color(graph, lists),
        Command::Suite { scale, seed, tunables } => {
            let opts = SuiteOptions {
                scale: *scale,
                seed: *seed,
                epsilon: tunables.epsilon,
                isoperimetric_constant: tunables.isoperimetric_constant,
            };
            let report = run_suite(&opts);
            println!("{}", json(&report)?);
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Check)) => ExitCode::from(1),
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}

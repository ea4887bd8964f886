use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;
mod verify;

use output::{Format, Report};

#[derive(Parser)]
#[command(name = "degenflag", version, about = "Median Genocchi numbers, Dellac configurations and degenerate flag varieties over F_p")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for enumerations (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized median Genocchi numbers h_1..h_N.
    Numbers {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u16).range(1..=25))]
        max_n: u16,
    },
    /// First R rows of the Seidel triangle.
    Seidel {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=200))]
        rows: u16,
    },
    /// First R rows of the Kreweras triangle.
    Kreweras {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=100))]
        rows: u16,
    },
    /// Dellac configurations.
    Dellac {
        #[command(subcommand)]
        action: DellacAction,
    },
    /// Coefficients of P_n(q), the length generating polynomial of DC_n.
    Poincare {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=8))]
        n: u16,
    },
    /// Bijections between Dellac configurations and other models.
    Bijection {
        #[command(subcommand)]
        action: BijectionAction,
    },
    /// Points of degenerate flag varieties over F_p.
    Flag {
        #[command(subcommand)]
        action: FlagAction,
    },
    /// Plücker coordinates and degenerate relations.
    Pluecker {
        #[command(subcommand)]
        action: PlueckerAction,
    },
    /// Run a cross-check suite; exits 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum DellacAction {
    /// List DC_n with length and refinement statistic.
    Enum {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=8))]
        n: u16,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum BijectionKind {
    Tuple,
    Dumont,
}

#[derive(Subcommand)]
enum BijectionAction {
    /// Map the whole domain to DC_n and back.
    Roundtrip {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=7))]
        n: u16,
        #[arg(long, value_enum)]
        kind: BijectionKind,
    },
}

#[derive(Args, Clone)]
pub struct FlagParams {
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=8))]
    n: u16,
    /// Prime field size.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=65_536))]
    p: u32,
    /// Dimension vector, comma separated (default: complete flags).
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum FlagAction {
    /// Number of F_p-points.
    Count(FlagParams),
    /// Point counts per cell.
    Cells(FlagParams),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RelationKindArg {
    Classical,
    Degenerate,
}

#[derive(Subcommand)]
enum PlueckerAction {
    /// Compare the zero set of the degenerate relations with the chain conditions.
    Cutout {
        #[arg(long, value_parser = clap::value_parser!(u16).range(2..=8))]
        n: u16,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=65_536))]
        p: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// Print one relation R^k_{L,J}.
    Relation {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<usize>,
        #[arg(long = "J", value_delimiter = ',', required = true)]
        j: Vec<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = RelationKindArg::Degenerate)]
        kind: RelationKindArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    Bijections,
    Triangles,
    Cells,
    Points,
    Pluecker,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=8))]
    n: Option<u16>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=65_536))]
    p: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=100))]
    rows: Option<u16>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
}

fn dispatch(command: &Command) -> Result<Report, commands::Failure> {
    match command {
        Command::Numbers { max_n } => commands::numbers(*max_n as usize),
        Command::Seidel { rows } => commands::seidel(*rows as usize),
        Command::Kreweras { rows } => commands::kreweras(*rows as usize),
        Command::Dellac {
            action: DellacAction::Enum { n },
        } => commands::dellac_enum(*n as usize),
        Command::Poincare { n } => commands::poincare(*n as usize),
        Command::Bijection {
            action: BijectionAction::Roundtrip { n, kind },
        } => commands::roundtrip(*n as usize, *kind),
        Command::Flag { action } => match action {
            FlagAction::Count(a) => commands::flag_count(a.n as usize, a.p, a.dims.clone()),
            FlagAction::Cells(a) => commands::flag_cells(a.n as usize, a.p, a.dims.clone()),
        },
        Command::Pluecker { action } => match action {
            PlueckerAction::Cutout { n, p, dims } => commands::cutout(*n as usize, *p, dims),
            PlueckerAction::Relation { l, j, k, kind } => commands::relation(l, j, *k, *kind),
        },
        Command::Verify(v) => verify::run(
            v.suite,
            verify::Params {
                n: v.n.map(usize::from),
                p: v.p,
                rows: v.rows.map(usize::from),
                dims: v.dims.clone(),
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j as usize);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    let outcome = pool.install(|| dispatch(&cli.command));
    let elapsed_ms = start.elapsed().as_millis();
    match outcome {
        Ok(report) => {
            let rendered = report.render(cli.format, elapsed_ms);
            let mut out = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = out.write_all(rendered.as_bytes());
            ExitCode::from(if report.success { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

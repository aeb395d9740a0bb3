mod commands;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "zcx", version, about = "Convex polyominoes by degree of convexity")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "ZCX_THREADS")]
    threads: Option<usize>,

    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or count the convex polyominoes of one size.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Print only the number of polyominoes.
        #[arg(long, conflicts_with = "list")]
        count: bool,
        /// Print every polyomino (the default).
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = ListFormat::Lines)]
        format: ListFormat,
    },
    /// Per-size class counts.
    Census {
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Coefficients of a catalogued generating function.
    Series {
        #[arg(long)]
        name: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Level counts of the generating tree of ascending polyominoes.
    Gentree {
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = TreeMode::Labels)]
        mode: TreeMode,
        /// Print the label multiset of this level instead of the totals.
        #[arg(long)]
        dump_level: Option<usize>,
    },
    /// Run cross-check suites; exits 1 when a check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Largest size enumerated exhaustively (at most 12).
        #[arg(long, default_value_t = 12)]
        max_size: usize,
        /// JSON file of reference sequence prefixes.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Include elapsed times in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Draw a polyomino given by its encoding.
    Render {
        #[arg(long)]
        encoding: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ListFormat {
    Lines,
    Json,
    Ascii,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TreeMode {
    Labels,
    Construct,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Identities,
    Gentree,
    Refined,
    Structure,
    Kernels,
    Asymptotics,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
    /// Verification ran and found failures.
    ChecksFailed,
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<(), CliError>;

fn run(cli: Cli) -> CliResult {
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    let result = match cli.command {
        Command::Enumerate { size, count, list: _, format } => commands::enumerate(&mut out, size, count, format),
        Command::Census { max_size, min_size, format } => commands::census(&mut out, min_size, max_size, format),
        Command::Series { name, x, y, z, terms, format } => {
            commands::series(&mut out, &name, [x, y, z], terms, format)
        }
        Command::Gentree { max_size, mode, dump_level } => commands::gentree(&mut out, max_size, mode, dump_level),
        Command::Verify { suite, max_size, fixtures, format, timing } => {
            commands::verify(&mut out, suite, max_size, fixtures, format, timing)
        }
        Command::Render { encoding } => commands::render(&mut out, &encoding),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::ChecksFailed) => ExitCode::from(1),
    }
}

//! Command-line definition and dispatch.

use clap::{Parser, Subcommand, ValueEnum};

use susyms_core::classification::Stage;

use crate::commands::{self, SolutionOptions};
use crate::error::{Error, Result};
use crate::report::{failure_json, Format, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "susyms", version, about = "Symbolic verification toolkit for the supersymmetric minimal surface equation")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
    Latex,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StageArg {
    S1,
    S2,
    S,
    TildeS,
    Full,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Stage {
        match s {
            StageArg::S1 => Stage::S1,
            StageArg::S2 => Stage::S2,
            StageArg::S => Stage::S,
            StageArg::TildeS => Stage::TildeS,
            StageArg::Full => Stage::Full,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Supercommutation and classical commutation tables.
    Tables,
    /// Check that the operator and component forms of the equation agree.
    VerifyExtension,
    /// Check the anticommutation relations of the odd operators.
    VerifyIdentities,
    /// Classify one-dimensional subalgebras.
    Classify {
        #[arg(long, value_enum)]
        stage: StageArg,
        /// Identify classes related by the reflection x <-> y, theta1 <-> theta2.
        #[arg(long)]
        dedupe_reflection: bool,
    },
    /// Reduce the equation under a subalgebra.
    Reduce {
        /// One of L74, G136, L72, e4, e4+me3.
        #[arg(long)]
        subalgebra: String,
        #[arg(long, default_value = "bodiless")]
        ansatz: String,
        /// Value of m for e4+me3 (symbolic by default).
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
    },
    /// Verify a solution given in the expression format.
    VerifySolution {
        #[arg(long)]
        file: String,
        /// Evaluate the residual on a grid instead of symbolically.
        #[arg(long)]
        numeric: bool,
        /// Grid `x0:x1:nx,y0:y1:ny`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Allow complex intermediate values in numeric mode.
        #[arg(long)]
        complex: bool,
        /// Numeric tolerance on the max residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Treat the file as w(xi) and substitute it into this equation.
        #[arg(long)]
        ode: Option<String>,
        /// Pass when the residual vanishes on a derived constraint set.
        #[arg(long)]
        accept_constraints: bool,
    },
    /// Classical minimal surface analysis.
    Classical {
        #[arg(value_enum)]
        task: ClassicalTask,
    },
    /// Incomplete elliptic integrals F(phi, k) and E(phi, k).
    Elliptic {
        #[arg(value_enum)]
        kind: EllipticArg,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ClassicalTask {
    Symmetries,
    Classify,
    Reduce,
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EllipticArg {
    #[value(name = "F")]
    F,
    #[value(name = "E")]
    E,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tables => "tables",
            Command::VerifyExtension => "verify-extension",
            Command::VerifyIdentities => "verify-identities",
            Command::Classify { .. } => "classify",
            Command::Reduce { .. } => "reduce",
            Command::VerifySolution { .. } => "verify-solution",
            Command::Classical { .. } => "classical",
            Command::Elliptic { .. } => "elliptic",
        }
    }

    /// Cache key for commands worth caching.
    fn cache_key(&self, format: FormatArg) -> Option<String> {
        match self {
            Command::Classify { stage, dedupe_reflection } => {
                Some(format!("classify-{stage:?}-{}-{format:?}", if *dedupe_reflection { "dedupe" } else { "plain" }).to_lowercase())
            }
            _ => None,
        }
    }
}

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Tables => commands::tables(),
        Command::VerifyExtension => commands::verify_extension(),
        Command::VerifyIdentities => commands::verify_identities(),
        Command::Classify { stage, dedupe_reflection } => commands::classify((*stage).into(), *dedupe_reflection),
        Command::Reduce { subalgebra, ansatz, m } => commands::reduce(subalgebra, ansatz, m.as_deref()),
        Command::VerifySolution { file, numeric, grid, complex, tol, ode, accept_constraints } => {
            let grid = grid.as_deref().map(commands::parse_grid).transpose()?;
            let opts = SolutionOptions {
                numeric: *numeric,
                grid,
                complex: *complex,
                tolerance: *tol,
                ode: ode.clone(),
                accept_constraints: *accept_constraints,
            };
            commands::verify_solution(file, &opts)
        }
        Command::Classical { task } => match task {
            ClassicalTask::Symmetries => commands::classical_symmetries(),
            ClassicalTask::Classify => commands::classical_classify_report(),
            ClassicalTask::Reduce => commands::classical_reduce(),
            ClassicalTask::Verify => commands::classical_verify(),
        },
        Command::Elliptic { kind, phi, k } => {
            let kind = match kind {
                EllipticArg::F => "F",
                EllipticArg::E => "E",
            };
            commands::elliptic(kind, phi, k)
        }
    }
}

/// Run a parsed command line: returns `(exit code, stdout, stderr)`.
pub fn run(cli: &Cli) -> (i32, String, String) {
    let key = cli.command.cache_key(cli.format);
    if let Some(k) = &key {
        if let Some((code, out)) = crate::cache::load(k) {
            return (code, out, String::new());
        }
    }
    let name = cli.command.name();
    let (code, out, err) = match execute(&cli.command) {
        Ok(report) => match report.render(cli.format.into()) {
            Some(s) => (if report.passed { EXIT_PASS } else { EXIT_FAIL }, s, String::new()),
            None => {
                let msg = format!("format {:?} is not available for `{name}`", cli.format).to_lowercase();
                (EXIT_USAGE, failure_json(name, "usage", &msg), msg)
            }
        },
        Err(e) => {
            let (code, kind) = if e.is_usage() { (EXIT_USAGE, "usage") } else { (EXIT_FAIL, "failure") };
            (code, failure_json(name, kind, &e.to_string()), e.to_string())
        }
    };
    if let Some(k) = &key {
        if code != EXIT_USAGE {
            crate::cache::store(k, code, &out);
        }
    }
    (code, out, err)
}

/// Entry point shared by the binary: parse arguments, run, print.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                print!("{e}");
                return EXIT_PASS;
            }
            eprint!("{e}");
            print!("{}", failure_json("", "usage", e.to_string().lines().next().unwrap_or("invalid arguments")));
            return EXIT_USAGE;
        }
    };
    let (code, out, err) = run(&cli);
    print!("{out}");
    if !err.is_empty() {
        eprintln!("error: {err}");
    }
    code
}

impl From<clap::Error> for Error {
    fn from(e: clap::Error) -> Error {
        Error::Usage(e.to_string())
    }
}

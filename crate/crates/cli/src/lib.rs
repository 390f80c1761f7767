//! `hallforge` command-line workbench: category specifications, products,
//! multiplication tables, normal forms and verification suites.

pub mod cache;
pub mod commands;
pub mod element;
pub mod spec;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hallforge::{par, Exec, HallError};

use commands::{Options, ReportFile, Session};
use element::ElementFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_EULER: i32 = 4;

/// An error together with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, message)
    }
}

impl From<HallError> for CliError {
    fn from(e: HallError) -> Self {
        let code = if e.is_cap_breach() {
            EXIT_CAP
        } else if e.is_euler_undefined() {
            EXIT_EULER
        } else {
            EXIT_INVALID
        };
        CliError::new(code, e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Hall,
    Twisted,
    Sdh,
    #[value(name = "sdh-tw")]
    SdhTw,
    Dh,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::Hall => "hall",
            Algebra::Twisted => "twisted",
            Algebra::Sdh => "sdh",
            Algebra::SdhTw => "sdh-tw",
            Algebra::Dh => "dh",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Associativity,
    LemmaExt,
    Freeness,
    RelEuler,
    Toen,
    ShiftFunctor,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Associativity => "associativity",
            Suite::LemmaExt => "lemma-ext",
            Suite::Freeness => "freeness",
            Suite::RelEuler => "rel-euler",
            Suite::Toen => "toen",
            Suite::ShiftFunctor => "shift-functor",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hallforge", version, about = "Hall algebra workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Neither read nor write the structure-constant cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply two element files.
    Product {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "hall")]
        algebra: Algebra,
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiplication table over all classes within a dimension cap.
    Table {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "hall")]
        algebra: Algebra,
        #[arg(long)]
        dim_cap: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite an element in the normal form `sum c t^e [m]`.
    Normalize {
        #[arg(long)]
        spec: PathBuf,
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 when a check fails.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "hall")]
        algebra: Algebra,
        #[arg(long)]
        dim_cap: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("output serializes");
    s.push('\n');
    s
}

fn options(cli: &Cli) -> Options {
    let exec = match cli.jobs {
        Some(1) => Exec::Sequential,
        Some(n) => {
            par::init_threads(n);
            Exec::Parallel
        }
        None => Exec::Parallel,
    };
    Options {
        exec,
        use_cache: !cli.no_cache,
        ..Options::default()
    }
}

/// Execute a parsed command line; returns the exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let opts = options(cli);
    let start = Instant::now();
    match &cli.command {
        Command::Product {
            spec,
            algebra,
            x,
            y,
            out,
        } => {
            let session = Session::open(spec, &opts)?;
            let (x, y) = (ElementFile::load(x)?, ElementFile::load(y)?);
            let p = commands::product(&session, *algebra, &x, &y)?;
            session.persist()?;
            write_output(out.as_deref(), &p.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Table {
            spec,
            algebra,
            dim_cap,
            out,
        } => {
            let session = Session::open(spec, &opts)?;
            let cap = match dim_cap {
                Some(c) => c.clone(),
                None => session.spec.caps.dim_cap.clone().unwrap_or_else(|| "1".into()),
            };
            let t = commands::table(&session, *algebra, &cap)?;
            session.persist()?;
            write_output(out.as_deref(), &to_json(&t))?;
            eprintln!(
                "table: {} basis elements, {} products, {} cached entries reused, {:.3}s",
                t.basis.len(),
                t.products.len(),
                session.cache_hits(),
                start.elapsed().as_secs_f64()
            );
            Ok(EXIT_OK)
        }
        Command::Normalize { spec, input, out } => {
            let session = Session::open(spec, &opts)?;
            let n = commands::normalize(&session, &ElementFile::load(input)?)?;
            write_output(out.as_deref(), &n.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            spec,
            suite,
            algebra,
            dim_cap,
            out,
        } => {
            let session = Session::open(spec, &opts)?;
            let report = commands::verify(&session, *suite, *algebra, dim_cap.as_deref())?;
            session.persist()?;
            let cap = dim_cap
                .clone()
                .or_else(|| session.spec.caps.dim_cap.clone())
                .unwrap_or_else(|| "1".into());
            let file = ReportFile::new(&report, *algebra, &cap);
            write_output(out.as_deref(), &to_json(&file))?;
            eprintln!(
                "{}: {} ({} checks, {} failures) in {:.3}s",
                file.suite,
                file.status,
                file.checks,
                file.failures.len(),
                start.elapsed().as_secs_f64()
            );
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

/// Parse `args`, run, and report errors on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

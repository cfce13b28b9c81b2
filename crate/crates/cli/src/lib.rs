//! Command-line front end: argument parsing, report assembly and rendering.

pub mod commands;
pub mod error;
pub mod expr;
pub mod json;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use osculant::hesse::ConicMethod;
use serde::Serialize;
use serde_json::Value;

pub use commands::{CommandKind, JobConfig, ModulusChoice, Section};
pub use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "osculant", version, about = "Exact computations on Hesse-pencil cubics and their osculating conics")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Verify the polynomial identities of the pencil member.
    Identities(Opts),
    /// List the 27 sextactic points.
    Points(Opts),
    /// List the 27 osculating conics.
    Conics(Opts),
    /// Measure the contact of each conic at its point with two algorithms.
    Multiplicity(Opts),
    /// Exponents of products of the cubic with osculating conics.
    Exponents(Opts),
    /// The nine triples of conics for an equianharmonic member.
    Partition(Opts),
    /// Batch verification of every stage.
    Report(Opts),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Theorem,
    Closed,
    Pipeline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Opts {
    /// Pencil parameter: rationals, + - * / ^, parentheses, eps, sqrt3.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Construction of the conics.
    #[arg(long, value_enum, default_value = "closed")]
    form: Form,
    /// Comma-separated labels; repeat for several products.
    #[arg(long, allow_hyphen_values = true)]
    conics: Vec<String>,
    /// Largest syzygy degree examined (default 2d - 3).
    #[arg(long)]
    kmax: Option<u32>,
    /// auto, none (exact) or a prime.
    #[arg(long, default_value = "none")]
    modulus: String,
    /// Worker threads.
    #[arg(long, env = "OSCULANT_THREADS")]
    threads: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Append measured multiplicities to the conic listing.
    #[arg(long)]
    check_multiplicity: bool,
    /// Output format on standard output.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Report header.
#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub t: String,
    pub t_value: String,
    pub tower: Value,
    pub form: &'static str,
    pub mode: &'static str,
    pub modulus: String,
    pub k_max: Option<u32>,
    pub primes: Vec<u64>,
    pub notes: Vec<String>,
}

/// A complete report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub metadata: Metadata,
    pub payload: Value,
    pub status: &'static str,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl ReportDocument {
    /// Whether every check passed.
    #[must_use]
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    /// Pretty JSON with a trailing newline.
    #[must_use]
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    /// Plain-text rendering.
    #[must_use]
    pub fn to_text(&self) -> String {
        let m = &self.metadata;
        let mut out = format!("{} {} {}\n", m.tool, m.version, m.command);
        out.push_str(&format!("t = {}\n", m.t_value));
        out.push_str(&format!("mode: {} (modulus {})", m.mode, m.modulus));
        if !m.primes.is_empty() {
            let primes: Vec<String> = m.primes.iter().map(ToString::to_string).collect();
            out.push_str(&format!(", primes {}", primes.join(", ")));
        }
        out.push('\n');
        for n in &m.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", self.status));
        out
    }
}

fn parse_labels(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("--conics expects comma-separated labels, got '{s}'")))
        })
        .collect()
}

fn job_from(kind: CommandKind, o: &Opts) -> Result<JobConfig, CliError> {
    Ok(JobConfig {
        command: kind,
        t: o.t.clone(),
        form: match o.form {
            Form::Theorem => ConicMethod::Theorem,
            Form::Closed => ConicMethod::ClosedForm,
            Form::Pipeline => ConicMethod::Pipeline,
        },
        conics: o.conics.iter().map(|s| parse_labels(s)).collect::<Result<_, _>>()?,
        k_max: o.kmax,
        modulus: ModulusChoice::parse(&o.modulus)?,
        check_multiplicity: o.check_multiplicity,
    })
}

/// Runs a job and assembles the report.
///
/// # Errors
/// Any [`CliError`].
pub fn execute(cfg: &JobConfig) -> Result<ReportDocument, CliError> {
    let c = commands::curve_for(cfg)?;
    let section = commands::run_command(cfg, &c)?;
    let mut notes = Vec::new();
    if c.t().is_zero() {
        notes.push("t = 0 is the Fermat cubic x^3 + y^3 + z^3; every construction applies unchanged".to_string());
    }
    notes.extend(section.notes);
    let uses_syzygies = matches!(cfg.command, CommandKind::Exponents | CommandKind::Partition | CommandKind::Report);
    let exact = cfg.modulus == ModulusChoice::None || cfg.command == CommandKind::Partition;
    let metadata = Metadata {
        tool: "osculant",
        version: env!("CARGO_PKG_VERSION"),
        command: cfg.command.name(),
        t: cfg.t.clone(),
        t_value: c.t().to_string(),
        tower: json::tower_json(c.tower()),
        form: commands::form_name(cfg.form),
        mode: match (cfg.command, uses_syzygies, exact) {
            (CommandKind::Partition, _, _) => "modular screen, exact certification",
            (_, true, false) => "modular",
            _ => "exact",
        },
        modulus: if cfg.command == CommandKind::Partition { "auto".into() } else { cfg.modulus.name() },
        k_max: cfg.k_max,
        primes: section.primes,
        notes,
    };
    Ok(ReportDocument {
        metadata,
        payload: section.payload,
        status: if section.passed { "pass" } else { "fail" },
        lines: section.lines,
    })
}

/// What a process invocation prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Full command-line behaviour for `args` (including the program name).
#[must_use]
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let (kind, opts) = match &cli.command {
        Cmd::Identities(o) => (CommandKind::Identities, o),
        Cmd::Points(o) => (CommandKind::Points, o),
        Cmd::Conics(o) => (CommandKind::Conics, o),
        Cmd::Multiplicity(o) => (CommandKind::Multiplicity, o),
        Cmd::Exponents(o) => (CommandKind::Exponents, o),
        Cmd::Partition(o) => (CommandKind::Partition, o),
        Cmd::Report(o) => (CommandKind::Report, o),
    };
    match run_opts(kind, opts) {
        Ok(out) => out,
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

fn run_opts(kind: CommandKind, o: &Opts) -> Result<Outcome, CliError> {
    let cfg = job_from(kind, o)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = o.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Internal(e.to_string()))?;
    let doc = pool.install(|| execute(&cfg))?;
    let json = doc.to_json();
    if let Some(path) = &o.json {
        std::fs::write(path, &json)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let stdout = if o.format == Format::Json { json } else { doc.to_text() };
    Ok(Outcome { stdout, stderr: String::new(), code: if doc.passed() { 0 } else { 2 } })
}

//! `jkm`: every check of the workbench as a subcommand, reporting one JSON
//! object per line (`command`, `params`, `status`, `data`, `elapsed_ms`).
//!
//! Exit codes: 0 when every line is `ok` (or `skipped`), 1 when any line is
//! `fail` or `error`, 2 on usage errors.

pub mod checks;
pub mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exactcore::{check_precision, ExactScalar};
use serde::Serialize;
use serde_json::Value;

/// Environment variable overriding the default working precision in bits.
pub const PREC_ENV: &str = "JKM_PREC";

#[derive(Parser, Debug, Clone)]
#[command(
    name = "jkm",
    version,
    about = "Verification workbench for the weighted del Pezzo hypersurfaces X_{8k+4} in P(2,2k+1,2k+1,4k+1)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Coefficients of the regularised I-function.
    Ifun,
    /// Coefficient identity between the period expansion and the I-function, one line per j.
    Identity,
    /// Reduced operator order and annihilation of the coefficients.
    Ode,
    /// Finite hypergeometric data, cyclotomic identity and singular value.
    Bcm,
    /// Contour quadrature of the period against the series.
    Period,
    /// Branch points of the pencil and their asymptotic classes.
    Roots,
    /// Factorization of the branch polynomial into the two discriminant factors.
    DeltaCheck,
    /// Torus equation against the chart equation.
    SubstCheck,
    /// Special points on fibres of the del Pezzo fibration.
    FiberCheck,
    /// The four lines on regular fibres.
    LinesCheck,
    /// Coordinate change and conic bundle identities, with negative controls.
    ConicCheck,
    /// Point counts over finite fields.
    Count,
    /// Thresholds of the polytope family and the fans between them.
    Mmp,
    /// Final fan and the lattice relations on its central hyperplane.
    RelationsCheck,
    /// The full suite for every k up to --k.
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Ifun => "ifun",
            Command::Identity => "identity",
            Command::Ode => "ode",
            Command::Bcm => "bcm",
            Command::Period => "period",
            Command::Roots => "roots",
            Command::DeltaCheck => "delta-check",
            Command::SubstCheck => "subst-check",
            Command::FiberCheck => "fiber-check",
            Command::LinesCheck => "lines-check",
            Command::ConicCheck => "conic-check",
            Command::Count => "count",
            Command::Mmp => "mmp",
            Command::RelationsCheck => "relations-check",
            Command::All => "all",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Char,
    Brute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "W", alias = "w")]
    W,
    #[value(name = "Y", alias = "y")]
    Y,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// k (for `all`, the largest k).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, global = true)]
    pub jmax: Option<u64>,
    /// "re" or "re,im", parsed exactly.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Fibration parameter a (rational, nonzero).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Working precision in bits.
    #[arg(long, global = true, env = PREC_ENV, default_value_t = 256)]
    pub prec: usize,
    #[arg(long, global = true, default_value = "1e-30")]
    pub tol: String,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Method::Char)]
    pub method: Method,
    #[arg(long, global = true, value_enum, default_value_t = Target::W)]
    pub target: Target,
    #[arg(long = "budget-seconds", global = true)]
    pub budget_seconds: Option<u64>,
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Skipped,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Skipped => "skipped",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub data: Value,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_table_row(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let mut data = self.data.to_string();
        if data.len() > 96 {
            let cut = (0..=96).rev().find(|&i| data.is_char_boundary(i)).unwrap_or(0);
            data.truncate(cut);
            data.push_str("...");
        }
        format!(
            "{:<16} {:<32} {:<8} {:>8}  {}",
            self.command,
            params.join(" "),
            self.status,
            self.elapsed_ms,
            data
        )
    }
}

pub const TABLE_HEADER: &str = "command          params                           status   ms        data";

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Collects the worst status while forwarding reports to a sink.
pub struct Emitter<'a> {
    sink: &'a mut dyn FnMut(&Report),
    pub worst: Status,
    pub count: usize,
}

impl<'a> Emitter<'a> {
    pub fn new(sink: &'a mut dyn FnMut(&Report)) -> Self {
        Self {
            sink,
            worst: Status::Ok,
            count: 0,
        }
    }

    pub fn emit(&mut self, r: Report) {
        self.worst = self.worst.max(r.status);
        self.count += 1;
        (self.sink)(&r);
    }

    /// Runs one check and emits its line. `Ok((true, data))` is `ok`,
    /// `Ok((false, data))` is `fail`, `Err` is `error`.
    pub fn check<F>(&mut self, command: &str, params: BTreeMap<String, Value>, f: F) -> Status
    where
        F: FnOnce() -> Result<(bool, Value), String>,
    {
        let start = Instant::now();
        let (status, data) = match f() {
            Ok((true, d)) => (Status::Ok, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Error, serde_json::json!({ "error": e })),
        };
        self.emit(Report {
            command: command.to_string(),
            params,
            status,
            data,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
        status
    }
}

/// Builds a params map from `(key, value)` pairs.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = ::std::collections::BTreeMap::<String, ::serde_json::Value>::new();
        $( m.insert($k.to_string(), ::serde_json::json!($v)); )*
        m
    }};
}

/// Flags resolved and validated for one invocation.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub flags: Flags,
    pub prec: usize,
    pub tol: ExactScalar,
}

impl Ctx {
    pub fn new(flags: &Flags) -> Result<Self, UsageError> {
        let prec = check_precision(flags.prec).map_err(|e| usage(format!("--prec: {e}")))?;
        let tol: ExactScalar = flags.tol.parse().map_err(|e| usage(format!("--tol: {e}")))?;
        if tol <= 0 {
            return Err(usage("--tol must be positive"));
        }
        if let Some(k) = flags.k {
            if k < 1 {
                return Err(usage(format!("--k must be >= 1, got {k}")));
            }
        }
        Ok(Self {
            flags: flags.clone(),
            prec,
            tol,
        })
    }

    pub fn k(&self) -> i64 {
        self.flags.k.unwrap_or(1)
    }

    /// `(re, im)` from "re" or "re,im".
    pub fn alpha(&self) -> Result<(ExactScalar, ExactScalar), UsageError> {
        let s = self
            .flags
            .alpha
            .as_deref()
            .ok_or_else(|| usage("--alpha is required"))?;
        parse_complex(s).map_err(|e| usage(format!("--alpha: {e}")))
    }

    pub fn alpha_rational_or_one(&self) -> Result<ExactScalar, UsageError> {
        match self.flags.alpha.as_deref() {
            None => Ok(ExactScalar::one()),
            Some(s) => {
                let (re, im) = parse_complex(s).map_err(|e| usage(format!("--alpha: {e}")))?;
                if !im.is_zero() {
                    return Err(usage("--alpha must be rational here"));
                }
                Ok(re)
            }
        }
    }

    pub fn a(&self) -> Result<ExactScalar, UsageError> {
        let a: ExactScalar = match self.flags.a.as_deref() {
            None => ExactScalar::one(),
            Some(s) => s.parse().map_err(|e| usage(format!("--a: {e}")))?,
        };
        if a.is_zero() {
            return Err(usage("--a must be nonzero"));
        }
        Ok(a)
    }

    pub fn q(&self) -> Result<u64, UsageError> {
        self.flags.q.ok_or_else(|| usage("--q is required"))
    }
}

pub fn parse_complex(s: &str) -> Result<(ExactScalar, ExactScalar), String> {
    let mut parts = s.split(',');
    let re = parts
        .next()
        .unwrap_or("")
        .parse::<ExactScalar>()
        .map_err(|e| e.to_string())?;
    let im = match parts.next() {
        Some(p) => p.parse::<ExactScalar>().map_err(|e| e.to_string())?,
        None => ExactScalar::zero(),
    };
    if parts.next().is_some() {
        return Err(format!("expected \"re\" or \"re,im\", got `{s}`"));
    }
    Ok((re, im))
}

/// Runs the parsed command, streaming each report to `sink`. Returns the
/// worst status seen.
pub fn run(cli: &Cli, sink: &mut dyn FnMut(&Report)) -> Result<Status, UsageError> {
    let ctx = Ctx::new(&cli.flags)?;
    let mut em = Emitter::new(sink);
    match cli.command {
        Command::Ifun => checks::ifun_cmd(&ctx, &mut em)?,
        Command::Identity => checks::identity_cmd(&ctx, &mut em)?,
        Command::Ode => checks::ode_cmd(&ctx, &mut em)?,
        Command::Bcm => checks::bcm_cmd(&ctx, &mut em)?,
        Command::Period => checks::period_cmd(&ctx, &mut em)?,
        Command::Roots => checks::roots_cmd(&ctx, &mut em)?,
        Command::DeltaCheck => checks::delta_cmd(&ctx, &mut em)?,
        Command::SubstCheck => checks::subst_cmd(&ctx, &mut em)?,
        Command::FiberCheck => checks::fiber_cmd(&ctx, &mut em)?,
        Command::LinesCheck => checks::lines_cmd(&ctx, &mut em)?,
        Command::ConicCheck => checks::conic_cmd(&ctx, &mut em)?,
        Command::Count => checks::count_cmd(&ctx, &mut em)?,
        Command::Mmp => checks::mmp_cmd(&ctx, &mut em)?,
        Command::RelationsCheck => checks::relations_cmd(&ctx, &mut em)?,
        Command::All => suite::run_all(&ctx, &mut em)?,
    }
    Ok(em.worst)
}

pub fn exit_code(worst: Status) -> i32 {
    match worst {
        Status::Ok | Status::Skipped => 0,
        Status::Fail | Status::Error => 1,
    }
}

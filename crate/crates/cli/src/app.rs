//! Argument parsing and the subcommands.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qzeta_core::arith::{format_decimal, format_rational, parse_rational, LaurentSeries, RatFunc, Rational};
use qzeta_core::characters::{
    CharacterTable, Deformation, FixedT, NormalizationMode, Signature, SymbolicT, TableStats, DEFAULT_GUARD,
};
use qzeta_core::checks::{run_all, SuiteLimits};
use qzeta_core::qseries::{laurent_consistency, qmzv_modified, qmzv_sz, QEvalParams};
use qzeta_core::renorm::renormalised_value_in;
use qzeta_core::{Error, Result};
use serde::Serialize;

use crate::cache::Cache;
use crate::record::{OutputRecord, RatFuncJson, RationalJson, TableRecord, ValuePayload};

#[derive(Debug, Parser)]
#[command(name = "qzeta", version, about = "Renormalised multiple zeta values at negative integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON file caching symbolic values between runs
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Print computation counters to stderr
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Renormalised value ζ₊(-k1,...,-kn), symbolic in t or evaluated
    Renorm(RenormArgs),
    /// Matrix of depth-two values ζ₊(-k1,-k2), 1 <= k1, k2 <= max
    Table(TableArgs),
    /// Laurent expansion of ψ, ψ₋, ψ₊ or the Bogoliubov preparation
    Series(SeriesArgs),
    /// Run the algebraic property suites
    Check(CheckArgs),
    /// Direct summation of the q-series
    Numeric(NumericArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Log,
    #[value(name = "1mq")]
    OneMinusQ,
}

impl From<Mode> for NormalizationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Log => NormalizationMode::LogQ,
            Mode::OneMinusQ => NormalizationMode::OneMinusQ,
        }
    }
}

/// Value of the deformation parameter on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TValue {
    Symbolic,
    Real(Rational),
    Complex(Rational, Rational),
}

impl TValue {
    pub fn label(&self) -> String {
        match self {
            TValue::Symbolic => "sym".into(),
            TValue::Real(r) => format_rational(r),
            TValue::Complex(re, im) => {
                let im_text = format_rational(im);
                if im_text.starts_with('-') {
                    format!("{}{im_text}i", format_rational(re))
                } else {
                    format!("{}+{im_text}i", format_rational(re))
                }
            }
        }
    }
}

pub fn parse_t(s: &str) -> std::result::Result<TValue, String> {
    let s = s.trim();
    if s == "sym" {
        return Ok(TValue::Symbolic);
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_rational(s).map(TValue::Real).map_err(|e| e.to_string());
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e');
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    let re = parse_rational(re).map_err(|e| e.to_string())?;
    let im = parse_rational(im).map_err(|e| e.to_string())?;
    Ok(if im == Rational::from_integer(0.into()) { TValue::Real(re) } else { TValue::Complex(re, im) })
}

/// Comma separated list of integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indices(pub Vec<i64>);

fn parse_ints(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("{p:?} is not an integer")))
        .collect()
}

fn parse_indices(s: &str) -> std::result::Result<Indices, String> {
    parse_ints(s).map(Indices)
}

pub fn parse_signature(s: &str) -> std::result::Result<Signature, String> {
    Signature::from_arguments(&parse_ints(s)?).map_err(|e| e.to_string())
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct RenormArgs {
    /// Negative arguments, comma separated, e.g. -1,-3
    #[arg(short = 'k', long = "args", value_parser = parse_signature, allow_hyphen_values = true)]
    pub sig: Signature,
    /// sym, a rational (3/2, 1.5) or a complex number (2+1i)
    #[arg(long, default_value = "sym", value_parser = parse_t, allow_hyphen_values = true)]
    pub t: TValue,
    #[arg(long, value_enum, default_value = "log")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    /// Extra truncation order beyond weight + depth
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: i64,
    /// Significant digits for complex t
    #[arg(long, default_value_t = 30)]
    pub digits: usize,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long = "max", default_value_t = 6)]
    pub max_k: u32,
    #[arg(long, default_value = "1", value_parser = parse_t, allow_hyphen_values = true)]
    pub t: TValue,
    #[arg(long, value_enum, default_value = "log")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Psi,
    Minus,
    Plus,
    Prepared,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(short = 'k', long = "args", value_parser = parse_signature, allow_hyphen_values = true)]
    pub sig: Signature,
    /// Highest degree in z that is printed and known
    #[arg(long)]
    pub order: i64,
    #[arg(long, default_value = "sym", value_parser = parse_t, allow_hyphen_values = true)]
    pub t: TValue,
    #[arg(long, value_enum, default_value = "psi")]
    pub kind: SeriesKind,
    #[arg(long, value_enum, default_value = "log")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Weight bound for the character and renormalisation identities
    #[arg(long, default_value_t = 8)]
    pub max_weight: u32,
    /// Bound on the total depth of word pairs
    #[arg(long, default_value_t = 2)]
    pub max_depth: usize,
    /// Weight bound for the Hopf-algebra axioms (default: min(max-weight, 6))
    #[arg(long)]
    pub hopf_weight: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Σ q^{(Σ|k_j|m_j)t} / Π (1-q^{m_j})^{k_j}
    Modified,
    /// Σ q^{Σ k_j m_j} / Π [m_j]_q^{k_j}, positive k only
    Sz,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Indices k1,...,kn (k1 != 0), e.g. -1,-3
    #[arg(short = 'k', long = "args", value_parser = parse_indices, allow_hyphen_values = true)]
    pub ks: Indices,
    /// q in (0, 1)
    #[arg(long, conflicts_with = "z", value_parser = parse_rational_arg)]
    pub q: Option<Rational>,
    /// log q < 0, i.e. q = e^z
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub z: Option<Rational>,
    #[arg(long, default_value = "1", value_parser = parse_t, allow_hyphen_values = true)]
    pub t: TValue,
    #[arg(long, default_value_t = 500)]
    pub cutoff: u64,
    /// Working precision in decimal digits
    #[arg(long, default_value_t = 30)]
    pub digits: usize,
    #[arg(long, value_enum, default_value = "modified")]
    pub model: Model,
    /// Compare with the symbolic expansion of ψ truncated at this order (needs --z)
    #[arg(long)]
    pub compare_order: Option<i64>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

/// Failure of a command, with the process exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InsufficientTruncation { .. } => 3,
            Error::InvalidSignature(_)
            | Error::InvalidParameter(_)
            | Error::Parse(_)
            | Error::ZeroLeadingIndex
            | Error::EmptyWord
            | Error::ZeroLetter => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Shared per-invocation state: cache and counters.
struct Session {
    cache: Cache,
    stats: TableStats,
    started: Instant,
}

impl Session {
    fn absorb(&mut self, s: TableStats) {
        self.stats.psi_evaluations += s.psi_evaluations;
        self.stats.birkhoff_steps += s.birkhoff_steps;
    }

    /// Symbolic value, from the cache when present.
    fn symbolic(&mut self, table: &mut CharacterTable<SymbolicT>, sig: &Signature, order: i64) -> Result<RatFunc> {
        let key = Cache::key(table.mode(), sig, order);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v);
        }
        let v = renormalised_value_in(table, sig)?;
        self.cache.put(key, &v);
        Ok(v)
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let cache = match &cli.cache {
        Some(p) => Cache::open(p)?,
        None => Cache::disabled(),
    };
    let mut session = Session { cache, stats: TableStats::default(), started: Instant::now() };
    let result = match cli.command {
        Command::Renorm(a) => cmd_renorm(&a, &mut session, out),
        Command::Table(a) => cmd_table(&a, &mut session, out),
        Command::Series(a) => cmd_series(&a, &mut session, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Numeric(a) => cmd_numeric(&a, out),
    };
    session.cache.save()?;
    if cli.verbose {
        eprintln!(
            "psi evaluations: {}, birkhoff steps: {}, cache hits: {}, cache misses: {}, elapsed: {} ms",
            session.stats.psi_evaluations,
            session.stats.birkhoff_steps,
            session.cache.hits,
            session.cache.misses,
            session.started.elapsed().as_millis()
        );
    }
    result
}

fn write_line(out: &mut dyn Write, line: &str) -> std::result::Result<(), Failure> {
    writeln!(out, "{line}").map_err(Failure::from)
}

fn complex_payload(value: &RatFunc, re: &Rational, im: &Rational, digits: usize) -> Result<ValuePayload> {
    let (vr, vi) = value.eval_complex(re, im)?;
    Ok(ValuePayload::Complex {
        re: format_decimal(&vr, digits),
        im: format_decimal(&vi, digits),
        exact_re: RationalJson::from_rational(&vr),
        exact_im: RationalJson::from_rational(&vi),
    })
}

/// Evaluates signatures at one `t`, sharing a character table between them.
struct Evaluator<'a> {
    t: &'a TValue,
    mode: NormalizationMode,
    guard: i64,
    digits: usize,
    table_order: i64,
    fixed: Option<CharacterTable<FixedT>>,
    symbolic: Option<CharacterTable<SymbolicT>>,
}

impl<'a> Evaluator<'a> {
    fn new(t: &'a TValue, mode: NormalizationMode, guard: i64, digits: usize, table_order: i64) -> Self {
        Self { t, mode, guard, digits, table_order, fixed: None, symbolic: None }
    }

    fn value(&mut self, sig: &Signature, session: &mut Session) -> Result<ValuePayload> {
        let order = sig.required_order(self.guard);
        let (mode, table_order) = (self.mode, self.table_order);
        if let TValue::Real(t0) = self.t {
            if *t0 > Rational::from_integer(0.into()) && !session.cache.is_enabled() {
                let table = self.fixed.get_or_insert_with(|| CharacterTable::new(FixedT(t0.clone()), mode, table_order));
                return Ok(ValuePayload::Rational(RationalJson::from_rational(&renormalised_value_in(table, sig)?)));
            }
        }
        let table = self.symbolic.get_or_insert_with(|| CharacterTable::new(SymbolicT, mode, table_order));
        let value = session.symbolic(table, sig, order)?;
        Ok(match self.t {
            TValue::Symbolic => ValuePayload::RationalFunction(RatFuncJson::from_ratfunc(&value)),
            TValue::Real(t0) => ValuePayload::Rational(RationalJson::from_rational(&value.eval(t0)?)),
            TValue::Complex(re, im) => {
                if *re <= Rational::from_integer(0.into()) {
                    return Err(Error::InvalidParameter("real part of t must be positive".into()));
                }
                complex_payload(&value, re, im, self.digits)?
            }
        })
    }

    fn finish(self, session: &mut Session) {
        if let Some(t) = &self.fixed {
            session.absorb(t.stats());
        }
        if let Some(t) = &self.symbolic {
            session.absorb(t.stats());
        }
    }
}

fn cmd_renorm(a: &RenormArgs, session: &mut Session, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    if a.guard < 0 {
        return Err(usage("guard must be non-negative"));
    }
    let mode: NormalizationMode = a.mode.into();
    let order = a.sig.required_order(a.guard);
    let mut eval = Evaluator::new(&a.t, mode, a.guard, a.digits, order);
    let value = eval.value(&a.sig, session);
    eval.finish(session);
    let record = OutputRecord {
        signature: a.sig.arguments(),
        mode: mode.tag().into(),
        t: a.t.label(),
        value: value?,
        order_used: order,
    };
    match a.format {
        Format::Json => write_line(out, &record.to_json()),
        Format::Plain | Format::Csv => write_line(out, &record.value.plain()),
    }
}

fn cmd_table(a: &TableArgs, session: &mut Session, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    if a.max_k == 0 {
        return Err(usage("--max must be at least 1"));
    }
    if a.guard < 0 {
        return Err(usage("guard must be non-negative"));
    }
    let mode: NormalizationMode = a.mode.into();
    let table_order = 2 * a.max_k as i64 + 2 + a.guard;
    let mut eval = Evaluator::new(&a.t, mode, a.guard, 30, table_order);
    let mut rows = Vec::new();
    let mut failure = None;
    'outer: for k1 in 1..=a.max_k {
        let mut row = Vec::new();
        for k2 in 1..=a.max_k {
            let sig = Signature::new(vec![k1, k2]).map_err(Failure::from)?;
            match eval.value(&sig, session) {
                Ok(v) => row.push(v),
                Err(e) => {
                    failure = Some(e);
                    break 'outer;
                }
            }
        }
        rows.push(row);
    }
    eval.finish(session);
    if let Some(e) = failure {
        return Err(e.into());
    }
    match a.format {
        Format::Json => {
            let record = TableRecord { mode: mode.tag().into(), t: a.t.label(), max_k: a.max_k, rows };
            write_line(out, &serde_json::to_string(&record).expect("records serialise"))
        }
        Format::Csv => {
            let header: Vec<String> = (1..=a.max_k).map(|k| format!("-{k}")).collect();
            write_line(out, &format!("k1\\k2,{}", header.join(",")))?;
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(ValuePayload::plain).collect();
                write_line(out, &format!("-{},{}", i + 1, cells.join(",")))?;
            }
            Ok(())
        }
        Format::Plain => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ValuePayload::plain).collect()).collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(3);
            let mut header = format!("{:>6}", "k1\\k2");
            for k in 1..=a.max_k {
                header.push_str(&format!("  {:>width$}", format!("-{k}")));
            }
            write_line(out, &header)?;
            for (i, row) in cells.iter().enumerate() {
                let mut line = format!("{:>6}", format!("-{}", i + 1));
                for c in row {
                    line.push_str(&format!("  {c:>width$}"));
                }
                write_line(out, &line)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SeriesTerm {
    degree: i64,
    value: ValuePayload,
}

#[derive(Serialize)]
struct SeriesRecord {
    signature: Vec<i64>,
    mode: String,
    t: String,
    kind: String,
    lo: i64,
    /// Highest known degree; absent for an exact Laurent polynomial.
    hi: Option<i64>,
    terms: Vec<SeriesTerm>,
}

fn series_of<D: Deformation>(table: &mut CharacterTable<D>, sig: &Signature, kind: SeriesKind) -> Result<LaurentSeries<D::Coeff>> {
    let w = sig.to_word();
    match kind {
        SeriesKind::Psi => table.psi(&w),
        SeriesKind::Minus => table.minus(&w),
        SeriesKind::Plus => table.plus(&w),
        SeriesKind::Prepared => table.prepared(&w),
    }
}

fn cmd_series(a: &SeriesArgs, session: &mut Session, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let mode: NormalizationMode = a.mode.into();
    if a.order < -1 {
        return Err(usage("--order must be at least -1"));
    }
    let kind = format!("{:?}", a.kind).to_lowercase();
    // products with pole parts of prefixes consume up to weight + depth orders
    let table_order = a.order + a.sig.required_order(0);
    let (text, lo, hi, terms) = match &a.t {
        TValue::Symbolic => {
            let mut table = CharacterTable::new(SymbolicT, mode, table_order);
            let s = series_of(&mut table, &a.sig, a.kind);
            session.absorb(table.stats());
            let s = s?.truncate(a.order);
            let terms = s
                .terms()
                .map(|(d, c)| SeriesTerm { degree: d, value: ValuePayload::RationalFunction(RatFuncJson::from_ratfunc(c)) })
                .collect();
            (s.format_with(|c| if c.as_constant().is_some() { c.to_string() } else { format!("[{c}]") }), s.lo(), s.hi(), terms)
        }
        TValue::Real(t0) => {
            let mut table = CharacterTable::new(FixedT(t0.clone()), mode, table_order);
            let s = series_of(&mut table, &a.sig, a.kind);
            session.absorb(table.stats());
            let s = s?.truncate(a.order);
            let terms = s
                .terms()
                .map(|(d, c)| SeriesTerm { degree: d, value: ValuePayload::Rational(RationalJson::from_rational(c)) })
                .collect();
            (s.to_string(), s.lo(), s.hi(), terms)
        }
        TValue::Complex(..) => return Err(usage("series needs t = sym or a rational value")),
    };
    match a.format {
        Format::Json => {
            let record = SeriesRecord {
                signature: a.sig.arguments(),
                mode: mode.tag().into(),
                t: a.t.label(),
                kind,
                lo,
                hi,
                terms,
            };
            write_line(out, &serde_json::to_string(&record).expect("records serialise"))
        }
        Format::Plain | Format::Csv => write_line(out, &text),
    }
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    if a.max_weight == 0 || a.max_depth == 0 {
        return Err(usage("--max-weight and --max-depth must be positive"));
    }
    let limits = SuiteLimits {
        hopf_weight: a.hopf_weight.unwrap_or(a.max_weight.min(6)),
        weight: a.max_weight,
        depth: a.max_depth,
    };
    let outcomes = run_all(limits);
    for o in &outcomes {
        write_line(out, &o.to_string())?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if failed == 0 {
        write_line(out, "all identities pass")
    } else {
        write_line(out, &format!("{failed} suite(s) failed"))?;
        Err(Failure { code: 1, message: format!("{failed} suite(s) failed") })
    }
}

#[derive(Serialize)]
struct NumericRecord {
    ks: Vec<i64>,
    model: String,
    q: Option<String>,
    z: Option<String>,
    t: String,
    cutoff: u64,
    re: String,
    im: String,
    tail_bound: Option<String>,
}

fn cmd_numeric(a: &NumericArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let (t_re, t_im) = match &a.t {
        TValue::Symbolic => return Err(usage("numeric needs a value for t")),
        TValue::Real(r) => (r.clone(), Rational::from_integer(0.into())),
        TValue::Complex(re, im) => (re.clone(), im.clone()),
    };
    let digits = a.digits.max(15);
    if let Some(order) = a.compare_order {
        let z = a.z.as_ref().ok_or_else(|| usage("--compare-order needs --z"))?;
        if t_im != Rational::from_integer(0.into()) {
            return Err(usage("--compare-order needs a real t"));
        }
        let sig = Signature::from_arguments(&a.ks.0).map_err(Failure::from)?;
        let c = laurent_consistency(&sig, &t_re, z, order, digits)?;
        write_line(out, &format!("symbolic = {}", c.symbolic_value.sci(digits)))?;
        write_line(out, &format!("numeric = {}", c.numeric_value.sci(digits)))?;
        write_line(out, &format!("relative error = {}", c.relative_error.sci(6)))?;
        return write_line(out, &format!("cutoff = {}", c.cutoff));
    }
    let (re, im, tail) = match a.model {
        Model::Modified => {
            let params = match (&a.q, &a.z) {
                (Some(q), None) => QEvalParams::new(q.clone(), t_re, t_im, a.cutoff, digits)?,
                (None, Some(z)) => QEvalParams::from_log_q(z.clone(), t_re, t_im, a.cutoff, digits)?,
                _ => return Err(usage("give exactly one of --q and --z")),
            };
            let v = qmzv_modified(&a.ks.0, &params)?;
            (v.re.sci(digits), v.im.sci(digits), Some(v.tail_bound.sci(6)))
        }
        Model::Sz => {
            let q = a.q.as_ref().ok_or_else(|| usage("the sz model needs --q"))?;
            let ks: Vec<u32> = a
                .ks
                .0
                .iter()
                .map(|&k| u32::try_from(k).ok().filter(|&k| k > 0))
                .collect::<Option<_>>()
                .ok_or_else(|| usage("the sz model needs positive indices"))?;
            let v = qmzv_sz(&ks, q, a.cutoff, digits)?;
            (v.sci(digits), "0".into(), None)
        }
    };
    match a.format {
        Format::Json => {
            let record = NumericRecord {
                ks: a.ks.0.clone(),
                model: format!("{:?}", a.model).to_lowercase(),
                q: a.q.as_ref().map(format_rational),
                z: a.z.as_ref().map(format_rational),
                t: a.t.label(),
                cutoff: a.cutoff,
                re,
                im,
                tail_bound: tail,
            };
            write_line(out, &serde_json::to_string(&record).expect("records serialise"))
        }
        Format::Plain | Format::Csv => {
            if im == "0" {
                write_line(out, &format!("value = {re}"))?;
            } else {
                write_line(out, &format!("value = {re} + ({im})i"))?;
            }
            match tail {
                Some(b) => write_line(out, &format!("tail bound = {b}")),
                None => write_line(out, "tail bound = n/a"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qzeta_core::arith::{int, rat};

    #[test]
    fn parses_t_values() {
        assert_eq!(parse_t("sym").unwrap(), TValue::Symbolic);
        assert_eq!(parse_t("3/2").unwrap(), TValue::Real(rat(3, 2)));
        assert_eq!(parse_t("1.5").unwrap(), TValue::Real(rat(3, 2)));
        assert_eq!(parse_t("2+1i").unwrap(), TValue::Complex(int(2), int(1)));
        assert_eq!(parse_t("2-i").unwrap(), TValue::Complex(int(2), int(-1)));
        assert_eq!(parse_t("0.5+0.25i").unwrap(), TValue::Complex(rat(1, 2), rat(1, 4)));
        assert_eq!(parse_t("3i").unwrap(), TValue::Complex(int(0), int(3)));
        assert_eq!(parse_t("1+0i").unwrap(), TValue::Real(int(1)));
        assert!(parse_t("abc").is_err());
        assert_eq!(TValue::Complex(int(2), int(-1)).label(), "2-1i");
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(Failure::from(Error::InsufficientTruncation { needed: 0, known: -1 }).code, 3);
        assert_eq!(Failure::from(Error::ZeroLeadingIndex).code, 2);
        assert_eq!(Failure::from(Error::PoleAtT("1".into())).code, 1);
    }

    #[test]
    fn parses_signatures() {
        assert_eq!(parse_signature("-1,-3").unwrap().ks(), &[1, 3]);
        assert!(parse_signature("0").is_err());
        assert!(parse_signature("1").is_err());
        assert!(parse_signature("-1,x").is_err());
    }
}

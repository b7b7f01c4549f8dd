//! Command-line front end.
//!
//! Exit codes: 0 success (for `decide`, POSITIVE), 1 for a `decide` verdict of
//! ZERO or a `scan` with failures, 2 usage error, 3 domain error (a zero
//! leading coefficient).

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lincoprime::num_rational::Ratio;
use lincoprime::{
    convergence_table, decide, exact_density, exhaustive_check, is_everywhere_coprime,
    reduce_coeffs, witness, BigReductionTrace, ConvergenceRow, Error, Int, LinearPoly, RawTerminal,
    Reason, ReducedForm, ReductionStep, ReductionTrace, SweepReport, WitnessMethod,
};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Map, Number, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ZERO_DENSITY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "lincoprime",
    version,
    about = "Coprime evaluations of two linear polynomials f(x) = ax + b, g(x) = cx + d"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Coeffs {
    #[arg(value_parser = parse_int)]
    a: BigInt,
    #[arg(value_parser = parse_int)]
    b: BigInt,
    #[arg(value_parser = parse_int)]
    c: BigInt,
    #[arg(value_parser = parse_int)]
    d: BigInt,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the reduction trace and the canonical (u, v, s).
    #[command(allow_negative_numbers = true)]
    Reduce(Coeffs),
    /// Exact density of x with gcd(f(x), g(x)) = 1, with period and local factors.
    #[command(allow_negative_numbers = true)]
    Density(Coeffs),
    /// POSITIVE or ZERO with a reason. Exit status 0 for POSITIVE, 1 for ZERO.
    #[command(allow_negative_numbers = true)]
    Decide(Coeffs),
    /// An x in [0, s) with gcd(f(x), g(x)) = 1, or NONE.
    ///
    /// When s = 0 (a*d = b*c) the answer is always NONE, even if some isolated
    /// x makes |u*x + v| = 1: such points do not certify positive density.
    #[command(allow_negative_numbers = true)]
    Witness(Coeffs),
    /// Whether gcd(f(x), g(x)) = 1 for every integer x.
    #[command(allow_negative_numbers = true)]
    Everywhere(Coeffs),
    /// Compare the coprime share of x in [-N, N] with the exact density.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[command(flatten)]
        coeffs: Coeffs,
        /// Window half-width.
        #[arg(long = "N", value_name = "INT")]
        n: Option<u64>,
        /// Additional window half-widths, comma separated.
        #[arg(long, value_delimiter = ',', value_name = "N1,N2,...")]
        table: Vec<u64>,
    },
    /// Check every quadruple with |a|, |b|, |c|, |d| <= K and a, c != 0.
    Scan {
        #[arg(long, value_name = "K")]
        bound: u64,
    },
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s).map_err(|_| format!("not an integer: {s:?}"))
}

/// Parses `argv` (including the program name), runs the command, and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Domain(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroLeadingCoefficient(_) => Failure::Domain(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Reduce(k) => {
            let trace = reduce_coeffs(k.a.clone(), k.b.clone(), k.c.clone(), k.d.clone())?;
            print_reduce(k, &trace, fmt, out)?;
            Ok(EXIT_OK)
        }
        Command::Density(k) => {
            let trace = reduce_coeffs(k.a.clone(), k.b.clone(), k.c.clone(), k.d.clone())?;
            print_density(&trace.reduced, fmt, out)?;
            Ok(EXIT_OK)
        }
        Command::Decide(k) => {
            let verdict = decide(&k.a, &k.b, &k.c, &k.d)?;
            let (label, reason, divisor) = match &verdict.reason {
                Reason::Positive => ("POSITIVE", "positive", None),
                Reason::CommonFactor(j) => ("ZERO", "common-factor", Some(j)),
                Reason::Proportional => ("ZERO", "proportional", None),
            };
            match fmt {
                OutputFormat::Human => match (verdict.positive_density, divisor) {
                    (true, _) => writeln!(out, "{label}")?,
                    (false, Some(j)) => writeln!(out, "{label} {reason} {j}")?,
                    (false, None) => writeln!(out, "{label} {reason}")?,
                },
                OutputFormat::Json => {
                    let mut obj = Map::new();
                    obj.insert("verdict".into(), json!(label));
                    obj.insert("reason".into(), json!(reason));
                    if let Some(j) = divisor {
                        obj.insert("divisor".into(), int(j));
                    }
                    writeln!(out, "{}", Value::Object(obj))?;
                }
                OutputFormat::Csv => {
                    writeln!(out, "verdict,reason,divisor")?;
                    let j = divisor.map(|j| j.to_string()).unwrap_or_default();
                    writeln!(out, "{label},{reason},{j}")?;
                }
            }
            Ok(if verdict.positive_density {
                EXIT_OK
            } else {
                EXIT_ZERO_DENSITY
            })
        }
        Command::Witness(k) => {
            let trace = reduce_coeffs(k.a.clone(), k.b.clone(), k.c.clone(), k.d.clone())?;
            let w = witness(&trace.reduced);
            let method = match w.method {
                WitnessMethod::ModularInverse => "modular-inverse",
                WitnessMethod::PeriodScan => "period-scan",
                WitnessMethod::None => "none",
            };
            match fmt {
                OutputFormat::Human => match &w.x {
                    Some(x) => writeln!(out, "{x} {method}")?,
                    None => writeln!(out, "NONE")?,
                },
                OutputFormat::Json => {
                    let x = w.x.as_ref().map(int).unwrap_or(Value::Null);
                    writeln!(out, "{}", json!({ "x": x, "method": method }))?;
                }
                OutputFormat::Csv => {
                    writeln!(out, "x,method")?;
                    let x = w.x.as_ref().map(|x| x.to_string()).unwrap_or_default();
                    writeln!(out, "{x},{method}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Everywhere(k) => {
            let all = is_everywhere_coprime(&k.a, &k.b, &k.c, &k.d)?;
            match fmt {
                OutputFormat::Human => writeln!(out, "{all}")?,
                OutputFormat::Json => writeln!(out, "{}", json!({ "everywhere_coprime": all }))?,
                OutputFormat::Csv => writeln!(out, "everywhere_coprime\n{all}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            coeffs: k,
            n,
            table,
        } => {
            let mut ns: Vec<u64> = n.iter().chain(table.iter()).copied().collect();
            if ns.is_empty() {
                return Err(Failure::Usage("verify needs --N or --table".into()));
            }
            ns.sort_unstable();
            ns.dedup();
            let rows = convergence_table(&k.a, &k.b, &k.c, &k.d, &ns)?;
            print_convergence(k, &rows, fmt, out)?;
            Ok(EXIT_OK)
        }
        Command::Scan { bound } => {
            if *bound == 0 {
                return Err(Failure::Usage("--bound must be positive".into()));
            }
            let report = exhaustive_check::<i64>(*bound)?;
            print_scan(&report, fmt, out)?;
            Ok(if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_ZERO_DENSITY
            })
        }
    }
}

/// JSON number holding an integer of any size.
pub fn int<T: Int>(n: &T) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

/// `n/d`, always with an explicit denominator.
pub fn ratio_str<T: Int>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering of a nonnegative rational to six places, rounding half up.
pub fn decimal6(r: &Ratio<BigInt>) -> String {
    let scale = BigInt::from(1_000_000);
    let two = BigInt::from(2);
    let scaled = (r.numer() * &scale * &two + r.denom()) / (r.denom() * &two);
    let whole = &scaled / &scale;
    let frac = (&scaled % &scale).abs();
    format!("{whole}.{frac:06}")
}

fn poly_json(p: &LinearPoly<BigInt>) -> Value {
    json!({ "a": int(p.a()), "b": int(p.b()) })
}

fn signed_term(n: &BigInt) -> String {
    if n.is_negative() {
        format!("- {}", n.abs())
    } else {
        format!("+ {n}")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// JSON form of a reduction, as printed by `reduce --format json`.
pub fn trace_to_json(coeffs: [&BigInt; 4], trace: &BigReductionTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "a_i": int(&s.a_i),
                "b_i": int(&s.b_i),
                "a_next": int(&s.a_next),
                "b_next": int(&s.b_next),
                "e_next": int(&s.e_next),
            })
        })
        .collect();
    let rf = &trace.reduced;
    json!({
        "a": int(coeffs[0]),
        "b": int(coeffs[1]),
        "c": int(coeffs[2]),
        "d": int(coeffs[3]),
        "normalized_f": poly_json(&trace.normalized_f),
        "normalized_g": poly_json(&trace.normalized_g),
        "f_negated": trace.f_negated,
        "g_negated": trace.g_negated,
        "swapped": trace.swapped,
        "steps": steps,
        "raw": { "u": int(&trace.raw.u), "v": int(&trace.raw.v), "s": int(&trace.raw.s) },
        "u": int(rf.u()),
        "v": int(rf.v()),
        "s": int(rf.s()),
        "step_count": trace.step_count,
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

fn big(v: &Value, key: &str) -> Result<BigInt, String> {
    match field(v, key)? {
        Value::Number(n) => parse_int(&n.to_string()),
        other => Err(format!("field {key:?} is not an integer: {other}")),
    }
}

fn flag(v: &Value, key: &str) -> Result<bool, String> {
    field(v, key)?
        .as_bool()
        .ok_or_else(|| format!("field {key:?} is not a boolean"))
}

fn poly(v: &Value, key: &str) -> Result<LinearPoly<BigInt>, String> {
    let p = field(v, key)?;
    LinearPoly::new(big(p, "a")?, big(p, "b")?).ok_or_else(|| format!("{key} has a = 0"))
}

/// Parses the output of [`trace_to_json`] back into a trace. The result is
/// not checked; call [`ReductionTrace::verify_replay`] on it.
pub fn trace_from_json(v: &Value) -> Result<BigReductionTrace, String> {
    let steps = field(v, "steps")?
        .as_array()
        .ok_or("steps is not an array")?
        .iter()
        .map(|s| {
            Ok(ReductionStep {
                a_i: big(s, "a_i")?,
                b_i: big(s, "b_i")?,
                a_next: big(s, "a_next")?,
                b_next: big(s, "b_next")?,
                e_next: big(s, "e_next")?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let raw = field(v, "raw")?;
    let step_count = field(v, "step_count")?
        .as_u64()
        .ok_or("step_count is not a count")? as usize;
    Ok(ReductionTrace {
        normalized_f: poly(v, "normalized_f")?,
        normalized_g: poly(v, "normalized_g")?,
        f_negated: flag(v, "f_negated")?,
        g_negated: flag(v, "g_negated")?,
        swapped: flag(v, "swapped")?,
        steps,
        raw: RawTerminal {
            u: big(raw, "u")?,
            v: big(raw, "v")?,
            s: big(raw, "s")?,
        },
        reduced: ReducedForm::new(big(v, "u")?, big(v, "v")?, big(v, "s")?)
            .map_err(|e| e.to_string())?,
        step_count,
    })
}

fn print_reduce(
    k: &Coeffs,
    trace: &BigReductionTrace,
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let rf = &trace.reduced;
    match fmt {
        OutputFormat::Human => {
            writeln!(
                out,
                "f = {}x {}, g = {}x {}",
                k.a,
                signed_term(&k.b),
                k.c,
                signed_term(&k.d)
            )?;
            writeln!(
                out,
                "normalized: {}, {} (f negated: {}, g negated: {}, swapped: {})",
                trace.normalized_f,
                trace.normalized_g,
                yes_no(trace.f_negated),
                yes_no(trace.g_negated),
                yes_no(trace.swapped)
            )?;
            for (i, s) in trace.steps.iter().enumerate() {
                let (ra, rb) = s.remainder();
                writeln!(
                    out,
                    "step {}: {}x {} = {}*({}x {}) + ({}x {})",
                    i + 1,
                    s.a_i,
                    signed_term(&s.b_i),
                    s.e_next,
                    s.a_next,
                    signed_term(&s.b_next),
                    ra,
                    signed_term(&rb)
                )?;
            }
            writeln!(
                out,
                "terminal: u = {}, v = {}, s = {} (m = {})",
                trace.raw.u, trace.raw.v, trace.raw.s, trace.step_count
            )?;
            writeln!(out, "(u, v, s) = ({}, {}, {})", rf.u(), rf.v(), rf.s())
        }
        OutputFormat::Json => {
            writeln!(out, "{}", trace_to_json([&k.a, &k.b, &k.c, &k.d], trace))
        }
        OutputFormat::Csv => {
            writeln!(out, "step,a_i,b_i,a_next,b_next,e_next")?;
            for (i, s) in trace.steps.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    i + 1,
                    s.a_i,
                    s.b_i,
                    s.a_next,
                    s.b_next,
                    s.e_next
                )?;
            }
            Ok(())
        }
    }
}

fn print_density(
    rf: &ReducedForm<BigInt>,
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let rep = exact_density(rf);
    let decimal = decimal6(&rep.density);
    match fmt {
        OutputFormat::Human => {
            writeln!(out, "(u, v, s) = ({}, {}, {})", rf.u(), rf.v(), rf.s())?;
            writeln!(out, "density {} = {decimal}", ratio_str(&rep.density))?;
            writeln!(out, "period {}", rep.period)?;
            writeln!(out, "coprime residues {}", rep.coprime_residues)?;
            writeln!(out, "positive {}", rep.positive)?;
            for (p, f) in &rep.local_factors {
                writeln!(out, "local factor {p}: {}", ratio_str(f))?;
            }
            Ok(())
        }
        OutputFormat::Json => {
            let local: Map<String, Value> = rep
                .local_factors
                .iter()
                .map(|(p, f)| (p.to_string(), Value::String(ratio_str(f))))
                .collect();
            let v = json!({
                "u": int(rf.u()),
                "v": int(rf.v()),
                "s": int(rf.s()),
                "density": ratio_str(&rep.density),
                "decimal": decimal,
                "period": int(&rep.period),
                "coprime_residues": int(&rep.coprime_residues),
                "positive": rep.positive,
                "local_factors": local,
            });
            writeln!(out, "{v}")
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "u,v,s,density,decimal,period,coprime_residues,positive"
            )?;
            writeln!(
                out,
                "{},{},{},{},{decimal},{},{},{}",
                rf.u(),
                rf.v(),
                rf.s(),
                ratio_str(&rep.density),
                rep.period,
                rep.coprime_residues,
                rep.positive
            )
        }
    }
}

fn print_convergence(
    k: &Coeffs,
    rows: &[ConvergenceRow<BigInt>],
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match fmt {
        OutputFormat::Human => {
            for r in rows {
                writeln!(
                    out,
                    "N={} empirical={} ({}) exact={} abs_error={} bound={} {}",
                    r.n,
                    ratio_str(&r.empirical),
                    decimal6(&r.empirical),
                    ratio_str(&r.exact),
                    ratio_str(&r.abs_error),
                    ratio_str(&r.bound),
                    if r.within_bound() { "ok" } else { "EXCEEDED" }
                )?;
            }
            Ok(())
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "N": r.n,
                        "empirical": ratio_str(&r.empirical),
                        "exact": ratio_str(&r.exact),
                        "abs_error": ratio_str(&r.abs_error),
                        "bound": ratio_str(&r.bound),
                        "within_bound": r.within_bound(),
                    })
                })
                .collect();
            let v = json!({
                "a": int(&k.a),
                "b": int(&k.b),
                "c": int(&k.c),
                "d": int(&k.d),
                "rows": rows,
            });
            writeln!(out, "{v}")
        }
        OutputFormat::Csv => {
            writeln!(out, "N,empirical,exact,abs_error,bound")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    ratio_str(&r.empirical),
                    ratio_str(&r.exact),
                    ratio_str(&r.abs_error),
                    ratio_str(&r.bound)
                )?;
            }
            Ok(())
        }
    }
}

fn print_scan(
    report: &SweepReport<i64>,
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match fmt {
        OutputFormat::Human => {
            writeln!(out, "bound {}", report.bound)?;
            writeln!(out, "quadruples_checked {}", report.quadruples_checked)?;
            writeln!(out, "mismatches {}", report.mismatches.len())?;
            for m in &report.mismatches {
                writeln!(
                    out,
                    "  ({}, {}, {}, {}) predicted {} observed {}",
                    m.a, m.b, m.c, m.d, m.predicted, m.observed
                )?;
            }
            for (name, list) in report.failure_lists() {
                writeln!(out, "{name} {}", list.len())?;
                for f in list {
                    writeln!(out, "  ({}, {}, {}, {}) {}", f.a, f.b, f.c, f.d, f.detail)?;
                }
            }
            writeln!(out, "elapsed {:.3}s", report.elapsed)?;
            writeln!(
                out,
                "{}",
                if report.is_clean() { "CLEAN" } else { "FAILED" }
            )
        }
        OutputFormat::Json => {
            let v = serde_json::to_value(report).map_err(std::io::Error::other)?;
            writeln!(out, "{v}")
        }
        OutputFormat::Csv => {
            writeln!(out, "kind,a,b,c,d,detail")?;
            for m in &report.mismatches {
                writeln!(
                    out,
                    "mismatch,{},{},{},{},predicted={} observed={}",
                    m.a, m.b, m.c, m.d, m.predicted, m.observed
                )?;
            }
            for (name, list) in report.failure_lists() {
                let kind = name.trim_end_matches("_failures");
                for f in list {
                    writeln!(
                        out,
                        "{kind},{},{},{},{},\"{}\"",
                        f.a,
                        f.b,
                        f.c,
                        f.d,
                        f.detail.replace('"', "\"\"")
                    )?;
                }
            }
            Ok(())
        }
    }
}

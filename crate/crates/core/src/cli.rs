//! The `vtl` command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{ClassTable, Element};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::field::{parse_rational, BigRational, RationalFunction};
use crate::projector::{self, Construction, TraceVariant};
use crate::verify::{self, Options, Report, Suite};

/// Largest `n` for table emission and enumeration.
pub const EMIT_MAX: usize = 8;
/// Largest `n` for the product-based constructions.
pub const PRODUCT_MAX: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "vtl", version, about = "Projectors of the virtual Temperley-Lieb algebra, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the projector f_n as a class table or as a full element.
    Emit(EmitArgs),
    /// Read an element or class table in JSON and print it again.
    Read(ReadArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Markov trace of f_n and the two closed forms.
    Trace(TraceArgs),
    /// Specialize f_n at a rational value of d.
    Eval(EvalArgs),
    /// List the diagrams on n strands.
    Enumerate(EnumerateArgs),
    /// Check the defining relations of the generators.
    Relations(RelationsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, env = "VTL_FORMAT", default_value = "text")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "explicit", value_parser = parse_construction)]
    pub form: Construction,
    /// Emit every term instead of the class table.
    #[arg(long)]
    pub expand: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ReadArgs {
    /// JSON file; standard input when absent or `-`.
    pub input: Option<PathBuf>,
    /// Expand a class table into a full element.
    #[arg(long)]
    pub expand: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    /// Suites to run; all suites admitting n when omitted.
    #[arg(long = "suite", value_parser = parse_suite)]
    pub suites: Vec<Suite>,
    /// Lift the per-suite caps on n.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Include wall-clock times (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    /// Value of d as `p` or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long, default_value = "explicit", value_parser = parse_construction)]
    pub form: Construction,
    #[arg(long)]
    pub expand: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// Keep only diagrams with this many through strands.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct RelationsArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

fn parse_construction(s: &str) -> std::result::Result<Construction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` and runs the command. Returns the process exit status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli.command, stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "vtl: error: {e}");
            2
        }
    }
}

/// Runs one command. `Ok(false)` means it ran but some check failed.
pub fn run(command: &Command, stdout: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Emit(a) => with_output(&a.common, stdout, |w| emit(a, w).map(|_| true)),
        Command::Read(a) => with_output(&a.common, stdout, |w| read(a, w).map(|_| true)),
        Command::Verify(a) => with_output(&a.common, stdout, |w| verify(a, w)),
        Command::Trace(a) => with_output(&a.common, stdout, |w| trace(a, w).map(|_| true)),
        Command::Eval(a) => with_output(&a.common, stdout, |w| eval(a, w).map(|_| true)),
        Command::Enumerate(a) => with_output(&a.common, stdout, |w| enumerate(a, w).map(|_| true)),
        Command::Relations(a) => with_output(&a.common, stdout, |w| {
            check_n(a.n, 2, verify::Suite::Relations.range().1)?;
            let report = verify::check_relations(a.n)?;
            write_reports(&[report], a.common.format, w)
        }),
    }
}

fn with_output(
    common: &Common,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<bool>,
) -> Result<bool> {
    match &common.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_error(path.display(), e))?;
            let mut w = BufWriter::new(file);
            let ok = body(&mut w)?;
            w.flush().map_err(|e| io_error(path.display(), e))?;
            Ok(ok)
        }
        None => {
            let mut w = BufWriter::new(stdout);
            let ok = body(&mut w)?;
            w.flush().map_err(|e| io_error("stdout", e))?;
            Ok(ok)
        }
    }
}

fn io_error(target: impl std::fmt::Display, e: io::Error) -> Error {
    Error::InvalidArgument(format!("{target}: {e}"))
}

fn out(w: &mut dyn Write, s: &str) -> Result<()> {
    w.write_all(s.as_bytes()).map_err(|e| io_error("output", e))
}

fn check_n(n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::InvalidArgument(format!("n must lie in {lo}..={hi}, got {n}")));
    }
    Ok(())
}

fn cap_for(form: Construction) -> usize {
    match form {
        Construction::Explicit => EMIT_MAX,
        _ => PRODUCT_MAX,
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn emit(a: &EmitArgs, w: &mut dyn Write) -> Result<()> {
    check_n(a.n, 1, cap_for(a.form))?;
    let name = format!("f_{}", a.n);
    match (a.expand, a.form) {
        (false, form) => write_table(&projector::projector_table(a.n, form)?, &name, a.common.format, w),
        (true, Construction::Explicit) => stream_table(&projector::f_explicit(a.n)?, a.common.format, w),
        (true, form) => write_element(&*projector::projector_element(a.n, form)?, a.common.format, w),
    }
}

fn write_table(t: &ClassTable, name: &str, format: Format, w: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => out(w, &format!("{}\n", t.render(name))),
        Format::Json => out(w, &format!("{}\n", to_json(t)?)),
    }
}

fn write_element(e: &Element, format: Format, w: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => out(w, &e.to_text()),
        Format::Json => out(w, &format!("{}\n", to_json(e)?)),
    }
}

/// Expands a class table term by term without building the element. The
/// output is byte-identical to that of the expanded element.
fn stream_table(t: &ClassTable, format: Format, w: &mut dyn Write) -> Result<()> {
    let n = t.n();
    let mut failure = None;
    match format {
        Format::Text => {
            for l in 0..=n / 2 {
                let c = t.coeff(l);
                if c.is_zero() {
                    continue;
                }
                let c = c.to_string();
                Diagram::for_each(n, Some(n - 2 * l), |d| {
                    if failure.is_none() {
                        failure = out(w, &format!("{c}\t{d}\n")).err();
                    }
                })?;
            }
        }
        Format::Json => {
            let coeffs = t.coeffs().iter().map(to_json).collect::<Result<Vec<_>>>()?;
            out(w, &format!("{{\"n\":{n},\"terms\":["))?;
            let mut first = true;
            t.for_each_term(|d, _| {
                if failure.is_some() {
                    return;
                }
                let partner: Vec<String> = d.partners().iter().map(|p| p.to_string()).collect();
                let sep = if first { "" } else { "," };
                first = false;
                let line = format!(
                    "{sep}{{\"partner\":[{}],\"coeff\":{}}}",
                    partner.join(","),
                    coeffs[(n - d.through_strands()) / 2]
                );
                failure = out(w, &line).err();
            })?;
            out(w, "]}\n")?;
        }
    }
    failure.map_or(Ok(()), Err)
}

fn read(a: &ReadArgs, w: &mut dyn Write) -> Result<()> {
    let mut text = String::new();
    match a.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            File::open(p)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| io_error(p.display(), e))?;
        }
        _ => {
            io::stdin().read_to_string(&mut text).map_err(|e| io_error("stdin", e))?;
        }
    }
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("invalid JSON: {e}")))?;
    let bad = |e: serde_json::Error| Error::InvalidArgument(format!("invalid document: {e}"));
    if value.get("coeffs").is_some() {
        let t: ClassTable = serde_json::from_value(value).map_err(bad)?;
        if a.expand {
            write_element(&t.expand()?, a.common.format, w)
        } else {
            write_table(&t, &format!("f_{}", t.n()), a.common.format, w)
        }
    } else if value.get("terms").is_some() {
        let e: Element = serde_json::from_value(value).map_err(bad)?;
        write_element(&e, a.common.format, w)
    } else {
        Err(Error::InvalidArgument("expected an element (\"terms\") or a class table (\"coeffs\")".into()))
    }
}

fn verify(a: &VerifyArgs, w: &mut dyn Write) -> Result<bool> {
    if a.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let suites: Vec<Suite> = if a.suites.is_empty() {
        Suite::ALL
            .into_iter()
            .filter(|s| {
                let (lo, hi) = s.range();
                a.n >= lo && (a.n <= hi || a.force)
            })
            .collect()
    } else {
        a.suites.clone()
    };
    let opts = Options { seed: a.seed, force: a.force };
    let mut reports = Vec::with_capacity(suites.len());
    for s in suites {
        let mut r = verify::run(s, a.n, &opts)?;
        if !a.timing {
            r.elapsed_ms = None;
        }
        reports.push(r);
    }
    write_reports(&reports, a.common.format, w)
}

fn write_reports(reports: &[Report], format: Format, w: &mut dyn Write) -> Result<bool> {
    match format {
        Format::Text => {
            for r in reports {
                out(w, &r.to_text())?;
            }
        }
        Format::Json => out(w, &format!("{}\n", to_json(&reports)?))?,
    }
    Ok(reports.iter().all(Report::passed))
}

fn trace(a: &TraceArgs, w: &mut dyn Write) -> Result<()> {
    check_n(a.n, 1, EMIT_MAX)?;
    let table = projector::f_explicit(a.n)?;
    let oracle = table_trace(&table)?;
    let variants: Vec<(TraceVariant, RationalFunction, bool)> = TraceVariant::ALL
        .into_iter()
        .map(|v| {
            let value = projector::trace_closed_form(a.n, v)?;
            let matches = value == oracle;
            Ok((v, value, matches))
        })
        .collect::<Result<_>>()?;
    let matching: Vec<&str> = variants.iter().filter(|v| v.2).map(|v| v.0.name()).collect();
    match a.common.format {
        Format::Text => {
            out(w, &format!("tr(f_{}) = {oracle}\n", a.n))?;
            for (v, value, m) in &variants {
                let verdict = if *m { "matches" } else { "differs" };
                out(w, &format!("{}: {value} ({verdict})\n", v.name()))?;
            }
            out(w, &format!("matching: {}\n", if matching.is_empty() { "none".into() } else { matching.join(", ") }))?;
        }
        Format::Json => {
            let doc = json!({
                "n": a.n,
                "oracle": oracle,
                "variants": variants.iter().map(|(v, value, m)| json!({
                    "variant": v.name(), "value": value, "matches": m,
                })).collect::<Vec<_>>(),
                "matching": matching,
            });
            out(w, &format!("{}\n", to_json(&doc)?))?;
        }
    }
    Ok(())
}

/// Markov trace of the expansion of `t`, summed class by class.
fn table_trace(t: &ClassTable) -> Result<RationalFunction> {
    let n = t.n();
    let mut total = RationalFunction::from_int(0);
    for l in 0..=n / 2 {
        let c = t.coeff(l);
        if c.is_zero() {
            continue;
        }
        // loop-count histogram of the class, then one polynomial
        let mut hist = vec![0u64; n + 1];
        Diagram::for_each(n, Some(n - 2 * l), |d| hist[d.closure_loops()] += 1)?;
        let mut poly = RationalFunction::from_int(0);
        for (loops, count) in hist.into_iter().enumerate() {
            if count > 0 {
                poly = &poly + &(&RationalFunction::d_pow(loops as u32) * &RationalFunction::from_int(count as i64));
            }
        }
        total = &total + &(c * &poly);
    }
    Ok(total)
}

fn eval(a: &EvalArgs, w: &mut dyn Write) -> Result<()> {
    check_n(a.n, 1, cap_for(a.form))?;
    let v = parse_rational(&a.d)?;
    let excluded = projector::excluded_points(a.n);
    if v.is_integer() && excluded.iter().any(|&e| BigRational::from_integer(e.into()) == v) {
        let set: Vec<String> = excluded.iter().map(|e| e.to_string()).collect();
        return Err(Error::InvalidArgument(format!(
            "pole at d = {v}: d must avoid the excluded set {{0, -2, ..., -2n+4}} = {{{}}} for n = {}",
            set.join(", "),
            a.n
        )));
    }
    let point = v.to_string();
    if a.expand {
        let e = projector::projector_element(a.n, a.form)?.eval(&v)?;
        match a.common.format {
            Format::Text => {
                let mut terms: Vec<_> = e.terms().collect();
                terms.sort_by_key(|(d, _)| std::cmp::Reverse(d.through_strands()));
                for (d, c) in terms {
                    out(w, &format!("{c}\t{d}\n"))?;
                }
            }
            Format::Json => {
                let terms: Vec<Value> = e
                    .terms()
                    .map(|(d, c)| json!({ "partner": d.partners(), "coeff": c.to_string() }))
                    .collect();
                out(w, &format!("{}\n", to_json(&json!({ "n": a.n, "d": point, "terms": terms }))?))?;
            }
        }
        return Ok(());
    }
    let table = projector::projector_table(a.n, a.form)?;
    let values = table.coeffs().iter().map(|c| c.eval(&v)).collect::<std::result::Result<Vec<_>, _>>()?;
    match a.common.format {
        Format::Text => {
            let numeric = ClassTable::new(a.n, values.iter().map(|q| RationalFunction::from_rational(q.clone())).collect())?;
            let line = numeric.render(&format!("f_{}(d = {point})", a.n));
            out(w, &format!("{line}\n"))
        }
        Format::Json => {
            let coeffs: Vec<Value> =
                values.iter().enumerate().map(|(l, q)| json!({ "l": l, "value": q.to_string() })).collect();
            out(w, &format!("{}\n", to_json(&json!({ "n": a.n, "d": point, "coeffs": coeffs }))?))
        }
    }
}

fn enumerate(a: &EnumerateArgs, w: &mut dyn Write) -> Result<()> {
    check_n(a.n, 1, EMIT_MAX)?;
    let mut failure = None;
    match a.common.format {
        Format::Text => {
            Diagram::for_each(a.n, a.k, |d| {
                if failure.is_none() {
                    failure = out(w, &format!("{d}\n")).err();
                }
            })?;
        }
        Format::Json => {
            out(w, "[")?;
            let mut first = true;
            Diagram::for_each(a.n, a.k, |d| {
                if failure.is_some() {
                    return;
                }
                let sep = if first { "" } else { "," };
                first = false;
                failure = to_json(d).and_then(|s| out(w, &format!("{sep}{s}"))).err();
            })?;
            out(w, "]\n")?;
        }
    }
    failure.map_or(Ok(()), Err)
}

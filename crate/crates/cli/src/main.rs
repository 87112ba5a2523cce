//! `sigmach`: command-line access to σ-stacks, σ-machines and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

mod output;

use std::io::{self, IsTerminal, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use sigma_machine::classify::{classification_table, ClassificationRow};
use sigma_machine::conjecture::{EquidistributionReport, RlMinConvention};
use sigma_machine::enumerate::{count_sortable, count_sortable_123_formula, count_sorted, fertility, sorted_profile};
use sigma_machine::machine::{Event, SigmaStackOperator};
use sigma_machine::pattern::{count_xi_avoiders_brute, count_xi_avoiders_formula};
use sigma_machine::verify::{verify_conjectures, verify_tables, verify_theorems, Report, Status};
use sigma_machine::Permutation;

use output::{big_number, csv_writer, json_line, Format};

/// Largest n enumerated without --force.
const ENUMERATION_LIMIT: usize = 11;
/// Above this n, ξ-avoiders default to the closed form.
const XI_BRUTE_DEFAULT_MAX: usize = 10;

#[derive(Parser)]
#[command(name = "sigmach", version, about = "Traces, counts, classification and verification for σ-machines")]
struct Cli {
    /// Worker threads for exhaustive sweeps (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Step-by-step run of the σ-stack on one input.
    Trace { sigma: String, pi: String },
    /// The sequence a(1)..a(max-n) of sortable, sorted or ξ-avoiding permutations.
    Count(CountArgs),
    /// Class / effectiveness / ξ flags for every σ of one length.
    Classify {
        /// 3 ≤ length ≤ 6
        length: usize,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_sigma_len: usize,
        #[arg(short = 'n', long, default_value_t = 8)]
        max_n: usize,
        /// Right-to-left minima convention for ascent sequences.
        #[arg(long, value_enum, default_value_t = Convention::Strict)]
        convention: Convention,
    },
    /// Fertility of one γ, or the full sorted profile at length n.
    Fertility {
        sigma: String,
        #[arg(long, required_unless_present = "n", conflicts_with = "n")]
        gamma: Option<String>,
        #[arg(short = 'n', long)]
        n: Option<usize>,
    },
    /// Joint statistic distributions on Sort(312), F(3412) and A(201).
    Explore {
        #[arg(short = 'n', long, default_value_t = 7)]
        max_n: usize,
        /// Right-to-left minima convention for ascent sequences.
        #[arg(long, value_enum, default_value_t = Convention::Strict)]
        convention: Convention,
    },
}

#[derive(Args)]
struct CountArgs {
    #[arg(value_enum)]
    what: CountWhat,
    /// Required for sortable and sorted.
    sigma: Option<String>,
    #[arg(short = 'n', long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Allow enumerating beyond n = 11.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountWhat {
    Sortable,
    Sorted,
    Xi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Formula,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Theorems,
    Tables,
    Conjectures,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Strict,
    Weak,
}

impl From<Convention> for RlMinConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Strict => RlMinConvention::Strict,
            Convention::Weak => RlMinConvention::Weak,
        }
    }
}

enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<sigma_machine::Error> for Failure {
    fn from(e: sigma_machine::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    Ok(text.parse::<Permutation>()?)
}

fn unsupported(format: Format, what: &str) -> Failure {
    let name = format.to_possible_value().expect("not skipped").get_name().to_string();
    usage(format!("--format {name} is not available for {what}"))
}

fn joined(values: &[u8]) -> String {
    values.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
}

fn event_parts(e: Event) -> (&'static str, u8) {
    match e {
        Event::Push(v) => ("push", v),
        Event::Pop(v) => ("pop", v),
    }
}

fn trace(out: &mut impl Write, format: Format, sigma: &str, pi: &str) -> Outcome {
    let (sigma, pi) = (parse_perm(sigma)?, parse_perm(pi)?);
    let op = SigmaStackOperator::new(&sigma)?;
    let mut stack = op.start(&pi);
    let mut rows = Vec::new();
    while let Some(event) = stack.step() {
        rows.push((event, stack.content_top_to_bottom(), stack.output().to_vec()));
    }
    let result = Permutation::new(stack.output().to_vec())?;
    match format {
        Format::Plain => {
            writeln!(out, "{:>4}  {:<4}  {:>5}  {:<20}  output", "step", "op", "value", "stack (top→bottom)")?;
            for (i, (e, content, output)) in rows.iter().enumerate() {
                let (name, v) = event_parts(*e);
                writeln!(out, "{:>4}  {:<4}  {:>5}  {:<20}  {}", i + 1, name, v, joined(content), joined(output))?;
            }
            writeln!(out, "map_{}({}) = {}", sigma.to_compact(), pi.to_compact(), result.to_compact())?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["step", "op", "value", "stack", "output"])?;
            for (i, (e, content, output)) in rows.iter().enumerate() {
                let (name, v) = event_parts(*e);
                w.write_record([(i + 1).to_string(), name.into(), v.to_string(), joined(content), joined(output)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let events: Vec<Event> = rows.iter().map(|(e, ..)| *e).collect();
            json_line(out, &json!({ "sigma": sigma, "input": pi, "events": events, "output": result }))?;
        }
        Format::Bfile => return Err(unsupported(format, "trace")),
    }
    Ok(())
}

fn count(out: &mut impl Write, format: Format, args: &CountArgs) -> Outcome {
    let sigma = match (args.what, &args.sigma) {
        (CountWhat::Xi, Some(_)) => return Err(usage("count xi takes no σ")),
        (CountWhat::Xi, None) => None,
        (_, Some(text)) => Some(parse_perm(text)?),
        (_, None) => return Err(usage("count sortable/sorted needs σ")),
    };
    if args.max_n == 0 {
        return Err(usage("--max-n must be at least 1"));
    }
    let formula_for = |n: usize| match (args.what, args.method) {
        (_, Some(m)) => m == Method::Formula,
        (CountWhat::Xi, None) => n > XI_BRUTE_DEFAULT_MAX,
        _ => false,
    };
    if args.method == Some(Method::Formula) {
        let available = match args.what {
            CountWhat::Xi => true,
            CountWhat::Sortable => sigma.as_ref().is_some_and(|s| s.to_compact() == "123"),
            CountWhat::Sorted => false,
        };
        if !available {
            return Err(usage("no closed form for this count; use --method brute"));
        }
    }
    let enumerated_max = (1..=args.max_n).filter(|&n| !formula_for(n)).max().unwrap_or(0);
    if enumerated_max > ENUMERATION_LIMIT && !args.force {
        return Err(usage(format!(
            "refusing: would enumerate > {ENUMERATION_LIMIT}! permutations (n = {enumerated_max}); pass --force to proceed"
        )));
    }
    let mut terms = Vec::with_capacity(args.max_n);
    for n in 1..=args.max_n {
        let value: BigUint = match (args.what, &sigma) {
            (CountWhat::Xi, _) if formula_for(n) => count_xi_avoiders_formula(n),
            (CountWhat::Xi, _) => count_xi_avoiders_brute(n),
            (CountWhat::Sortable, Some(_)) if formula_for(n) => count_sortable_123_formula(n),
            (CountWhat::Sortable, Some(s)) => count_sortable(n, s)?,
            (CountWhat::Sorted, Some(s)) => count_sorted(n, s)?,
            (_, None) => unreachable!("σ checked above"),
        };
        terms.push((n, value));
    }
    output::sequence(out, format, &terms)?;
    Ok(())
}

fn classify(out: &mut impl Write, format: Format, length: usize, glyphs: bool) -> Outcome {
    if !(3..=6).contains(&length) {
        return Err(usage(format!("classify needs 3 ≤ length ≤ 6, got {length}")));
    }
    let rows = classification_table(length)?;
    let basis_text = |r: &ClassificationRow| {
        r.class_basis
            .as_ref()
            .map_or(String::new(), |b| b.iter().map(Permutation::to_compact).collect::<Vec<_>>().join(";"))
    };
    match format {
        Format::Plain => {
            let mark = |b: bool| match (glyphs, b) {
                (true, true) => "✓",
                (true, false) => "✗",
                (false, true) => "Y",
                (false, false) => "N",
            };
            let width = length.max(5);
            writeln!(out, "{:<width$}  Cls  Eff  ξ    hypothesis", "σ")?;
            for r in &rows {
                let (c, e, x) = (mark(r.is_class), mark(r.is_effective), mark(r.sort_inside_xi));
                writeln!(out, "{:<width$}  {c:<3}  {e:<3}  {x:<3}  {}", r.sigma.to_compact(), r.hypothesis)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["sigma", "class", "effective", "xi", "hypothesis", "basis"])?;
            for r in &rows {
                w.write_record([
                    r.sigma.to_compact(),
                    r.is_class.to_string(),
                    r.is_effective.to_string(),
                    r.sort_inside_xi.to_string(),
                    r.hypothesis.label().to_string(),
                    basis_text(r),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => json_line(out, &serde_json::to_value(&rows).expect("rows serialize"))?,
        Format::Bfile => return Err(unsupported(format, "classify")),
    }
    Ok(())
}

fn report_rows(report: &Report, format: Format, out: &mut impl Write) -> Outcome {
    match format {
        Format::Plain => write!(out, "{report}")?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["suite", "id", "sigma", "n", "status", "note"])?;
            for c in &report.checks {
                w.write_record([
                    c.suite.prefix().to_string(),
                    c.id.clone(),
                    c.sigma.as_ref().map_or(String::new(), Permutation::to_compact),
                    c.n.map_or(String::new(), |n| n.to_string()),
                    c.status.to_string(),
                    c.note.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json | Format::Bfile => unreachable!("handled by caller"),
    }
    Ok(())
}

fn verify(
    out: &mut impl Write,
    format: Format,
    suite: Suite,
    max_sigma_len: usize,
    max_n: usize,
    convention: Convention,
) -> Outcome {
    if format == Format::Bfile {
        return Err(unsupported(format, "verify"));
    }
    if max_n > ENUMERATION_LIMIT {
        return Err(usage(format!("refusing: would enumerate > {ENUMERATION_LIMIT}! permutations")));
    }
    let mut report = Report::default();
    let mut details = Vec::new();
    if matches!(suite, Suite::All | Suite::Theorems) {
        report.merge(verify_theorems(max_sigma_len, max_n));
    }
    if matches!(suite, Suite::All | Suite::Tables) {
        report.merge(verify_tables(max_sigma_len, max_n));
    }
    if matches!(suite, Suite::All | Suite::Conjectures) {
        let (r, d) = verify_conjectures(max_n, convention.into());
        report.merge(r);
        details = d;
    }
    match format {
        Format::Json => {
            let doc = json!({ "passed": report.passed(), "checks": report.checks, "equidistribution": details });
            json_line(out, &doc)?;
        }
        _ => {
            if format == Format::Plain {
                for d in &details {
                    writeln!(out, "{d}\n")?;
                }
            }
            report_rows(&report, format, out)?;
        }
    }
    eprintln!(
        "{} checks: {} pass, {} fail, {} finding",
        report.checks.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Finding)
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn fertility_cmd(out: &mut impl Write, format: Format, sigma: &str, gamma: Option<&str>, n: Option<usize>) -> Outcome {
    let sigma = parse_perm(sigma)?;
    match (gamma, n) {
        (Some(g), None) => {
            let gamma = parse_perm(g)?;
            if gamma.len() > ENUMERATION_LIMIT {
                return Err(usage(format!("refusing: would enumerate > {ENUMERATION_LIMIT}! permutations")));
            }
            let value = fertility(&sigma, &gamma)?;
            match format {
                Format::Plain => writeln!(out, "{value}")?,
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["gamma", "fertility"])?;
                    w.write_record([gamma.to_compact(), value.to_string()])?;
                    w.flush()?;
                }
                Format::Json => {
                    json_line(out, &json!({ "sigma": sigma, "gamma": gamma, "fertility": big_number(&value) }))?
                }
                Format::Bfile => return Err(unsupported(format, "fertility")),
            }
        }
        (None, Some(n)) => {
            if n > ENUMERATION_LIMIT {
                return Err(usage(format!("refusing: would enumerate > {ENUMERATION_LIMIT}! permutations")));
            }
            let profile = sorted_profile(n, &sigma)?;
            match format {
                Format::Plain => {
                    for (g, c) in &profile.entries {
                        writeln!(out, "{} {c}", g.to_compact())?;
                    }
                    writeln!(out, "total {}", profile.total())?;
                }
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["gamma", "fertility"])?;
                    for (g, c) in &profile.entries {
                        w.write_record([g.to_compact(), c.to_string()])?;
                    }
                    w.flush()?;
                }
                Format::Json => json_line(out, &serde_json::to_value(&profile).expect("profile serializes"))?,
                Format::Bfile => return Err(unsupported(format, "fertility")),
            }
        }
        _ => return Err(usage("give exactly one of --gamma or -n")),
    }
    Ok(())
}

fn explore(out: &mut impl Write, format: Format, max_n: usize, convention: Convention) -> Outcome {
    if max_n > ENUMERATION_LIMIT {
        return Err(usage(format!("refusing: would enumerate > {ENUMERATION_LIMIT}! permutations")));
    }
    let reports: Vec<_> =
        (1..=max_n).map(|n| EquidistributionReport::compute(n, convention.into())).collect::<Result<_, _>>()?;
    match format {
        Format::Plain => {
            for r in &reports {
                writeln!(out, "{r}\n")?;
            }
        }
        Format::Json => {
            let docs: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    v["equidistributed"] = Value::Bool(r.equidistributed());
                    v
                })
                .collect();
            json_line(out, &Value::Array(docs))?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "set", "first", "second", "count"])?;
            for r in &reports {
                for d in &r.distributions {
                    for ((a, b), c) in &d.counts {
                        w.write_record([
                            r.n.to_string(),
                            d.kind.to_string(),
                            a.to_string(),
                            b.to_string(),
                            c.to_string(),
                        ])?;
                    }
                }
            }
            w.flush()?;
        }
        Format::Bfile => return Err(unsupported(format, "explore")),
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| usage(format!("cannot configure worker pool: {e}")))?;
    }
    let stdout = io::stdout();
    let glyphs = stdout.is_terminal();
    let mut out = io::BufWriter::new(stdout.lock());
    let format = cli.format;
    let result = match &cli.command {
        Command::Trace { sigma, pi } => trace(&mut out, format, sigma, pi),
        Command::Count(args) => count(&mut out, format, args),
        Command::Classify { length } => classify(&mut out, format, *length, glyphs),
        Command::Verify { suite, max_sigma_len, max_n, convention } => {
            verify(&mut out, format, *suite, *max_sigma_len, *max_n, *convention)
        }
        Command::Fertility { sigma, gamma, n } => fertility_cmd(&mut out, format, sigma, gamma.as_deref(), *n),
        Command::Explore { max_n, convention } => explore(&mut out, format, *max_n, *convention),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end.
//!
//! Exit status: 0 on success or a holding verdict, 1 on a failing
//! verdict, 2 on usage or structural errors. Verdicts that hold only up to
//! a bound exit 0 and print an annotation line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::carrier::{builtin, BoundedN0, FiniteHemiring, Hemiring, Verdict, Witness};
use crate::format::{parse_carrier, parse_fuzzy, write_carrier, FormatError, FuzzySource};
use crate::fuzzy::{characteristic, h_product, is_fuzzy_kind, FuzzySet, GradeRule, ProductForm, DEFAULT_FUZZY_CAP};
use crate::grade::{parse_grade_list, Grade};
use crate::harness::{self, AggregateReport, Config, SuiteReport, COUNTEREXAMPLES, SUITES};
use crate::ideals::{
    enumerate_ideals, h_closure, is_h_hemiregular, is_kind, maximal_h_ideals, CrispSubset, IdealKind, Side, DEFAULT_SUBSET_CAP,
};
use crate::model_finder::{find, parse_filters, SearchQuery, MAX_SEARCH_ORDER};
use crate::structure::{
    is_maximal_fuzzy_h_ideal, is_normal, is_prime_definitional, is_prime_fuzzy_h_ideal, normalize_plus, StructureError,
};

#[derive(Debug, Parser)]
#[command(name = "fuzzy-hideals", version, about = "h-ideals and fuzzy h-ideals of small hemirings")]
pub struct Cli {
    /// Output format for verdicts and reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Single,
    Sums,
}

impl From<FormArg> for ProductForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Single => ProductForm::Single,
            FormArg::Sums => ProductForm::Sums,
        }
    }
}

#[derive(Debug, Args)]
pub struct CarrierArgs {
    /// Builtin carrier, e.g. `example21`, `zmod(4)`, or `n0` for N0 truncated at --bound.
    #[arg(long, conflicts_with = "file")]
    pub builtin: Option<String>,

    /// Carrier file in the text table format.
    #[arg(long)]
    pub file: Option<PathBuf>,

    /// Truncation bound for `n0`.
    #[arg(long, default_value_t = 60)]
    pub bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the hemiring axioms.
    Check(CarrierArgs),
    /// List ideals of a kind, or test one subset with --subset.
    Ideals {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long, default_value = "h")]
        kind: IdealKind,
        #[arg(long, default_value = "left")]
        side: Side,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// h-closure of a subset.
    Hclosure {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        subset: String,
    },
    /// Decide h-hemiregularity.
    Hemiregular(CarrierArgs),
    /// Check a fuzzy set against the fuzzy ideal conditions.
    FuzzyCheck {
        #[command(flatten)]
        carrier: CarrierArgs,
        /// Fuzzy file, inline grades `1,1/2,...`, or `rule even -> 1, odd -> 0.2`.
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "h")]
        kind: IdealKind,
        #[arg(long, default_value = "left")]
        side: Side,
    },
    /// h-product of two fuzzy sets.
    Hproduct {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long, value_enum, default_value_t = FormArg::Single)]
        form: FormArg,
    },
    /// Decide primality of a fuzzy h-ideal.
    Prime {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "left")]
        side: Side,
        /// Also run the definitional oracle over these grades (finite carriers).
        #[arg(long)]
        grades: Option<String>,
        #[arg(long, value_enum, default_value_t = FormArg::Single)]
        form: FormArg,
    },
    /// Print mu+ and whether mu is normal.
    Normalize {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "left")]
        side: Side,
    },
    /// Decide maximality of --mu, or list maximal h-ideals.
    Maximal {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value = "left")]
        side: Side,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        carrier: CarrierArgs,
        /// Suite id, comma-separated ids, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Named carrier set; `default` is the builtin test set.
        #[arg(long)]
        builtin_set: Option<String>,
        /// Coarse grade set.
        #[arg(long)]
        grades: Option<String>,
        /// Fine grade set.
        #[arg(long)]
        fine_grades: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormArg::Single)]
        form: FormArg,
        /// Also write JSON lines to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List suite ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Search hemirings of small order by filters.
    Find {
        /// Exact order; with --max-order, the smallest order searched.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
        /// Comma-separated filters, e.g. `has-k-ideal-not-h-ideal`.
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Directory for one carrier file per hit and an index file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A usage or structural error: exit status 2.
#[derive(Debug)]
struct Usage(String);

impl<E: std::error::Error> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

enum Carrier {
    Finite(FiniteHemiring),
    N0(BoundedN0),
}

impl Carrier {
    fn as_dyn(&self) -> &dyn Hemiring {
        match self {
            Carrier::Finite(h) => h,
            Carrier::N0(n) => n,
        }
    }

    fn finite(&self, what: &str) -> Result<&FiniteHemiring, Usage> {
        match self {
            Carrier::Finite(h) => Ok(h),
            Carrier::N0(_) => Err(usage(format!("{what} needs a finite carrier"))),
        }
    }
}

enum Mu {
    Table(FuzzySet),
    Rule(GradeRule),
}

impl Mu {
    fn as_table(&self, what: &str) -> Result<&FuzzySet, Usage> {
        match self {
            Mu::Table(t) => Ok(t),
            Mu::Rule(_) => Err(usage(format!("{what} needs a grade table"))),
        }
    }

    fn label(&self) -> String {
        match self {
            Mu::Table(t) => format!("[{t}]"),
            Mu::Rule(r) => r.to_string(),
        }
    }
}

fn load_carrier(args: &CarrierArgs) -> Result<Carrier, Usage> {
    match (&args.builtin, &args.file) {
        (Some(b), _) if b.trim() == "n0" => Ok(Carrier::N0(BoundedN0::new(args.bound)?)),
        (Some(b), _) => Ok(Carrier::Finite(builtin(b)?)),
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            parse_carrier(&text)
                .map(Carrier::Finite)
                .map_err(|e| usage(format!("{}: {e}", p.display())))
        }
        (None, None) => Err(usage("give --builtin NAME or --file PATH")),
    }
}

/// Reads --mu: a file path, a `rule ...` line, or an inline grade list.
fn load_mu(arg: &str, carrier: &Carrier, name: &str) -> Result<Mu, Usage> {
    let order = match carrier {
        Carrier::Finite(h) => Some(h.order()),
        Carrier::N0(_) => None,
    };
    let mu = if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?;
        let file = parse_fuzzy(&text, order).map_err(|e| usage(format!("{arg}: {e}")))?;
        match file.source {
            FuzzySource::Table(t) => Mu::Table(t.named(file.name)),
            FuzzySource::Rule(r) => Mu::Rule(r.named(file.name)),
        }
    } else if arg.trim_start().starts_with("rule") {
        Mu::Rule(GradeRule::parse(arg)?.named(name))
    } else {
        let grades = arg.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<Grade>, _>>()?;
        Mu::Table(FuzzySet::new(grades).named(name))
    };
    match (&mu, carrier) {
        (Mu::Table(t), Carrier::Finite(h)) if t.order() != h.order() => Err(usage(format!(
            "{name} lists {} grades but the carrier has order {}",
            t.order(),
            h.order()
        ))),
        (Mu::Rule(_), Carrier::Finite(_)) => Err(usage("grade rules describe sets on n0")),
        (Mu::Table(_), Carrier::N0(_)) => Err(usage("sets on n0 are given as grade rules")),
        _ => Ok(mu),
    }
}

fn load_subset(h: &FiniteHemiring, s: &str) -> Result<CrispSubset, Usage> {
    Ok(CrispSubset::parse(h.order(), s)?)
}

struct Out {
    format: OutputFormat,
    start: Instant,
}

impl Out {
    /// Writes one record under a single stdout lock.
    fn record(&self, text: &str) {
        let mut out = io::stdout().lock();
        let _ = writeln!(out, "{text}");
        let _ = out.flush();
    }

    /// Reports a verdict and returns its exit status.
    fn verdict(&self, command: &str, carrier: &str, text: String, v: &Verdict) -> i32 {
        match self.format {
            OutputFormat::Text => {
                let mut s = text;
                if let Verdict::HoldsUpToBound(b) = v {
                    s.push_str(&format!("\nnote: checked on elements 0..={b} only"));
                }
                self.record(&s);
            }
            OutputFormat::Machine => {
                let w = v.witness().map(Witness::to_string).unwrap_or_else(|| "-".into());
                self.record(&format!(
                    "{command}\t{carrier}\t{v_head}\t{w}\t{}",
                    self.start.elapsed().as_millis(),
                    v_head = verdict_head(v)
                ));
            }
        }
        i32::from(v.is_fail())
    }
}

fn verdict_head(v: &Verdict) -> String {
    match v {
        Verdict::Fails(_) => "FAILS".into(),
        v => v.to_string(),
    }
}

fn bool_verdict(ok: bool, h: &dyn Hemiring, rule: &str) -> Verdict {
    if ok {
        h.passing()
    } else {
        Verdict::Fails(Witness::new(rule))
    }
}

/// Parses and runs a command line; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let out = Out {
        format: cli.format,
        start: Instant::now(),
    };
    match execute(cli.command, &out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn execute(command: Command, out: &Out) -> Result<i32, Usage> {
    match command {
        Command::Check(c) => check(&c, out),
        Command::Ideals {
            carrier,
            kind,
            side,
            subset,
            cap,
        } => {
            let c = load_carrier(&carrier)?;
            let h = c.finite("ideals")?;
            if let Some(s) = subset {
                let a = load_subset(h, &s)?;
                let v = is_kind(h, &a, kind, side)?;
                return Ok(out.verdict("ideals", h.name(), format!("{{{a}}} is a {side} {kind}-ideal: {v}"), &v));
            }
            for a in enumerate_ideals(h, kind, side, cap)? {
                out.record(&a.to_string());
            }
            Ok(0)
        }
        Command::Hclosure { carrier, subset } => {
            let c = load_carrier(&carrier)?;
            let h = c.finite("hclosure")?;
            let a = load_subset(h, &subset)?;
            out.record(&h_closure(h, &a)?.to_string());
            Ok(0)
        }
        Command::Hemiregular(carrier) => {
            let c = load_carrier(&carrier)?;
            let h = c.as_dyn();
            let (v, w) = is_h_hemiregular(h);
            let mut text = format!("h-hemiregular: {v}");
            if let Some(w) = w {
                for (a, (x1, x2, z)) in w.triples.iter().enumerate().take(8) {
                    text.push_str(&format!("\n  a={a}: x1={x1} x2={x2} z={z}"));
                }
            }
            Ok(out.verdict("hemiregular", h.name(), text, &v))
        }
        Command::FuzzyCheck {
            carrier,
            mu,
            kind,
            side,
        } => {
            let c = load_carrier(&carrier)?;
            let m = load_mu(&mu, &c, "mu")?;
            let h = c.as_dyn();
            let v = match &m {
                Mu::Table(t) => is_fuzzy_kind(h, t, kind, side)?,
                Mu::Rule(r) => is_fuzzy_kind(h, r, kind, side)?,
            };
            let text = format!("{} is a fuzzy {side} {kind}-ideal: {v}", m.label());
            Ok(out.verdict("fuzzy-check", h.name(), text, &v))
        }
        Command::Hproduct { carrier, mu, nu, form } => {
            let c = load_carrier(&carrier)?;
            let (m, n) = (load_mu(&mu, &c, "mu")?, load_mu(&nu, &c, "nu")?);
            let h = c.as_dyn();
            let p = match (&m, &n) {
                (Mu::Table(a), Mu::Table(b)) => h_product(h, a, b, form.into())?,
                (Mu::Rule(a), Mu::Rule(b)) => h_product(h, a, b, form.into())?,
                _ => unreachable!("load_mu ties the kind of set to the carrier"),
            };
            let mut text = p.set.to_string();
            if let Some(b) = p.lower_bound_at {
                text.push_str(&format!("\nnote: grades are lower bounds, decompositions searched within 0..={b}"));
            }
            out.record(&text);
            Ok(0)
        }
        Command::Prime {
            carrier,
            mu,
            side,
            grades,
            form,
        } => prime(&carrier, &mu, side, grades.as_deref(), form, out),
        Command::Normalize { carrier, mu, side } => {
            let c = load_carrier(&carrier)?;
            let m = load_mu(&mu, &c, "mu")?;
            let h = c.as_dyn();
            match &m {
                Mu::Table(t) => {
                    let normal = is_normal(h, t, side)?;
                    let plus = normalize_plus(h, t, side)?;
                    out.record(&format!("normal: {normal}\nmu+ = [{plus}]"));
                }
                Mu::Rule(r) => {
                    let normal = is_normal(h, r, side)?;
                    use crate::fuzzy::Fuzzy;
                    let top = r.grade(0);
                    let lifted =
                        GradeRule::new(r.clauses().iter().map(|&(c, g)| (c, g.lift_against(top))).collect())?;
                    out.record(&format!("normal: {normal}\nmu+ = {lifted}"));
                }
            }
            Ok(0)
        }
        Command::Maximal { carrier, mu, side } => {
            let c = load_carrier(&carrier)?;
            let h = c.finite("maximal")?;
            match mu {
                Some(arg) => {
                    let m = load_mu(&arg, &c, "mu")?;
                    let t = m.as_table("maximal")?;
                    let v = is_maximal_fuzzy_h_ideal(h, t, side, DEFAULT_SUBSET_CAP)?;
                    Ok(out.verdict("maximal", h.name(), format!("{} is maximal: {v}", m.label()), &v))
                }
                None => {
                    for m in maximal_h_ideals(h, side, DEFAULT_SUBSET_CAP)? {
                        out.record(&format!("{m}\tchi = [{}]", characteristic(&m)));
                    }
                    Ok(0)
                }
            }
        }
        Command::Verify {
            carrier,
            suite,
            builtin_set,
            grades,
            fine_grades,
            seed,
            samples,
            form,
            report,
            list,
        } => {
            if list {
                for id in SUITES.iter().chain(COUNTEREXAMPLES) {
                    out.record(id);
                }
                return Ok(0);
            }
            let mut cfg = Config {
                form: form.into(),
                bound: carrier.bound,
                ..Config::default()
            };
            // the n0 reproductions run unless a single finite carrier was chosen
            let (carriers, with_examples) = match (&builtin_set, &carrier.builtin, &carrier.file) {
                (Some(s), None, None) if s == "default" => (harness::default_carriers(), true),
                (Some(s), None, None) if s == "none" => (Vec::new(), false),
                (Some(s), None, None) => return Err(usage(format!("unknown builtin set `{s}`"))),
                (Some(_), _, _) => return Err(usage("--builtin-set excludes --builtin and --file")),
                (None, None, None) => (harness::default_carriers(), true),
                (None, _, _) => match load_carrier(&carrier)? {
                    Carrier::Finite(h) => (vec![h], false),
                    Carrier::N0(_) => (Vec::new(), true),
                },
            };
            cfg.carriers = carriers;
            if suite != "all" {
                cfg.suites = Some(suite.split(',').map(|s| s.trim().to_string()).collect());
            }
            if let Some(g) = grades {
                cfg.coarse = parse_grade_list(&g)?;
            }
            if let Some(g) = fine_grades {
                cfg.fine = parse_grade_list(&g)?;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(s) = samples {
                cfg.samples = s;
            }
            verify(&cfg, with_examples, report.as_deref(), out)
        }
        Command::Find {
            order,
            max_order,
            filter,
            limit,
            out: dir,
        } => find_cmd(order, max_order, &filter, limit, dir.as_deref(), out),
    }
}

fn check(args: &CarrierArgs, out: &Out) -> Result<i32, Usage> {
    // parse failures caused by the axioms are verdicts, not usage errors
    let h = match (&args.builtin, &args.file) {
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            match parse_carrier(&text) {
                Ok(h) => h,
                Err(FormatError::Carrier(crate::carrier::CarrierError::Axioms(report))) => {
                    let w = report
                        .violations
                        .first()
                        .map(|v| Witness::new(v.axiom.to_string()).bind("at", format!("{:?}", v.witness)))
                        .unwrap_or_else(|| Witness::new("axioms"));
                    return Ok(out.verdict("check", &p.display().to_string(), report.to_string(), &Verdict::Fails(w)));
                }
                Err(e) => return Err(usage(format!("{}: {e}", p.display()))),
            }
        }
        _ => load_carrier(args)?.finite("check")?.clone(),
    };
    let report = crate::carrier::check_axioms(&h.add_rows(), &h.mul_rows())?;
    let v = bool_verdict(report.passed, &h, "axioms");
    let text = format!("carrier: {} (order {})\n{report}", h.name(), h.order());
    Ok(out.verdict("check", h.name(), text, &v))
}

fn prime(carrier: &CarrierArgs, mu: &str, side: Side, grades: Option<&str>, form: FormArg, out: &Out) -> Result<i32, Usage> {
    let c = load_carrier(carrier)?;
    let m = load_mu(mu, &c, "zeta")?;
    let h = c.as_dyn();
    let report = match &m {
        Mu::Table(t) => is_prime_fuzzy_h_ideal(h, t, side, DEFAULT_SUBSET_CAP),
        Mu::Rule(r) => is_prime_fuzzy_h_ideal(h, r, side, DEFAULT_SUBSET_CAP),
    };
    let report = match report {
        Err(StructureError::Constant) => {
            let v = Verdict::Fails(Witness::new("constant fuzzy sets are never prime"));
            return Ok(out.verdict("prime", h.name(), format!("prime: {v}"), &v));
        }
        r => r?,
    };
    let mut text = report.to_string();
    let mut code = i32::from(report.verdict.is_fail());
    if let Some(g) = grades {
        let fh = c.finite("the definitional oracle")?;
        let t = m.as_table("the definitional oracle")?;
        let d = is_prime_definitional(fh, t, &parse_grade_list(g)?, side, form.into(), DEFAULT_FUZZY_CAP)?;
        text.push_str(&format!("\n  definitional: {d}"));
        if d.is_pass() != report.verdict.is_pass() {
            text.push_str("\n  note: the definitional oracle disagrees with the characterization");
            code = 1;
        }
    }
    let v = report.verdict.clone();
    let status = out.verdict("prime", h.name(), text, &v);
    Ok(status.max(code))
}

fn verify(cfg: &Config, with_examples: bool, report_path: Option<&Path>, out: &Out) -> Result<i32, Usage> {
    let agg = harness::run_all(cfg)?;
    let mut reports = agg.reports;
    if with_examples {
        reports.extend(harness::run_counterexamples(cfg));
    }
    let agg = AggregateReport { reports };
    for r in &agg.reports {
        out.record(&match out.format {
            OutputFormat::Text => r.to_text(),
            OutputFormat::Machine => r.to_machine(),
        });
    }
    if let Some(p) = report_path {
        let lines: Vec<String> = agg.reports.iter().map(SuiteReport::to_json).collect();
        let mut body = lines.join("\n");
        if !body.is_empty() {
            body.push('\n');
        }
        fs::write(p, body).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    if out.format == OutputFormat::Text {
        out.record(&agg.summary());
        if agg.reports.iter().any(|r| matches!(r.outcome, harness::Outcome::HoldsUpToBound(_))) {
            out.record(&format!("note: n0 verdicts hold on elements 0..={} only", cfg.bound));
        }
    }
    Ok(agg.exit_code())
}

fn find_cmd(
    order: Option<usize>,
    max_order: Option<usize>,
    filter: &str,
    limit: Option<usize>,
    dir: Option<&Path>,
    out: &Out,
) -> Result<i32, Usage> {
    let (lo, hi) = match (order, max_order) {
        (Some(n), None) => (n, n),
        (lo, Some(hi)) => (lo.unwrap_or(1), hi),
        (None, None) => return Err(usage("give --order N or --max-order N")),
    };
    if hi > MAX_SEARCH_ORDER {
        return Err(usage(format!("order {hi} exceeds the search cap {MAX_SEARCH_ORDER}")));
    }
    let filters = if filter.trim().is_empty() {
        Vec::new()
    } else {
        parse_filters(filter)?
    };
    let query = SearchQuery {
        min_order: lo,
        max_order: hi,
        filters,
        limit,
    };
    let hits = find(&query)?;
    let mut index = String::new();
    if let Some(d) = dir {
        fs::create_dir_all(d).map_err(|e| usage(format!("{}: {e}", d.display())))?;
    }
    for hit in &hits {
        let name = hit.hemiring.name().to_string();
        let ws: Vec<String> = hit.witnesses.iter().map(Witness::to_string).collect();
        let line = format!("{name}\t{}", if ws.is_empty() { "-".into() } else { ws.join(" | ") });
        if let Some(d) = dir {
            let file = format!("{name}.hemiring");
            fs::write(d.join(&file), write_carrier(&hit.hemiring)).map_err(|e| usage(format!("{file}: {e}")))?;
            index.push_str(&format!("{file}\t{}\n", line.split_once('\t').unwrap().1));
        }
        match out.format {
            OutputFormat::Text => {
                let mut s = format!("{name}  add {:?}  mul {:?}", hit.hemiring.add_rows(), hit.hemiring.mul_rows());
                for w in &ws {
                    s.push_str(&format!("\n    witness: {w}"));
                }
                out.record(&s);
            }
            OutputFormat::Machine => out.record(&line),
        }
    }
    if let Some(d) = dir {
        fs::write(d.join("index.tsv"), index).map_err(|e| usage(format!("index.tsv: {e}")))?;
    }
    if out.format == OutputFormat::Text {
        out.record(&format!("{} hits", hits.len()));
    }
    Ok(i32::from(hits.is_empty()))
}

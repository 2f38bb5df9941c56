//! Exhaustive verification suites over small carriers.
//!
//! Each suite checks one statement of the theory on one carrier and
//! returns a [`SuiteReport`]. Suites whose enumeration would exceed the
//! configured caps are reported as skipped, never dropped.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::{builtin, BoundedN0, CarrierError, FiniteHemiring, Hemiring, Witness, DEFAULT_BUILTINS};
use crate::fuzzy::{
    characteristic, enumerate_fuzzy_h_ideals, h_product, intersect, is_fuzzy_h_ideal, is_fuzzy_k_ideal, random_fuzzy_h_ideal,
    transfer_check, Fuzzy, FuzzyError, FuzzySet, GradeRule, ProductForm, DEFAULT_FUZZY_CAP,
};
use crate::grade::{g, Grade};
use crate::ideals::{
    additive_closure, enumerate_ideals, h_closure, ideal_product, is_h_hemiregular, is_prime_elementwise, is_prime_h_ideal,
    maximal_h_ideals, CrispSubset, IdealError, IdealKind, ProductConvention, Side, Subset, DEFAULT_SUBSET_CAP,
};
use crate::model_finder::noncommutative3;
use crate::structure::{
    apply_monotone, is_completely_normal, is_maximal_fuzzy_h_ideal, is_normal, is_prime_definitional, is_prime_fuzzy_h_ideal,
    normalize_plus, poset_n, zeta_zero, GradeMap, StructureError,
};

/// Suites run on every finite carrier.
pub const SUITES: &[&str] = &[
    "transfer-principle",
    "h-implies-k",
    "meet-and-h-product",
    "closure-laws",
    "closure-laws-submonoid",
    "closure-of-ideal",
    "closure-of-product",
    "closure-of-product-with-zero",
    "closure-of-product-in-meet",
    "hemiregular-crisp",
    "hemiregular-fuzzy",
    "prime-characteristic",
    "prime-crosscheck",
    "prime-characterization",
    "prime-is-normal",
    "normalization",
    "monotone-rescaling",
    "maximal-normal-two-valued",
    "maximal-structure",
    "maximal-in-completely-normal",
    "maximal-completely-normal",
];

/// Reproductions of the worked examples on bounded N0.
pub const COUNTEREXAMPLES: &[&str] = &["n0-parity-prime", "n0-top-grade-needed", "n0-normal-not-prime"];

/// Suites whose verdict depends on the h-product form.
const FORM_DEPENDENT: &[&str] = &["meet-and-h-product", "hemiregular-fuzzy", "prime-characterization", "prime-is-normal"];

/// Witnesses kept per failing suite; the total count goes into a note.
const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Carrier(#[from] CarrierError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Holds,
    HoldsUpToBound(usize),
    Fails,
    Skipped(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fails)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Holds => f.write_str("HOLDS"),
            Outcome::HoldsUpToBound(b) => write!(f, "HOLDS up to bound {b}"),
            Outcome::Fails => f.write_str("FAILS"),
            Outcome::Skipped(r) => write!(f, "SKIPPED ({r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub id: String,
    pub carrier: String,
    pub params: Vec<(String, String)>,
    pub outcome: Outcome,
    /// Failure witnesses, or evidence for existence claims.
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    /// One text block: a header line, then indented witnesses and notes.
    pub fn to_text(&self) -> String {
        let mut s = format!("{:<30} {:<26} {}  ({} ms)", self.id, self.carrier, self.outcome, self.elapsed_ms);
        for w in &self.witnesses {
            s.push_str(&format!("\n    witness: {w}"));
        }
        for n in &self.notes {
            s.push_str(&format!("\n    note: {n}"));
        }
        s
    }

    /// `suite \t carrier \t verdict \t witness \t elapsed-ms`.
    pub fn to_machine(&self) -> String {
        let w = self.witnesses.first().map(|w| w.to_string()).unwrap_or_else(|| "-".into());
        let clean = |s: String| s.replace(['\t', '\n'], " ");
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.id,
            self.carrier,
            clean(self.outcome.to_string()),
            clean(w),
            self.elapsed_ms
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub carriers: Vec<FiniteHemiring>,
    pub coarse: Vec<Grade>,
    pub fine: Vec<Grade>,
    pub bound: usize,
    pub seed: u64,
    pub samples: usize,
    pub subset_cap: usize,
    pub fuzzy_cap: usize,
    pub form: ProductForm,
    /// Suite ids to run; `None` runs all.
    pub suites: Option<Vec<String>>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            carriers: default_carriers(),
            coarse: vec![Grade::ZERO, g(1, 2), Grade::ONE],
            fine: vec![Grade::ZERO, g(1, 3), g(2, 3), Grade::ONE],
            bound: 60,
            seed: 0x5eed,
            samples: 1000,
            subset_cap: DEFAULT_SUBSET_CAP,
            fuzzy_cap: DEFAULT_FUZZY_CAP,
            form: ProductForm::Single,
            suites: None,
        }
    }
}

impl Config {
    fn wants(&self, id: &str) -> bool {
        self.suites.as_ref().is_none_or(|s| s.iter().any(|x| x == id || x == "all"))
    }
}

/// The default builtins plus a carrier with non-commutative multiplication.
pub fn default_carriers() -> Vec<FiniteHemiring> {
    let mut out: Vec<FiniteHemiring> = DEFAULT_BUILTINS.iter().map(|n| builtin(n).expect("builtin")).collect();
    out.push(noncommutative3());
    out
}

/// Failure and evidence accumulator for one suite run.
struct Check {
    failures: usize,
    witnesses: Vec<Witness>,
    evidence: Vec<Witness>,
    notes: Vec<String>,
    params: Vec<(String, String)>,
    skipped: Option<String>,
    bound: Option<usize>,
}

impl Check {
    fn new() -> Self {
        Check {
            failures: 0,
            witnesses: Vec::new(),
            evidence: Vec::new(),
            notes: Vec::new(),
            params: Vec::new(),
            skipped: None,
            bound: None,
        }
    }

    fn fail(&mut self, w: Witness) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    fn expect(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        if !ok {
            self.fail(w());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn param(&mut self, k: &str, v: impl fmt::Display) {
        self.params.push((k.into(), v.to_string()));
    }
}

/// Errors inside a suite: cap overruns become skips, anything else a failure.
#[derive(Debug, Error)]
enum SuiteError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Carrier(#[from] CarrierError),
}

impl SuiteError {
    fn skip_reason(&self) -> Option<String> {
        match self {
            SuiteError::Ideal(e @ IdealError::CapExceeded { .. })
            | SuiteError::Fuzzy(FuzzyError::Ideal(e @ IdealError::CapExceeded { .. }))
            | SuiteError::Structure(StructureError::Ideal(e @ IdealError::CapExceeded { .. })) => Some(e.to_string()),
            SuiteError::Fuzzy(e @ FuzzyError::CapExceeded { .. })
            | SuiteError::Structure(StructureError::Fuzzy(e @ FuzzyError::CapExceeded { .. })) => Some(e.to_string()),
            _ => None,
        }
    }
}

type SuiteResult = Result<(), SuiteError>;

struct Ctx<'a> {
    h: &'a FiniteHemiring,
    cfg: &'a Config,
    form: ProductForm,
    rng: ChaCha8Rng,
}

fn grade_list(gs: &[Grade]) -> String {
    let v: Vec<String> = gs.iter().map(Grade::to_string).collect();
    format!("{{{}}}", v.join(","))
}

fn fuzzy_label(mu: &FuzzySet) -> String {
    format!("[{mu}]")
}

/// FNV-1a, for per-task seeds independent of scheduling.
fn task_seed(seed: u64, id: &str, carrier: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325 ^ seed;
    for b in id.bytes().chain([0]).chain(carrier.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// All tables `carrier -> grades`, or `samples` random ones past the cap.
fn grade_tables(ctx: &mut Ctx<'_>, grades: &[Grade], chk: &mut Check) -> Vec<FuzzySet> {
    let n = ctx.h.order();
    let k = grades.len();
    let total = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total <= ctx.cfg.fuzzy_cap as u128 {
        let total = total as usize;
        (0..total)
            .map(|mut code| {
                FuzzySet::new(
                    (0..n)
                        .map(|_| {
                            let gr = grades[code % k];
                            code /= k;
                            gr
                        })
                        .collect(),
                )
            })
            .collect()
    } else {
        chk.note(format!("{total} tables exceed the cap; {} seeded samples", ctx.cfg.samples));
        (0..ctx.cfg.samples)
            .map(|_| FuzzySet::new((0..n).map(|_| *grades.choose(&mut ctx.rng).unwrap()).collect()))
            .collect()
    }
}

fn transfer_principle(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let grades = ctx.cfg.coarse.clone();
    chk.param("grades", grade_list(&grades));
    let tables = grade_tables(ctx, &grades, chk);
    let h = ctx.h;
    let mut count = 0;
    for side in Side::BOTH {
        for mu in &tables {
            let direct = is_fuzzy_h_ideal(h, mu, side)?;
            let levels = transfer_check(h, mu, side)?;
            count += usize::from(direct.is_pass());
            chk.expect(direct.is_pass() == levels.is_pass(), || {
                Witness::new("level-set route disagrees with the direct check")
                    .bind("side", side)
                    .bind("mu", fuzzy_label(mu))
                    .bind("direct", &direct)
                    .bind("levels", &levels)
            });
        }
    }
    chk.note(format!("{} tables per side, {count} fuzzy h-ideals in total", tables.len()));
    Ok(())
}

fn h_implies_k(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    for side in Side::BOTH {
        let ks = enumerate_ideals(h, IdealKind::K, side, cfg.subset_cap)?;
        for a in enumerate_ideals(h, IdealKind::H, side, cfg.subset_cap)? {
            chk.expect(ks.contains(&a), || {
                Witness::new("h-ideal that is not a k-ideal").bind("side", side).bind("A", a)
            });
        }
        if let Some(a) = enumerate_ideals(h, IdealKind::K, side, cfg.subset_cap)?
            .into_iter()
            .find(|a| crate::ideals::is_h_ideal(h, a, side).map(|v| v.is_fail()).unwrap_or(false))
        {
            chk.evidence.push(Witness::new("k-ideal that is not an h-ideal").bind("side", side).bind("A", a));
        }
        for mu in enumerate_fuzzy_h_ideals(h, &cfg.coarse, side, cfg.fuzzy_cap)? {
            chk.expect(is_fuzzy_k_ideal(h, &mu, side)?.is_pass(), || {
                Witness::new("fuzzy h-ideal that is not a fuzzy k-ideal").bind("mu", fuzzy_label(&mu))
            });
            chk.expect(h.elements().all(|x| mu.grade(0) >= mu.grade(x)), || {
                Witness::new("fuzzy ideal with mu(0) below some grade").bind("mu", fuzzy_label(&mu))
            });
        }
    }
    Ok(())
}

fn meet_and_h_product(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    chk.param("grades", grade_list(&cfg.coarse));
    chk.param("form", ctx.form);
    let left = enumerate_fuzzy_h_ideals(h, &cfg.coarse, Side::Left, cfg.fuzzy_cap)?;
    let right = enumerate_fuzzy_h_ideals(h, &cfg.coarse, Side::Right, cfg.fuzzy_cap)?;
    for mu in &left {
        for nu in &left {
            let m = intersect(mu, nu)?;
            chk.expect(is_fuzzy_h_ideal(h, &m, Side::Left)?.is_pass(), || {
                Witness::new("meet of fuzzy left h-ideals is not one")
                    .bind("mu", fuzzy_label(mu))
                    .bind("nu", fuzzy_label(nu))
            });
        }
    }
    for mu in &right {
        for nu in &left {
            let p = h_product(h, mu, nu, ctx.form)?.set;
            let m = intersect(mu, nu)?;
            chk.expect(p.is_subset_of(&m), || {
                Witness::new("mu ∘h nu ⊄ mu ∩ nu")
                    .bind("mu", fuzzy_label(mu))
                    .bind("nu", fuzzy_label(nu))
                    .bind("at", p.first_excess(&m).unwrap())
            });
        }
    }
    chk.note(format!("{} left and {} right fuzzy h-ideals", left.len(), right.len()));
    Ok(())
}

fn nonempty_subsets(h: &FiniteHemiring, cap: usize) -> Result<Vec<CrispSubset>, IdealError> {
    let n = h.order();
    if n > cap {
        return Err(IdealError::CapExceeded { order: n, cap });
    }
    let mut v: Vec<CrispSubset> = (1u64..1 << n).map(|m| CrispSubset::from_mask(n, m)).collect();
    v.sort_by_key(CrispSubset::canonical_key);
    Ok(v)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Domain {
    All,
    WithZero,
    /// Contain 0 and are closed under addition.
    Submonoids,
}

fn subsets_for(h: &FiniteHemiring, cap: usize, domain: Domain) -> Result<Vec<CrispSubset>, IdealError> {
    let mut v = nonempty_subsets(h, cap)?;
    match domain {
        Domain::All => {}
        Domain::WithZero => v.retain(|a| a.contains(0)),
        Domain::Submonoids => v.retain(|a| a.contains(0) && additive_closure(h, a) == *a),
    }
    Ok(v)
}

fn closure_laws(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    closure_laws_over(ctx, chk, Domain::All)
}

fn closure_laws_submonoid(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    closure_laws_over(ctx, chk, Domain::Submonoids)
}

fn closure_laws_over(ctx: &mut Ctx<'_>, chk: &mut Check, domain: Domain) -> SuiteResult {
    let h = ctx.h;
    let subsets = subsets_for(h, ctx.cfg.subset_cap, domain)?;
    let closures: Vec<CrispSubset> = subsets.iter().map(|a| h_closure(h, a)).collect::<Result<_, _>>()?;
    let (mut ext, mut ext0, mut idem, mut idem_add) = (0, 0, 0, 0);
    for (a, c) in subsets.iter().zip(&closures) {
        if !a.is_subset_of(c) {
            ext += 1;
            ext0 += usize::from(a.contains(0));
            chk.fail(Witness::new("not extensive: A ⊄ closure(A)").bind("A", a).bind("closure", c));
        }
        let cc = h_closure(h, c)?;
        if cc != *c {
            idem += 1;
            idem_add += usize::from(additive_closure(h, a) == *a);
            chk.fail(
                Witness::new("not idempotent: closure(closure(A)) != closure(A)")
                    .bind("A", a)
                    .bind("closure", c)
                    .bind("closure twice", cc),
            );
        }
    }
    let mut mono = 0;
    for (i, a) in subsets.iter().enumerate() {
        for (j, b) in subsets.iter().enumerate() {
            if a.is_subset_of(b) && !closures[i].is_subset_of(&closures[j]) {
                mono += 1;
                chk.fail(Witness::new("not monotone").bind("A", a).bind("B", b));
            }
        }
    }
    chk.note(format!(
        "{} subsets: {ext} not extensive ({ext0} of them contain 0), {mono} monotonicity violations, \
         {idem} not idempotent ({idem_add} of them additively closed)",
        subsets.len()
    ));
    Ok(())
}

fn closure_of_ideal(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cap) = (ctx.h, ctx.cfg.subset_cap);
    for side in Side::BOTH {
        let hs = enumerate_ideals(h, IdealKind::H, side, cap)?;
        for a in enumerate_ideals(h, IdealKind::Plain, side, cap)? {
            let c = h_closure(h, &a)?;
            let above: Vec<&CrispSubset> = hs.iter().filter(|b| a.is_subset_of(b)).collect();
            let least = above.iter().all(|b| c.is_subset_of(b)) && hs.contains(&c) && a.is_subset_of(&c);
            chk.expect(least, || {
                Witness::new("closure of an ideal is not the least h-ideal above it")
                    .bind("side", side)
                    .bind("A", a)
                    .bind("closure", c)
            });
        }
    }
    Ok(())
}

fn closure_of_product(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    closure_of_product_over(ctx, chk, Domain::All)
}

fn closure_of_product_with_zero(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    closure_of_product_over(ctx, chk, Domain::WithZero)
}

fn closure_of_product_over(ctx: &mut Ctx<'_>, chk: &mut Check, domain: Domain) -> SuiteResult {
    let h = ctx.h;
    let subsets = subsets_for(h, ctx.cfg.subset_cap, domain)?;
    let closures: Vec<CrispSubset> = subsets.iter().map(|a| h_closure(h, a)).collect::<Result<_, _>>()?;
    let (mut bad, mut bad0) = (0, 0);
    for (i, a) in subsets.iter().enumerate() {
        for (j, b) in subsets.iter().enumerate() {
            let lhs = h_closure(h, &ideal_product(h, a, b)?)?;
            let rhs = h_closure(h, &ideal_product(h, &closures[i], &closures[j])?)?;
            if lhs != rhs {
                bad += 1;
                bad0 += usize::from(a.contains(0) && b.contains(0));
                chk.fail(
                    Witness::new("closure(AB) != closure(closure(A) closure(B))")
                        .bind("A", a)
                        .bind("B", b)
                        .bind("lhs", lhs)
                        .bind("rhs", rhs),
                );
            }
        }
    }
    let n = subsets.len();
    chk.note(format!("{} subset pairs, {bad} violations ({bad0} with 0 in both A and B)", n * n));
    Ok(())
}

fn closure_of_product_in_meet(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cap) = (ctx.h, ctx.cfg.subset_cap);
    let rights = enumerate_ideals(h, IdealKind::H, Side::Right, cap)?;
    let lefts = enumerate_ideals(h, IdealKind::H, Side::Left, cap)?;
    for a in &rights {
        for b in &lefts {
            let c = h_closure(h, &ideal_product(h, a, b)?)?;
            chk.expect(c.is_subset_of(&a.intersection(b)), || {
                Witness::new("closure(AB) ⊄ A ∩ B").bind("A", a).bind("B", b).bind("closure", c)
            });
        }
    }
    chk.note(format!("{} right x {} left h-ideals", rights.len(), lefts.len()));
    Ok(())
}

fn hemiregular_crisp(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cap) = (ctx.h, ctx.cfg.subset_cap);
    let (v, _) = is_h_hemiregular(h);
    let rights = enumerate_ideals(h, IdealKind::H, Side::Right, cap)?;
    let lefts = enumerate_ideals(h, IdealKind::H, Side::Left, cap)?;
    let mut counter = None;
    'outer: for a in &rights {
        for b in &lefts {
            let c = h_closure(h, &ideal_product(h, a, b)?)?;
            if c != a.intersection(b) {
                counter = Some((*a, *b, c));
                break 'outer;
            }
        }
    }
    chk.note(format!("h-hemiregular: {}", v.is_pass()));
    if let Some(w) = v.witness() {
        chk.evidence.push(w.clone());
    }
    if let Some((a, b, c)) = counter {
        chk.evidence.push(
            Witness::new("closure(AB) != A ∩ B")
                .bind("A", a)
                .bind("B", b)
                .bind("closure", c)
                .bind("meet", a.intersection(&b)),
        );
    }
    chk.expect(v.is_pass() == counter.is_none(), || {
        Witness::new("h-hemiregularity and closure(AB) = A ∩ B disagree").bind("h-hemiregular", v.is_pass())
    });
    Ok(())
}

fn hemiregular_fuzzy(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    chk.param("grades", grade_list(&cfg.coarse));
    chk.param("form", ctx.form);
    let (v, _) = is_h_hemiregular(h);
    let rights = enumerate_fuzzy_h_ideals(h, &cfg.coarse, Side::Right, cfg.fuzzy_cap)?;
    let lefts = enumerate_fuzzy_h_ideals(h, &cfg.coarse, Side::Left, cfg.fuzzy_cap)?;
    let mut counter = None;
    'outer: for mu in &rights {
        for nu in &lefts {
            let p = h_product(h, mu, nu, ctx.form)?.set;
            if p.grades() != intersect(mu, nu)?.grades() {
                counter = Some((mu.clone(), nu.clone(), p));
                break 'outer;
            }
        }
    }
    chk.note(format!(
        "h-hemiregular: {}; {} right x {} left fuzzy h-ideals",
        v.is_pass(),
        rights.len(),
        lefts.len()
    ));
    if let Some((mu, nu, p)) = &counter {
        chk.evidence.push(
            Witness::new("mu ∘h nu != mu ∩ nu")
                .bind("mu", fuzzy_label(mu))
                .bind("nu", fuzzy_label(nu))
                .bind("product", fuzzy_label(p)),
        );
    }
    chk.expect(v.is_pass() == counter.is_none(), || {
        Witness::new("h-hemiregularity and mu ∘h nu = mu ∩ nu disagree").bind("h-hemiregular", v.is_pass())
    });
    Ok(())
}

fn prime_characteristic(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cap) = (ctx.h, ctx.cfg.subset_cap);
    let mut conventions_differ = 0;
    for side in Side::BOTH {
        for p in enumerate_ideals(h, IdealKind::H, side, cap)? {
            let crisp = is_prime_h_ideal(h, &p, side, ProductConvention::FiniteSums, cap)?;
            let single = is_prime_h_ideal(h, &p, side, ProductConvention::SingleProducts, cap)?;
            if crisp.is_pass() != single.is_pass() {
                conventions_differ += 1;
                chk.evidence.push(
                    Witness::new("primality depends on the product convention")
                        .bind("side", side)
                        .bind("P", p)
                        .bind("finite sums", &crisp)
                        .bind("single products", &single),
                );
            }
            if p.is_full() {
                // chi_S is constant and so never prime; S is never prime either
                chk.expect(crisp.is_fail(), || Witness::new("S reported prime"));
                continue;
            }
            let fuzzy = is_prime_fuzzy_h_ideal(h, &characteristic(&p), side, cap)?;
            chk.expect(fuzzy.verdict.is_pass() == crisp.is_pass(), || {
                Witness::new("chi_P prime disagrees with P prime")
                    .bind("side", side)
                    .bind("P", p)
                    .bind("crisp", &crisp)
                    .bind("fuzzy", &fuzzy.verdict)
            });
        }
    }
    chk.note(format!("product conventions disagree on {conventions_differ} h-ideals"));
    Ok(())
}

fn prime_crosscheck(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cap) = (ctx.h, ctx.cfg.subset_cap);
    for side in Side::BOTH {
        for p in enumerate_ideals(h, IdealKind::H, side, cap)? {
            let by_ideals = is_prime_h_ideal(h, &p, side, ProductConvention::FiniteSums, cap)?;
            let by_elements = is_prime_elementwise(h, &p, side)?;
            chk.expect(by_ideals.is_pass() == by_elements.is_pass(), || {
                Witness::new("ideal-pair and elementwise primality disagree")
                    .bind("side", side)
                    .bind("P", p)
                    .bind("ideal pairs", &by_ideals)
                    .bind("elementwise", &by_elements)
            });
        }
    }
    Ok(())
}

fn prime_characterization(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    chk.param("grades", grade_list(&cfg.fine));
    chk.param("form", ctx.form);
    let mut checked = 0;
    let mut primes = 0;
    for side in Side::BOTH {
        for zeta in enumerate_fuzzy_h_ideals(h, &cfg.fine, side, cfg.fuzzy_cap)? {
            if zeta.is_constant() {
                continue;
            }
            checked += 1;
            let report = is_prime_fuzzy_h_ideal(h, &zeta, side, cfg.subset_cap)?;
            let def = is_prime_definitional(h, &zeta, &cfg.fine, side, ctx.form, cfg.fuzzy_cap)?;
            primes += usize::from(report.verdict.is_pass());
            chk.expect(report.verdict.is_pass() == def.is_pass(), || {
                Witness::new("characterization and definitional oracle disagree")
                    .bind("side", side)
                    .bind("zeta", fuzzy_label(&zeta))
                    .bind("characterization", &report.verdict)
                    .bind("oracle", &def)
            });
        }
    }
    chk.note(format!("{checked} non-constant fuzzy h-ideals, {primes} prime"));
    Ok(())
}

fn prime_is_normal(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    chk.param("grades", grade_list(&cfg.fine));
    for side in Side::BOTH {
        for zeta in enumerate_fuzzy_h_ideals(h, &cfg.fine, side, cfg.fuzzy_cap)? {
            if zeta.is_constant() {
                continue;
            }
            let prime = is_prime_fuzzy_h_ideal(h, &zeta, side, cfg.subset_cap)?.verdict.is_pass();
            let def = is_prime_definitional(h, &zeta, &cfg.fine, side, ctx.form, cfg.fuzzy_cap)?.is_pass();
            if prime || def {
                chk.expect(is_normal(h, &zeta, side)?, || {
                    Witness::new("prime fuzzy h-ideal that is not normal").bind("zeta", fuzzy_label(&zeta))
                });
            }
        }
    }
    Ok(())
}

fn random_ideals(ctx: &mut Ctx<'_>, side: Side) -> Result<Vec<FuzzySet>, SuiteError> {
    let ideals = enumerate_ideals(ctx.h, IdealKind::H, side, ctx.cfg.subset_cap)?;
    Ok((0..ctx.cfg.samples).map(|_| random_fuzzy_h_ideal(&ideals, &mut ctx.rng)).collect())
}

fn normalization(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    chk.param("samples", ctx.cfg.samples);
    chk.param("seed", ctx.cfg.seed);
    let h = ctx.h;
    for mu in random_ideals(ctx, Side::Left)? {
        let plus = normalize_plus(h, &mu, Side::Left)?;
        let label = || fuzzy_label(&mu);
        chk.expect(mu.is_subset_of(&plus), || Witness::new("mu ⊄ mu+").bind("mu", label()));
        chk.expect(is_normal(h, &plus, Side::Left)?, || Witness::new("mu+ not normal").bind("mu", label()));
        let plus2 = normalize_plus(h, &plus, Side::Left)?;
        chk.expect(plus2.grades() == plus.grades(), || Witness::new("(mu+)+ != mu+").bind("mu", label()));
        if mu.grade(0) == Grade::ONE {
            chk.expect(plus.grades() == mu.grades(), || Witness::new("normal mu with mu+ != mu").bind("mu", label()));
        }
        for x in h.elements() {
            chk.expect(plus.grade(x) != Grade::ZERO || mu.grade(x) == Grade::ZERO, || {
                Witness::new("mu+(x) = 0 but mu(x) != 0").bind("mu", label()).bind("x", x)
            });
        }
    }
    Ok(())
}

fn monotone_rescaling(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    chk.param("samples", ctx.cfg.samples);
    chk.param("seed", ctx.cfg.seed);
    let h = ctx.h;
    for mu in random_ideals(ctx, Side::Left)? {
        let image = mu.image();
        let f = GradeMap::random(&image, &mut ctx.rng);
        // the same map forced to 1 at the top grade, and raised above the identity
        let top = *image.last().unwrap();
        let to_one = GradeMap::new(
            f.pairs().iter().map(|&(t, v)| (t, if t == top { Grade::ONE } else { v })).collect(),
        )?;
        let raised = GradeMap::new(f.pairs().iter().map(|&(t, v)| (t, v.max(t))).collect())?;
        for (map, kind) in [(&f, "random"), (&to_one, "top to 1"), (&raised, "raised")] {
            let mf = apply_monotone(h, &mu, map, Side::Left)?;
            let w = || Witness::new("").bind("mu", fuzzy_label(&mu)).bind("map", kind);
            chk.expect(is_fuzzy_h_ideal(h, &mf, Side::Left)?.is_pass(), || {
                let mut x = w();
                x.rule = "mu_f is not a fuzzy h-ideal".into();
                x
            });
            if map.get(mu.grade(0)) == Some(Grade::ONE) {
                chk.expect(mf.grade(0) == Grade::ONE, || {
                    let mut x = w();
                    x.rule = "f(mu(0)) = 1 but mu_f is not normal".into();
                    x
                });
            }
            if map.pairs().iter().all(|&(t, v)| v >= t) {
                chk.expect(mu.is_subset_of(&mf), || {
                    let mut x = w();
                    x.rule = "f(t) >= t but mu ⊄ mu_f".into();
                    x
                });
            }
        }
    }
    Ok(())
}

fn maximal_normal_two_valued(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    chk.param("grades", grade_list(&cfg.coarse));
    let poset = poset_n(h, &cfg.coarse, Side::Left, cfg.fuzzy_cap)?;
    let maxima = poset.maximal();
    let mut non_constant = 0;
    for &i in &maxima {
        let mu = &poset.members[i];
        if mu.is_constant() {
            continue;
        }
        non_constant += 1;
        chk.expect(mu.grades().iter().all(|&x| x == Grade::ZERO || x == Grade::ONE), || {
            Witness::new("non-constant maximal normal fuzzy h-ideal with a grade outside {0, 1}").bind("mu", fuzzy_label(mu))
        });
    }
    chk.note(format!(
        "N has {} members and {} maximal elements, {non_constant} of them non-constant",
        poset.members.len(),
        maxima.len()
    ));
    Ok(())
}

/// Non-constant enumerated fuzzy h-ideals decided maximal by the characterization.
fn characterized_maximal(ctx: &Ctx<'_>) -> Result<Vec<FuzzySet>, SuiteError> {
    let (h, cfg) = (ctx.h, ctx.cfg);
    let mut out = Vec::new();
    for mu in enumerate_fuzzy_h_ideals(h, &cfg.coarse, Side::Left, cfg.fuzzy_cap)? {
        if !mu.is_constant() && is_maximal_fuzzy_h_ideal(h, &mu, Side::Left, cfg.subset_cap)?.is_pass() {
            out.push(mu);
        }
    }
    Ok(out)
}

fn maximal_structure(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    chk.param("grades", grade_list(&cfg.coarse));
    let maximal = characterized_maximal(ctx)?;
    let crisp = maximal_h_ideals(h, Side::Left, cfg.subset_cap)?;
    for mu in &maximal {
        let m0 = zeta_zero(mu);
        chk.expect(mu.grade(0) == Grade::ONE, || Witness::new("maximal but not normal").bind("mu", fuzzy_label(mu)));
        chk.expect(characteristic(&m0).grades() == mu.grades(), || {
            Witness::new("maximal but not the characteristic function of mu0").bind("mu", fuzzy_label(mu))
        });
        chk.expect(crisp.contains(&m0), || Witness::new("mu0 not a maximal h-ideal").bind("mu0", m0));
    }
    for m in &crisp {
        let chi = characteristic(m);
        chk.expect(maximal.iter().any(|mu| mu.grades() == chi.grades()), || {
            Witness::new("maximal h-ideal whose characteristic function is not maximal").bind("M", m)
        });
    }
    // literal reading: mu+ maximal in the enumerated poset of normal sets
    let poset = poset_n(h, &cfg.coarse, Side::Left, cfg.fuzzy_cap)?;
    let maxima = poset.maximal();
    let literal = enumerate_fuzzy_h_ideals(h, &cfg.coarse, Side::Left, cfg.fuzzy_cap)?
        .into_iter()
        .filter(|mu| !mu.is_constant())
        .filter(|mu| {
            let plus = normalize_plus(h, mu, Side::Left).expect("h-ideal");
            poset.position(&plus).is_some_and(|i| maxima.contains(&i))
        })
        .count();
    chk.note(format!(
        "{} maximal by characterization; {literal} non-constant sets with mu+ maximal in the enumerated poset",
        maximal.len()
    ));
    Ok(())
}

fn maximal_in_completely_normal(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let (h, cfg) = (ctx.h, ctx.cfg);
    chk.param("grades", grade_list(&cfg.coarse));
    let poset = poset_n(h, &cfg.coarse, Side::Left, cfg.fuzzy_cap)?;
    let c_max = poset.maximal_completely_normal();
    let mut literal = 0;
    for i in poset.maximal() {
        if poset.members[i].is_constant() {
            continue;
        }
        literal += 1;
        chk.expect(c_max.contains(&i), || {
            Witness::new("non-constant maximal element of N not maximal in C").bind("mu", fuzzy_label(&poset.members[i]))
        });
    }
    for mu in characterized_maximal(ctx)? {
        let ok = poset.position(&mu).is_some_and(|i| c_max.contains(&i));
        chk.expect(ok, || Witness::new("maximal fuzzy h-ideal not maximal in C").bind("mu", fuzzy_label(&mu)));
    }
    chk.note(format!(
        "C has {} members, {} maximal; {literal} non-constant maximal elements of N",
        poset.completely_normal().len(),
        c_max.len()
    ));
    Ok(())
}

fn maximal_completely_normal(ctx: &mut Ctx<'_>, chk: &mut Check) -> SuiteResult {
    let h = ctx.h;
    let maximal = characterized_maximal(ctx)?;
    for mu in &maximal {
        chk.expect(is_completely_normal(h, mu, Side::Left)?, || {
            Witness::new("maximal fuzzy h-ideal that is not completely normal").bind("mu", fuzzy_label(mu))
        });
    }
    chk.note(format!("{} maximal fuzzy h-ideals", maximal.len()));
    Ok(())
}

fn dispatch(id: &str, ctx: &mut Ctx<'_>, chk: &mut Check) -> Option<SuiteResult> {
    let f: fn(&mut Ctx<'_>, &mut Check) -> SuiteResult = match id {
        "transfer-principle" => transfer_principle,
        "h-implies-k" => h_implies_k,
        "meet-and-h-product" => meet_and_h_product,
        "closure-laws" => closure_laws,
        "closure-laws-submonoid" => closure_laws_submonoid,
        "closure-of-ideal" => closure_of_ideal,
        "closure-of-product" => closure_of_product,
        "closure-of-product-with-zero" => closure_of_product_with_zero,
        "closure-of-product-in-meet" => closure_of_product_in_meet,
        "hemiregular-crisp" => hemiregular_crisp,
        "hemiregular-fuzzy" => hemiregular_fuzzy,
        "prime-characteristic" => prime_characteristic,
        "prime-crosscheck" => prime_crosscheck,
        "prime-characterization" => prime_characterization,
        "prime-is-normal" => prime_is_normal,
        "normalization" => normalization,
        "monotone-rescaling" => monotone_rescaling,
        "maximal-normal-two-valued" => maximal_normal_two_valued,
        "maximal-structure" => maximal_structure,
        "maximal-in-completely-normal" => maximal_in_completely_normal,
        "maximal-completely-normal" => maximal_completely_normal,
        _ => return None,
    };
    Some(f(ctx, chk))
}

fn finish(id: &str, carrier: &str, chk: Check, result: SuiteResult, start: Instant) -> SuiteReport {
    let mut chk = chk;
    let outcome = match result {
        Err(e) => match e.skip_reason() {
            Some(r) => Outcome::Skipped(r),
            None => {
                chk.fail(Witness::new(format!("suite error: {e}")));
                Outcome::Fails
            }
        },
        Ok(()) if chk.skipped.is_some() => Outcome::Skipped(chk.skipped.clone().unwrap()),
        Ok(()) if chk.failures > 0 => Outcome::Fails,
        Ok(()) => match chk.bound {
            Some(b) => Outcome::HoldsUpToBound(b),
            None => Outcome::Holds,
        },
    };
    if chk.failures > chk.witnesses.len() {
        chk.notes.push(format!("{} failures, first {} shown", chk.failures, chk.witnesses.len()));
    }
    let mut witnesses = chk.witnesses;
    witnesses.extend(chk.evidence);
    SuiteReport {
        id: id.to_string(),
        carrier: carrier.to_string(),
        params: chk.params,
        outcome,
        witnesses,
        notes: chk.notes,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn run_with_form(id: &str, h: &FiniteHemiring, cfg: &Config, form: ProductForm) -> Result<SuiteReport, HarnessError> {
    let start = Instant::now();
    let mut ctx = Ctx {
        h,
        cfg,
        form,
        rng: ChaCha8Rng::seed_from_u64(task_seed(cfg.seed, id, h.name())),
    };
    let mut chk = Check::new();
    let result = dispatch(id, &mut ctx, &mut chk).ok_or_else(|| HarnessError::UnknownSuite(id.to_string()))?;
    Ok(finish(id, h.name(), chk, result, start))
}

/// Runs one carrier suite.
pub fn run_suite(id: &str, h: &FiniteHemiring, cfg: &Config) -> Result<SuiteReport, HarnessError> {
    let mut report = run_with_form(id, h, cfg, cfg.form)?;
    if cfg.form == ProductForm::Sums && FORM_DEPENDENT.contains(&id) {
        let single = run_with_form(id, h, cfg, ProductForm::Single)?;
        report.notes.push(if single.outcome != report.outcome {
            format!("verdict changed: single-product form gives {}", single.outcome)
        } else {
            "single-product form gives the same verdict".to_string()
        });
    }
    Ok(report)
}

fn n0_rule(text: &str, name: &str) -> GradeRule {
    GradeRule::parse(text).expect("fixed rule").named(name)
}

fn parity_prime(cfg: &Config, chk: &mut Check) -> SuiteResult {
    let n0 = BoundedN0::new(cfg.bound)?;
    chk.bound = Some(cfg.bound);
    chk.param("bound", cfg.bound);
    let mu = n0_rule("even -> 1, odd -> 0.2", "mu");
    chk.note(mu.to_string());
    let h = is_fuzzy_h_ideal(&n0, &mu, Side::Left)?;
    chk.expect(h.is_pass(), || Witness::new("not a fuzzy left h-ideal").bind("verdict", &h));
    let report = is_prime_fuzzy_h_ideal(&n0, &mu, Side::Left, cfg.subset_cap)?;
    for line in report.to_string().lines() {
        chk.note(line.trim().to_string());
    }
    chk.expect(report.condition_i.is_pass(), || Witness::new("zeta0 not prime"));
    chk.expect(report.condition_ii, || Witness::new("image is not two grades"));
    chk.expect(report.condition_iii, || Witness::new("zeta(0) != 1"));
    chk.expect(report.verdict.is_pass(), || Witness::new("not prime").bind("verdict", &report.verdict));
    Ok(())
}

fn top_grade_needed(cfg: &Config, chk: &mut Check) -> SuiteResult {
    let n0 = BoundedN0::new(cfg.bound)?;
    chk.bound = Some(cfg.bound);
    chk.param("bound", cfg.bound);
    let zeta = n0_rule("even -> 0.5, odd -> 0.2", "zeta");
    let mu = n0_rule("even -> 0.7, odd -> 0", "mu");
    let nu = n0_rule("mult 3 -> 0.3, any -> 0", "nu");
    for r in [&zeta, &mu, &nu] {
        let v = is_fuzzy_h_ideal(&n0, r, Side::Left)?;
        chk.note(format!("{} = {r}: fuzzy left h-ideal {v}", r.name()));
        chk.expect(v.is_pass(), || Witness::new("not a fuzzy left h-ideal").bind("set", r.name()));
    }
    let p = h_product(&n0, &mu, &nu, ProductForm::Single)?;
    let zt = FuzzySet::tabulate(cfg.bound + 1, &zeta);
    chk.expect(p.set.is_subset_of(&zt), || {
        Witness::new("mu ∘h nu ⊄ zeta").bind("at", p.set.first_excess(&zt).unwrap())
    });
    chk.note(format!(
        "mu ∘h nu ⊆ zeta on 0..={} (grades are lower bounds); (mu ∘h nu)(6) = {}",
        cfg.bound,
        p.set.grade(6.min(cfg.bound))
    ));
    let (m2, z2, n3, z3) = (mu.grade(2), zeta.grade(2), nu.grade(3), zeta.grade(3));
    chk.expect(m2 == g(7, 10) && z2 == g(1, 2) && m2 > z2, || Witness::new("mu(2) > zeta(2) not reproduced"));
    chk.expect(n3 == g(3, 10) && z3 == g(1, 5) && n3 > z3, || Witness::new("nu(3) > zeta(3) not reproduced"));
    chk.note(format!("mu(2) = {m2} > {z2} = zeta(2); nu(3) = {n3} > {z3} = zeta(3)"));
    let report = is_prime_fuzzy_h_ideal(&n0, &zeta, Side::Left, cfg.subset_cap)?;
    for line in report.to_string().lines() {
        chk.note(line.trim().to_string());
    }
    chk.expect(report.condition_i.is_pass() && report.condition_ii, || {
        Witness::new("zeta0 prime with two grades not reproduced")
    });
    chk.expect(!report.condition_iii && report.verdict.is_fail(), || {
        Witness::new("zeta(0) = 1/2 should make zeta non-prime").bind("verdict", &report.verdict)
    });
    Ok(())
}

fn normal_not_prime(cfg: &Config, chk: &mut Check) -> SuiteResult {
    let n0 = BoundedN0::new(cfg.bound)?;
    chk.bound = Some(cfg.bound);
    chk.param("bound", cfg.bound);
    let mu = n0_rule("mult 4 -> 1, mult 2 -> 0.5, any -> 0", "mu");
    chk.note(mu.to_string());
    let normal = is_normal(&n0, &mu, Side::Left)?;
    chk.note(format!("normal: {normal}"));
    chk.expect(normal, || Witness::new("not normal"));
    let report = is_prime_fuzzy_h_ideal(&n0, &mu, Side::Left, cfg.subset_cap)?;
    for line in report.to_string().lines() {
        chk.note(line.trim().to_string());
    }
    chk.expect(!report.condition_ii && report.image.len() == 3, || {
        Witness::new("image of three grades not reproduced")
    });
    chk.expect(report.verdict.is_fail(), || Witness::new("reported prime"));
    Ok(())
}

/// Runs one bounded-N0 reproduction.
pub fn run_counterexample(id: &str, cfg: &Config) -> Result<SuiteReport, HarnessError> {
    let start = Instant::now();
    let mut chk = Check::new();
    let result = match id {
        "n0-parity-prime" => parity_prime(cfg, &mut chk),
        "n0-top-grade-needed" => top_grade_needed(cfg, &mut chk),
        "n0-normal-not-prime" => normal_not_prime(cfg, &mut chk),
        _ => return Err(HarnessError::UnknownSuite(id.to_string())),
    };
    Ok(finish(id, &format!("n0[{}]", cfg.bound), chk, result, start))
}

pub fn run_counterexamples(cfg: &Config) -> Vec<SuiteReport> {
    COUNTEREXAMPLES
        .par_iter()
        .filter(|id| cfg.wants(id))
        .map(|id| run_counterexample(id, cfg).expect("known id"))
        .collect()
}

#[derive(Debug, Clone)]
pub struct AggregateReport {
    pub reports: Vec<SuiteReport>,
}

impl AggregateReport {
    pub fn failures(&self) -> usize {
        self.reports.iter().filter(|r| r.outcome.is_fail()).count()
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failures() > 0)
    }

    pub fn summary(&self) -> String {
        let count = |f: fn(&Outcome) -> bool| self.reports.iter().filter(|r| f(&r.outcome)).count();
        format!(
            "{} reports: {} hold, {} hold up to bound, {} fail, {} skipped",
            self.reports.len(),
            count(|o| *o == Outcome::Holds),
            count(|o| matches!(o, Outcome::HoldsUpToBound(_))),
            count(Outcome::is_fail),
            count(|o| matches!(o, Outcome::Skipped(_)))
        )
    }
}

/// Every selected carrier suite on every configured carrier, in
/// (carrier, suite) order regardless of scheduling.
pub fn run_all(cfg: &Config) -> Result<AggregateReport, HarnessError> {
    if let Some(sel) = &cfg.suites {
        for id in sel {
            if id != "all" && !SUITES.contains(&id.as_str()) && !COUNTEREXAMPLES.contains(&id.as_str()) {
                return Err(HarnessError::UnknownSuite(id.clone()));
            }
        }
    }
    let tasks: Vec<(&FiniteHemiring, &str)> = cfg
        .carriers
        .iter()
        .flat_map(|h| SUITES.iter().filter(|id| cfg.wants(id)).map(move |id| (h, *id)))
        .collect();
    let reports = tasks
        .par_iter()
        .map(|(h, id)| run_suite(id, h, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AggregateReport { reports })
}

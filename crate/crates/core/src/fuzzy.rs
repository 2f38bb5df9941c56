//! Fuzzy subsets with exact grades: fuzzy ideal predicates, level sets,
//! intersection and the h-product.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::{FiniteHemiring, Hemiring, Verdict, Witness};
use crate::grade::{Grade, GradeError};
use crate::ideals::{is_h_ideal, CrispSubset, IdealError, IdealKind, Side, Subset};

/// Default cap on `|grades|^order` for fuzzy enumeration.
pub const DEFAULT_FUZZY_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzyError {
    #[error("fuzzy set over {found} elements used with a carrier of order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("two-valued set needs s < t, got s = {s}, t = {t}")]
    NotOrdered { s: Grade, t: Grade },
    #[error("enumeration of {count} candidates exceeds the cap {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("empty grade set")]
    NoGrades,
    #[error("bad grade rule `{0}`")]
    Rule(String),
    #[error("grade rule is not total: residue {residue} mod {modulus} is unmatched")]
    NotTotal { residue: usize, modulus: usize },
    #[error("operation needs a finite carrier")]
    NotFinite,
    #[error(transparent)]
    Grade(#[from] GradeError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Anything that assigns a grade to element indices.
pub trait Fuzzy: Sync {
    fn grade(&self, x: usize) -> Grade;

    /// Number of elements when the set is an explicit table.
    fn domain(&self) -> Option<usize> {
        None
    }
}

impl<T: Fuzzy + ?Sized> Fuzzy for &T {
    fn grade(&self, x: usize) -> Grade {
        (**self).grade(x)
    }
    fn domain(&self) -> Option<usize> {
        (**self).domain()
    }
}

/// A total grade table over a finite carrier.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FuzzySet {
    name: String,
    grades: Vec<Grade>,
}

impl FuzzySet {
    pub fn new(grades: Vec<Grade>) -> Self {
        assert!(!grades.is_empty(), "fuzzy set over an empty carrier");
        FuzzySet {
            name: "mu".into(),
            grades,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn constant(order: usize, g: Grade) -> Self {
        FuzzySet::new(vec![g; order])
    }

    /// Tabulates any [`Fuzzy`] over `0..order`.
    pub fn tabulate(order: usize, f: &(impl Fuzzy + ?Sized)) -> Self {
        FuzzySet::new((0..order).map(|x| f.grade(x)).collect())
    }

    pub fn order(&self) -> usize {
        self.grades.len()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    /// Distinct grades, ascending.
    pub fn image(&self) -> Vec<Grade> {
        let mut im = self.grades.clone();
        im.sort();
        im.dedup();
        im
    }

    pub fn is_constant(&self) -> bool {
        self.grades.iter().all(|&g| g == self.grades[0])
    }

    /// Pointwise `self <= other`.
    pub fn is_subset_of(&self, other: &FuzzySet) -> bool {
        self.order() == other.order() && self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b)
    }

    /// First element where `self` exceeds `other`.
    pub fn first_excess(&self, other: &FuzzySet) -> Option<usize> {
        (0..self.order()).find(|&x| self.grades[x] > other.grades[x])
    }
}

impl Fuzzy for FuzzySet {
    #[inline]
    fn grade(&self, x: usize) -> Grade {
        self.grades[x]
    }
    fn domain(&self) -> Option<usize> {
        Some(self.grades.len())
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.grades.iter().enumerate().map(|(x, g)| format!("{x}:{g}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Guard of one clause in a [`GradeRule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    Even,
    Odd,
    /// `n` is a multiple of `k`.
    Mult(usize),
    Eq(usize),
    Any,
}

impl Condition {
    pub fn matches(self, n: usize) -> bool {
        match self {
            Condition::Even => n.is_multiple_of(2),
            Condition::Odd => n % 2 == 1,
            Condition::Mult(0) => n == 0,
            Condition::Mult(k) => n.is_multiple_of(k),
            Condition::Eq(k) => n == k,
            Condition::Any => true,
        }
    }

    fn modulus(self) -> usize {
        match self {
            Condition::Even | Condition::Odd => 2,
            Condition::Mult(k) if k > 0 => k,
            _ => 1,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Even => f.write_str("even"),
            Condition::Odd => f.write_str("odd"),
            Condition::Mult(k) => write!(f, "mult {k}"),
            Condition::Eq(k) => write!(f, "eq {k}"),
            Condition::Any => f.write_str("any"),
        }
    }
}

impl FromStr for Condition {
    type Err = FuzzyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| w.parse::<usize>().map_err(|_| FuzzyError::Rule(s.to_string()));
        match words.as_slice() {
            ["even"] => Ok(Condition::Even),
            ["odd"] => Ok(Condition::Odd),
            ["any"] | ["otherwise"] => Ok(Condition::Any),
            ["mult", k] => Ok(Condition::Mult(num(k)?)),
            ["eq", k] => Ok(Condition::Eq(num(k)?)),
            _ => Err(FuzzyError::Rule(s.to_string())),
        }
    }
}

/// A fuzzy subset of N0 given by guarded clauses; the first match wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradeRule {
    name: String,
    clauses: Vec<(Condition, Grade)>,
}

impl GradeRule {
    /// Builds a rule after checking that every natural number is matched.
    pub fn new(clauses: Vec<(Condition, Grade)>) -> Result<Self, FuzzyError> {
        let modulus = clauses
            .iter()
            .map(|(c, _)| c.modulus())
            .fold(1, lcm);
        // Eq clauses only cover single numbers, so probe a large representative.
        let base = clauses
            .iter()
            .filter_map(|(c, _)| match c {
                Condition::Eq(k) => Some(*k + 1),
                Condition::Mult(0) => Some(1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let base = base.div_ceil(modulus) * modulus;
        for residue in 0..modulus {
            let n = base + residue;
            if !clauses.iter().any(|(c, _)| c.matches(n)) {
                return Err(FuzzyError::NotTotal { residue, modulus });
            }
        }
        Ok(GradeRule {
            name: "mu".into(),
            clauses,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn clauses(&self) -> &[(Condition, Grade)] {
        &self.clauses
    }

    /// Parses `even -> 1, odd -> 1/5` (optionally prefixed by `rule`).
    pub fn parse(s: &str) -> Result<Self, FuzzyError> {
        let body = s.trim();
        let body = body.strip_prefix("rule").unwrap_or(body);
        let mut clauses = Vec::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (cond, grade) = part
                .split_once("->")
                .ok_or_else(|| FuzzyError::Rule(part.to_string()))?;
            clauses.push((cond.trim().parse()?, grade.trim().parse()?));
        }
        if clauses.is_empty() {
            return Err(FuzzyError::Rule(s.to_string()));
        }
        GradeRule::new(clauses)
    }

    /// Grades reachable by some natural number, ascending.
    pub fn image(&self) -> Vec<Grade> {
        let modulus = self.clauses.iter().map(|(c, _)| c.modulus()).fold(1, lcm);
        let top = self
            .clauses
            .iter()
            .filter_map(|(c, _)| match c {
                Condition::Eq(k) => Some(*k),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut im: Vec<Grade> = (0..=top + modulus).map(|n| self.grade(n)).collect();
        im.sort();
        im.dedup();
        im
    }
}

impl Fuzzy for GradeRule {
    fn grade(&self, x: usize) -> Grade {
        self.clauses
            .iter()
            .find(|(c, _)| c.matches(x))
            .map(|&(_, g)| g)
            .expect("grade rules are total")
    }
}

impl fmt::Display for GradeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses.iter().map(|(c, g)| format!("{c} -> {g}")).collect();
        write!(f, "rule {}", parts.join(", "))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn check_domain<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized)) -> Result<(), FuzzyError> {
    match mu.domain() {
        Some(n) if n != h.size() => Err(FuzzyError::OrderMismatch {
            expected: h.size(),
            found: n,
        }),
        _ => Ok(()),
    }
}

fn fuzzy_ideal_scan<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized), side: Side) -> Verdict {
    for x in h.elements() {
        for y in h.elements() {
            let (gx, gy) = (mu.grade(x), mu.grade(y));
            let s = h.add(x, y);
            if mu.grade(s) < gx.min(gy) {
                return Verdict::Fails(
                    Witness::new("mu(x+y) < min(mu(x), mu(y))")
                        .bind("x", x)
                        .bind("y", y)
                        .bind("mu(x+y)", mu.grade(s)),
                );
            }
            let p = h.mul(x, y);
            let (need, rule) = match side {
                Side::Left => (gy, "mu(xy) < mu(y)"),
                Side::Right => (gx, "mu(xy) < mu(x)"),
            };
            if mu.grade(p) < need {
                return Verdict::Fails(Witness::new(rule).bind("x", x).bind("y", y).bind("mu(xy)", mu.grade(p)));
            }
        }
    }
    h.passing()
}

/// `mu(x+y) >= min(mu(x), mu(y))` and `mu(xy) >= mu(y)` (`mu(x)` on the right).
pub fn is_fuzzy_ideal<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized), side: Side) -> Result<Verdict, FuzzyError> {
    check_domain(h, mu)?;
    Ok(fuzzy_ideal_scan(h, mu, side))
}

/// Fuzzy ideal with `x + y = z` forcing `mu(x) >= min(mu(y), mu(z))`.
pub fn is_fuzzy_k_ideal<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized), side: Side) -> Result<Verdict, FuzzyError> {
    check_domain(h, mu)?;
    let base = fuzzy_ideal_scan(h, mu, side);
    if base.is_fail() {
        return Ok(base);
    }
    for x in h.elements() {
        for y in h.elements() {
            let z = h.add(x, y);
            if mu.grade(x) < mu.grade(y).min(mu.grade(z)) {
                return Ok(Verdict::Fails(
                    Witness::new("x + y = z but mu(x) < min(mu(y), mu(z))")
                        .bind("x", x)
                        .bind("y", y)
                        .bind("z", z),
                ));
            }
        }
    }
    Ok(base)
}

/// Fuzzy ideal with `x + a + z = b + z` forcing `mu(x) >= min(mu(a), mu(b))`.
pub fn is_fuzzy_h_ideal<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized), side: Side) -> Result<Verdict, FuzzyError> {
    check_domain(h, mu)?;
    let base = fuzzy_ideal_scan(h, mu, side);
    if base.is_fail() {
        return Ok(base);
    }
    for z in h.elements() {
        // best[v]: largest mu(b) with b + z = v
        let width = h.elements().map(|b| h.add(b, z)).max().unwrap_or(0) + 1;
        let mut best: Vec<Option<(Grade, usize)>> = vec![None; width];
        for b in h.elements() {
            let v = h.add(b, z);
            let gb = mu.grade(b);
            if best[v].is_none_or(|(g, _)| gb > g) {
                best[v] = Some((gb, b));
            }
        }
        for x in h.elements() {
            let gx = mu.grade(x);
            for a in h.elements() {
                let v = h.add(h.add(x, a), z);
                if let Some(&Some((gb, b))) = best.get(v) {
                    if gx < mu.grade(a).min(gb) {
                        return Ok(Verdict::Fails(
                            Witness::new("x + a + z = b + z but mu(x) < min(mu(a), mu(b))")
                                .bind("x", x)
                                .bind("a", a)
                                .bind("b", b)
                                .bind("z", z),
                        ));
                    }
                }
            }
        }
    }
    Ok(base)
}

pub fn is_fuzzy_kind<H: Hemiring + ?Sized>(
    h: &H,
    mu: &(impl Fuzzy + ?Sized),
    kind: IdealKind,
    side: Side,
) -> Result<Verdict, FuzzyError> {
    match kind {
        IdealKind::Plain => is_fuzzy_ideal(h, mu, side),
        IdealKind::K => is_fuzzy_k_ideal(h, mu, side),
        IdealKind::H => is_fuzzy_h_ideal(h, mu, side),
    }
}

/// `U(mu; t)` as a membership predicate; usable on any carrier.
pub struct Level<'a, F: ?Sized> {
    pub mu: &'a F,
    pub t: Grade,
}

impl<F: Fuzzy + ?Sized> Subset for Level<'_, F> {
    fn contains(&self, x: usize) -> bool {
        self.mu.grade(x) >= self.t
    }
}

/// `{x | mu(x) >= t}`.
pub fn level_set(mu: &FuzzySet, t: Grade) -> CrispSubset {
    let n = mu.order();
    CrispSubset::new(n, (0..n).filter(|&x| mu.grade(x) >= t)).expect("indices are in range")
}

/// Distinct grades taken on the carrier's (possibly bounded) elements.
pub fn image_on<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized)) -> Vec<Grade> {
    let mut im: Vec<Grade> = h.elements().map(|x| mu.grade(x)).collect();
    im.sort();
    im.dedup();
    im
}

/// Decides the fuzzy h-ideal property through level sets: every
/// `U(mu; t)` with `t` in the image must be an h-ideal.
pub fn transfer_check<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized), side: Side) -> Result<Verdict, FuzzyError> {
    check_domain(h, mu)?;
    let mut verdict = h.passing();
    for t in image_on(h, mu) {
        let level = Level { mu, t };
        if let Verdict::Fails(w) = is_h_ideal(h, &level, side)? {
            let mut lw = Witness::new(format!("level set U(mu; {t}) is not an h-ideal: {}", w.rule));
            lw.bindings = w.bindings;
            verdict = Verdict::Fails(lw.bind("t", t));
            break;
        }
    }
    Ok(verdict)
}

/// `t` on `A`, `s` elsewhere.
pub fn two_valued(a: &CrispSubset, t: Grade, s: Grade) -> Result<FuzzySet, FuzzyError> {
    if s >= t {
        return Err(FuzzyError::NotOrdered { s, t });
    }
    Ok(FuzzySet::new(
        (0..a.order()).map(|x| if a.contains(x) { t } else { s }).collect(),
    ))
}

pub fn characteristic(a: &CrispSubset) -> FuzzySet {
    two_valued(a, Grade::ONE, Grade::ZERO).expect("0 < 1").named(format!("chi{{{a}}}"))
}

pub fn intersect(mu: &FuzzySet, nu: &FuzzySet) -> Result<FuzzySet, FuzzyError> {
    if mu.order() != nu.order() {
        return Err(FuzzyError::OrderMismatch {
            expected: mu.order(),
            found: nu.order(),
        });
    }
    Ok(FuzzySet::new(
        mu.grades.iter().zip(&nu.grades).map(|(&a, &b)| a.min(b)).collect(),
    ))
}

/// Which products enter the h-product decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductForm {
    /// `x + a1 b1 + z = a2 b2 + z`.
    Single,
    /// `x + sum a_i b_i + z = sum a_j b_j + z`; finite carriers only.
    Sums,
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductForm::Single => "single",
            ProductForm::Sums => "sums",
        })
    }
}

/// Result of an h-product over the carrier's elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HProduct {
    pub set: FuzzySet,
    /// On bounded carriers the grades are lower bounds: decompositions
    /// using elements above this bound are not searched.
    pub lower_bound_at: Option<usize>,
}

/// `(mu ∘h nu)(x)`: the best `min(mu(a1), mu(a2), nu(b1), nu(b2))` over
/// `x + a1 b1 + z = a2 b2 + z`, or 0 without any decomposition.
pub fn h_product<H: Hemiring + ?Sized>(
    h: &H,
    mu: &(impl Fuzzy + ?Sized),
    nu: &(impl Fuzzy + ?Sized),
    form: ProductForm,
) -> Result<HProduct, FuzzyError> {
    check_domain(h, mu)?;
    check_domain(h, nu)?;
    if form == ProductForm::Sums && h.bound().is_some() {
        return Err(FuzzyError::NotFinite);
    }
    // g[p]: best min(mu(a), nu(b)) over a b = p
    let mut g: Vec<Grade> = Vec::new();
    for a in h.elements() {
        let ga = mu.grade(a);
        for b in h.elements() {
            let p = h.mul(a, b);
            if p >= g.len() {
                g.resize(p + 1, Grade::ZERO);
            }
            let v = ga.min(nu.grade(b));
            if v > g[p] {
                g[p] = v;
            }
        }
    }
    if form == ProductForm::Sums {
        // close under +: g[s + t] >= min(g[s], g[t])
        let n = g.len();
        loop {
            let mut changed = false;
            for s in 0..n {
                for t in 0..n {
                    let u = h.add(s, t);
                    let v = g[s].min(g[t]);
                    if v > g[u] {
                        g[u] = v;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    let products: Vec<usize> = (0..g.len()).filter(|&p| g[p] > Grade::ZERO).collect();
    let mut out = vec![Grade::ZERO; h.size()];
    if !products.is_empty() {
        for z in h.elements() {
            // hz[v]: best g[p2] with p2 + z = v
            let mut hz: std::collections::HashMap<usize, Grade> = std::collections::HashMap::new();
            for &p in &products {
                let e = hz.entry(h.add(p, z)).or_insert(Grade::ZERO);
                if g[p] > *e {
                    *e = g[p];
                }
            }
            for x in h.elements() {
                for &p in &products {
                    if g[p] <= out[x] {
                        continue;
                    }
                    if let Some(&v) = hz.get(&h.add(h.add(x, p), z)) {
                        let c = g[p].min(v);
                        if c > out[x] {
                            out[x] = c;
                        }
                    }
                }
            }
        }
    }
    Ok(HProduct {
        set: FuzzySet::new(out).named("mu∘h nu"),
        lower_bound_at: h.bound(),
    })
}

/// Every function `carrier -> grades` that is a fuzzy h-ideal, in
/// lexicographic order of grade indices (element 0 most significant).
pub fn enumerate_fuzzy_h_ideals(
    h: &FiniteHemiring,
    grades: &[Grade],
    side: Side,
    cap: usize,
) -> Result<Vec<FuzzySet>, FuzzyError> {
    let mut grades = grades.to_vec();
    grades.sort();
    grades.dedup();
    if grades.is_empty() {
        return Err(FuzzyError::NoGrades);
    }
    let n = h.order();
    let count = (grades.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(FuzzyError::CapExceeded {
            count: usize::try_from(count).unwrap_or(usize::MAX),
            cap,
        });
    }
    let k = grades.len();
    let mut idx = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        // mu(0) is the maximum of any fuzzy ideal; skip hopeless tables early
        if idx.iter().all(|&i| i <= idx[0]) {
            let mu = FuzzySet::new(idx.iter().map(|&i| grades[i]).collect());
            if is_fuzzy_h_ideal(h, &mu, side)?.is_pass() {
                out.push(mu);
            }
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// A random fuzzy h-ideal built from a random ascending chain of h-ideals
/// ending in `S` and strictly descending random grades.
///
/// `ideals` must hold the carrier's h-ideals of one side including `S`.
pub fn random_fuzzy_h_ideal<R: Rng + ?Sized>(ideals: &[CrispSubset], rng: &mut R) -> FuzzySet {
    let full = *ideals.iter().find(|a| a.is_full()).expect("S is an h-ideal");
    let mut chain = vec![*ideals.choose(rng).expect("nonempty")];
    while !chain.last().unwrap().is_full() {
        let top = *chain.last().unwrap();
        let above: Vec<&CrispSubset> = ideals.iter().filter(|b| top.is_subset_of(b) && **b != top).collect();
        if above.is_empty() || rng.gen_bool(0.25) {
            chain.push(full);
        } else {
            chain.push(**above.choose(rng).unwrap());
        }
    }
    let denom: i64 = rng.gen_range(1..=12);
    let mut levels: Vec<i64> = (0..=denom).collect();
    levels.shuffle(rng);
    let mut picked: Vec<i64> = levels.into_iter().take(chain.len()).collect();
    // a chain longer than the available levels is shortened from below
    while picked.len() < chain.len() {
        chain.remove(0);
    }
    picked.sort_unstable_by(|a, b| b.cmp(a));
    let n = full.order();
    let grades = (0..n)
        .map(|x| {
            let i = chain.iter().position(|a| a.contains(x)).expect("last link is S");
            Grade::new(picked[i], denom).expect("within [0, 1]")
        })
        .collect();
    FuzzySet::new(grades)
}

//! Hemiring carriers: finite Cayley tables and a bound-truncated `(N0, +, *)`.
//!
//! Every finite carrier pins its zero at index 0. Element indices are plain
//! `usize` values; for [`BoundedN0`] the index *is* the integer.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order accepted for a finite carrier. Subsets are stored as `u64`
/// bit masks.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarrierError {
    #[error("carrier must have at least one element")]
    Empty,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("{table} table is not {order}x{order} (row {row} has {len} entries)")]
    NotSquare {
        table: &'static str,
        order: usize,
        row: usize,
        len: usize,
    },
    #[error("{table} table has {rows} rows, expected {order}")]
    RowCount {
        table: &'static str,
        rows: usize,
        order: usize,
    },
    #[error("{table}({row},{col}) = {value} is not an element index below {order}")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("index 0 is not the additive identity (0 + {0} or {0} + 0 differs from {0})")]
    ZeroNotIdentity(usize),
    #[error("index 0 is not multiplicatively absorbing (0 * {0} or {0} * 0 is nonzero)")]
    ZeroNotAbsorbing(usize),
    #[error("tables violate the hemiring axioms: {0}")]
    Axioms(AxiomReport),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid builtin parameter: {0}")]
    BadParameter(String),
}

/// A named binding list that certifies why a check failed (or, for
/// existence claims, why it succeeded).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub rule: String,
    pub bindings: Vec<(String, String)>,
}

impl Witness {
    pub fn new(rule: impl Into<String>) -> Self {
        Witness {
            rule: rule.into(),
            bindings: Vec::new(),
        }
    }

    pub fn bind(mut self, name: impl Into<String>, value: impl fmt::Display) -> Self {
        self.bindings.push((name.into(), value.to_string()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.bindings
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    /// The binding `name` read back as an element index.
    pub fn element(&self, name: &str) -> Option<usize> {
        self.get(name)?.parse().ok()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if !self.bindings.is_empty() {
            write!(f, " [")?;
            for (i, (k, v)) in self.bindings.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{k}={v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Outcome of a universally quantified check.
///
/// Finite carriers only ever produce `Holds` or `Fails`. Bounded carriers
/// never claim `Holds`: a scan that finds nothing below the bound reports
/// `HoldsUpToBound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    HoldsUpToBound(usize),
}

impl Verdict {
    pub fn passing(bound: Option<usize>) -> Verdict {
        match bound {
            None => Verdict::Holds,
            Some(b) => Verdict::HoldsUpToBound(b),
        }
    }

    pub fn is_pass(&self) -> bool {
        !self.is_fail()
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    /// Sequential conjunction: the first failure wins, otherwise the weaker
    /// of the two passing labels.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (f @ Verdict::Fails(_), _) | (_, f @ Verdict::Fails(_)) => f,
            (Verdict::HoldsUpToBound(b), _) | (_, Verdict::HoldsUpToBound(b)) => {
                Verdict::HoldsUpToBound(b)
            }
            _ => Verdict::Holds,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "HOLDS"),
            Verdict::HoldsUpToBound(b) => write!(f, "HOLDS up to bound {b}"),
            Verdict::Fails(w) => write!(f, "FAILS: {w}"),
        }
    }
}

/// A hemiring whose quantifiers range over `elements()`.
pub trait Hemiring: Sync {
    fn name(&self) -> &str;

    /// Number of elements quantified over.
    fn size(&self) -> usize;

    fn add(&self, a: usize, b: usize) -> usize;

    fn mul(&self, a: usize, b: usize) -> usize;

    /// `Some(B)` when quantifiers are a truncation of an infinite carrier.
    fn bound(&self) -> Option<usize>;

    fn as_finite(&self) -> Option<&FiniteHemiring> {
        None
    }

    fn elements(&self) -> Range<usize> {
        0..self.size()
    }

    /// The verdict a scan reports when it found no counterexample.
    fn passing(&self) -> Verdict {
        Verdict::passing(self.bound())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    AddIdentity,
    AddCommutative,
    AddAssociative,
    MulAssociative,
    ZeroAbsorbing,
    LeftDistributive,
    RightDistributive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AddIdentity => "additive identity",
            Axiom::AddCommutative => "additive commutativity",
            Axiom::AddAssociative => "additive associativity",
            Axiom::MulAssociative => "multiplicative associativity",
            Axiom::ZeroAbsorbing => "zero absorption",
            Axiom::LeftDistributive => "left distributivity",
            Axiom::RightDistributive => "right distributivity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Lexicographically least offending tuple.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn violation(&self, axiom: Axiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "axioms: PASS");
        }
        write!(f, "axioms: FAIL")?;
        for v in &self.violations {
            write!(f, "; {} at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

fn check_shape(table: &'static str, t: &[Vec<usize>], n: usize) -> Result<(), CarrierError> {
    if t.len() != n {
        return Err(CarrierError::RowCount {
            table,
            rows: t.len(),
            order: n,
        });
    }
    for (row, r) in t.iter().enumerate() {
        if r.len() != n {
            return Err(CarrierError::NotSquare {
                table,
                order: n,
                row,
                len: r.len(),
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(CarrierError::OutOfRange {
                table,
                row,
                col,
                value,
                order: n,
            });
        }
    }
    Ok(())
}

/// Exhaustive O(n^3) scan of the hemiring axioms over raw tables.
///
/// Malformed tables are a structural error, never an axiom failure. Each
/// violated axiom is listed once with its least witness.
pub fn check_axioms(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<AxiomReport, CarrierError> {
    let n = add.len();
    if n == 0 {
        return Err(CarrierError::Empty);
    }
    check_shape("add", add, n)?;
    check_shape("mul", mul, n)?;

    let mut violations = Vec::new();
    let mut record = |axiom: Axiom, witness: Vec<usize>| {
        if !violations.iter().any(|v: &AxiomViolation| v.axiom == axiom) {
            violations.push(AxiomViolation { axiom, witness });
        }
    };

    for x in 0..n {
        if add[0][x] != x || add[x][0] != x {
            record(Axiom::AddIdentity, vec![x]);
        }
        if mul[0][x] != 0 || mul[x][0] != 0 {
            record(Axiom::ZeroAbsorbing, vec![x]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if add[a][b] != add[b][a] {
                record(Axiom::AddCommutative, vec![a, b]);
            }
            for c in 0..n {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    record(Axiom::AddAssociative, vec![a, b, c]);
                }
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    record(Axiom::MulAssociative, vec![a, b, c]);
                }
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                    record(Axiom::LeftDistributive, vec![a, b, c]);
                }
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]] {
                    record(Axiom::RightDistributive, vec![a, b, c]);
                }
            }
        }
    }
    Ok(AxiomReport {
        passed: violations.is_empty(),
        violations,
    })
}

/// A hemiring given by Cayley tables, zero at index 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteHemiring {
    name: String,
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl fmt::Debug for FiniteHemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteHemiring({}, order {})", self.name, self.order)
    }
}

impl FiniteHemiring {
    /// Validates structure, the zero convention and every axiom.
    pub fn from_tables(
        name: impl Into<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
    ) -> Result<Self, CarrierError> {
        let n = add.len();
        if n > MAX_ORDER {
            return Err(CarrierError::TooLarge(n));
        }
        let report = check_axioms(add, mul)?;
        for x in 0..n {
            if add[0][x] != x || add[x][0] != x {
                return Err(CarrierError::ZeroNotIdentity(x));
            }
            if mul[0][x] != 0 || mul[x][0] != 0 {
                return Err(CarrierError::ZeroNotAbsorbing(x));
            }
        }
        if !report.passed {
            return Err(CarrierError::Axioms(report));
        }
        Ok(Self::from_flat_unchecked(
            name.into(),
            n,
            add.concat(),
            mul.concat(),
        ))
    }

    /// Trusted constructor for tables already known to satisfy the axioms.
    pub(crate) fn from_flat_unchecked(
        name: String,
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(add.len(), order * order);
        debug_assert_eq!(mul.len(), order * order);
        FiniteHemiring {
            name,
            order,
            add,
            mul,
        }
    }

    fn from_fns(
        name: String,
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, CarrierError> {
        let tab = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..order)
                .map(|a| (0..order).map(|b| f(a, b)).collect())
                .collect()
        };
        Self::from_tables(name, &tab(&add), &tab(&mul))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn is_mul_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| self.mul[a * n + b] == self.mul[b * n + a]))
    }

    /// The four-element hemiring with the Cayley tables printed as the
    /// standard finite example of a hemiring.
    pub fn example21() -> Self {
        let add = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 2, 3],
            vec![2, 2, 2, 3],
            vec![3, 3, 3, 2],
        ];
        let mul = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 1, 1],
            vec![0, 1, 1, 1],
            vec![0, 1, 1, 1],
        ];
        Self::from_tables("example21", &add, &mul).expect("example21 is a hemiring")
    }

    /// `{0, ..., n}` with `a + b = max`, `a * b = min`; `n` plays the role
    /// of a top element.
    pub fn chain(n: usize) -> Result<Self, CarrierError> {
        if n < 1 {
            return Err(CarrierError::BadParameter(format!("chain({n}) needs n >= 1")));
        }
        let name = if n == 1 {
            "boolean".to_string()
        } else {
            format!("chain({n})")
        };
        Self::from_fns(name, n + 1, |a, b| a.max(b), |a, b| a.min(b))
    }

    pub fn boolean() -> Self {
        Self::chain(1).expect("chain(1)")
    }

    /// The ring of integers modulo `n`.
    pub fn zmod(n: usize) -> Result<Self, CarrierError> {
        if n < 1 {
            return Err(CarrierError::BadParameter(format!("zmod({n}) needs n >= 1")));
        }
        Self::from_fns(format!("zmod({n})"), n, |a, b| (a + b) % n, |a, b| (a * b) % n)
    }

    /// Addition of `Z_n` with the zero multiplication.
    pub fn zero_mul(n: usize) -> Result<Self, CarrierError> {
        if n < 1 {
            return Err(CarrierError::BadParameter(format!("zero_mul({n}) needs n >= 1")));
        }
        Self::from_fns(format!("zero_mul({n})"), n, |a, b| (a + b) % n, |_, _| 0)
    }

    /// Componentwise direct product; `(i, j)` is stored at `i * |h2| + j`.
    pub fn product(h1: &FiniteHemiring, h2: &FiniteHemiring) -> Result<Self, CarrierError> {
        let m = h2.order;
        let order = h1.order * m;
        if order > MAX_ORDER {
            return Err(CarrierError::TooLarge(order));
        }
        let split = |x: usize| (x / m, x % m);
        Self::from_fns(
            format!("product({},{})", h1.name, h2.name),
            order,
            |a, b| {
                let ((a1, a2), (b1, b2)) = (split(a), split(b));
                h1.add(a1, b1) * m + h2.add(a2, b2)
            },
            |a, b| {
                let ((a1, a2), (b1, b2)) = (split(a), split(b));
                h1.mul(a1, b1) * m + h2.mul(a2, b2)
            },
        )
    }

    /// Relabels elements by `perm` (old index -> new index). `perm[0]` must be 0.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        assert_eq!(perm.len(), n);
        assert_eq!(perm[0], 0);
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let relabel = |t: &[usize]| -> Vec<usize> {
            (0..n * n)
                .map(|k| perm[t[inv[k / n] * n + inv[k % n]]])
                .collect()
        };
        Self::from_flat_unchecked(self.name.clone(), n, relabel(&self.add), relabel(&self.mul))
    }
}

impl Hemiring for FiniteHemiring {
    fn name(&self) -> &str {
        &self.name
    }

    fn size(&self) -> usize {
        self.order
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    fn bound(&self) -> Option<usize> {
        None
    }

    fn as_finite(&self) -> Option<&FiniteHemiring> {
        Some(self)
    }
}

/// `(N0, +, *)` with every quantifier truncated to `{0, ..., bound}`.
///
/// Sums and products of in-range elements may leave the range; predicates on
/// this carrier must therefore be total on all of N0 (see `fuzzy::GradeRule`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedN0 {
    bound: usize,
    name: String,
}

impl BoundedN0 {
    pub fn new(bound: usize) -> Result<Self, CarrierError> {
        if bound < 1 {
            return Err(CarrierError::BadParameter("bound must be positive".into()));
        }
        Ok(BoundedN0 {
            bound,
            name: format!("n0[{bound}]"),
        })
    }
}

impl Hemiring for BoundedN0 {
    fn name(&self) -> &str {
        &self.name
    }

    fn size(&self) -> usize {
        self.bound + 1
    }

    fn add(&self, a: usize, b: usize) -> usize {
        a + b
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        a * b
    }

    fn bound(&self) -> Option<usize> {
        Some(self.bound)
    }
}

/// Builds a builtin from its textual name: `example21`, `boolean`,
/// `chain(n)`, `zmod(n)`, `zero_mul(n)` or `product(h1,h2)` (nesting allowed).
pub fn builtin(text: &str) -> Result<FiniteHemiring, CarrierError> {
    let text = text.trim();
    let unknown = || CarrierError::UnknownBuiltin(text.to_string());
    match text {
        "example21" => return Ok(FiniteHemiring::example21()),
        "boolean" => return Ok(FiniteHemiring::boolean()),
        _ => {}
    }
    let (head, rest) = text.split_once('(').ok_or_else(unknown)?;
    let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
    let int_param = || -> Result<usize, CarrierError> {
        inner
            .trim()
            .parse()
            .map_err(|_| CarrierError::BadParameter(format!("`{inner}` is not a non-negative integer")))
    };
    match head.trim() {
        "chain" => FiniteHemiring::chain(int_param()?),
        "zmod" => FiniteHemiring::zmod(int_param()?),
        "zero_mul" => FiniteHemiring::zero_mul(int_param()?),
        "product" => {
            let (l, r) = split_top_level_comma(inner).ok_or_else(unknown)?;
            FiniteHemiring::product(&builtin(l)?, &builtin(r)?)
        }
        _ => Err(unknown()),
    }
}

fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Builtins exercised by the default verification run. It contains both
/// h-hemiregular carriers (chains, `zmod(2|3|6)`) and non-h-hemiregular ones
/// (`example21`, `zmod(4)`, `zero_mul(n)`).
pub const DEFAULT_BUILTINS: &[&str] = &[
    "example21",
    "boolean",
    "chain(2)",
    "chain(3)",
    "zmod(2)",
    "zmod(3)",
    "zmod(4)",
    "zmod(6)",
    "zero_mul(2)",
    "zero_mul(3)",
    "product(boolean,zmod(2))",
];

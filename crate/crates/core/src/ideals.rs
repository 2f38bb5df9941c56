//! Crisp ideal theory: ideals, k-ideals, h-ideals, the h-closure, ideal
//! products, primality, maximality and h-hemiregularity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::{FiniteHemiring, Hemiring, Verdict, Witness, MAX_ORDER};

/// Default cap on the carrier order for subset enumeration (2^8 subsets).
pub const DEFAULT_SUBSET_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("subset is empty")]
    Empty,
    #[error("element {element} is not below the carrier order {order}")]
    BadElement { element: usize, order: usize },
    #[error("subset over {found} elements used with a carrier of order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("carrier order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("subset is not an h-ideal: {0}")]
    NotHIdeal(Witness),
    #[error("cannot parse subset `{0}`")]
    Syntax(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    /// `s * a` for left ideals, `a * s` for right ideals.
    #[inline]
    pub fn act<H: Hemiring + ?Sized>(self, h: &H, s: usize, a: usize) -> usize {
        match self {
            Side::Left => h.mul(s, a),
            Side::Right => h.mul(a, s),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(format!("unknown side `{s}` (expected left|right)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdealKind {
    Plain,
    K,
    H,
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealKind::Plain => "plain",
            IdealKind::K => "k",
            IdealKind::H => "h",
        })
    }
}

impl FromStr for IdealKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(IdealKind::Plain),
            "k" => Ok(IdealKind::K),
            "h" => Ok(IdealKind::H),
            _ => Err(format!("unknown ideal kind `{s}` (expected plain|k|h)")),
        }
    }
}

/// How `AB` is formed when testing crisp primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductConvention {
    /// Finite sums of products `a b` (always contains 0).
    FiniteSums,
    /// Bare products `{a b}`.
    SingleProducts,
}

/// Membership predicate over element indices.
pub trait Subset {
    fn contains(&self, x: usize) -> bool;
}

impl<T: Subset + ?Sized> Subset for &T {
    fn contains(&self, x: usize) -> bool {
        (**self).contains(x)
    }
}

/// Wraps a closure as a [`Subset`]; used for rule-defined subsets of N0.
pub struct Predicate<F>(pub F);

impl<F: Fn(usize) -> bool> Subset for Predicate<F> {
    fn contains(&self, x: usize) -> bool {
        (self.0)(x)
    }
}

/// A subset of a finite carrier, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrispSubset {
    order: usize,
    mask: u64,
}

impl CrispSubset {
    pub fn new(order: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self, IdealError> {
        let mut mask = 0u64;
        for e in elements {
            if e >= order {
                return Err(IdealError::BadElement { element: e, order });
            }
            mask |= 1 << e;
        }
        Ok(CrispSubset { order, mask })
    }

    pub fn from_mask(order: usize, mask: u64) -> Self {
        debug_assert!(order <= MAX_ORDER);
        debug_assert!(order == 64 || mask >> order == 0);
        CrispSubset { order, mask }
    }

    pub fn empty(order: usize) -> Self {
        CrispSubset { order, mask: 0 }
    }

    pub fn full(order: usize) -> Self {
        CrispSubset {
            order,
            mask: full_mask(order),
        }
    }

    pub fn zero(order: usize) -> Self {
        CrispSubset { order, mask: 1 }
    }

    /// Materializes any predicate over the carrier's elements.
    pub fn collect(h: &FiniteHemiring, a: &(impl Subset + ?Sized)) -> Self {
        let mut mask = 0u64;
        for x in h.elements() {
            if a.contains(x) {
                mask |= 1 << x;
            }
        }
        CrispSubset {
            order: h.order(),
            mask,
        }
    }

    /// Parses `0,1,2`.
    pub fn parse(order: usize, s: &str) -> Result<Self, IdealError> {
        let elems = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| IdealError::Syntax(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(order, elems)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.order)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&i| self.mask >> i & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &CrispSubset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn intersection(&self, other: &CrispSubset) -> CrispSubset {
        CrispSubset {
            order: self.order,
            mask: self.mask & other.mask,
        }
    }

    pub fn union(&self, other: &CrispSubset) -> CrispSubset {
        CrispSubset {
            order: self.order,
            mask: self.mask | other.mask,
        }
    }

    pub fn insert(&mut self, x: usize) {
        debug_assert!(x < self.order);
        self.mask |= 1 << x;
    }

    /// Canonical report order: cardinality, then bit mask.
    pub fn canonical_key(&self) -> (u32, u64) {
        (self.mask.count_ones(), self.mask)
    }
}

impl Subset for CrispSubset {
    #[inline]
    fn contains(&self, x: usize) -> bool {
        x < self.order && self.mask >> x & 1 == 1
    }
}

impl fmt::Display for CrispSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for CrispSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

pub(crate) fn full_mask(order: usize) -> u64 {
    if order >= 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

fn members<H: Hemiring + ?Sized>(h: &H, a: &(impl Subset + ?Sized)) -> Result<Vec<usize>, IdealError> {
    let m: Vec<usize> = h.elements().filter(|&x| a.contains(x)).collect();
    if m.is_empty() {
        Err(IdealError::Empty)
    } else {
        Ok(m)
    }
}

fn check_order(h: &FiniteHemiring, a: &CrispSubset) -> Result<(), IdealError> {
    if a.order() != h.order() {
        return Err(IdealError::OrderMismatch {
            expected: h.order(),
            found: a.order(),
        });
    }
    Ok(())
}

fn ideal_scan<H: Hemiring + ?Sized>(h: &H, a: &(impl Subset + ?Sized), m: &[usize], side: Side) -> Verdict {
    for &x in m {
        for &y in m {
            let s = h.add(x, y);
            if !a.contains(s) {
                return Verdict::Fails(
                    Witness::new("not closed under addition")
                        .bind("a", x)
                        .bind("b", y)
                        .bind("a+b", s),
                );
            }
        }
    }
    for s in h.elements() {
        for &x in m {
            let p = side.act(h, s, x);
            if !a.contains(p) {
                let rule = match side {
                    Side::Left => "s*a escapes the subset",
                    Side::Right => "a*s escapes the subset",
                };
                return Verdict::Fails(Witness::new(rule).bind("s", s).bind("a", x).bind("product", p));
            }
        }
    }
    h.passing()
}

/// Closed under `+` and absorbing multiplication from `side`.
pub fn is_ideal<H: Hemiring + ?Sized>(h: &H, a: &(impl Subset + ?Sized), side: Side) -> Result<Verdict, IdealError> {
    let m = members(h, a)?;
    Ok(ideal_scan(h, a, &m, side))
}

/// An ideal with `x + y = z`, `y, z in A` forcing `x in A`.
pub fn is_k_ideal<H: Hemiring + ?Sized>(h: &H, a: &(impl Subset + ?Sized), side: Side) -> Result<Verdict, IdealError> {
    let m = members(h, a)?;
    let base = ideal_scan(h, a, &m, side);
    if base.is_fail() {
        return Ok(base);
    }
    for x in h.elements() {
        if a.contains(x) {
            continue;
        }
        for &y in &m {
            let z = h.add(x, y);
            if a.contains(z) {
                return Ok(Verdict::Fails(
                    Witness::new("x + y = z with y, z in A but x not in A")
                        .bind("x", x)
                        .bind("y", y)
                        .bind("z", z),
                ));
            }
        }
    }
    Ok(base)
}

/// An ideal with `x + a + z = b + z`, `a, b in A` forcing `x in A`.
pub fn is_h_ideal<H: Hemiring + ?Sized>(h: &H, a: &(impl Subset + ?Sized), side: Side) -> Result<Verdict, IdealError> {
    let m = members(h, a)?;
    let base = ideal_scan(h, a, &m, side);
    if base.is_fail() {
        return Ok(base);
    }
    Ok(h_condition(h, a, &m).unwrap_or(base))
}

fn h_condition<H: Hemiring + ?Sized>(h: &H, a: &(impl Subset + ?Sized), m: &[usize]) -> Option<Verdict> {
    for x in h.elements() {
        if a.contains(x) {
            continue;
        }
        for z in h.elements() {
            for &p in m {
                let lhs = h.add(h.add(x, p), z);
                for &q in m {
                    if lhs == h.add(q, z) {
                        return Some(Verdict::Fails(
                            Witness::new("x + a + z = b + z with a, b in A but x not in A")
                                .bind("x", x)
                                .bind("a", p)
                                .bind("b", q)
                                .bind("z", z),
                        ));
                    }
                }
            }
        }
    }
    None
}

pub fn is_kind<H: Hemiring + ?Sized>(
    h: &H,
    a: &(impl Subset + ?Sized),
    kind: IdealKind,
    side: Side,
) -> Result<Verdict, IdealError> {
    match kind {
        IdealKind::Plain => is_ideal(h, a, side),
        IdealKind::K => is_k_ideal(h, a, side),
        IdealKind::H => is_h_ideal(h, a, side),
    }
}

/// `{x | x + a1 + z = a2 + z for some a1, a2 in A, z in S}`.
///
/// This is the literal set; it contains `A` whenever some `a1 + z = z`
/// is available (for instance when `0 in A`) but not for every subset.
pub fn h_closure(h: &FiniteHemiring, a: &CrispSubset) -> Result<CrispSubset, IdealError> {
    check_order(h, a)?;
    if a.is_empty() {
        return Err(IdealError::Empty);
    }
    let n = h.order();
    let mut out = CrispSubset::empty(n);
    for z in h.elements() {
        // right-hand sides reachable with this z
        let mut rhs = 0u64;
        for q in a.iter() {
            rhs |= 1 << h.add(q, z);
        }
        for x in h.elements() {
            if out.contains(x) {
                continue;
            }
            if a.iter().any(|p| rhs >> h.add(h.add(x, p), z) & 1 == 1) {
                out.insert(x);
            }
        }
    }
    Ok(out)
}

/// Closure of `a` under `+` (not necessarily containing 0).
pub fn additive_closure(h: &FiniteHemiring, a: &CrispSubset) -> CrispSubset {
    let mut cur = *a;
    loop {
        let mut next = cur;
        for x in cur.iter() {
            for y in cur.iter() {
                next.insert(h.add(x, y));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `{a b | a in A, b in B}`.
pub fn single_product(h: &FiniteHemiring, a: &CrispSubset, b: &CrispSubset) -> Result<CrispSubset, IdealError> {
    check_order(h, a)?;
    check_order(h, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(IdealError::Empty);
    }
    let mut out = CrispSubset::empty(h.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(h.mul(x, y));
        }
    }
    Ok(out)
}

/// All finite sums of products `a b`, together with 0.
pub fn ideal_product(h: &FiniteHemiring, a: &CrispSubset, b: &CrispSubset) -> Result<CrispSubset, IdealError> {
    let mut p = single_product(h, a, b)?;
    p.insert(0);
    Ok(additive_closure(h, &p))
}

pub fn product_by(
    h: &FiniteHemiring,
    a: &CrispSubset,
    b: &CrispSubset,
    convention: ProductConvention,
) -> Result<CrispSubset, IdealError> {
    match convention {
        ProductConvention::FiniteSums => ideal_product(h, a, b),
        ProductConvention::SingleProducts => single_product(h, a, b),
    }
}

/// All nonempty subsets satisfying `kind` on `side`, ordered by
/// (cardinality, bit mask).
pub fn enumerate_ideals(h: &FiniteHemiring, kind: IdealKind, side: Side, cap: usize) -> Result<Vec<CrispSubset>, IdealError> {
    let n = h.order();
    if n > cap || n > 20 {
        return Err(IdealError::CapExceeded { order: n, cap });
    }
    let mut out = Vec::new();
    for mask in 1..(1u64 << n) {
        let s = CrispSubset::from_mask(n, mask);
        if is_kind(h, &s, kind, side)?.is_pass() {
            out.push(s);
        }
    }
    out.sort_by_key(CrispSubset::canonical_key);
    Ok(out)
}

/// Smallest left (right) ideal containing `a`: the additive closure of
/// `Sa` (resp. `aS`) together with the additive orbit `{0, a, a + a, ...}`.
pub fn principal_ideal(h: &FiniteHemiring, a: usize, side: Side) -> Result<CrispSubset, IdealError> {
    let n = h.order();
    if a >= n {
        return Err(IdealError::BadElement { element: a, order: n });
    }
    let mut gen = CrispSubset::zero(n);
    gen.insert(a);
    for s in h.elements() {
        gen.insert(side.act(h, s, a));
    }
    let mut cur = additive_closure(h, &gen);
    loop {
        let mut next = cur;
        for s in h.elements() {
            for x in cur.iter() {
                next.insert(side.act(h, s, x));
            }
        }
        let next = additive_closure(h, &next);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

pub fn principal_left_ideal(h: &FiniteHemiring, a: usize) -> Result<CrispSubset, IdealError> {
    principal_ideal(h, a, Side::Left)
}

/// Per element `a`, a triple `(x1, x2, z)` with `a + a x1 a + z = a x2 a + z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HemiregularityWitness {
    pub triples: Vec<(usize, usize, usize)>,
}

impl HemiregularityWitness {
    pub fn verify<H: Hemiring + ?Sized>(&self, h: &H) -> bool {
        self.triples.iter().enumerate().all(|(a, &(x1, x2, z))| {
            let axa = |x| h.mul(h.mul(a, x), a);
            h.add(h.add(a, axa(x1)), z) == h.add(axa(x2), z)
        })
    }
}

fn hemiregular_triple<H: Hemiring + ?Sized>(h: &H, a: usize) -> Option<(usize, usize, usize)> {
    let axa: Vec<usize> = h.elements().map(|x| h.mul(h.mul(a, x), a)).collect();
    for z in h.elements() {
        // value of the right-hand side for each x2, first occurrence kept
        let mut rhs: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for (x2, &v) in axa.iter().enumerate() {
            rhs.entry(h.add(v, z)).or_insert(x2);
        }
        for (x1, &v) in axa.iter().enumerate() {
            if let Some(&x2) = rhs.get(&h.add(h.add(a, v), z)) {
                return Some((x1, x2, z));
            }
        }
    }
    None
}

/// Decides h-hemiregularity: every `a` needs some `x1, x2, z` with
/// `a + a x1 a + z = a x2 a + z`.
pub fn is_h_hemiregular<H: Hemiring + ?Sized>(h: &H) -> (Verdict, Option<HemiregularityWitness>) {
    let mut triples = Vec::with_capacity(h.size());
    for a in h.elements() {
        match hemiregular_triple(h, a) {
            Some(t) => triples.push(t),
            None => {
                return (
                    Verdict::Fails(Witness::new("no x1, x2, z with a + a x1 a + z = a x2 a + z").bind("a", a)),
                    None,
                )
            }
        }
    }
    (h.passing(), Some(HemiregularityWitness { triples }))
}

fn require_h_ideal<H: Hemiring + ?Sized>(h: &H, p: &(impl Subset + ?Sized), side: Side) -> Result<(), IdealError> {
    match is_h_ideal(h, p, side)? {
        Verdict::Fails(w) => Err(IdealError::NotHIdeal(w)),
        _ => Ok(()),
    }
}

/// `P != S` and, for all `side` h-ideals `A`, `B`: `AB ⊆ P` forces `A ⊆ P` or `B ⊆ P`.
pub fn is_prime_h_ideal(
    h: &FiniteHemiring,
    p: &CrispSubset,
    side: Side,
    convention: ProductConvention,
    cap: usize,
) -> Result<Verdict, IdealError> {
    check_order(h, p)?;
    require_h_ideal(h, p, side)?;
    if p.is_full() {
        return Ok(Verdict::Fails(Witness::new("P = S")));
    }
    let ideals = enumerate_ideals(h, IdealKind::H, side, cap)?;
    for a in &ideals {
        if a.is_subset_of(p) {
            continue;
        }
        for b in &ideals {
            if b.is_subset_of(p) {
                continue;
            }
            if product_by(h, a, b, convention)?.is_subset_of(p) {
                return Ok(Verdict::Fails(
                    Witness::new("AB ⊆ P with A, B ⊄ P").bind("A", a).bind("B", b),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `P != S` and for all `x, y` outside `P` some `r` has `x r y` outside `P`.
pub fn is_prime_elementwise<H: Hemiring + ?Sized>(h: &H, p: &(impl Subset + ?Sized), side: Side) -> Result<Verdict, IdealError> {
    require_h_ideal(h, p, side)?;
    let outside: Vec<usize> = h.elements().filter(|&x| !p.contains(x)).collect();
    if outside.is_empty() {
        return Ok(Verdict::Fails(Witness::new("P = S")));
    }
    for &x in &outside {
        for &y in &outside {
            let escapes = h.elements().any(|r| !p.contains(h.mul(h.mul(x, r), y)));
            if !escapes {
                return Ok(Verdict::Fails(
                    Witness::new("x S y ⊆ P with x, y not in P").bind("x", x).bind("y", y),
                ));
            }
        }
    }
    Ok(h.passing())
}

/// Proper h-ideals maximal under inclusion, canonical order.
pub fn maximal_h_ideals(h: &FiniteHemiring, side: Side, cap: usize) -> Result<Vec<CrispSubset>, IdealError> {
    let proper: Vec<CrispSubset> = enumerate_ideals(h, IdealKind::H, side, cap)?
        .into_iter()
        .filter(|a| !a.is_full())
        .collect();
    Ok(proper
        .iter()
        .filter(|a| !proper.iter().any(|b| b != *a && a.is_subset_of(b)))
        .copied()
        .collect())
}

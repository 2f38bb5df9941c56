//! Exhaustive search for small hemirings up to isomorphism.
//!
//! Isomorphisms fix the zero (index 0). A class is represented by its
//! lexicographically least `(add, mul)` table pair: the addition table is
//! the least one in its orbit, and the multiplication table is the least
//! one under the automorphisms of that addition table.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::{check_axioms, FiniteHemiring, Witness};
use crate::ideals::{
    enumerate_ideals, is_h_hemiregular, is_h_ideal, is_prime_h_ideal, IdealKind, ProductConvention, Side,
};

pub const MAX_SEARCH_ORDER: usize = 5;
/// The unpruned oracle visits `order^(2 (order-1)^2)` table pairs.
pub const MAX_NAIVE_ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {order} exceeds the search cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("unknown filter `{0}`")]
    UnknownFilter(String),
}

type Table = Vec<u8>;

fn check_order(order: usize, cap: usize) -> Result<(), SearchError> {
    if order == 0 {
        return Err(SearchError::ZeroOrder);
    }
    if order > cap {
        return Err(SearchError::CapExceeded { order, cap });
    }
    Ok(())
}

/// All permutations of `0..n` fixing 0, as old -> new maps.
fn zero_fixing_perms(n: usize) -> Vec<Vec<u8>> {
    fn rec(rest: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    let mut rest: Vec<u8> = (1..n as u8).collect();
    let mut cur = vec![0u8];
    rec(&mut rest, &mut cur, &mut out);
    out
}

/// `T'[p(i)][p(j)] = p(T[i][j])`.
fn permute(t: &[u8], n: usize, p: &[u8]) -> Table {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            out[p[i] as usize * n + p[j] as usize] = p[t[i * n + j] as usize];
        }
    }
    out
}

/// Commutative monoids on `0..n` with identity 0.
fn commutative_monoids(n: usize) -> Vec<Table> {
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut t: Vec<Option<u8>> = vec![None; n * n];
    for x in 0..n {
        t[x] = Some(x as u8);
        t[x * n] = Some(x as u8);
    }
    let mut out = Vec::new();
    fn assoc_ok(t: &[Option<u8>], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = t[a * n + b] else { continue };
                for c in 0..n {
                    let (Some(l), Some(bc)) = (t[ab as usize * n + c], t[b * n + c]) else { continue };
                    if let Some(r) = t[a * n + bc as usize] {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn rec(k: usize, cells: &[(usize, usize)], t: &mut Vec<Option<u8>>, n: usize, out: &mut Vec<Table>) {
        if k == cells.len() {
            out.push(t.iter().map(|v| v.unwrap()).collect());
            return;
        }
        let (i, j) = cells[k];
        for v in 0..n as u8 {
            t[i * n + j] = Some(v);
            t[j * n + i] = Some(v);
            if assoc_ok(t, n) {
                rec(k + 1, cells, t, n, out);
            }
        }
        t[i * n + j] = None;
        t[j * n + i] = None;
    }
    rec(0, &cells, &mut t, n, &mut out);
    out
}

/// Multiplication tables compatible with `add`, with pruning on partial tables.
fn multiplications(add: &[u8], n: usize) -> Vec<Table> {
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let mut m: Vec<Option<u8>> = vec![None; n * n];
    for x in 0..n {
        m[x] = Some(0);
        m[x * n] = Some(0);
    }
    let mut out = Vec::new();
    fn consistent(m: &[Option<u8>], add: &[u8], n: usize) -> bool {
        let at = |a: usize, b: usize| m[a * n + b];
        let plus = |a: u8, b: u8| add[a as usize * n + b as usize];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // associativity
                    if let (Some(ab), Some(bc)) = (at(a, b), at(b, c)) {
                        if let (Some(l), Some(r)) = (at(ab as usize, c), at(a, bc as usize)) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                    let bpc = add[b * n + c] as usize;
                    // a(b + c) = ab + ac
                    if let (Some(l), Some(ab), Some(ac)) = (at(a, bpc), at(a, b), at(a, c)) {
                        if l != plus(ab, ac) {
                            return false;
                        }
                    }
                    // (b + c)a = ba + ca
                    if let (Some(l), Some(ba), Some(ca)) = (at(bpc, a), at(b, a), at(c, a)) {
                        if l != plus(ba, ca) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn rec(k: usize, cells: &[(usize, usize)], m: &mut Vec<Option<u8>>, add: &[u8], n: usize, out: &mut Vec<Table>) {
        if k == cells.len() {
            out.push(m.iter().map(|v| v.unwrap()).collect());
            return;
        }
        let (i, j) = cells[k];
        for v in 0..n as u8 {
            m[i * n + j] = Some(v);
            if consistent(m, add, n) {
                rec(k + 1, cells, m, add, n, out);
            }
        }
        m[i * n + j] = None;
    }
    rec(0, &cells, &mut m, add, n, &mut out);
    out
}

fn to_hemiring(n: usize, add: &[u8], mul: &[u8], name: String) -> FiniteHemiring {
    FiniteHemiring::from_flat_unchecked(
        name,
        n,
        add.iter().map(|&v| v as usize).collect(),
        mul.iter().map(|&v| v as usize).collect(),
    )
}

/// One representative per isomorphism class, ordered by `(add, mul)`.
pub fn enumerate_hemirings(order: usize) -> Result<Vec<FiniteHemiring>, SearchError> {
    check_order(order, MAX_SEARCH_ORDER)?;
    let n = order;
    let perms = zero_fixing_perms(n);
    let canonical_adds: Vec<Table> = commutative_monoids(n)
        .into_iter()
        .filter(|a| perms.iter().all(|p| permute(a, n, p) >= *a))
        .collect();
    let mut classes: Vec<(Table, Table)> = canonical_adds
        .par_iter()
        .flat_map_iter(|a| {
            let autos: Vec<&Vec<u8>> = perms.iter().filter(|p| permute(a, n, p) == *a).collect();
            multiplications(a, n)
                .into_iter()
                .filter(move |m| autos.iter().all(|p| permute(m, n, p) >= *m))
                .map(move |m| (a.clone(), m))
                .collect::<Vec<_>>()
        })
        .collect();
    classes.sort();
    Ok(classes
        .iter()
        .enumerate()
        .map(|(k, (a, m))| to_hemiring(n, a, m, format!("h{n}.{k}")))
        .collect())
}

/// Canonical `(add, mul)` key of a hemiring: least over 0-fixing relabelings.
pub fn canonical_key(h: &FiniteHemiring) -> (Vec<usize>, Vec<usize>) {
    let n = h.order();
    let add: Table = h.add_table().iter().map(|&v| v as u8).collect();
    let mul: Table = h.mul_table().iter().map(|&v| v as u8).collect();
    let best = zero_fixing_perms(n)
        .iter()
        .map(|p| (permute(&add, n, p), permute(&mul, n, p)))
        .min()
        .expect("identity permutation");
    (
        best.0.into_iter().map(usize::from).collect(),
        best.1.into_iter().map(usize::from).collect(),
    )
}

pub fn isomorphic(a: &FiniteHemiring, b: &FiniteHemiring) -> bool {
    a.order() == b.order() && canonical_key(a) == canonical_key(b)
}

/// Unpruned oracle: every table pair with the zero conventions is tested
/// against the full axiom check. Returns (labelled count, class count).
pub fn naive_counts(order: usize) -> Result<(usize, usize), SearchError> {
    check_order(order, MAX_NAIVE_ORDER)?;
    let n = order;
    let free = (n - 1) * (n - 1);
    let tables = |code: usize| -> Vec<Vec<usize>> {
        let mut t = vec![vec![0usize; n]; n];
        let mut c = code;
        for (i, row) in t.iter_mut().enumerate().skip(1) {
            for cell in row.iter_mut().skip(1) {
                *cell = c % n;
                c /= n;
            }
            row[0] = i;
        }
        for (j, cell) in t[0].iter_mut().enumerate() {
            *cell = j;
        }
        t
    };
    let total = n.pow(free as u32);
    let mut labelled = 0;
    let mut keys = std::collections::BTreeSet::new();
    for ac in 0..total {
        let add = tables(ac);
        for mc in 0..total {
            let mut mul = tables(mc);
            for (i, row) in mul.iter_mut().enumerate() {
                row[0] = 0;
                if i == 0 {
                    row.iter_mut().for_each(|c| *c = 0);
                }
            }
            if check_axioms(&add, &mul).map(|r| r.passed).unwrap_or(false) {
                labelled += 1;
                let h = FiniteHemiring::from_tables("naive", &add, &mul).expect("axioms passed");
                keys.insert(canonical_key(&h));
            }
        }
    }
    Ok((labelled, keys.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Filter {
    HHemiregular,
    NotHHemiregular,
    HasProperHIdeal,
    HasKIdealNotHIdeal,
    HasPrimeHIdeal,
}

impl Filter {
    pub const ALL: [Filter; 5] = [
        Filter::HHemiregular,
        Filter::NotHHemiregular,
        Filter::HasProperHIdeal,
        Filter::HasKIdealNotHIdeal,
        Filter::HasPrimeHIdeal,
    ];

    /// The certificate for `h`, or `None` when the filter rejects it.
    pub fn certify(self, h: &FiniteHemiring) -> Option<Witness> {
        let cap = MAX_SEARCH_ORDER;
        match self {
            Filter::HHemiregular => {
                let (_, w) = is_h_hemiregular(h);
                let w = w?;
                let triples: Vec<String> = w.triples.iter().map(|(a, b, c)| format!("({a},{b},{c})")).collect();
                Some(Witness::new("h-hemiregular").bind("x1,x2,z per element", triples.join(" ")))
            }
            Filter::NotHHemiregular => {
                let (v, _) = is_h_hemiregular(h);
                v.witness().cloned()
            }
            Filter::HasProperHIdeal => enumerate_ideals(h, IdealKind::H, Side::Left, cap)
                .ok()?
                .into_iter()
                .find(|a| !a.is_full())
                .map(|a| Witness::new("proper left h-ideal").bind("A", a)),
            Filter::HasKIdealNotHIdeal => {
                for a in enumerate_ideals(h, IdealKind::K, Side::Left, cap).ok()? {
                    if let Some(w) = is_h_ideal(h, &a, Side::Left).ok()?.witness() {
                        let mut out = Witness::new("left k-ideal that is not an h-ideal").bind("A", a);
                        out.bindings.extend(w.bindings.iter().cloned());
                        return Some(out);
                    }
                }
                None
            }
            Filter::HasPrimeHIdeal => enumerate_ideals(h, IdealKind::H, Side::Left, cap)
                .ok()?
                .into_iter()
                .find(|p| {
                    is_prime_h_ideal(h, p, Side::Left, ProductConvention::FiniteSums, cap)
                        .map(|v| v.is_pass())
                        .unwrap_or(false)
                })
                .map(|p| Witness::new("prime left h-ideal").bind("P", p)),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::HHemiregular => "h-hemiregular",
            Filter::NotHHemiregular => "not-h-hemiregular",
            Filter::HasProperHIdeal => "has-proper-h-ideal",
            Filter::HasKIdealNotHIdeal => "has-k-ideal-not-h-ideal",
            Filter::HasPrimeHIdeal => "has-prime-h-ideal",
        })
    }
}

impl FromStr for Filter {
    type Err = SearchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Filter::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| SearchError::UnknownFilter(s.to_string()))
    }
}

pub fn parse_filters(s: &str) -> Result<Vec<Filter>, SearchError> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchQuery {
    pub min_order: usize,
    pub max_order: usize,
    pub filters: Vec<Filter>,
    pub limit: Option<usize>,
}

impl SearchQuery {
    pub fn order(n: usize) -> Self {
        SearchQuery {
            min_order: n,
            max_order: n,
            filters: Vec::new(),
            limit: None,
        }
    }

    pub fn up_to(n: usize) -> Self {
        SearchQuery {
            min_order: 1,
            ..SearchQuery::order(n)
        }
    }

    pub fn with(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }
}

#[derive(Debug, Clone)]
pub struct Hit {
    pub hemiring: FiniteHemiring,
    pub witnesses: Vec<Witness>,
}

/// Class representatives passing every filter, smallest orders first.
pub fn find(query: &SearchQuery) -> Result<Vec<Hit>, SearchError> {
    check_order(query.max_order, MAX_SEARCH_ORDER)?;
    let mut hits = Vec::new();
    for n in query.min_order.max(1)..=query.max_order {
        let found: Vec<Hit> = enumerate_hemirings(n)?
            .into_par_iter()
            .filter_map(|h| {
                let mut ws = Vec::new();
                for f in &query.filters {
                    ws.push(f.certify(&h)?);
                }
                Some(Hit { hemiring: h, witnesses: ws })
            })
            .collect();
        for hit in found {
            if query.limit.is_some_and(|l| hits.len() >= l) {
                return Ok(hits);
            }
            hits.push(hit);
        }
    }
    Ok(hits)
}

/// An order-3 hemiring with non-commutative multiplication, so left and
/// right ideals differ. Found by [`enumerate_hemirings`].
pub fn noncommutative3() -> FiniteHemiring {
    FiniteHemiring::from_tables(
        "nc3",
        &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]],
        &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 2, 0]],
    )
    .expect("valid hemiring")
}

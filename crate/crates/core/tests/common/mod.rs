//! Brute-force oracles written straight from the definitions, over raw
//! tables. They share no code with the library beyond `Grade`.

#![allow(dead_code, clippy::needless_range_loop)]

use fuzzy_hideals::carrier::FiniteHemiring;
use fuzzy_hideals::grade::Grade;

pub struct Tables {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl Tables {
    pub fn of(h: &FiniteHemiring) -> Self {
        Tables {
            n: h.order(),
            add: h.add_rows(),
            mul: h.mul_rows(),
        }
    }

    fn a(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }
}

pub type Set = Vec<bool>;

pub fn set_of(n: usize, xs: &[usize]) -> Set {
    let mut s = vec![false; n];
    for &x in xs {
        s[x] = true;
    }
    s
}

pub fn members(s: &Set) -> Vec<usize> {
    (0..s.len()).filter(|&x| s[x]).collect()
}

pub fn nonempty_subsets(n: usize) -> Vec<Set> {
    (1u32..1 << n).map(|m| (0..n).map(|i| m >> i & 1 == 1).collect()).collect()
}

pub fn axioms_hold(add: &[Vec<usize>], mul: &[Vec<usize>]) -> bool {
    let n = add.len();
    let r = 0..n;
    for x in r.clone() {
        if add[0][x] != x || mul[0][x] != 0 || mul[x][0] != 0 {
            return false;
        }
        for y in r.clone() {
            if add[x][y] != add[y][x] {
                return false;
            }
            for z in r.clone() {
                if add[add[x][y]][z] != add[x][add[y][z]]
                    || mul[mul[x][y]][z] != mul[x][mul[y][z]]
                    || mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]
                    || mul[add[x][y]][z] != add[mul[x][z]][mul[y][z]]
                {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_ideal(t: &Tables, s: &Set, left: bool) -> bool {
    if !s.iter().any(|&b| b) {
        return false;
    }
    for x in 0..t.n {
        if !s[x] {
            continue;
        }
        for y in 0..t.n {
            if s[y] && !s[t.a(x, y)] {
                return false;
            }
            let p = if left { t.m(y, x) } else { t.m(x, y) };
            if !s[p] {
                return false;
            }
        }
    }
    true
}

pub fn is_k_ideal(t: &Tables, s: &Set, left: bool) -> bool {
    is_ideal(t, s, left)
        && (0..t.n).all(|x| (0..t.n).all(|y| !(s[y] && s[t.a(x, y)]) || s[x]))
}

pub fn is_h_ideal(t: &Tables, s: &Set, left: bool) -> bool {
    if !is_ideal(t, s, left) {
        return false;
    }
    for x in 0..t.n {
        for a in 0..t.n {
            for b in 0..t.n {
                for z in 0..t.n {
                    if s[a] && s[b] && t.a(t.a(x, a), z) == t.a(b, z) && !s[x] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn closure(t: &Tables, s: &Set) -> Set {
    (0..t.n)
        .map(|x| {
            (0..t.n).any(|a1| (0..t.n).any(|a2| (0..t.n).any(|z| s[a1] && s[a2] && t.a(t.a(x, a1), z) == t.a(a2, z))))
        })
        .collect()
}

/// `{0}` together with all finite sums of products `a b`.
pub fn product(t: &Tables, a: &Set, b: &Set) -> Set {
    let mut p = vec![false; t.n];
    p[0] = true;
    for x in 0..t.n {
        for y in 0..t.n {
            if a[x] && b[y] {
                p[t.m(x, y)] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        for x in 0..t.n {
            for y in 0..t.n {
                if p[x] && p[y] && !p[t.a(x, y)] {
                    p[t.a(x, y)] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return p;
        }
    }
}

pub fn meet(a: &Set, b: &Set) -> Set {
    a.iter().zip(b).map(|(&x, &y)| x && y).collect()
}

pub fn hemiregular(t: &Tables) -> bool {
    (0..t.n).all(|a| {
        (0..t.n).any(|x1| {
            (0..t.n).any(|x2| {
                (0..t.n).any(|z| t.a(t.a(a, t.m(t.m(a, x1), a)), z) == t.a(t.m(t.m(a, x2), a), z))
            })
        })
    })
}

pub fn is_fuzzy_h_ideal(t: &Tables, mu: &[Grade], left: bool) -> bool {
    for x in 0..t.n {
        for y in 0..t.n {
            if mu[t.a(x, y)] < mu[x].min(mu[y]) {
                return false;
            }
            let p = if left { t.m(y, x) } else { t.m(x, y) };
            if mu[p] < mu[x] {
                return false;
            }
        }
    }
    for x in 0..t.n {
        for a in 0..t.n {
            for b in 0..t.n {
                for z in 0..t.n {
                    if t.a(t.a(x, a), z) == t.a(b, z) && mu[x] < mu[a].min(mu[b]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every table `0..n -> grades`.
pub fn all_tables(n: usize, grades: &[Grade]) -> Vec<Vec<Grade>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                grades.iter().map(move |&g| {
                    let mut w = v.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn fuzzy_h_ideals(t: &Tables, grades: &[Grade], left: bool) -> Vec<Vec<Grade>> {
    all_tables(t.n, grades).into_iter().filter(|mu| is_fuzzy_h_ideal(t, mu, left)).collect()
}

/// `(mu ∘h nu)(x)`: best min over `x + a1 b1 + z = a2 b2 + z`.
pub fn h_product(t: &Tables, mu: &[Grade], nu: &[Grade]) -> Vec<Grade> {
    let n = t.n;
    let mut out = vec![Grade::ZERO; n];
    for x in 0..n {
        for a1 in 0..n {
            for b1 in 0..n {
                for a2 in 0..n {
                    for b2 in 0..n {
                        let v = mu[a1].min(mu[a2]).min(nu[b1]).min(nu[b2]);
                        if v <= out[x] {
                            continue;
                        }
                        if (0..n).any(|z| t.a(t.a(x, t.m(a1, b1)), z) == t.a(t.m(a2, b2), z)) {
                            out[x] = v;
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn fuzzy_meet(mu: &[Grade], nu: &[Grade]) -> Vec<Grade> {
    mu.iter().zip(nu).map(|(a, b)| *a.min(b)).collect()
}

pub fn fuzzy_le(mu: &[Grade], nu: &[Grade]) -> bool {
    mu.iter().zip(nu).all(|(a, b)| a <= b)
}

/// Labelled hemirings of order `n` by exhaustive table search, and the
/// number of classes under 0-fixing relabelling.
pub fn naive_hemiring_count(n: usize) -> (usize, usize) {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let tables: Vec<Vec<Vec<usize>>> = (0..total)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let v = c % n;
                            c /= n;
                            v
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut labelled = Vec::new();
    for add in &tables {
        if (0..n).any(|x| add[0][x] != x) {
            continue;
        }
        for mul in &tables {
            if axioms_hold(add, mul) {
                labelled.push((add.clone(), mul.clone()));
            }
        }
    }
    let perms = zero_fixing_perms(n);
    let mut classes = std::collections::BTreeSet::new();
    for (add, mul) in &labelled {
        let key = perms
            .iter()
            .map(|p| {
                let relabel = |t: &Vec<Vec<usize>>| {
                    let mut out = vec![vec![0; n]; n];
                    for x in 0..n {
                        for y in 0..n {
                            out[p[x]][p[y]] = p[t[x][y]];
                        }
                    }
                    out
                };
                (relabel(add), relabel(mul))
            })
            .min()
            .unwrap();
        classes.insert(key);
    }
    (labelled.len(), classes.len())
}

pub fn zero_fixing_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(1.min(n), &mut p, &mut out);
    out
}

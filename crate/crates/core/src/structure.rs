//! Prime, normal, completely normal and maximal fuzzy h-ideals.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::{FiniteHemiring, Hemiring, Verdict, Witness};
use crate::fuzzy::{
    enumerate_fuzzy_h_ideals, h_product, image_on, is_fuzzy_h_ideal, Fuzzy, FuzzyError, FuzzySet, ProductForm,
};
use crate::grade::Grade;
use crate::ideals::{
    is_prime_elementwise, is_prime_h_ideal, maximal_h_ideals, CrispSubset, IdealError, ProductConvention, Side,
    Subset,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("not a fuzzy h-ideal: {0}")]
    NotHIdeal(Witness),
    #[error("fuzzy set is constant")]
    Constant,
    #[error("fuzzy set is not normal")]
    NotNormal,
    #[error("grade map is not monotone: {0} -> {1} but {2} -> {3}")]
    NotMonotone(Grade, Grade, Grade, Grade),
    #[error("grade map has no value for {0}")]
    IncompleteMap(Grade),
    #[error("grade map lists {0} twice")]
    DuplicateKey(Grade),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// `{x | zeta(x) = zeta(0)}` as a predicate on any carrier.
pub struct ZetaZero<'a, F: ?Sized> {
    zeta: &'a F,
    top: Grade,
}

impl<'a, F: Fuzzy + ?Sized> ZetaZero<'a, F> {
    pub fn new(zeta: &'a F) -> Self {
        ZetaZero { zeta, top: zeta.grade(0) }
    }
}

impl<F: Fuzzy + ?Sized> Subset for ZetaZero<'_, F> {
    fn contains(&self, x: usize) -> bool {
        self.zeta.grade(x) == self.top
    }
}

pub fn zeta_zero(zeta: &FuzzySet) -> CrispSubset {
    let top = zeta.grade(0);
    CrispSubset::new(zeta.order(), (0..zeta.order()).filter(|&x| zeta.grade(x) == top)).expect("in range")
}

fn require_h_ideal<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized), side: Side) -> Result<(), StructureError> {
    match is_fuzzy_h_ideal(h, mu, side)? {
        Verdict::Fails(w) => Err(StructureError::NotHIdeal(w)),
        _ => Ok(()),
    }
}

/// The three-condition primality characterization, condition by condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityReport {
    pub verdict: Verdict,
    /// `zeta0` is a prime h-ideal.
    pub condition_i: Verdict,
    /// The image has exactly two grades.
    pub condition_ii: bool,
    /// `zeta(0) = 1`.
    pub condition_iii: bool,
    pub non_constant: bool,
    pub image: Vec<Grade>,
}

impl fmt::Display for PrimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im: Vec<String> = self.image.iter().map(Grade::to_string).collect();
        writeln!(f, "prime: {}", self.verdict)?;
        writeln!(f, "  zeta0 prime: {}", self.condition_i)?;
        writeln!(f, "  two grades: {} (image {{{}}})", self.condition_ii, im.join(", "))?;
        write!(f, "  zeta(0) = 1: {}", self.condition_iii)
    }
}

/// Decides primality of a fuzzy h-ideal through its characterization:
/// `zeta0` prime, exactly two grades, and `zeta(0) = 1`.
///
/// On finite carriers within `cap`, `zeta0` is tested against all pairs of
/// h-ideals; otherwise the elementwise criterion is used (bounded on N0).
pub fn is_prime_fuzzy_h_ideal<H: Hemiring + ?Sized>(
    h: &H,
    zeta: &(impl Fuzzy + ?Sized),
    side: Side,
    cap: usize,
) -> Result<PrimalityReport, StructureError> {
    require_h_ideal(h, zeta, side)?;
    let image = image_on(h, zeta);
    if image.len() < 2 {
        return Err(StructureError::Constant);
    }
    let z0 = ZetaZero::new(zeta);
    let condition_i = match h.as_finite() {
        Some(fh) if fh.order() <= cap => {
            let p = CrispSubset::collect(fh, &z0);
            is_prime_h_ideal(fh, &p, side, ProductConvention::FiniteSums, cap)?
        }
        _ => is_prime_elementwise(h, &z0, side)?,
    };
    let condition_ii = image.len() == 2;
    let top = zeta.grade(0);
    let condition_iii = top == Grade::ONE;
    // every failed condition is named, not only the first
    let mut failed = Vec::new();
    let mut bindings = Vec::new();
    if let Verdict::Fails(w) = &condition_i {
        failed.push(format!("zeta0 is not prime ({})", w.rule));
        bindings.extend(w.bindings.iter().cloned());
    }
    if !condition_ii {
        failed.push("image does not have exactly two grades".to_string());
        bindings.push(("|Im|".to_string(), image.len().to_string()));
    }
    if !condition_iii {
        failed.push("zeta(0) != 1".to_string());
        bindings.push(("zeta(0)".to_string(), top.to_string()));
    }
    let verdict = if failed.is_empty() {
        h.passing()
    } else {
        let mut w = Witness::new(failed.join("; "));
        w.bindings = bindings;
        Verdict::Fails(w)
    };
    Ok(PrimalityReport {
        verdict,
        condition_i,
        condition_ii,
        condition_iii,
        non_constant: true,
        image,
    })
}

/// Bounded definitional oracle: for all fuzzy h-ideals `mu`, `nu` valued in
/// `grades ∪ Im zeta`, `mu ∘h nu ⊆ zeta` forces `mu ⊆ zeta` or `nu ⊆ zeta`.
pub fn is_prime_definitional(
    h: &FiniteHemiring,
    zeta: &FuzzySet,
    grades: &[Grade],
    side: Side,
    form: ProductForm,
    cap: usize,
) -> Result<Verdict, StructureError> {
    require_h_ideal(h, zeta, side)?;
    if zeta.is_constant() {
        return Err(StructureError::Constant);
    }
    let mut pool = grades.to_vec();
    pool.extend(zeta.image());
    let all = enumerate_fuzzy_h_ideals(h, &pool, side, cap)?;
    let outside: Vec<&FuzzySet> = all.iter().filter(|m| !m.is_subset_of(zeta)).collect();
    for mu in &outside {
        for nu in &outside {
            let p = h_product(h, *mu, *nu, form)?.set;
            if p.is_subset_of(zeta) {
                let (x, y) = (mu.first_excess(zeta).unwrap(), nu.first_excess(zeta).unwrap());
                return Ok(Verdict::Fails(
                    Witness::new("mu ∘h nu ⊆ zeta with mu, nu ⊄ zeta")
                        .bind("mu", format!("[{mu}]"))
                        .bind("nu", format!("[{nu}]"))
                        .bind("mu exceeds at", x)
                        .bind("nu exceeds at", y),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A fuzzy h-ideal is normal exactly when `mu(0) = 1`.
pub fn is_normal<H: Hemiring + ?Sized>(h: &H, mu: &(impl Fuzzy + ?Sized), side: Side) -> Result<bool, StructureError> {
    require_h_ideal(h, mu, side)?;
    Ok(mu.grade(0) == Grade::ONE)
}

/// `mu+(x) = mu(x) + 1 - mu(0)`.
pub fn normalize_plus<H: Hemiring + ?Sized>(h: &H, mu: &FuzzySet, side: Side) -> Result<FuzzySet, StructureError> {
    require_h_ideal(h, mu, side)?;
    let top = mu.grade(0);
    let plus = FuzzySet::new(mu.grades().iter().map(|g| g.lift_against(top)).collect()).named(format!("{}+", mu.name()));
    debug_assert!(mu.is_subset_of(&plus));
    debug_assert!(plus.grade(0) == Grade::ONE);
    Ok(plus)
}

/// A finite increasing map on grades, given on (at least) `Im mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeMap {
    pairs: Vec<(Grade, Grade)>,
}

impl GradeMap {
    pub fn new(mut pairs: Vec<(Grade, Grade)>) -> Result<Self, StructureError> {
        pairs.sort();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(StructureError::DuplicateKey(w[0].0));
            }
            if w[0].1 > w[1].1 {
                return Err(StructureError::NotMonotone(w[0].0, w[0].1, w[1].0, w[1].1));
            }
        }
        Ok(GradeMap { pairs })
    }

    pub fn identity(domain: &[Grade]) -> Self {
        GradeMap::new(domain.iter().map(|&t| (t, t)).collect()).expect("identity is monotone")
    }

    pub fn constant(domain: &[Grade], value: Grade) -> Self {
        GradeMap::new(domain.iter().map(|&t| (t, value)).collect()).expect("constant is monotone")
    }

    /// `t -> t + 1 - top`.
    pub fn shift_to_one(domain: &[Grade], top: Grade) -> Self {
        GradeMap::new(domain.iter().map(|&t| (t, t.lift_against(top))).collect()).expect("shift is monotone")
    }

    /// Random increasing map on `domain`: sorted random grades with
    /// denominators up to 12.
    pub fn random<R: Rng + ?Sized>(domain: &[Grade], rng: &mut R) -> Self {
        let mut keys = domain.to_vec();
        keys.sort();
        keys.dedup();
        let denom: i64 = rng.gen_range(1..=12);
        let mut vals: Vec<Grade> = keys
            .iter()
            .map(|_| Grade::new(rng.gen_range(0..=denom), denom).expect("in range"))
            .collect();
        vals.sort();
        GradeMap::new(keys.into_iter().zip(vals).collect()).expect("sorted values")
    }

    pub fn get(&self, t: Grade) -> Option<Grade> {
        self.pairs
            .binary_search_by(|(k, _)| k.cmp(&t))
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn pairs(&self) -> &[(Grade, Grade)] {
        &self.pairs
    }
}

/// `mu_f(x) = f(mu(x))`.
pub fn apply_monotone<H: Hemiring + ?Sized>(
    h: &H,
    mu: &FuzzySet,
    f: &GradeMap,
    side: Side,
) -> Result<FuzzySet, StructureError> {
    require_h_ideal(h, mu, side)?;
    let grades = mu
        .grades()
        .iter()
        .map(|&t| f.get(t).ok_or(StructureError::IncompleteMap(t)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FuzzySet::new(grades).named(format!("{}_f", mu.name())))
}

/// A normal fuzzy h-ideal is completely normal when it takes the grade 0.
pub fn is_completely_normal<H: Hemiring + ?Sized>(
    h: &H,
    mu: &(impl Fuzzy + ?Sized),
    side: Side,
) -> Result<bool, StructureError> {
    if !is_normal(h, mu, side)? {
        return Err(StructureError::NotNormal);
    }
    Ok(h.elements().any(|x| mu.grade(x) == Grade::ZERO))
}

/// Maximality through its characterization: normal, valued in `{0, 1}`,
/// and `mu0` a maximal h-ideal.
pub fn is_maximal_fuzzy_h_ideal(h: &FiniteHemiring, mu: &FuzzySet, side: Side, cap: usize) -> Result<Verdict, StructureError> {
    require_h_ideal(h, mu, side)?;
    if mu.is_constant() {
        return Err(StructureError::Constant);
    }
    if mu.grade(0) != Grade::ONE {
        return Ok(Verdict::Fails(Witness::new("not normal").bind("mu(0)", mu.grade(0))));
    }
    if let Some(x) = (0..mu.order()).find(|&x| mu.grade(x) != Grade::ZERO && mu.grade(x) != Grade::ONE) {
        return Ok(Verdict::Fails(
            Witness::new("takes a grade outside {0, 1}").bind("x", x).bind("mu(x)", mu.grade(x)),
        ));
    }
    let m0 = zeta_zero(mu);
    if !maximal_h_ideals(h, side, cap)?.contains(&m0) {
        return Ok(Verdict::Fails(Witness::new("mu0 is not a maximal h-ideal").bind("mu0", m0)));
    }
    Ok(Verdict::Holds)
}

/// Normal fuzzy h-ideals valued in a finite grade set, ordered by inclusion.
#[derive(Debug, Clone)]
pub struct NormalPoset {
    pub members: Vec<FuzzySet>,
}

impl NormalPoset {
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.members[i].is_subset_of(&self.members[j])
    }

    fn maximal_among(&self, idx: &[usize]) -> Vec<usize> {
        idx.iter()
            .copied()
            .filter(|&i| !idx.iter().any(|&j| j != i && self.le(i, j) && self.members[i] != self.members[j]))
            .collect()
    }

    /// Maximal elements of the whole poset.
    pub fn maximal(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.members.len()).collect();
        self.maximal_among(&all)
    }

    /// Members that take the grade 0.
    pub fn completely_normal(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i].grades().contains(&Grade::ZERO))
            .collect()
    }

    pub fn maximal_completely_normal(&self) -> Vec<usize> {
        self.maximal_among(&self.completely_normal())
    }

    pub fn position(&self, mu: &FuzzySet) -> Option<usize> {
        self.members.iter().position(|m| m.grades() == mu.grades())
    }
}

/// All normal fuzzy h-ideals valued in `grades ∪ {1}`.
pub fn poset_n(h: &FiniteHemiring, grades: &[Grade], side: Side, cap: usize) -> Result<NormalPoset, StructureError> {
    let mut pool = grades.to_vec();
    pool.push(Grade::ONE);
    let members = enumerate_fuzzy_h_ideals(h, &pool, side, cap)?
        .into_iter()
        .filter(|m| m.grade(0) == Grade::ONE)
        .collect();
    Ok(NormalPoset { members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{builtin, BoundedN0};
    use crate::fuzzy::{characteristic, random_fuzzy_h_ideal, two_valued, GradeRule, DEFAULT_FUZZY_CAP};
    use crate::grade::{g, parse_grade_list};
    use crate::ideals::{enumerate_ideals, IdealKind, DEFAULT_SUBSET_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAP: usize = DEFAULT_SUBSET_CAP;

    fn set(h: &FiniteHemiring, xs: &[usize]) -> CrispSubset {
        CrispSubset::new(h.order(), xs.iter().copied()).unwrap()
    }

    fn rule(s: &str) -> GradeRule {
        GradeRule::parse(s).unwrap()
    }

    #[test]
    fn zeta_zero_examples() {
        assert!(zeta_zero(&FuzzySet::constant(4, g(1, 2))).is_full());
        let h = builtin("zmod(6)").unwrap();
        let a = set(&h, &[0, 3]);
        assert_eq!(zeta_zero(&two_valued(&a, Grade::ONE, g(1, 3)).unwrap()), a);
        let mu = rule("even -> 1, odd -> 0.2");
        let z = ZetaZero::new(&mu);
        assert!((0..=60).all(|x| z.contains(x) == (x % 2 == 0)));
    }

    #[test]
    fn parity_rule_is_prime_up_to_bound() {
        let n0 = BoundedN0::new(60).unwrap();
        let r = is_prime_fuzzy_h_ideal(&n0, &rule("even -> 1, odd -> 0.2"), Side::Left, CAP).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsUpToBound(60));
        assert_eq!(r.condition_i, Verdict::HoldsUpToBound(60));
        assert!(r.condition_ii && r.condition_iii && r.non_constant);
        assert_eq!(r.image, vec![g(1, 5), Grade::ONE]);
    }

    #[test]
    fn half_parity_rule_fails_only_at_top_grade() {
        let n0 = BoundedN0::new(60).unwrap();
        let r = is_prime_fuzzy_h_ideal(&n0, &rule("even -> 0.5, odd -> 0.2"), Side::Left, CAP).unwrap();
        assert!(r.condition_i.is_pass() && r.condition_ii);
        assert!(!r.condition_iii);
        assert_eq!(r.verdict.witness().unwrap().get("zeta(0)"), Some("1/2"));
        assert!(!is_normal(&n0, &rule("even -> 0.5, odd -> 0.2"), Side::Left).unwrap());
    }

    #[test]
    fn three_level_rule_is_normal_not_prime() {
        let n0 = BoundedN0::new(60).unwrap();
        let mu = rule("mult 4 -> 1, mult 2 -> 0.5, any -> 0");
        assert!(is_normal(&n0, &mu, Side::Left).unwrap());
        assert!(is_completely_normal(&n0, &mu, Side::Left).unwrap());
        let r = is_prime_fuzzy_h_ideal(&n0, &mu, Side::Left, CAP).unwrap();
        assert!(!r.condition_ii);
        assert_eq!(r.verdict.witness().unwrap().get("|Im|"), Some("3"));
        let text = r.to_string();
        assert!(text.starts_with("prime: FAILS"));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn preconditions() {
        let z4 = builtin("zmod(4)").unwrap();
        let one = FuzzySet::constant(4, Grade::ONE);
        assert_eq!(is_prime_fuzzy_h_ideal(&z4, &one, Side::Left, CAP), Err(StructureError::Constant));
        let grades = parse_grade_list("0,1/2,1").unwrap();
        assert_eq!(
            is_prime_definitional(&z4, &one, &grades, Side::Left, ProductForm::Single, DEFAULT_FUZZY_CAP),
            Err(StructureError::Constant)
        );
        let bad = FuzzySet::new(vec![Grade::ZERO, Grade::ONE, Grade::ZERO, Grade::ONE]);
        assert!(matches!(is_normal(&z4, &bad, Side::Left), Err(StructureError::NotHIdeal(_))));
        let half = FuzzySet::constant(4, g(1, 2));
        assert_eq!(is_completely_normal(&z4, &half, Side::Left), Err(StructureError::NotNormal));
    }

    #[test]
    fn definitional_examples() {
        let z4 = builtin("zmod(4)").unwrap();
        let grades = parse_grade_list("0,1/2,1").unwrap();
        let zeta = two_valued(&set(&z4, &[0, 2]), Grade::ONE, Grade::ZERO).unwrap();
        let d = is_prime_definitional(&z4, &zeta, &grades, Side::Left, ProductForm::Single, DEFAULT_FUZZY_CAP).unwrap();
        assert_eq!(d, Verdict::Holds);
        assert_eq!(is_prime_fuzzy_h_ideal(&z4, &zeta, Side::Left, CAP).unwrap().verdict, Verdict::Holds);
        let zeta = two_valued(&set(&z4, &[0]), Grade::ONE, Grade::ZERO).unwrap();
        let d = is_prime_definitional(&z4, &zeta, &grades, Side::Left, ProductForm::Single, DEFAULT_FUZZY_CAP).unwrap();
        assert!(d.is_fail());
        let r = is_prime_fuzzy_h_ideal(&z4, &zeta, Side::Left, CAP).unwrap();
        assert!(r.condition_i.is_fail());
    }

    #[test]
    fn characteristic_primality_matches_crisp() {
        for name in ["example21", "zmod(4)", "zmod(6)", "chain(2)", "zero_mul(3)"] {
            let h = builtin(name).unwrap();
            for p in enumerate_ideals(&h, IdealKind::H, Side::Left, CAP).unwrap() {
                let crisp = is_prime_h_ideal(&h, &p, Side::Left, ProductConvention::FiniteSums, CAP).unwrap();
                if p.is_full() {
                    assert!(crisp.is_fail());
                    continue;
                }
                let r = is_prime_fuzzy_h_ideal(&h, &characteristic(&p), Side::Left, CAP).unwrap();
                assert_eq!(r.verdict.is_pass(), crisp.is_pass(), "{name} {p}");
            }
        }
    }

    #[test]
    fn normalization() {
        let z4 = builtin("zmod(4)").unwrap();
        let mu = FuzzySet::new(vec![g(4, 5), g(3, 10), g(4, 5), g(3, 10)]);
        let plus = normalize_plus(&z4, &mu, Side::Left).unwrap();
        assert_eq!(plus.grades(), &[Grade::ONE, g(1, 2), Grade::ONE, g(1, 2)]);
        assert_eq!(normalize_plus(&z4, &plus, Side::Left).unwrap().grades(), plus.grades());
        let f = GradeMap::shift_to_one(&mu.image(), mu.grade(0));
        assert_eq!(apply_monotone(&z4, &mu, &f, Side::Left).unwrap().grades(), plus.grades());
        let id = GradeMap::identity(&mu.image());
        assert_eq!(apply_monotone(&z4, &mu, &id, Side::Left).unwrap().grades(), mu.grades());
        let one = GradeMap::constant(&mu.image(), Grade::ONE);
        let c = apply_monotone(&z4, &mu, &one, Side::Left).unwrap();
        assert!(c.is_constant() && is_normal(&z4, &c, Side::Left).unwrap());
    }

    #[test]
    fn grade_map_validation() {
        assert!(matches!(
            GradeMap::new(vec![(g(1, 2), Grade::ONE), (Grade::ONE, Grade::ZERO)]),
            Err(StructureError::NotMonotone(..))
        ));
        assert!(matches!(
            GradeMap::new(vec![(g(1, 2), Grade::ONE), (g(1, 2), Grade::ONE)]),
            Err(StructureError::DuplicateKey(_))
        ));
        let z4 = builtin("zmod(4)").unwrap();
        let mu = FuzzySet::new(vec![Grade::ONE, Grade::ZERO, Grade::ONE, Grade::ZERO]);
        let f = GradeMap::identity(&[Grade::ONE]);
        assert_eq!(apply_monotone(&z4, &mu, &f, Side::Left), Err(StructureError::IncompleteMap(Grade::ZERO)));
    }

    #[test]
    fn random_normalization_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in ["example21", "zmod(6)", "chain(3)"] {
            let h = builtin(name).unwrap();
            let ideals = enumerate_ideals(&h, IdealKind::H, Side::Left, CAP).unwrap();
            for _ in 0..200 {
                let mu = random_fuzzy_h_ideal(&ideals, &mut rng);
                let plus = normalize_plus(&h, &mu, Side::Left).unwrap();
                assert!(mu.is_subset_of(&plus));
                assert!(is_normal(&h, &plus, Side::Left).unwrap());
                assert_eq!(normalize_plus(&h, &plus, Side::Left).unwrap().grades(), plus.grades());
                for x in h.elements() {
                    if plus.grade(x) == Grade::ZERO {
                        assert_eq!(mu.grade(x), Grade::ZERO);
                    }
                }
                let f = GradeMap::random(&mu.image(), &mut rng);
                let mf = apply_monotone(&h, &mu, &f, Side::Left).unwrap();
                assert!(is_fuzzy_h_ideal(&h, &mf, Side::Left).unwrap().is_pass());
            }
        }
    }

    #[test]
    fn maximality() {
        let h = FiniteHemiring::example21();
        let chi = characteristic(&set(&h, &[0, 1, 2]));
        assert_eq!(is_maximal_fuzzy_h_ideal(&h, &chi, Side::Left, CAP).unwrap(), Verdict::Holds);
        assert!(is_completely_normal(&h, &chi, Side::Left).unwrap());
        let full = characteristic(&CrispSubset::full(4));
        assert_eq!(is_maximal_fuzzy_h_ideal(&h, &full, Side::Left, CAP), Err(StructureError::Constant));
        let z6 = builtin("zmod(6)").unwrap();
        let v = is_maximal_fuzzy_h_ideal(&z6, &characteristic(&set(&z6, &[0])), Side::Left, CAP).unwrap();
        assert_eq!(v.witness().unwrap().get("mu0"), Some("0"));
        let mid = two_valued(&set(&h, &[0, 1, 2]), Grade::ONE, g(1, 2)).unwrap();
        assert!(is_maximal_fuzzy_h_ideal(&h, &mid, Side::Left, CAP).unwrap().is_fail());
    }

    #[test]
    fn normal_posets() {
        let b = FiniteHemiring::boolean();
        let p = poset_n(&b, &[Grade::ZERO, Grade::ONE], Side::Left, DEFAULT_FUZZY_CAP).unwrap();
        let got: Vec<&[Grade]> = p.members.iter().map(|m| m.grades()).collect();
        assert_eq!(got, vec![&[Grade::ONE, Grade::ONE][..]]);
        let p = poset_n(&b, &[Grade::ONE], Side::Left, DEFAULT_FUZZY_CAP).unwrap();
        assert_eq!(p.members.len(), 1);
        assert!(p.members[0].is_constant());

        let h = FiniteHemiring::example21();
        let grades = parse_grade_list("0,1/2,1").unwrap();
        let p = poset_n(&h, &grades, Side::Left, DEFAULT_FUZZY_CAP).unwrap();
        // constant 1 is the top, so it is the only maximal element
        let maxima = p.maximal();
        assert_eq!(maxima.len(), 1);
        assert!(p.members[maxima[0]].is_constant());
        // in the completely normal part the characteristic function of the
        // maximal h-ideal is the unique maximal element
        let cmax = p.maximal_completely_normal();
        let chi = characteristic(&set(&h, &[0, 1, 2]));
        assert_eq!(cmax, vec![p.position(&chi).unwrap()]);
    }
}

//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use fuzzy_hideals::carrier::{builtin, check_axioms, FiniteHemiring, Hemiring, DEFAULT_BUILTINS};
use fuzzy_hideals::fuzzy::{h_product, FuzzySet, ProductForm};
use fuzzy_hideals::grade::{g, Grade};
use fuzzy_hideals::harness::{default_carriers, run_counterexamples, run_suite, Config, Outcome, SuiteReport};
use fuzzy_hideals::ideals::{enumerate_ideals, h_closure, ideal_product, is_h_hemiregular, CrispSubset, IdealKind, Side, Subset};
use fuzzy_hideals::model_finder::{enumerate_hemirings, find, naive_counts, Filter, SearchQuery};

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> (bool, Vec<String>),
}

fn to_set(a: &CrispSubset) -> Set {
    (0..a.order()).map(|x| a.contains(x)).collect()
}

fn from_set(s: &Set) -> CrispSubset {
    CrispSubset::new(s.len(), members(s)).unwrap()
}

fn show(s: &Set) -> String {
    let v: Vec<String> = members(s).iter().map(usize::to_string).collect();
    format!("{{{}}}", v.join(","))
}

fn carriers(names: &[&str]) -> Vec<FiniteHemiring> {
    names.iter().map(|n| builtin(n).unwrap()).collect()
}

fn axioms_and_mutations() -> (bool, Vec<String>) {
    let h = FiniteHemiring::example21();
    let (add, mul) = (h.add_rows(), h.mul_rows());
    let base = check_axioms(&add, &mul).unwrap();
    let mut lines = vec![format!("example21: {base}")];
    let mut ok = base.passed;
    let (mut total, mut rejected, mut oracle_disagree) = (0, 0, 0);
    for which in ["add", "mul"] {
        for i in 0..4 {
            for j in 0..4 {
                for v in 0..4 {
                    let (mut a, mut m) = (add.clone(), mul.clone());
                    let t = if which == "add" { &mut a } else { &mut m };
                    if t[i][j] == v {
                        continue;
                    }
                    let old = t[i][j];
                    t[i][j] = v;
                    total += 1;
                    let r = check_axioms(&a, &m).unwrap();
                    if r.passed == axioms_hold(&a, &m) {
                        if r.passed {
                            lines.push(format!("{which}[{i}][{j}]: {old} -> {v} still satisfies every axiom"));
                        }
                    } else {
                        oracle_disagree += 1;
                    }
                    if !r.passed && r.violations.iter().all(|x| !x.witness.is_empty()) {
                        rejected += 1;
                    }
                }
            }
        }
    }
    ok &= rejected == total && oracle_disagree == 0;
    lines.insert(
        1,
        format!("{rejected}/{total} single-cell mutations rejected with a witness; checker and oracle disagree on {oracle_disagree}"),
    );
    (ok, lines)
}

fn crisp_theory() -> (bool, Vec<String>) {
    let h = FiniteHemiring::example21();
    let t = Tables::of(&h);
    let lib: Vec<Set> = enumerate_ideals(&h, IdealKind::H, Side::Left, 8).unwrap().iter().map(to_set).collect();
    let oracle: Vec<Set> = nonempty_subsets(4).into_iter().filter(|s| is_h_ideal(&t, s, true)).collect();
    let expected = vec![set_of(4, &[0, 1, 2]), set_of(4, &[0, 1, 2, 3])];
    let mut sorted_oracle = oracle.clone();
    sorted_oracle.sort_by_key(|s| members(s).len());
    let ideals_ok = lib == expected && sorted_oracle == expected;
    let c0 = to_set(&h_closure(&h, &CrispSubset::zero(4)).unwrap());
    let closure_ok = c0 == set_of(4, &[0, 1, 2]);
    let mut lines = vec![
        format!(
            "left h-ideals of example21: {} (oracle {})",
            lib.iter().map(show).collect::<Vec<_>>().join(" "),
            oracle.iter().map(show).collect::<Vec<_>>().join(" ")
        ),
        format!("h_closure({{0}}) = {}", show(&c0)),
    ];
    let mut laws_ok = true;
    let small: Vec<FiniteHemiring> = default_carriers().into_iter().filter(|h| h.order() <= 4).collect();
    for h in &small {
        let t = Tables::of(h);
        let subsets = nonempty_subsets(t.n);
        let cl: Vec<Set> = subsets.iter().map(|a| to_set(&h_closure(h, &from_set(a)).unwrap())).collect();
        let (mut ext, mut mono, mut idem) = (Vec::new(), 0, Vec::new());
        let (mut ext0, mut idem_sub) = (0, 0);
        for (i, a) in subsets.iter().enumerate() {
            assert_eq!(cl[i], closure(&t, a), "closure disagrees with the oracle");
            if !is_within(a, &cl[i]) {
                ext0 += usize::from(a[0]);
                ext.push(format!("{} -> {}", show(a), show(&cl[i])));
            }
            if closure(&t, &cl[i]) != cl[i] {
                idem_sub += usize::from(a[0] && product_closed(&t, a));
                idem.push(format!("{} -> {} -> {}", show(a), show(&cl[i]), show(&closure(&t, &cl[i]))));
            }
            for (j, b) in subsets.iter().enumerate() {
                if is_within(a, b) && !is_within(&cl[i], &cl[j]) {
                    mono += 1;
                }
            }
        }
        if !ext.is_empty() || mono > 0 || !idem.is_empty() {
            laws_ok = false;
            lines.push(format!(
                "{}: {} not extensive (e.g. {}), {mono} monotonicity, {} not idempotent{}; \
                 among these {ext0} contain 0 and {idem_sub} are additive submonoids",
                h.name(),
                ext.len(),
                ext.first().map(String::as_str).unwrap_or("-"),
                idem.len(),
                idem.first().map(|s| format!(" (e.g. {s})")).unwrap_or_default(),
            ));
        }
    }
    if laws_ok {
        lines.push(format!("closure laws hold on all {} builtins of order <= 4", small.len()));
    }
    (ideals_ok && closure_ok && laws_ok, lines)
}

fn is_within(a: &Set, b: &Set) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn product_closed(t: &Tables, a: &Set) -> bool {
    (0..t.n).all(|x| (0..t.n).all(|y| !(a[x] && a[y]) || a[t.add[x][y]]))
}

fn closure_of_products() -> (bool, Vec<String>) {
    let mut ok = true;
    let mut lines = Vec::new();
    for h in carriers(&["example21", "zmod(4)", "zmod(6)", "chain(3)"]) {
        let t = Tables::of(&h);
        let subsets = nonempty_subsets(t.n);
        let cl: Vec<Set> = subsets.iter().map(|a| closure(&t, a)).collect();
        let (mut bad, mut first) = (0, None);
        for (i, a) in subsets.iter().enumerate() {
            for (j, b) in subsets.iter().enumerate() {
                let lhs = to_set(&h_closure(&h, &ideal_product(&h, &from_set(a), &from_set(b)).unwrap()).unwrap());
                let rhs = closure(&t, &product(&t, &cl[i], &cl[j]));
                assert_eq!(lhs, closure(&t, &product(&t, a, b)), "library disagrees with the oracle");
                if lhs != rhs {
                    bad += 1;
                    first.get_or_insert(format!("A={} B={}: {} vs {}", show(a), show(b), show(&lhs), show(&rhs)));
                }
            }
        }
        let rights: Vec<Set> = subsets.iter().filter(|s| is_h_ideal(&t, s, false)).cloned().collect();
        let lefts: Vec<Set> = subsets.iter().filter(|s| is_h_ideal(&t, s, true)).cloned().collect();
        let mut meet_bad = 0;
        for a in &rights {
            for b in &lefts {
                if !is_within(&closure(&t, &product(&t, a, b)), &meet(a, b)) {
                    meet_bad += 1;
                }
            }
        }
        ok &= bad == 0 && meet_bad == 0;
        lines.push(format!(
            "{}: closure(AB) = closure(closure(A) closure(B)) fails on {bad}/{} subset pairs{}; \
             closure(AB) ⊆ A ∩ B fails on {meet_bad}/{} h-ideal pairs",
            h.name(),
            subsets.len() * subsets.len(),
            first.map(|f| format!(" (first {f})")).unwrap_or_default(),
            rights.len() * lefts.len()
        ));
    }
    (ok, lines)
}

fn hemiregularity() -> (bool, Vec<String>) {
    let coarse = [Grade::ZERO, g(1, 2), Grade::ONE];
    let cfg = Config::default();
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, expect) in [("chain(3)", true), ("zmod(6)", true), ("zmod(4)", false), ("example21", false)] {
        let h = builtin(name).unwrap();
        let t = Tables::of(&h);
        let lib = is_h_hemiregular(&h).0.is_pass();
        let mut fuzzy_counter = None;
        let (rights, lefts) = (fuzzy_h_ideals(&t, &coarse, false), fuzzy_h_ideals(&t, &coarse, true));
        'pairs: for mu in &rights {
            for nu in &lefts {
                let p = h_product(&h, &FuzzySet::new(mu.clone()), &FuzzySet::new(nu.clone()), ProductForm::Single).unwrap();
                assert_eq!(p.set.grades(), &common::h_product(&t, mu, nu)[..], "h-product disagrees with the oracle");
                if p.set.grades() != &fuzzy_meet(mu, nu)[..] {
                    fuzzy_counter = Some((mu.clone(), nu.clone(), p.set.grades().to_vec()));
                    break 'pairs;
                }
            }
        }
        let crisp = run_suite("hemiregular-crisp", &h, &cfg).unwrap();
        let fuzzy = run_suite("hemiregular-fuzzy", &h, &cfg).unwrap();
        let crisp_pair = crisp.witnesses.iter().find(|w| w.rule.starts_with("closure(AB)"));
        let fuzzy_pair = fuzzy.witnesses.iter().find(|w| w.rule.starts_with("mu ∘h nu"));
        let good = lib == expect
            && hemiregular(&t) == expect
            && crisp.outcome == Outcome::Holds
            && fuzzy.outcome == Outcome::Holds
            && fuzzy_counter.is_none() == expect
            && crisp_pair.is_none() == expect
            && fuzzy_pair.is_none() == expect;
        ok &= good;
        let detail = match (crisp_pair, &fuzzy_counter) {
            (Some(c), Some((mu, nu, p))) => {
                format!("; {c}; fuzzy pair mu=[{}] nu=[{}] product=[{}]", grades(mu), grades(nu), grades(p))
            }
            _ => format!("; equality on all {}x{} fuzzy h-ideal pairs", rights.len(), lefts.len()),
        };
        lines.push(format!("{name}: h-hemiregular={lib}{detail}"));
    }
    (ok, lines)
}

fn grades(v: &[Grade]) -> String {
    v.iter().map(Grade::to_string).collect::<Vec<_>>().join(" ")
}

fn suite_lines(reports: &[SuiteReport]) -> (bool, Vec<String>) {
    let ok = reports.iter().all(|r| matches!(r.outcome, Outcome::Holds | Outcome::HoldsUpToBound(_)));
    let lines = reports
        .iter()
        .map(|r| {
            let mut s = format!("{} on {}: {}", r.id, r.carrier, r.outcome);
            if let Some(n) = r.notes.first() {
                s.push_str(&format!(" ({n})"));
            }
            if r.outcome.is_fail() {
                if let Some(w) = r.witnesses.first() {
                    s.push_str(&format!(" {w}"));
                }
            }
            s
        })
        .collect();
    (ok, lines)
}

fn prime_cross_validation() -> (bool, Vec<String>) {
    let cfg = Config::default();
    let reports: Vec<SuiteReport> = carriers(&["zmod(4)", "zmod(6)", "example21"])
        .iter()
        .map(|h| run_suite("prime-characterization", h, &cfg).unwrap())
        .collect();
    let mut out = suite_lines(&reports);
    out.0 &= reports.iter().all(|r| r.params.iter().any(|(k, v)| k == "grades" && v == "{0,1/3,2/3,1}"));
    out
}

fn worked_examples() -> (bool, Vec<String>) {
    let reports = run_counterexamples(&Config::default());
    let ok = reports.len() == 3 && reports.iter().all(|r| r.outcome == Outcome::HoldsUpToBound(60));
    let mut lines = Vec::new();
    for r in &reports {
        lines.push(format!("{}: {}", r.id, r.outcome));
        for n in &r.notes {
            lines.push(format!("  {n}"));
        }
        for w in r.witnesses.iter().take(3) {
            lines.push(format!("  {w}"));
        }
    }
    (ok, lines)
}

fn normal_structure() -> (bool, Vec<String>) {
    let cfg = Config {
        samples: 1000,
        ..Config::default()
    };
    let hs: Vec<FiniteHemiring> = DEFAULT_BUILTINS.iter().map(|n| builtin(n).unwrap()).collect();
    let mut reports = Vec::new();
    for h in &hs {
        for id in [
            "normalization",
            "monotone-rescaling",
            "maximal-normal-two-valued",
            "maximal-structure",
            "maximal-in-completely-normal",
            "maximal-completely-normal",
        ] {
            reports.push(run_suite(id, h, &cfg).unwrap());
        }
    }
    let (ok, lines) = suite_lines(&reports);
    let failing: Vec<String> = lines.into_iter().filter(|l| !l.contains(": HOLDS")).collect();
    let mut summary = vec![format!(
        "{} suite runs over {} builtins, 1000 seeded samples each for the random suites",
        reports.len(),
        hs.len()
    )];
    summary.extend(failing);
    (ok, summary)
}

fn model_finder() -> (bool, Vec<String>) {
    let golden: Vec<(usize, usize)> = include_str!("golden/hemiring_counts.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("order"))
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse::<usize>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    let mut ok = true;
    let mut lines = Vec::new();
    for n in [2, 3] {
        let pruned = enumerate_hemirings(n).unwrap().len();
        let (labelled, naive) = naive_counts(n).unwrap();
        let frozen = golden.iter().find(|(o, _)| *o == n).map(|p| p.1);
        ok &= pruned == naive && frozen == Some(pruned);
        lines.push(format!("order {n}: pruned {pruned}, naive {naive} classes of {labelled} labelled, golden {frozen:?}"));
    }
    let hits = find(&SearchQuery::up_to(4).with(Filter::HasKIdealNotHIdeal)).unwrap();
    ok &= !hits.is_empty();
    if let Some(hit) = hits.first() {
        let h = &hit.hemiring;
        lines.push(format!(
            "{} hits at order <= 4; first {} (order {}) add {:?} mul {:?}",
            hits.len(),
            h.name(),
            h.order(),
            h.add_rows(),
            h.mul_rows()
        ));
        for w in &hit.witnesses {
            lines.push(format!("  {w}"));
        }
    }
    (ok, lines)
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "axioms and single-cell mutations",
            limit: Duration::from_secs(1),
            run: axioms_and_mutations,
        },
        Criterion {
            id: 2,
            name: "crisp h-ideals and closure laws",
            limit: Duration::from_secs(10),
            run: crisp_theory,
        },
        Criterion {
            id: 3,
            name: "closure of products",
            limit: Duration::from_secs(60),
            run: closure_of_products,
        },
        Criterion {
            id: 4,
            name: "h-hemiregularity both directions",
            limit: Duration::from_secs(300),
            run: hemiregularity,
        },
        Criterion {
            id: 5,
            name: "prime characterization vs definition",
            limit: Duration::from_secs(300),
            run: prime_cross_validation,
        },
        Criterion {
            id: 6,
            name: "worked examples on N0",
            limit: Duration::from_secs(600),
            run: worked_examples,
        },
        Criterion {
            id: 7,
            name: "normal and maximal fuzzy h-ideals",
            limit: Duration::from_secs(600),
            run: normal_structure,
        },
        Criterion {
            id: 8,
            name: "model finder",
            limit: Duration::from_secs(600),
            run: model_finder,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let (ok, lines) = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let pass = ok && in_time;
        failed += usize::from(!pass);
        println!(
            "{} criterion {}: {} ({:.2} s, limit {} s{})",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            if in_time { "" } else { ", over time" }
        );
        for l in lines {
            println!("    {l}");
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

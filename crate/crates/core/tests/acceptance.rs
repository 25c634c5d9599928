//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every comparison here is exact (tolerance 0).

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{divisibility, dot, int, random_laurent, random_poly, rng, step_map};
use divisorial::arc::{default_truncation, jet_codim_monomial, ord_arc, sample_arc_in_w, Order};
use divisorial::fixtures::{
    a_cone, cubic_valuation, plane_conditions, plane_valuation, PlaneExample, PlaneParams,
};
use divisorial::lattice::{relint_contains, Cone, LatticeVector};
use divisorial::mather::{
    criterion_smooth, criterion_toric, mather_bruteforce_oracle, mather_discrepancy,
    toric_self_data,
};
use divisorial::poly::{rational, LaurentPolynomial};
use divisorial::toric::{val_eval, ToricValuation};
use divisorial::tower::{
    determination_oracle, extract_generating_conditions, monomial_tower, val_e,
    DivisorialValuation, OracleBudget, OracleVerdict,
};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;

/// Exact tolerance for every integer comparison.
const TOLERANCE: i64 = 0;
const RANDOM_CASES: usize = 1000;
const ARC_SEEDS: u64 = 50;
const ARC_TRIPLES: usize = 20;
const ORACLE_DEPTH: usize = 5;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden plane values", golden_plane),
        ("golden cubic values at n=10", golden_cubic),
        ("monomial codimension consistency", monomial_consistency),
        ("mather vs brute-force oracle", mather_equivalence),
        ("criterion theorems", criteria_theorems),
        ("valuation axioms", valuation_axioms),
        ("arc semantics", arc_semantics),
        ("generating conditions", generating_conditions),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn exact(label: &str, expected: &BigInt, computed: &BigInt) -> Result<(), String> {
    let diff = expected - computed;
    if diff <= int(TOLERANCE) && diff >= int(-TOLERANCE) {
        Ok(())
    } else {
        Err(format!("{label}: expected {expected}, computed {computed}"))
    }
}

fn x() -> LaurentPolynomial {
    LaurentPolynomial::variable(2, 0)
}

fn y() -> LaurentPolynomial {
    LaurentPolynomial::variable(2, 1)
}

fn poly2(terms: &[(i64, i64, i64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(2, terms.iter().map(|&(a, b, c)| (vec![a, b], rational(c))))
        .unwrap()
}

fn golden_plane() -> Outcome {
    let mut checked = 0;
    for (l, m) in [(1i64, 1i64), (2, -3)] {
        let params = PlaneParams::new(l, m);
        // y^2 - λx^3 and y^3 - λx^3y - μx^5, written out here.
        let cusp = poly2(&[(0, 2, 1), (3, 0, -l)]);
        let key = poly2(&[(0, 3, 1), (3, 1, -l), (5, 0, -m)]);
        let table: Vec<(PlaneExample, LaurentPolynomial, i64)> = vec![
            (PlaneExample::I, x(), 1),
            (PlaneExample::I, y(), 1),
            (PlaneExample::II, x(), 1),
            (PlaneExample::II, y(), 2),
            (PlaneExample::III, x(), 2),
            (PlaneExample::III, y(), 3),
            (PlaneExample::IV, x(), 2),
            (PlaneExample::IV, y(), 3),
            (PlaneExample::IV, cusp.clone(), 7),
            (PlaneExample::V, cusp.clone(), 8),
            (PlaneExample::VPrime, cusp.clone(), 7),
            (PlaneExample::VPrime, key.clone(), 11),
        ];
        for (ex, f, value) in table {
            let v = plane_valuation(ex, &params);
            let got = val_e(&v, &f).map_err(|e| format!("{ex}({f}): {e}"))?;
            exact(&format!("{ex}({f}) at λ={l}, μ={m}"), &int(value), &got)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} values exact"))
}

fn golden_cubic() -> Outcome {
    let v = cubic_valuation(10);
    let f = |t: &[(&[i64], i64)]| LaurentPolynomial::from_int_terms(3, t);
    let table = [
        ("x", f(&[(&[1, 0, 0], 1)]), 9),
        ("y", f(&[(&[0, 1, 0], 1)]), 10),
        ("z", f(&[(&[0, 0, 1], 1)]), 11),
        (
            "x^2z+xy^2+y^3",
            f(&[(&[2, 0, 1], 1), (&[1, 2, 0], 1), (&[0, 3, 0], 1)]),
            36,
        ),
    ];
    for (name, g, value) in &table {
        let got = val_e(&v, g).map_err(|e| format!("{name}: {e}"))?;
        exact(name, &int(*value), &got)?;
    }
    Ok("v(x)=9 v(y)=10 v(z)=11 v(cubic)=36".into())
}

fn weight_vectors(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max).map(move |w| {
                    let mut v = v.clone();
                    v.push(w);
                    v
                })
            })
            .collect();
    }
    out
}

fn monomial_consistency() -> Outcome {
    let mut count = 0;
    let mut towers = 0;
    for n in 1..=3 {
        for a in weight_vectors(n, 4) {
            let sum: i64 = a.iter().sum();
            let top = *a.iter().max().unwrap();
            for m in [top, top + 3] {
                let jet = jet_codim_monomial(&a, m).map_err(|e| format!("{a:?}: {e}"))?;
                exact(
                    &format!("jet codim {a:?} at m={m}"),
                    &int(sum),
                    &BigInt::from(jet),
                )?;
            }
            let r = mather_discrepancy(&Cone::orthant(n), &LatticeVector::from_i64s(&a))
                .map_err(|e| format!("{a:?}: {e}"))?;
            exact(&format!("k+q for {a:?}"), &int(sum), &(&r.k_mather + &r.q))?;
            if n == 2 {
                let v = monomial_tower(&a).map_err(|e| format!("{a:?}: {e}"))?;
                let gcd = a[0].gcd(&a[1]);
                let k = v.canonical_order().map_err(|e| format!("{a:?}: {e}"))?;
                exact(&format!("tower k for {a:?}"), &int(sum - gcd), &k)?;
                towers += 1;
            }
            count += 1;
        }
    }
    Ok(format!("{count} weight vectors, {towers} plane towers"))
}

fn test_cones() -> Vec<(String, Cone)> {
    vec![
        ("quadrant".to_string(), Cone::orthant(2)),
        ("A1".to_string(), a_cone(1)),
        ("A2".to_string(), a_cone(2)),
        ("A3".to_string(), a_cone(3)),
        (
            "(1,0),(2,5)".to_string(),
            Cone::from_i64_rays(&[&[1, 0], &[2, 5]]).unwrap(),
        ),
        ("octant".to_string(), Cone::orthant(3)),
        (
            "quadric cone".to_string(),
            Cone::from_i64_rays(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap(),
        ),
        (
            "1/2(1,1,1)".to_string(),
            Cone::from_i64_rays(&[&[2, -1, -1], &[0, 1, 0], &[0, 0, 1]]).unwrap(),
        ),
    ]
}

fn interior_points(c: &Cone, max: i64, limit: usize) -> Vec<LatticeVector> {
    let n = c.rank();
    let mut out = Vec::new();
    let mut a = vec![-max; n];
    loop {
        let v = LatticeVector::from_i64s(&a);
        if relint_contains(c, &v).unwrap() {
            out.push(v);
            if out.len() == limit {
                return out;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            a[i] += 1;
            if a[i] <= max {
                break;
            }
            a[i] = -max;
            i += 1;
        }
    }
}

fn mather_equivalence() -> Outcome {
    let mut instances = 0;
    let mut names = Vec::new();
    for (name, c) in test_cones() {
        let limit = if c.rank() == 2 { 12 } else { 4 };
        for a in interior_points(&c, 5, limit) {
            let fast = mather_discrepancy(&c, &a).map_err(|e| format!("{name} {a}: {e}"))?;
            let bound = fast.codim.clone().try_into().unwrap_or(i64::MAX).max(12);
            let slow =
                mather_bruteforce_oracle(&c, &a, bound).map_err(|e| format!("{name} {a}: {e}"))?;
            exact(&format!("{name} {a} codim"), &slow.codim, &fast.codim)?;
            exact(&format!("{name} {a} k"), &slow.k_mather, &fast.k_mather)?;
            exact(&format!("{name} {a} q"), &slow.q, &fast.q)?;
            instances += 1;
        }
        names.push(name);
    }
    if instances < 20 {
        return Err(format!("only {instances} instances"));
    }
    Ok(format!("{instances} instances over {}", names.join(", ")))
}

fn tower_values(v: &DivisorialValuation, n: usize) -> Result<Vec<(usize, BigInt)>, String> {
    (0..n)
        .map(|i| {
            val_e(v, &LaurentPolynomial::variable(n, i))
                .map(|x| (i, x))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn criteria_theorems() -> Outcome {
    let params = PlaneParams::default();
    let weights = [int(2), int(3)];

    let v3 = plane_valuation(PlaneExample::III, &params);
    let r = criterion_smooth(&tower_values(&v3, 2)?, &v3.codimension().unwrap(), &weights)
        .map_err(|e| e.to_string())?;
    if !(r.concluded && r.all_equalities_hold() && r.q == Some(int(1))) {
        return Err(format!("v3/(2,3) did not conclude with equalities: {r:?}"));
    }

    for n in [2usize, 3] {
        // order of vanishing at the origin: one blow-up of the origin
        let ord = monomial_tower(&vec![1; n]).map_err(|e| e.to_string())?;
        let r = criterion_smooth(
            &tower_values(&ord, n)?,
            &ord.codimension().unwrap(),
            &vec![int(1); n],
        )
        .map_err(|e| e.to_string())?;
        if !(r.concluded && r.all_equalities_hold()) {
            return Err(format!(
                "origin order valuation on C^{n} did not conclude: {r:?}"
            ));
        }
    }

    let v4 = plane_valuation(PlaneExample::IV, &params);
    let r = criterion_smooth(&tower_values(&v4, 2)?, &v4.codimension().unwrap(), &weights)
        .map_err(|e| e.to_string())?;
    if r.concluded {
        return Err("v4/(2,3) concluded but should not".into());
    }

    let mut toric = 0;
    for (name, c) in test_cones() {
        for a in interior_points(&c, 3, 3) {
            let (gens, vals, kq) = toric_self_data(&c, &a).map_err(|e| e.to_string())?;
            let r = criterion_toric(&c, &gens, &vals, &kq, &a).map_err(|e| e.to_string())?;
            if !(r.concluded && r.all_equalities_hold() && r.weights.as_ref() == Some(&a)) {
                return Err(format!("toric criterion failed on {name} {a}"));
            }
            toric += 1;
        }
    }
    Ok(format!(
        "smooth: v3 true, origin order true (n=2,3), v4 false; toric: {toric} self-data cases true"
    ))
}

fn valuation_axioms() -> Outcome {
    let mut r = rng(0x5eed);
    let cones = test_cones();
    let mut checks = 0;
    for case in 0..RANDOM_CASES {
        let (_, c) = &cones[case % cones.len()];
        let n = c.rank();
        let a = {
            let pts = interior_points(c, 4, 40);
            pts[r.gen_range(0..pts.len())].clone()
        };
        let v = ToricValuation::new(c.clone(), a.clone()).map_err(|e| e.to_string())?;
        let (tf, tg) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let f = random_laurent(&mut r, n, tf, 3);
        let g = random_laurent(&mut r, n, tg, 3);
        let val = |h: &LaurentPolynomial| val_eval(&v, h).map_err(|e| e.to_string());
        let (vf, vg) = (val(&f)?, val(&g)?);
        let aw = a.to_i64s().unwrap();
        exact(
            "val vs definition",
            &int(common::naive_weighted_order(&f, &aw)),
            &vf,
        )?;
        exact(
            &format!("val_a(fg) case {case}"),
            &(&vf + &vg),
            &val(&(&f * &g))?,
        )?;
        check_sum(&format!("val_a(f+g) case {case}"), &vf, &vg, &f, &g, val)?;
        checks += 1;
    }

    let towers: Vec<DivisorialValuation> = PlaneExample::ALL
        .iter()
        .flat_map(|&ex| {
            [PlaneParams::new(1, 1), PlaneParams::new(2, -3)].map(|p| plane_valuation(ex, &p))
        })
        .chain([cubic_valuation(4)])
        .collect();
    for case in 0..RANDOM_CASES {
        let v = &towers[case % towers.len()];
        let n = v.rank();
        let (tf, tg) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let f = random_poly(&mut r, n, tf, 3);
        let g = random_poly(&mut r, n, tg, 3);
        let val = |h: &LaurentPolynomial| val_e(v, h).map_err(|e| e.to_string());
        let (vf, vg) = (val(&f)?, val(&g)?);
        exact(
            &format!("val_E(fg) case {case}"),
            &(&vf + &vg),
            &val(&(&f * &g))?,
        )?;
        check_sum(&format!("val_E(f+g) case {case}"), &vf, &vg, &f, &g, val)?;
        checks += 1;
    }
    Ok(format!("{checks} random cases, 0 violations"))
}

fn check_sum(
    label: &str,
    vf: &BigInt,
    vg: &BigInt,
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    val: impl Fn(&LaurentPolynomial) -> Result<BigInt, String>,
) -> Result<(), String> {
    let s = f + g;
    if s.is_zero() {
        return Ok(());
    }
    let vs = val(&s)?;
    let lo = vf.min(vg);
    if &vs < lo || (vf != vg && &vs != lo) {
        return Err(format!("{label}: {vs} vs min({vf}, {vg})"));
    }
    Ok(())
}

fn arc_semantics() -> Outcome {
    let mut r = rng(0xa4c5);
    let cones = test_cones();
    let mut arcs = 0;
    for t in 0..ARC_TRIPLES {
        let (name, c) = &cones[t % cones.len()];
        let pts = interior_points(c, 3, 30);
        let a = pts[r.gen_range(0..pts.len())].clone();
        let basis = divisorial::lattice::hilbert_basis(c).map_err(|e| e.to_string())?;
        // regular function: random combination of products of basis characters
        let mut terms: Vec<(Vec<i64>, divisorial::poly::Rational)> = Vec::new();
        for _ in 0..r.gen_range(1..=4) {
            let mut e = vec![0i64; c.rank()];
            for _ in 0..r.gen_range(1..=3) {
                let u = basis.elements[r.gen_range(0..basis.len())]
                    .to_i64s()
                    .unwrap();
                for (x, y) in e.iter_mut().zip(u) {
                    *x += y;
                }
            }
            terms.push((e, rational(r.gen_range(1..=3))));
        }
        let f = LaurentPolynomial::from_terms(c.rank(), terms).unwrap();
        let aw = a.to_i64s().unwrap();
        let expected = f.support().map(|e| dot(e, &aw)).min().unwrap();
        let trunc = default_truncation(&int(expected)).unwrap();
        let mut best: Option<i64> = None;
        for seed in 0..ARC_SEEDS {
            let gamma = sample_arc_in_w(c, &a, trunc, seed).map_err(|e| e.to_string())?;
            for u in basis.iter() {
                let target = dot(&u.to_i64s().unwrap(), &aw);
                let o = ord_arc(&gamma, &LaurentPolynomial::character(u).unwrap())
                    .map_err(|e| e.to_string())?;
                if o != Order::Known(target) {
                    return Err(format!("{name} a={a}: ord(x^{u}) = {o}, expected {target}"));
                }
            }
            let o = ord_arc(&gamma, &f).map_err(|e| e.to_string())?;
            if o.lower_bound() < expected && o.known().is_some() {
                return Err(format!("{name} a={a} f={f}: ord {o} below val {expected}"));
            }
            if let Some(k) = o.known() {
                best = Some(best.map_or(k, |b| b.min(k)));
            }
            arcs += 1;
        }
        if best != Some(expected) {
            return Err(format!(
                "{name} a={a} f={f}: min sampled order {best:?}, val {expected}"
            ));
        }
    }
    Ok(format!(
        "{arcs} arcs over {ARC_TRIPLES} triples, min attained in every triple"
    ))
}

/// `val_E(f)` recomputed by pulling `f` back one step at a time through the
/// tower with step maps written in this file.
fn independent_val(v: &DivisorialValuation, f: &LaurentPolynomial) -> i64 {
    let n = v.rank();
    let mut g = f.clone();
    for step in v.tower.steps() {
        g = g
            .substitute(&step_map(n, &step.center, step.chart))
            .unwrap();
    }
    let last = v.tower.steps().last().unwrap().chart;
    let q: i64 = v.q.clone().try_into().unwrap();
    q * divisibility(&g, last)
}

fn generating_conditions() -> Outcome {
    let mut extracted = 0;
    let mut oracle_runs = 0;
    for (l, m) in [(1i64, 1i64), (2, -3)] {
        let params = PlaneParams::new(l, m);
        let cusp = poly2(&[(0, 2, 1), (3, 0, -l)]);
        let key = poly2(&[(0, 3, 1), (3, 1, -l), (5, 0, -m)]);
        let probes = vec![
            x(),
            y(),
            cusp.clone(),
            key,
            &y().pow(2) + &x().pow(3),
            &x().pow(2) * &y(),
        ];
        let budget =
            OracleBudget::with_depth(ORACLE_DEPTH).extend_grid(&[rational(l), rational(m)]);
        for ex in PlaneExample::ALL {
            let v = plane_valuation(ex, &params);
            let conds = extract_generating_conditions(&v).map_err(|e| format!("{ex}: {e}"))?;
            for (f, value) in &conds.conditions {
                exact(
                    &format!("{ex} extracted {f}"),
                    value,
                    &int(independent_val(&v, f)),
                )?;
                extracted += 1;
            }
            let published = plane_conditions(ex, &params);
            let report = determination_oracle(&published, &v, &probes, &budget)
                .map_err(|e| format!("{ex}: {e}"))?;
            if report.verdict != OracleVerdict::NoViolationWithinBudget {
                return Err(format!(
                    "{ex} at λ={l}, μ={m}: {} ({} violations)",
                    report.verdict,
                    report.violations.len()
                ));
            }
            oracle_runs += 1;
        }

        let v4 = plane_valuation(PlaneExample::IV, &params);
        let dropped = plane_conditions(PlaneExample::IV, &params).without(2);
        let report =
            determination_oracle(&dropped, &v4, &probes, &budget).map_err(|e| e.to_string())?;
        let v3 = plane_valuation(PlaneExample::III, &params);
        let v3_cusp: i64 = val_e(&v3, &cusp).unwrap().try_into().unwrap();
        let found = report
            .violations
            .iter()
            .any(|w| w.probe == 2 && w.candidate_value == v3_cusp && w.target_value == 7);
        if report.verdict != OracleVerdict::ViolationsFound || !found {
            return Err(format!(
                "v4 without its third condition at λ={l}: {}",
                report.verdict
            ));
        }
    }
    Ok(format!(
        "{extracted} extracted conditions re-verified; {oracle_runs} published sets clean at D={ORACLE_DEPTH}; v3 violation found for both parameter sets"
    ))
}

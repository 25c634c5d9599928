//! The smooth and toric criteria recognising toric valuations from their
//! values and codimension.

use divisorial::fixtures::{plane_valuation, PlaneExample, PlaneParams};
use divisorial::lattice::{Cone, LatticeVector};
use divisorial::mather::{criterion_smooth, criterion_toric, toric_self_data, CriterionReport};
use divisorial::poly::LaurentPolynomial;
use divisorial::tower::val_e;
use num_bigint::BigInt;

fn show(label: &str, r: &CriterionReport) {
    println!(
        "{label}: concluded={} q={:?}",
        r.concluded,
        r.q.as_ref().map(|q| q.to_string())
    );
    for w in &r.equality_witness {
        println!(
            "    {:30} {} vs {}  {}",
            w.relation,
            w.lhs,
            w.rhs,
            if w.holds { "ok" } else { "differs" }
        );
    }
}

fn main() -> divisorial::error::Result<()> {
    let weights = [BigInt::from(2), BigInt::from(3)];
    for ex in [PlaneExample::III, PlaneExample::IV] {
        let v = plane_valuation(ex, &PlaneParams::default());
        let vals = (0..2)
            .map(|i| Ok((i, val_e(&v, &LaurentPolynomial::variable(2, i))?)))
            .collect::<divisorial::error::Result<Vec<_>>>()?;
        show(
            &format!("{ex} against weights (2,3)"),
            &criterion_smooth(&vals, &v.codimension()?, &weights)?,
        );
    }

    let c = Cone::from_i64_rays(&[&[0, 1], &[3, -1]])?;
    let a = LatticeVector::from_i64s(&[2, 1]);
    let (gens, vals, kq) = toric_self_data(&c, &a)?;
    show(
        "A2 fed its own toric data",
        &criterion_toric(&c, &gens, &vals, &kq, &a)?,
    );
    Ok(())
}

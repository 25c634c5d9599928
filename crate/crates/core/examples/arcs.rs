//! Truncated arcs: sampling from `W(val_a)`, orders, contact loci and
//! jet codimension.

use divisorial::arc::{
    contact_membership, empirical_val, jet_codim_monomial, ord_arc, sample_arc_in_w, ContactMode,
    CoordinateArc, TruncatedSeries,
};
use divisorial::lattice::{Cone, LatticeVector};
use divisorial::poly::LaurentPolynomial;

fn main() -> divisorial::error::Result<()> {
    let c = Cone::orthant(2);
    let a = LatticeVector::from_i64s(&[2, 3]);
    let x = LaurentPolynomial::variable(2, 0);
    let y = LaurentPolynomial::variable(2, 1);
    let cusp = &y.pow(2) - &x.pow(3);

    for seed in 0..3 {
        let gamma = sample_arc_in_w(&c, &a, 10, seed)?;
        println!(
            "seed {seed}: ord x={} ord y={} ord(y^2-x^3)={}",
            ord_arc(&gamma, &x)?,
            ord_arc(&gamma, &y)?,
            ord_arc(&gamma, &cusp)?
        );
    }
    println!(
        "empirical val over 50 arcs: {}",
        empirical_val(&c, &a, &cusp, 50, None, 1)?
    );

    let line = CoordinateArc::new(vec![TruncatedSeries::from_ints(&[0, 0, 1], 6)])?;
    let t = [LaurentPolynomial::variable(1, 0)];
    for (m, mode) in [
        (2, ContactMode::Exact),
        (3, ContactMode::AtLeast),
        (9, ContactMode::Exact),
    ] {
        println!(
            "x(t)=t^2 in Cont({m}, {mode:?})? {}",
            contact_membership(&line, &t, m, mode)?
        );
    }

    for (w, m) in [(vec![2], 5), (vec![2, 3], 4), (vec![1, 2, 3], 7)] {
        println!(
            "jet codim {w:?} at level {m}: {}",
            jet_codim_monomial(&w, m)?
        );
    }
    Ok(())
}

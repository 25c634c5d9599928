//! Evaluating toric valuations `val_a` on Laurent polynomials.

use divisorial::lattice::{Cone, LatticeVector};
use divisorial::poly::LaurentPolynomial;
use divisorial::toric::{val_eval, val_quotient, ToricValuation};

fn main() -> divisorial::error::Result<()> {
    let x = LaurentPolynomial::variable(2, 0);
    let y = LaurentPolynomial::variable(2, 1);
    let cusp = &y.pow(2) - &x.pow(3);

    for w in [[1, 1], [2, 3], [4, 6], [3, 2]] {
        let v = ToricValuation::monomial(&w)?;
        println!(
            "a={:?} q={}  val(x)={} val(y)={} val(y^2-x^3)={} val(y^2/x^3)={}",
            w,
            v.q(),
            val_eval(&v, &x)?,
            val_eval(&v, &y)?,
            val_eval(&v, &cusp)?,
            val_quotient(&v, &y.pow(2), &x.pow(3))?,
        );
    }

    // On the A1 cone the coordinate ring is generated by x^(1,0), x^(1,1), x^(1,2).
    let a1 = Cone::from_i64_rays(&[&[0, 1], &[2, -1]])?;
    let v = ToricValuation::new(a1, LatticeVector::from_i64s(&[1, 1]))?;
    let f = LaurentPolynomial::from_int_terms(2, &[(&[1, 0], 1), (&[1, 2], -2)]);
    println!("A1, a=(1,1): val({f}) = {}", val_eval(&v, &f)?);
    Ok(())
}

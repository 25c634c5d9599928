//! Toric valuations `val_a` on Laurent polynomials.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{content, Cone, LatticeVector};
use crate::poly::LaurentPolynomial;

/// The toric valuation attached to a nonzero `a ∈ σ ∩ N`, with its
/// multiplicity `q = content(a)` and primitive part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricValuation {
    cone: Cone,
    a: LatticeVector,
    q: BigInt,
    a_primitive: LatticeVector,
}

impl ToricValuation {
    pub fn new(cone: Cone, a: LatticeVector) -> Result<Self> {
        if a.rank() != cone.rank() {
            return Err(Error::Dimension {
                expected: cone.rank(),
                found: a.rank(),
            });
        }
        if a.is_zero() {
            return Err(Error::Domain(
                "toric valuation needs a nonzero vector".into(),
            ));
        }
        if !cone.contains(&a)? {
            return Err(Error::Domain(format!("{a} does not lie in the cone")));
        }
        let q = content(&a)?;
        let a_primitive = a.primitive();
        Ok(Self {
            cone,
            a,
            q,
            a_primitive,
        })
    }

    /// The monomial valuation on `C^n` with the given weights.
    pub fn monomial(weights: &[i64]) -> Result<Self> {
        Self::new(
            Cone::orthant(weights.len()),
            LatticeVector::from_i64s(weights),
        )
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn a(&self) -> &LatticeVector {
        &self.a
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn a_primitive(&self) -> &LatticeVector {
        &self.a_primitive
    }
}

/// `val_a(f) = min over the support of ⟨u, a⟩`. The zero polynomial has
/// infinite value, reported as [`Error::InfiniteValue`].
pub fn val_eval(v: &ToricValuation, f: &LaurentPolynomial) -> Result<BigInt> {
    weighted_order(v.a().coords(), f)
}

/// Minimum of `⟨e, weights⟩` over the support of `f`.
pub fn weighted_order(weights: &[BigInt], f: &LaurentPolynomial) -> Result<BigInt> {
    if f.rank() != weights.len() {
        return Err(Error::Dimension {
            expected: weights.len(),
            found: f.rank(),
        });
    }
    f.support()
        .map(|e| {
            e.iter()
                .zip(weights)
                .map(|(k, w)| BigInt::from(*k) * w)
                .sum::<BigInt>()
        })
        .min()
        .ok_or(Error::InfiniteValue)
}

/// True iff every exponent of `f` lies in `σ∨`, i.e. `f ∈ C[σ∨ ∩ M]`.
pub fn support_in_semigroup(c: &Cone, f: &LaurentPolynomial) -> bool {
    if f.rank() != c.rank() {
        return false;
    }
    f.support().all(|e| {
        c.rays().iter().all(|r| {
            let s: BigInt = e
                .iter()
                .zip(r.coords())
                .map(|(k, w)| BigInt::from(*k) * w)
                .sum();
            !s.is_negative()
        })
    })
}

/// `val(f / g) = val(f) - val(g)` on the function field.
pub fn val_quotient(
    v: &ToricValuation,
    num: &LaurentPolynomial,
    den: &LaurentPolynomial,
) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::Domain("division by the zero function".into()));
    }
    Ok(val_eval(v, num)? - val_eval(v, den)?)
}

impl ToricValuation {
    /// True when the valuation is nonnegative on `C[σ∨ ∩ M]` and positive on
    /// every nonconstant character, i.e. centred at the torus-fixed point.
    pub fn is_centered_at_origin(&self) -> Result<bool> {
        crate::lattice::relint_contains(&self.cone, &self.a)
    }
}

//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! This is the single function representation of the crate: exponents are
//! points of `M` (stored as `i64`, overflow-checked), coefficients are
//! `BigRational`. Ordinary polynomials are the special case of nonnegative
//! exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::DualVector;

pub type Rational = BigRational;

/// Exponent vector of a monomial.
pub type Exponent = Vec<i64>;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    rank: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn monomial(exp: Exponent, coef: Rational) -> Self {
        let rank = exp.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { rank, terms }
    }

    /// The coordinate function `x_i` (0-based).
    pub fn variable(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    /// The monomial `x^u` for a character `u ∈ M`.
    pub fn character(u: &DualVector) -> Result<Self> {
        let exp = u
            .to_i64s()
            .ok_or_else(|| Error::Capability("exponent does not fit in 64 bits".into()))?;
        Ok(Self::monomial(exp, Rational::one()))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::Dimension {
                    expected: rank,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from small integer data.
    pub fn from_int_terms(rank: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(rank, terms.iter().map(|(e, c)| (e.to_vec(), rational(*c))))
            .expect("exponent length matches rank")
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coefficient(&self, e: &[i64]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.rank);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.rank, "rank mismatch");
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Smallest exponent of variable `var` over the support; `None` for zero.
    pub fn min_exponent(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// Smallest total degree over the support; `None` for zero.
    pub fn min_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn max_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest `k` such that `x_var^k` divides the polynomial, obtained by
    /// exact repeated division. `None` for zero.
    pub fn divisibility_order(&self, var: usize) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.exact_divide_by_variable(var) {
            p = q;
            k += 1;
        }
        Some(k)
    }

    /// `self / x_var` when the quotient is a polynomial, else `None`.
    pub fn exact_divide_by_variable(&self, var: usize) -> Option<Self> {
        if self.terms.keys().any(|e| e[var] < 1) {
            return None;
        }
        let mut shift = vec![0; self.rank];
        shift[var] = -1;
        Some(self.shift(&shift))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c * rational(e[var]));
        }
        out
    }

    /// Value at a point with nonzero coordinates wherever exponents are negative.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if k < 0 && x.is_zero() {
                    return Err(Error::Domain("negative power of zero".into()));
                }
                let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
                term = if k > 0 { term * p } else { term / p };
            }
            total += term;
        }
        Ok(total)
    }

    /// Composition `f(images_1, ..., images_n)`; requires nonnegative exponents.
    pub fn substitute(&self, images: &[LaurentPolynomial]) -> Result<Self> {
        if images.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: images.len(),
            });
        }
        if !self.is_polynomial() {
            return Err(Error::Unsupported(
                "substitution into a polynomial with negative exponents".into(),
            ));
        }
        let target_rank = images.first().map_or(self.rank, |p| p.rank);
        let mut powers: Vec<Vec<LaurentPolynomial>> =
            vec![vec![LaurentPolynomial::one(target_rank)]; self.rank];
        let mut out = Self::zero(target_rank);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_rank, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k];
                }
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Monomial change of variables `x^e ↦ x^(Σ e_i v_i)`.
    pub fn substitute_monomials(&self, images: &[Exponent]) -> Result<Self> {
        if images.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: images.len(),
            });
        }
        let target_rank = images.first().map_or(self.rank, Vec::len);
        let mut out = Self::zero(target_rank);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; target_rank];
            for (k, img) in e.iter().zip(images) {
                for (slot, v) in ne.iter_mut().zip(img) {
                    *slot = k
                        .checked_mul(*v)
                        .and_then(|p| slot.checked_add(p))
                        .ok_or_else(|| Error::Capability("exponent overflow".into()))?;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// `f(x + c)`: moves the point `c` to the origin. One Taylor shift per
    /// nonzero coordinate of `c`.
    pub fn translate(&self, c: &[Rational]) -> Result<Self> {
        if c.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: c.len(),
            });
        }
        let mut current = self.clone();
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            if current.terms.keys().any(|e| e[i] < 0) {
                return Err(Error::Unsupported(
                    "translating a variable that appears with a negative exponent".into(),
                ));
            }
            let top = current.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
            let mut powers = vec![Rational::one()];
            for k in 1..=top {
                powers.push(&powers[k - 1] * ci);
            }
            let mut out = Self::zero(self.rank);
            for (e, coef) in &current.terms {
                let b = e[i] as usize;
                let mut binom = BigInt::one();
                for k in 0..=b {
                    let mut ne = e.clone();
                    ne[i] = k as i64;
                    let scalar = Rational::from_integer(binom.clone()) * &powers[b - k];
                    out.add_term(ne, coef * scalar);
                    binom = binom * BigInt::from(b - k) / BigInt::from(k + 1);
                }
            }
            current = out;
        }
        Ok(current)
    }

    /// Order of vanishing at the point `c` (lowest total degree after
    /// translating `c` to the origin). `None` for zero.
    pub fn order_at(&self, c: &[Rational]) -> Result<Option<i64>> {
        if c.iter().all(Zero::is_zero) {
            return Ok(self.min_total_degree());
        }
        Ok(self.translate(c)?.min_total_degree())
    }

    /// Renders with the given variable names, e.g. `y^2 - x^3`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a LaurentPolynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first reads most naturally.
        let mut terms: Vec<(&Exponent, &Rational)> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (idx, (e, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                let name = self
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                if k == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.rank);
        fmt::Display::fmt(
            &PolyDisplay {
                poly: self,
                names: &names,
            },
            f,
        )
    }
}

/// `x, y, z` for rank up to three, `x1, ..., xn` otherwise.
pub fn default_names(rank: usize) -> Vec<String> {
    if rank <= 3 {
        ["x", "y", "z"][..rank]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = LaurentPolynomial::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

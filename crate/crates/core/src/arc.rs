//! Truncated arcs and their orders of contact.
//!
//! Every series is known modulo `t^(T+1)`. Orders are reported as
//! [`Order::Known`] only when a nonzero coefficient at or below `T` proves
//! them; otherwise the answer is a lower bound.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Cone, LatticeVector};
use crate::poly::{LaurentPolynomial, Rational};
use crate::toric::{support_in_semigroup, val_eval, ToricValuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Known(i64),
    AtLeast(i64),
}

impl Order {
    /// The proven lower bound.
    pub fn lower_bound(self) -> i64 {
        match self {
            Order::Known(k) | Order::AtLeast(k) => k,
        }
    }

    pub fn known(self) -> Option<i64> {
        match self {
            Order::Known(k) => Some(k),
            Order::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Known(k) => write!(f, "{k}"),
            Order::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// A power series known modulo `t^(T+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads with zeros or drops coefficients beyond `t^truncation`.
    pub fn new(mut coeffs: Vec<Rational>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], truncation: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
            truncation,
        )
    }

    pub fn zero(truncation: usize) -> Self {
        Self::new(Vec::new(), truncation)
    }

    pub fn constant(c: Rational, truncation: usize) -> Self {
        Self::new(vec![c], truncation)
    }

    /// `t^k`, which is zero modulo `t^(T+1)` when `k > T`.
    pub fn monomial(k: usize, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if k <= truncation {
            s.coeffs[k] = Rational::one();
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Order::Known(k as i64),
            None => Order::AtLeast(self.truncation() as i64 + 1),
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        Self {
            coeffs: (0..=t)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let mut coeffs = vec![Rational::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Multiplies by `t^k`; coefficients pushed past the truncation vanish.
    pub fn shifted(&self, k: usize) -> Self {
        let t = self.truncation();
        let mut coeffs = vec![Rational::zero(); t + 1];
        if k <= t {
            coeffs[k..].clone_from_slice(&self.coeffs[..=t - k]);
        }
        Self { coeffs }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::Domain(
                "series without constant term is not invertible".into(),
            ));
        }
        let t = self.truncation();
        let inv0 = self.coeffs[0].recip();
        let mut out = vec![Rational::zero(); t + 1];
        out[0] = inv0.clone();
        for k in 1..=t {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -(acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut result = Self::constant(Rational::one(), self.truncation());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(result)
    }
}

/// An arc of a toric variety in the orbit of `a`: `x^u ↦ t^⟨u,a⟩ ∏ s_i^u_i`
/// with unit series `s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedArc {
    shift: LatticeVector,
    units: Vec<TruncatedSeries>,
}

impl TruncatedArc {
    pub fn new(shift: LatticeVector, units: Vec<TruncatedSeries>) -> Result<Self> {
        if units.len() != shift.rank() {
            return Err(Error::Dimension {
                expected: shift.rank(),
                found: units.len(),
            });
        }
        if units.is_empty() {
            return Err(Error::Input("arc of rank 0".into()));
        }
        let t = units[0].truncation();
        if units.iter().any(|u| u.truncation() != t) {
            return Err(Error::Input(
                "unit series with different truncations".into(),
            ));
        }
        if let Some(i) = units.iter().position(|u| !u.is_unit()) {
            return Err(Error::Domain(format!(
                "unit series {} has zero constant term",
                i + 1
            )));
        }
        Ok(Self { shift, units })
    }

    pub fn rank(&self) -> usize {
        self.units.len()
    }

    pub fn shift(&self) -> &LatticeVector {
        &self.shift
    }

    pub fn units(&self) -> &[TruncatedSeries] {
        &self.units
    }

    pub fn truncation(&self) -> usize {
        self.units[0].truncation()
    }
}

/// Arc on `C^n` given by one series per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateArc {
    coords: Vec<TruncatedSeries>,
}

impl CoordinateArc {
    pub fn new(coords: Vec<TruncatedSeries>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Input("arc of rank 0".into()));
        }
        let t = coords[0].truncation();
        if coords.iter().any(|u| u.truncation() != t) {
            return Err(Error::Input(
                "coordinate series with different truncations".into(),
            ));
        }
        Ok(Self { coords })
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[TruncatedSeries] {
        &self.coords
    }

    pub fn truncation(&self) -> usize {
        self.coords[0].truncation()
    }
}

/// Anything whose pullback of a function has a (possibly bounded) order.
pub trait ArcOrder {
    fn ord(&self, f: &LaurentPolynomial) -> Result<Order>;
}

impl ArcOrder for TruncatedArc {
    fn ord(&self, f: &LaurentPolynomial) -> Result<Order> {
        ord_arc(self, f)
    }
}

impl ArcOrder for CoordinateArc {
    fn ord(&self, f: &LaurentPolynomial) -> Result<Order> {
        ord_coordinate_arc(self, f)
    }
}

fn check_rank(expected: usize, f: &LaurentPolynomial) -> Result<()> {
    if f.rank() != expected {
        return Err(Error::Dimension {
            expected,
            found: f.rank(),
        });
    }
    if f.is_zero() {
        return Err(Error::InfiniteValue);
    }
    Ok(())
}

/// `ord_t` of `γ^*(f)`.
pub fn ord_arc(gamma: &TruncatedArc, f: &LaurentPolynomial) -> Result<Order> {
    check_rank(gamma.rank(), f)?;
    let t = gamma.truncation();
    let exps: Vec<BigInt> = f
        .support()
        .map(|e| {
            e.iter()
                .zip(gamma.shift.coords())
                .map(|(k, a)| BigInt::from(*k) * a)
                .sum()
        })
        .collect();
    let low = exps.iter().min().expect("nonzero polynomial").clone();
    let mut inner = TruncatedSeries::zero(t);
    for ((e, c), ex) in f.terms().zip(&exps) {
        let gap = match (ex - &low).to_usize() {
            Some(g) if g <= t => g,
            _ => continue,
        };
        let mut term = TruncatedSeries::constant(c.clone(), t);
        for (s, &k) in gamma.units.iter().zip(e) {
            if k != 0 {
                term = term.mul(&s.pow(k)?);
            }
        }
        inner = inner.add(&term.shifted(gap));
    }
    let low = low
        .to_i64()
        .ok_or_else(|| Error::Capability("arc order beyond i64".into()))?;
    Ok(match inner.order() {
        Order::Known(k) => Order::Known(low + k),
        Order::AtLeast(k) => Order::AtLeast(low + k),
    })
}

/// `ord_t` of `f(x_1(t), …, x_n(t))` for a polynomial `f`.
pub fn ord_coordinate_arc(gamma: &CoordinateArc, f: &LaurentPolynomial) -> Result<Order> {
    check_rank(gamma.rank(), f)?;
    if !f.is_polynomial() {
        return Err(Error::Domain(
            "coordinate arcs evaluate polynomials only".into(),
        ));
    }
    let t = gamma.truncation();
    let mut total = TruncatedSeries::zero(t);
    for (e, c) in f.terms() {
        let mut term = TruncatedSeries::constant(c.clone(), t);
        for (s, &k) in gamma.coords.iter().zip(e) {
            if k != 0 {
                term = term.mul(&s.pow(k)?);
            }
        }
        total = total.add(&term);
    }
    Ok(total.order())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactMode {
    /// `ord = m`
    Exact,
    /// `ord >= m`
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    True,
    False,
    Unknown,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::True => "true",
            Decision::False => "false",
            Decision::Unknown => "unknown",
        })
    }
}

/// Whether the arc lies in `Cont^m` (or `Cont^{>=m}`) of the ideal generated
/// by `gens`. Zero generators are ignored; the zero ideal has infinite order.
pub fn contact_membership(
    gamma: &dyn ArcOrder,
    gens: &[LaurentPolynomial],
    m: i64,
    mode: ContactMode,
) -> Result<Decision> {
    if m < 0 {
        return Err(Error::Precondition(format!(
            "contact order {m} is negative"
        )));
    }
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let o = gamma.ord(g)?;
        lo = Some(lo.map_or(o.lower_bound(), |l| l.min(o.lower_bound())));
        if let Some(k) = o.known() {
            hi = Some(hi.map_or(k, |h| h.min(k)));
        }
    }
    let Some(lo) = lo else {
        return Ok(match mode {
            ContactMode::Exact => Decision::False,
            ContactMode::AtLeast => Decision::True,
        });
    };
    // The true order lies in [lo, hi], with hi = +inf when nothing is known.
    let below_hi = |x: i64| hi.is_none_or(|h| x <= h);
    Ok(match mode {
        ContactMode::AtLeast if lo >= m => Decision::True,
        ContactMode::AtLeast if !below_hi(m) => Decision::False,
        ContactMode::Exact if Some(lo) == hi => {
            if lo == m {
                Decision::True
            } else {
                Decision::False
            }
        }
        ContactMode::Exact if m < lo || !below_hi(m) => Decision::False,
        _ => Decision::Unknown,
    })
}

/// Coefficients drawn in `[-5, 5]`, constant term nonzero.
const COEFF_RANGE: i64 = 5;

fn sample_unit(rng: &mut ChaCha8Rng, truncation: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(truncation + 1);
    let mut c0 = 0;
    while c0 == 0 {
        c0 = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
    }
    coeffs.push(Rational::from_integer(c0.into()));
    for _ in 0..truncation {
        let c: i64 = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        coeffs.push(Rational::from_integer(c.into()));
    }
    TruncatedSeries::new(coeffs, truncation)
}

/// Deterministic arc with `ord(x^u) = ⟨u, a⟩` for every character, so in
/// particular for every Hilbert basis element. Each unit series has its own
/// stream, so a larger truncation extends the same coefficients.
pub fn sample_arc_indexed(
    c: &Cone,
    a: &LatticeVector,
    truncation: usize,
    seed: u64,
    index: u64,
) -> Result<TruncatedArc> {
    ToricValuation::new(c.clone(), a.clone())?;
    let units = (0..c.rank())
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((index << 16) | i as u64);
            sample_unit(&mut rng, truncation)
        })
        .collect();
    TruncatedArc::new(a.clone(), units)
}

pub fn sample_arc_in_w(
    c: &Cone,
    a: &LatticeVector,
    truncation: usize,
    seed: u64,
) -> Result<TruncatedArc> {
    sample_arc_indexed(c, a, truncation, seed, 0)
}

/// Default truncation `2·expected + 8`.
pub fn default_truncation(expected: &BigInt) -> Result<usize> {
    let e = expected
        .to_usize()
        .ok_or_else(|| Error::Capability(format!("expected order {expected} too large")))?;
    Ok(2 * e + 8)
}

/// Minimum known order of `f` over `samples` arcs of `W(val_a)`.
pub fn empirical_val(
    c: &Cone,
    a: &LatticeVector,
    f: &LaurentPolynomial,
    samples: u64,
    truncation: Option<usize>,
    seed: u64,
) -> Result<BigInt> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is needed".into()));
    }
    let v = ToricValuation::new(c.clone(), a.clone())?;
    if !support_in_semigroup(c, f) {
        return Err(Error::Domain(format!(
            "{f} is not regular on the toric variety"
        )));
    }
    let expected = val_eval(&v, f)?;
    let t = match truncation {
        Some(t) => t,
        None => default_truncation(&expected.abs())?,
    };
    let orders: Vec<Order> = (0..samples)
        .into_par_iter()
        .map(|i| ord_arc(&sample_arc_indexed(c, a, t, seed, i)?, f))
        .collect::<Result<_>>()?;
    orders
        .iter()
        .filter_map(|o| o.known())
        .min()
        .map(BigInt::from)
        .ok_or_else(|| {
            Error::Capability(format!(
                "every sampled order exceeds the truncation {t}; rerun with a larger truncation"
            ))
        })
}

/// Codimension of `{γ : ord_γ(x_i) >= a_i}` in the `m`-jets of `C^n`,
/// counted coefficient by coefficient.
pub fn jet_codim_monomial(a: &[i64], m: i64) -> Result<u64> {
    if let Some(&w) = a.iter().find(|&&w| w < 0) {
        return Err(Error::Domain(format!("negative weight {w}")));
    }
    let top = a.iter().copied().max().unwrap_or(0);
    if m < top {
        return Err(Error::Precondition(format!(
            "jet level {m} is below the largest weight {top}"
        )));
    }
    let mut killed = 0u64;
    for &ai in a {
        for k in 0..=m {
            if k < ai {
                killed += 1;
            }
        }
    }
    Ok(killed)
}

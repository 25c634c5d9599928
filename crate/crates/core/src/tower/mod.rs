//! Towers of point blow-ups over affine `n`-space.
//!
//! A tower is a sequence of steps, each blowing up a rational point of the
//! current affine chart and passing to one standard chart of the blow-up.
//! With `z` the old coordinates, `w` the new ones, `c` the centre and `j`
//! the chart index:
//!
//! ```text
//! z_j = c_j + w_j,     z_i = c_i + w_j * w_i   (i != j)
//! ```
//!
//! The exceptional divisor of the step is `{w_j = 0}`. The composite map
//! expresses every original coordinate as a polynomial in the last chart,
//! which is all that is needed to evaluate `val_E` and the relative canonical
//! divisor along the last exceptional divisor.

pub mod conditions;
pub mod oracle;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{default_names, LaurentPolynomial, Rational};

pub use conditions::{extract_generating_conditions, push_conditions, GeneratingConditions};
pub use oracle::{determination_oracle, OracleBudget, OracleReport, OracleVerdict};

/// One point blow-up: the centre in the current chart and the chart
/// (0-based coordinate index) used afterwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TowerStep {
    pub center: Vec<Rational>,
    pub chart: usize,
}

impl TowerStep {
    pub fn new(center: Vec<Rational>, chart: usize) -> Self {
        Self { center, chart }
    }

    /// Step centred at the chart origin.
    pub fn origin(rank: usize, chart: usize) -> Self {
        Self::new(vec![Rational::zero(); rank], chart)
    }

    pub fn from_ints(center: &[i64], chart: usize) -> Self {
        Self::new(
            center
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
            chart,
        )
    }

    /// Old coordinates as polynomials in the new chart.
    pub fn images(&self) -> Vec<LaurentPolynomial> {
        let n = self.center.len();
        let wj = LaurentPolynomial::variable(n, self.chart);
        (0..n)
            .map(|i| {
                let base = if i == self.chart {
                    wj.clone()
                } else {
                    &wj * &LaurentPolynomial::variable(n, i)
                };
                &base + &LaurentPolynomial::constant(n, self.center[i].clone())
            })
            .collect()
    }

    /// The generators `z_i - c_i` of the blown-up ideal, in old coordinates.
    pub fn generators(&self) -> Vec<LaurentPolynomial> {
        let n = self.center.len();
        (0..n)
            .map(|i| {
                &LaurentPolynomial::variable(n, i)
                    - &LaurentPolynomial::constant(n, self.center[i].clone())
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupTower {
    rank: usize,
    names: Vec<String>,
    steps: Vec<TowerStep>,
    composite: Vec<LaurentPolynomial>,
}

/// Validates the steps and composes the chart maps.
pub fn tower_build(rank: usize, names: Vec<String>, steps: Vec<TowerStep>) -> Result<BlowupTower> {
    if rank == 0 {
        return Err(Error::Input("tower rank must be at least 1".into()));
    }
    if steps.is_empty() {
        return Err(Error::Input(
            "tower has no steps, so there is no exceptional divisor".into(),
        ));
    }
    if names.len() != rank {
        return Err(Error::Dimension {
            expected: rank,
            found: names.len(),
        });
    }
    for (k, s) in steps.iter().enumerate() {
        if s.center.len() != rank {
            return Err(Error::Dimension {
                expected: rank,
                found: s.center.len(),
            });
        }
        if s.chart >= rank {
            return Err(Error::Input(format!(
                "step {}: chart index {} out of range 1..={rank}",
                k + 1,
                s.chart + 1
            )));
        }
    }
    let mut composite: Vec<LaurentPolynomial> = (0..rank)
        .map(|i| LaurentPolynomial::variable(rank, i))
        .collect();
    for s in &steps {
        let images = s.images();
        composite = composite
            .iter()
            .map(|p| p.substitute(&images))
            .collect::<Result<_>>()?;
    }
    Ok(BlowupTower {
        rank,
        names,
        steps,
        composite,
    })
}

impl BlowupTower {
    /// Builds a tower with default coordinate names.
    pub fn new(rank: usize, steps: Vec<TowerStep>) -> Result<Self> {
        tower_build(rank, default_names(rank), steps)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn steps(&self) -> &[TowerStep] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Original coordinates as polynomials in the last chart.
    pub fn composite(&self) -> &[LaurentPolynomial] {
        &self.composite
    }

    /// Coordinate of the last chart cutting out the last exceptional divisor.
    pub fn exceptional_coordinate(&self) -> usize {
        self.steps.last().expect("towers are nonempty").chart
    }

    /// `f` composed with the tower, as a polynomial in the last chart.
    pub fn pullback(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        if f.rank() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: f.rank(),
            });
        }
        f.substitute(&self.composite)
    }

    /// Coordinates of chart `k` (0 = original) as polynomials in the last
    /// chart.
    pub fn chart_images(&self, k: usize) -> Result<Vec<LaurentPolynomial>> {
        let mut images: Vec<LaurentPolynomial> = (0..self.rank)
            .map(|i| LaurentPolynomial::variable(self.rank, i))
            .collect();
        for s in self.steps[k..].iter() {
            let step = s.images();
            images = images
                .iter()
                .map(|p| p.substitute(&step))
                .collect::<Result<_>>()?;
        }
        Ok(images)
    }

    /// The same tower with the last step's chart replaced.
    pub fn with_final_chart(&self, chart: usize) -> Result<Self> {
        let mut steps = self.steps.clone();
        steps.last_mut().expect("towers are nonempty").chart = chart;
        tower_build(self.rank, self.names.clone(), steps)
    }

    /// Order of the last exceptional coordinate in a last-chart polynomial.
    pub fn exceptional_order(&self, g: &LaurentPolynomial) -> Result<i64> {
        g.divisibility_order(self.exceptional_coordinate())
            .ok_or(Error::InfiniteValue)
    }
}

impl fmt::Display for BlowupTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "(")?;
            for (i, c) in s.center.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")/{}", self.names[s.chart])?;
        }
        Ok(())
    }
}

/// `v = q · val_E` for the last exceptional divisor `E` of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialValuation {
    pub tower: BlowupTower,
    pub q: BigInt,
}

impl DivisorialValuation {
    pub fn new(tower: BlowupTower, q: BigInt) -> Result<Self> {
        if q < BigInt::one() {
            return Err(Error::Domain(format!(
                "multiplier q must be positive, got {q}"
            )));
        }
        Ok(Self { tower, q })
    }

    pub fn of(tower: BlowupTower) -> Self {
        Self {
            tower,
            q: BigInt::one(),
        }
    }

    pub fn rank(&self) -> usize {
        self.tower.rank()
    }

    /// `k_v = q · ord_E(K_{Y/X})`.
    pub fn canonical_order(&self) -> Result<BigInt> {
        Ok(&self.q * BigInt::from(relative_canonical_order(&self.tower)?))
    }

    /// `k_v + q(v)`, the codimension of the maximal divisorial set.
    pub fn codimension(&self) -> Result<BigInt> {
        Ok(self.canonical_order()? + &self.q)
    }
}

/// `q` times the largest power of the exceptional coordinate dividing the
/// pullback of `f`.
pub fn val_e(v: &DivisorialValuation, f: &LaurentPolynomial) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::InfiniteValue);
    }
    let pulled = v.tower.pullback(f)?;
    Ok(&v.q * BigInt::from(v.tower.exceptional_order(&pulled)?))
}

/// Order along the last exceptional divisor of the Jacobian determinant of
/// the composite map; for a smooth base this is `ord_E K_{Y/X}`.
pub fn relative_canonical_order(t: &BlowupTower) -> Result<i64> {
    let n = t.rank();
    let jac: Vec<Vec<LaurentPolynomial>> = t
        .composite()
        .iter()
        .map(|p| (0..n).map(|j| p.derivative(j)).collect())
        .collect();
    let det = polynomial_determinant(&jac);
    if det.is_zero() {
        return Err(Error::Internal(
            "composite map has vanishing Jacobian".into(),
        ));
    }
    t.exceptional_order(&det)
}

/// Determinant by cofactor expansion along the first row.
pub fn polynomial_determinant(m: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    let n = m.len();
    let rank = m[0][0].rank();
    match n {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut total = LaurentPolynomial::zero(rank);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPolynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &polynomial_determinant(&minor);
                total = if col % 2 == 0 {
                    &total + &term
                } else {
                    &total - &term
                };
            }
            total
        }
    }
}

/// Tower of origin blow-ups realising the monomial valuation with the given
/// positive weights, returned as `q · val_E` with `q` the weight gcd.
///
/// Supported: rank 1, rank 2 (Euclidean algorithm on the weights), and equal
/// weights in any rank (a single blow-up of the origin).
pub fn monomial_tower(weights: &[i64]) -> Result<DivisorialValuation> {
    let n = weights.len();
    if n == 0 || weights.iter().any(|&w| w < 1) {
        return Err(Error::Domain("weights must be positive".into()));
    }
    let g = weights.iter().fold(0i64, |g, &w| g.gcd(&w));
    let prim: Vec<i64> = weights.iter().map(|w| w / g).collect();
    let steps = if prim.iter().all(|&w| w == 1) {
        vec![TowerStep::origin(n, 0)]
    } else if n == 2 {
        let (mut a, mut b) = (prim[0], prim[1]);
        let mut steps = Vec::new();
        while a > 0 && b > 0 {
            if a <= b {
                steps.push(TowerStep::origin(2, 0));
                b -= a;
            } else {
                steps.push(TowerStep::origin(2, 1));
                a -= b;
            }
        }
        steps
    } else {
        return Err(Error::Unsupported(
            "monomial towers with unequal weights need rank <= 2".into(),
        ));
    };
    DivisorialValuation::new(BlowupTower::new(n, steps)?, BigInt::from(g))
}

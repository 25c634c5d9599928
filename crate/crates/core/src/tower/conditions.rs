//! Generating conditions: finite lists `(f_i, v_i)` such that a divisorial
//! valuation `v` is the smallest valuation with `v(f_i) >= v_i`.
//!
//! Conditions are pushed down one blow-up at a time. If `v` is centred in a
//! chart of the blow-up of a point `c`, a condition `g(w)` upstairs becomes a
//! Laurent polynomial in the translated generators `G_i = z_i - c_i` via
//! `w_j = G_j`, `w_i = G_i / G_j`. Clearing the denominator with `G_j^a`
//! gives a polynomial condition downstairs with value raised by `a · v(G_j)`;
//! adding the conditions `v(G_i) >= v(G_i)` pins the chart.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{val_e, DivisorialValuation, TowerStep};
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingConditions {
    pub rank: usize,
    pub conditions: Vec<(LaurentPolynomial, BigInt)>,
}

impl GeneratingConditions {
    pub fn new(rank: usize) -> Self {
        Self {
            rank,
            conditions: Vec::new(),
        }
    }

    /// Validates ranks and values. Repeated functions are merged, keeping the
    /// larger bound.
    pub fn from_pairs(rank: usize, pairs: Vec<(LaurentPolynomial, BigInt)>) -> Result<Self> {
        let mut out = Self::new(rank);
        for (f, v) in pairs {
            out.push(f, v)?;
        }
        Ok(out)
    }

    pub fn push(&mut self, f: LaurentPolynomial, v: BigInt) -> Result<()> {
        if f.rank() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: f.rank(),
            });
        }
        if f.is_zero() {
            return Err(Error::Input("a condition on the zero function".into()));
        }
        if v.is_negative() {
            return Err(Error::Input(format!("negative condition value {v}")));
        }
        if let Some((_, old)) = self.conditions.iter_mut().find(|(g, _)| *g == f) {
            if *old < v {
                *old = v;
            }
            return Ok(());
        }
        self.conditions.push((f, v));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &LaurentPolynomial> {
        self.conditions.iter().map(|(f, _)| f)
    }

    /// Copy without the condition at `index`.
    pub fn without(&self, index: usize) -> Self {
        let mut c = self.clone();
        c.conditions.remove(index);
        c
    }

    /// True iff `v(f_i) = v_i` for every condition.
    pub fn satisfied_with_equality(&self, v: &DivisorialValuation) -> Result<bool> {
        for (f, value) in &self.conditions {
            if val_e(v, f)? != *value {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Pushes conditions from the chart of `step` down to the chart below it.
///
/// `p[i]` is the value of the generator `z_i - c_i`; the chart of the step
/// must realise the smallest of them.
pub fn push_conditions(
    step: &TowerStep,
    upper: &GeneratingConditions,
    p: &[BigInt],
) -> Result<GeneratingConditions> {
    let n = upper.rank;
    if step.center.len() != n || p.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: if step.center.len() != n {
                step.center.len()
            } else {
                p.len()
            },
        });
    }
    let j = step.chart;
    for (i, pi) in p.iter().enumerate() {
        if *pi < p[j] {
            return Err(Error::ChartCompatibility {
                generator: i + 1,
                value: pi.to_string(),
                chart_value: p[j].to_string(),
            });
        }
    }
    let exponent_images: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] += 1;
            if i != j {
                e[j] -= 1;
            }
            e
        })
        .collect();
    let back: Vec<Rational> = step.center.iter().map(|c| -c).collect();

    let mut out = GeneratingConditions::new(n);
    for (i, g) in step.generators().into_iter().enumerate() {
        out.push(g, p[i].clone())?;
    }
    for (f, v) in &upper.conditions {
        let laurent = f.substitute_monomials(&exponent_images)?;
        let lowest = laurent.min_exponent(j).ok_or(Error::InfiniteValue)?;
        let a = (-lowest).max(0);
        let mut shift = vec![0i64; n];
        shift[j] = a;
        let cleared = laurent.shift(&shift).translate(&back)?;
        out.push(cleared, v + BigInt::from(a) * &p[j])?;
    }
    Ok(out)
}

/// Generating conditions for `v = q · val_E` on the original chart.
///
/// Starts from `(w_j, q)` on the last chart and pushes down through every
/// step; each intermediate chart's generator values come from the tower.
/// The result is checked to hold with equality.
pub fn extract_generating_conditions(v: &DivisorialValuation) -> Result<GeneratingConditions> {
    let t = &v.tower;
    let n = t.rank();
    let steps = t.steps();
    let mut conds = GeneratingConditions::new(n);
    conds.push(
        LaurentPolynomial::variable(n, t.exceptional_coordinate()),
        v.q.clone(),
    )?;
    // Coordinates of chart k in terms of the last chart.
    let mut suffix: Vec<LaurentPolynomial> =
        (0..n).map(|i| LaurentPolynomial::variable(n, i)).collect();
    for k in (0..steps.len()).rev() {
        let step = &steps[k];
        let propagation = |e: Error| Error::Propagation {
            step: k + 1,
            message: e.to_string(),
        };
        let generators: Vec<LaurentPolynomial> = (0..n)
            .map(|i| {
                if i == step.chart {
                    suffix[i].clone()
                } else {
                    &suffix[step.chart] * &suffix[i]
                }
            })
            .collect();
        let p: Vec<BigInt> = generators
            .iter()
            .map(|g| t.exceptional_order(g).map(|o| &v.q * BigInt::from(o)))
            .collect::<Result<_>>()
            .map_err(propagation)?;
        conds = push_conditions(step, &conds, &p).map_err(propagation)?;
        suffix = step
            .images()
            .iter()
            .map(|img| img.substitute(&suffix))
            .collect::<Result<_>>()
            .map_err(propagation)?;
    }
    for (idx, (f, value)) in conds.conditions.iter().enumerate() {
        let actual = val_e(v, f)?;
        if actual != *value {
            return Err(Error::Propagation {
                step: 0,
                message: format!(
                    "condition {} on {f} records {value} but the valuation gives {actual}",
                    idx + 1
                ),
            });
        }
    }
    Ok(conds)
}

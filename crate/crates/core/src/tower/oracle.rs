//! Bounded search for divisorial valuations that satisfy a list of
//! conditions with equality but undercut a target valuation somewhere.
//!
//! Candidates are `q · val_E` for towers of point blow-ups of bounded depth
//! whose centres come from a finite grid, plus monomial valuations with
//! bounded weights. A tower candidate is only extended when its centre could
//! still lead to a valuation meeting every condition: values only grow along
//! a tower, so a centre where some `f_i` already vanishes to order above
//! `v_i`, or does not vanish while `v_i > 0`, is a dead end.
//!
//! The search is exhaustive for the budget and nothing more; an empty
//! violation list says "none found within budget".

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{val_e, DivisorialValuation, GeneratingConditions, TowerStep};
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Rational};

#[derive(Clone, Debug)]
pub struct OracleBudget {
    /// Largest tower depth.
    pub depth: usize,
    /// Centre coordinates tried in each chart.
    pub grid: Vec<Rational>,
    /// Largest weight for monomial candidates.
    pub max_weight: i64,
    /// Largest multiplier `q`.
    pub max_q: i64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            depth: 5,
            grid: (-2..=2).map(|c| Rational::from_integer(c.into())).collect(),
            max_weight: 6,
            max_q: 3,
        }
    }
}

impl OracleBudget {
    pub fn with_depth(depth: usize) -> Self {
        Self {
            depth,
            ..Self::default()
        }
    }

    /// Adds grid values, keeping the grid sorted and free of repeats.
    pub fn extend_grid(mut self, extra: &[Rational]) -> Self {
        self.grid.extend(extra.iter().cloned());
        self.grid.sort();
        self.grid.dedup();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub candidate: String,
    /// Index into the probe list.
    pub probe: usize,
    pub candidate_value: i64,
    pub target_value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSummary {
    pub target: i64,
    /// Smallest value over qualifying candidates.
    pub min_qualifying: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    NoViolationWithinBudget,
    ViolationsFound,
    /// No candidate met the conditions, so nothing was tested.
    Inconclusive,
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleVerdict::NoViolationWithinBudget => "no-violation-within-budget",
            OracleVerdict::ViolationsFound => "violations-found",
            OracleVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub examined: usize,
    pub qualifying: usize,
    pub probes: Vec<ProbeSummary>,
    pub violations: BTreeSet<Violation>,
    pub verdict: OracleVerdict,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    examined: usize,
    qualifying: usize,
    min_qualifying: Vec<Option<i64>>,
    violations: BTreeSet<Violation>,
}

impl Tally {
    fn new(probes: usize) -> Self {
        Self {
            min_qualifying: vec![None; probes],
            ..Self::default()
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.examined += other.examined;
        self.qualifying += other.qualifying;
        for (a, b) in self.min_qualifying.iter_mut().zip(other.min_qualifying) {
            *a = match (*a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
        }
        self.violations.extend(other.violations);
        self
    }
}

/// `x^mono · g` up to a unit at the current centre, with `g` free of
/// monomial factors. Unit factors never change the value of a valuation
/// centred over the point, so they are dropped as soon as they appear.
#[derive(Clone, Debug)]
struct Factored {
    mono: Vec<i64>,
    g: LaurentPolynomial,
}

impl Factored {
    fn new(f: &LaurentPolynomial) -> Self {
        Self::normalized(vec![0; f.rank()], f.clone())
    }

    fn normalized(mut mono: Vec<i64>, g: LaurentPolynomial) -> Self {
        let lows: Vec<i64> = (0..g.rank())
            .map(|i| g.min_exponent(i).unwrap_or(0))
            .collect();
        for (m, l) in mono.iter_mut().zip(&lows) {
            *m += l;
        }
        let neg: Vec<i64> = lows.iter().map(|l| -l).collect();
        Self {
            mono,
            g: g.shift(&neg),
        }
    }

    /// Moves `center` to the origin.
    fn localize(&self, center: &[Rational]) -> Result<Self> {
        let mut mono = self.mono.clone();
        for (m, c) in mono.iter_mut().zip(center) {
            if !c.is_zero() {
                *m = 0;
            }
        }
        let rank = self.g.rank();
        if center.iter().all(Zero::is_zero) {
            return Ok(Self {
                mono,
                g: self.g.clone(),
            });
        }
        if !self.g.evaluate(center)?.is_zero() {
            return Ok(Self {
                mono,
                g: LaurentPolynomial::one(rank),
            });
        }
        Ok(Self::normalized(mono, self.g.translate(center)?))
    }

    fn order(&self) -> i64 {
        self.mono.iter().sum::<i64>() + self.g.min_total_degree().unwrap_or(0)
    }

    /// Pulls back along the chart `chart` of the blow-up of the origin.
    fn blow_up(&self, chart: usize) -> Result<Self> {
        let n = self.mono.len();
        let images: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                e[chart] = 1;
                e
            })
            .collect();
        let mut mono = self.mono.clone();
        mono[chart] = self.mono.iter().sum();
        Ok(Self::normalized(
            mono,
            self.g.substitute_monomials(&images)?,
        ))
    }
}

struct Search<'a> {
    rank: usize,
    targets: Vec<i64>,
    bounds: Vec<i64>,
    budget: &'a OracleBudget,
}

impl Search<'_> {
    /// Records candidates with base values `vals` (conditions then probes)
    /// for every multiplier in budget.
    fn record(&self, label: &dyn Fn(i64) -> String, vals: &[i64], tally: &mut Tally) {
        let (cond, probe) = vals.split_at(self.bounds.len());
        for q in 1..=self.budget.max_q {
            tally.examined += 1;
            if cond.iter().zip(&self.bounds).any(|(v, b)| q * v != *b) {
                continue;
            }
            tally.qualifying += 1;
            for (i, (v, target)) in probe.iter().zip(&self.targets).enumerate() {
                let value = q * v;
                let slot = &mut tally.min_qualifying[i];
                *slot = Some(slot.map_or(value, |m| m.min(value)));
                if value < *target {
                    tally.violations.insert(Violation {
                        candidate: label(q),
                        probe: i,
                        candidate_value: value,
                        target_value: *target,
                    });
                }
            }
        }
    }

    fn centers(&self, exceptional: Option<usize>) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
        for i in 0..self.rank {
            let choices: Vec<Rational> = if Some(i) == exceptional {
                vec![Rational::from_integer(0.into())]
            } else {
                self.budget.grid.clone()
            };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c.clone());
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Explores every centre of the current chart. `funcs` are the
    /// conditions and probes pulled back to this chart.
    fn explore(
        &self,
        path: &[TowerStep],
        exceptional: Option<usize>,
        funcs: &[Factored],
    ) -> Result<Tally> {
        let centers = self.centers(exceptional);
        centers
            .par_iter()
            .map(|center| self.explore_center(path, center, funcs))
            .try_reduce(|| Tally::new(self.targets.len()), |a, b| Ok(a.merge(b)))
    }

    fn explore_center(
        &self,
        path: &[TowerStep],
        center: &[Rational],
        funcs: &[Factored],
    ) -> Result<Tally> {
        let mut tally = Tally::new(self.targets.len());
        let local: Vec<Factored> = funcs
            .iter()
            .map(|f| f.localize(center))
            .collect::<Result<_>>()?;
        let vals: Vec<i64> = local.iter().map(Factored::order).collect();
        let label = |q: i64| tower_label(path, center, q);
        self.record(&label, &vals, &mut tally);

        let dead = vals
            .iter()
            .zip(&self.bounds)
            .any(|(v, b)| v > b || (*v == 0 && *b > 0));
        if dead || path.len() + 1 >= self.budget.depth {
            return Ok(tally);
        }
        for chart in 0..self.rank {
            let pulled: Vec<Factored> = local
                .iter()
                .map(|f| f.blow_up(chart))
                .collect::<Result<_>>()?;
            let mut next = path.to_vec();
            next.push(TowerStep::new(center.to_vec(), chart));
            let sub = self.explore(&next, Some(chart), &pulled)?;
            tally = tally.merge(sub);
        }
        Ok(tally)
    }

    fn monomials(&self, funcs: &[LaurentPolynomial]) -> Tally {
        let mut tally = Tally::new(self.targets.len());
        let w = self.budget.max_weight;
        let mut weights = vec![0i64; self.rank];
        loop {
            if weights.iter().any(|&x| x > 0) {
                let vals: Vec<i64> = funcs
                    .iter()
                    .map(|f| {
                        f.support()
                            .map(|e| e.iter().zip(&weights).map(|(a, b)| a * b).sum())
                            .min()
                            .unwrap_or(i64::MAX)
                    })
                    .collect();
                let label = |q: i64| format!("monomial{weights:?} q={q}");
                self.record(&label, &vals, &mut tally);
            }
            let mut i = 0;
            loop {
                if i == self.rank {
                    return tally;
                }
                weights[i] += 1;
                if weights[i] <= w {
                    break;
                }
                weights[i] = 0;
                i += 1;
            }
        }
    }
}

fn tower_label(path: &[TowerStep], last_center: &[Rational], q: i64) -> String {
    let mut s = String::from("tower[");
    for step in path {
        s.push_str(&format!("{}/{}; ", point(&step.center), step.chart + 1));
    }
    s.push_str(&format!("{}] q={q}", point(last_center)));
    s
}

fn point(c: &[Rational]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Searches for valuations `v'` with `v'(f_i) = v_i` for every condition and
/// `v'(g) < v(g)` for some probe `g`.
pub fn determination_oracle(
    conds: &GeneratingConditions,
    v: &DivisorialValuation,
    probes: &[LaurentPolynomial],
    budget: &OracleBudget,
) -> Result<OracleReport> {
    let n = v.rank();
    if conds.rank != n {
        return Err(Error::Dimension {
            expected: n,
            found: conds.rank,
        });
    }
    if budget.depth == 0 || budget.max_q < 1 || budget.grid.is_empty() {
        return Err(Error::Input(
            "oracle budget must allow at least one candidate".into(),
        ));
    }
    let small = |x: num_bigint::BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::Capability("valuation values beyond i64".into()))
    };
    let targets: Vec<i64> = probes
        .iter()
        .map(|g| val_e(v, g).and_then(small))
        .collect::<Result<_>>()?;
    let bounds: Vec<i64> = conds
        .conditions
        .iter()
        .map(|(_, b)| small(b.clone()))
        .collect::<Result<_>>()?;
    for f in conds.polys().chain(probes) {
        if !f.is_polynomial() {
            return Err(Error::Input(format!("{f} is not a polynomial")));
        }
    }
    let funcs: Vec<Factored> = conds.polys().chain(probes).map(Factored::new).collect();
    let search = Search {
        rank: n,
        targets,
        bounds,
        budget,
    };
    let tally = search
        .explore(&[], None, &funcs)?
        .merge(search.monomials(&conds.polys().chain(probes).cloned().collect::<Vec<_>>()));
    let verdict = if tally.qualifying == 0 {
        OracleVerdict::Inconclusive
    } else if tally.violations.is_empty() {
        OracleVerdict::NoViolationWithinBudget
    } else {
        OracleVerdict::ViolationsFound
    };
    Ok(OracleReport {
        examined: tally.examined,
        qualifying: tally.qualifying,
        probes: search
            .targets
            .iter()
            .zip(tally.min_qualifying)
            .map(|(&target, min_qualifying)| ProbeSummary {
                target,
                min_qualifying,
            })
            .collect(),
        violations: tally.violations,
        verdict,
    })
}

/// Greedily drops conditions whose removal the oracle cannot refute, using
/// every condition function and coordinate as a probe.
pub fn prune_conditions(
    conds: &GeneratingConditions,
    v: &DivisorialValuation,
    budget: &OracleBudget,
) -> Result<GeneratingConditions> {
    let n = conds.rank;
    let mut probes: Vec<LaurentPolynomial> = conds.polys().cloned().collect();
    for i in 0..n {
        let x = LaurentPolynomial::variable(n, i);
        if !probes.contains(&x) {
            probes.push(x);
        }
    }
    let mut kept = conds.clone();
    let mut i = 0;
    while i < kept.len() {
        let trial = kept.without(i);
        let report = determination_oracle(&trial, v, &probes, budget)?;
        if report.verdict == OracleVerdict::NoViolationWithinBudget {
            kept = trial;
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

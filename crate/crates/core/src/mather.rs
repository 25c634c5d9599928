//! Mather discrepancy and codimension of maximal divisorial sets for toric
//! valuations, plus the two monomial-valuation criteria.
//!
//! For `a` in the interior of `σ`, the Mather discrepancy of `val_a` is
//!
//! ```text
//! k̂ = min { Σ ⟨x_i, a⟩ : {x_1..x_n} ⊂ σ∨ ∩ M linearly independent } - q(a)
//! ```
//!
//! and the maximal divisorial set has codimension `k̂ + q(a)`. The minimum
//! is a minimum-weight basis problem in a linear matroid, so the greedy
//! algorithm over the Hilbert basis solves it exactly. An exhaustive search
//! over all semigroup elements up to a pairing bound is provided as an
//! independent check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    content, hilbert_basis, is_independent, pairing, relint_contains, Cone, DualVector,
    LatticeVector, SemigroupBasis,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatherReport {
    pub q: BigInt,
    pub k_mather: BigInt,
    pub codim: BigInt,
    pub argmin_subset: Vec<DualVector>,
}

/// One equality the criteria assert once their hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityWitness {
    pub relation: String,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

impl EqualityWitness {
    fn new(relation: String, lhs: BigInt, rhs: BigInt) -> Self {
        let holds = lhs == rhs;
        Self {
            relation,
            lhs,
            rhs,
            holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub cond_values: bool,
    pub cond_codim: bool,
    pub concluded: bool,
    pub equality_witness: Vec<EqualityWitness>,
    /// Multiplicity `q(v)` forced by the criterion, when it concludes.
    pub q: Option<BigInt>,
    /// The vector of the toric valuation `v` must coincide with.
    pub weights: Option<LatticeVector>,
}

impl CriterionReport {
    pub fn all_equalities_hold(&self) -> bool {
        self.equality_witness.iter().all(|w| w.holds)
    }
}

fn require_interior(c: &Cone, a: &LatticeVector) -> Result<()> {
    if a.rank() != c.rank() {
        return Err(Error::Dimension {
            expected: c.rank(),
            found: a.rank(),
        });
    }
    if a.is_zero() {
        return Err(Error::Precondition("a must be nonzero".into()));
    }
    if !relint_contains(c, a)? {
        return Err(Error::Precondition(format!(
            "{a} is not in the interior of the cone (valuation not centred at the origin)"
        )));
    }
    Ok(())
}

/// Minimum of `Σ ⟨x_i, a⟩` over linearly independent `n`-subsets of
/// `elements`, by the matroid greedy algorithm. Ties are broken
/// lexicographically so the argmin is deterministic.
pub fn min_independent_sum(
    elements: &[DualVector],
    a: &LatticeVector,
) -> Result<(BigInt, Vec<DualVector>)> {
    let n = a.rank();
    let mut weighted: Vec<(BigInt, &DualVector)> = elements
        .iter()
        .map(|u| Ok((pairing(u, a)?, u)))
        .collect::<Result<_>>()?;
    weighted.sort();
    let mut chosen: Vec<DualVector> = Vec::with_capacity(n);
    let mut total = BigInt::zero();
    for (w, u) in weighted {
        chosen.push(u.clone());
        if is_independent(&chosen) {
            total += w;
            if chosen.len() == n {
                return Ok((total, chosen));
            }
        } else {
            chosen.pop();
        }
    }
    Err(Error::Precondition(
        "elements do not span the ambient space".into(),
    ))
}

pub fn mather_discrepancy(c: &Cone, a: &LatticeVector) -> Result<MatherReport> {
    require_interior(c, a)?;
    let basis = hilbert_basis(c)?;
    let (codim, argmin_subset) = min_independent_sum(&basis.elements, a)?;
    let q = content(a)?;
    Ok(MatherReport {
        k_mather: &codim - &q,
        q,
        codim,
        argmin_subset,
    })
}

/// Exhaustive version: enumerates every semigroup element `x` with
/// `⟨x, a⟩ <= bound` and searches all independent `n`-subsets.
pub fn mather_bruteforce_oracle(c: &Cone, a: &LatticeVector, bound: i64) -> Result<MatherReport> {
    require_interior(c, a)?;
    let n = c.rank();
    let a64 = a
        .to_i64s()
        .ok_or_else(|| Error::Capability("a does not fit in 64 bits".into()))?;
    let per_element = bound - (n as i64 - 1);
    if per_element < 1 {
        return Err(Error::Precondition(format!(
            "bound {bound} is below any possible optimum"
        )));
    }

    // Box containing {x ∈ σ∨ : ⟨x,a⟩ <= per_element}: its vertices are 0
    // and per_element / ⟨r,a⟩ · r for the dual rays r.
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for r in c.dual_rays() {
        let w = pairing(r, a)?;
        for i in 0..n {
            let num = BigInt::from(per_element) * &r.coords()[i];
            let (fl, ce) = (num.div_floor(&w), (-(-&num).div_floor(&w)));
            let fl = fl
                .to_i64()
                .ok_or_else(|| Error::Capability("box too large".into()))?;
            let ce = ce
                .to_i64()
                .ok_or_else(|| Error::Capability("box too large".into()))?;
            lo[i] = lo[i].min(fl);
            hi[i] = hi[i].max(ce);
        }
    }
    let volume: i128 = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| (h - l + 1) as i128)
        .product();
    if volume > 50_000_000 {
        return Err(Error::Capability(format!(
            "oracle search box has {volume} points"
        )));
    }

    let rays: Vec<Vec<i64>> = c
        .rays()
        .iter()
        .map(|r| {
            r.to_i64s()
                .ok_or_else(|| Error::Capability("ray too large".into()))
        })
        .collect::<Result<_>>()?;
    let mut elements: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut point = lo.clone();
    'outer: loop {
        let w: i64 = point.iter().zip(&a64).map(|(x, y)| x * y).sum();
        let in_dual = rays
            .iter()
            .all(|r| r.iter().zip(&point).map(|(x, y)| x * y).sum::<i64>() >= 0);
        if in_dual && w <= per_element && point.iter().any(|&x| x != 0) {
            elements.push((w, point.clone()));
        }
        for i in 0..n {
            if point[i] < hi[i] {
                point[i] += 1;
                continue 'outer;
            }
            point[i] = lo[i];
        }
        break;
    }
    elements.sort();

    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut stack: Vec<usize> = Vec::new();
    search_subsets(&elements, n, bound, 0, 0, &mut stack, &mut best);
    let Some((sum, idx)) = best else {
        return Err(Error::Precondition(format!(
            "no independent subset with pairing sum <= {bound}"
        )));
    };
    let q = content(a)?;
    let codim = BigInt::from(sum);
    Ok(MatherReport {
        k_mather: &codim - &q,
        q,
        codim,
        argmin_subset: idx
            .into_iter()
            .map(|i| DualVector::from_i64s(&elements[i].1))
            .collect(),
    })
}

fn search_subsets(
    elements: &[(i64, Vec<i64>)],
    n: usize,
    bound: i64,
    start: usize,
    partial: i64,
    stack: &mut Vec<usize>,
    best: &mut Option<(i64, Vec<usize>)>,
) {
    if stack.len() == n {
        if best
            .as_ref()
            .map_or(partial <= bound, |(b, _)| partial < *b)
        {
            *best = Some((partial, stack.clone()));
        }
        return;
    }
    let remaining = (n - stack.len()) as i64;
    for i in start..elements.len() {
        let w = elements[i].0;
        // Elements are sorted by weight, so every completion costs at least
        // `remaining * w` from here on.
        let floor = partial + remaining * w;
        let limit = best.as_ref().map_or(bound + 1, |(b, _)| *b);
        if floor >= limit {
            break;
        }
        stack.push(i);
        if independent_i64(stack.iter().map(|&j| &elements[j].1)) {
            search_subsets(elements, n, bound, i + 1, partial + w, stack, best);
        }
        stack.pop();
    }
}

fn independent_i64<'a>(rows: impl Iterator<Item = &'a Vec<i64>>) -> bool {
    let mut m: Vec<Vec<i128>> = rows
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let k = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..k).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in (rank + 1)..k {
            if m[r][col] == 0 {
                continue;
            }
            let (pv, rv) = (m[rank][col], m[r][col]);
            for c in 0..cols {
                m[r][c] = m[r][c] * pv - m[rank][c] * rv;
            }
            let g = m[r].iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                for x in m[r].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
    }
    rank == k
}

/// Smooth-case criterion on `C^n` with coordinates `x_i`.
///
/// `vals` holds `(i, v(x_i))` with 0-based `i`, `k_plus_q` is `k_v + q(v)`.
pub fn criterion_smooth(
    vals: &[(usize, BigInt)],
    k_plus_q: &BigInt,
    a: &[BigInt],
) -> Result<CriterionReport> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Domain("empty weight vector".into()));
    }
    if let Some(w) = a.iter().find(|w| !w.is_positive()) {
        return Err(Error::Domain(format!("weights must be positive, got {w}")));
    }
    if !k_plus_q.is_positive() {
        return Err(Error::Domain(format!(
            "k + q must be positive, got {k_plus_q}"
        )));
    }
    let mut by_index: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (i, v) in vals {
        if *i >= n {
            return Err(Error::Input(format!(
                "coordinate index {i} out of range 0..{n}"
            )));
        }
        if by_index.insert(*i, v.clone()).is_some() {
            return Err(Error::Input(format!("duplicate value for coordinate {i}")));
        }
    }
    let values: Vec<BigInt> = (0..n)
        .map(|i| {
            by_index
                .get(&i)
                .cloned()
                .ok_or_else(|| Error::Input(format!("missing value v(x_{})", i + 1)))
        })
        .collect::<Result<_>>()?;

    let sum: BigInt = a.iter().sum();
    let cond_values = values.iter().zip(a).all(|(v, w)| v >= w);
    let cond_codim = &sum >= k_plus_q;
    let concluded = cond_values && cond_codim;

    let mut equality_witness: Vec<EqualityWitness> = values
        .iter()
        .zip(a)
        .enumerate()
        .map(|(i, (v, w))| {
            EqualityWitness::new(
                format!("v(x_{}) = a_{}", i + 1, i + 1),
                v.clone(),
                w.clone(),
            )
        })
        .collect();
    equality_witness.push(EqualityWitness::new(
        "sum a_i = k_v + q(v)".into(),
        sum,
        k_plus_q.clone(),
    ));
    let gcd = a.iter().fold(BigInt::zero(), |g, w| g.gcd(w));

    Ok(CriterionReport {
        cond_values,
        cond_codim,
        concluded,
        equality_witness,
        q: concluded.then_some(gcd),
        weights: concluded.then(|| LatticeVector::new(a.to_vec())),
    })
}

/// Toric criterion on `X = Spec C[σ∨ ∩ M]`. `vals` must give `v(u_j)` for
/// every element of `gens`.
pub fn criterion_toric(
    c: &Cone,
    gens: &SemigroupBasis,
    vals: &[(DualVector, BigInt)],
    k_plus_q: &BigInt,
    a: &LatticeVector,
) -> Result<CriterionReport> {
    require_interior(c, a)?;
    let lookup: BTreeMap<&DualVector, &BigInt> = vals.iter().map(|(u, v)| (u, v)).collect();
    for (u, _) in vals {
        if !gens.elements.contains(u) {
            return Err(Error::Input(format!(
                "{u} is not one of the given generators"
            )));
        }
    }
    let mut cond_values = true;
    let mut equality_witness = Vec::new();
    for u in gens.iter() {
        let v = lookup
            .get(u)
            .ok_or_else(|| Error::Input(format!("missing value v(x^{u})")))?;
        let target = pairing(u, a)?;
        if **v < target {
            cond_values = false;
        }
        equality_witness.push(EqualityWitness::new(
            format!("v(x^{u}) = <{u},a>"),
            (*v).clone(),
            target,
        ));
    }
    let (min_sum, _) = min_independent_sum(&gens.elements, a)?;
    let cond_codim = k_plus_q <= &min_sum;
    equality_witness.push(EqualityWitness::new(
        "k_v + q(v) = min sum <x_i,a>".into(),
        k_plus_q.clone(),
        min_sum,
    ));
    let concluded = cond_values && cond_codim;
    Ok(CriterionReport {
        cond_values,
        cond_codim,
        concluded,
        equality_witness,
        q: if concluded { Some(content(a)?) } else { None },
        weights: concluded.then(|| a.clone()),
    })
}

/// Hilbert basis, the values `⟨u, a⟩` on it, and `k + q`.
pub type ToricSelfData = (SemigroupBasis, Vec<(DualVector, BigInt)>, BigInt);

/// `val_a`'s own data, ready to feed into [`criterion_toric`].
pub fn toric_self_data(c: &Cone, a: &LatticeVector) -> Result<ToricSelfData> {
    let basis = hilbert_basis(c)?;
    let vals = basis
        .iter()
        .map(|u| Ok((u.clone(), pairing(u, a)?)))
        .collect::<Result<Vec<_>>>()?;
    let report = mather_discrepancy(c, a)?;
    Ok((basis, vals, report.codim))
}

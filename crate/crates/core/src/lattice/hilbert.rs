//! Hilbert bases of `σ∨ ∩ M`.
//!
//! Every lattice point of `σ∨` lies in some simplicial subcone spanned by `n`
//! independent dual rays, and is an integer combination of those rays plus a
//! lattice point of their half-open fundamental parallelepiped. The rays and
//! all parallelepiped points therefore generate the semigroup; the Hilbert
//! basis is the set of irreducible elements among them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{linalg, Cone, DualVector};
use crate::error::{Error, Result};

/// Largest ambient rank the enumeration is declared for.
pub const MAX_RANK: usize = 4;

#[derive(Clone, Debug)]
pub struct HilbertConfig {
    /// Fail when the basis has more elements than this.
    pub max_elements: usize,
    /// Fail when the parallelepipeds hold more lattice points than this.
    pub max_candidates: u64,
}

impl Default for HilbertConfig {
    fn default() -> Self {
        Self {
            max_elements: 10_000,
            max_candidates: 2_000_000,
        }
    }
}

/// The Hilbert basis of `σ∨ ∩ M`, deduplicated and lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupBasis {
    pub elements: Vec<DualVector>,
}

impl SemigroupBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DualVector> {
        self.elements.iter()
    }
}

pub fn hilbert_basis(c: &Cone) -> Result<SemigroupBasis> {
    hilbert_basis_with(c, &HilbertConfig::default())
}

pub fn hilbert_basis_with(c: &Cone, config: &HilbertConfig) -> Result<SemigroupBasis> {
    let n = c.rank();
    if n > MAX_RANK {
        return Err(Error::Capability(format!(
            "Hilbert basis enumeration supports rank <= {MAX_RANK}, got {n}"
        )));
    }
    let rays: Vec<Vec<BigInt>> = c.dual_rays().iter().map(|r| r.coords().to_vec()).collect();
    let mut generators: BTreeSet<Vec<BigInt>> = rays.iter().cloned().collect();
    let mut budget = config.max_candidates;

    for subset in linalg::subsets(rays.len(), n) {
        let cols: Vec<Vec<BigInt>> = subset.iter().map(|&i| rays[i].clone()).collect();
        if linalg::rank(&cols) != n {
            continue;
        }
        let diag = linalg::hermite_diagonal(&cols);
        let volume: BigInt = diag.iter().product();
        let volume = volume.to_u64().filter(|&v| v <= budget).ok_or_else(|| {
            Error::Capability(format!(
                "parallelepiped enumeration exceeds {} lattice points",
                config.max_candidates
            ))
        })?;
        budget -= volume;
        for rep in box_points(&diag) {
            let lambda = linalg::solve_columns(&cols, &rep)
                .ok_or_else(|| Error::Internal("singular simplicial cone".into()))?;
            let mut point = rep.clone();
            for (coef, col) in lambda.iter().zip(&cols) {
                let fl = coef.floor().to_integer();
                if fl.is_zero() {
                    continue;
                }
                for (p, r) in point.iter_mut().zip(col) {
                    *p -= &fl * r;
                }
            }
            if point.iter().any(|x| !x.is_zero()) {
                generators.insert(point);
            }
        }
    }

    let generators: Vec<DualVector> = generators.into_iter().map(DualVector::new).collect();
    let mut elements = Vec::new();
    for x in &generators {
        let mut reducible = false;
        for g in &generators {
            if g == x {
                continue;
            }
            let diff = x.sub(g);
            if !diff.is_zero() && c.dual_contains(&diff)? {
                reducible = true;
                break;
            }
        }
        if !reducible {
            elements.push(x.clone());
        }
    }
    if elements.len() > config.max_elements {
        return Err(Error::Capability(format!(
            "Hilbert basis has {} elements, above the cap of {}",
            elements.len(),
            config.max_elements
        )));
    }
    elements.sort();
    Ok(SemigroupBasis { elements })
}

/// All integer vectors `k` with `0 <= k_i < diag_i`.
fn box_points(diag: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for d in diag {
        let mut next = Vec::new();
        for prefix in &out {
            let mut k = BigInt::zero();
            while &k < d {
                let mut v: Vec<BigInt> = prefix.clone();
                v.push(k.clone());
                next.push(v);
                k += BigInt::one();
            }
        }
        out = next;
    }
    out
}

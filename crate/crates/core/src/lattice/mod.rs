//! Exact lattice and cone arithmetic.
//!
//! `N` is the lattice of one-parameter subgroups (where cones and the
//! valuation vectors `a` live), `M = N^*` the character lattice (exponents of
//! monomials). Both are `Z^n` with arbitrary-precision coordinates.

pub mod hilbert;
pub mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use hilbert::{hilbert_basis, hilbert_basis_with, HilbertConfig, SemigroupBasis};

macro_rules! lattice_newtype {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Vec<BigInt>);

        impl $name {
            pub fn new(coords: Vec<BigInt>) -> Self {
                Self(coords)
            }

            pub fn from_i64s(coords: &[i64]) -> Self {
                Self(coords.iter().map(|&c| BigInt::from(c)).collect())
            }

            pub fn zero(rank: usize) -> Self {
                Self(vec![BigInt::zero(); rank])
            }

            pub fn coords(&self) -> &[BigInt] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<BigInt> {
                self.0
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|c| c.is_zero())
            }

            pub fn scaled(&self, k: &BigInt) -> Self {
                Self(self.0.iter().map(|c| c * k).collect())
            }

            pub fn add(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            /// The vector divided by the gcd of its entries.
            pub fn primitive(&self) -> Self {
                Self(linalg::primitive(&self.0))
            }

            /// Coordinates as `i64`, if they all fit.
            pub fn to_i64s(&self) -> Option<Vec<i64>> {
                use num_traits::ToPrimitive;
                self.0.iter().map(|c| c.to_i64()).collect()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

lattice_newtype!(LatticeVector);
lattice_newtype!(DualVector);

impl DualVector {
    /// The same coordinates read as a point of `N` (used when dualising twice).
    pub fn as_lattice(&self) -> LatticeVector {
        LatticeVector(self.0.clone())
    }
}

impl LatticeVector {
    pub fn as_dual(&self) -> DualVector {
        DualVector(self.0.clone())
    }
}

/// The pairing `<u, a>` between `M` and `N`.
pub fn pairing(u: &DualVector, a: &LatticeVector) -> Result<BigInt> {
    if u.rank() != a.rank() {
        return Err(Error::Dimension {
            expected: u.rank(),
            found: a.rank(),
        });
    }
    Ok(linalg::dot(u.coords(), a.coords()))
}

/// Lattice content: the largest `k` with `a ∈ kN`.
pub fn content(a: &LatticeVector) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::Domain("content of the zero vector".into()));
    }
    Ok(a.coords().iter().fold(BigInt::zero(), |g, c| g.gcd(c)))
}

/// True iff the vectors are linearly independent over Q.
pub fn is_independent(vectors: &[DualVector]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return false;
    }
    linalg::rank(&rows) == rows.len()
}

/// A full-dimensional, strongly convex rational polyhedral cone `σ ⊂ N_R`
/// together with its dual cone `σ∨ ⊂ M_R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    dual_rays: Vec<DualVector>,
}

impl Cone {
    /// Builds the cone generated by `rays`. Zero generators are ignored.
    pub fn new(rays: Vec<LatticeVector>) -> Result<Self> {
        let Some(first) = rays.first() else {
            return Err(Error::Input("cone needs at least one ray".into()));
        };
        let rank = first.rank();
        if rank == 0 {
            return Err(Error::Input("ambient rank must be at least 1".into()));
        }
        if let Some(bad) = rays.iter().find(|r| r.rank() != rank) {
            return Err(Error::Dimension {
                expected: rank,
                found: bad.rank(),
            });
        }
        let rays: Vec<LatticeVector> = rays.into_iter().filter(|r| !r.is_zero()).collect();
        let rows: Vec<Vec<BigInt>> = rays.iter().map(|r| r.coords().to_vec()).collect();
        if linalg::rank(&rows) != rank {
            return Err(Error::Unsupported("cone is not full-dimensional".into()));
        }
        let dual_rays = facet_normals(&rows, rank)
            .into_iter()
            .map(DualVector)
            .collect::<Vec<_>>();
        let dual_rows: Vec<Vec<BigInt>> = dual_rays.iter().map(|r| r.coords().to_vec()).collect();
        if linalg::rank(&dual_rows) != rank {
            return Err(Error::Unsupported(
                "cone contains a line (dual cone is not full-dimensional)".into(),
            ));
        }
        Ok(Cone {
            rank,
            rays,
            dual_rays,
        })
    }

    pub fn from_i64_rays(rays: &[&[i64]]) -> Result<Self> {
        Self::new(rays.iter().map(|r| LatticeVector::from_i64s(r)).collect())
    }

    /// The positive orthant of `N_R = R^n`, whose toric variety is `C^n`.
    pub fn orthant(rank: usize) -> Self {
        let rays = (0..rank)
            .map(|i| {
                let mut v = vec![0i64; rank];
                v[i] = 1;
                LatticeVector::from_i64s(&v)
            })
            .collect();
        Self::new(rays).expect("orthant is full-dimensional and pointed")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Primitive minimal generators of `σ∨`, lexicographically sorted.
    pub fn dual_rays(&self) -> &[DualVector] {
        &self.dual_rays
    }

    /// `σ∨` viewed as a cone in its own right (coordinates reinterpreted).
    pub fn dual(&self) -> Result<Cone> {
        Cone::new(self.dual_rays.iter().map(DualVector::as_lattice).collect())
    }

    /// `a ∈ σ`.
    pub fn contains(&self, a: &LatticeVector) -> Result<bool> {
        for u in &self.dual_rays {
            if pairing(u, a)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `u ∈ σ∨`, checked against the generators of `σ` directly.
    pub fn dual_contains(&self, u: &DualVector) -> Result<bool> {
        for r in &self.rays {
            if pairing(u, r)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Minimal generating rays of the dual cone, each primitive.
pub fn dual_cone(c: &Cone) -> Vec<DualVector> {
    c.dual_rays.clone()
}

/// Inner facet normals of the full-dimensional cone spanned by `rows`.
fn facet_normals(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    if n == 1 {
        let pos = rows.iter().any(|r| r[0].is_positive());
        let neg = rows.iter().any(|r| r[0].is_negative());
        if pos && !neg {
            normals.push(vec![BigInt::from(1)]);
        } else if neg && !pos {
            normals.push(vec![BigInt::from(-1)]);
        }
        return normals;
    }
    for subset in linalg::subsets(rows.len(), n - 1) {
        let chosen: Vec<Vec<BigInt>> = subset.iter().map(|&i| rows[i].clone()).collect();
        if linalg::rank(&chosen) != n - 1 {
            continue;
        }
        let mut normal = linalg::normal_vector(&chosen, n);
        let pairs: Vec<BigInt> = rows.iter().map(|r| linalg::dot(r, &normal)).collect();
        if pairs.iter().any(|p| p.is_negative()) {
            if pairs.iter().any(|p| p.is_positive()) {
                continue;
            }
            normal = normal.into_iter().map(|x| -x).collect();
        }
        let normal = linalg::primitive(&normal);
        if !normals.contains(&normal) {
            normals.push(normal);
        }
    }
    normals.sort();
    normals
}

/// True iff `⟨u, a⟩ > 0` for every nonzero `u ∈ σ∨ ∩ M`, i.e. `a` lies in the
/// relative interior of `σ`. Positivity on the dual rays is equivalent to
/// positivity on the Hilbert basis, since the rays are basis elements and
/// generate it over Q≥0.
pub fn relint_contains(c: &Cone, a: &LatticeVector) -> Result<bool> {
    if a.rank() != c.rank() {
        return Err(Error::Dimension {
            expected: c.rank(),
            found: a.rank(),
        });
    }
    for u in c.dual_rays() {
        if !pairing(u, a)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

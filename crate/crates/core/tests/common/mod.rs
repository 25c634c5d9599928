//! Independent reference computations shared by the integration tests.
//! Nothing here calls the library routine it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use divisorial::poly::{LaurentPolynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Inverse of a square integer matrix over the rationals (Gauss-Jordan).
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let piv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Every `n`-subset of indices `0..m`.
pub fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    if m < n {
        return vec![];
    }
    let mut out = subsets(m - 1, n);
    for mut s in subsets(m - 1, n - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

/// Hilbert basis of the dual semigroup by brute force: all lattice points
/// `u` with `⟨u, r⟩ >= 0` for every ray and `0 < ⟨u, h⟩ <= height`, where
/// `h` is the sum of the rays, keeping the irreducible ones.
///
/// Any decomposition of such a point stays below the same height, so the
/// result is exactly the set of basis elements of height at most `height`.
pub fn brute_hilbert(rays: &[Vec<i64>], height: i64) -> BTreeSet<Vec<i64>> {
    let n = rays[0].len();
    let h: Vec<i64> = (0..n).map(|i| rays.iter().map(|r| r[i]).sum()).collect();
    // Box bound from any invertible n-subset R of rays: u = R^{-1} w with
    // w = (⟨u, r⟩) >= 0 and Σ w <= height.
    let sub = subsets(rays.len(), n)
        .into_iter()
        .find_map(|s| inverse(&s.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>()))
        .expect("cone is full-dimensional");
    let mut bound = Rational::zero();
    for row in &sub {
        for x in row {
            if x.abs() > bound {
                bound = x.abs();
            }
        }
    }
    let b = (bound * Rational::from_integer(height.into()))
        .ceil()
        .to_integer();
    let b: i64 = b.try_into().unwrap();

    let mut points = Vec::new();
    let mut u = vec![-b; n];
    loop {
        let inside = rays.iter().all(|r| dot(&u, r) >= 0);
        let ht = dot(&u, &h);
        if inside && ht > 0 && ht <= height {
            points.push(u.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return irreducible(&points, rays);
            }
            u[i] += 1;
            if u[i] <= b {
                break;
            }
            u[i] = -b;
            i += 1;
        }
    }
}

fn irreducible(points: &[Vec<i64>], rays: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let set: BTreeSet<&Vec<i64>> = points.iter().collect();
    points
        .iter()
        .filter(|x| {
            !points.iter().any(|y| {
                let d: Vec<i64> = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                y != *x
                    && d.iter().any(|&v| v != 0)
                    && set.contains(&d)
                    && rays.iter().all(|r| dot(&d, r) >= 0)
            })
        })
        .cloned()
        .collect()
}

/// Random polynomial with `terms` terms, exponents in `0..=deg`, small
/// nonzero integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, rank: usize, terms: usize, deg: i64) -> LaurentPolynomial {
    loop {
        let t: Vec<(Vec<i64>, Rational)> = (0..terms)
            .map(|_| {
                let e = (0..rank).map(|_| rng.gen_range(0..=deg)).collect();
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-4..=4);
                }
                (e, Rational::from_integer(c.into()))
            })
            .collect();
        let f = LaurentPolynomial::from_terms(rank, t).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random Laurent polynomial with exponents in `-deg..=deg`.
pub fn random_laurent(
    rng: &mut ChaCha8Rng,
    rank: usize,
    terms: usize,
    deg: i64,
) -> LaurentPolynomial {
    loop {
        let t: Vec<(Vec<i64>, Rational)> = (0..terms)
            .map(|_| {
                let e = (0..rank).map(|_| rng.gen_range(-deg..=deg)).collect();
                let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                (e, Rational::from_integer(c.into()))
            })
            .collect();
        let f = LaurentPolynomial::from_terms(rank, t).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `min ⟨e, a⟩` over the support, straight from the definition.
pub fn naive_weighted_order(f: &LaurentPolynomial, a: &[i64]) -> i64 {
    f.support().map(|e| dot(e, a)).min().unwrap()
}

/// Step map of one blow-up, written out independently: old coordinates as
/// polynomials in the new chart.
pub fn step_map(rank: usize, center: &[Rational], chart: usize) -> Vec<LaurentPolynomial> {
    (0..rank)
        .map(|i| {
            let mut e = vec![0i64; rank];
            e[chart] = 1;
            if i != chart {
                e[i] = 1;
            }
            let mono = LaurentPolynomial::monomial(e, Rational::one());
            &mono + &LaurentPolynomial::constant(rank, center[i].clone())
        })
        .collect()
}

/// Largest power of `x_var` dividing `g`, by repeated exact division.
pub fn divisibility(g: &LaurentPolynomial, var: usize) -> i64 {
    let mut k = 0;
    let mut p = g.clone();
    loop {
        let mut q: Vec<(Vec<i64>, Rational)> = Vec::new();
        for (e, c) in p.terms() {
            if e[var] < 1 {
                return k;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            q.push((ne, c.clone()));
        }
        p = LaurentPolynomial::from_terms(p.rank(), q).unwrap();
        k += 1;
    }
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

//! Mather discrepancy `k` and codimension `k + q` of toric valuations,
//! checked against the exhaustive search.

use divisorial::lattice::{Cone, LatticeVector};
use divisorial::mather::{mather_bruteforce_oracle, mather_discrepancy};

fn main() -> divisorial::error::Result<()> {
    let cases: Vec<(&str, Cone, Vec<i64>)> = vec![
        ("quadrant", Cone::orthant(2), vec![2, 3]),
        ("quadrant", Cone::orthant(2), vec![4, 6]),
        ("A1", Cone::from_i64_rays(&[&[0, 1], &[2, -1]])?, vec![1, 0]),
        ("A1", Cone::from_i64_rays(&[&[0, 1], &[2, -1]])?, vec![2, 1]),
        ("A2", Cone::from_i64_rays(&[&[0, 1], &[3, -1]])?, vec![1, 1]),
        ("octant", Cone::orthant(3), vec![1, 2, 3]),
    ];
    for (name, c, a) in cases {
        let a = LatticeVector::from_i64s(&a);
        let r = mather_discrepancy(&c, &a)?;
        let brute = mather_bruteforce_oracle(&c, &a, 20)?;
        let argmin: Vec<String> = r.argmin_subset.iter().map(|u| u.to_string()).collect();
        println!(
            "{name:8} a={:10} q={} k={} codim={}  via {}  (exhaustive: {})",
            a.to_string(),
            r.q,
            r.k_mather,
            r.codim,
            argmin.join(" + "),
            brute.codim
        );
    }
    Ok(())
}

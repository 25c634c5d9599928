//! Dual cones, Hilbert bases and interior tests for a few small cones.

use divisorial::lattice::{hilbert_basis, relint_contains, Cone, LatticeVector};

fn main() -> divisorial::error::Result<()> {
    let cones = [
        ("quadrant", Cone::orthant(2)),
        ("A1", Cone::from_i64_rays(&[&[0, 1], &[2, -1]])?),
        ("A3", Cone::from_i64_rays(&[&[0, 1], &[4, -1]])?),
        (
            "cone over a square",
            Cone::from_i64_rays(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]])?,
        ),
    ];
    for (name, c) in &cones {
        println!("{name}");
        let rays: Vec<String> = c.rays().iter().map(|r| r.to_string()).collect();
        println!("  rays        {}", rays.join(" "));
        let dual: Vec<String> = c.dual_rays().iter().map(|u| u.to_string()).collect();
        println!("  dual rays   {}", dual.join(" "));
        let basis: Vec<String> = hilbert_basis(c)?.iter().map(|u| u.to_string()).collect();
        println!("  hilbert     {}", basis.join(" "));
    }

    let a1 = &cones[1].1;
    for a in [[1, 0], [1, 1], [0, 1]] {
        let v = LatticeVector::from_i64s(&a);
        println!("A1: {v} interior? {}", relint_contains(a1, &v)?);
    }
    Ok(())
}

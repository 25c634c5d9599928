//! Building point blow-up towers and evaluating `q · val_E`.

use divisorial::fixtures::{
    cubic, cubic_valuation, cusp, plane_valuation, second_key, PlaneExample, PlaneParams,
};
use divisorial::poly::{default_names, LaurentPolynomial};
use divisorial::tower::{monomial_tower, relative_canonical_order, val_e, BlowupTower, TowerStep};

fn main() -> divisorial::error::Result<()> {
    let t = BlowupTower::new(
        2,
        vec![
            TowerStep::origin(2, 0),
            TowerStep::origin(2, 1),
            TowerStep::origin(2, 0),
        ],
    )?;
    let names = default_names(2);
    println!("tower {t}");
    for (name, image) in names.iter().zip(t.composite()) {
        println!("  {name} = {}", image.display_with(&names));
    }
    println!("  ord_E K = {}", relative_canonical_order(&t)?);

    for params in [PlaneParams::default(), PlaneParams::new(2, -3)] {
        println!("lambda={} mu={}", params.lambda, params.mu);
        let x = LaurentPolynomial::variable(2, 0);
        let y = LaurentPolynomial::variable(2, 1);
        for ex in PlaneExample::ALL {
            let v = plane_valuation(ex, &params);
            println!(
                "  {ex:3} v(x)={} v(y)={} v(cusp)={} v(key)={} k={}",
                val_e(&v, &x)?,
                val_e(&v, &y)?,
                val_e(&v, &cusp(&params))?,
                val_e(&v, &second_key(&params))?,
                v.canonical_order()?
            );
        }
    }

    for n in [3, 6, 10] {
        let v = cubic_valuation(n);
        let vals: Vec<String> = (0..3)
            .map(|i| val_e(&v, &LaurentPolynomial::variable(3, i)).map(|x| x.to_string()))
            .collect::<Result<_, _>>()?;
        println!(
            "cubic tower n={n}: v(x,y,z)=({}) v(cubic)={}",
            vals.join(","),
            val_e(&v, &cubic())?
        );
    }

    let v = monomial_tower(&[4, 6])?;
    println!(
        "weights (4,6): {} steps, q={}, k={}",
        v.tower.depth(),
        v.q,
        v.canonical_order()?
    );
    Ok(())
}

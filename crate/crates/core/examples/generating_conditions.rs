//! Extracting generating conditions from a tower, pruning them, and
//! probing them with the determination search.

use divisorial::fixtures::{cusp, plane_conditions, plane_valuation, PlaneExample, PlaneParams};
use divisorial::poly::{default_names, LaurentPolynomial};
use divisorial::tower::oracle::prune_conditions;
use divisorial::tower::{
    determination_oracle, extract_generating_conditions, GeneratingConditions, OracleBudget,
};

fn print(label: &str, c: &GeneratingConditions) {
    let names = default_names(c.rank);
    let parts: Vec<String> = c
        .conditions
        .iter()
        .map(|(f, v)| format!("v({}) = {v}", f.display_with(&names)))
        .collect();
    println!("{label}: {}", parts.join(", "));
}

fn main() -> divisorial::error::Result<()> {
    let params = PlaneParams::default();
    let budget = OracleBudget::with_depth(4);
    for ex in PlaneExample::ALL {
        let v = plane_valuation(ex, &params);
        let raw = extract_generating_conditions(&v)?;
        print(&format!("{ex} extracted"), &raw);
        print(
            &format!("{ex} pruned   "),
            &prune_conditions(&raw, &v, &budget)?,
        );
    }

    let x = LaurentPolynomial::variable(2, 0);
    let y = LaurentPolynomial::variable(2, 1);
    let probes = [x.clone(), y.clone(), cusp(&params), &y.pow(2) + &x.pow(3)];
    let v4 = plane_valuation(PlaneExample::IV, &params);
    for (label, conds) in [
        (
            "v4, listed conditions",
            plane_conditions(PlaneExample::IV, &params),
        ),
        (
            "v4, cusp condition dropped",
            plane_conditions(PlaneExample::IV, &params).without(2),
        ),
    ] {
        let r = determination_oracle(&conds, &v4, &probes, &OracleBudget::with_depth(5))?;
        println!(
            "{label}: {} (examined {}, qualifying {})",
            r.verdict, r.examined, r.qualifying
        );
        for w in r.violations.iter().take(3) {
            println!(
                "    {} gives probe {} value {} < {}",
                w.candidate, w.probe, w.candidate_value, w.target_value
            );
        }
    }
    Ok(())
}

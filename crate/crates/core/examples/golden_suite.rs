//! Recomputes every worked value and prints the pass/fail table.

use divisorial::fixtures::golden_rows;

fn main() {
    let rows = golden_rows();
    for r in &rows {
        println!(
            "{} {:50} {}",
            if r.pass() { "PASS" } else { "FAIL" },
            r.name,
            r.computed
        );
    }
    let passed = rows.iter().filter(|r| r.pass()).count();
    println!("{passed}/{} passed", rows.len());
    if passed != rows.len() {
        std::process::exit(1);
    }
}

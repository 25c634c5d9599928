//! Worked examples: the plane towers `v1`…`v5'`, the cubic tower over `C^3`,
//! and the `A_1` / `A_2` cones, with their published values.

use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::lattice::{hilbert_basis, Cone, LatticeVector};
use crate::mather::mather_discrepancy;
use crate::poly::{default_names, LaurentPolynomial, Rational};
use crate::tower::{
    relative_canonical_order, val_e, BlowupTower, DivisorialValuation, GeneratingConditions,
    TowerStep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaneExample {
    I,
    II,
    III,
    IV,
    V,
    VPrime,
}

impl PlaneExample {
    pub const ALL: [PlaneExample; 6] = [
        PlaneExample::I,
        PlaneExample::II,
        PlaneExample::III,
        PlaneExample::IV,
        PlaneExample::V,
        PlaneExample::VPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlaneExample::I => "v1",
            PlaneExample::II => "v2",
            PlaneExample::III => "v3",
            PlaneExample::IV => "v4",
            PlaneExample::V => "v5",
            PlaneExample::VPrime => "v5'",
        }
    }

    pub fn depth(self) -> usize {
        match self {
            PlaneExample::I => 1,
            PlaneExample::II => 2,
            PlaneExample::III => 3,
            PlaneExample::IV => 4,
            PlaneExample::V | PlaneExample::VPrime => 5,
        }
    }
}

impl fmt::Display for PlaneExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Nonzero parameters of the plane examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneParams {
    pub lambda: Rational,
    pub mu: Rational,
}

impl PlaneParams {
    pub fn new(lambda: i64, mu: i64) -> Self {
        assert!(lambda != 0 && mu != 0, "parameters must be nonzero");
        Self {
            lambda: Rational::from_integer(lambda.into()),
            mu: Rational::from_integer(mu.into()),
        }
    }
}

impl Default for PlaneParams {
    fn default() -> Self {
        Self::new(1, 1)
    }
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

/// Tower steps for a plane example (charts: 0 = x, 1 = y).
pub fn plane_steps(ex: PlaneExample, params: &PlaneParams) -> Vec<TowerStep> {
    let all = [
        TowerStep::origin(2, 0),
        TowerStep::origin(2, 1),
        TowerStep::origin(2, 0),
        TowerStep::new(vec![zero(), params.lambda.clone()], 0),
    ];
    let mut steps = all[..ex.depth().min(4)].to_vec();
    match ex {
        PlaneExample::V => steps.push(TowerStep::origin(2, 0)),
        PlaneExample::VPrime => steps.push(TowerStep::new(vec![zero(), params.mu.clone()], 0)),
        _ => {}
    }
    steps
}

pub fn plane_valuation(ex: PlaneExample, params: &PlaneParams) -> DivisorialValuation {
    let t = BlowupTower::new(2, plane_steps(ex, params)).expect("fixture towers are valid");
    DivisorialValuation::of(t)
}

pub fn x() -> LaurentPolynomial {
    LaurentPolynomial::variable(2, 0)
}

pub fn y() -> LaurentPolynomial {
    LaurentPolynomial::variable(2, 1)
}

/// `y^2 - λ x^3`.
pub fn cusp(params: &PlaneParams) -> LaurentPolynomial {
    &y().pow(2) - &x().pow(3).scale(&params.lambda)
}

/// `y^3 - λ x^3 y - μ x^5`.
pub fn second_key(params: &PlaneParams) -> LaurentPolynomial {
    let lx3y = (&x().pow(3) * &y()).scale(&params.lambda);
    let mx5 = x().pow(5).scale(&params.mu);
    &(&y().pow(3) - &lx3y) - &mx5
}

/// The published generator list of each plane example.
pub fn plane_conditions(ex: PlaneExample, params: &PlaneParams) -> GeneratingConditions {
    let v = |k: i64| BigInt::from(k);
    let pairs = match ex {
        PlaneExample::I => vec![(x(), v(1)), (y(), v(1))],
        PlaneExample::II => vec![(x(), v(1)), (y(), v(2))],
        PlaneExample::III => vec![(x(), v(2)), (y(), v(3))],
        PlaneExample::IV => vec![(x(), v(2)), (y(), v(3)), (cusp(params), v(7))],
        PlaneExample::V => vec![(x(), v(2)), (y(), v(3)), (cusp(params), v(8))],
        PlaneExample::VPrime => vec![
            (x(), v(2)),
            (y(), v(3)),
            (cusp(params), v(7)),
            (second_key(params), v(11)),
        ],
    };
    GeneratingConditions::from_pairs(2, pairs).expect("fixture conditions are valid")
}

/// Cubic `x^2 z + x y^2 + y^3` on `C^3`.
pub fn cubic() -> LaurentPolynomial {
    LaurentPolynomial::from_int_terms(3, &[(&[2, 0, 1], 1), (&[1, 2, 0], 1), (&[0, 3, 0], 1)])
}

/// Tower following the cubic curve on the first exceptional divisor: blow up
/// the origin, pass to the point `(1:0:0)`, then keep blowing up where the
/// strict transform of the curve meets the newest exceptional divisor.
/// In the `y`-charts the curve is `x = 0, z = -y - y^2`, then `z = -1 - y`,
/// then `z = -1`, then `z = 0`. The closed formulas need `n >= 3`.
pub fn cubic_steps(n: usize) -> Vec<TowerStep> {
    assert!(n >= 2, "the cubic tower needs at least two blow-ups");
    let mut steps = vec![TowerStep::origin(3, 0)];
    for k in 2..=n {
        if k == 4 || k == 5 {
            steps.push(TowerStep::from_ints(&[0, 0, -1], 1));
        } else {
            steps.push(TowerStep::origin(3, 1));
        }
    }
    steps
}

pub fn cubic_valuation(n: usize) -> DivisorialValuation {
    let t = BlowupTower::new(3, cubic_steps(n)).expect("fixture towers are valid");
    DivisorialValuation::of(t)
}

/// `v(x) = n-1`, `v(y) = n`, `v(z) = n+1`, `v(cubic) = 4(n-1)`.
pub fn cubic_values(n: usize) -> Vec<(LaurentPolynomial, i64)> {
    let n = n as i64;
    vec![
        (LaurentPolynomial::variable(3, 0), n - 1),
        (LaurentPolynomial::variable(3, 1), n),
        (LaurentPolynomial::variable(3, 2), n + 1),
        (cubic(), 4 * (n - 1)),
    ]
}

/// Cone of the `A_k` surface singularity, rays `(0,1)` and `(k+1,-1)`.
pub fn a_cone(k: i64) -> Cone {
    Cone::from_i64_rays(&[&[0, 1], &[k + 1, -1]]).expect("A_k cones are valid")
}

/// One line of the golden table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub name: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
}

impl GoldenRow {
    pub fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

fn row(name: String, anchor: &str, expected: impl ToString, computed: Result<String>) -> GoldenRow {
    GoldenRow {
        name,
        anchor: anchor.to_string(),
        expected: expected.to_string(),
        computed: computed.unwrap_or_else(|e| format!("error: {e}")),
    }
}

/// Every worked value: plane towers for two parameter choices, the cubic
/// tower at `n = 10`, canonical orders, and the `A_1` / quadrant lattice data.
pub fn golden_rows() -> Vec<GoldenRow> {
    let mut rows = Vec::new();
    for (l, m) in [(1, 1), (2, -3)] {
        let params = PlaneParams::new(l, m);
        for ex in PlaneExample::ALL {
            let v = plane_valuation(ex, &params);
            for (f, value) in plane_conditions(ex, &params).conditions {
                let names = default_names(2);
                rows.push(row(
                    format!("{ex}({}) [λ={l}, μ={m}]", f.display_with(&names)),
                    "plane tower generators",
                    value,
                    val_e(&v, &f).map(|x| x.to_string()),
                ));
            }
        }
    }
    let n = 10;
    let v = cubic_valuation(n);
    for (f, value) in cubic_values(n) {
        rows.push(row(
            format!("cubic tower n={n}: v({f})"),
            "C^3 cubic tower values",
            value,
            val_e(&v, &f).map(|x| x.to_string()),
        ));
    }
    for (ex, k) in [(PlaneExample::III, 4), (PlaneExample::IV, 5)] {
        let v = plane_valuation(ex, &PlaneParams::default());
        rows.push(row(
            format!("{ex}: ord_E K"),
            "Jacobian of the composite",
            k,
            relative_canonical_order(&v.tower).map(|x| x.to_string()),
        ));
    }
    let a1 = a_cone(1);
    rows.push(row(
        "A1: Hilbert basis".into(),
        "semigroup of the A1 cone",
        "(1,0) (1,1) (1,2)",
        hilbert_basis(&a1).map(|b| {
            b.iter()
                .map(|u| u.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }),
    ));
    let mather_row = |name: &str, c: &Cone, a: &[i64], expected: &str| {
        row(
            name.into(),
            "codim W(v) = k + q",
            expected,
            mather_discrepancy(c, &LatticeVector::from_i64s(a))
                .map(|r| format!("q={} k={} codim={}", r.q, r.k_mather, r.codim)),
        )
    };
    rows.push(mather_row("A1, a=(1,0)", &a1, &[1, 0], "q=1 k=1 codim=2"));
    rows.push(mather_row(
        "quadrant, a=(2,3)",
        &Cone::orthant(2),
        &[2, 3],
        "q=1 k=4 codim=5",
    ));
    rows
}

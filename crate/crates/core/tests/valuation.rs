mod common;

use common::{int, naive_weighted_order, random_laurent, random_poly, rng};
use divisorial::error::Error;
use divisorial::fixtures::{cubic_valuation, plane_valuation, PlaneExample, PlaneParams};
use divisorial::lattice::{pairing, Cone, DualVector, LatticeVector};
use divisorial::poly::LaurentPolynomial;
use divisorial::toric::{support_in_semigroup, val_eval, val_quotient, ToricValuation};
use divisorial::tower::{val_e, DivisorialValuation};
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=6, 1..=3).prop_filter("nonzero", |w| w.iter().any(|&x| x > 0))
}

fn tower(which: usize) -> DivisorialValuation {
    let params = if which.is_multiple_of(2) {
        PlaneParams::new(1, 1)
    } else {
        PlaneParams::new(2, -3)
    };
    match which / 2 {
        6 => cubic_valuation(4),
        k => plane_valuation(PlaneExample::ALL[k], &params),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn val_eval_is_the_weighted_minimum(w in weights(), seed in any::<u64>()) {
        let v = ToricValuation::monomial(&w).unwrap();
        let f = random_laurent(&mut rng(seed), w.len(), 4, 4);
        prop_assert_eq!(val_eval(&v, &f).unwrap(), int(naive_weighted_order(&f, &w)));
    }

    #[test]
    fn val_eval_is_additive(w in weights(), seed in any::<u64>()) {
        let v = ToricValuation::monomial(&w).unwrap();
        let mut r = rng(seed);
        let f = random_laurent(&mut r, w.len(), 3, 3);
        let g = random_laurent(&mut r, w.len(), 3, 3);
        prop_assert_eq!(val_eval(&v, &(&f * &g)).unwrap(), val_eval(&v, &f).unwrap() + val_eval(&v, &g).unwrap());
        prop_assert_eq!(val_quotient(&v, &f, &g).unwrap(), val_eval(&v, &f).unwrap() - val_eval(&v, &g).unwrap());
    }

    #[test]
    fn val_eval_on_sums(w in weights(), seed in any::<u64>()) {
        let v = ToricValuation::monomial(&w).unwrap();
        let mut r = rng(seed);
        let f = random_laurent(&mut r, w.len(), 3, 3);
        let g = random_laurent(&mut r, w.len(), 3, 3);
        let s = &f + &g;
        prop_assume!(!s.is_zero());
        let (vf, vg, vs) = (val_eval(&v, &f).unwrap(), val_eval(&v, &g).unwrap(), val_eval(&v, &s).unwrap());
        prop_assert!(vs >= vf.clone().min(vg.clone()));
        if vf != vg {
            prop_assert_eq!(vs, vf.min(vg));
        }
    }

    #[test]
    fn characters_pair_with_the_vector(u in prop::array::uniform2(-5i64..=5), a in prop::array::uniform2(1i64..=5)) {
        prop_assume!(u != [0, 0]);
        let c = Cone::orthant(2);
        let v = ToricValuation::new(c, LatticeVector::from_i64s(&a)).unwrap();
        let u = DualVector::from_i64s(&u);
        let chi = LaurentPolynomial::character(&u).unwrap();
        prop_assert_eq!(val_eval(&v, &chi).unwrap(), pairing(&u, v.a()).unwrap());
    }

    #[test]
    fn val_e_is_additive(which in 0usize..14, seed in any::<u64>()) {
        let v = tower(which);
        let mut r = rng(seed);
        let f = random_poly(&mut r, v.rank(), 3, 3);
        let g = random_poly(&mut r, v.rank(), 3, 3);
        prop_assert_eq!(val_e(&v, &(&f * &g)).unwrap(), val_e(&v, &f).unwrap() + val_e(&v, &g).unwrap());
    }

    #[test]
    fn val_e_on_sums(which in 0usize..14, seed in any::<u64>()) {
        let v = tower(which);
        let mut r = rng(seed);
        let f = random_poly(&mut r, v.rank(), 3, 3);
        let g = random_poly(&mut r, v.rank(), 3, 3);
        let s = &f + &g;
        prop_assume!(!s.is_zero());
        let (vf, vg, vs) = (val_e(&v, &f).unwrap(), val_e(&v, &g).unwrap(), val_e(&v, &s).unwrap());
        prop_assert!(vs >= vf.clone().min(vg.clone()));
        if vf != vg {
            prop_assert_eq!(vs, vf.min(vg));
        }
    }
}

#[test]
fn a1_values() {
    let c = Cone::from_i64_rays(&[&[0, 1], &[2, -1]]).unwrap();
    let v = ToricValuation::new(c.clone(), LatticeVector::from_i64s(&[1, 1])).unwrap();
    // x^(1,1): <(1,1),(1,1)> = 2
    let f = LaurentPolynomial::from_int_terms(2, &[(&[1, 1], 1), (&[1, 2], -3)]);
    assert!(support_in_semigroup(&c, &f));
    assert_eq!(val_eval(&v, &f).unwrap(), int(2));
    assert!(v.is_centered_at_origin().unwrap());
}

#[test]
fn non_primitive_vector_keeps_its_multiplicity() {
    let v = ToricValuation::monomial(&[4, 6]).unwrap();
    assert_eq!(v.q(), &int(2));
    assert_eq!(v.a_primitive(), &LatticeVector::from_i64s(&[2, 3]));
}

#[test]
fn vectors_outside_the_cone_are_rejected() {
    let c = Cone::orthant(2);
    assert!(matches!(
        ToricValuation::new(c.clone(), LatticeVector::from_i64s(&[1, -1])),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        ToricValuation::new(c, LatticeVector::from_i64s(&[0, 0])),
        Err(Error::Domain(_))
    ));
}

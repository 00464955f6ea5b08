use num_traits::{Signed, Zero};
use proptest::prelude::*;

use gradscheme::abgroups::{smith_normal_form, FGAbelianGroup, IntMatrix};
use gradscheme::comrings::{Tabled, TestRing};
use gradscheme::fixtures;
use gradscheme::galg::{build_grading, verify_grading_generic};
use gradscheme::points::{self, Functor, Stage};
use gradscheme::scalars::Field;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_reconstructs(rows in small_matrix()) {
        let m = IntMatrix::from_rows(rows[0].len(), &rows);
        let s = smith_normal_form(&m);
        prop_assert!(s.verify(&m));
        prop_assert!(s.u.det().abs() == 1.into());
        prop_assert!(s.v.det().abs() == 1.into());
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn finite_field_axioms(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 25]), a in 0i64..50, b in 0i64..50, c in 0i64..50) {
        let f = Field::finite(q).unwrap();
        let elems = f.elements().unwrap();
        let (x, y, z) = (&elems[a as usize % elems.len()], &elems[b as usize % elems.len()], &elems[c as usize % elems.len()]);
        prop_assert_eq!(f.mul(x, &f.add(y, z)), f.add(&f.mul(x, y), &f.mul(x, z)));
        prop_assert_eq!(f.mul(&f.mul(x, y), z), f.mul(x, &f.mul(y, z)));
        if !f.is_zero(x) {
            prop_assert!(f.is_one(&f.mul(x, &f.inv(x).unwrap())));
            prop_assert!(f.is_one(&f.pow(x, q - 1)));
        }
    }

    #[test]
    fn group_addition_is_commutative(n in 2u64..30, a in -40i64..40, b in -40i64..40) {
        let g = FGAbelianGroup::cyclic(n);
        let s = g.add(&[a], &[b]);
        prop_assert_eq!(&s, &g.add(&[b], &[a]));
        prop_assert!(g.element_order(&s).unwrap() <= n);
    }

    #[test]
    fn direct_and_generic_grading_checks_agree(labels in proptest::collection::vec(0i64..6, 3)) {
        let q = Field::rationals();
        let g = fixtures::cubic(&q).unwrap();
        let group = FGAbelianGroup::cyclic(6);
        let labels: Vec<Vec<i64>> = labels.into_iter().map(|l| vec![l]).collect();
        let direct = build_grading(g.algebra(), &group, labels.clone()).is_ok();
        prop_assert_eq!(direct, verify_grading_generic(g.algebra(), &group, &labels));
    }
}

#[test]
fn enumerated_points_form_a_group() {
    let f3 = Field::prime(3).unwrap();
    let g = fixtures::cyc3(&f3).unwrap();
    let r = Tabled::new(&TestRing::dual_numbers(&f3, 2).unwrap()).unwrap();
    let st = Stage::new(&g, &r).unwrap();
    let pts = points::enumerate_points(&st, Functor::AutA, points::DEFAULT_CAP).unwrap();
    assert_eq!(pts.len(), 6);
    for a in &pts {
        assert!(pts.contains(&st.inverse(a).unwrap()));
        for b in &pts {
            assert!(pts.contains(&st.compose(a, b)));
        }
    }
}

#[test]
fn functor_inclusions_hold() {
    let f7 = Field::prime(7).unwrap();
    let g = fixtures::cubic(&f7).unwrap();
    let r = Tabled::new(&TestRing::base_field(&f7)).unwrap();
    let st = Stage::new(&g, &r).unwrap();
    let count = |f| points::enumerate_points(&st, f, points::DEFAULT_CAP).unwrap();
    let (diag, stab, autg, aut) = (
        count(Functor::Diag),
        count(Functor::Stab),
        count(Functor::AutGamma),
        count(Functor::AutA),
    );
    assert!(diag.iter().all(|m| stab.contains(m)));
    assert!(stab.iter().all(|m| autg.contains(m)));
    assert!(autg.iter().all(|m| aut.contains(m)));
}

mod common;

use common::{measure_on, positive, rational};
use momentlab_core::exactmat::{is_psd, Matrix};
use momentlab_core::moments::{
    check_support, hankel_from, is_rank_one_hankel, moments_of, multi_moments_of, Measure, SupportSet,
};
use momentlab_core::scalar::{q, qi, Rational};
use num::traits::Zero;
use proptest::prelude::*;

/// `u uᵀ` is Hankel, read directly off its anti-diagonals.
fn outer_is_hankel(u: &[Rational]) -> bool {
    let a = Matrix::outer(u, u);
    let n = u.len();
    (0..n).all(|i| (0..n).all(|j| i + 1 >= n || j == 0 || a[(i, j)] == a[(i + 1, j - 1)]))
}

fn geometric() -> impl Strategy<Value = Vec<Rational>> {
    (rational(5, 3), rational(3, 4), 1usize..=6)
        .prop_map(|(a, r, n)| (0..n).map(|k| &a * num::traits::pow(r.clone(), k)).collect())
}

fn with_zero_prefix() -> impl Strategy<Value = Vec<Rational>> {
    (0usize..=5, rational(4, 2)).prop_map(|(z, last)| {
        let mut v = vec![qi(0); z];
        v.push(last);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn unit_interval_measures_pass_every_support_test(mu in measure_on(qi(0), qi(1), 4)) {
        let s = moments_of(&mu, 6).unwrap();
        for k in SupportSet::ALL {
            prop_assert!(check_support(&s, k, 0.0).unwrap(), "{}", k);
        }
        let r = moments_of(&mu.reflect(), 6).unwrap();
        prop_assert!(check_support(&r, SupportSet::Real, 0.0).unwrap());
        prop_assert!(check_support(&r, SupportSet::Symmetric, 0.0).unwrap());
        let has_positive_atom = mu.support().iter().any(|x| *x > Rational::zero());
        prop_assert_eq!(check_support(&r, SupportSet::HalfLine, 0.0).unwrap(), !has_positive_atom);
    }

    #[test]
    fn hankel_matrices_of_measures_are_psd(mu in measure_on(qi(-3), qi(3), 5), n in 1usize..=5) {
        let h = hankel_from(&moments_of(&mu, 2 * n - 2).unwrap(), n).unwrap();
        prop_assert!(is_psd(&h, 0.0).unwrap());
    }

    #[test]
    fn moments_are_linear(
        mu in measure_on(qi(-1), qi(2), 3),
        nu in measure_on(qi(-2), qi(1), 3),
        a in positive(5, 4),
        b in positive(5, 4),
    ) {
        let combined = mu.scale(&a).unwrap().add(&nu.scale(&b).unwrap()).unwrap();
        let lhs = moments_of(&combined, 7).unwrap();
        let (sm, sn) = (moments_of(&mu, 7).unwrap(), moments_of(&nu, 7).unwrap());
        let rhs: Vec<Rational> = sm.values().iter().zip(sn.values()).map(|(x, y)| &a * x + &b * y).collect();
        prop_assert_eq!(lhs.values(), rhs.as_slice());
    }

    #[test]
    fn product_measures_factor(mu in measure_on(qi(-1), qi(1), 3), nu in measure_on(qi(-1), qi(1), 3)) {
        let fam = multi_moments_of(&mu.product(&nu).unwrap(), 1);
        let (sm, sn) = (moments_of(&mu, 4).unwrap(), moments_of(&nu, 4).unwrap());
        for a in 0..=4 {
            for b in 0..=4 {
                prop_assert_eq!(fam.get(&[a, b]).unwrap(), &(&sm.values()[a] * &sn.values()[b]));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_one_hankel_matches_direct_scan(
        u in prop_oneof![
            prop::collection::vec(rational(4, 3), 1..=6),
            geometric(),
            with_zero_prefix(),
        ]
    ) {
        prop_assert_eq!(is_rank_one_hankel(&u), outer_is_hankel(&u));
    }
}

#[test]
fn reflection_of_a_point_at_zero_stays_on_the_half_line() {
    let mu = Measure::point_mass(qi(0), q(3, 2)).unwrap();
    let r = moments_of(&mu.reflect(), 4).unwrap();
    assert!(check_support(&r, SupportSet::HalfLine, 0.0).unwrap());
}

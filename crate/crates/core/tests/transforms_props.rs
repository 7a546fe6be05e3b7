mod common;

use std::collections::BTreeMap;

use common::{measure_on, positive};
use momentlab_core::exactmat::{is_psd, Matrix};
use momentlab_core::moments::{hankel_from, is_checkerboard, moments_of, Measure};
use momentlab_core::scalar::{qi, Rational, DEFAULT_TOL};
use momentlab_core::transforms::{
    abs_monotone_test, facewise_apply, facewise_decompose, hook_schur_ones, jain_psd, odd_composite_identity,
    subsets, DiffGrid, FacewiseMap, MultiPoly, Term, Transform,
};
use num::bigint::BigUint;
use num::traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonneg_coeffs() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(prop_oneof![Just(qi(0)), positive(6, 5)], 1..=4)
}

fn hankel(mu: &Measure<Rational>, n: usize) -> Matrix<Rational> {
    hankel_from(&moments_of(mu, 2 * n - 2).unwrap(), n).unwrap()
}

/// Semistandard tableaux of shape `lambda` with entries in `1..=n`.
fn count_ssyt(lambda: &[usize], n: usize) -> u64 {
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    fn fill(cells: &[(usize, usize)], at: usize, t: &mut BTreeMap<(usize, usize), usize>, n: usize) -> u64 {
        let Some(&(r, c)) = cells.get(at) else { return 1 };
        let left = if c > 0 { t[&(r, c - 1)] } else { 1 };
        let above = if r > 0 { t[&(r - 1, c)] + 1 } else { 1 };
        let mut total = 0;
        for v in left.max(above)..=n {
            t.insert((r, c), v);
            total += fill(cells, at + 1, t, n);
        }
        t.remove(&(r, c));
        total
    }
    fill(&cells, 0, &mut BTreeMap::new(), n)
}

fn random_facewise(m: usize) -> impl Strategy<Value = FacewiseMap> {
    let faces = subsets(m);
    let per_face = faces
        .iter()
        .map(|face| {
            let k = face.len();
            prop::collection::vec((positive(4, 3), prop::collection::vec(0u32..=2, k)), 1..=3)
                .prop_map(move |terms| {
                    MultiPoly::new(k, terms.into_iter().map(|(c, e)| Term { c, e }).collect()).unwrap()
                })
        })
        .collect::<Vec<_>>();
    per_face.prop_map(move |polys| FacewiseMap::new(m, faces.iter().cloned().zip(polys).collect()).unwrap())
}

fn face_instance() -> impl Strategy<Value = Measure<Rational>> {
    prop_oneof![
        3 => measure_on(qi(0), qi(1), 3),
        1 => positive(5, 4).prop_map(|a| Measure::point_mass(qi(0), a).unwrap()),
        1 => Just(Measure::zero(1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn nonnegative_polynomials_preserve_psd(
        c in nonneg_coeffs(),
        unit in measure_on(qi(0), qi(1), 4),
        sym in measure_on(qi(-1), qi(1), 4),
        n in 2usize..=4,
    ) {
        let t = Transform::poly(c);
        for mu in [unit, sym] {
            prop_assert!(is_psd(&t.apply(&hankel(&mu, n)).unwrap(), 0.0).unwrap());
        }
    }

    #[test]
    fn odd_extensions_preserve_psd_on_the_negative_interval(
        c in nonneg_coeffs(),
        mu in measure_on(qi(-1), qi(0), 4),
        n in 2usize..=4,
    ) {
        let base = Transform::poly(c.clone());
        prop_assert!(odd_composite_identity(&base, &mu, n).unwrap());
        let f = Transform::odd_ext(base);
        let h = hankel(&mu, n);
        let fh = f.apply(&h).unwrap();
        prop_assert!(is_psd(&fh, 0.0).unwrap());
        let nonzero_atom = mu.support().iter().any(|x| *x != qi(0));
        let nonzero_map = c.iter().any(|v| *v != qi(0));
        if nonzero_atom && nonzero_map {
            prop_assert!(is_checkerboard(&h));
            prop_assert!(is_checkerboard(&fh));
        }
    }

    #[test]
    fn facewise_decomposition_reconstructs(
        f in random_facewise(2),
        a in face_instance(),
        b in face_instance(),
        n in 2usize..=4,
    ) {
        let mats = [hankel(&a, n), hankel(&b, n)];
        let direct = facewise_apply(&f, &mats).unwrap();
        prop_assert_eq!(facewise_decompose(&f, &mats).unwrap().reconstruct(), direct);
    }

    #[test]
    fn nonnegative_polynomials_are_absolutely_monotone(c in nonneg_coeffs()) {
        let cf: Vec<f64> = c.iter().map(|v| v.to_f64().unwrap()).collect();
        let p = move |x: f64| cf.iter().rev().fold(0.0, |acc, v| acc * x + v);
        prop_assert!(abs_monotone_test(&p, (0.0, 1.0), 4, DiffGrid::default()));
    }
}

#[test]
fn monotonicity_rejections() {
    let g = DiffGrid::default();
    assert!(!abs_monotone_test(&|x| -x, (0.0, 1.0), 4, g));
    assert!(!abs_monotone_test(&|x| x - x * x, (0.0, 1.0), 4, g));
    assert!(!abs_monotone_test(&f64::sin, (0.0, 1.0), 4, g));
}

#[test]
fn hook_values_match_tableau_counts() {
    for m in 1..=6usize {
        for n in 1..=4usize.min(m) {
            for j in 0..n {
                let mut shape = vec![m - n + 1];
                shape.extend(std::iter::repeat_n(1, n - j - 1));
                let oracle = count_ssyt(&shape, n);
                assert_eq!(hook_schur_ones(m, n, j).unwrap(), BigUint::from(oracle), "M={m} N={n} j={j}");
            }
        }
    }
}

#[test]
fn power_criterion_by_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3usize, 4] {
        let draws: Vec<Vec<f64>> = (0..50)
            .map(|_| {
                let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
                xs.sort_by(f64::total_cmp);
                xs.dedup();
                xs
            })
            .collect();
        let bad: &[f64] = if n == 3 { &[0.25, 0.5, 0.75] } else { &[0.5, 1.25, 1.5] };
        for &alpha in bad {
            assert!(draws.iter().any(|xs| !jain_psd(xs, alpha, DEFAULT_TOL).unwrap()), "N={n} alpha={alpha}");
        }
        let good = [0.0, 1.0, 2.0, 3.0, (n - 2) as f64, n as f64 - 1.5, 2.5];
        for alpha in good.into_iter().filter(|a| a.fract() == 0.0 || *a >= (n - 2) as f64) {
            assert!(draws.iter().all(|xs| jain_psd(xs, alpha, DEFAULT_TOL).unwrap()), "N={n} alpha={alpha}");
        }
    }
}

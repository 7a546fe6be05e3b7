mod common;

use common::positive;
use momentlab_core::scalar::{qi, Mode, Rational};
use momentlab_core::transforms::Transform;
use momentlab_core::verify::{gen_family, run_preserver, Family, FamilyParams, PreserverRun, Verdict};
use proptest::prelude::*;

fn nonneg_poly() -> impl Strategy<Value = Transform> {
    prop::collection::vec(prop_oneof![Just(qi(0)), positive(5, 4)], 1..=4).prop_map(Transform::poly)
}

#[test]
fn generators_satisfy_their_validators() {
    let p = FamilyParams::default();
    for family in Family::ALL {
        for seed in 0..10 {
            for inst in gen_family(family, &p, seed, 25).unwrap() {
                family.validate(&inst, &p).unwrap();
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nonnegative_polynomials_never_fail(t in nonneg_poly(), seed in 0u64..1000) {
        for family in [Family::MeasuresUnit, Family::MeasuresSymmetric, Family::ThreePoint, Family::ZeroOne] {
            let run = PreserverRun::new(family, 3, 20).seed(seed);
            let report = run_preserver(&t, &run).unwrap();
            prop_assert_eq!(report.verdict, Verdict::Pass, "{}", family);
        }
    }

    #[test]
    fn odd_extensions_never_fail_on_the_negative_interval(t in nonneg_poly(), seed in 0u64..1000) {
        let odd = Transform::odd_ext(t);
        for family in [Family::MeasuresNegUnit, Family::TwoPointNeg] {
            let run = PreserverRun::new(family, 3, 20).seed(seed);
            prop_assert_eq!(run_preserver(&odd, &run).unwrap().verdict, Verdict::Pass);
        }
    }

    #[test]
    fn identical_runs_serialize_identically(t in nonneg_poly(), seed in 0u64..1000) {
        let run = PreserverRun::new(Family::BoundedMass, 3, 10).seed(seed).mode(Mode::Float);
        let a = serde_json::to_string(&run_preserver(&t, &run).unwrap()).unwrap();
        let b = serde_json::to_string(&run_preserver(&t, &run).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn verdict_tracks_failures() {
    let t = Transform::poly(vec![qi(1), Rational::from_integer((-3).into())]);
    let report = run_preserver(&t, &PreserverRun::new(Family::MeasuresUnit, 3, 30)).unwrap();
    assert_eq!(report.verdict == Verdict::Pass, report.failures.is_empty());
    assert_eq!(report.verdict, Verdict::Fail);
}

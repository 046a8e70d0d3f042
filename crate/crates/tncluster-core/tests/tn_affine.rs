use proptest::prelude::*;
use tncluster_core::affine::*;
use tncluster_core::lattice::{alpha_w, Weight};
use tncluster_core::multiseg::{Multisegment, Segment};
use tncluster_core::tnring::*;

fn multiseg_strategy() -> impl Strategy<Value = Multisegment> {
    prop::collection::vec((-10i64..10, 0i64..8), 0..6)
        .prop_map(|v| Multisegment::from_pairs(&v.into_iter().map(|(a, l)| (a, a + l)).collect::<Vec<_>>()).unwrap())
}

fn root_strategy() -> impl Strategy<Value = Weight> {
    prop::collection::vec((-6i64..=6, -2i64..=2), 0..5)
        .prop_map(|v| v.into_iter().fold(Weight::zero(), |acc, (j, c)| &acc + &alpha_w(j).scale(c)))
}

proptest! {
    #[test]
    fn omega_classification(ms in multiseg_strategy(), n in 2i64..7) {
        let c = omega_n(&ms, n).unwrap();
        let longest = ms.segments().iter().map(|s| s.len()).max().unwrap_or(0);
        match &c {
            ClassTN::Zero => prop_assert!(longest > n),
            ClassTN::Simple { ms: kept, .. } => {
                prop_assert!(longest <= n);
                prop_assert!(kept.segments().iter().all(|s| s.len() < n));
                let dropped = ms.segments().iter().filter(|s| s.len() == n).count();
                prop_assert_eq!(kept.len() + dropped, ms.len());
            }
        }
        prop_assert_eq!(omega_class(&c, n).unwrap(), c);
    }

    #[test]
    fn omega_respects_merging(x in multiseg_strategy(), y in multiseg_strategy(), n in 2i64..7) {
        let (cx, cy) = (omega_n(&x, n).unwrap(), omega_n(&y, n).unwrap());
        let merged = omega_n(&tncluster_core::multiseg::merge_commuting(&x, &y), n).unwrap();
        prop_assert_eq!(merge_classes(&cx, &cy), merged);
    }

    #[test]
    fn degree_identity(beta in root_strategy(), a in -8i64..8, n in prop::sample::select(vec![2i64, 3, 5])) {
        let (l, r) = c_a_identity(a, &beta, n).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn grading_is_periodic(beta in root_strategy(), a in -6i64..6, n in 2i64..6) {
        let shifted = &beta + &(&tncluster_core::lattice::eps_w(a) - &tncluster_core::lattice::eps_w(a + n));
        prop_assert_eq!(grade_project(&shifted, n).unwrap(), grade_project(&beta, n).unwrap());
    }

    #[test]
    fn type_a_functoriality(j in -10i64..10, n in 3i64..8, ell in 1i64..8) {
        prop_assume!(ell < n);
        for tag in [AffineTag::A1, AffineTag::A2] {
            let s = family_spec(tag, n).unwrap();
            let kr = kr_image(&s, ell, 1, j).unwrap();
            let seg = segment_image(&s, Segment { a: j - ell + 1, b: j }).unwrap();
            prop_assert!(s.labels_equal(&kr, &seg), "{} {} vs {}", tag, kr, seg);
        }
    }

    #[test]
    fn corrupted_tables_are_caught(a in -8i64..=8, bump in 1i64..4) {
        let mut s = family_spec(AffineTag::B1, 3).unwrap();
        let x = s.x_at(a).unwrap();
        s.x_table.insert(a, x * SpectralParam::q_pow(bump));
        prop_assert!(!check_dual_period(&s, 16).unwrap().pass);
    }
}

#[test]
fn families_are_a_infinity_and_periodic() {
    let reps = [
        (AffineTag::A1, vec![2, 3, 5]),
        (AffineTag::A2, vec![3, 4, 6]),
        (AffineTag::B1, vec![2, 3, 4]),
        (AffineTag::C1, vec![3, 4, 5]),
        (AffineTag::D1, vec![4, 5, 6]),
        (AffineTag::D2, vec![4, 5, 6]),
        (AffineTag::D3, vec![4]),
    ];
    for (tag, ranks) in reps {
        for n in ranks {
            let s = family_spec(tag, n).unwrap();
            assert!(check_a_infinity(&s, 8).unwrap().pass, "{} {}", tag, n);
            assert!(check_dual_period(&s, 8).unwrap().pass, "{} {}", tag, n);
            for a in -8..=8 {
                let seg = Segment { a, b: a + s.big_n - 1 };
                assert_eq!(segment_image(&s, seg).unwrap(), ModuleLabel::Unit);
            }
        }
    }
}

#[test]
fn type_a_t_system() {
    for n in 3..=6 {
        let cases = t_system_translation(1, n, 8).unwrap();
        assert!(cases.iter().all(|c| c.agrees), "N = {}", n);
    }
}

#[test]
fn stated_examples() {
    let b = family_spec(AffineTag::B1, 3).unwrap();
    assert_eq!(denom(&b, 3, 3).unwrap().degree(), 3);
    assert_eq!(b.x_at(-1).unwrap(), SpectralParam::q_pow(b.big_n - 3));
    let c = family_spec(AffineTag::C1, 4).unwrap();
    assert_eq!(
        denom(&c, 1, 1).unwrap().roots,
        vec![SpectralParam::neg_qs_pow(2), SpectralParam::neg_qs_pow(2 * 4 + 2)]
    );
    assert!(matches!(
        denom(&family_spec(AffineTag::D2, 5).unwrap(), 2, 2),
        Err(tncluster_core::Error::UnknownPair(2, 2))
    ));
}

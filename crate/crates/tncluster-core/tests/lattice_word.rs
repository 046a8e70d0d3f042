use proptest::prelude::*;
use tncluster_core::lattice::*;
use tncluster_core::word::*;

fn weight_strategy() -> impl Strategy<Value = Weight> {
    prop::collection::vec((any::<bool>(), -8i64..8, -3i64..4), 0..6).prop_map(|parts| {
        parts.into_iter().fold(Weight::zero(), |acc, (lam, i, c)| {
            let w = if lam { lambda_w(i) } else { eps_w(i) };
            &acc + &w.scale(c)
        })
    })
}

#[test]
fn dual_bases() {
    for a in -5..5 {
        for b in -5..5 {
            let d = (a == b) as i64;
            assert_eq!(pair(&eps_w(a), &eps_w(b)), HalfInt::from_int(d));
            assert_eq!(coroot(a, &lambda_w(b)).unwrap(), d);
        }
    }
    assert_eq!(coroot(0, &alpha_w(0)).unwrap(), 2);
    assert_eq!(coroot(0, &alpha_w(1)).unwrap(), -1);
}

#[test]
fn reduced_word_closed_form() {
    for p in 1..=210u32 {
        assert!(is_reduced_prefix(p), "p = {}", p);
        let (a, b) = beta_closed(p);
        assert_eq!(beta_by_reflection(p), root(a, b), "p = {}", p);
    }
}

#[test]
fn longest_elements() {
    for u in 1..=10 {
        let (lo, hi) = longest_interval(u);
        assert!(perm_of_prefix(a_val(u) as u32).is_reversal_of(lo, hi), "u = {}", u);
    }
}

#[test]
fn non_reduced_word_detected() {
    assert_eq!(first_non_reduced(&[0, 1, 0, 1]), Some(4));
    assert!(is_reduced_word(&[0, 1, 0]));
}

proptest! {
    #[test]
    fn form_is_invariant(x in weight_strategy(), y in weight_strategy(), j in -6i64..6) {
        prop_assert_eq!(pair(&reflect(j, &x), &reflect(j, &y)), pair(&x, &y));
    }

    #[test]
    fn reflections_are_involutions(x in weight_strategy(), j in -6i64..6) {
        prop_assert_eq!(reflect(j, &reflect(j, &x)), x);
    }

    #[test]
    fn braid_relations(x in weight_strategy(), j in -6i64..6) {
        prop_assert_eq!(apply_word(&[j, j + 1, j], &x), apply_word(&[j + 1, j, j + 1], &x));
        prop_assert_eq!(apply_word(&[j, j + 3], &x), apply_word(&[j + 3, j], &x));
    }

    #[test]
    fn reflection_formula(x in weight_strategy(), j in -6i64..6) {
        let h = coroot(j, &x).unwrap();
        prop_assert_eq!(reflect(j, &x), &x - &alpha_w(j).scale(h));
    }

    #[test]
    fn coordinates_round_trip(p in 1u32..100_000) {
        let c = coord(p);
        prop_assert!(c.is_valid());
        prop_assert_eq!(coord_inv(c), p);
        prop_assert_eq!(jp(p), (c.ell - c.m + 1).div_euclid(2));
        prop_assert_eq!(jp_from_coord(c), jp(p));
    }

    #[test]
    fn neighbours_share_letters(p in 1u32..5_000) {
        let q = p_plus(p);
        prop_assert_eq!(jp(q), jp(p));
        prop_assert_eq!(p_minus(q), p);
    }
}

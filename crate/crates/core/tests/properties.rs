use olc_core::bijections::{crossings, inhomogeneous_partitions, phi, theta};
use olc_core::combi::{permutation_stats, BoxedGroundSet};
use olc_core::linearize::{linearization, MultiIndex};
use olc_core::scalar::gr;
use olc_core::series::TruncatedSeries;
use olc_core::{FamilySpec, GaussianRational as Q};
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| gr(n, d))
}

fn positive_q() -> impl Strategy<Value = Q> {
    (1i64..=7, 1i64..=4).prop_map(|(n, d)| gr(n, d))
}

/// `1 + (terms without constant)` in two variables.
fn unit_series(cap: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(((0usize..=2, 0usize..=2), small_q()), 1..5).prop_map(move |terms| {
        let mut s = TruncatedSeries::one(2, cap);
        for ((a, b), c) in terms {
            if a + b > 0 {
                s = s.add(&TruncatedSeries::monomial(2, cap, &[a, b], c));
            }
        }
        s
    })
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::hermite()),
        positive_q().prop_map(|a| FamilySpec::charlier(a).unwrap()),
        positive_q().prop_map(|a| FamilySpec::laguerre(a).unwrap()),
        (positive_q(), (2i64..=5)).prop_map(|(b, d)| FamilySpec::meixner(b, gr(1, d)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_power_round_trip(s in unit_series(4), num in 1i64..=4, den in 1i64..=3) {
        let r = gr(num, den);
        let back = s.pow(&r).unwrap().pow(&r.inv().unwrap()).unwrap();
        prop_assert!(back == s);
    }

    #[test]
    fn series_log_exp_round_trip(s in unit_series(5)) {
        prop_assert!(s.log().unwrap().exp().unwrap() == s);
    }

    #[test]
    fn scalar_display_parses_back(re in small_q(), im in small_q()) {
        let z = Q::new(re.re().clone(), im.re().clone());
        prop_assert_eq!(Q::parse(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn linearization_is_symmetric(
        f in family(),
        idx in prop::collection::vec(0usize..=3, 1..=4),
        seed in any::<u64>(),
    ) {
        let mut perm: Vec<usize> = (0..idx.len()).collect();
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let shuffled: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
        prop_assert_eq!(
            linearization(&f, &MultiIndex::new(&idx)).unwrap(),
            linearization(&f, &MultiIndex::new(&shuffled)).unwrap()
        );
    }

    #[test]
    fn phi_keeps_blocks_and_crossings(n in 3usize..=8, k_off in 0usize..6, pick in any::<usize>()) {
        let k = 1 + k_off % (n - 1);
        let mut boxes = vec![k];
        boxes.extend(std::iter::repeat(1).take(n - k));
        let all = inhomogeneous_partitions(&boxes);
        prop_assume!(!all.is_empty());
        let p = &all[pick % all.len()];
        let q = phi(n, k, p).unwrap();
        prop_assert_eq!(q.blocks().len(), p.blocks().len());
        prop_assert_eq!(crossings(&q), crossings(p));
    }

    #[test]
    fn theta_is_an_involution(n1 in 1usize..=3, n2 in 1usize..=3, rest in 0usize..=2, pick in any::<usize>()) {
        let mut boxes = vec![n1, n2];
        boxes.extend(std::iter::repeat(1).take(rest));
        let all = inhomogeneous_partitions(&boxes);
        prop_assume!(!all.is_empty());
        let p = &all[pick % all.len()];
        let q = theta(n1, n2, p).unwrap();
        prop_assert_eq!(crossings(&q), crossings(p));
        prop_assert_eq!(q.blocks().len(), p.blocks().len());
        prop_assert!(theta(n2, n1, &q).unwrap() == *p);
    }

    #[test]
    fn inverse_swaps_exceedances_and_drops(sigma in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let mut inv = vec![0; sigma.len()];
        for (i, &v) in sigma.iter().enumerate() {
            inv[v] = i;
        }
        let g = BoxedGroundSet::new(&[3, 4]);
        let (s, t) = (permutation_stats(&sigma, &g), permutation_stats(&inv, &g));
        prop_assert_eq!(s.exc, t.drop);
        prop_assert_eq!(s.exc_b, t.drop_b);
        prop_assert_eq!(s.cyc, t.cyc);
        prop_assert_eq!(s.exc + s.drop + s.fix, sigma.len());
    }
}

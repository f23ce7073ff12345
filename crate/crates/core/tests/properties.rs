use loopspec::bounds::{all_bounds, BoundOptions};
use loopspec::format;
use loopspec::linalg::multiset_distance;
use loopspec::spectral::{energy_positive_part, trace_identities};
use loopspec::{prune_non_cycle_arcs, Digraph, GraphContext, GraphContext64};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, bits)| Digraph::from_pattern(n, |i, j| bits[i * n + j]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_identities_hold(d in digraph(8)) {
        let t = trace_identities::<f64>(&d).unwrap();
        prop_assert!(t.holds(), "{t:?}");
    }

    #[test]
    fn energy_equals_positive_part(d in digraph(8)) {
        let e = loopspec::energy::<f64>(&d).unwrap().energy;
        let p: f64 = energy_positive_part(&d).unwrap();
        prop_assert!((e - p).abs() < 1e-8 * (1.0 + e));
    }

    #[test]
    fn pruning_keeps_charpoly(d in digraph(8)) {
        let pruned = prune_non_cycle_arcs(&d);
        let a = GraphContext64::new(&d);
        let b = GraphContext64::new(&pruned);
        prop_assert_eq!(a.charpoly(), b.charpoly());
        prop_assert!(pruned.size() <= d.size());
    }

    #[test]
    fn union_charpoly_is_product(a in digraph(4), b in digraph(4)) {
        let u = Digraph::disjoint_union(&[a.clone(), b.clone()]).unwrap();
        let pa = GraphContext64::new(&a).charpoly().coefficients();
        let pb = GraphContext64::new(&b).charpoly().coefficients();
        let mut prod = vec![num_bigint::BigInt::from(0); pa.len() + pb.len() - 1];
        for (i, x) in pa.iter().enumerate() {
            for (j, y) in pb.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        prop_assert_eq!(GraphContext64::new(&u).charpoly().coefficients(), prod);
    }

    #[test]
    fn qr_matches_oracle(d in digraph(8)) {
        let ctx = GraphContext64::new(&d);
        let qr = ctx.spectrum().unwrap().eigenvalues().to_vec();
        let oracle = ctx.oracle_spectrum().unwrap().eigenvalues().to_vec();
        let dist = multiset_distance(&qr, &oracle).unwrap();
        prop_assert!(dist < 1e-6, "distance {dist}");
    }

    #[test]
    fn bounds_hold(d in digraph(8)) {
        let ctx = GraphContext64::new(&d);
        for cert in all_bounds(&ctx, &BoundOptions::default()).unwrap() {
            prop_assert!(cert.holds, "{cert:?}");
        }
    }

    #[test]
    fn formats_round_trip(d in digraph(8)) {
        prop_assert_eq!(&format::from_json(&format::to_json(&d)).unwrap(), &d);
        prop_assert_eq!(&format::from_text(&format::to_text(&d)).unwrap(), &d);
        prop_assert_eq!(&format::parse_auto(&format::to_text(&d)).unwrap(), &d);
    }

    #[test]
    fn complement_flips_every_off_diagonal_entry(d in digraph(7)) {
        let c = d.complement();
        let n = d.order();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_ne!(c.has(i, j), d.has(i, j));
                }
            }
        }
        prop_assert_eq!(c.size() + d.size(), n * (n - 1));
    }

    #[test]
    fn single_precision_tracks_double(d in digraph(6)) {
        let e64 = GraphContext64::new(&d).energy().unwrap();
        let e32 = GraphContext::<f32>::new(&d).energy().unwrap();
        prop_assert!((e64 - e32 as f64).abs() < 1e-3 * (1.0 + e64), "{e64} vs {e32}");
    }
}

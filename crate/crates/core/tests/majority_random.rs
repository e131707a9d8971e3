mod common;

use std::collections::BTreeSet;

use bncontrol::bounds::{general_upper_bound, rational_floor};
use bncontrol::families::Family;
use bncontrol::majority::{
    control_set_from_extraction, majority_extraction, random_regular_digraph, random_regular_network,
    residual_bound_check, two_step_control, Extraction, ThresholdKind,
};
use bncontrol::model::{degree_profile, simulate};
use bncontrol::oracle::{max_drive_distance, shortest_drive};
use common::{seven_node, random_vector, ring8, v};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_invariants(n: usize, big_k: usize, e: &Extraction) {
    let k = big_k / 2;
    let mut seen = BTreeSet::new();
    for (g, &y) in e.groups.iter().zip(&e.targets) {
        assert_eq!(g.len(), k + 1);
        assert!(seen.insert(y));
        for &j in g {
            assert!(seen.insert(j));
        }
    }
    for &r in &e.residual {
        assert!(seen.insert(r));
    }
    assert_eq!(seen, (1..=n).collect());
    assert_eq!(e.p() * (k + 2) + e.residual.len(), n);
}

fn family_for(kind: ThresholdKind, big_k: usize) -> (Family, usize) {
    match kind {
        ThresholdKind::Mtbi => (Family::Mtbi, big_k / 2),
        ThresholdKind::Majority if big_k % 2 == 1 => (Family::MajorityOdd, big_k / 2),
        ThresholdKind::Majority => (Family::MajorityEven, big_k / 2),
    }
}

#[test]
fn small_examples_sizes() {
    let e = majority_extraction(&seven_node()).unwrap();
    assert_eq!((e.p(), e.residual.len(), control_set_from_extraction(&e, 7).len()), (2, 1, 5));
    let e = majority_extraction(&ring8()).unwrap();
    assert_eq!((e.p(), e.residual.len(), control_set_from_extraction(&e, 8).len()), (2, 0, 6));
}

#[test]
fn small_examples_two_step_horizon() {
    for (bn, n) in [(seven_node(), 7), (ring8(), 8)] {
        let e = majority_extraction(&bn).unwrap();
        let u = control_set_from_extraction(&e, n);
        assert!(max_drive_distance(&bn, &u).unwrap().unwrap() <= 2);
    }
    let bn = seven_node();
    let u = control_set_from_extraction(&majority_extraction(&bn).unwrap(), 7);
    let s = shortest_drive(&bn, &u, &v("1111000"), &v("0101011")).unwrap();
    assert!(s.steps() <= 2);
}

#[test]
fn random_regular_networks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut runs = 0;
    for big_k in 2..=7 {
        for kind in [ThresholdKind::Majority, ThresholdKind::Mtbi] {
            if kind == ThresholdKind::Mtbi && big_k % 2 == 1 {
                continue;
            }
            for _ in 0..12 {
                let n = rng.gen_range(big_k.max(2 * (big_k / 2) + 1)..=30);
                let bn = random_regular_network(n, big_k, kind, rng.gen()).unwrap();
                assert!(degree_profile(&bn).is_k_k_regular(big_k));
                let e = majority_extraction(&bn).unwrap();
                check_invariants(n, big_k, &e);
                let k = big_k / 2;
                let res = residual_bound_check(&bn, &e.residual, big_k, k).unwrap();
                assert!(res.passes(), "{res:?}");
                let u = control_set_from_extraction(&e, n);
                let (family, fk) = family_for(kind, big_k);
                if let Ok(ub) = general_upper_bound(n, fk, family) {
                    assert!(BigInt::from(u.len()) <= rational_floor(&ub), "n={n} K={big_k} |U|={}", u.len());
                }
                for _ in 0..5 {
                    let a = random_vector(n, &mut rng);
                    let b = random_vector(n, &mut rng);
                    let s = two_step_control(&bn, &e, &a, &b).unwrap();
                    assert_eq!(s.steps(), 2);
                    assert!(s.is_supported_on(&u));
                    assert_eq!(simulate(&bn, &u, &a, &s).unwrap()[2], b);
                }
                if n <= 12 {
                    assert!(max_drive_distance(&bn, &u).unwrap().unwrap() <= 2);
                }
                runs += 1;
            }
        }
    }
    assert!(runs >= 50);
}

#[test]
fn regular_digraph_sampler() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=25 {
        for big_k in 1..=n.min(8) {
            let lists = random_regular_digraph(n, big_k, &mut rng).unwrap();
            let mut out = vec![0; n];
            for l in &lists {
                assert_eq!(l.len(), big_k);
                assert_eq!(l.iter().collect::<BTreeSet<_>>().len(), big_k);
                for &j in l {
                    out[j - 1] += 1;
                }
            }
            assert!(out.iter().all(|&d| d == big_k));
        }
    }
    assert!(random_regular_digraph(3, 4, &mut rng).is_err());
    assert!(random_regular_network(9, 3, ThresholdKind::Mtbi, 0).is_err());
}

#[test]
fn seeded_generation_is_deterministic() {
    let a = random_regular_network(20, 5, ThresholdKind::Majority, 42).unwrap();
    let b = random_regular_network(20, 5, ThresholdKind::Majority, 42).unwrap();
    assert_eq!(a, b);
}

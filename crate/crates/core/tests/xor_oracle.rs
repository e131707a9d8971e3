mod common;

use bncontrol::oracle::{is_controllable_bruteforce, min_control_set_bruteforce};
use bncontrol::xor::{basis_schedule, construct_control_node_set, is_controllable_xor, synthesize_control};
use bncontrol::{BnError, BooleanNetwork, ControlNodeSet, Gf2Matrix};
use bncontrol::model::simulate;
use common::{random_matrix, random_set, random_vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn rank_test_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..300 {
        let n = rng.gen_range(1..=9);
        let a = random_matrix(n, rng.gen_range(0.1..0.6), &mut rng);
        let u = random_set(n, rng.gen_range(0.0..0.6), &mut rng);
        let bn = BooleanNetwork::from_xor_matrix(&a).unwrap();
        let cert = is_controllable_xor(&a, &u).unwrap();
        assert_eq!(cert.controllable, is_controllable_bruteforce(&bn, &u).unwrap(), "A={a:?} U={u:?}");
        assert_eq!(cert.controllable, cert.rank() == n);
    }
}

#[test]
fn greedy_set_is_controllable() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=9);
        let a = random_matrix(n, 0.3, &mut rng);
        let u = construct_control_node_set(&a).unwrap();
        let bn = BooleanNetwork::from_xor_matrix(&a).unwrap();
        assert!(is_controllable_bruteforce(&bn, &u).unwrap());
        let min = min_control_set_bruteforce(&bn, n).unwrap().unwrap();
        assert!(min.len() <= u.len());
    }
}

#[test]
fn synthesized_schemes_reach_target() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    while checked < 150 {
        let n = rng.gen_range(1..=40);
        let a = random_matrix(n, (2.5 / n as f64).min(0.5), &mut rng);
        let u = random_set(n, 0.3, &mut rng);
        let Ok(schedule) = basis_schedule(&a, &u) else {
            assert!(!is_controllable_xor(&a, &u).unwrap().controllable);
            continue;
        };
        assert_eq!(schedule.pairs.len(), n);
        let bn = BooleanNetwork::from_xor_matrix(&a).unwrap();
        for _ in 0..4 {
            let x0 = random_vector(n, &mut rng);
            let b = random_vector(n, &mut rng);
            let scheme = synthesize_control(&a, &u, &schedule, &x0, &b).unwrap();
            assert_eq!(scheme.steps(), schedule.max_power() + 1);
            assert!(scheme.is_supported_on(&u));
            let xs = simulate(&bn, &u, &x0, &scheme).unwrap();
            assert_eq!(xs.last().unwrap(), &b);
        }
        checked += 1;
    }
}

#[test]
fn controllability_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let n = rng.gen_range(2..=12);
        let a = random_matrix(n, 0.3, &mut rng);
        let u = random_set(n, 0.3, &mut rng);
        if is_controllable_xor(&a, &u).unwrap().controllable {
            let bigger = ControlNodeSet::new(n, u.members().iter().copied().chain([rng.gen_range(1..=n)])).unwrap();
            assert!(is_controllable_xor(&a, &bigger).unwrap().controllable);
        }
    }
}

#[test]
fn identity_wiring_needs_every_node() {
    for n in 1..=6 {
        let bn = BooleanNetwork::from_xor_matrix(&Gf2Matrix::identity(n)).unwrap();
        assert_eq!(min_control_set_bruteforce(&bn, n).unwrap(), Some(ControlNodeSet::all(n)));
        assert_eq!(min_control_set_bruteforce(&bn, n - 1).unwrap(), None);
        assert_eq!(construct_control_node_set(&Gf2Matrix::identity(n)).unwrap(), ControlNodeSet::all(n));
    }
}

#[test]
fn uncontrollable_schedule_is_an_error() {
    let a = common::three_node_matrix();
    assert_eq!(basis_schedule(&a, &common::set(3, &[1])).unwrap_err(), BnError::NotControllable);
    assert!(is_controllable_xor(&Gf2Matrix::zeros(2, 3), &ControlNodeSet::empty()).is_err());
}

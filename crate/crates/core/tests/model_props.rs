mod common;

use bncontrol::model::{control_for_target, controlled_step, degree_profile, simulate, trajectory, xor_matrix};
use bncontrol::{BnError, BooleanNetwork, ControlNodeSet, ControlScheme, Gf2Vector, NodeRule, RuleKind};
use common::{seven_node, random_vector, set, three_node, v};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tuples(k: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << k).map(move |x| (0..k).map(|j| x >> j & 1 == 1).collect())
}

#[test]
fn majority_truth_tables() {
    for k in 1..=7 {
        let r = NodeRule::majority((1..=k).collect());
        for t in tuples(k) {
            let ones = t.iter().filter(|&&b| b).count();
            assert_eq!(r.eval_tuple(&t), ones * 2 >= k, "k={k} t={t:?}");
        }
    }
}

#[test]
fn mtbi_truth_tables() {
    for half in 1..=4 {
        let k = 2 * half;
        let r = NodeRule::mtbi((1..=k).collect());
        for t in tuples(k) {
            let ones = t.iter().filter(|&&b| b).count();
            let want = if ones == half { t[0] } else { ones > half };
            assert_eq!(r.eval_tuple(&t), want);
        }
    }
}

#[test]
fn phi_characterization() {
    for k in 2..=9 {
        let r = NodeRule::phi((1..=k).collect());
        for t in tuples(k) {
            let ones = t.iter().filter(|&&b| b).count();
            let want = match ones {
                0 => true,
                o if o == k => false,
                _ => t[0],
            };
            assert_eq!(r.eval_tuple(&t), want, "k={k} t={t:?}");
        }
    }
}

#[test]
fn phi_inputs_are_all_relevant() {
    for k in 3..=9 {
        let r = NodeRule::phi((1..=k).collect());
        for i in 0..k {
            let relevant = tuples(k).any(|t| {
                let mut s = t.clone();
                s[i] = !s[i];
                r.eval_tuple(&t) != r.eval_tuple(&s)
            });
            assert!(relevant, "k={k} input {i}");
        }
    }
}

#[test]
fn threshold_and_table_rules() {
    let r = NodeRule::new(RuleKind::IntThreshold { coeffs: vec![1, -1, -1], threshold: 0 }, vec![1, 2, 3]);
    let p = NodeRule::phi(vec![1, 2, 3]);
    let x = NodeRule::xor(vec![1, 2, 3]);
    let table: Vec<bool> = tuples(3).map(|t| x.eval_tuple(&t)).collect();
    let tt = NodeRule::new(RuleKind::TruthTable(table), vec![1, 2, 3]);
    for t in tuples(3) {
        assert_eq!(r.eval_tuple(&t), p.eval_tuple(&t));
        assert_eq!(tt.eval_tuple(&t), x.eval_tuple(&t));
    }
    let first_bit = NodeRule::new(RuleKind::TruthTable(vec![false, true, false, true]), vec![1, 2]);
    assert!(first_bit.eval_tuple(&[true, false]));
    assert!(!first_bit.eval_tuple(&[false, true]));
}

fn random_rule<R: Rng>(n: usize, rng: &mut R) -> NodeRule {
    let k = rng.gen_range(1..=n.min(6));
    let inputs: Vec<usize> = sample(rng, n, k).into_iter().map(|j| j + 1).collect();
    match rng.gen_range(0..6) {
        0 => NodeRule::xor(inputs),
        1 => NodeRule::majority(inputs),
        2 if k % 2 == 0 => NodeRule::mtbi(inputs),
        3 if k >= 2 => NodeRule::phi(inputs),
        4 => {
            let coeffs = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
            NodeRule::new(RuleKind::IntThreshold { coeffs, threshold: rng.gen_range(-2..=2) }, inputs)
        }
        _ => {
            let table = (0..1 << k).map(|_| rng.gen()).collect();
            NodeRule::new(RuleKind::TruthTable(table), inputs)
        }
    }
}

#[test]
fn packed_step_matches_rule_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(1..=70);
        let bn = BooleanNetwork::new((0..n).map(|_| random_rule(n, &mut rng)).collect()).unwrap();
        for _ in 0..5 {
            let x = random_vector(n, &mut rng);
            let y = bn.step(&x).unwrap();
            for i in 1..=n {
                let r = bn.rule(i);
                let vals: Vec<bool> = r.inputs.iter().map(|&j| x.get(j)).collect();
                assert_eq!(y.get(i), r.eval_tuple(&vals));
            }
            if n <= 64 {
                assert_eq!(bn.step_bits(x.to_u64()), y.to_u64());
            }
        }
    }
}

#[test]
fn control_for_target_hits_desired_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(1..=20);
        let bn = BooleanNetwork::new((0..n).map(|_| random_rule(n, &mut rng)).collect()).unwrap();
        let u = ControlNodeSet::new(n, (1..=n).filter(|_| rng.gen_bool(0.5))).unwrap();
        let x = random_vector(n, &mut rng);
        let desired: Vec<(usize, bool)> = u.members().iter().map(|&i| (i, rng.gen())).collect();
        let sig = control_for_target(&bn, &u, &x, &desired).unwrap();
        let y = controlled_step(&bn, &u, &x, &sig).unwrap();
        let f = bn.step(&x).unwrap();
        for i in 1..=n {
            match desired.iter().find(|(j, _)| *j == i) {
                Some(&(_, b)) => assert_eq!(y.get(i), b),
                None => assert_eq!(y.get(i), f.get(i)),
            }
        }
    }
}

#[test]
fn seven_node_controlled_step() {
    let bn = seven_node();
    let u = set(7, &[2, 3, 5, 6, 7]);
    let x1 = controlled_step(&bn, &u, &v("1111000"), &v("0110110")).unwrap();
    assert_eq!(x1, v("1001110"));
    assert_eq!(
        controlled_step(&bn, &u, &v("1111000"), &v("1000000")).unwrap_err(),
        BnError::ControlOffSupport(1)
    );
}

#[test]
fn simulate_and_trajectory_rows() {
    let bn = three_node();
    let u = set(3, &[2]);
    let scheme = ControlScheme::new(vec![v("010"), v("000"), v("010")]);
    let xs = simulate(&bn, &u, &v("001"), &scheme).unwrap();
    assert_eq!(xs.len(), 4);
    assert_eq!(xs[3], v("010"));
    let tr = trajectory(&bn, &u, &v("001"), &scheme).unwrap();
    let labels: Vec<String> = tr.rows().into_iter().map(|(l, _)| l).collect();
    assert_eq!(labels, ["x(0)", "F(x(0))", "x(1)", "F(x(1))", "x(2)", "F(x(2))", "x(3)"]);
    assert_eq!(tr.final_state(), &v("010"));
    assert_eq!(scheme.horizon(), Some(2));
    assert_eq!(ControlScheme::new(vec![]).horizon(), None);
}

#[test]
fn validation_errors() {
    assert!(BooleanNetwork::new(vec![]).is_err());
    assert!(matches!(
        BooleanNetwork::new(vec![NodeRule::xor(vec![2])]),
        Err(BnError::IndexOutOfRange { index: 2, n: 1 })
    ));
    assert!(BooleanNetwork::new(vec![NodeRule::xor(vec![1, 1])]).is_err());
    assert!(BooleanNetwork::new(vec![NodeRule::mtbi(vec![1, 2, 3]), NodeRule::xor(vec![]), NodeRule::xor(vec![])]).is_err());
    assert!(BooleanNetwork::new(vec![NodeRule::phi(vec![1])]).is_err());
    assert!(BooleanNetwork::new(vec![NodeRule::majority(vec![])]).is_err());
    assert!(BooleanNetwork::new(vec![NodeRule::new(RuleKind::TruthTable(vec![true]), vec![1])]).is_err());
    assert!(BooleanNetwork::new(vec![NodeRule::xor(vec![])]).is_ok());
    assert!(ControlNodeSet::new(3, [4]).is_err());
    assert!(three_node().step(&v("01")).is_err());
}

#[test]
fn degree_and_matrix_views() {
    let p = degree_profile(&seven_node());
    assert!(p.is_k_k_regular(3));
    assert_eq!(p.regular_degree(), Some(3));
    assert_eq!(p.self_loops(), 5);
    let a = xor_matrix(&three_node()).unwrap();
    assert_eq!(a, common::three_node_matrix());
    assert!(matches!(xor_matrix(&seven_node()), Err(BnError::NotXor(1))));
    let x = Gf2Vector::parse("101").unwrap();
    assert_eq!(three_node().step(&x).unwrap(), v("101"));
}

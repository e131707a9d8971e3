//! Boolean networks with typed update rules and the controlled update.

use std::collections::BTreeSet;

use crate::error::{BnError, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Xor,
    /// 1 iff at least half of the inputs are 1.
    Majority,
    /// Even-arity majority; the first input breaks ties.
    Mtbi,
    /// (k-2)x_1 - x_2 - ... - x_k >= 0; the first input is the key input.
    PhiK,
    /// sum a_j x_j >= threshold.
    IntThreshold { coeffs: Vec<i64>, threshold: i64 },
    /// Output for input tuple t is `table[sum_j t_j << j]` (first input is bit 0).
    TruthTable(Vec<bool>),
}

impl RuleKind {
    pub fn name(&self) -> &'static str {
        match self {
            RuleKind::Xor => "xor",
            RuleKind::Majority => "majority",
            RuleKind::Mtbi => "mtbi",
            RuleKind::PhiK => "phi",
            RuleKind::IntThreshold { .. } => "threshold",
            RuleKind::TruthTable(_) => "table",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeRule {
    pub kind: RuleKind,
    pub inputs: Vec<usize>,
}

impl NodeRule {
    pub fn new(kind: RuleKind, inputs: Vec<usize>) -> Self {
        NodeRule { kind, inputs }
    }

    pub fn xor(inputs: Vec<usize>) -> Self {
        Self::new(RuleKind::Xor, inputs)
    }

    pub fn majority(inputs: Vec<usize>) -> Self {
        Self::new(RuleKind::Majority, inputs)
    }

    pub fn mtbi(inputs: Vec<usize>) -> Self {
        Self::new(RuleKind::Mtbi, inputs)
    }

    pub fn phi(inputs: Vec<usize>) -> Self {
        Self::new(RuleKind::PhiK, inputs)
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    fn validate(&self, node: usize, n: usize) -> Result<()> {
        let bad = |reason: String| Err(BnError::InvalidRule { node, reason });
        let mut seen = BTreeSet::new();
        for &j in &self.inputs {
            if j == 0 || j > n {
                return Err(BnError::IndexOutOfRange { index: j, n });
            }
            if !seen.insert(j) {
                return bad(format!("input x{j} listed twice"));
            }
        }
        let k = self.arity();
        match &self.kind {
            RuleKind::Xor => {}
            RuleKind::Majority => {
                if k == 0 {
                    return bad("majority needs at least one input".into());
                }
            }
            RuleKind::Mtbi => {
                if k == 0 || !k.is_multiple_of(2) {
                    return bad(format!("mtbi needs a positive even arity, got {k}"));
                }
            }
            RuleKind::PhiK => {
                if k < 2 {
                    return bad(format!("phi needs arity at least 2, got {k}"));
                }
            }
            RuleKind::IntThreshold { coeffs, .. } => {
                if coeffs.len() != k {
                    return bad(format!("{} coefficients for {k} inputs", coeffs.len()));
                }
            }
            RuleKind::TruthTable(t) => {
                if k > 20 {
                    return bad(format!("truth table arity {k} too large"));
                }
                if t.len() != 1usize << k {
                    return bad(format!("truth table has {} rows, expected {}", t.len(), 1usize << k));
                }
            }
        }
        Ok(())
    }

    /// Evaluates the rule on the projected tuple `vals` (in input order).
    pub fn eval_tuple(&self, vals: &[bool]) -> bool {
        let ones = vals.iter().filter(|&&b| b).count();
        let k = vals.len();
        match &self.kind {
            RuleKind::Xor => ones % 2 == 1,
            RuleKind::Majority => 2 * ones >= k,
            RuleKind::Mtbi => {
                let half = k / 2;
                ones > half || (ones == half && vals[0])
            }
            RuleKind::PhiK => {
                let key = vals[0] as i64;
                let rest = (ones as i64) - key;
                (k as i64 - 2) * key - rest >= 0
            }
            RuleKind::IntThreshold { coeffs, threshold } => {
                let s: i64 = coeffs.iter().zip(vals).filter(|(_, &b)| b).map(|(c, _)| *c).sum();
                s >= *threshold
            }
            RuleKind::TruthTable(t) => {
                let idx = vals.iter().enumerate().fold(0usize, |acc, (j, &b)| acc | ((b as usize) << j));
                t[idx]
            }
        }
    }
}

pub fn eval_rule(rule: &NodeRule, state: &Gf2Vector) -> Result<bool> {
    for &j in &rule.inputs {
        if j == 0 || j > state.len() {
            return Err(BnError::IndexOutOfRange { index: j, n: state.len() });
        }
    }
    let vals: Vec<bool> = rule.inputs.iter().map(|&j| state.get(j)).collect();
    Ok(rule.eval_tuple(&vals))
}

/// Precompiled form of a rule for states packed into one machine word.
#[derive(Clone, Debug)]
enum Packed {
    Xor(u64),
    Majority(u64, u32),
    Mtbi(u64, u64, u32),
    Phi(u64, u64, i64),
    General,
}

#[derive(Clone, Debug)]
pub struct BooleanNetwork {
    n: usize,
    rules: Vec<NodeRule>,
    packed: Vec<Packed>,
}

impl PartialEq for BooleanNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rules == other.rules
    }
}

impl Eq for BooleanNetwork {}

fn mask_of(inputs: &[usize]) -> u64 {
    inputs.iter().fold(0u64, |m, &j| m | (1u64 << (j - 1)))
}

impl BooleanNetwork {
    pub fn new(rules: Vec<NodeRule>) -> Result<Self> {
        let n = rules.len();
        if n == 0 {
            return Err(BnError::InvalidNetwork("network has no nodes".into()));
        }
        for (i, r) in rules.iter().enumerate() {
            r.validate(i + 1, n)?;
        }
        let packed = if n <= 64 {
            rules
                .iter()
                .map(|r| match &r.kind {
                    RuleKind::Xor => Packed::Xor(mask_of(&r.inputs)),
                    RuleKind::Majority => Packed::Majority(mask_of(&r.inputs), r.arity() as u32),
                    RuleKind::Mtbi => Packed::Mtbi(
                        mask_of(&r.inputs),
                        1u64 << (r.inputs[0] - 1),
                        (r.arity() / 2) as u32,
                    ),
                    RuleKind::PhiK => Packed::Phi(
                        mask_of(&r.inputs[1..]),
                        1u64 << (r.inputs[0] - 1),
                        r.arity() as i64 - 2,
                    ),
                    _ => Packed::General,
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(BooleanNetwork { n, rules, packed })
    }

    /// All-XOR network whose matrix is `a`.
    pub fn from_xor_matrix(a: &Gf2Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(BnError::DimensionMismatch { expected: a.rows(), found: a.cols() });
        }
        Self::new((1..=a.rows()).map(|i| NodeRule::xor(a.row(i).ones_iter().collect())).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> &[NodeRule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &NodeRule {
        &self.rules[i - 1]
    }

    pub fn is_all_xor(&self) -> bool {
        self.rules.iter().all(|r| r.kind == RuleKind::Xor)
    }

    fn check_len(&self, v: &Gf2Vector) -> Result<()> {
        if v.len() != self.n {
            return Err(BnError::DimensionMismatch { expected: self.n, found: v.len() });
        }
        Ok(())
    }

    /// F(state) for a state packed as bit i-1 = x_i; requires n <= 64.
    pub fn step_bits(&self, x: u64) -> u64 {
        assert!(self.n <= 64);
        let mut y = 0u64;
        for (i, p) in self.packed.iter().enumerate() {
            let bit = match p {
                Packed::Xor(m) => (x & m).count_ones() & 1 == 1,
                Packed::Majority(m, k) => 2 * (x & m).count_ones() >= *k,
                Packed::Mtbi(m, tb, half) => {
                    let c = (x & m).count_ones();
                    c > *half || (c == *half && x & tb != 0)
                }
                Packed::Phi(rest, key, km2) => {
                    let key = (x & key != 0) as i64;
                    km2 * key - (x & rest).count_ones() as i64 >= 0
                }
                Packed::General => {
                    let r = &self.rules[i];
                    let vals: Vec<bool> = r.inputs.iter().map(|&j| (x >> (j - 1)) & 1 == 1).collect();
                    r.eval_tuple(&vals)
                }
            };
            y |= (bit as u64) << i;
        }
        y
    }

    pub fn step(&self, state: &Gf2Vector) -> Result<Gf2Vector> {
        self.check_len(state)?;
        if self.n <= 64 {
            return Ok(Gf2Vector::from_u64(self.n, self.step_bits(state.to_u64())));
        }
        let mut out = Gf2Vector::zeros(self.n);
        for (i, r) in self.rules.iter().enumerate() {
            if eval_rule(r, state)? {
                out.set(i + 1, true);
            }
        }
        Ok(out)
    }
}

pub fn step(bn: &BooleanNetwork, state: &Gf2Vector) -> Result<Gf2Vector> {
    bn.step(state)
}

/// Sorted set of control nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ControlNodeSet {
    members: Vec<usize>,
}

impl ControlNodeSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        for &i in &set {
            if i == 0 || i > n {
                return Err(BnError::IndexOutOfRange { index: i, n });
            }
        }
        Ok(ControlNodeSet { members: set.into_iter().collect() })
    }

    pub fn all(n: usize) -> Self {
        ControlNodeSet { members: (1..=n).collect() }
    }

    pub fn empty() -> Self {
        ControlNodeSet::default()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn mask(&self, n: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(n);
        for &i in &self.members {
            v.set(i, true);
        }
        v
    }

    pub fn is_subset_of(&self, other: &ControlNodeSet) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }
}

/// Control signals u(0), ..., u(T).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ControlScheme {
    pub signals: Vec<Gf2Vector>,
}

impl ControlScheme {
    pub fn new(signals: Vec<Gf2Vector>) -> Self {
        ControlScheme { signals }
    }

    /// Number of controlled steps, T+1.
    pub fn steps(&self) -> usize {
        self.signals.len()
    }

    /// T, or None for the empty scheme.
    pub fn horizon(&self) -> Option<usize> {
        self.signals.len().checked_sub(1)
    }

    pub fn is_supported_on(&self, u: &ControlNodeSet) -> bool {
        self.signals.iter().all(|s| s.ones_iter().all(|i| u.contains(i)))
    }
}

pub fn controlled_step(
    bn: &BooleanNetwork,
    u_set: &ControlNodeSet,
    state: &Gf2Vector,
    u: &Gf2Vector,
) -> Result<Gf2Vector> {
    bn.check_len(u)?;
    if let Some(i) = u.ones_iter().find(|&i| !u_set.contains(i)) {
        return Err(BnError::ControlOffSupport(i));
    }
    let mut y = bn.step(state)?;
    y.xor_assign(u);
    Ok(y)
}

/// The signal u with u_i = desired_i xor f_i(state) on the assigned nodes, 0 elsewhere.
pub fn control_for_target(
    bn: &BooleanNetwork,
    u_set: &ControlNodeSet,
    state: &Gf2Vector,
    desired: &[(usize, bool)],
) -> Result<Gf2Vector> {
    let f = bn.step(state)?;
    control_for_image(&f, u_set, desired)
}

/// Same as [`control_for_target`] with F(state) already computed.
pub fn control_for_image(
    f: &Gf2Vector,
    u_set: &ControlNodeSet,
    desired: &[(usize, bool)],
) -> Result<Gf2Vector> {
    let mut u = Gf2Vector::zeros(f.len());
    for &(i, b) in desired {
        if i == 0 || i > f.len() {
            return Err(BnError::IndexOutOfRange { index: i, n: f.len() });
        }
        if !u_set.contains(i) {
            return Err(BnError::ControlOffSupport(i));
        }
        u.set(i, b ^ f.get(i));
    }
    Ok(u)
}

/// States x(0), ..., x(T+1) under the scheme.
pub fn simulate(
    bn: &BooleanNetwork,
    u_set: &ControlNodeSet,
    a: &Gf2Vector,
    scheme: &ControlScheme,
) -> Result<Vec<Gf2Vector>> {
    bn.check_len(a)?;
    let mut xs = vec![a.clone()];
    for u in &scheme.signals {
        let next = controlled_step(bn, u_set, xs.last().unwrap(), u)?;
        xs.push(next);
    }
    Ok(xs)
}

/// Rows x(0), F(x(0)), x(1), F(x(1)), ..., x(T+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub states: Vec<Gf2Vector>,
    pub images: Vec<Gf2Vector>,
}

impl Trajectory {
    pub fn final_state(&self) -> &Gf2Vector {
        self.states.last().unwrap()
    }

    /// Labelled rows in the order x(0), F(x(0)), x(1), ...
    pub fn rows(&self) -> Vec<(String, Gf2Vector)> {
        let mut out = Vec::new();
        for (t, x) in self.states.iter().enumerate() {
            out.push((format!("x({t})"), x.clone()));
            if let Some(f) = self.images.get(t) {
                out.push((format!("F(x({t}))"), f.clone()));
            }
        }
        out
    }
}

pub fn trajectory(
    bn: &BooleanNetwork,
    u_set: &ControlNodeSet,
    a: &Gf2Vector,
    scheme: &ControlScheme,
) -> Result<Trajectory> {
    let states = simulate(bn, u_set, a, scheme)?;
    let images = states[..scheme.steps()]
        .iter()
        .map(|x| bn.step(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { states, images })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
    pub self_loop: Vec<bool>,
}

impl DegreeProfile {
    pub fn is_k_k_regular(&self, k: usize) -> bool {
        self.in_degree.iter().all(|&d| d == k) && self.out_degree.iter().all(|&d| d == k)
    }

    pub fn self_loops(&self) -> usize {
        self.self_loop.iter().filter(|&&b| b).count()
    }

    /// The common degree if the digraph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = *self.in_degree.first()?;
        self.is_k_k_regular(k).then_some(k)
    }
}

pub fn degree_profile(bn: &BooleanNetwork) -> DegreeProfile {
    let n = bn.n();
    let mut in_degree = vec![0; n];
    let mut out_degree = vec![0; n];
    let mut self_loop = vec![false; n];
    for (i, r) in bn.rules().iter().enumerate() {
        in_degree[i] = r.inputs.len();
        for &j in &r.inputs {
            out_degree[j - 1] += 1;
            if j == i + 1 {
                self_loop[i] = true;
            }
        }
    }
    DegreeProfile { in_degree, out_degree, self_loop }
}

pub fn xor_matrix(bn: &BooleanNetwork) -> Result<Gf2Matrix> {
    let n = bn.n();
    let mut a = Gf2Matrix::zeros(n, n);
    for (i, r) in bn.rules().iter().enumerate() {
        if r.kind != RuleKind::Xor {
            return Err(BnError::NotXor(i + 1));
        }
        for &j in &r.inputs {
            a.set(i + 1, j, true);
        }
    }
    Ok(a)
}

//! Greedy forced-input extraction on regular majority networks and two-step control.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{BnError, Result};
use crate::gf2::Gf2Vector;
use crate::model::{control_for_target, controlled_step, degree_profile, BooleanNetwork, ControlNodeSet, ControlScheme, NodeRule, RuleKind};

/// Groups of forced inputs, the nodes they force, and the leftover nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub groups: Vec<Vec<usize>>,
    pub targets: Vec<usize>,
    pub residual: Vec<usize>,
}

impl Extraction {
    pub fn p(&self) -> usize {
        self.targets.len()
    }
}

fn regular_degree(bn: &BooleanNetwork) -> Result<usize> {
    degree_profile(bn)
        .regular_degree()
        .ok_or_else(|| BnError::InvalidNetwork("dependency digraph is not K-K regular".into()))
}

/// In-neighbours of `y` inside `r`, excluding `y`, ascending.
fn inner_inputs(bn: &BooleanNetwork, y: usize, r: &BTreeSet<usize>) -> Vec<usize> {
    let mut v: Vec<usize> = bn.rule(y).inputs.iter().copied().filter(|&j| j != y && r.contains(&j)).collect();
    v.sort_unstable();
    v
}

/// Repeatedly takes the smallest y in R with at least `group_size` in-neighbours in R \ {y},
/// and removes y together with its `group_size` smallest such in-neighbours.
pub fn greedy_extraction(bn: &BooleanNetwork, group_size: usize) -> Result<Extraction> {
    if group_size == 0 {
        return Err(BnError::InvalidParameter("group size must be positive".into()));
    }
    regular_degree(bn)?;
    let mut r: BTreeSet<usize> = (1..=bn.n()).collect();
    let mut groups = Vec::new();
    let mut targets = Vec::new();
    loop {
        let found = r.iter().find_map(|&y| {
            let ins = inner_inputs(bn, y, &r);
            (ins.len() >= group_size).then(|| (y, ins[..group_size].to_vec()))
        });
        let Some((y, group)) = found else { break };
        r.remove(&y);
        for j in &group {
            r.remove(j);
        }
        groups.push(group);
        targets.push(y);
    }
    Ok(Extraction { groups, targets, residual: r.into_iter().collect() })
}

/// U = V minus the forced targets.
pub fn control_set_from_extraction(ext: &Extraction, n: usize) -> ControlNodeSet {
    let t: BTreeSet<usize> = ext.targets.iter().copied().collect();
    ControlNodeSet::new(n, (1..=n).filter(|i| !t.contains(i))).expect("indices within range")
}

/// Extraction for a (2k+1)- or 2k-regular network, group size k+1.
pub fn majority_extraction(bn: &BooleanNetwork) -> Result<Extraction> {
    let deg = regular_degree(bn)?;
    if deg < 2 {
        return Err(BnError::InvalidNetwork(format!("degree {deg} is too small")));
    }
    greedy_extraction(bn, deg / 2 + 1)
}

fn check_extraction(bn: &BooleanNetwork, ext: &Extraction) -> Result<()> {
    let n = bn.n();
    let bad = |s: String| Err(BnError::BadExtraction(s));
    if ext.groups.len() != ext.targets.len() {
        return bad("group and target counts differ".into());
    }
    let mut seen = BTreeSet::new();
    for &i in ext.groups.iter().flatten().chain(&ext.targets) {
        if i == 0 || i > n {
            return Err(BnError::IndexOutOfRange { index: i, n });
        }
        if !seen.insert(i) {
            return bad(format!("x{i} used twice"));
        }
    }
    for (g, &y) in ext.groups.iter().zip(&ext.targets) {
        let rule = bn.rule(y);
        let k = g.len().checked_sub(1).filter(|&k| k >= 1);
        let Some(k) = k else {
            return bad(format!("group for x{y} is too small"));
        };
        let forced = match rule.kind {
            RuleKind::Majority => rule.arity() == 2 * k + 1 || rule.arity() == 2 * k,
            RuleKind::Mtbi => rule.arity() == 2 * k,
            _ => false,
        };
        if !forced {
            return bad(format!("a group of {} inputs does not force x{y}", g.len()));
        }
        if let Some(j) = g.iter().find(|j| !rule.inputs.contains(j) || **j == y) {
            return bad(format!("x{j} is not an input of x{y}"));
        }
    }
    Ok(())
}

/// u(0) writes b(y) into every member of y's group, u(1) writes b into every control node.
pub fn two_step_control(
    bn: &BooleanNetwork,
    ext: &Extraction,
    a: &Gf2Vector,
    b: &Gf2Vector,
) -> Result<ControlScheme> {
    check_extraction(bn, ext)?;
    let n = bn.n();
    for x in [a, b] {
        if x.len() != n {
            return Err(BnError::DimensionMismatch { expected: n, found: x.len() });
        }
    }
    let u = control_set_from_extraction(ext, n);
    let first: Vec<(usize, bool)> = ext
        .groups
        .iter()
        .zip(&ext.targets)
        .flat_map(|(g, &y)| g.iter().map(move |&j| (j, b.get(y))))
        .collect();
    let u0 = control_for_target(bn, &u, a, &first)?;
    let x1 = controlled_step(bn, &u, a, &u0)?;
    let second: Vec<(usize, bool)> = u.members().iter().map(|&i| (i, b.get(i))).collect();
    let u1 = control_for_target(bn, &u, &x1, &second)?;
    Ok(ControlScheme::new(vec![u0, u1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualCheck {
    /// A node of R with more than L in-neighbours in R \ {itself}, if any.
    pub violator: Option<usize>,
    pub bound: Ratio<i64>,
    pub size: usize,
    pub within_bound: bool,
}

impl ResidualCheck {
    pub fn passes(&self) -> bool {
        self.violator.is_none() && self.within_bound
    }
}

/// Checks the degree hypothesis on R and whether |R| <= K/(2K-L-1) * n.
pub fn residual_bound_check(bn: &BooleanNetwork, r: &[usize], big_k: usize, l: usize) -> Result<ResidualCheck> {
    let profile = degree_profile(bn);
    if !profile.is_k_k_regular(big_k) {
        return Err(BnError::InvalidNetwork(format!("dependency digraph is not {big_k}-{big_k} regular")));
    }
    if 2 * big_k <= l + 1 {
        return Err(BnError::InvalidParameter(format!("2K-L-1 must be positive (K={big_k}, L={l})")));
    }
    let set: BTreeSet<usize> = r.iter().copied().collect();
    for &z in &set {
        if z == 0 || z > bn.n() {
            return Err(BnError::IndexOutOfRange { index: z, n: bn.n() });
        }
    }
    let violator = set.iter().copied().find(|&z| inner_inputs(bn, z, &set).len() > l);
    let bound = Ratio::new((big_k * bn.n()) as i64, (2 * big_k - l - 1) as i64);
    let size = set.len();
    let within_bound = Ratio::from_integer(size as i64) <= bound;
    Ok(ResidualCheck { violator, bound, size, within_bound })
}

/// Input lists of a random K-K regular digraph: a union of K edge-disjoint permutations.
pub fn random_regular_digraph<R: Rng>(n: usize, big_k: usize, rng: &mut R) -> Result<Vec<Vec<usize>>> {
    if big_k == 0 || big_k > n {
        return Err(BnError::InvalidParameter(format!("need 1 <= K <= n, got K={big_k}, n={n}")));
    }
    'outer: for _ in 0..1000 {
        let mut inputs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for _ in 0..big_k {
            let mut placed = false;
            for _ in 0..200 {
                if let Some(perm) = random_matching(n, &inputs, rng) {
                    for (i, j) in perm.into_iter().enumerate() {
                        inputs[i].push(j);
                    }
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'outer;
            }
        }
        for l in inputs.iter_mut() {
            l.sort_unstable();
        }
        return Ok(inputs);
    }
    Err(BnError::InvalidParameter(format!("could not sample a {big_k}-regular digraph on {n} nodes")))
}

/// A permutation sigma with x_{sigma(i)} not yet an input of x_i, or None on a dead end.
fn random_matching<R: Rng>(n: usize, inputs: &[Vec<usize>], rng: &mut R) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut free: Vec<usize> = (1..=n).collect();
    let mut perm = vec![0; n];
    for i in order {
        let choices: Vec<usize> = (0..free.len()).filter(|&c| !inputs[i].contains(&free[c])).collect();
        let &c = choices.choose(rng)?;
        perm[i] = free.swap_remove(c);
    }
    Some(perm)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdKind {
    Majority,
    Mtbi,
}

/// Random K-K regular network of majority (or MTBI, first input as tie-breaker) rules.
pub fn random_regular_network(n: usize, big_k: usize, kind: ThresholdKind, seed: u64) -> Result<BooleanNetwork> {
    if kind == ThresholdKind::Mtbi && !big_k.is_multiple_of(2) {
        return Err(BnError::InvalidParameter("MTBI needs an even degree".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = random_regular_digraph(n, big_k, &mut rng)?;
    let rules = lists
        .into_iter()
        .map(|ins| match kind {
            ThresholdKind::Majority => NodeRule::majority(ins),
            ThresholdKind::Mtbi => NodeRule::mtbi(ins),
        })
        .collect();
    BooleanNetwork::new(rules)
}

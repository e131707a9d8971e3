//! Layered threshold families with their control strategies, and structured XOR families.

use std::fmt;

use crate::error::{BnError, Result};
use crate::gf2::{mat_pow_vec, Gf2Matrix, Gf2Vector};
use crate::model::{control_for_image, controlled_step, BooleanNetwork, ControlNodeSet, ControlScheme, NodeRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// (2k+1)-ary majority, layer width 2k+2, leave-one-out wiring.
    MajorityOdd,
    /// 2k-ary majority, layer width 2k+1, leave-one-out wiring.
    MajorityEven,
    /// 2k-ary MTBI, layer width 2k, own node as tie-breaker.
    Mtbi,
    /// phi_k, layer width k, cyclic windows with the own node as key input.
    Phi,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::MajorityOdd => "majority-odd",
            Family::MajorityEven => "majority-even",
            Family::Mtbi => "mtbi",
            Family::Phi => "phi",
        }
    }

    pub fn width(self, k: usize) -> usize {
        match self {
            Family::MajorityOdd => 2 * k + 2,
            Family::MajorityEven => 2 * k + 1,
            Family::Mtbi => 2 * k,
            Family::Phi => k,
        }
    }

    /// Number of control nodes per layer beyond the first.
    fn tail_controls(self, k: usize) -> usize {
        match self {
            Family::MajorityOdd | Family::MajorityEven => k,
            Family::Mtbi => k - 1,
            Family::Phi => 0,
        }
    }

    fn min_k(self) -> usize {
        match self {
            Family::Phi => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = BnError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority-odd" => Ok(Family::MajorityOdd),
            "majority-even" => Ok(Family::MajorityEven),
            "mtbi" => Ok(Family::Mtbi),
            "phi" => Ok(Family::Phi),
            _ => Err(BnError::InvalidParameter(format!("unknown family '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LayeredFamilySpec {
    pub family: Family,
    pub k: usize,
    pub m: usize,
}

impl LayeredFamilySpec {
    pub fn new(family: Family, k: usize, m: usize) -> Result<Self> {
        if k < family.min_k() {
            return Err(BnError::InvalidParameter(format!("{family} needs k >= {}, got {k}", family.min_k())));
        }
        if m == 0 {
            return Err(BnError::InvalidParameter("m must be positive".into()));
        }
        Ok(LayeredFamilySpec { family, k, m })
    }

    pub fn width(&self) -> usize {
        self.family.width(self.k)
    }

    pub fn n(&self) -> usize {
        self.m * self.width()
    }

    /// Flat index of x^l_j.
    pub fn index(&self, l: usize, j: usize) -> usize {
        (l - 1) * self.width() + j
    }

    pub fn control_set_size(&self) -> usize {
        self.width() + (self.m - 1) * self.family.tail_controls(self.k)
    }

    /// Layer l of a full state.
    pub fn layer(&self, x: &Gf2Vector, l: usize) -> Gf2Vector {
        x.slice(self.index(l, 1), self.index(l, self.width()))
    }
}

/// Inputs of x^{l+1}_j as positions 1..=w within the source layer.
fn layer_inputs(family: Family, k: usize, j: usize) -> Vec<usize> {
    let w = family.width(k);
    match family {
        Family::MajorityOdd | Family::MajorityEven => (1..=w).filter(|&i| i != j).collect(),
        Family::Mtbi => std::iter::once(j).chain((1..=w).filter(|&i| i != j)).collect(),
        Family::Phi => (0..k).map(|d| (j - 1 + d) % w + 1).collect(),
    }
}

fn layer_rule(family: Family, inputs: Vec<usize>) -> NodeRule {
    match family {
        Family::MajorityOdd | Family::MajorityEven => NodeRule::majority(inputs),
        Family::Mtbi => NodeRule::mtbi(inputs),
        Family::Phi => NodeRule::phi(inputs),
    }
}

pub fn gen_family(spec: &LayeredFamilySpec) -> Result<(BooleanNetwork, ControlNodeSet)> {
    let spec = LayeredFamilySpec::new(spec.family, spec.k, spec.m)?;
    let w = spec.width();
    let mut rules = Vec::with_capacity(spec.n());
    for l in 1..=spec.m {
        let src = if l == 1 { spec.m } else { l - 1 };
        for j in 1..=w {
            let ins = layer_inputs(spec.family, spec.k, j).into_iter().map(|i| spec.index(src, i)).collect();
            rules.push(layer_rule(spec.family, ins));
        }
    }
    let bn = BooleanNetwork::new(rules)?;
    let tail = spec.family.tail_controls(spec.k);
    let mut u: Vec<usize> = (1..=w).collect();
    for l in 2..=spec.m {
        u.extend((1..=tail).map(|j| spec.index(l, j)));
    }
    let u = ControlNodeSet::new(spec.n(), u)?;
    Ok((bn, u))
}

/// Applies the layer map G (one layer feeding the next) to `y`.
pub fn layer_map_eval(family: Family, k: usize, y: &Gf2Vector) -> Result<Gf2Vector> {
    let w = family.width(k);
    if y.len() != w {
        return Err(BnError::DimensionMismatch { expected: w, found: y.len() });
    }
    let mut out = Gf2Vector::zeros(w);
    for j in 1..=w {
        let ins = layer_inputs(family, k, j);
        let vals: Vec<bool> = ins.iter().map(|&i| y.get(i)).collect();
        let rule = layer_rule(family, ins);
        out.set(j, rule.eval_tuple(&vals));
    }
    Ok(out)
}

fn mixed_count(v: &Gf2Vector) -> Result<usize> {
    let d = v.count_ones();
    if d == 0 || d == v.len() {
        return Err(BnError::InvalidParameter(format!("{v} must contain both a 0 and a 1")));
    }
    Ok(d)
}

fn ones_then_zeros(ones: usize, zeros: usize) -> Gf2Vector {
    let mut bits = vec![true; ones];
    bits.extend(std::iter::repeat_n(false, zeros));
    Gf2Vector::from_bits(&bits)
}

/// For v of length k+2 with d ones: 1^{k+1-d} 0^{d-1}.
pub fn alpha1(v: &Gf2Vector) -> Result<Gf2Vector> {
    let d = mixed_count(v)?;
    let k = v.len() - 2;
    Ok(ones_then_zeros(k + 1 - d, d - 1))
}

/// For v of length k+1 with d ones: 1^{k-d} 0^{d}.
pub fn alpha2(v: &Gf2Vector) -> Result<Gf2Vector> {
    let d = mixed_count(v)?;
    let k = v.len() - 1;
    Ok(ones_then_zeros(k - d, d))
}

/// For v of length k+1 with d ones: 1^{k-d} 0^{d-1}.
pub fn alpha3(v: &Gf2Vector) -> Result<Gf2Vector> {
    let d = mixed_count(v)?;
    let k = v.len() - 1;
    Ok(ones_then_zeros(k - d, d - 1))
}

enum Shape {
    AllOnes,
    AllZeros,
    Mixed,
}

fn shape(v: &Gf2Vector) -> Shape {
    match v.count_ones() {
        0 => Shape::AllZeros,
        c if c == v.len() => Shape::AllOnes,
        _ => Shape::Mixed,
    }
}

struct Runner<'a> {
    spec: LayeredFamilySpec,
    bn: &'a BooleanNetwork,
    u: &'a ControlNodeSet,
    x: Gf2Vector,
    signals: Vec<Gf2Vector>,
}

impl<'a> Runner<'a> {
    fn start(
        spec: LayeredFamilySpec,
        bn: &'a BooleanNetwork,
        u: &'a ControlNodeSet,
        a: &Gf2Vector,
        b: &Gf2Vector,
    ) -> Result<Self> {
        let (gbn, gu) = gen_family(&spec)?;
        if *bn != gbn {
            return Err(BnError::FamilyMismatch(format!("network is not the {} network for k={}, m={}", spec.family, spec.k, spec.m)));
        }
        if *u != gu {
            return Err(BnError::FamilyMismatch("control-node set differs from the construction".into()));
        }
        for v in [a, b] {
            if v.len() != spec.n() {
                return Err(BnError::DimensionMismatch { expected: spec.n(), found: v.len() });
            }
        }
        Ok(Runner { spec, bn, u, x: a.clone(), signals: Vec::new() })
    }

    fn image(&self) -> Result<Gf2Vector> {
        self.bn.step(&self.x)
    }

    /// Assignment of `vals` to x^l_1, x^l_2, ...
    fn assign(&self, l: usize, vals: &Gf2Vector) -> Vec<(usize, bool)> {
        (1..=vals.len()).map(|j| (self.spec.index(l, j), vals.get(j))).collect()
    }

    fn apply(&mut self, y: &Gf2Vector, desired: &[(usize, bool)]) -> Result<()> {
        let u = control_for_image(y, self.u, desired)?;
        self.x = controlled_step(self.bn, self.u, &self.x, &u)?;
        self.signals.push(u);
        Ok(())
    }

    fn terminate(mut self, b: &Gf2Vector) -> Result<ControlScheme> {
        let y = self.image()?;
        let desired: Vec<(usize, bool)> = self.u.members().iter().map(|&i| (i, b.get(i))).collect();
        self.apply(&y, &desired)?;
        Ok(ControlScheme::new(self.signals))
    }
}

fn spec_from(family: Family, k: usize, bn: &BooleanNetwork) -> Result<LayeredFamilySpec> {
    let w = family.width(k);
    if w == 0 || !bn.n().is_multiple_of(w) {
        return Err(BnError::FamilyMismatch(format!("{} nodes is not a multiple of the layer width {w}", bn.n())));
    }
    LayeredFamilySpec::new(family, k, bn.n() / w)
}

/// Control strategy for the (2k+1)-(2k+1) majority family; reaches b at time m.
pub fn strategy_majority_odd(bn: &BooleanNetwork, u: &ControlNodeSet, k: usize, a: &Gf2Vector, b: &Gf2Vector) -> Result<ControlScheme> {
    let spec = spec_from(Family::MajorityOdd, k, bn)?;
    let mut run = Runner::start(spec, bn, u, a, b)?;
    let m = spec.m;
    let w = spec.width();
    for t in 0..m.saturating_sub(1) {
        let y = run.image()?;
        let target = spec.layer(b, m - t);
        let p = target.slice(k + 1, 2 * k + 2);
        let layer1 = match shape(&p) {
            Shape::AllOnes => Gf2Vector::ones(w),
            Shape::AllZeros => Gf2Vector::zeros(w),
            Shape::Mixed => {
                let v = alpha1(&p)?.concat(&p);
                if (m - t) % 2 == 1 { v } else { v.complement() }
            }
        };
        let desired = run.assign(1, &layer1);
        run.apply(&y, &desired)?;
    }
    run.terminate(b)
}

/// Control strategy for the 2k-2k majority family; reaches b at time m.
pub fn strategy_majority_even(bn: &BooleanNetwork, u: &ControlNodeSet, k: usize, a: &Gf2Vector, b: &Gf2Vector) -> Result<ControlScheme> {
    let spec = spec_from(Family::MajorityEven, k, bn)?;
    let mut run = Runner::start(spec, bn, u, a, b)?;
    let m = spec.m;
    let w = spec.width();
    for t in 0..m.saturating_sub(1) {
        let y = run.image()?;
        let target = spec.layer(b, m - t);
        let p = target.slice(k + 1, 2 * k + 1);
        let layer1 = match shape(&p) {
            Shape::AllOnes => Gf2Vector::ones(w),
            Shape::AllZeros => Gf2Vector::zeros(w),
            Shape::Mixed => {
                let q = if (m - t) % 2 == 1 { p } else { p.complement() };
                alpha2(&q)?.concat(&q)
            }
        };
        let mut desired = run.assign(1, &layer1);
        for l in 2..=m {
            let q = spec.layer(&y, l).slice(k + 1, 2 * k + 1);
            if let Shape::Mixed = shape(&q) {
                desired.extend(run.assign(l, &alpha2(&q)?));
            }
        }
        run.apply(&y, &desired)?;
    }
    run.terminate(b)
}

/// Control strategy for the 2k-2k MTBI family; reaches b at time m.
pub fn strategy_mtbi(bn: &BooleanNetwork, u: &ControlNodeSet, k: usize, a: &Gf2Vector, b: &Gf2Vector) -> Result<ControlScheme> {
    let spec = spec_from(Family::Mtbi, k, bn)?;
    let mut run = Runner::start(spec, bn, u, a, b)?;
    let m = spec.m;
    let w = spec.width();
    for t in 0..m.saturating_sub(1) {
        let y = run.image()?;
        let p = spec.layer(b, m - t).slice(k, 2 * k);
        let layer1 = match shape(&p) {
            Shape::AllOnes => Gf2Vector::ones(w),
            Shape::AllZeros => Gf2Vector::zeros(w),
            Shape::Mixed => alpha3(&p)?.concat(&p),
        };
        let desired = run.assign(1, &layer1);
        run.apply(&y, &desired)?;
    }
    run.terminate(b)
}

/// Control strategy for the phi_k family; reaches b at time m.
pub fn strategy_phi(bn: &BooleanNetwork, u: &ControlNodeSet, k: usize, a: &Gf2Vector, b: &Gf2Vector) -> Result<ControlScheme> {
    let spec = spec_from(Family::Phi, k, bn)?;
    let mut run = Runner::start(spec, bn, u, a, b)?;
    let m = spec.m;
    for t in 0..m {
        let y = run.image()?;
        let target = spec.layer(b, m - t);
        let odd = (m - t) % 2 == 1;
        let layer1 = match shape(&target) {
            Shape::Mixed => target,
            _ if odd => target,
            _ => target.complement(),
        };
        let desired = run.assign(1, &layer1);
        run.apply(&y, &desired)?;
    }
    Ok(ControlScheme::new(run.signals))
}

/// Dispatches to the strategy of `family`.
pub fn strategy(family: Family, bn: &BooleanNetwork, u: &ControlNodeSet, k: usize, a: &Gf2Vector, b: &Gf2Vector) -> Result<ControlScheme> {
    match family {
        Family::MajorityOdd => strategy_majority_odd(bn, u, k, a, b),
        Family::MajorityEven => strategy_majority_even(bn, u, k, a, b),
        Family::Mtbi => strategy_mtbi(bn, u, k, a, b),
        Family::Phi => strategy_phi(bn, u, k, a, b),
    }
}

/// x_i <- x_i xor x_{i+1} xor ... xor x_{i+k-1} (cyclic), U = {x_{n-k+2}, ..., x_n}.
pub fn gen_xor_window(n: usize, k: usize) -> Result<(BooleanNetwork, ControlNodeSet)> {
    if k < 2 || n <= k {
        return Err(BnError::InvalidParameter(format!("need n > k >= 2, got n={n}, k={k}")));
    }
    let rules = (1..=n).map(|i| NodeRule::xor((0..k).map(|d| (i - 1 + d) % n + 1).collect())).collect();
    let bn = BooleanNetwork::new(rules)?;
    let u = ControlNodeSet::new(n, n - k + 2..=n)?;
    Ok((bn, u))
}

/// The vectors v^(i) = A^{(m_i - i)/(k-1)} e_{m_i}, m_i the control node congruent to i mod k-1.
pub fn window_witness_vectors(n: usize, k: usize) -> Result<Vec<Gf2Vector>> {
    let (bn, _) = gen_xor_window(n, k)?;
    let a = crate::model::xor_matrix(&bn)?;
    (1..=n)
        .map(|i| {
            let mi = (n - k + 2..=n).find(|&c| c % (k - 1) == i % (k - 1)).expect("one residue per class");
            mat_pow_vec(&a, (mi - i) / (k - 1), &Gf2Vector::unit(n, mi))
        })
        .collect()
}

/// Cyclic shift P_m on 2^m coordinates: P[i][i+1] = 1 (wrapping).
pub fn shift_matrix(m: usize) -> Result<Gf2Matrix> {
    if !(2..=20).contains(&m) {
        return Err(BnError::InvalidParameter(format!("m must be in 2..=20, got {m}")));
    }
    let n = 1usize << m;
    let mut p = Gf2Matrix::zeros(n, n);
    for i in 1..=n {
        p.set(i, i % n + 1, true);
    }
    Ok(p)
}

/// I + P + ... + P^{k-1} when k = 3 mod 4, P + ... + P^k when k = 1 mod 4.
pub fn circulant_matrix(m: usize, k: usize) -> Result<Gf2Matrix> {
    let p = shift_matrix(m)?;
    let n = p.rows();
    if k.is_multiple_of(2) || k < 3 || k > n - 1 {
        return Err(BnError::InvalidParameter(format!("k must be odd with 3 <= k <= {}, got {k}", n - 1)));
    }
    let (lo, hi) = if k % 4 == 3 { (0, k - 1) } else { (1, k) };
    let mut acc = Gf2Matrix::zeros(n, n);
    let mut pw = p.pow(lo as u64)?;
    for _ in lo..=hi {
        acc = acc.add(&pw)?;
        pw = pw.mul(&p)?;
    }
    Ok(acc)
}

/// 2^m-node k-k XOR network with the single control node x_{2^m}.
pub fn gen_xor_circulant(m: usize, k: usize) -> Result<(BooleanNetwork, ControlNodeSet)> {
    let a = circulant_matrix(m, k)?;
    let n = a.rows();
    Ok((BooleanNetwork::from_xor_matrix(&a)?, ControlNodeSet::new(n, [n])?))
}

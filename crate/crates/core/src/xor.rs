//! Controllability and control synthesis for XOR networks via Krylov spans.

use crate::error::{BnError, Result};
use crate::gf2::{mat_vec_mul, solve_coeffs, EchelonBasis, Gf2Matrix, Gf2Vector};
use crate::model::{ControlNodeSet, ControlScheme};

#[derive(Clone, Debug)]
pub struct ControllabilityCertificate {
    pub controllable: bool,
    /// Basis of W_U; `basis.originals()[s]` is `A^k e_i` for `generators[s] = (i, k)`.
    pub basis: EchelonBasis,
    pub generators: Vec<(usize, usize)>,
}

impl ControllabilityCertificate {
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }
}

/// Ordered (node, power) pairs whose vectors A^k e_i form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSchedule {
    pub pairs: Vec<(usize, usize)>,
}

impl BasisSchedule {
    pub fn max_power(&self) -> usize {
        self.pairs.iter().map(|&(_, k)| k).max().unwrap_or(0)
    }

    pub fn vectors(&self, a: &Gf2Matrix) -> Result<Vec<Gf2Vector>> {
        let n = a.rows();
        self.pairs
            .iter()
            .map(|&(i, k)| crate::gf2::mat_pow_vec(a, k, &Gf2Vector::unit(n, i)))
            .collect()
    }
}

fn check_square(a: &Gf2Matrix) -> Result<usize> {
    if !a.is_square() {
        return Err(BnError::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    Ok(a.rows())
}

fn check_members(u: &ControlNodeSet, n: usize) -> Result<()> {
    if let Some(&i) = u.members().iter().find(|&&i| i > n) {
        return Err(BnError::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

/// Computes W_U and decides whether it is the whole space.
pub fn is_controllable_xor(a: &Gf2Matrix, u: &ControlNodeSet) -> Result<ControllabilityCertificate> {
    let n = check_square(a)?;
    check_members(u, n)?;
    let mut basis = EchelonBasis::new(n);
    let mut generators = Vec::new();
    let mut frontier = Vec::new();
    for &i in u.members() {
        let e = Gf2Vector::unit(n, i);
        if basis.insert(&e) {
            generators.push((i, 0));
            frontier.push((i, 0, e));
        }
    }
    while !frontier.is_empty() && !basis.is_full() {
        let mut next = Vec::new();
        for (i, k, v) in frontier {
            let w = mat_vec_mul(a, &v)?;
            if basis.insert(&w) {
                generators.push((i, k + 1));
                next.push((i, k + 1, w));
            }
        }
        frontier = next;
    }
    Ok(ControllabilityCertificate { controllable: basis.is_full(), basis, generators })
}

/// Greedy control-node set: scan nodes in order, adding x_i whenever e_i is outside the current span.
pub fn construct_control_node_set(a: &Gf2Matrix) -> Result<ControlNodeSet> {
    let n = check_square(a)?;
    let mut basis = EchelonBasis::new(n);
    let mut members = Vec::new();
    for i in 1..=n {
        if basis.is_full() {
            break;
        }
        let mut v = Gf2Vector::unit(n, i);
        if basis.contains(&v) {
            continue;
        }
        members.push(i);
        while basis.insert(&v) {
            v = mat_vec_mul(a, &v)?;
        }
    }
    ControlNodeSet::new(n, members)
}

/// For each control node in ascending order, appends A^k e_j for k = 0, 1, ... while independent.
pub fn basis_schedule(a: &Gf2Matrix, u: &ControlNodeSet) -> Result<BasisSchedule> {
    let n = check_square(a)?;
    check_members(u, n)?;
    let mut basis = EchelonBasis::new(n);
    let mut pairs = Vec::with_capacity(n);
    for &j in u.members() {
        if pairs.len() == n {
            break;
        }
        let mut v = Gf2Vector::unit(n, j);
        let mut k = 0;
        while basis.insert(&v) {
            pairs.push((j, k));
            k += 1;
            v = mat_vec_mul(a, &v)?;
        }
    }
    if pairs.len() < n {
        return Err(BnError::NotControllable);
    }
    debug_assert!(pairs.iter().all(|&(_, k)| k < n));
    Ok(BasisSchedule { pairs })
}

/// Builds u(0..k*) driving `a` to `b` at time k*+1, k* the largest schedule power.
pub fn synthesize_control(
    a_mat: &Gf2Matrix,
    u: &ControlNodeSet,
    schedule: &BasisSchedule,
    a: &Gf2Vector,
    b: &Gf2Vector,
) -> Result<ControlScheme> {
    let n = check_square(a_mat)?;
    for x in [a, b] {
        if x.len() != n {
            return Err(BnError::DimensionMismatch { expected: n, found: x.len() });
        }
    }
    if let Some(&(i, _)) = schedule.pairs.iter().find(|(i, _)| !u.contains(*i)) {
        return Err(BnError::ControlOffSupport(i));
    }
    let kstar = schedule.max_power();
    let columns = schedule.vectors(a_mat)?;
    let mut rhs = crate::gf2::mat_pow_vec(a_mat, kstar + 1, a)?;
    rhs.xor_assign(b);
    let c = solve_coeffs(&columns, &rhs)?;
    let mut signals = vec![Gf2Vector::zeros(n); kstar + 1];
    for (s, &(i, k)) in schedule.pairs.iter().enumerate() {
        if c[s] {
            signals[kstar - k].flip(i);
        }
    }
    Ok(ControlScheme::new(signals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{simulate, BooleanNetwork};

    fn ex_a() -> Gf2Matrix {
        Gf2Matrix::parse_rows(&["011", "111", "100"]).unwrap()
    }

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::parse(s).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> ControlNodeSet {
        ControlNodeSet::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn small_example_controllability() {
        let a = ex_a();
        let c1 = is_controllable_xor(&a, &set(3, &[1])).unwrap();
        assert!(!c1.controllable);
        assert_eq!(c1.rank(), 2);
        let c2 = is_controllable_xor(&a, &set(3, &[2])).unwrap();
        assert!(c2.controllable);
        assert_eq!(c2.generators, vec![(2, 0), (2, 1), (2, 2)]);
        assert!(is_controllable_xor(&Gf2Matrix::identity(4), &ControlNodeSet::all(4)).unwrap().controllable);
        assert!(!is_controllable_xor(&a, &ControlNodeSet::empty()).unwrap().controllable);
    }

    #[test]
    fn greedy_sets() {
        assert_eq!(construct_control_node_set(&ex_a()).unwrap(), set(3, &[1, 2]));
        assert_eq!(construct_control_node_set(&Gf2Matrix::identity(5)).unwrap(), ControlNodeSet::all(5));
    }

    #[test]
    fn schedules() {
        let s = basis_schedule(&ex_a(), &set(3, &[2])).unwrap();
        assert_eq!(s.pairs, vec![(2, 0), (2, 1), (2, 2)]);
        let s = basis_schedule(&Gf2Matrix::identity(3), &ControlNodeSet::all(3)).unwrap();
        assert_eq!(s.pairs, vec![(1, 0), (2, 0), (3, 0)]);
        assert_eq!(basis_schedule(&ex_a(), &set(3, &[1])), Err(BnError::NotControllable));
    }

    #[test]
    fn synthesis_small_example() {
        let a = ex_a();
        let u = set(3, &[2]);
        let s = basis_schedule(&a, &u).unwrap();
        let sch = synthesize_control(&a, &u, &s, &v("001"), &v("010")).unwrap();
        assert_eq!(sch.signals, vec![v("010"), v("000"), v("010")]);
        let bn = BooleanNetwork::from_xor_matrix(&a).unwrap();
        let xs = simulate(&bn, &u, &v("001"), &sch).unwrap();
        assert_eq!(xs[3], v("010"));
    }

    #[test]
    fn zero_to_zero_is_zero_scheme() {
        let a = Gf2Matrix::identity(3);
        let u = ControlNodeSet::all(3);
        let s = basis_schedule(&a, &u).unwrap();
        let sch = synthesize_control(&a, &u, &s, &Gf2Vector::zeros(3), &Gf2Vector::zeros(3)).unwrap();
        assert_eq!(sch.steps(), 1);
        assert!(sch.signals[0].is_zero());
    }
}

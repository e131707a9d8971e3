//! Lower-bound inequalities and general upper bounds on control-node set sizes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{BnError, Result};
use crate::families::Family;

fn binomial(m: usize, i: usize) -> BigUint {
    if i > m {
        return BigUint::zero();
    }
    let mut c = BigUint::one();
    for j in 0..i {
        c = c * BigUint::from(m - j) / BigUint::from(j + 1);
    }
    c
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// 2^{(s+1)m} - (sum_{i=1}^{top} C(m,i)) * sum_{t=1}^{s} 2^{tm}.
fn inequality_rhs(s: usize, m: usize, top: usize) -> BigInt {
    let binom: BigUint = (1..=top).map(|i| binomial(m, i)).sum();
    let geo: BigInt = (1..=s).map(|t| pow2(t * m)).sum();
    pow2((s + 1) * m) - BigInt::from(binom) * geo
}

fn check_majority(n: usize, k: usize, s: usize) -> Result<()> {
    if !(n >= k && k >= 3 && s >= 1) {
        return Err(BnError::InvalidParameter(format!("need n >= k >= 3 and s >= 1, got n={n}, k={k}, s={s}")));
    }
    Ok(())
}

fn check_mtbi(n: usize, k: usize, s: usize) -> Result<()> {
    if !(k >= 2 && n >= 2 * k && s >= 1) {
        return Err(BnError::InvalidParameter(format!("need n >= 2k >= 4 and s >= 1, got n={n}, k={k}, s={s}")));
    }
    Ok(())
}

/// Lower-bound inequality for k-in majority networks with |U| = m and horizon s.
pub fn majority_inequality_holds(n: usize, k: usize, s: usize, m: usize) -> Result<bool> {
    check_majority(n, k, s)?;
    if m == 0 {
        return Err(BnError::InvalidParameter("m must be positive".into()));
    }
    Ok(pow2(n) <= inequality_rhs(s, m, k.div_ceil(2) - 1))
}

/// Lower-bound inequality for 2k-in MTBI networks with |U| = m and horizon s.
pub fn mtbi_inequality_holds(n: usize, k: usize, s: usize, m: usize) -> Result<bool> {
    check_mtbi(n, k, s)?;
    if m == 0 {
        return Err(BnError::InvalidParameter("m must be positive".into()));
    }
    Ok(pow2(n) <= inequality_rhs(s, m, k - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub closed_form: usize,
    /// Smallest m in 1..=n satisfying the inequality.
    pub inequality_min: usize,
}

fn scan(n: usize, holds: impl Fn(usize) -> Result<bool>) -> Result<usize> {
    for m in 1..=n {
        if holds(m)? {
            return Ok(m);
        }
    }
    Err(BnError::InvalidParameter("inequality fails at m = n".into()))
}

pub fn majority_lower_bound(n: usize, k: usize, s: usize) -> Result<LowerBound> {
    check_majority(n, k, s)?;
    let closed_form = k.div_ceil(2).max((n + 1).div_ceil(s + 1));
    let inequality_min = scan(n, |m| majority_inequality_holds(n, k, s, m))?;
    Ok(LowerBound { closed_form, inequality_min })
}

pub fn mtbi_lower_bound(n: usize, k: usize, s: usize) -> Result<LowerBound> {
    check_mtbi(n, k, s)?;
    let closed_form = k.max((n + 1).div_ceil(s + 1));
    let inequality_min = scan(n, |m| mtbi_inequality_holds(n, k, s, m))?;
    Ok(LowerBound { closed_form, inequality_min })
}

/// Size of the two-step control-node set guaranteed on any regular network of the family.
pub fn general_upper_bound(n: usize, k: usize, family: Family) -> Result<BigRational> {
    let (num, den, min_n) = match family {
        Family::MajorityOdd if k >= 1 => (3 * k * k + 6 * k + 2, 3 * k * k + 7 * k + 2, 2 * k + 1),
        Family::MajorityEven | Family::Mtbi if k >= 2 => (3 * k * k + 4 * k - 1, 3 * k * k + 5 * k - 2, 2 * k),
        Family::Phi => return Err(BnError::InvalidParameter("no general upper bound for the phi family".into())),
        _ => return Err(BnError::InvalidParameter(format!("k={k} is out of range for {family}"))),
    };
    if n < min_n {
        return Err(BnError::InvalidParameter(format!("{family} needs n >= {min_n}, got {n}")));
    }
    Ok(BigRational::new(BigInt::from(num) * BigInt::from(n), BigInt::from(den)))
}

pub fn rational_floor(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    /// In-degree the lower bound was evaluated for.
    pub arity: usize,
    pub closed_form_lb: usize,
    pub inequality_min_m: usize,
    pub upper_bound: BigRational,
    pub upper_floor: BigInt,
}

/// Both sides for a family parameter k (arity 2k+1 for majority-odd, 2k otherwise).
pub fn bounds_report(n: usize, k: usize, s: usize, family: Family) -> Result<BoundsReport> {
    let (arity, lb) = match family {
        Family::MajorityOdd => (2 * k + 1, majority_lower_bound(n, 2 * k + 1, s)?),
        Family::MajorityEven => (2 * k, majority_lower_bound(n, 2 * k, s)?),
        Family::Mtbi => (2 * k, mtbi_lower_bound(n, k, s)?),
        Family::Phi => return Err(BnError::InvalidParameter("no bounds for the phi family".into())),
    };
    let upper_bound = general_upper_bound(n, k, family)?;
    let upper_floor = rational_floor(&upper_bound);
    Ok(BoundsReport {
        family,
        n,
        k,
        s,
        arity,
        closed_form_lb: lb.closed_form,
        inequality_min_m: lb.inequality_min,
        upper_bound,
        upper_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majority_examples() {
        assert!(majority_inequality_holds(8, 3, 1, 8).unwrap());
        assert!(!majority_inequality_holds(8, 3, 1, 4).unwrap());
        assert_eq!(majority_lower_bound(8, 3, 1).unwrap().closed_form, 5);
        assert_eq!(majority_lower_bound(3, 3, 9).unwrap().closed_form, 2);
        assert!(majority_inequality_holds(2, 3, 1, 1).is_err());
    }

    #[test]
    fn mtbi_examples() {
        assert_eq!(mtbi_lower_bound(8, 2, 1).unwrap().closed_form, 5);
        assert_eq!(mtbi_lower_bound(10, 3, 2).unwrap().closed_form, 4);
        assert!(mtbi_inequality_holds(10, 3, 2, 10).unwrap());
        assert!(mtbi_lower_bound(3, 2, 1).is_err());
    }

    #[test]
    fn upper_examples() {
        let r = general_upper_bound(7, 1, Family::MajorityOdd).unwrap();
        assert_eq!(r, BigRational::new(77.into(), 12.into()));
        assert_eq!(rational_floor(&r), BigInt::from(6));
        let r = general_upper_bound(8, 2, Family::MajorityEven).unwrap();
        assert_eq!(r, BigRational::new(38.into(), 5.into()));
        assert_eq!(rational_floor(&r), BigInt::from(7));
        assert!(general_upper_bound(3, 2, Family::Mtbi).is_err());
        assert!(general_upper_bound(8, 1, Family::MajorityEven).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(40, 20), BigUint::from(137846528820u64));
    }
}

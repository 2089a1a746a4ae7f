//! Hirzebruch–Jung continued fractions `n/q = b1 - 1/(b2 - 1/(...))`.
//!
//! Everything here is exact: evaluation goes through [`BigRational`] and
//! expansion uses integer ceiling division only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContFracError {
    #[error("numerator and denominator must be positive (got {n}/{q})")]
    NonPositive { n: u64, q: u64 },
    #[error("{n}/{q}: denominator must be smaller than numerator")]
    NotProper { n: u64, q: u64 },
    #[error("{n} and {q} are not coprime")]
    NotCoprime { n: u64, q: u64 },
    #[error("chain entry {0} is below 1")]
    EntryTooSmall(i64),
    #[error("nested evaluation divides by zero at position {0}")]
    DivisionByZero(usize),
}

/// Value of a (possibly empty) chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HjValue {
    Finite(BigRational),
    /// The empty chain.
    Infinity,
}

impl HjValue {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            HjValue::Finite(r) => Some(r),
            HjValue::Infinity => None,
        }
    }
}

/// A reduced fraction `n/q` together with its expansion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HjFraction {
    pub n: u64,
    pub q: u64,
    pub expansion: Vec<i64>,
}

impl HjFraction {
    pub fn new(n: u64, q: u64) -> Result<Self, ContFracError> {
        let expansion = hj_expand(n, q)?;
        Ok(HjFraction { n, q, expansion })
    }

    /// Reads back a chain with entries `>= 2`.
    pub fn from_chain(chain: &[i64]) -> Result<Self, ContFracError> {
        if let Some(&b) = chain.iter().find(|&&b| b < 2) {
            return Err(ContFracError::EntryTooSmall(b));
        }
        let v = match hj_eval(chain)? {
            HjValue::Finite(v) => v,
            HjValue::Infinity => return Err(ContFracError::NonPositive { n: 0, q: 0 }),
        };
        let n = v.numer().to_u64().expect("chain value fits in u64");
        let q = v.denom().to_u64().expect("chain value fits in u64");
        Ok(HjFraction {
            n,
            q,
            expansion: chain.to_vec(),
        })
    }

    pub fn dual(&self) -> Self {
        HjFraction::new(self.n, self.n - self.q).expect("dual of a valid fraction is valid")
    }
}

fn check_input(n: u64, q: u64) -> Result<(), ContFracError> {
    if n == 0 || q == 0 {
        return Err(ContFracError::NonPositive { n, q });
    }
    if n == 1 && q == 1 {
        return Err(ContFracError::NotProper { n, q });
    }
    if q >= n && q != 1 {
        return Err(ContFracError::NotProper { n, q });
    }
    if n.gcd(&q) != 1 {
        return Err(ContFracError::NotCoprime { n, q });
    }
    Ok(())
}

/// Expansion of `n/q` with all entries `>= 2`.
pub fn hj_expand(n: u64, q: u64) -> Result<Vec<i64>, ContFracError> {
    check_input(n, q)?;
    let (mut a, mut b) = (n as u128, q as u128);
    let mut out = Vec::new();
    loop {
        let c = a.div_ceil(b);
        out.push(c as i64);
        let r = c * b - a;
        if r == 0 {
            break;
        }
        // a/b = c - r/b, continue with b/r
        a = b;
        b = r;
    }
    Ok(out)
}

/// Exact value of `b1 - 1/(b2 - ...)`.
pub fn hj_eval(chain: &[i64]) -> Result<HjValue, ContFracError> {
    if let Some(&b) = chain.iter().find(|&&b| b < 1) {
        return Err(ContFracError::EntryTooSmall(b));
    }
    let Some((&last, rest)) = chain.split_last() else {
        return Ok(HjValue::Infinity);
    };
    let mut v = BigRational::from_integer(BigInt::from(last));
    for (pos, &b) in rest.iter().enumerate().rev() {
        if v.is_zero() {
            return Err(ContFracError::DivisionByZero(pos + 1));
        }
        v = BigRational::from_integer(BigInt::from(b)) - v.recip();
    }
    Ok(HjValue::Finite(v))
}

/// Expansion of `n/(n-q)`.
pub fn hj_dual(n: u64, q: u64) -> Result<Vec<i64>, ContFracError> {
    check_input(n, q)?;
    if n == q {
        return Err(ContFracError::NotProper { n, q });
    }
    hj_expand(n, n - q)
}

/// Dual of the chain itself: expansion of `n/(n-q)` where `n/q` is the chain value.
pub fn hj_dual_chain(chain: &[i64]) -> Result<Vec<i64>, ContFracError> {
    let f = HjFraction::from_chain(chain)?;
    hj_dual(f.n, f.q)
}

/// Numerator and denominator of a positive finite chain value.
pub fn chain_fraction(chain: &[i64]) -> Result<(BigInt, BigInt), ContFracError> {
    match hj_eval(chain)? {
        HjValue::Finite(v) if v.is_positive() => Ok((v.numer().clone(), v.denom().clone())),
        HjValue::Finite(_) => Err(ContFracError::NonPositive { n: 0, q: 1 }),
        HjValue::Infinity => Err(ContFracError::NonPositive { n: 0, q: 0 }),
    }
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ceil_oracle(n: u64, q: u64) -> Vec<i64> {
        // independent route: repeated ceiling on exact rationals
        let mut x = ratio(n as i64, q as i64);
        let mut out = vec![];
        loop {
            let c = x.ceil();
            out.push(c.to_integer().to_i64().unwrap());
            if c == x {
                return out;
            }
            x = (c - x).recip();
        }
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(4, 1).unwrap(), vec![4]);
        assert_eq!(hj_expand(18, 11).unwrap(), ceil_oracle(18, 11));
        assert_eq!(hj_expand(18, 11).unwrap(), vec![2, 3, 4]);
        assert_eq!(hj_expand(9, 2).unwrap(), vec![5, 2]);
    }

    #[test]
    fn expand_errors() {
        assert!(matches!(
            hj_expand(4, 2),
            Err(ContFracError::NotCoprime { .. })
        ));
        assert!(matches!(
            hj_expand(3, 5),
            Err(ContFracError::NotProper { .. })
        ));
        assert!(matches!(
            hj_expand(0, 1),
            Err(ContFracError::NonPositive { .. })
        ));
        assert!(matches!(
            hj_expand(1, 1),
            Err(ContFracError::NotProper { .. })
        ));
        assert_eq!(hj_expand(2, 1).unwrap(), vec![2]);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hj_eval(&[4]).unwrap(), HjValue::Finite(ratio(4, 1)));
        assert_eq!(hj_eval(&[2, 3, 4]).unwrap(), HjValue::Finite(ratio(18, 11)));
        // 3 - 1/(2 - 1/3) = 3 - 3/5
        assert_eq!(hj_eval(&[3, 2, 3]).unwrap(), HjValue::Finite(ratio(12, 5)));
        assert_eq!(hj_eval(&[]).unwrap(), HjValue::Infinity);
        assert_eq!(hj_eval(&[2, 1, 1]), Err(ContFracError::DivisionByZero(1)));
        assert_eq!(hj_eval(&[1, 1]).unwrap(), HjValue::Finite(ratio(0, 1)));
        assert!(hj_eval(&[0]).is_err());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(hj_dual(2, 1).unwrap(), vec![2]);
        assert_eq!(hj_dual(9, 2).unwrap(), vec![2, 2, 2, 3]);
        assert_eq!(hj_dual(4, 1).unwrap(), vec![2, 2, 2]);
        assert_eq!(hj_dual_chain(&[2, 2]).unwrap(), vec![3]);
    }

    #[test]
    fn length_identity_brute_force() {
        for n in 2..=200u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let e = hj_expand(n, q).unwrap();
                let d = hj_dual(n, q).unwrap();
                let s: i64 = e.iter().map(|b| b - 1).sum();
                assert_eq!((e.len() + d.len()) as i64, 1 + s, "{n}/{q}");
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip((n, q) in (2u64..=200).prop_flat_map(|n| (Just(n), 1..n))) {
            prop_assume!(n.gcd(&q) == 1);
            let e = hj_expand(n, q).unwrap();
            prop_assert!(e.iter().all(|&b| b >= 2));
            prop_assert_eq!(hj_eval(&e).unwrap(), HjValue::Finite(ratio(n as i64, q as i64)));
            let d = hj_dual(n, q).unwrap();
            let f = HjFraction::from_chain(&d).unwrap();
            prop_assert_eq!(hj_dual(f.n, f.q).unwrap(), e);
        }
    }
}

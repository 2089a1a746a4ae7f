//! Exact Gauss–Jordan elimination over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Solves `m x = rhs`; `None` when `m` is singular.
pub fn solve(m: &[Vec<i64>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            row.iter()
                .map(|&x| q(x))
                .chain(std::iter::once(r.clone()))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for k in c..=n {
            a[c][k] = &a[c][k] / &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..=n {
                    let t = &f * &a[c][k];
                    a[i][k] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rk, p);
        for i in 0..rows {
            if i != rk && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rk][c];
                for k in c..cols {
                    let t = &f * &a[rk][k];
                    a[i][k] -= t;
                }
            }
        }
        rk += 1;
    }
    rk
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_rank() {
        let m = vec![vec![-5, 1], vec![1, -2]];
        let x = solve(&m, &[q(3), q(0)]).unwrap();
        // -5x + y = 3, x - 2y = 0  =>  x = -2/3, y = -1/3
        assert_eq!(
            x,
            vec![
                BigRational::new((-2).into(), 3.into()),
                BigRational::new((-1).into(), 3.into())
            ]
        );
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert!(solve(&[vec![1, 2], vec![2, 4]], &[q(0), q(0)]).is_none());
    }
}

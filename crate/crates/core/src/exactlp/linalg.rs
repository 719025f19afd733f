use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Rank of a dense rational matrix by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for k in c..cols {
                let d = &f * &m[r][k];
                m[i][k] -= d;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of `points`; `None` for an empty input.
pub fn affine_rank(points: &[Vec<Rational>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn to_primitive_integers(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    make_primitive(ints)
}

pub fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn affine_rank_examples() {
        assert_eq!(affine_rank(&[]), None);
        assert_eq!(affine_rank(&pts(&[&[1, 2]])), Some(0));
        assert_eq!(affine_rank(&pts(&[&[0, 0], &[1, 1], &[2, 2]])), Some(1));
        assert_eq!(affine_rank(&pts(&[&[0, 0], &[1, 0], &[0, 1]])), Some(2));
    }

    #[test]
    fn rank_handles_fractions() {
        let m = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), int(1)]];
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn primitive_scaling() {
        let v = to_primitive_integers(&[ratio(1, 2), ratio(-3, 4), int(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}

//! Division-free determinants over commutative rings (Bird's algorithm).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::Scalar;

/// The ring operations a determinant needs. `zero_like` exists because some
/// rings (truncated Chow rings) carry a parameter that a bare `zero()` could
/// not know.
pub trait CommutativeRing:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
}

impl<S: Scalar> CommutativeRing for S {
    fn zero_like(&self) -> Self {
        S::zero()
    }
}

/// Determinant of a square, non-empty matrix, using only ring operations.
///
/// Bird's recurrence: `X_1 = A`, `X_{k+1} = mu(X_k) A`, where `mu(X)` keeps the
/// strict upper triangle of `X` and puts `-sum_{j>i} X_jj` on the diagonal.
/// Then `det A = (-1)^(n-1) (X_n)_00`.
pub fn determinant<R: CommutativeRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    assert!(m.iter().all(|row| row.len() == n), "matrix is not square");
    let zero = m[0][0].zero_like();
    let mut x: Vec<Vec<R>> = m.to_vec();
    for _ in 1..n {
        let mut mu = vec![vec![zero.clone(); n]; n];
        let mut tail = zero.clone();
        for i in (0..n).rev() {
            mu[i][i] = -tail.clone();
            tail = tail + x[i][i].clone();
            mu[i][(i + 1)..n].clone_from_slice(&x[i][(i + 1)..n]);
        }
        let mut next = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in i..n {
                    acc = acc + mu[i][k].clone() * m[k][j].clone();
                }
                next[i][j] = acc;
            }
        }
        x = next;
    }
    let top = x[0][0].clone();
    if n % 2 == 1 {
        top
    } else {
        -top
    }
}

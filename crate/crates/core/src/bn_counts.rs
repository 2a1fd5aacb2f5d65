//! Closed-form counts of linear series with prescribed vanishing.
//!
//! * [`castelnuovo_count`]: the general sum over pairs `j1 < j2` for an
//!   arbitrary vanishing sequence with pointed Brill-Noether number `-1`.
//! * [`secant_point_count`]: the product formula for the secant sequence
//!   `(0, ..., t-1, n, ..., n+r-t)`.
//! * [`pointed_secant_count`]: the count `T(delta)` with `delta` points at a
//!   moving point and `n - delta` at a fixed general point.
//! * [`vandermonde_delta`]: the factorial Vandermonde variant, evaluated both
//!   as a determinant and in closed form.

use std::fmt;

use crate::arith::{factorial, inv_factorial, Scalar};
use crate::chow::determinant::determinant;
use crate::error::{Error, Result};
use crate::params::{check_length, rho_pointed, SecantParams};
use crate::Rational;

/// Which formula produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaTag {
    GeneralSum,
    ProductSpecial,
    Interpolation,
}

impl FormulaTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaTag::GeneralSum => "general_sum",
            FormulaTag::ProductSpecial => "product_special",
            FormulaTag::Interpolation => "interpolation",
        }
    }
}

impl fmt::Display for FormulaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inputs echoed alongside a count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountInput {
    Sequence { g: i64, r: i64, d: i64, a: Vec<i64> },
    Secant(SecantParams),
    Pointed { params: SecantParams, delta: i64 },
}

/// A count, always a non-negative integer stored exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CountResult<S = Rational> {
    pub value: S,
    pub input: CountInput,
    pub formula: FormulaTag,
}

fn checked_count<S: Scalar>(value: S, input: CountInput, formula: FormulaTag) -> Result<CountResult<S>> {
    if !value.is_integral() || value.is_negative() {
        return Err(Error::Inconsistent(format!(
            "{formula} produced {value} for {input:?}, expected a non-negative integer"
        )));
    }
    Ok(CountResult {
        value,
        input,
        formula,
    })
}

/// Number of pairs `(x, l)` with vanishing sequence `a` at `x`.
///
/// Sequences that are not strictly increasing are accepted and give 0; the
/// difference factors vanish.
pub fn castelnuovo_count<S: Scalar>(g: i64, r: i64, d: i64, a: &[i64]) -> Result<CountResult<S>> {
    check_length(r, a)?;
    let rho = rho_pointed(g, r, d, a)?;
    if rho != -1 {
        return Err(Error::PointedRho(rho));
    }
    let s = g - d + r;
    let len = a.len();
    let mut total = S::zero();
    for j1 in 0..len {
        for j2 in (j1 + 1)..len {
            let bump = |i: usize| i64::from(i == j1) + i64::from(i == j2);
            let shifted: Vec<i64> = (0..len).map(|i| a[i] - bump(i)).collect();
            let gap = a[j2] - a[j1];
            let mut term = S::from_int(gap * gap - 1);
            for i in 0..len {
                for k in (i + 1)..len {
                    term = term * S::from_int(shifted[k] - shifted[i]);
                }
            }
            if term.is_zero() {
                continue;
            }
            for &b in &shifted {
                term = term * inv_factorial::<S>(s + b);
            }
            total = total + term;
        }
    }
    let value = factorial::<S>(g)? * total;
    checked_count(
        value,
        CountInput::Sequence {
            g,
            r,
            d,
            a: a.to_vec(),
        },
        FormulaTag::GeneralSum,
    )
}

/// Number of pairs `(x, l)` with `h^0(l(-n x)) >= r + 1 - t`, via the product
/// formula.
pub fn secant_point_count<S: Scalar>(p: &SecantParams) -> Result<CountResult<S>> {
    let (g, r, t, n, s) = (p.g(), p.r(), p.t(), p.n(), p.s());
    let fact = |k: i64| factorial::<S>(k);
    let mut value = fact(g)? * S::from_int(n * (n * n - 1));
    for i in 2..=t {
        value = value * fact(i)? * S::from_int(n - i) / fact(s - 1 + i)?;
    }
    for j in 2..=(r + 1 - t) {
        value = value * fact(j)? * fact(n + j)?
            / (fact(s + n - 1 + j)? * fact(n - t - 1 + j)? * S::from_int(n - 1 + j));
    }
    value = value / (fact(s - 1)? * fact(s + n - 1)? * fact(t - 1)? * fact(r - t)?);
    checked_count(value, CountInput::Secant(*p), FormulaTag::ProductSpecial)
}

/// `delta (n delta - 1) / (n (n^2 - 1))`, the share of the count carried by a
/// point of multiplicity `delta`.
pub fn pointed_fraction<S: Scalar>(n: i64, delta: i64) -> S {
    S::ratio(delta * (n * delta - 1), n * (n * n - 1))
}

/// `T(delta)` for `0 <= delta <= n`; `T(0) = 0` and `T(n)` is the full count.
pub fn pointed_secant_count<S: Scalar>(p: &SecantParams, delta: i64) -> Result<CountResult<S>> {
    let n = p.n();
    if !(0..=n).contains(&delta) {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let base = secant_point_count::<S>(p)?.value;
    checked_count(
        base * pointed_fraction::<S>(n, delta),
        CountInput::Pointed { params: *p, delta },
        FormulaTag::Interpolation,
    )
}

/// `prod_{i<j}(b_j - b_i) / prod_k b_k!`, with `1/b! = 0` for negative `b`.
pub fn vandermonde_closed_form<S: Scalar>(b: &[i64]) -> S {
    let mut value = S::one();
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            value = value * S::from_int(b[j] - b[i]);
        }
    }
    b.iter().fold(value, |acc, &bk| acc * inv_factorial::<S>(bk))
}

/// The factorial matrix: row `k` (from the top) is built from `b_{r-k}` and has
/// entries `1/(b - r)!, ..., 1/b!`.
pub fn vandermonde_matrix<S: Scalar>(b: &[i64]) -> Vec<Vec<S>> {
    let r = b.len() as i64 - 1;
    b.iter()
        .rev()
        .map(|&bi| (0..=r).map(|j| inv_factorial::<S>(bi - r + j)).collect())
        .collect()
}

/// Evaluates the Vandermonde variant both ways and returns the agreed value.
pub fn vandermonde_delta<S: Scalar>(b: &[i64]) -> Result<S> {
    if b.is_empty() {
        return Err(Error::Range("empty sequence".into()));
    }
    let closed = vandermonde_closed_form::<S>(b);
    let det = determinant(&vandermonde_matrix::<S>(b));
    if closed != det {
        return Err(Error::Inconsistent(format!(
            "Vandermonde variant for {b:?}: closed form {closed}, determinant {det}"
        )));
    }
    Ok(closed)
}

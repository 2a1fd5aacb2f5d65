//! Classes in `N^1(C_n)`, spanned by `theta` and `x`, for the secant divisors
//! of a very general curve, plus slope bounds for the effective cone.

use std::fmt;

use crate::arith::{binomial, factorial, format_linear_combination, Scalar};
use crate::bn_counts::secant_point_count;
use crate::error::{Error, Result};
use crate::moduli::{nu_coeff, secant_coefficients};
use crate::params::{enumerate_params_with, require_nonempty, residual_params, EnumerationBounds, ParamTuple, SecantParams};
use crate::Rational;

/// `theta_coeff * theta + x_coeff * x` on `C_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSClassCn<S = Rational> {
    pub g: i64,
    pub n: i64,
    pub theta: S,
    pub x: S,
}

impl<S: Scalar> NSClassCn<S> {
    /// `-x_coeff / theta_coeff`, when `theta_coeff != 0`.
    pub fn slope(&self) -> Option<S> {
        (!self.theta.is_zero()).then(|| -self.x.clone() / self.theta.clone())
    }

    /// `c (theta - (g/n) x)`.
    fn on_ray(g: i64, n: i64, c: S) -> Self {
        let x = -(c.clone() * S::ratio(g, n));
        NSClassCn { g, n, theta: c, x }
    }
}

impl<S: Scalar> fmt::Display for NSClassCn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(self.theta.clone(), "θ".to_string()), (self.x.clone(), "x".to_string())];
        f.write_str(&format_linear_combination(&terms))
    }
}

/// The coefficient of `theta - (g/n) x` exactly as the product formula displays
/// it, without passing through the count.
pub fn displayed_coefficient<S: Scalar>(p: &SecantParams) -> Result<S> {
    let (g, r, t, n, s) = (p.g(), p.r(), p.t(), p.n(), p.s());
    let f = |k: i64| factorial::<S>(k);
    let mut numer = f(g)? * S::from_int(n);
    for i in 2..=t {
        numer = numer * f(i)? * S::from_int(n - i) / f(s - 1 + i)?;
    }
    for j in 2..=(r + 1 - t) {
        numer = numer * f(j)? * f(n + j)?
            / (f(s + n - 1 + j)? * f(n - t - 1 + j)? * S::from_int(n - 1 + j));
    }
    let denom = S::from_int(g) * f(s - 1)? * f(s + n - 1)? * f(t - 1)? * f(r - t)?;
    Ok(numer / denom)
}

/// `count / (g(n^2-1)) (theta - (g/n) x)`.
pub fn secant_class_cn<S: Scalar>(p: &SecantParams) -> Result<NSClassCn<S>> {
    require_nonempty(p)?;
    let (g, n) = (p.g(), p.n());
    let count = secant_point_count::<S>(p)?.value;
    let c = count / S::from_int(g * (n * n - 1));
    let displayed = displayed_coefficient::<S>(p)?;
    if displayed != c {
        return Err(Error::Inconsistent(format!(
            "displayed coefficient {displayed} differs from count/(g(n^2-1)) = {c} for {p}"
        )));
    }
    Ok(NSClassCn::on_ray(g, n, c))
}

/// `delta_C = -theta + (g+n-1) x`, the class of the big diagonal.
pub fn diagonal_class<S: Scalar>(g: i64, n: i64) -> NSClassCn<S> {
    NSClassCn {
        g,
        n,
        theta: -S::one(),
        x: S::from_int(g + n - 1),
    }
}

/// The moduli class re-expressed in `psi~` (pulled back from `M_{g,1}`) and the
/// `delta_{0:j}`, using `sum psi_i = pi^* psi~ + sum_j j delta_{0:j}`. Only
/// these terms survive restriction to a fixed curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackInput<S = Rational> {
    pub psi_tilde: S,
    /// Coefficient of `delta_{0:j}`, for `j = 2..=n`.
    pub delta_0j: Vec<(i64, S)>,
}

pub fn pullback_input<S: Scalar>(p: &SecantParams) -> Result<PullbackInput<S>> {
    let nu = nu_coeff::<S>(p)?;
    let c = secant_coefficients::<S>(p);
    let psi = nu.clone() * c.psi.clone();
    let delta_0j = c
        .zero_j
        .iter()
        .map(|(&j, cj)| (j, S::from_int(j) * psi.clone() - nu.clone() * cj.clone()))
        .collect();
    Ok(PullbackInput {
        psi_tilde: psi,
        delta_0j,
    })
}

/// `u^*` for `u: C_n -> M_{g,n}/S_n`: `psi~ -> (2g-2) x`, `delta_{0:2} -> delta_C`,
/// and `lambda`, `delta_irr`, `delta_{i:j}` (`i >= 1`), `delta_{0:j}` (`j >= 3`) -> 0.
pub fn pull_back<S: Scalar>(g: i64, n: i64, input: &PullbackInput<S>) -> NSClassCn<S> {
    let mut theta = S::zero();
    let mut x = input.psi_tilde.clone() * S::from_int(2 * g - 2);
    if let Some((_, c)) = input.delta_0j.iter().find(|(j, _)| *j == 2) {
        let diag = diagonal_class::<S>(g, n);
        theta = theta + c.clone() * diag.theta;
        x = x + c.clone() * diag.x;
    }
    NSClassCn { g, n, theta, x }
}

/// The class on `C_n` obtained by restricting the class on `M_{g,n}`.
pub fn secant_class_cn_via_pullback<S: Scalar>(p: &SecantParams) -> Result<NSClassCn<S>> {
    require_nonempty(p)?;
    Ok(pull_back(p.g(), p.n(), &pullback_input(p)?))
}

/// `(n/g) C(g, g-d) (theta - (g/n) x)` with `n = 2d - g`.
pub fn r1_class<S: Scalar>(g: i64, d: i64) -> Result<NSClassCn<S>> {
    let n = 2 * d - g;
    if n < 2 {
        return Err(Error::SecantOrderTooSmall(n));
    }
    let c = S::ratio(n, g) * binomial::<S>(g, g - d);
    Ok(NSClassCn::on_ray(g, n, c))
}

/// One row of the slope table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeRow<S = Rational> {
    pub n: i64,
    pub witnesses: Vec<SecantParams>,
    /// `g / n`.
    pub slope_new: S,
    /// `floor(g / n)`.
    pub slope_classical: S,
}

impl<S: Scalar> SlopeRow<S> {
    pub fn has_divisor(&self) -> bool {
        !self.witnesses.is_empty()
    }

    /// The bound is new exactly when a divisor exists and `n` does not divide `g`.
    pub fn strict_improvement(&self) -> bool {
        self.has_divisor() && self.slope_new > self.slope_classical
    }
}

pub fn slope_table<S: Scalar>(g: i64, n_range: std::ops::RangeInclusive<i64>, bounds: &EnumerationBounds) -> Result<Vec<SlopeRow<S>>> {
    if g < 2 {
        return Err(Error::Range(format!("g = {g} must be at least 2")));
    }
    Ok(n_range
        .filter(|&n| n >= 1)
        .map(|n| SlopeRow {
            n,
            witnesses: enumerate_params_with(g, n, bounds),
            slope_new: S::ratio(g, n),
            slope_classical: S::from_int(g.div_euclid(n)),
        })
        .collect())
}

/// Counts on both sides of the `t = r` residuation; no equality is implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport<S = Rational> {
    pub original: SecantParams,
    pub original_count: S,
    pub residual: ParamTuple,
    /// `Err` carries why the residual tuple is outside the validated range.
    pub residual_count: std::result::Result<S, Error>,
}

impl<S: Scalar> ResidualReport<S> {
    pub fn counts_agree(&self) -> bool {
        self.residual_count.as_ref().is_ok_and(|c| *c == self.original_count)
    }
}

pub fn residual_report<S: Scalar>(p: &SecantParams) -> Result<ResidualReport<S>> {
    let residual = residual_params(p)?;
    let original_count = secant_point_count::<S>(p)?.value;
    let residual_count = residual
        .validate()
        .and_then(|q| secant_point_count::<S>(&q).map(|c| c.value));
    Ok(ResidualReport {
        original: *p,
        original_count,
        residual,
        residual_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{enumerate_params, secant_params, solve_degree};

    fn q(a: i64, b: i64) -> Rational {
        Rational::ratio(a, b)
    }

    fn class(g: i64, n: i64, theta: i64, x: i64) -> NSClassCn<Rational> {
        NSClassCn {
            g,
            n,
            theta: q(theta, 1),
            x: q(x, 1),
        }
    }

    #[test]
    fn golden_classes() {
        for ((g, r, d, t, n), (theta, x)) in [((4, 1, 3, 1, 2), (2, -4)), ((6, 2, 6, 2, 3), (5, -10)), ((3, 1, 3, 1, 3), (1, -1))] {
            let p = secant_params(g, r, d, t, n).unwrap();
            assert_eq!(secant_class_cn::<Rational>(&p).unwrap(), class(g, n, theta, x));
            assert_eq!(secant_class_cn_via_pullback::<Rational>(&p).unwrap(), class(g, n, theta, x));
        }
        let p = secant_params(6, 2, 6, 2, 3).unwrap();
        assert_eq!(secant_class_cn::<Rational>(&p).unwrap().to_string(), "5·θ - 10·x");
    }

    #[test]
    fn pullback_intermediate() {
        let p = secant_params(6, 2, 6, 2, 3).unwrap();
        let input = pullback_input::<Rational>(&p).unwrap();
        // nu c_psi = 3, and the delta_{0:2} coefficient is nu (2 c_psi - c_{0:2}) = -5
        assert_eq!(input.psi_tilde, q(3, 1));
        assert_eq!(input.delta_0j[0], (2, q(-5, 1)));
    }

    #[test]
    fn diagonal_and_r1() {
        assert_eq!(diagonal_class::<Rational>(3, 3), class(3, 3, -1, 5));
        assert_eq!(diagonal_class::<Rational>(6, 3), class(6, 3, -1, 8));
        assert_eq!(diagonal_class::<Rational>(4, 2), class(4, 2, -1, 5));
        assert_eq!(r1_class::<Rational>(4, 3).unwrap(), class(4, 2, 2, -4));
        assert_eq!(r1_class::<Rational>(6, 4).unwrap(), class(6, 2, 5, -15));
        assert_eq!(r1_class::<Rational>(4, 2), Err(Error::SecantOrderTooSmall(0)));
    }

    #[test]
    fn routes_agree_and_lie_on_ray() {
        for g in 2..=12 {
            for n in 2..=g + 2 {
                for p in enumerate_params(g, n) {
                    let direct = secant_class_cn::<Rational>(&p).unwrap();
                    assert_eq!(secant_class_cn_via_pullback::<Rational>(&p).unwrap(), direct, "{p}");
                    assert_eq!(q(n, 1) * direct.x.clone() + q(g, 1) * direct.theta.clone(), q(0, 1));
                    assert!(direct.theta > q(0, 1) && direct.x < q(0, 1));
                    assert_eq!(direct.slope(), Some(q(g, n)));
                }
            }
        }
    }

    #[test]
    fn r1_agreement() {
        for g in 2..=20 {
            for d in 2..=g {
                let n = 2 * d - g;
                if n < 2 || solve_degree(g, 1, 1, n) != Some(d) {
                    continue;
                }
                let p = secant_params(g, 1, d, 1, n).unwrap();
                assert_eq!(secant_class_cn::<Rational>(&p).unwrap(), r1_class(g, d).unwrap(), "{p}");
            }
        }
    }

    #[test]
    fn slope_rows() {
        let rows = slope_table::<Rational>(10, 5..=9, &EnumerationBounds::default()).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!((rows[0].slope_new.clone(), rows[0].slope_classical.clone()), (q(2, 1), q(2, 1)));
        assert!(!rows[0].strict_improvement());
        assert_eq!((rows[2].slope_new.clone(), rows[2].slope_classical.clone()), (q(10, 7), q(1, 1)));
        assert!(rows[2].strict_improvement());
        assert!(!rows[4].has_divisor());
        let six = slope_table::<Rational>(6, 3..=3, &EnumerationBounds::default()).unwrap();
        assert!(six[0].witnesses.iter().any(|p| (p.r(), p.t(), p.d()) == (2, 2, 6)));
    }

    #[test]
    fn residual_is_reported() {
        let p = secant_params(6, 2, 6, 2, 3).unwrap();
        let report = residual_report::<Rational>(&p).unwrap();
        assert_eq!(report.original_count, q(240, 1));
        assert_eq!(report.residual.r, 2);
        let p = secant_params(4, 1, 3, 1, 2).unwrap();
        assert!(residual_report::<Rational>(&p).is_ok());
    }
}

//! Divisor classes on the moduli spaces of pointed stable curves.
//!
//! On `M_{g,1}` classes are written in the basis `lambda, psi, delta_irr,
//! delta_1, ..., delta_{g-1}`. On `M_{g,n}` only symmetric classes occur, so a
//! single coefficient covers all the `psi_i`, and boundary divisors are
//! grouped as `delta_{i:j}` (genus `i` with `j` marked points on one side).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use crate::arith::{binomial, Scalar};
use crate::bn_counts::{castelnuovo_count, pointed_secant_count, secant_point_count};
use crate::error::{Error, Result};
use crate::params::{require_nonempty, SecantParams};
use crate::Rational;

/// A divisor class on `M_{g,1}`; `delta[i-1]` is the coefficient of `delta_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicClassMg1<S = Rational> {
    pub genus: i64,
    pub lambda: S,
    pub psi: S,
    pub delta_irr: S,
    pub delta: Vec<S>,
}

impl<S: Scalar> PicClassMg1<S> {
    pub fn zero(genus: i64) -> Self {
        PicClassMg1 {
            genus,
            lambda: S::zero(),
            psi: S::zero(),
            delta_irr: S::zero(),
            delta: vec![S::zero(); (genus - 1).max(0) as usize],
        }
    }

    /// Coefficient of `delta_i`, `1 <= i <= g-1`.
    pub fn delta_i(&self, i: i64) -> S {
        usize::try_from(i - 1)
            .ok()
            .and_then(|k| self.delta.get(k).cloned())
            .unwrap_or_else(S::zero)
    }

    pub fn scale(&self, k: &S) -> Self {
        PicClassMg1 {
            genus: self.genus,
            lambda: self.lambda.clone() * k.clone(),
            psi: self.psi.clone() * k.clone(),
            delta_irr: self.delta_irr.clone() * k.clone(),
            delta: self.delta.iter().map(|x| x.clone() * k.clone()).collect(),
        }
    }
}

impl<S: Scalar> Add for PicClassMg1<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.genus, rhs.genus, "classes of different genus");
        PicClassMg1 {
            genus: self.genus,
            lambda: self.lambda + rhs.lambda,
            psi: self.psi + rhs.psi,
            delta_irr: self.delta_irr + rhs.delta_irr,
            delta: self.delta.into_iter().zip(rhs.delta).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<S: Scalar> Sub for PicClassMg1<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(&S::from_int(-1))
    }
}

impl<S: Scalar> fmt::Display for PicClassMg1<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec![
            (self.lambda.clone(), "λ".to_string()),
            (self.psi.clone(), "ψ".to_string()),
            (self.delta_irr.clone(), "δ_irr".to_string()),
        ];
        terms.extend(self.delta.iter().enumerate().map(|(k, c)| (c.clone(), format!("δ_{}", k + 1))));
        f.write_str(&crate::arith::format_linear_combination(&terms))
    }
}

/// `(g+3) lambda - (g+1)/6 delta_irr - sum_i i(g-i) delta_i`.
pub fn bn_class<S: Scalar>(g: i64) -> PicClassMg1<S> {
    let mut c = PicClassMg1::zero(g);
    c.lambda = S::from_int(g + 3);
    c.delta_irr = -S::ratio(g + 1, 6);
    c.delta = (1..g).map(|i| S::from_int(-i * (g - i))).collect();
    c
}

/// `-lambda + C(g+1,2) psi - sum_i C(g-i+1,2) delta_i`.
pub fn w_class<S: Scalar>(g: i64) -> PicClassMg1<S> {
    let mut c = PicClassMg1::zero(g);
    c.lambda = S::from_int(-1);
    c.psi = binomial(g + 1, 2);
    c.delta = (1..g).map(|i| -binomial::<S>(g - i + 1, 2)).collect();
    c
}

/// Coefficients of the pointed Brill-Noether class in the `BN`, `W` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedBnData<S = Rational> {
    pub mu: S,
    pub nu: S,
    pub sigma: S,
    pub count: S,
}

/// `nu = count / (g(g^2-1))`.
pub fn nu_coeff<S: Scalar>(p: &SecantParams) -> Result<S> {
    let g = p.g();
    Ok(secant_point_count::<S>(p)?.value / S::from_int(g * (g * g - 1)))
}

/// `mu` from the test-curve formula: `-count/(2(g^2-1))` plus a sum of counts in
/// genus `g-1` for the sequences `a + 1 - e_i`, divided by `4 C(g-1,2)`.
pub fn mu_via_test_curves<S: Scalar>(p: &SecantParams) -> Result<S> {
    let g = p.g();
    if g <= 2 {
        return Err(Error::GenusUnsupported(g));
    }
    let count = secant_point_count::<S>(p)?.value;
    let a = p.vanishing_sequence();
    let mut shifted_sum = S::zero();
    for i in 0..a.len() {
        let b: Vec<i64> = a.iter().enumerate().map(|(j, &x)| x + 1 - i64::from(i == j)).collect();
        shifted_sum = shifted_sum + castelnuovo_count::<S>(g - 1, p.r(), p.d(), &b)?.value;
    }
    Ok(-count / S::from_int(2 * (g * g - 1)) + shifted_sum / (S::from_int(4) * binomial::<S>(g - 1, 2)))
}

/// The closed-form ratio `sigma = mu / nu`; zero in genus 2.
pub fn sigma_coeff<S: Scalar>(p: &SecantParams) -> S {
    let (g, r, d, t, n, s) = (p.g(), p.r(), p.d(), p.t(), p.n(), p.s());
    if g == 2 {
        return S::zero();
    }
    let e = d - g - t + 1;
    let int = S::from_int;
    let numer = int(t * e + g + 1) * int(n - t) * int((n - t) * (3 * t * e - g - 1) + 2 * (g + 1) * (e - t))
        - int(d + 1) * int((g + 1) * (g + 1)) * int(d - 2 * g + 1);
    let denom = [2 * (g - 2), s, n + s, t, n - t, r + 1 - t, n + r + 1 - t]
        .into_iter()
        .fold(S::one(), |acc, k| acc * int(k));
    numer / denom
}

/// `mu`, `nu` and `sigma`, failing if the two routes to `mu` disagree.
pub fn mu_nu<S: Scalar>(p: &SecantParams) -> Result<PointedBnData<S>> {
    let mu = mu_via_test_curves::<S>(p)?;
    let nu = nu_coeff::<S>(p)?;
    let sigma = sigma_coeff::<S>(p);
    if mu != nu.clone() * sigma.clone() {
        return Err(Error::Inconsistent(format!(
            "mu = {mu} but nu * sigma = {} for {p}",
            nu.clone() * sigma.clone()
        )));
    }
    let count = secant_point_count::<S>(p)?.value;
    Ok(PointedBnData { mu, nu, sigma, count })
}

/// `nu (sigma BN + W)`.
pub fn pointed_bn_class<S: Scalar>(p: &SecantParams) -> Result<PicClassMg1<S>> {
    let g = p.g();
    let sigma = sigma_coeff::<S>(p);
    let inner = bn_class::<S>(g).scale(&sigma) + w_class(g);
    Ok(inner.scale(&nu_coeff(p)?))
}

/// The coefficients `c_*` of the secant class on `M_{g,n}`, before the overall
/// factor `count / (g(g^2-1))`. Signs follow
/// `c_lambda lambda + c_psi sum psi_i - c_irr delta_irr - sum c_{0:j} delta_{0:j} - sum c_{i:0} delta_{i:0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecantCoefficients<S = Rational> {
    pub lambda: S,
    pub psi: S,
    pub irr: S,
    /// `c_{0:j}` for `j = 2..=n`.
    pub zero_j: BTreeMap<i64, S>,
    /// `c_{i:0}` for `i = 1..=g-1`.
    pub i_zero: BTreeMap<i64, S>,
}

pub fn c_psi<S: Scalar>(g: i64, n: i64) -> S {
    S::ratio((g + 1) * (g + n), 2 * n * (n + 1))
}

pub fn c_zero_j<S: Scalar>(g: i64, n: i64, j: i64) -> S {
    S::ratio(j * (g + 1) * (n * n + j * g * n - j * n - g), 2 * n * (n * n - 1))
}

pub fn secant_coefficients<S: Scalar>(p: &SecantParams) -> SecantCoefficients<S> {
    let (g, n) = (p.g(), p.n());
    let sigma = sigma_coeff::<S>(p);
    SecantCoefficients {
        lambda: sigma.clone() * S::from_int(g + 3) - S::one(),
        psi: c_psi(g, n),
        irr: sigma.clone() * S::ratio(g + 1, 6),
        zero_j: (2..=n).map(|j| (j, c_zero_j(g, n, j))).collect(),
        i_zero: (1..g)
            .map(|i| (i, sigma.clone() * S::from_int(i * (g - i)) + S::ratio(i * (i + 1), 2)))
            .collect(),
    }
}

/// A boundary or tautological divisor on `M_{g,n}`, up to symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MgnDivisor {
    Lambda,
    /// Every `psi_i`, with a common coefficient.
    Psi,
    DeltaIrr,
    /// `delta_{i:j}`.
    Boundary(i64, i64),
}

/// A symmetric class on `M_{g,n}`. The coefficients of `delta_{i:j}` with
/// `i, j >= 1` are not known; asking for them is an error rather than zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicClassMgn<S = Rational> {
    pub genus: i64,
    pub points: i64,
    pub lambda: S,
    pub psi_each: S,
    pub delta_irr: S,
    pub delta_0j: BTreeMap<i64, S>,
    pub delta_i0: BTreeMap<i64, S>,
}

impl<S: Scalar> PicClassMgn<S> {
    pub fn coefficient(&self, div: MgnDivisor) -> Result<S> {
        match div {
            MgnDivisor::Lambda => Ok(self.lambda.clone()),
            MgnDivisor::Psi => Ok(self.psi_each.clone()),
            MgnDivisor::DeltaIrr => Ok(self.delta_irr.clone()),
            MgnDivisor::Boundary(0, j) if (2..=self.points).contains(&j) => Ok(self.delta_0j[&j].clone()),
            MgnDivisor::Boundary(i, 0) if (1..self.genus).contains(&i) => Ok(self.delta_i0[&i].clone()),
            MgnDivisor::Boundary(i, j) if i >= 1 && j >= 1 && i < self.genus && j <= self.points => {
                Err(Error::UnknownCoefficient { i, j })
            }
            MgnDivisor::Boundary(i, j) => Err(Error::Range(format!("no divisor delta_{{{i}:{j}}} on M_{{{},{}}}", self.genus, self.points))),
        }
    }

    /// The known terms, in display order.
    pub fn known_terms(&self) -> Vec<(MgnDivisor, S)> {
        let mut out = vec![
            (MgnDivisor::Lambda, self.lambda.clone()),
            (MgnDivisor::Psi, self.psi_each.clone()),
            (MgnDivisor::DeltaIrr, self.delta_irr.clone()),
        ];
        out.extend(self.delta_0j.iter().map(|(&j, c)| (MgnDivisor::Boundary(0, j), c.clone())));
        out.extend(self.delta_i0.iter().map(|(&i, c)| (MgnDivisor::Boundary(i, 0), c.clone())));
        out
    }
}

impl fmt::Display for MgnDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MgnDivisor::Lambda => f.write_str("λ"),
            MgnDivisor::Psi => f.write_str("Σψ_i"),
            MgnDivisor::DeltaIrr => f.write_str("δ_irr"),
            MgnDivisor::Boundary(i, j) => write!(f, "δ_{{{i}:{j}}}"),
        }
    }
}

impl<S: Scalar> fmt::Display for PicClassMgn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(S, String)> = self.known_terms().into_iter().map(|(d, c)| (c, d.to_string())).collect();
        write!(f, "{} + (unknown δ_{{i:j}}, i,j ≥ 1)", crate::arith::format_linear_combination(&terms))
    }
}

/// The class of the secant divisor on `M_{g,n}`.
pub fn secant_class_mgn<S: Scalar>(p: &SecantParams) -> Result<PicClassMgn<S>> {
    require_nonempty(p)?;
    let nu = nu_coeff::<S>(p)?;
    let c = secant_coefficients::<S>(p);
    let neg = |x: &S| -(nu.clone() * x.clone());
    Ok(PicClassMgn {
        genus: p.g(),
        points: p.n(),
        lambda: nu.clone() * c.lambda.clone(),
        psi_each: nu.clone() * c.psi.clone(),
        delta_irr: neg(&c.irr),
        delta_0j: c.zero_j.iter().map(|(&j, x)| (j, neg(x))).collect(),
        delta_i0: c.i_zero.iter().map(|(&i, x)| (i, neg(x))).collect(),
    })
}

/// `nu ((2g+2n-4) c_psi - (n-1) c_{0:2})`, which must equal `T(1)`.
pub fn test_curve_t1<S: Scalar>(p: &SecantParams) -> Result<S> {
    let (g, n) = (p.g(), p.n());
    let nu = nu_coeff::<S>(p)?;
    Ok(nu * (S::from_int(2 * g + 2 * n - 4) * c_psi::<S>(g, n) - S::from_int(n - 1) * c_zero_j::<S>(g, n, 2)))
}

/// Solution `(h_x, h_y)` of the two-point test-curve system
/// `nu ((2g-1) h_x + h_y - C(g+1,2)) = T(1)`, `nu (h_x + (2g-1) h_y - C(g+1,2)) = T(n-1)`.
pub fn two_point_system<S: Scalar>(p: &SecantParams) -> Result<(S, S)> {
    let (g, n) = (p.g(), p.n());
    let nu = nu_coeff::<S>(p)?;
    let h = binomial::<S>(g + 1, 2);
    let r1 = pointed_secant_count::<S>(p, 1)?.value / nu.clone() + h.clone();
    let r2 = pointed_secant_count::<S>(p, n - 1)?.value / nu + h;
    let a = S::from_int(2 * g - 1);
    let det = a.clone() * a.clone() - S::one();
    let hx = (a.clone() * r1.clone() - r2.clone()) / det.clone();
    let hy = (a * r2 - r1) / det;
    Ok((hx, hy))
}

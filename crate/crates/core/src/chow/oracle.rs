//! Symbolic recomputation of the pointed secant count `T(delta)`.
//!
//! Pipeline: the Chern character of the twisted tautological sheaf on
//! `C x C x Pic`, pushed forward along the middle factor with
//! Grothendieck-Riemann-Roch, converted to Chern classes, and fed into a
//! Fulton-Pragacz determinant on `C x Pic` whose top degree is `T(delta)`.

use crate::arith::{inv_factorial, Scalar};
use crate::chow::chern::{chern_classes_from_ch, ChernData};
use crate::chow::determinant::determinant;
use crate::chow::three_factor::{ChowElement3, Generator};
use crate::chow::two_factor::{ChowElement2, Part};
use crate::error::{Error, Result};
use crate::params::SecantParams;

/// Numerical data of one oracle run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSetup {
    pub g: i64,
    pub d: i64,
    pub m: i64,
    pub n: i64,
    pub delta: i64,
}

impl OracleSetup {
    /// Uses the smallest admissible twist, `max(0, 2g - 1 - d)`.
    pub fn new(p: &SecantParams, delta: i64) -> Result<Self> {
        Self::with_twist(p, delta, default_twist(p.g(), p.d()))
    }

    pub fn with_twist(p: &SecantParams, delta: i64, m: i64) -> Result<Self> {
        if !(0..=p.n()).contains(&delta) {
            return Err(Error::DeltaOutOfRange { delta, n: p.n() });
        }
        check_twist(p.g(), p.d(), m)?;
        Ok(OracleSetup {
            g: p.g(),
            d: p.d(),
            m,
            n: p.n(),
            delta,
        })
    }

    fn genus(&self) -> usize {
        self.g as usize
    }

    /// `g delta^2 + delta (d - g + 1 - n)`, the recurring eta coefficient.
    fn eta_coefficient<S: Scalar>(&self) -> S {
        let (g, d, n, dl) = (self.g, self.d, self.n, self.delta);
        S::from_int(g * dl * dl + dl * (d - g + 1 - n))
    }
}

pub fn default_twist(g: i64, d: i64) -> i64 {
    (2 * g - 1 - d).max(0)
}

fn check_twist(g: i64, d: i64, m: i64) -> Result<()> {
    let min = 2 * g - 1 - d;
    if m < min {
        return Err(Error::TwistTooSmall { m, min });
    }
    Ok(())
}

fn gen<S: Scalar>(g: usize, x: Generator) -> ChowElement3<S> {
    ChowElement3::generator(g, x)
}

/// `ch(nu^* L) (1 - e^{-(delta eta1 + delta gamma12 + (m+n) eta2)})`.
pub fn sheaf_ch_m1<S: Scalar>(g: i64, d: i64, m: i64, n: i64, delta: i64) -> Result<ChowElement3<S>> {
    if g < 0 {
        return Err(Error::Range(format!("g = {g} must be non-negative")));
    }
    check_twist(g, d, m)?;
    let gu = g as usize;
    let diagonal = gen::<S>(gu, Generator::Eta1)
        .add(&gen(gu, Generator::Gamma12))
        .scale(&S::from_int(delta))
        .add(&gen::<S>(gu, Generator::Eta2).scale(&S::from_int(m + n)));
    let ideal_sheaf = ChowElement3::one(gu).sub(&diagonal.exp_neg()?);
    let line_bundle = ChowElement3::one(gu)
        .add(&gen::<S>(gu, Generator::Eta2).scale(&S::from_int(d + m)))
        .add(&gen(gu, Generator::Gamma23))
        .sub(&ChowElement3::monomial(gu, &[(Generator::Eta2, 1), (Generator::Theta, 1)], S::one())?);
    line_bundle.try_mul(&ideal_sheaf)
}

/// Pushforward along the second curve factor: multiply by the relative Todd
/// class `1 + (1-g) eta2` and read off the coefficient of `eta2`, renaming
/// `eta1 -> eta` and `gamma13 -> gamma`. Terms without `eta2`, or still
/// carrying `gamma12` / `gamma23`, integrate to zero.
pub fn grr_pushforward<S: Scalar>(x: &ChowElement3<S>) -> Result<ChowElement2<S>> {
    let g = x.genus();
    let todd = ChowElement3::one(g).add(&gen::<S>(g, Generator::Eta2).scale(&S::from_int(1 - g as i64)));
    let y = x.try_mul(&todd)?;
    let mut out = ChowElement2::zero(g);
    for (mono, coeff) in y.terms() {
        let Some(rest) = mono.without(Generator::Eta2) else {
            continue;
        };
        if rest.exponent(Generator::Gamma12) + rest.exponent(Generator::Gamma23) > 0 {
            continue;
        }
        let k = rest.exponent(Generator::Theta) as usize;
        let part = match (rest.exponent(Generator::Eta1), rest.exponent(Generator::Gamma13)) {
            (0, 0) => Part::Theta,
            (1, 0) => Part::Eta,
            (0, 1) => Part::Gamma,
            _ => return Err(Error::UnreducibleMonomial),
        };
        out = out.with_term(part, k, coeff.clone());
    }
    Ok(out)
}

/// Chern character of the rank `m + n` bundle `M1` on `C x Pic`.
pub fn ch_m1<S: Scalar>(setup: &OracleSetup) -> Result<ChowElement2<S>> {
    grr_pushforward(&sheaf_ch_m1(setup.g, setup.d, setup.m, setup.n, setup.delta)?)
}

/// Total Chern class of `M1`.
pub fn chern_m1<S: Scalar>(setup: &OracleSetup) -> Result<ChowElement2<S>> {
    let ch = ChernData::character(&ch_m1(setup)?);
    Ok(chern_classes_from_ch(&ch).total())
}

/// Which block of the Fulton-Pragacz matrix an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// `c(M0 - E) = e^theta`.
    Fixed,
    /// `c(M1 - E) = c(M1) e^theta`.
    Moving,
}

/// Degree-`j` part of the virtual Chern class of `M_i - E`; zero for `j < 0`.
pub fn difference_chern<S: Scalar>(j: i64, block: Block, setup: &OracleSetup) -> Result<ChowElement2<S>> {
    let g = setup.genus();
    if j < 0 {
        return Ok(ChowElement2::zero(g));
    }
    match block {
        Block::Fixed => Ok(ChowElement2::theta_exponential_term(g, j)),
        Block::Moving => {
            let full = chern_m1::<S>(setup)? * ChowElement2::exp_theta(g);
            Ok(full.homogeneous_part(j as usize))
        }
    }
}

/// The explicit closed form of `c_j(M1 - E)`:
/// `theta^j/j! + eta theta^(j-1) (A/(j-1)! + (delta-delta^2)/(j-2)!) + delta/(j-1)! gamma theta^(j-1)`.
pub fn difference_chern_closed<S: Scalar>(j: i64, setup: &OracleSetup) -> ChowElement2<S> {
    let g = setup.genus();
    let mut out = ChowElement2::theta_exponential_term(g, j);
    if j >= 1 {
        let dl = setup.delta;
        let eta = setup.eta_coefficient::<S>() * inv_factorial::<S>(j - 1)
            + S::from_int(dl - dl * dl) * inv_factorial::<S>(j - 2);
        let k = (j - 1) as usize;
        out = out
            .with_term(Part::Eta, k, eta)
            .with_term(Part::Gamma, k, S::from_int(dl) * inv_factorial::<S>(j - 1));
    }
    out
}

/// The `(r+1) x (r+1)` matrix: `r+1-t` rows of `M1`-entries starting at
/// `g-d+r+n-t, ..., g-d+n`, then `t` rows of `M0`-entries starting at
/// `g-d+t-1, ..., g-d`; each column adds one to the index.
pub fn fulton_pragacz_matrix<S: Scalar>(p: &SecantParams, setup: &OracleSetup) -> Result<Vec<Vec<ChowElement2<S>>>> {
    let (g, r, d, t, n) = (p.g(), p.r(), p.d(), p.t(), p.n());
    let c1 = chern_m1::<S>(setup)? * ChowElement2::exp_theta(setup.genus());
    let moving = |j: i64| {
        if j < 0 {
            ChowElement2::zero(setup.genus())
        } else {
            c1.homogeneous_part(j as usize)
        }
    };
    let mut rows = Vec::with_capacity((r + 1) as usize);
    for k in 0..(r + 1 - t) {
        let start = g - d + r + n - t - k;
        rows.push((0..=r).map(|j| moving(start + j)).collect());
    }
    for k in 0..t {
        let start = g - d + t - 1 - k;
        rows.push((0..=r).map(|j| ChowElement2::theta_exponential_term(setup.genus(), start + j)).collect());
    }
    Ok(rows)
}

/// `T(delta)` as the degree of the Fulton-Pragacz determinant, default twist.
pub fn fulton_pragacz_t<S: Scalar>(p: &SecantParams, delta: i64) -> Result<S> {
    fulton_pragacz_t_with_twist(p, delta, default_twist(p.g(), p.d()))
}

pub fn fulton_pragacz_t_with_twist<S: Scalar>(p: &SecantParams, delta: i64, m: i64) -> Result<S> {
    let setup = OracleSetup::with_twist(p, delta, m)?;
    let matrix = fulton_pragacz_matrix::<S>(p, &setup)?;
    Ok(determinant(&matrix).degree())
}

/// Coefficients `[c0, c1, c2]` of the quadratic through three samples `(x, y)`.
pub fn interpolate_quadratic<S: Scalar>(points: &[(i64, S); 3]) -> Result<[S; 3]> {
    let mut coeffs = [S::zero(), S::zero(), S::zero()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Lagrange basis: prod_{j != i} (x - xj) / (xi - xj)
        let others: Vec<i64> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.0).collect();
        let denom = (xi - others[0]) * (xi - others[1]);
        if denom == 0 {
            return Err(Error::Range("interpolation nodes must be distinct".into()));
        }
        let w = yi.clone() / S::from_int(denom);
        coeffs[0] = coeffs[0].clone() + w.clone() * S::from_int(others[0] * others[1]);
        coeffs[1] = coeffs[1].clone() - w.clone() * S::from_int(others[0] + others[1]);
        coeffs[2] = coeffs[2].clone() + w;
    }
    Ok(coeffs)
}

pub fn eval_quadratic<S: Scalar>(c: &[S; 3], x: i64) -> S {
    let x = S::from_int(x);
    c[0].clone() + c[1].clone() * x.clone() + c[2].clone() * x.clone() * x
}

/// `T(delta)` interpolated from oracle values at `delta = 0, 1, n`.
pub fn interpolated_t<S: Scalar>(p: &SecantParams, delta: i64) -> Result<S> {
    if !(0..=p.n()).contains(&delta) {
        return Err(Error::DeltaOutOfRange { delta, n: p.n() });
    }
    let nodes = [0, 1, p.n()].map(|x| fulton_pragacz_t::<S>(p, x).map(|y| (x, y)));
    let [a, b, c] = nodes;
    let quad = interpolate_quadratic(&[a?, b?, c?])?;
    Ok(eval_quadratic(&quad, delta))
}

//! Parameter tuples `(g, r, d, t, n)` for secant loci, Brill-Noether numbers,
//! and the nonemptiness conditions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// `g - (r+1)(g-d+r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// `rho(g,r,d) - sum_i (a_i - i)`.
pub fn rho_pointed(g: i64, r: i64, d: i64, a: &[i64]) -> Result<i64> {
    check_length(r, a)?;
    let excess: i64 = a.iter().zip(0..).map(|(ai, i)| ai - i).sum();
    Ok(rho(g, r, d) - excess)
}

pub(crate) fn check_length(r: i64, a: &[i64]) -> Result<()> {
    let expected = usize::try_from(r + 1).map_err(|_| Error::Range(format!("r = {r}")))?;
    if a.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: a.len(),
        });
    }
    Ok(())
}

/// A strictly increasing sequence `0 <= a_0 < ... < a_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VanishingSequence(Vec<i64>);

impl VanishingSequence {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let increasing = entries.windows(2).all(|w| w[0] < w[1]);
        if !increasing || entries.first().is_some_and(|&a0| a0 < 0) {
            return Err(Error::NotIncreasing);
        }
        Ok(VanishingSequence(entries))
    }

    /// Checks the additional bound `a_r <= d`.
    pub fn with_degree(entries: Vec<i64>, d: i64) -> Result<Self> {
        let seq = Self::new(entries)?;
        if seq.0.last().is_some_and(|&top| top > d) {
            return Err(Error::Range(format!("a_r exceeds d = {d}")));
        }
        Ok(seq)
    }

    /// `(0, ..., t-1, n, ..., n+r-t)`.
    pub fn secant(r: i64, t: i64, n: i64) -> Self {
        VanishingSequence((0..t).chain(n..=n + r - t).collect())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl std::ops::Deref for VanishingSequence {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for VanishingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Requested degree when validating: given explicitly or solved from the
/// codimension condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Given(i64),
    Auto,
}

/// A raw, unvalidated `(g, r, d, t, n)` tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamTuple {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub t: i64,
    pub n: i64,
}

impl ParamTuple {
    pub fn validate(&self) -> Result<SecantParams> {
        secant_params(self.g, self.r, self.d, self.t, self.n)
    }
}

impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(g={}, r={}, d={}, t={}, n={})",
            self.g, self.r, self.d, self.t, self.n
        )
    }
}

/// A validated tuple: `1 <= t <= r`, `n >= t+1`, `g, d >= 2`,
/// `rho(g,r,d) = (n-t)(r+1-t) - 1` and `s = g-d+r >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SecantParams {
    g: i64,
    r: i64,
    d: i64,
    t: i64,
    n: i64,
}

impl SecantParams {
    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// `g - d + r`.
    pub fn s(&self) -> i64 {
        self.g - self.d + self.r
    }

    /// `(n-t)(r+1-t)`, the codimension of the secant condition.
    pub fn secant_codim(&self) -> i64 {
        (self.n - self.t) * (self.r + 1 - self.t)
    }

    pub fn vanishing_sequence(&self) -> VanishingSequence {
        VanishingSequence::secant(self.r, self.t, self.n)
    }

    pub fn tuple(&self) -> ParamTuple {
        ParamTuple {
            g: self.g,
            r: self.r,
            d: self.d,
            t: self.t,
            n: self.n,
        }
    }
}

impl fmt::Display for SecantParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tuple().fmt(f)
    }
}

/// Degree forced by `rho(g,r,d) = (n-t)(r+1-t) - 1`, if integral.
pub fn solve_degree(g: i64, r: i64, t: i64, n: i64) -> Option<i64> {
    // rho = g - (r+1)(g+r) + (r+1)d
    let target = (n - t) * (r + 1 - t) - 1;
    let numer = target - g + (r + 1) * (g + r);
    (r >= 0 && numer % (r + 1) == 0).then(|| numer / (r + 1))
}

pub fn validate(g: i64, r: i64, d: Degree, t: i64, n: i64) -> Result<SecantParams> {
    if g < 2 {
        return Err(Error::Range(format!("g = {g} must be at least 2")));
    }
    if t < 1 || t > r {
        return Err(Error::Range(format!("need 1 <= t <= r, got t = {t}, r = {r}")));
    }
    if n < t + 1 {
        return Err(Error::Range(format!("need n >= t + 1, got n = {n}, t = {t}")));
    }
    let d = match d {
        Degree::Given(d) => d,
        Degree::Auto => solve_degree(g, r, t, n).ok_or(Error::NoIntegralDegree)?,
    };
    if d < 2 {
        return Err(Error::Range(format!("d = {d} must be at least 2")));
    }
    let target = (n - t) * (r + 1 - t) - 1;
    let rho = rho(g, r, d);
    if rho != target {
        return Err(Error::Codimension { rho, target });
    }
    let s = g - d + r;
    if s < 1 {
        return Err(Error::NonPositiveS(s));
    }
    Ok(SecantParams { g, r, d, t, n })
}

/// Shorthand for `validate` with an explicit degree.
pub fn secant_params(g: i64, r: i64, d: i64, t: i64, n: i64) -> Result<SecantParams> {
    validate(g, r, Degree::Given(d), t, n)
}

/// The four nonemptiness conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NonemptyCondition {
    I,
    II,
    III,
    IV,
}

impl NonemptyCondition {
    pub fn label(&self) -> &'static str {
        match self {
            NonemptyCondition::I => "i",
            NonemptyCondition::II => "ii",
            NonemptyCondition::III => "iii",
            NonemptyCondition::IV => "iv",
        }
    }
}

impl fmt::Display for NonemptyCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn nonempty_condition(p: &SecantParams) -> BTreeSet<NonemptyCondition> {
    let s = p.s();
    let k = p.secant_codim();
    let (r, d, t, n) = (p.r, p.d, p.t, p.n);
    let mut out = BTreeSet::new();
    if s == 1 && n >= k {
        out.insert(NonemptyCondition::I);
    }
    if s >= 1 && n >= k + r - t && d >= 2 * n - 1 {
        out.insert(NonemptyCondition::II);
    }
    if s >= 1 && n <= k {
        out.insert(NonemptyCondition::III);
    }
    if s >= 1 && t == r {
        out.insert(NonemptyCondition::IV);
    }
    out
}

/// Validated tuple for which at least one nonemptiness condition holds.
pub fn require_nonempty(p: &SecantParams) -> Result<()> {
    if nonempty_condition(p).is_empty() {
        Err(Error::NoNonemptyCondition)
    } else {
        Ok(())
    }
}

/// Ceilings for [`enumerate_params_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub r_max: i64,
    /// `None` means `4g`.
    pub d_max: Option<i64>,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            r_max: 20,
            d_max: None,
        }
    }
}

impl EnumerationBounds {
    pub fn d_max_for(&self, g: i64) -> i64 {
        self.d_max.unwrap_or(4 * g)
    }
}

pub fn enumerate_params(g: i64, n: i64) -> Vec<SecantParams> {
    enumerate_params_with(g, n, &EnumerationBounds::default())
}

/// Every `(r, t, d)` within the bounds that validates for `(g, n)` and meets a
/// nonemptiness condition, sorted by `(r, t, d)`.
pub fn enumerate_params_with(g: i64, n: i64, bounds: &EnumerationBounds) -> Vec<SecantParams> {
    let mut out = Vec::new();
    if g < 2 || n < 2 {
        return out;
    }
    let d_max = bounds.d_max_for(g);
    for r in 1..=bounds.r_max {
        for t in 1..=r {
            // d is pinned by the codimension condition
            let Some(d) = solve_degree(g, r, t, n) else {
                continue;
            };
            if d > d_max {
                continue;
            }
            if let Ok(p) = secant_params(g, r, d, t, n) {
                if !nonempty_condition(&p).is_empty() {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by_key(|p| (p.r, p.t, p.d));
    out
}

/// All validated tuples (no nonemptiness filter) in a box of parameters.
pub fn valid_tuples(g_range: std::ops::RangeInclusive<i64>, r_max: i64, n_max: i64) -> Vec<SecantParams> {
    let mut out = Vec::new();
    for g in g_range {
        for r in 1..=r_max {
            for t in 1..=r {
                for n in (t + 1)..=n_max {
                    if let Some(d) = solve_degree(g, r, t, n) {
                        if let Ok(p) = secant_params(g, r, d, t, n) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// For `t = r`: `(g, g-d+n-1, 2g-2-d+n, n-r, n)`.
pub fn residual_params(p: &SecantParams) -> Result<ParamTuple> {
    if p.t != p.r {
        return Err(Error::NotResidual { t: p.t, r: p.r });
    }
    let (g, d, n) = (p.g, p.d, p.n);
    Ok(ParamTuple {
        g,
        r: g - d + n - 1,
        d: 2 * g - 2 - d + n,
        t: n - p.r,
        n,
    })
}

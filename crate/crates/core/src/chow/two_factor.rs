//! The truncated ring on `C x Pic`: elements `A(theta) + eta B(theta) + gamma C(theta)`
//! with `eta^2 = eta gamma = 0`, `gamma^2 = -2 eta theta` and `theta^(g+1) = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{factorial_bigint, format_rational, Scalar};
use crate::chow::determinant::CommutativeRing;

#[derive(Debug, Clone, PartialEq)]
pub struct ChowElement2<S> {
    genus: usize,
    /// Pure theta part, indexed by theta exponent.
    a: Vec<S>,
    /// Coefficient polynomial of eta.
    b: Vec<S>,
    /// Coefficient polynomial of gamma.
    c: Vec<S>,
}

/// Which of the three summands a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Theta,
    Eta,
    Gamma,
}

impl<S: Scalar> ChowElement2<S> {
    pub fn zero(genus: usize) -> Self {
        ChowElement2 {
            genus,
            a: vec![S::zero(); genus + 1],
            b: vec![S::zero(); genus + 1],
            c: vec![S::zero(); genus + 1],
        }
    }

    pub fn one(genus: usize) -> Self {
        Self::constant(genus, S::one())
    }

    pub fn constant(genus: usize, value: S) -> Self {
        Self::zero(genus).with_term(Part::Theta, 0, value)
    }

    /// `coeff * theta^k` (zero when `k > g`).
    pub fn theta_power(genus: usize, k: usize, coeff: S) -> Self {
        Self::zero(genus).with_term(Part::Theta, k, coeff)
    }

    pub fn eta(genus: usize) -> Self {
        Self::zero(genus).with_term(Part::Eta, 0, S::one())
    }

    pub fn gamma(genus: usize) -> Self {
        Self::zero(genus).with_term(Part::Gamma, 0, S::one())
    }

    /// `theta^j / j!` for `j >= 0`, zero for negative `j`.
    pub fn theta_exponential_term(genus: usize, j: i64) -> Self {
        match usize::try_from(j) {
            Ok(k) => Self::theta_power(genus, k, crate::arith::inv_factorial(j)),
            Err(_) => Self::zero(genus),
        }
    }

    /// `e^theta`, truncated.
    pub fn exp_theta(genus: usize) -> Self {
        (0..=genus as i64).fold(Self::zero(genus), |acc, j| acc + Self::theta_exponential_term(genus, j))
    }

    /// Adds `coeff * (part) * theta^k`; terms past `theta^g` vanish.
    pub fn with_term(mut self, part: Part, k: usize, coeff: S) -> Self {
        if k <= self.genus {
            let slot = &mut self.part_mut(part)[k];
            *slot = slot.clone() + coeff;
        }
        self
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coefficient(&self, part: Part, k: usize) -> S {
        self.part(part).get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn part(&self, part: Part) -> &[S] {
        match part {
            Part::Theta => &self.a,
            Part::Eta => &self.b,
            Part::Gamma => &self.c,
        }
    }

    fn part_mut(&mut self, part: Part) -> &mut Vec<S> {
        match part {
            Part::Theta => &mut self.a,
            Part::Eta => &mut self.b,
            Part::Gamma => &mut self.c,
        }
    }

    pub fn is_zero(&self) -> bool {
        [&self.a, &self.b, &self.c].iter().all(|p| p.iter().all(|x| x.is_zero()))
    }

    pub fn constant_term(&self) -> S {
        self.a[0].clone()
    }

    pub fn scale(&self, k: &S) -> Self {
        let f = |p: &Vec<S>| p.iter().map(|x| x.clone() * k.clone()).collect();
        ChowElement2 {
            genus: self.genus,
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
        }
    }

    /// Degree-`k` part, where theta, eta and gamma all have degree one.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.genus);
        if k <= self.genus {
            out.a[k] = self.a[k].clone();
        }
        if k >= 1 && k - 1 <= self.genus {
            out.b[k - 1] = self.b[k - 1].clone();
            out.c[k - 1] = self.c[k - 1].clone();
        }
        out
    }

    /// Top degree of the ring, `g + 1`.
    pub fn top_degree(&self) -> usize {
        self.genus + 1
    }

    /// Degree of the top-dimensional part: `deg(eta theta^g) = g!`; pure theta
    /// and gamma terms integrate to zero.
    pub fn degree(&self) -> S {
        let g = self.genus;
        let g_fact = factorial_bigint(g as i64).expect("genus is non-negative");
        self.b[g].clone() * S::from_bigint(&g_fact)
    }

    fn check_genus(&self, other: &Self) {
        assert_eq!(self.genus, other.genus, "ring elements of different genus");
    }
}

fn poly_mul<S: Scalar>(p: &[S], q: &[S], shift: usize, out: &mut [S], sign: &S) {
    let top = out.len();
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in q.iter().enumerate() {
            let k = i + j + shift;
            if k >= top {
                break;
            }
            if y.is_zero() {
                continue;
            }
            out[k] = out[k].clone() + sign.clone() * x.clone() * y.clone();
        }
    }
}

impl<S: Scalar> Mul for ChowElement2<S> {
    type Output = Self;

    /// `(A,B,C)(A',B',C') = (AA', AB' + A'B - 2 theta CC', AC' + A'C)`.
    fn mul(self, rhs: Self) -> Self {
        self.check_genus(&rhs);
        let mut out = Self::zero(self.genus);
        let one = S::one();
        poly_mul(&self.a, &rhs.a, 0, &mut out.a, &one);
        poly_mul(&self.a, &rhs.b, 0, &mut out.b, &one);
        poly_mul(&self.b, &rhs.a, 0, &mut out.b, &one);
        poly_mul(&self.c, &rhs.c, 1, &mut out.b, &S::from_int(-2));
        poly_mul(&self.a, &rhs.c, 0, &mut out.c, &one);
        poly_mul(&self.c, &rhs.a, 0, &mut out.c, &one);
        out
    }
}

impl<S: Scalar> Add for ChowElement2<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.check_genus(&rhs);
        let f = |p: Vec<S>, q: Vec<S>| p.into_iter().zip(q).map(|(x, y)| x + y).collect();
        ChowElement2 {
            genus: self.genus,
            a: f(self.a, rhs.a),
            b: f(self.b, rhs.b),
            c: f(self.c, rhs.c),
        }
    }
}

impl<S: Scalar> Neg for ChowElement2<S> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(&S::from_int(-1))
    }
}

impl<S: Scalar> Sub for ChowElement2<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> CommutativeRing for ChowElement2<S> {
    fn zero_like(&self) -> Self {
        Self::zero(self.genus)
    }
}

impl<S: Scalar> fmt::Display for ChowElement2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (part, label) in [(Part::Theta, ""), (Part::Eta, "η"), (Part::Gamma, "γ")] {
            for (k, coeff) in self.part(part).iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut monomial = label.to_string();
                if k > 0 {
                    if !monomial.is_empty() {
                        monomial.push('·');
                    }
                    monomial.push('θ');
                    if k > 1 {
                        monomial.push_str(&format!("^{k}"));
                    }
                }
                terms.push(match (monomial.is_empty(), coeff.is_one()) {
                    (true, _) => format_rational(coeff),
                    (false, true) => monomial,
                    (false, false) => format!("{}·{monomial}", format_rational(coeff)),
                });
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + ").replace("+ -", "- "))
    }
}

//! The truncated ring on `C x C x Pic`, generated by `eta1, eta2, gamma12,
//! gamma13, gamma23, theta`, stored as a sparse map over normal-form monomials.
//!
//! Relations, oriented as rewrite rules:
//!
//! ```text
//! eta1^2 = eta2^2 = eta1 gamma12 = eta2 gamma12 = eta1 gamma13 = eta2 gamma23 = 0
//! gamma12^2 = -2g eta1 eta2
//! gamma13^2 = -2 eta1 theta
//! gamma23^2 = -2 eta2 theta
//! gamma12 gamma23 = eta2 gamma13
//! gamma12 gamma13 = eta1 gamma23
//! theta^(g+1) = 0
//! ```
//!
//! The product `gamma13 gamma23` is not determined by these relations. A
//! monomial that still contains it once no rule applies is an error.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{format_rational, Scalar};
use crate::error::{Error, Result};

/// Generators, in exponent-vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Eta1,
    Eta2,
    Gamma12,
    Gamma13,
    Gamma23,
    Theta,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Eta1,
        Generator::Eta2,
        Generator::Gamma12,
        Generator::Gamma13,
        Generator::Gamma23,
        Generator::Theta,
    ];

    fn index(self) -> usize {
        self as usize
    }

    fn symbol(self) -> &'static str {
        match self {
            Generator::Eta1 => "η1",
            Generator::Eta2 => "η2",
            Generator::Gamma12 => "γ12",
            Generator::Gamma13 => "γ13",
            Generator::Gamma23 => "γ23",
            Generator::Theta => "θ",
        }
    }
}

/// Exponents of `(eta1, eta2, gamma12, gamma13, gamma23, theta)`.
pub type Exponents = [u32; 6];

/// A monomial in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Exponents);

impl Monomial {
    pub const UNIT: Monomial = Monomial([0; 6]);

    pub fn exponent(&self, gen: Generator) -> u32 {
        self.0[gen.index()]
    }

    pub fn exponents(&self) -> Exponents {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The monomial with one factor of `gen` removed, if present.
    pub fn without(&self, gen: Generator) -> Option<Monomial> {
        let mut e = self.0;
        let slot = &mut e[gen.index()];
        if *slot == 0 {
            return None;
        }
        *slot -= 1;
        Some(Monomial(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for gen in Generator::ALL {
            match self.exponent(gen) {
                0 => {}
                1 => parts.push(gen.symbol().to_string()),
                k => parts.push(format!("{}^{k}", gen.symbol())),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

/// One oriented relation: `lhs -> coeff * rhs`, or `lhs -> 0` when `rhs` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Exponents,
    pub rhs: Option<(i64, Exponents)>,
}

impl RewriteRule {
    fn applies(&self, e: &Exponents) -> bool {
        e.iter().zip(&self.lhs).all(|(have, need)| have >= need)
    }

    fn apply(&self, e: &Exponents) -> Option<(i64, Exponents)> {
        let (coeff, rhs) = self.rhs?;
        let mut out = *e;
        for i in 0..6 {
            out[i] = out[i] - self.lhs[i] + rhs[i];
        }
        Some((coeff, out))
    }
}

fn exps(pairs: &[(Generator, u32)]) -> Exponents {
    let mut e = [0; 6];
    for &(gen, k) in pairs {
        e[gen.index()] += k;
    }
    e
}

/// The relation set for genus `g`, in the order [`reduce`] tries them.
pub fn rewrite_rules(genus: usize) -> Vec<RewriteRule> {
    use Generator::*;
    let zero = |pairs: &[(Generator, u32)]| RewriteRule {
        lhs: exps(pairs),
        rhs: None,
    };
    let to = |pairs: &[(Generator, u32)], coeff: i64, rhs: &[(Generator, u32)]| RewriteRule {
        lhs: exps(pairs),
        rhs: Some((coeff, exps(rhs))),
    };
    vec![
        zero(&[(Theta, genus as u32 + 1)]),
        zero(&[(Eta1, 2)]),
        zero(&[(Eta2, 2)]),
        zero(&[(Eta1, 1), (Gamma12, 1)]),
        zero(&[(Eta2, 1), (Gamma12, 1)]),
        zero(&[(Eta1, 1), (Gamma13, 1)]),
        zero(&[(Eta2, 1), (Gamma23, 1)]),
        to(&[(Gamma12, 2)], -2 * genus as i64, &[(Eta1, 1), (Eta2, 1)]),
        to(&[(Gamma13, 2)], -2, &[(Eta1, 1), (Theta, 1)]),
        to(&[(Gamma23, 2)], -2, &[(Eta2, 1), (Theta, 1)]),
        to(&[(Gamma12, 1), (Gamma23, 1)], 1, &[(Eta2, 1), (Gamma13, 1)]),
        to(&[(Gamma12, 1), (Gamma13, 1)], 1, &[(Eta1, 1), (Gamma23, 1)]),
    ]
}

/// Outcome of reducing a raw exponent vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reduced {
    Zero,
    Term(i64, Monomial),
}

/// A monomial with no applicable rule; errors if it contains `gamma13 gamma23`.
fn terminal(coeff: i64, e: Exponents) -> Result<Reduced> {
    if e[Generator::Gamma13.index()] > 0 && e[Generator::Gamma23.index()] > 0 {
        return Err(Error::UnreducibleMonomial);
    }
    Ok(Reduced::Term(coeff, Monomial(e)))
}

/// Reduces an arbitrary exponent vector to `coeff * normal form`, or zero.
pub fn reduce(mut e: Exponents, rules: &[RewriteRule]) -> Result<Reduced> {
    let mut coeff = 1i64;
    'outer: loop {
        for rule in rules {
            if rule.applies(&e) {
                match rule.apply(&e) {
                    None => return Ok(Reduced::Zero),
                    Some((c, next)) => {
                        coeff *= c;
                        e = next;
                        continue 'outer;
                    }
                }
            }
        }
        return terminal(coeff, e);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChowElement3<S> {
    genus: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> ChowElement3<S> {
    pub fn zero(genus: usize) -> Self {
        ChowElement3 {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(genus: usize, value: S) -> Self {
        Self::zero(genus).with_term(Monomial::UNIT, value)
    }

    pub fn one(genus: usize) -> Self {
        Self::constant(genus, S::one())
    }

    pub fn generator(genus: usize, gen: Generator) -> Self {
        Self::monomial(genus, &[(gen, 1)], S::one()).expect("single generators are in normal form")
    }

    /// `coeff * prod gen^k`, reduced to normal form.
    pub fn monomial(genus: usize, factors: &[(Generator, u32)], coeff: S) -> Result<Self> {
        let rules = rewrite_rules(genus);
        Ok(match reduce(exps(factors), &rules)? {
            Reduced::Zero => Self::zero(genus),
            Reduced::Term(c, m) => Self::zero(genus).with_term(m, coeff * S::from_int(c)),
        })
    }

    fn with_term(mut self, m: Monomial, coeff: S) -> Self {
        self.add_term(m, coeff);
        self
    }

    fn add_term(&mut self, m: Monomial, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(S::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coefficient(&Monomial::UNIT)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.genus, other.genus, "ring elements of different genus");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(self.genus);
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone() * k.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&S::from_int(-1)))
    }

    /// Product in normal form; fails if `gamma13 gamma23` survives reduction.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.genus, other.genus, "ring elements of different genus");
        let rules = rewrite_rules(self.genus);
        let mut out = Self::zero(self.genus);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut e = m1.0;
                for (slot, k) in e.iter_mut().zip(m2.0) {
                    *slot += k;
                }
                if let Reduced::Term(c, m) = reduce(e, &rules)? {
                    out.add_term(m, S::from_int(c) * c1.clone() * c2.clone());
                }
            }
        }
        Ok(out)
    }

    /// `e^(-x) = sum_k (-x)^k / k!` for nilpotent `x` (no constant term).
    pub fn exp_neg(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NotNilpotent);
        }
        let minus_x = self.scale(&S::from_int(-1));
        let mut total = Self::one(self.genus);
        let mut power = Self::one(self.genus);
        // every monomial of x has degree >= 1 and the ring vanishes above g + 2
        for k in 1..=(self.genus as i64 + 3) {
            power = power.try_mul(&minus_x)?.scale(&S::ratio(1, k));
            if power.is_zero() {
                break;
            }
            total = total.add(&power);
        }
        Ok(total)
    }
}

impl<S: Scalar> fmt::Display for ChowElement3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *m == Monomial::UNIT {
                    format_rational(c)
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{}·{m}", format_rational(c))
                }
            })
            .collect();
        f.write_str(&terms.join(" + ").replace("+ -", "- "))
    }
}

//! Exact scalars and the factorial conventions shared by every formula.
//!
//! All formulas in this crate are written against the [`Scalar`] trait, which
//! is implemented for the exact rational types of `num-rational`. The default
//! scalar is the arbitrary-precision [`crate::Rational`]; the fixed-width
//! `Ratio<i64>` and `Ratio<i128>` are available for small inputs and panic on
//! overflow like any other checked integer arithmetic.
//!
//! `1/k!` is total and vanishes for negative `k`, while `k!` itself is only
//! defined for `k >= 0`.

use std::fmt::{Debug, Display};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default number of factorials kept in the shared table.
pub const DEFAULT_MEMO_BOUND: usize = 512;

/// An exact field element usable as the coefficient type of every formula.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    /// Converts an arbitrary-precision integer. Fixed-width scalars panic when
    /// the value does not fit.
    fn from_bigint(n: &BigInt) -> Self;

    fn is_integral(&self) -> bool;

    fn numerator_bigint(&self) -> BigInt;

    fn denominator_bigint(&self) -> BigInt;

    /// `a / b` as an exact scalar. Panics when `b == 0`.
    fn ratio(a: i64, b: i64) -> Self {
        assert!(b != 0, "zero denominator");
        Self::from_int(a) / Self::from_int(b)
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn numerator_bigint(&self) -> BigInt {
        self.numer().clone()
    }

    fn denominator_bigint(&self) -> BigInt {
        self.denom().clone()
    }
}

macro_rules! fixed_width_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer(<$int>::from(n))
            }

            fn from_bigint(n: &BigInt) -> Self {
                let value: $int = n
                    .try_into()
                    .unwrap_or_else(|_| panic!("{n} does not fit in {}", stringify!($int)));
                Ratio::from_integer(value)
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }

            fn numerator_bigint(&self) -> BigInt {
                BigInt::from(*self.numer())
            }

            fn denominator_bigint(&self) -> BigInt {
                BigInt::from(*self.denom())
            }
        }
    };
}

fixed_width_scalar!(i64);
fixed_width_scalar!(i128);

/// Memoized factorials `0!, 1!, ..., bound!`; larger arguments are computed on
/// demand and not stored.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    table: Vec<BigInt>,
}

impl FactorialTable {
    pub fn with_bound(bound: usize) -> Self {
        let mut table = Vec::with_capacity(bound + 1);
        let mut acc = BigInt::one();
        table.push(acc.clone());
        for k in 1..=bound {
            acc *= k;
            table.push(acc.clone());
        }
        FactorialTable { table }
    }

    pub fn bound(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, k: usize) -> BigInt {
        if let Some(v) = self.table.get(k) {
            return v.clone();
        }
        let mut acc = self.table.last().cloned().unwrap_or_else(BigInt::one);
        for i in self.table.len()..=k {
            acc *= i;
        }
        acc
    }
}

fn shared_table() -> &'static FactorialTable {
    static TABLE: OnceLock<FactorialTable> = OnceLock::new();
    TABLE.get_or_init(|| FactorialTable::with_bound(DEFAULT_MEMO_BOUND))
}

/// `k!` as a big integer; `None` for negative `k`.
pub fn factorial_bigint(k: i64) -> Option<BigInt> {
    usize::try_from(k).ok().map(|k| shared_table().get(k))
}

/// `k!`, defined for `k >= 0` only.
pub fn factorial<S: Scalar>(k: i64) -> Result<S> {
    factorial_bigint(k)
        .map(|f| S::from_bigint(&f))
        .ok_or(Error::NegativeFactorial(k))
}

/// `1/k!`, with the convention `1/k! = 0` for `k < 0`.
pub fn inv_factorial<S: Scalar>(k: i64) -> S {
    match factorial_bigint(k) {
        Some(f) => S::one() / S::from_bigint(&f),
        None => S::zero(),
    }
}

/// `C(n, k)` for `0 <= k <= n`, and `0` otherwise (including negative `n`).
pub fn binomial<S: Scalar>(n: i64, k: i64) -> S {
    if k < 0 || n < 0 || k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    S::from_bigint(&acc)
}

/// Renders an exact rational as `p/q`, omitting the denominator when it is 1.
pub fn format_rational<S: Scalar>(x: &S) -> String {
    let num = x.numerator_bigint();
    let den = x.denominator_bigint();
    if den.is_one() {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

/// Renders `sum c_i * name_i`, skipping zero terms: `5·θ - 10·x`.
pub fn format_linear_combination<S: Scalar>(terms: &[(S, String)]) -> String {
    let mut out = String::new();
    for (c, name) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let negative = c.is_negative();
        let abs = if negative { -c.clone() } else { c.clone() };
        let body = if abs.is_one() {
            name.clone()
        } else {
            format!("{}·{name}", format_rational(&abs))
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_rational<S: Scalar>(text: &str) -> Option<S> {
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(S::from_bigint(&num) / S::from_bigint(&den))
}

/// Small-integer view of an integral scalar, if it fits in an `i64`.
pub fn to_i64<S: Scalar>(x: &S) -> Option<i64> {
    if !x.is_integral() {
        return None;
    }
    x.numerator_bigint().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::ratio(a, b)
    }

    #[test]
    fn inverse_factorial_values() {
        assert_eq!(inv_factorial::<Rational>(0), q(1, 1));
        assert_eq!(inv_factorial::<Rational>(4), q(1, 24));
        assert_eq!(inv_factorial::<Rational>(-3), q(0, 1));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial::<Rational>(0).unwrap(), q(1, 1));
        assert_eq!(factorial::<Rational>(6).unwrap(), q(720, 1));
        assert_eq!(factorial::<Rational>(10).unwrap(), q(3_628_800, 1));
        assert_eq!(factorial::<Rational>(-1), Err(Error::NegativeFactorial(-1)));
    }

    #[test]
    fn factorial_past_the_memo_bound() {
        let small = FactorialTable::with_bound(5);
        assert_eq!(small.bound(), 5);
        assert_eq!(small.get(8), BigInt::from(40_320));
        assert_eq!(small.get(20), shared_table().get(20));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial::<Rational>(4, 1), q(4, 1));
        assert_eq!(binomial::<Rational>(7, 2), q(21, 1));
        assert_eq!(binomial::<Rational>(5, 7), q(0, 1));
        assert_eq!(binomial::<Rational>(5, -1), q(0, 1));
    }

    #[test]
    fn fixed_width_scalars_agree() {
        assert_eq!(factorial::<Ratio<i64>>(10).unwrap(), Ratio::from_integer(3_628_800));
        assert_eq!(inv_factorial::<Ratio<i128>>(5), Ratio::new(1, 120));
        assert_eq!(binomial::<Ratio<i128>>(30, 15), Ratio::from_integer(155_117_520));
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(format_rational(&q(240, 1)), "240");
        assert_eq!(format_rational(&q(-21, 8)), "-21/8");
        assert_eq!(parse_rational::<Rational>("21/8"), Some(q(21, 8)));
        assert_eq!(parse_rational::<Rational>("4/0"), None);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #[test]
        fn factorial_times_inverse_is_one(k in 0i64..120) {
            let f: Rational = factorial(k).unwrap();
            prop_assert_eq!(f * inv_factorial::<Rational>(k), q(1, 1));
        }

        #[test]
        fn binomial_symmetry(n in 0i64..80, k in 0i64..80) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial::<Rational>(n, k), binomial::<Rational>(n, n - k));
        }

        #[test]
        fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * (q(1, 1) / a.clone()), q(1, 1));
            }
            prop_assert_eq!(a.clone() - a.clone(), q(0, 1));
        }

        #[test]
        fn text_round_trip(a in small_rational()) {
            prop_assert_eq!(parse_rational::<Rational>(&format_rational(&a)), Some(a));
        }
    }
}

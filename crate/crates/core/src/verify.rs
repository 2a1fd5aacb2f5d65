//! Cross-validation suites: every identity the library relies on, checked
//! over fixed fixtures (`Quick`) or full parameter sweeps (`Full`).
//!
//! The formulas under test are passed in through [`Formulas`], so a suite can be
//! pointed at a deliberately broken implementation to exercise its failure path.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Scalar;
use crate::bn_counts::{castelnuovo_count, pointed_secant_count, secant_point_count};
use crate::chow::oracle::{
    chern_m1, ch_m1, default_twist, eval_quadratic, fulton_pragacz_t, interpolate_quadratic, OracleSetup,
};
use crate::chow::three_factor::{ChowElement3, Generator};
use crate::chow::two_factor::{ChowElement2, Part};
use crate::error::Result;
use crate::moduli::{
    mu_via_test_curves, nu_coeff, pointed_bn_class, secant_coefficients, sigma_coeff, test_curve_t1, two_point_system,
    w_class,
};
use crate::params::{enumerate_params, secant_params, valid_tuples, SecantParams};
use crate::symprod::{r1_class, secant_class_cn, secant_class_cn_via_pullback};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    /// Number of cases examined (stops at the first failure).
    pub checked: usize,
    pub counterexample: Option<String>,
}

type CountFn = fn(&SecantParams) -> Result<Rational>;
type PointedFn = fn(&SecantParams, i64) -> Result<Rational>;

/// The implementations exercised by the suites.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub product_count: CountFn,
    pub general_count: CountFn,
    pub pointed_count: PointedFn,
    pub oracle_t: PointedFn,
    pub sigma: fn(&SecantParams) -> Rational,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas {
            product_count: |p| Ok(secant_point_count::<Rational>(p)?.value),
            general_count: |p| Ok(castelnuovo_count::<Rational>(p.g(), p.r(), p.d(), &p.vanishing_sequence())?.value),
            pointed_count: |p, delta| Ok(pointed_secant_count::<Rational>(p, delta)?.value),
            oracle_t: fulton_pragacz_t::<Rational>,
            sigma: sigma_coeff::<Rational>,
        }
    }
}

/// Runs cases until the first failure. A case returns `Ok(None)` on success,
/// `Ok(Some(msg))` on a mismatch; errors count as failures too.
struct Suite {
    name: &'static str,
    checked: usize,
    counterexample: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checked: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, label: impl std::fmt::Display, case: impl FnOnce() -> Result<Option<String>>) {
        if self.counterexample.is_some() {
            return;
        }
        self.checked += 1;
        match case() {
            Ok(None) => {}
            Ok(Some(msg)) => self.counterexample = Some(format!("{label}: {msg}")),
            Err(e) => self.counterexample = Some(format!("{label}: {e}")),
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            passed: self.counterexample.is_none(),
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

fn mismatch<T: std::fmt::Display + PartialEq>(what: &str, left: T, right: T) -> Option<String> {
    (left != right).then(|| format!("{what}: {left} != {right}"))
}

fn q(a: i64) -> Rational {
    Rational::from_int(a)
}

/// Every valid tuple with `g` in range; `r <= g-1` and `n <= g+r+1` are forced.
fn all_valid(g_range: std::ops::RangeInclusive<i64>) -> Vec<SecantParams> {
    let hi = *g_range.end();
    valid_tuples(g_range, (hi - 1).max(1), 2 * hi)
}

fn all_enumerated(g_range: std::ops::RangeInclusive<i64>) -> Vec<SecantParams> {
    g_range.flat_map(|g| (2..=2 * g).flat_map(move |n| enumerate_params(g, n))).collect()
}

fn fixtures() -> Vec<SecantParams> {
    [(3, 1, 3, 1, 3), (4, 1, 3, 1, 2), (6, 2, 6, 2, 3), (5, 1, 4, 1, 3), (8, 2, 8, 2, 4), (7, 3, 8, 3, 4)]
        .into_iter()
        .filter_map(|(g, r, d, t, n)| secant_params(g, r, d, t, n).ok())
        .collect()
}

fn product_vs_sum(level: Level, f: &Formulas) -> SuiteReport {
    let mut suite = Suite::new("product formula = general sum");
    let tuples = match level {
        Level::Quick => fixtures(),
        Level::Full => valid_tuples(2..=12, 4, 10),
    };
    for p in tuples {
        suite.check(p, || Ok(mismatch("count", (f.product_count)(&p)?, (f.general_count)(&p)?)));
    }
    suite.finish()
}

fn oracle(level: Level, f: &Formulas) -> SuiteReport {
    let mut suite = Suite::new("Fulton-Pragacz oracle = T(delta), quadratic in delta");
    let tuples = match level {
        Level::Quick => valid_tuples(2..=5, 2, 7),
        Level::Full => valid_tuples(2..=8, 3, 12),
    };
    for p in tuples {
        suite.check(p, || {
            let n = p.n();
            let mut samples = Vec::new();
            for delta in 0..=n {
                let value = (f.oracle_t)(&p, delta)?;
                if let Some(msg) = mismatch(&format!("T({delta})"), value.clone(), (f.pointed_count)(&p, delta)?) {
                    return Ok(Some(msg));
                }
                samples.push((delta, value));
            }
            let quad = interpolate_quadratic(&[samples[0].clone(), samples[1].clone(), samples[n as usize].clone()])?;
            Ok(samples
                .iter()
                .find(|(x, y)| eval_quadratic(&quad, *x) != *y)
                .map(|(x, _)| format!("samples not quadratic at delta = {x}")))
        });
    }
    suite.finish()
}

fn grr(level: Level, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut suite = Suite::new("GRR pushforward and Chern classes match the closed forms");
    let cases = match level {
        Level::Quick => 5,
        Level::Full => 20,
    };
    for _ in 0..cases {
        let g = rng.gen_range(1..=10i64);
        let d = rng.gen_range(1..=3 * g);
        let n = rng.gen_range(2..=8i64);
        let m = default_twist(g, d) + rng.gen_range(0..=3);
        let delta = rng.gen_range(0..=n);
        let s = OracleSetup { g, d, m, n, delta };
        suite.check(format!("(g,d,m,n,delta) = ({g},{d},{m},{n},{delta})"), || {
            let gu = g as usize;
            let a = q(g * delta * delta + delta * (d - g + 1 - n));
            let closed_ch = ChowElement2::constant(gu, q(m + n))
                .with_term(Part::Eta, 0, a.clone())
                .with_term(Part::Gamma, 0, q(delta))
                .with_term(Part::Eta, 1, q(-delta));
            let closed_c = ChowElement2::one(gu)
                .with_term(Part::Eta, 0, a)
                .with_term(Part::Gamma, 0, q(delta))
                .with_term(Part::Eta, 1, q(delta - delta * delta));
            let (ch, c) = (ch_m1::<Rational>(&s)?, chern_m1::<Rational>(&s)?);
            Ok(mismatch("ch(M1)", ch, closed_ch).or_else(|| mismatch("c(M1)", c, closed_c)))
        });
    }
    suite.finish()
}

fn mu_nu_sigma(level: Level, f: &Formulas) -> SuiteReport {
    let mut suite = Suite::new("mu = nu * sigma");
    let tuples = match level {
        Level::Quick => fixtures().into_iter().filter(|p| p.g() >= 3).collect(),
        Level::Full => all_valid(3..=12),
    };
    for p in tuples {
        suite.check(p, || {
            let mu = mu_via_test_curves::<Rational>(&p)?;
            Ok(mismatch("mu vs nu*sigma", mu, nu_coeff::<Rational>(&p)? * (f.sigma)(&p)))
        });
    }
    suite.finish()
}

fn weierstrass(level: Level) -> SuiteReport {
    let mut suite = Suite::new("Weierstrass anchors");
    let (count_max, class_max) = match level {
        Level::Quick => (8, 6),
        Level::Full => (20, 15),
    };
    for g in 2..=count_max {
        suite.check(format!("count g={g}"), || {
            let value = castelnuovo_count::<Rational>(g, 1, g, &[0, g])?.value;
            Ok(mismatch("n_{g,1,g,(0,g)}", value, q(g * g * g - g)))
        });
    }
    for g in 3..=class_max {
        suite.check(format!("class g={g}"), || {
            let p = secant_params(g, 1, g, 1, g)?;
            Ok((pointed_bn_class::<Rational>(&p)? != w_class(g)).then(|| "pointed class differs from W".to_string()))
        });
    }
    suite.finish()
}

fn secclass(level: Level, f: &Formulas) -> SuiteReport {
    let mut suite = Suite::new("secant class on M_{g,n}: recursion and test curves");
    let tuples = match level {
        Level::Quick => fixtures(),
        Level::Full => all_enumerated(2..=12),
    };
    for p in tuples {
        suite.check(p, || {
            let n = p.n();
            let c = secant_coefficients::<Rational>(&p);
            for j in 3..=n {
                let lhs = q(j) * c.psi.clone() + q(j - 2) * c.zero_j[&j].clone() - q(j) * c.zero_j[&(j - 1)].clone();
                if let Some(msg) = mismatch(&format!("recursion at j={j}"), lhs, q(0)) {
                    return Ok(Some(msg));
                }
            }
            let t1 = (f.pointed_count)(&p, 1)?;
            if let Some(msg) = mismatch("T(1) test curve", test_curve_t1::<Rational>(&p)?, t1) {
                return Ok(Some(msg));
            }
            let (hx, _) = two_point_system::<Rational>(&p)?;
            if let Some(msg) = mismatch("two-point h_x vs c_psi", hx, c.psi.clone()) {
                return Ok(Some(msg));
            }
            Ok(None)
        });
    }
    suite.finish()
}

fn secresult(level: Level) -> SuiteReport {
    let mut suite = Suite::new("class on C_n: pullback route, ray, r = 1 formula");
    let (tuples, r1_max) = match level {
        Level::Quick => (fixtures(), 10),
        Level::Full => (all_enumerated(2..=12), 20),
    };
    for p in tuples {
        suite.check(p, || {
            let direct = secant_class_cn::<Rational>(&p)?;
            let pulled = secant_class_cn_via_pullback::<Rational>(&p)?;
            if direct != pulled {
                return Ok(Some(format!("direct {direct} vs pullback {pulled}")));
            }
            let ray = q(p.n()) * direct.x.clone() + q(p.g()) * direct.theta.clone();
            Ok(mismatch("n x + g theta", ray, q(0)))
        });
    }
    for g in 2..=r1_max {
        for d in 2..=g {
            let n = 2 * d - g;
            let Ok(p) = secant_params(g, 1, d, 1, n) else {
                continue;
            };
            suite.check(p, || {
                Ok((secant_class_cn::<Rational>(&p)? != r1_class(g, d)?).then(|| "r = 1 formula differs".to_string()))
            });
        }
    }
    suite.finish()
}

fn coverage(level: Level) -> SuiteReport {
    let mut suite = Suite::new("coverage: a divisor for g/2 <= n <= g-2");
    let g_max = match level {
        Level::Quick => 12,
        Level::Full => 30,
    };
    for g in 4..=g_max {
        for n in (g + 1) / 2..=g - 2 {
            suite.check(format!("(g,n) = ({g},{n})"), || {
                Ok(enumerate_params(g, n).is_empty().then(|| "no witness".to_string()))
            });
        }
    }
    suite.finish()
}

fn golden(f: &Formulas) -> SuiteReport {
    let mut suite = Suite::new("golden values");
    suite.check("n_{3,1,3,(0,3)}", || {
        Ok(mismatch("count", castelnuovo_count::<Rational>(3, 1, 3, &[0, 3])?.value, q(24)))
    });
    suite.check("n_{6,2,6,(0,1,3)}", || {
        Ok(mismatch("count", castelnuovo_count::<Rational>(6, 2, 6, &[0, 1, 3])?.value, q(240)))
    });
    suite.check("T(1) at (6,2,6,2,3)", || {
        Ok(mismatch("T(1)", (f.pointed_count)(&secant_params(6, 2, 6, 2, 3)?, 1)?, q(20)))
    });
    for ((g, r, d, t, n), (theta, x)) in [((6, 2, 6, 2, 3), (5, -10)), ((4, 1, 3, 1, 2), (2, -4))] {
        suite.check(format!("class at ({g},{r},{d},{t},{n})"), || {
            let c = secant_class_cn::<Rational>(&secant_params(g, r, d, t, n)?)?;
            Ok(mismatch("theta", c.theta, q(theta)).or(mismatch("x", c.x, q(x))))
        });
    }
    suite.finish()
}

fn random_element2(rng: &mut ChaCha8Rng, g: usize) -> ChowElement2<Rational> {
    let mut x = ChowElement2::zero(g);
    for part in [Part::Theta, Part::Eta, Part::Gamma] {
        for k in 0..=g {
            x = x.with_term(part, k, Rational::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        }
    }
    x
}

fn random_element3(rng: &mut ChaCha8Rng, g: usize) -> Result<ChowElement3<Rational>> {
    // gamma23 is left out: products of it with gamma13 have no normal form
    let gens = [Generator::Eta1, Generator::Eta2, Generator::Gamma12, Generator::Gamma13, Generator::Theta];
    let mut x = ChowElement3::constant(g, Rational::from_int(rng.gen_range(-3..=3)));
    for _ in 0..4 {
        let factors: Vec<(Generator, u32)> = gens.iter().map(|&gen| (gen, rng.gen_range(0..=1))).collect();
        let term = ChowElement3::monomial(g, &factors, Rational::from_int(rng.gen_range(-4..=4)))?;
        x = x.add(&term);
    }
    Ok(x)
}

fn ring_axioms(level: Level, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut suite = Suite::new("ring axioms on random elements");
    let cases = match level {
        Level::Quick => 20,
        Level::Full => 200,
    };
    for i in 0..cases {
        let g = rng.gen_range(1..=4usize);
        let (x, y, z) = (random_element2(rng, g), random_element2(rng, g), random_element2(rng, g));
        suite.check(format!("C x Pic case {i}"), || {
            let comm = x.clone() * y.clone() == y.clone() * x.clone();
            let assoc = (x.clone() * y.clone()) * z.clone() == x.clone() * (y.clone() * z.clone());
            Ok((!(comm && assoc)).then(|| format!("x = {x}, y = {y}, z = {z}")))
        });
        let elems: Result<Vec<_>> = (0..3).map(|_| random_element3(rng, g)).collect();
        suite.check(format!("C x C x Pic case {i}"), || {
            let [x, y, z]: [ChowElement3<Rational>; 3] = elems?.try_into().expect("three elements");
            let comm = x.try_mul(&y)? == y.try_mul(&x)?;
            let assoc = x.try_mul(&y)?.try_mul(&z)? == x.try_mul(&y.try_mul(&z)?)?;
            Ok((!(comm && assoc)).then(|| format!("x = {x}, y = {y}, z = {z}")))
        });
    }
    suite.finish()
}

/// Runs every suite with the library's own formulas.
pub fn run_all(level: Level, seed: u64) -> Vec<SuiteReport> {
    run_all_with(level, seed, &Formulas::default())
}

pub fn run_all_with(level: Level, seed: u64, formulas: &Formulas) -> Vec<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        product_vs_sum(level, formulas),
        oracle(level, formulas),
        grr(level, &mut rng),
        mu_nu_sigma(level, formulas),
        weierstrass(level),
        secclass(level, formulas),
        secresult(level),
        coverage(level),
        golden(formulas),
        ring_axioms(level, &mut rng),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for report in run_all(Level::Quick, 7) {
            assert!(report.passed, "{report:?}");
            assert!(report.checked > 0, "{}", report.name);
        }
    }

    #[test]
    fn corrupted_formula_is_caught() {
        let broken = Formulas {
            product_count: |p| Ok(secant_point_count::<Rational>(p)?.value + Rational::from_int(i64::from(p.g() == 6))),
            ..Formulas::default()
        };
        let reports = run_all_with(Level::Quick, 7, &broken);
        let first = &reports[0];
        assert!(!first.passed);
        assert!(first.counterexample.as_deref().unwrap().contains("g=6"));
        assert!(reports[1..].iter().all(|r| r.passed));
    }
}

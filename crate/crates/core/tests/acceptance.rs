//! End-to-end acceptance checks. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use secant_core::bn_counts::{castelnuovo_count, pointed_secant_count, secant_point_count};
use secant_core::chow::oracle::{ch_m1, chern_m1, default_twist};
use secant_core::chow::{fulton_pragacz_t, ChowElement2, OracleSetup, Part};
use secant_core::moduli::{
    mu_via_test_curves, nu_coeff, pointed_bn_class, secant_coefficients, sigma_coeff, test_curve_t1, w_class,
};
use secant_core::params::{enumerate_params, secant_params, valid_tuples};
use secant_core::symprod::{r1_class, secant_class_cn, secant_class_cn_via_pullback};
use secant_core::{Rational, Scalar, SecantParams};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn q(a: i64) -> Rational {
    Rational::from_int(a)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: secant_core::Result<T>, ctx: impl std::fmt::Display) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

fn enumerated(g_max: i64) -> Vec<SecantParams> {
    (2..=g_max)
        .flat_map(|g| (2..=2 * g).flat_map(move |n| enumerate_params(g, n)))
        .collect()
}

// Independent small-integer oracles, used for the fixed values.

fn fact(k: i64) -> i128 {
    (1..=k as i128).product()
}

/// Product formula for the secant count, in machine rationals.
fn product_oracle(g: i64, r: i64, d: i64, t: i64, n: i64) -> Ratio<i128> {
    let s = g - d + r;
    let f = |k: i64| Ratio::from_integer(fact(k));
    let i = |k: i64| Ratio::from_integer(k as i128);
    let mut v = f(g) * i(n * (n * n - 1));
    for a in 2..=t {
        v = v * f(a) * i(n - a) / f(s - 1 + a);
    }
    for b in 2..=(r + 1 - t) {
        v = v * f(b) * f(n + b) / (f(s + n - 1 + b) * f(n - t - 1 + b) * i(n - 1 + b));
    }
    v / (f(s - 1) * f(s + n - 1) * f(t - 1) * f(r - t))
}

/// `(theta, x)` of `count/(g(n^2-1)) (theta - (g/n) x)`.
fn class_oracle(g: i64, r: i64, d: i64, t: i64, n: i64) -> (Ratio<i128>, Ratio<i128>) {
    let c = product_oracle(g, r, d, t, n) / Ratio::from_integer((g * (n * n - 1)) as i128);
    (c, -c * Ratio::new(g as i128, n as i128))
}

fn to_i128(x: &Rational) -> Option<Ratio<i128>> {
    let n: i128 = x.numer().try_into().ok()?;
    let d: i128 = x.denom().try_into().ok()?;
    Some(Ratio::new(n, d))
}

// Criteria.

fn formula_cross_validation() -> Check {
    let tuples = valid_tuples(2..=12, 4, 10);
    for p in &tuples {
        let product = lib(secant_point_count::<Rational>(p), p)?.value;
        let a = p.vanishing_sequence();
        let general = lib(castelnuovo_count::<Rational>(p.g(), p.r(), p.d(), a.entries()), p)?.value;
        ensure(product == general, || format!("{p}: product {product} vs sum {general}"))?;
    }
    ensure(tuples.len() >= 100, || format!("only {} tuples", tuples.len()))?;
    Ok(format!("{} tuples", tuples.len()))
}

fn symbolic_oracle() -> Check {
    let tuples = valid_tuples(2..=8, 3, 12);
    let mut samples = 0;
    for p in &tuples {
        let n = p.n();
        let mut values = Vec::new();
        for delta in 0..=n {
            let fp = lib(fulton_pragacz_t::<Rational>(p, delta), format!("{p}, delta {delta}"))?;
            let t = lib(pointed_secant_count::<Rational>(p, delta), p)?.value;
            ensure(fp == t, || format!("{p}: determinant gives T({delta}) = {fp}, formula {t}"))?;
            values.push(fp);
            samples += 1;
        }
        // degree <= 2 iff third finite differences vanish
        for w in values.windows(4) {
            let third = w[3].clone() - q(3) * w[2].clone() + q(3) * w[1].clone() - w[0].clone();
            ensure(third == q(0), || format!("{p}: samples are not quadratic in delta"))?;
        }
    }
    Ok(format!("{} tuples, {samples} samples", tuples.len()))
}

fn grr_reproduction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ec_a17);
    for _ in 0..20 {
        let g = rng.gen_range(1..=10i64);
        let d = rng.gen_range(1..=3 * g);
        let n = rng.gen_range(2..=8i64);
        let m = default_twist(g, d) + rng.gen_range(0..=3);
        let delta = rng.gen_range(0..=n);
        let s = OracleSetup { g, d, m, n, delta };
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
        let ch = lib(ch_m1::<Rational>(&s), format!("{s:?}"))?;
        ensure(ch == closed_ch, || format!("{s:?}: ch = {ch}, expected {closed_ch}"))?;
        let c = lib(chern_m1::<Rational>(&s), format!("{s:?}"))?;
        ensure(c == closed_c, || format!("{s:?}: c = {c}, expected {closed_c}"))?;
    }
    Ok("20 random setups, g <= 10".into())
}

fn mu_equals_nu_sigma() -> Check {
    let tuples = valid_tuples(3..=12, 11, 24);
    for p in &tuples {
        let mu = lib(mu_via_test_curves::<Rational>(p), p)?;
        let nu = lib(nu_coeff::<Rational>(p), p)?;
        let sigma = sigma_coeff::<Rational>(p);
        ensure(mu == nu.clone() * sigma.clone(), || format!("{p}: mu {mu}, nu {nu}, sigma {sigma}"))?;
    }
    Ok(format!("{} tuples", tuples.len()))
}

fn weierstrass_anchors() -> Check {
    for g in 2..=20 {
        let v = lib(castelnuovo_count::<Rational>(g, 1, g, &[0, g]), g)?.value;
        ensure(v == q(g * g * g - g), || format!("g={g}: {v}"))?;
    }
    for g in 3..=15 {
        let p = lib(secant_params(g, 1, g, 1, g), g)?;
        let c = lib(pointed_bn_class::<Rational>(&p), p)?;
        // W = -lambda + C(g+1,2) psi - sum_i C(g-i+1,2) delta_i
        let w = w_class::<Rational>(g);
        ensure(c == w, || format!("g={g}: {c} vs W = {w}"))?;
        ensure(w.lambda == q(-1) && w.psi == q(g * (g + 1) / 2), || format!("g={g}: W = {w}"))?;
        for i in 1..g {
            ensure(w.delta_i(i) == q(-(g - i + 1) * (g - i) / 2), || format!("g={g}: W = {w}"))?;
        }
    }
    Ok("counts g in 2..=20, classes g in 3..=15".into())
}

fn secclass_identities() -> Check {
    let tuples = enumerated(12);
    for p in &tuples {
        let n = p.n();
        let c = secant_coefficients::<Rational>(p);
        for j in 3..=n {
            let lhs = q(j) * c.psi.clone() + q(j - 2) * c.zero_j[&j].clone() - q(j) * c.zero_j[&(j - 1)].clone();
            ensure(lhs == q(0), || format!("{p}: recursion fails at j={j}"))?;
        }
        let lhs = lib(test_curve_t1::<Rational>(p), p)?;
        let t1 = lib(pointed_secant_count::<Rational>(p, 1), p)?.value;
        ensure(lhs == t1, || format!("{p}: test curve {lhs} vs T(1) {t1}"))?;
    }
    Ok(format!("{} tuples", tuples.len()))
}

fn secresult_routes() -> Check {
    let tuples = enumerated(12);
    for p in &tuples {
        let direct = lib(secant_class_cn::<Rational>(p), p)?;
        let pulled = lib(secant_class_cn_via_pullback::<Rational>(p), p)?;
        ensure(direct == pulled, || format!("{p}: {direct} vs {pulled}"))?;
        let ray = q(p.n()) * direct.x.clone() + q(p.g()) * direct.theta.clone();
        ensure(ray == q(0), || format!("{p}: {direct} is off the ray"))?;
    }
    let mut r1 = 0;
    for g in 2..=20 {
        for d in 1..=g {
            let n = 2 * d - g;
            if n < 2 {
                continue;
            }
            let Ok(p) = secant_params(g, 1, d, 1, n) else {
                continue;
            };
            let direct = lib(secant_class_cn::<Rational>(&p), p)?;
            let closed = lib(r1_class::<Rational>(g, d), p)?;
            ensure(direct == closed, || format!("{p}: {direct} vs r = 1 formula {closed}"))?;
            r1 += 1;
        }
    }
    Ok(format!("{} tuples, {r1} r = 1 cases", tuples.len()))
}

fn coverage_scan() -> Check {
    let mut pairs = 0;
    for g in 4..=30 {
        for n in (g + 1) / 2..=g - 2 {
            ensure(!enumerate_params(g, n).is_empty(), || format!("no divisor for (g,n) = ({g},{n})"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (g,n) pairs"))
}

fn golden_values() -> Check {
    let v = lib(castelnuovo_count::<Rational>(3, 1, 3, &[0, 3]), "(3,1,3)")?.value;
    ensure(v == q(24) && to_i128(&v) == Some(product_oracle(3, 1, 3, 1, 3)), || format!("n_(3,1,3,(0,3)) = {v}"))?;
    let v = lib(castelnuovo_count::<Rational>(6, 2, 6, &[0, 1, 3]), "(6,2,6)")?.value;
    ensure(v == q(240) && to_i128(&v) == Some(product_oracle(6, 2, 6, 2, 3)), || format!("n_(6,2,6,(0,1,3)) = {v}"))?;

    let p = lib(secant_params(6, 2, 6, 2, 3), "(6,2,6,2,3)")?;
    let t1 = lib(pointed_secant_count::<Rational>(&p, 1), p)?.value;
    ensure(t1 == q(20), || format!("T(1) = {t1}"))?;
    let t1_det = lib(fulton_pragacz_t::<Rational>(&p, 1), p)?;
    ensure(t1_det == q(20), || format!("determinant T(1) = {t1_det}"))?;

    for ((g, r, d, t, n), (theta, x)) in [((6, 2, 6, 2, 3), (5, -10)), ((4, 1, 3, 1, 2), (2, -4))] {
        let p = lib(secant_params(g, r, d, t, n), "fixture")?;
        let c = lib(secant_class_cn::<Rational>(&p), p)?;
        let expected = (Ratio::from_integer(theta), Ratio::from_integer(x));
        ensure(class_oracle(g, r, d, t, n) == expected, || format!("{p}: oracle disagrees with fixture"))?;
        ensure(c.theta == q(theta as i64) && c.x == q(x as i64), || format!("{p}: class {c}"))?;
    }
    Ok("24, 240, T(1) = 20, 5θ - 10x, 2θ - 4x".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("product formula = general sum", formula_cross_validation),
        ("determinantal oracle = T(delta), quadratic in delta", symbolic_oracle),
        ("GRR pushforward and Chern classes", grr_reproduction),
        ("mu = nu * sigma", mu_equals_nu_sigma),
        ("Weierstrass anchors", weierstrass_anchors),
        ("M_{g,n} class: recursion and T(1) test curve", secclass_identities),
        ("C_n class: pullback route, ray, r = 1", secresult_routes),
        ("coverage g/2 <= n <= g-2", coverage_scan),
        ("golden values", golden_values),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS - {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL - {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

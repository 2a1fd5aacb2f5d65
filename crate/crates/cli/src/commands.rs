use serde_json::{json, Map, Value};

use secant_core::arith::format_rational;
use secant_core::bn_counts::{castelnuovo_count, pointed_secant_count, secant_point_count, FormulaTag};
use secant_core::chow::fulton_pragacz_t;
use secant_core::moduli::{mu_nu, nu_coeff, pointed_bn_class, secant_class_mgn, sigma_coeff, MgnDivisor};
use secant_core::params::{nonempty_condition, validate};
use secant_core::symprod::{residual_report, secant_class_cn, secant_class_cn_via_pullback, slope_table};
use secant_core::verify::{run_all, Level};
use secant_core::{Degree, EnumerationBounds, Error, Rational, SecantParams};

use crate::render::{latex_combination, rat, unicode_combination, Doc, Rows};

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Partial output still worth printing (verify reports).
    pub doc: Option<Doc>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_consistency_failure() { 3 } else { 2 },
            message: e.to_string(),
            doc: None,
        }
    }
}

fn inconsistent(message: String) -> Failure {
    Failure {
        code: 3,
        message,
        doc: None,
    }
}

pub type Outcome = Result<Doc, Failure>;

/// The `(g, r, d, t, n)` flags as given on the command line.
#[derive(Debug, Clone, Copy)]
pub struct TupleInput {
    pub g: i64,
    pub r: i64,
    pub d: Degree,
    pub t: i64,
    pub n: i64,
}

impl TupleInput {
    fn params(&self) -> Result<SecantParams, Failure> {
        Ok(validate(self.g, self.r, self.d, self.t, self.n)?)
    }
}

fn echo(doc: &mut Doc, p: &SecantParams) {
    doc.input("g", p.g())
        .input("r", p.r())
        .input("d", p.d())
        .input("t", p.t())
        .input("n", p.n());
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormulaChoice {
    General,
    Product,
    Both,
}

pub fn count(input: TupleInput, formula: FormulaChoice) -> Outcome {
    let p = input.params()?;
    let mut doc = Doc::new("count");
    echo(&mut doc, &p);
    doc.input("a", p.vanishing_sequence().to_string());
    let general = || castelnuovo_count::<Rational>(p.g(), p.r(), p.d(), &p.vanishing_sequence());
    match formula {
        FormulaChoice::General => {
            let c = general()?;
            doc.result("count", rat(&c.value)).tag(c.formula.as_str());
        }
        FormulaChoice::Product => {
            let c = secant_point_count::<Rational>(&p)?;
            doc.result("count", rat(&c.value)).tag(c.formula.as_str());
        }
        FormulaChoice::Both => {
            let a = general()?;
            let b = secant_point_count::<Rational>(&p)?;
            if a.value != b.value {
                return Err(inconsistent(format!(
                    "general sum {} and product formula {} disagree for {p}",
                    a.value, b.value
                )));
            }
            doc.result(FormulaTag::GeneralSum.as_str(), rat(&a.value))
                .result(FormulaTag::ProductSpecial.as_str(), rat(&b.value))
                .result("agree", true)
                .tag(a.formula.as_str())
                .tag(b.formula.as_str());
        }
    }
    Ok(doc)
}

pub fn tcount(input: TupleInput, delta: i64, oracle: bool) -> Outcome {
    let p = input.params()?;
    let mut doc = Doc::new("tcount");
    echo(&mut doc, &p);
    doc.input("delta", delta);
    let t = pointed_secant_count::<Rational>(&p, delta)?;
    doc.result("T", rat(&t.value)).tag(t.formula.as_str());
    if oracle {
        let o = fulton_pragacz_t::<Rational>(&p, delta)?;
        if o != t.value {
            return Err(inconsistent(format!("oracle gives {o}, closed form gives {} for {p}, delta = {delta}", t.value)));
        }
        doc.result("oracle", rat(&o)).result("oracle_agrees", true).tag("fulton_pragacz");
    }
    Ok(doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Space {
    Mg1,
    Mgn,
    Cn,
}

fn rat_map<'a>(entries: impl Iterator<Item = (String, &'a Rational)>) -> Value {
    Value::Object(entries.map(|(k, v)| (k, rat(v))).collect::<Map<_, _>>())
}

pub fn class(input: TupleInput, space: Space) -> Outcome {
    let p = input.params()?;
    let mut doc = Doc::new("class");
    echo(&mut doc, &p);
    doc.input("space", format!("{space:?}").to_lowercase());
    match space {
        Space::Mg1 => class_mg1(&p, &mut doc)?,
        Space::Mgn => class_mgn(&p, &mut doc)?,
        Space::Cn => class_cn(&p, &mut doc)?,
    }
    Ok(doc)
}

fn class_mg1(p: &SecantParams, doc: &mut Doc) -> Result<(), Failure> {
    let g = p.g();
    let nu = nu_coeff::<Rational>(p)?;
    let sigma = sigma_coeff::<Rational>(p);
    let (mu, route) = match mu_nu::<Rational>(p) {
        Ok(data) => (data.mu, "test_curves"),
        Err(Error::GenusUnsupported(_)) => (nu.clone() * sigma.clone(), "sigma_branch"),
        Err(e) => return Err(e.into()),
    };
    let c = pointed_bn_class::<Rational>(p)?;
    let deltas: Vec<(Rational, String)> = (1..g).map(|i| (c.delta_i(i), format!("δ_{i}"))).collect();
    let mut terms: Vec<(Rational, &str)> = vec![(c.lambda.clone(), "λ"), (c.psi.clone(), "ψ"), (c.delta_irr.clone(), "δ_irr")];
    terms.extend(deltas.iter().map(|(x, s)| (x.clone(), s.as_str())));
    let latex_deltas: Vec<String> = (1..g).map(|i| format!("\\delta_{{{i}}}")).collect();
    let mut latex_terms: Vec<(Rational, &str)> =
        vec![(c.lambda.clone(), "\\lambda"), (c.psi.clone(), "\\psi"), (c.delta_irr.clone(), "\\delta_{\\mathrm{irr}}")];
    latex_terms.extend(deltas.iter().zip(&latex_deltas).map(|((x, _), s)| (x.clone(), s.as_str())));

    doc.result("class", unicode_combination(&terms))
        .result("lambda", rat(&c.lambda))
        .result("psi", rat(&c.psi))
        .result("delta_irr", rat(&c.delta_irr))
        .result("delta", rat_map((1..g).map(|i| (i.to_string(), &c.delta[(i - 1) as usize]))))
        .result("mu", rat(&mu))
        .result("nu", rat(&nu))
        .result("sigma", rat(&sigma))
        .result("mu_route", route)
        .tag("pointed_bn_class");
    doc.latex = Some(format!(
        "\\left[\\overline{{\\mathcal{{M}}}}^{{{}}}_{{{},{}}}{}\\right] = {}",
        p.r(),
        p.g(),
        p.d(),
        p.vanishing_sequence(),
        latex_combination(&latex_terms)
    ));
    Ok(())
}

fn class_mgn(p: &SecantParams, doc: &mut Doc) -> Result<(), Failure> {
    let c = secant_class_mgn::<Rational>(p)?;
    let terms = c.known_terms();
    let names: Vec<String> = terms.iter().map(|(d, _)| d.to_string()).collect();
    let latex_names: Vec<String> = terms
        .iter()
        .map(|(d, _)| match d {
            MgnDivisor::Lambda => "\\lambda".to_string(),
            MgnDivisor::Psi => "\\sum_i \\psi_i".to_string(),
            MgnDivisor::DeltaIrr => "\\delta_{\\mathrm{irr}}".to_string(),
            MgnDivisor::Boundary(i, j) => format!("\\delta_{{{i}:{j}}}"),
        })
        .collect();
    let uni: Vec<(Rational, &str)> = terms.iter().zip(&names).map(|((_, x), s)| (x.clone(), s.as_str())).collect();
    let tex: Vec<(Rational, &str)> = terms.iter().zip(&latex_names).map(|((_, x), s)| (x.clone(), s.as_str())).collect();
    let unknown = "coefficients of δ_{i:j} with i ≥ 1, j ≥ 1 are not computed";
    doc.result("class", format!("{} + (unknown δ_{{i:j}}, i,j ≥ 1)", unicode_combination(&uni)))
        .result("lambda", rat(&c.lambda))
        .result("psi_each", rat(&c.psi_each))
        .result("delta_irr", rat(&c.delta_irr))
        .result("delta_0j", rat_map(c.delta_0j.iter().map(|(j, x)| (j.to_string(), x))))
        .result("delta_i0", rat_map(c.delta_i0.iter().map(|(i, x)| (i.to_string(), x))))
        .result("unknown", unknown)
        .tag("secant_class_mgn");
    doc.latex = Some(format!(
        "\\left[\\overline{{\\mathfrak{{S}}}}^{{{},{}}}_{{{},{}}}\\right] = {} + \\sum_{{i,j\\geq 1}} (\\text{{unknown}})\\,\\delta_{{i:j}}",
        p.r(),
        p.t(),
        p.g(),
        p.d(),
        latex_combination(&tex)
    ));
    Ok(())
}

fn class_cn(p: &SecantParams, doc: &mut Doc) -> Result<(), Failure> {
    let c = secant_class_cn::<Rational>(p)?;
    let pulled = secant_class_cn_via_pullback::<Rational>(p)?;
    if pulled != c {
        return Err(inconsistent(format!("pullback route gives {pulled}, direct route {c} for {p}")));
    }
    let terms = [(c.theta.clone(), "θ"), (c.x.clone(), "x")];
    doc.result("class", unicode_combination(&terms))
        .result("theta", rat(&c.theta))
        .result("x", rat(&c.x))
        .result("slope", c.slope().map_or(Value::Null, |s| rat(&s)))
        .result("pullback_agrees", true)
        .tag("secant_class_cn")
        .tag("pullback");
    doc.latex = Some(format!(
        "\\left[\\mathfrak{{S}}^{{{},{}}}_{{{},{}}}(C)\\right] = {}",
        p.r(),
        p.t(),
        p.g(),
        p.d(),
        latex_combination(&[(c.theta.clone(), "\\theta"), (c.x.clone(), "x")])
    ));
    Ok(())
}

fn witness(p: &SecantParams) -> String {
    format!("(r={},t={},d={})", p.r(), p.t(), p.d())
}

pub fn slope_table_cmd(g: i64, n_min: i64, n_max: i64, bounds: &EnumerationBounds) -> Outcome {
    if n_min < 1 || n_max < n_min {
        return Err(Error::Range(format!("need 1 <= n-min <= n-max, got {n_min}..{n_max}")).into());
    }
    let rows = slope_table::<Rational>(g, n_min..=n_max, bounds)?;
    let mut doc = Doc::new("slope-table");
    doc.input("g", g).input("n_min", n_min).input("n_max", n_max);
    let mut json_rows = Vec::new();
    let mut cells = Vec::new();
    for row in &rows {
        let note = if row.has_divisor() {
            if row.strict_improvement() { "improves classical bound" } else { "" }
        } else if row.n == g - 1 {
            "excluded: n = g−1 outside theorem hypotheses"
        } else {
            "no witness"
        };
        let witnesses: Vec<String> = row.witnesses.iter().map(witness).collect();
        json_rows.push(json!({
            "n": row.n,
            "has_divisor": row.has_divisor(),
            "witnesses": witnesses,
            "slope_new": rat(&row.slope_new),
            "slope_classical": rat(&row.slope_classical),
            "strict_improvement": row.strict_improvement(),
            "note": note,
        }));
        cells.push(vec![
            row.n.to_string(),
            if row.has_divisor() { "yes" } else { "no" }.to_string(),
            format_rational(&row.slope_new),
            format_rational(&row.slope_classical),
            note.to_string(),
            witnesses.join(" "),
        ]);
    }
    doc.result("rows", Value::Array(json_rows)).tag("slope_table");
    doc.rows = Some(Rows {
        header: vec!["n", "divisor", "g/n", "floor(g/n)", "note", "witnesses"],
        cells,
    });
    Ok(doc)
}

pub fn enumerate(g: i64, n: i64, bounds: &EnumerationBounds) -> Outcome {
    let mut doc = Doc::new("enumerate");
    doc.input("g", g).input("n", n);
    let found = secant_core::params::enumerate_params_with(g, n, bounds);
    let mut json_rows = Vec::new();
    let mut cells = Vec::new();
    for p in &found {
        let count = secant_point_count::<Rational>(p)?.value;
        let conditions: Vec<&str> = nonempty_condition(p).iter().map(|c| c.label()).collect();
        json_rows.push(json!({
            "r": p.r(),
            "t": p.t(),
            "d": p.d(),
            "s": p.s(),
            "conditions": conditions,
            "count": rat(&count),
        }));
        cells.push(vec![
            p.r().to_string(),
            p.t().to_string(),
            p.d().to_string(),
            p.s().to_string(),
            conditions.join(","),
            format_rational(&count),
        ]);
    }
    doc.result("rows", Value::Array(json_rows)).tag("enumerate_params");
    doc.rows = Some(Rows {
        header: vec!["r", "t", "d", "s", "conditions", "count"],
        cells,
    });
    Ok(doc)
}

pub fn residual(input: TupleInput) -> Outcome {
    let p = input.params()?;
    let report = residual_report::<Rational>(&p)?;
    let mut doc = Doc::new("residual");
    echo(&mut doc, &p);
    let q = report.residual;
    doc.result("count", rat(&report.original_count))
        .result("residual", json!({"g": q.g, "r": q.r, "d": q.d, "t": q.t, "n": q.n}));
    match &report.residual_count {
        Ok(c) => doc.result("residual_count", rat(c)).result("residual_valid", true),
        Err(e) => doc
            .result("residual_count", Value::Null)
            .result("residual_valid", false)
            .result("residual_error", e.to_string()),
    };
    doc.result("counts_agree", report.counts_agree())
        .result("note", "reported only; equality of counts is not asserted")
        .tag("product_special");
    Ok(doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LevelChoice {
    Quick,
    Full,
}

pub fn verify(level: LevelChoice, seed: u64) -> Outcome {
    let level_core = match level {
        LevelChoice::Quick => Level::Quick,
        LevelChoice::Full => Level::Full,
    };
    let reports = run_all(level_core, seed);
    let mut doc = Doc::new("verify");
    doc.input("level", format!("{level:?}").to_lowercase()).input("seed", seed);
    let all = reports.iter().all(|r| r.passed);
    let mut json_rows = Vec::new();
    let mut cells = Vec::new();
    for r in &reports {
        json_rows.push(json!({
            "suite": r.name,
            "passed": r.passed,
            "checked": r.checked,
            "counterexample": r.counterexample,
        }));
        cells.push(vec![
            if r.passed { "pass" } else { "FAIL" }.to_string(),
            r.checked.to_string(),
            r.name.to_string(),
            r.counterexample.clone().unwrap_or_default(),
        ]);
    }
    doc.result("passed", all).result("rows", Value::Array(json_rows)).tag("verify");
    doc.rows = Some(Rows {
        header: vec!["status", "cases", "suite", "counterexample"],
        cells,
    });
    if all {
        Ok(doc)
    } else {
        let first = reports.iter().find(|r| !r.passed).expect("a failing suite");
        Err(Failure {
            code: 3,
            message: format!("{} failed: {}", first.name, first.counterexample.clone().unwrap_or_default()),
            doc: Some(doc),
        })
    }
}

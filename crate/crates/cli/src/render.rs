//! Output documents and their three renderings.

use serde_json::{json, Map, Value};

use secant_core::arith::format_rational;
use num_traits::{One, Signed, Zero};
use secant_core::{Rational, Scalar};

/// What a command produced. `rows` drives tabular output; `latex` overrides the
/// generic LaTeX rendering.
pub struct Doc {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub provenance: Vec<String>,
    pub rows: Option<Rows>,
    pub latex: Option<String>,
}

impl std::fmt::Debug for Doc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_json().to_string())
    }
}

pub struct Rows {
    pub header: Vec<&'static str>,
    pub cells: Vec<Vec<String>>,
}

impl Doc {
    pub fn new(command: &'static str) -> Self {
        Doc {
            command,
            inputs: Map::new(),
            results: Map::new(),
            provenance: Vec::new(),
            rows: None,
            latex: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn tag(&mut self, tag: impl Into<String>) -> &mut Self {
        let tag = tag.into();
        if !self.provenance.contains(&tag) {
            self.provenance.push(tag);
        }
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "results": Value::Object(self.results.clone()),
            "provenance": self.provenance,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Latex,
}

pub fn rat(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn render(doc: &Doc, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc.to_json()).expect("documents are serializable");
            s.push('\n');
            s
        }
        Format::Table => table(doc),
        Format::Latex => latex(doc),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(", "),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}: {}", plain(v)))
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    }
}

fn aligned(header: &[&str], cells: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: Vec<&str>| {
        row.iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.extend(cells.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

fn table(doc: &Doc) -> String {
    let mut out = String::new();
    let inputs: Vec<String> = doc.inputs.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
    out.push_str(&format!("{} {}\n\n", doc.command, inputs.join(" ")));
    let scalars: Vec<Vec<String>> = doc
        .results
        .iter()
        .filter(|(k, _)| doc.rows.is_none() || k.as_str() != "rows")
        .map(|(k, v)| vec![k.clone(), plain(v)])
        .collect();
    if !scalars.is_empty() {
        let width = scalars.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
        for r in &scalars {
            out.push_str(&format!("{:<width$}  {}\n", r[0], r[1]));
        }
    }
    if let Some(rows) = &doc.rows {
        if !scalars.is_empty() {
            out.push('\n');
        }
        out.push_str(&aligned(&rows.header, &rows.cells));
        out.push('\n');
    }
    if !doc.provenance.is_empty() {
        out.push_str(&format!("\nformula: {}\n", doc.provenance.join(", ")));
    }
    out
}

/// `\frac{p}{q}` or `p`.
pub fn latex_rational(x: &Rational) -> String {
    if x.is_integral() {
        format_rational(x)
    } else {
        let sign = if x.is_negative() { "-" } else { "" };
        let abs = if x.is_negative() { -x.clone() } else { x.clone() };
        format!("{sign}\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
    }
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('{', "\\{").replace('}', "\\}")
}

fn latex_cell(v: &Value) -> String {
    match v {
        Value::String(s) => match secant_core::arith::parse_rational::<Rational>(s) {
            Some(x) if !s.is_empty() => format!("${}$", latex_rational(&x)),
            _ => latex_escape(s),
        },
        other => latex_escape(&plain(other)),
    }
}

fn latex(doc: &Doc) -> String {
    if let Some(body) = &doc.latex {
        return format!("{body}\n");
    }
    let mut out = String::new();
    let scalars: Vec<(&String, &Value)> = doc.results.iter().filter(|(k, _)| k.as_str() != "rows").collect();
    if !scalars.is_empty() {
        out.push_str("\\begin{tabular}{ll}\n");
        for (k, v) in scalars {
            out.push_str(&format!("{} & {} \\\\\n", latex_escape(k), latex_cell(v)));
        }
        out.push_str("\\end{tabular}\n");
    }
    if let Some(rows) = &doc.rows {
        out.push_str(&format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(rows.header.len())));
        let head: Vec<String> = rows.header.iter().map(|h| latex_escape(h)).collect();
        out.push_str(&format!("{} \\\\\n\\hline\n", head.join(" & ")));
        for r in &rows.cells {
            let cells: Vec<String> = r.iter().map(|c| latex_cell(&Value::String(c.clone()))).collect();
            out.push_str(&format!("{} \\\\\n", cells.join(" & ")));
        }
        out.push_str("\\end{tabular}\n");
    }
    out
}

/// `5θ − 10x`, with parenthesized fractional coefficients.
pub fn unicode_combination(terms: &[(Rational, &str)]) -> String {
    combination(terms, " − ", |c| {
        if c.is_integral() {
            format_rational(c)
        } else {
            format!("({})", format_rational(c))
        }
    })
}

/// `5\theta - 10x`.
pub fn latex_combination(terms: &[(Rational, &str)]) -> String {
    combination(terms, " - ", latex_rational)
}

fn combination(terms: &[(Rational, &str)], minus: &str, coeff: impl Fn(&Rational) -> String) -> String {
    let mut out = String::new();
    for (c, sym) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        let body = if abs.is_one() { sym.to_string() } else { format!("{}{sym}", coeff(&abs)) };
        out.push_str(&match (out.is_empty(), neg) {
            (true, false) => body,
            (true, true) => format!("{}{body}", minus.trim()),
            (false, false) => format!(" + {body}"),
            (false, true) => format!("{minus}{body}"),
        });
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

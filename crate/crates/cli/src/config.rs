//! `key = value` configuration files. Blank lines and `#` comments are ignored.

use std::path::Path;

use secant_core::EnumerationBounds;

pub fn parse(text: &str) -> Result<EnumerationBounds, String> {
    let mut bounds = EnumerationBounds::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected key = value", lineno + 1));
        };
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| format!("line {}: {:?} is not an integer", lineno + 1, value.trim()))?;
        if value < 1 {
            return Err(format!("line {}: value must be positive", lineno + 1));
        }
        match key.trim() {
            "r_max" => bounds.r_max = value,
            "d_max" => bounds.d_max = Some(value),
            other => return Err(format!("line {}: unknown key {other:?}", lineno + 1)),
        }
    }
    Ok(bounds)
}

pub fn load(path: Option<&Path>) -> Result<EnumerationBounds, String> {
    match path {
        None => Ok(EnumerationBounds::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse(&text)
        }
    }
}

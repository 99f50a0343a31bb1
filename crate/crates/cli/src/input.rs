//! Parser for the input mini-language.
//!
//! ```text
//! gaussian:A=<re>+<im>i,b=<re>+<im>i
//! hermite:k=<int>
//! example-2.3:alpha=<real>
//! example-3.3:beta=<real>
//! expansion:@file.json
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use hardy_core::gaussian_family::{example_2_3, example_3_3};
use hardy_core::{Complex64, Expansion, Gaussian, State};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    Gaussian { amplitude: Complex64, width: Complex64 },
    Hermite { k: usize },
    Chirp { alpha: f64 },
    Squeezed { beta: f64 },
    Expansion { coeffs: Vec<Complex64> },
}

impl InputSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| CliError::Parse(format!("input `{s}` has no `kind:` prefix")))?;
        if kind == "expansion" {
            let path = rest
                .strip_prefix('@')
                .ok_or_else(|| CliError::Parse("expansion input must be `expansion:@file.json`".into()))?;
            return Ok(Self::Expansion { coeffs: read_expansion(Path::new(path))? });
        }
        let mut params = parse_params(rest)?;
        let spec = match kind {
            "gaussian" => {
                let amplitude = params.remove("A").map(|v| parse_complex(&v)).transpose()?.unwrap_or(Complex64::new(1.0, 0.0));
                let width = parse_complex(&take(&mut params, "b")?)?;
                Self::Gaussian { amplitude, width }
            }
            "hermite" => {
                let v = take(&mut params, "k")?;
                let k = v.parse().map_err(|_| CliError::Parse(format!("k must be a non-negative integer, got `{v}`")))?;
                Self::Hermite { k }
            }
            "example-2.3" => Self::Chirp { alpha: parse_real(&take(&mut params, "alpha")?)? },
            "example-3.3" => Self::Squeezed { beta: parse_real(&take(&mut params, "beta")?)? },
            other => return Err(CliError::Parse(format!("unknown input kind `{other}`"))),
        };
        if let Some(key) = params.keys().next() {
            return Err(CliError::Parse(format!("unexpected parameter `{key}` for `{kind}`")));
        }
        Ok(spec)
    }

    /// The input as a state at `t = 0`.
    pub fn resolve(&self) -> Result<State, CliError> {
        Ok(match self {
            Self::Gaussian { amplitude, width } => State::gaussian(Gaussian::new(*amplitude, *width)?),
            Self::Chirp { alpha } => State::gaussian(example_2_3(*alpha)?),
            Self::Squeezed { beta } => State::gaussian(example_3_3(*beta)?),
            Self::Hermite { k } => State::expansion(Expansion::unit(*k, k + 1)),
            Self::Expansion { coeffs } => State::expansion(Expansion::new(coeffs.clone())),
        })
    }

    /// Envelope parameter used when `--a` is not given: the largest `a < 1`
    /// the input is known to belong to, or 0.5 when there is none.
    pub fn default_a(&self) -> f64 {
        match self {
            Self::Gaussian { width, .. } => {
                let a = width.re.min(width.inv().re);
                if a > 0.0 && a < 1.0 {
                    a
                } else {
                    0.5
                }
            }
            Self::Chirp { alpha } => (2.0 * alpha).tanh(),
            Self::Squeezed { beta } => (2.0 * beta).tanh(),
            Self::Hermite { .. } | Self::Expansion { .. } => 0.5,
        }
    }
}

fn parse_params(s: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("parameter `{part}` is not `key=value`")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Parse(format!("parameter `{}` given twice", k.trim())));
        }
    }
    Ok(out)
}

fn take(params: &mut BTreeMap<String, String>, key: &str) -> Result<String, CliError> {
    params.remove(key).ok_or_else(|| CliError::Parse(format!("missing parameter `{key}`")))
}

pub fn parse_real(s: &str) -> Result<f64, CliError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Parse(format!("`{s}` is not a finite real number"))),
    }
}

/// Parses `x`, `yi`, `x+yi` or `x-yi`; exponents like `1e-3` are allowed.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t = s.trim();
    let bad = || CliError::Parse(format!("`{s}` is not a complex number of the form x+yi"));
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(t).map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = parse_real(re).map_err(|_| bad())?;
    let im = parse_real(im.strip_prefix('+').unwrap_or(im)).map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionFile {
    /// `[re, im]` pairs, index `k` first to last.
    coeffs: Vec<[f64; 2]>,
}

fn read_expansion(path: &Path) -> Result<Vec<Complex64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let file: ExpansionFile =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    if file.coeffs.is_empty() {
        return Err(CliError::Parse(format!("{}: empty coefficient list", path.display())));
    }
    Ok(file.coeffs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

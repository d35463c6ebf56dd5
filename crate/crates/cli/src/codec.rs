//! JSON and CSV encodings of polynomials, magnitudes and reports, and the
//! parsing of user-supplied instances.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use shafbound_core::bounds::{BoundReport, Mode};
use shafbound_core::gotzmann::LengthTable;
use shafbound_core::{BigRational, FamilyParams, Magnitude, Policy, RatPoly};

use crate::CliError;

/// Rational as `"p"` or `"p/q"`.
pub fn rat_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Accepts a JSON integer or a `"p/q"` / `"p"` string. Floats are refused:
/// every input is exact.
pub fn rat_from_value(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
        Value::String(s) => parse_rat(s),
        other => Err(CliError::Validation(format!("expected an integer or a \"p/q\" string, got {other}"))),
    }
}

pub fn parse_rat(s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Validation(format!("not an exact rational: {s:?}")))
}

/// `[c_0, c_1, …]` ascending by degree, entries as in [`rat_from_value`].
pub fn poly_from_value(v: &Value) -> Result<RatPoly, CliError> {
    let Value::Array(items) = v else {
        return Err(CliError::Validation(format!("polynomial must be a JSON array of coefficients, got {v}")));
    };
    if items.is_empty() {
        return Err(CliError::Validation("polynomial has no coefficients".into()));
    }
    let coeffs = items.iter().map(rat_from_value).collect::<Result<Vec<_>, _>>()?;
    Ok(RatPoly::new(coeffs))
}

pub fn parse_poly(s: &str) -> Result<RatPoly, CliError> {
    let v: Value = serde_json::from_str(s).map_err(|e| CliError::Validation(format!("polynomial {s:?}: {e}")))?;
    poly_from_value(&v)
}

pub fn poly_strings(p: &RatPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(rat_string).collect()
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct MagnitudeJson {
    pub level: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub int: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log10: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loglog10: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure_log10_width: Option<String>,
}

impl MagnitudeJson {
    pub fn new(m: &Magnitude, digits: u32) -> Self {
        MagnitudeJson {
            level: m.level(),
            int: m.as_exact().map(|n| n.to_string()),
            log10: m.as_log10().map(|l| l.to_decimal_string(digits)),
            loglog10: m.as_loglog10().map(|l| l.to_decimal_string(digits)),
            enclosure_log10_width: m.enclosure_log10_width().map(|w| w.to_decimal_string(digits)),
        }
    }

    /// The headline coordinate of the value's level.
    pub fn value(&self) -> &str {
        self.int.as_deref().or(self.log10.as_deref()).or(self.loglog10.as_deref()).unwrap_or("")
    }
}

/// One problem instance as read from the command line, a sweep grid, or the
/// `"inputs"` block of an earlier report.
#[derive(Deserialize, Debug, Clone, Default)]
#[serde(deny_unknown_fields)]
pub struct InstanceInput {
    pub g: u64,
    pub s: u64,
    pub n: usize,
    pub v: Value,
    #[serde(default)]
    pub h: Option<Value>,
    #[serde(default)]
    pub a: Option<u64>,
    #[serde(default)]
    pub pluricanonical: Option<bool>,
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub max_exact_digits: Option<u64>,
}

/// A fully validated instance, ready to run.
#[derive(Debug, Clone)]
pub struct Instance {
    pub params: FamilyParams,
    pub mode: Mode,
    pub policy: Policy,
}

/// Echo of a validated instance. Feeding it back reproduces the run.
#[derive(Serialize, Debug, Clone)]
pub struct InputsJson {
    pub g: u64,
    pub s: u64,
    pub n: usize,
    pub v: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<String>>,
    pub a: u64,
    pub mode: &'static str,
    pub precision: u32,
    pub max_exact_digits: u64,
}

pub fn parse_mode(s: &str) -> Result<Mode, CliError> {
    match s {
        "exact-h" => Ok(Mode::ExactH),
        "volume-bounded" => Ok(Mode::VolumeBounded),
        _ => Err(CliError::Validation(format!("mode must be exact-h or volume-bounded, got {s:?}"))),
    }
}

impl InstanceInput {
    /// Validates everything, so that no computation starts on bad input.
    pub fn validate(&self) -> Result<Instance, CliError> {
        let v = rat_from_value(&self.v)?;
        let h = self.h.as_ref().map(poly_from_value).transpose()?;
        let mode = match &self.mode {
            Some(m) => parse_mode(m)?,
            None if h.is_some() => Mode::ExactH,
            None => Mode::VolumeBounded,
        };
        if mode == Mode::ExactH && h.is_none() {
            return Err(CliError::Validation("exact-h mode needs a Hilbert polynomial h".into()));
        }
        let mut params = FamilyParams::new(self.g, self.s, self.n, v, h)?;
        if self.pluricanonical.unwrap_or(false) {
            if self.a.is_some() {
                return Err(CliError::Validation("give either a or pluricanonical, not both".into()));
            }
            params = params.pluricanonical()?;
        } else if let Some(a) = self.a {
            params = params.with_a(a)?;
        }
        Ok(Instance { params, mode, policy: self.policy()? })
    }

    /// The precision settings alone.
    pub fn policy(&self) -> Result<Policy, CliError> {
        let mut policy = Policy::default();
        if let Some(d) = self.precision {
            if !(10..=10_000).contains(&d) {
                return Err(CliError::Validation(format!("precision must be between 10 and 10000 digits, got {d}")));
            }
            policy.digits = d;
        }
        if let Some(x) = self.max_exact_digits {
            policy.max_exact_digits = x;
        }
        Ok(policy)
    }
}

impl Instance {
    pub fn inputs(&self) -> InputsJson {
        let p = &self.params;
        InputsJson {
            g: p.g(),
            s: p.s(),
            n: p.n(),
            v: rat_string(p.v()),
            h: p.h().map(poly_strings),
            a: p.a(),
            mode: self.mode.as_str(),
            precision: self.policy.digits,
            max_exact_digits: self.policy.max_exact_digits,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ReportJson {
    pub inputs: InputsJson,
    pub mode: &'static str,
    pub precision: u32,
    pub m0: u64,
    pub h_m0: String,
    pub mu: String,
    pub ell_star: MagnitudeJson,
    pub delta_m0: String,
    pub d_1: String,
    pub d_ell_star: MagnitudeJson,
    #[serde(rename = "N")]
    pub n_const: String,
    pub d_const: MagnitudeJson,
    #[serde(rename = "M")]
    pub m_const: String,
    #[serde(rename = "C")]
    pub c: MagnitudeJson,
}

impl ReportJson {
    pub fn new(inst: &Instance, r: &BoundReport) -> Self {
        let d = r.digits;
        ReportJson {
            inputs: inst.inputs(),
            mode: r.mode.as_str(),
            precision: d,
            m0: r.m0,
            h_m0: r.h_m0.to_string(),
            mu: r.mu.to_string(),
            ell_star: MagnitudeJson::new(&r.ell_star, d),
            delta_m0: r.delta_m0.to_string(),
            d_1: r.d_1.to_string(),
            d_ell_star: MagnitudeJson::new(&r.d_ell_star, d),
            n_const: r.n_const.to_string(),
            d_const: MagnitudeJson::new(&r.d_const, d),
            m_const: r.m_const.to_string(),
            c: MagnitudeJson::new(&r.c, d),
        }
    }
}

pub fn length_table_json(t: &LengthTable) -> Value {
    serde_json::json!({
        "ell": t.ell().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "q": t.q().iter().map(|row| row.iter().map(rat_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Stable CSV header for report rows.
pub const CSV_HEADER: [&str; 29] = [
    "index", "g", "s", "n", "v", "h", "a", "mode", "precision", "m0", "h_m0", "mu",
    "ell_star_level", "ell_star_value", "ell_star_width", "delta_m0", "d_1",
    "d_ell_star_level", "d_ell_star_value", "d_ell_star_width", "N",
    "d_level", "d_value", "d_width", "M", "C_level", "C_value", "C_width", "error",
];

fn mag_cells(m: &MagnitudeJson) -> [String; 3] {
    [m.level.to_string(), m.value().to_string(), m.enclosure_log10_width.clone().unwrap_or_default()]
}

/// One CSV row: the inputs, then either the report or the error message.
pub fn csv_row(index: usize, inst: &Instance, outcome: &Result<ReportJson, String>) -> Vec<String> {
    let i = inst.inputs();
    let h = i.h.as_ref().map(|h| format!("[{}]", h.join(","))).unwrap_or_default();
    let mut row = vec![
        index.to_string(),
        i.g.to_string(),
        i.s.to_string(),
        i.n.to_string(),
        i.v.clone(),
        h,
        i.a.to_string(),
        i.mode.to_string(),
        i.precision.to_string(),
    ];
    match outcome {
        Ok(r) => {
            row.extend([r.m0.to_string(), r.h_m0.clone(), r.mu.clone()]);
            row.extend(mag_cells(&r.ell_star));
            row.extend([r.delta_m0.clone(), r.d_1.clone()]);
            row.extend(mag_cells(&r.d_ell_star));
            row.push(r.n_const.clone());
            row.extend(mag_cells(&r.d_const));
            row.push(r.m_const.clone());
            row.extend(mag_cells(&r.c));
            row.push(String::new());
        }
        Err(e) => {
            row.extend(core::iter::repeat_n(String::new(), CSV_HEADER.len() - row.len() - 1));
            row.push(e.clone());
        }
    }
    row
}

//! Check reports and shared check configuration.
//!
//! A report records one identity check: which identity, at which parameter
//! point, by which method (exact / truncated / quadrature), with what residual
//! and diagnostics. Exact rationals are serialized as "a/b" strings so the
//! JSON round-trips without float loss.

use serde::Serialize;
use serde_json::{json, Value};

use crate::params::Params;
use crate::scalar::Scalar;

/// Method of comparison used by a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Zero residual on the exact backend.
    Exact,
    /// Truncated series against an exactly computable side.
    Truncated,
    /// Numeric contour integration.
    Quadrature,
    /// Catalogued but deliberately not checked (distributional identity).
    Documented,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Result of one identity check.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub id: String,
    pub paper_ref: String,
    pub kind: CheckKind,
    pub params: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub diagnostics: Diagnostics,
}

impl Report {
    pub fn exact(id: &str, paper_ref: &str, params: Value, residual: f64, instances: u64) -> Self {
        Report {
            id: id.into(),
            paper_ref: paper_ref.into(),
            kind: CheckKind::Exact,
            params,
            residual,
            tolerance: 0.0,
            pass: residual == 0.0,
            diagnostics: Diagnostics {
                terms: Some(instances),
                ..Default::default()
            },
        }
    }
}

/// Shared configuration for identity checks.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckConfig {
    /// Relative tolerance for truncated and quadrature checks.
    pub tolerance: f64,
    /// Initial part cap added on top of the boundary parts.
    pub truncation_start: usize,
    /// Human-readable statement of the cap growth rule.
    pub truncation_step_rule: String,
    /// Truncation budget: checks fail once the cap exceeds this.
    pub max_part_cap: usize,
    /// Master seed; all sampling inside a suite run flows from it.
    pub seed: u64,
    /// Number of sampled points per randomized check.
    pub points: usize,
    /// Signature-length ceiling for sampled boundary data.
    pub max_len: usize,
    /// Part ceiling for sampled boundary data.
    pub max_part: i64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            tolerance: 1e-10,
            truncation_start: 8,
            truncation_step_rule: "cap <- cap + max(4, cap/2)".into(),
            max_part_cap: 144,
            seed: 1,
            points: 20,
            max_len: 4,
            max_part: 5,
        }
    }
}

impl CheckConfig {
    pub fn next_cap(&self, cap: usize) -> usize {
        cap + (cap / 2).max(4)
    }

    pub fn validate(&self) -> crate::error::Result<()> {
        if self.tolerance <= 0.0 {
            return Err(crate::error::Error::Validation(
                "tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn scalars_json(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Parameter-point JSON for a report: q, s, variable lists, extra fields.
pub fn point_json(params: &Params, us: &[Scalar], vs: &[Scalar], extra: &[(&str, Value)]) -> Value {
    let mut obj = json!({
        "q": params.q().to_string(),
        "s": params.s().to_string(),
        "u": scalars_json(us),
        "v": scalars_json(vs),
    });
    let map = obj.as_object_mut().unwrap();
    for (k, v) in extra {
        map.insert((*k).into(), v.clone());
    }
    obj
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_shape() {
        let params = Params::new(Scalar::ratio(1, 3), Scalar::ratio(1, 5), 2).unwrap();
        let r = Report {
            id: "cauchy".into(),
            paper_ref: "Cauchy identity".into(),
            kind: CheckKind::Truncated,
            params: point_json(&params, &[Scalar::ratio(1, 4)], &[], &[]),
            residual: 0.0,
            tolerance: 1e-10,
            pass: true,
            diagnostics: Diagnostics {
                cap: Some(12),
                tail_estimate: Some(1e-14),
                terms: Some(13),
                note: None,
            },
        };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["paperRef"], "Cauchy identity");
        assert_eq!(v["kind"], "truncated");
        assert_eq!(v["diagnostics"]["tailEstimate"], 1e-14);
        assert_eq!(v["params"]["q"], "1/3");
    }

    #[test]
    fn config_defaults_and_growth() {
        let cfg = CheckConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.next_cap(8), 12);
        assert_eq!(cfg.next_cap(12), 18);
        assert_eq!(cfg.next_cap(2), 6);
    }
}

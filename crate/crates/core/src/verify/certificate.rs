//! End-to-end check of one lemniscate spec: nodal set, braid word, fibration margin.

use serde::Serialize;
use serde_json::{json, Value};

use super::fibration::{fibration_scan, FibrationReport, ScanOptions};
use super::nodal::verify_nodal_on_sphere;
use super::{VerifyError, VerifyOptions};
use crate::algebra::rational::to_f64;
use crate::braid::{braid_word, LemniscateSpec};
use crate::field::build_field;
use crate::field::eval::NumericSemiholo;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub spec: Value,
    pub lambda: f64,
    /// Recovered from the nodal set; empty when nodal verification failed.
    pub word: Vec<i32>,
    pub expected_word: Vec<i32>,
    pub components: usize,
    pub expected_components: usize,
    pub min_transversality: Option<f64>,
    pub fibration: Option<FibrationReport>,
    pub min_grad_norm: Option<f64>,
    pub error: Option<String>,
    pub passed: bool,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap_or_else(|e| json!({"error": e.to_string()}))
    }
}

/// Runs the nodal verifier and, if it passes, the fibration scan on `f_λ` for `spec`.
pub fn certify_spec(spec: &LemniscateSpec, opts: &VerifyOptions, scan: Option<&ScanOptions>) -> Result<Certificate, VerifyError> {
    let f = build_field(spec).map_err(crate::field::FieldError::from)?;
    let f = NumericSemiholo::new(&f);
    let expected = braid_word(spec);
    let mut cert = Certificate {
        spec: spec.to_json(),
        lambda: to_f64(&spec.lambda),
        word: Vec::new(),
        expected_word: expected.letters().to_vec(),
        components: 0,
        expected_components: spec.components() as usize,
        min_transversality: None,
        fibration: None,
        min_grad_norm: None,
        error: None,
        passed: false,
    };
    match verify_nodal_on_sphere(&f, opts) {
        Ok(nodal) => {
            cert.word = nodal.word.letters().to_vec();
            cert.components = nodal.components();
            cert.min_transversality = Some(nodal.min_transversality);
            let mut passed = nodal.word == expected && cert.components == cert.expected_components;
            if let Some(scan) = scan {
                let report = fibration_scan(&f, nodal.points(), scan);
                passed &= report.margin_positive;
                cert.min_grad_norm = Some(report.min_grad_norm);
                cert.fibration = Some(report);
            }
            cert.passed = passed;
        }
        Err(e) => cert.error = Some(e.to_string()),
    }
    Ok(cert)
}

//! Empirical largest stretching factor for which the nodal certificate still holds.

use serde::Serialize;

use super::nodal::verify_nodal_on_sphere;
use super::{VerifyError, VerifyOptions};
use crate::algebra::rational::int;
use crate::braid::{braid_word, LemniscateSpec};
use crate::field::eval::NumericSemiholo;
use crate::field::FieldError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaTrial {
    pub lambda: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaSearch {
    /// Largest tested λ that passed.
    pub lambda_star: f64,
    /// Every λ tried, in order; the pass/fail record is the certificate, not monotonicity.
    pub trials: Vec<LambdaTrial>,
}

pub const LAMBDA_RESOLUTION: f64 = 1e-3;
pub const LAMBDA_FLOOR: f64 = 1e-4;

/// Passes when the nodal set of `f_λ` is certified and its braid word is the constructed one.
pub fn lambda_passes(f1: &NumericSemiholo, spec: &LemniscateSpec, lambda: f64, opts: &VerifyOptions) -> bool {
    let expected = braid_word(spec);
    match verify_nodal_on_sphere(&f1.stretched(lambda), opts) {
        Ok(cert) => cert.word == expected,
        Err(_) => false,
    }
}

/// Bisection on `(0, λ_max]` to [`LAMBDA_RESOLUTION`].
pub fn lambda_threshold_search(spec: &LemniscateSpec, lambda_max: f64, opts: &VerifyOptions) -> Result<LambdaSearch, VerifyError> {
    let exact = crate::field::build_field(&spec.with_lambda(int(1))).map_err(FieldError::from)?;
    let f1 = NumericSemiholo::new(&exact);
    let mut trials = Vec::new();
    let mut test = |lambda: f64| {
        let passed = lambda_passes(&f1, spec, lambda, opts);
        trials.push(LambdaTrial { lambda, passed });
        passed
    };
    if test(lambda_max) {
        return Ok(LambdaSearch { lambda_star: lambda_max, trials });
    }
    let mut hi = lambda_max;
    let mut lo = hi / 2.0;
    while !test(lo) {
        if lo <= LAMBDA_FLOOR {
            return Err(VerifyError::NoValidLambda);
        }
        hi = lo;
        lo = (lo / 2.0).max(LAMBDA_FLOOR);
    }
    while hi - lo > LAMBDA_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if test(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(LambdaSearch { lambda_star: lo, trials })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_threshold_at_least_one() {
        let opts = VerifyOptions { h_steps: 512, ..Default::default() };
        let search = lambda_threshold_search(&LemniscateSpec::new(3, 2, 2).unwrap(), 4.0, &opts).unwrap();
        assert!(search.lambda_star >= 1.0, "{search:?}");
        assert!(search.trials.iter().any(|t| !t.passed));
    }
}

//! Numerical certification of constructed fields: root tracking and braid recovery,
//! nodal sets on `S³`, phase-gradient scans, λ thresholds, hopfion preimages and linking.

pub mod certificate;
pub mod fibration;
pub mod lambda;
pub mod linking;
pub mod nodal;
pub mod preimage;
pub mod roots;
pub mod track;

use std::fmt::Write as _;

use thiserror::Error;

use crate::field::FieldError;

pub use certificate::{certify_spec, Certificate};
pub use fibration::{fibration_scan, FibrationReport, ScanOptions};
pub use lambda::{lambda_threshold_search, LambdaSearch};
pub use linking::{gauss_linking, total_linking, LinkingResult};
pub use nodal::{verify_milnor_sphere, verify_nodal_on_sphere, MilnorCertificate, NodalCertificate};
pub use preimage::{hopf_charge, trace_preimage, HopfCharge, PreimageOptions};
pub use roots::find_roots;
pub use track::{recover_braid_word, track_braid, RootTrack};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("leading coefficient vanishes")]
    DegenerateLeading,
    #[error("eigenvalue iteration did not converge")]
    RootFinding,
    #[error("root residual {residual:e} at h = {h}")]
    RootResidual { h: f64, residual: f64 },
    #[error("roots collide at step {step} (distance {distance:e})")]
    CollisionDetected { step: usize, distance: f64 },
    #[error("roots could not be matched even with {steps} steps")]
    Unresolved { steps: usize },
    #[error("crossing near h = {h} cannot be ordered")]
    AmbiguousCrossing { h: f64 },
    #[error("expected {expected} sphere intersections at h = {h}, found {found}")]
    WrongRootCount { h: f64, expected: usize, found: usize },
    #[error("intersection is not transverse (measure {measure:e})")]
    NotTransverse { h: f64, measure: f64 },
    #[error("curve does not close (gap {gap:e})")]
    OpenCurve { gap: f64 },
    #[error("no λ ≥ 1e-4 passes verification")]
    NoValidLambda,
    #[error("curves are {distance} apart with step {step}")]
    CurvesTooClose { distance: f64, step: f64 },
    #[error("Gauss integral {raw} is not close to an integer")]
    NonIntegerLinking { raw: f64 },
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Grids and tolerances shared by the verifiers.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub h_steps: usize,
    pub max_h_steps: usize,
    /// Initial (and largest) number of `ρ` steps between 1 and 0.
    pub rho_steps: usize,
    pub root_residual: f64,
    pub transversality: f64,
    pub closure: f64,
    pub collision: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            h_steps: 4096,
            max_h_steps: 1 << 16,
            rho_steps: 32,
            root_residual: 1e-10,
            transversality: 1e-6,
            closure: 1e-6,
            collision: 1e-6,
        }
    }
}

/// Ordered polyline, in ℝ³ or on `S³ ⊂ ℝ⁴`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalCurve {
    pub points: Vec<Vec<f64>>,
    pub closed: bool,
    /// Largest field magnitude along the curve.
    pub residual: f64,
}

impl NodalCurve {
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Stereographic image in ℝ³ of a curve on `S³`.
    pub fn to_r3(&self) -> NodalCurve {
        let points = self
            .points
            .iter()
            .map(|p| {
                let u = num_complex::Complex64::new(p[0], p[1]);
                let v = num_complex::Complex64::new(p[2], p[3]);
                crate::field::stereo::stereographic_projection(u, v).to_vec()
            })
            .collect();
        NodalCurve { points, closed: self.closed, residual: self.residual }
    }

    /// Appends `index,x,y,z[,w]` rows.
    pub fn write_csv(&self, out: &mut String, component: usize) {
        for p in &self.points {
            let _ = write!(out, "{component}");
            for c in p {
                let _ = write!(out, ",{c:.12}");
            }
            out.push('\n');
        }
    }
}

/// CSV with a header for several curves, one component index per curve.
pub fn curves_to_csv(curves: &[NodalCurve]) -> String {
    let dim = curves.first().map_or(3, NodalCurve::dim);
    let mut out = String::from(if dim == 4 { "index,x,y,z,w\n" } else { "index,x,y,z\n" });
    for (i, c) in curves.iter().enumerate() {
        c.write_csv(&mut out, i);
    }
    out
}

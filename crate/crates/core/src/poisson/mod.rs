//! Lie bialgebra data for `sl(2,R)` and numeric checks of the Poisson
//! structure on the dual group.
//!
//! Everything below [`lie`] is floating point.

mod bivector;
mod group;
pub mod lie;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub use bivector::{
    abc_to_coords, alpha_abc, alpha_linear, alpha_reference, bivector_at, fit_kappa, integrate_cobracket,
    integrate_cobracket_adaptive, jacobi_check, multiplicativity_check, BivectorSample, QUADRATURE_TOL,
};
pub use group::{sinhc, AlgebraPair, DualGroupPoint};
pub use lie::{coboundary, coboundary_of_r, dual_bracket, dual_cobracket, LieBialgebraData};

/// Relative agreement of the integrated and reference bivectors.
pub const RELATIVE_TOL: f64 = 1e-6;
/// Allowed spread of the fitted scaling constant across samples.
pub const KAPPA_TOL: f64 = 1e-9;
pub const MULTIPLICATIVITY_TOL: f64 = 1e-8;
pub const JACOBI_TOL: f64 = 1e-6;
pub const JACOBI_STEP: f64 = 1e-5;

#[derive(Debug, Error, PartialEq)]
pub enum PoissonError {
    #[error("not a point of the dual group: a = {a}, b = {b}, c = {c}")]
    InvalidPoint { a: f64, b: f64, c: f64 },
    #[error("non-finite value during integration")]
    NonFinite,
    #[error("quadrature needs at least one panel")]
    NoSteps,
    #[error("quadrature did not converge")]
    NotConverged,
    #[error("singular Jacobian")]
    SingularJacobian,
    #[error("reference bivector vanishes at the calibration point")]
    DegenerateCalibration,
}

#[derive(Clone, Debug)]
pub struct PoissonConfig {
    pub samples: usize,
    pub seed: u64,
    /// Relative tolerance for bivector agreement.
    pub tol: f64,
    /// Fixed scaling constant; fitted from the first sample when `None`.
    pub kappa: Option<f64>,
    /// Half-width of the sampling box in each coordinate.
    pub radius: f64,
}

impl Default for PoissonConfig {
    fn default() -> Self {
        PoissonConfig {
            samples: 50,
            seed: 0,
            tol: RELATIVE_TOL,
            kappa: None,
            radius: 1.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleResult {
    pub point: [f64; 3],
    pub kappa: f64,
    pub relative_residual: f64,
    pub multiplicativity_residual: f64,
    pub jacobi_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonReport {
    pub kappa: f64,
    /// Largest deviation of a per-sample fit from `kappa`.
    pub kappa_spread: f64,
    pub max_relative_residual: f64,
    pub max_multiplicativity_residual: f64,
    pub max_jacobi_residual: f64,
    pub bivector_ok: bool,
    pub kappa_ok: bool,
    pub multiplicativity_ok: bool,
    pub jacobi_ok: bool,
    pub samples: Vec<SampleResult>,
}

impl PoissonReport {
    pub fn passed(&self) -> bool {
        self.bivector_ok && self.kappa_ok && self.multiplicativity_ok && self.jacobi_ok
    }
}

pub fn sample_points(n: usize, seed: u64, radius: f64) -> Vec<Vector3<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Vector3::from_fn(|_, _| rng.gen_range(-radius..=radius)))
        .collect()
}

/// Compares the integrated bivector with the reference at random points and
/// runs the multiplicativity and Jacobi checks on the same points.
pub fn verify(config: &PoissonConfig) -> Result<PoissonReport, PoissonError> {
    let points = sample_points(config.samples, config.seed, config.radius);
    let kappa = match config.kappa {
        Some(k) => k,
        None => {
            let calib = points.first().copied().unwrap_or_else(|| Vector3::new(0.5, 0.5, 0.5));
            fit_kappa(&bivector_at(&calib)?, &alpha_reference(&calib)).ok_or(PoissonError::DegenerateCalibration)?
        }
    };
    let mut samples = Vec::with_capacity(points.len());
    for (i, x) in points.iter().enumerate() {
        let computed = bivector_at(x)?;
        let reference = alpha_reference(x);
        let local = fit_kappa(&computed, &reference).unwrap_or(kappa);
        let diff = (computed.matrix() - reference.matrix() * kappa).amax();
        let scale = reference.matrix().amax() * kappa.abs();
        let relative = if scale > 1e-12 { diff / scale } else { diff };
        let g = DualGroupPoint::from_coords(x);
        let h = DualGroupPoint::from_coords(&points[(i + 1) % points.len()]);
        samples.push(SampleResult {
            point: [x[0], x[1], x[2]],
            kappa: local,
            relative_residual: relative,
            multiplicativity_residual: multiplicativity_check(&g, &h, kappa)?,
            jacobi_residual: jacobi_check(|p| alpha_reference(p).matrix(), x, JACOBI_STEP),
        });
    }
    let max = |f: fn(&SampleResult) -> f64| samples.iter().map(f).fold(0.0, f64::max);
    let kappa_spread = samples.iter().map(|s| (s.kappa - kappa).abs()).fold(0.0, f64::max);
    let max_relative_residual = max(|s| s.relative_residual);
    let max_multiplicativity_residual = max(|s| s.multiplicativity_residual);
    let max_jacobi_residual = max(|s| s.jacobi_residual);
    Ok(PoissonReport {
        kappa,
        kappa_spread,
        max_relative_residual,
        max_multiplicativity_residual,
        max_jacobi_residual,
        bivector_ok: max_relative_residual < config.tol,
        kappa_ok: kappa_spread < KAPPA_TOL,
        multiplicativity_ok: max_multiplicativity_residual < MULTIPLICATIVITY_TOL,
        jacobi_ok: max_jacobi_residual < JACOBI_TOL,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_verification_passes() {
        let report = verify(&PoissonConfig::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!((report.kappa + 1.0).abs() < 1e-9);
        assert_eq!(report.samples.len(), 50);
    }

    #[test]
    fn wrong_kappa_fails() {
        let cfg = PoissonConfig {
            samples: 5,
            kappa: Some(1.0),
            ..PoissonConfig::default()
        };
        let report = verify(&cfg).unwrap();
        assert!(!report.bivector_ok);
        assert!(report.multiplicativity_ok);
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(sample_points(3, 7, 1.0), sample_points(3, 7, 1.0));
        assert_ne!(sample_points(3, 7, 1.0), sample_points(3, 8, 1.0));
        assert!(sample_points(100, 1, 1.0).iter().all(|p| p.amax() <= 1.0));
    }
}

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::group::DualGroupPoint;
use super::lie::LieBialgebraData;
use super::PoissonError;
use crate::series::rational::to_f64;

/// Stopping tolerance for successive Richardson-extrapolated Simpson sums.
pub const QUADRATURE_TOL: f64 = 1e-10;
const MAX_DOUBLINGS: u32 = 24;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivectorSample {
    pub point: [f64; 3],
    pub components: [[f64; 3]; 3],
}

impl BivectorSample {
    pub fn new(point: &Vector3<f64>, m: &Matrix3<f64>) -> Self {
        let anti = (m - m.transpose()) * 0.5;
        BivectorSample {
            point: [point[0], point[1], point[2]],
            components: std::array::from_fn(|i| std::array::from_fn(|j| anti[(i, j)])),
        }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.components[i][j])
    }
}

/// `ad_X` and `δ(X)` of the dual Lie bialgebra as float matrices.
struct DualData {
    bracket: [[[f64; 3]; 3]; 3],
    cobracket: [[[f64; 3]; 3]; 3],
}

impl DualData {
    fn new(data: &LieBialgebraData) -> Self {
        let conv = |t: &crate::poisson::lie::Tensor3| {
            std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| to_f64(&t[i][j][k]))))
        };
        DualData {
            bracket: conv(&data.bracket),
            cobracket: conv(&data.cobracket),
        }
    }

    fn ad(&self, x: &Vector3<f64>) -> Matrix3<f64> {
        Matrix3::from_fn(|k, j| (0..3).map(|i| x[i] * self.bracket[i][j][k]).sum())
    }

    fn delta(&self, x: &Vector3<f64>) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| (0..3).map(|k| x[k] * self.cobracket[k][i][j]).sum())
    }
}

fn dual_sl2() -> DualData {
    DualData::new(&LieBialgebraData::sl2().dual())
}

fn simpson(f: &impl Fn(f64) -> Matrix3<f64>, panels: u32) -> Matrix3<f64> {
    let n = 2 * panels;
    let h = 1.0 / n as f64;
    let mut acc = f(0.0) + f(1.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

fn check_finite(m: &Matrix3<f64>) -> Result<(), PoissonError> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(PoissonError::NonFinite)
    }
}

/// `∫₀¹ Ad_{e^{sX}} δ(X) Ad_{e^{sX}}ᵀ ds` by composite Simpson with `panels`
/// double intervals, for the dual of `sl(2,R)`.
pub fn integrate_cobracket(x: &Vector3<f64>, panels: u32) -> Result<Matrix3<f64>, PoissonError> {
    integrate_with(&dual_sl2(), x, panels)
}

fn integrand(data: &DualData, x: &Vector3<f64>) -> impl Fn(f64) -> Matrix3<f64> {
    let ad = data.ad(x);
    let d = data.delta(x);
    move |s: f64| {
        let g = (ad * s).exp();
        g * d * g.transpose()
    }
}

fn integrate_with(data: &DualData, x: &Vector3<f64>, panels: u32) -> Result<Matrix3<f64>, PoissonError> {
    if panels == 0 {
        return Err(PoissonError::NoSteps);
    }
    let m = simpson(&integrand(data, x), panels);
    check_finite(&m)?;
    Ok(m)
}

/// As [`integrate_cobracket`], doubling the panel count with Richardson
/// extrapolation until two successive results differ by less than
/// [`QUADRATURE_TOL`].
pub fn integrate_cobracket_adaptive(x: &Vector3<f64>) -> Result<Matrix3<f64>, PoissonError> {
    let data = dual_sl2();
    let f = integrand(&data, x);
    let mut panels = 2;
    let mut coarse = simpson(&f, 1);
    let mut previous: Option<Matrix3<f64>> = None;
    for _ in 0..MAX_DOUBLINGS {
        let fine = simpson(&f, panels);
        let extrapolated = fine + (fine - coarse) / 15.0;
        check_finite(&extrapolated)?;
        if let Some(p) = previous {
            if (extrapolated - p).amax() < QUADRATURE_TOL {
                return Ok(extrapolated);
            }
        }
        previous = Some(extrapolated);
        coarse = fine;
        panels *= 2;
    }
    Err(PoissonError::NotConverged)
}

/// The bivector at the point with coordinates `x`, obtained by integrating
/// the cobracket along `s ↦ e^{s log g}` and translating to `g` on the right.
pub fn bivector_at(x: &Vector3<f64>) -> Result<BivectorSample, PoissonError> {
    let g = DualGroupPoint::from_coords(x);
    let w = integrate_cobracket_adaptive(&g.log())?;
    let j = g.right_jacobian();
    Ok(BivectorSample::new(x, &(j * w * j.transpose())))
}

fn antisym(p12: f64, p13: f64, p23: f64) -> Matrix3<f64> {
    Matrix3::new(0.0, p12, p13, -p12, 0.0, p23, -p13, -p23, 0.0)
}

/// `x2 ∂1∧∂2 − x3 ∂1∧∂3 + 4 sinh(2x1) ∂2∧∂3`.
pub fn alpha_reference(x: &Vector3<f64>) -> BivectorSample {
    BivectorSample::new(x, &antisym(x[1], -x[2], 4.0 * (2.0 * x[0]).sinh()))
}

/// Linear part of [`alpha_reference`]: the Lie-Poisson structure.
pub fn alpha_linear(x: &Vector3<f64>) -> BivectorSample {
    BivectorSample::new(x, &antisym(x[1], -x[2], 8.0 * x[0]))
}

/// The bivector in `(a, b, c)` coordinates:
/// `−ab/2 ∂a∧∂b + ac/2 ∂a∧∂c + (a⁴−1)/a² ∂b∧∂c`.
pub fn alpha_abc(p: &DualGroupPoint) -> Matrix3<f64> {
    let (a, b, c) = (p.a(), p.b(), p.c());
    antisym(-a * b / 2.0, a * c / 2.0, (a.powi(4) - 1.0) / (a * a))
}

/// Pushes an `(a, b, c)` bivector forward to `(x1, x2, x3)`.
pub fn abc_to_coords(p: &DualGroupPoint, m: &Matrix3<f64>) -> Matrix3<f64> {
    let t = Matrix3::from_diagonal(&Vector3::new(1.0 / p.a(), -1.0, 1.0));
    t * m * t.transpose()
}

/// Least-squares `κ` with `computed ≈ κ · reference`.
pub fn fit_kappa(computed: &BivectorSample, reference: &BivectorSample) -> Option<f64> {
    let (c, r) = (computed.matrix(), reference.matrix());
    let rr = r.dot(&r);
    (rr > 1e-24).then(|| c.dot(&r) / rr)
}

/// `max |w(gh) − Ad_g w(h) Ad_gᵀ − w(g)|`, where `w(g)` is the reference
/// bivector scaled by `kappa` and translated back to the identity.
pub fn multiplicativity_check(g: &DualGroupPoint, h: &DualGroupPoint, kappa: f64) -> Result<f64, PoissonError> {
    let w = |p: &DualGroupPoint| -> Result<Matrix3<f64>, PoissonError> {
        let j_inv = p.right_jacobian().try_inverse().ok_or(PoissonError::SingularJacobian)?;
        let alpha = alpha_reference(&p.coords()).matrix() * kappa;
        Ok(j_inv * alpha * j_inv.transpose())
    };
    let ad = g.adjoint();
    let defect = w(&g.mul(h))? - ad * w(h)? * ad.transpose() - w(g)?;
    check_finite(&defect)?;
    Ok(defect.amax())
}

/// Schouten bracket `[π, π]^{123}` by central differences with step `step`.
pub fn jacobi_check(pi: impl Fn(&Vector3<f64>) -> Matrix3<f64>, x: &Vector3<f64>, step: f64) -> f64 {
    let p = pi(x);
    let derivative = |l: usize| -> Matrix3<f64> {
        let mut plus = *x;
        let mut minus = *x;
        plus[l] += step;
        minus[l] -= step;
        (pi(&plus) - pi(&minus)) / (2.0 * step)
    };
    let d: [Matrix3<f64>; 3] = std::array::from_fn(derivative);
    let term = |i: usize, j: usize, k: usize| -> f64 { (0..3).map(|l| p[(i, l)] * d[l][(j, k)]).sum() };
    (term(0, 1, 2) + term(1, 2, 0) + term(2, 0, 1)).abs()
}

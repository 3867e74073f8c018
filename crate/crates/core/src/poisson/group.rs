//! The dual group as pairs of triangular 2x2 matrices
//!
//! ```text
//! L = [[1/a, 0], [b, a]],   U = [[a, c], [0, 1/a]]
//! ```
//!
//! with coordinates `x1 = ln a`, `x2 = -b`, `x3 = c`.

use nalgebra::{Matrix2, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::PoissonError;

/// A Lie algebra element of the dual group, as a pair `(L, U)` of traceless
/// triangular matrices with opposite diagonals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraPair {
    pub lower: Matrix2<f64>,
    pub upper: Matrix2<f64>,
}

impl AlgebraPair {
    /// Image of `X1 e1 + X2 e2 + X3 e3`. The basis is dual to `(H, X+, X-)`
    /// under `⟨x, (L, U)⟩ = tr(x(L - U)) / 2`.
    pub fn from_dual_coords(x: &Vector3<f64>) -> Self {
        let t = -x[0] / 2.0;
        let beta = 2.0 * x[1];
        let gamma = -2.0 * x[2];
        AlgebraPair {
            lower: Matrix2::new(-t, 0.0, beta, t),
            upper: Matrix2::new(t, gamma, 0.0, -t),
        }
    }

    pub fn to_dual_coords(&self) -> Vector3<f64> {
        let t = self.lower[(1, 1)];
        Vector3::new(-2.0 * t, self.lower[(1, 0)] / 2.0, -self.upper[(0, 1)] / 2.0)
    }

    pub fn basis(k: usize) -> Self {
        let mut x = Vector3::zeros();
        x[k] = 1.0;
        AlgebraPair::from_dual_coords(&x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualGroupPoint {
    a: f64,
    b: f64,
    c: f64,
}

impl DualGroupPoint {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, PoissonError> {
        if !a.is_finite() || a <= 0.0 || !b.is_finite() || !c.is_finite() {
            return Err(PoissonError::InvalidPoint { a, b, c });
        }
        Ok(DualGroupPoint { a, b, c })
    }

    pub fn identity() -> Self {
        DualGroupPoint { a: 1.0, b: 0.0, c: 0.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn from_coords(x: &Vector3<f64>) -> Self {
        DualGroupPoint {
            a: x[0].exp(),
            b: -x[1],
            c: x[2],
        }
    }

    pub fn coords(&self) -> Vector3<f64> {
        Vector3::new(self.a.ln(), -self.b, self.c)
    }

    pub fn lower(&self) -> Matrix2<f64> {
        Matrix2::new(1.0 / self.a, 0.0, self.b, self.a)
    }

    pub fn upper(&self) -> Matrix2<f64> {
        Matrix2::new(self.a, self.c, 0.0, 1.0 / self.a)
    }

    fn from_matrices(l: &Matrix2<f64>, u: &Matrix2<f64>) -> Result<Self, PoissonError> {
        DualGroupPoint::new(l[(1, 1)], l[(1, 0)], u[(0, 1)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.lower() * other.lower();
        let u = self.upper() * other.upper();
        DualGroupPoint {
            a: l[(1, 1)],
            b: l[(1, 0)],
            c: u[(0, 1)],
        }
    }

    pub fn inverse(&self) -> Self {
        DualGroupPoint {
            a: 1.0 / self.a,
            b: -self.b,
            c: -self.c,
        }
    }

    /// Group exponential, by dense matrix exponentials of both blocks.
    pub fn exp(x: &Vector3<f64>) -> Result<Self, PoissonError> {
        let p = AlgebraPair::from_dual_coords(x);
        DualGroupPoint::from_matrices(&p.lower.exp(), &p.upper.exp())
    }

    /// Inverse of [`DualGroupPoint::exp`], in closed form.
    pub fn log(&self) -> Vector3<f64> {
        let t = self.a.ln();
        let f = sinhc(t);
        let beta = self.b / f;
        let gamma = self.c / f;
        Vector3::new(-2.0 * t, beta / 2.0, -gamma / 2.0)
    }

    /// `Ad_g` on the dual Lie algebra, columns indexed by `e_k`.
    pub fn adjoint(&self) -> Matrix3<f64> {
        let (l, u) = (self.lower(), self.upper());
        let (li, ui) = (l.try_inverse().unwrap_or(l), u.try_inverse().unwrap_or(u));
        let mut m = Matrix3::zeros();
        for k in 0..3 {
            let e = AlgebraPair::basis(k);
            let conj = AlgebraPair {
                lower: l * e.lower * li,
                upper: u * e.upper * ui,
            };
            m.set_column(k, &conj.to_dual_coords());
        }
        m
    }

    /// Differential of right translation `h ↦ h·g` at the identity, from the
    /// dual basis to coordinate vectors `∂/∂x_i`.
    pub fn right_jacobian(&self) -> Matrix3<f64> {
        let (l, u) = (self.lower(), self.upper());
        let mut j = Matrix3::zeros();
        for k in 0..3 {
            let e = AlgebraPair::basis(k);
            let dl = e.lower * l;
            let du = e.upper * u;
            j.set_column(k, &Vector3::new(dl[(1, 1)] / self.a, -dl[(1, 0)], du[(0, 1)]));
        }
        j
    }
}

/// `sinh(t)/t`, continuous at 0.
pub fn sinhc(t: f64) -> f64 {
    if t.abs() < 1e-6 {
        1.0 + t * t / 6.0
    } else {
        t.sinh() / t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Vector3<f64>, b: &Vector3<f64>, tol: f64) -> bool {
        (a - b).amax() < tol
    }

    #[test]
    fn exp_log_round_trip() {
        for x in [
            Vector3::new(0.3, -1.2, 0.7),
            Vector3::new(-1.5, 0.2, 0.0),
            Vector3::new(0.0, 0.4, -0.4),
            Vector3::zeros(),
        ] {
            let g = DualGroupPoint::exp(&x).unwrap();
            assert!(close(&g.log(), &x, 1e-12), "{x:?}");
        }
        assert_eq!(DualGroupPoint::exp(&Vector3::zeros()).unwrap(), DualGroupPoint::identity());
    }

    #[test]
    fn exp_closed_form() {
        let x = Vector3::new(0.6, 0.25, -0.5);
        let g = DualGroupPoint::exp(&x).unwrap();
        let t = -x[0] / 2.0;
        let coords = g.coords();
        assert!((coords[0] - t).abs() < 1e-13);
        assert!((coords[1] + 2.0 * x[1] * sinhc(t)).abs() < 1e-13);
        assert!((coords[2] + 2.0 * x[2] * sinhc(t)).abs() < 1e-13);
    }

    #[test]
    fn group_laws() {
        let g = DualGroupPoint::new(1.7, 0.3, -2.0).unwrap();
        let h = DualGroupPoint::new(0.4, -1.1, 0.5).unwrap();
        let k = DualGroupPoint::new(2.2, 0.0, 0.9).unwrap();
        let left = g.mul(&h).mul(&k).coords();
        let right = g.mul(&h.mul(&k)).coords();
        assert!(close(&left, &right, 1e-12));
        assert!(close(&g.mul(&g.inverse()).coords(), &Vector3::zeros(), 1e-12));
        assert!(DualGroupPoint::new(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn matrix_bracket_is_the_dual_bracket() {
        let comm = |i: usize, j: usize| {
            let (x, y) = (AlgebraPair::basis(i), AlgebraPair::basis(j));
            AlgebraPair {
                lower: x.lower * y.lower - y.lower * x.lower,
                upper: x.upper * y.upper - y.upper * x.upper,
            }
            .to_dual_coords()
        };
        assert!(close(&comm(0, 1), &Vector3::new(0.0, -1.0, 0.0), 1e-15));
        assert!(close(&comm(0, 2), &Vector3::new(0.0, 0.0, -1.0), 1e-15));
        assert!(close(&comm(1, 2), &Vector3::zeros(), 1e-15));
    }

    #[test]
    fn jacobian_at_identity() {
        let j = DualGroupPoint::identity().right_jacobian();
        let expected = Matrix3::new(-0.5, 0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0, -2.0);
        assert!((j - expected).amax() < 1e-15);
    }
}

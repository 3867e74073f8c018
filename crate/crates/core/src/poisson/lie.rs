//! Exact Lie bialgebra data in dimension 3.

use std::array;

use num_traits::{Signed, Zero};

use crate::series::rational::int;
use crate::series::Rational;

/// `t[i][j][k]`: for a bracket, the coefficient `c^k_{ij}` of `x_k` in
/// `[x_i, x_j]`; for a cobracket, `d^{ij}_k` is stored as `t[k][i][j]`.
pub type Tensor3 = [[[Rational; 3]; 3]; 3];
pub type Matrix = [[Rational; 3]; 3];
pub type Vector = [Rational; 3];

pub fn zero_tensor() -> Tensor3 {
    array::from_fn(|_| array::from_fn(|_| array::from_fn(|_| Rational::zero())))
}

pub fn zero_matrix() -> Matrix {
    array::from_fn(|_| array::from_fn(|_| Rational::zero()))
}

fn wedge(a: usize, b: usize, c: Rational, into: &mut Matrix) {
    into[a][b] += &c;
    into[b][a] -= &c;
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieBialgebraData {
    pub labels: [String; 3],
    pub bracket: Tensor3,
    pub cobracket: Tensor3,
}

impl LieBialgebraData {
    /// `sl(2,R)` in the basis `(H, X+, X-)` with `δ(H) = 0`,
    /// `δ(X±) = X± ∧ H`.
    pub fn sl2() -> Self {
        let mut bracket = zero_tensor();
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            bracket[i][j][k] = int(v);
            bracket[j][i][k] = int(-v);
        };
        set(0, 1, 1, 2);
        set(0, 2, 2, -2);
        set(1, 2, 0, 1);
        let mut cobracket = zero_tensor();
        wedge(1, 0, int(1), &mut cobracket[1]);
        wedge(2, 0, int(1), &mut cobracket[2]);
        LieBialgebraData {
            labels: ["H".into(), "X+".into(), "X-".into()],
            bracket,
            cobracket,
        }
    }

    pub fn with_cobracket(&self, cobracket: Tensor3) -> Self {
        LieBialgebraData {
            cobracket,
            ..self.clone()
        }
    }

    /// The dual bialgebra on the dual basis: the bracket of `g*` is the
    /// transpose of `δ`, and its cobracket the transpose of `[,]`.
    pub fn dual(&self) -> Self {
        LieBialgebraData {
            labels: array::from_fn(|i| format!("e{}", i + 1)),
            bracket: dual_bracket(&self.cobracket),
            cobracket: dual_cobracket(&self.bracket),
        }
    }

    pub fn bracket_of(&self, x: &Vector, y: &Vector) -> Vector {
        apply_bracket(&self.bracket, x, y)
    }

    /// Matrix of `ad_x` with columns indexed by the input basis vector.
    pub fn ad(&self, x: &Vector) -> Matrix {
        let mut m = zero_matrix();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..3 {
                for k in 0..3 {
                    m[k][j] += xi * &self.bracket[i][j][k];
                }
            }
        }
        m
    }

    /// `δ(x)` as a 3x3 matrix of `x_i ⊗ x_j` coefficients.
    pub fn cobracket_of(&self, x: &Vector) -> Matrix {
        let mut m = zero_matrix();
        for (k, xk) in x.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] += xk * &self.cobracket[k][i][j];
                }
            }
        }
        m
    }

    /// `(ad_x ⊗ 1 + 1 ⊗ ad_x) t`.
    pub fn ad_tensor(&self, x: &Vector, t: &Matrix) -> Matrix {
        let ad = self.ad(x);
        let mut out = zero_matrix();
        for i in 0..3 {
            for j in 0..3 {
                if t[i][j].is_zero() {
                    continue;
                }
                for k in 0..3 {
                    out[k][j] += &ad[k][i] * &t[i][j];
                    out[i][k] += &ad[k][j] * &t[i][j];
                }
            }
        }
        out
    }

    /// Largest entry of `δ([x,y]) − x·δ(y) + y·δ(x)` over basis pairs.
    pub fn cocycle_check(&self) -> Rational {
        let mut worst = Rational::zero();
        for a in 0..3 {
            for b in 0..3 {
                let (x, y) = (basis(a), basis(b));
                let lhs = self.cobracket_of(&self.bracket_of(&x, &y));
                let dx = self.ad_tensor(&y, &self.cobracket_of(&x));
                let dy = self.ad_tensor(&x, &self.cobracket_of(&y));
                for i in 0..3 {
                    for j in 0..3 {
                        let v = (&lhs[i][j] - &dy[i][j] + &dx[i][j]).abs();
                        if v > worst {
                            worst = v;
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest entry of the cyclic Jacobi sum of the bracket.
    pub fn jacobi_violation(&self) -> Rational {
        let mut worst = Rational::zero();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let (x, y, z) = (basis(a), basis(b), basis(c));
                    let s1 = self.bracket_of(&x, &self.bracket_of(&y, &z));
                    let s2 = self.bracket_of(&y, &self.bracket_of(&z, &x));
                    let s3 = self.bracket_of(&z, &self.bracket_of(&x, &y));
                    for k in 0..3 {
                        let v = (&s1[k] + &s2[k] + &s3[k]).abs();
                        if v > worst {
                            worst = v;
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                (0..3).all(|k| {
                    self.bracket[i][j][k] == -self.bracket[j][i][k].clone()
                        && self.cobracket[k][i][j] == -self.cobracket[k][j][i].clone()
                })
            })
        })
    }
}

pub fn basis(i: usize) -> Vector {
    array::from_fn(|k| if k == i { int(1) } else { Rational::zero() })
}

fn apply_bracket(c: &Tensor3, x: &Vector, y: &Vector) -> Vector {
    let mut out: Vector = array::from_fn(|_| Rational::zero());
    for i in 0..3 {
        for j in 0..3 {
            let w = &x[i] * &y[j];
            if w.is_zero() {
                continue;
            }
            for k in 0..3 {
                out[k] += &w * &c[i][j][k];
            }
        }
    }
    out
}

/// Transposes a tensor between `c^k_{ij}` and `d^{ij}_k` layouts, so that
/// `⟨[f,g], x⟩ = ⟨f ⊗ g, δ(x)⟩`.
pub fn dual_bracket(t: &Tensor3) -> Tensor3 {
    let mut out = zero_tensor();
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                out[i][j][k] = t[k][i][j].clone();
            }
        }
    }
    out
}

/// Inverse of [`dual_bracket`]: the cobracket of `g*` from the bracket of `g`,
/// `δ(e_k) = Σ c^k_{ij} e_i ⊗ e_j`.
pub fn dual_cobracket(t: &Tensor3) -> Tensor3 {
    let mut out = zero_tensor();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[k][i][j] = t[i][j][k].clone();
            }
        }
    }
    out
}

/// `x ↦ (ad_x ⊗ 1 + 1 ⊗ ad_x) r` for `r = X+ ∧ X-`.
pub fn coboundary_of_r() -> Tensor3 {
    let data = LieBialgebraData::sl2();
    let mut r = zero_matrix();
    wedge(1, 2, int(1), &mut r);
    coboundary(&data, &r)
}

pub fn coboundary(data: &LieBialgebraData, r: &Matrix) -> Tensor3 {
    let mut out = zero_tensor();
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = data.ad_tensor(&basis(k), r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_is_a_lie_bialgebra() {
        let d = LieBialgebraData::sl2();
        assert!(d.is_antisymmetric());
        assert!(d.jacobi_violation().is_zero());
        assert!(d.cocycle_check().is_zero());
        assert!(d.dual().jacobi_violation().is_zero());
    }

    #[test]
    fn coboundary_examples() {
        let d = LieBialgebraData::sl2();
        let cob = coboundary_of_r();
        assert_eq!(cob, d.cobracket);
        assert_eq!(cob[0], zero_matrix());
        let mut xp_h = zero_matrix();
        wedge(1, 0, int(1), &mut xp_h);
        assert_eq!(cob[1], xp_h);
        let data = d.with_cobracket(cob);
        assert_eq!(data.cobracket_of(&array::from_fn(|_| Rational::zero())), zero_matrix());
    }

    #[test]
    fn dual_bracket_examples() {
        let dual = LieBialgebraData::sl2().dual();
        let e12 = dual.bracket_of(&basis(0), &basis(1));
        assert_eq!(e12, [int(0), int(-1), int(0)]);
        let e13 = dual.bracket_of(&basis(0), &basis(2));
        assert_eq!(e13, [int(0), int(0), int(-1)]);
        let e23 = dual.bracket_of(&basis(1), &basis(2));
        assert!(e23.iter().all(Zero::is_zero));
        let mut e23 = zero_matrix();
        wedge(1, 2, int(1), &mut e23);
        assert_eq!(dual.cobracket[0], e23);
        assert_eq!(dual.dual().bracket, LieBialgebraData::sl2().bracket);
        assert_eq!(dual.dual().cobracket, LieBialgebraData::sl2().cobracket);
    }

    #[test]
    fn cocycle_examples() {
        let d = LieBialgebraData::sl2();
        assert!(d.with_cobracket(zero_tensor()).cocycle_check().is_zero());
        let mut bad = d.cobracket.clone();
        bad[0][1][2] += int(1);
        assert!(!d.with_cobracket(bad).cocycle_check().is_zero());
    }
}

//! Gauge transformation on the `x1` subalgebra.
//!
//! A raw product on powers of `x` is fixed by the numbers `b_k` in
//!
//! ```text
//! x^{n-1} ⋆ x = x^n + Σ_{k even ≥ 2} ε^k (n-1)!/(n-k)! b_k x^{n-k}
//! ```
//!
//! and the operator `D = Σ_m a_m ε^m ∂^m` is chosen so that the gauged
//! product satisfies `x^{⋆n} = x^n`.

mod bernoulli;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::rational::{factorial, int, rational_map};
use crate::series::{EpsSeries, Rational, SeriesError};

pub use bernoulli::{bernoulli_hat, bernoulli_identity_check, c_series};

#[derive(Debug, Error, PartialEq)]
pub enum GaugeError {
    #[error("b_{0} given, but only even indices k >= 2 are allowed")]
    OddIndex(u32),
    #[error("kmax must be even, got {0}")]
    OddKmax(u32),
    #[error("nmax must be at least 1")]
    EmptyTable,
    #[error("A must be an even series")]
    OddSeries,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The raw product on powers of `x1`, given by its `b_k`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RawX1Model {
    #[serde(with = "rational_map")]
    b: BTreeMap<u32, Rational>,
}

impl RawX1Model {
    pub fn new<I>(b: I) -> Result<Self, GaugeError>
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (k, v) in b {
            if k < 2 || k % 2 == 1 {
                return Err(GaugeError::OddIndex(k));
            }
            if !v.is_zero() {
                map.insert(k, v);
            }
        }
        Ok(RawX1Model { b: map })
    }

    pub fn undeformed() -> Self {
        RawX1Model::default()
    }

    pub fn b(&self, k: u32) -> Rational {
        self.b.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.b.iter().map(|(k, v)| (*k, v))
    }

    /// `x^{⋆n}` as a map `k ↦ coefficient of ε^k x^{n-k}`, computed by
    /// multiplying by `x` on the right `n - 1` times.
    pub fn raw_power(&self, n: u32) -> BTreeMap<u32, Rational> {
        let mut current: BTreeMap<u32, Rational> = BTreeMap::new();
        if n == 0 {
            current.insert(0, Rational::one());
            return current;
        }
        current.insert(0, Rational::one());
        for len in 2..=n {
            let mut next: BTreeMap<u32, Rational> = BTreeMap::new();
            for (&l, c) in &current {
                // ε^l x^m ⋆ x with m = len - 1 - l
                let m = len - 1 - l;
                *next.entry(l).or_insert_with(Rational::zero) += c;
                for (&k, bk) in &self.b {
                    if k > m + 1 {
                        continue;
                    }
                    let ratio = Rational::from(factorial(m)) / Rational::from(factorial(m + 1 - k));
                    *next.entry(l + k).or_insert_with(Rational::zero) += c * &ratio * bk;
                }
            }
            next.retain(|_, v| !v.is_zero());
            current = next;
        }
        current
    }
}

/// Coefficients `a_k` of the gauge operator, `a_0 = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeSolution {
    #[serde(with = "rational_map")]
    a: BTreeMap<u32, Rational>,
}

impl GaugeSolution {
    pub fn identity() -> Self {
        GaugeSolution {
            a: BTreeMap::from([(0, Rational::one())]),
        }
    }

    /// Build from explicit coefficients; `a_0` is forced to 1.
    pub fn from_coefficients<I>(a: I) -> Result<Self, GaugeError>
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut sol = GaugeSolution::identity();
        for (k, v) in a {
            if k % 2 == 1 {
                return Err(GaugeError::OddIndex(k));
            }
            if k > 0 {
                sol.a.insert(k, v);
            }
        }
        Ok(sol)
    }

    pub fn a(&self, k: u32) -> Rational {
        self.a.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.a.iter().map(|(k, v)| (*k, v))
    }

    pub fn kmax(&self) -> u32 {
        self.a.keys().next_back().copied().unwrap_or(0)
    }

    /// Overwrite one coefficient. Used to build negative controls.
    pub fn set(&mut self, k: u32, v: Rational) {
        self.a.insert(k, v);
    }

    /// `D x^n = Σ_m a_m ε^m n!/(n-m)! x^{n-m}`.
    pub fn apply(&self, n: u32) -> BTreeMap<u32, Rational> {
        let mut out = BTreeMap::new();
        for (&m, a) in &self.a {
            if m > n || a.is_zero() {
                continue;
            }
            let ratio = Rational::from(factorial(n)) / Rational::from(factorial(n - m));
            out.insert(m, a * ratio);
        }
        out
    }

    /// Eigenvalue of `D` on `e^{λ x1}` at `λ = freq`: `Σ a_k (freq·ε)^k`.
    pub fn multiplier(&self, freq: i64, order: i32) -> EpsSeries {
        EpsSeries::from_terms(
            self.a.iter().map(|(&k, a)| {
                let f: Rational = num_traits::pow(int(freq), k as usize);
                (k as i32, a * f)
            }),
            order,
        )
    }
}

/// `c[n][k]`, the coefficient of `ε^k x^{n-k}` in `x^{⋆n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnkTable {
    #[serde(with = "rows_serde")]
    rows: Vec<BTreeMap<u32, Rational>>,
}

impl CnkTable {
    pub fn nmax(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn get(&self, n: u32, k: u32) -> Rational {
        if n == 0 || n > self.nmax() {
            return if k == 0 { Rational::one() } else { Rational::zero() };
        }
        self.rows[(n - 1) as usize]
            .get(&k)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, n: u32) -> Option<&BTreeMap<u32, Rational>> {
        n.checked_sub(1).and_then(|i| self.rows.get(i as usize))
    }
}

mod rows_serde {
    use std::collections::BTreeMap;

    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::series::rational::rational_map;
    use crate::series::Rational;

    #[derive(serde::Serialize, Deserialize)]
    struct Row(#[serde(with = "rational_map")] BTreeMap<u32, Rational>);

    pub fn serialize<S: Serializer>(rows: &[BTreeMap<u32, Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in rows {
            seq.serialize_element(&Row(r.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BTreeMap<u32, Rational>>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

pub fn cnk_from_b(model: &RawX1Model, nmax: u32) -> Result<CnkTable, GaugeError> {
    if nmax == 0 {
        return Err(GaugeError::EmptyTable);
    }
    let mut rows: Vec<BTreeMap<u32, Rational>> = vec![BTreeMap::from([(0, Rational::one())])];
    for n in 2..=nmax {
        let prev = &rows[(n - 2) as usize];
        let mut row = BTreeMap::new();
        for k in (0..=n).step_by(2) {
            let mut c = prev.get(&k).cloned().unwrap_or_else(Rational::zero);
            for l in (0..=k.saturating_sub(2)).step_by(2) {
                if k < 2 {
                    break;
                }
                let Some(cl) = prev.get(&l) else { continue };
                let b = model.b(k - l);
                if b.is_zero() {
                    continue;
                }
                let ratio = Rational::from(factorial(n - l - 1)) / Rational::from(factorial(n - k));
                c += cl * ratio * b;
            }
            if !c.is_zero() {
                row.insert(k, c);
            }
        }
        rows.push(row);
    }
    Ok(CnkTable { rows })
}

/// `a_k = (1/k) Σ_{m even, 2 ≤ m ≤ k} a_{k-m} b_m`.
pub fn solve_gauge(model: &RawX1Model, kmax: u32) -> Result<GaugeSolution, GaugeError> {
    if kmax % 2 == 1 {
        return Err(GaugeError::OddKmax(kmax));
    }
    let mut a = BTreeMap::from([(0u32, Rational::one())]);
    for k in (2..=kmax).step_by(2) {
        let mut sum = Rational::zero();
        for m in (2..=k).step_by(2) {
            if let Some(prev) = a.get(&(k - m)) {
                sum += prev * model.b(m);
            }
        }
        let ak = sum / int(k as i64);
        if !ak.is_zero() {
            a.insert(k, ak);
        }
    }
    Ok(GaugeSolution { a })
}

/// True iff `c^n_k = a_k n!/(n-k)!` for all `n ≤ nmax` and even `k ≤ n`.
pub fn verify_gauge(model: &RawX1Model, solution: &GaugeSolution, nmax: u32) -> bool {
    let Ok(table) = cnk_from_b(model, nmax) else {
        return false;
    };
    (1..=nmax).all(|n| {
        let expected = solution.apply(n);
        (0..=n).step_by(2).all(|k| {
            let want = expected.get(&k).cloned().unwrap_or_else(Rational::zero);
            table.get(n, k) == want
        })
    })
}

/// `Ã = A · Σ (2ε)^k a_k`, the transform as it is usually stated.
pub fn gauge_ab_transform(a_raw: &EpsSeries, solution: &GaugeSolution) -> Result<EpsSeries, GaugeError> {
    if !a_raw.is_even() {
        return Err(GaugeError::OddSeries);
    }
    Ok(a_raw.checked_mul(&solution.multiplier(2, a_raw.order()))?)
}

/// `Ã = A / Σ (2ε)^k a_k`.
///
/// Conjugating the product by `D` (which fixes `x2`, `x3`) sends the
/// commutator `[x2, x3] = 2εA sinh(2x1)` to `D^{-1}` of it, and `D` acts on
/// `sinh(2x1)` by the multiplier `Σ (2ε)^k a_k`.
pub fn gauge_ab_transform_conjugated(
    a_raw: &EpsSeries,
    solution: &GaugeSolution,
) -> Result<EpsSeries, GaugeError> {
    if !a_raw.is_even() {
        return Err(GaugeError::OddSeries);
    }
    let m = solution.multiplier(2, a_raw.order()).invert()?;
    Ok(a_raw.checked_mul(&m)?)
}

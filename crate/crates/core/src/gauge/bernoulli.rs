use std::sync::Mutex;

use num_traits::Zero;

use crate::series::rational::{binomial, factorial, int};
use crate::series::{EpsSeries, Rational};

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B̂_n = (-1)^n B_n`, so `B̂_1 = 1/2`.
///
/// The Akiyama-Tanigawa transform produces exactly this sign convention.
pub fn bernoulli_hat(n: u32) -> Rational {
    if let Some(v) = CACHE.lock().ok().and_then(|c| c.get(n as usize).cloned()) {
        return v;
    }
    let len = n as usize + 1;
    let mut row: Vec<Rational> = Vec::with_capacity(len);
    let mut out = Vec::with_capacity(len);
    for m in 0..len {
        row.push(Rational::new(1.into(), (m as i64 + 1).into()));
        for j in (1..=m).rev() {
            row[j - 1] = int(j as i64) * (&row[j - 1] - &row[j]);
        }
        out.push(row[0].clone());
    }
    if let Ok(mut c) = CACHE.lock() {
        if c.len() < out.len() {
            *c = out.clone();
        }
    }
    out.swap_remove(n as usize)
}

/// `c(±ε) = Σ_k (±2ε)^k B̂_k / k!`.
pub fn c_series(positive: bool, order: i32) -> EpsSeries {
    if order < 0 {
        return EpsSeries::zero(order);
    }
    let sign = if positive { 1 } else { -1 };
    EpsSeries::from_terms(
        (0..=order as u32).map(|k| {
            let two: Rational = num_traits::pow(int(2 * sign), k as usize);
            (k as i32, bernoulli_hat(k) * two / Rational::from(factorial(k)))
        }),
        order,
    )
}

/// `Σ_{k=0}^n (-1)^k C(n,k) B̂_k = B̂_n` for every `n ≤ nmax`.
pub fn bernoulli_identity_check(nmax: u32) -> bool {
    (0..=nmax).all(|n| {
        let mut sum = Rational::zero();
        for k in 0..=n {
            let term = Rational::from(binomial(n, k)) * bernoulli_hat(k);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum == bernoulli_hat(n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_hat(0), int(1));
        assert_eq!(bernoulli_hat(1), rat(1, 2));
        assert_eq!(bernoulli_hat(2), rat(1, 6));
        assert_eq!(bernoulli_hat(3), int(0));
        assert_eq!(bernoulli_hat(4), rat(-1, 30));
        assert_eq!(bernoulli_hat(12), rat(-691, 2730));
    }

    #[test]
    fn generating_function_recurrence() {
        // Σ_{j<n} C(n,j) B_j = 0 for n ≥ 2, with B_j = (-1)^j B̂_j.
        for n in 2..=24u32 {
            let mut sum = Rational::zero();
            for j in 0..n {
                let b = if j % 2 == 1 { -bernoulli_hat(j) } else { bernoulli_hat(j) };
                sum += Rational::from(binomial(n, j)) * b;
            }
            assert!(sum.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn c_series_examples() {
        assert_eq!(
            c_series(true, 2),
            EpsSeries::from_terms([(0, int(1)), (1, int(1)), (2, rat(1, 3))], 2)
        );
        let n = 10;
        let one_minus = EpsSeries::one(n + 1) - EpsSeries::exp_series(&int(-2), n + 1);
        let closed = one_minus.shift(-1).unwrap().scale(&rat(1, 2)).with_order(n);
        assert_eq!(&c_series(true, n) * &closed, EpsSeries::one(n));
        let twisted = &c_series(false, n) * &EpsSeries::exp_series(&int(2), n);
        assert_eq!(twisted, c_series(true, n));
    }

    #[test]
    fn identity_check() {
        assert!(bernoulli_identity_check(0));
        assert!(bernoulli_identity_check(1));
        assert!(bernoulli_identity_check(20));
    }
}

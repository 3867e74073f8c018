//! Normal forms against a second, deliberately naive reducer that works on
//! whole linear combinations of words and rewrites the rightmost redex.

mod common;

use std::collections::BTreeMap;

use num_traits::One;
use sl2star::ncalg::{default_x_system, Generator, PbwMonomial, Word};
use sl2star::series::rational::{factorial, int, Rational};
use sl2star::series::EpsSeries;

use Generator::*;

const N: i32 = 6;

fn exp2(sign: i64) -> EpsSeries {
    EpsSeries::from_terms(
        (0..=N as u32).map(|k| {
            let num: Rational = num_traits::pow(int(2 * sign), k as usize);
            (k as i32, num / Rational::from(factorial(k)))
        }),
        N,
    )
}

fn scalar(c: i64, eps_power: i32) -> EpsSeries {
    EpsSeries::term(int(c), eps_power, N)
}

/// One rewrite of the pair `a b`, or `None` if it is in order.
fn rule(a: Generator, b: Generator) -> Option<Vec<(EpsSeries, Word)>> {
    let one = EpsSeries::one(N);
    Some(match (a, b) {
        (X2, X1) => vec![(one, vec![X1, X2]), (scalar(-2, 1), vec![X2])],
        (X3, X1) => vec![(one, vec![X1, X3]), (scalar(2, 1), vec![X3])],
        // A = 4
        (X3, X2) => vec![
            (one, vec![X2, X3]),
            (scalar(-4, 1), vec![EPlus, EPlus]),
            (scalar(4, 1), vec![EMinus, EMinus]),
        ],
        (EPlus, X1) => vec![(one, vec![X1, EPlus])],
        (EMinus, X1) => vec![(one, vec![X1, EMinus])],
        (EPlus, X2) => vec![(exp2(1), vec![X2, EPlus])],
        (EMinus, X2) => vec![(exp2(-1), vec![X2, EMinus])],
        (EPlus, X3) => vec![(exp2(-1), vec![X3, EPlus])],
        (EMinus, X3) => vec![(exp2(1), vec![X3, EMinus])],
        (EPlus, EMinus) | (EMinus, EPlus) => vec![(one, vec![])],
        _ => return None,
    })
}

fn naive_normal_form(word: &[Generator]) -> BTreeMap<PbwMonomial, EpsSeries> {
    let mut pending: BTreeMap<Word, EpsSeries> = BTreeMap::new();
    pending.insert(word.to_vec(), EpsSeries::one(N));
    let mut done: BTreeMap<PbwMonomial, EpsSeries> = BTreeMap::new();
    while let Some((w, c)) = pending.pop_first() {
        let redex = (0..w.len().saturating_sub(1)).rev().find_map(|i| rule(w[i], w[i + 1]).map(|r| (i, r)));
        match redex {
            None => {
                let m = PbwMonomial::from_ordered_word(&w).unwrap();
                let e = done.entry(m).or_insert_with(|| EpsSeries::zero(N));
                *e = e.checked_add(&c).unwrap();
            }
            Some((i, rhs)) => {
                for (d, mid) in rhs {
                    let mut next = w[..i].to_vec();
                    next.extend(mid);
                    next.extend_from_slice(&w[i + 2..]);
                    let e = pending.entry(next).or_insert_with(|| EpsSeries::zero(N));
                    *e = e.checked_add(&c.checked_mul(&d).unwrap()).unwrap();
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

fn all_words(len: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| Generator::ALL.iter().map(move |&g| [w.clone(), vec![g]].concat()))
            .collect();
    }
    out
}

#[test]
fn agrees_with_naive_reducer_on_all_short_words() {
    let sys = default_x_system(N);
    for len in 0..=4 {
        for w in all_words(len) {
            let fast = sys.normal_form_word(&w);
            let slow = naive_normal_form(&w);
            let fast: BTreeMap<_, _> = fast.terms().map(|(m, c)| (*m, c.clone())).collect();
            assert_eq!(fast, slow, "{w:?}");
        }
    }
}

#[test]
fn agrees_with_naive_reducer_on_random_long_words() {
    use rand::SeedableRng;
    let sys = default_x_system(N);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        let w = common::random_word(&mut rng, 7);
        let fast: BTreeMap<_, _> = sys.normal_form_word(&w).terms().map(|(m, c)| (*m, c.clone())).collect();
        assert_eq!(fast, naive_normal_form(&w), "{w:?}");
    }
}

#[test]
fn naive_reducer_sanity() {
    let nf = naive_normal_form(&[X2, X1]);
    assert_eq!(nf.len(), 2);
    assert!(nf[&PbwMonomial::new(1, 1, 0, 0)].coeff(0).is_one());
}

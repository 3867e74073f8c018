#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sl2star::ncalg::{FreeElement, Generator, NcElement, RewriteSystem, Word};
use sl2star::series::rational::rat;
use sl2star::series::{EpsSeries, Rational};

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Generator::ALL[rng.gen_range(0..5)]).collect()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut n = rng.gen_range(-5i64..=5);
    if n == 0 {
        n = 1;
    }
    rat(n, rng.gen_range(1..=4))
}

/// Sum of up to `terms` random words with small rational coefficients,
/// normal-ordered.
pub fn random_element(
    sys: &RewriteSystem<EpsSeries>,
    rng: &mut ChaCha8Rng,
    terms: usize,
    max_len: usize,
    order: i32,
) -> NcElement<EpsSeries> {
    let n = rng.gen_range(1..=terms);
    let mut f = FreeElement::zero();
    for _ in 0..n {
        let c = EpsSeries::constant(random_rational(rng), order);
        let c = if rng.gen_bool(0.3) { c.checked_mul(&EpsSeries::eps(order)).unwrap() } else { c };
        f.add_term(random_word(rng, max_len), c);
    }
    sys.normal_form(&f)
}

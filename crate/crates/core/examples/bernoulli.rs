//! Bernoulli numbers with B_1 = +1/2 and the series c(eps).

use sl2star::gauge::{bernoulli_hat, bernoulli_identity_check, c_series};
use sl2star::series::rational::int;
use sl2star::series::EpsSeries;

fn main() {
    for n in 0..=12 {
        println!("B^_{n} = {}", bernoulli_hat(n));
    }
    println!("alternating binomial identity to 20: {}", bernoulli_identity_check(20));

    let n = 12;
    let plus = c_series(true, n);
    let minus = c_series(false, n);
    println!("c(+eps) = {plus}");
    let shifted = EpsSeries::exp_series(&int(2), n).checked_mul(&minus).unwrap();
    println!("c(+eps) = e^(2 eps) c(-eps): {}", plus == shifted);
}

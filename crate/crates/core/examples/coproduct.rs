//! Coproduct, counit and coassociativity, and the first order at which the
//! coproduct of `x2*x2` departs from the classical one.

use sl2star::coalg::Bialgebra;
use sl2star::ncalg::{default_x_system, Generator, Rule};

fn main() {
    let bi = Bialgebra::new(default_x_system(6));
    let sys = bi.system();
    for g in Generator::ALL {
        println!("D({g:?}) = {}", bi.generator_coproduct(g));
    }

    let ideal_ok = Rule::ALL.iter().all(|&r| bi.coideal_check(r).is_zero());
    println!("every relation maps into the ideal: {ideal_ok}");

    let x2 = sys.generator(Generator::X2);
    let sq = sys.star(&x2, &x2);
    println!("D(x2*x2) = {}", bi.coproduct(&sq));
    println!("deviation from the classical coproduct: {}", bi.deformation_defect(&sq));
    println!("deformation order: {}", bi.deformation_order(&sq));

    let f = sys.star(&sys.generator(Generator::X3), &sq);
    println!("coassociative on x3*x2*x2: {}", bi.coassoc_defect(&f).is_zero());
    println!("counit of x3*x2*x2 + 1: {}", bi.counit(&f.add(&sys.unit())));
}

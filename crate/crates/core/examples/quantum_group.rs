//! Rescaled generators satisfy the U_h(sl2) relations; the two-parameter
//! form degenerates correctly as h or eps goes to zero.

use sl2star::ncalg::Generator;
use sl2star::uhsl2::{
    default_a, limit_eps_to_zero, limit_h_to_zero, limits_report, xi_algebra_build, z_commutators,
    z_coproducts,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let mut report = z_commutators(n, &default_a(n))?;
    report.extend(z_coproducts(n, &default_a(n))?);
    for c in &report.checks {
        println!("{} {}", if c.holds { "ok  " } else { "FAIL" }, c.name);
    }

    let xi = xi_algebra_build(6)?;
    let sys = xi.system();
    let c = sys.commutator(&xi.xi(Generator::X2), &xi.xi(Generator::X3));
    println!("[xi2, xi3] = {}", xi.display(&c));
    let at_h0 = limit_h_to_zero(&c)?;
    println!("h -> 0:   {}", at_h0.display_with(&sl2star::ncalg::Alphabet::XI));
    println!("eps -> 0: {}", xi.display(&limit_eps_to_zero(&c)));
    println!("all corner limits hold: {}", limits_report(&xi)?.passed());
    Ok(())
}

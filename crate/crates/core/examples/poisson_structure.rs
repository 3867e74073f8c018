//! Integrates the dual cobracket along one-parameter subgroups and compares
//! with the closed-form Poisson bivector on the dual group.

use nalgebra::Vector3;
use sl2star::poisson::{self, alpha_reference, bivector_at, coboundary_of_r, fit_kappa, LieBialgebraData, PoissonConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sl2 = LieBialgebraData::sl2().with_cobracket(coboundary_of_r());
    println!("cocycle defect: {}", sl2.cocycle_check());
    println!("Jacobi violation of the dual bracket: {}", sl2.dual().jacobi_violation());

    let x = Vector3::new(0.3, -0.7, 0.2);
    let computed = bivector_at(&x)?;
    let reference = alpha_reference(&x);
    println!("integrated:\n{}", computed.matrix());
    println!("reference:\n{}", reference.matrix());
    println!("kappa = {:?}", fit_kappa(&computed, &reference));

    let report = poisson::verify(&PoissonConfig { samples: 20, ..PoissonConfig::default() })?;
    println!(
        "20 samples: kappa {:.12}, residual {:.2e}, multiplicativity {:.2e}, Jacobi {:.2e}, pass {}",
        report.kappa,
        report.max_relative_residual,
        report.max_multiplicativity_residual,
        report.max_jacobi_residual,
        report.passed()
    );
    Ok(())
}

//! The series h, g2 and g3 for X_{8,8} and the singularity that gives the bound.

use cactus::numeric::{Coeff, Real};
use cactus::solvers::{radius_by_scan, radius_of_convergence, solve_zeta_surface};
use cactus::transforms::{cactus_pipeline, ProblemSpec, SurdForm};

fn main() -> cactus::Result<()> {
    let spec = ProblemSpec::genus(2)?;
    let zeta = solve_zeta_surface(8, 8, 30)?;
    let z = zeta.lower_rational(30);
    println!("{spec}");
    println!("zeta = {} (1 - zeta = {:.4e})", zeta.decimal(30), zeta.deviation().to_f64());

    let p = cactus_pipeline(&spec, &Real::from_rational(&z), 24)?;
    for (name, s) in [("h ", &p.h), ("g2", &p.g2), ("g3", &p.g3)] {
        let head: Vec<String> = s.coeffs().iter().step_by(2).map(|c| c.to_decimal(3)).collect();
        println!("{name} even coefficients: {}", head.join(", "));
    }

    let exact = radius_of_convergence(&spec, &z, SurdForm::default(), 20)?;
    let scan = radius_by_scan(&spec, &zeta.zeta, SurdForm::default())?;
    println!(
        "alpha in [{:.12}, {:.12}], polynomial degree {}",
        exact.alpha.as_ref().unwrap().0.to_f64(),
        exact.alpha.as_ref().unwrap().1.to_f64(),
        exact.degree
    );
    println!("rho = {:.12} (float scan {:.12})", exact.rho.to_f64(), scan.rho.to_f64());
    println!("||M|| >= {}", exact.bound_exact.decimal_down(9));
    Ok(())
}

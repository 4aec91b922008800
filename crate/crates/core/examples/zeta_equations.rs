//! The discount factor zeta from each equation, for a range of surface groups.

use cactus::solvers::{solve_zeta, solve_zeta_generic, ZetaEquation};
use cactus::transforms::ProblemSpec;

fn main() -> cactus::Result<()> {
    println!("{:>4}  {:>14}  {:>14}  {:>14}", "d=m", "localsg", "exponent m", "generic");
    for d in [8u32, 12, 16, 20] {
        let local = solve_zeta(ZetaEquation::Localsg { d, m: d }, 40)?;
        let full = solve_zeta(ZetaEquation::SurfaceExponentM { d, m: d }, 40)?;
        let generic = solve_zeta_generic(&ProblemSpec::tessellation(d, d)?, 40)?;
        println!(
            "{d:>4}  {:>14.6e}  {:>14.6e}  {:>14.6e}",
            local.deviation().to_f64(),
            full.deviation().to_f64(),
            generic.deviation().to_f64()
        );
    }

    // forbidden words over the genus-2 alphabet
    let lemma = solve_zeta(ZetaEquation::LocalLemma { rho: 7, alphabet: 8, phi: vec![(7, 16)] }, 30)?;
    println!("{}: 1 - zeta = {:.6e}", lemma.equation, lemma.deviation().to_f64());
    Ok(())
}

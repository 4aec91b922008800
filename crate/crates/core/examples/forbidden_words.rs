//! Reduced words over the genus-2 alphabet avoiding long pieces of the relator.

use cactus::graphs::{count_avoiding_words, surface_forbidden_factors, surface_involution};
use cactus::series::Series;
use cactus::solvers::{solve_zeta, ZetaEquation};
use rug::Rational;

fn main() -> cactus::Result<()> {
    let n = 16;
    let forbidden = surface_forbidden_factors(2);
    println!("{} forbidden factors, e.g. {:?}", forbidden.len(), forbidden[0]);
    let counts = count_avoiding_words(8, &forbidden, n, Some(&surface_involution(2)))?;

    let t7 = Series::monomial(Rational::from(16), 7, n);
    let tail = t7.mul(&Series::from_ints([1, -1], n)).div(&Series::from_ints([1, 0, 0, 0, 0, 0, 0, -1], n))?;
    let lambda = Series::from_ints([1, -7], n).add(&tail).reciprocal()?;

    let zeta = solve_zeta(ZetaEquation::LocalLemma { rho: 7, alphabet: 8, phi: vec![(7, 16)] }, 20)?;
    let growth = 7.0 * zeta.zeta.to_f64();
    println!("{:>3} {:>16} {:>16} {:>16}", "n", "words", "series", "(7 zeta)^n");
    for i in 0..=n {
        println!("{i:>3} {:>16} {:>16} {:>16.0}", counts[i], lambda.coeff(i), growth.powi(i as i32));
    }
    Ok(())
}

//! Paschke's graph P_{3,4}: free-product Green function, walk counts and the growth rate.

use cactus::graphs::{build_pkd_ball, count_closed_walks, BuildOptions};
use cactus::solvers::{kesten_bound, paschke_bound};
use cactus::transforms::pkd_green;
use rug::{Float, Integer, Rational};

fn main() -> cactus::Result<()> {
    let (k, d) = (3, 4);
    let g = pkd_green::<Rational>(k, d, 120)?;
    let walks = count_closed_walks(&build_pkd_ball(k, d, 6, &BuildOptions::default())?, 12)?;
    for n in 0..=12 {
        assert_eq!(Rational::from(Integer::from(walks.counts[n])), *g.coeff(n));
    }
    println!("first coefficients: {}", g.truncate(12));

    for n in [40, 80, 116] {
        let r = Float::with_val(128, Rational::from(g.coeff(n + 2) / g.coeff(n)));
        println!("sqrt(c_{}/c_{n})/d = {:.9}", n + 2, (r.sqrt() / d).to_f64());
    }
    let p = paschke_bound(d, k)?;
    println!("paschke bound = {:.12} at s = {:.7}", p.value.to_f64(), p.argmin.to_f64());
    println!("kesten bound  = {:.12}", kesten_bound(d).to_f64());
    Ok(())
}

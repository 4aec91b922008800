//! Exact truncated power series: reciprocals, square roots, reversion.

use cactus::series::Series;
use cactus::transforms::{tree_green, tree_kernel_inverse};
use rug::Rational;

fn main() -> cactus::Result<()> {
    let n = 12;

    // t/(1+t²) reverts to the Catalan generating function
    let f = Series::var(n).div(&Series::from_ints([1, 0, 1], n))?;
    println!("revert(t/(1+t^2)) = {}", f.revert()?);

    let s = Series::from_ints([1, -4], n).sqrt()?;
    println!("sqrt(1-4t)        = {s}");
    assert_eq!(s.mul(&s), Series::from_ints([1, -4], n));

    let h = tree_green::<Rational>(8, n)?;
    println!("h for d=8         = {h}");
    println!("kernel inverse    = {}", tree_kernel_inverse::<Rational>(8, n)?);

    let bigger = h.scale(&Rational::from(2));
    println!("2h dominates h: {}", bigger.dominates(&h)?);
    println!("as json: {}", cactus::series::io::to_json(&h.truncate(4)));
    Ok(())
}

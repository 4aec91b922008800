//! The cogrowth transform of the tree's Green function against a direct count.

use cactus::graphs::{build_tree_ball, count_spiky_circuits, BuildOptions};
use cactus::transforms::{cogrowth_transform, tree_green, tree_spiky};
use rug::Rational;

fn main() -> cactus::Result<()> {
    let (d, n) = (4, 8);
    let h = tree_green::<Rational>(d, n)?;
    let big_h = cogrowth_transform(&h, d)?;
    let counted = count_spiky_circuits(&build_tree_ball(d, 4, &BuildOptions::default())?, n)?;
    for k in (0..=n).step_by(2) {
        println!("t^{k}: transform {:?}", big_h.coeff(k).iter().map(|c| c.to_string()).collect::<Vec<_>>());
        println!("      counted   {:?}", counted.spiky.as_ref().unwrap()[k]);
    }
    assert_eq!(counted.spiky_series().unwrap(), big_h);
    assert_eq!(tree_spiky::<Rational>(d, n)?, big_h);
    println!("H(t, 1) = h: {}", big_h.specialize_u(&Rational::from(1)) == h);
    Ok(())
}

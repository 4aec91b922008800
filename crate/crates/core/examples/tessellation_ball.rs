//! Build balls in {m, d} tessellations and look at their shape.
//!
//!     cargo run --release --example tessellation_ball -- 8 8 4

use cactus::graphs::{build_tessellation_ball, BuildOptions};

fn main() -> cactus::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (d, m, r) = match args[..] {
        [d, m, r] => (d, m, r),
        _ => (8, 8, 4),
    };
    let ball = build_tessellation_ball(d, m, r, &BuildOptions::default())?;
    ball.check_invariants()?;
    println!("X_{{{d},{m}}} ball of radius {r}: {} vertices", ball.vertex_count());
    println!("layer sizes {:?}", ball.layer_sizes());
    println!("shortest cycle through the root: {:?}", ball.root_girth());

    for (d, m) in [(4, 4), (6, 3), (3, 6), (3, 7), (5, 4)] {
        let b = build_tessellation_ball(d, m, 5, &BuildOptions::default())?;
        println!("X_{{{d},{m}}}: {:?}", b.layer_sizes());
    }

    let small = build_tessellation_ball(4, 5, 2, &BuildOptions::default())?;
    print!("{}", small.to_adjacency_text());
    Ok(())
}

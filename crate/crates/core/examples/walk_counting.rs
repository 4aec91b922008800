//! Closed walks on X_{8,8} against the cactus series g3.

use cactus::bounds::{verify_undercount, ReportOptions};
use cactus::graphs::{build_tessellation_ball, count_spiky_circuits, BuildOptions};
use cactus::transforms::ProblemSpec;

fn main() -> cactus::Result<()> {
    let spec = ProblemSpec::genus(2)?;
    let result = verify_undercount(&spec, 12, &ReportOptions::default())?;
    print!("{}", result.to_text(12));

    // circuits by number of spikes; the reduced 8-circuits are the octagons
    let ball = build_tessellation_ball(8, 8, 5, &BuildOptions::default())?;
    let spiky = count_spiky_circuits(&ball, 10)?;
    for (n, row) in spiky.spiky.as_ref().unwrap().iter().enumerate().filter(|(n, _)| n % 2 == 0) {
        println!("n={n:>2} by spikes: {row:?}");
    }
    Ok(())
}

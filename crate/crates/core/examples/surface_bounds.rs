//! Every bound for the surface groups of genus 2 and 3.
//!
//!     cargo run --release --example surface_bounds

use cactus::bounds::{compute_report, ReportOptions};
use cactus::transforms::ProblemSpec;

fn main() -> cactus::Result<()> {
    for g in [2, 3] {
        let spec = ProblemSpec::genus(g)?;
        let report = compute_report(&spec, &ReportOptions::default());
        println!("{}", report.to_text());
    }
    Ok(())
}

//! Runs the walk-count, periodic-point and level-structure checks over the
//! default grid and prints one line per report.

use expcycles::verify::{default_grid, verify_grid};
use expcycles::Limits;

fn main() -> Result<(), expcycles::Error> {
    let reports = verify_grid(&default_grid(), 5, Limits::default())?;
    for report in &reports {
        let params = report.params();
        println!(
            "{:<10} p={} n={} q={}  {:?}",
            report.claim().as_str(),
            params.p.unwrap_or(0),
            params.n.unwrap_or(0),
            params.q.unwrap_or(0),
            report.verdict()
        );
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} reports, {failed} violations", reports.len());
    Ok(())
}

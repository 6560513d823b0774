//! Closed walks of the perturbed graphs against the stated closed-form bound
//! and the level-by-level recurrence.

use expcycles::verify::verify_theorem2;
use expcycles::Limits;

fn main() -> Result<(), expcycles::Error> {
    for r in [1, 2] {
        let [stated, recurrence] = verify_theorem2(3, 2, r, 3, 3, Limits::default())?;
        println!("r = {r}");
        for row in stated.rows() {
            println!(
                "  n={} k={}  c_n = {:>4}  stated bound {:>7}  {}",
                row.index,
                row.k.unwrap_or(0),
                row.observed,
                row.bound,
                if row.satisfied { "ok" } else { "VIOLATED" }
            );
        }
        println!("  recurrence: {:?}", recurrence.verdict());
        if !stated.passed() {
            println!("  {}", stated.notes().replace('\n', "\n  "));
        }
    }
    Ok(())
}

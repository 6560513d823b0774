//! A parameter sweep written as CSV: counts stay flat in n without
//! perturbation and grow slowly with it.

use expcycles::sweep::{run_sweep, SweepMethod, SweepSpec};
use expcycles::Limits;

fn main() -> Result<(), expcycles::Error> {
    for r in [0, 1] {
        let spec = SweepSpec {
            p_list: vec![3],
            q_list: vec![2],
            n_min: 1,
            n_max: 4,
            k_max: 3,
            r,
            method: if r == 0 {
                SweepMethod::Both
            } else {
                SweepMethod::Brute
            },
            limits: Limits::default(),
        };
        let table = run_sweep(&spec)?;
        table.write_csv(std::io::stdout())?;
    }
    Ok(())
}

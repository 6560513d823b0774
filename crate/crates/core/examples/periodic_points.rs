//! Periodic points of f(x) = q^x mod p^n next to the closed-walk counts that
//! bound them.

use expcycles::census::{closed_walk_trace_all, periodic_points_all};
use expcycles::{build_graph, GraphParams, Limits};

fn main() -> Result<(), expcycles::Error> {
    for (p, n, q) in [(3, 2, 2), (7, 2, 3), (11, 2, 2), (13, 2, 6)] {
        let params = GraphParams::new(p, n, q)?;
        let periodic = periodic_points_all(&params, 4, Limits::default())?;
        let walks = closed_walk_trace_all(&build_graph(&params)?, 4)?;
        println!("Γ{params}");
        for (k, count) in (1..=4).zip(periodic) {
            println!(
                "  k={k}: {count:>4} periodic points <= {} closed walks",
                walks.counts[&k]
            );
        }
    }
    Ok(())
}

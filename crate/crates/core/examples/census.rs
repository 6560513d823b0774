//! Closed-walk counts by brute force and by the level-1 reduction.
//!
//! The reduced count only ever touches a p x p matrix, so it also runs at
//! levels far beyond what the explicit graph allows.

use expcycles::census::{closed_walk_trace_all, reduced_trace, reduced_trace_all};
use expcycles::{build_graph, GraphParams};

fn main() -> Result<(), expcycles::Error> {
    for (p, n, q) in [(3, 5, 2), (5, 3, 2), (7, 3, 2)] {
        let params = GraphParams::new(p, n, q)?;
        let brute = closed_walk_trace_all(&build_graph(&params)?, 5)?;
        let reduced = reduced_trace_all(&params, 5)?;
        println!("Γ{params}, {} vertices", params.modulus());
        for (k, count) in &brute.counts {
            println!("  k={k}: brute {count:>6}  reduced {:>6}", reduced.counts[k]);
        }
        assert!(brute.agrees_with(&reduced));
    }

    let deep = GraphParams::new(3, 20, 2)?;
    println!(
        "Γ{deep} has {} vertices; reduced C(30) = {}",
        deep.modulus(),
        reduced_trace(&deep, 30)?
    );
    Ok(())
}

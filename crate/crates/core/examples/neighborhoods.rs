//! Out-neighborhoods of Γ_{p,n,q}: closed form against the coset walk.
//!
//! cargo run --example neighborhoods -- 7 2 3

use expcycles::graph::{build_graph, out_neighbors_closed_form, out_neighbors_oracle};
use expcycles::GraphParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (p, n, q) = match args[..] {
        [p, n, q] => (p, n as u32, q),
        _ => (3, 2, 2),
    };
    let params = GraphParams::new(p, n, q)?;
    println!(
        "Γ{params}: {} vertices, out-degree ord_p(q) = {}",
        params.modulus(),
        params.order_mod_p()
    );

    let show = params.modulus().min(12);
    for x in 0..show {
        let closed = out_neighbors_closed_form(&params, x)?;
        let oracle = out_neighbors_oracle(&params, x)?;
        println!(
            "  {x:>4} -> {closed:?}{}",
            if closed == oracle {
                ""
            } else {
                "  (oracle differs!)"
            }
        );
    }

    let graph = build_graph(&params)?;
    let loops: Vec<usize> = (0..graph.vertex_count())
        .filter(|&x| graph.has_edge(x, x as u32))
        .collect();
    println!("{} edges; self-loops at {loops:?}", graph.edge_count());
    Ok(())
}

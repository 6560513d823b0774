//! Block decomposition of A_n against A_(n-1), unperturbed and perturbed.

use expcycles::graph::{build_perturbed_graph, check_perturbed_blocks, extract_blocks, Limits};
use expcycles::verify::verify_lemma2;
use expcycles::{build_graph, GraphParams, PerturbParams};

fn main() -> Result<(), expcycles::Error> {
    let params = GraphParams::new(7, 2, 2)?;
    let report = verify_lemma2(&params, Limits::default())?;
    println!("{}", report.to_json());

    let graph = build_graph(&params)?;
    let blocks = extract_blocks(&graph)?;
    println!(
        "block side {}, block 0 row 0: {:?}",
        blocks.block_side, blocks.blocks[0][0]
    );

    for r in 1..=2 {
        let perturbed = PerturbParams::new(GraphParams::new(3, 3, 2)?, r);
        let decomposition = extract_blocks(&build_perturbed_graph(&perturbed)?)?;
        let audit = check_perturbed_blocks(&perturbed, Limits::default())?;
        println!(
            "r={r}: {} residual rows (2rp = {}), colliding residues {:?} -> {:?}",
            decomposition.residual_rows.len(),
            2 * r * 3,
            decomposition.colliding_residues,
            audit.verdict()
        );
    }
    Ok(())
}

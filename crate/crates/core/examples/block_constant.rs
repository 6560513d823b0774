//! Trace identity for block-constant matrices, on a hand-picked noncommuting
//! pair and on seeded random families.

use expcycles::blockalg::{
    assemble_block_constant, block_trace, noncommuting_family, random_block_family, verify_lemma1,
};
use expcycles::verify::{verify_lemma1_suite, Lemma1Suite};

fn main() -> Result<(), expcycles::Error> {
    let family = noncommuting_family();
    let m = assemble_block_constant(&family);
    println!("M = {m:?}");
    for k in 1..=4 {
        println!("  k={k}: block trace of M^k = {:?}", block_trace(&m.pow(k), 2)?);
        assert!(verify_lemma1(&family, k));
    }

    let random = random_block_family(42, 3, 3, 5);
    println!("random family, noncommuting: {}", random.has_noncommuting_pair());
    println!("identity holds for k = 6: {}", verify_lemma1(&random, 6));

    let report = verify_lemma1_suite(&Lemma1Suite::new(100, 1))?;
    println!("{}", report.to_json());
    Ok(())
}

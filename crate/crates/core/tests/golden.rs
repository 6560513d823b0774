use expcycles::{build_graph, build_perturbed_graph, GraphParams, PerturbParams};

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn plain_graphs_match_golden_dumps() {
    for (name, p, n, q) in [("gamma_3_2_2.txt", 3, 2, 2), ("gamma_7_2_3.txt", 7, 2, 3)] {
        let graph = build_graph(&GraphParams::new(p, n, q).unwrap()).unwrap();
        assert_eq!(graph.dump(), golden(name), "{name}");
    }
}

#[test]
fn perturbed_graphs_match_golden_dumps() {
    for (name, p, n, q, r) in [
        ("gamma_plus1_3_2_2.txt", 3, 2, 2, 1),
        ("gamma_plus2_5_2_2.txt", 5, 2, 2, 2),
    ] {
        let params = PerturbParams::new(GraphParams::new(p, n, q).unwrap(), r);
        assert_eq!(
            build_perturbed_graph(&params).unwrap().dump(),
            golden(name),
            "{name}"
        );
    }
}

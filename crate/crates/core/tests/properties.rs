//! Invariants over small parameter sets, checked against independent oracles.

use expcycles::census::{closed_walk_trace_all, periodic_points, reduced_trace};
use expcycles::graph::{build_graph, build_perturbed_graph, out_neighbors_closed_form, out_neighbors_oracle};
use expcycles::ntheory::{euler_phi_prime_power, factorize, is_prime, mod_pow, multiplicative_order};
use expcycles::{GraphParams, PerturbParams};
use num_bigint::BigUint;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

fn arb_params(max_modulus: u64) -> impl Strategy<Value = GraphParams> {
    (prop::sample::select(PRIMES.to_vec()), 1u32..=4, 1u64..200).prop_filter_map("valid", move |(p, n, q)| {
        GraphParams::new(p, n, q)
            .ok()
            .filter(|pr| pr.modulus() <= max_modulus)
    })
}

/// Closed walks by dense 0/1 matrix powering, independent of the per-start DP.
fn dense_trace(out: &[Vec<u32>], k: u32) -> BigUint {
    let v = out.len();
    let mut adj = vec![vec![0u64; v]; v];
    for (x, targets) in out.iter().enumerate() {
        for &t in targets {
            adj[x][t as usize] = 1;
        }
    }
    let mut power: Vec<Vec<BigUint>> = (0..v)
        .map(|i| (0..v).map(|j| BigUint::from(u64::from(i == j))).collect())
        .collect();
    for _ in 0..k {
        let mut next = vec![vec![BigUint::from(0u32); v]; v];
        for i in 0..v {
            for l in 0..v {
                if power[i][l] == BigUint::from(0u32) {
                    continue;
                }
                for j in 0..v {
                    if adj[l][j] == 1 {
                        next[i][j] += &power[i][l];
                    }
                }
            }
        }
        power = next;
    }
    (0..v).map(|i| power[i][i].clone()).sum()
}

/// Order by scanning powers one at a time.
fn scan_order(q: u64, modulus: u64) -> u64 {
    let mut t = 1;
    let mut value = q % modulus;
    while value != 1 {
        value = value * (q % modulus) % modulus;
        t += 1;
    }
    t
}

proptest! {
    #[test]
    fn order_divides_phi_and_matches_scan(params in arb_params(5_000)) {
        let ord = multiplicative_order(params.q(), params.p(), params.n());
        prop_assert_eq!(euler_phi_prime_power(params.p(), params.n()) % ord, 0);
        prop_assert_eq!(ord, scan_order(params.q(), params.modulus()));
    }

    #[test]
    fn order_lifts_by_one_or_p(params in arb_params(100_000).prop_filter("n>=2", |p| p.n() >= 2)) {
        let upper = multiplicative_order(params.q(), params.p(), params.n());
        let lower = multiplicative_order(params.q(), params.p(), params.n() - 1);
        prop_assert!(upper == lower || upper == lower * params.p());
    }

    #[test]
    fn power_is_one_iff_order_divides(params in arb_params(400)) {
        let ord = params.order();
        for t in 0..=params.phi() {
            prop_assert_eq!(mod_pow(params.q(), t, params.modulus()) == 1, t % ord == 0);
        }
    }

    #[test]
    fn factorization_multiplies_back(m in 1u64..2_000_000) {
        let fac = factorize(m).unwrap();
        prop_assert_eq!(fac.product(), m);
        prop_assert!(fac.pairs.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(fac.primes().all(is_prime));
    }

    #[test]
    fn closed_form_equals_coset_oracle(params in arb_params(3_000)) {
        for x in 0..params.modulus() {
            let closed = out_neighbors_closed_form(&params, x).unwrap();
            prop_assert_eq!(closed.len() as u64, params.order_mod_p());
            prop_assert!(closed.iter().all(|t| t % params.p() != 0));
            prop_assert_eq!(closed, out_neighbors_oracle(&params, x).unwrap());
        }
    }

    #[test]
    fn brute_matches_dense_and_reduced(params in arb_params(130), k in 1u32..5) {
        let graph = build_graph(&params).unwrap();
        let census = closed_walk_trace_all(&graph, k).unwrap();
        let brute = census.counts[&k].clone();
        prop_assert_eq!(&brute, &dense_trace(graph.out_lists(), k));
        prop_assert_eq!(&brute, &reduced_trace(&params, k).unwrap());
        prop_assert_eq!(brute, BigUint::from(params.order_mod_p()).pow(k));
    }

    #[test]
    fn periodic_points_bounded_by_walks(params in arb_params(400), k in 1u32..4) {
        let graph = build_graph(&params).unwrap();
        let walks = closed_walk_trace_all(&graph, k).unwrap().counts[&k].clone();
        prop_assert!(BigUint::from(periodic_points(&params, k).unwrap()) <= walks);
    }

    #[test]
    fn radius_zero_is_identity(params in arb_params(2_000)) {
        let plain = build_graph(&params).unwrap();
        prop_assert_eq!(build_perturbed_graph(&PerturbParams::new(params, 0)).unwrap(), plain);
    }

    #[test]
    fn perturbed_counts_respect_ceiling(params in arb_params(60), r in 1u64..3, k in 1u32..4) {
        let graph = build_perturbed_graph(&PerturbParams::new(params, r)).unwrap();
        let bound = (2 * r + 1) * params.order_mod_p();
        prop_assert!(graph.out_lists().iter().all(|l| l.len() as u64 <= bound));
        let count = closed_walk_trace_all(&graph, k).unwrap().counts[&k].clone();
        prop_assert_eq!(&count, &dense_trace(graph.out_lists(), k));
        let ceiling = BigUint::from((2 * r + 1) * (params.p() - 1)).pow(k) * BigUint::from(params.modulus());
        prop_assert!(count <= ceiling);
    }
}

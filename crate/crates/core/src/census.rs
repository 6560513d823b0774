//! Exact closed-walk counts.
//!
//! A k-cycle with a marked initial vertex is a closed walk of length `k`, so
//! the count is `trace(A^k)`. The brute-force route runs a dynamic program from
//! every start vertex over the explicit out-lists. The reduced route never
//! builds the big graph: the trace collapses level by level down to the
//! `p x p` matrix `A_1`, whose power is taken directly.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::blockalg::Matrix;
use crate::error::{Error, Result};
use crate::graph::{build_graph, ExpGraph, Limits};
use crate::ntheory::{mod_pow, GraphParams};
use crate::report::ParamRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    Reduced,
}

/// Closed-walk counts `counts[k]` for `k = 1..=k_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub params: ParamRecord,
    pub method: Method,
    #[serde(serialize_with = "counts_as_strings")]
    pub counts: BTreeMap<u32, BigUint>,
}

fn counts_as_strings<S: Serializer>(counts: &BTreeMap<u32, BigUint>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(counts.iter().map(|(k, v)| (k.to_string(), v.to_str_radix(10))))
}

impl Census {
    pub fn count(&self, k: u32) -> Option<&BigUint> {
        self.counts.get(&k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }

    /// Same counts, regardless of method.
    pub fn agrees_with(&self, other: &Census) -> bool {
        self.counts == other.counts
    }
}

fn graph_record(graph: &ExpGraph) -> ParamRecord {
    ParamRecord {
        r: (graph.r() > 0).then_some(graph.r()),
        ..graph.params().into()
    }
}

/// Number of closed walks of length `k` in `graph`.
pub fn closed_walk_trace(graph: &ExpGraph, k: u32) -> Result<BigUint> {
    let census = closed_walk_trace_all(graph, k)?;
    Ok(census.counts[&k].clone())
}

pub fn closed_walk_trace_all(graph: &ExpGraph, k_max: u32) -> Result<Census> {
    closed_walk_trace_all_with(graph, k_max, Limits::default())
}

/// Closed-walk counts for every `k` in `1..=k_max`, one DP per start vertex.
pub fn closed_walk_trace_all_with(graph: &ExpGraph, k_max: u32, limits: Limits) -> Result<Census> {
    if k_max == 0 {
        return Err(Error::ZeroLength);
    }
    limits.check(graph.vertex_count() as u64)?;
    let totals = if fits_u128(graph, k_max) {
        walk_counts::<u128>(graph, k_max)
    } else {
        walk_counts::<BigUint>(graph, k_max)
    };
    Ok(Census {
        params: graph_record(graph),
        method: Method::Brute,
        counts: (1..=k_max).zip(totals).collect(),
    })
}

/// `V * maxdeg^k_max` bounds every partial sum in the DP.
fn fits_u128(graph: &ExpGraph, k_max: u32) -> bool {
    let degree = graph.max_out_degree().max(1) as f64;
    let vertices = graph.vertex_count().max(1) as f64;
    vertices.log2() + k_max as f64 * degree.log2() < 120.0
}

trait Counter: Clone + Zero + One + Send + Sync + for<'a> AddAssign<&'a Self> + Into<BigUint> {}
impl<T> Counter for T where T: Clone + Zero + One + Send + Sync + for<'a> AddAssign<&'a T> + Into<BigUint> {}

fn walk_counts<T: Counter>(graph: &ExpGraph, k_max: u32) -> Vec<BigUint> {
    let vertices = graph.vertex_count();
    let k_max = k_max as usize;
    let totals = (0..vertices)
        .into_par_iter()
        .map(|start| {
            let mut current = vec![T::zero(); vertices];
            let mut next = vec![T::zero(); vertices];
            current[start] = T::one();
            let mut returns = Vec::with_capacity(k_max);
            for _ in 0..k_max {
                for value in next.iter_mut() {
                    value.set_zero();
                }
                for (v, ways) in current.iter().enumerate() {
                    if ways.is_zero() {
                        continue;
                    }
                    for &t in graph.out(v) {
                        next[t as usize] += ways;
                    }
                }
                std::mem::swap(&mut current, &mut next);
                returns.push(current[start].clone());
            }
            returns
        })
        .reduce(
            || vec![T::zero(); k_max],
            |mut acc, part| {
                for (a, b) in acc.iter_mut().zip(&part) {
                    *a += b;
                }
                acc
            },
        );
    totals.into_iter().map(Into::into).collect()
}

/// The `p x p` 0/1 adjacency matrix of the level-1 graph.
pub fn base_adjacency(params: &GraphParams) -> Matrix {
    let base = build_graph(&params.base_level()).expect("level-1 graph has p vertices");
    let p = params.p() as usize;
    let mut m = Matrix::zeros(p);
    for x in 0..p {
        for &t in base.out(x) {
            m.set(x, t as usize, 1);
        }
    }
    m
}

/// `trace(A_1^k)`; equal to the closed-walk count at any level `n`.
pub fn reduced_trace(params: &GraphParams, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::ZeroLength);
    }
    let trace = base_adjacency(params).pow(k).trace();
    Ok(trace.to_biguint().expect("trace of a nonnegative matrix"))
}

pub fn reduced_trace_all(params: &GraphParams, k_max: u32) -> Result<Census> {
    if k_max == 0 {
        return Err(Error::ZeroLength);
    }
    let a1 = base_adjacency(params);
    let mut power = a1.clone();
    let mut counts = BTreeMap::new();
    for k in 1..=k_max {
        if k > 1 {
            power = &power * &a1;
        }
        counts.insert(k, power.trace().to_biguint().expect("nonnegative"));
    }
    Ok(Census {
        params: params.into(),
        method: Method::Reduced,
        counts,
    })
}

/// `q^x mod p^n`, with the representative `0 <= x < p^n` as exponent.
pub fn f_map(params: &GraphParams, x: u64) -> u64 {
    mod_pow(params.q(), x, params.modulus())
}

/// Number of `x` with `f^k(x) = x`.
pub fn periodic_points(params: &GraphParams, k: u32) -> Result<u64> {
    Ok(periodic_points_all(params, k, Limits::default())?[k as usize - 1])
}

/// Periodic-point counts for every `k` in `1..=k_max`.
pub fn periodic_points_all(params: &GraphParams, k_max: u32, limits: Limits) -> Result<Vec<u64>> {
    if k_max == 0 {
        return Err(Error::ZeroLength);
    }
    let modulus = params.modulus();
    limits.check(modulus)?;
    let k_max = k_max as usize;
    Ok((0..modulus)
        .into_par_iter()
        .map(|x| {
            let mut hits = vec![0u64; k_max];
            let mut y = x;
            for hit in hits.iter_mut() {
                y = f_map(params, y);
                *hit = u64::from(y == x);
            }
            hits
        })
        .reduce(
            || vec![0u64; k_max],
            |mut acc, part| {
                acc.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                acc
            },
        ))
}

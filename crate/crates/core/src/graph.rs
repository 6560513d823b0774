//! The exponentiation graph on `Z_{p^n}` and its additive perturbations.
//!
//! Vertex `x` points at every `q^y mod p^n` with `y = x (mod p^n)`. Two
//! independent formulas produce that set: a closed form over the `p - 1`
//! exponents `x + b p^(n-1)`, and a coset walk that multiplies by
//! `q^(p^n)` until it cycles. The perturbed graph additionally shifts every
//! target by `c` in `-r..=r`.
//!
//! Adjacency is kept as sorted out-lists; nothing here materializes a dense
//! `p^n x p^n` matrix.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntheory::{mod_pow, mul_mod, GraphParams};
use crate::report::{Claim, ParamRecord, VerificationReport};

/// Default cap on the number of vertices of an explicitly built graph.
pub const DEFAULT_MAX_VERTICES: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl Limits {
    pub fn check(&self, vertices: u64) -> Result<()> {
        if vertices > self.max_vertices {
            return Err(Error::VertexGuard {
                vertices,
                limit: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// Graph parameters plus an additive perturbation radius `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PerturbParams {
    pub base: GraphParams,
    pub r: u64,
}

impl PerturbParams {
    pub fn new(base: GraphParams, r: u64) -> Self {
        PerturbParams { base, r }
    }

    pub fn lower(&self) -> Result<PerturbParams> {
        Ok(PerturbParams::new(self.base.lower()?, self.r))
    }
}

fn check_vertex(params: &GraphParams, x: u64) -> Result<()> {
    if x >= params.modulus() {
        return Err(Error::VertexOutOfRange {
            x,
            modulus: params.modulus(),
        });
    }
    Ok(())
}

/// `{ q^(x + b p^(n-1)) mod p^n : b = 0..p-2 }`, sorted and deduplicated.
pub fn out_neighbors_closed_form(params: &GraphParams, x: u64) -> Result<Vec<u64>> {
    check_vertex(params, x)?;
    Ok(closed_form_unchecked(params, x))
}

fn closed_form_unchecked(params: &GraphParams, x: u64) -> Vec<u64> {
    let modulus = params.modulus();
    let step = mod_pow(params.q(), params.block_side(), modulus);
    let mut value = mod_pow(params.q(), x, modulus);
    let mut targets = Vec::with_capacity(params.p() as usize - 1);
    for _ in 0..params.p() - 1 {
        targets.push(value);
        value = mul_mod(value, step, modulus);
    }
    targets.sort_unstable();
    targets.dedup();
    targets
}

/// The coset `{ q^x * m^j mod p^n : j >= 0 }` with `m = q^(p^n)`, walked until
/// it returns to `q^x`.
///
/// This is the edge set read straight off its definition: `q^y` for every
/// integer `y = x + j p^n`.
pub fn out_neighbors_oracle(params: &GraphParams, x: u64) -> Result<Vec<u64>> {
    check_vertex(params, x)?;
    let modulus = params.modulus();
    let start = mod_pow(params.q(), x, modulus);
    let multiplier = mod_pow(params.q(), modulus, modulus);
    let mut targets = vec![start];
    let mut value = mul_mod(start, multiplier, modulus);
    while value != start {
        targets.push(value);
        value = mul_mod(value, multiplier, modulus);
    }
    targets.sort_unstable();
    targets.dedup();
    Ok(targets)
}

/// Explicit directed graph on `0..p^n` with sorted, duplicate-free out-lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpGraph {
    params: GraphParams,
    r: u64,
    out: Vec<Vec<u32>>,
}

impl ExpGraph {
    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    /// Perturbation radius; 0 for the plain graph.
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn out(&self, x: usize) -> &[u32] {
        &self.out[x]
    }

    pub fn out_lists(&self) -> &[Vec<u32>] {
        &self.out
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, from: usize, to: u32) -> bool {
        self.out[from].binary_search(&to).is_ok()
    }

    /// One line per vertex, `<vertex>: <t1> <t2> ...`, vertices ascending.
    pub fn dump(&self) -> String {
        let mut text = String::new();
        for (x, targets) in self.out.iter().enumerate() {
            write!(text, "{x}:").unwrap();
            for t in targets {
                write!(text, " {t}").unwrap();
            }
            text.push('\n');
        }
        text
    }
}

pub fn build_graph(params: &GraphParams) -> Result<ExpGraph> {
    build_graph_with(params, Limits::default())
}

pub fn build_graph_with(params: &GraphParams, limits: Limits) -> Result<ExpGraph> {
    build_perturbed_graph_with(&PerturbParams::new(*params, 0), limits)
}

pub fn build_perturbed_graph(params: &PerturbParams) -> Result<ExpGraph> {
    build_perturbed_graph_with(params, Limits::default())
}

/// Out-list of `x` is `{ (t + c) mod p^n : t in closed form of x, |c| <= r }`.
pub fn build_perturbed_graph_with(params: &PerturbParams, limits: Limits) -> Result<ExpGraph> {
    let base = params.base;
    let modulus = base.modulus();
    limits.check(modulus)?;
    let r = params.r;
    let out = (0..modulus)
        .into_par_iter()
        .map(|x| {
            let targets = closed_form_unchecked(&base, x);
            if r == 0 {
                return targets.into_iter().map(|t| t as u32).collect();
            }
            if 2 * r + 1 >= modulus {
                return (0..modulus as u32).collect();
            }
            let mut shifted: Vec<u32> = targets
                .iter()
                .flat_map(|&t| (0..=2 * r).map(move |s| ((t + modulus + s - r) % modulus) as u32))
                .collect();
            shifted.sort_unstable();
            shifted.dedup();
            shifted
        })
        .collect();
    Ok(ExpGraph { params: base, r, out })
}

/// `x mod p^(n-1)`.
pub fn project(params: &GraphParams, x: u64) -> Result<u64> {
    if params.n() < 2 {
        return Err(Error::NoLowerLevel);
    }
    check_vertex(params, x)?;
    Ok(x % params.block_side())
}

/// Out-neighborhoods agree on each residue class mod `p^(n-1)`.
///
/// One row per residue `y`: observed is the number of distinct out-lists among
/// the `p` lifts of `y` (must be 1). Neighborhoods come from the coset oracle.
pub fn check_fact_i(params: &GraphParams) -> Result<VerificationReport> {
    if params.n() < 2 {
        return Err(Error::NoLowerLevel);
    }
    let side = params.block_side();
    let mut report = VerificationReport::new(Claim::FactI, params.into());
    for y in 0..side {
        let reference = out_neighbors_oracle(params, y)?;
        let mut distinct = vec![reference.clone()];
        for b in 1..params.p() {
            let row = out_neighbors_oracle(params, y + b * side)?;
            if !distinct.contains(&row) {
                if distinct.len() == 1 {
                    report.note(format!(
                        "counterexample: O({y}) = {reference:?} but O({}) = {row:?}",
                        y + b * side
                    ));
                }
                distinct.push(row);
            }
        }
        let count = distinct.len() as u64;
        report.push_row(y, count, 1u32, count == 1);
    }
    Ok(report)
}

/// Reduction mod `p^(n-1)` maps `O^n(y)` one-to-one onto `O^(n-1)(y)`.
///
/// One row per residue `y`: observed is the size of the projected image,
/// bound the size of the lower neighborhood.
pub fn check_fact_ii(params: &GraphParams) -> Result<VerificationReport> {
    let lower = params.lower()?;
    let side = params.block_side();
    let mut report = VerificationReport::new(Claim::FactIi, params.into());
    for y in 0..side {
        let upper = out_neighbors_oracle(params, y)?;
        let below = out_neighbors_oracle(&lower, y)?;
        let mut image: Vec<u64> = upper.iter().map(|t| t % side).collect();
        image.sort_unstable();
        image.dedup();
        let injective = image.len() == upper.len();
        let onto = image == below;
        if !(injective && onto) && report.passed() {
            report.note(format!(
                "counterexample at y = {y}: O^n = {upper:?} projects to {image:?}, O^(n-1) = {below:?}"
            ));
        }
        report.push_row(y, image.len() as u64, below.len() as u64, injective && onto);
    }
    Ok(report)
}

/// Level decomposition of `A_n` into a `p x p` grid of `p^(n-1)`-square blocks.
///
/// Row `x = y + b p^(n-1)` lies in block-row `b`; column block `j` holds targets
/// `z + j p^(n-1)`. `blocks[j][y]` is the sorted `z` list of block `B_j` at row
/// `y`; every block-row repeats the same `B_1 .. B_p`. Rows of `A_n` that do not
/// fit that shape with `sum B_j = A_(n-1)` are listed in `residual_rows`, and
/// for those residues the blocks carry an arbitrary split of `A_(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub block_side: u64,
    pub blocks: Vec<Vec<Vec<u32>>>,
    pub residual_rows: Vec<u64>,
    /// Residues `y` whose rows differ between block-rows.
    pub nonconstant_residues: Vec<u64>,
    /// Residues `y` whose block restrictions collide or miss after projection.
    pub colliding_residues: Vec<u64>,
    /// Residual rows whose `y` lies outside `r <= y <= p^(n-1) - 1 - r`.
    pub residual_outside_clean_range: usize,
}

impl BlockDecomposition {
    /// Entrywise `B_1 + ... + B_p` as sorted `(column, multiplicity)` rows.
    pub fn block_sum(&self) -> Vec<Vec<(u32, u32)>> {
        (0..self.block_side as usize)
            .map(|y| {
                let mut cols: Vec<u32> = self.blocks.iter().flat_map(|b| b[y].iter().copied()).collect();
                cols.sort_unstable();
                let mut row: Vec<(u32, u32)> = Vec::new();
                for c in cols {
                    match row.last_mut() {
                        Some((last, mult)) if *last == c => *mult += 1,
                        _ => row.push((c, 1)),
                    }
                }
                row
            })
            .collect()
    }

    /// Whether the block sum is exactly the 0/1 adjacency of `lower`.
    pub fn block_sum_equals(&self, lower: &ExpGraph) -> bool {
        let sum = self.block_sum();
        sum.len() == lower.vertex_count()
            && sum.iter().enumerate().all(|(y, row)| {
                row.iter().all(|&(_, mult)| mult == 1)
                    && row.iter().map(|&(c, _)| c).eq(lower.out(y).iter().copied())
            })
    }

    /// Row `x` of the block-constant matrix assembled from the blocks.
    pub fn assembled_row(&self, x: u64) -> Vec<u32> {
        let y = (x % self.block_side) as usize;
        let side = self.block_side as u32;
        let mut row: Vec<u32> = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(j, b)| b[y].iter().map(move |&z| z + j as u32 * side))
            .collect();
        row.sort_unstable();
        row
    }
}

/// Splits `graph` (level `n >= 2`) into level blocks against the level `n - 1`
/// graph with the same `q` and `r`.
pub fn extract_blocks(graph: &ExpGraph) -> Result<BlockDecomposition> {
    let params = *graph.params();
    let lower_params = PerturbParams::new(params.lower()?, graph.r());
    let lower = build_perturbed_graph_with(
        &lower_params,
        Limits {
            max_vertices: u64::MAX,
        },
    )?;
    let p = params.p() as usize;
    let side = params.block_side();
    let side_u32 = side as u32;
    let r = graph.r();

    let restrict = |x: u64| -> Vec<Vec<u32>> {
        let mut parts = vec![Vec::new(); p];
        for &t in graph.out(x as usize) {
            parts[(t / side_u32) as usize].push(t % side_u32);
        }
        parts
    };

    let mut blocks = vec![vec![Vec::new(); side as usize]; p];
    let mut residual_rows = Vec::new();
    let mut nonconstant_residues = Vec::new();
    let mut colliding_residues = Vec::new();
    let mut residual_outside_clean_range = 0;

    for y in 0..side {
        let parts = restrict(y);
        let constant = (1..p as u64).all(|b| restrict(y + b * side) == parts);
        let mut projected: Vec<u32> = parts.iter().flatten().copied().collect();
        projected.sort_unstable();
        let exact = projected.windows(2).all(|w| w[0] != w[1]) && projected == lower.out(y as usize);

        if constant && exact {
            for (j, part) in parts.into_iter().enumerate() {
                blocks[j][y as usize] = part;
            }
            continue;
        }
        if !constant {
            nonconstant_residues.push(y);
        }
        if !exact {
            colliding_residues.push(y);
        }
        // The block rows must still sum to A_(n-1): give each lower target to
        // the first block that contains it.
        for &z in lower.out(y as usize) {
            let j = parts.iter().position(|part| part.contains(&z)).unwrap_or(0);
            blocks[j][y as usize].push(z);
        }
        let clean = y >= r && y + r < side;
        for b in 0..p as u64 {
            residual_rows.push(y + b * side);
            if !clean {
                residual_outside_clean_range += 1;
            }
        }
    }
    residual_rows.sort_unstable();

    Ok(BlockDecomposition {
        block_side: side,
        blocks,
        residual_rows,
        nonconstant_residues,
        colliding_residues,
        residual_outside_clean_range,
    })
}

/// Audits the perturbed decomposition: fewer than `2 r p` residual rows
/// (none at all when `r = 0`), with block sums equal to `A_(n-1)`.
pub fn check_perturbed_blocks(params: &PerturbParams, limits: Limits) -> Result<VerificationReport> {
    let graph = build_perturbed_graph_with(params, limits)?;
    let decomposition = extract_blocks(&graph)?;
    let lower = build_perturbed_graph_with(&params.lower()?, limits)?;
    let record = ParamRecord {
        r: Some(params.r),
        ..(&params.base).into()
    };
    let mut report = VerificationReport::new(Claim::PerturbedBlocks, record);
    let observed = decomposition.residual_rows.len() as u64;
    let bound = 2 * params.r * params.base.p();
    let satisfied = if params.r == 0 {
        observed == 0
    } else {
        observed < bound
    };
    report.push_row(params.base.n() as u64, observed, bound, satisfied);
    let sum_ok = decomposition.block_sum_equals(&lower);
    report.push_row(params.base.n() as u64, u64::from(sum_ok), 1u32, sum_ok);
    report.note(format!(
        "residues with rows varying across block-rows: {}; residues with projection collisions: {}; residual rows outside the clean range: {}",
        decomposition.nonconstant_residues.len(),
        decomposition.colliding_residues.len(),
        decomposition.residual_outside_clean_range
    ));
    if !satisfied {
        report.note(format!(
            "{observed} residual rows, not below 2rp = {bound}: block rows sum to A_(n-1) only with collisions"
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: u32, q: u64) -> GraphParams {
        GraphParams::new(p, n, q).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            out_neighbors_closed_form(&params(3, 2, 2), 0).unwrap(),
            vec![1, 8]
        );
        assert_eq!(
            out_neighbors_closed_form(&params(3, 2, 2), 1).unwrap(),
            vec![2, 7]
        );
        assert_eq!(
            out_neighbors_closed_form(&params(3, 1, 2), 0).unwrap(),
            vec![1, 2]
        );
        assert!(out_neighbors_closed_form(&params(3, 2, 2), 9).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(out_neighbors_oracle(&params(3, 2, 2), 5).unwrap(), vec![4, 5]);
        assert_eq!(out_neighbors_oracle(&params(3, 2, 2), 0).unwrap(), vec![1, 8]);
        assert_eq!(out_neighbors_oracle(&params(7, 1, 2), 0).unwrap(), vec![1, 2, 4]);
    }

    #[test]
    fn build_examples() {
        let g = build_graph(&params(3, 1, 2)).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.out_lists().iter().all(|l| l == &[1, 2]));

        let g = build_graph(&params(3, 2, 2)).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert!(g.has_edge(5, 5));

        let g = build_graph(&params(5, 1, 1)).unwrap();
        assert!(g.out_lists().iter().all(|l| l == &[1]));
    }

    #[test]
    fn perturbed_examples() {
        let g = build_perturbed_graph(&PerturbParams::new(params(3, 1, 2), 1)).unwrap();
        assert_eq!(g.out(0), &[0, 1, 2]);
        let g0 = build_perturbed_graph(&PerturbParams::new(params(3, 1, 2), 0)).unwrap();
        assert_eq!(g0, build_graph(&params(3, 1, 2)).unwrap());
        let g = build_perturbed_graph(&PerturbParams::new(params(3, 2, 2), 1)).unwrap();
        assert_eq!(g.out(0), &[0, 1, 2, 7, 8]);
    }

    #[test]
    fn huge_radius_saturates() {
        let g = build_perturbed_graph(&PerturbParams::new(params(3, 1, 2), 50)).unwrap();
        assert!(g.out_lists().iter().all(|l| l == &[0, 1, 2]));
    }

    #[test]
    fn vertex_guard() {
        let err = build_graph_with(&params(3, 5, 2), Limits { max_vertices: 100 }).unwrap_err();
        assert_eq!(
            err,
            Error::VertexGuard {
                vertices: 243,
                limit: 100
            }
        );
    }

    #[test]
    fn project_examples() {
        assert_eq!(project(&params(3, 2, 2), 8).unwrap(), 2);
        assert_eq!(project(&params(3, 2, 2), 2).unwrap(), 2);
        assert_eq!(project(&params(5, 3, 2), 26).unwrap(), 1);
        assert_eq!(project(&params(3, 1, 2), 1), Err(Error::NoLowerLevel));
    }

    #[test]
    fn facts_pass() {
        for (p, n, q) in [(3, 2, 2), (5, 2, 2), (7, 2, 3), (7, 2, 2), (3, 3, 2)] {
            assert!(
                check_fact_i(&params(p, n, q)).unwrap().passed(),
                "fact i {p} {n} {q}"
            );
            assert!(
                check_fact_ii(&params(p, n, q)).unwrap().passed(),
                "fact ii {p} {n} {q}"
            );
        }
        let report = check_fact_ii(&params(7, 2, 2)).unwrap();
        assert!(report.rows().iter().all(|row| row.observed == 3u32.into()));
        assert_eq!(check_fact_i(&params(3, 1, 2)).unwrap_err(), Error::NoLowerLevel);
    }

    #[test]
    fn blocks_unperturbed() {
        let g = build_graph(&params(3, 2, 2)).unwrap();
        let d = extract_blocks(&g).unwrap();
        assert_eq!(d.block_side, 3);
        assert_eq!(d.blocks.len(), 3);
        assert!(d.residual_rows.is_empty());
        assert!(d.block_sum_equals(&build_graph(&params(3, 1, 2)).unwrap()));
        for x in 0..9 {
            assert_eq!(d.assembled_row(x), g.out(x as usize));
        }
        assert_eq!(
            extract_blocks(&build_graph(&params(3, 1, 2)).unwrap()).unwrap_err(),
            Error::NoLowerLevel
        );
    }

    #[test]
    fn blocks_radius_zero_has_no_residual() {
        let g = build_perturbed_graph(&PerturbParams::new(params(3, 2, 2), 0)).unwrap();
        assert!(extract_blocks(&g).unwrap().residual_rows.is_empty());
    }

    #[test]
    fn blocks_perturbed_residual_count() {
        // Every residue collides after projection: A_1 of the r = 1 graph is
        // all ones, so the 5 targets of each row land on 3 columns.
        let pp = PerturbParams::new(params(3, 2, 2), 1);
        let g = build_perturbed_graph(&pp).unwrap();
        let d = extract_blocks(&g).unwrap();
        assert!(d.nonconstant_residues.is_empty());
        assert_eq!(d.colliding_residues, vec![0, 1, 2]);
        assert_eq!(d.residual_rows.len(), 9);
        let lower = build_perturbed_graph(&pp.lower().unwrap()).unwrap();
        assert!(d.block_sum_equals(&lower));

        let report = check_perturbed_blocks(&pp, Limits::default()).unwrap();
        assert!(!report.passed());
        assert_eq!(report.rows()[0].observed, 9u32.into());
        assert_eq!(report.rows()[0].bound, 6u32.into());
    }

    #[test]
    fn dump_format() {
        let g = build_graph(&params(3, 1, 2)).unwrap();
        assert_eq!(g.dump(), "0: 1 2\n1: 1 2\n2: 1 2\n");
    }
}

//! Parameter sweeps producing one row per `(p, n, q, r, k)`.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{closed_walk_trace_all_with, reduced_trace_all, Census};
use crate::error::{Error, Result};
use crate::graph::{build_perturbed_graph_with, Limits, PerturbParams};
use crate::ntheory::{is_prime, GraphParams};
use crate::report::as_decimal;

pub const CSV_HEADER: [&str; 11] = [
    "p",
    "n",
    "q",
    "r",
    "k",
    "count",
    "thm1_bound",
    "ord_pow",
    "thm2_bound",
    "thm1_ok",
    "thm2_ok",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMethod {
    Brute,
    Reduced,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub p_list: Vec<u64>,
    pub q_list: Vec<u64>,
    /// Inclusive; empty when `n_min > n_max`.
    pub n_min: u32,
    pub n_max: u32,
    pub k_max: u32,
    pub r: u64,
    pub method: SweepMethod,
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub r: u64,
    pub k: u32,
    #[serde(serialize_with = "as_decimal")]
    pub count: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub thm1_bound: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub ord_pow: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub thm2_bound: BigUint,
    /// Absent for perturbed rows.
    pub thm1_ok: Option<bool>,
    pub thm2_ok: bool,
}

/// `(p, n, q, k)` of a row.
pub type RowKey = (u64, u32, u64, u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepTable {
    pub method: SweepMethod,
    pub rows: Vec<SweepRow>,
    /// `(p, n, q, k)` where brute force and the reduced trace differ.
    pub disagreements: Vec<RowKey>,
}

impl SweepSpec {
    fn triples(&self) -> Result<Vec<GraphParams>> {
        let mut out = Vec::new();
        for &p in &self.p_list {
            if p == 2 || !is_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
            for n in self.n_min..=self.n_max {
                for &q in &self.q_list {
                    if q % p == 0 {
                        continue;
                    }
                    let params = GraphParams::new(p, n, q)?;
                    if self.method != SweepMethod::Reduced {
                        self.limits.check(params.modulus())?;
                    }
                    out.push(params);
                }
            }
        }
        Ok(out)
    }
}

fn brute(params: &GraphParams, spec: &SweepSpec) -> Result<Census> {
    let graph = build_perturbed_graph_with(&PerturbParams::new(*params, spec.r), spec.limits)?;
    closed_walk_trace_all_with(&graph, spec.k_max, spec.limits)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    if spec.k_max == 0 {
        return Err(Error::ZeroLength);
    }
    if spec.method != SweepMethod::Brute && spec.r > 0 {
        return Err(Error::ReducedNeedsUnperturbed(spec.r));
    }
    let triples = spec.triples()?;
    let per_triple: Vec<(Vec<SweepRow>, Vec<RowKey>)> = triples
        .par_iter()
        .map(|params| {
            let (counts, other) = match spec.method {
                SweepMethod::Brute => (brute(params, spec)?, None),
                SweepMethod::Reduced => (reduced_trace_all(params, spec.k_max)?, None),
                SweepMethod::Both => (brute(params, spec)?, Some(reduced_trace_all(params, spec.k_max)?)),
            };
            let (p, n, q, r) = (params.p(), params.n(), params.q(), spec.r);
            let ord_p = params.order_mod_p();
            let primitive = params.is_primitive_mod_p();
            let mut rows = Vec::new();
            let mut disagreements = Vec::new();
            for (&k, count) in &counts.counts {
                if let Some(other) = &other {
                    if other.counts.get(&k) != Some(count) {
                        disagreements.push((p, n, q, k));
                    }
                }
                let thm1_bound = Pow::pow(BigUint::from(p - 1), k);
                let ord_pow = Pow::pow(BigUint::from(ord_p), k);
                let thm2_bound = BigUint::from(p)
                    + BigUint::from(r * p)
                        * Pow::pow(BigUint::from(2 * p * (2 * r + 1)), k)
                        * BigUint::from(n - 1);
                let thm1_ok = (r == 0).then(|| {
                    if primitive {
                        count == &thm1_bound
                    } else {
                        count <= &thm1_bound
                    }
                });
                rows.push(SweepRow {
                    p,
                    n,
                    q,
                    r,
                    k,
                    thm2_ok: count <= &thm2_bound,
                    count: count.clone(),
                    thm1_bound,
                    ord_pow,
                    thm2_bound,
                    thm1_ok,
                });
            }
            Ok((rows, disagreements))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for (r, d) in per_triple {
        rows.extend(r);
        disagreements.extend(d);
    }
    rows.sort_by_key(|row| (row.p, row.n, row.q, row.r, row.k));
    disagreements.sort_unstable();
    Ok(SweepTable {
        method: spec.method,
        rows,
        disagreements,
    })
}

impl SweepTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        writer.write_record(CSV_HEADER).map_err(csv_err)?;
        let flag = |b: Option<bool>| b.map(|v| v.to_string()).unwrap_or_default();
        for row in &self.rows {
            writer
                .write_record([
                    row.p.to_string(),
                    row.n.to_string(),
                    row.q.to_string(),
                    row.r.to_string(),
                    row.k.to_string(),
                    row.count.to_string(),
                    row.thm1_bound.to_string(),
                    row.ord_pow.to_string(),
                    row.thm2_bound.to_string(),
                    flag(row.thm1_ok),
                    row.thm2_ok.to_string(),
                ])
                .map_err(csv_err)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is ascii")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json() + "\n",
        }
    }
}

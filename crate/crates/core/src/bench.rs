//! Benchmark rows and the greedy comparison heuristic.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::thm1_bound;
use crate::graph::{Edge, Graph};
use crate::oracle::exact_max_capped;
use crate::reducer::{solve, ReduceError};
use crate::unionfind::UnionFind;
use crate::verify::{Kind, Matching};

pub const CSV_HEADER: &str =
    "id,n,m,delta,size,bound,bound_ok,oracle,ratio_bound,ratio_opt,time_ms";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub size: usize,
    pub bound: f64,
    pub bound_ok: bool,
    pub oracle: Option<usize>,
    pub ratio_bound: f64,
    pub ratio_opt: Option<f64>,
    pub time_ms: f64,
}

/// `x` rounded to `digits` significant digits, in positional notation.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let scale = 10f64.powi(digits as i32 - 1 - magnitude as i32);
    let rounded = (x * scale).round() / scale;
    format!("{rounded:.decimals$}")
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.id,
            self.n,
            self.m,
            self.delta,
            self.size,
            significant(self.bound, 6),
            self.bound_ok,
            opt(self.oracle.map(|o| o.to_string())),
            significant(self.ratio_bound, 6),
            opt(self.ratio_opt.map(|r| significant(r, 6))),
            significant(self.time_ms, 6),
        )
    }
}

/// Solves `g`, and also runs the exact acyclic oracle when `oracle_cap` is
/// set and `g` has at most that many vertices.
pub fn bench_instance(
    id: &str,
    g: &Graph,
    oracle_cap: Option<usize>,
) -> Result<BenchRow, ReduceError> {
    let start = Instant::now();
    let report = solve(g)?;
    let time_ms = start.elapsed().as_secs_f64() * 1e3;
    let bound = if report.n0 == 0 {
        0.0
    } else {
        thm1_bound(report.n0 as u64, report.delta as u64)
    };
    let oracle = oracle_cap
        .filter(|&cap| g.vertex_count() <= cap)
        .and_then(|cap| exact_max_capped(g, Kind::Acyclic, cap).ok())
        .map(|r| r.optimum);
    let size = report.size();
    let ratio = |den: f64| if den > 0.0 { size as f64 / den } else { 1.0 };
    Ok(BenchRow {
        id: id.to_string(),
        n: report.n0,
        m: report.m0,
        delta: report.delta,
        size,
        bound,
        bound_ok: report.certified(),
        oracle,
        ratio_bound: ratio(bound),
        ratio_opt: oracle.map(|o| ratio(o as f64)),
        time_ms,
    })
}

/// Rows in input order; instances run in parallel.
pub fn bench_all(
    instances: &[(String, Graph)],
    oracle_cap: Option<usize>,
) -> Vec<Result<BenchRow, ReduceError>> {
    instances
        .par_iter()
        .map(|(id, g)| bench_instance(id, g, oracle_cap))
        .collect()
}

/// Scans edges lexicographically, keeping each edge whose addition leaves an
/// acyclic matching.
pub fn greedy_acyclic(g: &Graph) -> Matching {
    let n = g.vertex_count();
    let mut matched = vec![false; n];
    let mut uf = UnionFind::new(n);
    let mut kept: Vec<Edge> = Vec::new();
    for e in g.edges() {
        let (u, v) = e.endpoints();
        if matched[u] || matched[v] {
            continue;
        }
        let snapshot = uf.snapshot();
        uf.union(u, v);
        let closes_cycle = [u, v].iter().any(|&x| {
            g.neighbors(x)
                .iter()
                .filter(|&&y| matched[y])
                .any(|&y| !uf.union(x, y))
        });
        if closes_cycle {
            uf.rollback(snapshot);
        } else {
            matched[u] = true;
            matched[v] = true;
            kept.push(e);
        }
    }
    Matching::from_edges(kept).expect("greedy keeps disjoint edges")
}

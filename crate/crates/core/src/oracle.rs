//! Exact maximum matchings of each kind by branch and bound, for small
//! graphs.
//!
//! Edges are branched on in order of descending degree sum, then
//! lexicographically. Every kind is closed under taking subsets, so a
//! partial matching that fails its check is never extended.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::unionfind::UnionFind;
use crate::verify::{check, Kind, Matching};

pub const DEFAULT_CAP: usize = 20;
const MASK_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("kind `degenerate` needs k")]
    MissingK,
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
}

/// Parses `plain`, `acyclic`, `induced` or `degenerate` (which takes `k`).
pub fn parse_kind(name: &str, k: Option<usize>) -> Result<Kind, OracleError> {
    match name {
        "plain" => Ok(Kind::Plain),
        "acyclic" => Ok(Kind::Acyclic),
        "induced" => Ok(Kind::Induced),
        "degenerate" => k.map(Kind::Degenerate).ok_or(OracleError::MissingK),
        other => Err(OracleError::UnknownKind(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: Matching,
    #[serde(rename = "nodes")]
    pub nodes_explored: u64,
}

pub fn exact_max(g: &Graph, kind: Kind) -> Result<OracleResult, OracleError> {
    exact_max_capped(g, kind, DEFAULT_CAP)
}

/// As [`exact_max`] with an explicit vertex cap (at most 64).
pub fn exact_max_capped(g: &Graph, kind: Kind, cap: usize) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    let cap = cap.min(MASK_BITS);
    if n > cap {
        return Err(OracleError::TooLarge { n, cap });
    }
    let mut order: Vec<Edge> = g.edges().collect();
    order.sort_by_key(|e| (std::cmp::Reverse(g.degree(e.u()) + g.degree(e.v())), *e));
    let adj = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut search = Search {
        g,
        kind,
        order,
        adj,
        vm: 0,
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        uf: UnionFind::new(n),
    };
    search.branch(0);
    let witness = Matching::from_edges(search.best.iter().copied()).expect("disjoint edges");
    debug_assert!(check(kind, g, witness.edges()).is_ok());
    Ok(OracleResult {
        optimum: witness.len(),
        witness,
        nodes_explored: search.nodes,
    })
}

struct Search<'g> {
    g: &'g Graph,
    kind: Kind,
    order: Vec<Edge>,
    adj: Vec<u64>,
    vm: u64,
    chosen: Vec<Edge>,
    best: Vec<Edge>,
    nodes: u64,
    uf: UnionFind,
}

impl Search<'_> {
    fn branch(&mut self, i: usize) {
        self.nodes += 1;
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let free = self.g.vertex_count() - self.vm.count_ones() as usize;
        let room = (free / 2).min(self.order.len() - i);
        if i == self.order.len() || self.chosen.len() + room <= self.best.len() {
            return;
        }
        let e = self.order[i];
        let bits = 1u64 << e.u() | 1u64 << e.v();
        if self.vm & bits == 0 {
            let snapshot = self.uf.snapshot();
            if self.admits(e) {
                self.vm |= bits;
                self.chosen.push(e);
                self.branch(i + 1);
                self.chosen.pop();
                self.vm &= !bits;
            }
            self.uf.rollback(snapshot);
        }
        self.branch(i + 1);
    }

    /// Whether `chosen + e` still has the kind's property. For acyclic
    /// matchings this also records the new induced edges in the union-find,
    /// which the caller rolls back.
    fn admits(&mut self, e: Edge) -> bool {
        let (u, v) = e.endpoints();
        match self.kind {
            Kind::Plain => true,
            Kind::Induced => (self.adj[u] | self.adj[v]) & self.vm == 0,
            Kind::Acyclic => {
                self.uf.union(u, v);
                for x in [u, v] {
                    let mut seen = self.adj[x] & self.vm;
                    while seen != 0 {
                        let y = seen.trailing_zeros() as usize;
                        seen &= seen - 1;
                        if !self.uf.union(x, y) {
                            return false;
                        }
                    }
                }
                true
            }
            Kind::Degenerate(k) => self.peels(self.vm | 1 << u | 1 << v, k),
        }
    }

    /// Whether the subgraph induced by `set` empties under repeated removal
    /// of vertices of degree at most `k`.
    fn peels(&self, mut set: u64, k: usize) -> bool {
        loop {
            let mut removed = false;
            let mut rest = set;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.adj[x] & set).count_ones() as usize <= k {
                    set &= !(1 << x);
                    removed = true;
                }
            }
            if set == 0 {
                return true;
            }
            if !removed {
                return false;
            }
        }
    }
}

//! Immutable simple undirected graphs with sorted adjacency.
//!
//! Vertices are dense identifiers `0..n`. Every operation that drops vertices
//! returns a [`Relabel`] so callers can translate results back to the
//! identifiers of the graph they started from.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Fails on a self-loop.
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn contains(self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: usize) -> usize {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

/// Sorted, duplicate-free set of vertex identifiers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut vs: Vec<usize>) -> Self {
        vs.sort_unstable();
        vs.dedup();
        VertexSet(vs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Maps every element through `f`, re-sorting the result.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> VertexSet {
        VertexSet::from_unsorted(self.0.iter().map(|&v| f(v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        VertexSet::from_unsorted(out)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

/// Order-preserving map from the vertices of a derived graph back to the
/// vertices of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    new_to_old: Vec<usize>,
}

impl Relabel {
    pub fn identity(n: usize) -> Self {
        Relabel {
            new_to_old: (0..n).collect(),
        }
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.new_to_old
    }

    pub fn len(&self) -> usize {
        self.new_to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_to_old.is_empty()
    }

    /// `self` maps child→parent, `parent` maps parent→root; the result maps
    /// child→root.
    pub fn compose(&self, parent: &Relabel) -> Relabel {
        Relabel {
            new_to_old: self.new_to_old.iter().map(|&v| parent.to_old(v)).collect(),
        }
    }
}

/// Undirected simple graph in compressed sparse row form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge order does not matter.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            normalized.push(Edge::new(a, b)?);
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted_edges(n, &normalized))
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    // `edges` must be sorted, normalized and duplicate-free.
    fn from_sorted_edges(n: usize, edges: &[Edge]) -> Self {
        let mut lower = vec![0usize; n];
        let mut degree = vec![0usize; n];
        for e in edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
            lower[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        // For vertex x the lower neighbors arrive as edges (y, x) in ascending
        // y, the upper ones as (x, z) in ascending z, so two cursors per
        // vertex produce sorted lists.
        let mut low_cursor = offsets[..n].to_vec();
        let mut high_cursor: Vec<usize> = (0..n).map(|x| offsets[x] + lower[x]).collect();
        let mut targets = vec![0usize; 2 * edges.len()];
        for e in edges {
            targets[high_cursor[e.u]] = e.v;
            high_cursor[e.u] += 1;
            targets[low_cursor[e.v]] = e.u;
            low_cursor[e.v] += 1;
        }
        Graph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge { u, v })
        })
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet(
            (0..self.vertex_count())
                .filter(|&v| self.degree(v) == 0)
                .collect(),
        )
    }

    fn check_vertices(&self, vs: &VertexSet) -> Result<(), GraphError> {
        match vs.as_slice().last() {
            Some(&v) if v >= self.vertex_count() => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    /// The subgraph induced by `keep`, relabeled in ascending order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Relabel), GraphError> {
        self.check_vertices(keep)?;
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        Ok(self.induce_by_ids(&new_id, keep.as_slice().to_vec()))
    }

    /// `G - remove`.
    pub fn remove_vertices(&self, remove: &VertexSet) -> Result<(Graph, Relabel), GraphError> {
        self.check_vertices(remove)?;
        let mut dropped = vec![false; self.vertex_count()];
        for v in remove.iter() {
            dropped[v] = true;
        }
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        let mut kept = Vec::with_capacity(self.vertex_count() - remove.len());
        for v in 0..self.vertex_count() {
            if !dropped[v] {
                new_id[v] = kept.len();
                kept.push(v);
            }
        }
        Ok(self.induce_by_ids(&new_id, kept))
    }

    fn induce_by_ids(&self, new_id: &[usize], kept: Vec<usize>) -> (Graph, Relabel) {
        let mut offsets = Vec::with_capacity(kept.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for &old in &kept {
            // Relabeling is monotone, so mapped neighbor lists stay sorted.
            targets.extend(
                self.neighbors(old)
                    .iter()
                    .map(|&w| new_id[w])
                    .filter(|&w| w != usize::MAX),
            );
            offsets.push(targets.len());
        }
        (Graph { offsets, targets }, Relabel { new_to_old: kept })
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            out.push(VertexSet::from_unsorted(comp));
        }
        out
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in self.edges() {
            uf.union(e.u, e.v);
        }
        uf.set_count()
    }

    /// A graph is a forest iff `m = n - c`.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.vertex_count()
    }

    /// Smallest `k` such that repeatedly deleting a vertex of degree at most
    /// `k` empties the graph, computed by min-degree peeling with buckets.
    pub fn degeneracy(&self) -> usize {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let max_deg = *degree.iter().max().unwrap();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
        for v in 0..n {
            buckets[degree[v]].push(v);
        }
        let mut removed = vec![false; n];
        let mut best = 0;
        let mut cursor = 0;
        for _ in 0..n {
            // Stale bucket entries are skipped lazily.
            let v = loop {
                while buckets[cursor].is_empty() {
                    cursor += 1;
                }
                let v = buckets[cursor].pop().unwrap();
                if !removed[v] && degree[v] == cursor {
                    break v;
                }
            };
            best = best.max(cursor);
            removed[v] = true;
            for &w in self.neighbors(v) {
                if !removed[w] {
                    degree[w] -= 1;
                    buckets[degree[w]].push(w);
                    if degree[w] < cursor {
                        cursor = degree[w];
                    }
                }
            }
        }
        best
    }
}

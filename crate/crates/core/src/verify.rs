//! Certificate checks for plain, acyclic, induced, k-degenerate and corona
//! matchings.
//!
//! Every check returns `Ok(())` or a [`Violation`] carrying a witness that can
//! be printed as JSON: the offending edge, the cycle, the vertex with the
//! wrong degree, or the subgraph whose minimum degree exceeds `k`.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::graph::{Edge, Graph, VertexSet};
use crate::unionfind::UnionFind;

/// Vertex-disjoint edges with a partner lookup.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<Edge>,
    partner: BTreeMap<usize, usize>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Result<Self, Violation> {
        let mut m = Matching::new();
        for e in edges {
            m.insert(e)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, e: Edge) -> Result<(), Violation> {
        for x in [e.u(), e.v()] {
            if self.partner.contains_key(&x) {
                return Err(Violation::SharedVertex { vertex: x });
            }
        }
        self.partner.insert(e.u(), e.v());
        self.partner.insert(e.v(), e.u());
        let at = self.edges.partition_point(|f| *f < e);
        self.edges.insert(at, e);
        Ok(())
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        match self.edges.binary_search(&e) {
            Ok(i) => {
                self.edges.remove(i);
                self.partner.remove(&e.u());
                self.partner.remove(&e.v());
                true
            }
            Err(_) => false,
        }
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.partner.get(&v).copied()
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.partner.contains_key(&v)
    }

    /// V_M, the matched vertices.
    pub fn vertices(&self) -> VertexSet {
        self.partner.keys().copied().collect()
    }

    /// Renames every endpoint through `f`. `f` must be injective.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Matching {
        Matching::from_edges(
            self.edges
                .iter()
                .map(|e| Edge::new(f(e.u()), f(e.v())).expect("injective relabel")),
        )
        .expect("injective relabel keeps edges disjoint")
    }

    /// Union with a matching on disjoint vertices.
    pub fn extend(&mut self, other: &Matching) -> Result<(), Violation> {
        for &e in other.edges() {
            self.insert(e)?;
        }
        Ok(())
    }
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.edges.serialize(s)
    }
}

/// Why a candidate failed a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    VertexOutOfRange {
        vertex: usize,
    },
    AbsentEdge {
        edge: Edge,
    },
    SharedVertex {
        vertex: usize,
    },
    /// A cycle inside the graph induced by the matched vertices.
    Cycle {
        edges: Vec<Edge>,
    },
    /// A matched vertex whose degree in the induced graph is not 1.
    WrongDegree {
        vertex: usize,
        degree: usize,
    },
    /// Vertex set inducing a subgraph of minimum degree above `k`.
    DegeneracyExceeded {
        k: usize,
        core: VertexSet,
    },
    NotCorona {
        vertex: usize,
        reason: CoronaDefect,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoronaDefect {
    /// Degree ≥ 2 vertex without exactly one pendant neighbor.
    PendantCount,
    /// Both endpoints of a matched edge have degree ≥ 2.
    NoPendantEndpoint,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Violation::AbsentEdge { edge } => write!(f, "edge {edge} not in graph"),
            Violation::SharedVertex { vertex } => write!(f, "vertex {vertex} matched twice"),
            Violation::Cycle { edges } => write!(f, "induced cycle of length {}", edges.len()),
            Violation::WrongDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has induced degree {degree}")
            }
            Violation::DegeneracyExceeded { k, core } => {
                write!(f, "{} vertices induce minimum degree above {k}", core.len())
            }
            Violation::NotCorona { vertex, reason } => {
                write!(f, "corona structure broken at vertex {vertex}: {reason:?}")
            }
        }
    }
}

impl std::error::Error for Violation {}

/// The matching classes that the oracle and the CLI can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Plain,
    Acyclic,
    Induced,
    Degenerate(usize),
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Plain => "plain",
            Kind::Acyclic => "acyclic",
            Kind::Induced => "induced",
            Kind::Degenerate(_) => "degenerate",
        }
    }
}

pub fn check(kind: Kind, g: &Graph, edges: &[Edge]) -> Result<(), Violation> {
    match kind {
        Kind::Plain => check_matching(g, edges),
        Kind::Acyclic => check_acyclic(g, edges),
        Kind::Induced => check_induced(g, edges),
        Kind::Degenerate(k) => check_k_degenerate(g, edges, k),
    }
}

pub fn check_matching(g: &Graph, edges: &[Edge]) -> Result<(), Violation> {
    let mut used = vec![false; g.vertex_count()];
    for &e in edges {
        for x in [e.u(), e.v()] {
            if x >= g.vertex_count() {
                return Err(Violation::VertexOutOfRange { vertex: x });
            }
        }
        if !g.has_edge(e.u(), e.v()) {
            return Err(Violation::AbsentEdge { edge: e });
        }
        for x in [e.u(), e.v()] {
            if std::mem::replace(&mut used[x], true) {
                return Err(Violation::SharedVertex { vertex: x });
            }
        }
    }
    Ok(())
}

fn matched_vertices(edges: &[Edge]) -> VertexSet {
    edges.iter().flat_map(|e| [e.u(), e.v()]).collect()
}

pub fn check_acyclic(g: &Graph, edges: &[Edge]) -> Result<(), Violation> {
    check_matching(g, edges)?;
    match induced_cycle(g, &matched_vertices(edges)) {
        Some(cycle) => Err(Violation::Cycle { edges: cycle }),
        None => Ok(()),
    }
}

/// A cycle in `g[vs]`, in original identifiers, if one exists.
pub fn induced_cycle(g: &Graph, vs: &VertexSet) -> Option<Vec<Edge>> {
    let (h, map) = g.induced_subgraph(vs).expect("vertices validated");
    let mut uf = UnionFind::new(h.vertex_count());
    let mut forest: Vec<Vec<usize>> = vec![Vec::new(); h.vertex_count()];
    for e in h.edges() {
        let (a, b) = e.endpoints();
        if !uf.union(a, b) {
            let path = forest_path(&forest, a, b);
            let mut cycle: Vec<Edge> = path
                .windows(2)
                .map(|w| Edge::new(map.to_old(w[0]), map.to_old(w[1])).unwrap())
                .collect();
            cycle.push(Edge::new(map.to_old(a), map.to_old(b)).unwrap());
            return Some(cycle);
        }
        forest[a].push(b);
        forest[b].push(a);
    }
    None
}

fn forest_path(forest: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; forest.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &forest[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    path
}

pub fn check_induced(g: &Graph, edges: &[Edge]) -> Result<(), Violation> {
    check_matching(g, edges)?;
    let vs = matched_vertices(edges);
    for v in vs.iter() {
        let degree = g.neighbors(v).iter().filter(|&&w| vs.contains(w)).count();
        if degree != 1 {
            return Err(Violation::WrongDegree { vertex: v, degree });
        }
    }
    Ok(())
}

pub fn check_k_degenerate(g: &Graph, edges: &[Edge], k: usize) -> Result<(), Violation> {
    check_matching(g, edges)?;
    let vs = matched_vertices(edges);
    let (h, map) = g.induced_subgraph(&vs).expect("vertices validated");
    if h.degeneracy() <= k {
        return Ok(());
    }
    // Peel everything of degree ≤ k; what survives has minimum degree > k.
    let n = h.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] <= k).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in h.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == k {
                    stack.push(w);
                }
            }
        }
    }
    let core = (0..n)
        .filter(|&v| alive[v])
        .map(|v| map.to_old(v))
        .collect();
    Err(Violation::DegeneracyExceeded { k, core })
}

/// The graph induced by V_M is a corona of a forest with the matched edges as
/// its pendant edges: every vertex of induced degree ≥ 2 has exactly one
/// neighbor of induced degree 1, and that neighbor is its partner; every
/// matched edge has an endpoint of induced degree 1.
pub fn check_corona(g: &Graph, edges: &[Edge]) -> Result<(), Violation> {
    check_acyclic(g, edges)?;
    let vs = matched_vertices(edges);
    let mut partner = BTreeMap::new();
    for e in edges {
        partner.insert(e.u(), e.v());
        partner.insert(e.v(), e.u());
    }
    let inside = |v: usize| g.neighbors(v).iter().copied().filter(|&w| vs.contains(w));
    let degree = |v: usize| inside(v).count();
    for v in vs.iter() {
        if degree(v) < 2 {
            continue;
        }
        let pendants: Vec<usize> = inside(v).filter(|&w| degree(w) == 1).collect();
        if pendants.len() != 1 {
            return Err(Violation::NotCorona {
                vertex: v,
                reason: CoronaDefect::PendantCount,
            });
        }
        // A matched vertex of induced degree 1 sees only its partner, so the
        // single pendant neighbor is necessarily v's partner.
        debug_assert_eq!(partner[&v], pendants[0]);
    }
    for e in edges {
        if degree(e.u()) != 1 && degree(e.v()) != 1 {
            return Err(Violation::NotCorona {
                vertex: e.u(),
                reason: CoronaDefect::NoPendantEndpoint,
            });
        }
    }
    Ok(())
}

pub fn is_matching(g: &Graph, edges: &[Edge]) -> bool {
    check_matching(g, edges).is_ok()
}

pub fn is_acyclic_matching(g: &Graph, edges: &[Edge]) -> bool {
    check_acyclic(g, edges).is_ok()
}

pub fn is_induced_matching(g: &Graph, edges: &[Edge]) -> bool {
    check_induced(g, edges).is_ok()
}

pub fn is_k_degenerate_matching(g: &Graph, edges: &[Edge], k: usize) -> bool {
    check_k_degenerate(g, edges, k).is_ok()
}

pub fn is_corona_forest(g: &Graph, edges: &[Edge]) -> bool {
    check_corona(g, edges).is_ok()
}

use crate::graph::{Graph, VertexSet};

use super::ReduceError;

/// Low-degree structure of one residual graph under the fixed degree cap Δ.
///
/// `S` holds the vertices with `deg² ≤ Δ`, `N` the vertices with a neighbor
/// in `S`, and `d_S(v)` counts the `S`-neighbors of `v`.
#[derive(Debug, Clone)]
pub struct StageContext<'g> {
    graph: &'g Graph,
    delta: usize,
    in_s: Vec<bool>,
    s: VertexSet,
    n_set: VertexSet,
    d_s: Vec<usize>,
    alpha_max_num: usize,
}

impl<'g> StageContext<'g> {
    pub fn new(graph: &'g Graph, delta: usize) -> Result<Self, ReduceError> {
        if graph.max_degree() > delta {
            return Err(ReduceError::PreconditionViolated(
                "degree cap below the maximum degree of the graph",
            ));
        }
        let n = graph.vertex_count();
        let in_s: Vec<bool> = (0..n)
            .map(|v| graph.degree(v) * graph.degree(v) <= delta)
            .collect();
        let d_s: Vec<usize> = (0..n)
            .map(|v| graph.neighbors(v).iter().filter(|&&w| in_s[w]).count())
            .collect();
        let s = (0..n).filter(|&v| in_s[v]).collect();
        let n_set = (0..n).filter(|&v| d_s[v] > 0).collect();
        let alpha_max_num = d_s.iter().copied().max().unwrap_or(0);
        Ok(StageContext {
            graph,
            delta,
            in_s,
            s,
            n_set,
            d_s,
            alpha_max_num,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn in_s(&self, v: usize) -> bool {
        self.in_s[v]
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn n_set(&self) -> &VertexSet {
        &self.n_set
    }

    pub fn d_s(&self, v: usize) -> usize {
        self.d_s[v]
    }

    /// `max_v d_S(v)`, i.e. `α·Δ`.
    pub fn alpha_max_num(&self) -> usize {
        self.alpha_max_num
    }

    /// Smallest-index vertex attaining [`Self::alpha_max_num`].
    pub fn argmax_d_s(&self) -> Option<usize> {
        if self.alpha_max_num == 0 {
            return None;
        }
        self.d_s.iter().position(|&d| d == self.alpha_max_num)
    }

    /// `0.2Δ ≤ α·Δ ≤ 0.8Δ`, with both boundaries included.
    pub fn alpha_in_range(&self) -> bool {
        let a = 5 * self.alpha_max_num;
        self.delta <= a && a <= 4 * self.delta
    }

    pub fn s_is_independent(&self) -> bool {
        self.s
            .iter()
            .all(|v| self.graph.neighbors(v).iter().all(|&w| !self.in_s[w]))
    }

    /// `5·d_S(v) ≥ Δ`.
    pub fn heavy(&self, v: usize) -> bool {
        5 * self.d_s[v] >= self.delta
    }
}

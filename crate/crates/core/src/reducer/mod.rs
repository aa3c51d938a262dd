//! The stage-by-stage reduction that builds a large acyclic matching.
//!
//! Each stage picks a matching `M` in the current residual graph, commits it,
//! and deletes `V_M ∪ N_M ∪ I_M`: the matched vertices, their neighbors, and
//! whatever that leaves isolated. Because `N_M` is deleted, matched vertices
//! of different stages are never adjacent, so the union of the stage
//! matchings stays acyclic. The degree cap Δ is taken from the input and
//! kept for every stage.
//!
//! Rule priority per stage:
//! 1. a component with maximum degree ≤ 2 is handled by walking it;
//! 2. an edge with `(deg u + deg v)² ≤ 4Δ`;
//! 3. if no vertex has `deg² ≤ Δ`, an edge at a minimum-degree vertex;
//! 4. if `5·max d_S ∉ [Δ, 4Δ]`, the edge from the `d_S`-maximizer to its
//!    minimum-degree neighbor;
//! 5. otherwise the local search of [`local_search`].

pub mod context;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod local_search;
pub mod partition;
pub mod rules;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{le_plus_sqrt_wide, meets_thm1, stage_budget_ok};
use crate::graph::{Edge, Graph, Relabel, VertexSet};
use crate::verify::{check_acyclic, check_corona, check_matching, Matching, Violation};

pub use context::StageContext;
pub use local_search::{apply_move, find_improving_move, Move};
pub use partition::{analyze_stage, PartitionChecks, PartitionSummary, StagePartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("component has a vertex of degree above 2")]
    DegreeTooHigh,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("move no longer applies to this matching")]
    StaleMove,
    #[error("matching is not a committed local-search stage")]
    NotCommittedStage,
    #[error("not a matching: {0}")]
    NotAMatching(Violation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    LowDegreeComponent,
    Claim1,
    Claim3,
    Claim2,
    LocalSearch,
}

/// `V_M`, `N_M` and `I_M` of a matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub vm: VertexSet,
    pub nm: VertexSet,
    pub im: VertexSet,
}

impl Closure {
    pub fn removed(&self) -> usize {
        self.vm.len() + self.nm.len() + self.im.len()
    }

    pub fn all(&self) -> VertexSet {
        self.vm.union(&self.nm).union(&self.im)
    }
}

/// Matched vertices, their unmatched neighbors, and the vertices isolated in
/// `G − (V_M ∪ N_M)`.
pub fn closure(g: &Graph, m: &Matching) -> Result<Closure, ReduceError> {
    check_matching(g, m.edges()).map_err(ReduceError::NotAMatching)?;
    let n = g.vertex_count();
    let mut gone = vec![false; n];
    let vm = m.vertices();
    for v in vm.iter() {
        gone[v] = true;
    }
    let nm: VertexSet = vm
        .iter()
        .flat_map(|v| g.neighbors(v).iter().copied())
        .filter(|&w| !gone[w])
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    for w in nm.iter() {
        gone[w] = true;
    }
    // Only neighbors of N_M can lose all their neighbors.
    let im: VertexSet = nm
        .iter()
        .flat_map(|w| g.neighbors(w).iter().copied())
        .filter(|&x| !gone[x] && g.neighbors(x).iter().all(|&y| gone[y]))
        .collect();
    Ok(Closure { vm, nm, im })
}

/// One committed stage, in the labels of the solver's input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageOutcome {
    pub rule: Rule,
    pub matching: Matching,
    pub vm: VertexSet,
    pub nm: VertexSet,
    pub im: VertexSet,
    pub removed: usize,
    /// Improving moves applied (local-search stages only).
    pub moves: usize,
    /// `6·removed ≤ |M|(Δ² + 12Δ^{3/2})`.
    pub budget_ok: bool,
    /// The tighter bound of the rule that fired, where it has one.
    pub rule_budget_ok: bool,
    pub partition: Option<PartitionSummary>,
}

impl StageOutcome {
    pub fn certified(&self) -> bool {
        self.budget_ok && self.rule_budget_ok && self.partition.is_none_or(|p| p.checks.all())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub matching: Matching,
    pub stages: Vec<StageOutcome>,
    /// Vertex count after dropping isolated vertices.
    pub n0: usize,
    pub m0: usize,
    pub delta: usize,
    /// Isolated vertices of the input, excluded from `n0`.
    pub isolated: VertexSet,
    /// `|matching| ≥ 6·n0 / (Δ² + 12Δ^{3/2})`, decided exactly.
    pub bound_ok: bool,
}

impl SolveReport {
    pub fn size(&self) -> usize {
        self.matching.len()
    }

    /// The final bound and every per-stage check hold.
    pub fn certified(&self) -> bool {
        self.bound_ok && self.stages.iter().all(StageOutcome::certified)
    }

    pub fn trace(&self) -> Trace {
        Trace {
            n0: self.n0,
            m0: self.m0,
            delta: self.delta,
            size: self.size(),
            bound_ok: self.bound_ok,
            stages: self
                .stages
                .iter()
                .map(|s| StageTrace {
                    rule: s.rule,
                    m_edges: s.matching.len(),
                    removed: s.removed,
                    vm: s.vm.len(),
                    nm: s.nm.len(),
                    im: s.im.len(),
                    budget_ok: s.budget_ok && s.rule_budget_ok,
                    partition: s.partition,
                })
                .collect(),
        }
    }
}

/// Serializable summary of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub n0: usize,
    pub m0: usize,
    pub delta: usize,
    pub size: usize,
    pub bound_ok: bool,
    pub stages: Vec<StageTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageTrace {
    pub rule: Rule,
    pub m_edges: usize,
    pub removed: usize,
    pub vm: usize,
    pub nm: usize,
    pub im: usize,
    /// General and rule-specific budgets both hold.
    pub budget_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSummary>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Compute the [`StagePartition`] of every local-search stage.
    pub analyze: bool,
}

pub fn solve(g: &Graph) -> Result<SolveReport, ReduceError> {
    solve_with(g, SolveOptions::default())
}

struct Selected {
    rule: Rule,
    matching: Matching,
    moves: usize,
    partition: Option<PartitionSummary>,
}

fn select(g: &Graph, delta: usize, opts: SolveOptions) -> Result<Selected, ReduceError> {
    let single = |rule, e: Edge| Selected {
        rule,
        matching: Matching::from_edges([e]).unwrap(),
        moves: 0,
        partition: None,
    };
    for comp in g.components() {
        if comp.iter().all(|v| g.degree(v) <= 2) {
            let (sub, map) = g
                .induced_subgraph(&comp)
                .expect("component vertices are in range");
            // With Δ ≤ 2 the whole input is paths and cycles and the walk may
            // take a maximum matching; otherwise keep the corona shape.
            let m = if delta <= 2 {
                rules::extract_low_degree(&sub)?
            } else {
                rules::extract_corona_low_degree(&sub)?
            };
            return Ok(Selected {
                rule: Rule::LowDegreeComponent,
                matching: m.map(|v| map.to_old(v)),
                moves: 0,
                partition: None,
            });
        }
    }
    let ctx = StageContext::new(g, delta)?;
    if let Some(e) = rules::find_claim1_edge(&ctx) {
        return Ok(single(Rule::Claim1, e));
    }
    if ctx.s().is_empty() {
        return Ok(single(Rule::Claim3, rules::find_claim3_edge(&ctx)?));
    }
    if !ctx.alpha_in_range() {
        return Ok(single(Rule::Claim2, rules::find_claim2_edge(&ctx)?));
    }
    let opt = local_search::local_search(&ctx)?;
    let partition = if opts.analyze {
        let p = analyze_stage(&ctx, &opt.matching)?;
        if !p.locally_optimal {
            return Err(ReduceError::InvariantViolation(
                "local search stopped before a local optimum".into(),
            ));
        }
        Some(p.summary())
    } else {
        None
    };
    Ok(Selected {
        rule: Rule::LocalSearch,
        matching: opt.matching,
        moves: opt.moves,
        partition,
    })
}

fn rule_budget_ok(rule: Rule, removed: usize, delta: usize) -> bool {
    let (r, d) = (removed as u128, delta as u128);
    match rule {
        // removed ≤ 2Δ^{3/2}
        Rule::Claim1 => r * r <= 4 * d * d * d,
        // 25·removed ≤ 4Δ² + 50Δ^{3/2}
        Rule::Claim2 => le_plus_sqrt_wide(25 * r, 4 * d * d, 50 * d, d),
        _ => true,
    }
}

/// Runs the reduction to completion on `g`.
///
/// Isolated vertices are set aside first. The returned matching is acyclic,
/// and for Δ ≥ 3 the subgraph induced by its vertices is a corona of a
/// forest; both are re-checked before returning.
pub fn solve_with(g: &Graph, opts: SolveOptions) -> Result<SolveReport, ReduceError> {
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        log::warn!("dropping {} isolated vertices", isolated.len());
    }
    let keep: VertexSet = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect();
    let (core, core_map) = g.induced_subgraph(&keep).expect("in range");
    let n0 = core.vertex_count();
    let delta = core.max_degree();

    let mut residual = core;
    let mut to_input: Relabel = core_map;
    let mut stages = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    while residual.vertex_count() > 0 {
        let sel = select(&residual, delta, opts)?;
        let cl = closure(&residual, &sel.matching)?;
        let removed = cl.removed();
        if removed < 2 {
            return Err(ReduceError::InvariantViolation(format!(
                "stage removed {removed} vertices"
            )));
        }
        let lift = |set: &VertexSet| set.map(|v| to_input.to_old(v));
        let matching = sel.matching.map(|v| to_input.to_old(v));
        edges.extend_from_slice(matching.edges());
        stages.push(StageOutcome {
            rule: sel.rule,
            vm: lift(&cl.vm),
            nm: lift(&cl.nm),
            im: lift(&cl.im),
            removed,
            moves: sel.moves,
            budget_ok: stage_budget_ok(removed as u64, matching.len() as u64, delta as u64),
            rule_budget_ok: rule_budget_ok(sel.rule, removed, delta),
            partition: sel.partition,
            matching,
        });
        let (next, map) = residual.remove_vertices(&cl.all()).expect("in range");
        to_input = map.compose(&to_input);
        residual = next;
    }
    if 2 * stages.len() > n0 {
        return Err(ReduceError::InvariantViolation(
            "more stages than n0/2".into(),
        ));
    }

    edges.sort_unstable();
    let matching =
        Matching::from_edges(edges).map_err(|v| ReduceError::InvariantViolation(v.to_string()))?;
    check_acyclic(g, matching.edges())
        .map_err(|v| ReduceError::InvariantViolation(format!("output: {v}")))?;
    if delta >= 3 {
        check_corona(g, matching.edges())
            .map_err(|v| ReduceError::InvariantViolation(format!("output: {v}")))?;
    }
    let bound_ok = n0 == 0
        || meets_thm1(matching.len() as u64, n0 as u64, delta as u64)
            .expect("Δ ≥ 1 without isolated vertices");
    Ok(SolveReport {
        matching,
        stages,
        n0,
        m0: g.edge_count(),
        delta,
        isolated,
        bound_ok,
    })
}

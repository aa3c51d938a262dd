//! Improvement moves on matchings whose edges each join a low-degree vertex
//! to a vertex with many low-degree neighbors.
//!
//! A candidate matching `M` must satisfy
//!   (i)   every edge has exactly one endpoint in `S`;
//!   (ii)  every matched `S`-vertex is adjacent, among matched vertices, only
//!         to its partner;
//!   (iii) every matched vertex outside `S` has `5·d_S ≥ Δ`;
//! and be acyclic. The search maximizes `Σ d_S(v)` over the matched vertices
//! outside `S` by adding an edge `wu` and, when `w` already sees two or three
//! matched vertices, dropping all but the heaviest of their edges.

use crate::graph::{Edge, VertexSet};
use crate::unionfind::UnionFind;
use crate::verify::Matching;

use super::context::StageContext;
use super::ReduceError;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    /// Unmatched vertex next to the matching; joins it.
    pub w: usize,
    /// Free `S`-neighbor of `w`, not adjacent to any matched vertex.
    pub u: usize,
    /// Number of matched neighbors of `w`.
    pub k: usize,
    /// The `k − 1` edges removed, lightest first.
    pub drop: Vec<Edge>,
    pub gain: usize,
}

/// The objective `Σ_{v ∈ V_M ∩ N} d_S(v)`.
pub fn objective(ctx: &StageContext, m: &Matching) -> usize {
    m.edges()
        .iter()
        .map(|e| {
            let heavy_end = if ctx.in_s(e.u()) { e.v() } else { e.u() };
            ctx.d_s(heavy_end)
        })
        .sum()
}

/// Checks properties (i)–(iii) and acyclicity.
pub fn check_properties(ctx: &StageContext, m: &Matching) -> Result<(), ReduceError> {
    let g = ctx.graph();
    for e in m.edges() {
        if !g.has_edge(e.u(), e.v()) {
            return Err(ReduceError::InvariantViolation(format!(
                "{e} is not an edge"
            )));
        }
        let (s_end, other) = match (ctx.in_s(e.u()), ctx.in_s(e.v())) {
            (true, false) => (e.u(), e.v()),
            (false, true) => (e.v(), e.u()),
            _ => {
                return Err(ReduceError::InvariantViolation(format!(
                    "{e} does not have exactly one low-degree endpoint"
                )))
            }
        };
        if g.neighbors(s_end)
            .iter()
            .any(|&x| x != other && m.is_matched(x))
        {
            return Err(ReduceError::InvariantViolation(format!(
                "low-degree vertex {s_end} sees a matched vertex besides its partner"
            )));
        }
        if !ctx.heavy(other) {
            return Err(ReduceError::InvariantViolation(format!(
                "matched vertex {other} has 5·d_S < Δ"
            )));
        }
    }
    if !induces_forest(ctx, &m.vertices()) {
        return Err(ReduceError::InvariantViolation(
            "matched vertices induce a cycle".into(),
        ));
    }
    Ok(())
}

fn induces_forest(ctx: &StageContext, vs: &VertexSet) -> bool {
    let g = ctx.graph();
    let mut uf = UnionFind::new(vs.len());
    for (i, v) in vs.iter().enumerate() {
        for &w in g.neighbors(v) {
            if w > v {
                if let Ok(j) = vs.as_slice().binary_search(&w) {
                    if !uf.union(i, j) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn mate_array(n: usize, m: &Matching) -> Vec<usize> {
    let mut mate = vec![NONE; n];
    for e in m.edges() {
        mate[e.u()] = e.v();
        mate[e.v()] = e.u();
    }
    mate
}

/// First improving move in ascending order of `w`, or `None` at a local
/// optimum.
pub fn find_improving_move(ctx: &StageContext, m: &Matching) -> Result<Option<Move>, ReduceError> {
    check_properties(ctx, m)?;
    let mate = mate_array(ctx.graph().vertex_count(), m);
    Ok(scan(ctx, m, &mate))
}

fn scan(ctx: &StageContext, m: &Matching, mate: &[usize]) -> Option<Move> {
    let g = ctx.graph();
    let matched = |x: usize| mate[x] != NONE;
    let mut frontier: Vec<usize> = m
        .edges()
        .iter()
        .flat_map(|e| [e.u(), e.v()])
        .flat_map(|x| g.neighbors(x).iter().copied())
        .filter(|&w| !matched(w))
        .collect();
    frontier.sort_unstable();
    frontier.dedup();

    for w in frontier {
        if !ctx.heavy(w) {
            continue;
        }
        let touching: Vec<usize> = g
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&x| matched(x))
            .collect();
        if touching.len() > 3 || touching.iter().any(|&x| ctx.in_s(x)) {
            continue;
        }
        let free_s =
            g.neighbors(w).iter().copied().find(|&u| {
                ctx.in_s(u) && !matched(u) && !g.neighbors(u).iter().any(|&y| matched(y))
            });
        let Some(u) = free_s else { continue };

        let mut by_weight = touching.clone();
        by_weight.sort_unstable_by_key(|&x| (ctx.d_s(x), x));
        let k = touching.len();
        let dropped = &by_weight[..k - 1];
        let lost: usize = dropped.iter().map(|&x| ctx.d_s(x)).sum();
        if ctx.d_s(w) > lost {
            return Some(Move {
                w,
                u,
                k,
                drop: dropped
                    .iter()
                    .map(|&x| Edge::new(x, mate[x]).unwrap())
                    .collect(),
                gain: ctx.d_s(w) - lost,
            });
        }
    }
    None
}

/// `(M ∪ {wu}) \ drop`, after checking that `mv` still applies to `m`.
pub fn apply_move(ctx: &StageContext, m: &Matching, mv: &Move) -> Result<Matching, ReduceError> {
    let g = ctx.graph();
    let stale = m.is_matched(mv.w)
        || m.is_matched(mv.u)
        || !g.has_edge(mv.w, mv.u)
        || mv.drop.len() + 1 != mv.k
        || mv.drop.iter().any(|&e| !m.contains(e))
        || g.neighbors(mv.w)
            .iter()
            .filter(|&&x| m.is_matched(x))
            .count()
            != mv.k
        || g.neighbors(mv.u).iter().any(|&x| m.is_matched(x));
    if stale {
        return Err(ReduceError::StaleMove);
    }
    let mut next = m.clone();
    for &e in &mv.drop {
        next.remove(e);
    }
    next.insert(Edge::new(mv.w, mv.u).unwrap())
        .map_err(|v| ReduceError::InvariantViolation(v.to_string()))?;
    if objective(ctx, &next) != objective(ctx, m) + mv.gain {
        return Err(ReduceError::InvariantViolation(
            "objective gain mismatch".into(),
        ));
    }
    if cfg!(debug_assertions) {
        check_properties(ctx, &next)?;
    }
    Ok(next)
}

/// Outcome of [`local_search`].
#[derive(Debug, Clone)]
pub struct LocalOptimum {
    pub matching: Matching,
    pub moves: usize,
    pub objective: usize,
}

/// Starts from the edge between the `d_S`-maximizer and its smallest
/// `S`-neighbor and applies improving moves until none is left.
pub fn local_search(ctx: &StageContext) -> Result<LocalOptimum, ReduceError> {
    if ctx.delta() < 3 {
        return Err(ReduceError::PreconditionViolated(
            "local search needs Δ ≥ 3",
        ));
    }
    if !ctx.alpha_in_range() {
        return Err(ReduceError::PreconditionViolated(
            "max d_S outside [0.2Δ, 0.8Δ]",
        ));
    }
    if !ctx.s_is_independent() {
        return Err(ReduceError::PreconditionViolated(
            "low-degree set is not independent",
        ));
    }
    let g = ctx.graph();
    let v = ctx
        .argmax_d_s()
        .expect("alpha in range implies an S-neighbor");
    let u = g
        .neighbors(v)
        .iter()
        .copied()
        .find(|&x| ctx.in_s(x))
        .unwrap();
    let mut m = Matching::from_edges([Edge::new(u, v).unwrap()]).unwrap();
    let mut mate = mate_array(g.vertex_count(), &m);
    let mut value = objective(ctx, &m);
    let move_cap = ctx.delta() * g.vertex_count();
    let mut moves = 0;

    while let Some(mv) = scan(ctx, &m, &mate) {
        m = apply_move(ctx, &m, &mv)?;
        for e in &mv.drop {
            mate[e.u()] = NONE;
            mate[e.v()] = NONE;
        }
        mate[mv.w] = mv.u;
        mate[mv.u] = mv.w;
        value += mv.gain;
        moves += 1;
        if moves > move_cap {
            return Err(ReduceError::InvariantViolation(
                "more improving moves than the objective can absorb".into(),
            ));
        }
    }
    if !cfg!(debug_assertions) {
        check_properties(ctx, &m)?;
    }
    Ok(LocalOptimum {
        matching: m,
        moves,
        objective: value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::reducer::fixtures;

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn star_of_stars_add_move() {
        let g = fixtures::star_of_stars();
        let ctx = StageContext::new(&g, 4).unwrap();
        let start = Matching::from_edges([e(0, 2)]).unwrap();
        let mv = find_improving_move(&ctx, &start).unwrap().unwrap();
        assert_eq!(
            mv,
            Move {
                w: 1,
                u: 4,
                k: 1,
                drop: vec![],
                gain: 2
            }
        );
        let next = apply_move(&ctx, &start, &mv).unwrap();
        assert_eq!(next.len(), 2);
        assert_eq!(find_improving_move(&ctx, &next).unwrap(), None);

        let opt = local_search(&ctx).unwrap();
        assert_eq!(opt.matching.edges(), &[e(0, 2), e(1, 4)]);
        assert_eq!(opt.moves, 1);
        assert_eq!(opt.objective, 4);
    }

    #[test]
    fn swap_with_two_matched_neighbors() {
        let g = fixtures::swap_k2();
        let ctx = StageContext::new(&g, 6).unwrap();
        let m = Matching::from_edges([e(0, 1), e(3, 4)]).unwrap();
        assert_eq!(objective(&ctx, &m), 7);
        let mv = find_improving_move(&ctx, &m).unwrap().unwrap();
        assert_eq!(mv.w, 9);
        assert_eq!(mv.u, 10);
        assert_eq!(mv.k, 2);
        assert_eq!(mv.drop, vec![e(0, 1)]);
        assert_eq!(mv.gain, 1);
        let next = apply_move(&ctx, &m, &mv).unwrap();
        assert_eq!(next.len(), m.len());
        assert_eq!(objective(&ctx, &next), 8);
    }

    #[test]
    fn swap_with_three_matched_neighbors_shrinks_matching() {
        let g = fixtures::swap_k3();
        let ctx = StageContext::new(&g, 8).unwrap();
        let m = Matching::from_edges([e(0, 1), e(3, 4), e(6, 7)]).unwrap();
        let mv = find_improving_move(&ctx, &m).unwrap().unwrap();
        assert_eq!(mv.k, 3);
        assert_eq!(mv.drop, vec![e(0, 1), e(3, 4)]);
        assert_eq!(mv.gain, 1);
        let next = apply_move(&ctx, &m, &mv).unwrap();
        assert_eq!(next.len(), m.len() - 1);
        assert!(objective(&ctx, &next) > objective(&ctx, &m));
    }

    #[test]
    fn four_matched_neighbors_are_skipped() {
        let g = fixtures::swap_k4();
        let ctx = StageContext::new(&g, 14).unwrap();
        assert_eq!(ctx.d_s(16), 10);
        let m = Matching::from_edges([e(0, 1), e(4, 5), e(8, 9), e(12, 13)]).unwrap();
        check_properties(&ctx, &m).unwrap();
        assert_eq!(find_improving_move(&ctx, &m).unwrap(), None);
    }

    #[test]
    fn stale_moves_are_rejected() {
        let g = fixtures::swap_k2();
        let ctx = StageContext::new(&g, 6).unwrap();
        let m = Matching::from_edges([e(0, 1), e(3, 4)]).unwrap();
        let mv = find_improving_move(&ctx, &m).unwrap().unwrap();
        let next = apply_move(&ctx, &m, &mv).unwrap();
        assert_eq!(apply_move(&ctx, &next, &mv), Err(ReduceError::StaleMove));
    }

    #[test]
    fn properties_are_enforced() {
        let g = fixtures::swap_k2();
        let ctx = StageContext::new(&g, 6).unwrap();
        // (0, 9) joins two vertices outside S.
        let bad = Matching::from_edges([e(0, 9)]).unwrap();
        assert!(matches!(
            find_improving_move(&ctx, &bad),
            Err(ReduceError::InvariantViolation(_))
        ));
    }

    #[test]
    fn local_search_preconditions() {
        // Path P3 with Δ = 4: S contains the middle vertex too.
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let ctx = StageContext::new(&g, 4).unwrap();
        assert!(matches!(
            local_search(&ctx),
            Err(ReduceError::PreconditionViolated(_))
        ));
    }
}

//! Single-edge reductions and the paths-and-cycles base case.

use crate::graph::{Edge, Graph};
use crate::verify::Matching;

use super::context::StageContext;
use super::ReduceError;

/// Vertices of a connected graph with maximum degree ≤ 2 in walk order, and
/// whether the walk closes into a cycle. Paths start at their smaller-index
/// endpoint; cycles start at vertex 0 and move to its smaller neighbor.
fn walk(component: &Graph) -> Result<(Vec<usize>, bool), ReduceError> {
    let n = component.vertex_count();
    if component.max_degree() > 2 {
        return Err(ReduceError::DegreeTooHigh);
    }
    if component.component_count() > 1 {
        return Err(ReduceError::PreconditionViolated(
            "component is not connected",
        ));
    }
    if n == 0 {
        return Ok((Vec::new(), false));
    }
    let is_cycle = component.edge_count() == n && n >= 3;
    let start = if is_cycle {
        0
    } else {
        (0..n).find(|&v| component.degree(v) <= 1).unwrap()
    };
    let mut order = Vec::with_capacity(n);
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        order.push(cur);
        let next = component
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev);
        match next {
            Some(w) if w != start && order.len() < n => {
                prev = cur;
                cur = w;
            }
            _ => break,
        }
    }
    Ok((order, is_cycle))
}

fn pairs(order: &[usize], starts: impl Iterator<Item = usize>) -> Matching {
    Matching::from_edges(starts.map(|i| Edge::new(order[i], order[i + 1]).unwrap()))
        .expect("consecutive pairs are disjoint")
}

/// Maximum acyclic matching of a path or cycle: `⌊p/2⌋` edges on a path or
/// odd cycle, `p/2 − 1` on an even cycle.
pub fn extract_low_degree(component: &Graph) -> Result<Matching, ReduceError> {
    let (order, is_cycle) = walk(component)?;
    let p = order.len();
    let count = if is_cycle && p % 2 == 0 {
        p / 2 - 1
    } else {
        p / 2
    };
    Ok(pairs(&order, (0..count).map(|i| 2 * i)))
}

/// Acyclic matching of a path or cycle whose matched vertices induce disjoint
/// copies of `P4` and `K2`, so the result is a corona of a forest: along the
/// walk, match positions `(5j, 5j+1)` and `(5j+2, 5j+3)`, skipping `5j+4`.
/// A cycle additionally leaves its last walk vertex unmatched.
pub fn extract_corona_low_degree(component: &Graph) -> Result<Matching, ReduceError> {
    let (order, is_cycle) = walk(component)?;
    let line = if is_cycle {
        &order[..order.len() - 1]
    } else {
        &order[..]
    };
    let starts = (0..line.len()).filter(|&i| matches!(i % 5, 0 | 2) && i + 1 < line.len());
    Ok(pairs(line, starts))
}

/// Lexicographically first edge with `(deg u + deg v)² ≤ 4Δ`.
pub fn find_claim1_edge(ctx: &StageContext) -> Option<Edge> {
    let g = ctx.graph();
    let cap = 4 * ctx.delta();
    g.edges().find(|e| {
        let s = g.degree(e.u()) + g.degree(e.v());
        s * s <= cap
    })
}

/// Edge at a minimum-degree vertex, used when every degree exceeds `√Δ`.
pub fn find_claim3_edge(ctx: &StageContext) -> Result<Edge, ReduceError> {
    if !ctx.s().is_empty() {
        return Err(ReduceError::PreconditionViolated(
            "low-degree set is not empty",
        ));
    }
    let g = ctx.graph();
    let u = (0..g.vertex_count())
        .filter(|&v| g.degree(v) > 0)
        .min_by_key(|&v| (g.degree(v), v))
        .ok_or(ReduceError::PreconditionViolated("graph has no edges"))?;
    Ok(Edge::new(u, g.neighbors(u)[0]).unwrap())
}

/// Edge `(u, v)` where `v` maximizes `d_S` and `u` is a minimum-degree
/// neighbor of `v`; used when `max d_S` lies outside `[0.2Δ, 0.8Δ]`.
pub fn find_claim2_edge(ctx: &StageContext) -> Result<Edge, ReduceError> {
    if ctx.s().is_empty() {
        return Err(ReduceError::PreconditionViolated("low-degree set is empty"));
    }
    if ctx.alpha_in_range() {
        return Err(ReduceError::PreconditionViolated(
            "max d_S lies in [0.2Δ, 0.8Δ]",
        ));
    }
    if find_claim1_edge(ctx).is_some() {
        return Err(ReduceError::PreconditionViolated(
            "a low degree-sum edge exists",
        ));
    }
    let g = ctx.graph();
    let v = ctx.argmax_d_s().expect("S is non-empty and has neighbors");
    let u = g
        .neighbors(v)
        .iter()
        .copied()
        .min_by_key(|&w| (g.degree(w), w))
        .unwrap();
    debug_assert!(ctx.in_s(u));
    Ok(Edge::new(u, v).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_acyclic_matching, is_corona_forest};

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn low_degree_examples() {
        assert_eq!(extract_low_degree(&path(2)).unwrap().edges(), &[e(0, 1)]);
        assert_eq!(
            extract_low_degree(&path(4)).unwrap().edges(),
            &[e(0, 1), e(2, 3)]
        );
        assert_eq!(extract_low_degree(&cycle(6)).unwrap().len(), 2);
        assert_eq!(extract_low_degree(&cycle(5)).unwrap().len(), 2);
        assert_eq!(extract_low_degree(&cycle(3)).unwrap().len(), 1);
        assert_eq!(extract_low_degree(&cycle(4)).unwrap().len(), 1);
    }

    #[test]
    fn low_degree_sizes_and_acyclicity() {
        for p in 2..30 {
            let g = path(p);
            let m = extract_low_degree(&g).unwrap();
            assert_eq!(m.len(), p / 2);
            assert!(is_acyclic_matching(&g, m.edges()));
        }
        for p in 3..30 {
            let g = cycle(p);
            let m = extract_low_degree(&g).unwrap();
            assert_eq!(m.len(), if p % 2 == 0 { p / 2 - 1 } else { p / 2 });
            assert!(is_acyclic_matching(&g, m.edges()), "C{p}");
        }
    }

    #[test]
    fn low_degree_walk_ignores_labels() {
        // Path 3-0-2-1, walked from endpoint 1: 1, 2, 0, 3.
        let g = Graph::new(4, &[(3, 0), (0, 2), (2, 1)]).unwrap();
        let m = extract_low_degree(&g).unwrap();
        assert_eq!(m.edges(), &[e(0, 3), e(1, 2)]);
    }

    #[test]
    fn low_degree_rejects_bad_input() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(extract_low_degree(&star), Err(ReduceError::DegreeTooHigh));
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(extract_low_degree(&two).is_err());
    }

    #[test]
    fn corona_variant_is_corona() {
        for p in 2..40 {
            let g = path(p);
            let m = extract_corona_low_degree(&g).unwrap();
            assert!(is_corona_forest(&g, m.edges()), "P{p}");
            assert!(!m.is_empty());
            // at most 3 vertices per matched edge
            assert!(p <= 3 * m.len(), "P{p}");
        }
        for p in 3..40 {
            let g = cycle(p);
            let m = extract_corona_low_degree(&g).unwrap();
            assert!(is_corona_forest(&g, m.edges()), "C{p}");
            assert!(p <= 4 * m.len(), "C{p}");
        }
    }

    #[test]
    fn claim1_examples() {
        // Δ = 9: degrees 2 and 3 give 25 ≤ 36. Path 0-1-2 plus 2-3, 2-4: vertex
        // 1 has degree 2, vertex 2 degree 3.
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let ctx = StageContext::new(&g, 9).unwrap();
        assert_eq!(find_claim1_edge(&ctx), Some(e(0, 1)));

        // Star K1,4 with Δ = 4: 25 > 16 for every edge.
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let ctx = StageContext::new(&star, 4).unwrap();
        assert_eq!(find_claim1_edge(&ctx), None);
    }

    #[test]
    fn claim3_examples() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let ctx = StageContext::new(&k4, 3).unwrap();
        assert!(ctx.s().is_empty());
        assert_eq!(find_claim3_edge(&ctx), Ok(e(0, 1)));

        let c5 = cycle(5);
        let ctx = StageContext::new(&c5, 2).unwrap();
        assert_eq!(find_claim3_edge(&ctx), Ok(e(0, 1)));

        let p3 = path(3);
        let ctx = StageContext::new(&p3, 2).unwrap();
        assert!(matches!(
            find_claim3_edge(&ctx),
            Err(ReduceError::PreconditionViolated(_))
        ));
    }

    /// Hub `0` with `leaves` pendant vertices plus a clique-like padding so the
    /// hub reaches degree `delta`; S = the leaves when `delta` is 25.
    fn hub_with_leaves(leaves: usize) -> Graph {
        // hub 0, leaves 1..=leaves, padding vertices of degree 6 (36 > 25).
        let pad = 25 - leaves;
        let first_pad = leaves + 1;
        let n = first_pad + pad + 7;
        let mut edges: Vec<(usize, usize)> = (1..=leaves).map(|l| (0, l)).collect();
        for i in 0..pad {
            edges.push((0, first_pad + i));
        }
        // Give every padding vertex 5 more neighbors in a shared block of 7.
        let block = first_pad + pad;
        for i in 0..pad {
            for j in 0..5 {
                edges.push((first_pad + i, block + (i + j) % 7));
            }
        }
        // Make block vertices mutually adjacent so their degrees exceed 5.
        for a in 0..7 {
            for b in a + 1..7 {
                edges.push((block + a, block + b));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn claim2_examples() {
        for (leaves, fires) in [(1, true), (21, true), (10, false)] {
            let g = hub_with_leaves(leaves);
            assert!(g.max_degree() <= 25, "{}", g.max_degree());
            let ctx = StageContext::new(&g, 25).unwrap();
            assert_eq!(ctx.s().len(), leaves);
            assert_eq!(ctx.alpha_max_num(), leaves);
            assert_eq!(find_claim1_edge(&ctx), None);
            match find_claim2_edge(&ctx) {
                Ok(edge) => {
                    assert!(fires);
                    assert_eq!(edge, e(0, 1));
                }
                Err(err) => {
                    assert!(!fires);
                    assert!(matches!(err, ReduceError::PreconditionViolated(_)));
                }
            }
        }
    }
}

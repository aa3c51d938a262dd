//! Accounting for a local-search stage: splits the removed vertices into the
//! classes that bound how many vertices one matched edge may cost, and checks
//! each bound exactly.

use serde::Serialize;

use crate::bounds::le_plus_sqrt_wide;
use crate::graph::VertexSet;
use crate::verify::Matching;

use super::context::StageContext;
use super::local_search::{check_properties, find_improving_move};
use super::{closure, Closure, ReduceError};

/// Outcome of each inequality, decided with integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionChecks {
    /// `|V_M| + |N_M| ≤ (√Δ + Δ)|M|`.
    pub e1: bool,
    /// `|I₁ ∪ I₂| ≤ (Δ − 1)(√Δ − 1)|M|`.
    pub e2: bool,
    /// `|I₄| ≤ (Δ − 1)²|M| / √Δ`.
    pub e3: bool,
    /// `|I₃| ≤ 0.2Δ|X₁| + 0.8Δ|X₂| + (2/3)Σ d_S(v)d₃(v)`.
    pub claim4: bool,
    /// `|I₃| ≤ (Δ²/6)|M|`.
    pub i3_final: bool,
}

impl PartitionChecks {
    pub fn all(&self) -> bool {
        self.e1 && self.e2 && self.e3 && self.claim4 && self.i3_final
    }
}

/// Classes of `N_M` and `I_M` for one stage matching, in residual labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagePartition {
    pub closure: Closure,
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    pub i1: VertexSet,
    pub i2: VertexSet,
    pub i3: VertexSet,
    pub i4: VertexSet,
    pub x1: VertexSet,
    pub x2: VertexSet,
    pub x3: VertexSet,
    /// `(v, d₁(v), d₃(v))` for each `v ∈ V_M ∩ N`, ascending in `v`.
    pub tallies: Vec<(usize, usize, usize)>,
    /// `Σ_{v ∈ V_M ∩ N} d_S(v)·d₃(v)`.
    pub weighted_d3: u64,
    pub checks: PartitionChecks,
    /// No improving move is left. The claim-4 inequality is only guaranteed
    /// at a local optimum.
    pub locally_optimal: bool,
}

/// Class sizes and check outcomes, the form stored in traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionSummary {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
    pub i4: usize,
    pub x1: usize,
    pub x2: usize,
    pub x3: usize,
    pub checks: PartitionChecks,
}

impl StagePartition {
    pub fn summary(&self) -> PartitionSummary {
        PartitionSummary {
            x: self.x.len(),
            y: self.y.len(),
            z: self.z.len(),
            i1: self.i1.len(),
            i2: self.i2.len(),
            i3: self.i3.len(),
            i4: self.i4.len(),
            x1: self.x1.len(),
            x2: self.x2.len(),
            x3: self.x3.len(),
            checks: self.checks,
        }
    }
}

/// Partitions the vertices removed with `m` and evaluates every bound.
///
/// Fails with [`ReduceError::NotCommittedStage`] when `m` is not a
/// local-search candidate (properties (i)–(iii) or acyclicity fail).
pub fn analyze_stage(ctx: &StageContext, m: &Matching) -> Result<StagePartition, ReduceError> {
    if m.is_empty() || check_properties(ctx, m).is_err() {
        return Err(ReduceError::NotCommittedStage);
    }
    let g = ctx.graph();
    let n = g.vertex_count();
    let cl = closure(g, m)?;
    let mut in_vm = vec![false; n];
    for v in cl.vm.iter() {
        in_vm[v] = true;
    }
    let sees_matched_s = |v: usize| g.neighbors(v).iter().any(|&w| in_vm[w] && ctx.in_s(w));
    let free_s = |u: usize| ctx.in_s(u) && !g.neighbors(u).iter().any(|&w| in_vm[w]);

    let mut class = vec![b' '; n];
    let (mut x, mut y, mut z) = (Vec::new(), Vec::new(), Vec::new());
    for w in cl.nm.iter() {
        if sees_matched_s(w) {
            z.push(w);
            class[w] = b'z';
        } else if g.neighbors(w).iter().any(|&u| free_s(u)) {
            x.push(w);
            class[w] = b'x';
        } else {
            y.push(w);
            class[w] = b'y';
        }
    }

    let (mut i1, mut i2, mut i3, mut i4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for v in cl.im.iter() {
        let nbrs = g.neighbors(v);
        if ctx.in_s(v) {
            if nbrs.iter().all(|&w| class[w] == b'x') {
                i3.push(v);
            } else {
                i1.push(v);
            }
        } else if nbrs.iter().any(|&w| class[w] == b'z') {
            i2.push(v);
        } else {
            i4.push(v);
        }
    }

    let delta = ctx.delta();
    let (mut x1, mut x2, mut x3) = (Vec::new(), Vec::new(), Vec::new());
    let mut sub = vec![0u8; n];
    for &w in &x {
        let in_vm_count = g.neighbors(w).iter().filter(|&&v| in_vm[v]).count();
        if 5 * ctx.d_s(w) < delta {
            x1.push(w);
            sub[w] = 1;
        } else if in_vm_count >= 4 {
            x2.push(w);
            sub[w] = 2;
        } else {
            x3.push(w);
            sub[w] = 3;
        }
    }

    let mut tallies = Vec::new();
    let mut weighted_d3 = 0u64;
    for v in cl.vm.iter().filter(|&v| !ctx.in_s(v)) {
        let d1 = g
            .neighbors(v)
            .iter()
            .filter(|&&w| matches!(sub[w], 1 | 2))
            .count();
        let d3 = g.neighbors(v).iter().filter(|&&w| sub[w] == 3).count();
        weighted_d3 += (ctx.d_s(v) * d3) as u64;
        tallies.push((v, d1, d3));
    }

    let big = |v: usize| v as u128;
    let (d, mm) = (big(delta), big(m.len()));
    let checks = PartitionChecks {
        e1: le_plus_sqrt_wide(big(cl.vm.len() + cl.nm.len()), d * mm, mm, d),
        e2: le_plus_sqrt_wide(big(i1.len() + i2.len()) + (d - 1) * mm, 0, (d - 1) * mm, d),
        e3: {
            let lhs = big(i4.len()) * big(i4.len()) * d;
            let rhs = (d - 1) * (d - 1) * mm;
            lhs <= rhs * rhs
        },
        claim4: 15 * big(i3.len())
            <= 3 * d * big(x1.len()) + 12 * d * big(x2.len()) + 10 * u128::from(weighted_d3),
        i3_final: 6 * big(i3.len()) <= d * d * mm,
    };
    let locally_optimal = find_improving_move(ctx, m)?.is_none();

    Ok(StagePartition {
        closure: cl,
        x: VertexSet::from_unsorted(x),
        y: VertexSet::from_unsorted(y),
        z: VertexSet::from_unsorted(z),
        i1: VertexSet::from_unsorted(i1),
        i2: VertexSet::from_unsorted(i2),
        i3: VertexSet::from_unsorted(i3),
        i4: VertexSet::from_unsorted(i4),
        x1: VertexSet::from_unsorted(x1),
        x2: VertexSet::from_unsorted(x2),
        x3: VertexSet::from_unsorted(x3),
        tallies,
        weighted_d3,
        checks,
        locally_optimal,
    })
}

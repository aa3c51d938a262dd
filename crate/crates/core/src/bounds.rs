//! Closed-form bounds on matching numbers of bounded-degree graphs.
//!
//! Predicates (`meets_*`, [`le_plus_sqrt`]) decide inequalities involving
//! `√Δ` and `Δ^{3/2}` exactly with integer arithmetic. The `f64` values are
//! for reporting only.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("maximum degree must be at least {min}, got {delta}")]
    DegreeTooSmall { delta: u64, min: u64 },
    #[error("edge count must be at least 1")]
    NoEdges,
    #[error("k must be at least {min}, got {k}")]
    KOutOfRange { k: u64, min: u64 },
}

/// Exact test of `a ≤ b + c·√d`.
///
/// Decided as `a ≤ b`, else `(a − b)² ≤ c²·d`. Products that overflow `u128`
/// are redone in arbitrary precision.
pub fn le_plus_sqrt_wide(a: u128, b: u128, c: u128, d: u128) -> bool {
    if a <= b {
        return true;
    }
    let diff = a - b;
    let lhs = diff.checked_mul(diff);
    let rhs = c.checked_mul(c).and_then(|cc| cc.checked_mul(d));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l <= r,
        _ => {
            let diff = BigUint::from(diff);
            let c = BigUint::from(c);
            &diff * &diff <= &c * &c * BigUint::from(d)
        }
    }
}

/// `a ≤ b + c·√Δ`, exactly.
pub fn le_plus_sqrt(a: u64, b: u64, c: u64, delta: u64) -> Result<bool, BoundsError> {
    if delta == 0 {
        return Err(BoundsError::DegreeTooSmall { delta, min: 1 });
    }
    Ok(le_plus_sqrt_wide(
        a.into(),
        b.into(),
        c.into(),
        delta.into(),
    ))
}

/// `size·(Δ² + 12Δ^{3/2}) ≥ 6n`, exactly.
pub fn meets_thm1(size: u64, n: u64, delta: u64) -> Result<bool, BoundsError> {
    if delta == 0 {
        return Err(BoundsError::DegreeTooSmall { delta, min: 1 });
    }
    let (s, n, d) = (u128::from(size), u128::from(n), u128::from(delta));
    // 6n ≤ sΔ² + 12sΔ·√Δ
    Ok(le_plus_sqrt_wide(6 * n, s * d * d, 12 * s * d, d))
}

/// Per-stage budget `6·removed ≤ |M|·(Δ² + 12Δ^{3/2})`. Summed over stages it
/// gives [`meets_thm1`] for the union of the stage matchings.
pub fn stage_budget_ok(removed: u64, matched_edges: u64, delta: u64) -> bool {
    let (r, m, d) = (
        u128::from(removed),
        u128::from(matched_edges),
        u128::from(delta),
    );
    le_plus_sqrt_wide(6 * r, m * d * d, 12 * m * d, d)
}

/// `6n / (Δ² + 12Δ^{3/2})`.
pub fn thm1_bound(n: u64, delta: u64) -> f64 {
    let d = delta as f64;
    if n == 0 {
        return 0.0;
    }
    6.0 * n as f64 / (d * d + 12.0 * d * d.sqrt())
}

fn joos_denominator(delta: u64) -> u64 {
    (delta / 2 + 1) * (delta.div_ceil(2) + 1)
}

/// `n / ((⌊Δ/2⌋+1)(⌈Δ/2⌉+1))`, the induced-matching bound for large Δ.
pub fn joos_bound(n: u64, delta: u64) -> f64 {
    n as f64 / joos_denominator(delta) as f64
}

/// `m / Δ²`.
pub fn edge_lower_bound(m: u64, delta: u64) -> Result<f64, BoundsError> {
    if delta == 0 {
        return Err(BoundsError::DegreeTooSmall { delta, min: 1 });
    }
    Ok(m as f64 / (delta * delta) as f64)
}

/// `(m − 1) / (2(Δ − 1))`, an upper bound for Δ-regular graphs.
pub fn regular_upper_bound(m: u64, delta: u64) -> Result<f64, BoundsError> {
    if delta < 2 {
        return Err(BoundsError::DegreeTooSmall { delta, min: 2 });
    }
    if m == 0 {
        return Err(BoundsError::NoEdges);
    }
    Ok((m - 1) as f64 / (2 * (delta - 1)) as f64)
}

/// Exact `size ≤ (m − 1) / (2(Δ − 1))`.
pub fn within_regular_upper_bound(size: u64, m: u64, delta: u64) -> Result<bool, BoundsError> {
    regular_upper_bound(m, delta)?;
    Ok(u128::from(size) * 2 * u128::from(delta - 1) <= u128::from(m - 1))
}

/// `(k+1)·n / ((⌊Δ/2⌋+1)(⌈Δ/2⌉+1))`, conjectured for k-degenerate matchings.
pub fn kdeg_conjecture_bound(n: u64, delta: u64, k: u64) -> Result<f64, BoundsError> {
    if k < 1 {
        return Err(BoundsError::KOutOfRange { k, min: 1 });
    }
    Ok((k + 1) as f64 * n as f64 / joos_denominator(delta) as f64)
}

/// The constant `c` in `ν_k(G)/n ≥ (1 − o(1))·c/Δ²`: `4(k+3)/3` for
/// `2 ≤ k ≤ 6` and `k + 4` for `k ≥ 7`.
pub fn kdeg_adapted_coefficient(k: u64) -> Result<Ratio<u64>, BoundsError> {
    match k {
        0 | 1 => Err(BoundsError::KOutOfRange { k, min: 2 }),
        2..=6 => Ok(Ratio::new(4 * (k + 3), 3)),
        _ => Ok(Ratio::from_integer(k + 4)),
    }
}

/// Every bound that applies to given `(n, m, Δ, k)`, for display.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub thm1: Option<f64>,
    pub joos: Option<f64>,
    pub edge_lb: Option<f64>,
    pub regular_ub: Option<f64>,
    pub kdeg_conjecture: Option<f64>,
    /// Rendered as `"num/den"` or an integer string.
    pub kdeg_coefficient: Option<String>,
}

pub fn report(n: u64, m: u64, delta: u64, k: u64) -> BoundReport {
    let positive = delta >= 1;
    BoundReport {
        thm1: positive.then(|| thm1_bound(n, delta)),
        joos: positive.then(|| joos_bound(n, delta)),
        edge_lb: edge_lower_bound(m, delta).ok(),
        regular_ub: regular_upper_bound(m, delta).ok(),
        kdeg_conjecture: kdeg_conjecture_bound(n, delta, k).ok(),
        kdeg_coefficient: kdeg_adapted_coefficient(k).ok().map(|r| r.to_string()),
    }
}

//! Deterministic instance generators.
//!
//! Random families draw from ChaCha8 seeded with the 64-bit seed through
//! `SeedableRng::seed_from_u64`; the same `GenSpec` and seed always give the same
//! graph. [`GenSpec::header`] records both in the comment lines of generated
//! files.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Disjoint copies of `K_q` with `p` leaves per clique vertex, where
    /// `q = ⌈Δ/2⌉ + 1` and `p = ⌊Δ/2⌋`.
    Joos {
        delta: usize,
        copies: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    RandomCapped {
        n: usize,
        delta: usize,
        m_target: usize,
    },
    RandomTree {
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub seed: u64,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Joos { delta, copies } => {
                write!(f, "family=joos delta={delta} copies={copies}")
            }
            Family::Path { n } => write!(f, "family=path n={n}"),
            Family::Cycle { n } => write!(f, "family=cycle n={n}"),
            Family::Complete { n } => write!(f, "family=complete n={n}"),
            Family::CompleteBipartite { a, b } => {
                write!(f, "family=complete_bipartite parts={a},{b}")
            }
            Family::RandomCapped { n, delta, m_target } => {
                write!(
                    f,
                    "family=random_capped n={n} delta={delta} m_target={m_target}"
                )
            }
            Family::RandomTree { n } => write!(f, "family=random_tree n={n}"),
        }
    }
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match self.family {
            Family::Joos { delta, copies } => gen_joos(delta, copies),
            Family::Path { n } => path(n),
            Family::Cycle { n } => cycle(n),
            Family::Complete { n } => complete(n),
            Family::CompleteBipartite { a, b } => complete_bipartite(a, b),
            Family::RandomCapped { n, delta, m_target } => {
                gen_random_capped(n, delta, m_target, self.seed)
            }
            Family::RandomTree { n } => random_tree(n, self.seed),
        }
    }

    /// Comment lines for an edge-list file.
    pub fn header(&self) -> Vec<String> {
        vec![format!(
            "{} seed={} rng={}",
            self.family, self.seed, RNG_NAME
        )]
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("generators emit simple graphs")
}

pub fn gen_joos(delta: usize, copies: usize) -> Result<Graph, GenError> {
    if delta < 2 || copies < 1 {
        return Err(GenError::BadParameter(format!(
            "joos needs delta ≥ 2 and copies ≥ 1, got delta={delta} copies={copies}"
        )));
    }
    let q = delta.div_ceil(2) + 1;
    let p = delta / 2;
    let per_copy = q * (p + 1);
    let mut edges = Vec::new();
    for c in 0..copies {
        let base = c * per_copy;
        for a in 0..q {
            for b in a + 1..q {
                edges.push((base + a, base + b));
            }
            for j in 0..p {
                edges.push((base + a, base + q + a * p + j));
            }
        }
    }
    Ok(build(copies * per_copy, &edges))
}

/// Random graph with maximum degree ≤ Δ and no isolated vertex.
///
/// A random perfect matching (plus one extra edge when `n` is odd) is laid
/// first; then uniformly random pairs are added while both endpoints are
/// below the cap, until `m_target` edges exist or draws keep failing.
pub fn gen_random_capped(
    n: usize,
    delta: usize,
    m_target: usize,
    seed: u64,
) -> Result<Graph, GenError> {
    if n == 0 {
        return Ok(Graph::empty(0));
    }
    if m_target > n * delta / 2 {
        return Err(GenError::BadParameter(format!(
            "m_target {m_target} exceeds n·Δ/2 = {}",
            n * delta / 2
        )));
    }
    if n == 1 || delta == 0 || (delta == 1 && n % 2 == 1) {
        return Err(GenError::Infeasible(format!(
            "no graph on {n} vertices with maximum degree {delta} avoids isolated vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut b = Capped {
        deg: vec![0; n],
        present: HashSet::new(),
        edges: Vec::new(),
    };
    for pair in perm.chunks_exact(2) {
        b.add(pair[0], pair[1]);
    }
    if n % 2 == 1 {
        let host = perm[rng.random_range(0..n - 1)];
        b.add(perm[n - 1], host);
    }
    let mut failures = 0;
    let limit = 64 * (n + m_target);
    while b.edges.len() < m_target && failures < limit {
        let x = rng.random_range(0..n);
        let y = rng.random_range(0..n);
        if x == y
            || b.deg[x] >= delta
            || b.deg[y] >= delta
            || b.present.contains(&(x.min(y), x.max(y)))
        {
            failures += 1;
            continue;
        }
        b.add(x, y);
    }
    Ok(build(n, &b.edges))
}

struct Capped {
    deg: Vec<usize>,
    present: HashSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
}

impl Capped {
    fn add(&mut self, a: usize, b: usize) {
        let e = (a.min(b), a.max(b));
        self.present.insert(e);
        self.edges.push(e);
        self.deg[a] += 1;
        self.deg[b] += 1;
    }
}

fn need(ok: bool, what: &str) -> Result<(), GenError> {
    if ok {
        Ok(())
    } else {
        Err(GenError::BadParameter(what.to_string()))
    }
}

pub fn path(n: usize) -> Result<Graph, GenError> {
    need(n >= 1, "path needs n ≥ 1")?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(build(n, &edges))
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    need(n >= 3, "cycle needs n ≥ 3")?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(build(n, &edges))
}

pub fn complete(n: usize) -> Result<Graph, GenError> {
    need(n >= 1, "complete needs n ≥ 1")?;
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    Ok(build(n, &edges))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GenError> {
    need(a >= 1 && b >= 1, "complete_bipartite needs both parts ≥ 1")?;
    let edges: Vec<_> = (0..a)
        .flat_map(|x| (a..a + b).map(move |y| (x, y)))
        .collect();
    Ok(build(a + b, &edges))
}

/// Vertex `i ≥ 1` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GenError> {
    need(n >= 1, "random_tree needs n ≥ 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    Ok(build(n, &edges))
}

//! Small hand-checked graphs for the local search.

use crate::graph::Graph;

/// Twelve vertices, Δ = 4. Hubs 0 and 1 each carry two leaves (2, 3 and 4,
/// 5); the rest is a degree-3 gadget hanging off 6 and 7.
pub fn star_of_stars() -> Graph {
    Graph::new(
        12,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (0, 6),
            (1, 7),
            (6, 7),
            (6, 8),
            (7, 9),
            (8, 10),
            (8, 11),
            (9, 10),
            (9, 11),
            (10, 11),
        ],
    )
    .unwrap()
}

/// Δ = 6. Vertex 9 (d_S = 3) sees matched vertices 0 (d_S = 2) and 3
/// (d_S = 5) and owns the free leaves 10, 11, 12.
pub fn swap_k2() -> Graph {
    Graph::new(
        13,
        &[
            (0, 1),
            (0, 2),
            (0, 9),
            (3, 4),
            (3, 5),
            (3, 6),
            (3, 7),
            (3, 8),
            (3, 9),
            (9, 10),
            (9, 11),
            (9, 12),
        ],
    )
    .unwrap()
}

/// Hubs `v = (h+1)i` (i < `hubs`) each with `h` pendant leaves, all adjacent
/// to `w = (h+1)·hubs`, which carries `leaves` further pendant vertices.
fn hubs_around(hubs: usize, h: usize, leaves: usize) -> Graph {
    let w = (h + 1) * hubs;
    let mut edges = Vec::new();
    for i in 0..hubs {
        let v = (h + 1) * i;
        edges.extend((1..=h).map(|j| (v, v + j)));
        edges.push((v, w));
    }
    edges.extend((1..=leaves).map(|j| (w, w + j)));
    Graph::new(w + leaves + 1, &edges).unwrap()
}

/// Δ = 8. Vertex 9 (d_S = 5) sees three matched hubs 0, 3, 6 with d_S = 2.
pub fn swap_k3() -> Graph {
    hubs_around(3, 2, 5)
}

/// Δ = 14. Vertex 16 (d_S = 10) sees four matched hubs 0, 4, 8, 12 with
/// d_S = 3, so dropping three of them would still gain.
pub fn swap_k4() -> Graph {
    hubs_around(4, 3, 10)
}

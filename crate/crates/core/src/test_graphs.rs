//! Small fixed instances shared by unit tests.

use crate::embed::{End, Girth, PlanarDigraph};
use crate::instances::embedding_from_coordinates;

pub fn directed_cycle(len: usize) -> PlanarDigraph {
    let arcs = (0..len).map(|i| (i, (i + 1) % len)).collect();
    let rotation = (0..len)
        .map(|i| vec![End::tail(i), End::head((i + len - 1) % len)])
        .collect();
    PlanarDigraph::new(len, arcs, rotation, Girth::Finite(len)).unwrap()
}

/// Two directed triangles sharing vertex 0.
pub fn bowtie() -> PlanarDigraph {
    let pts = [(0.0, 0.0), (1.0, 2.0), (2.0, 1.0), (2.0, -1.0), (1.0, -2.0)];
    let arcs = vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)];
    embedding_from_coordinates(&pts, arcs, Girth::Finite(3)).unwrap()
}

pub fn two_disjoint_triangles() -> PlanarDigraph {
    let pts = [
        (0.0, 0.0),
        (1.0, 0.0),
        (0.5, 1.0),
        (3.0, 0.0),
        (4.0, 0.0),
        (3.5, 1.0),
    ];
    let arcs = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
    embedding_from_coordinates(&pts, arcs, Girth::Finite(3)).unwrap()
}

pub fn transitive_triangle() -> PlanarDigraph {
    let pts = [(0.0, 0.0), (1.0, 0.0), (0.5, 1.0)];
    embedding_from_coordinates(&pts, vec![(0, 1), (1, 2), (0, 2)], Girth::Infinite).unwrap()
}

pub fn bidirected_triangle() -> PlanarDigraph {
    let arcs = vec![(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)];
    let rotation = vec![
        vec![End::tail(0), End::head(3), End::tail(5), End::head(2)],
        vec![End::tail(1), End::head(4), End::tail(3), End::head(0)],
        vec![End::tail(2), End::head(5), End::tail(4), End::head(1)],
    ];
    PlanarDigraph::new(3, arcs, rotation, Girth::Finite(2)).unwrap()
}

/// Concentric directed `len`-cycles, `levels` deep, joined by inward
/// spokes. Ring `i` occupies vertices `i*len..(i+1)*len`, outermost first.
pub fn nested_rings(levels: usize, len: usize) -> PlanarDigraph {
    let mut pts = Vec::new();
    let mut arcs = Vec::new();
    for i in 0..levels {
        let r = (levels - i) as f64;
        for j in 0..len {
            let t = std::f64::consts::PI + std::f64::consts::TAU * j as f64 / len as f64;
            pts.push((r * t.cos(), r * t.sin()));
            arcs.push((i * len + j, i * len + (j + 1) % len));
        }
    }
    for i in 0..levels.saturating_sub(1) {
        for j in 0..len {
            arcs.push((i * len + j, (i + 1) * len + j));
        }
    }
    embedding_from_coordinates(&pts, arcs, Girth::Finite(len)).unwrap()
}

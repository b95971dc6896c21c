use crate::embed::{ArcId, PlanarDigraph, Vertex};

use super::{SolverError, SolverLimits};

/// Vertex cover of the arcs `a` with |X| ≤ (n + |A|)/3.
///
/// On the undirected multigraph (V, A) the smallest vertex of degree ≥ 2 is
/// deleted until only a matching and isolated vertices remain. Isolated
/// vertices and the smaller end of each matching edge form an independent
/// set; the cover is the other endpoints, trimmed of redundant vertices.
pub fn cover_arcs_greedy(g: &PlanarDigraph, a: &[ArcId]) -> Vec<Vertex> {
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = a.iter().map(|&x| g.arc(x)).collect();
    let mut degree = vec![0usize; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut deleted = vec![false; n];
    let mut edge_alive = vec![true; edges.len()];
    while let Some(v) = (0..n).find(|&v| !deleted[v] && degree[v] >= 2) {
        deleted[v] = true;
        for (e, &(x, y)) in edges.iter().enumerate() {
            if edge_alive[e] && (x == v || y == v) {
                edge_alive[e] = false;
                degree[x] -= 1;
                degree[y] -= 1;
            }
        }
    }
    let mut independent: Vec<bool> = (0..n).map(|v| !deleted[v]).collect();
    for (e, &(x, y)) in edges.iter().enumerate() {
        if edge_alive[e] {
            independent[x.max(y)] = false;
        }
    }
    let mut in_x = vec![false; n];
    for &(x, y) in &edges {
        for v in [x, y] {
            if !independent[v] {
                in_x[v] = true;
            }
        }
    }
    for v in (0..n).rev() {
        if in_x[v] {
            in_x[v] = false;
            let needed = edges
                .iter()
                .any(|&(x, y)| (x == v || y == v) && !in_x[x] && !in_x[y]);
            in_x[v] = needed;
        }
    }
    (0..n).filter(|&v| in_x[v]).collect()
}

/// Exact minimum vertex cover of the arcs `a`, by branching on a vertex of
/// maximum remaining degree (take it, or take all its neighbours).
pub fn min_vertex_cover_of_arcs(
    g: &PlanarDigraph,
    a: &[ArcId],
    limits: SolverLimits,
) -> Result<Vec<Vertex>, SolverError> {
    let mut edges: Vec<(Vertex, Vertex)> = a
        .iter()
        .map(|&x| {
            let (u, v) = g.arc(x);
            (u.min(v), u.max(v))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mut search = CoverSearch {
        n: g.n(),
        edges: &edges,
        nodes: 0,
        guard: limits.node_guard,
        best: (0..g.n())
            .filter(|&v| edges.iter().any(|&(x, y)| x == v || y == v))
            .collect(),
    };
    let mut taken = vec![false; g.n()];
    let mut count = 0;
    search.run(&mut taken, &mut count)?;
    Ok(search.best)
}

struct CoverSearch<'a> {
    n: usize,
    edges: &'a [(Vertex, Vertex)],
    nodes: u64,
    guard: u64,
    best: Vec<Vertex>,
}

impl CoverSearch<'_> {
    fn run(&mut self, taken: &mut Vec<bool>, count: &mut usize) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.guard {
            return Err(SolverError::GuardExceeded {
                what: "vertex cover search nodes",
                guard: self.guard,
            });
        }
        let open: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(x, y)| !taken[x] && !taken[y])
            .collect();
        if open.is_empty() {
            if *count < self.best.len() {
                self.best = (0..self.n).filter(|&v| taken[v]).collect();
            }
            return Ok(());
        }
        // greedy matching bounds the number of vertices still needed
        let mut matched = vec![false; self.n];
        let mut matching = 0;
        for &(x, y) in &open {
            if !matched[x] && !matched[y] {
                matched[x] = true;
                matched[y] = true;
                matching += 1;
            }
        }
        if *count + matching >= self.best.len() {
            return Ok(());
        }
        let mut degree = vec![0usize; self.n];
        for &(x, y) in &open {
            degree[x] += 1;
            degree[y] += 1;
        }
        let w = (0..self.n)
            .max_by_key(|&v| (degree[v], usize::MAX - v))
            .unwrap();

        taken[w] = true;
        *count += 1;
        self.run(taken, count)?;
        taken[w] = false;
        *count -= 1;

        let nbrs: Vec<Vertex> = open
            .iter()
            .filter_map(|&(x, y)| match (x == w, y == w) {
                (true, _) => Some(y),
                (_, true) => Some(x),
                _ => None,
            })
            .collect();
        for &v in &nbrs {
            taken[v] = true;
        }
        *count += nbrs.len();
        self.run(taken, count)?;
        *count -= nbrs.len();
        for &v in &nbrs {
            taken[v] = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{End, Girth};
    use crate::test_graphs::*;

    fn star() -> PlanarDigraph {
        let arcs = vec![(0, 1), (0, 2), (0, 3)];
        let rotation = vec![
            vec![End::tail(0), End::tail(1), End::tail(2)],
            vec![End::head(0)],
            vec![End::head(1)],
            vec![End::head(2)],
        ];
        PlanarDigraph::new(4, arcs, rotation, Girth::Infinite).unwrap()
    }

    #[test]
    fn exact_cover_cases() {
        let l = SolverLimits::default();
        let tri = directed_cycle(3);
        assert_eq!(
            min_vertex_cover_of_arcs(&tri, &[0, 1, 2], l).unwrap().len(),
            2
        );
        assert_eq!(
            min_vertex_cover_of_arcs(&star(), &[0, 1, 2], l).unwrap(),
            vec![0]
        );
        assert!(min_vertex_cover_of_arcs(&tri, &[], l).unwrap().is_empty());
    }

    #[test]
    fn greedy_cover_cases() {
        assert!(cover_arcs_greedy(&star(), &[]).is_empty());
        assert_eq!(cover_arcs_greedy(&star(), &[0, 1, 2]), vec![0]);
        let one = PlanarDigraph::new(
            2,
            vec![(0, 1)],
            vec![vec![End::tail(0)], vec![End::head(0)]],
            Girth::Infinite,
        )
        .unwrap();
        // (n + |A|) / 3 = 1
        assert_eq!(cover_arcs_greedy(&one, &[0]).len(), 1);
        let tri = directed_cycle(3);
        assert_eq!(cover_arcs_greedy(&tri, &[0, 1, 2]).len(), 2);
    }
}

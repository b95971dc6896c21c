use std::collections::VecDeque;

use thiserror::Error;

use super::graph::{ArcId, Girth, PlanarDigraph, Vertex};

/// A simple directed cycle, stored from its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiCycle {
    arcs: Vec<ArcId>,
    vertices: Vec<Vertex>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle count exceeded guard of {guard}")]
    GuardExceeded { guard: usize },
    #[error("arc sequence is not a simple directed cycle: {0}")]
    NotACycle(String),
}

impl DiCycle {
    /// Builds a cycle from a cyclically ordered arc sequence, checking that
    /// it composes head-to-tail and repeats no vertex.
    pub fn from_arcs(g: &PlanarDigraph, arcs: &[ArcId]) -> Result<Self, CycleError> {
        if arcs.is_empty() {
            return Err(CycleError::NotACycle("empty".into()));
        }
        let mut vertices = Vec::with_capacity(arcs.len());
        for (i, &a) in arcs.iter().enumerate() {
            if a >= g.m() {
                return Err(CycleError::NotACycle(format!("unknown arc {a}")));
            }
            let next = arcs[(i + 1) % arcs.len()];
            if g.arc(a).1 != g.arc(next).0 {
                return Err(CycleError::NotACycle(format!(
                    "arc {a} does not end where arc {next} starts"
                )));
            }
            vertices.push(g.arc(a).0);
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CycleError::NotACycle("repeated vertex".into()));
        }
        let start = (0..vertices.len())
            .min_by_key(|&i| vertices[i])
            .expect("non-empty");
        let mut arcs = arcs.to_vec();
        arcs.rotate_left(start);
        vertices.rotate_left(start);
        Ok(DiCycle { arcs, vertices })
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

/// Shortest dicycle through `s` avoiding removed vertices, by BFS.
/// Returns the arc sequence starting at `s`.
pub(crate) fn shortest_cycle_through(
    adj: &[Vec<(ArcId, Vertex)>],
    s: Vertex,
    alive: &[bool],
) -> Option<Vec<ArcId>> {
    let n = adj.len();
    let mut pred: Vec<Option<ArcId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut from = vec![usize::MAX; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(a, w) in &adj[u] {
            if !alive[w] {
                continue;
            }
            if w == s {
                let mut path = vec![a];
                let mut x = u;
                while x != s {
                    path.push(pred[x].expect("bfs tree"));
                    x = from[x];
                }
                path.reverse();
                return Some(path);
            }
            if !seen[w] {
                seen[w] = true;
                pred[w] = Some(a);
                from[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

pub(crate) fn arc_adjacency(g: &PlanarDigraph) -> Vec<Vec<(ArcId, Vertex)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for (a, &(t, h)) in g.arcs().iter().enumerate() {
        adj[t].push((a, h));
    }
    adj
}

/// A shortest dicycle among the alive vertices, ties broken by the smallest
/// start vertex.
pub(crate) fn shortest_cycle(adj: &[Vec<(ArcId, Vertex)>], alive: &[bool]) -> Option<Vec<ArcId>> {
    let mut best: Option<Vec<ArcId>> = None;
    for s in 0..adj.len() {
        if !alive[s] {
            continue;
        }
        if let Some(c) = shortest_cycle_through(adj, s, alive) {
            if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                let done = c.len() == 2;
                best = Some(c);
                if done {
                    break;
                }
            }
        }
    }
    best
}

/// Exact minimum dicycle length.
pub fn digirth(g: &PlanarDigraph) -> Girth {
    let adj = arc_adjacency(g);
    let alive = vec![true; g.n()];
    match shortest_cycle(&adj, &alive) {
        Some(c) => Girth::Finite(c.len()),
        None => Girth::Infinite,
    }
}

/// Topological order of the subgraph induced by `alive` vertices using the
/// arcs flagged in `arc_alive`, or `None` if that subgraph has a dicycle.
pub fn topological_order(
    g: &PlanarDigraph,
    alive: &[bool],
    arc_alive: &[bool],
) -> Option<Vec<Vertex>> {
    let mut indeg = vec![0usize; g.n()];
    let mut out: Vec<Vec<Vertex>> = vec![Vec::new(); g.n()];
    for (a, &(t, h)) in g.arcs().iter().enumerate() {
        if arc_alive[a] && alive[t] && alive[h] {
            indeg[h] += 1;
            out[t].push(h);
        }
    }
    let mut ready: std::collections::BTreeSet<Vertex> =
        (0..g.n()).filter(|&v| alive[v] && indeg[v] == 0).collect();
    let mut order = Vec::new();
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    let alive_count = alive.iter().filter(|&&b| b).count();
    (order.len() == alive_count).then_some(order)
}

pub fn is_acyclic(g: &PlanarDigraph) -> bool {
    topological_order(g, &vec![true; g.n()], &vec![true; g.m()]).is_some()
}

/// All simple dicycles (Johnson's circuit enumeration over arcs), each
/// reported once starting from its smallest vertex.
pub fn enumerate_dicycles(g: &PlanarDigraph, guard: usize) -> Result<Vec<DiCycle>, CycleError> {
    let adj = arc_adjacency(g);
    let n = g.n();
    let mut out = Vec::new();
    let mut state = Johnson {
        adj: &adj,
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        stack: Vec::new(),
        guard,
    };
    for s in 0..n {
        state.blocked.iter_mut().for_each(|b| *b = false);
        state.block_map.iter_mut().for_each(|b| b.clear());
        state.circuit(s, s, &mut out)?;
    }
    Ok(out
        .into_iter()
        .map(|arcs| DiCycle::from_arcs(g, &arcs).expect("enumerated circuit is simple"))
        .collect())
}

struct Johnson<'a> {
    adj: &'a [Vec<(ArcId, Vertex)>],
    blocked: Vec<bool>,
    block_map: Vec<Vec<Vertex>>,
    stack: Vec<ArcId>,
    guard: usize,
}

impl Johnson<'_> {
    // restricted to vertices >= s
    fn circuit(
        &mut self,
        v: Vertex,
        s: Vertex,
        out: &mut Vec<Vec<ArcId>>,
    ) -> Result<bool, CycleError> {
        let mut found = false;
        self.blocked[v] = true;
        for &(a, w) in &self.adj[v] {
            if w < s {
                continue;
            }
            if w == s {
                self.stack.push(a);
                out.push(self.stack.clone());
                self.stack.pop();
                if out.len() > self.guard {
                    return Err(CycleError::GuardExceeded { guard: self.guard });
                }
                found = true;
            } else if !self.blocked[w] {
                self.stack.push(a);
                if self.circuit(w, s, out)? {
                    found = true;
                }
                self.stack.pop();
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &(_, w) in &self.adj[v] {
                if w >= s && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        Ok(found)
    }

    fn unblock(&mut self, v: Vertex) {
        let mut work = vec![v];
        while let Some(u) = work.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            work.append(&mut self.block_map[u]);
        }
    }
}

use std::collections::VecDeque;

use crate::embed::{ArcId, PlanarDigraph, Vertex};

/// A strongly connected piece of a digraph with local numbering.
pub(crate) struct Sub {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    pub vertex: Vec<Vertex>,
    pub arc: Vec<ArcId>,
    pub out: Vec<Vec<(usize, usize)>>,
}

impl Sub {
    fn new(vertex: Vec<Vertex>, arc: Vec<ArcId>, arcs: Vec<(usize, usize)>) -> Sub {
        let n = vertex.len();
        let mut out = vec![Vec::new(); n];
        for (a, &(t, h)) in arcs.iter().enumerate() {
            out[t].push((a, h));
        }
        Sub {
            n,
            arcs,
            vertex,
            arc,
            out,
        }
    }

    /// Shortest cycle using alive vertices and alive arcs, as local arc ids
    /// starting at its first vertex. Ties go to the smallest start vertex.
    pub fn shortest_cycle(&self, alive: &[bool], arc_alive: &[bool]) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        let mut pred = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            if !alive[s] {
                continue;
            }
            let limit = best.as_ref().map_or(usize::MAX, |b| b.len());
            if let Some(c) = self.cycle_through(s, alive, arc_alive, limit, &mut pred, &mut seen) {
                let done = c.len() == 2;
                best = Some(c);
                if done {
                    break;
                }
            }
        }
        best
    }

    // BFS from s; only cycles shorter than `limit` are returned
    fn cycle_through(
        &self,
        s: usize,
        alive: &[bool],
        arc_alive: &[bool],
        limit: usize,
        pred: &mut [usize],
        seen: &mut [bool],
    ) -> Option<Vec<usize>> {
        seen.iter_mut().for_each(|x| *x = false);
        seen[s] = true;
        let mut depth = vec![0usize; self.n];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if depth[u] + 1 >= limit {
                return None;
            }
            for &(a, w) in &self.out[u] {
                if !arc_alive[a] || !alive[w] {
                    continue;
                }
                if w == s {
                    let mut path = vec![a];
                    let mut x = u;
                    while x != s {
                        let p = pred[x];
                        path.push(p);
                        x = self.arcs[p].0;
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[w] {
                    seen[w] = true;
                    pred[w] = a;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Non-trivial strongly connected components, each with the arcs inside it,
/// ordered by smallest vertex.
pub(crate) fn strong_pieces(g: &PlanarDigraph) -> Vec<Sub> {
    let n = g.n();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for &(t, h) in g.arcs() {
        out[t].push(h);
        inc[h].push(t);
    }
    // Kosaraju, iteratively
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if i < out[v].len() {
                top.1 += 1;
                let w = out[v][i];
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &inc[v] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    let mut members = vec![Vec::new(); count];
    for v in 0..n {
        members[comp[v]].push(v);
    }
    let mut pieces: Vec<Sub> = Vec::new();
    for vs in members {
        if vs.len() < 2 {
            continue;
        }
        let c = comp[vs[0]];
        let local: std::collections::HashMap<Vertex, usize> =
            vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut arc = Vec::new();
        let mut arcs = Vec::new();
        for (a, &(t, h)) in g.arcs().iter().enumerate() {
            if comp[t] == c && comp[h] == c {
                arc.push(a);
                arcs.push((local[&t], local[&h]));
            }
        }
        pieces.push(Sub::new(vs, arc, arcs));
    }
    pieces.sort_by_key(|p| p.vertex[0]);
    pieces
}

use serde::{Deserialize, Serialize};

use crate::embed::{topological_order, PlanarDigraph, Vertex};

use super::sub::{strong_pieces, Sub};
use super::{SolverError, SolverLimits};

/// A feedback vertex set with a topological order of what remains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FvsResult {
    pub vertices: Vec<Vertex>,
    pub size: usize,
    pub optimal: bool,
    pub certificate: Vec<Vertex>,
}

/// Exact minimum feedback vertex set; among optimal sets the
/// lexicographically smallest is returned.
///
/// Each strongly connected component is solved on its own by branching on
/// the vertices of a shortest cycle, pruned by a greedy count of
/// vertex-disjoint cycles.
pub fn min_feedback_vertex_set(
    g: &PlanarDigraph,
    limits: SolverLimits,
) -> Result<FvsResult, SolverError> {
    limits.check_n(g.n())?;
    let mut nodes = 0u64;
    let mut x = Vec::new();
    for sub in strong_pieces(g) {
        let mut search = Search {
            sub: &sub,
            nodes: &mut nodes,
            guard: limits.node_guard,
        };
        let none = vec![false; sub.n];
        let best = search
            .solve(&none, &none, sub.n + 1)?
            .expect("deleting every vertex is feasible");
        let best = search.lex_smallest(best)?;
        x.extend(best.into_iter().map(|v| sub.vertex[v]));
    }
    x.sort_unstable();
    let mut alive = vec![true; g.n()];
    for &v in &x {
        alive[v] = false;
    }
    let certificate = topological_order(g, &alive, &vec![true; g.m()]).expect("G − X is acyclic");
    Ok(FvsResult {
        size: x.len(),
        vertices: x,
        optimal: true,
        certificate,
    })
}

struct Search<'a> {
    sub: &'a Sub,
    nodes: &'a mut u64,
    guard: u64,
}

impl Search<'_> {
    /// A feedback set containing `forced`, avoiding `forbidden`, of size
    /// below `bound`, of minimum size among such.
    fn solve(
        &mut self,
        forced: &[bool],
        forbidden: &[bool],
        bound: usize,
    ) -> Result<Option<Vec<usize>>, SolverError> {
        let mut alive: Vec<bool> = forced.iter().map(|&f| !f).collect();
        let mut chosen: Vec<usize> = (0..self.sub.n).filter(|&v| forced[v]).collect();
        let mut forbidden = forbidden.to_vec();
        let mut best = None;
        let mut bound = bound;
        self.run(
            &mut alive,
            &mut forbidden,
            &mut chosen,
            &mut bound,
            &mut best,
        )?;
        Ok(best)
    }

    fn run(
        &mut self,
        alive: &mut Vec<bool>,
        forbidden: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        bound: &mut usize,
        best: &mut Option<Vec<usize>>,
    ) -> Result<(), SolverError> {
        *self.nodes += 1;
        if *self.nodes > self.guard {
            return Err(SolverError::GuardExceeded {
                what: "feedback vertex set search nodes",
                guard: self.guard,
            });
        }
        let all_arcs = vec![true; self.sub.arcs.len()];
        let Some(cycle) = self.sub.shortest_cycle(alive, &all_arcs) else {
            if chosen.len() < *bound {
                *bound = chosen.len();
                *best = Some(chosen.clone());
            }
            return Ok(());
        };
        if chosen.len() + self.lower_bound(alive, &all_arcs) >= *bound {
            return Ok(());
        }
        let fixed: Vec<bool> = alive
            .iter()
            .zip(forbidden.iter())
            .map(|(&a, &f)| a && f)
            .collect();
        if self.sub.shortest_cycle(&fixed, &all_arcs).is_some() {
            return Ok(());
        }
        let verts: Vec<usize> = cycle.iter().map(|&a| self.sub.arcs[a].0).collect();
        let mut newly = Vec::new();
        for &v in &verts {
            if !forbidden[v] {
                alive[v] = false;
                chosen.push(v);
                self.run(alive, forbidden, chosen, bound, best)?;
                chosen.pop();
                alive[v] = true;
                forbidden[v] = true;
                newly.push(v);
            }
        }
        for v in newly {
            forbidden[v] = false;
        }
        Ok(())
    }

    /// Number of vertex-disjoint cycles found greedily.
    fn lower_bound(&self, alive: &[bool], arcs: &[bool]) -> usize {
        let mut alive = alive.to_vec();
        let mut count = 0;
        while let Some(c) = self.sub.shortest_cycle(&alive, arcs) {
            count += 1;
            for a in c {
                alive[self.sub.arcs[a].0] = false;
            }
        }
        count
    }

    /// Walks vertices in increasing order, keeping each one whenever some
    /// optimal set contains it together with the vertices kept so far.
    fn lex_smallest(&mut self, witness: Vec<usize>) -> Result<Vec<usize>, SolverError> {
        let n = self.sub.n;
        let size = witness.len();
        let mut current = vec![false; n];
        for &v in &witness {
            current[v] = true;
        }
        let mut forced = vec![false; n];
        let mut forbidden = vec![false; n];
        for v in 0..n {
            if forced.iter().filter(|&&f| f).count() == size {
                break;
            }
            if !current[v] {
                forced[v] = true;
                match self.solve(&forced, &forbidden, size + 1)? {
                    Some(found) if found.len() == size => {
                        current = vec![false; n];
                        for &w in &found {
                            current[w] = true;
                        }
                    }
                    _ => {
                        forced[v] = false;
                        forbidden[v] = true;
                        continue;
                    }
                }
            }
            forced[v] = true;
        }
        let mut out: Vec<usize> = (0..n).filter(|&v| forced[v]).collect();
        out.sort_unstable_by_key(|&v| self.sub.vertex[v]);
        Ok(out)
    }
}

use serde::{Deserialize, Serialize};

use crate::embed::{ArcId, PlanarDigraph};
use crate::machinery::max_dicycle_packing;

use super::sub::{strong_pieces, Sub};
use super::{SolverError, SolverLimits};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FasResult {
    pub arcs: Vec<ArcId>,
    pub size: usize,
    pub optimal: bool,
    /// Size of a maximum arc-disjoint packing, when it was computable.
    pub packing: Option<usize>,
}

impl FasResult {
    /// Whether |A| = ν was established.
    pub fn ly_verified(&self) -> bool {
        self.packing == Some(self.size)
    }
}

/// Exact minimum feedback arc set, branching on the arcs of a shortest
/// cycle per strongly connected component. The result is compared with an
/// exact maximum packing; a mismatch is an error.
pub fn min_feedback_arc_set(
    g: &PlanarDigraph,
    limits: SolverLimits,
) -> Result<FasResult, SolverError> {
    let fas = feedback_arcs(g, limits)?;
    let packing = match max_dicycle_packing(g, limits.packing()) {
        Ok(p) => Some(p.len()),
        Err(_) => None,
    };
    if let Some(p) = packing {
        if p != fas.len() {
            return Err(SolverError::LYViolation {
                fas: fas.len(),
                packing: p,
            });
        }
    }
    Ok(FasResult {
        size: fas.len(),
        arcs: fas,
        optimal: true,
        packing,
    })
}

/// Exact minimum feedback arc set without the packing comparison.
pub(crate) fn feedback_arcs(
    g: &PlanarDigraph,
    limits: SolverLimits,
) -> Result<Vec<ArcId>, SolverError> {
    limits.check_n(g.n())?;
    let mut nodes = 0u64;
    let mut out = Vec::new();
    for sub in strong_pieces(g) {
        let mut search = Search {
            sub: &sub,
            nodes: &mut nodes,
            guard: limits.node_guard,
            alive: vec![true; sub.n],
        };
        let mut arcs = vec![true; sub.arcs.len()];
        let mut forbidden = vec![false; sub.arcs.len()];
        let mut chosen = Vec::new();
        let mut bound = sub.arcs.len() + 1;
        let mut best = None;
        search.run(
            &mut arcs,
            &mut forbidden,
            &mut chosen,
            &mut bound,
            &mut best,
        )?;
        let best = best.expect("deleting every arc is feasible");
        out.extend(best.into_iter().map(|a| sub.arc[a]));
    }
    out.sort_unstable();
    Ok(out)
}

struct Search<'a> {
    sub: &'a Sub,
    nodes: &'a mut u64,
    guard: u64,
    alive: Vec<bool>,
}

impl Search<'_> {
    fn run(
        &mut self,
        arcs: &mut Vec<bool>,
        forbidden: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        bound: &mut usize,
        best: &mut Option<Vec<usize>>,
    ) -> Result<(), SolverError> {
        *self.nodes += 1;
        if *self.nodes > self.guard {
            return Err(SolverError::GuardExceeded {
                what: "feedback arc set search nodes",
                guard: self.guard,
            });
        }
        let Some(cycle) = self.sub.shortest_cycle(&self.alive, arcs) else {
            if chosen.len() < *bound {
                *bound = chosen.len();
                *best = Some(chosen.clone());
            }
            return Ok(());
        };
        if chosen.len() + self.lower_bound(arcs) >= *bound {
            return Ok(());
        }
        let fixed: Vec<bool> = arcs
            .iter()
            .zip(forbidden.iter())
            .map(|(&a, &f)| a && f)
            .collect();
        if self.sub.shortest_cycle(&self.alive, &fixed).is_some() {
            return Ok(());
        }
        let mut newly = Vec::new();
        for &a in &cycle {
            if !forbidden[a] {
                arcs[a] = false;
                chosen.push(a);
                self.run(arcs, forbidden, chosen, bound, best)?;
                chosen.pop();
                arcs[a] = true;
                forbidden[a] = true;
                newly.push(a);
            }
        }
        for a in newly {
            forbidden[a] = false;
        }
        Ok(())
    }

    /// Number of arc-disjoint cycles found greedily.
    fn lower_bound(&self, arcs: &[bool]) -> usize {
        let mut arcs = arcs.to_vec();
        let mut count = 0;
        while let Some(c) = self.sub.shortest_cycle(&self.alive, &arcs) {
            count += 1;
            for a in c {
                arcs[a] = false;
            }
        }
        count
    }
}

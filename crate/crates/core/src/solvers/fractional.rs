use std::cmp::Ordering;
use std::collections::BTreeSet;

use num::{One, Zero};

use crate::embed::{enumerate_dicycles, ArcId, DiCycle, PlanarDigraph};
use crate::frac::Frac;

use super::lp::PackingLp;

/// Optimal fractional feedback vertex weights with the cycles generated on
/// the way and an optimal packing of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalFvs {
    pub weights: Vec<Frac>,
    pub objective: Frac,
    pub active_cycles: Vec<DiCycle>,
    /// Dual packing value per active cycle; sums to `objective`.
    pub packing: Vec<Frac>,
    pub rounds: usize,
    /// Minimum cycle weight at the final separation pass, `None` if acyclic.
    pub final_min_weight: Option<Frac>,
}

impl FractionalFvs {
    /// The final separation pass found no cycle of weight below 1, and the
    /// packing certifies optimality.
    pub fn certified(&self) -> bool {
        self.final_min_weight
            .as_ref()
            .is_none_or(|w| *w >= Frac::one())
            && self.packing.iter().sum::<Frac>() == self.objective
            && self.weights.iter().sum::<Frac>() == self.objective
    }

    /// Direct check of every dicycle, if there are at most `guard` of them.
    pub fn check_all_cycles(&self, g: &PlanarDigraph, guard: usize) -> Option<bool> {
        let cycles = enumerate_dicycles(g, guard).ok()?;
        Some(
            cycles.iter().all(|c| {
                c.vertices().iter().map(|&v| &self.weights[v]).sum::<Frac>() >= Frac::one()
            }),
        )
    }
}

/// τ*: minimum Σ w_v over w ∈ [0,1]^V with every dicycle of weight ≥ 1.
///
/// The dual packing LP is solved over a growing set of cycles. After each
/// solve the minimum-weight dicycle under the dual vertex weights is found;
/// every start vertex contributes its lightest closed walk, and all of
/// weight below 1 are added. The loop stops once the lightest cycle weighs
/// at least 1.
pub fn fractional_tau_star(g: &PlanarDigraph) -> FractionalFvs {
    let n = g.n();
    let mut lp = PackingLp::new(n);
    let mut active: Vec<DiCycle> = Vec::new();
    let mut known: BTreeSet<Vec<ArcId>> = BTreeSet::new();
    let mut weights = vec![Frac::zero(); n];
    let mut rounds = 0;
    let final_min = loop {
        rounds += 1;
        let per_start = lightest_per_start(g, &weights);
        let Some(min) = per_start.iter().map(|(w, _)| w).min().cloned() else {
            break None;
        };
        if min >= Frac::one() {
            break Some(min);
        }
        let mut added = false;
        for (w, c) in per_start {
            if w < Frac::one() && known.insert(c.arcs().to_vec()) {
                lp.add_column(c.vertices());
                active.push(c);
                added = true;
            }
        }
        assert!(added, "a violated cycle is already in the restricted LP");
        lp.solve();
        weights = lp.duals();
    };
    FractionalFvs {
        objective: lp.objective().clone(),
        weights,
        packing: lp.primal(),
        active_cycles: active,
        rounds,
        final_min_weight: final_min,
    }
}

/// Minimum-weight dicycle, vertex weights charged once per vertex. Ties go
/// to fewer arcs, then to the smaller arc sequence read from the smallest
/// vertex.
pub fn min_weight_dicycle(g: &PlanarDigraph, weights: &[Frac]) -> Option<(Frac, DiCycle)> {
    lightest_per_start(g, weights).into_iter().min_by(compare)
}

fn compare(a: &(Frac, DiCycle), b: &(Frac, DiCycle)) -> Ordering {
    a.0.cmp(&b.0)
        .then(a.1.len().cmp(&b.1.len()))
        .then_with(|| a.1.arcs().cmp(b.1.arcs()))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Label {
    weight: Frac,
    hops: usize,
    arcs: Vec<ArcId>,
}

/// For every start vertex s, the lightest simple cycle through s found by
/// a label-setting search from s (ties by hops, then arc sequence).
fn lightest_per_start(g: &PlanarDigraph, weights: &[Frac]) -> Vec<(Frac, DiCycle)> {
    let n = g.n();
    let adj = g.out_adjacency();
    let mut found: Vec<(Frac, DiCycle)> = Vec::new();
    for s in 0..n {
        let mut label: Vec<Option<Label>> = vec![None; n];
        let mut done = vec![false; n];
        label[s] = Some(Label {
            weight: weights[s].clone(),
            hops: 0,
            arcs: Vec::new(),
        });
        let mut best: Option<Label> = None;
        while let Some(u) = (0..n)
            .filter(|&v| !done[v] && label[v].is_some())
            .min_by(|&a, &b| label[a].cmp(&label[b]))
        {
            done[u] = true;
            let lu = label[u].clone().unwrap();
            if best.as_ref().is_some_and(|b| lu.weight > b.weight) {
                break;
            }
            for &a in &adj[u] {
                let v = g.arc(a).1;
                let mut arcs = lu.arcs.clone();
                arcs.push(a);
                if v == s {
                    let cand = Label {
                        weight: lu.weight.clone(),
                        hops: lu.hops + 1,
                        arcs,
                    };
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                } else if !done[v] {
                    let cand = Label {
                        weight: &lu.weight + &weights[v],
                        hops: lu.hops + 1,
                        arcs,
                    };
                    if label[v].as_ref().is_none_or(|l| cand < *l) {
                        label[v] = Some(cand);
                    }
                }
            }
        }
        if let Some(b) = best {
            let c = DiCycle::from_arcs(g, &b.arcs).expect("label paths are simple");
            found.push((b.weight, c));
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::{frac, int};
    use crate::test_graphs::*;

    #[test]
    fn single_cycle_needs_one_unit() {
        for len in 3..7 {
            let r = fractional_tau_star(&directed_cycle(len));
            assert_eq!(r.objective, int(1));
            assert!(r.certified());
        }
    }

    #[test]
    fn acyclic_is_zero() {
        let r = fractional_tau_star(&transitive_triangle());
        assert_eq!(r.objective, int(0));
        assert!(r.certified());
        assert!(r.active_cycles.is_empty());
    }

    #[test]
    fn bowtie_puts_weight_on_the_shared_vertex() {
        let g = bowtie();
        let r = fractional_tau_star(&g);
        assert_eq!(r.objective, int(1));
        assert_eq!(r.weights[0], int(1));
        assert_eq!(r.check_all_cycles(&g, 100), Some(true));
    }

    #[test]
    fn bidirected_triangle_is_three_halves() {
        let g = bidirected_triangle();
        let r = fractional_tau_star(&g);
        assert_eq!(r.objective, frac(3, 2));
        assert!(r.weights.iter().all(|w| *w == frac(1, 2)));
        assert!(r.certified());
    }

    #[test]
    fn lightest_cycle_prefers_fewer_arcs() {
        let g = nested_rings(2, 4);
        let zero = vec![int(0); g.n()];
        let (w, c) = min_weight_dicycle(&g, &zero).unwrap();
        assert_eq!(w, int(0));
        assert_eq!(c.len(), 4);
        assert_eq!(c.vertices()[0], 0);
    }
}

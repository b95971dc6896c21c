use serde::{Deserialize, Serialize};

use crate::embed::PlanarDigraph;

use super::packing::CycleCollection;
use super::uncross::{interiors, nesting, Nesting};
use super::MachineryError;

/// A forest node, or the unbounded region outside every root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionNode {
    Cycle(usize),
    Outer,
}

/// Nesting forest of a non-crossing family; node ids index the collection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleForest {
    pub nodes: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub roots: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    #[serde(skip)]
    interior: Vec<Vec<bool>>,
}

pub fn nesting_forest(
    g: &PlanarDigraph,
    coll: &CycleCollection,
) -> Result<CycleForest, MachineryError> {
    let interior = interiors(g, &coll.cycles);
    let k = interior.len();
    let size: Vec<usize> = interior
        .iter()
        .map(|m| m.iter().filter(|&&b| b).count())
        .collect();
    let mut parent = vec![None; k];
    for i in 0..k {
        let mut best: Option<usize> = None;
        for j in 0..k {
            if i == j {
                continue;
            }
            match nesting(&interior[i], &interior[j]) {
                Nesting::Crossing => return Err(MachineryError::CrossingInput { a: i, b: j }),
                Nesting::Inside if best.is_none_or(|b| size[j] < size[b]) => {
                    best = Some(j);
                }
                _ => {}
            }
        }
        parent[i] = best;
    }
    let mut children = vec![Vec::new(); k];
    let mut roots = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(i),
            None => roots.push(i),
        }
    }
    Ok(CycleForest {
        nodes: (0..k).collect(),
        parent,
        roots,
        children,
        interior,
    })
}

impl CycleForest {
    pub fn interior(&self, node: usize) -> &[bool] {
        &self.interior[node]
    }

    /// Boundary cycles of a region: the node followed by its children, or
    /// the roots for the outer region.
    pub fn boundary_cycles(&self, node: RegionNode) -> Vec<usize> {
        match node {
            RegionNode::Cycle(c) => std::iter::once(c)
                .chain(self.children[c].iter().copied())
                .collect(),
            RegionNode::Outer => self.roots.clone(),
        }
    }

    pub fn child_count(&self, node: RegionNode) -> usize {
        match node {
            RegionNode::Cycle(c) => self.children[c].len(),
            RegionNode::Outer => self.roots.len(),
        }
    }

    /// Faces of G lying in the region of `node`.
    pub fn region_faces(&self, g: &PlanarDigraph, node: RegionNode) -> Vec<bool> {
        let f = g.faces().len();
        let (mut mask, holes) = match node {
            RegionNode::Cycle(c) => (self.interior[c].clone(), &self.children[c]),
            RegionNode::Outer => (vec![true; f], &self.roots),
        };
        for &h in holes {
            for (x, &inside) in mask.iter_mut().zip(&self.interior[h]) {
                if inside {
                    *x = false;
                }
            }
        }
        mask
    }

    pub fn depth(&self, node: usize) -> usize {
        let mut d = 1;
        let mut x = node;
        while let Some(p) = self.parent[x] {
            d += 1;
            x = p;
        }
        d
    }
}

/// Σ (3·d(F) − 6) over the faces of the region.
pub fn region_phi(g: &PlanarDigraph, forest: &CycleForest, node: RegionNode) -> i64 {
    forest
        .region_faces(g, node)
        .iter()
        .zip(g.faces())
        .filter(|(&inside, _)| inside)
        .map(|(_, f)| 3 * f.degree as i64 - 6)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::euler_phi_total;
    use crate::machinery::packing::{max_dicycle_packing, PackingLimits};
    use crate::machinery::uncross::uncross;
    use crate::test_graphs::*;

    fn forest_of(g: &PlanarDigraph) -> (CycleCollection, CycleForest) {
        let p = max_dicycle_packing(g, PackingLimits::default()).unwrap();
        let p = uncross(g, &p).unwrap();
        let f = nesting_forest(g, &p).unwrap();
        (p, f)
    }

    #[test]
    fn single_cycle_regions() {
        for len in 3..8 {
            let g = directed_cycle(len);
            let (_, f) = forest_of(&g);
            let l = len as i64;
            assert_eq!(region_phi(&g, &f, RegionNode::Cycle(0)), 3 * l - 6);
            assert_eq!(region_phi(&g, &f, RegionNode::Outer), 3 * l - 6);
        }
    }

    #[test]
    fn disjoint_cycles_are_two_roots() {
        let g = two_disjoint_triangles();
        let (_, f) = forest_of(&g);
        assert_eq!(f.roots.len(), 2);
        assert!(f.parent.iter().all(|p| p.is_none()));
    }

    #[test]
    fn three_levels_form_a_chain() {
        let g = nested_rings(3, 4);
        let (p, f) = forest_of(&g);
        assert_eq!(p.len(), 3);
        assert_eq!(f.roots.len(), 1);
        let depths: Vec<_> = (0..3).map(|i| f.depth(i)).collect();
        let mut sorted = depths.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        let total: i64 = (0..3)
            .map(|i| region_phi(&g, &f, RegionNode::Cycle(i)))
            .sum::<i64>()
            + region_phi(&g, &f, RegionNode::Outer);
        assert_eq!(total, euler_phi_total(&g).unwrap());
    }

    #[test]
    fn inner_cycle_has_outer_parent() {
        let g = nested_rings(2, 5);
        let (p, f) = forest_of(&g);
        let outer = p.cycles.iter().position(|c| c.vertices()[0] == 0).unwrap();
        let inner = 1 - outer;
        assert_eq!(f.parent[inner], Some(outer));
        assert_eq!(f.roots, vec![outer]);
    }
}

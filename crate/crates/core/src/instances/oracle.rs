use crate::embed::{enumerate_dicycles, topological_order, PlanarDigraph};

use super::generate::InstanceError;

/// Largest n accepted by [`brute_force_tau`].
pub const TAU_ORACLE_MAX_N: usize = 14;
/// Largest cycle count accepted by [`brute_force_packing`].
pub const PACKING_ORACLE_MAX_CYCLES: usize = 20;

/// Minimum |X| with G − X acyclic, by trying all vertex subsets in order of
/// size.
pub fn brute_force_tau(g: &PlanarDigraph) -> Result<usize, InstanceError> {
    let n = g.n();
    if n > TAU_ORACLE_MAX_N {
        return Err(InstanceError::GuardExceeded {
            what: "vertex count",
            guard: TAU_ORACLE_MAX_N,
        });
    }
    let arcs = vec![true; g.m()];
    let mut by_size: Vec<u32> = (0..1u32 << n).collect();
    by_size.sort_by_key(|s| s.count_ones());
    for s in by_size {
        let alive: Vec<bool> = (0..n).map(|v| s >> v & 1 == 0).collect();
        if topological_order(g, &alive, &arcs).is_some() {
            return Ok(s.count_ones() as usize);
        }
    }
    unreachable!("removing every vertex leaves an acyclic graph")
}

/// Maximum number of pairwise arc-disjoint dicycles, by checking every
/// subfamily of the enumerated cycles.
pub fn brute_force_packing(g: &PlanarDigraph) -> Result<usize, InstanceError> {
    let guard = PACKING_ORACLE_MAX_CYCLES;
    let cycles = enumerate_dicycles(g, guard).map_err(|_| InstanceError::GuardExceeded {
        what: "dicycle count",
        guard,
    })?;
    let masks: Vec<Vec<bool>> = cycles
        .iter()
        .map(|c| {
            let mut m = vec![false; g.m()];
            for &a in c.arcs() {
                m[a] = true;
            }
            m
        })
        .collect();
    let mut best = 0;
    'subsets: for s in 0u32..1 << cycles.len() {
        let size = s.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut used = vec![false; g.m()];
        for (i, mask) in masks.iter().enumerate() {
            if s >> i & 1 == 1 {
                for (u, &x) in used.iter_mut().zip(mask) {
                    if x {
                        if *u {
                            continue 'subsets;
                        }
                        *u = true;
                    }
                }
            }
        }
        best = size;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::*;

    #[test]
    fn oracle_cases() {
        assert_eq!(brute_force_tau(&directed_cycle(5)).unwrap(), 1);
        assert_eq!(brute_force_tau(&transitive_triangle()).unwrap(), 0);
        assert_eq!(brute_force_tau(&bidirected_triangle()).unwrap(), 2);
        assert_eq!(brute_force_packing(&directed_cycle(5)).unwrap(), 1);
        assert_eq!(brute_force_packing(&two_disjoint_triangles()).unwrap(), 2);
        assert_eq!(brute_force_packing(&bidirected_triangle()).unwrap(), 3);
        assert!(brute_force_tau(&nested_rings(4, 4)).is_err());
    }
}

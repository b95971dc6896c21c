use crate::embed::{enumerate_dicycles, CycleError, DiCycle, PlanarDigraph};

/// A family of dicycles with its disjointness and crossing flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCollection {
    pub cycles: Vec<DiCycle>,
    pub arc_disjoint: bool,
    pub non_crossing: bool,
}

impl CycleCollection {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn check_arc_disjoint(m: usize, cycles: &[DiCycle]) -> bool {
        let mut used = vec![false; m];
        for c in cycles {
            for &a in c.arcs() {
                if std::mem::replace(&mut used[a], true) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PackingLimits {
    pub cycle_guard: usize,
    pub node_guard: u64,
}

impl Default for PackingLimits {
    fn default() -> Self {
        PackingLimits {
            cycle_guard: 20_000,
            node_guard: 2_000_000,
        }
    }
}

/// Maximum arc-disjoint dicycle packing by exact branch-and-bound over the
/// enumerated cycles.
pub fn max_dicycle_packing(
    g: &PlanarDigraph,
    limits: PackingLimits,
) -> Result<CycleCollection, CycleError> {
    let cycles = enumerate_dicycles(g, limits.cycle_guard)?;
    let chosen = max_packing_among(g.m(), &cycles, limits.node_guard, |_, _| true).ok_or(
        CycleError::GuardExceeded {
            guard: limits.node_guard as usize,
        },
    )?;
    let picked: Vec<DiCycle> = chosen.into_iter().map(|i| cycles[i].clone()).collect();
    Ok(CycleCollection {
        cycles: picked,
        arc_disjoint: true,
        non_crossing: false,
    })
}

/// Exact maximum set of pairwise arc-disjoint cycles from `cycles` that are
/// also pairwise `compatible`. Returns indices into `cycles`, or `None` when
/// the node guard is hit.
///
/// Cycles are tried shortest first (ties by index); each node branches on
/// including the next cycle before excluding it.
pub(crate) fn max_packing_among<F>(
    m: usize,
    cycles: &[DiCycle],
    node_guard: u64,
    compatible: F,
) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&i| (cycles[i].len(), i));
    let masks: Vec<ArcMask> = order
        .iter()
        .map(|&i| ArcMask::from_arcs(m, cycles[i].arcs()))
        .collect();
    let mut search = PackSearch {
        m,
        lens: order.iter().map(|&i| cycles[i].len()).collect(),
        masks,
        arcs: order.iter().map(|&i| cycles[i].arcs().to_vec()).collect(),
        compatible: &|a: usize, b: usize| compatible(order[a], order[b]),
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        node_guard,
    };
    let all: Vec<usize> = (0..order.len()).collect();
    let used = ArcMask::empty(m);
    if !search.run(&all, &used) {
        return None;
    }
    let mut out: Vec<usize> = search.best.iter().map(|&k| order[k]).collect();
    out.sort_unstable();
    Some(out)
}

struct PackSearch<'a> {
    m: usize,
    lens: Vec<usize>,
    masks: Vec<ArcMask>,
    arcs: Vec<Vec<usize>>,
    compatible: &'a dyn Fn(usize, usize) -> bool,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    node_guard: u64,
}

impl PackSearch<'_> {
    /// `cands` are sorted candidate positions compatible with `current`.
    fn run(&mut self, cands: &[usize], used: &ArcMask) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_guard {
            return false;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if cands.is_empty() || self.current.len() + self.upper_bound(cands, used) <= self.best.len()
        {
            return true;
        }
        let pick = cands[0];
        let rest = &cands[1..];

        let mut next_used = used.clone();
        next_used.union_with(&self.masks[pick]);
        let included: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&c| !self.masks[c].intersects(&self.masks[pick]) && (self.compatible)(pick, c))
            .collect();
        self.current.push(pick);
        if !self.run(&included, &next_used) {
            return false;
        }
        self.current.pop();
        self.run(rest, used)
    }

    fn upper_bound(&self, cands: &[usize], used: &ArcMask) -> usize {
        // free arcs over the shortest candidate length
        let mut covered = ArcMask::empty(self.m);
        for &c in cands {
            covered.union_with(&self.masks[c]);
        }
        let free = covered.count_minus(used);
        let min_len = self.lens[cands[0]];
        let by_arcs = free / min_len;
        if by_arcs <= self.best.len().saturating_sub(self.current.len()) {
            return by_arcs;
        }
        // any arc set hitting every candidate bounds the packing
        let mut hits = vec![0usize; self.m];
        for &c in cands {
            for &a in &self.arcs[c] {
                hits[a] += 1;
            }
        }
        let mut alive = vec![true; cands.len()];
        let mut remaining = cands.len();
        let mut hitting = 0;
        while remaining > 0 {
            let arc = (0..self.m)
                .max_by_key(|&a| (hits[a], usize::MAX - a))
                .unwrap();
            hitting += 1;
            for (k, &c) in cands.iter().enumerate() {
                if alive[k] && self.masks[c].contains(arc) {
                    alive[k] = false;
                    remaining -= 1;
                    for &a in &self.arcs[c] {
                        hits[a] -= 1;
                    }
                }
            }
        }
        by_arcs.min(hitting).min(cands.len())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ArcMask(Vec<u64>);

impl ArcMask {
    pub(crate) fn empty(m: usize) -> Self {
        ArcMask(vec![0; m.div_ceil(64).max(1)])
    }

    pub(crate) fn from_arcs(m: usize, arcs: &[usize]) -> Self {
        let mut s = Self::empty(m);
        for &a in arcs {
            s.0[a / 64] |= 1 << (a % 64);
        }
        s
    }

    pub(crate) fn contains(&self, a: usize) -> bool {
        self.0[a / 64] >> (a % 64) & 1 == 1
    }

    pub(crate) fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).any(|(x, y)| x & y != 0)
    }

    pub(crate) fn union_with(&mut self, other: &Self) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x |= y;
        }
    }

    fn count_minus(&self, other: &Self) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| (x & !y).count_ones() as usize)
            .sum()
    }
}

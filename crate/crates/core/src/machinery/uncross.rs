use std::collections::HashMap;

use crate::embed::{enumerate_dicycles, ArcId, DiCycle, End, PlanarDigraph, Vertex};

use super::packing::{max_packing_among, CycleCollection, PackingLimits};
use super::MachineryError;

/// Interior face mask of every cycle.
pub fn interiors(g: &PlanarDigraph, cycles: &[DiCycle]) -> Vec<Vec<bool>> {
    cycles.iter().map(|c| g.interior_faces(c.arcs())).collect()
}

/// Relation between two interiors given as face masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nesting {
    Disjoint,
    Inside,
    Contains,
    Crossing,
}

pub fn nesting(a: &[bool], b: &[bool]) -> Nesting {
    let (mut both, mut only_a, mut only_b) = (false, false, false);
    for (&x, &y) in a.iter().zip(b) {
        both |= x && y;
        only_a |= x && !y;
        only_b |= !x && y;
    }
    match (both, only_a, only_b) {
        (false, _, _) => Nesting::Disjoint,
        (true, false, _) => Nesting::Inside,
        (true, true, false) => Nesting::Contains,
        (true, true, true) => Nesting::Crossing,
    }
}

/// Pairwise test: open interiors disjoint or nested, decided by face
/// labelling only.
pub fn is_non_crossing(g: &PlanarDigraph, cycles: &[DiCycle]) -> bool {
    let masks = interiors(g, cycles);
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if nesting(&masks[i], &masks[j]) == Nesting::Crossing {
                return false;
            }
        }
    }
    true
}

/// Re-routes an arc-disjoint family into a non-crossing one on the same
/// arc set with the same cardinality.
///
/// The union of the cycles is balanced at every vertex. At each vertex the
/// incoming and outgoing union ends are paired by a non-crossing matching in
/// rotation order, which yields pairwise non-crossing closed trails. A trail
/// that revisits a vertex is split there at two of its passes that face each
/// other with no other pass in between; this keeps every pairing
/// non-crossing and leaves only simple cycles.
pub fn uncross(
    g: &PlanarDigraph,
    coll: &CycleCollection,
) -> Result<CycleCollection, MachineryError> {
    uncross_with(g, coll, PackingLimits::default())
}

pub fn uncross_with(
    g: &PlanarDigraph,
    coll: &CycleCollection,
    limits: PackingLimits,
) -> Result<CycleCollection, MachineryError> {
    if !CycleCollection::check_arc_disjoint(g.m(), &coll.cycles) {
        return Err(MachineryError::NotArcDisjoint);
    }
    if is_non_crossing(g, &coll.cycles) {
        return Ok(CycleCollection {
            cycles: coll.cycles.clone(),
            arc_disjoint: true,
            non_crossing: true,
        });
    }

    let mut in_union = vec![false; g.m()];
    for c in &coll.cycles {
        for &a in c.arcs() {
            in_union[a] = true;
        }
    }
    let mut state = Pairing::new(g, &in_union)?;
    while let Some((v, p, q)) = state.find_split() {
        state.split(v, p, q);
    }
    let mut cycles = Vec::new();
    for trail in state.trails() {
        cycles.push(
            DiCycle::from_arcs(g, &trail)
                .map_err(|e| MachineryError::UncrossFailed(e.to_string()))?,
        );
    }
    cycles.sort();

    if !is_non_crossing(g, &cycles) {
        return Err(MachineryError::UncrossFailed(
            "re-routed family still crosses".into(),
        ));
    }
    if cycles.len() < coll.len() {
        cycles = non_crossing_packing(g, coll.len(), limits)?;
    }
    if cycles.len() != coll.len() {
        return Err(MachineryError::CardinalityChanged {
            before: coll.len(),
            after: cycles.len(),
        });
    }
    Ok(CycleCollection {
        cycles,
        arc_disjoint: true,
        non_crossing: true,
    })
}

/// Exact search for a pairwise non-crossing packing of the requested size.
fn non_crossing_packing(
    g: &PlanarDigraph,
    target: usize,
    limits: PackingLimits,
) -> Result<Vec<DiCycle>, MachineryError> {
    let all = enumerate_dicycles(g, limits.cycle_guard)?;
    let masks = interiors(g, &all);
    let picked = max_packing_among(g.m(), &all, limits.node_guard, |a, b| {
        nesting(&masks[a], &masks[b]) != Nesting::Crossing
    })
    .ok_or(MachineryError::UncrossFailed(
        "node guard hit in non-crossing search".into(),
    ))?;
    if picked.len() < target {
        return Err(MachineryError::CardinalityChanged {
            before: target,
            after: picked.len(),
        });
    }
    Ok(picked
        .into_iter()
        .take(target)
        .map(|i| all[i].clone())
        .collect())
}

/// Positions of an arriving and a leaving end in one rotation.
type Pass = (usize, usize);

/// In/out pairing of union ends at every vertex.
struct Pairing<'g> {
    g: &'g PlanarDigraph,
    // union ends around each vertex, in rotation order
    ends: Vec<Vec<End>>,
    // position of an end inside `ends[v]`
    slot: HashMap<End, usize>,
    // successor arc of each union arc
    succ: HashMap<ArcId, ArcId>,
}

impl<'g> Pairing<'g> {
    fn new(g: &'g PlanarDigraph, in_union: &[bool]) -> Result<Self, MachineryError> {
        let mut ends = Vec::with_capacity(g.n());
        let mut slot = HashMap::new();
        let mut succ = HashMap::new();
        for v in 0..g.n() {
            let list: Vec<End> = g
                .rotation(v)
                .iter()
                .copied()
                .filter(|e| in_union[e.arc])
                .collect();
            for (i, e) in list.iter().enumerate() {
                slot.insert(*e, i);
            }
            for (inc, out) in non_crossing_matching(&list).ok_or_else(|| {
                MachineryError::UncrossFailed(format!("union unbalanced at vertex {v}"))
            })? {
                succ.insert(list[inc].arc, list[out].arc);
            }
            ends.push(list);
        }
        Ok(Pairing {
            g,
            ends,
            slot,
            succ,
        })
    }

    fn trails(&self) -> Vec<Vec<ArcId>> {
        let mut arcs: Vec<ArcId> = self.succ.keys().copied().collect();
        arcs.sort_unstable();
        let mut seen = vec![false; self.g.m()];
        let mut out = Vec::new();
        for start in arcs {
            if seen[start] {
                continue;
            }
            let mut trail = Vec::new();
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                trail.push(a);
                a = self.succ[&a];
            }
            out.push(trail);
        }
        out
    }

    /// Chords at `v` as (in position, out position).
    fn chords(&self, v: Vertex) -> Vec<(usize, usize)> {
        self.ends[v]
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.at_tail)
            .map(|(i, e)| (i, self.slot[&End::tail(self.succ[&e.arc])]))
            .collect()
    }

    /// A vertex and two passes of the same trail there that can be swapped.
    fn find_split(&self) -> Option<(Vertex, Pass, Pass)> {
        let mut trail_of = vec![usize::MAX; self.g.m()];
        for (t, trail) in self.trails().iter().enumerate() {
            for &a in trail {
                trail_of[a] = t;
            }
        }
        for v in 0..self.g.n() {
            let chords = self.chords(v);
            if chords.len() < 2 {
                continue;
            }
            let owner = |c: &(usize, usize)| trail_of[self.ends[v][c.0].arc];
            for i in 0..chords.len() {
                for j in i + 1..chords.len() {
                    let (p, q) = (chords[i], chords[j]);
                    if owner(&p) != owner(&q) {
                        continue;
                    }
                    let separated = chords
                        .iter()
                        .enumerate()
                        .any(|(r, &c)| r != i && r != j && side(c, p) != side(c, q));
                    if !separated && alternating(p, q) {
                        return Some((v, p, q));
                    }
                }
            }
        }
        None
    }

    fn split(&mut self, v: Vertex, p: (usize, usize), q: (usize, usize)) {
        let arc = |i: usize| self.ends[v][i].arc;
        let (in_p, out_p, in_q, out_q) = (arc(p.0), arc(p.1), arc(q.0), arc(q.1));
        self.succ.insert(in_p, out_q);
        self.succ.insert(in_q, out_p);
    }
}

/// Which side of chord `c` the chord `x` lies on (chords never cross).
fn side(c: (usize, usize), x: (usize, usize)) -> bool {
    let (lo, hi) = (c.0.min(c.1), c.0.max(c.1));
    lo < x.0 && x.0 < hi
}

/// True when the four ends read in, out, in, out around the vertex.
fn alternating(p: (usize, usize), q: (usize, usize)) -> bool {
    let mut pts = [(p.0, true), (p.1, false), (q.0, true), (q.1, false)];
    pts.sort_unstable();
    pts[0].1 != pts[1].1 && pts[1].1 != pts[2].1 && pts[2].1 != pts[3].1
}

/// Pairs every incoming end with an outgoing end so that no two pairs
/// interleave around the circle. Returns `None` when counts differ.
pub(crate) fn non_crossing_matching(ends: &[End]) -> Option<Vec<(usize, usize)>> {
    let len = ends.len();
    let weight = |e: &End| if e.at_tail { -1i64 } else { 1 };
    if ends.iter().map(weight).sum::<i64>() != 0 {
        return None;
    }
    // start after the lowest prefix so the running count never dips below 0
    let mut prefix = 0;
    let mut best = (0, 0);
    for (i, e) in ends.iter().enumerate() {
        prefix += weight(e);
        if prefix < best.0 {
            best = (prefix, i + 1);
        }
    }
    let start = best.1 % len.max(1);
    let mut open = Vec::new();
    let mut pairs = Vec::new();
    for k in 0..len {
        let i = (start + k) % len;
        if ends[i].at_tail {
            pairs.push((open.pop()?, i));
        } else {
            open.push(i);
        }
    }
    pairs.sort_unstable();
    Some(pairs)
}

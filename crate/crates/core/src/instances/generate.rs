use std::collections::HashSet;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embed::{
    arc_adjacency, digirth, enumerate_dicycles, shortest_cycle, ArcId, Dart, EmbedError, Girth,
    PlanarDigraph,
};

use super::coords::embedding_from_coordinates;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Grid,
    CylinderGrid,
    StackedCycles,
    RandomPlanarFiltered,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Grid,
        Family::CylinderGrid,
        Family::StackedCycles,
        Family::RandomPlanarFiltered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::CylinderGrid => "cylinder-grid",
            Family::StackedCycles => "stacked-cycles",
            Family::RandomPlanarFiltered => "random-planar-filtered",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n_target: usize,
    pub g_target: usize,
    pub seed: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("infeasible spec: {0}")]
    Infeasible(String),
    #[error("no valid instance after {attempts} attempts")]
    RetriesExhausted { attempts: usize },
    #[error("{what} exceeds guard {guard}")]
    GuardExceeded { what: &'static str, guard: usize },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

const ATTEMPTS: usize = 50;

/// Builds a connected embedded digraph with digirth ≥ `g_target` and
/// exactly `n_target` vertices. The declared digirth of the output is its
/// actual digirth. Identical specs give identical graphs.
pub fn generate(spec: &GeneratorSpec) -> Result<PlanarDigraph, InstanceError> {
    let n = spec.n_target;
    let g = spec.g_target;
    if g < 2 {
        return Err(InstanceError::Infeasible("target digirth below 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let graph = match spec.family {
        Family::Grid => {
            if n < 2 {
                return Err(InstanceError::Infeasible("grid needs 2 vertices".into()));
            }
            grid(n, &mut rng)?
        }
        Family::CylinderGrid | Family::StackedCycles => {
            if n < g || g < 3 {
                return Err(InstanceError::Infeasible(format!(
                    "{} needs n ≥ g ≥ 3 (n = {n}, g = {g})",
                    spec.family
                )));
            }
            let stacked = spec.family == Family::StackedCycles;
            (0..ATTEMPTS)
                .find_map(|_| rings(n, g, stacked, &mut rng).transpose())
                .transpose()?
                .ok_or(InstanceError::RetriesExhausted { attempts: ATTEMPTS })?
        }
        Family::RandomPlanarFiltered => {
            if n < 3 {
                return Err(InstanceError::Infeasible(
                    "random planar needs 3 vertices".into(),
                ));
            }
            (0..ATTEMPTS)
                .find_map(|_| random_planar(n, g, &mut rng).transpose())
                .transpose()?
                .ok_or(InstanceError::RetriesExhausted { attempts: ATTEMPTS })?
        }
    };
    let actual = digirth(&graph);
    debug_assert!(actual >= Girth::Finite(g) || spec.family == Family::Grid);
    Ok(graph.with_declared_girth(actual)?)
}

/// Grid drawing, `c` columns, the last row possibly partial; arcs follow a
/// random vertex ranking, so the result is acyclic.
fn grid(n: usize, rng: &mut ChaCha8Rng) -> Result<PlanarDigraph, InstanceError> {
    let c = ((n as f64).sqrt().round() as usize).max(2);
    let pts: Vec<(f64, f64)> = (0..n).map(|i| ((i % c) as f64, (i / c) as f64)).collect();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        let mut nbrs = Vec::new();
        if i % c + 1 < c && i + 1 < n {
            nbrs.push(i + 1);
        }
        if i + c < n {
            nbrs.push(i + c);
        }
        for j in nbrs {
            arcs.push(if rank[i] < rank[j] { (i, j) } else { (j, i) });
        }
    }
    Ok(embedding_from_coordinates(&pts, arcs, Girth::Infinite)?)
}

/// Concentric rings of length g, outermost first, linked by arcs between
/// consecutive rings; the remaining n mod g vertices hang inside the
/// innermost ring.
///
/// Cylinder grids use random ring directions and randomly oriented spokes,
/// repaired by flipping or dropping spokes on cycles shorter than g.
/// Stacked cycles orient every link inward and add random diagonals, so the
/// rings are the only cycles.
fn rings(
    n: usize,
    g: usize,
    stacked: bool,
    rng: &mut ChaCha8Rng,
) -> Result<Option<PlanarDigraph>, InstanceError> {
    let levels = n / g;
    let extra = n - levels * g;
    let mut pts = Vec::with_capacity(n);
    let mut arcs = Vec::new();
    let at = |i: usize, j: usize| i * g + j % g;
    for i in 0..levels {
        let r = (levels - i) as f64 + 1.0;
        let ccw = rng.gen_bool(0.5);
        for j in 0..g {
            let t = PI + TAU * j as f64 / g as f64;
            pts.push((r * t.cos(), r * t.sin()));
            arcs.push(if ccw {
                (at(i, j), at(i, j + 1))
            } else {
                (at(i, j + 1), at(i, j))
            });
        }
    }
    let mut links = Vec::new();
    for i in 0..levels.saturating_sub(1) {
        let mut spokes: Vec<usize> = (0..g).filter(|_| rng.gen_bool(0.5)).collect();
        if spokes.is_empty() {
            spokes.push(rng.gen_range(0..g));
        }
        for &j in &spokes {
            let inward = stacked || rng.gen_bool(0.5);
            let (o, inner) = (at(i, j), at(i + 1, j));
            links.push(arcs.len());
            arcs.push(if inward { (o, inner) } else { (inner, o) });
        }
        if stacked {
            for j in 0..g {
                if rng.gen_bool(0.5) {
                    arcs.push(if rng.gen_bool(0.5) {
                        (at(i, j), at(i + 1, j + 1))
                    } else {
                        (at(i, j + 1), at(i + 1, j))
                    });
                }
            }
        }
    }
    for j in 0..extra {
        let t = PI + TAU * j as f64 / g as f64;
        pts.push((t.cos(), t.sin()));
        let ring = at(levels - 1, j);
        let v = levels * g + j;
        arcs.push(if stacked || rng.gen_bool(0.5) {
            (ring, v)
        } else {
            (v, ring)
        });
    }
    let graph = embedding_from_coordinates(&pts, arcs, Girth::Infinite)?;
    if stacked {
        return Ok(Some(graph));
    }
    Ok(repair(graph, g, Some(&links), rng))
}

/// Random points in a disk joined greedily by non-crossing segments, then
/// thinned at random. Unions of faces with simple boundaries of length ≥ g
/// are grown at random, and arc-disjoint ones are oriented as dicycles.
/// The other arcs follow a random vertex ranking; only they may be reversed
/// by the repair step.
fn random_planar(
    n: usize,
    g: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<PlanarDigraph>, InstanceError> {
    let mut pts: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let r = (rng.gen_range(0.0f64..9.0)).sqrt();
            let t = rng.gen_range(0.0..TAU);
            (r * t.cos(), r * t.sin())
        })
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let len = |&(u, v): &(usize, usize)| {
        let (a, b) = (pts[u], pts[v]);
        (a.0 - b.0).hypot(a.1 - b.1)
    };
    pairs.sort_by(|x, y| len(x).total_cmp(&len(y)));
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for p in pairs {
        if edges.iter().all(|&e| !crosses(&pts, p, e)) {
            edges.push(p);
        }
    }
    let keep_p = rng.gen_range(0.3..0.8);
    edges.shuffle(rng);
    let mut i = 0;
    while i < edges.len() {
        if !rng.gen_bool(keep_p) {
            let e = edges.swap_remove(i);
            if connected(n, &edges) {
                continue;
            }
            edges.push(e);
            let last = edges.len() - 1;
            edges.swap(i, last);
        }
        i += 1;
    }
    edges.sort_unstable();
    let drawing = embedding_from_coordinates(&pts, edges.clone(), Girth::Infinite)?;

    let mut planted: Vec<Option<bool>> = vec![None; edges.len()];
    let mut used = vec![false; n];
    for _ in 0..4 * n {
        let fcount = drawing.faces().len();
        let mut blob = vec![false; fcount];
        blob[rng.gen_range(0..fcount)] = true;
        let want = rng.gen_range(g..=g + 1);
        let mut cycle = simple_boundary(&drawing, &blob);
        while cycle.as_ref().is_none_or(|c| c.len() < want) {
            let mut options: Vec<usize> = (0..fcount)
                .filter(|&f| !blob[f])
                .filter(|&f| {
                    let mut next = blob.clone();
                    next[f] = true;
                    simple_boundary(&drawing, &next).is_some()
                        && drawing.faces()[f]
                            .boundary
                            .iter()
                            .any(|&d| blob[drawing.face_of(d.reversed())])
                })
                .collect();
            if options.is_empty() {
                break;
            }
            options.shuffle(rng);
            blob[options[0]] = true;
            cycle = simple_boundary(&drawing, &blob);
        }
        let Some(cycle) = cycle else { continue };
        let touching = cycle.iter().any(|&d| used[drawing.origin(d)]);
        let shared = cycle.iter().any(|d| planted[d.arc].is_some());
        if cycle.len() < g || shared || (touching && rng.gen_bool(0.5)) {
            continue;
        }
        for &d in &cycle {
            used[drawing.origin(d)] = true;
        }
        let reverse = rng.gen_bool(0.5);
        for d in cycle {
            planted[d.arc] = Some(d.forward != reverse);
        }
    }
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut free = Vec::new();
    let arcs: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .map(|(a, &(u, v))| {
            let forward = planted[a].unwrap_or_else(|| {
                free.push(a);
                rank[u] < rank[v]
            });
            if forward {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    let graph = embedding_from_coordinates(&pts, arcs, Girth::Infinite)?;
    Ok(repair(graph, g, Some(&free), rng))
}

/// Darts of the faces in `blob` whose other side lies outside it, if they
/// form one simple closed curve.
fn simple_boundary(g: &PlanarDigraph, blob: &[bool]) -> Option<Vec<Dart>> {
    let darts: Vec<Dart> = blob
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .flat_map(|(f, _)| g.faces()[f].boundary.iter().copied())
        .filter(|&d| !blob[g.face_of(d.reversed())])
        .collect();
    if darts.is_empty() {
        return None;
    }
    let mut out_of = vec![None; g.n()];
    for &d in &darts {
        if out_of[g.origin(d)].replace(d).is_some() {
            return None;
        }
    }
    let mut walk = vec![darts[0]];
    loop {
        let next = out_of[g.destination(*walk.last().unwrap())]?;
        if next == darts[0] {
            break;
        }
        walk.push(next);
    }
    (walk.len() == darts.len()).then_some(walk)
}

/// Proper crossing of two segments that share no endpoint.
fn crosses(pts: &[(f64, f64)], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let orient = |p: usize, q: usize, r: usize| {
        let (p, q, r) = (pts[p], pts[q], pts[r]);
        (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
    };
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 <= 0.0 && o3 * o4 <= 0.0
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Flips arcs on cycles shorter than `g` (only `allowed` arcs if given), then
/// falls back to deleting such arcs while the graph stays connected.
/// Returns `None` if that fails or no dicycle survives.
fn repair(
    mut graph: PlanarDigraph,
    g: usize,
    allowed: Option<&[ArcId]>,
    rng: &mut ChaCha8Rng,
) -> Option<PlanarDigraph> {
    let mut allowed: Option<Vec<ArcId>> = allowed.map(|a| a.to_vec());
    let mut flips = 4 * graph.m();
    loop {
        let short = match digirth(&graph) {
            Girth::Finite(d) if d < g => shortest_cycles(&graph, d),
            Girth::Infinite => return None,
            Girth::Finite(_) => return Some(graph),
        };
        let mut candidates: Vec<ArcId> = short
            .iter()
            .copied()
            .filter(|a| allowed.as_ref().is_none_or(|set| set.contains(a)))
            .collect();
        if candidates.is_empty() {
            candidates = short;
        }
        if candidates.is_empty() {
            return None;
        }
        let a = *candidates.choose(rng).unwrap();
        if flips > 0 {
            flips -= 1;
            graph = graph.with_reversed(&HashSet::from([a]));
            continue;
        }
        let next = graph.without_arcs(&HashSet::from([a])).ok()?;
        if !next.is_connected() {
            return None;
        }
        if let Some(set) = allowed.as_mut() {
            set.retain(|&b| b != a);
            set.iter_mut().for_each(|b| {
                if *b > a {
                    *b -= 1
                }
            });
        }
        graph = next;
    }
}

/// Arcs of the cycles of length `d` (the digirth), found by enumeration
/// when cheap, otherwise of one shortest cycle.
fn shortest_cycles(graph: &PlanarDigraph, d: usize) -> Vec<ArcId> {
    match enumerate_dicycles(graph, 2_000) {
        Ok(cycles) => {
            let mut arcs: Vec<ArcId> = cycles
                .iter()
                .filter(|c| c.len() == d)
                .flat_map(|c| c.arcs().to_vec())
                .collect();
            arcs.sort_unstable();
            arcs.dedup();
            arcs
        }
        Err(_) => shortest_cycle(&arc_adjacency(graph), &vec![true; graph.n()]).unwrap_or_default(),
    }
}

#![allow(dead_code)]

use std::collections::HashSet;

use pfvs_core::embed::{Girth, PlanarDigraph};
use pfvs_core::instances::{embedding_from_coordinates, standard_corpus, GeneratorSpec};
use pfvs_core::machinery::IncidenceBipartite;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn corpus() -> Vec<(String, GeneratorSpec, PlanarDigraph)> {
    standard_corpus(0)
}

fn crosses(p: &[(f64, f64)], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let o = |i: usize, j: usize, k: usize| {
        (p[j].0 - p[i].0) * (p[k].1 - p[i].1) - (p[j].1 - p[i].1) * (p[k].0 - p[i].0)
    };
    o(a, b, c) * o(a, b, d) <= 0.0 && o(c, d, a) * o(c, d, b) <= 0.0
}

/// A random straight-line plane bipartite graph with every V-vertex of
/// degree at least 2, restricted to its largest component.
pub fn random_bipartite(seed: u64) -> Option<IncidenceBipartite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nu = rng.gen_range(2..10);
    let nv = rng.gen_range(1..12);
    let pts: Vec<(f64, f64)> = (0..nu + nv)
        .map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..nu)
        .flat_map(|u| (nu..nu + nv).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let len = |&(a, b): &(usize, usize)| (pts[a].0 - pts[b].0).hypot(pts[a].1 - pts[b].1);
    pairs.sort_by(|x, y| len(x).total_cmp(&len(y)));
    let keep = rng.gen_range(0.4..1.0);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for p in pairs {
        if edges.iter().all(|&e| !crosses(&pts, p, e)) && rng.gen_bool(keep) {
            edges.push(p);
        }
    }
    // drop V-vertices of degree < 2 until none remain
    let mut alive = vec![true; nu + nv];
    loop {
        let mut deg = vec![0; nu + nv];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let bad: Vec<usize> = (nu..nu + nv).filter(|&v| alive[v] && deg[v] < 2).collect();
        if bad.is_empty() {
            break;
        }
        for v in bad {
            alive[v] = false;
        }
        edges.retain(|&(a, b)| alive[a] && alive[b]);
    }
    // largest component
    let mut comp = vec![usize::MAX; nu + nv];
    let mut sizes = Vec::new();
    for s in 0..nu + nv {
        if !alive[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![s];
        comp[s] = id;
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &(a, b) in &edges {
                for (p, q) in [(a, b), (b, a)] {
                    if p == x && comp[q] == usize::MAX {
                        comp[q] = id;
                        stack.push(q);
                    }
                }
            }
        }
        sizes.push(size);
    }
    let best = (0..sizes.len()).max_by_key(|&i| sizes[i])?;
    let keep_v: Vec<usize> = (0..nu + nv).filter(|&x| comp[x] == best).collect();
    let us: Vec<usize> = keep_v.iter().copied().filter(|&x| x < nu).collect();
    let vs: Vec<usize> = keep_v.iter().copied().filter(|&x| x >= nu).collect();
    if us.len() < 2 || vs.is_empty() {
        return None;
    }
    let order: Vec<usize> = us.iter().chain(&vs).copied().collect();
    let mut label = vec![usize::MAX; nu + nv];
    for (i, &x) in order.iter().enumerate() {
        label[x] = i;
    }
    let new_pts: Vec<(f64, f64)> = order.iter().map(|&x| pts[x]).collect();
    let arcs: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(a, _)| comp[a] == best)
        .map(|&(a, b)| (label[a], label[b]))
        .collect();
    let graph = embedding_from_coordinates(&new_pts, arcs, Girth::Infinite).ok()?;
    IncidenceBipartite::from_plane_graph(graph, us.len()).ok()
}

/// A random non-empty set of faces bounded by pairwise vertex-disjoint
/// cycles, if the graph has one.
pub fn random_face_set(g: &PlanarDigraph, seed: u64) -> Option<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..g.faces().len()).collect();
    order.shuffle(&mut rng);
    let mut used = HashSet::new();
    let mut out = Vec::new();
    for f in order {
        let face = &g.faces()[f];
        let verts: Vec<usize> = face.boundary.iter().map(|&d| g.origin(d)).collect();
        let distinct: HashSet<usize> = verts.iter().copied().collect();
        if face.degree < 3
            || distinct.len() != verts.len()
            || verts.iter().any(|v| used.contains(v))
        {
            continue;
        }
        if !out.is_empty() && rng.gen_bool(0.4) {
            continue;
        }
        used.extend(verts);
        out.push(f);
    }
    (!out.is_empty()).then_some(out)
}

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::embed::{ArcId, Dart, End, Girth, PlanarDigraph, Vertex};
use crate::frac::{int, Frac};

use super::bounds::claim1_bound;
use super::forest::{CycleForest, RegionNode};
use super::lemmas::check_lemma1;
use super::packing::CycleCollection;
use super::MachineryError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum PieceType {
    One,
    Two,
    Three,
}

impl From<PieceType> for u8 {
    fn from(t: PieceType) -> u8 {
        match t {
            PieceType::One => 1,
            PieceType::Two => 2,
            PieceType::Three => 3,
        }
    }
}

impl TryFrom<u8> for PieceType {
    type Error = String;
    fn try_from(x: u8) -> Result<Self, String> {
        match x {
            1 => Ok(PieceType::One),
            2 => Ok(PieceType::Two),
            3 => Ok(PieceType::Three),
            _ => Err(format!("piece type {x}")),
        }
    }
}

/// A maximal connected part of a region, with its boundary arc count `ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub ell: usize,
    pub kind: PieceType,
    pub phi: i64,
    pub faces: Vec<usize>,
    /// Collection indices of the cycles contributing boundary arcs.
    pub cycles: Vec<usize>,
    /// Degree of the matching face of H.
    pub h_degree: usize,
    /// Length of the cycle contributing two arcs, for type 2.
    pub c_plus_len: Option<usize>,
}

impl Piece {
    /// φ_i ≥ 3ℓ_i − 6.
    pub fn lemma2_holds(&self) -> bool {
        self.phi >= 3 * self.ell as i64 - 6
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionReport {
    pub node: RegionNode,
    pub k: usize,
    /// Collection indices of the boundary cycles: the node then its
    /// children, or the roots.
    pub boundary: Vec<usize>,
    pub phi: i64,
    pub pieces: Vec<Piece>,
    pub girth: usize,
    /// Σ |C_j| over the boundary cycles.
    pub boundary_len: usize,
    /// Whether two boundary cycles share a vertex.
    pub intersecting: bool,
    pub t2: usize,
    pub t3: usize,
    /// 2|U| − 4 when the boundary cycles intersect.
    pub t3_bound: Option<i64>,
    pub lemma1_holds: Option<bool>,
    /// Σ (3|C_j| + 6) − 12 when the boundary cycles are pairwise disjoint.
    pub disjoint_bound: Option<i64>,
    pub claim_bound: Frac,
    pub claim_holds: bool,
}

impl RegionReport {
    pub fn t3_holds(&self) -> bool {
        self.t3_bound.is_none_or(|b| self.t3 as i64 <= b)
    }

    pub fn disjoint_holds(&self) -> bool {
        self.disjoint_bound.is_none_or(|b| self.phi >= b)
    }

    /// Σ |C_j| ≥ |U|·g + |T_2|.
    pub fn length_bound_holds(&self) -> bool {
        self.boundary_len >= self.boundary.len() * self.girth + self.t2
    }

    pub fn pieces_sum_holds(&self) -> bool {
        self.pieces.iter().map(|p| p.phi).sum::<i64>() == self.phi
            && self.pieces.iter().map(|p| p.ell).sum::<usize>() == self.boundary_len
    }

    pub fn tight(&self) -> bool {
        int(self.phi) == self.claim_bound
    }

    /// Every check recorded in the report.
    pub fn all_hold(&self) -> bool {
        self.claim_holds
            && self.t3_holds()
            && self.lemma1_holds != Some(false)
            && self.disjoint_holds()
            && self.length_bound_holds()
            && self.pieces_sum_holds()
            && self.pieces.iter().all(Piece::lemma2_holds)
    }
}

/// Phi comparison against the region bound at digirth `g`.
pub fn check_claim1(report: &RegionReport, g: usize) -> bool {
    Frac::from_integer(report.phi.into()) >= claim1_bound(report.node, report.k, g)
}

/// Planar bipartite graph between cycles (U) and shared vertices (V).
///
/// `graph` has the U vertices first, then V, with one arc per incidence
/// directed from the cycle side. `face_degrees` lists plane faces, which
/// differ from the dart orbits of `graph` when it is disconnected.
#[derive(Clone, Debug)]
pub struct IncidenceBipartite {
    pub u: Vec<usize>,
    pub v: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub graph: PlanarDigraph,
    pub face_degrees: Vec<usize>,
}

impl IncidenceBipartite {
    /// Wraps a connected plane graph whose vertices `0..u_count` form U and
    /// the rest V. Arcs must run between the sides.
    pub fn from_plane_graph(
        graph: PlanarDigraph,
        u_count: usize,
    ) -> Result<IncidenceBipartite, MachineryError> {
        if !graph.is_connected() {
            return Err(MachineryError::PreconditionViolated(
                "bipartite graph is not connected".into(),
            ));
        }
        let mut edges = Vec::with_capacity(graph.m());
        for (a, &(t, h)) in graph.arcs().iter().enumerate() {
            let (u, v) = match (t < u_count, h < u_count) {
                (true, false) => (t, h),
                (false, true) => (h, t),
                _ => {
                    return Err(MachineryError::PreconditionViolated(format!(
                        "arc {a} does not join U and V"
                    )))
                }
            };
            edges.push((u, v - u_count));
        }
        let face_degrees = if graph.m() == 0 {
            vec![0]
        } else {
            graph.faces().iter().map(|f| f.degree).collect()
        };
        Ok(IncidenceBipartite {
            u: (0..u_count).collect(),
            v: (u_count..graph.n()).collect(),
            edges,
            graph,
            face_degrees,
        })
    }
}

/// Faces of a region split into pieces, and which side of each boundary
/// cycle is excluded.
struct Layout {
    boundary: Vec<usize>,
    excluded: Vec<Vec<bool>>,
    region: Vec<bool>,
    piece_of: Vec<Option<usize>>,
    pieces: Vec<Vec<usize>>,
}

fn layout(
    g: &PlanarDigraph,
    forest: &CycleForest,
    node: RegionNode,
) -> Result<Layout, MachineryError> {
    if !g.is_connected() {
        return Err(MachineryError::PreconditionViolated(
            "region accounting needs a connected graph".into(),
        ));
    }
    let boundary = forest.boundary_cycles(node);
    if boundary.is_empty() {
        return Err(MachineryError::PreconditionViolated(
            "the outer region has no boundary cycles".into(),
        ));
    }
    let excluded: Vec<Vec<bool>> = boundary
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let inside = forest.interior(c);
            if j == 0 && matches!(node, RegionNode::Cycle(_)) {
                inside.iter().map(|&x| !x).collect()
            } else {
                inside.to_vec()
            }
        })
        .collect();
    let region = forest.region_faces(g, node);
    let nf = g.faces().len();
    let mut piece_of = vec![None; nf];
    let mut pieces = Vec::new();
    for start in 0..nf {
        if !region[start] || piece_of[start].is_some() {
            continue;
        }
        let id = pieces.len();
        let mut members = vec![start];
        piece_of[start] = Some(id);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for d in &g.faces()[f].boundary {
                let h = g.face_of(d.reversed());
                if excluded.iter().any(|e| e[h]) || piece_of[h].is_some() {
                    continue;
                }
                if !region[h] {
                    return Err(MachineryError::UnexpectedPiece(format!(
                        "face {f} of the region borders face {h} outside it"
                    )));
                }
                piece_of[h] = Some(id);
                members.push(h);
                queue.push_back(h);
            }
        }
        members.sort_unstable();
        pieces.push(members);
    }
    Ok(Layout {
        boundary,
        excluded,
        region,
        piece_of,
        pieces,
    })
}

/// The excluded wedge of boundary cycle `j` at vertex `v`, as the pair of
/// ends (start, end) read counterclockwise.
fn wedge(g: &PlanarDigraph, arcs: &[ArcId], excluded: &[bool], v: Vertex) -> (End, End) {
    let into = *arcs
        .iter()
        .find(|&&a| g.arc(a).1 == v)
        .expect("cycle passes v");
    let out = *arcs
        .iter()
        .find(|&&a| g.arc(a).0 == v)
        .expect("cycle passes v");
    let (in_end, out_end) = (End::head(into), End::tail(out));
    if excluded[g.face_of(Dart::arriving(in_end))] {
        (in_end, out_end)
    } else {
        (out_end, in_end)
    }
}

struct Bipartite {
    h: IncidenceBipartite,
    /// piece → summed degree of its H face
    piece_degree: Vec<usize>,
}

fn incidence(
    g: &PlanarDigraph,
    coll: &CycleCollection,
    lay: &Layout,
) -> Result<Bipartite, MachineryError> {
    let k = lay.boundary.len();
    let mut count = vec![0usize; g.n()];
    for &c in &lay.boundary {
        for &v in coll.cycles[c].vertices() {
            count[v] += 1;
        }
    }
    let shared: Vec<Vertex> = (0..g.n()).filter(|&v| count[v] >= 2).collect();
    let v_index: HashMap<Vertex, usize> = shared.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut arcs = Vec::new();
    let mut edges = Vec::new();
    let mut wedge_end = Vec::new();
    let mut center_rot: Vec<Vec<End>> = vec![Vec::new(); k];
    let mut vnode_ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); shared.len()];
    for (j, &c) in lay.boundary.iter().enumerate() {
        let cyc = &coll.cycles[c];
        for &v in cyc.vertices() {
            let Some(&vi) = v_index.get(&v) else { continue };
            let (a, b) = wedge(g, cyc.arcs(), &lay.excluded[j], v);
            let id = arcs.len();
            arcs.push((j, k + vi));
            edges.push((j, vi));
            wedge_end.push(b);
            center_rot[j].push(End::tail(id));
            vnode_ends[vi].push((g.position(a), id));
        }
        let right = g.face_of(Dart {
            arc: cyc.arcs()[0],
            forward: true,
        });
        if lay.excluded[j][right] {
            center_rot[j].reverse();
        }
    }
    let mut rotation = center_rot;
    for ends in &mut vnode_ends {
        ends.sort_unstable();
        rotation.push(ends.iter().map(|&(_, id)| End::head(id)).collect());
    }
    let n_h = k + shared.len();
    let graph = PlanarDigraph::new(n_h, arcs, rotation, Girth::Infinite).map_err(|e| {
        MachineryError::UnexpectedPiece(format!("incidence graph is not plane: {e}"))
    })?;

    let mut piece_degree = vec![0usize; lay.pieces.len()];
    let mut hit = vec![false; lay.pieces.len()];
    for (fi, face) in graph.faces().iter().enumerate() {
        let mut piece = None;
        for d in &face.boundary {
            if !d.forward {
                continue;
            }
            let f = g.face_of(Dart::arriving(wedge_end[d.arc]));
            let p = lay.piece_of[f].filter(|_| lay.region[f]).ok_or_else(|| {
                MachineryError::UnexpectedPiece(format!("corner of H face {fi} leaves the region"))
            })?;
            if piece.is_some_and(|q| q != p) {
                return Err(MachineryError::UnexpectedPiece(format!(
                    "H face {fi} meets pieces {} and {p}",
                    piece.unwrap()
                )));
            }
            piece = Some(p);
        }
        let p = piece.expect("every H face visits a shared vertex");
        piece_degree[p] += face.degree;
        hit[p] = true;
    }
    let comps = graph.components().len();
    let plane_faces = (graph.m() + 1 + comps) - n_h;
    let covered = hit.iter().filter(|&&x| x).count();
    let consistent = if graph.m() == 0 {
        lay.pieces.len() == 1
    } else {
        covered == lay.pieces.len() && plane_faces == lay.pieces.len()
    };
    if !consistent {
        return Err(MachineryError::UnexpectedPiece(format!(
            "H has {plane_faces} faces but the region has {} pieces",
            lay.pieces.len()
        )));
    }
    Ok(Bipartite {
        h: IncidenceBipartite {
            u: lay.boundary.clone(),
            v: shared,
            edges,
            graph,
            face_degrees: piece_degree.clone(),
        },
        piece_degree,
    })
}

/// H for the region of `node`; its plane faces are indexed like the pieces
/// of the region.
pub fn build_incidence_bipartite(
    g: &PlanarDigraph,
    coll: &CycleCollection,
    forest: &CycleForest,
    node: RegionNode,
) -> Result<IncidenceBipartite, MachineryError> {
    let lay = layout(g, forest, node)?;
    Ok(incidence(g, coll, &lay)?.h)
}

/// Splits the region of `node` into pieces, types them and gathers every
/// count used by the region bound. `girth` is the digirth of `g`.
pub fn classify_pieces(
    g: &PlanarDigraph,
    coll: &CycleCollection,
    forest: &CycleForest,
    node: RegionNode,
    girth: usize,
) -> Result<RegionReport, MachineryError> {
    let lay = layout(g, forest, node)?;
    let bip = incidence(g, coll, &lay)?;

    // boundary arcs per piece, with the cycle they come from
    let mut arcs_of: Vec<Vec<(ArcId, usize)>> = vec![Vec::new(); lay.pieces.len()];
    for &c in &lay.boundary {
        for &a in coll.cycles[c].arcs() {
            let sides = [true, false].map(|forward| g.face_of(Dart { arc: a, forward }));
            let inside: Vec<usize> = sides.into_iter().filter(|&f| lay.region[f]).collect();
            if inside.len() != 1 {
                return Err(MachineryError::UnexpectedPiece(format!(
                    "boundary arc {a} has {} sides in the region",
                    inside.len()
                )));
            }
            let p = lay.piece_of[inside[0]].expect("region faces have pieces");
            arcs_of[p].push((a, c));
        }
    }

    let mut pieces = Vec::with_capacity(lay.pieces.len());
    for (p, faces) in lay.pieces.iter().enumerate() {
        let arcs = &arcs_of[p];
        let ell = arcs.len();
        let mut per_cycle: BTreeMap<usize, Vec<ArcId>> = BTreeMap::new();
        for &(a, c) in arcs {
            per_cycle.entry(c).or_default().push(a);
        }
        let phi = faces
            .iter()
            .map(|&f| 3 * g.faces()[f].degree as i64 - 6)
            .sum();
        let mut c_plus_len = None;
        let kind = match (ell, per_cycle.len()) {
            (4.., _) => PieceType::One,
            (3, 3) => PieceType::Three,
            (3, 2) => {
                let (&plus, two) = per_cycle.iter().find(|(_, v)| v.len() == 2).unwrap();
                let (_, one) = per_cycle.iter().find(|(_, v)| v.len() == 1).unwrap();
                check_transitive(g, two[0], two[1], one[0])?;
                let len = coll.cycles[plus].len();
                if len < girth + 1 {
                    return Err(MachineryError::DigirthViolation {
                        detail: format!(
                            "cycle {plus} of length {len} has a chord shortcut of length {}",
                            len - 1
                        ),
                    });
                }
                c_plus_len = Some(len);
                PieceType::Two
            }
            _ => {
                return Err(MachineryError::UnexpectedPiece(format!(
                    "piece {p} has {ell} boundary arcs on {} cycles",
                    per_cycle.len()
                )))
            }
        };
        let h_degree = bip.piece_degree[p];
        let expected = match kind {
            PieceType::Two => Some(4),
            PieceType::Three => Some(6),
            PieceType::One => None,
        };
        if expected.is_some_and(|d| d != h_degree) {
            return Err(MachineryError::UnexpectedPiece(format!(
                "type {} piece {p} matches an H face of degree {h_degree}",
                u8::from(kind)
            )));
        }
        pieces.push(Piece {
            ell,
            kind,
            phi,
            faces: faces.clone(),
            cycles: per_cycle.keys().copied().collect(),
            h_degree,
            c_plus_len,
        });
    }

    let phi: i64 = lay
        .region
        .iter()
        .zip(g.faces())
        .filter(|(&r, _)| r)
        .map(|(_, f)| 3 * f.degree as i64 - 6)
        .sum();
    let boundary_len = lay.boundary.iter().map(|&c| coll.cycles[c].len()).sum();
    let intersecting = !bip.h.v.is_empty();
    let u = lay.boundary.len() as i64;
    let t2 = pieces.iter().filter(|p| p.kind == PieceType::Two).count();
    let t3 = pieces.iter().filter(|p| p.kind == PieceType::Three).count();
    let lemma1_holds = if intersecting {
        Some(check_lemma1(&bip.h).unwrap_or(false))
    } else {
        None
    };
    let disjoint_bound = (!intersecting).then(|| {
        lay.boundary
            .iter()
            .map(|&c| 3 * coll.cycles[c].len() as i64 + 6)
            .sum::<i64>()
            - 12
    });
    let k = forest.child_count(node);
    let claim_bound = claim1_bound(node, k, girth);
    let mut report = RegionReport {
        node,
        k,
        boundary: lay.boundary,
        phi,
        pieces,
        girth,
        boundary_len,
        intersecting,
        t2,
        t3,
        t3_bound: intersecting.then_some(2 * u - 4),
        lemma1_holds,
        disjoint_bound,
        claim_bound,
        claim_holds: false,
    };
    report.claim_holds = check_claim1(&report, girth);
    Ok(report)
}

/// `e1`, `e2` consecutive on one cycle and `e3` must form a transitive
/// triangle e3 = tail(first) → head(second).
fn check_transitive(
    g: &PlanarDigraph,
    x: ArcId,
    y: ArcId,
    e3: ArcId,
) -> Result<(), MachineryError> {
    let (e1, e2) = if g.arc(x).1 == g.arc(y).0 {
        (x, y)
    } else {
        (y, x)
    };
    let ((a, b), (b2, c), (s, t)) = (g.arc(e1), g.arc(e2), g.arc(e3));
    if b != b2 {
        return Err(MachineryError::UnexpectedPiece(format!(
            "arcs {e1} and {e2} of a three-arc piece are not consecutive"
        )));
    }
    if (s, t) == (a, c) {
        Ok(())
    } else if (s, t) == (c, a) {
        Err(MachineryError::DigirthViolation {
            detail: format!("arcs {e1}, {e2}, {e3} form a directed triangle"),
        })
    } else {
        Err(MachineryError::UnexpectedPiece(format!(
            "arcs {e1}, {e2}, {e3} do not bound a triangle"
        )))
    }
}

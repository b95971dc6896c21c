use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;
pub type ArcId = usize;

/// One end of an arc as it appears in a vertex rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub arc: ArcId,
    pub at_tail: bool,
}

impl End {
    pub fn tail(arc: ArcId) -> Self {
        End { arc, at_tail: true }
    }

    pub fn head(arc: ArcId) -> Self {
        End {
            arc,
            at_tail: false,
        }
    }
}

/// An arc-side: the arc traversed in one direction. The face of a dart
/// lies on its right when rotations are read counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: ArcId,
    pub forward: bool,
}

impl Dart {
    pub fn index(self) -> usize {
        2 * self.arc + usize::from(!self.forward)
    }

    pub fn reversed(self) -> Self {
        Dart {
            arc: self.arc,
            forward: !self.forward,
        }
    }

    /// The dart that leaves a vertex through `end`.
    pub fn leaving(end: End) -> Self {
        Dart {
            arc: end.arc,
            forward: end.at_tail,
        }
    }

    /// The dart that arrives at a vertex through `end`.
    pub fn arriving(end: End) -> Self {
        Dart {
            arc: end.arc,
            forward: !end.at_tail,
        }
    }

    /// The end through which the dart arrives at its destination.
    pub fn arrival_end(self) -> End {
        End {
            arc: self.arc,
            at_tail: !self.forward,
        }
    }
}

/// Digirth of a digraph, or a declared lower bound on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<Dart>,
    pub degree: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("arc {arc} references vertex {vertex} but n = {n}")]
    VertexOutOfRange {
        arc: ArcId,
        vertex: Vertex,
        n: usize,
    },
    #[error("arc {arc} is a loop")]
    SelfLoop { arc: ArcId },
    #[error("rotation/arc mismatch at vertex {vertex}: {detail}")]
    DanglingEnd { vertex: Vertex, detail: String },
    #[error(
        "rotation is not planar: component of vertex {vertex} has {vertices} vertices, {arcs} arcs, {faces} faces"
    )]
    EulerViolation {
        vertex: Vertex,
        vertices: usize,
        arcs: usize,
        faces: usize,
    },
    #[error("arcs {first} and {second} are parallel but declared digirth is at least 4")]
    MultiArc { first: ArcId, second: ArcId },
    #[error("graph is not connected")]
    NotConnected,
}

/// A digraph together with a rotation system.
///
/// Faces, components and outer faces are computed once at construction; the
/// value is immutable afterwards.
#[derive(Clone, Debug)]
pub struct PlanarDigraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    rotation: Vec<Vec<End>>,
    declared_girth: Girth,
    // position of [tail end, head end] of each arc in its vertex rotation
    end_pos: Vec<[usize; 2]>,
    faces: Vec<Face>,
    dart_face: Vec<usize>,
    component_of: Vec<usize>,
    components: Vec<Vec<Vertex>>,
    face_component: Vec<usize>,
    outer_face: Vec<Option<usize>>,
}

impl PartialEq for PlanarDigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.arcs == other.arcs
            && self.rotation == other.rotation
            && self.declared_girth == other.declared_girth
    }
}

impl Eq for PlanarDigraph {}

/// Validates an embedded digraph and precomputes its faces.
pub fn build_planar_digraph(
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    rotation: Vec<Vec<End>>,
    declared_girth: Girth,
) -> Result<PlanarDigraph, EmbedError> {
    PlanarDigraph::new(n, arcs, rotation, declared_girth)
}

impl PlanarDigraph {
    pub fn new(
        n: usize,
        arcs: Vec<(Vertex, Vertex)>,
        rotation: Vec<Vec<End>>,
        declared_girth: Girth,
    ) -> Result<Self, EmbedError> {
        for (arc, &(t, h)) in arcs.iter().enumerate() {
            for v in [t, h] {
                if v >= n {
                    return Err(EmbedError::VertexOutOfRange { arc, vertex: v, n });
                }
            }
            if t == h {
                return Err(EmbedError::SelfLoop { arc });
            }
        }
        if rotation.len() != n {
            return Err(EmbedError::DanglingEnd {
                vertex: rotation.len().min(n),
                detail: format!("{} rotation lists for {} vertices", rotation.len(), n),
            });
        }

        let m = arcs.len();
        let mut end_pos = vec![[usize::MAX; 2]; m];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, end) in rot.iter().enumerate() {
                if end.arc >= m {
                    return Err(EmbedError::DanglingEnd {
                        vertex: v,
                        detail: format!("unknown arc {}", end.arc),
                    });
                }
                let (t, h) = arcs[end.arc];
                let owner = if end.at_tail { t } else { h };
                if owner != v {
                    return Err(EmbedError::DanglingEnd {
                        vertex: v,
                        detail: format!(
                            "{} end of arc {} belongs to vertex {}",
                            if end.at_tail { "tail" } else { "head" },
                            end.arc,
                            owner
                        ),
                    });
                }
                let slot = &mut end_pos[end.arc][usize::from(!end.at_tail)];
                if *slot != usize::MAX {
                    return Err(EmbedError::DanglingEnd {
                        vertex: v,
                        detail: format!("end of arc {} listed twice", end.arc),
                    });
                }
                *slot = i;
            }
        }
        for (arc, pos) in end_pos.iter().enumerate() {
            for (side, &p) in pos.iter().enumerate() {
                if p == usize::MAX {
                    let v = if side == 0 { arcs[arc].0 } else { arcs[arc].1 };
                    return Err(EmbedError::DanglingEnd {
                        vertex: v,
                        detail: format!("end of arc {arc} missing from rotation"),
                    });
                }
            }
        }

        if declared_girth >= Girth::Finite(4) {
            let mut seen = std::collections::HashMap::new();
            for (arc, &pair) in arcs.iter().enumerate() {
                if let Some(&first) = seen.get(&pair) {
                    return Err(EmbedError::MultiArc { first, second: arc });
                }
                seen.insert(pair, arc);
            }
        }

        let mut g = PlanarDigraph {
            n,
            arcs,
            rotation,
            declared_girth,
            end_pos,
            faces: Vec::new(),
            dart_face: vec![usize::MAX; 2 * m],
            component_of: vec![usize::MAX; n],
            components: Vec::new(),
            face_component: Vec::new(),
            outer_face: Vec::new(),
        };
        g.trace_faces();
        g.find_components();
        g.check_euler()?;
        Ok(g)
    }

    fn trace_faces(&mut self) {
        let m = self.arcs.len();
        for start in 0..2 * m {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut boundary = Vec::new();
            let mut d = dart_from_index(start);
            loop {
                self.dart_face[d.index()] = id;
                boundary.push(d);
                d = self.next_in_face(d);
                if d.index() == start {
                    break;
                }
            }
            let degree = boundary.len();
            self.faces.push(Face { boundary, degree });
        }
    }

    fn find_components(&mut self) {
        for s in 0..self.n {
            if self.component_of[s] != usize::MAX {
                continue;
            }
            let c = self.components.len();
            let mut members = vec![s];
            self.component_of[s] = c;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for end in &self.rotation[v] {
                    let (t, h) = self.arcs[end.arc];
                    let w = if end.at_tail { h } else { t };
                    if self.component_of[w] == usize::MAX {
                        self.component_of[w] = c;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            self.components.push(members);
        }
        self.face_component = self
            .faces
            .iter()
            .map(|f| self.component_of[self.arcs[f.boundary[0].arc].0])
            .collect();
        self.outer_face = self
            .components
            .iter()
            .map(|members| {
                members
                    .iter()
                    .find_map(|&v| self.rotation[v].first())
                    .map(|&end| self.dart_face[Dart::leaving(end).index()])
            })
            .collect();
    }

    fn check_euler(&self) -> Result<(), EmbedError> {
        let mut arcs = vec![0usize; self.components.len()];
        for &(t, _) in &self.arcs {
            arcs[self.component_of[t]] += 1;
        }
        let mut faces = vec![0usize; self.components.len()];
        for &c in &self.face_component {
            faces[c] += 1;
        }
        for (c, members) in self.components.iter().enumerate() {
            // an isolated vertex bounds no dart orbit but still sits in one face
            let f = faces[c].max(1);
            if members.len() + f != arcs[c] + 2 {
                return Err(EmbedError::EulerViolation {
                    vertex: members[0],
                    vertices: members.len(),
                    arcs: arcs[c],
                    faces: f,
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcId) -> (Vertex, Vertex) {
        self.arcs[a]
    }

    pub fn rotation(&self, v: Vertex) -> &[End] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<End>] {
        &self.rotation
    }

    pub fn declared_girth(&self) -> Girth {
        self.declared_girth
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.index()]
    }

    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.components
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component_of[v]
    }

    pub fn face_component(&self, f: usize) -> usize {
        self.face_component[f]
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Outer face of a component: the face holding the first arc-side of the
    /// rotation of the component's smallest non-isolated vertex.
    pub fn outer_face(&self, component: usize) -> Option<usize> {
        self.outer_face[component]
    }

    pub fn origin(&self, d: Dart) -> Vertex {
        let (t, h) = self.arcs[d.arc];
        if d.forward {
            t
        } else {
            h
        }
    }

    pub fn destination(&self, d: Dart) -> Vertex {
        self.origin(d.reversed())
    }

    /// Index of `end` in the rotation of its vertex.
    pub fn position(&self, end: End) -> usize {
        self.end_pos[end.arc][usize::from(!end.at_tail)]
    }

    /// Successor of the arrival end in the destination's rotation.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        let y = self.destination(d);
        let at_y = End {
            arc: d.arc,
            at_tail: !d.forward,
        };
        let rot = &self.rotation[y];
        let next = rot[(self.position(at_y) + 1) % rot.len()];
        Dart::leaving(next)
    }

    pub fn out_arcs(&self, v: Vertex) -> impl Iterator<Item = ArcId> + '_ {
        self.rotation[v].iter().filter(|e| e.at_tail).map(|e| e.arc)
    }

    /// Out-arcs of every vertex, sorted by arc id.
    pub fn out_adjacency(&self) -> Vec<Vec<ArcId>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, &(t, _)) in self.arcs.iter().enumerate() {
            adj[t].push(a);
        }
        adj
    }

    /// Splits the graph into one embedded graph per connected component.
    /// Each entry carries the original ids of its vertices and arcs.
    pub fn split_components(&self) -> Vec<ComponentView> {
        let mut out = Vec::with_capacity(self.components.len());
        for members in &self.components {
            let mut local = vec![usize::MAX; self.n];
            for (i, &v) in members.iter().enumerate() {
                local[v] = i;
            }
            let arc_ids: Vec<ArcId> = (0..self.m())
                .filter(|&a| local[self.arcs[a].0] != usize::MAX)
                .collect();
            let mut local_arc = vec![usize::MAX; self.m()];
            for (i, &a) in arc_ids.iter().enumerate() {
                local_arc[a] = i;
            }
            let arcs = arc_ids
                .iter()
                .map(|&a| (local[self.arcs[a].0], local[self.arcs[a].1]))
                .collect();
            let rotation = members
                .iter()
                .map(|&v| {
                    self.rotation[v]
                        .iter()
                        .map(|e| End {
                            arc: local_arc[e.arc],
                            at_tail: e.at_tail,
                        })
                        .collect()
                })
                .collect();
            let graph = PlanarDigraph::new(members.len(), arcs, rotation, self.declared_girth)
                .expect("component of a valid embedding is valid");
            out.push(ComponentView {
                graph,
                vertices: members.clone(),
                arcs: arc_ids,
            });
        }
        out
    }

    /// Same embedding with a subset of arcs removed. Arc ids are renumbered
    /// in increasing order of the kept arcs.
    pub fn without_arcs(&self, removed: &HashSet<ArcId>) -> Result<PlanarDigraph, EmbedError> {
        let mut renumber = vec![usize::MAX; self.m()];
        let mut arcs = Vec::new();
        for (a, &pair) in self.arcs.iter().enumerate() {
            if !removed.contains(&a) {
                renumber[a] = arcs.len();
                arcs.push(pair);
            }
        }
        let rotation = self
            .rotation
            .iter()
            .map(|rot| {
                rot.iter()
                    .filter(|e| !removed.contains(&e.arc))
                    .map(|e| End {
                        arc: renumber[e.arc],
                        at_tail: e.at_tail,
                    })
                    .collect()
            })
            .collect();
        PlanarDigraph::new(self.n, arcs, rotation, self.declared_girth)
    }

    /// Same embedding with the given arcs reversed in place.
    pub fn with_reversed(&self, reversed: &HashSet<ArcId>) -> PlanarDigraph {
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .map(|(a, &(t, h))| {
                if reversed.contains(&a) {
                    (h, t)
                } else {
                    (t, h)
                }
            })
            .collect();
        let rotation = self
            .rotation
            .iter()
            .map(|rot| {
                rot.iter()
                    .map(|e| End {
                        arc: e.arc,
                        at_tail: e.at_tail ^ reversed.contains(&e.arc),
                    })
                    .collect()
            })
            .collect();
        PlanarDigraph::new(self.n, arcs, rotation, self.declared_girth)
            .expect("reversing arcs keeps the embedding valid")
    }

    pub fn with_declared_girth(&self, declared_girth: Girth) -> Result<PlanarDigraph, EmbedError> {
        PlanarDigraph::new(
            self.n,
            self.arcs.clone(),
            self.rotation.clone(),
            declared_girth,
        )
    }

    /// Relabels and rotates so that `face` becomes the designated outer face
    /// of its component: the smallest vertex on the face is swapped with the
    /// component's smallest vertex and its rotation starts at the face.
    pub fn with_outer_face(&self, face: usize) -> PlanarDigraph {
        let comp = self.face_component[face];
        let first = self.components[comp][0];
        let on_face = self.faces[face]
            .boundary
            .iter()
            .map(|&d| self.origin(d))
            .min()
            .expect("faces are non-empty");
        let swap = |v: Vertex| {
            if v == first {
                on_face
            } else if v == on_face {
                first
            } else {
                v
            }
        };
        let arcs: Vec<_> = self.arcs.iter().map(|&(t, h)| (swap(t), swap(h))).collect();
        let mut rotation: Vec<Vec<End>> = (0..self.n)
            .map(|v| self.rotation[swap(v)].clone())
            .collect();
        let rot = &mut rotation[first];
        let start = rot
            .iter()
            .position(|&e| self.dart_face[Dart::leaving(e).index()] == face)
            .expect("vertex lies on the face");
        rot.rotate_left(start);
        PlanarDigraph::new(self.n, arcs, rotation, self.declared_girth)
            .expect("relabelling keeps the embedding valid")
    }

    /// Marks the faces strictly inside the closed curve formed by `curve`
    /// (the side not containing the outer face of its component).
    pub fn interior_faces(&self, curve: &[ArcId]) -> Vec<bool> {
        let mut inside = vec![false; self.faces.len()];
        let Some(&first) = curve.first() else {
            return inside;
        };
        let comp = self.component_of[self.arcs[first].0];
        let Some(outer) = self.outer_face[comp] else {
            return inside;
        };
        let on_curve: HashSet<ArcId> = curve.iter().copied().collect();
        let mut outside = vec![false; self.faces.len()];
        outside[outer] = true;
        let mut queue = VecDeque::from([outer]);
        while let Some(f) = queue.pop_front() {
            for d in &self.faces[f].boundary {
                if on_curve.contains(&d.arc) {
                    continue;
                }
                let g = self.dart_face[d.reversed().index()];
                if !outside[g] {
                    outside[g] = true;
                    queue.push_back(g);
                }
            }
        }
        for (f, flag) in inside.iter_mut().enumerate() {
            *flag = self.face_component[f] == comp && !outside[f];
        }
        inside
    }
}

pub(crate) fn dart_from_index(i: usize) -> Dart {
    Dart {
        arc: i / 2,
        forward: i.is_multiple_of(2),
    }
}

#[derive(Clone, Debug)]
pub struct ComponentView {
    pub graph: PlanarDigraph,
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<ArcId>,
}

/// Σ over faces of (3·d(F) − 6). Equals 6n − 12 on connected inputs.
pub fn euler_phi_total(g: &PlanarDigraph) -> Result<i64, EmbedError> {
    if !g.is_connected() {
        return Err(EmbedError::NotConnected);
    }
    if g.m() == 0 {
        // single vertex: one face of degree 0
        return Ok(-6);
    }
    Ok(g.faces().iter().map(|f| 3 * f.degree as i64 - 6).sum())
}

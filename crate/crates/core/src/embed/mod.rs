//! Embedded planar digraphs: rotation systems, faces, digirth and dicycles.

mod cycles;
mod graph;
pub mod pdg;

pub(crate) use cycles::{arc_adjacency, shortest_cycle};
pub use cycles::{digirth, enumerate_dicycles, is_acyclic, topological_order, CycleError, DiCycle};
pub use graph::{
    build_planar_digraph, euler_phi_total, ArcId, ComponentView, Dart, EmbedError, End, Face,
    Girth, PlanarDigraph, Vertex,
};
pub use pdg::{parse_pdg, serialize_pdg, PdgError};

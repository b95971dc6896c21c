use std::collections::HashSet;

use crate::embed::PlanarDigraph;

use super::regions::IncidenceBipartite;
use super::MachineryError;

/// At most 2|U| − 4 faces of degree ≥ 6, given every face has degree ≥ 4
/// and every V-vertex degree ≥ 2.
pub fn check_lemma1(h: &IncidenceBipartite) -> Result<bool, MachineryError> {
    let mut degree = vec![0usize; h.v.len()];
    for &(_, v) in &h.edges {
        degree[v] += 1;
    }
    if let Some(v) = degree.iter().position(|&d| d < 2) {
        return Err(MachineryError::PreconditionViolated(format!(
            "V-vertex {v} has degree {}",
            degree[v]
        )));
    }
    if let Some(f) = h.face_degrees.iter().position(|&d| d < 4) {
        return Err(MachineryError::PreconditionViolated(format!(
            "face {f} has degree {}",
            h.face_degrees[f]
        )));
    }
    let big = h.face_degrees.iter().filter(|&&d| d >= 6).count() as i64;
    Ok(big <= 2 * h.u.len() as i64 - 4)
}

/// Σ_{F∉S} (3d(F) − 6) ≥ Σ_{F∈S} (3d(F) + 6) − 12 for a set `s` of faces
/// bounded by pairwise vertex-disjoint cycles.
pub fn check_lemma2(g: &PlanarDigraph, s: &[usize]) -> Result<bool, MachineryError> {
    if !g.is_connected() {
        return Err(MachineryError::PreconditionViolated(
            "graph is not connected".into(),
        ));
    }
    let mut chosen = vec![false; g.faces().len()];
    let mut used = HashSet::new();
    for &f in s {
        let face = g.faces().get(f).ok_or_else(|| {
            MachineryError::PreconditionViolated(format!("face {f} does not exist"))
        })?;
        if std::mem::replace(&mut chosen[f], true) {
            return Err(MachineryError::PreconditionViolated(format!(
                "face {f} listed twice"
            )));
        }
        let mut own = HashSet::new();
        for &d in &face.boundary {
            if !own.insert(g.origin(d)) {
                return Err(MachineryError::PreconditionViolated(format!(
                    "face {f} is not bounded by a cycle"
                )));
            }
        }
        if face.degree < 3 {
            return Err(MachineryError::PreconditionViolated(format!(
                "face {f} is not bounded by a cycle"
            )));
        }
        if let Some(v) = own.iter().find(|v| used.contains(*v)) {
            return Err(MachineryError::PreconditionViolated(format!(
                "face {f} shares vertex {v} with another face of the set"
            )));
        }
        used.extend(own);
    }
    let (mut rest, mut bound) = (0i64, -12i64);
    for (f, face) in g.faces().iter().enumerate() {
        let d = face.degree as i64;
        if chosen[f] {
            bound += 3 * d + 6;
        } else {
            rest += 3 * d - 6;
        }
    }
    Ok(rest >= bound)
}

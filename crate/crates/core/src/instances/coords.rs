use crate::embed::{EmbedError, End, Girth, PlanarDigraph, Vertex};

/// Builds a rotation system from a straight-line drawing: the ends at each
/// vertex are sorted counterclockwise by angle, starting just after due
/// west. The designated outer face is the geometric one whenever vertex 0 has
/// the smallest x coordinate.
pub fn embedding_from_coordinates(
    points: &[(f64, f64)],
    arcs: Vec<(Vertex, Vertex)>,
    declared_girth: Girth,
) -> Result<PlanarDigraph, EmbedError> {
    let n = points.len();
    let mut ends: Vec<Vec<(f64, End)>> = vec![Vec::new(); n];
    for (a, &(t, h)) in arcs.iter().enumerate() {
        if t >= n || h >= n {
            return Err(EmbedError::VertexOutOfRange {
                arc: a,
                vertex: t.max(h),
                n,
            });
        }
        let angle = |from: Vertex, to: Vertex| {
            let (x0, y0) = points[from];
            let (x1, y1) = points[to];
            (y1 - y0).atan2(x1 - x0)
        };
        ends[t].push((angle(t, h), End::tail(a)));
        ends[h].push((angle(h, t), End::head(a)));
    }
    let rotation = ends
        .into_iter()
        .map(|mut list| {
            list.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            list.into_iter().map(|(_, e)| e).collect()
        })
        .collect();
    PlanarDigraph::new(n, arcs, rotation, declared_girth)
}

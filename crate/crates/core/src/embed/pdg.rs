//! The `.pdg` text format.
//!
//! ```text
//! # comment
//! n m g_declared
//! tail head          (m lines; arcs are numbered 1..=m in file order)
//! v s1 s2 ...        (n lines; +k is the tail end of arc k, -k its head end)
//! ```
//!
//! Vertices are numbered from 0. `g_declared` is a positive integer or `inf`.
//! Rotation lines may appear in any order but each vertex exactly once.

use std::fmt::Write as _;

use thiserror::Error;

use super::graph::{EmbedError, End, Girth, PlanarDigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdgError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error("invalid embedding: {0}")]
    Embed(#[from] EmbedError),
}

fn syntax(line: usize, message: impl Into<String>) -> PdgError {
    PdgError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_pdg(text: &str) -> Result<PlanarDigraph, PdgError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (i + 1, body))
    });

    let (hline, header) = lines
        .next()
        .ok_or_else(|| PdgError::Truncated("missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(syntax(hline, "header must be `n m g_declared`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| syntax(hline, format!("bad vertex count `{}`", fields[0])))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| syntax(hline, format!("bad arc count `{}`", fields[1])))?;
    let girth = match fields[2] {
        "inf" => Girth::Infinite,
        s => match s.parse::<usize>() {
            Ok(g) if g >= 1 => Girth::Finite(g),
            _ => return Err(syntax(hline, format!("bad declared digirth `{s}`"))),
        },
    };

    let mut arcs = Vec::with_capacity(m);
    for k in 0..m {
        let (ln, body) = lines
            .next()
            .ok_or_else(|| PdgError::Truncated(format!("expected {m} arcs, found {k}")))?;
        let parts: Vec<&str> = body.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(syntax(ln, "arc line must be `tail head`"));
        }
        let parse_v = |s: &str| -> Result<usize, PdgError> {
            let v: usize = s
                .parse()
                .map_err(|_| syntax(ln, format!("bad vertex `{s}`")))?;
            if v >= n {
                return Err(syntax(ln, format!("vertex {v} out of range (n = {n})")));
            }
            Ok(v)
        };
        arcs.push((parse_v(parts[0])?, parse_v(parts[1])?));
    }

    let mut rotation: Vec<Option<Vec<End>>> = vec![None; n];
    for k in 0..n {
        let (ln, body) = lines.next().ok_or_else(|| {
            PdgError::Truncated(format!("expected {n} rotation lines, found {k}"))
        })?;
        let mut parts = body.split_whitespace();
        let vs = parts.next().expect("non-empty line");
        let v: usize = vs
            .parse()
            .map_err(|_| syntax(ln, format!("bad vertex id `{vs}`")))?;
        if v >= n {
            return Err(syntax(ln, format!("vertex {v} out of range (n = {n})")));
        }
        if rotation[v].is_some() {
            return Err(syntax(ln, format!("rotation of vertex {v} given twice")));
        }
        let mut rot = Vec::new();
        for tok in parts {
            let signed: i64 = tok
                .parse()
                .map_err(|_| syntax(ln, format!("bad arc end `{tok}`")))?;
            let id = signed.unsigned_abs() as usize;
            if signed == 0 || id > m {
                return Err(syntax(ln, format!("arc end `{tok}` out of range")));
            }
            rot.push(End {
                arc: id - 1,
                at_tail: signed > 0,
            });
        }
        rotation[v] = Some(rot);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content after rotation lines"));
    }
    let rotation = rotation
        .into_iter()
        .map(|r| r.expect("all n vertices seen"))
        .collect();
    Ok(PlanarDigraph::new(n, arcs, rotation, girth)?)
}

/// Canonical text: no comments, single spaces, vertices in order.
pub fn serialize_pdg(g: &PlanarDigraph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {} {}", g.n(), g.m(), g.declared_girth()).unwrap();
    for &(t, h) in g.arcs() {
        writeln!(s, "{t} {h}").unwrap();
    }
    for v in 0..g.n() {
        write!(s, "{v}").unwrap();
        for e in g.rotation(v) {
            let id = e.arc as i64 + 1;
            write!(s, " {}", if e.at_tail { id } else { -id }).unwrap();
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "3 3 3\n0 1\n1 2\n2 0\n0 1 -3\n1 2 -1\n2 3 -2\n";

    #[test]
    fn canonical_round_trip() {
        let g = parse_pdg(TRIANGLE).unwrap();
        assert_eq!(g.faces().len(), 2);
        assert_eq!(serialize_pdg(&g), TRIANGLE);
    }

    #[test]
    fn comments_and_vertex_order() {
        let text = "# a triangle\n3 3 3  # header\n0 1\n1 2\n2 0\n\n2 3 -2\n0 1 -3\n1 2 -1\n";
        let g = parse_pdg(text).unwrap();
        assert_eq!(serialize_pdg(&g), TRIANGLE);
    }

    #[test]
    fn infinite_declared_girth() {
        let g = parse_pdg("2 1 inf\n0 1\n0 1\n1 -1\n").unwrap();
        assert_eq!(g.declared_girth(), Girth::Infinite);
        assert_eq!(serialize_pdg(&g), "2 1 inf\n0 1\n0 1\n1 -1\n");
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_pdg("3 3 3\n0 1\n1 x\n2 0\n0 1 -3\n1 2 -1\n2 3 -2\n").unwrap_err();
        assert_eq!(
            err,
            PdgError::Syntax {
                line: 3,
                message: "bad vertex `x`".into()
            }
        );
        let err = parse_pdg("3 3 3\n0 1\n1 2\n2 0\n0 1 -3\n1 2 -1\n2 3 -7\n").unwrap_err();
        assert!(matches!(err, PdgError::Syntax { line: 7, .. }));
        assert!(matches!(
            parse_pdg("3 3 3\n0 1\n"),
            Err(PdgError::Truncated(_))
        ));
        assert!(matches!(
            parse_pdg("2 1 inf\n0 1\n0 1\n0 -1\n"),
            Err(PdgError::Syntax { line: 4, .. })
        ));
    }

    #[test]
    fn embedding_errors_surface() {
        let err = parse_pdg("2 1 inf\n0 1\n0 1\n1\n").unwrap_err();
        assert!(matches!(
            err,
            PdgError::Embed(EmbedError::DanglingEnd { .. })
        ));
    }
}

//! Line-delimited report records and the human table.
//!
//! Each record is one JSON object per line, carrying `"schema"` and a
//! `"kind"` tag. Fractions are strings of the form `p/q`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::frac::{parse_pq, to_decimal, to_pq, Frac};
use crate::machinery::PieceType;

pub const SCHEMA_VERSION: u32 = 1;

/// An exact fraction that serializes as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub Frac);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_pq(&s)
            .map(Exact)
            .ok_or_else(|| serde::de::Error::custom(format!("bad fraction `{s}`")))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_pq(&self.0))
    }
}

impl From<Frac> for Exact {
    fn from(x: Frac) -> Self {
        Exact(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Skipped,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Skipped => "skipped",
            Status::Error => "error",
        })
    }
}

/// Solver results and bound verdicts for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    /// Actual digirth; absent when acyclic.
    pub g: Option<usize>,
    pub status: Status,
    pub message: Option<String>,
    pub tau: Option<usize>,
    pub fvs: Option<Vec<usize>>,
    pub nu: Option<usize>,
    pub fas: Option<usize>,
    pub x_greedy: Option<Vec<usize>>,
    pub x_exact: Option<Vec<usize>>,
    pub tau_star: Option<Exact>,
    pub theorem_bound: Option<Exact>,
    pub packing_bound: Option<Exact>,
    pub cover_bound: Option<Exact>,
    pub n_over_g: Option<Exact>,
    pub gw_ratio: Option<Exact>,
    pub gw_candidate: bool,
    pub verdicts: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub ell: usize,
    #[serde(rename = "type")]
    pub kind: PieceType,
    pub phi: i64,
}

/// One forest node (or the outer region) of one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub id: String,
    pub component: usize,
    /// Cycle index, or `outer`.
    pub node: String,
    pub g: usize,
    pub k: usize,
    pub phi: i64,
    pub pieces: Vec<PieceRecord>,
    pub t2: usize,
    pub t3: usize,
    pub t3_bound: Option<i64>,
    pub lemma1: Option<bool>,
    pub disjoint_bound: Option<i64>,
    pub claim_bound: Exact,
    pub claim_holds: bool,
    pub tight: bool,
    pub all_hold: bool,
}

/// Summary of the proof trace of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub g: Option<usize>,
    pub status: Status,
    pub message: Option<String>,
    pub components: usize,
    pub nu: Option<usize>,
    pub packing_bound: Option<Exact>,
    pub regions: usize,
    pub verdicts: BTreeMap<String, bool>,
}

/// One row of a sweep over a (family, n, g) cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub g: usize,
    pub status: Status,
    pub instances: usize,
    pub generated: usize,
    pub max_tau: Option<usize>,
    pub theorem_bound: Option<Exact>,
    pub max_nu: Option<usize>,
    pub packing_bound: Option<Exact>,
    pub max_gw_ratio: Option<Exact>,
    pub pass: bool,
}

/// Solver values compared with the brute-force oracles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub id: String,
    pub n: usize,
    pub tau_oracle: Option<usize>,
    pub tau_solver: Option<usize>,
    pub nu_oracle: Option<usize>,
    pub nu_solver: Option<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Record {
    Solve(SolveRecord),
    Region(RegionRecord),
    Proof(ProofRecord),
    Sweep(SweepRow),
    Oracle(OracleRecord),
}

#[derive(Serialize, Deserialize)]
struct Line {
    schema: u32,
    #[serde(flatten)]
    record: Record,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: unsupported schema {found}")]
    Schema { line: usize, found: u32 },
}

impl Record {
    /// Whether every check in the record passed. Skipped and errored
    /// records count as passing here; callers inspect the status.
    pub fn passes(&self) -> bool {
        match self {
            Record::Solve(r) => r.verdicts.values().all(|&v| v),
            Record::Region(r) => r.all_hold,
            Record::Proof(r) => r.verdicts.values().all(|&v| v),
            Record::Sweep(r) => r.pass,
            Record::Oracle(r) => r.agree,
        }
    }

    pub fn status(&self) -> Status {
        match self {
            Record::Solve(r) => r.status,
            Record::Proof(r) => r.status,
            Record::Sweep(r) => r.status,
            Record::Region(_) | Record::Oracle(_) => Status::Ok,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(&Line {
            schema: SCHEMA_VERSION,
            record: self.clone(),
        })
        .expect("records serialize")
    }
}

pub fn parse_line(line: &str, line_no: usize) -> Result<Record, ReportError> {
    let parsed: Line = serde_json::from_str(line).map_err(|source| ReportError::Json {
        line: line_no,
        source,
    })?;
    if parsed.schema != SCHEMA_VERSION {
        return Err(ReportError::Schema {
            line: line_no,
            found: parsed.schema,
        });
    }
    Ok(parsed.record)
}

/// Parses a whole record stream, skipping blank lines.
pub fn parse_records(text: &str) -> Result<Vec<Record>, ReportError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_line(l, i + 1))
        .collect()
}

fn opt<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), |v| v.to_string())
}

fn dec(x: &Option<Exact>) -> String {
    x.as_ref().map_or("-".into(), |v| to_decimal(&v.0))
}

fn verdict(ok: bool, status: Status) -> &'static str {
    match status {
        Status::Skipped => "SKIPPED",
        Status::Error => "ERROR",
        Status::Ok if ok => "PASS",
        Status::Ok => "FAIL",
    }
}

fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<String>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.iter().map(|s| s.to_string()).collect());
    for r in rows {
        line(r.clone());
    }
    out
}

/// Human-readable table; decimals to four places. Records of different
/// kinds are grouped into one table per kind.
pub fn render_table(records: &[Record]) -> String {
    let mut solve = Vec::new();
    let mut region = Vec::new();
    let mut proof = Vec::new();
    let mut sweep = Vec::new();
    let mut oracle = Vec::new();
    for r in records {
        match r {
            Record::Solve(s) => solve.push(vec![
                s.id.clone(),
                s.n.to_string(),
                s.m.to_string(),
                opt(&s.g),
                opt(&s.tau),
                opt(&s.nu),
                opt(&s.fas),
                s.x_greedy
                    .as_ref()
                    .map_or("-".into(), |x| x.len().to_string()),
                s.x_exact
                    .as_ref()
                    .map_or("-".into(), |x| x.len().to_string()),
                dec(&s.tau_star),
                dec(&s.theorem_bound),
                dec(&s.gw_ratio),
                verdict(r.passes(), s.status).into(),
            ]),
            Record::Region(x) => region.push(vec![
                x.id.clone(),
                x.component.to_string(),
                x.node.clone(),
                x.k.to_string(),
                x.phi.to_string(),
                to_decimal(&x.claim_bound.0),
                x.pieces.len().to_string(),
                format!("{}/{}", x.t3, opt(&x.t3_bound)),
                if x.tight { "yes" } else { "" }.into(),
                verdict(x.all_hold, Status::Ok).into(),
            ]),
            Record::Proof(p) => proof.push(vec![
                p.id.clone(),
                p.n.to_string(),
                opt(&p.g),
                opt(&p.nu),
                dec(&p.packing_bound),
                p.regions.to_string(),
                verdict(r.passes(), p.status).into(),
                p.message.clone().unwrap_or_default(),
            ]),
            Record::Sweep(w) => sweep.push(vec![
                w.family.clone(),
                w.n.to_string(),
                w.g.to_string(),
                format!("{}/{}", w.instances, w.generated),
                opt(&w.max_tau),
                dec(&w.theorem_bound),
                opt(&w.max_nu),
                dec(&w.packing_bound),
                dec(&w.max_gw_ratio),
                verdict(w.pass, w.status).into(),
            ]),
            Record::Oracle(o) => oracle.push(vec![
                o.id.clone(),
                o.n.to_string(),
                opt(&o.tau_oracle),
                opt(&o.tau_solver),
                opt(&o.nu_oracle),
                opt(&o.nu_solver),
                verdict(o.agree, Status::Ok).into(),
            ]),
        }
    }
    let mut out = String::new();
    let mut push = |t: String| {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&t);
    };
    if !solve.is_empty() {
        push(render(
            &[
                "id", "n", "m", "g", "tau", "nu", "|A|", "X_greedy", "X_exact", "tau*", "bound",
                "tau/tau*", "verdict",
            ],
            &solve,
        ));
    }
    if !proof.is_empty() {
        push(render(
            &[
                "id", "n", "g", "nu", "nu_bound", "regions", "verdict", "note",
            ],
            &proof,
        ));
    }
    if !region.is_empty() {
        push(render(
            &[
                "id", "comp", "node", "k", "phi", "claim", "pieces", "T3", "tight", "verdict",
            ],
            &region,
        ));
    }
    if !sweep.is_empty() {
        push(render(
            &[
                "family",
                "n",
                "g",
                "solved",
                "max_tau",
                "bound",
                "max_nu",
                "nu_bound",
                "max_ratio",
                "verdict",
            ],
            &sweep,
        ));
    }
    if !oracle.is_empty() {
        push(render(
            &["id", "n", "tau_oracle", "tau", "nu_oracle", "nu", "verdict"],
            &oracle,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::frac;

    fn sample() -> Record {
        let mut verdicts = BTreeMap::new();
        verdicts.insert("tau_le_theorem".to_string(), true);
        Record::Solve(SolveRecord {
            id: "c4".into(),
            n: 4,
            m: 4,
            g: Some(4),
            status: Status::Ok,
            message: None,
            tau: Some(1),
            fvs: Some(vec![0]),
            nu: Some(1),
            fas: Some(1),
            x_greedy: Some(vec![0]),
            x_exact: Some(vec![0]),
            tau_star: Some(frac(1, 1).into()),
            theorem_bound: Some(frac(15, 9).into()),
            packing_bound: None,
            cover_bound: Some(frac(5, 3).into()),
            n_over_g: Some(frac(1, 1).into()),
            gw_ratio: Some(frac(1, 1).into()),
            gw_candidate: false,
            verdicts,
        })
    }

    #[test]
    fn record_round_trip() {
        let r = sample();
        let line = r.to_line();
        assert!(line.starts_with(r#"{"schema":1,"kind":"solve","id":"c4""#));
        assert!(line.contains(r#""theorem_bound":"5/3""#));
        let back = parse_line(&line, 1).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_line(), line);
    }

    #[test]
    fn schema_is_checked() {
        let line = sample().to_line().replace(r#""schema":1"#, r#""schema":9"#);
        assert!(matches!(
            parse_line(&line, 3),
            Err(ReportError::Schema { line: 3, found: 9 })
        ));
        assert!(matches!(
            parse_records("\n{oops}\n"),
            Err(ReportError::Json { line: 2, .. })
        ));
    }

    #[test]
    fn table_uses_four_decimals() {
        let t = render_table(&[sample()]);
        assert!(t.contains("1.6667"));
        assert!(t.contains("PASS"));
        assert!(!t.contains("5/3"));
    }
}

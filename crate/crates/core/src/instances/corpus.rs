use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::embed::{digirth, parse_pdg, serialize_pdg, Girth, PdgError, PlanarDigraph};
use crate::frac::{int, parse_pq, to_pq, Frac};

use super::generate::{generate, Family, GeneratorSpec};
use super::oracle::{brute_force_packing, brute_force_tau};

pub const INDEX_FILE: &str = "index.txt";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub spec: GeneratorSpec,
    pub pdg: String,
    /// Oracle values keyed by name, e.g. `tau`, `nu`.
    pub metrics: BTreeMap<String, Frac>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("index line {line}: {message}")]
    Index { line: usize, message: String },
    #[error("{id}: {source}")]
    Pdg { id: String, source: PdgError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CorpusEntry {
    pub fn graph(&self) -> Result<PlanarDigraph, PdgError> {
        parse_pdg(&self.pdg)
    }

    /// Builds an entry with oracle metrics: `g` always, `tau` and `nu` when
    /// the brute-force guards allow.
    pub fn from_graph(id: String, spec: GeneratorSpec, g: &PlanarDigraph) -> Self {
        let mut metrics = BTreeMap::new();
        if let Girth::Finite(x) = digirth(g) {
            metrics.insert("g".to_string(), int(x as i64));
        }
        if let Ok(t) = brute_force_tau(g) {
            metrics.insert("tau".to_string(), int(t as i64));
        }
        if let Ok(p) = brute_force_packing(g) {
            metrics.insert("nu".to_string(), int(p as i64));
        }
        CorpusEntry {
            id,
            spec,
            pdg: serialize_pdg(g),
            metrics,
        }
    }

    /// `id family n m g seed key=p/q ...`
    pub fn index_line(&self) -> String {
        let (n, m) = header_counts(&self.pdg);
        let mut s = format!(
            "{} {} {} {} {} {}",
            self.id, self.spec.family, n, m, self.spec.g_target, self.spec.seed
        );
        for (k, v) in &self.metrics {
            s.push_str(&format!(" {k}={}", to_pq(v)));
        }
        s
    }
}

fn header_counts(pdg: &str) -> (usize, usize) {
    let mut it = pdg
        .lines()
        .next()
        .unwrap_or("")
        .split_whitespace()
        .map(|x| x.parse().unwrap_or(0));
    (it.next().unwrap_or(0), it.next().unwrap_or(0))
}

/// Parsed index line: id, spec, n, m, metrics.
pub type IndexLine = (String, GeneratorSpec, usize, usize, BTreeMap<String, Frac>);

pub fn parse_index_line(line: &str) -> Result<IndexLine, String> {
    let f: Vec<&str> = line.split_whitespace().collect();
    if f.len() < 6 {
        return Err("expected `id family n m g seed ...`".into());
    }
    let num = |i: usize, what: &str| -> Result<u64, String> {
        f[i].parse().map_err(|_| format!("bad {what} `{}`", f[i]))
    };
    let family: Family = f[1].parse()?;
    let n = num(2, "n")? as usize;
    let m = num(3, "m")? as usize;
    let g = num(4, "g")? as usize;
    let seed = num(5, "seed")?;
    let mut metrics = BTreeMap::new();
    for kv in &f[6..] {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("bad metric `{kv}`"))?;
        let v = parse_pq(v).ok_or_else(|| format!("bad fraction `{v}`"))?;
        metrics.insert(k.to_string(), v);
    }
    let spec = GeneratorSpec {
        family,
        n_target: n,
        g_target: g,
        seed,
    };
    Ok((f[0].to_string(), spec, n, m, metrics))
}

/// Writes `<id>.pdg` per entry plus the index file.
pub fn write_corpus(dir: &Path, entries: &[CorpusEntry]) -> Result<(), CorpusError> {
    fs::create_dir_all(dir)?;
    let mut index = String::new();
    for e in entries {
        fs::write(dir.join(format!("{}.pdg", e.id)), &e.pdg)?;
        index.push_str(&e.index_line());
        index.push('\n');
    }
    fs::write(dir.join(INDEX_FILE), index)?;
    Ok(())
}

pub fn read_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let index = fs::read_to_string(dir.join(INDEX_FILE))?;
    let mut out = Vec::new();
    for (i, line) in index.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (id, spec, _, _, metrics) =
            parse_index_line(line).map_err(|message| CorpusError::Index {
                line: i + 1,
                message,
            })?;
        let pdg = fs::read_to_string(dir.join(format!("{id}.pdg")))?;
        if let Err(source) = parse_pdg(&pdg) {
            return Err(CorpusError::Pdg { id, source });
        }
        out.push(CorpusEntry {
            id,
            spec,
            pdg,
            metrics,
        });
    }
    Ok(out)
}

/// The generator specs of the standard corpus: digirth 4..=8, n 6..=24,
/// the three cyclic families, two seeds each.
pub fn standard_specs(seed: u64) -> Vec<GeneratorSpec> {
    let mut out = Vec::new();
    for g in 4..=8 {
        for n in 6..=24 {
            for family in [
                Family::CylinderGrid,
                Family::StackedCycles,
                Family::RandomPlanarFiltered,
            ] {
                for s in 0..2 {
                    out.push(GeneratorSpec {
                        family,
                        n_target: n,
                        g_target: g,
                        seed: seed
                            .wrapping_mul(1_000_003)
                            .wrapping_add((g * 10_000 + n * 100 + s) as u64),
                    });
                }
            }
        }
    }
    out
}

/// Generated instances of [`standard_specs`], skipping infeasible specs.
/// Metrics are left empty; use [`CorpusEntry::from_graph`] to fill them.
pub fn standard_corpus(seed: u64) -> Vec<(String, GeneratorSpec, PlanarDigraph)> {
    standard_specs(seed)
        .into_iter()
        .filter_map(|spec| {
            let g = generate(&spec).ok()?;
            let id = format!(
                "{}-n{}-g{}-s{}",
                spec.family, spec.n_target, spec.g_target, spec.seed
            );
            Some((id, spec, g))
        })
        .collect()
}

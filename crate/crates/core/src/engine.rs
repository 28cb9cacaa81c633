//! Memoised nim-value solver.
//!
//! Per component: table lookup, then an exact closed form, then a symmetry
//! reduction, then the mex over all children in move order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{key_for, CanonicalKey, DEFAULT_CANON_BOUND};
use crate::closed_forms;
use crate::complex::{Face, SimplicialComplex};
use crate::symmetry::{self, DEFAULT_SEARCH_NODES};
use crate::table::{TableStats, TranspositionTable};
use crate::{Error, Result};

/// Least nonnegative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let mut present: Vec<bool> = Vec::new();
    for v in values {
        let v = v as usize;
        if v >= present.len() {
            present.resize(v + 1, false);
        }
        present[v] = true;
    }
    present.iter().position(|&p| !p).unwrap_or(present.len()) as u32
}

pub fn nim_sum<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    values.into_iter().fold(0, |a, b| a ^ b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub use_reduction: bool,
    pub use_closed_forms: bool,
    pub use_decomposition: bool,
    /// Maximum number of table entries before the solver gives up.
    pub memo_capacity: usize,
    /// Components with more vertices get labelled rather than canonical keys.
    pub canonicalization_bound: usize,
    /// Node budget for each involution search.
    pub reduction_nodes: u64,
    /// Record every child value of the root, not just the witnesses.
    pub full_spectrum: bool,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig {
            use_reduction: true,
            use_closed_forms: true,
            use_decomposition: true,
            memo_capacity: 5_000_000,
            canonicalization_bound: DEFAULT_CANON_BOUND,
            reduction_nodes: DEFAULT_SEARCH_NODES,
            full_spectrum: false,
        }
    }
}

impl EngineConfig {
    /// Plain mex recursion with memoisation only.
    pub fn bare() -> EngineConfig {
        EngineConfig { use_reduction: false, use_closed_forms: false, ..EngineConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    /// Components solved by the mex recursion.
    pub expanded: u64,
    pub table_hits: u64,
    pub closed_form_hits: u64,
    pub reductions: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrundyRecord {
    pub value: u32,
    /// One move per reachable child value; complete below `value`.
    pub witness_moves: BTreeMap<u32, Face>,
    #[serde(serialize_with = "key_hex")]
    pub position_key: CanonicalKey,
    /// Every move with its child value, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<(Face, u32)>>,
    pub stats: EngineStats,
}

fn key_hex<S: serde::Serializer>(k: &CanonicalKey, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&hex::encode(k.digest()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    /// Previous player wins: nim-value zero.
    P,
    /// Next player wins.
    N,
}

/// A solver bound to one configuration and one table.
pub struct Engine<'a> {
    cfg: &'a EngineConfig,
    table: &'a TranspositionTable,
    stats: EngineStats,
}

impl<'a> Engine<'a> {
    pub fn new(cfg: &'a EngineConfig, table: &'a TranspositionTable) -> Engine<'a> {
        Engine { cfg, table, stats: EngineStats::default() }
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    /// Nim-value of `c`.
    pub fn value(&mut self, c: &SimplicialComplex) -> Result<u32> {
        if c.is_empty() {
            return Ok(0);
        }
        if self.cfg.use_decomposition {
            let mut acc = 0;
            for comp in c.components() {
                acc ^= self.component_value(&comp)?;
            }
            Ok(acc)
        } else {
            self.component_value(&c.compact())
        }
    }

    fn component_value(&mut self, c: &SimplicialComplex) -> Result<u32> {
        if c.is_empty() {
            return Ok(0);
        }
        let key = key_for(c, self.cfg.canonicalization_bound);
        if let Some(v) = self.table.get(&key) {
            self.stats.table_hits += 1;
            return Ok(v);
        }
        let v = self.solve_uncached(c)?;
        if self.table.len() >= self.cfg.memo_capacity {
            return Err(self.budget_error());
        }
        self.table.insert(key, v)?;
        Ok(v)
    }

    fn solve_uncached(&mut self, c: &SimplicialComplex) -> Result<u32> {
        if self.cfg.use_closed_forms {
            if let Some((v, _)) = closed_forms::fast_value(c) {
                self.stats.closed_form_hits += 1;
                return Ok(v);
            }
        }
        if self.cfg.use_reduction {
            if let Some(r) = symmetry::search_reduction(c, self.cfg.reduction_nodes).reduction {
                self.stats.reductions += 1;
                return self.value(&r.fixed);
            }
        }
        self.stats.expanded += 1;
        let mut seen = Vec::with_capacity(c.face_count());
        for &s in c.moves() {
            seen.push(self.value(&c.remove_face_unchecked(s))?);
        }
        Ok(mex(seen))
    }

    fn budget_error(&self) -> Error {
        let t: TableStats = self.table.stats();
        Error::Budget(format!(
            "memo capacity {} reached (entries {}, hits {}, misses {}, inserts {}; expanded {})",
            self.cfg.memo_capacity, t.entries, t.hits, t.misses, t.inserts, self.stats.expanded
        ))
    }

    /// Full record for the whole position, including witness moves.
    pub fn record(&mut self, c: &SimplicialComplex) -> Result<GrundyRecord> {
        let value = self.value(c)?;
        let mut witness_moves = BTreeMap::new();
        let mut spectrum = self.cfg.full_spectrum.then(Vec::new);
        if value > 0 || spectrum.is_some() {
            for &s in c.moves() {
                let v = self.value(&c.remove_face_unchecked(s))?;
                if v <= value + 1 {
                    witness_moves.entry(v).or_insert(s);
                }
                match spectrum.as_mut() {
                    Some(sp) => sp.push((s, v)),
                    None if witness_moves.range(..value).count() as u32 == value => break,
                    None => {}
                }
            }
        }
        Ok(GrundyRecord {
            value,
            witness_moves,
            position_key: key_for(&c.compact(), self.cfg.canonicalization_bound),
            spectrum,
            stats: self.stats,
        })
    }
}

/// Nim-value record of `c` under `cfg`, memoising into `table`.
pub fn grundy(c: &SimplicialComplex, cfg: &EngineConfig, table: &TranspositionTable) -> Result<GrundyRecord> {
    Engine::new(cfg, table).record(c)
}

/// A move to a zero-valued child, the first in move order; `None` for P-positions.
pub fn optimal_move(c: &SimplicialComplex, cfg: &EngineConfig, table: &TranspositionTable) -> Result<Option<Face>> {
    let rec = grundy(c, cfg, table)?;
    Ok(if rec.value > 0 { rec.witness_moves.get(&0).copied() } else { None })
}

pub fn classify(c: &SimplicialComplex, cfg: &EngineConfig, table: &TranspositionTable) -> Result<Outcome> {
    let mut e = Engine::new(cfg, table);
    Ok(if e.value(c)? == 0 { Outcome::P } else { Outcome::N })
}

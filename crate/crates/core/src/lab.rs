//! Experimental sweeps: tail growth on odd-cycle pseudotrees, pseudotrees with
//! several loaded cycle vertices, and wheels.
//!
//! Scans report what they observe. A sweep that runs out of budget marks the
//! affected rows as unverified rather than guessing. Every row carries an `id`;
//! passing earlier rows back in as `prior` skips their recomputation.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_key;
use crate::closed_forms::{
    bipartite_value, complete_graph_value, complete_npartite_value, figure8_value, forest_value, gmk_value,
    hairball_value, odd_pseudotree_single_attachment_value, pseudotree_classify, theta_value, FormulaKind,
    FormulaResult, GmkRecurrence, Parity,
};
use crate::complex::SimplicialComplex;
use crate::engine::{Engine, EngineConfig};
use crate::generators::{attach_tail, FamilySpec};
use crate::oracle::{oracle_grundy, DEFAULT_ORACLE_STATES};
use crate::symmetry::{self, Involution};
use crate::table::TranspositionTable;
use crate::{Error, Result};

/// Values already known from an earlier partial report, by row id.
pub type Prior = BTreeMap<String, u32>;

pub const EVIDENCE_WINDOW: usize = 6;

/// Entries checked against the oracle at the start of each tail sequence.
const ORACLE_SPOT_CHECKS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum TailPattern {
    /// Alternates between `4n` and `4n + 3`.
    Period2 { n: u32 },
    /// Equals `g_{m, k + offset}` of the `G_{m,k}` table.
    BlockRow { m: usize, offset: usize },
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailHypothesis {
    pub pseudotree: bool,
    pub odd_cycle: bool,
    pub simplest: Option<bool>,
    /// Some cycle vertex has degree at least three.
    pub loaded_cycle_vertex: bool,
}

impl TailHypothesis {
    pub fn holds(&self) -> bool {
        self.pseudotree && self.odd_cycle && self.simplest == Some(true) && self.loaded_cycle_vertex
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailSequence {
    pub base: FamilySpec,
    pub attach_vertex: usize,
    /// `values[k]` is the nim-value with a `k`-tail attached.
    pub values: Vec<u32>,
    pub classification: TailPattern,
    /// First index from which the sequence follows the classified pattern.
    pub stable_from: Option<usize>,
    pub evidence_window: usize,
    /// The engine ran out of budget before `k_max`.
    pub truncated: bool,
    pub oracle_checked: Vec<usize>,
    pub oracle_disagreements: Vec<usize>,
    pub has_one_mod_four: bool,
    pub hypothesis: TailHypothesis,
    pub config: EngineConfig,
}

pub fn tail_hypothesis(c: &SimplicialComplex) -> TailHypothesis {
    match pseudotree_classify(c) {
        None => TailHypothesis { pseudotree: false, odd_cycle: false, simplest: None, loaded_cycle_vertex: false },
        Some(shape) => TailHypothesis {
            pseudotree: true,
            odd_cycle: shape.odd_cycle(),
            simplest: shape.simplest_form,
            loaded_cycle_vertex: shape.attachment_degrees.iter().any(|&d| d >= 3),
        },
    }
}

fn tail_id(k: usize) -> String {
    format!("k={k}")
}

/// Nim-values of `base` with a `k`-tail on `attach` for `k = 0..=k_max`.
///
/// `attach` defaults to the highest-numbered vertex.
pub fn scan_tails(
    base: &FamilySpec,
    attach: Option<usize>,
    k_max: usize,
    cfg: &EngineConfig,
    table: &TranspositionTable,
    prior: &Prior,
) -> Result<TailSequence> {
    let c = base.generate()?;
    let attach_vertex = match attach {
        Some(v) => v,
        None => c.vertices().last().copied().ok_or_else(|| Error::InvalidInput("empty base".into()))?,
    };
    let mut seq = TailSequence {
        base: base.clone(),
        attach_vertex,
        values: Vec::new(),
        classification: TailPattern::Unclassified,
        stable_from: None,
        evidence_window: EVIDENCE_WINDOW,
        truncated: false,
        oracle_checked: Vec::new(),
        oracle_disagreements: Vec::new(),
        has_one_mod_four: false,
        hypothesis: tail_hypothesis(&c),
        config: cfg.clone(),
    };
    let mut engine = Engine::new(cfg, table);
    for k in 0..=k_max {
        let g = attach_tail(&c, attach_vertex, k)?;
        let value = match prior.get(&tail_id(k)) {
            Some(&v) => v,
            None => match engine.value(&g) {
                Ok(v) => v,
                Err(Error::Budget(_)) => {
                    seq.truncated = true;
                    break;
                }
                Err(e) => return Err(e),
            },
        };
        if k < ORACLE_SPOT_CHECKS {
            if let Ok(o) = oracle_grundy(&g, DEFAULT_ORACLE_STATES) {
                seq.oracle_checked.push(k);
                if o != value {
                    seq.oracle_disagreements.push(k);
                }
            }
        }
        seq.values.push(value);
    }
    seq.has_one_mod_four = seq.values.iter().any(|v| v % 4 == 1);
    let (pattern, from) = classify_tail(&seq.values, EVIDENCE_WINDOW);
    seq.classification = pattern;
    seq.stable_from = from;
    Ok(seq)
}

/// Matches the trailing `window` entries exactly against the two patterns.
pub fn classify_tail(values: &[u32], window: usize) -> (TailPattern, Option<usize>) {
    let len = values.len();
    if window < 2 || len < window {
        return (TailPattern::Unclassified, None);
    }
    let tail = &values[len - window..];
    let (x, y) = (tail[0], tail[1]);
    let alternates = tail.iter().enumerate().all(|(i, &v)| v == if i % 2 == 0 { x } else { y });
    let (lo, hi) = (x.min(y), x.max(y));
    if alternates && lo % 4 == 0 && hi == lo + 3 {
        let mut s = len - window;
        while s > 0 && values[s - 1] == values[s + 1] {
            s -= 1;
        }
        return (TailPattern::Period2 { n: lo / 4 }, Some(s));
    }
    let mut rec = GmkRecurrence::new();
    let span = 40;
    for m in 1..=span {
        for offset in 0..=span {
            let start = len - window;
            if start + offset == 0 {
                continue;
            }
            let matches = |i: usize, rec: &mut GmkRecurrence| values[i] == rec.get(m, i + offset);
            if (start..len).all(|i| matches(i, &mut rec)) {
                let mut s = start;
                while s > 0 && s - 1 + offset >= 1 && matches(s - 1, &mut rec) {
                    s -= 1;
                }
                return (TailPattern::BlockRow { m, offset }, Some(s));
            }
        }
    }
    (TailPattern::Unclassified, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    Violate,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiInstance {
    pub id: String,
    pub cycle: usize,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub value: Option<u32>,
    /// 3 for an odd vertex count, 0 for even.
    pub predicted: u32,
    pub verdict: Verdict,
}

/// Accepts odd-cycle pseudotrees in simplest form with at least two loaded cycle vertices.
pub fn check_multi_hypothesis(c: &SimplicialComplex) -> Result<()> {
    let shape = pseudotree_classify(c).ok_or_else(|| Error::InvalidInput("not a pseudotree".into()))?;
    if !shape.odd_cycle() {
        return Err(Error::InvalidInput("cycle is even".into()));
    }
    if shape.attachment_degrees.iter().filter(|&&d| d >= 3).count() < 2 {
        return Err(Error::InvalidInput("fewer than two cycle vertices of degree >= 3".into()));
    }
    match shape.simplest_form {
        Some(true) => Ok(()),
        Some(false) => Err(Error::InvalidInput("not in simplest form".into())),
        None => Err(Error::InvalidInput("simplest form not certified within budget".into())),
    }
}

/// All pseudotrees on a `cycle`-cycle with at most `v_max` vertices, one per isomorphism class.
pub fn pseudotrees_on_cycle(cycle: usize, v_max: usize) -> Result<Vec<SimplicialComplex>> {
    let ring: Vec<(usize, usize)> = (0..cycle).map(|i| (i, (i + 1) % cycle)).collect();
    let mut level = vec![SimplicialComplex::graph(cycle, &ring)?];
    let mut all = level.clone();
    for _ in cycle..v_max {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for v in g.vertices() {
                let h = attach_tail(g, v, 1)?;
                if seen.insert(canonical_key(&h)?) {
                    next.push(h);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

pub fn scan_multi_attachment(
    cycle: usize,
    v_max: usize,
    cfg: &EngineConfig,
    table: &TranspositionTable,
    prior: &Prior,
) -> Result<Vec<MultiInstance>> {
    if cycle < 3 || cycle % 2 == 0 {
        return Err(Error::InvalidInput("cycle must be odd and at least 3".into()));
    }
    let mut engine = Engine::new(cfg, table);
    let mut out = Vec::new();
    for g in pseudotrees_on_cycle(cycle, v_max)? {
        if check_multi_hypothesis(&g).is_err() {
            continue;
        }
        let id = hex::encode(&canonical_key(&g)?.digest()[..8]);
        let value = match prior.get(&id) {
            Some(&v) => Some(v),
            None => match engine.value(&g) {
                Ok(v) => Some(v),
                Err(Error::Budget(_)) => None,
                Err(e) => return Err(e),
            },
        };
        let vertices = g.vertex_count();
        let predicted = if vertices % 2 == 1 { 3 } else { 0 };
        let verdict = match value {
            None => Verdict::Unverified,
            Some(v) if v == predicted => Verdict::Agree,
            Some(_) => Verdict::Violate,
        };
        let edges = g.edges().map(|e| {
            let mut vs = e.vertices();
            (vs.next().unwrap(), vs.next().unwrap())
        });
        out.push(MultiInstance { id, cycle, vertices, edges: edges.collect(), value, predicted, verdict });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WheelMethod {
    /// Reflection fixing the hub and two opposite rim vertices, leaving a 3-vertex path.
    Reduction,
    Engine,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelRow {
    pub id: String,
    pub n: usize,
    pub value: Option<u32>,
    pub method: WheelMethod,
}

/// Rim reflection `i -> -i mod n` of the wheel on `n` rim vertices; the hub is fixed.
pub fn wheel_reflection(n: usize) -> Involution {
    let mut mapping: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    mapping.push(n);
    Involution::from_mapping(mapping)
}

pub fn scan_wheels(
    n_max: usize,
    cfg: &EngineConfig,
    table: &TranspositionTable,
    prior: &Prior,
) -> Result<Vec<WheelRow>> {
    if n_max < 3 {
        return Err(Error::InvalidInput("wheel scan needs n_max >= 3".into()));
    }
    let mut engine = Engine::new(cfg, table);
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let id = format!("n={n}");
        let w = FamilySpec::Wheel(n).generate()?;
        let mut target = w.clone();
        let mut method = WheelMethod::Engine;
        if n % 2 == 0 {
            let t = wheel_reflection(n);
            if symmetry::validate_involution(&w, &t).valid {
                target = symmetry::fixed_point_set(&w, &t)?;
                method = WheelMethod::Reduction;
            }
        }
        let value = match prior.get(&id) {
            Some(&v) => Some(v),
            None => match engine.value(&target) {
                Ok(v) => Some(v),
                Err(Error::Budget(_)) => None,
                Err(e) => return Err(e),
            },
        };
        if value.is_none() {
            method = WheelMethod::Unverified;
        }
        rows.push(WheelRow { id, n, value, method });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyFamily {
    Forest,
    Bipartite,
    Complete,
    Npartite,
    Gmk,
    Hairball,
    SingleAttachment,
    Figure8,
    Theta,
}

impl VerifyFamily {
    pub const ALL: [VerifyFamily; 9] = [
        VerifyFamily::Forest,
        VerifyFamily::Bipartite,
        VerifyFamily::Complete,
        VerifyFamily::Npartite,
        VerifyFamily::Gmk,
        VerifyFamily::Hairball,
        VerifyFamily::SingleAttachment,
        VerifyFamily::Figure8,
        VerifyFamily::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifyFamily::Forest => "forest",
            VerifyFamily::Bipartite => "bipartite",
            VerifyFamily::Complete => "complete",
            VerifyFamily::Npartite => "npartite",
            VerifyFamily::Gmk => "gmk",
            VerifyFamily::Hairball => "hairball",
            VerifyFamily::SingleAttachment => "single-attachment",
            VerifyFamily::Figure8 => "figure8",
            VerifyFamily::Theta => "theta",
        }
    }
}

impl std::str::FromStr for VerifyFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<VerifyFamily> {
        VerifyFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown verify family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyParams {
    /// Largest vertex count in the corpus.
    pub max_v: usize,
    /// Number of random samples for seeded families.
    pub samples: usize,
    pub seed: u64,
    /// Largest tail length for `G_{m,k}`; the engine checks `m + k <= max`.
    pub max: usize,
    /// Cycle lengths for the pseudotree families.
    pub cycles: Vec<usize>,
}

impl Default for VerifyParams {
    fn default() -> VerifyParams {
        VerifyParams { max_v: 8, samples: 200, seed: 1, max: 6, cycles: vec![3, 5] }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyCase {
    pub label: String,
    pub graph: SimplicialComplex,
    pub expected: FormulaResult,
    /// Independent value from the `G_{m,k}` recurrence, when there is one.
    pub recurrence: Option<u32>,
}

fn case(label: String, graph: SimplicialComplex, expected: FormulaResult) -> VerifyCase {
    VerifyCase { label, graph, expected, recurrence: None }
}

/// Integer partitions of `total` with nonincreasing parts.
fn partitions(total: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if total == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=max_part.min(total)).rev() {
        cur.push(p);
        partitions(total - p, p, cur, out);
        cur.pop();
    }
}

/// Odd-cycle hairballs with at least one tail, one per isomorphism class.
pub fn hairballs(cycle: usize, max_v: usize) -> Result<Vec<SimplicialComplex>> {
    let ring: Vec<(usize, usize)> = (0..cycle).map(|i| (i, (i + 1) % cycle)).collect();
    let base = SimplicialComplex::graph(cycle, &ring)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, base)];
    while let Some((at, g)) = stack.pop() {
        if at == cycle {
            if g.vertex_count() > cycle && seen.insert(canonical_key(&g)?) {
                out.push(g);
            }
            continue;
        }
        let room = max_v.saturating_sub(g.vertex_count());
        for extra in 0..=room {
            let mut parts = Vec::new();
            partitions(extra, extra, &mut Vec::new(), &mut parts);
            for tails in parts {
                let mut h = g.clone();
                for len in tails {
                    h = attach_tail(&h, at, len)?;
                }
                stack.push((at + 1, h));
            }
        }
    }
    out.sort_by_key(|g| (g.vertex_count(), g.faces().iter().map(|f| f.order_key()).collect::<Vec<_>>()));
    Ok(out)
}

pub fn verify_cases(family: VerifyFamily, p: &VerifyParams) -> Result<Vec<VerifyCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut out = Vec::new();
    match family {
        VerifyFamily::Forest => {
            for _ in 0..p.samples {
                let spec = FamilySpec::Forest { n: rng.gen_range(1..=p.max_v), seed: rng.gen() };
                let g = spec.generate()?;
                let s = g.graph_stats()?;
                out.push(case(spec.to_string(), g, forest_value(s.vertices, s.components)));
            }
        }
        VerifyFamily::Bipartite => {
            for _ in 0..p.samples {
                let total = rng.gen_range(2..=p.max_v.max(2));
                let a = rng.gen_range(1..total);
                let spec = FamilySpec::RandomBipartite { a, b: total - a, p: 0.5, seed: rng.gen() };
                let g = spec.generate()?;
                let s = g.graph_stats()?;
                out.push(case(spec.to_string(), g, bipartite_value(Parity::of(s.vertices), Parity::of(s.edges))));
            }
        }
        VerifyFamily::Complete => {
            for n in 1..=p.max_v {
                out.push(case(format!("complete:{n}"), FamilySpec::Complete(n).generate()?, complete_graph_value(n)));
            }
        }
        VerifyFamily::Npartite => {
            for total in 1..=p.max_v {
                let mut parts = Vec::new();
                partitions(total, total, &mut Vec::new(), &mut parts);
                for part in parts {
                    let spec = FamilySpec::NPartite(part.clone());
                    out.push(case(spec.to_string(), spec.generate()?, complete_npartite_value(&part)));
                }
            }
        }
        VerifyFamily::Gmk => {
            let mut rec = GmkRecurrence::new();
            for &cycle in &p.cycles {
                for m in 1..=p.max {
                    for k in m..=p.max - m {
                        let spec = FamilySpec::Gmk { m, k, cycle };
                        let mut c = case(spec.to_string(), spec.generate()?, gmk_value(m, k));
                        c.recurrence = Some(rec.get(m, k));
                        out.push(c);
                    }
                }
            }
        }
        VerifyFamily::Hairball => {
            for &cycle in p.cycles.iter().filter(|c| *c % 2 == 1) {
                for g in hairballs(cycle, p.max_v)? {
                    let Some(shape) = pseudotree_classify(&g) else { continue };
                    let r = hairball_value(&shape);
                    if r.is_applicable() {
                        out.push(case(format!("hairball:c{cycle}:{}", edge_label(&g)), g, r));
                    }
                }
            }
        }
        VerifyFamily::SingleAttachment => {
            for &cycle in p.cycles.iter().filter(|c| *c % 2 == 1) {
                for g in pseudotrees_on_cycle(cycle, p.max_v)? {
                    let Some(shape) = pseudotree_classify(&g) else { continue };
                    let r = odd_pseudotree_single_attachment_value(&shape);
                    if r.is_applicable() {
                        out.push(case(format!("single:c{cycle}:{}", edge_label(&g)), g, r));
                    }
                }
            }
        }
        VerifyFamily::Figure8 => {
            for a in 3..=p.max_v {
                for b in a..=p.max_v + 1 - a {
                    let spec = FamilySpec::Figure8(a, b);
                    let g = spec.generate()?;
                    out.push(case(spec.to_string(), g.clone(), figure8_value(&g)));
                }
            }
        }
        VerifyFamily::Theta => {
            for x in 0..=p.max_v {
                for y in x.max(1)..=p.max_v {
                    for z in y..=p.max_v {
                        if 2 + x + y + z > p.max_v {
                            continue;
                        }
                        let spec = FamilySpec::Theta(x, y, z);
                        let g = spec.generate()?;
                        let r = theta_value(&g);
                        if r.is_applicable() {
                            out.push(case(spec.to_string(), g, r));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn edge_label(g: &SimplicialComplex) -> String {
    let e: Vec<String> = g
        .edges()
        .map(|f| {
            let v: Vec<String> = f.vertices().map(|x| x.to_string()).collect();
            v.join("-")
        })
        .collect();
    e.join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub label: String,
    pub expected: FormulaKind,
    pub engine: Option<u32>,
    pub oracle: Option<u32>,
    pub recurrence: Option<u32>,
    pub pass: bool,
}

/// Compares each case's formula with the engine, the recurrence and (within
/// `oracle_states`) the oracle. Closed forms should be disabled in `cfg`.
pub fn verify_family(
    family: VerifyFamily,
    p: &VerifyParams,
    cfg: &EngineConfig,
    table: &TranspositionTable,
    oracle_states: usize,
) -> Result<Vec<VerifyRow>> {
    let mut engine = Engine::new(cfg, table);
    let mut rows = Vec::new();
    for c in verify_cases(family, p)? {
        let engine_value = match engine.value(&c.graph) {
            Ok(v) => Some(v),
            Err(Error::Budget(_)) => None,
            Err(e) => return Err(e),
        };
        let oracle = if oracle_states > 0 && c.graph.face_count() <= 40 {
            oracle_grundy(&c.graph, oracle_states).ok()
        } else {
            None
        };
        let pass = engine_value.is_some()
            && [engine_value, oracle, c.recurrence].iter().flatten().all(|&v| c.expected.admits(v))
            && (oracle.is_none() || oracle == engine_value);
        rows.push(VerifyRow {
            label: c.label,
            expected: c.expected.kind,
            engine: engine_value,
            oracle,
            recurrence: c.recurrence,
            pass,
        });
    }
    Ok(rows)
}

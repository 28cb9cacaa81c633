//! Involutions of a complex and reduction to the fixed-point set.
//!
//! An involution whose setwise-fixed faces are all pointwise fixed leaves a
//! fixed-point set that is again a simplicial complex, and that complex has the
//! same nim-value as the original. For graphs the condition reads: no edge has
//! its two endpoints swapped.

use serde::{Deserialize, Serialize};

use crate::canon::{self, CanonicalKey};
use crate::complex::{Face, SimplicialComplex};
use crate::{Error, Result};

/// Default node budget for the involution search.
pub const DEFAULT_SEARCH_NODES: u64 = 200_000;

/// An order-two permutation of the ground set, stored as a lookup table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    mapping: Vec<usize>,
}

impl Involution {
    pub fn identity(ground_size: usize) -> Involution {
        Involution { mapping: (0..ground_size).collect() }
    }

    /// Builds the product of the given disjoint transpositions.
    pub fn from_pairs(ground_size: usize, pairs: &[(usize, usize)]) -> Result<Involution> {
        let mut inv = Involution::identity(ground_size);
        for &(a, b) in pairs {
            if a >= ground_size || b >= ground_size || a == b {
                return Err(Error::InvalidInput(format!("bad transposition ({a},{b})")));
            }
            if inv.mapping[a] != a || inv.mapping[b] != b {
                return Err(Error::InvalidInput(format!("vertex repeated in ({a},{b})")));
            }
            inv.mapping.swap(a, b);
        }
        Ok(inv)
    }

    /// Arbitrary mapping, which may fail validation (used to exercise the order check).
    pub fn from_mapping(mapping: Vec<usize>) -> Involution {
        Involution { mapping }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, v: usize) -> usize {
        self.mapping[v]
    }

    /// Swapped pairs `(a, b)` with `a < b`, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.mapping.len()).filter(|&a| self.mapping[a] > a).map(|a| (a, self.mapping[a])).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn image(&self, f: Face) -> Face {
        f.map(&self.mapping)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvalidReason {
    NotOrder2,
    NotFacePreserving,
    FixedSetNotComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub reason: Option<InvalidReason>,
}

impl Validation {
    fn fail(reason: InvalidReason) -> Validation {
        Validation { valid: false, reason: Some(reason) }
    }
}

pub fn validate_involution(c: &SimplicialComplex, t: &Involution) -> Validation {
    let n = c.ground_size();
    if t.mapping.len() != n || t.mapping.iter().any(|&m| m >= n) {
        return Validation::fail(InvalidReason::NotFacePreserving);
    }
    if c.vertices().iter().any(|&v| t.mapping[t.mapping[v]] != v) {
        return Validation::fail(InvalidReason::NotOrder2);
    }
    if c.faces().iter().any(|&f| !c.contains(t.image(f))) {
        return Validation::fail(InvalidReason::NotFacePreserving);
    }
    let moved = |f: Face| f.vertices().any(|v| t.mapping[v] != v);
    if c.faces().iter().any(|&f| t.image(f) == f && moved(f)) {
        return Validation::fail(InvalidReason::FixedSetNotComplex);
    }
    Validation { valid: true, reason: None }
}

/// Faces mapped to themselves as sets. Not necessarily downward closed.
pub fn setwise_fixed_faces(c: &SimplicialComplex, t: &Involution) -> Vec<Face> {
    c.faces().iter().copied().filter(|&f| t.image(f) == f).collect()
}

/// Vertices of `c` fixed by `t`, ascending.
pub fn fixed_vertices(c: &SimplicialComplex, t: &Involution) -> Vec<usize> {
    c.vertices().into_iter().filter(|&v| t.mapping[v] == v).collect()
}

/// The fixed-point complex, relabelled densely in ascending order of the fixed vertices.
pub fn fixed_point_set(c: &SimplicialComplex, t: &Involution) -> Result<SimplicialComplex> {
    let check = validate_involution(c, t);
    if let Some(reason) = check.reason {
        return Err(Error::InvalidInput(format!("involution rejected: {reason:?}")));
    }
    let fixed = setwise_fixed_faces(c, t);
    let dense = SimplicialComplex::from_faces(fixed, c.ground_size())?;
    Ok(dense.compact())
}

/// A valid non-identity involution together with its fixed-point complex.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub involution: Involution,
    pub fixed_vertices: Vec<usize>,
    /// Densely relabelled fixed-point complex.
    pub fixed: SimplicialComplex,
}

#[derive(Clone, Debug)]
pub struct ReductionSearch {
    pub reduction: Option<Reduction>,
    /// Every candidate involution was examined.
    pub exhaustive: bool,
    pub nodes: u64,
}

impl ReductionSearch {
    /// `Some(true)` when no reduction exists, `None` when the search gave up.
    pub fn simplest(&self) -> Option<bool> {
        match (&self.reduction, self.exhaustive) {
            (Some(_), _) => Some(false),
            (None, true) => Some(true),
            (None, false) => None,
        }
    }
}

/// Best reduction under the default node budget.
pub fn find_reduction(c: &SimplicialComplex) -> Option<Reduction> {
    search_reduction(c, DEFAULT_SEARCH_NODES).reduction
}

/// Looks for a reduction of `c`.
///
/// Single transpositions are tried first; if any is valid the best of them is
/// returned. Otherwise all involutions that respect the stable colouring are
/// enumerated by backtracking. Among candidates the fixed set with the fewest
/// vertices wins, then the smallest canonical key, then the smallest pair list.
pub fn search_reduction(c: &SimplicialComplex, node_budget: u64) -> ReductionSearch {
    let mut s = Searcher::new(c, node_budget);
    if s.vertices.len() < 2 {
        return ReductionSearch { reduction: None, exhaustive: true, nodes: 0 };
    }
    s.transpositions();
    if s.best.is_none() {
        let mut assigned = vec![usize::MAX; c.ground_size()];
        s.backtrack(0, &mut assigned, 0, 0);
    }
    ReductionSearch {
        reduction: s.best.map(|b| b.reduction),
        exhaustive: !s.exhausted,
        nodes: s.nodes,
    }
}

struct Candidate {
    fixed_count: usize,
    key: CanonicalKey,
    pairs: Vec<(usize, usize)>,
    reduction: Reduction,
}

struct Searcher<'a> {
    c: &'a SimplicialComplex,
    vertices: Vec<usize>,
    colors: Vec<u32>,
    adj: Vec<u64>,
    /// Faces with at least two vertices.
    faces: Vec<Face>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best: Option<Candidate>,
}

impl<'a> Searcher<'a> {
    fn new(c: &'a SimplicialComplex, budget: u64) -> Searcher<'a> {
        let vertices = c.vertices();
        Searcher {
            c,
            vertices,
            colors: canon::stable_colors(c),
            adj: c.adjacency(),
            faces: c.faces().iter().copied().filter(|f| f.len() > 1).collect(),
            budget,
            nodes: 0,
            exhausted: false,
            best: None,
        }
    }

    fn offer(&mut self, inv: Involution) {
        let fixed_vertices = fixed_vertices(self.c, &inv);
        let fixed_count = fixed_vertices.len();
        if let Some(b) = &self.best {
            if fixed_count > b.fixed_count {
                return;
            }
        }
        let fixed = SimplicialComplex::from_faces(setwise_fixed_faces(self.c, &inv), self.c.ground_size())
            .expect("validated involutions have closed fixed sets")
            .compact();
        let key = canon::key_for(&fixed, canon::DEFAULT_CANON_BOUND);
        let pairs = inv.pairs();
        let better = match &self.best {
            None => true,
            Some(b) => (fixed_count, &key, &pairs) < (b.fixed_count, &b.key, &b.pairs),
        };
        if better {
            let reduction = Reduction { involution: inv, fixed_vertices, fixed };
            self.best = Some(Candidate { fixed_count, key, pairs, reduction });
        }
    }

    fn transpositions(&mut self) {
        let vs = self.vertices.clone();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                self.nodes += 1;
                if self.colors[a] != self.colors[b] || self.adj[a] & (1 << b) != 0 {
                    continue;
                }
                let inv = Involution::from_pairs(self.c.ground_size(), &[(a, b)]).unwrap();
                if self.c.faces().iter().all(|&f| self.c.contains(inv.image(f))) {
                    self.offer(inv);
                }
            }
        }
    }

    /// Assigns vertices in ascending order; `assigned[v]` is the image or `usize::MAX`.
    fn backtrack(&mut self, idx: usize, assigned: &mut Vec<usize>, fixed: usize, pairs: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if let Some(b) = &self.best {
            if fixed > b.fixed_count {
                return;
            }
        }
        let Some(pos) = (idx..self.vertices.len()).find(|&i| assigned[self.vertices[i]] == usize::MAX) else {
            if pairs > 0 {
                self.offer(Involution { mapping: full_mapping(assigned) });
            }
            return;
        };
        let u = self.vertices[pos];
        for j in pos + 1..self.vertices.len() {
            let w = self.vertices[j];
            if assigned[w] != usize::MAX || self.colors[w] != self.colors[u] || self.adj[u] & (1 << w) != 0 {
                continue;
            }
            assigned[u] = w;
            assigned[w] = u;
            if self.consistent(assigned, &[u, w]) {
                self.backtrack(pos + 1, assigned, fixed, pairs + 1);
            }
            assigned[u] = usize::MAX;
            assigned[w] = usize::MAX;
        }
        assigned[u] = u;
        if self.consistent(assigned, &[u]) {
            self.backtrack(pos + 1, assigned, fixed + 1, pairs);
        }
        assigned[u] = usize::MAX;
    }

    /// Faces lying entirely among assigned vertices and touching `fresh` must map into the complex.
    fn consistent(&self, assigned: &[usize], fresh: &[usize]) -> bool {
        let done = |f: Face| f.vertices().all(|v| assigned[v] != usize::MAX);
        let fresh_mask = fresh.iter().fold(0u64, |m, &v| m | (1 << v));
        let image = |f: Face| Face::from_mask(f.vertices().fold(0u64, |m, v| m | (1 << assigned[v]))).unwrap();
        self.faces.iter().all(|&f| {
            f.mask() & fresh_mask == 0 || !done(f) || self.c.contains(image(f))
        })
    }
}

fn full_mapping(assigned: &[usize]) -> Vec<usize> {
    assigned.iter().enumerate().map(|(i, &m)| if m == usize::MAX { i } else { m }).collect()
}

/// One reduction step, expressed in the labels of that step's input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub pairs: Vec<(usize, usize)>,
    pub fixed_vertices: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    /// No further reduction exists (certified by exhaustive search).
    pub simplest: bool,
}

impl ReductionTrace {
    /// Re-applies every step to `start`, validating each involution.
    pub fn replay(&self, start: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mut cur = start.clone();
        for step in &self.steps {
            let inv = Involution::from_pairs(cur.ground_size(), &step.pairs)?;
            if fixed_vertices(&cur, &inv) != step.fixed_vertices {
                return Err(Error::InvalidInput("trace fixed vertices do not match".into()));
            }
            cur = fixed_point_set(&cur, &inv)?;
        }
        Ok(cur)
    }
}

/// Applies reductions until none is found or `max_steps` is reached.
pub fn reduce_to_simplest(
    c: &SimplicialComplex,
    max_steps: usize,
    node_budget: u64,
) -> (SimplicialComplex, ReductionTrace) {
    let mut cur = c.clone();
    let mut trace = ReductionTrace::default();
    loop {
        if trace.steps.len() >= max_steps {
            return (cur, trace);
        }
        let search = search_reduction(&cur, node_budget);
        match search.reduction {
            Some(r) => {
                trace.steps.push(TraceStep { pairs: r.involution.pairs(), fixed_vertices: r.fixed_vertices });
                cur = r.fixed;
            }
            None => {
                trace.simplest = search.exhaustive;
                return (cur, trace);
            }
        }
    }
}

/// `Some(true)` if `c` admits no reduction, `None` if the search budget ran out.
pub fn is_simplest(c: &SimplicialComplex) -> Option<bool> {
    search_reduction(c, DEFAULT_SEARCH_NODES).simplest()
}

//! Closed-form nim-values for graph families.
//!
//! Each rule is a classifier plus an evaluator. Exact results are safe as
//! solver fast paths; lower bounds are not.

use serde::{Deserialize, Serialize};

use crate::complex::{GraphStats, SimplicialComplex};
use crate::symmetry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    CompleteGraph,
    CompleteNPartite,
    Forest,
    Bipartite,
    EvenCyclePseudotree,
    SingleAttachment,
    Gmk,
    Hairball,
    Figure8,
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum FormulaKind {
    Exact(u32),
    LowerBound(u32),
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub kind: FormulaKind,
    pub rule: Rule,
}

impl FormulaResult {
    fn exact(rule: Rule, value: u32) -> FormulaResult {
        FormulaResult { kind: FormulaKind::Exact(value), rule }
    }

    fn na(rule: Rule) -> FormulaResult {
        FormulaResult { kind: FormulaKind::NotApplicable, rule }
    }

    pub fn exact_value(&self) -> Option<u32> {
        match self.kind {
            FormulaKind::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_applicable(&self) -> bool {
        self.kind != FormulaKind::NotApplicable
    }

    /// Whether `value` is consistent with this result.
    pub fn admits(&self, value: u32) -> bool {
        match self.kind {
            FormulaKind::Exact(v) => v == value,
            FormulaKind::LowerBound(b) => value >= b,
            FormulaKind::NotApplicable => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

pub fn complete_graph_value(n: usize) -> FormulaResult {
    FormulaResult::exact(Rule::CompleteGraph, (n % 3) as u32)
}

/// `K_{a_1..a_n}`: the number of odd parts, mod 3.
pub fn complete_npartite_value(parts: &[usize]) -> FormulaResult {
    if parts.iter().any(|&a| a == 0) {
        return FormulaResult::na(Rule::CompleteNPartite);
    }
    let odd = parts.iter().filter(|&&a| a % 2 == 1).count();
    FormulaResult::exact(Rule::CompleteNPartite, (odd % 3) as u32)
}

/// Bipartite graphs depend only on the parities of `v` and `e`.
pub fn bipartite_value(v: Parity, e: Parity) -> FormulaResult {
    let value = match (v, e) {
        (Parity::Even, Parity::Even) => 0,
        (Parity::Odd, Parity::Even) => 1,
        (Parity::Even, Parity::Odd) => 2,
        (Parity::Odd, Parity::Odd) => 3,
    };
    FormulaResult::exact(Rule::Bipartite, value)
}

/// Forests: parity of the vertex count and of the number of components.
pub fn forest_value(v: usize, components: usize) -> FormulaResult {
    let value = match (components % 2 == 0, v % 2 == 0) {
        (true, true) => 0,
        (true, false) => 3,
        (false, true) => 2,
        (false, false) => 1,
    };
    FormulaResult::exact(Rule::Forest, value)
}

/// Pseudotree with an even cycle (bipartite with `e = v`).
pub fn even_cycle_pseudotree_value(v: usize) -> FormulaResult {
    FormulaResult::exact(Rule::EvenCyclePseudotree, if v % 2 == 1 { 3 } else { 0 })
}

/// First vertex of even degree and first of odd degree.
pub fn degree_witnesses(stats: &GraphStats) -> (Option<usize>, Option<usize>) {
    let even = stats.degrees.iter().find(|d| d.1 % 2 == 0).map(|d| d.0);
    let odd = stats.degrees.iter().find(|d| d.1 % 2 == 1).map(|d| d.0);
    (even, odd)
}

/// `g_{m,k}` from the 3x3 block structure, for `m, k >= 1`.
pub fn gmk_value(m: usize, k: usize) -> FormulaResult {
    if m == 0 || k == 0 {
        return FormulaResult::na(Rule::Gmk);
    }
    let (a, i) = ((m - 1) / 3, (m - 1) % 3 + 1);
    let (b, j) = ((k - 1) / 3, (k - 1) % 3 + 1);
    let n = ((a ^ b) + 1) as u32;
    let value = if (i + j) % 2 == 0 { 4 * n } else { 4 * n + 2 };
    FormulaResult::exact(Rule::Gmk, value)
}

/// `g_{m,k}` computed from the move recurrence, independently of [`gmk_value`].
///
/// The boundary is seeded with `g_{0,0} = 4` and, for a single tail
/// (`B` of degree two), `g_{i,0} = g_{0,i} = 3` for odd `i` and `0` for even `i`.
#[derive(Clone, Debug, Default)]
pub struct GmkRecurrence {
    grid: Vec<Vec<u32>>,
}

impl GmkRecurrence {
    pub fn new() -> GmkRecurrence {
        GmkRecurrence::default()
    }

    pub fn get(&mut self, m: usize, k: usize) -> u32 {
        self.ensure(m.max(k) + 1);
        self.grid[m][k]
    }

    fn ensure(&mut self, size: usize) {
        if self.grid.len() >= size {
            return;
        }
        let mut g = vec![vec![0u32; size]; size];
        for i in 0..size {
            let single = if i % 2 == 1 { 3 } else { 0 };
            g[i][0] = single;
            g[0][i] = single;
        }
        g[0][0] = 4;
        let mut seen = Vec::new();
        for m in 1..size {
            for k in 1..size {
                seen.clear();
                seen.extend([0, 1, 2, 3]);
                seen.extend([g[m - 1][k], g[m - 1][k] ^ 1, g[m][k - 1], g[m][k - 1] ^ 1]);
                for i in 0..m.saturating_sub(1) {
                    seen.extend([g[i][k] ^ 1, g[i][k] ^ 2]);
                }
                for j in 0..k.saturating_sub(1) {
                    seen.extend([g[m][j] ^ 1, g[m][j] ^ 2]);
                }
                g[m][k] = crate::engine::mex(seen.iter().copied());
            }
        }
        self.grid = g;
    }
}

pub fn gmk_recurrence(m: usize, k: usize, memo: &mut GmkRecurrence) -> u32 {
    memo.get(m, k)
}

/// Structure of a connected graph with exactly one cycle.
#[derive(Clone, Debug)]
pub struct PseudotreeShape {
    pub vertices: usize,
    /// Cycle vertices in cyclic order, starting from the smallest label.
    pub cycle: Vec<usize>,
    /// Degree of each cycle vertex, aligned with `cycle`.
    pub attachment_degrees: Vec<usize>,
    /// Sorted lengths of the branches hanging from each cycle vertex, when all of them are paths.
    pub tail_profile: Vec<Option<Vec<usize>>>,
    /// `Some(true)` when no reduction exists, `None` when the search budget ran out.
    pub simplest_form: Option<bool>,
    adj: Vec<u64>,
}

impl PseudotreeShape {
    pub fn odd_cycle(&self) -> bool {
        self.cycle.len() % 2 == 1
    }

    pub fn is_hairball(&self) -> bool {
        self.tail_profile.iter().all(Option::is_some)
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// `(A, B)` when exactly one cycle vertex has degree three and the rest degree two.
    pub fn single_attachment(&self) -> Option<(usize, usize)> {
        let heavy: Vec<usize> = (0..self.cycle.len()).filter(|&i| self.attachment_degrees[i] != 2).collect();
        if heavy.len() != 1 || self.attachment_degrees[heavy[0]] != 3 {
            return None;
        }
        let a = self.cycle[heavy[0]];
        let on_cycle = self.cycle.iter().fold(0u64, |m, &v| m | (1 << v));
        let b = (self.adj[a] & !on_cycle).trailing_zeros() as usize;
        Some((a, b))
    }

    /// Length of the path starting at `start` and leading away from `from`, if it is a path.
    fn path_length(&self, from: usize, start: usize) -> Option<usize> {
        let (mut prev, mut cur, mut len) = (from, start, 1);
        loop {
            match self.degree(cur) {
                1 => return Some(len),
                2 => {
                    let next = (self.adj[cur] & !(1 << prev)).trailing_zeros() as usize;
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                _ => return None,
            }
        }
    }

    /// `(m, k)` with `m <= k` when the graph is `G_{m,k}`; `(0, 0)` means `B` is a leaf.
    pub fn gmk_parameters(&self) -> Option<(usize, usize)> {
        if !self.odd_cycle() {
            return None;
        }
        let (a, b) = self.single_attachment()?;
        match self.degree(b) {
            1 => Some((0, 0)),
            3 => {
                let mut rest = self.adj[b] & !(1 << a);
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let y = rest.trailing_zeros() as usize;
                let (m, k) = (self.path_length(b, x)?, self.path_length(b, y)?);
                Some((m.min(k), m.max(k)))
            }
            _ => None,
        }
    }
}

/// Shape of `c` if it is a connected graph with exactly one cycle.
pub fn pseudotree_classify(c: &SimplicialComplex) -> Option<PseudotreeShape> {
    let stats = c.graph_stats().ok()?;
    if stats.components != 1 || stats.cycle_count != 1 {
        return None;
    }
    let adj = c.adjacency();
    let mut core = c.vertex_mask();
    let mut deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut leaves: Vec<usize> = c.vertices().into_iter().filter(|&v| deg[v] == 1).collect();
    while let Some(v) = leaves.pop() {
        core &= !(1 << v);
        let mut nb = adj[v] & core;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            deg[w] -= 1;
            if deg[w] == 1 {
                leaves.push(w);
            }
        }
    }
    let start = core.trailing_zeros() as usize;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = (adj[start] & core).trailing_zeros() as usize;
    while cur != start {
        cycle.push(cur);
        let next = (adj[cur] & core & !(1 << prev)).trailing_zeros() as usize;
        prev = cur;
        cur = next;
    }
    let mut shape = PseudotreeShape {
        vertices: stats.vertices,
        attachment_degrees: cycle.iter().map(|&v| adj[v].count_ones() as usize).collect(),
        tail_profile: Vec::new(),
        simplest_form: None,
        cycle,
        adj,
    };
    shape.tail_profile = shape
        .cycle
        .iter()
        .map(|&a| {
            let mut branches = shape.adj[a] & !core;
            let mut lens = Vec::new();
            while branches != 0 {
                let r = branches.trailing_zeros() as usize;
                branches &= branches - 1;
                lens.push(shape.path_length(a, r)?);
            }
            lens.sort_unstable();
            Some(lens)
        })
        .collect();
    shape.simplest_form = symmetry::is_simplest(c);
    Some(shape)
}

/// Odd cycle with one degree-3 vertex `A` whose outside neighbour is `B`.
pub fn odd_pseudotree_single_attachment_value(shape: &PseudotreeShape) -> FormulaResult {
    let na = FormulaResult::na(Rule::SingleAttachment);
    if !shape.odd_cycle() || shape.simplest_form != Some(true) {
        return na;
    }
    let Some((_, b)) = shape.single_attachment() else { return na };
    let kind = if shape.degree(b) % 2 == 1 {
        FormulaKind::LowerBound(4)
    } else if shape.vertices % 2 == 1 {
        FormulaKind::Exact(3)
    } else {
        FormulaKind::Exact(0)
    };
    FormulaResult { kind, rule: Rule::SingleAttachment }
}

/// Odd-cycle hairballs in simplest form that are not bare cycles.
pub fn hairball_value(shape: &PseudotreeShape) -> FormulaResult {
    let na = FormulaResult::na(Rule::Hairball);
    if !shape.odd_cycle() || !shape.is_hairball() || shape.simplest_form != Some(true) {
        return na;
    }
    let loaded: Vec<&Vec<usize>> =
        shape.tail_profile.iter().flatten().filter(|t| !t.is_empty()).collect();
    if loaded.is_empty() {
        return na;
    }
    if shape.vertices % 2 == 1 {
        return FormulaResult::exact(Rule::Hairball, 3);
    }
    // one loaded cycle vertex carrying a k-tail and a (k+1)-tail; k = 0 is a lone leaf
    let consecutive = loaded.len() == 1
        && match loaded[0].as_slice() {
            [1] => true,
            [k, l] => *l == k + 1,
            _ => false,
        };
    FormulaResult::exact(Rule::Hairball, if consecutive { 4 } else { 0 })
}

fn degree_profile(c: &SimplicialComplex) -> Option<(GraphStats, Vec<usize>)> {
    let stats = c.graph_stats().ok()?;
    if stats.components != 1 || stats.edges != stats.vertices + 1 {
        return None;
    }
    let mut degs: Vec<usize> = stats.degrees.iter().map(|d| d.1).collect();
    degs.sort_unstable();
    Some((stats, degs))
}

/// Two cycles sharing a single degree-4 vertex.
pub fn figure8_value(c: &SimplicialComplex) -> FormulaResult {
    match degree_profile(c) {
        Some((_, degs)) if degs.last() == Some(&4) && degs[..degs.len() - 1].iter().all(|&d| d == 2) => {
            FormulaResult::exact(Rule::Figure8, 1)
        }
        _ => FormulaResult::na(Rule::Figure8),
    }
}

/// Three internally disjoint paths between two nonadjacent vertices.
pub fn theta_value(c: &SimplicialComplex) -> FormulaResult {
    let na = FormulaResult::na(Rule::Theta);
    let Some((stats, degs)) = degree_profile(c) else { return na };
    let n = degs.len();
    if n < 2 || degs[n - 2..] != [3, 3] || degs[..n - 2].iter().any(|&d| d != 2) {
        return na;
    }
    let branch: Vec<usize> = stats.degrees.iter().filter(|d| d.1 == 3).map(|d| d.0).collect();
    let (a, b) = (branch[0], branch[1]);
    if c.adjacency()[a] & (1 << b) != 0 {
        return na;
    }
    // a dumbbell falls apart when a branch vertex is removed; a theta does not
    let without_a = c.remove_face_unchecked(crate::Face::vertex(a));
    if !without_a.is_connected() {
        return na;
    }
    FormulaResult::exact(Rule::Theta, if stats.vertices % 2 == 1 { 1 } else { 2 })
}

/// Part sizes when `c` is a complete multipartite graph (including edgeless graphs).
pub fn complete_npartite_parts(c: &SimplicialComplex) -> Option<Vec<usize>> {
    if !c.is_graph() || c.is_empty() {
        return None;
    }
    let adj = c.adjacency();
    let all = c.vertex_mask();
    let mut left = all;
    let mut parts = Vec::new();
    while left != 0 {
        let v = left.trailing_zeros() as usize;
        let part = all & !adj[v];
        if left & part != part {
            return None;
        }
        let mut m = part;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if adj[w] != all & !part {
                return None;
            }
        }
        left &= !part;
        parts.push(part.count_ones() as usize);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}

/// Every rule whose hypotheses `c` satisfies, most specific first.
pub fn evaluate_all(c: &SimplicialComplex) -> Vec<FormulaResult> {
    let mut out = Vec::new();
    if !c.is_graph() {
        return out;
    }
    let Ok(stats) = c.graph_stats() else { return out };
    if let Some(parts) = complete_npartite_parts(c) {
        if parts.iter().all(|&p| p == 1) {
            out.push(complete_graph_value(parts.len()));
        }
        out.push(complete_npartite_value(&parts));
    }
    if stats.is_forest() {
        out.push(forest_value(stats.vertices, stats.components));
    }
    if stats.is_bipartite() {
        out.push(bipartite_value(Parity::of(stats.vertices), Parity::of(stats.edges)));
    }
    if let Some(shape) = pseudotree_classify(c) {
        if !shape.odd_cycle() {
            out.push(even_cycle_pseudotree_value(shape.vertices));
        }
        if let Some((m, k)) = shape.gmk_parameters() {
            out.push(if (m, k) == (0, 0) { FormulaResult::exact(Rule::Gmk, 4) } else { gmk_value(m, k) });
        }
        out.extend([hairball_value(&shape), odd_pseudotree_single_attachment_value(&shape)]);
    }
    out.extend([figure8_value(c), theta_value(c)]);
    out.retain(FormulaResult::is_applicable);
    out
}

/// The most specific exact closed form for `c`, if any rule applies.
pub fn fast_value(c: &SimplicialComplex) -> Option<(u32, Rule)> {
    if !c.is_graph() || c.is_empty() {
        return None;
    }
    let stats = c.graph_stats().ok()?;
    if let Some(parts) = complete_npartite_parts(c) {
        return complete_npartite_value(&parts).exact_value().map(|v| (v, Rule::CompleteNPartite));
    }
    if stats.is_forest() {
        return Some((forest_value(stats.vertices, stats.components).exact_value()?, Rule::Forest));
    }
    if stats.is_bipartite() {
        let r = bipartite_value(Parity::of(stats.vertices), Parity::of(stats.edges));
        return Some((r.exact_value()?, Rule::Bipartite));
    }
    if stats.components != 1 {
        return None;
    }
    if stats.cycle_count == 1 {
        let shape = pseudotree_classify(c)?;
        if let Some((m, k)) = shape.gmk_parameters() {
            let v = if (m, k) == (0, 0) { 4 } else { gmk_value(m, k).exact_value()? };
            return Some((v, Rule::Gmk));
        }
        for r in [hairball_value(&shape), odd_pseudotree_single_attachment_value(&shape)] {
            if let Some(v) = r.exact_value() {
                return Some((v, r.rule));
            }
        }
        return None;
    }
    if stats.cycle_count == 2 {
        for r in [figure8_value(c), theta_value(c)] {
            if let Some(v) = r.exact_value() {
                return Some((v, r.rule));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SimplicialComplex {
        SimplicialComplex::graph(n, edges).unwrap()
    }

    fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(complete_graph_value(3).exact_value(), Some(0));
        assert_eq!(complete_graph_value(0).exact_value(), Some(0));
        assert_eq!(complete_graph_value(7).exact_value(), Some(1));
    }

    #[test]
    fn complete_npartite() {
        assert_eq!(complete_npartite_value(&[1, 1, 1]).exact_value(), Some(0));
        assert_eq!(complete_npartite_value(&[2, 2]).exact_value(), Some(0));
        assert_eq!(complete_npartite_value(&[5, 3, 2]).exact_value(), Some(2));
        assert!(!complete_npartite_value(&[0, 2]).is_applicable());
    }

    #[test]
    fn bipartite_table() {
        use Parity::*;
        assert_eq!(bipartite_value(Even, Odd).exact_value(), Some(2));
        assert_eq!(bipartite_value(Odd, Even).exact_value(), Some(1));
        assert_eq!(bipartite_value(Even, Even).exact_value(), Some(0));
        assert_eq!(bipartite_value(Odd, Odd).exact_value(), Some(3));
    }

    #[test]
    fn bipartite_table_is_xor_additive() {
        use Parity::*;
        for v1 in [Even, Odd] {
            for e1 in [Even, Odd] {
                for v2 in [Even, Odd] {
                    for e2 in [Even, Odd] {
                        let sum = |a: Parity, b: Parity| if a == b { Even } else { Odd };
                        let whole = bipartite_value(sum(v1, v2), sum(e1, e2)).exact_value().unwrap();
                        let parts = bipartite_value(v1, e1).exact_value().unwrap()
                            ^ bipartite_value(v2, e2).exact_value().unwrap();
                        assert_eq!(whole, parts);
                    }
                }
            }
        }
    }

    #[test]
    fn forests() {
        assert_eq!(forest_value(7, 2).exact_value(), Some(3));
        assert_eq!(forest_value(1, 1).exact_value(), Some(1));
        assert_eq!(forest_value(6, 3).exact_value(), Some(2));
    }

    #[test]
    fn even_cycle_pseudotrees() {
        assert_eq!(even_cycle_pseudotree_value(6).exact_value(), Some(0));
        assert_eq!(even_cycle_pseudotree_value(7).exact_value(), Some(3));
        for v in 4..12 {
            let a = even_cycle_pseudotree_value(v).exact_value();
            assert_eq!(a, bipartite_value(Parity::of(v), Parity::of(v)).exact_value());
        }
    }

    #[test]
    fn degree_witness_cases() {
        let path3 = graph(3, &[(0, 1), (1, 2)]).graph_stats().unwrap();
        assert_eq!(degree_witnesses(&path3), (Some(1), Some(0)));
        let single = graph(1, &[]).graph_stats().unwrap();
        assert_eq!(degree_witnesses(&single), (Some(0), None));
        let c4 = graph(4, &cycle_edges(4)).graph_stats().unwrap();
        assert_eq!(degree_witnesses(&c4).1, None);
    }

    #[test]
    fn gmk_formula_cells() {
        assert_eq!(gmk_value(1, 1).exact_value(), Some(4));
        assert_eq!(gmk_value(2, 5).exact_value(), Some(8));
        assert_eq!(gmk_value(7, 4).exact_value(), Some(16));
        assert_eq!(gmk_value(4, 4).exact_value(), Some(4));
        assert!(!gmk_value(0, 3).is_applicable());
    }

    #[test]
    fn gmk_recurrence_seed_and_agreement() {
        let mut memo = GmkRecurrence::new();
        assert_eq!(gmk_recurrence(0, 0, &mut memo), 4);
        for m in 1..=30 {
            for k in 1..=30 {
                assert_eq!(Some(memo.get(m, k)), gmk_value(m, k).exact_value(), "g({m},{k})");
            }
        }
    }

    #[test]
    fn complete_npartite_recognition() {
        let mut e = Vec::new();
        for a in 0..2 {
            for b in 2..5 {
                e.push((a, b));
            }
        }
        assert_eq!(complete_npartite_parts(&graph(5, &e)), Some(vec![3, 2]));
        assert_eq!(complete_npartite_parts(&graph(3, &[])), Some(vec![3]));
        assert_eq!(complete_npartite_parts(&graph(4, &[(0, 1), (1, 2), (2, 3)])), None);
    }

    #[test]
    fn pseudotree_shapes() {
        // triangle 0-1-2, A = 0, B = 3, B - 4
        let mut e = cycle_edges(3);
        e.extend([(0, 3), (3, 4)]);
        let s = pseudotree_classify(&graph(5, &e)).unwrap();
        assert_eq!(s.cycle, vec![0, 1, 2]);
        assert_eq!(s.single_attachment(), Some((0, 3)));
        assert_eq!(s.tail_profile[0], Some(vec![2]));
        assert!(pseudotree_classify(&graph(3, &[(0, 1), (1, 2)])).is_none());
        let mut theta = cycle_edges(4);
        theta.push((0, 2));
        assert!(pseudotree_classify(&graph(4, &theta)).is_none());
    }

    #[test]
    fn single_attachment_rule() {
        // B carries a 1-tail: deg(B) = 2, v = 5 odd
        let mut e = cycle_edges(3);
        e.extend([(0, 3), (3, 4)]);
        let s = pseudotree_classify(&graph(5, &e)).unwrap();
        assert_eq!(odd_pseudotree_single_attachment_value(&s).exact_value(), Some(3));
        e.push((4, 5));
        let s = pseudotree_classify(&graph(6, &e)).unwrap();
        assert_eq!(odd_pseudotree_single_attachment_value(&s).exact_value(), Some(0));
        // B is a leaf: odd degree gives only a bound
        let mut e = cycle_edges(3);
        e.push((0, 3));
        let s = pseudotree_classify(&graph(4, &e)).unwrap();
        assert_eq!(odd_pseudotree_single_attachment_value(&s).kind, FormulaKind::LowerBound(4));
        assert_eq!(s.gmk_parameters(), Some((0, 0)));
    }

    #[test]
    fn hairball_rules() {
        // degree-4 cycle vertex with a 1-tail and a 2-tail: v = 6
        let mut e = cycle_edges(3);
        e.extend([(0, 3), (0, 4), (4, 5)]);
        let s = pseudotree_classify(&graph(6, &e)).unwrap();
        assert_eq!(hairball_value(&s).exact_value(), Some(4));
        // leaves on two cycle vertices: v = 5
        let mut e = cycle_edges(3);
        e.extend([(0, 3), (1, 4)]);
        let s = pseudotree_classify(&graph(5, &e)).unwrap();
        assert_eq!(hairball_value(&s).exact_value(), Some(3));
        // leaf and 2-tail on distinct vertices: v = 6
        let mut e = cycle_edges(3);
        e.extend([(0, 3), (1, 4), (4, 5)]);
        let s = pseudotree_classify(&graph(6, &e)).unwrap();
        assert_eq!(hairball_value(&s).exact_value(), Some(0));
        // bare cycle
        let s = pseudotree_classify(&graph(5, &cycle_edges(5))).unwrap();
        assert!(!hairball_value(&s).is_applicable());
    }

    #[test]
    fn figure8_and_theta() {
        // triangle and square sharing vertex 0
        let e = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)];
        assert_eq!(figure8_value(&graph(6, &e)).exact_value(), Some(1));
        assert!(!theta_value(&graph(6, &e)).is_applicable());
        // K4 minus an edge: branch vertices adjacent
        let k4e = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)];
        assert!(!theta_value(&graph(4, &k4e)).is_applicable());
        // paths of 2, 2 and 3 edges between 0 and 1: v = 6
        let th = [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)];
        assert_eq!(theta_value(&graph(6, &th)).exact_value(), Some(2));
        // dumbbell: two triangles joined by an edge
        let db = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)];
        assert!(!theta_value(&graph(6, &db)).is_applicable());
    }
}

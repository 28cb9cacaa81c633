#![allow(dead_code)]

use chomp_core::{Face, SimplicialComplex};
use proptest::prelude::*;

pub fn graph_from_bits(n: usize, bits: &[bool]) -> SimplicialComplex {
    let mut edges = Vec::new();
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits[i] {
                edges.push((a, b));
            }
            i += 1;
        }
    }
    SimplicialComplex::graph(n, &edges).unwrap()
}

/// Graphs on `1..=max_n` vertices with independent edges.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Downward closures of up to four random facets on at most `max_n` vertices.
pub fn arb_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(1u64..(1 << n), 1..=4).prop_map(move |masks| {
            let facets: Vec<Face> = masks
                .into_iter()
                .map(|m| {
                    // keep facets to at most four vertices
                    let mut m = m;
                    while m.count_ones() > 4 {
                        m &= m - 1;
                    }
                    Face::from_mask(m).unwrap()
                })
                .collect();
            SimplicialComplex::close_down(&facets, n).unwrap()
        })
    })
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// Isomorphism-class certificate by trying every relabelling of the dense vertex set.
pub fn brute_canonical(c: &SimplicialComplex) -> (usize, Vec<u64>) {
    let d = c.compact();
    let n = d.vertex_count();
    let mut best: Option<Vec<u64>> = None;
    for p in permutations(n) {
        let mut fs: Vec<u64> = d.faces().iter().filter(|f| f.len() >= 2).map(|f| f.map(&p).mask()).collect();
        fs.sort_unstable();
        if best.as_ref().map_or(true, |b| fs < *b) {
            best = Some(fs);
        }
    }
    (n, best.unwrap_or_default())
}

/// Every involution of `0..n`, identity included.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = cur.len();
        if i == n {
            out.push(cur.clone());
            return;
        }
        if cur[i] != usize::MAX {
            return go(i + 1, cur, out);
        }
        cur[i] = i;
        go(i + 1, cur, out);
        for j in i + 1..n {
            if cur[j] == usize::MAX {
                cur[i] = j;
                cur[j] = i;
                go(i + 1, cur, out);
                cur[j] = usize::MAX;
            }
        }
        cur[i] = usize::MAX;
    }
    let mut out = Vec::new();
    go(0, &mut vec![usize::MAX; n], &mut out);
    out
}

/// Faces mapped onto themselves by `t`, if `t` preserves the face family.
pub fn fixed_family(c: &SimplicialComplex, t: &[usize]) -> Option<Vec<Face>> {
    let faces = c.faces();
    if faces.iter().any(|f| !c.contains(f.map(t))) {
        return None;
    }
    Some(faces.iter().copied().filter(|f| f.map(t) == *f).collect())
}

/// Whether a family of faces is closed under taking nonempty subsets.
pub fn is_down_closed(family: &[Face]) -> bool {
    family.iter().all(|f| {
        let m = f.mask();
        let mut sub = (m - 1) & m;
        while sub != 0 {
            if !family.iter().any(|g| g.mask() == sub) {
                return false;
            }
            sub = (sub - 1) & m;
        }
        true
    })
}

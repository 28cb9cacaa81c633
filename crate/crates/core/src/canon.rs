//! Canonical labelling of simplicial complexes.
//!
//! Colour refinement over the vertex/face incidence structure, then an
//! individualisation-refinement search whose leaves are compared by their
//! relabelled face lists. The smallest face list is the canonical form.
//! Branches that differ by a vertex transposition which is itself an
//! automorphism are explored once.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{SimplicialComplex, MAX_VERTICES};
use crate::{Error, Result};

pub const DEFAULT_CANON_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KeyKind {
    /// Invariant under relabelling.
    Canonical,
    /// Dense relabelling only; used above the canonicalisation bound.
    Labeled,
}

/// Memoisation key: the canonical face list plus its SHA-256 digest.
///
/// Faces of size one are implied by `vertex_count` and omitted from the list.
#[derive(Clone)]
pub struct CanonicalKey {
    kind: KeyKind,
    vertex_count: u8,
    faces: Vec<u64>,
    digest: [u8; 32],
}

impl CanonicalKey {
    fn new(kind: KeyKind, vertex_count: usize, faces: Vec<u64>) -> CanonicalKey {
        let mut key = CanonicalKey { kind, vertex_count: vertex_count as u8, faces, digest: [0; 32] };
        key.digest = Sha256::digest(key.to_bytes()).into();
        key
    }

    pub fn kind(&self) -> KeyKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count as usize
    }

    /// Faces with at least two vertices, as masks over `0..vertex_count`.
    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn digest(&self) -> &[u8; 32] {
        &self.digest
    }

    /// Self-describing encoding: kind, vertex count, then the faces little-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + 8 * self.faces.len());
        out.push(match self.kind {
            KeyKind::Canonical => 0,
            KeyKind::Labeled => 1,
        });
        out.push(self.vertex_count);
        for f in &self.faces {
            out.extend_from_slice(&f.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<CanonicalKey> {
        let bad = |msg: &str| Error::InvalidInput(format!("malformed key bytes: {msg}"));
        if bytes.len() < 2 || (bytes.len() - 2) % 8 != 0 {
            return Err(bad("length"));
        }
        let kind = match bytes[0] {
            0 => KeyKind::Canonical,
            1 => KeyKind::Labeled,
            _ => return Err(bad("kind")),
        };
        let n = bytes[1] as usize;
        if n > MAX_VERTICES {
            return Err(bad("vertex count"));
        }
        let faces = bytes[2..]
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(CanonicalKey::new(kind, n, faces))
    }

    /// Rebuilds the keyed complex on `0..vertex_count`.
    pub fn to_complex(&self) -> SimplicialComplex {
        use crate::complex::Face;
        let n = self.vertex_count();
        let mut facets: Vec<Face> = (0..n).map(Face::vertex).collect();
        facets.extend(self.faces.iter().filter_map(|&m| Face::from_mask(m).ok()));
        SimplicialComplex::close_down(&facets, n).expect("key faces lie inside the vertex range")
    }
}

impl PartialEq for CanonicalKey {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.vertex_count == other.vertex_count && self.faces == other.faces
    }
}

impl Eq for CanonicalKey {}

impl Hash for CanonicalKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write(&self.digest[..8]);
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.kind, self.vertex_count, &self.faces).cmp(&(other.kind, other.vertex_count, &other.faces))
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Key({:?}, n={}, {})", self.kind, self.vertex_count, hex::encode(&self.digest[..6]))
    }
}

/// Canonical key under the default bound.
pub fn canonical_key(c: &SimplicialComplex) -> Result<CanonicalKey> {
    canonical_key_bounded(c, DEFAULT_CANON_BOUND)
}

pub fn canonical_key_bounded(c: &SimplicialComplex, bound: usize) -> Result<CanonicalKey> {
    let n = c.vertex_count();
    if n > bound {
        return Err(Error::Capacity { vertices: n, bound });
    }
    let local = Incidence::new(c);
    let (faces, _) = local.canonical_form();
    Ok(CanonicalKey::new(KeyKind::Canonical, n, faces))
}

/// Relabel-sensitive key: the dense relabelling of `c` itself.
pub fn labeled_key(c: &SimplicialComplex) -> CanonicalKey {
    let compact = c.compact();
    let mut faces: Vec<u64> = compact.faces().iter().filter(|f| f.len() > 1).map(|f| f.mask()).collect();
    faces.sort_unstable();
    CanonicalKey::new(KeyKind::Labeled, compact.vertex_count(), faces)
}

/// Canonical key when within `bound`, labelled key otherwise.
pub fn key_for(c: &SimplicialComplex, bound: usize) -> CanonicalKey {
    canonical_key_bounded(c, bound).unwrap_or_else(|_| labeled_key(c))
}

/// A canonical relabelling `labeling[v]` of the present vertices onto `0..n`.
pub fn canonical_labeling(c: &SimplicialComplex) -> Vec<(usize, usize)> {
    let local = Incidence::new(c);
    let (_, perm) = local.canonical_form();
    local.labels.iter().zip(perm).map(|(&v, p)| (v, p)).collect()
}

/// Stable colour-refinement classes indexed by original vertex id (absent vertices get `u32::MAX`).
///
/// Any automorphism maps each vertex to a vertex of the same colour.
pub fn stable_colors(c: &SimplicialComplex) -> Vec<u32> {
    let local = Incidence::new(c);
    let mut colors = local.initial_colors();
    local.refine(&mut colors);
    let mut out = vec![u32::MAX; c.ground_size()];
    for (i, &v) in local.labels.iter().enumerate() {
        out[v] = colors[i];
    }
    out
}

/// Densely relabelled incidence structure.
struct Incidence {
    n: usize,
    labels: Vec<usize>,
    /// Faces with >= 2 vertices in local labels, sorted.
    faces: Vec<u64>,
    incident: Vec<Vec<usize>>,
    max_size: usize,
}

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Dense ranks of `keys`, ordered by key.
fn rank<K: Ord + Clone>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut ranks = vec![0u32; keys.len()];
    let mut r = 0u32;
    for w in 0..order.len() {
        if w > 0 && keys[order[w]] != keys[order[w - 1]] {
            r += 1;
        }
        ranks[order[w]] = r;
    }
    let cells = if keys.is_empty() { 0 } else { r as usize + 1 };
    (ranks, cells)
}

impl Incidence {
    fn new(c: &SimplicialComplex) -> Incidence {
        let labels = c.vertices();
        let n = labels.len();
        let mut image = vec![0usize; MAX_VERTICES];
        for (i, &v) in labels.iter().enumerate() {
            image[v] = i;
        }
        let mut faces: Vec<u64> =
            c.faces().iter().filter(|f| f.len() > 1).map(|f| f.map(&image).mask()).collect();
        faces.sort_unstable();
        let mut incident = vec![Vec::new(); n];
        let mut max_size = 1;
        for (i, &f) in faces.iter().enumerate() {
            max_size = max_size.max(f.count_ones() as usize);
            let mut m = f;
            while m != 0 {
                incident[m.trailing_zeros() as usize].push(i);
                m &= m - 1;
            }
        }
        Incidence { n, labels, faces, incident, max_size }
    }

    fn initial_colors(&self) -> Vec<u32> {
        let sigs: Vec<Vec<u32>> = (0..self.n)
            .map(|v| {
                let mut counts = vec![0u32; self.max_size + 1];
                for &fi in &self.incident[v] {
                    counts[self.faces[fi].count_ones() as usize] += 1;
                }
                counts
            })
            .collect();
        rank(&sigs).0
    }

    /// Refines `colors` to the coarsest stable partition below it.
    fn refine(&self, colors: &mut Vec<u32>) {
        let mut cells = rank(colors).1;
        let mut others = Vec::with_capacity(self.max_size);
        loop {
            if cells == self.n {
                return;
            }
            let sigs: Vec<Vec<u64>> = (0..self.n)
                .map(|v| {
                    let mut sig = Vec::with_capacity(self.incident[v].len() + 1);
                    for &fi in &self.incident[v] {
                        let f = self.faces[fi] & !(1u64 << v);
                        others.clear();
                        let mut m = f;
                        while m != 0 {
                            others.push(colors[m.trailing_zeros() as usize]);
                            m &= m - 1;
                        }
                        others.sort_unstable();
                        let mut h = mix(others.len() as u64);
                        for &o in &others {
                            h = mix(h ^ u64::from(o));
                        }
                        sig.push(h);
                    }
                    sig.sort_unstable();
                    sig.insert(0, u64::from(colors[v]));
                    sig
                })
                .collect();
            let (next, next_cells) = rank(&sigs);
            *colors = next;
            if next_cells == cells {
                return;
            }
            cells = next_cells;
        }
    }

    fn contains(&self, f: u64) -> bool {
        self.faces.binary_search(&f).is_ok()
    }

    /// Whether swapping local vertices `a` and `b` is an automorphism.
    fn transposition_is_automorphism(&self, a: usize, b: usize) -> bool {
        let (ma, mb) = (1u64 << a, 1u64 << b);
        self.incident[a].iter().chain(&self.incident[b]).all(|&fi| {
            let f = self.faces[fi];
            let has_a = f & ma != 0;
            let has_b = f & mb != 0;
            if has_a == has_b {
                return true;
            }
            self.contains(f ^ ma ^ mb)
        })
    }

    fn certificate(&self, colors: &[u32]) -> Vec<u64> {
        let mut cert: Vec<u64> = self
            .faces
            .iter()
            .map(|&f| {
                let mut m = f;
                let mut out = 0u64;
                while m != 0 {
                    out |= 1 << colors[m.trailing_zeros() as usize];
                    m &= m - 1;
                }
                out
            })
            .collect();
        cert.sort_unstable();
        cert
    }

    /// Canonical face list and the labelling (local vertex -> canonical position) achieving it.
    fn canonical_form(&self) -> (Vec<u64>, Vec<usize>) {
        if self.n == 0 {
            return (Vec::new(), Vec::new());
        }
        let mut best: Option<(Vec<u64>, Vec<u32>)> = None;
        self.search(self.initial_colors(), &mut best);
        let (cert, colors) = best.expect("search reaches at least one leaf");
        (cert, colors.into_iter().map(|c| c as usize).collect())
    }

    fn search(&self, mut colors: Vec<u32>, best: &mut Option<(Vec<u64>, Vec<u32>)>) {
        self.refine(&mut colors);
        // target cell: smallest non-singleton, lowest colour on ties
        let mut sizes = vec![0usize; self.n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..self.n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            let cert = self.certificate(&colors);
            if best.as_ref().map_or(true, |(b, _)| cert < *b) {
                *best = Some((cert, colors));
            }
            return;
        };
        let members: Vec<usize> = (0..self.n).filter(|&v| colors[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &u in &members {
            if explored.iter().any(|&w| self.transposition_is_automorphism(w, u)) {
                continue;
            }
            let split: Vec<u32> = (0..self.n)
                .map(|v| 2 * colors[v] + u32::from(colors[v] as usize == target && v != u))
                .collect();
            self.search(rank(&split).0, best);
            explored.push(u);
        }
    }
}

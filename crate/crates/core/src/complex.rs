//! Simplicial complexes as explicit face sets over a bitmask ground set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Hard cap on the ground set: faces are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A nonempty set of vertices, stored as a bitmask over the ground set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(u64);

impl Face {
    /// Builds a face from vertex indices. Fails on an empty list or an index >= 64.
    pub fn new<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Face> {
        let mut mask = 0u64;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} exceeds the {MAX_VERTICES}-vertex cap"
                )));
            }
            mask |= 1 << v;
        }
        Face::from_mask(mask)
    }

    pub fn from_mask(mask: u64) -> Result<Face> {
        if mask == 0 {
            return Err(Error::InvalidInput("faces must be nonempty".into()));
        }
        Ok(Face(mask))
    }

    pub fn vertex(v: usize) -> Face {
        assert!(v < MAX_VERTICES);
        Face(1 << v)
    }

    pub fn edge(a: usize, b: usize) -> Face {
        assert!(a < MAX_VERTICES && b < MAX_VERTICES && a != b);
        Face((1 << a) | (1 << b))
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Geometric dimension: a vertex is 0, an edge 1.
    #[inline]
    pub fn dim(self) -> usize {
        self.len() - 1
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest vertex index in the face.
    #[inline]
    pub fn max_vertex(self) -> usize {
        63 - self.0.leading_zeros() as usize
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// Image of the face under a vertex map given as a lookup table.
    pub fn map(self, image: &[usize]) -> Face {
        Face(self.vertices().fold(0, |m, v| m | (1 << image[v])))
    }

    /// Move ordering: by dimension, then by mask value.
    #[inline]
    pub fn order_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A downward-closed family of faces; the game position.
///
/// Faces are kept sorted by [`Face::order_key`], which is also the move order.
/// Ground-set elements that are not 1-faces are allowed but play no part in the game.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground_size: usize,
    faces: Vec<Face>,
}

impl SimplicialComplex {
    pub fn empty(ground_size: usize) -> SimplicialComplex {
        SimplicialComplex { ground_size, faces: Vec::new() }
    }

    /// The complex generated by `facets`: every nonempty subset of every facet.
    pub fn close_down(facets: &[Face], ground_size: usize) -> Result<SimplicialComplex> {
        if ground_size > MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "ground set of {ground_size} exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        let mut all = Vec::new();
        for &f in facets {
            if f.max_vertex() >= ground_size {
                return Err(Error::InvalidInput(format!(
                    "face {f} references a vertex outside the ground set of size {ground_size}"
                )));
            }
            // enumerate nonempty submasks
            let m = f.mask();
            let mut sub = m;
            while sub != 0 {
                all.push(Face(sub));
                sub = (sub - 1) & m;
            }
        }
        Ok(Self::from_sorted_unique(ground_size, all))
    }

    /// Builds a complex from a face list that is already downward closed.
    pub fn from_faces(faces: Vec<Face>, ground_size: usize) -> Result<SimplicialComplex> {
        if ground_size > MAX_VERTICES {
            return Err(Error::InvalidInput(format!("ground set of {ground_size} is too large")));
        }
        if let Some(f) = faces.iter().find(|f| f.max_vertex() >= ground_size) {
            return Err(Error::InvalidInput(format!("face {f} is outside the ground set")));
        }
        let c = Self::from_sorted_unique(ground_size, faces);
        if !c.is_closed() {
            return Err(Error::InvalidInput("face family is not downward closed".into()));
        }
        Ok(c)
    }

    /// Graph on `n` vertices with the given edges; every vertex in `0..n` is present.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<SimplicialComplex> {
        let mut facets: Vec<Face> = (0..n).map(Face::vertex).collect();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("edge ({a},{b}) outside {n} vertices")));
            }
            facets.push(Face::edge(a, b));
        }
        Self::close_down(&facets, n)
    }

    fn from_sorted_unique(ground_size: usize, mut faces: Vec<Face>) -> SimplicialComplex {
        faces.sort_unstable_by_key(|f| f.order_key());
        faces.dedup();
        SimplicialComplex { ground_size, faces }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// All faces in move order.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, f: Face) -> bool {
        self.faces.binary_search_by_key(&f.order_key(), |g| g.order_key()).is_ok()
    }

    /// Union of all faces as a mask.
    pub fn vertex_mask(&self) -> u64 {
        self.faces.iter().take_while(|f| f.len() == 1).fold(0, |m, f| m | f.mask())
    }

    /// Vertices present in the position, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        self.faces.iter().take_while(|f| f.len() == 1).map(|f| f.max_vertex()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.faces.iter().take_while(|f| f.len() == 1).count()
    }

    pub fn edges(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied().filter(|f| f.len() == 2)
    }

    pub fn max_face_size(&self) -> usize {
        self.faces.last().map_or(0, |f| f.len())
    }

    /// Maximal faces, in move order.
    pub fn facets(&self) -> Vec<Face> {
        self.faces
            .iter()
            .enumerate()
            .filter(|&(i, f)| !self.faces[i + 1..].iter().any(|g| f.is_subset_of(*g)))
            .map(|(_, f)| *f)
            .collect()
    }

    /// Downward closure holds.
    pub fn is_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            f.vertices().all(|v| {
                let m = f.mask() & !(1 << v);
                m == 0 || self.contains(Face(m))
            })
        })
    }

    /// The legal moves, in deterministic order (dimension, then mask).
    pub fn moves(&self) -> &[Face] {
        &self.faces
    }

    /// Plays `s`: removes it together with every face containing it.
    pub fn remove_face(&self, s: Face) -> Result<SimplicialComplex> {
        if !self.contains(s) {
            return Err(Error::IllegalMove(s));
        }
        Ok(self.remove_face_unchecked(s))
    }

    pub(crate) fn remove_face_unchecked(&self, s: Face) -> SimplicialComplex {
        SimplicialComplex {
            ground_size: self.ground_size,
            faces: self.faces.iter().copied().filter(|f| !s.is_subset_of(*f)).collect(),
        }
    }

    /// Restriction to the faces inside `mask`.
    pub fn induced(&self, mask: u64) -> SimplicialComplex {
        SimplicialComplex {
            ground_size: self.ground_size,
            faces: self.faces.iter().copied().filter(|f| f.mask() & !mask == 0).collect(),
        }
    }

    /// Relabels present vertices densely (in ascending order) onto `0..vertex_count`.
    pub fn compact(&self) -> SimplicialComplex {
        let vs = self.vertices();
        let mut image = vec![0usize; MAX_VERTICES];
        for (i, &v) in vs.iter().enumerate() {
            image[v] = i;
        }
        self.relabel_with(&image, vs.len())
    }

    /// Applies a vertex map (`image[v]`) and sets a new ground size.
    pub fn relabel_with(&self, image: &[usize], ground_size: usize) -> SimplicialComplex {
        let faces = self.faces.iter().map(|f| f.map(image)).collect();
        Self::from_sorted_unique(ground_size, faces)
    }

    /// Relabels by a permutation of the ground set.
    pub fn permute(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        let mut seen = vec![false; perm.len()];
        if perm.len() != self.ground_size
            || perm.iter().any(|&p| p >= perm.len() || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidInput("not a permutation of the ground set".into()));
        }
        Ok(self.relabel_with(perm, self.ground_size))
    }

    /// Disjoint union; `other` is shifted past this complex's ground set.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = self.ground_size + other.ground_size;
        if n > MAX_VERTICES {
            return Err(Error::InvalidInput("disjoint union exceeds the vertex cap".into()));
        }
        let shift = self.ground_size;
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().map(|f| Face(f.mask() << shift)));
        Ok(Self::from_sorted_unique(n, faces))
    }

    /// Neighbour masks indexed by vertex (1-skeleton adjacency).
    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.ground_size];
        for e in self.edges() {
            let mut it = e.vertices();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    /// Masks of the connected components' vertex sets, ordered by lowest vertex.
    pub fn component_masks(&self) -> Vec<u64> {
        let adj = self.adjacency();
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    /// Connected components, each relabelled densely.
    pub fn components(&self) -> Vec<SimplicialComplex> {
        self.component_masks().into_iter().map(|m| self.induced(m).compact()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks().len() <= 1
    }

    /// True when no face has more than two vertices.
    pub fn is_graph(&self) -> bool {
        self.max_face_size() <= 2
    }

    pub fn graph_stats(&self) -> Result<GraphStats> {
        if !self.is_graph() {
            return Err(Error::InvalidInput("graph statistics need a graph (faces of size <= 2)".into()));
        }
        let adj = self.adjacency();
        let vertices = self.vertices();
        let edges = self.edges().count();
        let degrees = vertices.iter().map(|&v| (v, adj[v].count_ones() as usize)).collect();
        let components = self.component_masks().len();
        Ok(GraphStats {
            vertices: vertices.len(),
            edges,
            degrees,
            bipartition: two_coloring(&vertices, &adj),
            cycle_count: edges + components - vertices.len(),
            components,
        })
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, facets={:?})", self.ground_size, self.facets())
    }
}

/// Vertex/edge counts and parity structure of a graph position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    /// `(vertex, degree)` for every present vertex.
    pub degrees: Vec<(usize, usize)>,
    /// Vertex masks of the two sides, when the graph has no odd cycle.
    pub bipartition: Option<(u64, u64)>,
    /// Cycle rank `e - v + components`.
    pub cycle_count: usize,
    pub components: usize,
}

impl GraphStats {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    pub fn is_forest(&self) -> bool {
        self.cycle_count == 0
    }

    pub fn degree(&self, v: usize) -> Option<usize> {
        self.degrees.iter().find(|d| d.0 == v).map(|d| d.1)
    }
}

fn two_coloring(vertices: &[usize], adj: &[u64]) -> Option<(u64, u64)> {
    let mut side = [0u64; 2];
    let mut colored = 0u64;
    for &root in vertices {
        if colored & (1 << root) != 0 {
            continue;
        }
        side[0] |= 1 << root;
        colored |= 1 << root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let s = usize::from(side[1] & (1 << v) != 0);
            let mut nb = adj[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if colored & (1 << w) == 0 {
                    colored |= 1 << w;
                    side[1 - s] |= 1 << w;
                    stack.push(w);
                } else if side[s] & (1 << w) != 0 {
                    return None;
                }
            }
        }
    }
    Some((side[0], side[1]))
}

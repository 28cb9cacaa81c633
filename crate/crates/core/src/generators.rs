//! Constructors for the graph and complex families used throughout the crate.
//!
//! A [`FamilySpec`] parses from and prints to strings such as `complete:4`,
//! `npartite:5,3,2`, `gmk:m=2,k=5,cycle=3` or `erdos_renyi:n=7,p=0.5,seed=1`.
//! Positional and named parameters may be mixed; named ones win.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, MAX_VERTICES};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilySpec {
    Complete(usize),
    NPartite(Vec<usize>),
    Path(usize),
    Cycle(usize),
    /// Isolated vertices.
    Empty(usize),
    Tree { n: usize, seed: u64 },
    Forest { n: usize, seed: u64 },
    /// A cycle plus `extra` vertices hung on at random.
    Pseudotree { cycle: usize, extra: usize, seed: u64 },
    /// Cycle `0..cycle` with `A = 0`, `B = cycle`, then the `m`-tail and the `k`-tail on `B`.
    Gmk { m: usize, k: usize, cycle: usize },
    /// Cycle plus tails given as `(cycle vertex, length)`.
    Hairball { cycle: usize, tails: Vec<(usize, usize)> },
    /// Rim `0..n`, hub `n`.
    Wheel(usize),
    /// Two cycles of the given lengths sharing vertex 0.
    Figure8(usize, usize),
    /// Three paths between vertices 0 and 1, given by their numbers of inner vertices.
    Theta(usize, usize, usize),
    Torus3x3,
    /// One facet on `n` vertices with all its subsets.
    FullSimplex(usize),
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    RandomBipartite { a: usize, b: usize, p: f64, seed: u64 },
    /// Downward closure of `facets` random faces of size at most `max_size`.
    RandomComplex { n: usize, facets: usize, max_size: usize, seed: u64 },
    /// An edge `{0,1}` and an isolated vertex `2`.
    FixedSetCounterexample,
}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Complete(_) => "complete",
            FamilySpec::NPartite(_) => "npartite",
            FamilySpec::Path(_) => "path",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Empty(_) => "empty",
            FamilySpec::Tree { .. } => "tree",
            FamilySpec::Forest { .. } => "forest",
            FamilySpec::Pseudotree { .. } => "pseudotree",
            FamilySpec::Gmk { .. } => "gmk",
            FamilySpec::Hairball { .. } => "hairball",
            FamilySpec::Wheel(_) => "wheel",
            FamilySpec::Figure8(..) => "figure8",
            FamilySpec::Theta(..) => "theta",
            FamilySpec::Torus3x3 => "torus_3x3",
            FamilySpec::FullSimplex(_) => "full_simplex",
            FamilySpec::ErdosRenyi { .. } => "erdos_renyi",
            FamilySpec::RandomBipartite { .. } => "random_bipartite",
            FamilySpec::RandomComplex { .. } => "random_complex",
            FamilySpec::FixedSetCounterexample => "fixed_set_counterexample",
        }
    }

    pub fn generate(&self) -> Result<SimplicialComplex> {
        generate(self)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(bad(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    Ok(())
}

fn cycle_edges(start: usize, len: usize) -> Vec<(usize, usize)> {
    (0..len).map(|i| (start + i, start + (i + 1) % len)).collect()
}

pub fn generate(spec: &FamilySpec) -> Result<SimplicialComplex> {
    use FamilySpec::*;
    match spec {
        Complete(n) => {
            check_size(*n)?;
            let mut e = Vec::new();
            for a in 0..*n {
                for b in a + 1..*n {
                    e.push((a, b));
                }
            }
            SimplicialComplex::graph(*n, &e)
        }
        NPartite(parts) => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(bad("npartite needs at least one part, all nonempty"));
            }
            let n: usize = parts.iter().sum();
            check_size(n)?;
            let mut group = Vec::new();
            for (g, &size) in parts.iter().enumerate() {
                group.extend(std::iter::repeat(g).take(size));
            }
            let mut e = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if group[a] != group[b] {
                        e.push((a, b));
                    }
                }
            }
            SimplicialComplex::graph(n, &e)
        }
        Path(n) => {
            check_size(*n)?;
            let e: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
            SimplicialComplex::graph(*n, &e)
        }
        Cycle(n) => {
            if *n < 3 {
                return Err(bad("cycle needs at least 3 vertices"));
            }
            check_size(*n)?;
            SimplicialComplex::graph(*n, &cycle_edges(0, *n))
        }
        Empty(n) => {
            check_size(*n)?;
            SimplicialComplex::graph(*n, &[])
        }
        Tree { n, seed } => {
            check_size(*n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let e: Vec<_> = (1..*n).map(|i| (rng.gen_range(0..i), i)).collect();
            SimplicialComplex::graph(*n, &e)
        }
        Forest { n, seed } => {
            check_size(*n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut e = Vec::new();
            for i in 1..*n {
                if !rng.gen_bool(0.3) {
                    e.push((rng.gen_range(0..i), i));
                }
            }
            SimplicialComplex::graph(*n, &e)
        }
        Pseudotree { cycle, extra, seed } => {
            if *cycle < 3 {
                return Err(bad("pseudotree cycle needs at least 3 vertices"));
            }
            check_size(cycle + extra)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut e = cycle_edges(0, *cycle);
            for i in *cycle..cycle + extra {
                e.push((rng.gen_range(0..i), i));
            }
            SimplicialComplex::graph(cycle + extra, &e)
        }
        Gmk { m, k, cycle } => {
            if *cycle < 3 || cycle % 2 == 0 {
                return Err(bad("gmk cycle must be odd and at least 3"));
            }
            check_size(cycle + 1 + m + k)?;
            let mut e = cycle_edges(0, *cycle);
            let b = *cycle;
            e.push((0, b));
            let g = SimplicialComplex::graph(cycle + 1, &e)?;
            let g = attach_tail(&g, b, *m)?;
            attach_tail(&g, b, *k)
        }
        Hairball { cycle, tails } => {
            if *cycle < 3 {
                return Err(bad("hairball cycle needs at least 3 vertices"));
            }
            let mut g = SimplicialComplex::graph(*cycle, &cycle_edges(0, *cycle))?;
            for &(at, len) in tails {
                if at >= *cycle {
                    return Err(bad(format!("tail attach point {at} is not on the cycle")));
                }
                g = attach_tail(&g, at, len)?;
            }
            Ok(g)
        }
        Wheel(n) => {
            if *n < 3 {
                return Err(bad("wheel needs n >= 3"));
            }
            check_size(n + 1)?;
            let mut e = cycle_edges(0, *n);
            e.extend((0..*n).map(|i| (i, *n)));
            SimplicialComplex::graph(n + 1, &e)
        }
        Figure8(a, b) => {
            if *a < 3 || *b < 3 {
                return Err(bad("figure8 cycles need at least 3 vertices each"));
            }
            let n = a + b - 1;
            check_size(n)?;
            let mut e = cycle_edges(0, *a);
            let ring: Vec<usize> = std::iter::once(0).chain(*a..n).collect();
            e.extend((0..*b).map(|i| (ring[i], ring[(i + 1) % b])));
            SimplicialComplex::graph(n, &e)
        }
        Theta(p, q, r) => {
            let lens = [*p, *q, *r];
            if lens.iter().filter(|&&l| l == 0).count() > 1 {
                return Err(bad("theta allows at most one direct edge"));
            }
            let n = 2 + p + q + r;
            check_size(n)?;
            let mut e = Vec::new();
            let mut next = 2;
            for len in lens {
                let mut prev = 0;
                for _ in 0..len {
                    e.push((prev, next));
                    prev = next;
                    next += 1;
                }
                e.push((prev, 1));
            }
            SimplicialComplex::graph(n, &e)
        }
        Torus3x3 => {
            let at = |i: usize, j: usize| 3 * (i % 3) + (j % 3);
            let mut facets = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    facets.push(Face::new([at(i, j), at(i + 1, j), at(i + 1, j + 1)])?);
                    facets.push(Face::new([at(i, j), at(i, j + 1), at(i + 1, j + 1)])?);
                }
            }
            SimplicialComplex::close_down(&facets, 9)
        }
        FullSimplex(n) => {
            if *n == 0 {
                return Ok(SimplicialComplex::empty(0));
            }
            if *n > 16 {
                return Err(bad("full_simplex is limited to 16 vertices"));
            }
            SimplicialComplex::close_down(&[Face::new(0..*n)?], *n)
        }
        ErdosRenyi { n, p, seed } => {
            check_size(*n)?;
            check_prob(*p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut e = Vec::new();
            for a in 0..*n {
                for b in a + 1..*n {
                    if rng.gen_bool(*p) {
                        e.push((a, b));
                    }
                }
            }
            SimplicialComplex::graph(*n, &e)
        }
        RandomBipartite { a, b, p, seed } => {
            check_size(a + b)?;
            check_prob(*p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut e = Vec::new();
            for x in 0..*a {
                for y in *a..a + b {
                    if rng.gen_bool(*p) {
                        e.push((x, y));
                    }
                }
            }
            SimplicialComplex::graph(a + b, &e)
        }
        RandomComplex { n, facets, max_size, seed } => {
            if *n == 0 || *max_size == 0 || *max_size > 8 {
                return Err(bad("random_complex needs n >= 1 and 1 <= max_size <= 8"));
            }
            check_size(*n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut fs = Vec::new();
            for _ in 0..*facets {
                let size = rng.gen_range(1..=*max_size.min(n));
                let mut mask = 0u64;
                while (mask.count_ones() as usize) < size {
                    mask |= 1 << rng.gen_range(0..*n);
                }
                fs.push(Face::from_mask(mask)?);
            }
            SimplicialComplex::close_down(&fs, *n)
        }
        FixedSetCounterexample => SimplicialComplex::graph(3, &[(0, 1)]),
    }
}

fn check_prob(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(bad(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Appends a path of `k` new vertices hanging from `at`.
pub fn attach_tail(c: &SimplicialComplex, at: usize, k: usize) -> Result<SimplicialComplex> {
    if at >= c.ground_size() || !c.contains(Face::vertex(at)) {
        return Err(bad(format!("attach point {at} is not a vertex")));
    }
    if k == 0 {
        return Ok(c.clone());
    }
    let n = c.ground_size();
    check_size(n + k)?;
    let mut faces: Vec<Face> = c.faces().to_vec();
    let mut prev = at;
    for v in n..n + k {
        faces.push(Face::vertex(v));
        faces.push(Face::edge(prev, v));
        prev = v;
    }
    SimplicialComplex::from_faces(faces, n + k)
}

struct Params<'a> {
    family: &'a str,
    positional: Vec<&'a str>,
    named: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn parse(family: &'a str, text: &'a str) -> Params<'a> {
        let mut p = Params { family, positional: Vec::new(), named: Vec::new() };
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once('=') {
                Some((k, v)) => p.named.push((k.trim(), v.trim())),
                None => p.positional.push(item),
            }
        }
        p
    }

    fn raw(&self, name: &str, pos: usize) -> Option<&'a str> {
        self.named.iter().find(|(k, _)| *k == name).map(|(_, v)| *v).or_else(|| self.positional.get(pos).copied())
    }

    fn get<T: FromStr>(&self, name: &str, pos: usize, default: Option<T>) -> Result<T> {
        match self.raw(name, pos) {
            Some(v) => v.parse().map_err(|_| bad(format!("{}: bad value {v:?} for {name}", self.family))),
            None => default.ok_or_else(|| bad(format!("{}: missing parameter {name}", self.family))),
        }
    }

    fn list(&self) -> Result<Vec<usize>> {
        self.positional
            .iter()
            .map(|v| v.parse().map_err(|_| bad(format!("{}: bad value {v:?}", self.family))))
            .collect()
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let (name, rest) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let p = Params::parse(name, rest);
        let spec = match name {
            "complete" => FamilySpec::Complete(p.get("n", 0, None)?),
            "npartite" | "complete_npartite" => FamilySpec::NPartite(p.list()?),
            "path" => FamilySpec::Path(p.get("n", 0, None)?),
            "cycle" => FamilySpec::Cycle(p.get("n", 0, None)?),
            "empty" => FamilySpec::Empty(p.get("n", 0, None)?),
            "tree" => FamilySpec::Tree { n: p.get("n", 0, None)?, seed: p.get("seed", 1, Some(0))? },
            "forest" => FamilySpec::Forest { n: p.get("n", 0, None)?, seed: p.get("seed", 1, Some(0))? },
            "pseudotree" => FamilySpec::Pseudotree {
                cycle: p.get("cycle", 0, None)?,
                extra: p.get("extra", 1, Some(0))?,
                seed: p.get("seed", 2, Some(0))?,
            },
            "gmk" => FamilySpec::Gmk {
                m: p.get("m", 0, None)?,
                k: p.get("k", 1, None)?,
                cycle: p.get("cycle", 2, Some(3))?,
            },
            "hairball" => {
                let tails = match p.raw("tails", 1) {
                    None | Some("") => Vec::new(),
                    Some(t) => t
                        .split('+')
                        .map(|item| {
                            let (a, l) = item.split_once(':').ok_or_else(|| bad(format!("hairball: bad tail {item:?}")))?;
                            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| bad(format!("hairball: bad tail {item:?}")));
                            Ok((parse(a)?, parse(l)?))
                        })
                        .collect::<Result<_>>()?,
                };
                FamilySpec::Hairball { cycle: p.get("cycle", 0, None)?, tails }
            }
            "wheel" => FamilySpec::Wheel(p.get("n", 0, None)?),
            "figure8" => FamilySpec::Figure8(p.get("a", 0, None)?, p.get("b", 1, None)?),
            "theta" => FamilySpec::Theta(p.get("p", 0, None)?, p.get("q", 1, None)?, p.get("r", 2, None)?),
            "torus_3x3" | "torus" => FamilySpec::Torus3x3,
            "full_simplex" | "simplex" => FamilySpec::FullSimplex(p.get("n", 0, None)?),
            "erdos_renyi" | "gnp" => FamilySpec::ErdosRenyi {
                n: p.get("n", 0, None)?,
                p: p.get("p", 1, Some(0.5))?,
                seed: p.get("seed", 2, Some(0))?,
            },
            "random_bipartite" => FamilySpec::RandomBipartite {
                a: p.get("a", 0, None)?,
                b: p.get("b", 1, None)?,
                p: p.get("p", 2, Some(0.5))?,
                seed: p.get("seed", 3, Some(0))?,
            },
            "random_complex" => FamilySpec::RandomComplex {
                n: p.get("n", 0, None)?,
                facets: p.get("facets", 1, Some(3))?,
                max_size: p.get("max_size", 2, Some(3))?,
                seed: p.get("seed", 3, Some(0))?,
            },
            "fixed_set_counterexample" => FamilySpec::FixedSetCounterexample,
            other => return Err(bad(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        let name = self.family_name();
        match self {
            Complete(n) | Path(n) | Cycle(n) | Empty(n) | Wheel(n) | FullSimplex(n) => write!(f, "{name}:{n}"),
            NPartite(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{name}:{}", parts.join(","))
            }
            Tree { n, seed } | Forest { n, seed } => write!(f, "{name}:n={n},seed={seed}"),
            Pseudotree { cycle, extra, seed } => write!(f, "{name}:cycle={cycle},extra={extra},seed={seed}"),
            Gmk { m, k, cycle } => write!(f, "{name}:m={m},k={k},cycle={cycle}"),
            Hairball { cycle, tails } => {
                let t: Vec<String> = tails.iter().map(|(a, l)| format!("{a}:{l}")).collect();
                write!(f, "{name}:cycle={cycle},tails={}", t.join("+"))
            }
            Figure8(a, b) => write!(f, "{name}:{a},{b}"),
            Theta(p, q, r) => write!(f, "{name}:{p},{q},{r}"),
            Torus3x3 | FixedSetCounterexample => write!(f, "{name}"),
            ErdosRenyi { n, p, seed } => write!(f, "{name}:n={n},p={p},seed={seed}"),
            RandomBipartite { a, b, p, seed } => write!(f, "{name}:a={a},b={b},p={p},seed={seed}"),
            RandomComplex { n, facets, max_size, seed } => {
                write!(f, "{name}:n={n},facets={facets},max_size={max_size},seed={seed}")
            }
        }
    }
}

impl From<FamilySpec> for String {
    fn from(s: FamilySpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = Error;

    fn try_from(s: String) -> Result<FamilySpec> {
        s.parse()
    }
}

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{find_irreducible, FieldOps, FieldSpec, FiniteField, GfTable};
use crate::linalg::Matrix;
use crate::matroid::{LinearMatroid, RankOracle, UniformMatroid};

/// A simple undirected multigraph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn cycle(n: usize) -> Graph {
        Graph { vertices: n, edges: (0..n).map(|i| (i, (i + 1) % n)).collect() }
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { vertices: n, edges }
    }

    /// `edges` edges with endpoints drawn uniformly (loops and parallel
    /// edges allowed).
    pub fn random(vertices: usize, edges: usize, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = (0..edges).map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices))).collect();
        Graph { vertices, edges }
    }

    /// The cycle matroid, as the incidence matrix over `GF(2)`.
    pub fn cycle_matroid(&self) -> Result<LinearMatroid<GfTable>> {
        let mut cols = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u >= self.vertices || v >= self.vertices {
                return Err(Error::Generator(format!("edge {}-{} outside {} vertices", u + 1, v + 1, self.vertices)));
            }
            let mut c = vec![0u16; self.vertices];
            if u != v {
                c[u] = 1;
                c[v] = 1;
            }
            cols.push(c);
        }
        LinearMatroid::new(GfTable::prime(2)?, Matrix::from_columns(self.vertices, cols)?)
    }
}

/// `GF(q)` for a prime power `q`, with the first irreducible modulus.
pub fn field_of_order(q: u64) -> Result<GfTable> {
    let unsupported = || Error::Generator(format!("unsupported field order {q}"));
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(unsupported)?;
    let mut k = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(unsupported());
    }
    let base = FieldSpec::prime(p as u32)?;
    let spec = if k == 1 { base } else { base.extend(&find_irreducible(&base, k))? };
    GfTable::new(spec)
}

/// Named matroids with fixed representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    /// The free matroid on `n` elements.
    Free(usize),
    /// `U(2,4)` over `GF(3)`.
    U24,
    /// `U(3,6)` over `GF(4)`, from a hyperoval.
    U36,
    /// The cycle matroid of the `n`-cycle.
    Cycle(usize),
    /// The cycle matroid of `K4`.
    K4,
    /// The Fano plane over `GF(2)`.
    Fano,
    /// The non-Fano configuration over `GF(3)`.
    NonFano,
}

impl Named {
    /// The registry: `I3..I5`, `U2,4`, `U3,6`, `C3..C6`, `K4`, `F7`, `F7-`.
    pub fn registry() -> Vec<Named> {
        let mut all: Vec<Named> = (3..=5).map(Named::Free).collect();
        all.extend([Named::U24, Named::U36]);
        all.extend((3..=6).map(Named::Cycle));
        all.extend([Named::K4, Named::Fano, Named::NonFano]);
        all
    }

    pub fn build(self) -> Result<LinearMatroid<GfTable>> {
        match self {
            Named::Free(n) => {
                let cols = (0..n).map(|i| (0..n).map(|j| u16::from(i == j)).collect()).collect();
                LinearMatroid::new(GfTable::prime(2)?, Matrix::from_columns(n, cols)?)
            }
            Named::U24 => linear(3, 2, &[[1, 0], [0, 1], [1, 1], [1, 2]]),
            Named::U36 => {
                let f = field_of_order(4)?;
                let mut cols: Vec<Vec<u16>> = f.elements().map(|a| vec![f.one(), a, f.mul(&a, &a)]).collect();
                cols.push(vec![0, 0, 1]);
                cols.push(vec![0, 1, 0]);
                LinearMatroid::new(f, Matrix::from_columns(3, cols)?)
            }
            Named::Cycle(n) => Graph::cycle(n).cycle_matroid(),
            Named::K4 => Graph::complete(4).cycle_matroid(),
            Named::Fano => linear(2, 3, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]),
            Named::NonFano => {
                linear(3, 3, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]])
            }
        }
    }
}

fn linear<const R: usize>(p: u32, rows: usize, cols: &[[u16; R]]) -> Result<LinearMatroid<GfTable>> {
    LinearMatroid::new(GfTable::prime(p)?, Matrix::from_columns(rows, cols.iter().map(|c| c.to_vec()).collect())?)
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::Free(n) => write!(f, "I{n}"),
            Named::U24 => write!(f, "U2,4"),
            Named::U36 => write!(f, "U3,6"),
            Named::Cycle(n) => write!(f, "C{n}"),
            Named::K4 => write!(f, "K4"),
            Named::Fano => write!(f, "F7"),
            Named::NonFano => write!(f, "F7-"),
        }
    }
}

impl FromStr for Named {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Generator(format!("unknown named matroid {s:?}"));
        match s {
            "U2,4" => Ok(Named::U24),
            "U3,6" => Ok(Named::U36),
            "K4" => Ok(Named::K4),
            "F7" => Ok(Named::Fano),
            "F7-" => Ok(Named::NonFano),
            _ => {
                let (head, tail) = s.split_at(1);
                let n: usize = tail.parse().map_err(|_| bad())?;
                match head {
                    "I" => Ok(Named::Free(n)),
                    "C" if n >= 1 => Ok(Named::Cycle(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    RandomLinear { rank: usize, len: usize, q: u64 },
    CycleMatroid(Graph),
    Uniform { rank: usize, len: usize },
    Named(Named),
}

/// A generator description; instances are pure functions of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn random_linear(rank: usize, len: usize, q: u64, seed: u64) -> Self {
        GeneratorSpec { kind: GeneratorKind::RandomLinear { rank, len, q }, seed }
    }
}

/// A generated matroid.
#[allow(clippy::large_enum_variant)]
pub enum Instance {
    Linear(LinearMatroid<GfTable>),
    Uniform(UniformMatroid),
}

impl Instance {
    pub fn oracle(&self) -> &dyn RankOracle {
        match self {
            Instance::Linear(m) => m,
            Instance::Uniform(u) => u,
        }
    }

    pub fn linear(&self) -> Option<&LinearMatroid<GfTable>> {
        match self {
            Instance::Linear(m) => Some(m),
            Instance::Uniform(_) => None,
        }
    }
}

/// A uniformly random `rank x len` matrix over `GF(q)`.
pub fn random_linear(rank: usize, len: usize, q: u64, seed: u64) -> Result<LinearMatroid<GfTable>> {
    let field = field_of_order(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = (0..len).map(|_| (0..rank).map(|_| rng.gen_range(0..q) as u16).collect()).collect();
    LinearMatroid::new(field, Matrix::from_columns(rank, cols)?)
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    match &spec.kind {
        GeneratorKind::RandomLinear { rank, len, q } => {
            Ok(Instance::Linear(random_linear(*rank, *len, *q, spec.seed)?))
        }
        GeneratorKind::CycleMatroid(g) => Ok(Instance::Linear(g.cycle_matroid()?)),
        GeneratorKind::Uniform { rank, len } => {
            if rank > len || *len > crate::matroid::MAX_ELEMENTS {
                return Err(Error::Generator(format!("no uniform matroid U({rank},{len})")));
            }
            Ok(Instance::Uniform(UniformMatroid::new(*rank, *len)))
        }
        GeneratorKind::Named(n) => Ok(Instance::Linear(n.build()?)),
    }
}

/// A named corpus entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GeneratorSpec,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<LinearMatroid<GfTable>> {
        match generate(&self.spec)? {
            Instance::Linear(m) => Ok(m),
            Instance::Uniform(_) => Err(Error::Generator("corpus entries are represented".into())),
        }
    }
}

/// `count` random matrices over GF(2) and GF(3) with `3 <= n <= 9` and
/// `r <= 5`, followed by the named registry.
pub fn corpus(count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count + 12);
    for i in 0..count {
        let q = if i % 2 == 0 { 2 } else { 3 };
        let len = rng.gen_range(3..=9);
        let rank = rng.gen_range(1..=len.min(5));
        let spec = GeneratorSpec::random_linear(rank, len, q, rng.gen());
        out.push(CorpusEntry { name: format!("r{i:03}-gf{q}-{rank}x{len}"), spec });
    }
    for named in Named::registry() {
        out.push(CorpusEntry {
            name: named.to_string(),
            spec: GeneratorSpec { kind: GeneratorKind::Named(named), seed: 0 },
        });
    }
    out
}

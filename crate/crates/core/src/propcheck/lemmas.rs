use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extension::{Restriction, StackedOracle};
use crate::field::{find_irreducible, FieldOps, GfTable};
use crate::linalg::{projective_points, subspace_intersection, Matrix, SubspaceBasis};
use crate::matroid::{minor, ElementId, ElementSet, LinearMatroid, MatroidExt, RankOracle};
use crate::pathwidth::{pathwidth_exact, width_of_order};

use super::generate::{generate, GeneratorKind, GeneratorSpec, Graph, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// Two circuits meeting in one element with "tight" union rank have a
    /// circuit as symmetric difference.
    CircExch,
    /// Elements each adding one to `μ(X, ·)`, jointly also one, lie on one
    /// side of `X`.
    OneSideSep,
    /// Path-width is minor-monotone.
    PwMinor,
    /// A guts-free circuit spanning the guts of a widest separation of an
    /// optimal-width ordering crosses it.
    CircuitSpan,
    /// `(1, a, ..., a^(r-1))` for a root `a` of a degree-`r` irreducible is
    /// a free extension of a rank-`r` representation.
    ExtAlpha,
    /// Circuits can be rerouted through a spanning set of the guts.
    CircGuts,
    /// The gadget's `D0` closes a circuit with part of `Z`.
    GetCircuitD,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::CircExch,
        LemmaId::OneSideSep,
        LemmaId::PwMinor,
        LemmaId::CircuitSpan,
        LemmaId::ExtAlpha,
        LemmaId::CircGuts,
        LemmaId::GetCircuitD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::CircExch => "circexch",
            LemmaId::OneSideSep => "onesidesep",
            LemmaId::PwMinor => "pwminor",
            LemmaId::CircuitSpan => "circuitspan",
            LemmaId::ExtAlpha => "extalpha",
            LemmaId::CircGuts => "circguts",
            LemmaId::GetCircuitD => "getcircuitD",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// The sets and elements a lemma is instantiated with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    CircExch {
        c1: ElementSet,
        c2: ElementSet,
    },
    OneSideSep {
        x: ElementSet,
        e: usize,
        f: usize,
    },
    PwMinor {
        contract: ElementSet,
        delete: ElementSet,
    },
    CircuitSpan {
        order: Vec<usize>,
        position: usize,
        circuit: ElementSet,
    },
    ExtAlpha,
    /// `q` is implicit: the points of the guts of `(y, E \ y)`, appended.
    /// `e` must be an original element.
    CircGuts {
        y: ElementSet,
        circuit: ElementSet,
        e: usize,
    },
    /// `x` is the prefix; `z` consists of input elements.
    GetCircuitD {
        x: ElementSet,
        t: usize,
        z: ElementSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaInstance {
    pub lemma: LemmaId,
    pub seed: u64,
    pub source: GeneratorSpec,
    pub witness: Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub seed: u64,
    pub hypotheses_held: bool,
    /// `None` for vacuous instances.
    pub conclusion_held: Option<bool>,
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conclusion = match self.conclusion_held {
            Some(true) => "true",
            Some(false) => "false",
            None => "vacuous",
        };
        write!(f, "{} {} {} {}", self.lemma, self.seed, self.hypotheses_held, conclusion)
    }
}

fn report(inst: &LemmaInstance, outcome: Option<bool>) -> LemmaReport {
    LemmaReport { lemma: inst.lemma, seed: inst.seed, hypotheses_held: outcome.is_some(), conclusion_held: outcome }
}

fn needs_linear(inst: &Instance) -> Result<&LinearMatroid<GfTable>> {
    inst.linear().ok_or_else(|| Error::Generator("lemma needs a represented matroid".into()))
}

/// Evaluates the hypotheses and, when they hold, the conclusion.
pub fn check_lemma(inst: &LemmaInstance) -> Result<LemmaReport> {
    let generated = generate(&inst.source)?;
    let m = generated.oracle();
    let outcome = match (&inst.lemma, &inst.witness) {
        (LemmaId::CircExch, Witness::CircExch { c1, c2 }) => check_circexch(m, *c1, *c2),
        (LemmaId::OneSideSep, Witness::OneSideSep { x, e, f }) => check_onesidesep(m, *x, *e, *f),
        (LemmaId::PwMinor, Witness::PwMinor { contract, delete }) => check_pwminor(m, *contract, *delete)?,
        (LemmaId::CircuitSpan, Witness::CircuitSpan { order, position, circuit }) => {
            check_circuitspan(m, order, *position, *circuit)?
        }
        (LemmaId::ExtAlpha, Witness::ExtAlpha) => check_extalpha(needs_linear(&generated)?)?,
        (LemmaId::CircGuts, Witness::CircGuts { y, circuit, e }) => {
            let (aug, q) = guts_augmented(needs_linear(&generated)?, *y)?;
            check_circguts(&aug, *y, q, *circuit, *e)
        }
        (LemmaId::GetCircuitD, Witness::GetCircuitD { x, t, z }) => check_getcircuitd(m, *x, *t, *z)?,
        _ => return Err(Error::Generator(format!("witness does not match lemma {}", inst.lemma))),
    };
    Ok(report(inst, outcome))
}

fn check_circexch(m: &dyn RankOracle, c1: ElementSet, c2: ElementSet) -> Option<bool> {
    let held =
        m.is_circuit(c1) && m.is_circuit(c2) && (c1 & c2).len() == 1 && m.rank(c1) + m.rank(c2) == m.rank(c1 | c2) + 1;
    held.then(|| m.is_circuit((c1 | c2) - (c1 & c2)))
}

fn check_onesidesep(m: &dyn RankOracle, x: ElementSet, e: usize, f: usize) -> Option<bool> {
    let target = m.lambda(x) + 1;
    let pair = ElementSet::singleton(e).with(f);
    let held = e != f
        && m.mu(x, ElementSet::singleton(e)) == target
        && m.mu(x, ElementSet::singleton(f)) == target
        && m.mu(x, pair) == target;
    held.then(|| x.contains(e) == x.contains(f))
}

fn check_pwminor(m: &dyn RankOracle, contract: ElementSet, delete: ElementSet) -> Result<Option<bool>> {
    if !contract.is_disjoint(delete) {
        return Ok(None);
    }
    let n = minor(m, contract, delete)?;
    Ok(Some(pathwidth_exact(&n)?.0 <= pathwidth_exact(m)?.0))
}

fn check_circuitspan(m: &dyn RankOracle, order: &[usize], position: usize, c: ElementSet) -> Result<Option<bool>> {
    let pd = width_of_order(m, order)?;
    if position == 0 || position >= order.len() || pd.lambdas[position - 1] != pd.width {
        return Ok(None);
    }
    let x: ElementSet = order[..position].iter().collect();
    let y = m.ground() - x;
    let held = m.is_circuit(c) && c.iter().all(|e| !m.in_guts(x, e)) && m.mu(x, c) == m.rank(c);
    Ok(held.then(|| !(c & x).is_empty() && !(c & y).is_empty()))
}

fn check_extalpha(m: &LinearMatroid<GfTable>) -> Result<Option<bool>> {
    let base = m.field();
    let n = m.len();
    let rows: Vec<Vec<u16>> = (0..m.matrix().rows()).map(|i| m.matrix().row(i)).collect();
    let row_space = SubspaceBasis::span(base, n, &rows)?;
    let r = row_space.rank();
    if r < 2 || n >= 16 {
        return Ok(None);
    }
    let spec = base.spec();
    let ext = spec.extend(&find_irreducible(spec, r))?;
    let alpha = ext.generator(ext.depth());
    let lift = |a: u16| crate::field::embed(&base.to_element(a), spec, &ext).expect("prefix");
    let mut cols: Vec<Vec<_>> = (0..n).map(|c| row_space.vectors().iter().map(|row| lift(row[c])).collect()).collect();
    let mut b = vec![ext.one()];
    for i in 1..r {
        b.push(ext.mul(&b[i - 1], &alpha));
    }
    cols.push(b);
    let extended = LinearMatroid::new(ext.clone(), Matrix::from_columns(r, cols)?)?;
    let reduced = LinearMatroid::new(
        base.clone(),
        Matrix::from_columns(r, (0..n).map(|c| row_space.vectors().iter().map(|row| row[c]).collect()).collect())?,
    )?;
    let ok = (0u64..1 << n).all(|bits| {
        let s = ElementSet::from_bits(bits);
        let rs = reduced.rank(s);
        extended.rank(s) == rs && extended.rank(s.with(n)) == (rs + 1).min(r) && rs == m.rank(s)
    });
    Ok(Some(ok))
}

/// The matroid with every projective point of the guts of `(y, E \ y)`
/// appended as a new column; returns it with the set of new elements.
pub fn guts_augmented(m: &LinearMatroid<GfTable>, y: ElementSet) -> Result<(LinearMatroid<GfTable>, ElementSet)> {
    let base = m.field();
    let dim = m.matrix().rows();
    let cols = |s: ElementSet| -> Vec<Vec<u16>> { s.iter().map(|i| m.matrix().column(i).to_vec()).collect() };
    let a = SubspaceBasis::span(base, dim, &cols(y))?;
    let b = SubspaceBasis::span(base, dim, &cols(m.ground() - y))?;
    let guts = subspace_intersection(base, &a, &b)?;
    let points = projective_points(base, &guts);
    let n = m.len();
    let mut all: Vec<Vec<u16>> = m.matrix().columns().to_vec();
    all.extend(points.iter().cloned());
    let q = ElementSet::full(all.len()) - ElementSet::full(n);
    let labels = (0..n).map(|i| m.label(i)).chain((0..points.len()).map(ElementId::gadget)).collect();
    Ok((LinearMatroid::with_labels(base.clone(), Matrix::from_columns(dim, all)?, labels)?, q))
}

fn check_circguts(m: &dyn RankOracle, y: ElementSet, q: ElementSet, c: ElementSet, e: usize) -> Option<bool> {
    let y_other = m.ground() - y;
    let held = q.iter().all(|g| m.in_guts(y, g))
        && m.rank(q) == m.lambda(y)
        && m.is_circuit(c)
        && c.contains(e)
        && (y_other - q).contains(e);
    if !held {
        return None;
    }
    let span_other = m.closure(y_other);
    let pool: Vec<usize> = ((c - y) | q).without(e).iter().collect();
    let found = (0u64..1 << pool.len()).any(|bits| {
        let cand: ElementSet = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &g)| g)
            .collect::<ElementSet>()
            .with(e);
        cand.is_subset(span_other) && m.is_circuit(cand)
    });
    Some(found)
}

/// The input extended by the `2t` gadget elements, then by `d0` and the
/// `t` free placements into `cl(P + d0)`; returns it with `P` and `D0`.
fn gadget_extension(
    m: &dyn RankOracle,
    x: ElementSet,
    t: usize,
) -> Result<(StackedOracle<'_>, ElementSet, ElementSet)> {
    let k = m.lambda(x);
    if k > t {
        return Err(Error::PrefixTooWide { lambda: k, t });
    }
    let mut stack = StackedOracle::new(m);
    let mut serial = 0;
    let mut fresh = || {
        serial += 1;
        ElementId::gadget(serial - 1)
    };
    let mut p0 = ElementSet::EMPTY;
    for _ in k..t {
        p0.insert(stack.add_coloop(fresh())?);
    }
    let mut p = p0;
    for _ in 0..t + k {
        let c = stack.add_free_in_guts(x | p0, p, fresh())?;
        p.insert(c);
    }
    let d0 = stack.add_coloop(fresh())?;
    let mut d = ElementSet::singleton(d0);
    for _ in 0..t {
        d.insert(stack.add_free_in_closure(p.with(d0), fresh())?);
    }
    Ok((stack, p, d))
}

fn check_getcircuitd(m: &dyn RankOracle, x: ElementSet, t: usize, z: ElementSet) -> Result<Option<bool>> {
    if m.lambda(x) > t {
        return Ok(None);
    }
    let (m0, p, d0) = gadget_extension(m, x, t)?;
    let e = ElementSet::full(m0.len()) - d0;
    let lemma_m = Restriction::new(&m0, e)?;
    let held = lemma_m.is_connected()
        && !z.is_empty()
        && z.is_disjoint(x)
        && z.is_subset(e)
        && m0.rank(p) == t
        && t >= m0.lambda_within(e, x)
        && m0.mu_within(e, x, p) == t
        && z.is_disjoint(m0.closure_within(e, p));
    if !held {
        return Ok(None);
    }
    let ground = ElementSet::full(m0.len());
    let mprime = Restriction::new(&m0, ground - x)?;
    // indices in M' of D0 and Z
    let to_prime = |s: ElementSet| -> ElementSet { s.iter().map(|i| mprime.outer_index(i).expect("kept")).collect() };
    let (d0p, zp) = (to_prime(d0), to_prime(z));
    if mprime.lambda(d0p | zp) > t {
        return Ok(None);
    }
    let zs: Vec<usize> = zp.iter().collect();
    let found = (0u64..1 << zs.len()).any(|bits| {
        let z0: ElementSet = zs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &g)| g).collect();
        mprime.is_circuit(d0p | z0)
    });
    Ok(Some(found))
}

/// Connectivity-style quantities relative to a subset `e` of the ground
/// set taken as the whole ground set.
trait WithinExt: RankOracle {
    fn lambda_within(&self, e: ElementSet, x: ElementSet) -> usize {
        self.rank(x & e) + self.rank(e - x) - self.rank(e)
    }
    fn mu_within(&self, e: ElementSet, x: ElementSet, a: ElementSet) -> usize {
        self.rank((x & e) | a) + self.rank((e - x) | a) - self.rank(e)
    }
    fn closure_within(&self, e: ElementSet, x: ElementSet) -> ElementSet {
        let r = self.rank(x);
        e.iter().filter(|&g| self.rank(x.with(g)) == r).collect()
    }
}

impl<T: RankOracle + ?Sized> WithinExt for T {}

/// Outcome of a hypothesis search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub lemma: LemmaId,
    pub attempts: usize,
    pub instances: Vec<LemmaInstance>,
}

impl SearchResult {
    /// Fraction of attempts whose hypotheses held.
    pub fn hit_rate(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            self.instances.len() as f64 / self.attempts as f64
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, within: ElementSet) -> ElementSet {
    within.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A default instance pool for each lemma.
pub fn default_pool(lemma: LemmaId, seed: u64) -> Vec<GeneratorSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = Vec::new();
    let random = |rng: &mut ChaCha8Rng, ranks: (usize, usize), lens: (usize, usize), qs: &[u64]| {
        let rank = rng.gen_range(ranks.0..=ranks.1);
        let len = rng.gen_range(lens.0.max(rank)..=lens.1);
        let q = *qs.choose(rng).expect("nonempty");
        GeneratorSpec::random_linear(rank, len, q, rng.gen())
    };
    while pool.len() < 40 {
        let spec = match lemma {
            LemmaId::CircExch | LemmaId::OneSideSep | LemmaId::CircGuts => random(&mut rng, (2, 4), (4, 8), &[2, 3]),
            LemmaId::PwMinor => random(&mut rng, (2, 4), (4, 8), &[2, 3]),
            LemmaId::CircuitSpan => {
                if rng.gen_bool(0.25) {
                    let v = rng.gen_range(3..=6);
                    let e = rng.gen_range(v..=9);
                    GeneratorSpec { kind: GeneratorKind::CycleMatroid(Graph::random(v, e, rng.gen())), seed: 0 }
                } else {
                    random(&mut rng, (2, 4), (4, 8), &[2, 3])
                }
            }
            LemmaId::ExtAlpha => random(&mut rng, (2, 4), (2, 7), &[2, 3, 4, 5]),
            LemmaId::GetCircuitD => random(&mut rng, (2, 3), (3, 6), &[2, 3]),
        };
        if matches!(lemma, LemmaId::GetCircuitD | LemmaId::CircuitSpan)
            && !generate(&spec).is_ok_and(|m| m.oracle().is_connected())
        {
            continue;
        }
        pool.push(spec);
    }
    pool
}

fn candidate(lemma: LemmaId, m: &Instance, rng: &mut ChaCha8Rng) -> Result<Option<Witness>> {
    let o = m.oracle();
    let ground = o.ground();
    let n = o.len();
    if n == 0 {
        return Ok(None);
    }
    Ok(Some(match lemma {
        LemmaId::CircExch => {
            let circuits = o.circuits();
            let Some(&c1) = circuits.choose(rng) else { return Ok(None) };
            let partners: Vec<ElementSet> = circuits.iter().copied().filter(|c| (*c & c1).len() == 1).collect();
            let Some(&c2) = partners.choose(rng) else { return Ok(None) };
            Witness::CircExch { c1, c2 }
        }
        LemmaId::OneSideSep => {
            let x = random_subset(rng, ground);
            let e = rng.gen_range(0..n);
            let f = rng.gen_range(0..n);
            Witness::OneSideSep { x, e, f }
        }
        LemmaId::PwMinor => {
            let mut contract = ElementSet::EMPTY;
            let mut delete = ElementSet::EMPTY;
            for e in ground {
                match rng.gen_range(0..4) {
                    0 => contract.insert(e),
                    1 => delete.insert(e),
                    _ => {}
                }
            }
            Witness::PwMinor { contract, delete }
        }
        LemmaId::CircuitSpan => {
            let mut order: Vec<usize> = (0..n).collect();
            if rng.gen_bool(0.5) {
                order = pathwidth_exact(o)?.1.order;
            } else {
                order.shuffle(rng);
            }
            let pd = width_of_order(o, &order)?;
            let widest: Vec<usize> = (1..n).filter(|&i| pd.lambdas[i - 1] == pd.width).collect();
            let Some(&position) = widest.choose(rng) else { return Ok(None) };
            let x: ElementSet = order[..position].iter().collect();
            let guts_free: Vec<ElementSet> =
                o.circuits().into_iter().filter(|c| c.iter().all(|e| !o.in_guts(x, e))).collect();
            let Some(&circuit) = guts_free.choose(rng) else { return Ok(None) };
            Witness::CircuitSpan { order, position, circuit }
        }
        LemmaId::ExtAlpha => Witness::ExtAlpha,
        LemmaId::CircGuts => {
            let y = random_subset(rng, ground);
            let (aug, q) = guts_augmented(needs_linear(m)?, y)?;
            let dependent = random_subset(rng, aug.ground());
            let Ok(circuit) = aug.find_circuit(dependent) else { return Ok(None) };
            let outside: Vec<usize> = (circuit - y - q).iter().collect();
            let Some(&e) = outside.choose(rng) else { return Ok(None) };
            Witness::CircGuts { y, circuit, e }
        }
        LemmaId::GetCircuitD => {
            // coloops in the stack disconnect it unless the prefix is as wide as `t`
            let t = pathwidth_exact(o)?.0.max(1);
            let tight: Vec<ElementSet> =
                (0u64..1 << n).map(ElementSet::from_bits).filter(|&x| o.lambda(x) == t).collect();
            let Some(&x) = tight.choose(rng) else { return Ok(None) };
            let rest: Vec<usize> = (ground - x).iter().filter(|&e| !o.in_guts(x, e)).collect();
            if rest.is_empty() {
                return Ok(None);
            }
            let size = rng.gen_range(1..=3.min(rest.len()));
            let z: ElementSet = rest.choose_multiple(rng, size).collect();
            Witness::GetCircuitD { x, t, z }
        }
    }))
}

/// Samples up to `budget` candidate instances from `pool` and keeps those
/// whose hypotheses hold.
pub fn search_hypothesis_instances(
    lemma: LemmaId,
    pool: &[GeneratorSpec],
    budget: usize,
    seed: u64,
) -> Result<SearchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::new();
    let built: Vec<Instance> = pool.iter().map(generate).collect::<Result<_>>()?;
    for attempt in 0..budget {
        let i = rng.gen_range(0..pool.len());
        let mut inst_rng = ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let Some(witness) = candidate(lemma, &built[i], &mut inst_rng)? else { continue };
        let inst = LemmaInstance { lemma, seed: attempt as u64, source: pool[i].clone(), witness };
        if check_lemma(&inst)?.hypotheses_held {
            instances.push(inst);
        }
    }
    Ok(SearchResult { lemma, attempts: budget, instances })
}

/// Attempts per lemma in the default searches.
pub const DEFAULT_BUDGET: usize = 2000;

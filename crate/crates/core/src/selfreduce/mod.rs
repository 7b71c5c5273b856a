//! Optimal path-decompositions from a path-width decision procedure.
//!
//! The prefix `X` grows one element at a time. A candidate `f` is accepted
//! when the gadget matroid built for `X + f` still has path-width at most
//! `t`, which holds exactly when some optimal ordering starts with `X + f`.

mod linear;
mod oracle;
mod tower;

pub use linear::{GadgetCheck, GadgetLinear};
pub use oracle::GadgetAbstract;
pub use tower::GadgetField;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::GfTable;
use crate::matroid::{minor, CountingOracle, ElementSet, LinearMatroid, MatroidExt, RankOracle, MAX_ELEMENTS};
use crate::pathwidth::{pathwidth_exact, width_of_order, DecisionOracle, DpOracle, PathDecomposition, DEFAULT_GUARD};

/// Which gadget the self-reduction builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Linear,
    Abstract,
}

/// How `decompose` produces its ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    SelfLinear,
    SelfAbstract,
    Dp,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self-linear" => Ok(Method::SelfLinear),
            "self-abstract" => Ok(Method::SelfAbstract),
            "dp" => Ok(Method::Dp),
            other => Err(Error::Usage(format!("unknown method {other:?}"))),
        }
    }
}

/// The built-in decision procedure, sized for gadget matroids.
pub fn gadget_oracle() -> DpOracle {
    DpOracle { max_elements: MAX_ELEMENTS }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub candidate: usize,
    pub lambda: usize,
    /// `None` when the candidate was too wide to ask about.
    pub answer: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Iteration {
    pub attempts: Vec<Attempt>,
}

/// What one self-reduction run asked and learned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelfReduceTrace {
    pub n: usize,
    pub t: usize,
    pub iterations: Vec<Iteration>,
    pub oracle_calls: u64,
    /// Rank queries issued by the reduction itself, excluding those made
    /// inside the decision procedure.
    pub rank_queries: u64,
}

impl fmt::Display for SelfReduceTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "run n={} t={}", self.n, self.t)?;
        for (i, it) in self.iterations.iter().enumerate() {
            write!(f, "iteration {}", i + 1)?;
            for a in &it.attempts {
                let answer = match a.answer {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "skip",
                };
                write!(f, " {}:{}:{}", a.candidate + 1, a.lambda, answer)?;
            }
            writeln!(f)?;
        }
        writeln!(f, "totals oracle_calls={} rank_queries={}", self.oracle_calls, self.rank_queries)
    }
}

fn reduce(
    m: &dyn RankOracle,
    t: usize,
    oracle: &dyn DecisionOracle,
    mut ask: impl FnMut(&[usize], &dyn DecisionOracle) -> Result<bool>,
) -> Result<(PathDecomposition, SelfReduceTrace)> {
    let n = m.len();
    let counter = CountingOracle::new(m);
    let mut trace = SelfReduceTrace { n, t, ..Default::default() };
    let mut prefix: Vec<usize> = Vec::with_capacity(n);
    let mut placed = ElementSet::EMPTY;
    if n > 1 {
        for i in 0..n {
            let mut iteration = Iteration::default();
            let mut accepted = None;
            for f in counter.ground() - placed {
                let lambda = counter.lambda(placed.with(f));
                if lambda > t {
                    iteration.attempts.push(Attempt { candidate: f, lambda, answer: None });
                    continue;
                }
                prefix.push(f);
                let answer = ask(&prefix, oracle)?;
                prefix.pop();
                trace.oracle_calls += 1;
                iteration.attempts.push(Attempt { candidate: f, lambda, answer: Some(answer) });
                if answer {
                    accepted = Some(f);
                    break;
                }
            }
            trace.iterations.push(iteration);
            let f = accepted.ok_or(Error::NoExtension { iteration: i + 1, t })?;
            prefix.push(f);
            placed.insert(f);
        }
    } else {
        prefix.extend(0..n);
    }
    trace.rank_queries = counter.count();
    Ok((width_of_order(m, &prefix)?, trace))
}

/// Self-reduction on a connected represented matroid of path-width `t`.
pub fn decompose_connected_linear(
    m: &LinearMatroid<GfTable>,
    t: usize,
    oracle: &dyn DecisionOracle,
) -> Result<(PathDecomposition, SelfReduceTrace)> {
    reduce(m, t, oracle, |prefix, oracle| {
        let gadget = GadgetLinear::build(m, prefix, t)?;
        oracle.decide(&gadget, t)
    })
}

/// Self-reduction on a connected matroid of path-width `t`, through rank
/// queries only.
pub fn decompose_connected_abstract(
    m: &dyn RankOracle,
    t: usize,
    oracle: &dyn DecisionOracle,
) -> Result<(PathDecomposition, SelfReduceTrace)> {
    reduce(m, t, oracle, |prefix, oracle| {
        let gadget = GadgetAbstract::build(m, prefix, t)?;
        oracle.decide(&gadget, t)
    })
}

/// Whether the gadget for `prefix` passes the decision procedure at `t`.
pub fn gadget_accepts(
    m: &LinearMatroid<GfTable>,
    variant: Variant,
    prefix: &[usize],
    t: usize,
    oracle: &dyn DecisionOracle,
) -> Result<bool> {
    match variant {
        Variant::Linear => oracle.decide(&GadgetLinear::build(m, prefix, t)?, t),
        Variant::Abstract => oracle.decide(&GadgetAbstract::build(m, prefix, t)?, t),
    }
}

/// A component's share of a full decomposition.
#[derive(Clone, Debug)]
pub struct ComponentRun {
    pub elements: ElementSet,
    pub width: usize,
    pub trace: Option<SelfReduceTrace>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub decomposition: PathDecomposition,
    pub width: usize,
    pub components: Vec<ComponentRun>,
    /// Decision calls spent finding component widths.
    pub value_calls: u64,
}

impl Decomposition {
    pub fn oracle_calls(&self) -> u64 {
        self.value_calls + self.components.iter().filter_map(|c| c.trace.as_ref()).map(|t| t.oracle_calls).sum::<u64>()
    }

    pub fn rank_queries(&self) -> u64 {
        self.components.iter().filter_map(|c| c.trace.as_ref()).map(|t| t.rank_queries).sum()
    }
}

fn smallest_width(m: &dyn RankOracle, oracle: &dyn DecisionOracle, calls: &mut u64) -> Result<usize> {
    for t in 0..=m.len() {
        *calls += 1;
        if oracle.decide(m, t)? {
            return Ok(t);
        }
    }
    Err(Error::NoExtension { iteration: 0, t: m.len() })
}

fn guard_input(n: usize) -> Result<()> {
    if n > DEFAULT_GUARD {
        return Err(Error::GuardExceeded { n, limit: DEFAULT_GUARD });
    }
    Ok(())
}

fn assemble(
    m: &dyn RankOracle,
    components: Vec<ComponentRun>,
    orders: Vec<Vec<usize>>,
    value_calls: u64,
) -> Result<Decomposition> {
    let order: Vec<usize> = orders.into_iter().flatten().collect();
    let decomposition = width_of_order(m, &order)?;
    let width = components.iter().map(|c| c.width).max().unwrap_or(0);
    debug_assert_eq!(width, decomposition.width);
    Ok(Decomposition { decomposition, width, components, value_calls })
}

/// An optimal decomposition of a represented matroid: components are
/// solved separately and concatenated in order of their smallest element.
pub fn decompose_full(
    m: &LinearMatroid<GfTable>,
    method: Method,
    oracle: &dyn DecisionOracle,
) -> Result<Decomposition> {
    guard_input(m.len())?;
    if method == Method::Dp {
        let (width, decomposition) = pathwidth_exact(m)?;
        let components = vec![ComponentRun { elements: m.ground(), width, trace: None }];
        return Ok(Decomposition { decomposition, width, components, value_calls: 0 });
    }
    let mut runs = Vec::new();
    let mut orders = Vec::new();
    let mut value_calls = 0;
    for part in m.components() {
        let keep: Vec<usize> = part.iter().collect();
        let sub = m.restrict_columns(&keep)?;
        let (width, order, trace) = if keep.len() == 1 {
            (0, vec![0], None)
        } else {
            let t = smallest_width(&sub, oracle, &mut value_calls)?;
            let (pd, trace) = match method {
                Method::SelfLinear => decompose_connected_linear(&sub, t, oracle)?,
                _ => decompose_connected_abstract(&sub, t, oracle)?,
            };
            (t, pd.order, Some(trace))
        };
        orders.push(order.into_iter().map(|i| keep[i]).collect());
        runs.push(ComponentRun { elements: part, width, trace });
    }
    assemble(m, runs, orders, value_calls)
}

/// An optimal decomposition of a matroid given by a rank oracle, using the
/// abstract gadget.
pub fn decompose_full_oracle(m: &dyn RankOracle, oracle: &dyn DecisionOracle) -> Result<Decomposition> {
    guard_input(m.len())?;
    let mut runs = Vec::new();
    let mut orders = Vec::new();
    let mut value_calls = 0;
    for part in m.components() {
        let keep: Vec<usize> = part.iter().collect();
        let sub = minor(m, ElementSet::EMPTY, m.ground() - part)?;
        let (width, order, trace) = if keep.len() == 1 {
            (0, vec![0], None)
        } else {
            let t = smallest_width(&sub, oracle, &mut value_calls)?;
            let (pd, trace) = decompose_connected_abstract(&sub, t, oracle)?;
            (t, pd.order, Some(trace))
        };
        orders.push(order.into_iter().map(|i| keep[i]).collect());
        runs.push(ComponentRun { elements: part, width, trace });
    }
    assemble(m, runs, orders, value_calls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::pathwidth::decide_prefix_extendable;
    use crate::propcheck::Named;

    fn set(r: std::ops::Range<usize>) -> ElementSet {
        r.collect()
    }

    fn two_triangles() -> LinearMatroid<GfTable> {
        let cols = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 1],
        ];
        LinearMatroid::new(GfTable::prime(2).unwrap(), Matrix::from_columns(4, cols).unwrap()).unwrap()
    }

    #[test]
    fn cycle_gadget() {
        let m = Named::Cycle(4).build().unwrap();
        let g = GadgetLinear::build(&m, &[0], 1).unwrap();
        assert_eq!((g.k(), g.gamma().rank(), g.points().len()), (1, 1, 1));
        assert_eq!(g.sigma(), g.gamma());
        assert_eq!(g.tower().absolute_degree(), 2);
        assert_eq!(g.len(), 6);
        assert_eq!(pathwidth_exact(&g).unwrap().0, 1);
        assert!(g.check().all());
    }

    #[test]
    fn uniform_abstract_gadget() {
        let u = Named::U24.build().unwrap();
        let g = GadgetAbstract::build(&u, &[0], 2).unwrap();
        assert_eq!((g.k(), g.coloop_indices().len(), g.point_indices().len(), g.d_indices().len()), (1, 1, 4, 3));
        assert_eq!(g.len(), 10);
        let p: Vec<usize> = g.point_indices().collect();
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(g.rank(ElementSet::singleton(p[i]).with(p[j])), 2);
            }
        }
        let d = set(g.d_indices());
        assert_eq!(g.rank(d), 3);
        assert!(set(g.point_indices()).is_subset(g.closure(d)));
    }

    #[test]
    fn tight_prefix_uses_the_guts() {
        let m = Named::U24.build().unwrap();
        let g = GadgetLinear::build(&m, &[0, 1], 2).unwrap();
        assert_eq!(g.k(), 2);
        assert_eq!(g.sigma(), g.gamma());
        let a = GadgetAbstract::build(&m, &[0, 1], 2).unwrap();
        assert_eq!(a.coloop_indices().len(), 0);
        assert_eq!(a.point_indices().len(), 4);
    }

    #[test]
    fn separated_prefix_is_padded() {
        let m = two_triangles();
        for t in 1..=2 {
            let a = GadgetAbstract::build(&m, &[0, 1, 2], t).unwrap();
            assert_eq!(a.k(), 0);
            assert_eq!(a.rank(set(a.point_indices())), t);
            let l = GadgetLinear::build(&m, &[0, 1, 2], t).unwrap();
            assert_eq!(l.rank(set(l.point_indices())), t);
        }
    }

    #[test]
    fn wide_prefixes_are_refused() {
        let m = Named::U24.build().unwrap();
        assert!(matches!(GadgetLinear::build(&m, &[0, 1], 1), Err(Error::PrefixTooWide { .. })));
        assert!(matches!(GadgetAbstract::build(&m, &[0, 1], 1), Err(Error::PrefixTooWide { .. })));
    }

    #[test]
    fn single_coloop() {
        let m = Named::Free(1).build().unwrap();
        let (pd, trace) = decompose_connected_linear(&m, 0, &gadget_oracle()).unwrap();
        assert_eq!((pd.order, pd.width, trace.oracle_calls), (vec![0], 0, 0));
    }

    #[test]
    fn cycle_ordering() {
        let m = Named::Cycle(4).build().unwrap();
        let (pd, trace) = decompose_connected_linear(&m, 1, &gadget_oracle()).unwrap();
        assert_eq!(pd.lambdas, vec![1, 1, 1]);
        assert!(trace.oracle_calls <= 16);
        let full = decompose_full(&m, Method::SelfLinear, &gadget_oracle()).unwrap();
        assert_eq!(full.decomposition, pd);
    }

    #[test]
    fn variants_agree_on_uniform() {
        let m = Named::U24.build().unwrap();
        let oracle = gadget_oracle();
        let (a, ta) = decompose_connected_linear(&m, 2, &oracle).unwrap();
        let (b, tb) = decompose_connected_abstract(&m, 2, &oracle).unwrap();
        assert_eq!((a.width, b.width), (2, 2));
        assert_eq!(ta.iterations, tb.iterations);
        let mut prefix = Vec::new();
        for it in &ta.iterations {
            for at in &it.attempts {
                if let Some(answer) = at.answer {
                    prefix.push(at.candidate);
                    assert_eq!(answer, decide_prefix_extendable(&m, &prefix, 2).unwrap());
                    prefix.pop();
                }
            }
            prefix.push(it.attempts.last().unwrap().candidate);
        }
    }

    #[test]
    fn components_are_concatenated() {
        let free = Named::Free(5).build().unwrap();
        assert_eq!(decompose_full(&free, Method::SelfAbstract, &gadget_oracle()).unwrap().width, 0);
        let m = two_triangles();
        for method in [Method::SelfLinear, Method::SelfAbstract] {
            let d = decompose_full(&m, method, &gadget_oracle()).unwrap();
            assert_eq!(d.width, 1);
            assert_eq!(d.components.len(), 2);
            let first: ElementSet = d.decomposition.order[..3].iter().collect();
            assert_eq!(first, set(0..3));
        }
        let d = decompose_full_oracle(&m, &gadget_oracle()).unwrap();
        assert_eq!(d.width, 1);
    }

    #[test]
    fn lying_oracle_is_reported() {
        let m = Named::Cycle(4).build().unwrap();
        let liar = |g: &dyn RankOracle, _t: usize| -> Result<bool> { Ok(g.len() == 4) };
        let err = decompose_connected_linear(&m, 1, &liar).unwrap_err();
        assert!(matches!(err, Error::NoExtension { iteration: 1, t: 1 }), "{err}");
    }

    #[test]
    fn oversized_inputs_are_refused() {
        let m = crate::propcheck::random_linear(3, 25, 2, 1).unwrap();
        assert!(matches!(decompose_full(&m, Method::Dp, &gadget_oracle()), Err(Error::GuardExceeded { n: 25, .. })));
    }
}

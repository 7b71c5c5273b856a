use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldOps, FieldSpec, GfTable};
use crate::linalg::{projective_points, subspace_intersection, Matrix, SubspaceBasis};
use crate::matroid::{ElementId, ElementSet, LinearMatroid, MatroidExt, RankCache, RankOracle};

use super::tower::GadgetField;

/// The gadget matroid `M'` for a prefix of a represented matroid.
///
/// Ground set, in order: the input elements outside the prefix (ascending),
/// the points of `Σ`, then `d0, d1, ..., dt`. Everything except
/// `d1..dt` lives over the base field; ranks of sets meeting those are
/// computed over the tower.
pub struct GadgetLinear {
    prefix: Vec<usize>,
    k: usize,
    t: usize,
    ambient: usize,
    input_columns: Vec<Vec<u16>>,
    gamma: SubspaceBasis<u16>,
    sigma: SubspaceBasis<u16>,
    d0: Vec<u16>,
    points: Vec<Vec<u16>>,
    w: SubspaceBasis<u16>,
    rest: Vec<usize>,
    rational: Vec<Vec<u16>>,
    labels: Vec<ElementId>,
    field: Arc<GadgetField>,
    cache: RankCache,
}

fn unit(dim: usize, i: usize) -> Vec<u16> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

impl GadgetLinear {
    pub fn build(m: &LinearMatroid<GfTable>, prefix: &[usize], t: usize) -> Result<Self> {
        let base = m.field();
        let n = m.len();
        let set: ElementSet = prefix.iter().collect();
        if let Some(&e) = prefix.iter().find(|&&e| e >= n) {
            return Err(Error::UnknownElement { index: e, len: n });
        }
        if set.len() != prefix.len() {
            return Err(Error::NotAPermutation);
        }
        let k = m.lambda(set);
        if k > t {
            return Err(Error::PrefixTooWide { lambda: k, t });
        }

        let r0 = m.matrix().rows();
        let ambient = r0 + t + 1;
        let padded = m.matrix().extend_ambient(t + 1, 0);
        let input_columns: Vec<Vec<u16>> = padded.columns().to_vec();
        let rest: Vec<usize> = (ElementSet::full(n) - set).iter().collect();
        let side = |idx: &mut dyn Iterator<Item = usize>| -> Result<SubspaceBasis<u16>> {
            let cols: Vec<Vec<u16>> = idx.map(|i| input_columns[i].clone()).collect();
            SubspaceBasis::span(base, ambient, &cols)
        };
        let gamma =
            subspace_intersection(base, &side(&mut prefix.iter().copied())?, &side(&mut rest.iter().copied())?)?;
        debug_assert_eq!(gamma.rank(), k);

        let mut sigma_gens = gamma.vectors().to_vec();
        sigma_gens.extend((0..t - k).map(|i| unit(ambient, r0 + i)));
        let sigma = SubspaceBasis::span(base, ambient, &sigma_gens)?;
        let d0 = unit(ambient, r0 + t - k);
        let points = projective_points(base, &sigma);
        let mut w_gens = sigma.vectors().to_vec();
        w_gens.push(d0.clone());
        let w = SubspaceBasis::span(base, ambient, &w_gens)?;

        let mut rational: Vec<Vec<u16>> = rest.iter().map(|&i| input_columns[i].clone()).collect();
        rational.extend(points.iter().cloned());
        rational.push(d0.clone());
        let mut labels: Vec<ElementId> = rest.iter().map(|&i| m.label(i)).collect();
        labels.extend((0..points.len() + t + 1).map(ElementId::gadget));
        if labels.len() > crate::matroid::MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(labels.len()));
        }

        Ok(GadgetLinear {
            prefix: prefix.to_vec(),
            k,
            t,
            ambient,
            input_columns,
            gamma,
            sigma,
            d0,
            points,
            w,
            rest,
            rational,
            labels,
            field: GadgetField::get(base, t),
            cache: RankCache::new(),
        })
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    /// `λ` of the prefix.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn gamma(&self) -> &SubspaceBasis<u16> {
        &self.gamma
    }

    pub fn sigma(&self) -> &SubspaceBasis<u16> {
        &self.sigma
    }

    pub fn d0(&self) -> &[u16] {
        &self.d0
    }

    pub fn points(&self) -> &[Vec<u16>] {
        &self.points
    }

    pub fn tower(&self) -> &FieldSpec {
        self.field.tower()
    }

    /// Input positions of the elements kept from the input.
    pub fn rest(&self) -> &[usize] {
        &self.rest
    }

    pub fn point_indices(&self) -> Range<usize> {
        self.rest.len()..self.rest.len() + self.points.len()
    }

    /// Indices of `d0, d1, ..., dt`.
    pub fn d_indices(&self) -> Range<usize> {
        let start = self.rest.len() + self.points.len();
        start..start + self.t + 1
    }

    /// The same matroid as an explicit matrix over the tower field.
    pub fn explicit(&self) -> Result<LinearMatroid<FieldSpec>> {
        let tower = self.field.tower();
        let mut cols: Vec<Vec<FieldElement>> =
            self.rational.iter().map(|c| c.iter().map(|&a| self.field.embed(a)).collect()).collect();
        let w_embedded: Vec<Vec<FieldElement>> =
            self.w.vectors().iter().map(|v| v.iter().map(|&a| self.field.embed(a)).collect()).collect();
        for j in 1..=self.t {
            let mut col = vec![tower.zero(); self.ambient];
            for (c, b) in self.field.direction(j).iter().zip(&w_embedded) {
                for (x, y) in col.iter_mut().zip(b) {
                    *x = tower.add(x, &tower.mul(c, y));
                }
            }
            cols.push(col);
        }
        LinearMatroid::with_labels(tower.clone(), Matrix::from_columns(self.ambient, cols)?, self.labels.clone())
    }

    /// Structural checks on the construction.
    pub fn check(&self) -> GadgetCheck {
        let base = self.field.base();
        let e_span = SubspaceBasis::span(base, self.ambient, &self.input_columns).expect("dimensions agree");
        let guts_identity = subspace_intersection(base, &self.w, &e_span).expect("dimensions agree") == self.gamma;
        let q = base.spec().order().expect("table field") as usize;
        let expected_points = if self.t == 0 { 0 } else { (q.pow(self.t as u32) - 1) / (q - 1) };
        let p_and_d: ElementSet = self.point_indices().chain(self.d_indices()).collect();
        GadgetCheck {
            sigma_rank: self.sigma.rank() == self.t,
            gamma_in_sigma: self.gamma.is_subspace_of(base, &self.sigma),
            d0_outside_sigma: !self.sigma.contains(base, &self.d0),
            guts_identity,
            point_count: self.points.len() == expected_points,
            d_rank: self.rank(p_and_d) == self.t + 1 && self.rank(self.d_indices().collect()) == self.t + 1,
        }
    }
}

/// Outcome of [`GadgetLinear::check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetCheck {
    pub sigma_rank: bool,
    pub gamma_in_sigma: bool,
    pub d0_outside_sigma: bool,
    /// `span(Σ ∪ {d0}) ∩ span(E) = Γ`.
    pub guts_identity: bool,
    pub point_count: bool,
    pub d_rank: bool,
}

impl GadgetCheck {
    pub fn all(&self) -> bool {
        self.sigma_rank
            && self.gamma_in_sigma
            && self.d0_outside_sigma
            && self.guts_identity
            && self.point_count
            && self.d_rank
    }
}

impl RankOracle for GadgetLinear {
    fn len(&self) -> usize {
        self.labels.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.cache.get_or_compute(set, || {
            let base = self.field.base();
            let n_rat = self.rational.len();
            let js = (set.bits() >> n_rat) as u8;
            let cols: Vec<Vec<u16>> =
                (set & ElementSet::full(n_rat)).iter().map(|i| self.rational[i].clone()).collect();
            let span = SubspaceBasis::span(base, self.ambient, &cols).expect("dimensions agree");
            if js == 0 {
                return span.rank();
            }
            let common = subspace_intersection(base, &span, &self.w).expect("dimensions agree");
            let coords: Vec<Vec<u16>> =
                common.vectors().iter().map(|v| self.w.coordinates(base, v).expect("inside W")).collect();
            let u = SubspaceBasis::span(base, self.t + 1, &coords).expect("dimensions agree");
            span.rank() + self.field.relative_rank(&u, js)
        })
    }

    fn queries(&self) -> u64 {
        self.cache.queries()
    }

    fn label(&self, index: usize) -> ElementId {
        self.labels[index]
    }
}

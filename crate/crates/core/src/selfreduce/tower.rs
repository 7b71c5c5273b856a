use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::field::{embed, find_irreducible, FieldElement, FieldOps, FieldSpec, GfTable};
use crate::linalg::SubspaceBasis;

/// The extension field and free directions shared by every linear gadget
/// over one base field at one width.
///
/// The gadget's span `W = span(Σ ∪ {d0})` has dimension `t + 1`. In
/// coordinates of a basis of `W`, the `j`-th free direction is
/// `(1, a_j, a_j^2, ..., a_j^t)` where `a_j` generates the `j`-th tower
/// level, a root of a degree-`(t + 1)` irreducible over the level below.
/// These coordinates do not depend on the matroid, so they are computed
/// once per base field and width.
pub struct GadgetField {
    base: GfTable,
    t: usize,
    tower: FieldSpec,
    directions: Vec<Vec<FieldElement>>,
    relative_ranks: Mutex<FxHashMap<(Vec<u16>, u8), u8>>,
}

type Registry = Mutex<FxHashMap<(FieldSpec, usize), Arc<OnceLock<Arc<GadgetField>>>>>;

impl GadgetField {
    /// The shared instance for `(base, t)`, built on first use.
    pub fn get(base: &GfTable, t: usize) -> Arc<GadgetField> {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        let slot = {
            let mut map = REGISTRY.get_or_init(Registry::default).lock().expect("registry poisoned");
            map.entry((base.spec().clone(), t)).or_default().clone()
        };
        slot.get_or_init(|| Arc::new(GadgetField::build(base, t))).clone()
    }

    pub fn build(base: &GfTable, t: usize) -> GadgetField {
        let mut tower = base.spec().clone();
        for _ in 0..t {
            let poly = find_irreducible(&tower, t + 1);
            tower = tower.extend_unchecked(poly.coefficients());
        }
        let base_depth = base.spec().depth();
        let directions = (1..=t)
            .map(|j| {
                let alpha = tower.generator(base_depth + j);
                let mut v = vec![tower.one()];
                for i in 0..t {
                    let next = tower.mul(&v[i], &alpha);
                    v.push(next);
                }
                v
            })
            .collect();
        GadgetField { base: base.clone(), t, tower, directions, relative_ranks: Mutex::default() }
    }

    pub fn base(&self) -> &GfTable {
        &self.base
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn tower(&self) -> &FieldSpec {
        &self.tower
    }

    /// Coordinates of `d_j`, `1 <= j <= t`.
    pub fn direction(&self, j: usize) -> &[FieldElement] {
        &self.directions[j - 1]
    }

    pub fn embed(&self, a: u16) -> FieldElement {
        embed(&self.base.to_element(a), self.base.spec(), &self.tower).expect("base is a tower prefix")
    }

    /// Rank over the tower of `{d_j : bit j-1 of js}` modulo the subspace
    /// `u` of base-field coordinate vectors.
    pub fn relative_rank(&self, u: &SubspaceBasis<u16>, js: u8) -> usize {
        debug_assert_eq!(u.dim(), self.t + 1);
        let key = (u.vectors().concat(), js);
        if let Some(&r) = self.relative_ranks.lock().expect("cache poisoned").get(&key) {
            return r as usize;
        }
        let r = self.compute_relative_rank(u, js);
        self.relative_ranks.lock().expect("cache poisoned").insert(key, r as u8);
        r
    }

    fn compute_relative_rank(&self, u: &SubspaceBasis<u16>, js: u8) -> usize {
        let f = &self.tower;
        let embedded: Vec<Vec<FieldElement>> =
            u.vectors().iter().map(|v| v.iter().map(|&a| self.embed(a)).collect()).collect();
        let free: Vec<usize> = (0..=self.t).filter(|c| !u.pivots().contains(c)).collect();
        let mut rows: Vec<Vec<FieldElement>> = (1..=self.t)
            .filter(|j| js >> (j - 1) & 1 == 1)
            .map(|j| {
                let mut v = self.direction(j).to_vec();
                for (&p, b) in u.pivots().iter().zip(&embedded) {
                    let c = v[p].clone();
                    if f.is_zero(&c) {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
                free.iter().map(|&c| v[c].clone()).collect()
            })
            .collect();
        fraction_free_rank(f, &mut rows)
    }
}

/// Gaussian elimination by cross-multiplication, avoiding inverses.
fn fraction_free_rank<F: FieldOps>(f: &F, rows: &mut [Vec<F::Elem>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if f.is_zero(&row[c]) {
                continue;
            }
            let scale = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = f.sub(&f.mul(&pivot[c], x), &f.mul(&scale, y));
            }
        }
        rank += 1;
    }
    rank
}

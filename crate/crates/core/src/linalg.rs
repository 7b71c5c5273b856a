//! Dense linear algebra over any [`FieldOps`] field.
//!
//! Vectors are plain `Vec<E>`; a matroid element is a column of a
//! [`Matrix`]. Subspaces are kept as canonical reduced-echelon bases.

use crate::error::{Error, Result};
use crate::field::{FieldOps, FiniteField};

/// A dense `rows x cols` matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    columns: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_columns(rows: usize, columns: Vec<Vec<E>>) -> Result<Self> {
        for c in &columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
        }
        Ok(Matrix { rows, columns })
    }

    /// Builds a matrix from row vectors, which must all have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Result<Self> {
        let mut columns = vec![Vec::with_capacity(rows.len()); cols];
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (c, x) in row.iter().enumerate() {
                columns[c].push(x.clone());
            }
        }
        Ok(Matrix { rows: rows.len(), columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[E] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<E>] {
        &self.columns
    }

    pub fn entry(&self, r: usize, c: usize) -> &E {
        &self.columns[c][r]
    }

    pub fn row(&self, r: usize) -> Vec<E> {
        self.columns.iter().map(|c| c[r].clone()).collect()
    }

    pub fn select_columns(&self, keep: &[usize]) -> Matrix<E> {
        Matrix { rows: self.rows, columns: keep.iter().map(|&c| self.columns[c].clone()).collect() }
    }

    /// Appends `extra_rows` zero coordinates to every column.
    pub fn extend_ambient(&self, extra_rows: usize, zero: E) -> Matrix<E> {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.resize(self.rows + extra_rows, zero.clone());
                c
            })
            .collect();
        Matrix { rows: self.rows + extra_rows, columns }
    }
}

/// Incrementally built row-echelon form; each stored row has its pivot
/// equal to one and zeros before the pivot. Rows are kept sorted by pivot.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    dim: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Remainder of `v` after eliminating every stored pivot.
    pub fn reduce<F: FieldOps<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for j in p..self.dim {
                if !field.is_zero(&row[j]) {
                    v[j] = field.sub(&v[j], &field.mul(&c, &row[j]));
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether it was independent of the stored rows.
    pub fn insert<F: FieldOps<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        let mut r = self.reduce(field, v);
        let Some(p) = r.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&r[p]).expect("nonzero pivot");
        for x in r[p..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn contains<F: FieldOps<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    /// Reduced echelon basis of the span.
    pub fn into_basis<F: FieldOps<Elem = E>>(mut self, field: &F) -> SubspaceBasis<E> {
        for i in (0..self.rows.len()).rev() {
            let p = self.pivots[i];
            for k in 0..i {
                if field.is_zero(&self.rows[k][p]) {
                    continue;
                }
                let c = self.rows[k][p].clone();
                for j in p..self.dim {
                    if !field.is_zero(&self.rows[i][j]) {
                        let t = field.mul(&c, &self.rows[i][j]);
                        self.rows[k][j] = field.sub(&self.rows[k][j], &t);
                    }
                }
            }
        }
        SubspaceBasis { dim: self.dim, vectors: self.rows, pivots: self.pivots }
    }
}

/// A subspace given by its canonical reduced-echelon basis: vectors sorted
/// by pivot, each pivot entry one and zero in every other basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis<E> {
    dim: usize,
    vectors: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> SubspaceBasis<E> {
    pub fn span<F: FieldOps<Elem = E>>(field: &F, dim: usize, vectors: &[Vec<E>]) -> Result<Self> {
        let mut ech = Echelon::new(dim);
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            ech.insert(field, v);
        }
        Ok(ech.into_basis(field))
    }

    pub fn zero(dim: usize) -> Self {
        SubspaceBasis { dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<E>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains<F: FieldOps<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        let ech = Echelon { dim: self.dim, rows: self.vectors.clone(), pivots: self.pivots.clone() };
        ech.contains(field, v)
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is outside the
    /// subspace.
    pub fn coordinates<F: FieldOps<Elem = E>>(&self, field: &F, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = vec![field.zero(); self.dim];
        for (c, b) in coords.iter().zip(&self.vectors) {
            if field.is_zero(c) {
                continue;
            }
            for (x, y) in w.iter_mut().zip(b) {
                *x = field.add(x, &field.mul(c, y));
            }
        }
        (w == v).then_some(coords)
    }

    pub fn is_subspace_of<F: FieldOps<Elem = E>>(&self, field: &F, other: &SubspaceBasis<E>) -> bool {
        self.vectors.iter().all(|v| other.contains(field, v))
    }

    pub fn sum<F: FieldOps<Elem = E>>(&self, field: &F, other: &SubspaceBasis<E>) -> SubspaceBasis<E> {
        let all: Vec<Vec<E>> = self.vectors.iter().chain(&other.vectors).cloned().collect();
        SubspaceBasis::span(field, self.dim, &all).expect("same ambient dimension")
    }
}

/// Rank of a set of vectors of dimension `dim`.
pub fn rank_of<'a, F, I>(field: &F, dim: usize, cols: I) -> usize
where
    F: FieldOps,
    F::Elem: 'a,
    I: IntoIterator<Item = &'a [F::Elem]>,
{
    let mut ech = Echelon::new(dim);
    for c in cols {
        ech.insert(field, c);
        if ech.rank() == dim {
            break;
        }
    }
    ech.rank()
}

/// Whether `v` lies in the span of `cols`.
pub fn in_span<F: FieldOps>(field: &F, v: &[F::Elem], cols: &[Vec<F::Elem>]) -> Result<bool> {
    let dim = v.len();
    let mut ech = Echelon::new(dim);
    for c in cols {
        if c.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.len() });
        }
        ech.insert(field, c);
    }
    Ok(ech.contains(field, v))
}

/// Basis of the null space of the `dim x cols.len()` matrix whose columns
/// are `cols`.
pub fn kernel<F: FieldOps>(field: &F, dim: usize, cols: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let n = cols.len();
    let mut m: Vec<Vec<F::Elem>> = (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(sel) = (row..dim).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, sel);
        let inv = field.inv(&m[row][col]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && !field.is_zero(&target[col]) {
                let c = target[col].clone();
                for (x, p) in target.iter_mut().zip(&pivot) {
                    *x = field.sub(x, &field.mul(&c, p));
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == dim {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![field.zero(); n];
        x[free] = field.one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = field.neg(&m[i][free]);
        }
        basis.push(x);
    }
    basis
}

/// `span(A) ∩ span(B)`, from the kernel of `[A | -B]`.
pub fn subspace_intersection<F: FieldOps>(
    field: &F,
    a: &SubspaceBasis<F::Elem>,
    b: &SubspaceBasis<F::Elem>,
) -> Result<SubspaceBasis<F::Elem>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    let mut stacked: Vec<Vec<F::Elem>> = a.vectors.clone();
    stacked.extend(b.vectors.iter().map(|v| v.iter().map(|x| field.neg(x)).collect()));
    let mut common = Vec::new();
    for x in kernel(field, a.dim, &stacked) {
        let mut w = vec![field.zero(); a.dim];
        for (c, v) in x.iter().zip(&a.vectors) {
            if field.is_zero(c) {
                continue;
            }
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi = field.add(wi, &field.mul(c, vi));
            }
        }
        common.push(w);
    }
    SubspaceBasis::span(field, a.dim, &common)
}

/// Scales `v` so its first nonzero coordinate is one.
pub fn normalize_projective<F: FieldOps>(field: &F, v: &mut [F::Elem]) {
    if let Some(p) = v.iter().position(|x| !field.is_zero(x)) {
        let inv = field.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = field.mul(x, &inv);
        }
    }
}

/// One canonical representative (first nonzero coordinate one) of every
/// one-dimensional subspace of `span(S)`, sorted lexicographically by
/// element index.
pub fn projective_points<F: FiniteField>(field: &F, s: &SubspaceBasis<F::Elem>) -> Vec<Vec<F::Elem>> {
    let d = s.rank();
    let q = field.order();
    let mut points = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut coeffs = vec![field.zero(); d];
            coeffs[lead] = field.one();
            let mut c = code;
            for slot in coeffs.iter_mut().skip(lead + 1) {
                *slot = field.element(c % q);
                c /= q;
            }
            let mut v = vec![field.zero(); s.dim];
            for (cf, b) in coeffs.iter().zip(&s.vectors) {
                if field.is_zero(cf) {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.add(x, &field.mul(cf, y));
                }
            }
            normalize_projective(field, &mut v);
            points.push(v);
        }
    }
    points.sort_by_key(|v| v.iter().map(|x| field.index_of(x)).collect::<Vec<_>>());
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfTable;

    fn gf(p: u32) -> GfTable {
        GfTable::prime(p).unwrap()
    }

    fn fano_columns() -> Vec<Vec<u16>> {
        (1..8u16).map(|m| vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]).collect()
    }

    #[test]
    fn ranks() {
        let f = gf(2);
        let id: Vec<Vec<u16>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(rank_of(&f, 3, id.iter().map(|v| v.as_slice())), 3);
        let par = [vec![1u16, 1, 0], vec![1, 1, 0]];
        assert_eq!(rank_of(&f, 3, par.iter().map(|v| v.as_slice())), 1);
        let fano = fano_columns();
        assert_eq!(rank_of(&f, 3, fano.iter().map(|v| v.as_slice())), 3);
    }

    #[test]
    fn span_membership() {
        let f = gf(2);
        let cols = vec![vec![1u16, 0, 0], vec![0, 1, 0]];
        assert!(in_span(&f, &[1, 1, 0], &cols).unwrap());
        assert!(!in_span(&f, &[0, 0, 1], &cols).unwrap());
        assert!(in_span(&f, &[0, 0, 0], &cols).unwrap());
        assert!(in_span(&f, &[0, 0, 0], &[]).unwrap());
        assert!(matches!(in_span(&f, &[0, 0], &cols), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn intersection_examples() {
        let f = gf(2);
        let a = SubspaceBasis::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let b = SubspaceBasis::span(&f, 3, &[vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        let i = subspace_intersection(&f, &a, &b).unwrap();
        assert_eq!(i.vectors(), &[vec![1, 1, 0]]);
        assert_eq!(subspace_intersection(&f, &a, &a).unwrap(), a);
        let c = SubspaceBasis::span(&f, 3, &[vec![0, 0, 1]]).unwrap();
        assert_eq!(subspace_intersection(&f, &a, &c).unwrap().rank(), 0);
    }

    #[test]
    fn projective_point_counts() {
        let f2 = gf(2);
        let plane = SubspaceBasis::span(&f2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(projective_points(&f2, &plane).len(), 3);
        let all = SubspaceBasis::span(&f2, 3, &fano_columns()).unwrap();
        assert_eq!(projective_points(&f2, &all).len(), 7);
        let f3 = gf(3);
        let line = SubspaceBasis::span(&f3, 2, &[vec![2, 1]]).unwrap();
        assert_eq!(projective_points(&f3, &line), vec![vec![1, 2]]);
        assert!(projective_points(&f3, &SubspaceBasis::zero(4)).is_empty());
    }

    #[test]
    fn padding_preserves_rank() {
        let f = gf(3);
        let m = Matrix::from_rows(3, &[vec![1u16, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.extend_ambient(0, 0), m);
        let big = m.extend_ambient(2, 0);
        assert_eq!((big.rows(), big.cols()), (4, 3));
        for mask in 0u32..8 {
            let pick = |mat: &Matrix<u16>| {
                let cols: Vec<&[u16]> = (0..3).filter(|c| mask >> c & 1 == 1).map(|c| mat.column(c)).collect();
                rank_of(&f, mat.rows(), cols)
            };
            assert_eq!(pick(&m), pick(&big));
        }
    }
}

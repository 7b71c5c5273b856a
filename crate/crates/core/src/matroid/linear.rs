use crate::error::{Error, Result};
use crate::field::FieldOps;
use crate::linalg::{rank_of, Matrix};

use super::{ElementId, ElementSet, RankCache, RankOracle, MAX_ELEMENTS};

/// The column matroid of a matrix over a field.
pub struct LinearMatroid<F: FieldOps> {
    field: F,
    matrix: Matrix<F::Elem>,
    labels: Vec<ElementId>,
    cache: RankCache,
}

impl<F: FieldOps> LinearMatroid<F> {
    pub fn new(field: F, matrix: Matrix<F::Elem>) -> Result<Self> {
        let labels = (0..matrix.cols()).map(ElementId::input).collect();
        Self::with_labels(field, matrix, labels)
    }

    pub fn with_labels(field: F, matrix: Matrix<F::Elem>, labels: Vec<ElementId>) -> Result<Self> {
        if matrix.cols() > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(matrix.cols()));
        }
        if labels.len() != matrix.cols() {
            return Err(Error::DimensionMismatch { expected: matrix.cols(), found: labels.len() });
        }
        Ok(LinearMatroid { field, matrix, labels, cache: RankCache::new() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    /// The column matroid of the selected columns, relabelled densely but
    /// keeping their identities.
    pub fn restrict_columns(&self, keep: &[usize]) -> Result<Self>
    where
        F: Clone,
    {
        let labels = keep.iter().map(|&c| self.labels[c]).collect();
        Self::with_labels(self.field.clone(), self.matrix.select_columns(keep), labels)
    }
}

impl<F: FieldOps> RankOracle for LinearMatroid<F> {
    fn len(&self) -> usize {
        self.matrix.cols()
    }

    fn rank(&self, set: ElementSet) -> usize {
        debug_assert!(set.is_subset(ElementSet::full(self.len())));
        self.cache
            .get_or_compute(set, || rank_of(&self.field, self.matrix.rows(), set.iter().map(|c| self.matrix.column(c))))
    }

    fn queries(&self) -> u64 {
        self.cache.queries()
    }

    fn label(&self, index: usize) -> ElementId {
        self.labels[index]
    }
}

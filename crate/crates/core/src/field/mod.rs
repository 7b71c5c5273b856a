//! Finite fields: prime fields, towers of simple extensions and
//! table-driven small fields.
//!
//! Elements of a tower `GF(p)(a1)(a2)...` are stored flattened: an element
//! of level `l` is `deg_l` consecutive blocks, each an element of level
//! `l - 1`, lowest coefficient first. A prime-field element is a single
//! integer in `[0, p)`.

mod poly;
mod table;
mod tower;

pub use poly::Polynomial;
pub use table::GfTable;
pub use tower::{embed, find_irreducible, ArithOp, FieldElement, FieldSpec};

pub use poly::poly_is_irreducible_by_trial_division;

use std::fmt::Debug;
use std::hash::Hash;

/// Field arithmetic over an element type.
///
/// Implementors guarantee canonical elements, so `==` on elements is field
/// equality.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A field small enough to enumerate.
pub trait FiniteField: FieldOps {
    fn order(&self) -> u64;
    /// The element with the given index; indices enumerate the field in
    /// a fixed order starting with `0` and `1`.
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.element(i)))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

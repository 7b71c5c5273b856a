use super::{FieldElement, FieldOps, FieldSpec, FiniteField};
use crate::error::{Error, Result};

/// Largest field order served by lookup tables.
pub const MAX_TABLE_ORDER: u64 = 1024;

/// A small finite field with precomputed addition and multiplication
/// tables. Elements are indices in the [`FieldSpec::index_of`] order.
#[derive(Clone, Debug)]
pub struct GfTable {
    spec: FieldSpec,
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl PartialEq for GfTable {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for GfTable {}

impl GfTable {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let order = spec
            .order()
            .filter(|&q| q <= MAX_TABLE_ORDER)
            .ok_or_else(|| Error::FieldTooLarge(format!("{}^{}", spec.characteristic(), spec.absolute_degree())))?
            as usize;
        let elems: Vec<FieldElement> = (0..order as u64).map(|i| spec.element_at(i)).collect();
        let mut add = vec![0u16; order * order];
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            for b in a..order {
                let s = spec.index_of(&spec.add(&elems[a], &elems[b])) as u16;
                let m = spec.index_of(&spec.mul(&elems[a], &elems[b])) as u16;
                add[a * order + b] = s;
                add[b * order + a] = s;
                mul[a * order + b] = m;
                mul[b * order + a] = m;
            }
        }
        let neg = elems.iter().map(|e| spec.index_of(&spec.neg(e)) as u16).collect();
        let inv = elems.iter().map(|e| spec.inv(e).map_or(0, |i| spec.index_of(&i) as u16)).collect();
        Ok(GfTable { spec, order, add, mul, neg, inv })
    }

    pub fn prime(p: u32) -> Result<Self> {
        GfTable::new(FieldSpec::prime(p)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn to_element(&self, a: u16) -> FieldElement {
        self.spec.element_at(a as u64)
    }

    pub fn from_element(&self, a: &FieldElement) -> Result<u16> {
        if self.spec.contains(a) {
            Ok(self.spec.index_of(a) as u16)
        } else {
            Err(Error::ForeignElement)
        }
    }
}

impl FieldOps for GfTable {
    type Elem = u16;

    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        1
    }
    fn is_zero(&self, a: &u16) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u16) -> bool {
        *a == 1
    }
    fn add(&self, a: &u16, b: &u16) -> u16 {
        self.add[*a as usize * self.order + *b as usize]
    }
    fn sub(&self, a: &u16, b: &u16) -> u16 {
        self.add(a, &self.neg[*b as usize])
    }
    fn neg(&self, a: &u16) -> u16 {
        self.neg[*a as usize]
    }
    fn mul(&self, a: &u16, b: &u16) -> u16 {
        self.mul[*a as usize * self.order + *b as usize]
    }
    fn inv(&self, a: &u16) -> Option<u16> {
        (*a != 0).then(|| self.inv[*a as usize])
    }
}

impl FiniteField for GfTable {
    fn order(&self) -> u64 {
        self.order as u64
    }
    fn element(&self, index: u64) -> u16 {
        index as u16
    }
    fn index_of(&self, a: &u16) -> u64 {
        *a as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_tower_arithmetic() {
        let spec = FieldSpec::prime_power(3, &[2, 2, 1]).unwrap();
        let t = GfTable::new(spec.clone()).unwrap();
        assert_eq!(t.order(), 9);
        for a in 0..9u16 {
            for b in 0..9u16 {
                let (ea, eb) = (t.to_element(a), t.to_element(b));
                assert_eq!(t.to_element(t.mul(&a, &b)), spec.mul(&ea, &eb));
                assert_eq!(t.to_element(t.sub(&a, &b)), spec.sub(&ea, &eb));
            }
            if a != 0 {
                assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn oversized_field_rejected() {
        let spec = FieldSpec::prime(2003).unwrap();
        assert!(matches!(GfTable::new(spec), Err(Error::FieldTooLarge(_))));
    }
}

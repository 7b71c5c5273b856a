use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{poly_gcd, poly_inverse_mod, poly_powmod, poly_sub, trim};
use super::{is_prime, FieldOps, Polynomial};
use crate::error::{Error, Result};

/// An element of a [`FieldSpec`], as its flattened prime-field coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<u32>);

impl FieldElement {
    /// Wraps raw flattened coefficients. Use [`FieldSpec::element`] for a
    /// checked constructor.
    pub fn from_coefficients(coefficients: Vec<u32>) -> Self {
        FieldElement(coefficients)
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `GF(p)` followed by a tower of simple algebraic extensions.
///
/// Level 0 is the prime field; level `l` is level `l - 1` with a root of
/// the `l`-th tower polynomial adjoined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
    /// `moduli[l]` adjoins level `l + 1`: monic, ascending, each coefficient
    /// a flattened element of level `l`.
    moduli: Vec<Vec<Vec<u32>>>,
    /// `widths[l]` is the number of prime coefficients of a level-`l` element.
    widths: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(FieldSpec { characteristic: p, moduli: Vec::new(), widths: vec![1] })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Number of extension levels above the prime field.
    pub fn depth(&self) -> usize {
        self.moduli.len()
    }

    /// Degree of the whole tower over the prime field.
    pub fn absolute_degree(&self) -> usize {
        *self.widths.last().unwrap()
    }

    /// Degree of level `level` over level `level - 1` (`level >= 1`).
    pub fn level_degree(&self, level: usize) -> usize {
        self.moduli[level - 1].len() - 1
    }

    /// Field order, when it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.characteristic as u64).checked_pow(self.absolute_degree() as u32)
    }

    /// The tower polynomial that adjoins level `level` (`1..=depth`), as a
    /// polynomial over the field of `level - 1` levels.
    pub fn modulus(&self, level: usize) -> Polynomial {
        Polynomial::new(self.moduli[level - 1].iter().cloned().map(FieldElement).collect())
    }

    /// The sub-tower consisting of the first `levels` levels.
    pub fn subfield(&self, levels: usize) -> FieldSpec {
        FieldSpec {
            characteristic: self.characteristic,
            moduli: self.moduli[..levels].to_vec(),
            widths: self.widths[..=levels].to_vec(),
        }
    }

    pub fn is_prefix_of(&self, other: &FieldSpec) -> bool {
        self.characteristic == other.characteristic
            && self.depth() <= other.depth()
            && other.moduli[..self.depth()] == self.moduli[..]
    }

    /// Adjoins a root of `poly`, which must be monic and irreducible over
    /// this field.
    pub fn extend(&self, poly: &Polynomial) -> Result<FieldSpec> {
        let coeffs = poly.coefficients();
        if coeffs.len() < 2 {
            return Err(Error::BadModulus("degree must be at least 1"));
        }
        for c in coeffs {
            if !self.contains(c) {
                return Err(Error::ForeignElement);
            }
        }
        if *coeffs.last().unwrap() != self.one() {
            return Err(Error::BadModulus("polynomial is not monic"));
        }
        if !is_irreducible(self, coeffs) {
            return Err(Error::BadModulus("polynomial is reducible"));
        }
        Ok(self.extend_unchecked(coeffs))
    }

    pub(crate) fn extend_unchecked(&self, coeffs: &[FieldElement]) -> FieldSpec {
        let mut out = self.clone();
        let degree = coeffs.len() - 1;
        out.moduli.push(coeffs.iter().map(|c| c.0.clone()).collect());
        out.widths.push(self.absolute_degree() * degree);
        out
    }

    /// `GF(p^k)` from the ascending coefficients of a monic irreducible
    /// polynomial of degree `k` over `GF(p)`.
    pub fn prime_power(p: u32, coefficients: &[u32]) -> Result<FieldSpec> {
        let base = FieldSpec::prime(p)?;
        let poly = Polynomial::new(coefficients.iter().map(|&c| base.element(vec![c])).collect::<Result<Vec<_>>>()?);
        base.extend(&poly)
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.0.len() == self.absolute_degree() && a.0.iter().all(|&c| c < self.characteristic)
    }

    /// Checked element constructor from flattened coefficients.
    pub fn element(&self, coefficients: Vec<u32>) -> Result<FieldElement> {
        let e = FieldElement(coefficients);
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(Error::ForeignElement)
        }
    }

    pub fn from_int(&self, c: u32) -> FieldElement {
        let mut v = vec![0; self.absolute_degree()];
        v[0] = c % self.characteristic;
        FieldElement(v)
    }

    /// The root adjoined at `level` (`1..=depth`), embedded in the top field.
    pub fn generator(&self, level: usize) -> FieldElement {
        let mut v = vec![0; self.absolute_degree()];
        v[self.widths[level - 1]] = 1;
        FieldElement(v)
    }

    /// Index of an element in base-`p` little-endian digit order.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let p = self.characteristic as u64;
        a.0.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64)
    }

    pub fn element_at(&self, mut index: u64) -> FieldElement {
        let p = self.characteristic as u64;
        let mut v = Vec::with_capacity(self.absolute_degree());
        for _ in 0..self.absolute_degree() {
            v.push((index % p) as u32);
            index /= p;
        }
        FieldElement(v)
    }

    /// Checked arithmetic: operands must belong to this field and `Inv`
    /// rejects zero.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
        if !self.contains(a) || b.is_some_and(|b| !self.contains(b)) {
            return Err(Error::ForeignElement);
        }
        let rhs = || b.ok_or(Error::Usage("binary operation needs two operands".into()));
        Ok(match op {
            ArithOp::Add => self.add(a, rhs()?),
            ArithOp::Sub => self.sub(a, rhs()?),
            ArithOp::Mul => self.mul(a, rhs()?),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a).ok_or(Error::DivisionByZero)?,
        })
    }

    fn at_level(&self, level: usize) -> Level<'_> {
        Level { spec: self, level }
    }

    fn add_raw(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let p = self.characteristic;
        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
            let s = x + y;
            *o = if s >= p { s - p } else { s };
        }
    }

    fn sub_assign_raw(&self, acc: &mut [u32], b: &[u32]) {
        let p = self.characteristic;
        for (o, &y) in acc.iter_mut().zip(b) {
            *o = if *o >= y { *o - y } else { *o + p - y };
        }
    }

    fn add_assign_raw(&self, acc: &mut [u32], b: &[u32]) {
        let p = self.characteristic;
        for (o, &y) in acc.iter_mut().zip(b) {
            let s = *o + y;
            *o = if s >= p { s - p } else { s };
        }
    }

    fn mul_raw(&self, level: usize, a: &[u32], b: &[u32], out: &mut [u32]) {
        if level == 0 {
            out[0] = ((a[0] as u64 * b[0] as u64) % self.characteristic as u64) as u32;
            return;
        }
        let w = self.widths[level - 1];
        let modulus = &self.moduli[level - 1];
        let d = modulus.len() - 1;
        let mut prod = vec![0u32; (2 * d - 1) * w];
        let mut tmp = vec![0u32; w];
        for i in 0..d {
            let ai = &a[i * w..(i + 1) * w];
            if is_zero_raw(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * w..(j + 1) * w];
                if is_zero_raw(bj) {
                    continue;
                }
                self.mul_raw(level - 1, ai, bj, &mut tmp);
                self.add_assign_raw(&mut prod[(i + j) * w..(i + j + 1) * w], &tmp);
            }
        }
        let mut c = vec![0u32; w];
        for k in (d..2 * d - 1).rev() {
            c.copy_from_slice(&prod[k * w..(k + 1) * w]);
            if is_zero_raw(&c) {
                continue;
            }
            for (i, mi) in modulus[..d].iter().enumerate() {
                if is_zero_raw(mi) {
                    continue;
                }
                self.mul_raw(level - 1, &c, mi, &mut tmp);
                self.sub_assign_raw(&mut prod[(k - d + i) * w..(k - d + i + 1) * w], &tmp);
            }
        }
        out.copy_from_slice(&prod[..d * w]);
    }

    fn inv_raw(&self, level: usize, a: &[u32]) -> Option<Vec<u32>> {
        if is_zero_raw(a) {
            return None;
        }
        if level == 0 {
            let p = self.characteristic as u64;
            let mut result = 1u64;
            let mut base = a[0] as u64;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    result = result * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            return Some(vec![result as u32]);
        }
        let below = self.at_level(level - 1);
        let w = self.widths[level - 1];
        let mut poly: Vec<FieldElement> = a.chunks(w).map(|c| FieldElement(c.to_vec())).collect();
        trim(&below, &mut poly);
        let modulus: Vec<FieldElement> = self.moduli[level - 1].iter().cloned().map(FieldElement).collect();
        let inv = poly_inverse_mod(&below, &poly, &modulus)?;
        let mut out = vec![0u32; self.widths[level]];
        for (i, c) in inv.iter().enumerate() {
            out[i * w..(i + 1) * w].copy_from_slice(&c.0);
        }
        Some(out)
    }
}

fn is_zero_raw(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Arithmetic restricted to one level of a tower.
struct Level<'a> {
    spec: &'a FieldSpec,
    level: usize,
}

impl Level<'_> {
    fn width(&self) -> usize {
        self.spec.widths[self.level]
    }
}

impl FieldOps for Level<'_> {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.width()])
    }

    fn one(&self) -> FieldElement {
        let mut v = vec![0; self.width()];
        v[0] = 1;
        FieldElement(v)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = vec![0; self.width()];
        self.spec.add_raw(&a.0, &b.0, &mut out);
        FieldElement(out)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = a.0.clone();
        self.spec.sub_assign_raw(&mut out, &b.0);
        FieldElement(out)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.spec.characteristic;
        FieldElement(a.0.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = vec![0; self.width()];
        self.spec.mul_raw(self.level, &a.0, &b.0, &mut out);
        FieldElement(out)
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.spec.inv_raw(self.level, &a.0).map(FieldElement)
    }
}

impl FieldOps for FieldSpec {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.at_level(self.depth()).zero()
    }
    fn one(&self) -> FieldElement {
        self.at_level(self.depth()).one()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.at_level(self.depth()).add(a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.at_level(self.depth()).sub(a, b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.at_level(self.depth()).neg(a)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.at_level(self.depth()).mul(a, b)
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.at_level(self.depth()).inv(a)
    }
}

/// Ben-Or test: a monic `f` of degree `d` over `GF(q)` is irreducible iff
/// `gcd(f, x^(q^i) - x) = 1` for every `1 <= i <= d/2`.
pub(crate) fn is_irreducible(field: &FieldSpec, f: &[FieldElement]) -> bool {
    let top = field.at_level(field.depth());
    let mut f = f.to_vec();
    trim(&top, &mut f);
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    if f[0].is_zero() {
        return false;
    }
    let x = vec![top.zero(), top.one()];
    let p = field.characteristic() as u64;
    let m = field.absolute_degree();
    let mut h = x.clone();
    for _ in 1..=deg / 2 {
        // x^(q^i) by m successive p-th powers, q = p^m
        for _ in 0..m {
            h = poly_powmod(&top, &h, p, &f);
        }
        let g = poly_gcd(&top, &f, &poly_sub(&top, &h, &x));
        if g.len() != 1 {
            return false;
        }
    }
    true
}

const LEXICOGRAPHIC_BUDGET: u64 = 1 << 12;
const FALLBACK_SEED: u64 = 0x6d_6174_7077;

/// A monic irreducible polynomial of degree `degree` over `field`.
///
/// When the field has few enough candidates, they are enumerated with the
/// lower coefficients `(a0, a1, ...)` as a base-`|F|` counter, `a0` least
/// significant and each coefficient in index order, and the first
/// irreducible one is returned. Over larger fields the counter would stall
/// on reducible families (every `x^5 + c` over `GF(3^125)`, say), so the
/// same counter runs over coefficients of the form `a + b*g` with `a, b`
/// in the prime field and `g` the top generator. Sparse coefficients also
/// keep reduction modulo the result cheap. A fixed-seed random search backs
/// up the second phase. All phases are deterministic.
pub fn find_irreducible(field: &FieldSpec, degree: usize) -> Polynomial {
    assert!(degree >= 1, "degree must be positive");
    let top = field.at_level(field.depth());
    let width = field.absolute_degree();
    let p = field.characteristic();
    let monic = |digits: &[Vec<u32>]| -> Vec<FieldElement> {
        let mut candidate: Vec<FieldElement> = digits.iter().cloned().map(FieldElement).collect();
        candidate.push(top.one());
        candidate
    };
    let exhaustive =
        field.order().and_then(|q| q.checked_pow(degree as u32)).is_some_and(|count| count <= LEXICOGRAPHIC_BUDGET);
    let mut digits: Vec<Vec<u32>> = vec![vec![0; width]; degree];
    if exhaustive || field.depth() == 0 {
        loop {
            let candidate = monic(&digits);
            if is_irreducible(field, &candidate) {
                return Polynomial::new(candidate);
            }
            if !increment(&mut digits, p) {
                break;
            }
        }
    } else {
        let g = field.widths[field.depth() - 1];
        let mut sparse: Vec<Vec<u32>> = vec![vec![0; 2]; degree];
        loop {
            for (d, s) in digits.iter_mut().zip(&sparse) {
                d[0] = s[0];
                d[g] = s[1];
            }
            let candidate = monic(&digits);
            if is_irreducible(field, &candidate) {
                return Polynomial::new(candidate);
            }
            if !increment(&mut sparse, p) {
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FALLBACK_SEED);
    loop {
        for c in digits.iter_mut().flatten() {
            *c = rng.gen_range(0..p);
        }
        let candidate = monic(&digits);
        if is_irreducible(field, &candidate) {
            return Polynomial::new(candidate);
        }
    }
}

/// Advances the counter; `false` once it wraps around.
fn increment(digits: &mut [Vec<u32>], p: u32) -> bool {
    for coeff in digits.iter_mut() {
        for c in coeff.iter_mut() {
            *c += 1;
            if *c < p {
                return true;
            }
            *c = 0;
        }
    }
    false
}

/// Canonical inclusion of `a` from `from` into the tower extension `to`.
pub fn embed(a: &FieldElement, from: &FieldSpec, to: &FieldSpec) -> Result<FieldElement> {
    if !from.is_prefix_of(to) {
        return Err(Error::NotSubfield);
    }
    if !from.contains(a) {
        return Err(Error::ForeignElement);
    }
    let mut v = a.0.clone();
    v.resize(to.absolute_degree(), 0);
    Ok(FieldElement(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldSpec {
        FieldSpec::prime_power(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let f2 = FieldSpec::prime(2).unwrap();
        let one = f2.one();
        assert_eq!(f2.add(&one, &one), f2.zero());
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_int(2);
        assert_eq!(f3.mul(&two, &two), f3.one());
        assert!(matches!(FieldSpec::prime(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn gf4_alpha_squared() {
        let f = gf4();
        let alpha = f.generator(1);
        // x^2 = x + 1 modulo x^2 + x + 1
        assert_eq!(f.mul(&alpha, &alpha), f.element(vec![1, 1]).unwrap());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = gf4();
        assert!(matches!(f.arith(ArithOp::Inv, &f.zero(), None), Err(Error::DivisionByZero)));
        let foreign = FieldElement::from_coefficients(vec![1]);
        assert!(matches!(f.arith(ArithOp::Add, &f.one(), Some(&foreign)), Err(Error::ForeignElement)));
    }

    #[test]
    fn small_irreducibles() {
        let f2 = FieldSpec::prime(2).unwrap();
        let coeffs = |p: Polynomial| -> Vec<u32> { p.coefficients().iter().map(|c| c.coefficients()[0]).collect() };
        assert_eq!(coeffs(find_irreducible(&f2, 1)), vec![0, 1]);
        assert_eq!(coeffs(find_irreducible(&f2, 2)), vec![1, 1, 1]);
        assert_eq!(coeffs(find_irreducible(&f2, 3)), vec![1, 1, 0, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(FieldSpec::prime_power(2, &[1, 0, 1]), Err(Error::BadModulus(_))));
        assert!(matches!(FieldSpec::prime_power(2, &[1, 1, 0]), Err(Error::BadModulus(_))));
    }

    #[test]
    fn embedding_into_tower() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f4 = gf4();
        assert_eq!(embed(&f2.one(), &f2, &f4).unwrap(), f4.one());
        assert_eq!(embed(&f2.zero(), &f2, &f4).unwrap(), f4.zero());
        let top = f4.extend(&find_irreducible(&f4, 2)).unwrap();
        let alpha = f4.generator(1);
        let lifted = embed(&alpha, &f4, &top).unwrap();
        assert_eq!(lifted, top.generator(1));
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(embed(&f3.one(), &f3, &f4), Err(Error::NotSubfield)));
    }

    #[test]
    fn tower_inverse_roundtrip() {
        let f4 = gf4();
        let f16 = f4.extend(&find_irreducible(&f4, 2)).unwrap();
        let top = f16.extend(&find_irreducible(&f16, 3)).unwrap();
        assert_eq!(top.order(), Some(1 << 12));
        for i in 1..200u64 {
            let a = top.element_at(i * 17 + 3);
            let inv = top.inv(&a).unwrap();
            assert_eq!(top.mul(&a, &inv), top.one());
        }
    }
}

//! Dense univariate polynomials over a [`FieldOps`] field, coefficients in
//! ascending order with no trailing zeros.

use std::fmt;

use super::{FieldElement, FieldOps, FiniteField};

/// A polynomial over a tower field, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coefficients: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<FieldElement>) -> Self {
        Polynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }

    /// Degree of the polynomial; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn into_coefficients(self) -> Vec<FieldElement> {
        self.coefficients
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coefficients {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub(crate) fn trim<F: FieldOps>(field: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
}

pub(crate) fn poly_sub<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| field.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| field.zero());
        out.push(field.sub(&x, &y));
    }
    trim(field, &mut out);
    out
}

pub(crate) fn poly_mul<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if field.is_zero(y) {
                continue;
            }
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn poly_divrem<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(field, &mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = field.inv(b.last().unwrap()).expect("trimmed leading coefficient");
    let mut quot = vec![field.zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = field.mul(rem.last().unwrap(), &lead_inv);
        for (i, y) in b.iter().enumerate() {
            if !field.is_zero(y) {
                rem[shift + i] = field.sub(&rem[shift + i], &field.mul(&c, y));
            }
        }
        quot[shift] = c;
        trim(field, &mut rem);
    }
    trim(field, &mut quot);
    (quot, rem)
}

pub(crate) fn poly_rem<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    poly_divrem(field, a, b).1
}

pub(crate) fn make_monic<F: FieldOps>(field: &F, p: &mut [F::Elem]) {
    if let Some(lead) = p.last() {
        let inv = field.inv(lead).expect("nonzero leading coefficient");
        for c in p.iter_mut() {
            *c = field.mul(c, &inv);
        }
    }
}

/// Monic greatest common divisor.
pub(crate) fn poly_gcd<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(field, &mut x);
    trim(field, &mut y);
    while !y.is_empty() {
        let r = poly_rem(field, &x, &y);
        x = y;
        y = r;
    }
    make_monic(field, &mut x);
    x
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub(crate) fn poly_inverse_mod<F: FieldOps>(field: &F, a: &[F::Elem], m: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(field, &mut r0);
    trim(field, &mut r1);
    let mut s0: Vec<F::Elem> = Vec::new();
    let mut s1: Vec<F::Elem> = vec![field.one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(field, &r0, &r1);
        let s = poly_sub(field, &s0, &poly_mul(field, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = field.inv(&r0[0])?;
    let mut out: Vec<F::Elem> = s0.iter().map(|x| field.mul(x, &c)).collect();
    trim(field, &mut out);
    Some(poly_rem(field, &out, m))
}

pub(crate) fn poly_mulmod<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    poly_rem(field, &poly_mul(field, a, b), m)
}

pub(crate) fn poly_powmod<F: FieldOps>(field: &F, base: &[F::Elem], mut exp: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut result = vec![field.one()];
    let mut b = poly_rem(field, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mulmod(field, &result, &b, m);
        }
        exp >>= 1;
        if exp > 0 {
            b = poly_mulmod(field, &b, &b, m);
        }
    }
    poly_rem(field, &result, m)
}

/// Irreducibility by exhaustive trial division with every monic polynomial
/// of degree `1..=deg/2`. Only usable for tiny fields; kept as an
/// independent check of the gcd-based test.
pub fn poly_is_irreducible_by_trial_division<F: FiniteField>(field: &F, f: &[F::Elem]) -> bool {
    let deg = f.len() - 1;
    let q = field.order();
    for d in 1..=deg / 2 {
        let count = q.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(field.element(c % q));
                c /= q;
            }
            g.push(field.one());
            if poly_rem(field, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

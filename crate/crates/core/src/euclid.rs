//! Extended gcd, unimodular completion and coprime factorization over
//! Euclidean domains.

use crate::matred::Mat;
use crate::ring::EuclideanDomain;
use crate::{Error, Result};

/// `a*x + b*y = d` with `d` a normalized common divisor of `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate<E> {
    pub a: E,
    pub b: E,
    pub d: E,
    pub x: E,
    pub y: E,
}

impl<E: Clone + PartialEq> BezoutCertificate<E> {
    /// Re-checks every invariant by ring arithmetic.
    pub fn verify<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> bool {
        let lhs = ring.add(&ring.mul(&self.a, &self.x), &ring.mul(&self.b, &self.y));
        lhs == self.d
            && ring.divides(&self.d, &self.a)
            && ring.divides(&self.d, &self.b)
            && ring.is_normalized(&self.d)
    }
}

pub fn extended_gcd<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> BezoutCertificate<D::Elem> {
    if ring.is_zero(a) && ring.is_zero(b) {
        return BezoutCertificate { a: a.clone(), b: b.clone(), d: ring.zero(), x: ring.zero(), y: ring.zero() };
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ring.one(), ring.zero());
    let (mut t0, mut t1) = (ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (q, r) = ring.div_rem(&r0, &r1);
        let s = ring.sub(&s0, &ring.mul(&q, &s1));
        let t = ring.sub(&t0, &ring.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let u = ring.normalizing_unit(&r0);
    BezoutCertificate {
        a: a.clone(),
        b: b.clone(),
        d: ring.mul(&r0, &u),
        x: ring.mul(&s0, &u),
        y: ring.mul(&t0, &u),
    }
}

/// Normalized gcd without coefficients.
pub fn gcd<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> D::Elem {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !ring.is_zero(&r1) {
        let r = ring.div_rem(&r0, &r1).1;
        r0 = std::mem::replace(&mut r1, r);
    }
    ring.normalize(&r0)
}

/// `a` and `b` generate the unit ideal.
pub fn coprime<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> bool {
    ring.is_one(&gcd(ring, a, b))
}

/// Splits `a = r*s` with `r` coprime to `b` and every prime of `s` dividing
/// `b`, by repeatedly moving `gcd(t, b)` from `t` into `s`.
///
/// `a = 0` is returned unsplit as `(0, 1)`.
pub fn coprime_split<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> (D::Elem, D::Elem) {
    let mut t = a.clone();
    let mut s = ring.one();
    if ring.is_zero(&t) {
        return (t, s);
    }
    loop {
        let g = gcd(ring, &t, b);
        if ring.is_unit(&g) || ring.is_zero(&g) {
            return (t, s);
        }
        t = ring.exact_div(&t, &g).expect("gcd divides t");
        s = ring.mul(&s, &g);
    }
}

/// A 2x2 matrix with first column `(u, v)` and determinant one.
pub fn unimodular_completion<D: EuclideanDomain>(ring: &D, u: &D::Elem, v: &D::Elem) -> Result<Mat<D::Elem>> {
    let cert = extended_gcd(ring, u, v);
    if !ring.is_one(&cert.d) {
        return Err(Error::NotCoprime);
    }
    Mat::new(2, 2, vec![u.clone(), ring.neg(&cert.y), v.clone(), cert.x])
}

/// `a = d*a1`, `b = d*b1` with `a1`, `b1` coprime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonDivisorSplit<E> {
    pub a: E,
    pub b: E,
    pub d: E,
    pub a1: E,
    pub b1: E,
    /// Certificate for `(a1, b1)` with `d = 1`.
    pub certificate: BezoutCertificate<E>,
}

impl<E: Clone + PartialEq> CommonDivisorSplit<E> {
    pub fn verify<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> bool {
        let c = &self.certificate;
        ring.mul(&self.d, &self.a1) == self.a
            && ring.mul(&self.d, &self.b1) == self.b
            && c.a == self.a1
            && c.b == self.b1
            && ring.is_one(&c.d)
            && c.verify(ring)
    }
}

/// Divides the gcd out of `(a, b)`. `(0, 0)` factors as `d = 0`, `a1 = 1`, `b1 = 0`.
pub fn split_common_divisor<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> CommonDivisorSplit<D::Elem> {
    let d = gcd(ring, a, b);
    let (a1, b1) = if ring.is_zero(&d) {
        (ring.one(), ring.zero())
    } else {
        (
            ring.exact_div(a, &d).expect("gcd divides a"),
            ring.exact_div(b, &d).expect("gcd divides b"),
        )
    };
    let certificate = extended_gcd(ring, &a1, &b1);
    CommonDivisorSplit { a: a.clone(), b: b.clone(), d, a1, b1, certificate }
}

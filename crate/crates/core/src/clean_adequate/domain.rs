use std::collections::HashMap;

use crate::euclid::{coprime, coprime_split, extended_gcd, gcd, BezoutCertificate};
use crate::report::{Property, PropertyReport, Witness, WitnessKind};
use crate::ring::{EuclideanDomain, FElem, FiniteRing, RingSpec, DEFAULT_MAX_CARD};
use crate::{Error, Result};

use super::is_clean;

/// `a = r s` with `r` coprime to `b` and every prime of `s` dividing `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdequateDecomposition<E> {
    pub a: E,
    pub b: E,
    pub r: E,
    pub s: E,
}

/// `s` divides a power of `b`, i.e. every prime of `s` divides `b`.
pub fn primes_divide<D: EuclideanDomain>(ring: &D, s: &D::Elem, b: &D::Elem) -> bool {
    if ring.is_zero(s) {
        return ring.is_zero(b);
    }
    if ring.is_unit(s) {
        return true;
    }
    // b^m mod s with m at least every prime multiplicity in s.
    let m = ring.multiplicity_bound(s);
    let base = ring.reduce_mod(b, s);
    let mut acc = ring.reduce_mod(&ring.one(), s);
    for _ in 0..m {
        acc = ring.reduce_mod(&ring.mul(&acc, &base), s);
    }
    ring.is_zero(&acc)
}

impl<E: Clone + PartialEq> AdequateDecomposition<E> {
    pub fn verify<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> bool {
        ring.mul(&self.r, &self.s) == self.a && coprime(ring, &self.r, &self.b) && primes_divide(ring, &self.s, &self.b)
    }
}

/// Moves `gcd(t, b)` from `t = a` into `s` until `t` is coprime to `b`.
pub fn adequate_decomposition<D: EuclideanDomain>(
    ring: &D,
    a: &D::Elem,
    b: &D::Elem,
) -> Result<AdequateDecomposition<D::Elem>> {
    if ring.is_zero(a) {
        return Err(Error::ZeroElement);
    }
    let (r, s) = coprime_split(ring, a, b);
    Ok(AdequateDecomposition { a: a.clone(), b: b.clone(), r, s })
}

/// For `c = r s` split against `a` (with `gcd(a, b, c) = 1`, `c != 0`), the
/// shift `l = r` makes `a + l b` coprime to `c`.
pub fn adequate_shift<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem, c: &D::Elem) -> Result<D::Elem> {
    if ring.is_zero(c) {
        return Err(Error::ZeroElement);
    }
    if !ring.is_one(&gcd(ring, a, &gcd(ring, b, c))) {
        return Err(Error::Precondition("gcd(a, b, c) must be 1".into()));
    }
    let d = adequate_decomposition(ring, c, a)?;
    Ok(d.r)
}

/// Idempotent of `R/aR` separating `b` from `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingIdempotent<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub r: E,
    pub s: E,
    /// Representative of the idempotent, reduced modulo `a`.
    pub e: E,
    /// Certificates for `(r, b)`, `(s, c)` and `(r, s)`, each with `d = 1`.
    pub certificates: Vec<BezoutCertificate<E>>,
}

impl<E: Clone + PartialEq> SeparatingIdempotent<E> {
    pub fn verify<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> bool {
        let a = &self.a;
        let pairs = [(&self.r, &self.b), (&self.s, &self.c), (&self.r, &self.s)];
        let certs_ok = self.certificates.len() == 3
            && self.certificates.iter().zip(pairs).all(|(cert, (x, y))| {
                cert.a == *x && cert.b == *y && ring.is_one(&cert.d) && cert.verify(ring)
            });
        let e = &self.e;
        let one_minus_e = ring.sub(&ring.one(), e);
        certs_ok
            && ring.mul(&self.r, &self.s) == *a
            && ring.divides(a, &ring.sub(&ring.mul(e, e), e))
            // e in bR/aR iff gcd(a, b) divides e.
            && ring.divides(&gcd(ring, a, &self.b), e)
            && ring.divides(&gcd(ring, a, &self.c), &one_minus_e)
    }
}

/// Builds `a = r s` with `rR + bR = sR + cR = rR + sR = R`, then
/// `e = s v` from `r u + s v = 1`.
pub fn separating_idempotent<D: EuclideanDomain>(
    ring: &D,
    a: &D::Elem,
    b: &D::Elem,
    c: &D::Elem,
) -> Result<SeparatingIdempotent<D::Elem>> {
    if ring.is_zero(a) {
        return Err(Error::Precondition("a must be nonzero".into()));
    }
    if !ring.is_one(&gcd(ring, a, &gcd(ring, b, c))) {
        return Err(Error::Precondition("gcd(a, b, c) must be 1".into()));
    }
    let split_b = coprime_split(ring, a, b);
    let split_c = {
        let (r2, s2) = coprime_split(ring, a, c);
        (s2, r2)
    };
    for (r, s) in [split_b, split_c] {
        let certificates = vec![extended_gcd(ring, &r, b), extended_gcd(ring, &s, c), extended_gcd(ring, &r, &s)];
        if !certificates.iter().all(|cert| ring.is_one(&cert.d)) {
            continue;
        }
        let e = ring.reduce_mod(&ring.mul(&s, &certificates[2].y), a);
        let w = SeparatingIdempotent { a: a.clone(), b: b.clone(), c: c.clone(), r, s, e, certificates };
        debug_assert!(w.verify(ring));
        return Ok(w);
    }
    Err(Error::NoDecomposition(format!(
        "no coprime split of {} against ({}, {})",
        ring.render(a),
        ring.render(b),
        ring.render(c)
    )))
}

/// Whether `R/aR` is clean, with the quotient it was decided on.
#[derive(Debug)]
pub struct NeatCheck {
    /// `None` when `a` is a unit (vacuously neat, the quotient is trivial).
    pub quotient: Option<FiniteRing>,
    pub report: PropertyReport<FElem>,
}

pub fn is_neat_element<D: EuclideanDomain>(ring: &D, a: &D::Elem) -> Result<NeatCheck> {
    if ring.is_unit(a) {
        let mut report = PropertyReport::new(Property::NeatElement).with_note("units are neat by convention");
        report.checked = 0;
        return Ok(NeatCheck { quotient: None, report });
    }
    let spec: RingSpec = ring.quotient_spec(a)?;
    spec.validate(DEFAULT_MAX_CARD)?;
    let quotient = FiniteRing::new(&spec)?;
    let mut report = is_clean(&quotient);
    report.property = Property::NeatElement;
    let report = report.with_note(format!("clean check of {spec}"));
    Ok(NeatCheck { quotient: Some(quotient), report })
}

/// For each unimodular sample pair, the first `t` (in enumeration order,
/// among `t_bound` candidates) with `a + b t` neat.
pub fn has_neat_range_1<D: EuclideanDomain>(
    ring: &D,
    pairs: &[(D::Elem, D::Elem)],
    t_bound: u64,
) -> Result<PropertyReport<D::Elem>> {
    let mut cache: HashMap<D::Elem, bool> = HashMap::new();
    let mut neat = |x: &D::Elem| -> Result<bool> {
        if ring.is_zero(x) {
            return Ok(false);
        }
        let key = ring.normalize(x);
        if let Some(&v) = cache.get(&key) {
            return Ok(v);
        }
        let v = is_neat_element(ring, &key)?.report.holds;
        cache.insert(key, v);
        Ok(v)
    };
    let mut report = PropertyReport::new(Property::NeatRange1);
    for (a, b) in pairs {
        if !coprime(ring, a, b) {
            continue;
        }
        report.checked += 1;
        let mut found = None;
        for i in 0..t_bound {
            let t = ring.nth_element(i);
            if neat(&ring.add(a, &ring.mul(b, &t)))? {
                found = Some(t);
                break;
            }
        }
        match found {
            Some(t) => report.push_witness(Witness::new(WitnessKind::Neat, vec![a.clone(), b.clone()], vec![t])),
            None => {
                report.fail(vec![a.clone(), b.clone()]);
                break;
            }
        }
    }
    Ok(report.with_note(format!("shifts searched among the first {t_bound} elements")))
}

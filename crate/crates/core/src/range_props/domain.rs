//! Stable-range questions over the Euclidean domains, answered by
//! divisibility and residue selection rather than search.

use crate::euclid::{coprime, coprime_split, extended_gcd, gcd, BezoutCertificate};
use crate::report::{Property, PropertyReport, RangeWitness, Witness, WitnessKind};
use crate::ring::EuclideanDomain;
use crate::{Error, Result};

/// Certificate that `(a, b)` is unimodular but `a + b*l` is never a unit:
/// for every unit `u`, `u - a` leaves a nonzero remainder modulo `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sr1Refutation<E> {
    pub a: E,
    pub b: E,
    pub coprimality: BezoutCertificate<E>,
    /// `(u, (u - a) mod b)` for every unit `u`.
    pub remainders: Vec<(E, E)>,
}

impl<E: Clone + PartialEq> Sr1Refutation<E> {
    pub fn verify<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> bool {
        let units = ring.unit_group();
        self.coprimality.a == self.a
            && self.coprimality.b == self.b
            && ring.is_one(&self.coprimality.d)
            && self.coprimality.verify(ring)
            && !ring.is_zero(&self.b)
            && units.len() == self.remainders.len()
            && units.iter().zip(&self.remainders).all(|(u, (v, r))| {
                u == v && !ring.is_zero(r) && ring.reduce_mod(&ring.sub(u, &self.a), &self.b) == *r
            })
    }
}

#[derive(Debug, Clone)]
pub struct DomainSr1<E> {
    pub report: PropertyReport<E>,
    pub refutation: Option<Sr1Refutation<E>>,
}

/// The shift `l` making `a + b*l` a unit, decided by `b | (u - a)`.
pub fn unit_shift<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> Option<D::Elem> {
    if ring.is_zero(b) {
        return ring.is_unit(a).then(|| ring.zero());
    }
    ring.unit_group().iter().find_map(|u| ring.exact_div(&ring.sub(u, a), b))
}

/// Decides stable range one for a Euclidean domain by scanning unimodular
/// pairs, `b` in enumeration order and then `a`, among the first `bound`
/// elements. Each pair is settled exactly by a divisibility test.
pub fn domain_stable_range_1<D: EuclideanDomain>(ring: &D, bound: u64) -> DomainSr1<D::Elem> {
    let mut report = PropertyReport::new(Property::Sr1);
    for j in 0..bound {
        let b = ring.nth_element(j);
        for i in 0..bound {
            let a = ring.nth_element(i);
            let cert = extended_gcd(ring, &a, &b);
            if !ring.is_one(&cert.d) {
                continue;
            }
            report.checked += 1;
            match unit_shift(ring, &a, &b) {
                Some(l) => report.push_witness(Witness::new(WitnessKind::Sr1, vec![a, b.clone()], vec![l])),
                None => {
                    let remainders = ring
                        .unit_group()
                        .into_iter()
                        .map(|u| {
                            let r = ring.reduce_mod(&ring.sub(&u, &a), &b);
                            (u, r)
                        })
                        .collect();
                    let refutation = Sr1Refutation { a: a.clone(), b: b.clone(), coprimality: cert, remainders };
                    report.fail(vec![a, b]);
                    let report = report.with_note("no unit u with b | (u - a)");
                    return DomainSr1 { report, refutation: Some(refutation) };
                }
            }
        }
    }
    let report = report.with_note(format!("no counterexample among the first {bound} elements"));
    DomainSr1 { report, refutation: None }
}

fn gcd3<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem, c: &D::Elem) -> D::Elem {
    gcd(ring, a, &gcd(ring, b, c))
}

/// `l` with `gcd(a, b + c*l) = 1`, reduced modulo `a`.
///
/// Split `a = r*s` against `b`. Primes of `r` miss `b`, primes of `s` divide
/// `b` and hence miss `c`, so `l = 0 mod r` and `l = 1 mod s` works; with
/// `r*u + s*v = 1` that is `l = r*u`.
pub fn asr1_witness<D: EuclideanDomain>(
    ring: &D,
    a: &D::Elem,
    b: &D::Elem,
    c: &D::Elem,
) -> Result<RangeWitness<D::Elem>> {
    if ring.is_zero(a) {
        return Err(Error::Precondition("a must be nonzero".into()));
    }
    if !ring.is_one(&gcd3(ring, a, b, c)) {
        return Err(Error::Precondition("gcd(a, b, c) must be 1".into()));
    }
    let (r, s) = coprime_split(ring, a, b);
    let crt = extended_gcd(ring, &r, &s);
    debug_assert!(ring.is_one(&crt.d));
    let l = ring.reduce_mod(&ring.mul(&r, &crt.x), a);
    let shifted = ring.add(b, &ring.mul(c, &l));
    if !ring.is_one(&extended_gcd(ring, a, &shifted).d) {
        return Err(Error::NoDecomposition(format!(
            "residue selection failed for ({}, {}, {})",
            ring.render(a),
            ring.render(b),
            ring.render(c)
        )));
    }
    Ok(Witness::new(WitnessKind::Asr1Right, vec![a.clone(), b.clone(), c.clone()], vec![l]))
}

/// `(l, m)` with `gcd(a + c*l, b + c*m) = 1`.
///
/// `l = 0` when `a != 0` (otherwise `l = 1`) keeps `a + c*l` nonzero, then
/// `m` comes from [`asr1_witness`] against `a + c*l`.
pub fn sr2_witness<D: EuclideanDomain>(
    ring: &D,
    a: &D::Elem,
    b: &D::Elem,
    c: &D::Elem,
) -> Result<RangeWitness<D::Elem>> {
    if !ring.is_one(&gcd3(ring, a, b, c)) {
        return Err(Error::Precondition("gcd(a, b, c) must be 1".into()));
    }
    let inputs = vec![a.clone(), b.clone(), c.clone()];
    if ring.is_zero(c) {
        return Ok(Witness::new(WitnessKind::Sr2, inputs, vec![ring.zero(), ring.zero()]));
    }
    let l = if ring.is_zero(a) { ring.one() } else { ring.zero() };
    let shifted = ring.add(a, &ring.mul(c, &l));
    let m = asr1_witness(ring, &shifted, b, c)?.shifts.remove(0);
    Ok(Witness::new(WitnessKind::Sr2, inputs, vec![l, m]))
}

/// Samples the one-element condition for `a`: every `(b, c)` among the
/// first `bound` elements with `gcd(a, b, c) = 1` gets a witness from
/// [`asr1_witness`], rechecked by an extended gcd.
pub fn domain_asr1_element<D: EuclideanDomain>(
    ring: &D,
    a: &D::Elem,
    bound: u64,
) -> Result<PropertyReport<D::Elem>> {
    if ring.is_zero(a) {
        return Err(Error::ZeroElement);
    }
    let mut report = PropertyReport::new(Property::Asr1Element);
    for i in 0..bound {
        let b = ring.nth_element(i);
        for j in 0..bound {
            let c = ring.nth_element(j);
            if !ring.is_one(&gcd3(ring, a, &b, &c)) {
                continue;
            }
            report.checked += 1;
            let w = asr1_witness(ring, a, &b, &c)?;
            if !coprime(ring, a, &ring.add(&b, &ring.mul(&c, &w.shifts[0]))) {
                report.fail(vec![a.clone(), b, c]);
                return Ok(report);
            }
            report.push_witness(w);
        }
    }
    Ok(report.with_note(format!("sampled the first {bound} elements for b and c")))
}

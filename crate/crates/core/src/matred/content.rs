use crate::euclid::gcd;
use crate::ring::{ideal_closure, EuclideanDomain, FElem, FiniteRing, IdealClosure, RingSpec, Side};
use crate::{Error, Result};

use super::Mat;

/// The two-sided ideal generated by the entries of a matrix.
#[derive(Debug, Clone)]
pub enum ContentIdeal<E> {
    /// Over a Euclidean domain: the normalized gcd of the entries.
    Generator(E),
    /// Over a finite ring: the closure itself.
    Closure(IdealClosure),
}

impl<E: PartialEq> PartialEq for ContentIdeal<E> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ContentIdeal::Generator(a), ContentIdeal::Generator(b)) => a == b,
            (ContentIdeal::Closure(a), ContentIdeal::Closure(b)) => a.same_members(b),
            _ => false,
        }
    }
}

/// Normalized gcd of all entries.
pub fn content_ideal<D: EuclideanDomain>(ring: &D, a: &Mat<D::Elem>) -> ContentIdeal<D::Elem> {
    ContentIdeal::Generator(a.entries().iter().fold(ring.zero(), |g, x| gcd(ring, &g, x)))
}

/// `sum R a_ij R` over a finite ring whose elements are scalars. Matrix
/// and triangular rings are rejected: their entries would themselves be
/// matrices.
pub fn content_ideal_finite(ring: &FiniteRing, a: &Mat<FElem>) -> Result<ContentIdeal<FElem>> {
    if has_matrix_entries(ring.spec()) {
        return Err(Error::UnsupportedRing(format!(
            "matrices over {} (entries are themselves matrices)",
            ring.spec()
        )));
    }
    Ok(ContentIdeal::Closure(ideal_closure(ring, Side::TwoSided, a.entries())))
}

fn has_matrix_entries(spec: &RingSpec) -> bool {
    match spec {
        RingSpec::Matrix { .. } | RingSpec::UpperTriangular { .. } => true,
        RingSpec::Product(parts) => parts.iter().any(has_matrix_entries),
        _ => false,
    }
}

/// `R d2 R` is contained in `d1 R` and in `R d1`.
pub fn check_total_divisor(ring: &FiniteRing, d1: FElem, d2: FElem) -> bool {
    let outer = ideal_closure(ring, Side::TwoSided, &[d2]);
    outer.is_subset(&ideal_closure(ring, Side::Right, &[d1]))
        && outer.is_subset(&ideal_closure(ring, Side::Left, &[d1]))
}

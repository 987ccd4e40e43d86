//! Ring abstraction, concrete rings, and ideal-theoretic primitives.
//!
//! Two families of rings are realized:
//!
//! * the Euclidean domains [`Integers`] and [`PolyRing`] (`F_p[x]`), with
//!   exact arbitrary-size arithmetic, and
//! * [`FiniteRing`], a catalog of enumerable (possibly noncommutative) rings
//!   whose elements are dense indices `0..card`.
//!
//! Algorithms are written against the [`Ring`] and [`EuclideanDomain`] traits
//! so the same code runs over both domains.

mod finite;
mod ideal;
mod integer;
mod poly;
mod spec;
mod value;

use std::fmt::Debug;
use std::hash::Hash;

pub use finite::{FElem, FiniteRing, Payload};
pub use ideal::{ideal_closure, Coboundary, IdealClosure, IdealId, IdealLattice, Side};
pub use integer::Integers;
pub use poly::{Poly, PolyRing};
pub use spec::{is_prime, parse_ring_spec, parse_ring_spec_with_bound, RingSpec, DEFAULT_MAX_CARD};
pub use value::{Elem, Op, RingHandle, Value};
pub(crate) use value::parse_int_json;

/// Arithmetic of an associative ring with `1 != 0`.
///
/// Elements are plain values; the ring object carries whatever context the
/// arithmetic needs (a modulus, multiplication tables, ...).
pub trait Ring {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Two-sided invertibility.
    fn is_unit(&self, a: &Self::Elem) -> bool;

    fn is_commutative(&self) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A commutative Euclidean domain with canonical associates.
pub trait EuclideanDomain: Ring {
    /// Euclidean size. The zero element must have the strictly smallest size.
    type Size: Ord + Clone + Debug;

    fn size(&self, a: &Self::Elem) -> Self::Size;

    /// Division with remainder, `a = q*b + r` with `size(r) < size(b)`.
    ///
    /// Panics if `b` is zero.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A unit `u` such that `a*u` is the canonical associate of `a`
    /// (non-negative integer, monic polynomial). Returns one for zero.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn unit_inverse(&self, u: &Self::Elem) -> Option<Self::Elem>;

    /// The (finite) unit group.
    fn unit_group(&self) -> Vec<Self::Elem>;

    /// An upper bound on the exponent of any prime dividing the nonzero `a`.
    fn multiplicity_bound(&self, a: &Self::Elem) -> u64;

    /// Canonical representative of `a` modulo the nonzero element `m`:
    /// least non-negative residue for integers, remainder for polynomials.
    fn reduce_mod(&self, a: &Self::Elem, m: &Self::Elem) -> Self::Elem;

    /// Enumeration of the domain: a bijection from `0..` onto the elements,
    /// listing small elements first.
    fn nth_element(&self, i: u64) -> Self::Elem;

    /// Canonical finite quotient `R/aR` for a nonzero non-unit `a`.
    fn quotient_spec(&self, a: &Self::Elem) -> crate::Result<RingSpec>;

    /// Image of `x` in the quotient built from [`EuclideanDomain::quotient_spec`].
    fn to_quotient(&self, modulus: &Self::Elem, ring: &FiniteRing, x: &Self::Elem) -> FElem;

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.normalizing_unit(a))
    }

    fn is_normalized(&self, a: &Self::Elem) -> bool {
        self.normalize(a) == *a
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    /// `a / d` when `d` divides `a`.
    fn exact_div(&self, a: &Self::Elem, d: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(d) {
            return self.is_zero(a).then(|| self.zero());
        }
        let (q, r) = self.div_rem(a, d);
        self.is_zero(&r).then_some(q)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Human-readable rendering, used in reports and error messages.
    fn render(&self, a: &Self::Elem) -> String;

    /// Machine-readable rendering (decimal string or coefficient array).
    fn to_json(&self, a: &Self::Elem) -> serde_json::Value;

    fn spec(&self) -> RingSpec;
}

use std::collections::HashMap;

use rayon::prelude::*;

use crate::range_props::WitnessVerifier;
use crate::report::{Property, PropertyReport, Witness, WitnessKind};
use crate::ring::{FElem, FiniteRing, IdealId, Ring, Side};
use crate::{Error, Result};

/// `a = e + u` with `e` idempotent and `u` a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CleanDecomposition {
    pub a: FElem,
    pub e: FElem,
    pub u: FElem,
}

/// First decomposition in ascending idempotent order.
pub fn clean_decompose(ring: &FiniteRing, a: FElem) -> Result<CleanDecomposition> {
    ring.idempotents()
        .iter()
        .map(|&e| (e, ring.sub_elem(a, e)))
        .find(|(_, u)| ring.is_unit(u))
        .map(|(e, u)| CleanDecomposition { a, e, u })
        .ok_or_else(|| Error::NotClean(ring.render(a)))
}

pub fn is_clean(ring: &FiniteRing) -> PropertyReport<FElem> {
    let mut report = PropertyReport::new(Property::Clean);
    for a in ring.elements() {
        report.checked += 1;
        match clean_decompose(ring, a) {
            Ok(d) => report.push_witness(Witness::new(WitnessKind::Clean, vec![a], vec![d.e, d.u])),
            Err(_) => {
                report.fail(vec![a]);
                break;
            }
        }
    }
    report
}

/// Every `a` has an idempotent `e` in `aR` with `1 - e` in `(1 - a)R`.
pub fn is_exchange(ring: &FiniteRing) -> PropertyReport<FElem> {
    let lat = ring.lattice(Side::Right);
    let one = ring.one();
    let mut report = PropertyReport::new(Property::Exchange);
    for a in ring.elements() {
        report.checked += 1;
        let (ar, br) = (lat.principal(a), lat.principal(ring.sub_elem(one, a)));
        let found = ring
            .idempotents()
            .iter()
            .copied()
            .find(|&e| lat.contains(ar, e) && lat.contains(br, ring.sub_elem(one, e)));
        match found {
            Some(e) => report.push_witness(Witness::new(WitnessKind::Exchange, vec![a], vec![e])),
            None => {
                report.fail(vec![a]);
                break;
            }
        }
    }
    report
}

/// Adequacy tables over the two-sided lattice of a ring with the
/// D-property, where every `RxR` equals `x*R` for a common generator, so all
/// conditions become statements about two-sided ideals.
struct Adequacy<'r> {
    ring: &'r FiniteRing,
    principal_ids: Vec<IdealId>,
    /// `bad[s][b]`: some proper principal two-sided ideal containing ideal
    /// `s` is comaximal with ideal `b`.
    bad: HashMap<(IdealId, IdealId), bool>,
}

impl<'r> Adequacy<'r> {
    fn new(ring: &'r FiniteRing) -> Self {
        let two = ring.lattice(Side::TwoSided);
        let mut principal_ids: Vec<IdealId> = ring.elements().map(|x| two.principal(x)).collect();
        principal_ids.sort_unstable();
        principal_ids.dedup();
        Adequacy { ring, principal_ids, bad: HashMap::new() }
    }

    /// No proper principal divisor of `s` is comaximal with `b`.
    fn divisors_meet(&mut self, s: IdealId, b: IdealId) -> bool {
        let two = self.ring.lattice(Side::TwoSided);
        let ids = &self.principal_ids;
        !*self.bad.entry((s, b)).or_insert_with(|| {
            ids.iter().any(|&j| j != two.unit() && two.is_subset(s, j) && two.sum(j, b) == two.unit())
        })
    }

    /// First `(r, s)` with `a = r s`, `RrR + RbR = R` and no proper divisor of `s` comaximal with `b`.
    fn split(&mut self, factorizations: &[(FElem, FElem)], b: FElem) -> Option<(FElem, FElem)> {
        let two = self.ring.lattice(Side::TwoSided);
        let bid = two.principal(b);
        for &(r, s) in factorizations {
            if two.sum(two.principal(r), bid) == two.unit() && self.divisors_meet(two.principal(s), bid) {
                return Some((r, s));
            }
        }
        None
    }
}

fn factorizations(ring: &FiniteRing, a: FElem) -> Vec<(FElem, FElem)> {
    ring.elements()
        .flat_map(|r| ring.elements().map(move |s| (r, s)))
        .filter(|&(r, s)| ring.mul_elem(r, s) == a)
        .collect()
}

fn require_d_property(ring: &FiniteRing) -> Result<()> {
    if ring.has_d_property().holds {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} lacks the D-property", ring.spec())))
    }
}

fn element_report(ring: &FiniteRing, a: FElem, table: &mut Adequacy<'_>) -> PropertyReport<FElem> {
    let mut report = PropertyReport::new(Property::DAdequateElement);
    let facts = factorizations(ring, a);
    for b in ring.elements() {
        report.checked += 1;
        match table.split(&facts, b) {
            Some((r, s)) => report.push_witness(Witness::new(WitnessKind::DAdequate, vec![a, b], vec![r, s])),
            None => {
                report.fail(vec![a, b]);
                break;
            }
        }
    }
    report
}

/// For every `b`: some `a = r s` with `RrR + RbR = R` and every proper
/// principal two-sided ideal containing `RsR` not comaximal with `RbR`.
pub fn is_d_adequate_element(ring: &FiniteRing, a: FElem) -> Result<PropertyReport<FElem>> {
    if a == FElem(0) {
        return Err(Error::ZeroElement);
    }
    require_d_property(ring)?;
    let two = ring.lattice(Side::TwoSided);
    if two.principal(a) == two.unit() {
        return Err(Error::Precondition("RaR = R; adequacy concerns proper two-sided ideals".into()));
    }
    Ok(element_report(ring, a, &mut Adequacy::new(ring)))
}

/// Every nonzero `a` with `RaR != R` is D-adequate.
pub fn is_d_adequate_ring(ring: &FiniteRing) -> Result<PropertyReport<FElem>> {
    require_d_property(ring)?;
    let two = ring.lattice(Side::TwoSided);
    let candidates: Vec<FElem> = ring.nonzero().filter(|&a| two.principal(a) != two.unit()).collect();
    let per_a: Vec<PropertyReport<FElem>> =
        candidates.par_iter().map(|&a| element_report(ring, a, &mut Adequacy::new(ring))).collect();
    let mut report = PropertyReport::new(Property::DAdequate);
    for r in per_a {
        report.checked += r.checked;
        if let Some(c) = r.counterexample {
            report.fail(c);
            return Ok(report);
        }
        for w in r.witnesses {
            report.push_witness(w);
        }
    }
    Ok(report)
}

/// Re-checks an adequacy split through direct closures.
pub fn verify_d_adequate(v: &WitnessVerifier<'_>, a: FElem, b: FElem, r: FElem, s: FElem) -> bool {
    let ring = v.ring();
    if ring.mul_elem(r, s) != a {
        return false;
    }
    let has_generator = |x: FElem| {
        let target = v.principal(Side::TwoSided, x);
        target.ones().map(|i| FElem(i as u32)).any(|g| {
            *v.principal(Side::Right, g) == *target && *v.principal(Side::Left, g) == *target
        })
    };
    if ![r, s, b].into_iter().all(has_generator) || !v.unimodular(Side::TwoSided, &[r, b]) {
        return false;
    }
    let rs = v.principal(Side::TwoSided, s);
    ring.elements().all(|d| {
        let rd = v.principal(Side::TwoSided, d);
        !rs.is_subset(&rd) || v.unimodular(Side::TwoSided, &[d]) || !v.unimodular(Side::TwoSided, &[d, b])
    })
}

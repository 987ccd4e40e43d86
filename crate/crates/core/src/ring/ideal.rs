use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{FElem, FiniteRing};
use crate::report::{Property, PropertyReport, Witness, WitnessKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Right,
    Left,
    TwoSided,
}

/// The smallest right, left, or two-sided ideal containing a generator set.
#[derive(Debug, Clone)]
pub struct IdealClosure {
    pub side: Side,
    pub generators: Vec<FElem>,
    members: FixedBitSet,
    list: Vec<FElem>,
    basis: Vec<FElem>,
    contains_one: bool,
}

impl IdealClosure {
    pub fn contains(&self, x: FElem) -> bool {
        self.members.contains(x.index())
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members in ascending index order.
    pub fn members(&self) -> &[FElem] {
        &self.list
    }

    pub fn member_set(&self) -> &FixedBitSet {
        &self.members
    }

    /// Additive generators of the ideal.
    pub fn basis(&self) -> &[FElem] {
        &self.basis
    }

    pub fn is_subset(&self, other: &IdealClosure) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn same_members(&self, other: &IdealClosure) -> bool {
        self.members == other.members
    }
}

struct Span {
    members: FixedBitSet,
    list: Vec<FElem>,
    basis: Vec<FElem>,
}

/// Additive span of `gens`, additionally closed under multiplication by the
/// ring on the given side (`None` for the plain additive subgroup).
///
/// Only additive generators of the growing subgroup are multiplied, and only
/// by additive generators of the ring; distributivity makes that enough.
fn span(ring: &FiniteRing, side: Option<Side>, gens: &[FElem]) -> Span {
    let mut members = FixedBitSet::with_capacity(ring.card());
    members.insert(0);
    let mut list = vec![FElem(0)];
    let mut basis = Vec::new();
    let mut queue: Vec<FElem> = gens.iter().rev().copied().collect();
    while let Some(x) = queue.pop() {
        if members.contains(x.index()) {
            continue;
        }
        // S + <x> is the union of the cosets S + j*x for j below the first
        // multiple of x that lands in S.
        let base_len = list.len();
        let mut multiple = x;
        while !members.contains(multiple.index()) {
            for i in 0..base_len {
                let y = ring.add_elem(list[i], multiple);
                members.insert(y.index());
                list.push(y);
            }
            multiple = ring.add_elem(multiple, x);
        }
        basis.push(x);
        for &g in ring.additive_gens() {
            match side {
                Some(Side::Right) => queue.push(ring.mul_elem(x, g)),
                Some(Side::Left) => queue.push(ring.mul_elem(g, x)),
                Some(Side::TwoSided) => {
                    queue.push(ring.mul_elem(x, g));
                    queue.push(ring.mul_elem(g, x));
                }
                None => {}
            }
        }
    }
    list.sort_unstable();
    Span { members, list, basis }
}

pub fn ideal_closure(ring: &FiniteRing, side: Side, generators: &[FElem]) -> IdealClosure {
    let Span { members, list, basis } = span(ring, Some(side), generators);
    let contains_one = members.contains(ring.one_elem().index());
    IdealClosure { side, generators: generators.to_vec(), members, list, basis, contains_one }
}

pub type IdealId = u32;

struct IdealData {
    members: FixedBitSet,
    basis: Vec<FElem>,
    size: usize,
}

/// All ideals of one side that are finite sums of principal ones, with a
/// dense sum table.
///
/// Every checker that asks "do these elements generate the unit ideal" runs
/// through [`IdealLattice::principal`] and [`IdealLattice::sum`], which turns
/// each such question into table lookups.
pub struct IdealLattice {
    side: Side,
    principal: Vec<IdealId>,
    ideals: Vec<IdealData>,
    sums: Vec<IdealId>,
    generators: Vec<Option<FElem>>,
    unit: IdealId,
}

impl IdealLattice {
    pub(crate) fn build(ring: &FiniteRing, side: Side) -> Self {
        let mut index: HashMap<FixedBitSet, IdealId> = HashMap::new();
        let mut ideals: Vec<IdealData> = Vec::new();
        let mut intern = |s: Span, ideals: &mut Vec<IdealData>| -> IdealId {
            if let Some(&id) = index.get(&s.members) {
                return id;
            }
            let id = ideals.len() as IdealId;
            index.insert(s.members.clone(), id);
            ideals.push(IdealData { size: s.list.len(), members: s.members, basis: s.basis });
            id
        };
        let mut principal = Vec::with_capacity(ring.card());
        for x in ring.elements() {
            let id = intern(span(ring, Some(side), &[x]), &mut ideals);
            principal.push(id);
        }
        let mut generators = vec![None; ideals.len()];
        for x in ring.elements() {
            let slot = &mut generators[principal[x.index()] as usize];
            if slot.is_none() {
                *slot = Some(x);
            }
        }
        // Close under sums; sums of ideals of one side are ideals of that side.
        let mut pair_sums: HashMap<(IdealId, IdealId), IdealId> = HashMap::new();
        let mut i = 0;
        while i < ideals.len() {
            for j in 0..=i {
                let mut gens = ideals[i].basis.clone();
                gens.extend_from_slice(&ideals[j].basis);
                let id = intern(span(ring, None, &gens), &mut ideals);
                pair_sums.insert((i as IdealId, j as IdealId), id);
            }
            i += 1;
        }
        generators.resize(ideals.len(), None);
        let n = ideals.len();
        let mut sums = vec![0; n * n];
        for (&(a, b), &s) in &pair_sums {
            sums[a as usize * n + b as usize] = s;
            sums[b as usize * n + a as usize] = s;
        }
        let unit = principal[ring.one_elem().index()];
        IdealLattice { side, principal, ideals, sums, generators, unit }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Number of distinct ideals recorded.
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    #[inline]
    pub fn principal(&self, x: FElem) -> IdealId {
        self.principal[x.index()]
    }

    #[inline]
    pub fn sum(&self, a: IdealId, b: IdealId) -> IdealId {
        self.sums[a as usize * self.ideals.len() + b as usize]
    }

    pub fn unit(&self) -> IdealId {
        self.unit
    }

    /// Whether the given elements generate the unit ideal.
    pub fn generates_unit(&self, xs: &[FElem]) -> bool {
        let mut acc = self.principal(FElem(0));
        for &x in xs {
            acc = self.sum(acc, self.principal(x));
        }
        acc == self.unit
    }

    pub fn members(&self, id: IdealId) -> &FixedBitSet {
        &self.ideals[id as usize].members
    }

    pub fn size(&self, id: IdealId) -> usize {
        self.ideals[id as usize].size
    }

    pub fn contains(&self, id: IdealId, x: FElem) -> bool {
        self.ideals[id as usize].members.contains(x.index())
    }

    pub fn is_subset(&self, a: IdealId, b: IdealId) -> bool {
        self.ideals[a as usize].members.is_subset(&self.ideals[b as usize].members)
    }

    /// The smallest-index generator of a principal ideal.
    pub fn generator(&self, id: IdealId) -> Option<FElem> {
        self.generators[id as usize]
    }

    /// Every ideal in the lattice is principal, i.e. the ring is Bezout on
    /// this side (all finitely generated one-sided ideals are principal).
    pub fn all_principal(&self) -> bool {
        self.generators.iter().all(Option::is_some)
    }
}

/// Result of looking for a common generator `b` with `RaR = bR = Rb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coboundary {
    pub element: FElem,
    pub principal: bool,
    pub generator: Option<FElem>,
}

impl FiniteRing {
    pub(crate) fn one_elem(&self) -> FElem {
        <FiniteRing as super::Ring>::one(self)
    }

    /// Searches `RaR` for `b` with `RaR = bR = Rb`. Candidates are tried in
    /// the order `a`, `1` (when `RaR = R`), then ascending members.
    pub fn coboundary(&self, a: FElem) -> Coboundary {
        let two = self.lattice(Side::TwoSided);
        let right = self.lattice(Side::Right);
        let left = self.lattice(Side::Left);
        let target = two.members(two.principal(a));
        let works = |b: FElem| {
            right.members(right.principal(b)) == target && left.members(left.principal(b)) == target
        };
        let one = self.one_elem();
        let mut candidates = vec![a];
        if target.contains(one.index()) {
            candidates.push(one);
        }
        let generator = candidates
            .into_iter()
            .chain(target.ones().map(|i| FElem(i as u32)))
            .find(|&b| works(b));
        Coboundary { element: a, principal: generator.is_some(), generator }
    }

    /// Every nonzero `a` has a common generator `b` with `RaR = bR = Rb`.
    pub fn has_d_property(&self) -> PropertyReport<FElem> {
        let mut report = PropertyReport::new(Property::DProperty);
        for a in self.nonzero() {
            report.checked += 1;
            let cb = self.coboundary(a);
            match cb.generator {
                Some(b) => report.push_witness(Witness::new(WitnessKind::Coboundary, vec![a], vec![b])),
                None => {
                    report.fail(vec![a]);
                    return report;
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_ring_spec, Ring};

    fn ring(text: &str) -> FiniteRing {
        FiniteRing::new(&parse_ring_spec(text).unwrap()).unwrap()
    }

    /// Brute-force closure straight from the definition: iterate
    /// "add all sums and all products with ring elements" to a fixed point.
    fn naive_closure(r: &FiniteRing, side: Side, gens: &[FElem]) -> Vec<FElem> {
        let mut set: std::collections::BTreeSet<FElem> = gens.iter().copied().collect();
        set.insert(FElem(0));
        loop {
            let cur: Vec<FElem> = set.iter().copied().collect();
            let mut next = set.clone();
            for &x in &cur {
                for &y in &cur {
                    next.insert(r.add_elem(x, y));
                }
                for s in r.elements() {
                    match side {
                        Side::Right => {
                            next.insert(r.mul_elem(x, s));
                        }
                        Side::Left => {
                            next.insert(r.mul_elem(s, x));
                        }
                        Side::TwoSided => {
                            for t in r.elements() {
                                next.insert(r.mul_elem(r.mul_elem(s, x), t));
                            }
                        }
                    }
                }
            }
            if next == set {
                return cur;
            }
            set = next;
        }
    }

    #[test]
    fn closure_examples() {
        let z6 = ring("Z/6");
        let c = ideal_closure(&z6, Side::Right, &[FElem(2), FElem(3)]);
        assert!(c.contains_one());
        assert_eq!(c.len(), 6);

        let m = ring("M2(Z/2)");
        let e11 = m.matrix_unit(0, 0).unwrap();
        assert_eq!(ideal_closure(&m, Side::TwoSided, &[e11]).len(), 16);
        assert_eq!(ideal_closure(&m, Side::Right, &[e11]).len(), 4);

        let ut = ring("UT2(Z/2)");
        let e12 = ut.matrix_unit(0, 1).unwrap();
        assert_eq!(ideal_closure(&ut, Side::TwoSided, &[e12]).members(), &[FElem(0), e12]);
    }

    #[test]
    fn closure_matches_definition() {
        for text in ["Z/12", "M2(Z/2)", "UT2(Z/3)", "Z/2 x Z/4", "F2[x]/(0,0,1)"] {
            let r = ring(text);
            for side in [Side::Right, Side::Left, Side::TwoSided] {
                for a in r.elements().step_by(3) {
                    let b = FElem(((a.0 as usize * 7 + 1) % r.card()) as u32);
                    let fast = ideal_closure(&r, side, &[a, b]);
                    assert_eq!(fast.members(), naive_closure(&r, side, &[a, b]).as_slice(), "{text} {side:?}");
                }
            }
        }
    }

    #[test]
    fn closure_is_minimal() {
        // Removing any non-generator member breaks closure.
        let r = ring("UT2(Z/2)");
        let gens = [r.matrix_unit(0, 0).unwrap()];
        let c = ideal_closure(&r, Side::Right, &gens);
        for &drop in c.members() {
            if gens.contains(&drop) {
                continue;
            }
            let rest: Vec<FElem> = c.members().iter().copied().filter(|&x| x != drop).collect();
            let closed = rest.iter().all(|&x| {
                rest.iter().all(|&y| rest.contains(&r.add_elem(x, y)))
                    && r.elements().all(|s| rest.contains(&r.mul_elem(x, s)))
            });
            assert!(!closed);
        }
    }

    #[test]
    fn lattice_sums_agree_with_closures() {
        let r = ring("M2(Z/2)");
        let lat = r.lattice(Side::Right);
        for a in r.elements() {
            for b in r.elements() {
                let id = lat.sum(lat.principal(a), lat.principal(b));
                let direct = ideal_closure(&r, Side::Right, &[a, b]);
                assert_eq!(lat.members(id), direct.member_set());
            }
        }
        assert!(lat.all_principal());
    }

    #[test]
    fn upper_triangular_is_not_right_bezout() {
        let r = ring("UT2(Z/2)");
        assert!(!r.lattice(Side::Right).all_principal());
    }

    #[test]
    fn coboundaries() {
        let z6 = ring("Z/6");
        let cb = z6.coboundary(FElem(2));
        assert_eq!(cb.generator, Some(FElem(2)));

        let m = ring("M2(Z/2)");
        let cb = m.coboundary(m.matrix_unit(0, 0).unwrap());
        assert_eq!(cb.generator, Some(m.one()));

        let ut = ring("UT2(Z/2)");
        let e11 = ut.matrix_unit(0, 0).unwrap();
        let cb = ut.coboundary(e11);
        assert!(!cb.principal);
        let ideal = ideal_closure(&ut, Side::TwoSided, &[e11]);
        assert_eq!(ideal.len(), 4);
        // bR matches for b = E11 but every Rb in the ideal is too small.
        assert!(ideal_closure(&ut, Side::Right, &[e11]).same_members(&ideal));
        for &b in ideal.members() {
            assert!(ideal_closure(&ut, Side::Left, &[b]).len() <= 2);
        }
    }

    #[test]
    fn commutative_coboundary_is_the_element() {
        for text in ["Z/12", "Z/2 x Z/9", "F3[x]/(0,1,1)"] {
            let r = ring(text);
            for a in r.elements() {
                assert_eq!(r.coboundary(a).generator, Some(a), "{text}");
            }
        }
    }

    #[test]
    fn d_property_examples() {
        assert!(ring("Z/6").has_d_property().holds);
        assert!(ring("M2(Z/2)").has_d_property().holds);
        let ut = ring("UT2(Z/2)");
        let rep = ut.has_d_property();
        assert!(!rep.holds);
        assert_eq!(rep.counterexample, Some(vec![ut.matrix_unit(0, 0).unwrap()]));
    }
}

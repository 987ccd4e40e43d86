//! Re-checks finite-ring witnesses straight from ideal closures, without the
//! lattice tables the searches use.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use fixedbitset::FixedBitSet;

use crate::report::{Witness, WitnessKind};
use crate::ring::{ideal_closure, FElem, FiniteRing, Ring, Side};

pub struct WitnessVerifier<'r> {
    ring: &'r FiniteRing,
    closures: RefCell<HashMap<(Side, FElem), Rc<FixedBitSet>>>,
    anchors: RefCell<HashMap<(Side, FElem), bool>>,
}

impl<'r> WitnessVerifier<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        WitnessVerifier { ring, closures: RefCell::default(), anchors: RefCell::default() }
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    /// Members of `xR`, `Rx` or `RxR`.
    pub fn principal(&self, side: Side, x: FElem) -> Rc<FixedBitSet> {
        let key = (side, x);
        if let Some(s) = self.closures.borrow().get(&key) {
            return Rc::clone(s);
        }
        let set = Rc::new(ideal_closure(self.ring, side, &[x]).member_set().clone());
        self.closures.borrow_mut().insert(key, Rc::clone(&set));
        set
    }

    fn sum_set(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.ring.card());
        for i in a.ones() {
            for j in b.ones() {
                out.insert(self.ring.add_elem(FElem(i as u32), FElem(j as u32)).index());
            }
        }
        out
    }

    /// `1 = t + s` for some `t` in `set` and `s` in `xR` (resp. `Rx`, `RxR`).
    fn reaches_one(&self, set: &FixedBitSet, side: Side, x: FElem) -> bool {
        let one = self.ring.one();
        self.principal(side, x)
            .ones()
            .any(|i| set.contains(self.ring.sub_elem(one, FElem(i as u32)).index()))
    }

    /// The one-sided (or two-sided) ideal generated by `xs` contains 1.
    pub fn unimodular(&self, side: Side, xs: &[FElem]) -> bool {
        let Some((&last, rest)) = xs.split_last() else { return false };
        let mut acc = FixedBitSet::with_capacity(self.ring.card());
        acc.insert(0);
        for &x in rest {
            acc = self.sum_set(&acc, &self.principal(side, x));
        }
        self.reaches_one(&acc, side, last)
    }

    fn shift(&self, side: Side, c: FElem, l: FElem) -> FElem {
        match side {
            Side::Left => self.ring.mul_elem(l, c),
            _ => self.ring.mul_elem(c, l),
        }
    }

    /// `x` reduces every unimodular `(x, c, d)` by one shift of `c` by `d`.
    pub fn is_anchor(&self, side: Side, x: FElem) -> bool {
        if let Some(&v) = self.anchors.borrow().get(&(side, x)) {
            return v;
        }
        let ring = self.ring;
        let px = self.principal(side, x);
        let comax: Vec<bool> = ring.elements().map(|y| self.reaches_one(&px, side, y)).collect();
        let ok = ring.elements().all(|c| {
            let xc = self.sum_set(&px, &self.principal(side, c));
            ring.elements().all(|d| {
                !self.reaches_one(&xc, side, d)
                    || ring.elements().any(|m| comax[ring.add_elem(c, self.shift(side, d, m)).index()])
            })
        });
        self.anchors.borrow_mut().insert((side, x), ok);
        ok
    }

    pub fn is_unit(&self, u: FElem) -> bool {
        let one = self.ring.one();
        self.ring
            .elements()
            .any(|y| self.ring.mul_elem(u, y) == one && self.ring.mul_elem(y, u) == one)
    }

    fn idempotent(&self, e: FElem) -> bool {
        self.ring.mul_elem(e, e) == e
    }

    /// Re-checks a finite-ring witness. Adequacy witnesses are checked by
    /// [`crate::clean_adequate::verify_d_adequate`].
    pub fn verify(&self, w: &Witness<FElem>) -> bool {
        let ring = self.ring;
        let (i, s) = (&w.inputs, &w.shifts);
        let add = |x, y| ring.add_elem(x, y);
        let mul = |x, y| ring.mul_elem(x, y);
        match (w.kind, i.as_slice(), s.as_slice()) {
            (WitnessKind::Sr1, &[a, b], &[l]) => {
                self.unimodular(Side::Right, &[a, b]) && self.unimodular(Side::Right, &[add(a, mul(b, l))])
            }
            (WitnessKind::Sr2, &[a, b, c], &[l, m]) => {
                self.unimodular(Side::Right, &[a, b, c])
                    && self.unimodular(Side::Right, &[add(a, mul(c, l)), add(b, mul(c, m))])
            }
            (WitnessKind::Asr1Right, &[a, b, c], &[l]) => {
                self.unimodular(Side::Right, &[a, b, c]) && self.unimodular(Side::Right, &[a, add(b, mul(c, l))])
            }
            (WitnessKind::Asr1Left, &[a, b, c], &[m]) => {
                self.unimodular(Side::Left, &[a, b, c]) && self.unimodular(Side::Left, &[a, add(b, mul(m, c))])
            }
            (WitnessKind::Asr1TwoSided, &[a, b, c], &[l]) => {
                c != FElem(0)
                    && self.unimodular(Side::TwoSided, &[a, b, c])
                    && self.unimodular(Side::TwoSided, &[add(mul(l, a), b), c])
            }
            (WitnessKind::Diadem, &[a, b], &[l]) => {
                self.unimodular(Side::Right, &[a, b]) && self.is_anchor(Side::Right, add(a, mul(b, l)))
            }
            (WitnessKind::DiademLeft, &[a, b], &[l]) => {
                self.unimodular(Side::Left, &[a, b]) && self.is_anchor(Side::Left, add(a, mul(l, b)))
            }
            (WitnessKind::Clean, &[a], &[e, u]) => self.idempotent(e) && self.is_unit(u) && add(e, u) == a,
            (WitnessKind::Exchange, &[a], &[e]) => {
                let one = ring.one();
                self.idempotent(e)
                    && self.principal(Side::Right, a).contains(e.index())
                    && self
                        .principal(Side::Right, ring.sub_elem(one, a))
                        .contains(ring.sub_elem(one, e).index())
            }
            (WitnessKind::Coboundary, &[a], &[b]) => {
                let target = self.principal(Side::TwoSided, a);
                *self.principal(Side::Right, b) == *target && *self.principal(Side::Left, b) == *target
            }
            (WitnessKind::DAdequate, &[a, b], &[r, s]) => {
                crate::clean_adequate::verify_d_adequate(self, a, b, r, s)
            }
            _ => false,
        }
    }
}

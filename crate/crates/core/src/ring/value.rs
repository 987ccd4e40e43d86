use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::Value as Json;

use super::{EuclideanDomain, FElem, FiniteRing, Integers, Poly, PolyRing, Ring, RingSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
    Neg,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    Poly(Poly),
    Finite(FElem),
}

/// A ring element tagged with the ring it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    pub ring: RingSpec,
    pub value: Value,
}

/// Realized arithmetic for any [`RingSpec`].
#[derive(Debug, Clone)]
pub enum RingHandle {
    Integers(Integers),
    Poly(PolyRing),
    Finite(Arc<FiniteRing>),
}

impl RingHandle {
    pub fn new(spec: &RingSpec) -> Result<Self> {
        Ok(match spec {
            RingSpec::Integers => RingHandle::Integers(Integers),
            RingSpec::PolyOverPrimeField { p } => RingHandle::Poly(PolyRing::new(*p)?),
            finite => RingHandle::Finite(Arc::new(FiniteRing::new(finite)?)),
        })
    }

    pub fn parse(text: &str, max_card: u64) -> Result<Self> {
        Self::new(&super::parse_ring_spec_with_bound(text, max_card)?)
    }

    pub fn spec(&self) -> RingSpec {
        match self {
            RingHandle::Integers(z) => z.spec(),
            RingHandle::Poly(r) => r.spec(),
            RingHandle::Finite(r) => r.spec().clone(),
        }
    }

    pub fn cardinality(&self) -> Option<usize> {
        match self {
            RingHandle::Finite(r) => Some(r.card()),
            _ => None,
        }
    }

    fn wrap(&self, value: Value) -> Elem {
        Elem { ring: self.spec(), value }
    }

    pub fn elem_from_json(&self, v: &Json) -> Result<Elem> {
        let value = match self {
            RingHandle::Integers(_) => Value::Int(parse_int_json(v)?),
            RingHandle::Poly(r) => Value::Poly(r.parse_json(v)?),
            RingHandle::Finite(r) => Value::Finite(r.parse_json(v)?),
        };
        Ok(self.wrap(value))
    }

    /// Parses command-line element text: decimal integers, polynomial text
    /// or coefficient arrays, or the JSON form of a finite-ring element.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let value = match self {
            RingHandle::Integers(_) => Value::Int(
                text.trim().parse().map_err(|_| Error::InvalidElement(format!("`{text}` is not an integer")))?,
            ),
            RingHandle::Poly(r) => Value::Poly(r.parse_arg(text)?),
            RingHandle::Finite(r) => Value::Finite(r.parse_text(text)?),
        };
        Ok(self.wrap(value))
    }

    pub fn to_json(&self, x: &Elem) -> Result<Json> {
        self.check(x)?;
        Ok(match (self, &x.value) {
            (RingHandle::Integers(z), Value::Int(v)) => z.to_json(v),
            (RingHandle::Poly(r), Value::Poly(v)) => r.to_json(v),
            (RingHandle::Finite(r), Value::Finite(v)) => r.to_json(*v),
            _ => unreachable!("checked"),
        })
    }

    fn check(&self, x: &Elem) -> Result<()> {
        let spec = self.spec();
        let ok = x.ring == spec
            && match (self, &x.value) {
                (RingHandle::Integers(_), Value::Int(_)) => true,
                (RingHandle::Poly(_), Value::Poly(_)) => true,
                (RingHandle::Finite(r), Value::Finite(e)) => r.contains(*e),
                _ => false,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("element of {} used in {spec}", x.ring)))
        }
    }

    /// Ring operation on tagged elements; `y` is required for `Add`/`Mul`
    /// and ignored for `Neg`.
    pub fn arith(&self, op: Op, x: &Elem, y: Option<&Elem>) -> Result<Elem> {
        self.check(x)?;
        if let Some(y) = y {
            self.check(y)?;
        }
        let need_y = || y.ok_or_else(|| Error::Precondition(format!("{op:?} needs two operands")));
        let value = match (self, &x.value) {
            (RingHandle::Integers(z), Value::Int(a)) => Value::Int(binary(z, op, a, need_y, |e| match &e.value {
                Value::Int(v) => v.clone(),
                _ => unreachable!(),
            })?),
            (RingHandle::Poly(r), Value::Poly(a)) => Value::Poly(binary(r, op, a, need_y, |e| match &e.value {
                Value::Poly(v) => v.clone(),
                _ => unreachable!(),
            })?),
            (RingHandle::Finite(r), Value::Finite(a)) => {
                Value::Finite(binary(r.as_ref(), op, a, need_y, |e| match &e.value {
                    Value::Finite(v) => *v,
                    _ => unreachable!(),
                })?)
            }
            _ => unreachable!("checked"),
        };
        Ok(self.wrap(value))
    }

    pub fn is_unit(&self, x: &Elem) -> Result<bool> {
        self.check(x)?;
        Ok(match (self, &x.value) {
            (RingHandle::Integers(z), Value::Int(v)) => z.is_unit(v),
            (RingHandle::Poly(r), Value::Poly(v)) => r.is_unit(v),
            (RingHandle::Finite(r), Value::Finite(v)) => r.is_unit(v),
            _ => unreachable!("checked"),
        })
    }

    /// All units of a finite ring. Infinite rings are answered analytically
    /// in the error message and never enumerated.
    pub fn units(&self) -> Result<Vec<Elem>> {
        match self {
            RingHandle::Integers(_) => Err(Error::InfiniteEnumeration("the units of Z are {1, -1}".into())),
            RingHandle::Poly(r) => Err(Error::InfiniteEnumeration(format!(
                "the units of F{}[x] are the nonzero constants",
                r.characteristic()
            ))),
            RingHandle::Finite(r) => Ok(r.units().iter().map(|&u| self.wrap(Value::Finite(u))).collect()),
        }
    }

    pub fn finite(&self) -> Result<&Arc<FiniteRing>> {
        match self {
            RingHandle::Finite(r) => Ok(r),
            _ => Err(Error::UnsupportedRing(format!("{} is not finite", self.spec()))),
        }
    }

    /// `R/aR` for `R` in {Z, F_p[x]}.
    pub fn quotient_ring(&self, a: &Elem) -> Result<RingSpec> {
        self.check(a)?;
        match (self, &a.value) {
            (RingHandle::Integers(z), Value::Int(v)) => z.quotient_spec(v),
            (RingHandle::Poly(r), Value::Poly(v)) => r.quotient_spec(v),
            _ => Err(Error::UnsupportedRing("quotients are built for Z and F_p[x] only".into())),
        }
    }
}

fn binary<'a, R: Ring>(
    ring: &R,
    op: Op,
    a: &R::Elem,
    need_y: impl Fn() -> Result<&'a Elem>,
    unwrap: impl Fn(&Elem) -> R::Elem,
) -> Result<R::Elem> {
    Ok(match op {
        Op::Neg => ring.neg(a),
        Op::Add => ring.add(a, &unwrap(need_y()?)),
        Op::Mul => ring.mul(a, &unwrap(need_y()?)),
    })
}

pub(crate) fn parse_int_json(v: &Json) -> Result<BigInt> {
    match v {
        Json::String(s) => s.trim().parse().map_err(|_| Error::InvalidElement(format!("`{s}` is not an integer"))),
        Json::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::InvalidElement(format!("{n} is not an integer"))),
        other => Err(Error::InvalidElement(format!("expected an integer, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring_spec;

    fn handle(text: &str) -> RingHandle {
        RingHandle::new(&parse_ring_spec(text).unwrap()).unwrap()
    }

    #[test]
    fn arith_examples() {
        let z6 = handle("Z/6");
        let four = z6.parse_elem("4").unwrap();
        let prod = z6.arith(Op::Mul, &four, Some(&four)).unwrap();
        assert_eq!(z6.to_json(&prod).unwrap(), Json::from(4));

        let f2 = handle("F2[x]");
        let a = f2.parse_elem("x + 1").unwrap();
        let b = f2.parse_elem("x").unwrap();
        let sum = f2.arith(Op::Add, &a, Some(&b)).unwrap();
        assert_eq!(f2.to_json(&sum).unwrap(), serde_json::json!([1]));

        let m = handle("M2(Z/2)");
        let e12 = m.parse_elem("[[0,1],[0,0]]").unwrap();
        let sq = m.arith(Op::Mul, &e12, Some(&e12)).unwrap();
        assert_eq!(m.to_json(&sq).unwrap(), serde_json::json!([[0, 0], [0, 0]]));

        let z = handle("Z");
        let n = z.parse_elem("-7").unwrap();
        let neg = z.arith(Op::Neg, &n, None).unwrap();
        assert_eq!(z.to_json(&neg).unwrap(), Json::String("7".into()));
    }

    #[test]
    fn ring_mismatch() {
        let z6 = handle("Z/6");
        let z4 = handle("Z/4");
        let a = z6.parse_elem("1").unwrap();
        let b = z4.parse_elem("1").unwrap();
        assert!(matches!(z6.arith(Op::Add, &a, Some(&b)), Err(Error::RingMismatch(_))));
        assert!(matches!(z4.is_unit(&a), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn units_of_infinite_rings_are_not_enumerated() {
        assert!(matches!(handle("Z").units(), Err(Error::InfiniteEnumeration(_))));
        assert!(matches!(handle("F3[x]").units(), Err(Error::InfiniteEnumeration(_))));
        assert_eq!(handle("M2(Z/2)").units().unwrap().len(), 6);
        let z = handle("Z");
        assert!(z.is_unit(&z.parse_elem("-1").unwrap()).unwrap());
        assert!(!z.is_unit(&z.parse_elem("2").unwrap()).unwrap());
    }

    #[test]
    fn quotients() {
        let z = handle("Z");
        assert_eq!(z.quotient_ring(&z.parse_elem("6").unwrap()).unwrap(), RingSpec::Residue { n: 6 });
        assert!(matches!(z.quotient_ring(&z.parse_elem("1").unwrap()), Err(Error::Domain(_))));
        let f2 = handle("F2[x]");
        let q = f2.quotient_ring(&f2.parse_elem("x^2 + x + 1").unwrap()).unwrap();
        let ring = FiniteRing::new(&q).unwrap();
        assert_eq!(ring.card(), 4);
        // A field: every nonzero element is a unit.
        assert_eq!(ring.units().len(), 3);
    }
}

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{EuclideanDomain, FElem, FiniteRing, Ring, RingSpec};
use crate::{Error, Result};

/// The ring of integers with arbitrary-precision elements.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

impl EuclideanDomain for Integers {
    type Size = BigUint;

    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        assert!(!b.is_zero(), "division by zero");
        a.div_rem(b)
    }

    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn unit_inverse(&self, u: &BigInt) -> Option<BigInt> {
        self.is_unit(u).then(|| u.clone())
    }

    fn unit_group(&self) -> Vec<BigInt> {
        vec![BigInt::one(), -BigInt::one()]
    }

    fn multiplicity_bound(&self, a: &BigInt) -> u64 {
        a.magnitude().bits()
    }

    fn reduce_mod(&self, a: &BigInt, m: &BigInt) -> BigInt {
        a.mod_floor(&m.abs())
    }

    fn nth_element(&self, i: u64) -> BigInt {
        // 0, 1, -1, 2, -2, ...
        let k = BigInt::from(i.div_ceil(2));
        if i % 2 == 1 {
            k
        } else {
            -k
        }
    }

    fn quotient_spec(&self, a: &BigInt) -> Result<RingSpec> {
        if a.is_zero() {
            return Err(Error::Domain("quotient by zero is infinite".into()));
        }
        if self.is_unit(a) {
            return Err(Error::Domain("quotient by a unit is the zero ring".into()));
        }
        let n = a
            .magnitude()
            .to_u64()
            .ok_or_else(|| Error::Domain(format!("modulus {a} is too large")))?;
        Ok(RingSpec::Residue { n })
    }

    fn to_quotient(&self, modulus: &BigInt, ring: &FiniteRing, x: &BigInt) -> FElem {
        let r = self.reduce_mod(x, modulus);
        ring.from_residue(r.to_u64().expect("residue fits the modulus"))
    }

    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn to_json(&self, a: &BigInt) -> serde_json::Value {
        serde_json::Value::String(a.to_string())
    }

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_alternates_sign() {
        let z = Integers;
        let got: Vec<i64> = (0..6).map(|i| z.nth_element(i).to_i64().unwrap()).collect();
        assert_eq!(got, vec![0, 1, -1, 2, -2, 3]);
    }

    #[test]
    fn normalization_is_non_negative() {
        let z = Integers;
        assert_eq!(z.normalize(&BigInt::from(-7)), BigInt::from(7));
        assert_eq!(z.normalize(&BigInt::from(0)), BigInt::from(0));
        assert_eq!(z.reduce_mod(&BigInt::from(-2), &BigInt::from(6)), BigInt::from(4));
    }

    #[test]
    fn quotient_guards() {
        let z = Integers;
        assert_eq!(z.quotient_spec(&BigInt::from(-6)).unwrap(), RingSpec::Residue { n: 6 });
        assert!(matches!(z.quotient_spec(&BigInt::from(1)), Err(Error::Domain(_))));
        assert!(matches!(z.quotient_spec(&BigInt::from(0)), Err(Error::Domain(_))));
    }
}

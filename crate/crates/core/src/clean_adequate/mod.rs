//! Clean and exchange rings, D-adequacy, neat elements and the adequate
//! decompositions of Euclidean domains.

mod domain;
mod finite;

pub use domain::{
    adequate_decomposition, adequate_shift, has_neat_range_1, is_neat_element, primes_divide, separating_idempotent,
    AdequateDecomposition, NeatCheck, SeparatingIdempotent,
};
pub use finite::{
    clean_decompose, is_clean, is_d_adequate_element, is_d_adequate_ring, is_exchange, verify_d_adequate,
    CleanDecomposition,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::coprime;
    use crate::range_props::WitnessVerifier;
    use crate::ring::{parse_ring_spec, EuclideanDomain, FElem, FiniteRing, Integers, PolyRing, Ring};
    use crate::Error;
    use num_bigint::BigInt;

    fn ring(text: &str) -> FiniteRing {
        FiniteRing::new(&parse_ring_spec(text).unwrap()).unwrap()
    }

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn clean_decompositions() {
        let z6 = ring("Z/6");
        assert_eq!(clean_decompose(&z6, FElem(3)).unwrap(), CleanDecomposition { a: FElem(3), e: FElem(4), u: FElem(5) });
        let d = clean_decompose(&z6, FElem(1)).unwrap();
        assert_eq!((d.e, d.u), (FElem(0), FElem(1)));
        let d = clean_decompose(&ring("Z/4"), FElem(2)).unwrap();
        assert_eq!((d.e, d.u), (FElem(1), FElem(1)));
    }

    #[test]
    fn clean_and_exchange_rings() {
        for text in ["Z/6", "M2(Z/2)", "Z/2", "UT2(Z/2)"] {
            let r = ring(text);
            let v = WitnessVerifier::new(&r);
            let clean = is_clean(&r);
            let exchange = is_exchange(&r);
            assert!(clean.holds && exchange.holds, "{text}");
            assert!(clean.witnesses.iter().chain(&exchange.witnesses).all(|w| v.verify(w)));
        }
    }

    #[test]
    fn neat_elements() {
        let twelve = is_neat_element(&Integers, &z(12)).unwrap();
        assert!(twelve.report.holds);
        assert_eq!(twelve.quotient.unwrap().card(), 12);
        assert!(is_neat_element(&Integers, &z(7)).unwrap().report.holds);
        assert!(is_neat_element(&Integers, &z(1)).unwrap().quotient.is_none());
        let f2 = PolyRing::new(2).unwrap();
        let check = is_neat_element(&f2, &f2.from_coeffs(&[0, 1, 1])).unwrap();
        assert!(check.report.holds);
        assert_eq!(check.quotient.unwrap().card(), 4);
    }

    #[test]
    fn neat_range() {
        let pairs: Vec<_> = [(2, 5), (3, 7), (0, 1), (10, 3)].iter().map(|&(a, b)| (z(a), z(b))).collect();
        let rep = has_neat_range_1(&Integers, &pairs, 8).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.checked, 4);
    }

    #[test]
    fn idempotent_examples() {
        let w = separating_idempotent(&Integers, &z(6), &z(2), &z(3)).unwrap();
        assert_eq!((w.r.clone(), w.s.clone(), w.e.clone()), (z(3), z(2), z(4)));
        assert!(w.verify(&Integers));
        let w = separating_idempotent(&Integers, &z(7), &z(1), &z(1)).unwrap();
        assert_eq!(w.e, z(1));
        assert!(w.verify(&Integers));

        let f3 = PolyRing::new(3).unwrap();
        let x = f3.x();
        let xm1 = f3.sub(&x, &f3.one());
        let a = f3.mul(&x, &xm1);
        let w = separating_idempotent(&f3, &a, &x, &xm1).unwrap();
        assert_eq!((w.r.clone(), w.s.clone(), w.e.clone()), (xm1, x.clone(), x));
        assert!(w.verify(&f3));
        assert!(separating_idempotent(&Integers, &z(6), &z(2), &z(4)).is_err());
    }

    #[test]
    fn adequate_examples() {
        let d = adequate_decomposition(&Integers, &z(12), &z(10)).unwrap();
        assert_eq!((d.r.clone(), d.s.clone()), (z(3), z(4)));
        assert!(d.verify(&Integers));
        let d = adequate_decomposition(&Integers, &z(12), &z(5)).unwrap();
        assert_eq!((d.r.clone(), d.s.clone()), (z(12), z(1)));
        let f2 = PolyRing::new(2).unwrap();
        let a = f2.from_coeffs(&[0, 0, 1, 1]);
        let d = adequate_decomposition(&f2, &a, &f2.x()).unwrap();
        assert_eq!((d.r.clone(), d.s.clone()), (f2.from_coeffs(&[1, 1]), f2.from_coeffs(&[0, 0, 1])));
        assert!(d.verify(&f2));
        assert_eq!(adequate_decomposition(&Integers, &z(0), &z(3)).unwrap_err(), Error::ZeroElement);

        let l = adequate_shift(&Integers, &z(4), &z(3), &z(6)).unwrap();
        assert!(coprime(&Integers, &(z(4) + &l * z(3)), &z(6)));
    }

    #[test]
    fn d_adequacy() {
        let z6 = ring("Z/6");
        let rep = is_d_adequate_element(&z6, FElem(2)).unwrap();
        assert!(rep.holds);
        let w = rep.witnesses.iter().find(|w| w.inputs[1] == FElem(3)).unwrap();
        assert_eq!(w.shifts, vec![FElem(2), FElem(1)]);
        let v = WitnessVerifier::new(&z6);
        assert!(rep.witnesses.iter().all(|w| v.verify(w)));

        let z4 = ring("Z/4");
        let rep = is_d_adequate_element(&z4, FElem(2)).unwrap();
        assert!(rep.holds);
        assert!(rep.witnesses.iter().any(|w| w.inputs[1] == FElem(2)));

        assert!(matches!(is_d_adequate_element(&z6, FElem(1)), Err(Error::Precondition(_))));
        assert_eq!(is_d_adequate_element(&z6, FElem(0)).unwrap_err(), Error::ZeroElement);
        for text in ["Z/6", "Z/4", "Z/8", "Z/2 x Z/4"] {
            let r = ring(text);
            let rep = is_d_adequate_ring(&r).unwrap();
            assert!(rep.holds, "{text}");
            let v = WitnessVerifier::new(&r);
            assert!(rep.witnesses.iter().all(|w| v.verify(w)), "{text}");
        }
    }

    #[test]
    fn d_adequacy_needs_d_property() {
        let u = ring("UT2(Z/2)");
        if !u.has_d_property().holds {
            assert!(matches!(is_d_adequate_ring(&u), Err(Error::Precondition(_))));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn decomposition_certifies(a in -5000i64..5000, b in -5000i64..5000) {
                prop_assume!(a != 0);
                let d = adequate_decomposition(&Integers, &z(a), &z(b)).unwrap();
                prop_assert!(d.verify(&Integers));
            }

            #[test]
            fn idempotent_certifies(a in 1i64..3000, b in -300i64..300, c in -300i64..300) {
                let g = num_integer::gcd(a, num_integer::gcd(b, c));
                prop_assume!(g == 1);
                let w = separating_idempotent(&Integers, &z(a), &z(b), &z(c)).unwrap();
                prop_assert!(w.verify(&Integers));
                // The residue is idempotent modulo a.
                prop_assert!(Integers.divides(&z(a), &(&w.e * &w.e - &w.e)));
            }

            #[test]
            fn shift_is_coprime(a in -500i64..500, b in -500i64..500, c in 1i64..500) {
                prop_assume!(num_integer::gcd(a, num_integer::gcd(b, c)) == 1);
                let l = adequate_shift(&Integers, &z(a), &z(b), &z(c)).unwrap();
                prop_assert!(coprime(&Integers, &(z(a) + l * z(b)), &z(c)));
            }
        }
    }
}

//! Stable range one and two, almost stable range one (one- and two-sided),
//! diadems, dyadic range one and L-rings.

mod domain;
mod finite;
mod verify;

pub use domain::{
    asr1_witness, domain_asr1_element, domain_stable_range_1, sr2_witness, unit_shift, DomainSr1, Sr1Refutation,
};
pub use finite::{
    is_asr1_element, is_asr1_ring, is_asr1_two_sided, is_diadem, is_dyadic_range_1, is_l_ring, is_stable_range_1,
    is_stable_range_2, two_sided_principal_form, PrincipalFormCheck,
};
pub use verify::WitnessVerifier;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::PropertyReport;
    use crate::ring::{parse_ring_spec, FElem, FiniteRing, Ring, Side};

    fn ring(text: &str) -> FiniteRing {
        FiniteRing::new(&parse_ring_spec(text).unwrap()).unwrap()
    }

    fn all_verify(r: &FiniteRing, report: &PropertyReport<FElem>) {
        let v = WitnessVerifier::new(r);
        for w in &report.witnesses {
            assert!(v.verify(w), "{:?} on {}", w, r.spec());
        }
    }

    #[test]
    fn stable_range_one() {
        for text in ["Z/6", "Z/5", "M2(Z/2)", "UT2(Z/2)"] {
            let r = ring(text);
            let rep = is_stable_range_1(&r);
            assert!(rep.holds, "{text}");
            assert!(!rep.witnesses.is_empty());
            all_verify(&r, &rep);
        }
        // Z/6 has exactly the pairs with gcd(a, b, 6) = 1.
        let z6 = ring("Z/6");
        let expected = (0..6u32)
            .flat_map(|a| (0..6u32).map(move |b| (a, b)))
            .filter(|&(a, b)| num_integer::gcd(num_integer::gcd(a, b), 6) == 1)
            .count();
        assert_eq!(is_stable_range_1(&z6).checked, expected as u64);
    }

    #[test]
    fn stable_range_two() {
        for text in ["Z/4", "M2(Z/2)", "Z/2"] {
            let r = ring(text);
            let rep = is_stable_range_2(&r);
            assert!(rep.holds, "{text}");
            all_verify(&r, &rep);
        }
    }

    #[test]
    fn asr1_elements() {
        let z4 = ring("Z/4");
        let rep = is_asr1_element(&z4, FElem(2), Side::Right).unwrap();
        assert!(rep.holds);
        all_verify(&z4, &rep);
        // A unit needs no shift.
        let rep = is_asr1_element(&z4, FElem(1), Side::Right).unwrap();
        assert!(rep.witnesses.iter().all(|w| w.shifts == vec![FElem(0)]));
        assert_eq!(is_asr1_element(&z4, FElem(0), Side::Right).unwrap_err(), crate::Error::ZeroElement);
        let m = ring("M2(Z/2)");
        let e11 = m.matrix_unit(0, 0).unwrap();
        for side in [Side::Right, Side::Left] {
            let rep = is_asr1_element(&m, e11, side).unwrap();
            assert!(rep.holds);
            all_verify(&m, &rep);
        }
    }

    #[test]
    fn asr1_rings() {
        for text in ["Z/6", "M2(Z/2)", "Z/2", "UT2(Z/2)"] {
            let r = ring(text);
            for side in [Side::Right, Side::Left] {
                let rep = is_asr1_ring(&r, side).unwrap();
                assert!(rep.holds, "{text} {side:?}");
                all_verify(&r, &rep);
            }
        }
    }

    #[test]
    fn diadems() {
        let z4 = ring("Z/4");
        let rep = is_diadem(&z4, FElem(1), FElem(0), Side::Right).unwrap();
        assert_eq!(rep.witnesses[0].shifts, vec![FElem(0)]);
        let rep = is_diadem(&z4, FElem(2), FElem(3), Side::Right).unwrap();
        assert!(rep.holds);
        all_verify(&z4, &rep);
        assert!(is_diadem(&z4, FElem(2), FElem(2), Side::Right).is_err());

        let z6 = ring("Z/6");
        for a in z6.elements() {
            for b in z6.elements() {
                if z6.lattice(Side::Right).generates_unit(&[a, b]) {
                    assert!(is_diadem(&z6, a, b, Side::Right).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn dyadic_rings() {
        for text in ["Z/6", "M2(Z/2)", "Z/2"] {
            let r = ring(text);
            for side in [Side::Right, Side::Left] {
                let rep = is_dyadic_range_1(&r, side).unwrap();
                assert!(rep.holds, "{text}");
                all_verify(&r, &rep);
            }
        }
    }

    #[test]
    fn l_rings() {
        assert!(is_l_ring(&ring("Z/6")).holds);
        let m = ring("M2(Z/2)");
        let rep = is_l_ring(&m);
        assert!(!rep.holds);
        assert_eq!(rep.counterexample, Some(vec![m.matrix_unit(0, 0).unwrap()]));
        // Brute-force oracle on UT2(Z/4): RaR = R exactly for the units.
        let u = ring("UT2(Z/4)");
        let oracle = u.elements().all(|a| {
            !crate::ring::ideal_closure(&u, Side::TwoSided, &[a]).contains_one() || u.is_unit(&a)
        });
        assert_eq!(is_l_ring(&u).holds, oracle);
    }

    #[test]
    fn two_sided() {
        for text in ["Z/6", "M2(Z/2)", "UT2(Z/2)"] {
            let r = ring(text);
            let rep = is_asr1_two_sided(&r);
            assert!(rep.holds, "{text}");
            all_verify(&r, &rep);
        }
        // c a unit: l = 0 already works.
        let z6 = ring("Z/6");
        let rep = is_asr1_two_sided(&z6);
        for w in &rep.witnesses {
            if z6.is_unit(&w.inputs[2]) {
                assert_eq!(w.shifts, vec![FElem(0)]);
            }
        }
    }

    #[test]
    fn principal_form_agrees_on_bezout_rings() {
        for text in ["Z/6", "M2(Z/2)", "Z/4 x Z/3"] {
            let form = two_sided_principal_form(&ring(text));
            assert_eq!(form.agree, Some(true), "{text}");
        }
        assert_eq!(two_sided_principal_form(&ring("UT2(Z/2)")).agree, None);
    }
}

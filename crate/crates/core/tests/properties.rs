mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use ringlab::euclid::{extended_gcd, split_common_divisor};
use ringlab::matred::{content_ideal_finite, smith_normal_form, ContentIdeal, Mat};
use ringlab::range_props::{asr1_witness, is_asr1_ring, is_stable_range_1, WitnessVerifier};
use ringlab::report::WitnessKind;
use ringlab::ring::{
    ideal_closure, EuclideanDomain, FElem, FiniteRing, Integers, PolyRing, Ring, RingSpec, Side,
};

use common::{gcd_i128, ideal_oracle, minor_gcd_int};

const SMALL_RINGS: &[&str] = &[
    "Z/6",
    "Z/8",
    "Z/12",
    "F2[x]/(0,0,1)",
    "F3[x]/(1,0,1)",
    "M2(Z/2)",
    "UT2(Z/2)",
    "UT2(Z/3)",
    "Z/2 x Z/4",
];

fn ring_strategy() -> impl Strategy<Value = FiniteRing> {
    prop::sample::select(SMALL_RINGS).prop_map(|s| FiniteRing::parse(s).unwrap())
}

fn elem(ring: &FiniteRing, i: usize) -> FElem {
    FElem((i % ring.card()) as u32)
}

fn member_set(c: &ringlab::ring::IdealClosure) -> BTreeSet<u32> {
    c.members().iter().map(|x| x.0).collect()
}

fn big_rows(rows: &[Vec<i128>]) -> Mat<BigInt> {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

fn int_matrix(max_dim: usize, bound: i128) -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(m, n)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, n), m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closures_match_fixpoint_oracle(ring in ring_strategy(), gens in prop::collection::vec(0usize..100, 1..3)) {
        let gens: Vec<FElem> = gens.into_iter().map(|i| elem(&ring, i)).collect();
        for (side, right, left) in [(Side::Right, true, false), (Side::Left, false, true), (Side::TwoSided, true, true)] {
            let closure = ideal_closure(&ring, side, &gens);
            prop_assert_eq!(member_set(&closure), ideal_oracle(&ring, right, left, &gens), "{:?} {}", side, ring.spec());
        }
    }

    #[test]
    fn closure_is_minimal(ring in ring_strategy(), g in 0usize..100) {
        // Dropping any member other than the generator leaves a set that is
        // no longer closed.
        let g = elem(&ring, g);
        let members = member_set(&ideal_closure(&ring, Side::TwoSided, &[g]));
        for &x in &members {
            if x == g.0 {
                continue;
            }
            let rest: BTreeSet<u32> = members.iter().copied().filter(|&y| y != x).collect();
            let closed = rest.iter().all(|&a| {
                rest.iter().all(|&b| rest.contains(&ring.add_elem(FElem(a), FElem(b)).0))
                    && ring.elements().all(|r| {
                        rest.contains(&ring.mul_elem(FElem(a), r).0) && rest.contains(&ring.mul_elem(r, FElem(a)).0)
                    })
            });
            prop_assert!(!closed, "{} without {} is still an ideal", ring.spec(), x);
        }
    }

    #[test]
    fn radical_is_a_two_sided_ideal(ring in ring_strategy()) {
        let radical: Vec<FElem> = ring.jacobson_radical().to_vec();
        let closure = ideal_closure(&ring, Side::TwoSided, &radical);
        let expected: BTreeSet<u32> = radical.iter().map(|x| x.0).collect();
        prop_assert_eq!(member_set(&closure), expected);
    }

    #[test]
    fn asr1_witnesses_recheck_independently(ring in ring_strategy()) {
        let report = is_asr1_ring(&ring, Side::Right).unwrap();
        let verifier = WitnessVerifier::new(&ring);
        for w in &report.witnesses {
            prop_assert!(verifier.verify(w));
            if let (WitnessKind::Asr1Right, &[a, b, c], &[l]) = (w.kind, w.inputs.as_slice(), w.shifts.as_slice()) {
                let shifted = ring.add_elem(b, ring.mul_elem(c, l));
                let one = ring.one();
                prop_assert!(ideal_oracle(&ring, true, false, &[a, shifted]).contains(&one.0));
            }
        }
    }

    #[test]
    fn sr1_witnesses_recheck_independently(ring in ring_strategy()) {
        let report = is_stable_range_1(&ring);
        let one = ring.one();
        for w in &report.witnesses {
            if let (&[a, b], &[l]) = (w.inputs.as_slice(), w.shifts.as_slice()) {
                let shifted = ring.add_elem(a, ring.mul_elem(b, l));
                prop_assert!(ideal_oracle(&ring, true, false, &[shifted]).contains(&one.0));
            }
        }
    }

    #[test]
    fn smith_form_matches_minor_gcds(rows in int_matrix(4, 20)) {
        let cert = smith_normal_form(&Integers, &big_rows(&rows));
        prop_assert!(cert.verify(&Integers));
        let mut prefix = 1i128;
        for (i, d) in cert.diag.iter().enumerate() {
            prefix *= d.to_i128().unwrap();
            prop_assert_eq!(prefix, minor_gcd_int(&rows, i + 1));
        }
    }

    #[test]
    fn smith_form_is_invariant_under_unimodular_transforms(
        rows in int_matrix(3, 9),
        ops in prop::collection::vec((0usize..3, 0usize..3, -3i128..=3, any::<bool>()), 0..6),
    ) {
        // Apply transvections on the left or the right.
        let a = big_rows(&rows);
        let mut b = a.clone();
        for (i, j, k, left) in ops {
            let dim = if left { b.rows() } else { b.cols() };
            let (i, j) = (i % dim, j % dim);
            if i == j {
                continue;
            }
            let mut e = Mat::identity(&Integers, dim);
            e.set(i, j, BigInt::from(k));
            b = if left { e.mul(&Integers, &b).unwrap() } else { b.mul(&Integers, &e).unwrap() };
        }
        prop_assert_eq!(smith_normal_form(&Integers, &a).diag, smith_normal_form(&Integers, &b).diag);
    }

    #[test]
    fn gcd_is_symmetric_and_splits(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let zz = Integers;
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(extended_gcd(&zz, &a, &b).d, extended_gcd(&zz, &b, &a).d);
        prop_assert!(split_common_divisor(&zz, &a, &b).verify(&zz));
    }

    #[test]
    fn polynomial_asr1_witnesses(a in 1u64..2000, b in 0u64..2000, c in 0u64..2000) {
        let fx = PolyRing::new(3).unwrap();
        let (a, b, c) = (fx.nth_element(a), fx.nth_element(b), fx.nth_element(c));
        let g = extended_gcd(&fx, &a, &extended_gcd(&fx, &b, &c).d).d;
        prop_assume!(fx.is_one(&g));
        let w = asr1_witness(&fx, &a, &b, &c).unwrap();
        let shifted = fx.add(&b, &fx.mul(&c, &w.shifts[0]));
        prop_assert!(fx.is_one(&extended_gcd(&fx, &a, &shifted).d));
    }

    #[test]
    fn content_ideal_of_residue_matrix(n in 2u64..=12, entries in prop::collection::vec(0u64..12, 1..7)) {
        let ring = FiniteRing::new(&RingSpec::Residue { n }).unwrap();
        let xs: Vec<FElem> = entries.iter().map(|&r| ring.from_residue(r % n)).collect();
        let m = Mat::new(1, xs.len(), xs).unwrap();
        let ContentIdeal::Closure(c) = content_ideal_finite(&ring, &m).unwrap() else { panic!("closure expected") };
        let g = entries.iter().fold(n as i128, |g, &x| gcd_i128(g, (x % n) as i128));
        prop_assert_eq!(c.len() as i128, n as i128 / g);
    }
}

#[test]
fn coboundaries_of_commutative_rings_are_principal() {
    for spec in ["Z/12", "Z/2 x Z/4", "F3[x]/(1,0,1)", "F2[x]/(0,0,0,1)"] {
        let ring = FiniteRing::parse(spec).unwrap();
        for a in ring.elements() {
            let cb = ring.coboundary(a);
            assert!(cb.principal, "{spec}: {a:?}");
        }
    }
}

#[test]
fn cardinalities_multiply() {
    for (spec, card) in [
        ("M2(Z/2)", 16),
        ("M2(Z/3)", 81),
        ("UT2(Z/3)", 27),
        ("Z/4 x Z/9", 36),
        ("Z/2 x M2(Z/2)", 32),
        ("F3[x]/(1,2,0,1)", 27),
    ] {
        let ring = FiniteRing::parse(spec).unwrap();
        assert_eq!(ring.card(), card, "{spec}");
        assert_eq!(ring.spec().cardinality(), Some(card as u128), "{spec}");
    }
}

#[test]
fn residue_radical_has_expected_size() {
    for n in 2..=30u64 {
        let ring = FiniteRing::new(&RingSpec::Residue { n }).unwrap();
        let rad: u64 = common::factorize(n).iter().map(|&(p, _)| p).product();
        assert_eq!(ring.jacobson_radical().len() as u64, n / rad, "Z/{n}");
    }
}

//! Matrix reduction over the integers and `F_p[x]` with transform
//! certificates, plus content ideals and total divisors.

mod content;
mod doc;
mod mat;
mod reduce;

pub use content::{check_total_divisor, content_ideal, content_ideal_finite, ContentIdeal};
pub use doc::{certificate_json, matrix_json, parse_matrix_document, snf_document, DomainMatrix};
pub use mat::Mat;
pub use reduce::{
    hermite_reduce_column, hermite_reduce_pair, smith_normal_form, reduce_two_by_two, HermiteStep, ReductionCertificate,
    TwoByTwoReduction,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_ring_spec, EuclideanDomain, FElem, FiniteRing, Integers, PolyRing, Ring};
    use crate::Error;
    use num_bigint::BigInt;
    use serde_json::json;

    fn zmat(rows: &[&[i64]]) -> Mat<BigInt> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ring(text: &str) -> FiniteRing {
        FiniteRing::new(&parse_ring_spec(text).unwrap()).unwrap()
    }

    #[test]
    fn hermite_steps() {
        let step = hermite_reduce_pair(&Integers, &z(6), &z(4));
        assert_eq!(step.d, z(2));
        assert_eq!(zmat(&[&[6, 4]]).mul(&Integers, &step.q).unwrap(), zmat(&[&[2, 0]]));
        assert!(Integers.is_unit(&step.q.det(&Integers).unwrap()));
        for (a, b, d) in [(5, 0, 5), (0, 0, 0)] {
            let step = hermite_reduce_pair(&Integers, &z(a), &z(b));
            assert_eq!(step.d, z(d));
            assert_eq!(step.q, Mat::identity(&Integers, 2));
        }
        // Negative entries still land on a normalized gcd.
        let step = hermite_reduce_pair(&Integers, &z(-4), &z(0));
        assert_eq!(step.d, z(4));
        let col = hermite_reduce_column(&Integers, &z(6), &z(4));
        assert_eq!(col.q.mul(&Integers, &zmat(&[&[6], &[4]])).unwrap(), zmat(&[&[2], &[0]]));
    }

    #[test]
    fn two_by_two_reduction() {
        let r = reduce_two_by_two(&Integers, &z(2), &z(3), &z(5)).unwrap();
        assert!(r.verify(&Integers));
        assert_eq!(r.z, z(1));
        let det = r.reduced.det(&Integers).unwrap();
        assert!(det == z(10) || det == z(-10));

        let r = reduce_two_by_two(&Integers, &z(1), &z(7), &z(4)).unwrap();
        assert_eq!((r.lambda.clone(), r.z.clone()), (z(0), z(1)));
        assert!(r.verify(&Integers));
        let r = reduce_two_by_two(&Integers, &z(3), &z(2), &z(0)).unwrap();
        assert!(r.verify(&Integers));

        let f2 = PolyRing::new(2).unwrap();
        let (a, b, c) = (f2.x(), f2.from_coeffs(&[1, 1]), f2.from_coeffs(&[1, 1, 1]));
        let r = reduce_two_by_two(&f2, &a, &b, &c).unwrap();
        assert!(r.verify(&f2));
        assert_eq!(r.z, f2.one());
        assert!(matches!(reduce_two_by_two(&Integers, &z(2), &z(4), &z(6)), Err(Error::Precondition(_))));
    }

    #[test]
    fn smith_examples() {
        let cert = smith_normal_form(&Integers, &zmat(&[&[2, 4], &[6, 8]]));
        assert!(cert.verify(&Integers));
        assert_eq!(cert.diag, vec![z(2), z(4)]);

        let id = Mat::identity(&Integers, 3);
        let cert = smith_normal_form(&Integers, &id);
        assert_eq!((cert.p.clone(), cert.q.clone(), cert.d.clone()), (id.clone(), id.clone(), id));

        let zero = zmat(&[&[0, 0, 0], &[0, 0, 0]]);
        let cert = smith_normal_form(&Integers, &zero);
        assert_eq!(cert.diag, vec![z(0), z(0)]);
        assert_eq!(cert.p, Mat::identity(&Integers, 2));
        assert_eq!(cert.rank(&Integers), 0);

        // Needs the divisibility repair: diag(2, 3) -> diag(1, 6).
        let cert = smith_normal_form(&Integers, &zmat(&[&[2, 0], &[0, 3]]));
        assert!(cert.verify(&Integers));
        assert_eq!(cert.diag, vec![z(1), z(6)]);

        for (a, b, c) in [(2, 3, 5), (4, 6, 9), (15, 10, 6)] {
            let cert = smith_normal_form(&Integers, &zmat(&[&[a, 0], &[b, c]]));
            assert_eq!(cert.diag, vec![z(1), z(a * c)]);
        }

        let f5 = PolyRing::new(5).unwrap();
        let m = Mat::from_rows(vec![
            vec![f5.from_coeffs(&[0, 2]), f5.from_coeffs(&[1, 0, 3])],
            vec![f5.from_coeffs(&[4]), f5.from_coeffs(&[0, 0, 0, 1])],
        ])
        .unwrap();
        let cert = smith_normal_form(&f5, &m);
        assert!(cert.verify(&f5));
        assert!(cert.diag.iter().all(|d| f5.is_normalized(d)));
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut cert = smith_normal_form(&Integers, &zmat(&[&[2, 4], &[6, 8]]));
        cert.p.set(0, 0, z(7));
        assert!(!cert.verify(&Integers));
    }

    #[test]
    fn content_ideals() {
        assert_eq!(content_ideal(&Integers, &zmat(&[&[2, 4], &[6, 8]])), ContentIdeal::Generator(z(2)));
        let z6 = ring("Z/6");
        let m = Mat::from_rows(vec![vec![FElem(2), FElem(3)]]).unwrap();
        let ContentIdeal::Closure(c) = content_ideal_finite(&z6, &m).unwrap() else { panic!() };
        assert!(c.contains_one());
        let m2 = ring("M2(Z/2)");
        let m = Mat::from_rows(vec![vec![m2.one()]]).unwrap();
        assert!(matches!(content_ideal_finite(&m2, &m), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn total_divisors() {
        let z6 = ring("Z/6");
        assert!(check_total_divisor(&z6, FElem(2), FElem(4)));
        assert!(!check_total_divisor(&z6, FElem(2), FElem(3)));
        for text in ["Z/6", "UT2(Z/2)", "M2(Z/2)"] {
            let r = ring(text);
            assert!(r.elements().all(|d| check_total_divisor(&r, r.one(), d)));
        }
        let ut = ring("UT2(Z/2)");
        let (e12, e11) = (ut.matrix_unit(0, 1).unwrap(), ut.matrix_unit(0, 0).unwrap());
        assert!(!check_total_divisor(&ut, e12, e11));
    }

    #[test]
    fn documents() {
        let doc = json!({"ring": "Z", "rows": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]});
        let out = snf_document(&doc, true).unwrap();
        assert_eq!(out["D"], doc["rows"]);
        assert_eq!(out["P"], doc["rows"]);
        assert_eq!(out["verified"], json!(true));
        let doc = json!({"ring": "F3[x]", "rows": [[[0, 1], [1]], [[2], [0, 0, 1]]]});
        assert_eq!(snf_document(&doc, true).unwrap()["verified"], json!(true));
        assert!(snf_document(&json!({"ring": "Z/6", "rows": [["1"]]}), false).is_err());
        assert!(snf_document(&json!({"ring": "Z", "rows": [["1"], ["2", "3"]]}), false).is_err());
    }
}

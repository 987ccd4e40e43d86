//! Matrix documents: `{"ring": "<spec>", "rows": [[entry, ...], ...]}` with
//! integers as decimal strings and polynomials as ascending coefficient arrays.

use num_bigint::BigInt;
use serde_json::{json, Map, Value as Json};

use crate::ring::{parse_ring_spec, EuclideanDomain, Integers, Poly, PolyRing, RingSpec};
use crate::ring::parse_int_json;
use crate::{Error, Result};

use super::{smith_normal_form, Mat, ReductionCertificate};

#[derive(Debug, Clone)]
pub enum DomainMatrix {
    Int(Mat<BigInt>),
    Poly(PolyRing, Mat<Poly>),
}

fn rows_of(doc: &Json) -> Result<&Vec<Json>> {
    doc.get("rows")
        .and_then(Json::as_array)
        .ok_or_else(|| Error::InvalidElement("matrix document needs a \"rows\" array".into()))
}

fn parse_rows<E: Clone>(rows: &[Json], parse: impl Fn(&Json) -> Result<E>) -> Result<Mat<E>> {
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::InvalidElement("each row must be an array".into()))?
                .iter()
                .map(&parse)
                .collect::<Result<Vec<E>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(parsed)
}

pub fn parse_matrix_document(doc: &Json) -> Result<DomainMatrix> {
    let spec_text = doc
        .get("ring")
        .and_then(Json::as_str)
        .ok_or_else(|| Error::InvalidElement("matrix document needs a \"ring\" string".into()))?;
    let rows = rows_of(doc)?;
    match parse_ring_spec(spec_text)? {
        RingSpec::Integers => Ok(DomainMatrix::Int(parse_rows(rows, parse_int_json)?)),
        RingSpec::PolyOverPrimeField { p } => {
            let ring = PolyRing::new(p)?;
            let mat = parse_rows(rows, |v| ring.parse_json(v))?;
            Ok(DomainMatrix::Poly(ring, mat))
        }
        other => Err(Error::UnsupportedRing(format!("matrix reduction over {other} (expected Z or F<p>[x])"))),
    }
}

pub fn matrix_json<D: EuclideanDomain>(ring: &D, m: &Mat<D::Elem>) -> Json {
    m.to_json(|x| ring.to_json(x))
}

pub fn certificate_json<D: EuclideanDomain>(ring: &D, cert: &ReductionCertificate<D::Elem>, certify: bool) -> Json {
    let mut out = Map::new();
    out.insert("ring".into(), json!(ring.spec().to_string()));
    out.insert("rows".into(), matrix_json(ring, &cert.a));
    out.insert("P".into(), matrix_json(ring, &cert.p));
    out.insert("Q".into(), matrix_json(ring, &cert.q));
    out.insert("D".into(), matrix_json(ring, &cert.d));
    out.insert("diag".into(), Json::Array(cert.diag.iter().map(|x| ring.to_json(x)).collect()));
    out.insert("rank".into(), json!(cert.rank(ring)));
    if certify {
        out.insert("verified".into(), json!(cert.verify(ring)));
    }
    Json::Object(out)
}

/// Reduces the document's matrix and returns it with `P`, `Q`, `D`, `diag`.
/// With `certify`, the certificate is re-checked and the result recorded
/// under `"verified"`.
pub fn snf_document(doc: &Json, certify: bool) -> Result<Json> {
    Ok(match parse_matrix_document(doc)? {
        DomainMatrix::Int(m) => certificate_json(&Integers, &smith_normal_form(&Integers, &m), certify),
        DomainMatrix::Poly(ring, m) => certificate_json(&ring, &smith_normal_form(&ring, &m), certify),
    })
}

//! JSON documents for the command line and the language bindings. Every
//! entry point takes element and ring text and returns a document.

use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::clean_adequate::{
    adequate_decomposition, is_clean, is_d_adequate_ring, is_exchange, is_neat_element, separating_idempotent,
};
use crate::euclid::{coprime, extended_gcd};
use crate::harness::{build_report, default_catalog, has_counterexample, load_catalog, run_suite, Bounds, Suite};
use crate::matred::{matrix_json, reduce_two_by_two};
use crate::range_props::{
    asr1_witness, domain_stable_range_1, is_asr1_ring, is_asr1_two_sided, is_dyadic_range_1, is_l_ring,
    is_stable_range_1, is_stable_range_2, sr2_witness,
};
use crate::report::{Property, PropertyReport};
use crate::ring::{parse_ring_spec_with_bound, EuclideanDomain, FElem, FiniteRing, Integers, PolyRing, RingSpec, Side};
use crate::{Error, Result};

/// Which shift witness to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ShiftKind {
    /// One shift `l` with `gcd(a, b + c l) = 1`.
    Asr1,
    /// Two shifts `(l, m)` with `gcd(a + c l, b + c m) = 1`.
    Sr2,
}

impl std::str::FromStr for ShiftKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asr1" => Ok(ShiftKind::Asr1),
            "sr2" => Ok(ShiftKind::Sr2),
            other => Err(Error::Config(format!("unknown witness kind `{other}` (expected asr1 or sr2)"))),
        }
    }
}

/// Parses argument text as a domain element.
trait ParseArg: EuclideanDomain {
    fn parse_arg_text(&self, text: &str) -> Result<Self::Elem>;
}

impl ParseArg for Integers {
    fn parse_arg_text(&self, text: &str) -> Result<BigInt> {
        text.trim().parse().map_err(|_| Error::InvalidElement(format!("`{text}` is not an integer")))
    }
}

impl ParseArg for PolyRing {
    fn parse_arg_text(&self, text: &str) -> Result<crate::ring::Poly> {
        self.parse_arg(text)
    }
}

fn parse_args<D: ParseArg>(ring: &D, texts: &[&str]) -> Result<Vec<D::Elem>> {
    texts.iter().map(|t| ring.parse_arg_text(t)).collect()
}

fn domain_spec(text: &str) -> Result<RingSpec> {
    let spec = parse_ring_spec_with_bound(text, u64::MAX)?;
    match spec {
        RingSpec::Integers | RingSpec::PolyOverPrimeField { .. } => Ok(spec),
        other => Err(Error::UnsupportedRing(format!("{other} (expected Z or F<p>[x])"))),
    }
}

/// Runs `body` with the domain named by `text`.
macro_rules! with_domain {
    ($text:expr, |$ring:ident| $body:expr) => {
        match domain_spec($text)? {
            RingSpec::Integers => {
                let $ring = &Integers;
                $body
            }
            RingSpec::PolyOverPrimeField { p } => {
                let $ring = &PolyRing::new(p)?;
                $body
            }
            _ => unreachable!("domain_spec"),
        }
    };
}

fn finite_report(ring: &FiniteRing, property: Property) -> Result<PropertyReport<FElem>> {
    Ok(match property {
        Property::Sr1 => is_stable_range_1(ring),
        Property::Sr2 => is_stable_range_2(ring),
        Property::Asr1Right => is_asr1_ring(ring, Side::Right)?,
        Property::Asr1Left => is_asr1_ring(ring, Side::Left)?,
        Property::Asr1TwoSided => is_asr1_two_sided(ring),
        Property::DyadicRight => is_dyadic_range_1(ring, Side::Right)?,
        Property::DyadicLeft => is_dyadic_range_1(ring, Side::Left)?,
        Property::Clean => is_clean(ring),
        Property::Exchange => is_exchange(ring),
        Property::LRing => is_l_ring(ring),
        Property::DProperty => ring.has_d_property(),
        Property::DAdequate => is_d_adequate_ring(ring)?,
        other => return Err(Error::Config(format!("`{other}` is not a ring-level property"))),
    })
}

fn domain_sr1<D: EuclideanDomain>(ring: &D, bound: u64) -> Json {
    let out = domain_stable_range_1(ring, bound);
    let mut doc = out.report.to_json(&ring.spec().to_string(), |x| ring.to_json(x));
    if let Some(r) = out.refutation {
        doc["refutation"] = json!({
            "a": ring.to_json(&r.a),
            "b": ring.to_json(&r.b),
            "bezout": { "x": ring.to_json(&r.coprimality.x), "y": ring.to_json(&r.coprimality.y) },
            "remainders": r.remainders.iter().map(|(u, m)| json!({ "unit": ring.to_json(u), "remainder": ring.to_json(m) })).collect::<Vec<_>>(),
            "verified": r.verify(ring),
        });
    }
    doc
}

/// Report document for `property` on the ring named by `text`. Over `Z` and
/// `F<p>[x]` only stable range one is decided.
pub fn check_document(text: &str, property: &str, bounds: &Bounds) -> Result<Json> {
    let property: Property = property.parse()?;
    let spec = parse_ring_spec_with_bound(text, bounds.max_card)?;
    if spec.is_finite() {
        let ring = FiniteRing::new(&spec)?;
        let report = finite_report(&ring, property)?;
        return Ok(report.to_json(&spec.to_string(), |x| ring.to_json(*x)));
    }
    if property != Property::Sr1 {
        return Err(Error::InfiniteEnumeration(format!("`{property}` is only decided for finite rings")));
    }
    Ok(match spec {
        RingSpec::Integers => domain_sr1(&Integers, bounds.domain_bound),
        RingSpec::PolyOverPrimeField { p } => domain_sr1(&PolyRing::new(p)?, bounds.domain_bound),
        _ => unreachable!("infinite specs are domains"),
    })
}

fn witness_doc<D: ParseArg>(ring: &D, kind: ShiftKind, args: [&str; 3]) -> Result<Json> {
    let v = parse_args(ring, &args)?;
    let (a, b, c) = (&v[0], &v[1], &v[2]);
    let shift = |x: &D::Elem, l: &D::Elem| ring.add(x, &ring.mul(c, l));
    let (w, verified) = match kind {
        ShiftKind::Asr1 => {
            let w = asr1_witness(ring, a, b, c)?;
            let ok = coprime(ring, a, &shift(b, &w.shifts[0]));
            (w, ok)
        }
        ShiftKind::Sr2 => {
            let w = sr2_witness(ring, a, b, c)?;
            let ok = coprime(ring, &shift(a, &w.shifts[0]), &shift(b, &w.shifts[1]));
            (w, ok)
        }
    };
    let mut doc = w.to_json(&|x: &D::Elem| ring.to_json(x));
    doc["ring"] = json!(ring.spec().to_string());
    doc["verified"] = json!(verified);
    Ok(doc)
}

fn adequate_doc<D: ParseArg>(ring: &D, a: &str, b: &str) -> Result<Json> {
    let v = parse_args(ring, &[a, b])?;
    let d = adequate_decomposition(ring, &v[0], &v[1])?;
    Ok(json!({
        "ring": ring.spec().to_string(),
        "a": ring.to_json(&d.a),
        "b": ring.to_json(&d.b),
        "r": ring.to_json(&d.r),
        "s": ring.to_json(&d.s),
        "verified": d.verify(ring),
    }))
}

fn neat_doc<D: ParseArg>(ring: &D, a: &str) -> Result<Json> {
    let a = ring.parse_arg_text(a)?;
    let check = is_neat_element(ring, &a)?;
    let quotient = check.quotient.as_ref().map(|q| q.spec().to_string());
    let render = |x: &FElem| check.quotient.as_ref().map_or(Json::Null, |q| q.to_json(*x));
    Ok(json!({
        "ring": ring.spec().to_string(),
        "a": ring.to_json(&a),
        "quotient": quotient,
        "neat": check.report.holds,
        "clean": check.report.to_json(quotient.as_deref().unwrap_or("0"), render),
    }))
}

fn bezout_doc<D: ParseArg>(ring: &D, a: &str, b: &str) -> Result<Json> {
    let v = parse_args(ring, &[a, b])?;
    let cert = extended_gcd(ring, &v[0], &v[1]);
    Ok(json!({
        "ring": ring.spec().to_string(),
        "a": ring.to_json(&cert.a),
        "b": ring.to_json(&cert.b),
        "d": ring.to_json(&cert.d),
        "x": ring.to_json(&cert.x),
        "y": ring.to_json(&cert.y),
        "verified": cert.verify(ring),
    }))
}

/// `a x + b y = d` with `d` the normalized gcd.
pub fn bezout_document(ring: &str, a: &str, b: &str) -> Result<Json> {
    with_domain!(ring, |r| bezout_doc(r, a, b))
}

pub fn witness_document(ring: &str, kind: ShiftKind, a: &str, b: &str, c: &str) -> Result<Json> {
    with_domain!(ring, |r| witness_doc(r, kind, [a, b, c]))
}

pub fn adequate_document(ring: &str, a: &str, b: &str) -> Result<Json> {
    with_domain!(ring, |r| adequate_doc(r, a, b))
}

pub fn neat_document(ring: &str, a: &str) -> Result<Json> {
    with_domain!(ring, |r| neat_doc(r, a))
}

fn idempotent_doc<D: ParseArg>(ring: &D, args: [&str; 3]) -> Result<Json> {
    let v = parse_args(ring, &args)?;
    let w = separating_idempotent(ring, &v[0], &v[1], &v[2])?;
    Ok(json!({
        "ring": ring.spec().to_string(),
        "a": ring.to_json(&w.a),
        "b": ring.to_json(&w.b),
        "c": ring.to_json(&w.c),
        "r": ring.to_json(&w.r),
        "s": ring.to_json(&w.s),
        "e": ring.to_json(&w.e),
        "verified": w.verify(ring),
    }))
}

/// Idempotent `e` of `R/aR` with `e` in `bR/aR` and `1 - e` in `cR/aR`.
pub fn idempotent_document(ring: &str, a: &str, b: &str, c: &str) -> Result<Json> {
    with_domain!(ring, |r| idempotent_doc(r, [a, b, c]))
}

fn two_by_two_doc<D: ParseArg>(ring: &D, args: [&str; 3]) -> Result<Json> {
    let v = parse_args(ring, &args)?;
    let red = reduce_two_by_two(ring, &v[0], &v[1], &v[2])?;
    Ok(json!({
        "ring": ring.spec().to_string(),
        "rows": matrix_json(ring, &red.a),
        "P": matrix_json(ring, &red.p),
        "Q": matrix_json(ring, &red.q),
        "reduced": matrix_json(ring, &red.reduced),
        "lambda": ring.to_json(&red.lambda),
        "z": ring.to_json(&red.z),
        "verified": red.verify(ring),
    }))
}

/// Transforms taking `[[a, 0], [b, c]]` to `[[z, 0], [*, *]]` with `z` a unit.
pub fn two_by_two_document(ring: &str, a: &str, b: &str, c: &str) -> Result<Json> {
    with_domain!(ring, |r| two_by_two_doc(r, [a, b, c]))
}

/// Runs a suite over a catalog file (the built-in catalog when `None`).
/// Returns the report and whether any counterexample was found.
pub fn verify_document(suite: &str, catalog: Option<&Path>, bounds: &Bounds) -> Result<(Json, bool)> {
    let suite: Suite = suite.parse()?;
    let (entries, bounds) = match catalog {
        Some(path) => {
            let cat = load_catalog(path, bounds)?;
            (cat.entries, cat.bounds)
        }
        None => (default_catalog(), bounds.clone()),
    };
    let verdicts = run_suite(suite, &entries, &bounds)?;
    Ok((build_report(suite, &entries, &bounds, &verdicts), has_counterexample(&verdicts)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_and_two_by_two_documents() {
        let doc = idempotent_document("Z", "6", "2", "3").unwrap();
        assert_eq!(doc["e"], json!("4"));
        assert_eq!(doc["verified"], json!(true));

        let doc = two_by_two_document("Z", "4", "2", "3").unwrap();
        assert_eq!(doc["verified"], json!(true));
        assert_eq!(doc["reduced"][0][1], json!("0"));

        let doc = two_by_two_document("F2[x]", "x", "1", "x+1").unwrap();
        assert_eq!(doc["verified"], json!(true));
        assert!(two_by_two_document("Z", "2", "4", "6").is_err());
        assert!(two_by_two_document("Z/6", "1", "1", "1").is_err());
    }

    #[test]
    fn shift_kinds_parse() {
        assert_eq!("sr2".parse::<ShiftKind>().unwrap(), ShiftKind::Sr2);
        assert!("sr3".parse::<ShiftKind>().is_err());
    }
}

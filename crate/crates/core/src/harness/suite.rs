use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::clean_adequate::{is_neat_element, separating_idempotent};
use crate::euclid::gcd;
use crate::matred::{reduce_two_by_two, smith_normal_form, Mat};
use crate::range_props::{
    domain_asr1_element, is_asr1_ring, is_asr1_two_sided, is_dyadic_range_1, is_l_ring, is_stable_range_1,
    is_stable_range_2, two_sided_principal_form, WitnessVerifier,
};
use crate::report::{Property, PropertyReport};
use crate::ring::{EuclideanDomain, FElem, FiniteRing, Integers, PolyRing, RingSpec, Side};
use crate::{Error, Result};

use super::catalog::{Bounds, CatalogEntry};

/// The implications and equivalences checked by the harness, each named by
/// what it asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// Right Bézout with stable range 1 implies right almost stable range 1.
    Sr1ImpliesAsr1,
    /// Right almost stable range 1 implies right dyadic range 1.
    Asr1ImpliesDyadic,
    /// Right almost stable range 1 is decided by `R/J(R)`.
    RadicalQuotient,
    /// Commutative: every proper image has stable range 1 iff the
    /// one-shift condition holds for all nonzero `a`.
    CommutativeImages,
    /// The split of `a` against `(b, c)` yields an idempotent of `R/aR`.
    SeparatingIdempotent,
    /// Bézout: two-sided almost stable range 1 iff its principal form.
    PrincipalForm,
    /// L-ring with two-sided almost stable range 1 implies right.
    LRingTwoSided,
    /// Bézout with stable range 1 implies two-sided almost stable range 1;
    /// Bézout L-rings with two-sided almost stable range 1 have stable range 2.
    BezoutTwoSided,
    /// `[[a, 0], [b, c]]` with `gcd(a, b, c) = 1` reduces to `[[1, 0], [*, *]]`
    /// and has invariant factors `1, a c`.
    TwoByTwo,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::Sr1ImpliesAsr1,
        Claim::Asr1ImpliesDyadic,
        Claim::RadicalQuotient,
        Claim::CommutativeImages,
        Claim::SeparatingIdempotent,
        Claim::PrincipalForm,
        Claim::LRingTwoSided,
        Claim::BezoutTwoSided,
        Claim::TwoByTwo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Sr1ImpliesAsr1 => "sr1-implies-asr1",
            Claim::Asr1ImpliesDyadic => "asr1-implies-dyadic",
            Claim::RadicalQuotient => "radical-quotient",
            Claim::CommutativeImages => "commutative-images",
            Claim::SeparatingIdempotent => "separating-idempotent",
            Claim::PrincipalForm => "principal-form",
            Claim::LRingTwoSided => "lring-two-sided",
            Claim::BezoutTwoSided => "bezout-two-sided",
            Claim::TwoByTwo => "two-by-two",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Claim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    One(Claim),
}

impl Suite {
    pub fn claims(self) -> Vec<Claim> {
        match self {
            Suite::All => Claim::ALL.to_vec(),
            Suite::One(c) => vec![c],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Suite::All);
        }
        Claim::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .map(Suite::One)
            .ok_or_else(|| {
                let names: Vec<_> = Claim::ALL.iter().map(|c| c.as_str()).collect();
                Error::Config(format!("unknown suite `{s}` (expected all, {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    CounterexampleFound,
    VacuouslyTrue,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimVerdict {
    pub claim: Claim,
    pub subject: String,
    pub status: Status,
    pub evidence: Json,
}

impl ClaimVerdict {
    fn new(claim: Claim, subject: &RingSpec, status: Status, evidence: Json) -> Self {
        ClaimVerdict { claim, subject: subject.to_string(), status, evidence }
    }
}

/// Memoized property reports of one finite ring.
struct Facts<'r> {
    ring: &'r FiniteRing,
    cap: usize,
    reports: HashMap<Property, PropertyReport<FElem>>,
}

impl<'r> Facts<'r> {
    fn new(ring: &'r FiniteRing, cap: usize) -> Self {
        Facts { ring, cap, reports: HashMap::new() }
    }

    fn get(&mut self, p: Property) -> &PropertyReport<FElem> {
        let (ring, cap) = (self.ring, self.cap);
        self.reports.entry(p).or_insert_with(|| {
            let mut rep = match p {
                Property::Sr1 => is_stable_range_1(ring),
                Property::Sr2 => is_stable_range_2(ring),
                Property::Asr1Right => is_asr1_ring(ring, Side::Right).expect("finite ring"),
                Property::DyadicRight => is_dyadic_range_1(ring, Side::Right).expect("finite ring"),
                Property::Asr1TwoSided => is_asr1_two_sided(ring),
                Property::LRing => is_l_ring(ring),
                other => unreachable!("no suite uses {other}"),
            };
            rep.witnesses.truncate(cap);
            rep
        })
    }

    fn holds(&mut self, p: Property) -> bool {
        self.get(p).holds
    }

    fn right_bezout(&self) -> bool {
        self.ring.lattice(Side::Right).all_principal()
    }

    fn bezout(&self) -> bool {
        self.right_bezout() && self.ring.lattice(Side::Left).all_principal()
    }
}

fn replay(spec: &RingSpec, p: Property) -> String {
    format!("ringlab check '{spec}' --property {p}")
}

/// Verdict for `hypotheses => conclusion`. `side` lists standing
/// assumptions (Bézout conditions): when one fails, a false conclusion is
/// outside the claim rather than a counterexample.
fn implication(
    claim: Claim,
    facts: &mut Facts<'_>,
    hypotheses: &[Property],
    side: &[(&str, bool)],
    conclusion: Property,
) -> ClaimVerdict {
    let spec = facts.ring.spec().clone();
    let mut hyp = serde_json::Map::new();
    for &p in hypotheses {
        hyp.insert(p.as_str().into(), json!(facts.holds(p)));
    }
    for &(name, v) in side {
        hyp.insert(name.into(), json!(v));
    }
    let core_holds = hypotheses.iter().all(|&p| facts.reports[&p].holds);
    let side_holds = side.iter().all(|&(_, v)| v);
    if !core_holds {
        let evidence = json!({ "hypotheses": hyp, "note": "hypothesis fails" });
        return ClaimVerdict::new(claim, &spec, Status::VacuouslyTrue, evidence);
    }
    let ring = facts.ring;
    let report = facts.get(conclusion).clone();
    let render = |x: &FElem| ring.to_json(*x);
    if report.holds {
        let v = WitnessVerifier::new(ring);
        let bad = report.witnesses.iter().find(|w| !v.verify(w));
        let mut evidence = json!({
            "hypotheses": hyp,
            "conclusion": { conclusion.as_str(): true },
            "checked": report.checked,
            "witnesses_rechecked": report.witnesses.len(),
            "witness_cap": report.witness_cap,
        });
        if let Some(w) = bad {
            evidence["failed_witness"] = w.to_json(&render);
            evidence["replay"] = json!(replay(&spec, conclusion));
            return ClaimVerdict::new(claim, &spec, Status::CounterexampleFound, evidence);
        }
        return ClaimVerdict::new(claim, &spec, Status::Verified, evidence);
    }
    let mut evidence = json!({
        "hypotheses": hyp,
        "conclusion": { conclusion.as_str(): false },
        "counterexample": report.counterexample.as_ref().map(|c| c.iter().map(render).collect::<Vec<_>>()),
        "replay": replay(&spec, conclusion),
    });
    if side_holds {
        ClaimVerdict::new(claim, &spec, Status::CounterexampleFound, evidence)
    } else {
        evidence["note"] = json!("standing assumption fails");
        ClaimVerdict::new(claim, &spec, Status::VacuouslyTrue, evidence)
    }
}

fn radical(mut n: u64) -> u64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            r *= p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn radical_quotient(facts: &mut Facts<'_>) -> Result<ClaimVerdict> {
    let spec = facts.ring.spec().clone();
    let RingSpec::Residue { n } = spec else {
        let evidence = json!({ "note": "the radical quotient is only constructed for Z/n" });
        return Ok(ClaimVerdict::new(Claim::RadicalQuotient, &spec, Status::Skipped, evidence));
    };
    let rad = radical(n);
    let radical_size = facts.ring.jacobson_radical().len() as u64;
    let quotient = FiniteRing::new(&RingSpec::Residue { n: rad })?;
    let here = facts.holds(Property::Asr1Right);
    let there = is_asr1_ring(&quotient, Side::Right)?.holds;
    let ok = here == there && radical_size * rad == n;
    let evidence = json!({
        "quotient": format!("Z/{rad}"),
        "radical_size": radical_size,
        "asr1-right": here,
        "quotient_asr1-right": there,
    });
    let status = if ok { Status::Verified } else { Status::CounterexampleFound };
    Ok(ClaimVerdict::new(Claim::RadicalQuotient, &spec, status, evidence))
}

fn commutative_images_finite(facts: &mut Facts<'_>) -> Result<Option<ClaimVerdict>> {
    let spec = facts.ring.spec().clone();
    if !facts.ring.commutative() {
        return Ok(None);
    }
    let RingSpec::Residue { n } = spec else {
        let evidence = json!({ "note": "proper images are only enumerated for Z/n" });
        return Ok(Some(ClaimVerdict::new(Claim::CommutativeImages, &spec, Status::Skipped, evidence)));
    };
    // Proper images of Z/n are Z/m for m | n, 1 < m < n.
    let mut images = Vec::new();
    for m in divisors(n).into_iter().filter(|&m| m > 1 && m < n) {
        let image = FiniteRing::new(&RingSpec::Residue { n: m })?;
        images.push((m, is_stable_range_1(&image).holds));
    }
    let images_sr1 = images.iter().all(|&(_, h)| h);
    let one_shift = facts.holds(Property::Asr1Right);
    let status = if images_sr1 == one_shift { Status::Verified } else { Status::CounterexampleFound };
    let evidence = json!({
        "images": images.iter().map(|(m, h)| json!({ "image": format!("Z/{m}"), "sr1": h })).collect::<Vec<_>>(),
        "asr1-right": one_shift,
    });
    Ok(Some(ClaimVerdict::new(Claim::CommutativeImages, &spec, status, evidence)))
}

/// All finite-ring verdicts for one entry, in claim order.
fn finite_verdicts(ring: &FiniteRing, claims: &[Claim], bounds: &Bounds) -> Result<Vec<ClaimVerdict>> {
    let mut facts = Facts::new(ring, bounds.witness_cap);
    let mut out = Vec::new();
    for &claim in claims {
        match claim {
            Claim::Sr1ImpliesAsr1 => {
                let side = [("right_bezout", facts.right_bezout())];
                out.push(implication(claim, &mut facts, &[Property::Sr1], &side, Property::Asr1Right));
            }
            Claim::Asr1ImpliesDyadic => {
                out.push(implication(claim, &mut facts, &[Property::Asr1Right], &[], Property::DyadicRight));
            }
            Claim::RadicalQuotient => out.push(radical_quotient(&mut facts)?),
            Claim::CommutativeImages => out.extend(commutative_images_finite(&mut facts)?),
            Claim::PrincipalForm => {
                let spec = ring.spec().clone();
                let form = two_sided_principal_form(ring);
                let two_sided = facts.holds(Property::Asr1TwoSided);
                let evidence = json!({
                    "bezout": facts.bezout(),
                    "asr1-2sided": two_sided,
                    "principal_form": form.holds,
                    "checked": form.checked,
                });
                let status = match form.agree {
                    None => Status::VacuouslyTrue,
                    Some(true) => Status::Verified,
                    Some(false) => Status::CounterexampleFound,
                };
                out.push(ClaimVerdict::new(claim, &spec, status, evidence));
            }
            Claim::LRingTwoSided => out.push(implication(
                claim,
                &mut facts,
                &[Property::LRing, Property::Asr1TwoSided],
                &[],
                Property::Asr1Right,
            )),
            Claim::BezoutTwoSided => {
                let side = [("bezout", facts.bezout())];
                let first = implication(claim, &mut facts, &[Property::Sr1], &side, Property::Asr1TwoSided);
                let second = implication(
                    claim,
                    &mut facts,
                    &[Property::LRing, Property::Asr1TwoSided],
                    &side,
                    Property::Sr2,
                );
                let status = [first.status, second.status]
                    .into_iter()
                    .max_by_key(|s| match s {
                        Status::CounterexampleFound => 3,
                        Status::Skipped => 2,
                        Status::Verified => 1,
                        Status::VacuouslyTrue => 0,
                    })
                    .expect("two parts");
                let evidence = json!({ "parts": [first.evidence, second.evidence] });
                out.push(ClaimVerdict::new(claim, ring.spec(), status, evidence));
            }
            Claim::SeparatingIdempotent | Claim::TwoByTwo => {}
        }
    }
    Ok(out)
}

/// The one-shift condition for sampled nonzero non-units `a`, against
/// stable range 1 of the image `R/aR`.
fn commutative_images_domain<D: EuclideanDomain>(ring: &D, bounds: &Bounds) -> Result<ClaimVerdict> {
    let mut checked = 0u64;
    let mut triples = 0u64;
    for i in 0..bounds.domain_bound {
        let a = ring.nth_element(i);
        if ring.is_zero(&a) || ring.is_unit(&a) || !ring.is_normalized(&a) {
            continue;
        }
        let image = FiniteRing::new(&ring.quotient_spec(&a)?)?;
        let image_sr1 = is_stable_range_1(&image);
        let shifts = domain_asr1_element(ring, &a, bounds.domain_bound)?;
        checked += 1;
        triples += shifts.checked;
        if image_sr1.holds != shifts.holds {
            let evidence = json!({
                "a": ring.to_json(&a),
                "image_sr1": image_sr1.holds,
                "asr1-element": shifts.holds,
                "counterexample": shifts.counterexample.map(|c| c.iter().map(|x| ring.to_json(x)).collect::<Vec<_>>()),
            });
            return Ok(ClaimVerdict::new(Claim::CommutativeImages, &ring.spec(), Status::CounterexampleFound, evidence));
        }
    }
    let evidence = json!({
        "elements": checked,
        "triples": triples,
        "domain_bound": bounds.domain_bound,
    });
    Ok(ClaimVerdict::new(Claim::CommutativeImages, &ring.spec(), Status::Verified, evidence))
}

fn separating_idempotents<D: EuclideanDomain>(ring: &D, bounds: &Bounds) -> Result<ClaimVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let range = 2 * bounds.t5_range;
    let mut neat: HashMap<D::Elem, bool> = HashMap::new();
    let mut too_large: HashSet<D::Elem> = HashSet::new();
    let mut found = 0usize;
    let mut attempts = 0usize;
    while found < bounds.t5_samples && attempts < 100 * bounds.t5_samples.max(1) {
        attempts += 1;
        let a = ring.normalize(&ring.nth_element(rng.gen_range(1..=range)));
        let b = ring.nth_element(rng.gen_range(0..=range));
        let c = ring.nth_element(rng.gen_range(0..=range));
        if ring.is_unit(&a) || !ring.is_one(&gcd(ring, &a, &gcd(ring, &b, &c))) {
            continue;
        }
        found += 1;
        let fail = |msg: String| {
            let evidence = json!({
                "a": ring.to_json(&a), "b": ring.to_json(&b), "c": ring.to_json(&c), "error": msg,
            });
            ClaimVerdict::new(Claim::SeparatingIdempotent, &ring.spec(), Status::CounterexampleFound, evidence)
        };
        match separating_idempotent(ring, &a, &b, &c) {
            Ok(w) if w.verify(ring) => {}
            Ok(_) => return Ok(fail("certificate failed re-verification".into())),
            Err(e) => return Ok(fail(e.to_string())),
        }
        if !neat.contains_key(&a) && !too_large.contains(&a) {
            let card = ring.quotient_spec(&a)?.cardinality().unwrap_or(u128::MAX);
            if card > bounds.neat_max_card as u128 {
                too_large.insert(a.clone());
                continue;
            }
            let clean = is_neat_element(ring, &a)?.report.holds;
            neat.insert(a.clone(), clean);
            if !clean {
                return Ok(fail("quotient is not clean".into()));
            }
        }
    }
    let evidence = json!({
        "triples": found,
        "quotients_checked_clean": neat.len(),
        "quotients_over_card_cap": too_large.len(),
        "index_range": range,
        "seed": bounds.seed,
    });
    Ok(ClaimVerdict::new(Claim::SeparatingIdempotent, &ring.spec(), Status::Verified, evidence))
}

fn two_by_two<D: EuclideanDomain>(ring: &D, bounds: &Bounds) -> Result<ClaimVerdict> {
    // Positive integers 1..=t12_max; for polynomial rings the first nonzero
    // elements in enumeration order.
    let elems: Vec<D::Elem> = (1..)
        .map(|i| ring.nth_element(i))
        .filter(|x| ring.is_normalized(x))
        .take(bounds.t12_max as usize)
        .collect();
    let mut checked = 0u64;
    for a in &elems {
        for b in &elems {
            for c in &elems {
                if !ring.is_one(&gcd(ring, a, &gcd(ring, b, c))) {
                    continue;
                }
                checked += 1;
                let red = reduce_two_by_two(ring, a, b, c)?;
                let m = Mat::new(2, 2, vec![a.clone(), ring.zero(), b.clone(), c.clone()])?;
                let snf = smith_normal_form(ring, &m);
                let expected = vec![ring.one(), ring.normalize(&ring.mul(a, c))];
                if !red.verify(ring) || !ring.is_unit(&red.z) || !snf.verify(ring) || snf.diag != expected {
                    let evidence = json!({
                        "a": ring.to_json(a), "b": ring.to_json(b), "c": ring.to_json(c),
                        "z": ring.to_json(&red.z),
                        "diag": snf.diag.iter().map(|x| ring.to_json(x)).collect::<Vec<_>>(),
                    });
                    return Ok(ClaimVerdict::new(Claim::TwoByTwo, &ring.spec(), Status::CounterexampleFound, evidence));
                }
            }
        }
    }
    let evidence = json!({ "triples": checked, "elements": elems.len() });
    Ok(ClaimVerdict::new(Claim::TwoByTwo, &ring.spec(), Status::Verified, evidence))
}

fn domain_verdicts<D: EuclideanDomain>(ring: &D, claims: &[Claim], bounds: &Bounds) -> Result<Vec<ClaimVerdict>> {
    let mut out = Vec::new();
    for &claim in claims {
        match claim {
            Claim::CommutativeImages => out.push(commutative_images_domain(ring, bounds)?),
            Claim::SeparatingIdempotent => out.push(separating_idempotents(ring, bounds)?),
            Claim::TwoByTwo => out.push(two_by_two(ring, bounds)?),
            _ => {}
        }
    }
    Ok(out)
}

fn entry_verdicts(entry: &CatalogEntry, claims: &[Claim], bounds: &Bounds) -> Result<Vec<ClaimVerdict>> {
    match &entry.spec {
        RingSpec::Integers => domain_verdicts(&Integers, claims, bounds),
        RingSpec::PolyOverPrimeField { p } => domain_verdicts(&PolyRing::new(*p)?, claims, bounds),
        spec => {
            spec.validate(bounds.max_card).map_err(|e| Error::Config(e.to_string()))?;
            finite_verdicts(&FiniteRing::new(spec)?, claims, bounds)
        }
    }
}

/// Runs the suite over the catalog. Entries are checked in parallel; the
/// verdicts come back ordered by claim, then catalog position.
pub fn run_suite(suite: Suite, catalog: &[CatalogEntry], bounds: &Bounds) -> Result<Vec<ClaimVerdict>> {
    let claims = suite.claims();
    let per_entry: Vec<Vec<ClaimVerdict>> = catalog
        .par_iter()
        .map(|e| entry_verdicts(e, &claims, bounds))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for claim in claims {
        for verdicts in &per_entry {
            out.extend(verdicts.iter().filter(|v| v.claim == claim).cloned());
        }
    }
    Ok(out)
}

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use serde_json::Value as Json;

use super::ideal::{IdealLattice, Side};
use super::{Ring, RingSpec};
use crate::{Error, Result};

/// Rings up to this size get dense addition and multiplication tables.
const TABLE_LIMIT: usize = 1024;

/// An element of a [`FiniteRing`]: a dense index in `0..card`.
///
/// The zero element is always index 0. Index order is the order used for
/// every "smallest witness" and "first counterexample" rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FElem(pub u32);

impl FElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Structured view of a finite-ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Residue(u64),
    Coeffs(Vec<u64>),
    Matrix(Vec<Vec<Payload>>),
    Tuple(Vec<Payload>),
}

impl Payload {
    pub fn to_json(&self) -> Json {
        match self {
            Payload::Residue(r) => Json::from(*r),
            Payload::Coeffs(c) => Json::from(c.clone()),
            Payload::Matrix(rows) => {
                Json::Array(rows.iter().map(|r| Json::Array(r.iter().map(Payload::to_json).collect())).collect())
            }
            Payload::Tuple(parts) => Json::Array(parts.iter().map(Payload::to_json).collect()),
        }
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Tuple(parts) => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            other => write!(f, "{}", other.to_json()),
        }
    }
}

enum Kind {
    Residue { n: u64 },
    PolyQuotient { p: u64, modulus: Vec<u64> },
    Matrix { k: usize, base: Box<FiniteRing> },
    Upper { k: usize, base: Box<FiniteRing>, slots: Vec<(usize, usize)> },
    Product { parts: Vec<FiniteRing> },
}

#[derive(Default)]
struct Cache {
    commutative: OnceLock<bool>,
    inverses: OnceLock<Vec<Option<FElem>>>,
    units: OnceLock<Vec<FElem>>,
    idempotents: OnceLock<Vec<FElem>>,
    radical: OnceLock<Vec<FElem>>,
    lattices: [OnceLock<IdealLattice>; 3],
}

/// A finite ring realized from a [`RingSpec`].
///
/// Elements are dense indices; arithmetic goes through lookup tables for
/// small rings and through the structural definition otherwise. Derived sets
/// (units, idempotents, radical, ideal lattices) are computed on first use
/// and cached; the ring is immutable afterwards and safe to share.
pub struct FiniteRing {
    spec: RingSpec,
    card: usize,
    kind: Kind,
    one: FElem,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
    additive_gens: Vec<FElem>,
    cache: Cache,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing").field("spec", &self.spec.to_string()).field("card", &self.card).finish()
    }
}

impl FiniteRing {
    /// Realizes a finite spec. The spec is assumed validated (see
    /// [`RingSpec::validate`]); only finiteness and index width are rechecked.
    pub fn new(spec: &RingSpec) -> Result<Self> {
        let card = spec
            .cardinality()
            .filter(|&c| c <= u32::MAX as u128)
            .ok_or_else(|| Error::UnsupportedRing(format!("{spec} is not an enumerable finite ring")))?
            as usize;
        let kind = match spec {
            RingSpec::Residue { n } => Kind::Residue { n: *n },
            RingSpec::PolyQuotient { p, modulus } => Kind::PolyQuotient { p: *p, modulus: modulus.clone() },
            RingSpec::Matrix { k, base } => Kind::Matrix { k: *k, base: Box::new(FiniteRing::new(base)?) },
            RingSpec::UpperTriangular { k, base } => {
                let slots = (0..*k).flat_map(|i| (i..*k).map(move |j| (i, j))).collect();
                Kind::Upper { k: *k, base: Box::new(FiniteRing::new(base)?), slots }
            }
            RingSpec::Product(parts) => {
                Kind::Product { parts: parts.iter().map(FiniteRing::new).collect::<Result<_>>()? }
            }
            RingSpec::Integers | RingSpec::PolyOverPrimeField { .. } => unreachable!("cardinality is None"),
        };
        let mut ring = FiniteRing {
            spec: spec.clone(),
            card,
            kind,
            one: FElem(0),
            add_table: None,
            mul_table: None,
            neg_table: Vec::new(),
            additive_gens: Vec::new(),
            cache: Cache::default(),
        };
        ring.one = ring.structural_one();
        ring.additive_gens = ring.structural_additive_gens();
        ring.neg_table = (0..card as u32).map(|i| ring.structural_neg(FElem(i)).0).collect();
        if card <= TABLE_LIMIT {
            let mut add = Vec::with_capacity(card * card);
            let mut mul = Vec::with_capacity(card * card);
            for i in 0..card as u32 {
                for j in 0..card as u32 {
                    add.push(ring.structural_add(FElem(i), FElem(j)).0);
                    mul.push(ring.structural_mul(FElem(i), FElem(j)).0);
                }
            }
            ring.add_table = Some(add);
            ring.mul_table = Some(mul);
        }
        Ok(ring)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let spec = super::parse_ring_spec(text)?;
        if !spec.is_finite() {
            return Err(Error::UnsupportedRing(format!("{spec} is infinite")));
        }
        Self::new(&spec)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn elements(&self) -> impl Iterator<Item = FElem> + Clone {
        (0..self.card as u32).map(FElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FElem> + Clone {
        (1..self.card as u32).map(FElem)
    }

    /// A set of elements generating the additive group.
    pub fn additive_gens(&self) -> &[FElem] {
        &self.additive_gens
    }

    pub fn contains(&self, x: FElem) -> bool {
        x.index() < self.card
    }

    // ---- structural arithmetic -------------------------------------------------

    fn radix(&self) -> (usize, u64) {
        match &self.kind {
            Kind::Residue { n } => (1, *n),
            Kind::PolyQuotient { p, modulus } => (modulus.len() - 1, *p),
            Kind::Matrix { k, base } => (k * k, base.card as u64),
            Kind::Upper { base, slots, .. } => (slots.len(), base.card as u64),
            Kind::Product { .. } => unreachable!("products use mixed radices"),
        }
    }

    fn digits(&self, x: FElem) -> Vec<u32> {
        let mut rest = x.0 as u64;
        match &self.kind {
            Kind::Product { parts } => parts
                .iter()
                .map(|part| {
                    let d = rest % part.card as u64;
                    rest /= part.card as u64;
                    d as u32
                })
                .collect(),
            _ => {
                let (len, radix) = self.radix();
                (0..len)
                    .map(|_| {
                        let d = rest % radix;
                        rest /= radix;
                        d as u32
                    })
                    .collect()
            }
        }
    }

    fn encode(&self, digits: &[u32]) -> FElem {
        let mut acc = 0u64;
        match &self.kind {
            Kind::Product { parts } => {
                for (d, part) in digits.iter().zip(parts).rev() {
                    acc = acc * part.card as u64 + *d as u64;
                }
            }
            _ => {
                let radix = self.radix().1;
                for d in digits.iter().rev() {
                    acc = acc * radix + *d as u64;
                }
            }
        }
        FElem(acc as u32)
    }

    fn structural_one(&self) -> FElem {
        match &self.kind {
            Kind::Residue { .. } => FElem(1),
            Kind::PolyQuotient { .. } => FElem(1),
            Kind::Matrix { k, base } => {
                let mut d = vec![0u32; k * k];
                for i in 0..*k {
                    d[i * k + i] = base.one.0;
                }
                self.encode(&d)
            }
            Kind::Upper { base, slots, .. } => {
                let d: Vec<u32> = slots.iter().map(|&(i, j)| if i == j { base.one.0 } else { 0 }).collect();
                self.encode(&d)
            }
            Kind::Product { parts } => {
                let d: Vec<u32> = parts.iter().map(|p| p.one.0).collect();
                self.encode(&d)
            }
        }
    }

    fn structural_additive_gens(&self) -> Vec<FElem> {
        match &self.kind {
            Kind::Residue { .. } => vec![FElem(1)],
            Kind::PolyQuotient { modulus, .. } => {
                (0..modulus.len() - 1).map(|i| {
                    let mut d = vec![0u32; modulus.len() - 1];
                    d[i] = 1;
                    self.encode(&d)
                }).collect()
            }
            Kind::Matrix { base, .. } | Kind::Upper { base, .. } => {
                let len = self.radix().0;
                let mut gens = Vec::new();
                for slot in 0..len {
                    for g in &base.additive_gens {
                        let mut d = vec![0u32; len];
                        d[slot] = g.0;
                        gens.push(self.encode(&d));
                    }
                }
                gens
            }
            Kind::Product { parts } => {
                let mut gens = Vec::new();
                for (i, part) in parts.iter().enumerate() {
                    for g in &part.additive_gens {
                        let mut d = vec![0u32; parts.len()];
                        d[i] = g.0;
                        gens.push(self.encode(&d));
                    }
                }
                gens
            }
        }
    }

    fn structural_add(&self, a: FElem, b: FElem) -> FElem {
        match &self.kind {
            Kind::Residue { n } => FElem(((a.0 as u64 + b.0 as u64) % n) as u32),
            Kind::PolyQuotient { p, .. } => {
                let (da, db) = (self.digits(a), self.digits(b));
                let d: Vec<u32> = da.iter().zip(&db).map(|(x, y)| ((*x as u64 + *y as u64) % p) as u32).collect();
                self.encode(&d)
            }
            Kind::Matrix { base, .. } | Kind::Upper { base, .. } => {
                let (da, db) = (self.digits(a), self.digits(b));
                let d: Vec<u32> = da.iter().zip(&db).map(|(x, y)| base.add_idx(*x, *y)).collect();
                self.encode(&d)
            }
            Kind::Product { parts } => {
                let (da, db) = (self.digits(a), self.digits(b));
                let d: Vec<u32> =
                    parts.iter().zip(da.iter().zip(&db)).map(|(part, (x, y))| part.add_idx(*x, *y)).collect();
                self.encode(&d)
            }
        }
    }

    fn structural_mul(&self, a: FElem, b: FElem) -> FElem {
        match &self.kind {
            Kind::Residue { n } => FElem(((a.0 as u64 * b.0 as u64) % n) as u32),
            Kind::PolyQuotient { p, modulus } => {
                let (da, db) = (self.digits(a), self.digits(b));
                let deg = modulus.len() - 1;
                let mut prod = vec![0u64; 2 * deg];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
                    }
                }
                // Reduce by the monic modulus from the top down.
                for i in (deg..prod.len()).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    for (j, &m) in modulus.iter().enumerate() {
                        let slot = &mut prod[i - deg + j];
                        *slot = (*slot + p - (c * m) % p) % p;
                    }
                }
                let d: Vec<u32> = prod[..deg].iter().map(|&c| c as u32).collect();
                self.encode(&d)
            }
            Kind::Matrix { k, base } => {
                let (da, db) = (self.digits(a), self.digits(b));
                let k = *k;
                let mut d = vec![0u32; k * k];
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = 0u32;
                        for l in 0..k {
                            acc = base.add_idx(acc, base.mul_idx(da[i * k + l], db[l * k + j]));
                        }
                        d[i * k + j] = acc;
                    }
                }
                self.encode(&d)
            }
            Kind::Upper { k, base, slots } => {
                let k = *k;
                let full = |x: FElem| {
                    let mut m = vec![0u32; k * k];
                    for (slot, v) in slots.iter().zip(self.digits(x)) {
                        m[slot.0 * k + slot.1] = v;
                    }
                    m
                };
                let (ma, mb) = (full(a), full(b));
                let d: Vec<u32> = slots
                    .iter()
                    .map(|&(i, j)| {
                        let mut acc = 0u32;
                        for l in i..=j {
                            acc = base.add_idx(acc, base.mul_idx(ma[i * k + l], mb[l * k + j]));
                        }
                        acc
                    })
                    .collect();
                self.encode(&d)
            }
            Kind::Product { parts } => {
                let (da, db) = (self.digits(a), self.digits(b));
                let d: Vec<u32> =
                    parts.iter().zip(da.iter().zip(&db)).map(|(part, (x, y))| part.mul_idx(*x, *y)).collect();
                self.encode(&d)
            }
        }
    }

    fn add_idx(&self, a: u32, b: u32) -> u32 {
        self.add_elem(FElem(a), FElem(b)).0
    }

    fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.mul_elem(FElem(a), FElem(b)).0
    }

    #[inline]
    pub fn add_elem(&self, a: FElem, b: FElem) -> FElem {
        match &self.add_table {
            Some(t) => FElem(t[a.index() * self.card + b.index()]),
            None => self.structural_add(a, b),
        }
    }

    #[inline]
    pub fn mul_elem(&self, a: FElem, b: FElem) -> FElem {
        match &self.mul_table {
            Some(t) => FElem(t[a.index() * self.card + b.index()]),
            None => self.structural_mul(a, b),
        }
    }

    #[inline]
    pub fn neg_elem(&self, a: FElem) -> FElem {
        FElem(self.neg_table[a.index()])
    }

    fn structural_neg(&self, a: FElem) -> FElem {
        match &self.kind {
            Kind::Residue { n } => FElem(((n - a.0 as u64) % n) as u32),
            Kind::PolyQuotient { p, .. } => {
                let d: Vec<u32> = self.digits(a).iter().map(|&x| ((p - x as u64) % p) as u32).collect();
                self.encode(&d)
            }
            Kind::Matrix { base, .. } | Kind::Upper { base, .. } => {
                let d: Vec<u32> = self.digits(a).iter().map(|&x| base.neg_elem(FElem(x)).0).collect();
                self.encode(&d)
            }
            Kind::Product { parts } => {
                let d: Vec<u32> =
                    parts.iter().zip(self.digits(a)).map(|(p, x)| p.neg_elem(FElem(x)).0).collect();
                self.encode(&d)
            }
        }
    }

    pub fn sub_elem(&self, a: FElem, b: FElem) -> FElem {
        self.add_elem(a, self.neg_elem(b))
    }

    // ---- element I/O -------------------------------------------------------------

    pub fn payload(&self, x: FElem) -> Payload {
        match &self.kind {
            Kind::Residue { .. } => Payload::Residue(x.0 as u64),
            Kind::PolyQuotient { .. } => {
                let mut c: Vec<u64> = self.digits(x).into_iter().map(u64::from).collect();
                while c.last() == Some(&0) {
                    c.pop();
                }
                Payload::Coeffs(c)
            }
            Kind::Matrix { k, base } => {
                let d = self.digits(x);
                Payload::Matrix(
                    (0..*k).map(|i| (0..*k).map(|j| base.payload(FElem(d[i * k + j]))).collect()).collect(),
                )
            }
            Kind::Upper { k, base, slots } => {
                let d = self.digits(x);
                let mut rows = vec![vec![base.payload(FElem(0)); *k]; *k];
                for (slot, v) in slots.iter().zip(d) {
                    rows[slot.0][slot.1] = base.payload(FElem(v));
                }
                Payload::Matrix(rows)
            }
            Kind::Product { parts } => {
                let d = self.digits(x);
                Payload::Tuple(parts.iter().zip(d).map(|(p, v)| p.payload(FElem(v))).collect())
            }
        }
    }

    pub fn to_json(&self, x: FElem) -> Json {
        self.payload(x).to_json()
    }

    pub fn render(&self, x: FElem) -> String {
        self.payload(x).to_string()
    }

    /// Parses the JSON form produced by [`FiniteRing::to_json`]. Residues may
    /// be given as numbers or decimal strings (negative values are reduced).
    pub fn parse_json(&self, v: &Json) -> Result<FElem> {
        let bad = || Error::InvalidElement(format!("{v} is not an element of {}", self.spec));
        match &self.kind {
            Kind::Residue { n } => {
                let r: i128 = match v {
                    Json::Number(num) => num.as_i64().map(i128::from).ok_or_else(bad)?,
                    Json::String(s) => s.trim().parse().map_err(|_| bad())?,
                    _ => return Err(bad()),
                };
                Ok(FElem(r.rem_euclid(*n as i128) as u32))
            }
            Kind::PolyQuotient { p, modulus } => {
                let ring = super::PolyRing::new(*p)?;
                let poly = ring.parse_json(v)?;
                let m = ring.from_coeffs(&modulus.iter().map(|&c| c as i64).collect::<Vec<_>>());
                let r = super::EuclideanDomain::reduce_mod(&ring, &poly, &m);
                Ok(self.from_coefficients(r.coeffs()))
            }
            Kind::Matrix { k, base } | Kind::Upper { k, base, .. } => {
                let rows = v.as_array().filter(|r| r.len() == *k).ok_or_else(bad)?;
                let mut full = vec![0u32; k * k];
                for (i, row) in rows.iter().enumerate() {
                    let row = row.as_array().filter(|r| r.len() == *k).ok_or_else(bad)?;
                    for (j, entry) in row.iter().enumerate() {
                        full[i * k + j] = base.parse_json(entry)?.0;
                    }
                }
                match &self.kind {
                    Kind::Upper { slots, .. } => {
                        for i in 0..*k {
                            for j in 0..i {
                                if full[i * k + j] != 0 {
                                    return Err(Error::InvalidElement(format!(
                                        "{v} has a nonzero entry below the diagonal"
                                    )));
                                }
                            }
                        }
                        let d: Vec<u32> = slots.iter().map(|&(i, j)| full[i * k + j]).collect();
                        Ok(self.encode(&d))
                    }
                    _ => Ok(self.encode(&full)),
                }
            }
            Kind::Product { parts } => {
                let items = v.as_array().filter(|r| r.len() == parts.len()).ok_or_else(bad)?;
                let d = parts.iter().zip(items).map(|(p, item)| p.parse_json(item).map(|e| e.0)).collect::<Result<Vec<_>>>()?;
                Ok(self.encode(&d))
            }
        }
    }

    /// Parses command-line text: JSON, or a bare residue/polynomial.
    pub fn parse_text(&self, text: &str) -> Result<FElem> {
        let t = text.trim();
        match serde_json::from_str::<Json>(t) {
            Ok(v) => self.parse_json(&v),
            Err(_) => self.parse_json(&Json::String(t.to_string())),
        }
    }

    /// Element of a residue ring.
    pub fn from_residue(&self, r: u64) -> FElem {
        match &self.kind {
            Kind::Residue { n } => FElem((r % n) as u32),
            _ => panic!("from_residue on {}", self.spec),
        }
    }

    /// Element of a polynomial quotient from (reduced) ascending coefficients
    /// of degree below the modulus degree.
    pub fn from_coefficients(&self, coeffs: &[u64]) -> FElem {
        match &self.kind {
            Kind::PolyQuotient { p, modulus } => {
                let deg = modulus.len() - 1;
                assert!(coeffs.len() <= deg, "coefficients exceed the quotient degree");
                let mut d = vec![0u32; deg];
                for (slot, c) in d.iter_mut().zip(coeffs) {
                    *slot = (c % p) as u32;
                }
                self.encode(&d)
            }
            _ => panic!("from_coefficients on {}", self.spec),
        }
    }

    /// The matrix unit `E_(i+1)(j+1)` of a matrix or upper-triangular ring
    /// (0-based indices).
    pub fn matrix_unit(&self, i: usize, j: usize) -> Option<FElem> {
        match &self.kind {
            Kind::Matrix { k, base } if i < *k && j < *k => {
                let mut d = vec![0u32; k * k];
                d[i * k + j] = base.one.0;
                Some(self.encode(&d))
            }
            Kind::Upper { base, slots, .. } => {
                let pos = slots.iter().position(|&s| s == (i, j))?;
                let mut d = vec![0u32; slots.len()];
                d[pos] = base.one.0;
                Some(self.encode(&d))
            }
            _ => None,
        }
    }

    /// Embeds component elements into a product ring.
    pub fn tuple(&self, parts: &[FElem]) -> Option<FElem> {
        match &self.kind {
            Kind::Product { parts: rings } if rings.len() == parts.len() => {
                let d: Vec<u32> = parts.iter().map(|e| e.0).collect();
                Some(self.encode(&d))
            }
            _ => None,
        }
    }

    /// Integer multiple `m * 1`.
    pub fn from_int(&self, m: i64) -> FElem {
        let mut acc = FElem(0);
        for _ in 0..m.unsigned_abs() {
            acc = self.add_elem(acc, self.one);
        }
        if m < 0 {
            self.neg_elem(acc)
        } else {
            acc
        }
    }

    // ---- cached structure ----------------------------------------------------------

    pub fn commutative(&self) -> bool {
        *self.cache.commutative.get_or_init(|| {
            // Commutativity of the additive generators suffices.
            let gens = &self.additive_gens;
            gens.iter().all(|&a| gens.iter().all(|&b| self.mul_elem(a, b) == self.mul_elem(b, a)))
        })
    }

    fn inverses(&self) -> &[Option<FElem>] {
        self.cache.inverses.get_or_init(|| {
            let one = self.one;
            let mut inv = vec![None; self.card];
            for x in self.elements() {
                if inv[x.index()].is_some() {
                    continue;
                }
                if let Some(y) = self.elements().find(|&y| self.mul_elem(x, y) == one && self.mul_elem(y, x) == one) {
                    inv[x.index()] = Some(y);
                    inv[y.index()] = Some(x);
                }
            }
            inv
        })
    }

    pub fn inverse(&self, x: FElem) -> Option<FElem> {
        self.inverses()[x.index()]
    }

    /// All units, ascending.
    pub fn units(&self) -> &[FElem] {
        self.cache.units.get_or_init(|| self.elements().filter(|&x| self.inverse(x).is_some()).collect())
    }

    /// All idempotents, ascending.
    pub fn idempotents(&self) -> &[FElem] {
        self.cache.idempotents.get_or_init(|| self.elements().filter(|&e| self.mul_elem(e, e) == e).collect())
    }

    /// `{x : 1 - r x is a unit for every r}`.
    ///
    /// In a finite ring one-sided invertibility implies invertibility, so
    /// this single criterion is the Jacobson radical; no left/right variant
    /// is needed.
    pub fn jacobson_radical(&self) -> &[FElem] {
        self.cache.radical.get_or_init(|| {
            self.elements()
                .filter(|&x| {
                    self.elements().all(|r| self.inverse(self.sub_elem(self.one, self.mul_elem(r, x))).is_some())
                })
                .collect()
        })
    }

    pub fn lattice(&self, side: Side) -> &IdealLattice {
        let slot = match side {
            Side::Right => 0,
            Side::Left => 1,
            Side::TwoSided => 2,
        };
        self.cache.lattices[slot].get_or_init(|| IdealLattice::build(self, side))
    }
}

impl Ring for FiniteRing {
    type Elem = FElem;

    fn zero(&self) -> FElem {
        FElem(0)
    }

    fn one(&self) -> FElem {
        self.one
    }

    fn add(&self, a: &FElem, b: &FElem) -> FElem {
        self.add_elem(*a, *b)
    }

    fn neg(&self, a: &FElem) -> FElem {
        self.neg_elem(*a)
    }

    fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        self.mul_elem(*a, *b)
    }

    fn is_unit(&self, a: &FElem) -> bool {
        self.inverse(*a).is_some()
    }

    fn is_commutative(&self) -> bool {
        self.commutative()
    }
}

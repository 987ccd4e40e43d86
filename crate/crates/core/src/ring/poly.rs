use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EuclideanDomain, FElem, FiniteRing, Ring, RingSpec};
use crate::{Error, Result};

/// A polynomial over `F_p`, stored as ascending coefficients in `[0, p)`
/// with no trailing zeros (the zero polynomial is the empty sequence).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: u64) -> Self {
        Self::from_reduced(vec![c])
    }

    /// Builds from coefficients already reduced mod `p`, trimming trailing zeros.
    fn from_reduced(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `F_p[x]` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyRing {
    p: u64,
}

impl PolyRing {
    pub fn new(p: u64) -> Result<Self> {
        if !super::is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(PolyRing { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn reduce(&self, c: i128) -> u64 {
        c.rem_euclid(self.p as i128) as u64
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        // Fermat: a^(p-2).
        let mut base = a % self.p;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    /// Polynomial from ascending integer coefficients, reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Poly {
        Poly::from_reduced(coeffs.iter().map(|&c| self.reduce(c as i128)).collect())
    }

    pub fn monomial(&self, c: u64, deg: usize) -> Poly {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c % self.p;
        Poly::from_reduced(coeffs)
    }

    pub fn x(&self) -> Poly {
        self.monomial(1, 1)
    }

    pub fn scale(&self, a: &Poly, c: u64) -> Poly {
        Poly::from_reduced(a.coeffs.iter().map(|&x| self.mulmod(x, c)).collect())
    }

    /// Parses `c0 + c1*x + c2*x^2 - ...` (terms in any order, implicit
    /// coefficients allowed, e.g. `x^2 + 2x - 1`).
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidElement("empty polynomial".into()));
        }
        let bad = |msg: &str| Error::InvalidElement(format!("{msg} in polynomial `{text}`"));
        let mut coeffs: Vec<i128> = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i128;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("expected `+` or `-`"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: Option<i128> = if i > start {
                Some(s[start..i].parse().map_err(|_| bad("coefficient overflow"))?)
            } else {
                None
            };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                if i >= bytes.len() || bytes[i] != b'x' {
                    return Err(bad("expected `x` after `*`"));
                }
            }
            let mut deg = 0usize;
            if i < bytes.len() && bytes[i] == b'x' {
                i += 1;
                deg = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if es == i {
                        return Err(bad("missing exponent"));
                    }
                    deg = s[es..i].parse().map_err(|_| bad("exponent overflow"))?;
                    if deg > 1 << 16 {
                        return Err(bad("exponent too large"));
                    }
                }
            } else if coeff.is_none() {
                return Err(bad("empty term"));
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            let c = coeff.unwrap_or(1) % self.p as i128;
            coeffs[deg] = (coeffs[deg] + sign * c) % self.p as i128;
        }
        Ok(Poly::from_reduced(coeffs.into_iter().map(|c| self.reduce(c)).collect()))
    }

    /// Parses either polynomial text or a JSON coefficient array.
    pub fn parse_json(&self, v: &serde_json::Value) -> Result<Poly> {
        match v {
            serde_json::Value::Array(items) => {
                let mut coeffs = Vec::with_capacity(items.len());
                for item in items {
                    let c = match item {
                        serde_json::Value::Number(n) => n.as_i64(),
                        serde_json::Value::String(s) => s.trim().parse::<i64>().ok(),
                        _ => None,
                    }
                    .ok_or_else(|| Error::InvalidElement(format!("bad coefficient {item}")))?;
                    coeffs.push(c);
                }
                Ok(self.from_coeffs(&coeffs))
            }
            serde_json::Value::String(s) => self.parse(s),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|c| self.from_coeffs(&[c]))
                .ok_or_else(|| Error::InvalidElement(format!("bad constant {n}"))),
            other => Err(Error::InvalidElement(format!("expected polynomial, got {other}"))),
        }
    }

    /// Parses command-line input: a JSON array `[c0,c1,...]` or polynomial text.
    pub fn parse_arg(&self, text: &str) -> Result<Poly> {
        let t = text.trim();
        if t.starts_with('[') {
            let v: serde_json::Value = serde_json::from_str(t)
                .map_err(|e| Error::InvalidElement(format!("{t}: {e}")))?;
            self.parse_json(&v)
        } else {
            self.parse(t)
        }
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(1)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).copied().unwrap_or(0);
                let y = b.coeffs.get(i).copied().unwrap_or(0);
                ((x as u128 + y as u128) % self.p as u128) as u64
            })
            .collect();
        Poly::from_reduced(coeffs)
    }

    fn neg(&self, a: &Poly) -> Poly {
        Poly::from_reduced(
            a.coeffs.iter().map(|&c| if c == 0 { 0 } else { self.p - c }).collect(),
        )
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                let t = self.mulmod(x, y);
                out[i + j] = ((out[i + j] as u128 + t as u128) % self.p as u128) as u64;
            }
        }
        Poly::from_reduced(out)
    }

    fn is_unit(&self, a: &Poly) -> bool {
        a.degree() == Some(0)
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

impl EuclideanDomain for PolyRing {
    /// Degree, with `None` for the zero polynomial.
    type Size = Option<usize>;

    fn size(&self, a: &Poly) -> Option<usize> {
        a.degree()
    }

    fn div_rem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = self.inv(b.leading());
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut quot = vec![0u64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = self.mulmod(c, lead_inv);
            quot[i - db] = q;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let t = self.mulmod(q, bj);
                let slot = &mut rem[i - db + j];
                *slot = (*slot + self.p - t) % self.p;
            }
        }
        rem.truncate(db);
        (Poly::from_reduced(quot), Poly::from_reduced(rem))
    }

    fn normalizing_unit(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            self.one()
        } else {
            Poly::constant(self.inv(a.leading()))
        }
    }

    fn unit_inverse(&self, u: &Poly) -> Option<Poly> {
        self.is_unit(u).then(|| Poly::constant(self.inv(u.leading())))
    }

    fn unit_group(&self) -> Vec<Poly> {
        (1..self.p).map(Poly::constant).collect()
    }

    fn multiplicity_bound(&self, a: &Poly) -> u64 {
        a.degree().unwrap_or(0) as u64
    }

    fn reduce_mod(&self, a: &Poly, m: &Poly) -> Poly {
        self.div_rem(a, m).1
    }

    fn nth_element(&self, mut i: u64) -> Poly {
        // Base-p digits are the ascending coefficients.
        let mut coeffs = Vec::new();
        while i > 0 {
            coeffs.push(i % self.p);
            i /= self.p;
        }
        Poly::from_reduced(coeffs)
    }

    fn quotient_spec(&self, a: &Poly) -> Result<RingSpec> {
        match a.degree() {
            None => Err(Error::Domain("quotient by zero is infinite".into())),
            Some(0) => Err(Error::Domain("quotient by a unit is the zero ring".into())),
            Some(_) => {
                let monic = self.normalize(a);
                Ok(RingSpec::PolyQuotient { p: self.p, modulus: monic.coeffs })
            }
        }
    }

    fn to_quotient(&self, modulus: &Poly, ring: &FiniteRing, x: &Poly) -> FElem {
        let r = self.reduce_mod(x, modulus);
        ring.from_coefficients(r.coeffs())
    }

    fn render(&self, a: &Poly) -> String {
        a.to_string()
    }

    fn to_json(&self, a: &Poly) -> serde_json::Value {
        serde_json::Value::from(a.coeffs.clone())
    }

    fn spec(&self) -> RingSpec {
        RingSpec::PolyOverPrimeField { p: self.p }
    }
}

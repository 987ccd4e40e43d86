use std::fmt;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Default cap on the cardinality of a finite ring.
pub const DEFAULT_MAX_CARD: u64 = 1 << 16;

/// Description of a concrete ring.
///
/// Grammar (whitespace-insensitive):
///
/// ```text
/// spec   := term ('x' term)*
/// term   := 'Z' | 'Z/' n | 'F' p '[x]' ('/(' c0 ',' c1 ',' ... ')')?
///         | 'M' k '(' spec ')' | 'UT' k '(' spec ')' | '(' spec ')'
/// ```
///
/// `F<p>[x]/(c0,...,cd)` is the finite quotient of `F_p[x]` by the
/// polynomial with ascending coefficients `c0..cd`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    PolyOverPrimeField { p: u64 },
    Residue { n: u64 },
    /// `F_p[x]/(f)` with `f` monic of degree at least one (ascending coefficients).
    PolyQuotient { p: u64, modulus: Vec<u64> },
    Matrix { k: usize, base: Box<RingSpec> },
    UpperTriangular { k: usize, base: Box<RingSpec> },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn is_finite(&self) -> bool {
        !matches!(self, RingSpec::Integers | RingSpec::PolyOverPrimeField { .. })
    }

    /// Exact cardinality of a finite spec, `None` for infinite specs or on overflow.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            RingSpec::Integers | RingSpec::PolyOverPrimeField { .. } => None,
            RingSpec::Residue { n } => Some(*n as u128),
            RingSpec::PolyQuotient { p, modulus } => {
                (*p as u128).checked_pow(modulus.len() as u32 - 1)
            }
            RingSpec::Matrix { k, base } => base.cardinality()?.checked_pow((k * k) as u32),
            RingSpec::UpperTriangular { k, base } => {
                base.cardinality()?.checked_pow((k * (k + 1) / 2) as u32)
            }
            RingSpec::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, p| acc.checked_mul(p.cardinality()?)),
        }
    }

    /// Checks the structural invariants and the cardinality bound.
    pub fn validate(&self, max_card: u64) -> Result<()> {
        match self {
            RingSpec::Integers => return Ok(()),
            RingSpec::PolyOverPrimeField { p } => {
                if !is_prime(*p) {
                    return Err(Error::Domain(format!("{p} is not prime")));
                }
                return Ok(());
            }
            RingSpec::Residue { n } => {
                if *n < 2 {
                    return Err(Error::Domain(format!("Z/{n} is the zero ring; need n >= 2")));
                }
            }
            RingSpec::PolyQuotient { p, modulus } => {
                if !is_prime(*p) {
                    return Err(Error::Domain(format!("{p} is not prime")));
                }
                if modulus.len() < 2 || modulus.last() != Some(&1) {
                    return Err(Error::Domain(
                        "quotient modulus must be monic of degree >= 1".into(),
                    ));
                }
                if modulus.iter().any(|c| c >= p) {
                    return Err(Error::Domain("quotient coefficients must be reduced".into()));
                }
            }
            RingSpec::Matrix { k, base } | RingSpec::UpperTriangular { k, base } => {
                let min = if matches!(self, RingSpec::Matrix { .. }) { 1 } else { 2 };
                if *k < min {
                    return Err(Error::Domain(format!("matrix size {k} is below {min}")));
                }
                if !base.is_finite() {
                    return Err(Error::Domain(format!("base ring {base} must be finite")));
                }
                base.validate(max_card)?;
            }
            RingSpec::Product(parts) => {
                if parts.len() < 2 {
                    return Err(Error::Domain("a product needs at least two factors".into()));
                }
                for part in parts {
                    if !part.is_finite() {
                        return Err(Error::Domain(format!("product factor {part} must be finite")));
                    }
                    part.validate(max_card)?;
                }
            }
        }
        match self.cardinality() {
            Some(c) if c <= max_card as u128 => Ok(()),
            Some(c) => Err(Error::Domain(format!(
                "{self} has {c} elements, above the bound {max_card}"
            ))),
            None => Err(Error::Domain(format!("{self} is too large to enumerate"))),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::PolyOverPrimeField { p } => write!(f, "F{p}[x]"),
            RingSpec::Residue { n } => write!(f, "Z/{n}"),
            RingSpec::PolyQuotient { p, modulus } => {
                write!(f, "F{p}[x]/(")?;
                for (i, c) in modulus.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            RingSpec::Matrix { k, base } => write!(f, "M{k}({base})"),
            RingSpec::UpperTriangular { k, base } => write!(f, "UT{k}({base})"),
            RingSpec::Product(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    if matches!(part, RingSpec::Product(_)) {
                        write!(f, "({part})")?;
                    } else {
                        write!(f, "{part}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    parse_ring_spec_with_bound(text, DEFAULT_MAX_CARD)
}

pub fn parse_ring_spec_with_bound(text: &str, max_card: u64) -> Result<RingSpec> {
    let compact: Vec<(usize, u8)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i, if c.is_ascii() { c as u8 } else { 0 }))
        .collect();
    let mut parser = Parser { src: &compact, pos: 0, end: text.len() };
    let spec = parser.spec()?;
    if parser.pos != compact.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    spec.validate(max_card)?;
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [(usize, u8)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.src.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.offset(), msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| self.error("number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok(value)
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let mut parts = vec![self.term()?];
        while self.eat(b'x') {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { RingSpec::Product(parts) })
    }

    fn term(&mut self) -> Result<RingSpec> {
        match self.peek() {
            Some(b'Z') => {
                self.pos += 1;
                if self.eat(b'/') {
                    Ok(RingSpec::Residue { n: self.number()? })
                } else {
                    Ok(RingSpec::Integers)
                }
            }
            Some(b'F') => {
                self.pos += 1;
                let p = self.number()?;
                self.expect(b'[')?;
                self.expect(b'x')?;
                self.expect(b']')?;
                if !self.eat(b'/') {
                    return Ok(RingSpec::PolyOverPrimeField { p });
                }
                self.expect(b'(')?;
                let mut coeffs = vec![self.number()?];
                while self.eat(b',') {
                    coeffs.push(self.number()?);
                }
                self.expect(b')')?;
                if !is_prime(p) {
                    return Err(Error::Domain(format!("{p} is not prime")));
                }
                let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                if coeffs.len() < 2 {
                    return Err(Error::Domain("quotient modulus must have degree >= 1".into()));
                }
                let lead = *coeffs.last().unwrap();
                let inv = modpow(lead, p - 2, p);
                let modulus = coeffs
                    .into_iter()
                    .map(|c| ((c as u128 * inv as u128) % p as u128) as u64)
                    .collect();
                Ok(RingSpec::PolyQuotient { p, modulus })
            }
            Some(b'M') => {
                self.pos += 1;
                let k = self.number()? as usize;
                let base = self.parenthesized()?;
                Ok(RingSpec::Matrix { k, base: Box::new(base) })
            }
            Some(b'U') => {
                self.pos += 1;
                self.expect(b'T')?;
                let k = self.number()? as usize;
                let base = self.parenthesized()?;
                Ok(RingSpec::UpperTriangular { k, base: Box::new(base) })
            }
            Some(b'(') => self.parenthesized(),
            _ => Err(self.error("expected a ring (Z, Z/n, F<p>[x], M<k>(..), UT<k>(..))")),
        }
    }

    fn parenthesized(&mut self) -> Result<RingSpec> {
        self.expect(b'(')?;
        let inner = self.spec()?;
        self.expect(b')')?;
        Ok(inner)
    }
}

fn modpow(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = modpow(a, d, n) as u128;
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 1..r {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_catalog_forms() {
        assert_eq!(parse_ring_spec("Z/6").unwrap(), RingSpec::Residue { n: 6 });
        assert_eq!(parse_ring_spec("Z").unwrap(), RingSpec::Integers);
        assert_eq!(parse_ring_spec("F5[x]").unwrap(), RingSpec::PolyOverPrimeField { p: 5 });
        let m = parse_ring_spec("M2(Z/2)").unwrap();
        assert_eq!(m.cardinality(), Some(16));
        assert_eq!(parse_ring_spec(" UT2 ( Z / 3 ) ").unwrap().cardinality(), Some(27));
        let prod = parse_ring_spec("Z/4 x Z/9").unwrap();
        assert_eq!(prod.cardinality(), Some(36));
        assert_eq!(parse_ring_spec("Z/2xM2(Z/2)").unwrap().cardinality(), Some(32));
        let q = parse_ring_spec("F2[x]/(1,1,1)").unwrap();
        assert_eq!(q, RingSpec::PolyQuotient { p: 2, modulus: vec![1, 1, 1] });
        assert_eq!(q.cardinality(), Some(4));
        // Non-monic moduli are normalized.
        let q3 = parse_ring_spec("F3[x]/(1,0,2)").unwrap();
        assert_eq!(q3, RingSpec::PolyQuotient { p: 3, modulus: vec![2, 0, 1] });
    }

    #[test]
    fn display_round_trips() {
        for text in ["Z", "Z/6", "F7[x]", "M2(Z/2)", "UT2(Z/3)", "Z/4 x Z/9", "(Z/2 x Z/3) x Z/5",
            "M2(Z/2 x Z/2)", "F3[x]/(2,0,1)"]
        {
            let spec = parse_ring_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(parse_ring_spec(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(parse_ring_spec("Z/1"), Err(Error::Domain(_))));
        assert!(matches!(parse_ring_spec("Z/0"), Err(Error::Domain(_))));
        assert!(matches!(parse_ring_spec("F4[x]"), Err(Error::Domain(_))));
        assert!(matches!(parse_ring_spec("M2(Z)"), Err(Error::Domain(_))));
        assert!(matches!(parse_ring_spec("Z/2 x F2[x]"), Err(Error::Domain(_))));
        assert!(matches!(parse_ring_spec("M0(Z/2)"), Err(Error::Domain(_))));
        assert!(matches!(parse_ring_spec("UT1(Z/2)"), Err(Error::Domain(_))));
        assert!(matches!(parse_ring_spec("M5(Z/2)"), Err(Error::Domain(_))));
        assert!(parse_ring_spec_with_bound("M5(Z/2)", 1 << 25).is_ok());
        assert!(matches!(parse_ring_spec("M9(Z/97)"), Err(Error::Domain(_))));
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "Q", "Z/", "M2(Z/2", "F2[y]", "Z/6 x", "Z/6)", "Z/6 Z/3", "UX2(Z/2)"] {
            assert!(matches!(parse_ring_spec(bad), Err(Error::Syntax { .. })), "{bad}");
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
    }
}

//! Verdicts with witnesses, shared by every checker.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::Error;

/// Witnesses stored per report unless a caller asks for more.
pub const DEFAULT_WITNESS_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Sr1,
    Sr2,
    Asr1Right,
    Asr1Left,
    Asr1TwoSided,
    Asr1Element,
    Diadem,
    DyadicRight,
    DyadicLeft,
    Clean,
    Exchange,
    LRing,
    DProperty,
    DAdequate,
    DAdequateElement,
    NeatElement,
    NeatRange1,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Sr1 => "sr1",
            Property::Sr2 => "sr2",
            Property::Asr1Right => "asr1-right",
            Property::Asr1Left => "asr1-left",
            Property::Asr1TwoSided => "asr1-2sided",
            Property::Asr1Element => "asr1-element",
            Property::Diadem => "diadem",
            Property::DyadicRight => "dyadic",
            Property::DyadicLeft => "dyadic-left",
            Property::Clean => "clean",
            Property::Exchange => "exchange",
            Property::LRing => "lring",
            Property::DProperty => "dprop",
            Property::DAdequate => "dadequate",
            Property::DAdequateElement => "d-adequate-element",
            Property::NeatElement => "neat-element",
            Property::NeatRange1 => "neat-range1",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Property {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    /// Ring-level property names accepted by `ringlab check`.
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "sr1" => Property::Sr1,
            "sr2" => Property::Sr2,
            "asr1-right" => Property::Asr1Right,
            "asr1-left" => Property::Asr1Left,
            "asr1-2sided" => Property::Asr1TwoSided,
            "dyadic" | "dyadic-right" => Property::DyadicRight,
            "dyadic-left" => Property::DyadicLeft,
            "clean" => Property::Clean,
            "exchange" => Property::Exchange,
            "lring" => Property::LRing,
            "dprop" => Property::DProperty,
            "dadequate" => Property::DAdequate,
            other => return Err(Error::Config(format!("unknown property `{other}`"))),
        })
    }
}

/// What a witness certifies; fixes how `inputs` and `shifts` are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// inputs `(a, b)`, shifts `[l]`: `(a + b l)R = R`.
    Sr1,
    /// inputs `(a, b, c)`, shifts `[l, m]`: `(a + c l)R + (b + c m)R = R`.
    Sr2,
    /// inputs `(a, b, c)`, shifts `[l]`: `aR + (b + c l)R = R`.
    Asr1Right,
    /// inputs `(a, b, c)`, shifts `[m]`: `Ra + R(b + m c) = R`.
    Asr1Left,
    /// inputs `(a, b, c)`, shifts `[l]`: `R(l a + b)R + RcR = R`.
    Asr1TwoSided,
    /// inputs `(a, b)`, shifts `[l]`: `a + b l` anchors every unimodular triple.
    Diadem,
    /// inputs `(a, b)`, shifts `[l]`: `a + l b` anchors every unimodular triple.
    DiademLeft,
    /// inputs `(a)`, shifts `[e, u]`: `a = e + u`.
    Clean,
    /// inputs `(a)`, shifts `[e]`: `e` idempotent in `aR`, `1 - e` in `(1 - a)R`.
    Exchange,
    /// inputs `(a)`, shifts `[b]`: `RaR = bR = Rb`.
    Coboundary,
    /// inputs `(a, b)`, shifts `[r, s]`: the D-adequate split of `a` against `b`.
    DAdequate,
    /// inputs `(a, b)`, shifts `[t]`: `a + b t` is neat.
    Neat,
}

/// One certified instance: the inputs of a quantified statement together
/// with the shifts that make it true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<E> {
    pub kind: WitnessKind,
    pub inputs: Vec<E>,
    pub shifts: Vec<E>,
}

/// The stable-range family of witnesses.
pub type RangeWitness<E> = Witness<E>;

impl<E> Witness<E> {
    pub fn new(kind: WitnessKind, inputs: Vec<E>, shifts: Vec<E>) -> Self {
        Witness { kind, inputs, shifts }
    }

    pub fn to_json(&self, render: &impl Fn(&E) -> Json) -> Json {
        json!({
            "kind": self.kind,
            "inputs": self.inputs.iter().map(render).collect::<Vec<_>>(),
            "shifts": self.shifts.iter().map(render).collect::<Vec<_>>(),
        })
    }
}

/// Verdict of a (ring, property) query.
///
/// `checked` counts the quantified instances examined. When the property
/// holds, `witnesses` holds the first `witness_cap` instance certificates in
/// enumeration order; when it fails, `counterexample` is the first failing
/// instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport<E> {
    pub property: Property,
    pub holds: bool,
    pub checked: u64,
    pub witnesses: Vec<Witness<E>>,
    pub counterexample: Option<Vec<E>>,
    pub witness_cap: usize,
    pub note: Option<String>,
}

impl<E> PropertyReport<E> {
    pub fn new(property: Property) -> Self {
        Self::with_cap(property, DEFAULT_WITNESS_CAP)
    }

    pub fn with_cap(property: Property, witness_cap: usize) -> Self {
        PropertyReport {
            property,
            holds: true,
            checked: 0,
            witnesses: Vec::new(),
            counterexample: None,
            witness_cap,
            note: None,
        }
    }

    pub fn push_witness(&mut self, w: Witness<E>) {
        if self.witnesses.len() < self.witness_cap {
            self.witnesses.push(w);
        }
    }

    pub fn fail(&mut self, counterexample: Vec<E>) {
        self.holds = false;
        self.counterexample = Some(counterexample);
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn to_json(&self, ring: &str, render: impl Fn(&E) -> Json) -> Json {
        json!({
            "ring": ring,
            "property": self.property,
            "verdict": self.holds,
            "checked": self.checked,
            "witness_count": self.witnesses.len(),
            "witnesses": self.witnesses.iter().map(|w| w.to_json(&render)).collect::<Vec<_>>(),
            "counterexample": self.counterexample.as_ref().map(|c| c.iter().map(&render).collect::<Vec<_>>()),
            "note": self.note,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_names_round_trip() {
        for name in ["sr1", "sr2", "asr1-right", "asr1-left", "asr1-2sided", "dyadic", "clean", "exchange", "lring", "dprop"] {
            let p: Property = name.parse().unwrap();
            assert_eq!(p.as_str(), name);
            assert_eq!(serde_json::to_value(p).unwrap(), Json::String(name.into()));
        }
        assert!("bogus".parse::<Property>().is_err());
    }

    #[test]
    fn witness_cap_limits_storage() {
        let mut r: PropertyReport<u32> = PropertyReport::with_cap(Property::Sr1, 2);
        for i in 0..5 {
            r.push_witness(Witness::new(WitnessKind::Sr1, vec![i], vec![]));
        }
        assert_eq!(r.witnesses.len(), 2);
        assert!(r.holds);
        r.fail(vec![9]);
        assert!(!r.holds);
    }
}

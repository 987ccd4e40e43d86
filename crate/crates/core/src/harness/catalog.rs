use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::report::DEFAULT_WITNESS_CAP;
use crate::ring::{parse_ring_spec_with_bound, RingSpec, DEFAULT_MAX_CARD};
use crate::{Error, Result};

/// Environment variable overriding [`Bounds::max_card`].
pub const MAX_CARD_ENV: &str = "RINGLAB_MAX_CARD";

/// Search bounds shared by the suites. Every field can be overridden from
/// a catalog file; missing fields keep their defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// Largest finite ring accepted into a catalog.
    pub max_card: u64,
    pub witness_cap: usize,
    /// Elements of a Euclidean domain scanned, in enumeration order.
    pub domain_bound: u64,
    /// Random triples per domain in the idempotent suite.
    pub t5_samples: usize,
    /// Enumeration index limit for those triples (500 for ℤ reaches |a| = 500).
    pub t5_range: u64,
    /// Quotients `R/aR` larger than this skip the clean check in that suite.
    pub neat_max_card: u64,
    /// The 2x2 reduction suite covers `1 <= a, b, c <= t12_max` (enumeration
    /// indices for polynomial rings).
    pub t12_max: u64,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_card: DEFAULT_MAX_CARD,
            witness_cap: DEFAULT_WITNESS_CAP,
            domain_bound: 21,
            t5_samples: 500,
            t5_range: 500,
            neat_max_card: 128,
            t12_max: 15,
            seed: 0x5eed,
        }
    }
}

impl Bounds {
    /// Defaults with the cardinality cap taken from `RINGLAB_MAX_CARD` when set.
    pub fn from_env() -> Result<Self> {
        let mut b = Bounds::default();
        if let Ok(v) = std::env::var(MAX_CARD_ENV) {
            b.max_card = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{MAX_CARD_ENV}={v} is not a positive integer")))?;
            if b.max_card == 0 {
                return Err(Error::Config(format!("{MAX_CARD_ENV} must be positive")));
            }
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: RingSpec,
    pub tags: BTreeSet<String>,
}

impl CatalogEntry {
    pub fn new(spec: RingSpec) -> Self {
        let tags = default_tags(&spec);
        CatalogEntry { spec, tags }
    }

    pub fn parse(text: &str, max_card: u64) -> Result<Self> {
        let spec = parse_ring_spec_with_bound(text, max_card).map_err(|e| Error::Config(format!("`{text}`: {e}")))?;
        Ok(Self::new(spec))
    }

    pub fn is_domain(&self) -> bool {
        !self.spec.is_finite()
    }
}

fn default_tags(spec: &RingSpec) -> BTreeSet<String> {
    let mut tags = BTreeSet::new();
    let kind = match spec {
        RingSpec::Integers | RingSpec::PolyOverPrimeField { .. } => "domain",
        RingSpec::Residue { .. } => "residue",
        RingSpec::PolyQuotient { .. } => "poly-quotient",
        RingSpec::Matrix { .. } => "matrix",
        RingSpec::UpperTriangular { .. } => "triangular",
        RingSpec::Product(_) => "product",
    };
    tags.insert(kind.to_string());
    tags
}

/// All monic polynomials of degree `1..=max_deg` over `F_p`, ascending
/// coefficients, in lexicographic order of the lower coefficients.
fn monic_polys(p: u64, max_deg: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for deg in 1..=max_deg {
        let count = p.pow(deg as u32);
        for mut code in 0..count {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(code % p);
                code /= p;
            }
            coeffs.push(1);
            out.push(coeffs);
        }
    }
    out
}

/// `Z/n` for `2 <= n <= 30`, every `F_p[x]/(f)` with `p` in {2, 3} and `f`
/// monic of degree at most 3, `M2(Z/p)` and `UT2(Z/p)` for `p` in {2, 3},
/// `Z/4 x Z/9`, `Z/2 x M2(Z/2)`, and the domains `Z`, `F2[x]`, `F3[x]`.
pub fn default_catalog() -> Vec<CatalogEntry> {
    let mut specs: Vec<RingSpec> = (2..=30).map(|n| RingSpec::Residue { n }).collect();
    for p in [2, 3] {
        specs.extend(monic_polys(p, 3).into_iter().map(|modulus| RingSpec::PolyQuotient { p, modulus }));
    }
    for p in [2, 3] {
        let base = Box::new(RingSpec::Residue { n: p });
        specs.push(RingSpec::Matrix { k: 2, base: base.clone() });
        specs.push(RingSpec::UpperTriangular { k: 2, base });
    }
    specs.push(RingSpec::Product(vec![RingSpec::Residue { n: 4 }, RingSpec::Residue { n: 9 }]));
    specs.push(RingSpec::Product(vec![
        RingSpec::Residue { n: 2 },
        RingSpec::Matrix { k: 2, base: Box::new(RingSpec::Residue { n: 2 }) },
    ]));
    specs.push(RingSpec::Integers);
    specs.push(RingSpec::PolyOverPrimeField { p: 2 });
    specs.push(RingSpec::PolyOverPrimeField { p: 3 });
    specs.into_iter().map(CatalogEntry::new).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub bounds: Bounds,
}

/// Parses a catalog document.
///
/// JSON form: either an array of entries or
/// `{"bounds": {...}, "rings": [...]}`, where an entry is a ring-spec
/// string or `{"spec": "...", "tags": [...]}`. Plain-text form: one ring
/// spec per line, `#` starts a comment, and `key = value` lines override
/// bounds. Entries are validated against the (possibly overridden)
/// cardinality cap.
pub fn parse_catalog(text: &str, base: &Bounds) -> Result<Catalog> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let doc: Json = serde_json::from_str(text).map_err(|e| Error::Config(format!("catalog: {e}")))?;
        return parse_catalog_json(&doc, base);
    }
    let mut bounds = base.clone();
    let mut lines = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            set_bound(&mut bounds, key.trim(), &Json::String(value.trim().to_string()))?;
        } else {
            lines.push(line);
        }
    }
    let entries = lines.into_iter().map(|l| CatalogEntry::parse(l, bounds.max_card)).collect::<Result<_>>()?;
    Ok(Catalog { entries, bounds })
}

fn set_bound(bounds: &mut Bounds, key: &str, value: &Json) -> Result<()> {
    let mut doc = serde_json::to_value(&*bounds).expect("bounds serialize");
    let slot = doc
        .get_mut(key)
        .ok_or_else(|| Error::Config(format!("unknown bound `{key}`")))?;
    let parsed = match value {
        Json::String(s) => s.parse::<u64>().map(Json::from).map_err(|_| Error::Config(format!("bound `{key}`: `{s}` is not an integer")))?,
        other => other.clone(),
    };
    *slot = parsed;
    *bounds = serde_json::from_value(doc).map_err(|e| Error::Config(format!("bound `{key}`: {e}")))?;
    Ok(())
}

fn parse_catalog_json(doc: &Json, base: &Bounds) -> Result<Catalog> {
    let mut bounds = base.clone();
    let rings = match doc {
        Json::Array(items) => items.as_slice(),
        Json::Object(map) => {
            for key in map.keys() {
                if key != "bounds" && key != "rings" {
                    return Err(Error::Config(format!("unknown catalog field `{key}`")));
                }
            }
            if let Some(over) = map.get("bounds") {
                let over = over.as_object().ok_or_else(|| Error::Config("\"bounds\" must be an object".into()))?;
                for (key, value) in over {
                    set_bound(&mut bounds, key, value)?;
                }
            }
            map.get("rings")
                .and_then(Json::as_array)
                .map(Vec::as_slice)
                .ok_or_else(|| Error::Config("catalog needs a \"rings\" array".into()))?
        }
        _ => return Err(Error::Config("catalog must be an array or an object".into())),
    };
    let mut entries = Vec::with_capacity(rings.len());
    for item in rings {
        let entry = match item {
            Json::String(s) => CatalogEntry::parse(s, bounds.max_card)?,
            Json::Object(obj) => {
                let text = obj
                    .get("spec")
                    .and_then(Json::as_str)
                    .ok_or_else(|| Error::Config(format!("catalog entry {item} needs a \"spec\" string")))?;
                let mut entry = CatalogEntry::parse(text, bounds.max_card)?;
                if let Some(tags) = obj.get("tags") {
                    let tags = tags
                        .as_array()
                        .ok_or_else(|| Error::Config("\"tags\" must be an array".into()))?;
                    for t in tags {
                        let t = t.as_str().ok_or_else(|| Error::Config("tags must be strings".into()))?;
                        entry.tags.insert(t.to_string());
                    }
                }
                entry
            }
            other => return Err(Error::Config(format!("bad catalog entry {other}"))),
        };
        entries.push(entry);
    }
    Ok(Catalog { entries, bounds })
}

pub fn load_catalog(path: &Path, base: &Bounds) -> Result<Catalog> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_catalog(&text, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_catalog_shape() {
        let cat = default_catalog();
        let count = |tag: &str| cat.iter().filter(|e| e.tags.contains(tag)).count();
        assert_eq!(count("residue"), 29);
        assert_eq!(count("poly-quotient"), 2 + 4 + 8 + 3 + 9 + 27);
        assert_eq!(count("matrix"), 2);
        assert_eq!(count("triangular"), 2);
        assert_eq!(count("product"), 2);
        assert_eq!(count("domain"), 3);
        let max = cat.iter().filter_map(|e| e.spec.cardinality()).max().unwrap();
        assert_eq!(max, 81);
    }

    #[test]
    fn text_and_json_catalogs() {
        let base = Bounds::default();
        let cat = parse_catalog("# rings\nZ/6\nM2(Z/2)  # simple\nt12_max = 4\n", &base).unwrap();
        assert_eq!(cat.entries.len(), 2);
        assert_eq!(cat.bounds.t12_max, 4);

        let cat = parse_catalog(r#"{"bounds": {"max_card": 10}, "rings": ["Z/6", {"spec": "Z", "tags": ["x"]}]}"#, &base)
            .unwrap();
        assert_eq!(cat.bounds.max_card, 10);
        assert!(cat.entries[1].tags.contains("x") && cat.entries[1].is_domain());
        assert!(parse_catalog(r#"{"bounds": {"max_card": 10}, "rings": ["Z/12"]}"#, &base).is_err());
        assert!(parse_catalog(r#"{"bounds": {"nope": 1}, "rings": []}"#, &base).is_err());
        assert!(parse_catalog("Z/", &base).is_err());
        assert!(parse_catalog("[]", &base).unwrap().entries.is_empty());
    }
}

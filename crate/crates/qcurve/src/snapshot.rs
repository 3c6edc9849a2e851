//! The JSON snapshot format for a newform space.
//!
//! ```json
//! {"q": 17, "level": 578, "weight": 2, "char_conductor": 17, "total_dim": 22,
//!  "classes": [{"label": "578.2.q17.a", "dim": 2,
//!               "ap": {"3": {"charpoly": [-2, 0, 1]},
//!                      "5": {"embeddings": [[1.41, 0.0], [-1.41, 0.0]], "err": 1e-12}}}]}
//! ```
//!
//! Charpoly coefficients are listed constant term first. Integers of
//! absolute value above 2^53 must be written as decimal strings.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use qcurve_core::newform::{CoeffData, NewformClass, SpaceSummary};
use qcurve_core::poly::IntPoly;
use qcurve_core::quadfield::check_q;
use qcurve_core::reference::{space_counts, SpaceRow};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, StoreError};

pub const SAFE_INT: u64 = 1 << 53;

/// An exact integer in JSON: a number up to 2^53, a string beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.unsigned_abs() <= SAFE_INT => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer of size at most 2^53 or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                if v.unsigned_abs() > SAFE_INT {
                    return Err(E::custom(format!("{v} exceeds 2^53; write it as a string")));
                }
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                if v > SAFE_INT {
                    return Err(E::custom(format!("{v} exceeds 2^53; write it as a string")));
                }
                Ok(JsonInt(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!("{v} is not an exact integer")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("{v:?} is not a decimal integer")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum RawCoeff {
    Charpoly { charpoly: Vec<JsonInt> },
    Embeddings { embeddings: Vec<[f64; 2]>, err: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawClass {
    label: String,
    dim: usize,
    ap: BTreeMap<String, RawCoeff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSnapshot {
    q: u32,
    level: u64,
    weight: u32,
    char_conductor: u64,
    total_dim: usize,
    classes: Vec<RawClass>,
}

/// A whole newform space for one `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub q: u32,
    pub level: u64,
    pub total_dim: usize,
    pub classes: Vec<NewformClass>,
}

impl Snapshot {
    pub fn new(q: u32, classes: Vec<NewformClass>) -> Self {
        let level = 2 * (q as u64) * (q as u64);
        let total_dim = classes.iter().map(|c| c.dim).sum();
        Self {
            q,
            level,
            total_dim,
            classes,
        }
    }

    pub fn summary(&self) -> SpaceSummary {
        SpaceSummary::from_classes(self.q, &self.classes)
    }

    pub fn class(&self, label: &str) -> Option<&NewformClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Structural checks: level `2q²`, every class valid, dimensions
    /// summing to `total_dim`.
    pub fn validate(&self) -> Result<()> {
        check_q(self.q as u64)?;
        let expected = 2 * (self.q as u64).pow(2);
        if self.level != expected {
            return Err(StoreError::WrongSpace {
                expected,
                found: self.level,
                conductor: self.q as u64,
            });
        }
        let sum: usize = self.classes.iter().map(|c| c.dim).sum();
        if sum != self.total_dim {
            return Err(StoreError::Malformed(format!(
                "class dimensions sum to {sum}, total_dim is {}",
                self.total_dim
            )));
        }
        for c in &self.classes {
            if c.level != self.level || c.char_modulus != self.q as u64 {
                return Err(StoreError::Malformed(format!(
                    "{}: wrong level or character",
                    c.label
                )));
            }
            c.validate()?;
        }
        Ok(())
    }
}

fn class_from_raw(raw: RawClass, level: u64, q: u32) -> Result<NewformClass> {
    let mut ap = BTreeMap::new();
    for (key, coeff) in raw.ap {
        let p: u64 = key
            .parse()
            .map_err(|_| StoreError::Malformed(format!("{}: prime key {key:?}", raw.label)))?;
        let data = match coeff {
            RawCoeff::Charpoly { charpoly } => {
                CoeffData::Exact(IntPoly::new(charpoly.into_iter().map(|c| c.0).collect()))
            }
            RawCoeff::Embeddings { embeddings, err } => CoeffData::Numeric {
                embeddings: embeddings.into_iter().map(|[re, im]| (re, im)).collect(),
                err,
            },
        };
        ap.insert(p, data);
    }
    Ok(NewformClass {
        label: raw.label,
        level,
        char_modulus: q as u64,
        dim: raw.dim,
        ap,
    })
}

fn raw_from_class(c: &NewformClass) -> RawClass {
    let ap =
        c.ap.iter()
            .map(|(p, d)| {
                let v = match d {
                    CoeffData::Exact(cp) => RawCoeff::Charpoly {
                        charpoly: cp.coeffs().iter().cloned().map(JsonInt).collect(),
                    },
                    CoeffData::Numeric { embeddings, err } => RawCoeff::Embeddings {
                        embeddings: embeddings.iter().map(|&(re, im)| [re, im]).collect(),
                        err: *err,
                    },
                };
                (p.to_string(), v)
            })
            .collect();
    RawClass {
        label: c.label.clone(),
        dim: c.dim,
        ap,
    }
}

pub fn parse(text: &str) -> Result<Snapshot> {
    let raw: RawSnapshot =
        serde_json::from_str(text).map_err(|e| StoreError::Malformed(e.to_string()))?;
    if raw.weight != 2 {
        return Err(StoreError::Malformed(format!(
            "weight {} (expected 2)",
            raw.weight
        )));
    }
    if raw.char_conductor != raw.q as u64 {
        return Err(StoreError::WrongSpace {
            expected: 2 * (raw.q as u64).pow(2),
            found: raw.level,
            conductor: raw.char_conductor,
        });
    }
    let classes = raw
        .classes
        .into_iter()
        .map(|c| class_from_raw(c, raw.level, raw.q))
        .collect::<Result<Vec<_>>>()?;
    let snap = Snapshot {
        q: raw.q,
        level: raw.level,
        total_dim: raw.total_dim,
        classes,
    };
    snap.validate()?;
    Ok(snap)
}

pub fn to_json(s: &Snapshot) -> String {
    let raw = RawSnapshot {
        q: s.q,
        level: s.level,
        weight: 2,
        char_conductor: s.q as u64,
        total_dim: s.total_dim,
        classes: s.classes.iter().map(raw_from_class).collect(),
    };
    let mut out = serde_json::to_string(&raw).expect("snapshot serializes");
    out.push('\n');
    out
}

pub fn read(path: &Path) -> Result<Snapshot> {
    let text = std::fs::read_to_string(path).map_err(|e| StoreError::io(path, e))?;
    parse(&text)
}

pub fn write(path: &Path, s: &Snapshot) -> Result<()> {
    crate::report::write_atomic(path, to_json(s).as_bytes())
}

/// What to do when a snapshot disagrees with the reference space counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SummaryPolicy {
    #[default]
    Warn,
    Strict,
    Ignore,
}

/// Comparison of a loaded space against the reference row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummaryCheck {
    pub q: u32,
    pub found: SpaceSummary,
    pub printed: Vec<(usize, usize)>,
    pub dim_ok: bool,
    pub count_ok: bool,
    /// Printed `(size, multiplicity)` entries absent from the data.
    pub unmatched_printed: Vec<(usize, usize)>,
    /// Unmatched entries whose transpose is in the data.
    pub transposed: Vec<(usize, usize)>,
}

impl SummaryCheck {
    pub fn ok(&self) -> bool {
        self.dim_ok && self.count_ok && self.unmatched_printed.is_empty()
    }

    /// Totals agree and every printed discrepancy is a swapped pair.
    pub fn ok_up_to_transposition(&self) -> bool {
        self.dim_ok && self.count_ok && self.unmatched_printed == self.transposed
    }

    pub fn describe(&self) -> String {
        let mut s = format!(
            "q = {}: dim {} ({}), classes {} ({})",
            self.q,
            self.found.total_dim,
            if self.dim_ok { "ok" } else { "mismatch" },
            self.found.class_count,
            if self.count_ok { "ok" } else { "mismatch" },
        );
        for &(a, b) in &self.unmatched_printed {
            if self.transposed.contains(&(a, b)) {
                s.push_str(&format!("; printed ({a},{b}) matches data as ({b},{a})"));
            } else {
                s.push_str(&format!("; printed ({a},{b}) not in data"));
            }
        }
        s
    }
}

pub fn check_summary(s: &Snapshot) -> Option<SummaryCheck> {
    let row: SpaceRow = space_counts(s.q)?;
    let found = s.summary();
    let unmatched: Vec<_> = row
        .sizes
        .iter()
        .copied()
        .filter(|e| !found.sizes.contains(e))
        .collect();
    let transposed = unmatched
        .iter()
        .copied()
        .filter(|&(a, b)| found.sizes.contains(&(b, a)))
        .collect();
    Some(SummaryCheck {
        q: s.q,
        dim_ok: found.total_dim == row.total_dim,
        count_ok: found.class_count == row.class_count,
        printed: row.sizes.to_vec(),
        found,
        unmatched_printed: unmatched,
        transposed,
    })
}

/// Apply `policy` to the reference comparison; warnings go to the log.
pub fn enforce_summary(s: &Snapshot, policy: SummaryPolicy) -> Result<Option<SummaryCheck>> {
    let check = check_summary(s);
    if let Some(c) = &check {
        if !c.ok() {
            match policy {
                SummaryPolicy::Strict => {
                    return Err(StoreError::SummaryMismatch {
                        q: s.q,
                        detail: c.describe(),
                    })
                }
                SummaryPolicy::Warn => log::warn!("{}", c.describe()),
                SummaryPolicy::Ignore => {}
            }
        }
    }
    Ok(check)
}

/// Largest absolute coefficient, for reporting.
pub fn max_coeff_bits(s: &Snapshot) -> u64 {
    s.classes
        .iter()
        .flat_map(|c| c.ap.values())
        .filter_map(|d| match d {
            CoeffData::Exact(cp) => cp.coeffs().iter().map(|c| c.abs().bits()).max(),
            CoeffData::Numeric { .. } => None,
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{"q":17,"level":578,"weight":2,"char_conductor":17,"total_dim":2,
        "classes":[{"label":"578.2.q17.x","dim":2,"ap":{"3":{"charpoly":[-2,0,1]},
        "5":{"embeddings":[[1.0,1.0],[1.0,-1.0]],"err":1e-12}}}]}"#;

    #[test]
    fn parses_both_coefficient_forms() {
        let s = parse(SMALL).unwrap();
        let c = &s.classes[0];
        assert!(matches!(c.ap[&3], CoeffData::Exact(_)));
        assert!(matches!(c.ap[&5], CoeffData::Numeric { .. }));
        assert_eq!(parse(&to_json(&s)).unwrap(), s);
    }

    #[test]
    fn big_integers_are_strings() {
        let big: BigInt = BigInt::from(1u64 << 60) * 3;
        let j = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(j, format!("\"{big}\""));
        assert_eq!(
            serde_json::to_string(&JsonInt(BigInt::from(SAFE_INT))).unwrap(),
            SAFE_INT.to_string()
        );
        let back: JsonInt = serde_json::from_str(&j).unwrap();
        assert_eq!(back.0, big);
        assert!(serde_json::from_str::<JsonInt>(&((SAFE_INT + 1).to_string())).is_err());
        assert!(serde_json::from_str::<JsonInt>("1.5").is_err());
    }

    #[test]
    fn rejects_inconsistent_files() {
        let bad_total = SMALL.replace("\"total_dim\":2", "\"total_dim\":3");
        assert!(matches!(parse(&bad_total), Err(StoreError::Malformed(_))));
        let bad_level = SMALL.replace("578,", "579,");
        assert!(matches!(
            parse(&bad_level),
            Err(StoreError::WrongSpace { .. })
        ));
        let bad_degree = SMALL.replace("[-2,0,1]", "[-2,1]");
        assert!(parse(&bad_degree).is_err());
    }
}

//! Desk checks on loaded newform data.

use qcurve_core::newform::{CoeffData, NewformClass};

use crate::roots::{abs, embeddings_match, roots};
use crate::snapshot::Snapshot;

pub const RAMANUJAN_TOL: f64 = 1e-6;
pub const RAMANUJAN_P_MAX: u64 = 31;

/// `(label, p, |a_p|)` for every embedding above `2√p + tol`, `p ≤ 31`.
pub fn ramanujan_violations(s: &Snapshot) -> Vec<(String, u64, f64)> {
    let mut out = Vec::new();
    for c in &s.classes {
        for (&p, data) in c.ap.range(..=RAMANUJAN_P_MAX) {
            let zs = match data {
                CoeffData::Exact(cp) => roots(cp),
                CoeffData::Numeric { embeddings, .. } => embeddings.clone(),
            };
            let bound = 2.0 * (p as f64).sqrt() + RAMANUJAN_TOL;
            for z in zs {
                if abs(z) > bound {
                    out.push((c.label.clone(), p, abs(z)));
                }
            }
        }
    }
    out
}

/// Primes where the embeddings of `numeric` are not the roots of the
/// charpoly of `exact` to within the stated error (plus root-finding slack).
pub fn embedding_mismatches(exact: &NewformClass, numeric: &NewformClass) -> Vec<u64> {
    let mut bad = Vec::new();
    for (&p, data) in &numeric.ap {
        let CoeffData::Numeric { embeddings, err } = data else {
            continue;
        };
        let Some(CoeffData::Exact(cp)) = exact.ap.get(&p) else {
            continue;
        };
        if !embeddings_match(cp, embeddings, err + 1e-9) {
            bad.push(p);
        }
    }
    bad
}

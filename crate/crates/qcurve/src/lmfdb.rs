//! Client for the LMFDB classical modular forms API.
//!
//! A space is found by level, weight 2 and a character of conductor `q` and
//! order 2. Hecke eigenvalues come from `mf_hecke_nf` as coordinate vectors
//! in the Hecke ring basis; each `a_p` is turned into its characteristic
//! polynomial over `ℚ`.

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qcurve_core::arith::primes_between;
use qcurve_core::newform::{CoeffData, NewformClass};
use qcurve_core::poly::{element_charpoly, IntPoly};
use serde_json::Value;

use crate::error::{Result, StoreError};
use crate::snapshot::Snapshot;

pub const DEFAULT_BASE: &str = "https://www.lmfdb.org";

/// Levels the public database covers for this problem.
pub const COVERED_Q: [u32; 2] = [17, 41];

pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> Result<String>;
}

/// HTTP transport with a minimum spacing between requests and retries.
pub struct HttpTransport {
    agent: ureq::Agent,
    min_interval: Duration,
    retries: u32,
    last: Mutex<Option<Instant>>,
}

impl HttpTransport {
    pub fn new(min_interval: Duration, retries: u32) -> Self {
        Self {
            agent: ureq::AgentBuilder::new()
                .timeout(Duration::from_secs(60))
                .build(),
            min_interval,
            retries,
            last: Mutex::new(None),
        }
    }

    fn wait_turn(&self) {
        let mut last = self.last.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = *last {
            let since = t.elapsed();
            if since < self.min_interval {
                std::thread::sleep(self.min_interval - since);
            }
        }
        *last = Some(Instant::now());
    }
}

impl Default for HttpTransport {
    fn default() -> Self {
        Self::new(Duration::from_millis(500), 3)
    }
}

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<String> {
        let mut last_err = String::new();
        for attempt in 0..=self.retries {
            if attempt > 0 {
                std::thread::sleep(Duration::from_secs(1 << attempt.min(5)));
            }
            self.wait_turn();
            log::debug!("GET {url}");
            match self.agent.get(url).call() {
                Ok(resp) => {
                    return resp
                        .into_string()
                        .map_err(|e| StoreError::Network(e.to_string()))
                }
                Err(ureq::Error::Status(code, _)) if code < 500 && code != 429 => {
                    return Err(StoreError::Network(format!("{url}: HTTP {code}")));
                }
                Err(e) => last_err = e.to_string(),
            }
        }
        Err(StoreError::Network(format!("{url}: {last_err}")))
    }
}

pub struct LmfdbClient<T: Transport> {
    base: String,
    transport: T,
}

fn bad(msg: impl Into<String>) -> StoreError {
    StoreError::Malformed(format!("LMFDB response: {}", msg.into()))
}

fn json_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| bad(format!("{n} is not an exact integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| bad(format!("{s:?} is not an integer"))),
        _ => Err(bad(format!("expected integer, got {v}"))),
    }
}

fn int_list(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| bad("expected a list"))?
        .iter()
        .map(json_int)
        .collect()
}

/// `Σ cᵢ·βᵢ` with `βᵢ = numᵢ/denᵢ`, as a numerator over a common denominator.
fn combine(
    coords: &[BigInt],
    nums: &[Vec<BigInt>],
    dens: &[BigInt],
    dim: usize,
) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let l = dens.iter().fold(BigInt::one(), |a, d| a.lcm(d));
    let mut out = vec![BigInt::zero(); dim];
    for ((c, num), den) in coords.iter().zip(nums).zip(dens) {
        let scale = c * (&l / den);
        for (j, v) in num.iter().enumerate().take(dim) {
            out[j] += &scale * v;
        }
    }
    (out, l)
}

impl<T: Transport> LmfdbClient<T> {
    pub fn new(base: impl Into<String>, transport: T) -> Self {
        Self {
            base: base.into().trim_end_matches('/').to_string(),
            transport,
        }
    }

    fn get_all(&self, path_and_query: &str) -> Result<Vec<Value>> {
        let mut rows = Vec::new();
        let mut next = Some(path_and_query.to_string());
        while let Some(pq) = next.take() {
            let body = self.transport.get(&format!("{}{}", self.base, pq))?;
            let v: Value = serde_json::from_str(&body).map_err(|e| bad(e.to_string()))?;
            let data = v
                .get("data")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing data"))?;
            rows.extend(data.iter().cloned());
            next = v
                .get("next")
                .and_then(Value::as_str)
                .filter(|s| !s.is_empty())
                .map(str::to_string);
        }
        Ok(rows)
    }

    /// All classes at level `2q²` with their `a_p` charpolys for primes in
    /// `[p_lo, p_hi]` not dividing `2q`.
    pub fn fetch_space(&self, q: u32, p_lo: u64, p_hi: u64) -> Result<Snapshot> {
        let level = 2 * (q as u64).pow(2);
        let forms = self.get_all(&format!(
            "/api/mf_newforms/?level={level}&weight=2&char_conductor={q}&char_order=2&_format=json&_fields=label,dim"
        ))?;
        let primes: Vec<u64> = primes_between(p_lo, p_hi)
            .into_iter()
            .filter(|p| !(2 * q as u64).is_multiple_of(*p))
            .collect();
        let mut classes = Vec::new();
        for row in forms {
            let label = row
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("newform without label"))?;
            let dim = row
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("newform without dim"))? as usize;
            classes.push(self.fetch_class(label, dim, level, q, &primes)?);
        }
        classes.sort_by(|a, b| a.label.cmp(&b.label));
        let s = Snapshot::new(q, classes);
        s.validate()?;
        Ok(s)
    }

    fn fetch_class(
        &self,
        label: &str,
        dim: usize,
        level: u64,
        q: u32,
        primes: &[u64],
    ) -> Result<NewformClass> {
        let rows = self.get_all(&format!(
            "/api/mf_hecke_nf/?label={label}&_format=json&_fields=label,ap,field_poly,hecke_ring_numerators,hecke_ring_denominators,hecke_ring_cyclotomic_generator"
        ))?;
        let row = rows
            .first()
            .ok_or_else(|| bad(format!("{label}: no eigenvalue data")))?;
        if row
            .get("hecke_ring_cyclotomic_generator")
            .and_then(Value::as_u64)
            .unwrap_or(0)
            != 0
        {
            return Err(bad(format!(
                "{label}: cyclotomic representation is not supported"
            )));
        }
        let field = IntPoly::new(int_list(
            row.get("field_poly")
                .ok_or_else(|| bad("missing field_poly"))?,
        )?);
        let nums: Vec<Vec<BigInt>> = match row.get("hecke_ring_numerators") {
            Some(Value::Array(a)) => a.iter().map(int_list).collect::<Result<_>>()?,
            _ => (0..dim)
                .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect())
                .collect(),
        };
        let dens: Vec<BigInt> = match row.get("hecke_ring_denominators") {
            Some(Value::Array(_)) => int_list(&row["hecke_ring_denominators"])?,
            _ => vec![BigInt::one(); dim],
        };
        let ap = row
            .get("ap")
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("{label}: missing ap")))?;
        let all_primes = primes_between(2, primes.iter().copied().max().unwrap_or(2));
        let mut out = BTreeMap::new();
        for &p in primes {
            let idx = all_primes.iter().position(|&r| r == p).expect("p is prime");
            let coords = int_list(
                ap.get(idx)
                    .ok_or_else(|| bad(format!("{label}: no a_{p}")))?,
            )?;
            let (num, den) = combine(&coords, &nums, &dens, dim);
            out.insert(p, CoeffData::Exact(element_charpoly(&num, &den, &field)?));
        }
        Ok(NewformClass {
            label: label.to_string(),
            level,
            char_modulus: q as u64,
            dim,
            ap: out,
        })
    }
}

//! Galois-conjugacy classes of newforms of level `2q²` with the quadratic
//! character of conductor `q`, and the exact norms the sieve takes of their
//! Hecke eigenvalues.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::legendre;
use crate::error::{Error, Result};
use crate::poly::{inert_trace_poly, IntPoly};
use crate::quadfield::check_q;

/// A complex number as `(re, im)`.
pub type Complex = (f64, f64);

/// `a_p(f)` for one prime: the characteristic polynomial over `ℚ`, or the
/// complex embeddings with an absolute error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffData {
    Exact(IntPoly),
    Numeric { embeddings: Vec<Complex>, err: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewformClass {
    pub label: String,
    pub level: u64,
    pub char_modulus: u64,
    pub dim: usize,
    pub ap: BTreeMap<u64, CoeffData>,
}

impl NewformClass {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidData(format!("{}: dimension 0", self.label)));
        }
        for (p, data) in &self.ap {
            match data {
                CoeffData::Exact(cp) => {
                    if !cp.is_monic() || cp.degree() != Some(self.dim) {
                        return Err(Error::InvalidData(format!(
                            "{}: charpoly at {p} is not monic of degree {}",
                            self.label, self.dim
                        )));
                    }
                }
                CoeffData::Numeric { embeddings, err } => {
                    if embeddings.len() != self.dim || !(*err >= 0.0) {
                        return Err(Error::InvalidData(format!(
                            "{}: expected {} embeddings with a nonnegative error at {p}",
                            self.label, self.dim
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn coeff(&self, p: u64) -> Result<&CoeffData> {
        self.ap.get(&p).ok_or_else(|| Error::MissingCoefficients {
            label: self.label.clone(),
            p,
        })
    }

    pub fn charpoly(&self, p: u64) -> Result<&IntPoly> {
        match self.coeff(p)? {
            CoeffData::Exact(cp) => Ok(cp),
            CoeffData::Numeric { .. } => Err(Error::NumericOnly {
                label: self.label.clone(),
                p,
            }),
        }
    }
}

/// Counts of a newform space: `(class size, multiplicity)` sorted by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSummary {
    pub q: u32,
    pub total_dim: usize,
    pub class_count: usize,
    pub sizes: Vec<(usize, usize)>,
}

impl SpaceSummary {
    pub fn from_classes(q: u32, classes: &[NewformClass]) -> Self {
        let mut counts = BTreeMap::new();
        for c in classes {
            *counts.entry(c.dim).or_insert(0usize) += 1;
        }
        Self {
            q,
            total_dim: classes.iter().map(|c| c.dim).sum(),
            class_count: classes.len(),
            sizes: counts.into_iter().collect(),
        }
    }

    /// `Σ size·multiplicity = total_dim` and `Σ multiplicity = class_count`.
    pub fn is_consistent(&self) -> bool {
        self.sizes.iter().map(|(s, m)| s * m).sum::<usize>() == self.total_dim
            && self.sizes.iter().map(|(_, m)| m).sum::<usize>() == self.class_count
    }
}

/// `ε(p) = (p | q)`, which is `−1` exactly when `p` is inert in `ℚ(√q)`.
pub fn epsilon(p: u64, q: u64) -> Result<i8> {
    let q = check_q(q)? as u64;
    if p == q {
        return Err(Error::RamifiedPrime);
    }
    if p == 2 {
        // q ≡ 1 (mod 8)
        return Ok(1);
    }
    Ok(legendre(q as i64, p))
}

/// The monic polynomial whose roots are the conjugates of `t_{f,𝔭}`:
/// `a_p(f)` for split `p`, `a_p(f)² + 2p` for inert `p`.
pub fn t_value_charpoly(f: &NewformClass, p: u64, q: u64) -> Result<IntPoly> {
    let cp = f.charpoly(p)?;
    Ok(match epsilon(p, q)? {
        1 => cp.clone(),
        _ => inert_trace_poly(cp, p),
    })
}

/// `∏_{a∈A} T(a)` for the monic `T`.
pub fn product_norm_exact(t: &IntPoly, values: impl IntoIterator<Item = i64>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, a| acc * t.eval(&BigInt::from(a)))
}

fn cmul(a: Complex, b: Complex) -> Complex {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cabs(a: Complex) -> f64 {
    libm::hypot(a.0, a.1)
}

/// A product of embeddings with a rigorous absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericProduct {
    pub value: Complex,
    pub bound: f64,
}

impl NumericProduct {
    /// The nearest integer, only when the bound certifies it.
    pub fn certified(&self, input_err: f64) -> Result<BigInt> {
        let required = if self.bound > 0.0 && input_err > 0.0 {
            input_err * 0.25 / self.bound
        } else {
            0.0
        };
        if !self.value.0.is_finite() || !(self.bound < 0.5) || self.value.1.abs() > self.bound {
            return Err(Error::InsufficientPrecision {
                bound: self.bound,
                required,
            });
        }
        let r = libm::round(self.value.0);
        if (self.value.0 - r).abs() + self.bound >= 0.5 {
            return Err(Error::InsufficientPrecision {
                bound: self.bound,
                required,
            });
        }
        Ok(BigInt::from(r as i128))
    }
}

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// `∏_{a∈A} ∏_i (a − t_i)` over embeddings `z_i` of `a_p(f)`, where
/// `t_i = z_i` (split) or `z_i² + 2p` (inert), tracking an error bound.
pub fn product_norm_numeric(
    embeddings: &[Complex],
    err: f64,
    inert: bool,
    p: u64,
    values: &[i64],
) -> NumericProduct {
    let u = 4.0 * UNIT_ROUNDOFF;
    let ts: Vec<(Complex, f64)> = embeddings
        .iter()
        .map(|&z| {
            if inert {
                let sq = cmul(z, z);
                let t = (sq.0 + 2.0 * p as f64, sq.1);
                let e = 2.0 * cabs(z) * err + err * err + u * (cabs(sq) + 2.0 * p as f64);
                (t, e)
            } else {
                (z, err)
            }
        })
        .collect();
    let mut acc: Complex = (1.0, 0.0);
    let mut bound = 0.0f64;
    for &a in values {
        for &(t, et) in &ts {
            let f = (a as f64 - t.0, -t.1);
            let ef = et + u * (a as f64).abs().max(cabs(t));
            let (pa, pf) = (cabs(acc), cabs(f));
            bound = pa * ef + pf * bound + bound * ef + u * pa * pf;
            acc = cmul(acc, f);
        }
    }
    NumericProduct { value: acc, bound }
}

/// `Norm(∏_{a∈A}(a − t_{f,𝔭}))`, exactly when a characteristic polynomial
/// is stored and by certified rounding otherwise.
pub fn product_norm(f: &NewformClass, p: u64, q: u64, values: &[i64]) -> Result<BigInt> {
    match f.coeff(p)? {
        CoeffData::Exact(_) => Ok(product_norm_exact(
            &t_value_charpoly(f, p, q)?,
            values.iter().copied(),
        )),
        CoeffData::Numeric { embeddings, err } => {
            let inert = epsilon(p, q)? == -1;
            product_norm_numeric(embeddings, *err, inert, p, values).certified(*err)
        }
    }
}

/// Whether the quadratic field generated by a root of a degree-2 `cp`
/// is `ℚ(√−2)`: the discriminant is `−2` times a nonzero square.
pub fn generates_q_sqrt_minus_2(cp: &IntPoly) -> bool {
    if cp.degree() != Some(2) {
        return false;
    }
    let (a, b, c) = (cp.coeff(2), cp.coeff(1), cp.coeff(0));
    let disc = &b * &b - BigInt::from(4) * a * c;
    if disc.is_zero() || (&disc % 2u32) != BigInt::zero() {
        return false;
    }
    let half = -disc / 2;
    half > BigInt::zero() && crate::arith::exact_root(&half, 2).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn class(dim: usize, ap: &[(u64, &[i64])]) -> NewformClass {
        NewformClass {
            label: "test".to_string(),
            level: 3362,
            char_modulus: 41,
            dim,
            ap: ap
                .iter()
                .map(|(p, c)| (*p, CoeffData::Exact(IntPoly::from_i64(c))))
                .collect(),
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(7, 41), Ok(-1));
        assert_eq!(epsilon(2, 41), Ok(1));
        assert_eq!(epsilon(5, 41), Ok(1));
        assert_eq!(epsilon(41, 41), Err(Error::RamifiedPrime));
        for q in [17u64, 41, 89, 97] {
            for p in crate::arith::primes_between(3, 31) {
                if p == q {
                    continue;
                }
                let has_root = (0..p).any(|x| (x * x) % p == q % p);
                assert_eq!(epsilon(p, q).unwrap() == 1, has_root);
            }
        }
    }

    #[test]
    fn t_values_at_seven() {
        let g1 = class(2, &[(7, &[18, 0, 1]), (5, &[-3, 1, 1])]);
        assert_eq!(
            t_value_charpoly(&g1, 7, 41).unwrap(),
            IntPoly::from_i64(&[16, 8, 1])
        );
        assert_eq!(
            t_value_charpoly(&g1, 5, 41).unwrap(),
            IntPoly::from_i64(&[-3, 1, 1])
        );
        let g2 = class(2, &[(7, &[0, 0, 1])]);
        assert_eq!(
            t_value_charpoly(&g2, 7, 41).unwrap(),
            IntPoly::from_i64(&[196, -28, 1])
        );
        assert_eq!(product_norm(&g1, 7, 41, &[6]).unwrap(), BigInt::from(100));
        assert_eq!(product_norm(&g1, 7, 41, &[]).unwrap(), BigInt::from(1));
        assert!(matches!(
            product_norm(&g1, 11, 41, &[0]),
            Err(Error::MissingCoefficients { .. })
        ));
    }

    #[test]
    fn numeric_path_agrees_with_exact() {
        // a_7 = ±3√−2
        let s = 3.0 * libm::sqrt(2.0);
        let num = NewformClass {
            ap: [(
                7,
                CoeffData::Numeric {
                    embeddings: vec![(0.0, s), (0.0, -s)],
                    err: 1e-12,
                },
            )]
            .into_iter()
            .collect(),
            ..class(2, &[])
        };
        let exact = class(2, &[(7, &[18, 0, 1])]);
        let a: Vec<i64> = (-8..=8).collect();
        assert_eq!(
            product_norm(&num, 7, 41, &a).unwrap(),
            product_norm(&exact, 7, 41, &a).unwrap()
        );
    }

    #[test]
    fn numeric_path_refuses_when_uncertain() {
        let num = NewformClass {
            ap: [(
                5,
                CoeffData::Numeric {
                    embeddings: vec![(1.0, 0.0), (2.0, 0.0)],
                    err: 0.3,
                },
            )]
            .into_iter()
            .collect(),
            ..class(2, &[])
        };
        match product_norm(&num, 5, 41, &[10, 11]) {
            Err(Error::InsufficientPrecision { bound, required }) => {
                assert!(bound >= 0.5);
                assert!(required < 0.3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn summary_counts() {
        let classes = vec![class(2, &[]), class(2, &[]), class(4, &[])];
        let s = SpaceSummary::from_classes(41, &classes);
        assert_eq!(s.total_dim, 8);
        assert_eq!(s.sizes, vec![(2, 2), (4, 1)]);
        assert!(s.is_consistent());
        let bad = SpaceSummary { total_dim: 9, ..s };
        assert!(!bad.is_consistent());
    }

    #[test]
    fn sqrt_minus_two_field() {
        assert!(generates_q_sqrt_minus_2(&IntPoly::from_i64(&[18, 0, 1])));
        assert!(generates_q_sqrt_minus_2(&IntPoly::from_i64(&[3, -2, 1])));
        assert!(!generates_q_sqrt_minus_2(&IntPoly::from_i64(&[0, 0, 1])));
        assert!(!generates_q_sqrt_minus_2(&IntPoly::from_i64(&[1, 0, 1])));
    }
}

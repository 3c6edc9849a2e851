//! Exact arithmetic in the ring of integers `O_M` of `M = ℚ(√q)`.
//!
//! Elements are stored in half-integer coordinates `(u + v√q)/2` with
//! `u ≡ v (mod 2)`; since every supported `q` is `1 mod 4` this is exactly
//! `O_M`. All four fields have class number one and `q ≡ 1 (mod 8)`, so the
//! rational prime 2 splits as `(γ)(γ̄)` with `γγ̄ = −2`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{inv_mod, is_prime, legendre, log2_abs, reduce_big, sign_of, sqrt_mod, val_p};
use crate::error::{Error, Result};
use crate::residue::{ResidueElt, ResidueField};
use crate::ring::Ring;

pub const SUPPORTED_Q: [u32; 4] = [17, 41, 89, 97];

pub fn check_q(q: u64) -> Result<u32> {
    match u32::try_from(q) {
        Ok(q) if SUPPORTED_Q.contains(&q) => Ok(q),
        _ => Err(Error::UnsupportedField(q)),
    }
}

/// `(u + v√q)/2` in `O_M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    q: u32,
    u: BigInt,
    v: BigInt,
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", &self.u / 2);
        }
        if self.u.is_even() {
            let (a, b): (BigInt, BigInt) = (&self.u / 2, &self.v / 2);
            if b.is_negative() {
                write!(f, "{} - {}√{}", a, -b, self.q)
            } else {
                write!(f, "{} + {}√{}", a, b, self.q)
            }
        } else if self.v.is_negative() {
            write!(f, "({} - {}√{})/2", self.u, -&self.v, self.q)
        } else {
            write!(f, "({} + {}√{})/2", self.u, self.v, self.q)
        }
    }
}

impl QuadInt {
    /// `(u + v√q)/2`; fails unless `q` is supported and `u ≡ v (mod 2)`.
    pub fn new(q: u64, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let q = check_q(q)?;
        let (u, v) = (u.into(), v.into());
        if u.is_odd() != v.is_odd() {
            return Err(Error::Parity {
                u: u.to_string(),
                v: v.to_string(),
            });
        }
        Ok(Self { q, u, v })
    }

    pub(crate) fn raw(q: u32, u: BigInt, v: BigInt) -> Self {
        debug_assert!(u.is_odd() == v.is_odd());
        Self { q, u, v }
    }

    /// `a + b√q` with integer coordinates.
    pub fn from_ints(q: u64, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let q = check_q(q)?;
        Ok(Self::raw(q, a.into() * 2, b.into() * 2))
    }

    pub fn integer(q: u32, n: impl Into<BigInt>) -> Self {
        Self::raw(q, n.into() * 2, BigInt::zero())
    }

    pub fn zero(q: u32) -> Self {
        Self::integer(q, 0)
    }

    pub fn one(q: u32) -> Self {
        Self::integer(q, 1)
    }

    pub fn sqrt_q(q: u32) -> Self {
        Self::raw(q, BigInt::zero(), BigInt::from(2))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Half-integer coordinates `(u, v)`.
    pub fn coords(&self) -> (&BigInt, &BigInt) {
        (&self.u, &self.v)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// The rational integer this element equals, if `v = 0`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.v.is_zero().then(|| &self.u / 2)
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.q, self.u.clone(), -&self.v)
    }

    /// `(u² − q v²)/4`.
    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - BigInt::from(self.q) * &self.v * &self.v) / 4
    }

    /// `a + ā = u`.
    pub fn trace(&self) -> BigInt {
        self.u.clone()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::MixedField(self.q, other.q))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::raw(self.q, &self.u + &other.u, &self.v + &other.v))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::raw(self.q, &self.u - &other.u, &self.v - &other.v))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let q = BigInt::from(self.q);
        let u = (&self.u * &other.u + q * &self.v * &other.v) / 2;
        let v = (&self.u * &other.v + &self.v * &other.u) / 2;
        Ok(Self::raw(self.q, u, v))
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e as u64)
    }

    /// `self / m` when `m` divides `self` in `O_M`.
    pub fn div_exact(&self, m: &Self) -> Result<Option<Self>> {
        self.same_field(m)?;
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let t = self * &m.conj();
        let n = m.norm();
        let (u, ru) = t.u.div_rem(&n);
        let (v, rv) = t.v.div_rem(&n);
        if !ru.is_zero() || !rv.is_zero() || u.is_odd() != v.is_odd() {
            return Ok(None);
        }
        Ok(Some(Self::raw(self.q, u, v)))
    }

    pub fn is_divisible_by(&self, m: &Self) -> Result<bool> {
        Ok(self.div_exact(m)?.is_some())
    }

    /// The unique `α ∈ O_M` with `αⁿ = self` for odd `n`, searched among
    /// elements with half-coordinates bounded by `coeff_box`.
    pub fn nth_root(&self, n: u32, coeff_box: u64) -> Option<Self> {
        assert!(n % 2 == 1, "only odd roots are unique in a real field");
        if self.is_zero() {
            return Some(self.clone());
        }
        let norm = self.norm();
        crate::arith::exact_root(&norm.abs(), n)?;
        let sqrt_q = libm::sqrt(self.q as f64);
        // σ₁ = (u + v√q)/2, σ₂ = (u − v√q)/2; the one without cancellation
        // is evaluated directly, the other as N/σ.
        let same_sign = sign_of(&self.u) * sign_of(&self.v) >= 0;
        let big_log = log2_sum(&self.u.abs(), &self.v.abs(), sqrt_q) - 1.0;
        let small_log = log2_abs(&norm) - big_log;
        let (big_sign, other_sign) = if same_sign {
            let s = if self.u.is_zero() {
                sign_of(&self.v)
            } else {
                sign_of(&self.u)
            };
            (s, s * sign_of(&norm))
        } else {
            let s = sign_of(&self.u);
            (s, s * sign_of(&norm))
        };
        let (l1, s1, l2, s2) = if same_sign {
            (big_log, big_sign, small_log, other_sign)
        } else {
            (small_log, other_sign, big_log, big_sign)
        };
        let (r1, r2) = (l1 / n as f64, l2 / n as f64);
        if r1 > 62.0 || r2 > 62.0 {
            return None;
        }
        let a1 = s1 as f64 * libm::exp2(r1);
        let a2 = s2 as f64 * libm::exp2(r2);
        let u0 = libm::round(a1 + a2) as i64;
        let v0 = libm::round((a1 - a2) / sqrt_q) as i64;
        for du in -2i64..=2 {
            for dv in -2i64..=2 {
                let (u, v) = (u0 + du, v0 + dv);
                if (u - v) % 2 != 0 || u.unsigned_abs() > coeff_box || v.unsigned_abs() > coeff_box
                {
                    continue;
                }
                let cand = Self::raw(self.q, BigInt::from(u), BigInt::from(v));
                if cand.pow(n) == *self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

fn log2_sum(u: &BigInt, v: &BigInt, sqrt_q: f64) -> f64 {
    let bits = u.bits().max(v.bits());
    let shift = bits.saturating_sub(60);
    let uf = (u >> shift).to_f64().unwrap_or(0.0);
    let vf = (v >> shift).to_f64().unwrap_or(0.0);
    libm::log2(uf + vf * sqrt_q) + shift as f64
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadInt> for &QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &QuadInt) -> QuadInt {
                self.$checked(rhs).expect("operands from different fields")
            }
        }
        impl $tr<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: QuadInt) -> QuadInt {
                (&self)
                    .$checked(&rhs)
                    .expect("operands from different fields")
            }
        }
        impl $tr<&QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &QuadInt) -> QuadInt {
                (&self)
                    .$checked(rhs)
                    .expect("operands from different fields")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::raw(self.q, -&self.u, -&self.v)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

impl Ring for QuadInt {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: i64) -> Self {
        QuadInt::raw(self.q, &self.u * k, &self.v * k)
    }
    fn one_like(&self) -> Self {
        QuadInt::one(self.q)
    }
    fn is_zero(&self) -> bool {
        QuadInt::is_zero(self)
    }
}

/// A fundamental unit of `O_M`. All four have norm −1.
pub fn fundamental_unit(q: u64) -> Result<QuadInt> {
    let (a, b): (i64, i64) = match check_q(q)? {
        17 => (4, 1),
        41 => (32, 5),
        89 => (500, 53),
        97 => (5604, 569),
        _ => unreachable!(),
    };
    QuadInt::from_ints(q, a, b)
}

/// The fundamental unit `δ` together with the generator `γ` of one prime
/// above 2 and its conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConstants {
    pub q: u32,
    pub delta: QuadInt,
    pub gamma: QuadInt,
    pub gamma_bar: QuadInt,
}

/// `γ` is normalized so that `γγ̄ = −2`, `γ̄ ≡ −1` and `√q ≡ −1 (mod γ²)`.
pub fn constants(q: u64) -> Result<FieldConstants> {
    let (u, v): (i64, i64) = match check_q(q)? {
        17 => (-3, 1),
        41 => (-19, -3),
        89 => (9, 1),
        97 => (325, 33),
        _ => unreachable!(),
    };
    let gamma = QuadInt::new(q, u, v)?;
    Ok(FieldConstants {
        q: q as u32,
        delta: fundamental_unit(q)?,
        gamma_bar: gamma.conj(),
        gamma,
    })
}

/// `m | (a − b)` in `O_M`.
pub fn congruent_mod(a: &QuadInt, b: &QuadInt, m: &QuadInt) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    a.checked_sub(b)?.is_divisible_by(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// A prime ideal of `O_M` above the rational prime `p`.
///
/// Split primes are identified by the residue `root` of `√q`: modulo `p` for
/// odd `p`, modulo 4 for `p = 2` (the two 2-adic square roots of `q` differ
/// there).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdealM {
    q: u32,
    p: u64,
    kind: Splitting,
    root: Option<u64>,
    generator: Option<QuadInt>,
}

impl PrimeIdealM {
    /// All primes above `p`, split primes ordered by root.
    pub fn above(q: u64, p: u64) -> Result<Vec<Self>> {
        let q = check_q(q)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == q as u64 {
            return Ok(alloc::vec![Self {
                q,
                p,
                kind: Splitting::Ramified,
                root: Some(0),
                generator: Some(QuadInt::sqrt_q(q)),
            }]);
        }
        if p == 2 {
            let c = constants(q as u64)?;
            let mut out = Vec::new();
            for root in [1u64, 3] {
                let mut ideal = Self {
                    q,
                    p,
                    kind: Splitting::Split,
                    root: Some(root),
                    generator: None,
                };
                ideal.generator = Some(if ideal.reduce(&c.gamma).is_zero() {
                    c.gamma.clone()
                } else {
                    c.gamma_bar.clone()
                });
                out.push(ideal);
            }
            return Ok(out);
        }
        if legendre(q as i64, p) == 1 {
            let r = sqrt_mod(q as u64 % p, p).expect("residue has a root");
            let (r1, r2) = (r.min(p - r), r.max(p - r));
            Ok([r1, r2]
                .into_iter()
                .map(|root| Self {
                    q,
                    p,
                    kind: Splitting::Split,
                    root: Some(root),
                    generator: None,
                })
                .collect())
        } else {
            Ok(alloc::vec![Self {
                q,
                p,
                kind: Splitting::Inert,
                root: None,
                generator: Some(QuadInt::integer(q, p)),
            }])
        }
    }

    /// The canonical prime above `p`: the smaller root for split `p`.
    pub fn canonical(q: u64, p: u64) -> Result<Self> {
        Ok(Self::above(q, p)?.swap_remove(0))
    }

    /// `(γ)`.
    pub fn gamma(q: u64) -> Result<Self> {
        let g = constants(q)?.gamma;
        Ok(Self::above(q, 2)?
            .into_iter()
            .find(|i| i.generator.as_ref() == Some(&g))
            .expect("γ generates a prime above 2"))
    }

    /// `(γ̄)`.
    pub fn gamma_bar(q: u64) -> Result<Self> {
        Ok(Self::gamma(q)?.conjugate())
    }

    /// `(√q)`.
    pub fn sqrt_q(q: u64) -> Result<Self> {
        Self::canonical(q, q)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> Splitting {
        self.kind
    }

    pub fn root(&self) -> Option<u64> {
        self.root
    }

    pub fn generator(&self) -> Option<&QuadInt> {
        self.generator.as_ref()
    }

    pub fn norm(&self) -> u64 {
        match self.kind {
            Splitting::Inert => self.p * self.p,
            _ => self.p,
        }
    }

    /// The Galois-conjugate prime (itself unless split).
    pub fn conjugate(&self) -> Self {
        match (self.kind, self.root) {
            (Splitting::Split, Some(r)) => {
                let modulus = if self.p == 2 { 4 } else { self.p };
                Self {
                    q: self.q,
                    p: self.p,
                    kind: self.kind,
                    root: Some((modulus - r) % modulus),
                    generator: self.generator.as_ref().map(QuadInt::conj),
                }
            }
            _ => self.clone(),
        }
    }

    pub fn residue_field(&self) -> ResidueField {
        match self.kind {
            Splitting::Inert => ResidueField::quadratic(self.p, self.q as u64)
                .expect("q is a non-residue mod an inert prime"),
            _ => ResidueField::prime(self.p).expect("prime"),
        }
    }

    /// Image of `√q` in the residue field.
    pub fn sqrt_q_image(&self) -> ResidueElt {
        let f = self.residue_field();
        match self.kind {
            Splitting::Inert => f.generator().expect("degree 2"),
            Splitting::Ramified => f.zero(),
            Splitting::Split => f.from_u64(self.root.expect("split root")),
        }
    }

    /// Reduction `O_M → O_M/P`.
    pub fn reduce(&self, a: &QuadInt) -> ResidueElt {
        assert_eq!(a.q, self.q, "element and prime from different fields");
        let f = self.residue_field();
        let p = self.p;
        if p == 2 {
            let s = self.root.expect("split root");
            let t = (&a.u + &a.v * BigInt::from(s)).mod_floor(&BigInt::from(4));
            return f.from_u64(t.to_u64().unwrap() / 2);
        }
        let inv2 = inv_mod(2, p).unwrap();
        let u = reduce_big(&a.u, p);
        let v = reduce_big(&a.v, p);
        let half = |x: u64| crate::arith::mul_mod(x, inv2, p);
        match self.kind {
            Splitting::Inert => {
                let (x, y) = (half(u), half(v));
                f.elt(x as i64, y as i64)
            }
            Splitting::Ramified => f.from_u64(half(u)),
            Splitting::Split => {
                let r = self.root.unwrap();
                f.from_u64(half((u + crate::arith::mul_mod(v, r, p)) % p))
            }
        }
    }

    /// `√q` in `ℤ/p^prec` compatible with `root` (split primes only).
    fn lift_root(&self, prec: u32) -> (BigInt, BigInt) {
        let p = BigInt::from(self.p);
        let q = BigInt::from(self.q);
        let modulus = num_traits::pow(p.clone(), prec as usize);
        let mut s = BigInt::from(self.root.expect("split root"));
        if self.p == 2 {
            let mut k = 3u32;
            while k < prec {
                let m = BigInt::one() << (k + 1);
                if !((&s * &s - &q).mod_floor(&m)).is_zero() {
                    s += BigInt::one() << (k - 1);
                }
                k += 1;
            }
        } else {
            let mut pk = p.clone();
            for _ in 1..prec {
                pk *= &p;
                let f = (&s * &s - &q).mod_floor(&pk);
                let df = (&s * 2u32).mod_floor(&pk);
                let inv = df.modinv(&pk).expect("2s is a unit");
                s = (&s - f * inv).mod_floor(&pk);
            }
        }
        (s.mod_floor(&modulus), modulus)
    }

    /// The `P`-adic valuation of a nonzero element.
    pub fn valuation(&self, a: &QuadInt) -> Result<u32> {
        assert_eq!(a.q, self.q, "element and prime from different fields");
        if a.is_zero() {
            return Err(Error::InfiniteValuation);
        }
        let vp = |x: &BigInt| {
            if x.is_zero() {
                u32::MAX
            } else {
                val_p(x, self.p)
            }
        };
        Ok(match self.kind {
            Splitting::Ramified => {
                let eu = vp(&a.u).saturating_mul(2);
                let ev = vp(&a.v).saturating_mul(2).saturating_add(1);
                eu.min(ev)
            }
            Splitting::Inert => vp(&a.u).min(vp(&a.v)),
            Splitting::Split => {
                let e_max = val_p(&a.norm(), self.p);
                if e_max == 0 {
                    return Ok(0);
                }
                let extra = if self.p == 2 { 3 } else { 1 };
                let (s, modulus) = self.lift_root(e_max + extra);
                let t = (&a.u + &a.v * s).mod_floor(&modulus);
                let cap = if self.p == 2 { e_max + 1 } else { e_max };
                let e = if t.is_zero() {
                    cap
                } else {
                    val_p(&t, self.p).min(cap)
                };
                if self.p == 2 {
                    e - 1
                } else {
                    e
                }
            }
        })
    }
}

/// `val_at(a, P)`.
pub fn val_at(a: &QuadInt, prime: &PrimeIdealM) -> Result<u32> {
    prime.valuation(a)
}

/// `reduce_mod(a, P)`.
pub fn reduce_mod(a: &QuadInt, prime: &PrimeIdealM) -> ResidueElt {
    prime.reduce(a)
}

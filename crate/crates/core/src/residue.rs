//! Residue fields `𝔽_p` and `𝔽_{p²} = 𝔽_p[s]/(s² − d)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith::{inv_mod, is_prime, legendre, mul_mod, reduce_i64};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A finite field of prime or prime-squared order.
///
/// Degree-2 fields carry the non-residue `d` with `s² = d`; for an inert prime
/// of `ℚ(√q)` this is `q mod p`, so `s` is the image of `√q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u64,
    nonresidue: Option<u64>,
}

impl ResidueField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            nonresidue: None,
        })
    }

    pub fn quadratic(p: u64, d: u64) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::NotPrime(p));
        }
        let d = d % p;
        if legendre(d as i64, p) != -1 {
            return Err(Error::NotNonResidue(d, p));
        }
        Ok(Self {
            p,
            nonresidue: Some(d),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        if self.nonresidue.is_some() {
            2
        } else {
            1
        }
    }

    pub fn order(&self) -> u64 {
        match self.nonresidue {
            Some(_) => self.p * self.p,
            None => self.p,
        }
    }

    /// The non-residue `d = s²` of a degree-2 field.
    pub fn nonresidue(&self) -> Option<u64> {
        self.nonresidue
    }

    pub fn elt(&self, a: i64, b: i64) -> ResidueElt {
        let b = if self.nonresidue.is_some() {
            reduce_i64(b, self.p)
        } else {
            debug_assert!(b == 0, "prime field element with nonzero s-part");
            0
        };
        ResidueElt {
            field: *self,
            a: reduce_i64(a, self.p),
            b,
        }
    }

    pub fn from_u64(&self, a: u64) -> ResidueElt {
        ResidueElt {
            field: *self,
            a: a % self.p,
            b: 0,
        }
    }

    pub fn int(&self, a: i64) -> ResidueElt {
        self.elt(a, 0)
    }

    pub fn zero(&self) -> ResidueElt {
        self.int(0)
    }

    pub fn one(&self) -> ResidueElt {
        self.int(1)
    }

    /// The adjoined square root `s` (degree 2 only).
    pub fn generator(&self) -> Option<ResidueElt> {
        self.nonresidue.map(|_| self.elt(0, 1))
    }

    /// Element with index `i` in `[0, order)`: `i = a + b·p`.
    pub fn element(&self, i: u64) -> ResidueElt {
        ResidueElt {
            field: *self,
            a: i % self.p,
            b: i / self.p,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ResidueElt> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// Quadratic character of every element, indexed like [`Self::element`]:
    /// 1 for nonzero squares, -1 for non-squares, 0 at zero.
    pub fn quadratic_character_table(&self) -> Vec<i8> {
        let n = self.order() as usize;
        let mut table = vec![-1i8; n];
        table[0] = 0;
        for x in self.elements().skip(1) {
            table[x.square().index() as usize] = 1;
        }
        table
    }
}

/// An element `a + b·s` of a [`ResidueField`], coordinates in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueElt {
    field: ResidueField,
    a: u64,
    b: u64,
}

impl fmt::Debug for ResidueElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{} (mod {})", self.a, self.field.p)
        } else {
            write!(f, "{} + {}s (mod {})", self.a, self.b, self.field.p)
        }
    }
}

impl ResidueElt {
    pub fn field(&self) -> ResidueField {
        self.field
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn index(&self) -> u64 {
        self.a + self.b * self.field.p
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.p;
        match self.field.nonresidue {
            None => Some(self.field.from_u64(inv_mod(self.a, p)?)),
            Some(d) => {
                // (a + bs)⁻¹ = (a − bs) / (a² − d b²)
                let norm = (mul_mod(self.a, self.a, p) + p
                    - mul_mod(d, mul_mod(self.b, self.b, p), p))
                    % p;
                let ninv = inv_mod(norm, p)?;
                Some(ResidueElt {
                    field: self.field,
                    a: mul_mod(self.a, ninv, p),
                    b: mul_mod((p - self.b) % p, ninv, p),
                })
            }
        }
    }

    /// The `p`-power Frobenius; on an inert residue field this is the image
    /// of Galois conjugation `√q ↦ −√q`.
    pub fn frobenius(&self) -> Self {
        ResidueElt {
            field: self.field,
            a: self.a,
            b: (self.field.p - self.b) % self.field.p,
        }
    }

    /// Euler's criterion `x^((|F|−1)/2) = 1`.
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.field.p == 2 {
            return Ok(true);
        }
        Ok(self.pow((self.field.order() - 1) / 2) == self.field.one())
    }

    /// The value as an element of `𝔽_p` if it lies there.
    pub fn as_prime_field(&self) -> Option<u64> {
        (self.b == 0).then_some(self.a)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "residue field mismatch");
    }
}

impl Add for ResidueElt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p;
        ResidueElt {
            field: self.field,
            a: (self.a + rhs.a) % p,
            b: (self.b + rhs.b) % p,
        }
    }
}

impl Sub for ResidueElt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ResidueElt {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.field.p;
        ResidueElt {
            field: self.field,
            a: (p - self.a) % p,
            b: (p - self.b) % p,
        }
    }
}

impl Mul for ResidueElt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p;
        match self.field.nonresidue {
            None => ResidueElt {
                field: self.field,
                a: mul_mod(self.a, rhs.a, p),
                b: 0,
            },
            Some(d) => {
                let aa = mul_mod(self.a, rhs.a, p);
                let bb = mul_mod(mul_mod(self.b, rhs.b, p), d, p);
                let ab = mul_mod(self.a, rhs.b, p);
                let ba = mul_mod(self.b, rhs.a, p);
                ResidueElt {
                    field: self.field,
                    a: (aa + bb) % p,
                    b: (ab + ba) % p,
                }
            }
        }
    }
}

impl Ring for ResidueElt {
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub(&self, other: &Self) -> Self {
        *self - *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn scale(&self, k: i64) -> Self {
        *self * self.field.int(k)
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        ResidueElt::is_zero(self)
    }
}

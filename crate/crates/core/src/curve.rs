//! Weierstrass models over residue fields and over `ℚ`.
//!
//! Residue-field curves use the two-torsion model `Y² = X³ + a₂X² + a₄X`,
//! which is the shape of both Frey families. Rational curves use the long
//! Weierstrass form and exist to evaluate `a_p` of the target curves `F_q`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{legendre, reduce_big};
use crate::error::{Error, Result};
use crate::residue::{ResidueElt, ResidueField};
use crate::ring::Ring;

/// Largest field the double-loop point count accepts.
pub const NAIVE_COUNT_LIMIT: u64 = 10_000;

/// `(c₄, c₆, Δ)` of `Y² = X³ + a₂X² + a₄X` over any commutative ring:
/// `c₄ = 16a₂² − 48a₄`, `c₆ = −64a₂³ + 288a₂a₄`, `Δ = 16a₄²(a₂² − 4a₄)`.
pub fn invariants<R: Ring>(a2: &R, a4: &R) -> (R, R, R) {
    let a2sq = a2.square();
    let c4 = a2sq.scale(16).sub(&a4.scale(48));
    let c6 = a2sq.mul(a2).scale(-64).add(&a2.mul(a4).scale(288));
    let delta = a4.square().scale(16).mul(&a2sq.sub(&a4.scale(4)));
    (c4, c6, delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionType {
    Good,
    /// Nodal; `split` when `−c₆/c₄` is a square in the residue field.
    Multiplicative {
        split: bool,
    },
    Additive,
}

/// An affine point or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(ResidueElt, ResidueElt),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalCurve {
    pub a2: ResidueElt,
    pub a4: ResidueElt,
    pub c4: ResidueElt,
    pub c6: ResidueElt,
    pub delta: ResidueElt,
}

impl LocalCurve {
    pub fn new(a2: ResidueElt, a4: ResidueElt) -> Self {
        assert_eq!(a2.field(), a4.field(), "coefficients from different fields");
        let (c4, c6, delta) = invariants(&a2, &a4);
        Self {
            a2,
            a4,
            c4,
            c6,
            delta,
        }
    }

    pub fn field(&self) -> ResidueField {
        self.a2.field()
    }

    pub fn is_singular(&self) -> bool {
        self.delta.is_zero()
    }

    pub fn reduction_type(&self) -> ReductionType {
        if !self.delta.is_zero() {
            return ReductionType::Good;
        }
        if self.c4.is_zero() {
            return ReductionType::Additive;
        }
        let ratio = -self.c6 * self.c4.inv().expect("c4 nonzero");
        // c4 ≠ 0 = Δ forces c6 ≠ 0 since c4³ − c6² = 1728Δ away from 2, 3
        let split = ratio.is_zero() || ratio.is_square().expect("nonzero");
        ReductionType::Multiplicative { split }
    }

    fn rhs(&self, x: ResidueElt) -> ResidueElt {
        ((x + self.a2) * x + self.a4) * x
    }

    /// `a = |F| + 1 − #C(F)` as `−Σ_x χ(x³ + a₂x² + a₄x)`.
    pub fn trace_of_frobenius(&self) -> Result<i64> {
        if self.is_singular() {
            return Err(Error::SingularCurve);
        }
        let field = self.field();
        let table = field.quadratic_character_table();
        Ok(-field
            .elements()
            .map(|x| table[self.rhs(x).index() as usize] as i64)
            .sum::<i64>())
    }

    /// Trace of Frobenius on the mod-`n` representation: `a_P` at good
    /// reduction, `±(|F| + 1)` at multiplicative reduction.
    pub fn reduction_trace(&self) -> Result<i64> {
        let n1 = self.field().order() as i64 + 1;
        match self.reduction_type() {
            ReductionType::Good => self.trace_of_frobenius(),
            ReductionType::Multiplicative { split: true } => Ok(n1),
            ReductionType::Multiplicative { split: false } => Ok(-n1),
            ReductionType::Additive => Err(Error::AdditiveReduction),
        }
    }

    /// Projective point count by double loop over `(x, y)`.
    pub fn count_points_naive(&self) -> Result<u64> {
        let field = self.field();
        if field.order() > NAIVE_COUNT_LIMIT {
            return Err(Error::FieldTooLarge(field.order()));
        }
        let mut count = 1;
        for x in field.elements() {
            let r = self.rhs(x);
            count += field.elements().filter(|y| y.square() == r).count() as u64;
        }
        Ok(count)
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => y.square() == self.rhs(*x),
        }
    }

    pub fn points(&self) -> Vec<Point> {
        let field = self.field();
        let mut out = alloc::vec![Point::Infinity];
        for x in field.elements() {
            let r = self.rhs(x);
            for y in field.elements() {
                if y.square() == r {
                    out.push(Point::Affine(x, y));
                }
            }
        }
        out
    }

    pub fn neg(&self, pt: &Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(*x, -*y),
        }
    }

    /// Chord-and-tangent addition (odd characteristic).
    pub fn add(&self, p1: &Point, p2: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p1, p2) {
            (Point::Infinity, _) => return *p2,
            (_, Point::Infinity) => return *p1,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (*x1, *y1, *x2, *y2),
        };
        let field = self.field();
        let lambda = if x1 != x2 {
            (y2 - y1) * (x2 - x1).inv().expect("distinct x")
        } else if y1 == y2 && !y1.is_zero() {
            let num = field.int(3) * x1 * x1 + field.int(2) * self.a2 * x1 + self.a4;
            num * (field.int(2) * y1).inv().expect("odd characteristic")
        } else {
            return Point::Infinity;
        };
        let x3 = lambda * lambda - self.a2 - x1 - x2;
        let y3 = -(y1 + lambda * (x3 - x1));
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, k: i64, pt: &Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = if k < 0 { self.neg(pt) } else { *pt };
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// `Y² + a₁XY + a₃Y = X³ + a₂X² + a₄X + a₆` over `ℚ` with integer
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve {
    pub a: [BigInt; 5],
}

impl RationalCurve {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        Self {
            a: [a1, a2, a3, a4, a6].map(BigInt::from),
        }
    }

    pub fn from_big(a: [BigInt; 5]) -> Self {
        Self { a }
    }

    /// `(b₂, b₄, b₆, b₈)`.
    pub fn b_invariants(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + a2 * 4;
        let b4 = a1 * a3 + a4 * 2;
        let b6 = a3 * a3 + a6 * 4;
        let b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    /// `(c₄, c₆, Δ)`.
    pub fn invariants(&self) -> (BigInt, BigInt, BigInt) {
        let [b2, b4, b6, b8] = self.b_invariants();
        let c4 = &b2 * &b2 - &b4 * 24;
        let c6 = -(&b2 * &b2 * &b2) + &b2 * &b4 * 36 - &b6 * 216;
        let delta = -(&b2 * &b2 * &b8) - &b4 * &b4 * &b4 * 8 - &b6 * &b6 * 27 + &b2 * &b4 * &b6 * 9;
        (c4, c6, delta)
    }

    pub fn discriminant(&self) -> BigInt {
        self.invariants().2
    }

    /// `j = c₄³/Δ` as a reduced fraction with positive denominator.
    pub fn j_invariant(&self) -> (BigInt, BigInt) {
        let (c4, _, delta) = self.invariants();
        let num = &c4 * &c4 * &c4;
        let g = num.gcd(&delta);
        let (mut n, mut d) = (num / &g, delta / g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        (n, d)
    }

    fn reduced(&self, p: u64) -> [u64; 5] {
        self.a.clone().map(|c| reduce_big(&c, p))
    }

    /// `a_p = p + 1 − #E(𝔽_p)` at a prime of good reduction.
    pub fn ap(&self, p: u64) -> Result<i64> {
        if (self.discriminant() % BigInt::from(p)).is_zero() {
            return Err(Error::BadReduction(p));
        }
        if p == 2 {
            return Ok(p as i64 + 1 - self.count_points_naive(p)? as i64);
        }
        let [a1, a2, a3, a4, a6] = self.reduced(p).map(|c| c as i128);
        let pi = p as i128;
        // y² + (a₁x + a₃)y = f(x) has 1 + χ((a₁x + a₃)² + 4f(x)) solutions
        let mut sum = 0i64;
        for x in 0..pi {
            let f = ((x * x % pi * x) + a2 * x % pi * x + a4 * x + a6) % pi;
            let h = (a1 * x + a3) % pi;
            let disc = (h * h + 4 * f) % pi;
            sum += legendre(disc as i64, p) as i64;
        }
        Ok(-sum)
    }

    /// Projective point count over `𝔽_p` by double loop.
    pub fn count_points_naive(&self, p: u64) -> Result<u64> {
        if p > NAIVE_COUNT_LIMIT {
            return Err(Error::FieldTooLarge(p));
        }
        let [a1, a2, a3, a4, a6] = self.reduced(p).map(|c| c as u128);
        let pm = p as u128;
        let mut count = 1u64;
        for x in 0..pm {
            let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % pm;
            for y in 0..pm {
                if (y * y + a1 * x * y + a3 * y) % pm == rhs {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

/// `a_p` of a long-Weierstrass curve over `ℚ`.
pub fn rational_curve_ap(a: [i64; 5], p: u64) -> Result<i64> {
    RationalCurve::new(a[0], a[1], a[2], a[3], a[4]).ap(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_small_models() {
        let f = ResidueField::prime(7).unwrap();
        let (c4, c6, d) = invariants(&f.zero(), &f.zero());
        assert!(c4.is_zero() && c6.is_zero() && d.is_zero());
        let (c4, c6, d) = invariants(&f.int(1), &f.int(0));
        assert_eq!(c4, f.int(2));
        assert_eq!(c6, f.int(6));
        assert!(d.is_zero());
    }

    #[test]
    fn traces_over_small_fields() {
        let f7 = ResidueField::prime(7).unwrap();
        let c = LocalCurve::new(f7.int(0), f7.int(4));
        assert_eq!(c.trace_of_frobenius(), Ok(0));
        assert_eq!(c.count_points_naive(), Ok(8));
        let c = LocalCurve::new(f7.int(4), f7.int(1));
        assert_eq!(c.trace_of_frobenius(), Ok(4));
        let f3 = ResidueField::prime(3).unwrap();
        let c = LocalCurve::new(f3.int(0), f3.int(1));
        assert_eq!(c.trace_of_frobenius(), Ok(0));
        assert_eq!(c.count_points_naive(), Ok(4));
    }

    #[test]
    fn singular_and_additive_models() {
        let f = ResidueField::prime(11).unwrap();
        assert_eq!(
            LocalCurve::new(f.int(1), f.int(0)).trace_of_frobenius(),
            Err(Error::SingularCurve)
        );
        let additive = LocalCurve::new(f.int(0), f.int(0));
        assert_eq!(additive.reduction_type(), ReductionType::Additive);
        assert_eq!(additive.reduction_trace(), Err(Error::AdditiveReduction));
    }

    #[test]
    fn multiplicative_sign_follows_square_class() {
        // Y² = X³ + a₂X²: node at 0 with tangents Y = ±√a₂ X
        for p in [5u64, 7, 11, 13] {
            let f = ResidueField::prime(p).unwrap();
            for a2 in 1..p as i64 {
                let c = LocalCurve::new(f.int(a2), f.int(0));
                let split = f.int(a2).is_square().unwrap();
                let expected = if split { p as i64 + 1 } else { -(p as i64 + 1) };
                assert_eq!(c.reduction_trace(), Ok(expected), "p={p} a2={a2}");
                // the nonsingular points number p − 1 (split) or p + 1
                let ns = c.points().len() as i64 - 1;
                assert_eq!(ns, if split { p as i64 - 1 } else { p as i64 + 1 });
            }
        }
    }

    #[test]
    fn group_law_has_correct_order() {
        let f = ResidueField::prime(13).unwrap();
        let c = LocalCurve::new(f.int(3), f.int(5));
        let n = c.points().len() as i64;
        for pt in c.points() {
            assert!(c.contains(&pt));
            assert_eq!(c.mul(n, &pt), Point::Infinity);
        }
    }

    #[test]
    fn curve_82a1() {
        let e = RationalCurve::new(1, 0, 1, -2, 0);
        assert_eq!(e.discriminant(), BigInt::from(164));
        assert_eq!(e.ap(7), Ok(-4));
        assert_eq!(e.ap(3), Ok(-2));
        assert_eq!(e.ap(41), Err(Error::BadReduction(41)));
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(
                p as i64 + 1 - e.count_points_naive(p).unwrap() as i64,
                e.ap(p).unwrap()
            );
        }
    }
}

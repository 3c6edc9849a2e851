//! Dense integer polynomials, just enough for characteristic polynomials of
//! Hecke eigenvalues and the norms the sieve takes of them.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients low degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntPoly{:?}",
            self.coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
        )
    }
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x − a`.
    pub fn linear(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `p(x + a)` by Horner's rule on polynomials.
    pub fn shift(&self, a: &BigInt) -> Self {
        let lin = Self::new(vec![a.clone(), BigInt::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(&lin).add(&Self::constant(c.clone()))
        })
    }

    /// `(A, B)` with `p(y) = A(y²) + y·B(y²)`.
    pub fn even_odd(&self) -> (Self, Self) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (Self::new(even), Self::new(odd))
    }

    /// `p(c·x) / c^deg`, which must be integral: the characteristic polynomial
    /// of `θ/c` from that of `θ`.
    pub fn rescale_roots(&self, c: &BigInt) -> Result<Self> {
        let d = self.degree().unwrap_or(0);
        let mut out = Vec::with_capacity(d + 1);
        for (k, a) in self.coeffs.iter().enumerate() {
            let den = num_traits::pow(c.clone(), d - k);
            let (quo, rem) = a.div_rem(&den);
            if !rem.is_zero() {
                return Err(Error::InvalidData(
                    "rescaled polynomial is not integral".into(),
                ));
            }
            out.push(quo);
        }
        Ok(Self::new(out))
    }
}

/// The polynomial whose roots are `α² + 2p` as `α` runs over the roots of the
/// monic `c`: with `c(y) = A(y²) + y·B(y²)`, first
/// `E(z) = (−1)^d (A(z)² − z·B(z)²)` has roots `α²`, then `D(x) = E(x − 2p)`.
pub fn inert_trace_poly(c: &IntPoly, p: u64) -> IntPoly {
    let d = c.degree().unwrap_or(0);
    let (a, b) = c.even_odd();
    let z = IntPoly::from_i64(&[0, 1]);
    let mut e = a.mul(&a).sub(&z.mul(&b).mul(&b));
    if d % 2 == 1 {
        e = e.scale(&BigInt::from(-1));
    }
    e.shift(&BigInt::from(-2 * p as i64))
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, shifts, deg) in [(f, n, m), (g, m, n)] {
        for s in 0..shifts {
            let mut row = vec![BigInt::zero(); size];
            for k in 0..=deg {
                // descending powers
                row[s + k] = poly.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    det_bareiss(rows)
}

/// Characteristic polynomial `det(x·I − M)` of a square integer matrix,
/// by Berkowitz's division-free algorithm.
pub fn charpoly_berkowitz(m: &[Vec<BigInt>]) -> IntPoly {
    let n = m.len();
    // coefficient vectors in descending powers
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // leading r×r principal block A, column R = M[0..r][r], row S = M[r][0..r]
        let a = |i: usize, j: usize| &m[i][j];
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-m[r][r].clone());
        // S·A^k·R for k = 0..r−1
        let mut v: Vec<BigInt> = (0..r).map(|i| m[i][r].clone()).collect();
        for _ in 0..r {
            let s: BigInt = (0..r).map(|j| &m[r][j] * &v[j]).sum();
            t.push(-s);
            v = (0..r)
                .map(|i| (0..r).map(|j| a(i, j) * &v[j]).sum())
                .collect();
        }
        // Toeplitz product: new c = T · c
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i + j < r + 2 {
                    next[i + j] += ti * cj;
                }
            }
        }
        c = next;
    }
    c.reverse();
    IntPoly::new(c)
}

/// Matrix of multiplication by `θ = Σ aⱼνʲ` on the basis `1, ν, …, ν^(d−1)`
/// of `ℤ[ν]/(f)`, `f` monic of degree `d`.
pub fn multiplication_matrix(theta: &[BigInt], f: &IntPoly) -> Result<Vec<Vec<BigInt>>> {
    let d = f
        .degree()
        .ok_or_else(|| Error::InvalidData("zero defining polynomial".into()))?;
    if !f.is_monic() {
        return Err(Error::InvalidData(
            "defining polynomial must be monic".into(),
        ));
    }
    let theta = reduce_mod_monic(&IntPoly::new(theta.to_vec()), f);
    let mut cols = Vec::with_capacity(d);
    let mut basis = IntPoly::one();
    let nu = IntPoly::from_i64(&[0, 1]);
    for _ in 0..d {
        let prod = reduce_mod_monic(&theta.mul(&basis), f);
        cols.push((0..d).map(|i| prod.coeff(i)).collect::<Vec<_>>());
        basis = reduce_mod_monic(&basis.mul(&nu), f);
    }
    Ok((0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect())
}

fn reduce_mod_monic(a: &IntPoly, f: &IntPoly) -> IntPoly {
    let d = f.degree().expect("nonzero modulus");
    let mut c = a.coeffs.clone();
    while c.len() > d {
        let top = c.pop().expect("nonempty");
        let shift = c.len() - d;
        for i in 0..d {
            c[shift + i] -= &top * &f.coeffs[i];
        }
    }
    IntPoly::new(c)
}

/// Characteristic polynomial over `ℚ` of `θ = (Σ aⱼνʲ)/den` in `ℚ[ν]/(f)`,
/// required to have integer coefficients (θ an algebraic integer).
pub fn element_charpoly(numerator: &[BigInt], den: &BigInt, f: &IntPoly) -> Result<IntPoly> {
    if den.is_zero() {
        return Err(Error::InvalidData("zero denominator".into()));
    }
    let m = multiplication_matrix(numerator, f)?;
    charpoly_berkowitz(&m).rescale_roots(den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn inert_poly_matches_known_values() {
        let c = IntPoly::from_i64(&[18, 0, 1]);
        assert_eq!(inert_trace_poly(&c, 7), IntPoly::from_i64(&[16, 8, 1]));
        let c = IntPoly::from_i64(&[0, 0, 1]);
        assert_eq!(inert_trace_poly(&c, 7), IntPoly::from_i64(&[196, -28, 1]));
    }

    #[test]
    fn inert_poly_is_a_resultant() {
        // D(x) = Res_y(C(y), x − 2p − y²), checked at integer points
        let c = IntPoly::from_i64(&[3, -1, 2, 1]);
        let p = 5;
        let d = inert_trace_poly(&c, p);
        for x in -20..20i64 {
            let g = IntPoly::from_i64(&[x - 2 * p as i64, 0, -1]);
            let r = resultant(&c, &g);
            assert_eq!(d.eval(&big(x)), r, "x={x}");
        }
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x − a, x − b) = a − b
        let f = IntPoly::linear(big(3));
        let g = IntPoly::linear(big(7));
        assert_eq!(resultant(&f, &g), big(-4));
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let g = IntPoly::from_i64(&[-3, 0, 1]);
        assert_eq!(resultant(&f, &g), big(1));
    }

    #[test]
    fn berkowitz_matches_cayley_hamilton_small() {
        let m = vec![vec![big(2), big(1)], vec![big(1), big(3)]];
        assert_eq!(charpoly_berkowitz(&m), IntPoly::from_i64(&[5, -5, 1]));
        let m = vec![
            vec![big(0), big(0), big(6)],
            vec![big(1), big(0), big(-11)],
            vec![big(0), big(1), big(6)],
        ];
        assert_eq!(charpoly_berkowitz(&m), IntPoly::from_i64(&[-6, 11, -6, 1]));
    }

    #[test]
    fn element_charpoly_in_quadratic_ring() {
        // ν² = 2, θ = 1 + ν
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let cp = element_charpoly(&[big(1), big(1)], &big(1), &f).unwrap();
        assert_eq!(cp, IntPoly::from_i64(&[-1, -2, 1]));
        // ν² = 5, θ = (1 + ν)/2
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        let cp = element_charpoly(&[big(1), big(1)], &big(2), &f).unwrap();
        assert_eq!(cp, IntPoly::from_i64(&[-1, -1, 1]));
        assert!(element_charpoly(&[big(1), big(1)], &big(3), &f).is_err());
    }

    #[test]
    fn shift_and_split() {
        let p = IntPoly::from_i64(&[1, 2, 3, 4]);
        let (a, b) = p.even_odd();
        assert_eq!(a, IntPoly::from_i64(&[1, 3]));
        assert_eq!(b, IntPoly::from_i64(&[2, 4]));
        for x in -5..5 {
            assert_eq!(p.shift(&big(2)).eval(&big(x)), p.eval(&big(x + 2)));
        }
    }
}

//! The two Frey curves attached to a solution of `x² − q^(2k+1) = yⁿ`.
//!
//! `G_{x,k}: Y² = X³ + 4xX² + 4(x² − q^(2k+1))X` is defined over `ℚ`.
//! `E_{x,m}: Y² = X³ + 2γq^(m+1)X² + γ²wX` is a ℚ-curve over `ℚ(√q)`
//! with `k = 2m` or `2m + 1` and
//!
//! ```text
//! w = ((x + q^(2m)√q)/2)·q√q      (k even)
//! w = ((x + q^(2m+1)√q)/2)·√q     (k odd)
//! ```
//!
//! so that `w + w̄ = q^(2m+2)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, odd_radical, pow_mod, reduce_big, trial_factor};
use crate::curve::{invariants, LocalCurve, Point, RationalCurve};
use crate::error::{Error, Result};
use crate::quadfield::{check_q, constants, FieldConstants, PrimeIdealM, QuadInt, Splitting};
use crate::residue::ResidueElt;

/// Default bound on `|r|` in the decomposition search.
pub const DEFAULT_R_MAX: u32 = 50;
/// Default bound on the half-coordinates of `α`.
pub const DEFAULT_COEFF_BOX: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: u32) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A verified solution `(q, x, y, k, n)`, with `x` normalized to `1 mod 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub q: u32,
    pub x: BigInt,
    pub y: BigInt,
    pub k: u32,
    pub n: u32,
}

impl Solution {
    /// Checks `x² − q^(2k+1) = yⁿ`, `y` even, `gcd(x, y) = 1`, `q ∤ x`, and
    /// flips the sign of `x` when `x ≡ 3 (mod 4)`.
    pub fn new(q: u64, x: impl Into<BigInt>, y: impl Into<BigInt>, k: u32, n: u32) -> Result<Self> {
        let q = check_q(q)?;
        let (mut x, y) = (x.into(), y.into());
        let lhs = &x * &x - num_traits::pow(BigInt::from(q), 2 * k as usize + 1);
        if lhs != num_traits::pow(y.clone(), n as usize) {
            return Err(Error::NotASolution(format!(
                "{x}² − {q}^{} ≠ ({y})^{n}",
                2 * k + 1
            )));
        }
        if y.is_odd() {
            return Err(Error::NotASolution("y must be even".into()));
        }
        if !x.gcd(&y).is_one() {
            return Err(Error::NotASolution("gcd(x, y) ≠ 1".into()));
        }
        if (&x % q).is_zero() {
            return Err(Error::NotASolution("q divides x".into()));
        }
        if x.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
            x = -x;
        }
        Ok(Self { q, x, y, k, n })
    }

    pub fn m(&self) -> u32 {
        self.k / 2
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.k)
    }

    /// `(x + q^k√q)/2`.
    pub fn left_factor(&self) -> QuadInt {
        let qk = num_traits::pow(BigInt::from(self.q), self.k as usize);
        QuadInt::new(self.q as u64, self.x.clone(), qk).expect("x and q^k are odd")
    }

    pub fn rational_frey(&self) -> RationalCurve {
        let x = &self.x;
        let qk = num_traits::pow(BigInt::from(self.q), 2 * self.k as usize + 1);
        RationalCurve::from_big([
            BigInt::zero(),
            x * 4,
            BigInt::zero(),
            (x * x - qk) * 4,
            BigInt::zero(),
        ])
    }

    /// The global `w` of the solution.
    pub fn w(&self) -> QuadInt {
        let s = QuadInt::sqrt_q(self.q);
        match self.parity() {
            Parity::Even => self.left_factor() * QuadInt::integer(self.q, self.q) * s,
            Parity::Odd => self.left_factor() * s,
        }
    }

    pub fn qcurve(&self) -> QCurveModel {
        QCurveModel::new(self.q, self.m(), self.w())
    }
}

fn check_auxiliary(q: u32, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 || p == q as u64 {
        return Err(Error::BadAuxiliaryPrime {
            p,
            two_q: 2 * q as u64,
        });
    }
    Ok(())
}

/// `G_{χ,κ}` over `𝔽_p`: `a₂ = 4χ`, `a₄ = 4(χ² − q^(2κ+1))`.
pub fn rational_frey_local(chi: i64, kappa: u32, q: u64, p: u64) -> Result<LocalCurve> {
    let q = check_q(q)?;
    check_auxiliary(q, p)?;
    let f = crate::residue::ResidueField::prime(p)?;
    let qpow = pow_mod(q as u64, 2 * kappa as u64 + 1, p);
    let chi = f.int(chi);
    let a2 = f.int(4) * chi;
    let a4 = f.int(4) * (chi * chi - f.from_u64(qpow));
    Ok(LocalCurve::new(a2, a4))
}

/// `w` reduced at `P` for `x ≡ χ`, `m ≡ μ`.
pub fn w_value(chi: i64, mu: u32, parity: Parity, prime: &PrimeIdealM) -> Result<ResidueElt> {
    check_auxiliary(prime.q(), prime.p())?;
    let f = prime.residue_field();
    let s = prime.sqrt_q_image();
    let half = f.int(2).inv().expect("odd characteristic");
    let q = f.int(prime.q() as i64);
    let chi = f.int(chi);
    Ok(match parity {
        Parity::Even => (chi + q.pow(2 * mu as u64) * s) * half * s * s * s,
        Parity::Odd => (chi + q.pow(2 * mu as u64 + 1) * s) * half * s,
    })
}

/// `E_{χ,μ}` reduced at `P`: `a₂ = 2γq^(μ+1)`, `a₄ = γ²w`.
pub fn qcurve_local(chi: i64, mu: u32, parity: Parity, prime: &PrimeIdealM) -> Result<LocalCurve> {
    let w = w_value(chi, mu, parity, prime)?;
    let gamma = prime.reduce(&constants(prime.q() as u64)?.gamma);
    let f = prime.residue_field();
    let q = f.int(prime.q() as i64);
    let a2 = f.int(2) * gamma * q.pow(mu as u64 + 1);
    let a4 = gamma * gamma * w;
    Ok(LocalCurve::new(a2, a4))
}

/// The global model of `E` together with its invariants in `O_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCurveModel {
    pub q: u32,
    pub m: u32,
    pub w: QuadInt,
    pub a2: QuadInt,
    pub a4: QuadInt,
    pub c4: QuadInt,
    pub c6: QuadInt,
    pub delta: QuadInt,
}

impl QCurveModel {
    pub fn new(q: u32, m: u32, w: QuadInt) -> Self {
        let c = constants(q as u64).expect("supported q");
        let qm1 = QuadInt::integer(q, num_traits::pow(BigInt::from(q), m as usize + 1));
        let a2 = QuadInt::integer(q, 2) * &c.gamma * &qm1;
        let a4 = c.gamma.pow(2) * &w;
        let (c4, c6, delta) = invariants(&a2, &a4);
        Self {
            q,
            m,
            w,
            a2,
            a4,
            c4,
            c6,
            delta,
        }
    }

    /// The Galois conjugate `Ē` (a model of the same shape with `γ̄, w̄`).
    pub fn conjugate_coeffs(&self) -> (QuadInt, QuadInt) {
        (self.a2.conj(), self.a4.conj())
    }

    pub fn reduce(&self, prime: &PrimeIdealM) -> LocalCurve {
        LocalCurve::new(prime.reduce(&self.a2), prime.reduce(&self.a4))
    }

    pub fn reduce_conjugate(&self, prime: &PrimeIdealM) -> LocalCurve {
        let (a2, a4) = self.conjugate_coeffs();
        LocalCurve::new(prime.reduce(&a2), prime.reduce(&a4))
    }

    /// `(c₄, c₆, Δ)` from `c₄ = γ⁶γ̄⁴(w + 4w̄)`, `c₆ = γ⁹γ̄⁶(w − 8w̄)q^(m+1)`,
    /// `Δ = γ¹²γ̄⁶w²w̄`.
    pub fn closed_form_invariants(&self) -> (QuadInt, QuadInt, QuadInt) {
        let FieldConstants {
            gamma: g,
            gamma_bar: gb,
            ..
        } = constants(self.q as u64).expect("supported q");
        let q = self.q;
        let w = &self.w;
        let wb = w.conj();
        let int = |n: i64| QuadInt::integer(q, n);
        let qm1 = QuadInt::integer(q, num_traits::pow(BigInt::from(q), self.m as usize + 1));
        let c4 = g.pow(6) * gb.pow(4) * (w + &(int(4) * &wb));
        let c6 = g.pow(9) * gb.pow(6) * (w - &(int(8) * &wb)) * qm1;
        let delta = g.pow(12) * gb.pow(6) * w.pow(2) * wb;
        (c4, c6, delta)
    }
}

/// `(x + q^k√q)/2 = δ^r γ^(n−2) αⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub r: i32,
    pub alpha: QuadInt,
}

/// Search order `0, 1, −1, 2, −2, …` so the smallest `|r|` wins.
fn r_order(r_max: u32) -> impl Iterator<Item = i32> {
    core::iter::once(0).chain((1..=r_max as i32).flat_map(|r| [r, -r]))
}

fn unit_power(delta: &QuadInt, r: i32) -> QuadInt {
    if r >= 0 {
        delta.pow(r as u32)
    } else {
        // δ⁻¹ = N(δ)·δ̄
        let inv = if delta.norm().is_negative() {
            -delta.conj()
        } else {
            delta.conj()
        };
        inv.pow(r.unsigned_abs())
    }
}

pub fn decompose_solution(sol: &Solution, r_max: u32, coeff_box: u64) -> Result<Decomposition> {
    let not_found = Error::DecompositionNotFound { r_max, coeff_box };
    if sol.n.is_multiple_of(2) || sol.n < 3 {
        return Err(not_found);
    }
    let c = constants(sol.q as u64)?;
    let lhs = sol.left_factor();
    let Some(beta) = lhs.div_exact(&c.gamma.pow(sol.n - 2))? else {
        return Err(not_found);
    };
    for r in r_order(r_max) {
        let cand = &beta * &unit_power(&c.delta, -r);
        if let Some(alpha) = cand.nth_root(sol.n, coeff_box) {
            return Ok(Decomposition { r, alpha });
        }
    }
    Err(not_found)
}

/// Checks `q^k√q = δ^r γ^(n−2) αⁿ − δ̄^r γ̄^(n−2) ᾱⁿ`.
pub fn check_difference_identity(sol: &Solution, d: &Decomposition) -> bool {
    let c = constants(sol.q as u64).expect("supported q");
    let term = unit_power(&c.delta, d.r) * c.gamma.pow(sol.n - 2) * d.alpha.pow(sol.n);
    let qk = QuadInt::integer(sol.q, num_traits::pow(BigInt::from(sol.q), sol.k as usize));
    &term - &term.conj() == qk * QuadInt::sqrt_q(sol.q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationReport {
    pub decomposition: Decomposition,
    pub checks: Vec<ValuationCheck>,
}

impl ValuationReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<Error> {
        self.checks
            .iter()
            .find(|c| !c.ok)
            .map(|c| Error::ValuationMismatch {
                name: c.name.clone(),
                expected: c.expected.clone(),
                actual: c.actual.clone(),
            })
    }
}

fn push_eq(checks: &mut Vec<ValuationCheck>, name: &str, expected: u32, actual: u32) {
    checks.push(ValuationCheck {
        name: name.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        ok: expected == actual,
    });
}

fn push_bool(
    checks: &mut Vec<ValuationCheck>,
    name: &str,
    expected: &str,
    actual: String,
    ok: bool,
) {
    checks.push(ValuationCheck {
        name: name.to_string(),
        expected: expected.to_string(),
        actual,
        ok,
    });
}

/// The valuation claims on the global model of `E` for a decomposed solution.
pub fn verify_valuations(sol: &Solution) -> Result<ValuationReport> {
    let d = decompose_solution(sol, DEFAULT_R_MAX, DEFAULT_COEFF_BOX)?;
    let q = sol.q as u64;
    let n = sol.n;
    let c = constants(q)?;
    let e = sol.qcurve();
    let pg = PrimeIdealM::gamma(q)?;
    let pgb = PrimeIdealM::gamma_bar(q)?;
    let ps = PrimeIdealM::sqrt_q(q)?;
    let mut checks = Vec::new();

    let a_g = pg.valuation(&d.alpha)?;
    let a_gb = pgb.valuation(&d.alpha)?;
    let w_bar = e.w.conj();
    push_eq(
        &mut checks,
        "ord_γ(w)",
        n - 2 + n * a_g,
        pg.valuation(&e.w)?,
    );
    push_eq(&mut checks, "ord_γ̄(w)", n * a_gb, pgb.valuation(&e.w)?);
    push_eq(&mut checks, "ord_γ(c4)", 8, pg.valuation(&e.c4)?);
    push_eq(&mut checks, "ord_γ(c6)", 12, pg.valuation(&e.c6)?);
    push_eq(&mut checks, "ord_γ̄(c4)", 4, pgb.valuation(&e.c4)?);
    push_eq(&mut checks, "ord_γ̄(c6)", 6, pgb.valuation(&e.c6)?);
    // Δ = 64γ⁶w²w̄ with ord_γ(w̄) = ord_γ̄(w) and ord_γ̄(w̄) = ord_γ(w)
    push_eq(
        &mut checks,
        "ord_γ(Δ)",
        8 + 2 * n * (1 + a_g) + n * a_gb,
        pg.valuation(&e.delta)?,
    );
    push_eq(
        &mut checks,
        "ord_γ̄(Δ)",
        4 + n * (1 + a_g) + 2 * n * a_gb,
        pgb.valuation(&e.delta)?,
    );
    let sq_w = match sol.parity() {
        Parity::Even => 3,
        Parity::Odd => 1,
    };
    push_eq(&mut checks, "ord_√q(w)", sq_w, ps.valuation(&e.w)?);
    push_eq(&mut checks, "ord_√q(w̄)", sq_w, ps.valuation(&w_bar)?);
    push_eq(&mut checks, "ord_√q(Δ)", 3 * sq_w, ps.valuation(&e.delta)?);
    let v_c4 = ps.valuation(&e.c4)?;
    push_bool(
        &mut checks,
        "ord_√q(c4)",
        "≥ 1",
        v_c4.to_string(),
        v_c4 >= 1,
    );
    push_bool(
        &mut checks,
        "3·ord_√q(c4) ≥ ord_√q(Δ)",
        "true",
        (3 * v_c4 >= 3 * sq_w).to_string(),
        3 * v_c4 >= 3 * sq_w,
    );

    let (c4, c6, delta) = e.closed_form_invariants();
    push_bool(
        &mut checks,
        "closed-form c4, c6, Δ",
        "equal",
        (c4 == e.c4 && c6 == e.c6 && delta == e.delta).to_string(),
        c4 == e.c4 && c6 == e.c6 && delta == e.delta,
    );
    push_bool(
        &mut checks,
        "w + w̄ = q^(2m+2)",
        "true",
        (&e.w + &w_bar
            == QuadInt::integer(
                sol.q,
                num_traits::pow(BigInt::from(sol.q), 2 * sol.m() as usize + 2),
            ))
        .to_string(),
        &e.w + &w_bar
            == QuadInt::integer(
                sol.q,
                num_traits::pow(BigInt::from(sol.q), 2 * sol.m() as usize + 2),
            ),
    );
    let diff = check_difference_identity(sol, &d);
    push_bool(
        &mut checks,
        "q^k√q = δ^rγ^(n−2)αⁿ − conj",
        "true",
        diff.to_string(),
        diff,
    );

    kappa_checks(sol, &e, &c, &mut checks)?;

    // odd primes dividing y other than q: multiplicative, n | ord(Δ)
    let (factors, rest) = trial_factor(&sol.y, 1 << 20);
    let mut ells: Vec<BigInt> = factors.iter().map(|&(p, _)| BigInt::from(p)).collect();
    if !rest.is_one() {
        ells.push(rest);
    }
    for ell in ells {
        let Some(ell) = ell.to_u64() else { continue };
        if ell == 2 || ell == q {
            continue;
        }
        for prime in PrimeIdealM::above(q, ell)? {
            let v = prime.valuation(&e.delta)?;
            if v > 0 {
                let v4 = prime.valuation(&e.c4)?;
                push_bool(
                    &mut checks,
                    &format!("n | ord(Δ) above {ell}"),
                    "true",
                    format!("ord = {v}, ord(c4) = {v4}"),
                    v % n == 0 && v4 == 0,
                );
            }
        }
    }
    Ok(ValuationReport {
        decomposition: d,
        checks,
    })
}

/// `−c₆/c₄ = η²κ` with `η = γ²γ̄√q^(m+1)`, `κ = −N/D`,
/// `N = w/γ³ + γ̄³w̄`, `D = w/γ² + γ̄²w̄`; then `κ ≡ 1` modulo `γ²` and `γ̄²`.
fn kappa_checks(
    sol: &Solution,
    e: &QCurveModel,
    c: &FieldConstants,
    checks: &mut Vec<ValuationCheck>,
) -> Result<()> {
    let g = &c.gamma;
    let gb = &c.gamma_bar;
    let wb = e.w.conj();
    let (Some(w3), Some(w2)) = (e.w.div_exact(&g.pow(3))?, e.w.div_exact(&g.pow(2))?) else {
        push_bool(checks, "γ³ | w", "true", "false".into(), false);
        return Ok(());
    };
    let num = &w3 + &(gb.pow(3) * &wb);
    let den = &w2 + &(gb.pow(2) * &wb);
    let eta = g.pow(2) * gb * QuadInt::sqrt_q(sol.q).pow(sol.m() + 1);
    let identity = &e.c6 * &den == &e.c4 * &eta.pow(2) * &num;
    push_bool(
        checks,
        "−c6/c4 = η²κ",
        "true",
        identity.to_string(),
        identity,
    );
    let pg = PrimeIdealM::gamma(sol.q as u64)?;
    let pgb = PrimeIdealM::gamma_bar(sol.q as u64)?;
    // κ − 1 = −(N + D)/D with D a unit at γ and γ̄
    let sum = &num + &den;
    for (label, prime, gen) in [("γ²", &pg, g), ("γ̄²", &pgb, gb)] {
        let den_unit = prime.valuation(&den)? == 0;
        let ok = den_unit && sum.is_divisible_by(&gen.pow(2))?;
        push_bool(
            checks,
            &format!("κ ≡ 1 (mod {label})"),
            "true",
            ok.to_string(),
            ok,
        );
    }
    Ok(())
}

fn check_prime_for_isogeny(prime: &PrimeIdealM) -> Result<()> {
    check_auxiliary(prime.q(), prime.p())?;
    if prime.kind() == Splitting::Ramified {
        return Err(Error::RamifiedPrime);
    }
    Ok(())
}

/// `φ_σ: Ē → E`, `(X, Y) ↦ ((X² + 2γ̄q^(m+1)X + γ̄²w̄)/(γ̄²X), (X² − γ̄²w̄)Y/(γ̄³X²))`
/// evaluated on reductions at `P`.
pub fn isogeny_image(model: &QCurveModel, prime: &PrimeIdealM, pt: &Point) -> Point {
    let (a2b, a4b) = model.conjugate_coeffs();
    let gb = prime.reduce(&constants(model.q as u64).expect("supported q").gamma_bar);
    apply_two_isogeny(prime.reduce(&a2b), prime.reduce(&a4b), gb, pt)
}

/// The conjugate map `σ(φ_σ): E → Ē`.
pub fn conjugate_isogeny_image(model: &QCurveModel, prime: &PrimeIdealM, pt: &Point) -> Point {
    let g = prime.reduce(&constants(model.q as u64).expect("supported q").gamma);
    apply_two_isogeny(prime.reduce(&model.a2), prime.reduce(&model.a4), g, pt)
}

fn apply_two_isogeny(a2: ResidueElt, a4: ResidueElt, g: ResidueElt, pt: &Point) -> Point {
    match pt {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => {
            if x.is_zero() {
                return Point::Infinity;
            }
            let x2 = *x * *x;
            let gi = g.inv().expect("P ∤ 2");
            let xi = x.inv().expect("nonzero");
            let nx = (x2 + a2 * *x + a4) * gi * gi * xi;
            let ny = (x2 - a4) * *y * gi * gi * gi * xi * xi;
            Point::Affine(nx, ny)
        }
    }
}

/// Every point of `Ē(𝔽_P)` maps onto `E(𝔽_P)`, and `(0, 0)` to infinity.
pub fn isogeny_check(sol: &Solution, prime: &PrimeIdealM) -> Result<bool> {
    check_prime_for_isogeny(prime)?;
    let model = sol.qcurve();
    let e = model.reduce(prime);
    let eb = model.reduce_conjugate(prime);
    if e.is_singular() || eb.is_singular() {
        return Err(Error::BadReduction(prime.p()));
    }
    let zero = prime.residue_field().zero();
    if isogeny_image(&model, prime, &Point::Affine(zero, zero)) != Point::Infinity {
        return Ok(false);
    }
    Ok(eb
        .points()
        .iter()
        .all(|pt| e.contains(&isogeny_image(&model, prime, pt))))
}

/// `φ_σ ∘ σ(φ_σ)` as multiplication by an integer on `E(𝔽_P)`; the expected
/// cocycle value is `−2`.
pub fn cocycle_value(sol: &Solution, prime: &PrimeIdealM) -> Result<Option<i64>> {
    check_prime_for_isogeny(prime)?;
    let model = sol.qcurve();
    let e = model.reduce(prime);
    if e.is_singular() || model.reduce_conjugate(prime).is_singular() {
        return Err(Error::BadReduction(prime.p()));
    }
    let pts = e.points();
    let composite: Vec<Point> = pts
        .iter()
        .map(|pt| isogeny_image(&model, prime, &conjugate_isogeny_image(&model, prime, pt)))
        .collect();
    Ok([-2i64, 2].into_iter().find(|&c| {
        pts.iter()
            .zip(&composite)
            .all(|(pt, img)| e.mul(c, pt) == *img)
    }))
}

/// `N_B = (2q²·Rad₂(y))²`.
pub fn conductor_b(sol: &Solution) -> BigInt {
    let base = BigInt::from(2u32) * BigInt::from(sol.q).pow(2) * odd_radical(&sol.y);
    &base * &base
}

/// `N_G = q·Rad(y)`.
pub fn conductor_g(sol: &Solution) -> BigInt {
    BigInt::from(2u32) * BigInt::from(sol.q) * odd_radical(&sol.y)
}

/// `x ≡ χ (mod p)` as a residue in `[0, p)`.
pub fn residue_of(x: &BigInt, p: u64) -> i64 {
    reduce_big(x, p) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::ResidueField;

    fn sol(q: u64, x: i64, y: i64, k: u32, n: u32) -> Solution {
        Solution::new(q, x, y, k, n).unwrap()
    }

    #[test]
    fn normalization_flips_sign() {
        let s = sol(97, 15, 2, 0, 7);
        assert_eq!(s.x, BigInt::from(-15));
        let s = sol(41, 13, 2, 0, 7);
        assert_eq!(s.x, BigInt::from(13));
        assert!(Solution::new(41, 14, 2, 0, 7).is_err());
    }

    #[test]
    fn g_traces_at_seven() {
        for kappa in 0..6 {
            let row: Vec<i64> = (0..7)
                .map(|chi| {
                    rational_frey_local(chi, kappa, 41, 7)
                        .unwrap()
                        .reduction_trace()
                        .unwrap()
                })
                .collect();
            assert_eq!(row, [0, 4, 2, 2, -2, -2, -4]);
        }
    }

    #[test]
    fn rational_local_shape() {
        // 4·(0 − 17) = −68 ≡ 2 (mod 5)
        let c = rational_frey_local(0, 0, 17, 5).unwrap();
        let f = ResidueField::prime(5).unwrap();
        assert_eq!((c.a2, c.a4), (f.int(0), f.int(2)));
        assert!(rational_frey_local(0, 0, 17, 17).is_err());
    }

    #[test]
    fn w_sum_identity() {
        for (q, x, y, k, n) in [(41, 13, 2, 0, 7), (17, -71, 2, 1, 7), (41, 411, 10, 1, 5)] {
            let s = sol(q, x, y, k, n);
            let w = s.w();
            let target = num_traits::pow(BigInt::from(q), 2 * s.m() as usize + 2);
            assert_eq!(&w + &w.conj(), QuadInt::integer(q as u32, target));
        }
    }

    #[test]
    fn local_matches_global() {
        let s = sol(41, 13, 2, 0, 7);
        let model = s.qcurve();
        for p in [3u64, 5, 7, 11, 13, 19, 23, 29, 31] {
            for prime in PrimeIdealM::above(41, p).unwrap() {
                let chi = residue_of(&s.x, p);
                let local = qcurve_local(chi, 0, Parity::Even, &prime).unwrap();
                assert_eq!(local, model.reduce(&prime), "p={p}");
                assert_eq!(
                    w_value(chi, 0, Parity::Even, &prime).unwrap(),
                    prime.reduce(&s.w())
                );
            }
        }
    }

    #[test]
    fn inert_seven_trace_is_six() {
        let prime = PrimeIdealM::canonical(41, 7).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            for mu in 0..6 {
                let c = qcurve_local(6, mu, parity, &prime).unwrap();
                assert_eq!(c.reduction_trace(), Ok(6), "mu={mu} {parity:?}");
            }
        }
    }

    #[test]
    fn decompositions_of_known_solutions() {
        for (q, x, y, k, n) in [
            (41, 13, 2, 0, 7),
            (97, 15, 2, 0, 7),
            (17, -23, 2, 0, 9),
            (89, -91, 2, 0, 13),
        ] {
            let s = sol(q, x, y, k, n);
            let d = decompose_solution(&s, DEFAULT_R_MAX, DEFAULT_COEFF_BOX).unwrap();
            assert!(d.alpha.is_unit(), "q={q}");
            assert!(check_difference_identity(&s, &d));
        }
    }

    #[test]
    fn valuations_of_known_solutions() {
        for (q, x, y, k, n) in [
            (41, 13, 2, 0, 7),
            (97, 15, 2, 0, 7),
            (17, -23, 2, 0, 9),
            (89, -91, 2, 0, 13),
            (17, -71, 2, 1, 7),
        ] {
            let report = verify_valuations(&sol(q, x, y, k, n)).unwrap();
            assert!(report.all_ok(), "q={q}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn isogeny_and_cocycle() {
        let s = sol(41, 13, 2, 0, 7);
        for p in [5u64, 7, 11] {
            for prime in PrimeIdealM::above(41, p).unwrap() {
                assert_eq!(isogeny_check(&s, &prime), Ok(true), "p={p}");
                assert_eq!(cocycle_value(&s, &prime), Ok(Some(-2)), "p={p}");
            }
        }
        let s = sol(97, 15, 2, 0, 7);
        let prime = PrimeIdealM::canonical(97, 3).unwrap();
        assert_eq!(isogeny_check(&s, &prime), Ok(true));
    }

    #[test]
    fn conductors() {
        assert_eq!(
            conductor_b(&sol(41, 13, 2, 0, 7)),
            BigInt::from(3362u32 * 3362)
        );
        assert_eq!(
            conductor_b(&sol(97, 15, 2, 0, 7)),
            BigInt::from(18818u64 * 18818)
        );
        assert_eq!(conductor_g(&sol(41, 13, 2, 0, 7)), BigInt::from(82));
    }
}

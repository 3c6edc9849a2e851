//! Complex roots of integer polynomials (Aberth–Ehrlich iteration) and a
//! check of stored embeddings against characteristic polynomials.

use num_traits::ToPrimitive;
use qcurve_core::newform::Complex;
use qcurve_core::poly::IntPoly;

fn add(a: Complex, b: Complex) -> Complex {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: Complex, b: Complex) -> Complex {
    (a.0 - b.0, a.1 - b.1)
}

fn mul(a: Complex, b: Complex) -> Complex {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn div(a: Complex, b: Complex) -> Complex {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

pub fn abs(a: Complex) -> f64 {
    a.0.hypot(a.1)
}

/// `(p(z), p'(z))` by Horner.
fn eval_with_derivative(c: &[f64], z: Complex) -> (Complex, Complex) {
    let mut p = (0.0, 0.0);
    let mut dp = (0.0, 0.0);
    for &a in c.iter().rev() {
        dp = add(mul(dp, z), p);
        p = add(mul(p, z), (a, 0.0));
    }
    (p, dp)
}

/// All roots of a nonzero polynomial of positive degree.
pub fn roots(f: &IntPoly) -> Vec<Complex> {
    let c: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::NAN))
        .collect();
    let d = c.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let c: Vec<f64> = c.iter().map(|x| x / lead).collect();
    // Cauchy bound for the starting circle
    let r = 1.0 + c[..d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex> = (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4;
            (0.5 * r * t.cos(), 0.5 * r * t.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval_with_derivative(&c, z[i]);
            if abs(p) == 0.0 {
                continue;
            }
            let ratio = div(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = sub(z[i], z[j]);
                    if abs(diff) > 0.0 {
                        s = add(s, div((1.0, 0.0), diff));
                    }
                }
            }
            let w = div(ratio, sub((1.0, 0.0), mul(ratio, s)));
            z[i] = sub(z[i], w);
            moved = moved.max(abs(w) / (1.0 + abs(z[i])));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Coefficients (low first) of `∏ (x - z)` over `zs`.
fn expand(zs: &[Complex]) -> Vec<Complex> {
    let mut c = vec![(1.0, 0.0)];
    for &z in zs {
        let mut next = vec![(0.0, 0.0); c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] = add(next[i + 1], a);
            next[i] = sub(next[i], mul(a, z));
        }
        c = next;
    }
    c
}

/// Whether the embeddings, each known to within `tol`, are the roots of `f`
/// with multiplicity.
///
/// Compares `∏ (x - e)` with `f` coefficientwise. Moving every root by at most
/// `tol` changes the `k`-th coefficient by at most the `k`-th coefficient of
/// `∏ (x + |e| + tol) - ∏ (x + |e|)`, so repeated roots cost no accuracy.
pub fn embeddings_match(f: &IntPoly, embeddings: &[Complex], tol: f64) -> bool {
    let c: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::NAN))
        .collect();
    let d = c.len().saturating_sub(1);
    if d != embeddings.len() || c[d] != 1.0 {
        return false;
    }
    let got = expand(embeddings);
    let lo: Vec<Complex> = embeddings.iter().map(|&e| (-abs(e), 0.0)).collect();
    let hi: Vec<Complex> = embeddings.iter().map(|&e| (-abs(e) - tol, 0.0)).collect();
    let (lo, hi) = (expand(&lo), expand(&hi));
    (0..=d).all(|k| {
        let slack = hi[k].0.abs() - lo[k].0.abs() + 1e-12 * (1.0 + hi[k].0.abs());
        abs(sub(got[k], (c[k], 0.0))) <= slack
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_and_cubic() {
        let mut r = roots(&IntPoly::from_i64(&[2, 0, 1]));
        r.sort_by(|a, b| a.1.total_cmp(&b.1));
        assert!((r[0].1 + 2f64.sqrt()).abs() < 1e-12 && r[0].0.abs() < 1e-12);
        let cubic = IntPoly::from_i64(&[-6, 11, -6, 1]);
        assert!(embeddings_match(
            &cubic,
            &[(3.0, 0.0), (1.0, 0.0), (2.0, 0.0)],
            1e-9
        ));
        assert!(!embeddings_match(
            &cubic,
            &[(3.0, 0.0), (1.0, 0.0), (2.5, 0.0)],
            1e-9
        ));
    }

    #[test]
    fn repeated_roots() {
        let f = IntPoly::from_i64(&[4, 4, 1]);
        assert!(embeddings_match(&f, &[(-2.0, 0.0), (-2.0, 0.0)], 1e-6));
    }
}

//! Dense polynomials in the monomial basis and real-root isolation.

use alloc::vec::Vec;

/// Horner evaluation of `Σ coeffs[k] x^k`.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

/// Drop trailing zero coefficients.
pub fn trim(coeffs: &[f64]) -> &[f64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == 0.0 {
        n -= 1;
    }
    &coeffs[..n]
}

/// Real roots of `coeffs` strictly inside `(lo, hi)`, sorted.
///
/// Critical points are found recursively, and the polynomial is monotone
/// between consecutive ones, so each sign change brackets exactly one root.
pub fn roots_in(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let p = trim(coeffs);
    let mut out = Vec::new();
    if p.len() <= 1 {
        return out;
    }
    if p.len() == 2 {
        let r = -p[0] / p[1];
        if r > lo && r < hi {
            out.push(r);
        }
        return out;
    }
    let mut knots = Vec::with_capacity(p.len() + 1);
    knots.push(lo);
    knots.extend(roots_in(&derivative(p), lo, hi));
    knots.push(hi);
    for w in knots.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (eval(p, a), eval(p, b));
        if fa == 0.0 {
            if a > lo && out.last().is_none_or(|&r| r < a) {
                out.push(a);
            }
            continue;
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = eval(p, m);
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Minimum and maximum of `f` over `[lo, hi]`, given the interior critical
/// points, plus a uniform sample of 64 interior points as a safeguard.
pub fn extrema<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, critical: &[f64]) -> (f64, f64) {
    let mut min = f(lo).min(f(hi));
    let mut max = f(lo).max(f(hi));
    let samples = (1..=64).map(|i| lo + (hi - lo) * i as f64 / 65.0);
    for x in critical.iter().copied().chain(samples) {
        let v = f(x);
        min = min.min(v);
        max = max.max(v);
    }
    (min, max)
}

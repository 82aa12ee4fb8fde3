//! Density of `T_β` by inverting its characteristic function
//! `exp(C(β+iτ) - C(β))`, then untilting with `f(t) = e^{C(β) - βt} f_β(t)`.
//!
//! Finite mass: the atom and the first `N < t` convolution powers of the
//! arrival density are subtracted from the characteristic function; they
//! vanish at `t`, and the remainder decays like `τ^{-N-1}`.
//! Infinite mass: `|e^{D(τ)}|` decays like `τ^{-c}` and the tail of the
//! inversion integral is bounded after one integration by parts.
//! Both tail bounds are rigorous given the variation bounds below.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::cumulant::TiltedCumulant;
use crate::density::{DensityPiece, LevyDensitySpec, Theorem};
use crate::error::{Error, Result};
use crate::poly;
use crate::quadrature::{gk15, integrate, QuadOptions};
use crate::saddle::solve_saddle;
use crate::special::{ein, EULER_GAMMA};

#[derive(Debug, Clone, Copy)]
pub struct FourierOptions {
    /// Target error relative to the tilted Gaussian peak `1/(√(2π) σ_β)`.
    pub rel_tol: f64,
    /// Target absolute error of the untilted density; whichever target is
    /// looser applies, up to `1e-3` of the peak.
    pub abs_tol: f64,
    /// Largest truncation point tried before giving up.
    pub max_cutoff: f64,
}

impl Default for FourierOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 2e-7,
            max_cutoff: 4e6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierValue {
    pub t: f64,
    pub beta: f64,
    /// Untilted density `f(t)` and its error bound.
    pub f: f64,
    pub err_bound: f64,
    /// Tilted density `f_β(t)` and its error bound.
    pub f_tilted: f64,
    pub err_tilted: f64,
    /// Truncation point of the inversion integral.
    pub cutoff: f64,
}

/// `f(u)` at the saddle tilt `β(u)`.
pub fn fourier_density(spec: &LevyDensitySpec, u: f64) -> Result<FourierValue> {
    let beta = solve_saddle(spec, u)?.beta;
    fourier_tilted_density(spec, beta, u, FourierOptions::default())
}

/// `f_β(t)` and `f(t)` for an explicit tilt.
pub fn fourier_tilted_density(
    spec: &LevyDensitySpec,
    beta: f64,
    t: f64,
    opts: FourierOptions,
) -> Result<FourierValue> {
    if spec.class.theorem == Theorem::Rejected {
        return Err(Error::Mode(
            "Fourier inversion is not certified for the rejected class".into(),
        ));
    }
    let finite = spec.is_finite_mass();
    if !(t >= 2.0 && t.is_finite()) {
        return Err(Error::Precondition(format!(
            "t = {t}: inversion needs t >= 2"
        )));
    }
    let tc = TiltedCumulant::new(spec, beta)?;
    let scale = tc.shift.exp();
    let c0 = tc.c0 * scale;
    let sigma = (tc.moments[2] * scale).sqrt();
    if !(c0.is_finite() && sigma.is_finite()) {
        return Err(Error::Overflow(format!(
            "tilt {beta} is too large to invert"
        )));
    }
    let log_untilt = c0 - beta * t;
    let peak = 1.0 / ((2.0 * PI).sqrt() * sigma);
    // the untilted target never loosens the tilted one past 1e-3 of the peak
    let untilted = (opts.abs_tol.ln() - log_untilt).exp().min(1e-3 * peak);
    let target = 0.5 * (opts.rel_tol * peak).max(untilted);

    let tail: TailBound = if finite {
        let lam = tc.tilted_mass();
        if !lam.is_finite() {
            return Err(Error::Overflow(format!("tilted mass at {beta} overflows")));
        }
        // n-fold convolutions vanish at t once n <= t (for n >= 2 at n = t
        // as well, since g is bounded)
        let n_sub = (t.floor() as usize).clamp(2, 12);
        TailBound::Finite {
            lam,
            n_sub,
            v: variation_bound(spec.pieces(), beta, VarKind::Density),
        }
    } else {
        infinite_tail(spec, beta, t)?
    };

    let integrand = |tau: f64| -> Result<f64> {
        let d = tc.increment(tau)? * scale;
        let r = match tail {
            TailBound::Finite { lam, n_sub, .. } => subtracted(d, lam, n_sub),
            TailBound::Infinite { .. } => d.exp(),
        };
        let phase = Complex64::from_polar(1.0, -tau * t);
        Ok((phase * r).re / PI)
    };

    let width = (2.0 * PI / (t + 2.0)).min(2.0 / sigma);
    let cutoff = tail_cutoff(&tail, width, target, opts.max_cutoff)?;
    let mut a = 0.0;
    let mut total = 0.0;
    let mut quad_err = 0.0;
    let mut abs_total = 0.0;
    let mut failure: Option<Error> = None;
    loop {
        let b = a + width;
        let mut wrapped = |tau: f64| match integrand(tau) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        };
        let (mut v, mut e, mut absv) = gk15(&mut wrapped, a, b);
        let panel_tol = (1e-11 * absv).max(target * 1e-6);
        if e > panel_tol {
            let r = integrate(
                &mut wrapped,
                a,
                b,
                QuadOptions {
                    rel_tol: 1e-12,
                    abs_tol: panel_tol,
                    max_intervals: 1 << 10,
                },
            )?;
            v = r.value;
            e = r.error;
            absv = r.abs_value;
        }
        if let Some(err) = failure.take() {
            return Err(err);
        }
        total += v;
        quad_err += e;
        abs_total += absv;
        a = b;
        if a >= cutoff {
            break;
        }
    }
    let mut f_tilted = total;
    if let TailBound::Finite { lam, .. } = tail {
        if t <= 1.0 {
            // the single-arrival term was subtracted; restore it exactly
            f_tilted += (-lam).exp() * (beta * t).exp() * spec.g(t);
        }
    }
    let err_tilted = tail.at(a) + quad_err + 1e-14 * abs_total;
    let untilt = log_untilt.exp();
    Ok(FourierValue {
        t,
        beta,
        f: (f_tilted * untilt).max(0.0),
        err_bound: err_tilted * untilt,
        f_tilted,
        err_tilted,
        cutoff: a,
    })
}

/// Whole number of panels past which the tail bound meets `target`.
fn tail_cutoff(tail: &TailBound, width: f64, target: f64, max_cutoff: f64) -> Result<f64> {
    // the bound decreases in the cutoff: double, then bisect on panel counts
    let mut hi = 1.0f64;
    while tail.at(hi * width) > target {
        hi *= 2.0;
        if hi * width > max_cutoff {
            return Err(Error::TailBound(format!(
                "tail bound {:e} still above target {target:e} at cutoff {:e}",
                tail.at(hi * width),
                hi * width
            )));
        }
    }
    let mut lo = (hi / 2.0).floor();
    while hi - lo > 1.0 {
        let mid = ((lo + hi) / 2.0).floor();
        if tail.at(mid * width) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi * width)
}

/// `e^D - e^{-λ} Σ_{n ≤ N} ĝ^n/n!` with `ĝ = λ + D`.
fn subtracted(d: Complex64, lam: f64, n_sub: usize) -> Complex64 {
    let ghat = d + lam;
    let damp = (-lam).exp();
    if ghat.norm() <= 2.0 {
        let mut term = Complex64::new(1.0, 0.0);
        for n in 1..=n_sub {
            term = term * ghat / n as f64;
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for n in n_sub + 1..n_sub + 80 {
            term = term * ghat / n as f64;
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        return sum * damp;
    }
    let mut partial = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 1..=n_sub {
        term = term * ghat / n as f64;
        partial += term;
    }
    d.exp() - partial * damp
}

#[derive(Debug, Clone, Copy)]
enum TailBound {
    Finite {
        lam: f64,
        n_sub: usize,
        v: f64,
    },
    Infinite {
        c: f64,
        h_const: f64,
        h_decay: f64,
        w: f64,
        t: f64,
    },
}

impl TailBound {
    /// Bound on `|(1/π) ∫_A^∞ Re[e^{-iτt} R(τ)] dτ|`.
    fn at(&self, a: f64) -> f64 {
        match *self {
            TailBound::Finite { lam, n_sub, v, .. } => {
                // (1/π) e^{-λ} Σ_{n>N} V^n A^{1-n} / ((n-1) n!)
                let ratio = v / a;
                if !(ratio.is_finite()) || ratio > 1e5 {
                    return f64::INFINITY;
                }
                let lr = ratio.ln();
                let term = |n: usize| {
                    let nf = n as f64;
                    -lam + nf * lr + a.ln() - (nf - 1.0).ln() - libm::lgamma(nf + 1.0)
                };
                // terms are unimodal in n; sum outward from the largest
                let peak = (ratio as usize).max(n_sub + 1);
                let best = term(peak);
                let mut sum = best.exp();
                for n in peak + 1.. {
                    let lt = term(n);
                    sum += lt.exp();
                    if lt < best - 40.0 {
                        break;
                    }
                }
                for n in (n_sub + 1..peak).rev() {
                    let lt = term(n);
                    sum += lt.exp();
                    if lt < best - 40.0 {
                        break;
                    }
                }
                sum / PI
            }
            TailBound::Infinite {
                c,
                h_const,
                h_decay,
                w,
                t,
            } => {
                let h_low = c * a.ln() + h_const - h_decay / a;
                (-h_low).exp() * (1.0 + w / c) / (PI * t)
            }
        }
    }
}

/// Tail certificate for a spec with `c/x` at 0.
///
/// `H(τ) ≥ c [γ + ln(τ h₁) - 2/(τ h₁) + F(β h₁) - (|k(h₁)| + |k(h₁) - β|)/τ]
///        + Λ_b - V_b/τ`
/// with `k(x) = (e^{βx} - 1)/x`, `h₁` the end of the first piece, and `b`
/// the bounded remainder `g - c/x·1[0,h₁]`.
fn infinite_tail(spec: &LevyDensitySpec, beta: f64, t: f64) -> Result<TailBound> {
    let pieces = spec.pieces();
    let c = spec.singular_coeff();
    let h1 = pieces[0].hi;
    let k1 = (beta * h1).exp_m1() / h1;
    let mut bounded: Vec<DensityPiece> = pieces.to_vec();
    bounded[0].inv_coeff = 0.0;
    let mut lambda_b = 0.0;
    for p in &bounded {
        if p.poly.iter().all(|&x| x == 0.0) && p.inv_coeff == 0.0 {
            continue;
        }
        let r = integrate(
            |x: f64| (beta * x).exp() * p.eval(x),
            p.lo,
            p.hi,
            QuadOptions::default(),
        )?;
        lambda_b += r.value;
    }
    let v_b = variation_bound(&bounded, beta, VarKind::Density);
    let h_const = c * (EULER_GAMMA + h1.ln() + ein(beta * h1).value()) + lambda_b;
    let h_decay = 2.0 * c / h1 + c * (k1.abs() + (k1 - beta).abs()) + v_b;
    let w = variation_bound(pieces, beta, VarKind::SizeBiased);
    Ok(TailBound::Infinite {
        c,
        h_const,
        h_decay,
        w,
        t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    /// `e^{βx} g(x)`
    Density,
    /// `x e^{βx} g(x)`
    SizeBiased,
}

/// Σ over pieces of `|φ(lo)| + |φ(hi)| + TV(φ)`, which bounds
/// `τ |∫ φ(x) e^{iτx} dx|` for every `τ > 0`.
fn variation_bound(pieces: &[DensityPiece], beta: f64, kind: VarKind) -> f64 {
    let mut total = 0.0;
    for p in pieces {
        // φ = e^{βx} P(x) / x^e with P = c + x p(x)
        let mut big_p = vec![p.inv_coeff];
        big_p.extend_from_slice(&p.poly);
        let e = match kind {
            VarKind::Density => 1,
            VarKind::SizeBiased => 0,
        };
        if e == 1 && p.lo == 0.0 && p.inv_coeff != 0.0 {
            return f64::INFINITY;
        }
        let phi = |x: f64| {
            let v = (beta * x).exp() * poly::eval(&big_p, x);
            if e == 1 {
                v / x
            } else {
                v
            }
        };
        // numerator of φ' e^{-βx} x^{e+1}: (βP + P') x - e P
        let dp = poly::derivative(&big_p);
        let len = big_p.len() + 1;
        let mut num = vec![0.0; len];
        for (k, &q) in big_p.iter().enumerate() {
            num[k + 1] += beta * q;
            num[k] -= e as f64 * q;
        }
        for (k, &q) in dp.iter().enumerate() {
            num[k + 1] += q;
        }
        let mut knots = vec![p.lo];
        knots.extend(poly::roots_in(&num, p.lo, p.hi));
        knots.push(p.hi);
        let vals: Vec<f64> = knots
            .iter()
            // at 0 the piece has no 1/x term, so φ(0) = p(0)
            .map(|&x| {
                if x == 0.0 && e == 1 {
                    big_p.get(1).copied().unwrap_or(0.0)
                } else {
                    phi(x)
                }
            })
            .collect();
        let tv: f64 = vals.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
        total += vals[0].abs() + vals[vals.len() - 1].abs() + tv;
    }
    total * (1.0 + 1e-12)
}

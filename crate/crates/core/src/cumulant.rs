//! The cumulant generating function `C(β) = ∫ (e^{βx} - 1) g(x) dx`, its
//! derivatives and its complex extension.
//!
//! All per-piece integrals are computed multiplied by `e^{-S}` with
//! `S = max(β, 0)`, so values near the overflow threshold stay finite until
//! the caller asks for plain numbers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::density::{power_diff, DensityPiece, LevyDensitySpec};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::special::{
    binomial_row, ein, ein_complex, power_exp_integrals, power_exp_integrals_complex, Scaled,
};

/// Number of moments kept for the small-`τ` Taylor expansion.
const TAYLOR_MOMENTS: usize = 48;
/// Below this `|τ|` the increment `C(β+iτ) - C(β)` is summed from moments.
const TAYLOR_RADIUS: f64 = 4.0;
/// A closed form whose terms cancel by more than this factor is replaced by
/// quadrature of the sign-definite integrand.
const CANCELLATION_LIMIT: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantTriple {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Triple stored as mantissas times `e^shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledTriple {
    pub shift: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ScaledTriple {
    pub fn ln_c1(&self) -> f64 {
        self.c1.ln() + self.shift
    }

    pub fn ln_c2(&self) -> f64 {
        self.c2.ln() + self.shift
    }

    pub fn c0_scaled(&self) -> Scaled {
        Scaled::new(self.c0, self.shift)
    }

    pub fn to_plain(&self) -> Result<CumulantTriple> {
        let f = self.shift.exp();
        let t = CumulantTriple {
            c0: self.c0 * f,
            c1: self.c1 * f,
            c2: self.c2 * f,
        };
        if !(t.c0.is_finite() && t.c1.is_finite() && t.c2.is_finite()) {
            return Err(Error::Overflow(format!(
                "cumulants at shift {} exceed the f64 range; use the log accessors",
                self.shift
            )));
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexCumulant {
    pub re: f64,
    pub im: f64,
}

fn shift_for(beta: f64) -> f64 {
    beta.max(0.0)
}

/// `∫_lo^hi x^k e^{βx} dx · e^{-shift}` for `k = 0..=kmax`.
pub fn exp_power_moments(lo: f64, hi: f64, beta: f64, kmax: usize, shift: f64) -> Vec<f64> {
    let w = hi - lo;
    let zeta = beta * w;
    let p = power_exp_integrals(zeta, kmax);
    let factor = w * (beta * lo + zeta.max(0.0) - shift).exp();
    let mut out = vec![0.0; kmax + 1];
    if lo == 0.0 {
        let mut wp = 1.0;
        for k in 0..=kmax {
            out[k] = factor * wp * p[k];
            wp *= w;
        }
        return out;
    }
    let lo_pow: Vec<f64> = (0..=kmax).map(|j| lo.powi(j as i32)).collect();
    let w_pow: Vec<f64> = (0..=kmax).map(|j| w.powi(j as i32)).collect();
    for k in 0..=kmax {
        let row = binomial_row(k);
        let s: f64 = (0..=k)
            .map(|m| row[m] * lo_pow[k - m] * w_pow[m] * p[m])
            .sum();
        out[k] = factor * s;
    }
    out
}

/// `∫_lo^hi x^k (e^{βx} - 1) dx · e^{-shift}`.
fn exp_minus_one_moment(lo: f64, hi: f64, beta: f64, k: usize, a_k: f64, shift: f64) -> f64 {
    if beta.abs() * hi <= 4.0 {
        // Σ_{n≥1} β^n/n! (hi^{n+k+1} - lo^{n+k+1})/(n+k+1)
        let mut coef = 1.0;
        let mut sum = 0.0;
        for n in 1..200 {
            coef *= beta / n as f64;
            let e = n + k + 1;
            let term = coef * power_diff(lo, hi, e) / e as f64;
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        sum * (-shift).exp()
    } else {
        a_k - (-shift).exp() * power_diff(lo, hi, k + 1) / (k + 1) as f64
    }
}

/// Plain quadrature of `h` over the piece, with the relative tolerance of
/// the closed forms.
fn piece_quad<F: Fn(f64) -> f64>(piece: &DensityPiece, h: F) -> Result<f64> {
    Ok(integrate(h, piece.lo, piece.hi, QuadOptions::default())?.value)
}

/// Accumulates signed terms and remembers their absolute sum.
#[derive(Default)]
struct Guarded {
    sum: f64,
    mag: f64,
}

impl Guarded {
    fn add(&mut self, v: f64) {
        self.sum += v;
        self.mag += v.abs();
    }

    fn cancelled(&self) -> bool {
        self.sum.abs() * CANCELLATION_LIMIT < self.mag
    }
}

/// Scaled `∫ x^j e^{βx} g` over one piece for `j = 0..=jmax`; entry 0 is the
/// tilted mass and is infinite for a piece singular at 0.
fn piece_moments(piece: &DensityPiece, beta: f64, shift: f64, jmax: usize) -> Result<Vec<f64>> {
    let c = piece.inv_coeff;
    let deg = piece.poly.len();
    let a = exp_power_moments(piece.lo, piece.hi, beta, deg + jmax, shift);
    let mut out = vec![0.0; jmax + 1];
    for j in 0..=jmax {
        let mut g = Guarded::default();
        if c > 0.0 {
            if j == 0 {
                if piece.lo == 0.0 {
                    out[0] = f64::INFINITY;
                    continue;
                }
                let d = ein_difference(beta, piece.lo, piece.hi, shift);
                g.add(c * d.0);
                g.add(-c * d.1);
                g.add(c * (piece.hi / piece.lo).ln() * (-shift).exp());
            } else {
                g.add(c * a[j - 1]);
            }
        }
        for (k, &pk) in piece.poly.iter().enumerate() {
            g.add(pk * a[k + j]);
        }
        out[j] = if g.cancelled() {
            piece_quad(piece, |x| {
                x.powi(j as i32) * (beta * x - shift).exp() * piece.eval(x)
            })?
        } else {
            g.sum
        };
    }
    Ok(out)
}

/// `(F(β hi), F(β lo))`, both rescaled to `shift`.
fn ein_difference(beta: f64, lo: f64, hi: f64, shift: f64) -> (f64, f64) {
    let top = ein(beta * hi).at_shift(shift);
    let bottom = if lo == 0.0 {
        0.0
    } else {
        ein(beta * lo).at_shift(shift)
    };
    (top, bottom)
}

/// Scaled `∫ (e^{βx} - 1) g` over one piece.
fn piece_c0(piece: &DensityPiece, beta: f64, shift: f64, a: &[f64]) -> Result<f64> {
    let c = piece.inv_coeff;
    let mut g = Guarded::default();
    if c > 0.0 {
        let d = ein_difference(beta, piece.lo, piece.hi, shift);
        g.add(c * d.0);
        g.add(-c * d.1);
    }
    for (k, &pk) in piece.poly.iter().enumerate() {
        g.add(pk * exp_minus_one_moment(piece.lo, piece.hi, beta, k, a[k], shift));
    }
    if g.cancelled() {
        piece_quad(piece, |x| {
            (beta * x).exp_m1() * (-shift).exp() * piece.eval(x)
        })
    } else {
        Ok(g.sum)
    }
}

/// Scaled cumulant data for a fixed tilt, reused across many `τ`.
#[derive(Debug, Clone)]
pub struct TiltedCumulant<'a> {
    spec: &'a LevyDensitySpec,
    pub beta: f64,
    pub shift: f64,
    /// Scaled `C(β)`.
    pub c0: f64,
    /// Scaled `∫ x^j e^{βx} g` for `j = 0..=TAYLOR_MOMENTS`.
    pub moments: Vec<f64>,
}

impl<'a> TiltedCumulant<'a> {
    pub fn new(spec: &'a LevyDensitySpec, beta: f64) -> Result<Self> {
        Self::with_moments(spec, beta, TAYLOR_MOMENTS)
    }

    fn with_moments(spec: &'a LevyDensitySpec, beta: f64, jmax: usize) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::Domain(format!("tilt {beta} is not finite")));
        }
        let shift = shift_for(beta);
        let mut c0 = 0.0;
        let mut moments = vec![0.0; jmax + 1];
        for piece in spec.pieces() {
            let deg = piece.poly.len();
            let a = exp_power_moments(piece.lo, piece.hi, beta, deg.max(1), shift);
            c0 += piece_c0(piece, beta, shift, &a)?;
            for (m, v) in moments
                .iter_mut()
                .zip(piece_moments(piece, beta, shift, jmax)?)
            {
                *m += v;
            }
        }
        Ok(Self {
            spec,
            beta,
            shift,
            c0,
            moments,
        })
    }

    pub fn spec(&self) -> &'a LevyDensitySpec {
        self.spec
    }

    pub fn triple(&self) -> ScaledTriple {
        ScaledTriple {
            shift: self.shift,
            c0: self.c0,
            c1: self.moments[1],
            c2: self.moments[2],
        }
    }

    /// Plain tilted mass `λ_β = ∫ e^{βx} g`, infinite when singular.
    pub fn tilted_mass(&self) -> f64 {
        self.moments[0] * self.shift.exp()
    }

    /// Scaled `D(τ) = C(β+iτ) - C(β)`.
    pub fn increment(&self, tau: f64) -> Result<Complex64> {
        if tau < 0.0 {
            return Ok(self.increment(-tau)?.conj());
        }
        if tau == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if tau <= TAYLOR_RADIUS && self.moments.len() > TAYLOR_MOMENTS {
            return Ok(self.taylor_increment(tau));
        }
        Ok(self.closed_complex(tau)? - self.c0)
    }

    fn taylor_increment(&self, tau: f64) -> Complex64 {
        // Σ (iτ)^m/m! M_m; powers of i cycle through 1, i, -1, -i
        let mut re = 0.0;
        let mut im = 0.0;
        let mut coef = 1.0;
        for m in 1..=TAYLOR_MOMENTS {
            coef *= tau / m as f64;
            let term = coef * self.moments[m];
            match m % 4 {
                0 => re += term,
                1 => im += term,
                2 => re -= term,
                _ => im -= term,
            }
            if m >= 2 && coef * self.moments[1] <= 1e-17 * (re.abs() + im.abs()) {
                break;
            }
        }
        Complex64::new(re, im)
    }

    /// Scaled `H(τ) = C(β) - Re C(β+iτ) ≥ 0`.
    pub fn oscillation_deficit(&self, tau: f64) -> Result<f64> {
        let tau = tau.abs();
        if tau == 0.0 {
            return Ok(0.0);
        }
        if tau <= TAYLOR_RADIUS && self.moments.len() > TAYLOR_MOMENTS {
            // Σ_{m even ≥ 2} (-1)^{m/2+1} τ^m/m! M_m
            let mut h = 0.0;
            let mut coef = 1.0;
            for m in 1..=TAYLOR_MOMENTS {
                coef *= tau / m as f64;
                if m % 2 == 0 {
                    let term = coef * self.moments[m];
                    if m % 4 == 2 {
                        h += term;
                    } else {
                        h -= term;
                    }
                }
                if m >= 2 && coef * self.moments[1] <= 1e-17 * h.abs() {
                    break;
                }
            }
            return Ok(h.max(0.0));
        }
        let h = -self.increment(tau)?.re;
        if h < 1e-3 * self.c0.abs() {
            return self.deficit_by_quadrature(tau);
        }
        Ok(h.max(0.0))
    }

    fn deficit_by_quadrature(&self, tau: f64) -> Result<f64> {
        let (beta, shift) = (self.beta, self.shift);
        let mut total = 0.0;
        for piece in self.spec.pieces() {
            let panels = ((tau * (piece.hi - piece.lo)) / core::f64::consts::PI)
                .ceil()
                .max(1.0);
            let n = panels as usize;
            let w = (piece.hi - piece.lo) / panels;
            for i in 0..n {
                let a = piece.lo + w * i as f64;
                let b = if i + 1 == n { piece.hi } else { a + w };
                let r = integrate(
                    |x: f64| {
                        let half = (0.5 * tau * x).sin();
                        2.0 * half * half * (beta * x - shift).exp() * piece.eval(x)
                    },
                    a,
                    b,
                    QuadOptions::default(),
                )?;
                total += r.value;
            }
        }
        Ok(total)
    }

    /// Scaled `C(β + iτ)` from closed forms, for `τ > 0`.
    fn closed_complex(&self, tau: f64) -> Result<Complex64> {
        let z = Complex64::new(self.beta, tau);
        let shift = self.shift;
        let mut total = Complex64::new(0.0, 0.0);
        for piece in self.spec.pieces() {
            total += piece_complex_c0(piece, z, shift)?;
        }
        Ok(total)
    }
}

fn rescale_complex(v: Complex64, from: f64, to: f64) -> Complex64 {
    v * (from - to).exp()
}

fn piece_complex_c0(piece: &DensityPiece, z: Complex64, shift: f64) -> Result<Complex64> {
    let (lo, hi, c) = (piece.lo, piece.hi, piece.inv_coeff);
    let mut acc = Complex64::new(0.0, 0.0);
    if c > 0.0 {
        let zh = z * hi;
        let mut d = rescale_complex(ein_complex(zh), zh.re.max(0.0), shift);
        if lo > 0.0 {
            let zl = z * lo;
            d -= rescale_complex(ein_complex(zl), zl.re.max(0.0), shift);
        }
        acc += d * c;
    }
    if piece.poly.is_empty() {
        return Ok(acc);
    }
    let w = hi - lo;
    let zeta = z * w;
    let kmax = piece.poly.len() - 1;
    match power_exp_integrals_complex(zeta, kmax) {
        Some(p) => {
            let factor =
                Complex64::from_polar((z.re * lo + zeta.re.max(0.0) - shift).exp(), z.im * lo) * w;
            for (k, &pk) in piece.poly.iter().enumerate() {
                let row = binomial_row(k);
                let mut s = Complex64::new(0.0, 0.0);
                for m in 0..=k {
                    s += p[m] * (row[m] * lo.powi((k - m) as i32) * w.powi(m as i32));
                }
                let minus = (-shift).exp() * power_diff(lo, hi, k + 1) / (k + 1) as f64;
                acc += (factor * s - minus) * pk;
            }
            Ok(acc)
        }
        None => {
            let poly_only = DensityPiece::new(lo, hi, 0.0, piece.poly.clone());
            let r = integrate(
                |x: f64| {
                    let e =
                        Complex64::from_polar((z.re * x - shift).exp(), z.im * x) - (-shift).exp();
                    e * poly_only.eval(x)
                },
                lo,
                hi,
                QuadOptions {
                    max_intervals: 1 << 16,
                    ..QuadOptions::default()
                },
            )?;
            Ok(acc + r.value)
        }
    }
}

/// `(C(β), C'(β), C''(β))` with overflow checking.
pub fn cumulant_triple(spec: &LevyDensitySpec, beta: f64) -> Result<CumulantTriple> {
    cumulant_triple_scaled(spec, beta)?.to_plain()
}

/// Log-domain form of [`cumulant_triple`].
pub fn cumulant_triple_scaled(spec: &LevyDensitySpec, beta: f64) -> Result<ScaledTriple> {
    Ok(TiltedCumulant::with_moments(spec, beta, 2)?.triple())
}

/// `C(β + iτ)`.
pub fn complex_cumulant(spec: &LevyDensitySpec, beta: f64, tau: f64) -> Result<ComplexCumulant> {
    let tc = TiltedCumulant::new(spec, beta)?;
    let v = (tc.increment(tau)? + tc.c0) * tc.shift.exp();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow(format!(
            "C({beta} + {tau}i) exceeds the f64 range"
        )));
    }
    Ok(ComplexCumulant { re: v.re, im: v.im })
}

/// `H(τ) = C(β) - Re C(β + iτ)`.
pub fn oscillation_deficit(spec: &LevyDensitySpec, beta: f64, tau: f64) -> Result<f64> {
    let tc = TiltedCumulant::new(spec, beta)?;
    let h = tc.oscillation_deficit(tau)? * tc.shift.exp();
    if !h.is_finite() {
        return Err(Error::Overflow(format!(
            "H({tau}) at tilt {beta} exceeds the f64 range"
        )));
    }
    Ok(h)
}

/// `P(T_β = 0) = exp(-∫ e^{βx} g)`, zero when the integral diverges.
pub fn atom_mass(spec: &LevyDensitySpec, beta: f64) -> Result<f64> {
    let tc = TiltedCumulant::with_moments(spec, beta, 2)?;
    let m = tc.moments[0];
    if m.is_infinite() {
        return Ok(0.0);
    }
    let ln_lambda = m.ln() + tc.shift;
    if ln_lambda > 709.0 {
        return Ok(0.0);
    }
    Ok((-ln_lambda.exp()).exp())
}

/// `∫ x^k e^{βx} g` by adaptive quadrature over the pieces; an oracle for the
/// closed forms above.
pub fn moment_by_quadrature(spec: &LevyDensitySpec, beta: f64, k: i32) -> Result<f64> {
    let mut total = 0.0;
    for piece in spec.pieces() {
        let r = integrate(
            |x: f64| x.powi(k) * (beta * x).exp() * piece.eval(x),
            piece.lo,
            piece.hi,
            QuadOptions {
                rel_tol: 1e-14,
                ..QuadOptions::default()
            },
        )?;
        total += r.value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Builtin;
    use core::f64::consts::PI;

    fn dickman() -> LevyDensitySpec {
        LevyDensitySpec::builtin(Builtin::Dickman).unwrap()
    }

    #[test]
    fn dickman_closed_forms() {
        let s = dickman();
        for &b in &[-30.0, -3.0, -1e-3, 0.5, 5.0, 20.0, 60.0, 300.0] {
            let t = cumulant_triple(&s, b).unwrap();
            let c1 = b.exp_m1() / b;
            let c2 = (b.exp() * (b - 1.0) + 1.0) / (b * b);
            assert!(((t.c1 - c1) / c1).abs() < 1e-13, "beta={b}");
            if b.abs() > 1e-2 {
                assert!(((t.c2 - c2) / c2).abs() < 1e-12, "beta={b}");
            }
        }
        let z = cumulant_triple(&s, 0.0).unwrap();
        assert_eq!((z.c0, z.c1, z.c2), (0.0, 1.0, 0.5));
    }

    #[test]
    fn uniform_c0() {
        let s = LevyDensitySpec::builtin(Builtin::Uniform(0.0)).unwrap();
        let t = cumulant_triple(&s, 1.0).unwrap();
        let e = core::f64::consts::E;
        assert!((t.c0 - (e - 2.0)).abs() < 1e-15);
    }

    #[test]
    fn overflow_and_log_accessors() {
        let s = dickman();
        assert!(matches!(
            cumulant_triple(&s, 800.0),
            Err(Error::Overflow(_))
        ));
        let t = cumulant_triple_scaled(&s, 800.0).unwrap();
        let want = 800.0 - 800f64.ln();
        assert!((t.ln_c1() - want).abs() < 1e-12);
    }

    #[test]
    fn complex_examples() {
        let s = LevyDensitySpec::builtin(Builtin::Uniform(0.0)).unwrap();
        let v = complex_cumulant(&s, 0.0, PI).unwrap();
        assert!((v.re + 1.0).abs() < 1e-14);
        for &tau in &[0.7, 3.9, 4.1, 25.0] {
            let a = complex_cumulant(&s, 1.5, tau).unwrap();
            let b = complex_cumulant(&s, 1.5, -tau).unwrap();
            assert_eq!(a.re, b.re);
            assert_eq!(a.im, -b.im);
        }
        let d = dickman();
        let z = complex_cumulant(&d, 2.0, 0.0).unwrap();
        assert_eq!(z.im, 0.0);
        assert!((z.re - cumulant_triple(&d, 2.0).unwrap().c0).abs() < 1e-14);
    }

    #[test]
    fn taylor_and_closed_form_agree_at_switch() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        for &beta in &[-5.0, 0.0, 7.0, 25.0] {
            let tc = TiltedCumulant::new(&s, beta).unwrap();
            let taylor = tc.taylor_increment(TAYLOR_RADIUS);
            let closed = tc.closed_complex(TAYLOR_RADIUS).unwrap() - tc.c0;
            assert!(
                (taylor - closed).norm() < 1e-12 * (1.0 + tc.moments[1]),
                "beta={beta}"
            );
        }
    }

    #[test]
    fn complex_against_quadrature() {
        let s = LevyDensitySpec::new(
            alloc::vec![
                DensityPiece::new(0.0, 0.4, 1.0, alloc::vec![0.5, -0.25]),
                DensityPiece::new(0.4, 1.0, 0.0, alloc::vec![1.0, 2.0, -1.0]),
            ],
            None,
        )
        .unwrap();
        for &(beta, tau) in &[(3.0, 9.0), (-2.0, 40.0), (12.0, 6.5)] {
            let got = complex_cumulant(&s, beta, tau).unwrap();
            let mut want = Complex64::new(0.0, 0.0);
            for p in s.pieces() {
                let r = integrate(
                    |x: f64| (Complex64::new(beta, tau) * x).exp_m1_guarded() * p.eval(x),
                    p.lo,
                    p.hi,
                    QuadOptions::default(),
                )
                .unwrap();
                want += r.value;
            }
            let tol = 1e-10 * f64::max(beta, 0.0).exp();
            assert!((got.re - want.re).abs() < tol && (got.im - want.im).abs() < tol);
        }
    }

    trait ExpM1 {
        fn exp_m1_guarded(self) -> Complex64;
    }
    impl ExpM1 for Complex64 {
        fn exp_m1_guarded(self) -> Complex64 {
            if self.norm() < 1e-3 {
                self + self * self / 2.0 + self * self * self / 6.0
            } else {
                self.exp() - 1.0
            }
        }
    }

    #[test]
    fn deficit_examples() {
        let d = dickman();
        assert_eq!(oscillation_deficit(&d, 3.0, 0.0).unwrap(), 0.0);
        let sigma2 = cumulant_triple(&d, 10.0).unwrap().c2;
        assert!(oscillation_deficit(&d, 10.0, PI / 2.0).unwrap() >= sigma2 / 2.0);
        let eps = d.eps_floor.eps;
        let b: f64 = 20.0;
        let bound = eps * PI * PI / 8.0 * b.exp() / b.powi(3);
        assert!(oscillation_deficit(&d, b, 2.0 * PI).unwrap() > bound);
        // H = -Re C at β = 0 for Dickman equals Cin(τ)
        let h = oscillation_deficit(&d, 0.0, 10.0).unwrap();
        let cin10 = 2.925_257_190_900_033_9; // γ + ln 10 - Ci(10)
        assert!((h - cin10).abs() < 1e-12);
    }

    #[test]
    fn atom_masses() {
        assert_eq!(atom_mass(&dickman(), 3.0).unwrap(), 0.0);
        let t = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        assert!((atom_mass(&t, 0.0).unwrap() - 0.3).abs() < 1e-15);
        let u = LevyDensitySpec::builtin(Builtin::Uniform(0.0)).unwrap();
        assert!((atom_mass(&u, 0.0).unwrap() - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn cancellation_guard_is_exercised() {
        // g = 1/x - 0.9 on [0.5, 1]: the 1/x and constant parts nearly cancel
        let s = LevyDensitySpec::new(
            alloc::vec![DensityPiece::new(0.5, 1.0, 1.0, alloc::vec![-0.9])],
            None,
        )
        .unwrap();
        for &beta in &[-40.0, 0.3, 9.0] {
            let t = cumulant_triple(&s, beta).unwrap();
            let q1 = moment_by_quadrature(&s, beta, 1).unwrap();
            let q2 = moment_by_quadrature(&s, beta, 2).unwrap();
            assert!(((t.c1 - q1) / q1).abs() < 1e-11);
            assert!(((t.c2 - q2) / q2).abs() < 1e-11);
        }
    }
}

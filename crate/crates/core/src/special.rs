//! Special functions with explicit exponential scaling.
//!
//! Every routine that can grow like `e^z` returns its value multiplied by
//! `e^{-max(Re z, 0)}` so callers can combine terms with very different
//! magnitudes before leaving the log domain.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Euler's constant, to 20 significant digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

const SERIES_EPS: f64 = 1e-17;

/// A positive or signed quantity stored as `mantissa * e^shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub shift: f64,
}

impl Scaled {
    pub fn new(mantissa: f64, shift: f64) -> Self {
        Self { mantissa, shift }
    }

    /// Plain value; may be infinite if the shift is too large.
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa * self.shift.exp()
    }

    /// Natural log of a positive value.
    pub fn ln(&self) -> f64 {
        self.mantissa.ln() + self.shift
    }

    /// The mantissa expressed relative to another shift.
    pub fn at_shift(&self, shift: f64) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa * (self.shift - shift).exp()
    }
}

/// `F(z) = ∫_0^z (e^t - 1)/t dt` for real `z`, scaled by `e^{-max(z,0)}`.
pub fn ein(z: f64) -> Scaled {
    let shift = z.max(0.0);
    if z.abs() <= 2.0 || (z > 0.0 && z <= 40.0) {
        // z^n/(n n!) with the scale folded into the first term
        let mut term = z * (-shift).exp();
        let mut sum = term;
        let mut n = 1.0;
        loop {
            term *= z * n / ((n + 1.0) * (n + 1.0));
            sum += term;
            n += 1.0;
            if term.abs() <= SERIES_EPS * sum.abs() || n > 500.0 {
                break;
            }
        }
        return Scaled::new(sum, shift);
    }
    if z < 0.0 {
        let y = -z;
        return Scaled::new(-(e1(y) + y.ln() + EULER_GAMMA), 0.0);
    }
    // Ei(z) ~ e^z/z Σ k!/z^k, truncated at the smallest term
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * k / z;
        if next >= term || next < SERIES_EPS {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    let mantissa = sum / z - (EULER_GAMMA + z.ln()) * (-z).exp();
    Scaled::new(mantissa, z)
}

/// Exponential integral `E1(y)` for `y > 0`.
pub fn e1(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    if y <= 1.0 {
        // E1(y) = -γ - ln y - Σ (-y)^n/(n n!)
        let mut term = -y;
        let mut sum = term;
        let mut n = 1.0;
        while term.abs() > SERIES_EPS * sum.abs().max(1e-300) {
            term *= -y * n / ((n + 1.0) * (n + 1.0));
            sum += term;
            n += 1.0;
        }
        return -EULER_GAMMA - y.ln() - sum;
    }
    e1_complex(Complex64::new(y, 0.0)).re
}

/// `E1(w)` for complex `w` off the negative real axis, by the modified Lentz
/// evaluation of its continued fraction.
pub fn e1_complex(w: Complex64) -> Complex64 {
    e1_cf_denominator(w).inv() * (-w).exp()
}

/// Continued fraction `w + 1 - 1/(w + 3 - 4/(w + 5 - ...))`, so that
/// `E1(w) = e^{-w} / cf`.
fn e1_cf_denominator(w: Complex64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let tiny = Complex64::new(TINY, 0.0);
    let mut b = w + 1.0;
    let mut f = if b.norm() == 0.0 { tiny } else { b };
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..20_000 {
        let a = -((n * n) as f64);
        b = w + (2 * n + 1) as f64;
        d = b + d * a;
        if d.norm() == 0.0 {
            d = tiny;
        }
        d = d.inv();
        c = b + c.inv() * a;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    f
}

/// Complex `F(z) = ∫_0^z (e^t - 1)/t dt`, scaled by `e^{-max(Re z, 0)}`.
pub fn ein_complex(z: Complex64) -> Complex64 {
    let shift = z.re.max(0.0);
    let modulus = z.norm();
    if modulus <= 4.0 || modulus - z.re <= 5.0 {
        let mut term = z * (-shift).exp();
        let mut sum = term;
        let mut n = 1.0;
        loop {
            term = term * z * (n / ((n + 1.0) * (n + 1.0)));
            sum += term;
            n += 1.0;
            if term.norm() <= SERIES_EPS * sum.norm() || n > 2000.0 {
                break;
            }
        }
        return sum;
    }
    // F(z) = -E1(-z) - ln(-z) - γ; valid away from the positive real axis
    let w = -z;
    let exp_part = Complex64::from_polar((z.re - shift).exp(), z.im) * e1_cf_denominator(w).inv();
    -exp_part - (w.ln() + EULER_GAMMA) * (-shift).exp()
}

/// `P_m(ζ) = ∫_0^1 t^m e^{ζ t} dt` for `m = 0..=m_max` and real `ζ`,
/// each scaled by `e^{-max(ζ, 0)}`.
pub fn power_exp_integrals(zeta: f64, m_max: usize) -> Vec<f64> {
    let mut out = vec![0.0; m_max + 1];
    if zeta == 0.0 {
        for (m, slot) in out.iter_mut().enumerate() {
            *slot = 1.0 / (m as f64 + 1.0);
        }
        return out;
    }
    if zeta < 0.0 {
        let y = -zeta;
        let e = (-y).exp();
        if y > m_max as f64 + 30.0 {
            // upward: P_m = (m P_{m-1} - e^{-y}) / y, no cancellation here
            out[0] = -(-y).exp_m1() / y;
            for m in 1..=m_max {
                out[m] = (m as f64 * out[m - 1] - e) / y;
            }
        } else {
            // top by the positive incomplete-gamma series, then downward:
            // P_{m-1} = (y P_m + e^{-y}) / m
            out[m_max] = lower_gamma_series(m_max, y);
            for m in (1..=m_max).rev() {
                out[m - 1] = (y * out[m] + e) / m as f64;
            }
        }
        return out;
    }
    let b = zeta;
    // upward is stable while b > 2m; beyond that the positive series is used
    let mut m = 0;
    if b > 20.0 {
        out[0] = -(-b).exp_m1() / b;
        m = 1;
        while m <= m_max && b > 2.0 * m as f64 + 20.0 {
            out[m] = (1.0 - m as f64 * out[m - 1]) / b;
            m += 1;
        }
    }
    while m <= m_max {
        out[m] = positive_series(m, b);
        m += 1;
    }
    out
}

/// `e^{-y} Σ y^n / ((m+1)(m+2)...(m+1+n))`, which equals `P_m(-y)`.
fn lower_gamma_series(m: usize, y: f64) -> f64 {
    let a = m as f64 + 1.0;
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut n = 1.0;
    loop {
        term *= y / (a + n);
        sum += term;
        n += 1.0;
        if term <= SERIES_EPS * sum {
            break;
        }
    }
    sum * (-y).exp()
}

/// `e^{-b} Σ b^n / (n! (m+1+n))` for `b > 0`.
fn positive_series(m: usize, b: f64) -> f64 {
    let a = m as f64 + 1.0;
    let mut term = (-b).exp();
    let mut sum = term / a;
    let mut n = 1.0;
    loop {
        term *= b / n;
        let add = term / (a + n);
        sum += add;
        n += 1.0;
        if n > b && add <= SERIES_EPS * sum {
            break;
        }
    }
    sum
}

/// Complex analogue of [`power_exp_integrals`], scaled by
/// `e^{-max(Re ζ, 0)}`. Returns `None` when no stable closed form covers
/// the requested range; callers then fall back to quadrature.
pub fn power_exp_integrals_complex(zeta: Complex64, m_max: usize) -> Option<Vec<Complex64>> {
    let shift = zeta.re.max(0.0);
    let modulus = zeta.norm();
    let mut out = vec![Complex64::new(0.0, 0.0); m_max + 1];
    if modulus <= 4.0 || modulus - zeta.re <= 5.0 {
        for (m, slot) in out.iter_mut().enumerate() {
            *slot = complex_series(m, zeta, shift);
        }
        return Some(out);
    }
    if (m_max as f64) * 2.0 > modulus {
        return None;
    }
    // upward recurrence P_m = (e^ζ - m P_{m-1}) / ζ, amplification m/|ζ| < 1/2
    let scaled_exp = Complex64::from_polar((zeta.re - shift).exp(), zeta.im);
    let scaled_one = Complex64::new((-shift).exp(), 0.0);
    out[0] = (scaled_exp - scaled_one) / zeta;
    for m in 1..=m_max {
        out[m] = (scaled_exp - out[m - 1] * m as f64) / zeta;
    }
    Some(out)
}

fn complex_series(m: usize, zeta: Complex64, shift: f64) -> Complex64 {
    let a = m as f64 + 1.0;
    let mut term = Complex64::new((-shift).exp(), 0.0);
    let mut sum = term / a;
    let mut n = 1.0;
    let modulus = zeta.norm();
    loop {
        term = term * zeta / n;
        let add = term / (a + n);
        sum += add;
        n += 1.0;
        if (n > modulus && add.norm() <= SERIES_EPS * sum.norm()) || n > 4000.0 {
            break;
        }
    }
    sum
}

/// Binomial coefficients `C(k, 0..=k)` as floats.
pub fn binomial_row(k: usize) -> Vec<f64> {
    let mut row = vec![1.0; k + 1];
    for j in 1..k {
        row[j] = row[j - 1] * (k - j + 1) as f64 / j as f64;
    }
    row
}

/// Standard normal density.
pub fn normal_pdf(y: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_677_94;
    INV_SQRT_2PI * (-0.5 * y * y).exp()
}

/// Standard normal distribution function.
pub fn normal_cdf(y: f64) -> f64 {
    0.5 * libm::erfc(-y / core::f64::consts::SQRT_2)
}

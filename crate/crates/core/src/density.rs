//! Piecewise Lévy densities `g(x) = c/x + p(x)` on `(0, 1]`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::poly;

/// One piece `c/x + Σ p_k x^k` on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityPiece {
    pub lo: f64,
    pub hi: f64,
    pub inv_coeff: f64,
    pub poly: Vec<f64>,
}

impl DensityPiece {
    pub fn new(lo: f64, hi: f64, inv_coeff: f64, poly: Vec<f64>) -> Self {
        Self {
            lo,
            hi,
            inv_coeff,
            poly,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p = poly::eval(&self.poly, x);
        if self.inv_coeff == 0.0 {
            p
        } else {
            self.inv_coeff / x + p
        }
    }

    /// `x g(x) = c + x p(x)`, bounded on the piece.
    pub fn eval_xg(&self, x: f64) -> f64 {
        self.inv_coeff + x * poly::eval(&self.poly, x)
    }

    fn xg_coeffs(&self) -> Vec<f64> {
        let mut q = vec![self.inv_coeff];
        q.extend_from_slice(&self.poly);
        q
    }

    /// Interior critical points of `g` on the piece: roots of `x² p'(x) - c`.
    fn g_critical(&self) -> Vec<f64> {
        let dp = poly::derivative(&self.poly);
        let mut q = vec![-self.inv_coeff, 0.0];
        q.extend_from_slice(&dp);
        poly::roots_in(&q, self.lo, self.hi)
    }

    /// Exact min and max of `g` over the closed piece (the lower endpoint is
    /// excluded when the piece is singular at 0).
    pub fn g_extrema(&self) -> (f64, f64) {
        let crit = self.g_critical();
        if self.lo == 0.0 && self.inv_coeff > 0.0 {
            // g → ∞ at 0; min is over (0, hi]
            let lo = self.hi * 1e-12;
            let (min, _) = poly::extrema(|x| self.eval(x), lo, self.hi, &crit);
            (min, f64::INFINITY)
        } else {
            poly::extrema(|x| self.eval(x), self.lo, self.hi, &crit)
        }
    }

    /// Min of `g` over `[a, b] ⊂ [lo, hi]`.
    fn g_min_on(&self, a: f64, b: f64) -> f64 {
        let crit: Vec<f64> = self
            .g_critical()
            .into_iter()
            .filter(|&x| x > a && x < b)
            .collect();
        poly::extrema(|x| self.eval(x), a, b, &crit).0
    }

    pub fn xg_max(&self) -> f64 {
        let q = self.xg_coeffs();
        let crit = poly::roots_in(&poly::derivative(&q), self.lo, self.hi);
        poly::extrema(|x| poly::eval(&q, x), self.lo, self.hi, &crit).1
    }

    /// `∫ g` over the piece; infinite when singular at 0.
    pub fn mass(&self) -> f64 {
        if self.inv_coeff > 0.0 && self.lo == 0.0 {
            return f64::INFINITY;
        }
        let log_part = if self.inv_coeff > 0.0 {
            self.inv_coeff * (self.hi / self.lo).ln()
        } else {
            0.0
        };
        log_part + power_integral(&self.poly, self.lo, self.hi, 0)
    }

    /// `∫ x g`.
    pub fn first_moment(&self) -> f64 {
        self.inv_coeff * (self.hi - self.lo) + power_integral(&self.poly, self.lo, self.hi, 1)
    }

    /// Restriction to `[a, b]`, which must overlap the piece.
    pub fn clipped(&self, a: f64, b: f64) -> Self {
        Self::new(
            self.lo.max(a),
            self.hi.min(b),
            self.inv_coeff,
            self.poly.clone(),
        )
    }
}

/// `∫_lo^hi x^shift p(x) dx` by antiderivatives, with `hi^n - lo^n`
/// expanded to avoid cancellation on short pieces.
pub fn power_integral(p: &[f64], lo: f64, hi: f64, shift: usize) -> f64 {
    p.iter()
        .enumerate()
        .map(|(k, &c)| c * power_diff(lo, hi, k + shift + 1) / (k + shift + 1) as f64)
        .sum()
}

/// `hi^n - lo^n = (hi - lo) Σ hi^i lo^{n-1-i}`.
pub fn power_diff(lo: f64, hi: f64, n: usize) -> f64 {
    let mut s = 0.0;
    let mut hp = 1.0;
    for i in 0..n {
        s += hp * lo.powi((n - 1 - i) as i32);
        hp *= hi;
    }
    (hi - lo) * s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassKind {
    FiniteMass,
    InfiniteMass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Thm1,
    Thm2,
    Rejected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecClass {
    pub kind: MassKind,
    pub theorem: Theorem,
    pub atom_mass_at_beta0: f64,
    /// Split point `a` used by the infinite-mass treatment.
    pub split: Option<f64>,
    pub diagnostic: Option<String>,
}

/// Largest dyadic `ε ≤ 1/4` with `g ≥ ε` on `[1-ε, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsFloor {
    pub eps: f64,
    pub verified: bool,
}

/// Split point used for infinite-mass specs.
pub const THM2_SPLIT: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct LevyDensitySpec {
    pieces: Vec<DensityPiece>,
    pub label: Option<String>,
    pub support_lo: f64,
    pub mass: f64,
    pub first_moment: f64,
    pub sup_xg: f64,
    pub eps_floor: EpsFloor,
    pub class: SpecClass,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    Dickman,
    Truncated(f64),
    Uniform(f64),
}

impl LevyDensitySpec {
    /// Validate pieces and compute every derived field.
    pub fn new(pieces: Vec<DensityPiece>, label: Option<String>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Invariant("at least one piece is required".into()));
        }
        for (j, p) in pieces.iter().enumerate() {
            let finite = p.lo.is_finite()
                && p.hi.is_finite()
                && p.inv_coeff.is_finite()
                && p.poly.iter().all(|c| c.is_finite());
            if !finite {
                return Err(Error::Invariant(format!("piece {j}: non-finite number")));
            }
            if !(p.lo >= 0.0 && p.lo < 1.0 && p.hi > 0.0 && p.hi <= 1.0) {
                return Err(Error::Invariant(format!(
                    "piece {j}: endpoints must satisfy lo in [0,1), hi in (0,1]"
                )));
            }
            if p.lo >= p.hi {
                return Err(Error::Invariant(format!("piece {j}: lo < hi")));
            }
            if p.inv_coeff < 0.0 {
                return Err(Error::Invariant(format!("piece {j}: inv_coeff >= 0")));
            }
            if j > 0 && pieces[j - 1].hi != p.lo {
                return Err(Error::Invariant(format!(
                    "pieces are contiguous: gap or overlap between piece {} and {j}",
                    j - 1
                )));
            }
        }
        if pieces[pieces.len() - 1].hi != 1.0 {
            return Err(Error::Invariant("hi of the last piece equals 1".into()));
        }
        let support_lo = pieces[0].lo;
        let mut sup_g: f64 = 0.0;
        for (j, p) in pieces.iter().enumerate() {
            let (min, max) = p.g_extrema();
            let scale = if max.is_finite() { max.abs() } else { 1.0 };
            if min < -1e-13 * (1.0 + scale) {
                return Err(Error::Invariant(format!(
                    "negative density: g reaches {min:e} on piece {j}"
                )));
            }
            sup_g = sup_g.max(max);
        }
        let mass: f64 = pieces.iter().map(DensityPiece::mass).sum();
        let first_moment: f64 = pieces.iter().map(DensityPiece::first_moment).sum();
        if !(first_moment > 0.0 && first_moment.is_finite()) {
            return Err(Error::Invariant("first_moment in (0, inf)".into()));
        }
        let sup_xg = pieces
            .iter()
            .map(DensityPiece::xg_max)
            .fold(0.0f64, f64::max);
        if mass.is_infinite() && !sup_xg.is_finite() {
            return Err(Error::Invariant(
                "infinite mass requires bounded x g(x)".into(),
            ));
        }
        let eps_floor = find_eps_floor(&pieces).ok_or_else(|| {
            Error::Invariant("eps_floor: no dyadic eps >= 2^-20 with g >= eps on [1-eps, 1]".into())
        })?;
        let class = classify(&pieces, mass);
        Ok(Self {
            pieces,
            label,
            support_lo,
            mass,
            first_moment,
            sup_xg,
            eps_floor,
            class,
        })
    }

    pub fn builtin(which: Builtin) -> Result<Self> {
        match which {
            Builtin::Dickman => Self::new(
                vec![DensityPiece::new(0.0, 1.0, 1.0, vec![])],
                Some("dickman".into()),
            ),
            Builtin::Truncated(a) => {
                if !(a > 0.0 && a < 1.0) {
                    return Err(Error::Domain(format!(
                        "truncated({a}): a must lie in (0,1)"
                    )));
                }
                Self::new(
                    vec![DensityPiece::new(a, 1.0, 1.0, vec![])],
                    Some(format!("truncated({a})")),
                )
            }
            Builtin::Uniform(a) => {
                if !(0.0..1.0).contains(&a) {
                    return Err(Error::Domain(format!("uniform({a}): a must lie in [0,1)")));
                }
                Self::new(
                    vec![DensityPiece::new(a, 1.0, 0.0, vec![1.0])],
                    Some(format!("uniform({a})")),
                )
            }
        }
    }

    pub fn pieces(&self) -> &[DensityPiece] {
        &self.pieces
    }

    pub fn is_finite_mass(&self) -> bool {
        self.class.kind == MassKind::FiniteMass
    }

    /// Coefficient of the `1/x` singularity at 0, zero when absent.
    pub fn singular_coeff(&self) -> f64 {
        if self.support_lo == 0.0 {
            self.pieces[0].inv_coeff
        } else {
            0.0
        }
    }

    /// Piece breakpoints, including both ends of the support.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.pieces.iter().map(|p| p.lo).collect();
        b.push(1.0);
        b
    }

    /// `g(x)`, taking right limits at interior breakpoints.
    pub fn eval_g(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::Domain(format!("eval_g: x = {x} is outside (0,1]")));
        }
        Ok(self.g(x))
    }

    /// Unchecked evaluation for `x` in `(0, 1]`.
    pub fn g(&self, x: f64) -> f64 {
        if x < self.support_lo {
            return 0.0;
        }
        let idx = self.pieces.partition_point(|p| p.lo <= x);
        let piece = &self.pieces[idx.saturating_sub(1)];
        piece.eval(x)
    }

    /// Pieces restricted to `[a, b]`, dropping empty intersections.
    pub fn pieces_on(&self, a: f64, b: f64) -> Vec<DensityPiece> {
        self.pieces
            .iter()
            .filter(|p| p.hi > a && p.lo < b)
            .map(|p| p.clipped(a, b))
            .collect()
    }

    /// The density restricted to `[a, 1]`.
    pub fn restricted_above(&self, a: f64) -> Result<Self> {
        Self::new(self.pieces_on(a, 1.0), self.label.clone())
    }
}

fn find_eps_floor(pieces: &[DensityPiece]) -> Option<EpsFloor> {
    for k in 2..=20 {
        let eps = (0.5f64).powi(k);
        let a = 1.0 - eps;
        let min = pieces
            .iter()
            .filter(|p| p.hi > a)
            .map(|p| p.g_min_on(p.lo.max(a), p.hi))
            .fold(f64::INFINITY, f64::min);
        if min >= eps {
            return Some(EpsFloor {
                eps,
                verified: true,
            });
        }
    }
    None
}

fn classify(pieces: &[DensityPiece], mass: f64) -> SpecClass {
    if mass.is_finite() {
        return SpecClass {
            kind: MassKind::FiniteMass,
            theorem: Theorem::Thm1,
            atom_mass_at_beta0: (-mass).exp(),
            split: None,
            diagnostic: None,
        };
    }
    let c = pieces[0].inv_coeff;
    if c >= 1.0 {
        SpecClass {
            kind: MassKind::InfiniteMass,
            theorem: Theorem::Thm2,
            atom_mass_at_beta0: 0.0,
            split: Some(THM2_SPLIT),
            diagnostic: None,
        }
    } else {
        SpecClass {
            kind: MassKind::InfiniteMass,
            theorem: Theorem::Rejected,
            atom_mass_at_beta0: 0.0,
            split: None,
            diagnostic: Some(format!(
                "g(x) ~ {c}/x near 0 with coefficient below 1: the density of T behaves like \
                 x^({c}-1) near 0, so the tilted densities are unbounded and the uniform \
                 local limit fails"
            )),
        }
    }
}

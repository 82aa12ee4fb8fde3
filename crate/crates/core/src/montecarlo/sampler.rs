//! Arrival-sum samplers. Every draw owns a ChaCha stream selected by its
//! index, so a batch is the same whatever order the draws run in.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Open01, Poisson};

use crate::cumulant::TiltedCumulant;
use crate::density::{DensityPiece, LevyDensitySpec};
use crate::error::{Error, Result};
use crate::quadrature::gk15;

/// Number of cells in the inverse-CDF table.
pub const TABLE_KNOTS: usize = 4096;
/// Largest tilted mass accepted by the finite sampler.
pub const MAX_TILTED_MASS: f64 = 1e8;
/// Truncation level used when none is given.
pub const DEFAULT_TOL: f64 = 1e-13;

/// The random stream of draw `index` under `seed`.
pub fn draw_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    x0: f64,
    width: f64,
    cdf0: f64,
    mass: f64,
    d0: f64,
    d1: f64,
}

/// Poisson arrivals with density proportional to `e^{βx} g(x)` on a support
/// of finite mass.
#[derive(Debug, Clone)]
pub struct FiniteSampler {
    cells: Vec<Cell>,
    total: f64,
    lambda: f64,
}

impl FiniteSampler {
    pub fn new(spec: &LevyDensitySpec, beta: f64) -> Result<Self> {
        if !spec.is_finite_mass() {
            return Err(Error::Mass(
                "the direct sampler needs finite mass; restrict the support first".into(),
            ));
        }
        let lambda = TiltedCumulant::new(spec, beta)?.tilted_mass();
        if !(lambda.is_finite() && lambda <= MAX_TILTED_MASS) {
            return Err(Error::Mass(format!(
                "tilted mass {lambda:e} at beta = {beta} exceeds {MAX_TILTED_MASS:e}"
            )));
        }
        let lo = spec.support_lo;
        let step = (1.0 - lo) / TABLE_KNOTS as f64;
        let mut knots: Vec<f64> = (0..=TABLE_KNOTS).map(|k| lo + k as f64 * step).collect();
        knots[TABLE_KNOTS] = 1.0;
        knots.extend(spec.breakpoints());
        knots.sort_by(f64::total_cmp);
        knots.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        // tilt relative to the right end keeps every factor at most 1
        let top = beta.max(0.0);
        let weight = |p: &DensityPiece, x: f64| p.eval(x) * (beta * x - top).exp();
        let mut cells = Vec::with_capacity(knots.len());
        let mut cdf = 0.0;
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid = 0.5 * (a + b);
            let piece = spec
                .pieces()
                .iter()
                .find(|p| p.lo <= mid && mid < p.hi)
                .expect("cell inside the support");
            let (mass, _, _) = gk15(&mut |x: f64| weight(piece, x), a, b);
            cells.push(Cell {
                x0: a,
                width: b - a,
                cdf0: cdf,
                mass,
                d0: weight(piece, a),
                d1: weight(piece, b),
            });
            cdf += mass;
        }
        Ok(Self {
            cells,
            total: cdf,
            lambda,
        })
    }

    pub fn tilted_mass(&self) -> f64 {
        self.lambda
    }

    /// One arrival from a uniform variate in `(0, 1)`.
    pub fn invert(&self, v: f64) -> f64 {
        let target = v * self.total;
        let idx = self
            .cells
            .partition_point(|c| c.cdf0 <= target)
            .saturating_sub(1);
        let c = &self.cells[idx];
        let q = ((target - c.cdf0) / c.mass).clamp(0.0, 1.0);
        // linear density across the cell, rescaled to the cell mass
        let r = q * 0.5 * (c.d0 + c.d1) * c.width;
        let k = (c.d1 - c.d0) / c.width;
        let disc = (c.d0 * c.d0 + 2.0 * k * r).max(0.0);
        let denom = c.d0 + disc.sqrt();
        let s = if denom > 0.0 {
            2.0 * r / denom
        } else {
            q * c.width
        };
        c.x0 + s.clamp(0.0, c.width)
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.lambda <= 0.0 {
            return 0.0;
        }
        let count: f64 = Poisson::new(self.lambda)
            .expect("positive finite mean")
            .sample(rng);
        let mut sum = 0.0;
        for _ in 0..count as u64 {
            let v: f64 = Open01.sample(rng);
            sum += self.invert(v);
        }
        sum
    }
}

/// The sum of the scale-invariant process `dx/x` on `(0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct DickmanSampler {
    pub tol: f64,
}

impl DickmanSampler {
    pub fn new(tol: f64) -> Result<Self> {
        if !(1e-15..=1e-6).contains(&tol) {
            return Err(Error::Precondition(format!(
                "tol = {tol:e} must lie in [1e-15, 1e-6]"
            )));
        }
        Ok(Self { tol })
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let mut s = 0.0;
        let mut sum = 0.0;
        loop {
            let e: f64 = Exp1.sample(rng);
            s += e;
            let x = (-s).exp();
            sum += x;
            if x < self.tol {
                // points below x have expected sum x
                return sum + x;
            }
        }
    }
}

/// Arrivals on `[a, 1]` sampled directly, those on `(0, a)` by thinning
/// the dominating process `M dx/x`.
#[derive(Debug, Clone)]
pub struct SplitSampler {
    spec: LevyDensitySpec,
    upper: FiniteSampler,
    a: f64,
    beta: f64,
    dominating: f64,
    pub tol: f64,
}

impl SplitSampler {
    pub fn new(spec: &LevyDensitySpec, a: f64, beta: f64, tol: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Domain(format!(
                "split point a = {a} must lie in (0,1)"
            )));
        }
        if !(1e-15..=1e-6).contains(&tol) {
            return Err(Error::Precondition(format!(
                "tol = {tol:e} must lie in [1e-15, 1e-6]"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::Domain(format!("tilt {beta} is not finite")));
        }
        if !spec.sup_xg.is_finite() {
            return Err(Error::Domination("x g(x) is unbounded".into()));
        }
        let upper_spec = spec.restricted_above(a.max(spec.support_lo))?;
        let upper = FiniteSampler::new(&upper_spec, beta)?;
        let dominating = spec.sup_xg * (beta.max(0.0) * a).exp();
        if !dominating.is_finite() {
            return Err(Error::Domination(format!(
                "tilt bound overflows at beta = {beta}"
            )));
        }
        Ok(Self {
            spec: spec.clone(),
            upper,
            a,
            beta,
            dominating,
            tol,
        })
    }

    /// Largest contribution of truncation to the mean of one draw.
    pub fn truncation_bias_bound(&self) -> f64 {
        self.dominating * self.tol
    }

    fn intensity_ratio(&self, x: f64) -> f64 {
        x * self.spec.g(x) * (self.beta * x).exp()
    }

    /// `(T⁽¹⁾, T⁽²⁾)`: arrivals below and above `a`.
    pub fn draw_parts(&self, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let upper = self.upper.draw(rng);
        let mut lower = 0.0;
        if self.dominating > 0.0 && self.spec.support_lo < self.a {
            let mut s = 0.0;
            loop {
                let e: f64 = Exp1.sample(rng);
                s += e / self.dominating;
                let x = self.a * (-s).exp();
                let q = self.intensity_ratio(x);
                let v: f64 = Open01.sample(rng);
                if v * self.dominating < q {
                    lower += x;
                }
                if x < self.tol {
                    lower += x * q;
                    break;
                }
            }
        }
        (lower, upper)
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let (l, u) = self.draw_parts(rng);
        l + u
    }
}

/// Any of the three samplers behind one interface.
#[derive(Debug, Clone)]
pub enum Sampler {
    Finite(FiniteSampler),
    Dickman(DickmanSampler),
    Split(SplitSampler),
}

impl Sampler {
    /// The natural sampler: direct for finite mass, the exact Dickman
    /// series when it applies, otherwise split at `a`.
    pub fn for_spec(spec: &LevyDensitySpec, beta: f64, a: f64, tol: f64) -> Result<Self> {
        if spec.is_finite_mass() {
            return Ok(Sampler::Finite(FiniteSampler::new(spec, beta)?));
        }
        let p = spec.pieces();
        let dickman = p.len() == 1
            && p[0].lo == 0.0
            && p[0].inv_coeff == 1.0
            && p[0].poly.iter().all(|&c| c == 0.0);
        if dickman && beta == 0.0 {
            return Ok(Sampler::Dickman(DickmanSampler::new(tol)?));
        }
        Ok(Sampler::Split(SplitSampler::new(spec, a, beta, tol)?))
    }

    pub fn truncation_bias_bound(&self) -> f64 {
        match self {
            Sampler::Finite(_) => 0.0,
            Sampler::Dickman(d) => d.tol,
            Sampler::Split(s) => s.truncation_bias_bound(),
        }
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Sampler::Finite(s) => s.draw(rng),
            Sampler::Dickman(s) => s.draw(rng),
            Sampler::Split(s) => s.draw(rng),
        }
    }

    /// Draw number `index` of the batch seeded by `seed`.
    pub fn draw_at(&self, seed: u64, index: u64) -> f64 {
        self.draw(&mut draw_stream(seed, index))
    }
}

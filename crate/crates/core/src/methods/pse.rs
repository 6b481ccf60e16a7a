//! One-dimensional diffusion `w_t = D w_xx` by particle strength exchange.
//!
//! The second derivative at `x_j` is approximated by
//!
//! ```text
//! h / (2 eps^3 sqrt(pi)) * sum_k (w_k - w_j) exp(-(x_k - x_j)^2 / (4 eps^2))
//! ```
//!
//! over all `k` with `0 < |x_k - x_j| <= rc`, and time is advanced with
//! explicit Euler. Interactions are one-sided (only `p_j` changes) and
//! collect into the accumulator `dw`, which evolve consumes and resets.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{build_cutoff_lookup, cutoff_neighbors, CutoffLookup, NeighborSearch};
use crate::kernel::{ParticleMethod, State};
use crate::tuple::IndexTuple;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseParticle {
    pub x: f64,
    /// Concentration.
    pub w: f64,
    /// Concentration change accumulated during the interaction phase.
    pub dw: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseGlobal {
    /// Diffusion constant.
    pub diffusivity: f64,
    /// Particle spacing.
    pub h: f64,
    /// Kernel width.
    pub eps: f64,
    /// Cut-off radius.
    pub rc: f64,
    pub dt: f64,
    pub t_end: f64,
    pub t: f64,
}

impl PseParticle {
    pub const fn new(x: f64, w: f64) -> Self {
        PseParticle { x, w, dw: 0.0 }
    }
}

impl PseGlobal {
    /// Checks positivity of every parameter and the overlap condition
    /// `h / eps <= 1`.
    pub fn validate(&self) -> Result<(), Error> {
        let positive = [
            ("D", self.diffusivity),
            ("h", self.h),
            ("eps", self.eps),
            ("rc", self.rc),
            ("dt", self.dt),
        ];
        for (field, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter { field, reason: "must be positive and finite" });
            }
        }
        if self.h / self.eps > 1.0 {
            return Err(Error::InvalidParameter {
                field: "h",
                reason: "overlap condition h/eps <= 1 violated",
            });
        }
        if !self.t.is_finite() || self.t_end.is_nan() {
            return Err(Error::InvalidParameter { field: "t", reason: "times must be numbers" });
        }
        Ok(())
    }

    /// The factor `D h / (2 eps^3 sqrt(pi))` multiplying the accumulated
    /// exchange in the Euler update (without `dt`).
    pub fn exchange_factor(&self) -> f64 {
        self.diffusivity * self.h / (2.0 * self.eps * self.eps * self.eps * libm::sqrt(PI))
    }
}

/// Gaussian exchange weight `exp(-(xk - xj)^2 / (4 eps^2))`.
pub fn pse_kernel_weight(xj: f64, xk: f64, eps: f64) -> f64 {
    let r = xk - xj;
    libm::exp(-(r * r) / (4.0 * eps * eps))
}

/// Exact solution of free-space diffusion for the Gaussian initial
/// condition `w(x, 0) = exp(-x^2 / 4D) / sqrt(4 pi D)`: the heat kernel at
/// time `1 + t`.
pub fn analytic_diffusion(x: f64, t: f64, diffusivity: f64) -> f64 {
    let s = 4.0 * diffusivity * (1.0 + t);
    libm::exp(-(x * x) / s) / libm::sqrt(PI * s)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pse {
    pub search: NeighborSearch,
}

pub fn pse_method() -> Pse {
    Pse::default()
}

impl Pse {
    pub fn with_search(search: NeighborSearch) -> Self {
        Pse { search }
    }
}

impl ParticleMethod for Pse {
    type Particle = PseParticle;
    type Global = PseGlobal;
    type Lookup = CutoffLookup;

    fn build_lookup(&self, state: &State<PseParticle, PseGlobal>) -> Result<CutoffLookup, Error> {
        build_cutoff_lookup(
            self.search,
            state.particles.iter().map(|p| p.x),
            state.global.rc,
            None,
        )
    }

    fn neighborhood(
        &self,
        state: &State<PseParticle, PseGlobal>,
        lookup: &CutoffLookup,
        j: usize,
    ) -> Result<IndexTuple, Error> {
        let rc = state.global.rc;
        let ps = &state.particles;
        cutoff_neighbors(lookup, ps.len(), |k| ps[k].x, j, |xj, xk| {
            let r = libm::fabs(xk - xj);
            0.0 < r && r <= rc
        })
    }

    fn stop(&self, g: &PseGlobal) -> bool {
        g.t >= g.t_end
    }

    fn interact(
        &self,
        g: &PseGlobal,
        pj: &PseParticle,
        pk: &PseParticle,
    ) -> Result<(PseParticle, PseParticle), Error> {
        let exchange = (pk.w - pj.w) * pse_kernel_weight(pj.x, pk.x, g.eps);
        Ok((PseParticle { dw: pj.dw + exchange, ..*pj }, *pk))
    }

    fn evolve(
        &self,
        g: &PseGlobal,
        p: &PseParticle,
        _: usize,
    ) -> Result<(PseGlobal, Vec<PseParticle>), Error> {
        let w = p.w + g.dt * g.exchange_factor() * p.dw;
        Ok((*g, vec![PseParticle { x: p.x, w, dw: 0.0 }]))
    }

    fn evolve_global(&self, g: &PseGlobal) -> PseGlobal {
        PseGlobal { t: g.t + g.dt, ..*g }
    }
}

/// Gaussian concentration sampled at spacing `h` on `[-1.5, 1.5]`, with
/// `eps = h`, `rc = 4h`, `D = 0.01`, `dt = 0.1` and `T = 10`.
pub fn gaussian_instance(h: f64) -> State<PseParticle, PseGlobal> {
    let diffusivity = 0.01;
    let count = libm::round(3.0 / h) as usize + 1;
    let particles = (0..count)
        .map(|j| {
            let x = j as f64 * h - 1.5;
            PseParticle::new(x, analytic_diffusion(x, 0.0, diffusivity))
        })
        .collect();
    State::new(
        PseGlobal {
            diffusivity,
            h,
            eps: h,
            rc: 4.0 * h,
            dt: 0.1,
            t_end: 10.0,
            t: 0.0,
        },
        particles,
    )
}

/// The 31-particle instance with `h = eps = 0.1`.
pub fn reference_instance() -> State<PseParticle, PseGlobal> {
    gaussian_instance(0.1)
}

/// Sum of concentrations.
pub fn total_mass(particles: &[PseParticle]) -> f64 {
    particles.iter().map(|p| p.w).sum()
}

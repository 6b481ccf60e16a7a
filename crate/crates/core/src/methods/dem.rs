//! Perfectly elastic collisions of equal spheres on a line.
//!
//! Spheres keep their positions and swap velocities when they collide, and
//! move by explicit Euler steps `x <- x + dt * v` in between. The
//! neighborhood is asymmetric: `k` is a partner of `j` only when
//! `0 < x_k - x_j <= d`, so each colliding pair interacts once.

use alloc::vec;
use alloc::vec::Vec;

use super::{build_cutoff_lookup, cutoff_neighbors, CutoffLookup, NeighborSearch};
use crate::kernel::{ParticleMethod, State};
use crate::tuple::IndexTuple;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemParticle {
    pub x: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemGlobal {
    /// Sphere diameter.
    pub d: f64,
    /// Current time.
    pub t: f64,
    pub dt: f64,
    /// Stopping time.
    pub t_end: f64,
}

impl DemParticle {
    pub const fn new(x: f64, v: f64) -> Self {
        DemParticle { x, v }
    }
}

impl DemGlobal {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |field, reason| Err(Error::InvalidParameter { field, reason });
        if !(self.d > 0.0 && self.d.is_finite()) {
            return bad("d", "sphere diameter must be positive and finite");
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt", "time step must be positive and finite");
        }
        if self.t_end.is_nan() || self.t_end < 0.0 {
            return bad("T", "stopping time must be non-negative");
        }
        if !self.t.is_finite() {
            return bad("t", "current time must be finite");
        }
        Ok(())
    }
}

pub fn validate_particles(particles: &[DemParticle]) -> Result<(), Error> {
    if particles.iter().all(|p| p.x.is_finite() && p.v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field: "particles",
            reason: "positions and velocities must be finite",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Dem {
    pub search: NeighborSearch,
}

pub fn dem_method() -> Dem {
    Dem::default()
}

impl Dem {
    pub fn with_search(search: NeighborSearch) -> Self {
        Dem { search }
    }
}

impl ParticleMethod for Dem {
    type Particle = DemParticle;
    type Global = DemGlobal;
    type Lookup = CutoffLookup;

    fn build_lookup(&self, state: &State<DemParticle, DemGlobal>) -> Result<CutoffLookup, Error> {
        build_cutoff_lookup(
            self.search,
            state.particles.iter().map(|p| p.x),
            state.global.d,
            None,
        )
    }

    fn neighborhood(
        &self,
        state: &State<DemParticle, DemGlobal>,
        lookup: &CutoffLookup,
        j: usize,
    ) -> Result<IndexTuple, Error> {
        let d = state.global.d;
        let ps = &state.particles;
        cutoff_neighbors(lookup, ps.len(), |k| ps[k].x, j, |xj, xk| {
            0.0 < xk - xj && xk - xj <= d
        })
    }

    fn stop(&self, g: &DemGlobal) -> bool {
        g.t >= g.t_end
    }

    fn interact(
        &self,
        _: &DemGlobal,
        pj: &DemParticle,
        pk: &DemParticle,
    ) -> Result<(DemParticle, DemParticle), Error> {
        Ok((DemParticle::new(pj.x, pk.v), DemParticle::new(pk.x, pj.v)))
    }

    fn evolve(
        &self,
        g: &DemGlobal,
        p: &DemParticle,
        _: usize,
    ) -> Result<(DemGlobal, Vec<DemParticle>), Error> {
        Ok((*g, vec![DemParticle::new(p.x + g.dt * p.v, p.v)]))
    }

    fn evolve_global(&self, g: &DemGlobal) -> DemGlobal {
        DemGlobal { t: g.t + g.dt, ..*g }
    }
}

/// Three spheres of diameter 0.5, the first two already in contact and
/// approaching each other, run from `t = 0` to `T = 10` with `dt = 0.1`.
pub fn reference_instance() -> State<DemParticle, DemGlobal> {
    State::new(
        DemGlobal { d: 0.5, t: 0.0, dt: 0.1, t_end: 10.0 },
        vec![
            DemParticle::new(0.0, 2.0),
            DemParticle::new(0.49, -1.0),
            DemParticle::new(2.0, 1.0),
        ],
    )
}

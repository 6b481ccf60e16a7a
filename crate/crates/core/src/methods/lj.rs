//! Lennard-Jones molecular dynamics on a periodic line `[0, D)`.
//!
//! Units are chosen so that the well depth, the length scale and the atom
//! mass are all 1, giving a pair acceleration `a(r) = 24/r^7 - 48/r^13`
//! for signed separation `r`. Separations use the minimum-image directed
//! distance. The neighborhood is the half-neighborhood
//! `0 < d(x_j, x_k) <= rc` and each interaction updates both atoms.
//!
//! The evolve step is `v <- v + dt*a; x <- (x + dt*v) mod D; a <- 0`.

use alloc::vec;
use alloc::vec::Vec;

use super::{build_cutoff_lookup, cutoff_neighbors, CutoffLookup, NeighborSearch};
use crate::kernel::{ParticleMethod, State};
use crate::tuple::IndexTuple;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LjParticle {
    pub x: f64,
    pub v: f64,
    /// Acceleration accumulated during the interaction phase.
    pub a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LjGlobal {
    /// Cut-off radius.
    pub rc: f64,
    /// Periodic domain length.
    pub domain: f64,
    pub dt: f64,
    pub t_end: f64,
    pub t: f64,
}

impl LjParticle {
    pub const fn at_rest(x: f64) -> Self {
        LjParticle { x, v: 0.0, a: 0.0 }
    }
}

impl LjGlobal {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.domain > 0.0 && self.domain.is_finite()) {
            return Err(Error::InvalidParameter { field: "D", reason: "domain length must be positive and finite" });
        }
        if !(self.rc > 0.0 && self.rc <= 0.5 * self.domain) {
            return Err(Error::InvalidParameter { field: "rc", reason: "cut-off must satisfy 0 < rc <= D/2" });
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter { field: "dt", reason: "time step must be positive and finite" });
        }
        if !self.t.is_finite() || self.t_end.is_nan() {
            return Err(Error::InvalidParameter { field: "t", reason: "times must be numbers" });
        }
        Ok(())
    }
}

pub fn validate_particles(particles: &[LjParticle], domain: f64) -> Result<(), Error> {
    for p in particles {
        if !(p.x >= 0.0 && p.x < domain) {
            return Err(Error::InvalidParameter { field: "particles", reason: "positions must lie in [0, D)" });
        }
        if !(p.v.is_finite() && p.a.is_finite()) {
            return Err(Error::InvalidParameter { field: "particles", reason: "velocities and accelerations must be finite" });
        }
    }
    Ok(())
}

/// Minimum-image signed distance from `x` to `y` on a ring of length `d`.
pub fn directed_distance(x: f64, y: f64, d: f64) -> f64 {
    let r = y - x;
    if r > 0.5 * d {
        r - d
    } else if r <= -0.5 * d {
        r + d
    } else {
        r
    }
}

/// `a mod b` with the result in `[0, |b|)`.
pub fn real_mod(a: f64, b: f64) -> Result<f64, Error> {
    if b == 0.0 {
        return Err(Error::ZeroModulus);
    }
    let m = libm::fabs(b);
    let r = a % m;
    let r = if r < 0.0 { r + m } else { r };
    // A tiny negative remainder can round up to exactly |b|, which is
    // congruent to 0.
    Ok(if r >= m { 0.0 } else { r })
}

/// Pair acceleration `24 r^-7 - 48 r^-13`.
pub fn lj_acceleration(r: f64) -> Result<f64, Error> {
    if r == 0.0 {
        return Err(Error::ZeroDistance);
    }
    let inv = 1.0 / r;
    let inv2 = inv * inv;
    let inv6 = inv2 * inv2 * inv2;
    let inv7 = inv6 * inv;
    Ok(24.0 * inv7 - 48.0 * inv6 * inv7)
}

/// Pair potential `4 (r^-12 - r^-6)`.
pub fn lj_potential(r: f64) -> Result<f64, Error> {
    if r == 0.0 {
        return Err(Error::ZeroDistance);
    }
    let inv2 = 1.0 / (r * r);
    let inv6 = inv2 * inv2 * inv2;
    Ok(4.0 * (inv6 * inv6 - inv6))
}

/// Kinetic plus truncated pair potential energy; each pair within the
/// cut-off counts once.
pub fn lj_total_energy(state: &State<LjParticle, LjGlobal>) -> Result<f64, Error> {
    let g = &state.global;
    let ps = &state.particles;
    let kinetic: f64 = ps.iter().map(|p| 0.5 * p.v * p.v).sum();
    let mut potential = 0.0;
    for pj in ps {
        for pk in ps {
            let r = directed_distance(pj.x, pk.x, g.domain);
            if 0.0 < r && r <= g.rc {
                potential += lj_potential(r)?;
            }
        }
    }
    Ok(kinetic + potential)
}

pub fn total_momentum(particles: &[LjParticle]) -> f64 {
    particles.iter().map(|p| p.v).sum()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Lj {
    pub search: NeighborSearch,
}

pub fn lj_method() -> Lj {
    Lj::default()
}

impl Lj {
    pub fn with_search(search: NeighborSearch) -> Self {
        Lj { search }
    }
}

impl ParticleMethod for Lj {
    type Particle = LjParticle;
    type Global = LjGlobal;
    type Lookup = CutoffLookup;

    fn build_lookup(&self, state: &State<LjParticle, LjGlobal>) -> Result<CutoffLookup, Error> {
        build_cutoff_lookup(
            self.search,
            state.particles.iter().map(|p| p.x),
            state.global.rc,
            Some(state.global.domain),
        )
    }

    fn neighborhood(
        &self,
        state: &State<LjParticle, LjGlobal>,
        lookup: &CutoffLookup,
        j: usize,
    ) -> Result<IndexTuple, Error> {
        let LjGlobal { rc, domain, .. } = state.global;
        let ps = &state.particles;
        cutoff_neighbors(lookup, ps.len(), |k| ps[k].x, j, |xj, xk| {
            let r = directed_distance(xj, xk, domain);
            0.0 < r && r <= rc
        })
    }

    fn stop(&self, g: &LjGlobal) -> bool {
        g.t >= g.t_end
    }

    fn interact(
        &self,
        g: &LjGlobal,
        pj: &LjParticle,
        pk: &LjParticle,
    ) -> Result<(LjParticle, LjParticle), Error> {
        let aj = lj_acceleration(directed_distance(pj.x, pk.x, g.domain))?;
        let ak = lj_acceleration(directed_distance(pk.x, pj.x, g.domain))?;
        Ok((
            LjParticle { a: pj.a + aj, ..*pj },
            LjParticle { a: pk.a + ak, ..*pk },
        ))
    }

    fn evolve(
        &self,
        g: &LjGlobal,
        p: &LjParticle,
        _: usize,
    ) -> Result<(LjGlobal, Vec<LjParticle>), Error> {
        let v = p.v + g.dt * p.a;
        let x = real_mod(p.x + g.dt * v, g.domain)?;
        Ok((*g, vec![LjParticle { x, v, a: 0.0 }]))
    }

    fn evolve_global(&self, g: &LjGlobal) -> LjGlobal {
        LjGlobal { t: g.t + g.dt, ..*g }
    }
}

/// Ten atoms at rest at `x_j = j (0.9 + 0.11 j)`, `j = 0..9`, on a ring of
/// length 19 with `rc = 3`, `dt = 1e-4` and `T = 10`.
pub fn reference_instance() -> State<LjParticle, LjGlobal> {
    State::new(
        LjGlobal { rc: 3.0, domain: 19.0, dt: 1e-4, t_end: 10.0, t: 0.0 },
        (0..10)
            .map(|j| {
                let j = j as f64;
                LjParticle::at_rest(j * (0.9 + 0.11 * j))
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{step, StepOutcome};
    use proptest::prelude::*;

    #[test]
    fn directed_distance_branches() {
        assert_eq!(directed_distance(1.0, 18.0, 19.0), -2.0);
        assert_eq!(directed_distance(18.0, 1.0, 19.0), 2.0);
        assert_eq!(directed_distance(3.0, 7.5, 19.0), 4.5);
        assert_eq!(directed_distance(7.5, 3.0, 19.0), -4.5);
        // Exactly half the domain: y - x = -D/2 wraps, +D/2 does not.
        assert_eq!(directed_distance(0.0, 9.5, 19.0), 9.5);
        assert_eq!(directed_distance(9.5, 0.0, 19.0), 9.5);
    }

    #[test]
    fn real_mod_cases() {
        assert_eq!(real_mod(-0.5, 19.0), Ok(18.5));
        assert_eq!(real_mod(3.0, 19.0), Ok(3.0));
        assert_eq!(real_mod(19.0, 19.0), Ok(0.0));
        assert_eq!(real_mod(-38.0, 19.0), Ok(0.0));
        assert_eq!(real_mod(5.0, -3.0), Ok(2.0));
        assert_eq!(real_mod(1.0, 0.0), Err(Error::ZeroModulus));
        // -1e-17 + 19 rounds to 19; the result must still be in [0, 19).
        let r = real_mod(-1e-17, 19.0).unwrap();
        assert!((0.0..19.0).contains(&r));
    }

    #[test]
    fn acceleration_values() {
        assert_eq!(lj_acceleration(1.0), Ok(-24.0));
        let r0 = libm::pow(2.0, 1.0 / 6.0);
        assert!(libm::fabs(lj_acceleration(r0).unwrap()) < 1e-13);
        assert_eq!(lj_acceleration(0.0), Err(Error::ZeroDistance));
    }

    #[test]
    fn interact_at_unit_distance() {
        let g = reference_instance().global;
        let (a, b) = Lj::default()
            .interact(&g, &LjParticle::at_rest(4.0), &LjParticle::at_rest(5.0))
            .unwrap();
        assert_eq!(a.a, -24.0);
        assert_eq!(b.a, 24.0);
        assert_eq!((a.x, a.v, b.x, b.v), (4.0, 0.0, 5.0, 0.0));
    }

    #[test]
    fn evolve_without_force_drifts() {
        let g = reference_instance().global;
        let p = LjParticle { x: 18.99995, v: 1.0, a: 0.0 };
        let (g2, ps) = Lj::default().evolve(&g, &p, 0).unwrap();
        assert_eq!(g2, g);
        assert_eq!(ps[0].v, 1.0);
        assert_eq!(ps[0].a, 0.0);
        assert_eq!(ps[0].x, real_mod(18.99995 + 1e-4, 19.0).unwrap());
        assert!(ps[0].x < 1e-4);
    }

    #[test]
    fn energy_cases() {
        let g = reference_instance().global;
        let far = State::new(g, vec![LjParticle::at_rest(0.0), LjParticle::at_rest(5.0)]);
        assert_eq!(lj_total_energy(&far), Ok(0.0));
        let single = State::new(g, vec![LjParticle { x: 2.0, v: 2.0, a: 0.0 }]);
        assert_eq!(lj_total_energy(&single), Ok(2.0));
        let r0 = libm::pow(2.0, 1.0 / 6.0);
        let well = State::new(g, vec![LjParticle::at_rest(1.0), LjParticle::at_rest(1.0 + r0)]);
        assert!(libm::fabs(lj_total_energy(&well).unwrap() + 1.0) < 1e-12);
        // Same pair across the periodic seam.
        let seam = State::new(g, vec![LjParticle::at_rest(19.0 - r0 / 2.0), LjParticle::at_rest(r0 / 2.0)]);
        assert!(libm::fabs(lj_total_energy(&seam).unwrap() + 1.0) < 1e-12);
    }

    #[test]
    fn reference_instance_is_valid() {
        let s = reference_instance();
        assert!(s.global.validate().is_ok());
        assert!(validate_particles(&s.particles, 19.0).is_ok());
        assert_eq!(s.particles[0].x, 0.0);
        assert!(libm::fabs(s.particles[9].x - 17.01) < 1e-12);
    }

    #[test]
    fn cutoff_bound_enforced() {
        let g = LjGlobal { rc: 9.6, ..reference_instance().global };
        assert!(matches!(g.validate(), Err(Error::InvalidParameter { field: "rc", .. })));
        let g = LjGlobal { rc: 9.5, ..reference_instance().global };
        assert!(g.validate().is_ok());
    }

    #[test]
    fn one_step_conserves_momentum() {
        let s = reference_instance();
        let StepOutcome::NextState(next) = step(&Lj::default(), &s).unwrap() else {
            panic!("halted");
        };
        assert!(libm::fabs(total_momentum(&next.particles) - total_momentum(&s.particles)) < 1e-9);
        assert!(next.particles.iter().all(|p| p.a == 0.0 && (0.0..19.0).contains(&p.x)));
    }

    proptest! {
        #[test]
        fn acceleration_is_odd(r in 0.5f64..5.0) {
            prop_assert_eq!(lj_acceleration(-r).unwrap(), -lj_acceleration(r).unwrap());
        }

        #[test]
        fn directed_distance_antisymmetric(x in 0.0f64..19.0, y in 0.0f64..19.0) {
            let r = y - x;
            prop_assume!(libm::fabs(r) != 9.5);
            prop_assert_eq!(directed_distance(x, y, 19.0), -directed_distance(y, x, 19.0));
            prop_assert!(libm::fabs(directed_distance(x, y, 19.0)) <= 9.5);
        }

        #[test]
        fn real_mod_range(a in -1e6f64..1e6, b in prop_oneof![-50.0f64..-0.01, 0.01f64..50.0]) {
            let r = real_mod(a, b).unwrap();
            prop_assert!(r >= 0.0 && r < libm::fabs(b));
            let c = (a - r) / b;
            prop_assert!(libm::fabs(c - libm::round(c)) < 1e-6 * libm::fabs(c).max(1.0));
        }
    }
}

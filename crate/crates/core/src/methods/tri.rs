//! Midpoint refinement of a 2-D triangulation, one particle per triangle.
//!
//! Triangle `iota` has vertices `v[0..3]`; edge `r` runs from `v[r]` to
//! `v[(r + 1) % 3]` and `beta[r]` is the identifier of the triangle across
//! it (`-1` on the boundary). During the interaction phase each triangle
//! learns, in `gamma[r]`, which edge slot it occupies in neighbor `beta[r]`.
//! Evolve then replaces every triangle by four children with identifiers
//! `4 iota .. 4 iota + 3`: three corner triangles and the middle one.
//!
//! Identifiers double as positions in the particle tuple. Children of the
//! triangle at position `j` land at positions `4j..4j+3` because evolve
//! appends them in order, so the identity holds after every step.

use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::{ParticleMethod, State};
use crate::tuple::IndexTuple;
use crate::Error;

pub type Point = [f64; 2];

/// Neighbor identifier of a boundary edge.
pub const NO_NEIGHBOR: i64 = -1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriParticle {
    pub iota: usize,
    pub verts: [Point; 3],
    pub beta: [i64; 3],
    pub gamma: [u8; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriGlobal {
    /// Number of refinement steps to perform.
    pub t_end: u64,
    /// Refinement steps performed so far.
    pub t: u64,
}

impl TriParticle {
    pub fn area(&self) -> f64 {
        let [a, b, c] = self.verts;
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    fn midpoint(&self, r: usize, s: usize) -> Point {
        let (a, b) = (self.verts[r], self.verts[s]);
        [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
    }
}

/// Checks the load-time invariants: `iota` equals the position, every
/// neighbor identifier is `-1` or a valid position, and every reverse index
/// is 0, 1 or 2.
pub fn validate_particles(particles: &[TriParticle]) -> Result<(), Error> {
    let n = particles.len() as i64;
    for (j, p) in particles.iter().enumerate() {
        if p.iota != j {
            return Err(Error::InvalidParameter {
                field: "iota",
                reason: "triangle identifier must equal its 0-based position",
            });
        }
        if p.beta.iter().any(|&b| b < NO_NEIGHBOR || b >= n) {
            return Err(Error::InvalidParameter {
                field: "beta",
                reason: "neighbor identifiers must be -1 or a triangle identifier",
            });
        }
        if p.gamma.iter().any(|&g| g > 2) {
            return Err(Error::InvalidParameter { field: "gamma", reason: "reverse indices must be 0, 1 or 2" });
        }
    }
    Ok(())
}

/// Sum of absolute triangle areas.
pub fn total_area(particles: &[TriParticle]) -> f64 {
    particles.iter().map(|p| libm::fabs(p.area())).sum()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tri;

pub fn tri_method() -> Tri {
    Tri
}

fn slot_of(beta: &[i64; 3], iota: usize) -> Option<usize> {
    beta.iter().position(|&b| b == iota as i64)
}

impl ParticleMethod for Tri {
    type Particle = TriParticle;
    type Global = TriGlobal;
    type Lookup = ();

    fn build_lookup(&self, _: &State<TriParticle, TriGlobal>) -> Result<(), Error> {
        Ok(())
    }

    /// The neighbor identifiers in slot order, boundary entries dropped.
    fn neighborhood(&self, state: &State<TriParticle, TriGlobal>, _: &(), j: usize) -> Result<IndexTuple, Error> {
        let p = state.particles.get(j).ok_or(Error::IndexOutOfRange {
            position: j,
            len: state.particles.len(),
        })?;
        Ok(p.beta.iter().filter(|&&b| b != NO_NEIGHBOR).map(|&b| b as usize).collect())
    }

    fn stop(&self, g: &TriGlobal) -> bool {
        g.t >= g.t_end
    }

    fn interact(
        &self,
        _: &TriGlobal,
        pj: &TriParticle,
        pk: &TriParticle,
    ) -> Result<(TriParticle, TriParticle), Error> {
        let malformed = Error::MalformedTopology { iota_j: pj.iota, iota_k: pk.iota };
        let slot = slot_of(&pj.beta, pk.iota).ok_or(malformed.clone())?;
        let reverse = slot_of(&pk.beta, pj.iota).ok_or(malformed)?;
        let mut out = *pj;
        out.gamma[slot] = reverse as u8;
        Ok((out, *pk))
    }

    fn evolve(&self, g: &TriGlobal, p: &TriParticle, _: usize) -> Result<(TriGlobal, Vec<TriParticle>), Error> {
        let base = 4 * p.iota;
        let middle = (base + 3) as i64;
        // Child of the neighbor across parent edge r that touches the start
        // vertex v[r] of that edge, and the one touching its end vertex.
        let at_start = |r: usize| match p.beta[r] {
            NO_NEIGHBOR => NO_NEIGHBOR,
            b => 4 * b + ((p.gamma[r] as i64 + 1) % 3),
        };
        let at_end = |r: usize| match p.beta[r] {
            NO_NEIGHBOR => NO_NEIGHBOR,
            b => 4 * b + p.gamma[r] as i64,
        };
        let corner = |c: usize| {
            let prev = (c + 2) % 3;
            TriParticle {
                iota: base + c,
                verts: [p.verts[c], p.midpoint(c, (c + 1) % 3), p.midpoint(c, prev)],
                beta: [at_start(c), middle, at_end(prev)],
                gamma: [0; 3],
            }
        };
        let inner = TriParticle {
            iota: base + 3,
            verts: [p.midpoint(0, 1), p.midpoint(1, 2), p.midpoint(0, 2)],
            beta: [(base + 1) as i64, (base + 2) as i64, base as i64],
            gamma: [0; 3],
        };
        Ok((*g, vec![corner(0), corner(1), corner(2), inner]))
    }

    fn evolve_global(&self, g: &TriGlobal) -> TriGlobal {
        TriGlobal { t: g.t + 1, ..*g }
    }
}

/// The single triangle `(0,0), (4,0), (2,4)` without neighbors, refined
/// once.
pub fn reference_instance() -> State<TriParticle, TriGlobal> {
    State::new(
        TriGlobal { t_end: 1, t: 0 },
        vec![TriParticle {
            iota: 0,
            verts: [[0.0, 0.0], [4.0, 0.0], [2.0, 4.0]],
            beta: [NO_NEIGHBOR; 3],
            gamma: [0; 3],
        }],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Vec<TriParticle> {
        // Unit square split along its diagonal (0,0)-(1,1).
        // Triangle 0: (0,0) (1,0) (1,1); its edge 2 is (1,1)->(0,0).
        // Triangle 1: (0,0) (1,1) (0,1); its edge 0 is (0,0)->(1,1).
        vec![
            TriParticle {
                iota: 0,
                verts: [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]],
                beta: [-1, -1, 1],
                gamma: [0; 3],
            },
            TriParticle {
                iota: 1,
                verts: [[0.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
                beta: [0, -1, -1],
                gamma: [0; 3],
            },
        ]
    }

    #[test]
    fn interact_records_reverse_slot() {
        let ps = two_triangles();
        let g = TriGlobal { t_end: 1, t: 0 };
        let (a, b) = Tri.interact(&g, &ps[1], &ps[0]).unwrap();
        // iota_k = 0 sits in slot 0 of triangle 1; triangle 1 sits in slot 2
        // of triangle 0.
        assert_eq!(a.gamma, [2, 0, 0]);
        assert_eq!(b, ps[0]);
        let (a, _) = Tri.interact(&g, &ps[0], &ps[1]).unwrap();
        assert_eq!(a.gamma, [0, 0, 0]);
    }

    #[test]
    fn interact_first_slot_case() {
        // iota_k = beta_j[0] and iota_j = beta_k[1] gives gamma_j[0] = 1.
        let g = TriGlobal { t_end: 1, t: 0 };
        let pj = TriParticle { iota: 0, verts: [[0.0; 2]; 3], beta: [1, -1, -1], gamma: [0; 3] };
        let pk = TriParticle { iota: 1, verts: [[0.0; 2]; 3], beta: [-1, 0, -1], gamma: [0; 3] };
        let (a, _) = Tri.interact(&g, &pj, &pk).unwrap();
        assert_eq!(a.gamma[0], 1);
    }

    #[test]
    fn interact_requires_mutual_neighbors() {
        let g = TriGlobal { t_end: 1, t: 0 };
        let mut ps = two_triangles();
        ps[0].beta = [-1, -1, -1];
        assert_eq!(
            Tri.interact(&g, &ps[1], &ps[0]),
            Err(Error::MalformedTopology { iota_j: 1, iota_k: 0 })
        );
        assert_eq!(
            Tri.interact(&g, &ps[0], &ps[1]),
            Err(Error::MalformedTopology { iota_j: 0, iota_k: 1 })
        );
    }

    #[test]
    fn refine_single_triangle() {
        let s = reference_instance();
        let (_, kids) = Tri.evolve(&s.global, &s.particles[0], 0).unwrap();
        let ids: Vec<usize> = kids.iter().map(|k| k.iota).collect();
        assert_eq!(ids, vec![0, 1, 2, 3]);
        assert_eq!(kids[0].verts, [[0.0, 0.0], [2.0, 0.0], [1.0, 2.0]]);
        assert_eq!(kids[1].verts, [[4.0, 0.0], [3.0, 2.0], [2.0, 0.0]]);
        assert_eq!(kids[2].verts, [[2.0, 4.0], [1.0, 2.0], [3.0, 2.0]]);
        assert_eq!(kids[3].verts, [[2.0, 0.0], [3.0, 2.0], [1.0, 2.0]]);
        for k in &kids[..3] {
            assert_eq!(k.beta, [-1, 3, -1]);
        }
        assert_eq!(kids[3].beta, [1, 2, 0]);
        assert!(kids.iter().all(|k| k.gamma == [0, 0, 0]));
    }

    #[test]
    fn neighborhood_drops_boundary() {
        let s = State::new(TriGlobal { t_end: 1, t: 0 }, two_triangles());
        assert_eq!(Tri.neighborhood(&s, &(), 0).unwrap(), IndexTuple::from([1]));
        assert_eq!(Tri.neighborhood(&s, &(), 1).unwrap(), IndexTuple::from([0]));
        assert!(Tri.neighborhood(&reference_instance(), &(), 0).unwrap().is_empty());
    }

    #[test]
    fn validation() {
        assert!(validate_particles(&two_triangles()).is_ok());
        let mut ps = two_triangles();
        ps[1].iota = 5;
        assert!(matches!(validate_particles(&ps), Err(Error::InvalidParameter { field: "iota", .. })));
        let mut ps = two_triangles();
        ps[0].beta[0] = 2;
        assert!(matches!(validate_particles(&ps), Err(Error::InvalidParameter { field: "beta", .. })));
        let mut ps = two_triangles();
        ps[0].gamma[0] = 3;
        assert!(matches!(validate_particles(&ps), Err(Error::InvalidParameter { field: "gamma", .. })));
    }
}

//! Gaussian elimination without pivoting, one particle per matrix row.
//!
//! The global `(N, m, n)` holds the dimension, the current column `m` and the
//! current row `n`, all 1-based. While `m <= N` the current row eliminates
//! column `m` from the rows below it (visited bottom-up, swapping in a row
//! with a non-zero entry when the pivot is zero) and is then normalized to a
//! leading 1. Once `m > N` the current row walks back up, clearing its
//! leading column from the rows above. Each row remembers the column of its
//! leading 1 in `mu` (0 until it has one).
//!
//! An entry counts as zero when it is below a few rounding errors relative
//! to the largest coefficient of its row. Entries that vanish in exact
//! arithmetic (a singular leading block) come out as residues of order
//! `1e-15` in binary64 and would otherwise be taken as pivots.

use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::{ParticleMethod, State};
use crate::tuple::IndexTuple;
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct RowParticle {
    pub a: Vec<f64>,
    pub b: f64,
    /// 1-based column of the leading 1, 0 when not yet known.
    pub mu: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussGlobal {
    /// Matrix dimension `N`.
    pub dim: usize,
    /// Current column `m`, 1-based.
    pub col: usize,
    /// Current row `n`, 1-based.
    pub row: usize,
}

impl RowParticle {
    pub fn new(a: Vec<f64>, b: f64) -> Self {
        RowParticle { a, b, mu: 0 }
    }
}

impl GaussGlobal {
    /// Start of elimination for an `N x N` system.
    pub fn start(dim: usize) -> Self {
        GaussGlobal { dim, col: 1, row: 1 }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter { field: "N", reason: "dimension must be at least 1" });
        }
        if self.row == 0 || self.row > self.dim {
            return Err(Error::InvalidParameter { field: "n", reason: "current row must lie in 1..=N" });
        }
        if self.col == 0 {
            return Err(Error::InvalidParameter { field: "m", reason: "current column must be at least 1" });
        }
        Ok(())
    }

    // 0-based position of the current row, if any.
    fn current(&self) -> Option<usize> {
        self.row.checked_sub(1)
    }
}

pub fn validate_particles(particles: &[RowParticle], dim: usize) -> Result<(), Error> {
    if particles.len() != dim {
        return Err(Error::InvalidParameter { field: "particles", reason: "need exactly N rows" });
    }
    for p in particles {
        if p.a.len() != dim {
            return Err(Error::InvalidParameter { field: "particles", reason: "every row needs N coefficients" });
        }
        if p.mu > dim {
            return Err(Error::InvalidParameter { field: "mu", reason: "leading column must be 0 or lie in 1..=N" });
        }
        if !(p.b.is_finite() && p.a.iter().all(|x| x.is_finite())) {
            return Err(Error::InvalidParameter { field: "particles", reason: "entries must be finite" });
        }
    }
    Ok(())
}

/// Relative size, in units of the row's largest coefficient, below which an
/// entry is treated as zero.
pub const ZERO_TOLERANCE: f64 = 64.0 * f64::EPSILON;

/// Whether coefficient `c` of `a` vanishes relative to the row.
pub fn is_zero(a: &[f64], c: usize) -> bool {
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    a[c].abs() <= ZERO_TOLERANCE * scale
}

/// The method for `N x N` systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gauss {
    pub dim: usize,
}

pub fn gauss_method(dim: usize) -> Gauss {
    Gauss { dim }
}

impl ParticleMethod for Gauss {
    type Particle = RowParticle;
    type Global = GaussGlobal;
    type Lookup = ();

    fn build_lookup(&self, _: &State<RowParticle, GaussGlobal>) -> Result<(), Error> {
        Ok(())
    }

    fn neighborhood(&self, state: &State<RowParticle, GaussGlobal>, _: &(), j: usize) -> Result<IndexTuple, Error> {
        let g = &state.global;
        if j >= state.particles.len() {
            return Err(Error::IndexOutOfRange { position: j, len: state.particles.len() });
        }
        if g.current() != Some(j) {
            return Ok(IndexTuple::empty());
        }
        Ok(if g.col <= g.dim {
            // Rows N, N-1, .., n+1.
            (g.row..g.dim).rev().collect()
        } else {
            // Rows 1, .., n-1.
            (0..j).collect()
        })
    }

    // n <= 1 rather than n = 1: a zero row at the top of the last column
    // moves n to 0, which must still halt.
    fn stop(&self, g: &GaussGlobal) -> bool {
        g.row <= 1 && g.col > g.dim
    }

    fn interact(
        &self,
        g: &GaussGlobal,
        pj: &RowParticle,
        pk: &RowParticle,
    ) -> Result<(RowParticle, RowParticle), Error> {
        let dim = g.dim;
        if g.col <= dim {
            let c = g.col - 1;
            if !is_zero(&pj.a, c) {
                let factor = pk.a[c] / pj.a[c];
                let mut row = pk.clone();
                for l in c + 1..dim {
                    row.a[l] = pk.a[l] - pj.a[l] * factor;
                }
                // Zero by construction; the rounded product can leave a
                // residue that the next row's evolve would read as a pivot.
                row.a[c] = 0.0;
                row.b = pk.b - pj.b * factor;
                Ok((pj.clone(), row))
            } else if !is_zero(&pk.a, c) {
                Ok((pk.clone(), pj.clone()))
            } else {
                Ok((pj.clone(), pk.clone()))
            }
        } else {
            let mu = pj.mu;
            if mu == 0 || mu > dim {
                return Err(Error::InvalidLeadingColumn { column: mu, dimension: dim });
            }
            let c = mu - 1;
            let scale = pk.a[c];
            let mut row = pk.clone();
            for l in c..dim {
                row.a[l] = pk.a[l] - scale * pj.a[l];
            }
            row.b = pk.b - scale * pj.b;
            Ok((pj.clone(), row))
        }
    }

    fn evolve(&self, g: &GaussGlobal, p: &RowParticle, j: usize) -> Result<(GaussGlobal, Vec<RowParticle>), Error> {
        let (dim, col) = (g.dim, g.col);
        let active = g.current() == Some(j);
        let leads = active && col <= dim && !is_zero(&p.a, col - 1);

        let row = if leads && col < dim {
            g.row + 1
        } else if active && col == dim && !leads {
            g.row - 1
        } else {
            g.row
        };

        let particle = if leads {
            let pivot = p.a[col - 1];
            let mut q = p.clone();
            for l in col - 1..dim {
                q.a[l] = p.a[l] / pivot;
            }
            q.b = p.b / pivot;
            q.mu = col;
            q
        } else {
            p.clone()
        };
        Ok((GaussGlobal { row, ..*g }, vec![particle]))
    }

    fn evolve_global(&self, g: &GaussGlobal) -> GaussGlobal {
        GaussGlobal {
            dim: g.dim,
            col: g.col + 1,
            row: if g.col > g.dim { g.row.saturating_sub(1) } else { g.row },
        }
    }
}

/// Initial state for the system `A x = b`, rows of `A` given in order.
pub fn system(rows: &[&[f64]], rhs: &[f64]) -> State<RowParticle, GaussGlobal> {
    let dim = rows.len();
    State::new(
        GaussGlobal::start(dim),
        rows.iter()
            .zip(rhs)
            .map(|(r, &b)| RowParticle::new(r.to_vec(), b))
            .collect(),
    )
}

/// The singular 3x3 system `[1 2 5; 1 -1 -4; 2 6 16] x = [2; -4; 8]`.
pub fn reference_instance() -> State<RowParticle, GaussGlobal> {
    system(
        &[&[1.0, 2.0, 5.0], &[1.0, -1.0, -4.0], &[2.0, 6.0, 16.0]],
        &[2.0, -4.0, 8.0],
    )
}

/// The augmented matrix `[A | b]` of a state, row by row.
pub fn augmented(particles: &[RowParticle]) -> Vec<Vec<f64>> {
    particles
        .iter()
        .map(|p| {
            let mut r = p.a.clone();
            r.push(p.b);
            r
        })
        .collect()
}

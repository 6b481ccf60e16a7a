//! Bundled particle methods.
//!
//! Each submodule provides the particle and global types, a type
//! implementing [`ParticleMethod`](crate::ParticleMethod), the pure formula
//! helpers the hooks are built from, and a constructor for the reference
//! instance of that method.

use alloc::vec::Vec;

use crate::accel::{build_grid, CellGrid};
use crate::tuple::{index_tuple, IndexTuple};
use crate::Error;

pub mod dem;
pub mod gauss;
pub mod lj;
pub mod pse;
pub mod tri;

/// How a cut-off based method finds its neighbors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NeighborSearch {
    /// Test the predicate against every particle.
    #[default]
    Scan,
    /// Rebuild a cell grid at the start of every interaction phase and test
    /// only particles from adjacent cells.
    CellList,
}

/// Phase lookup of the cut-off methods: `None` when scanning, otherwise the
/// grid and the positions it was built from.
pub type CutoffLookup = Option<(CellGrid, Vec<f64>)>;

// Shared by the three cut-off methods (DEM, PSE, LJ), whose interact
// functions never move particles, so a grid built at the start of the
// interaction phase stays valid for the whole phase.
pub(crate) fn build_cutoff_lookup(
    search: NeighborSearch,
    positions: impl Iterator<Item = f64>,
    cutoff: f64,
    domain: Option<f64>,
) -> Result<CutoffLookup, Error> {
    match search {
        NeighborSearch::Scan => Ok(None),
        NeighborSearch::CellList => {
            let xs: Vec<f64> = positions.collect();
            let grid = build_grid(&xs, cutoff, domain)?;
            Ok(Some((grid, xs)))
        }
    }
}

pub(crate) fn cutoff_neighbors<X, F>(
    lookup: &CutoffLookup,
    len: usize,
    x: X,
    j: usize,
    predicate: F,
) -> Result<IndexTuple, Error>
where
    X: Fn(usize) -> f64,
    F: Fn(f64, f64) -> bool,
{
    if j >= len {
        return Err(Error::IndexOutOfRange { position: j, len });
    }
    match lookup {
        None => {
            let xj = x(j);
            Ok(index_tuple(len, |&k| k != j && predicate(xj, x(k))))
        }
        Some((grid, xs)) => grid.range_neighbors(xs, j, predicate),
    }
}

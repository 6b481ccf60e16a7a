//! Cell-list neighborhood search in one dimension.
//!
//! Particles are binned into cells at least one cut-off wide, so every
//! partner within the cut-off lies in the particle's own cell or one of the
//! two adjacent cells. Queries filter those candidates with the caller's
//! predicate and return them in ascending position order, which makes the
//! result identical to a full predicate scan over all particles.

use alloc::vec;
use alloc::vec::Vec;

use crate::tuple::IndexTuple;
use crate::Error;

// Cells are made slightly wider than the cut-off so that rounding in the
// cell assignment can never push two particles within the cut-off more
// than one cell apart.
const WIDTH_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CellGrid {
    cutoff: f64,
    cell_width: f64,
    origin: f64,
    domain: Option<f64>,
    /// Ascending particle positions per cell.
    bins: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl CellGrid {
    pub fn cell_width(&self) -> f64 {
        self.cell_width
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn domain(&self) -> Option<f64> {
        self.domain
    }

    pub fn num_cells(&self) -> usize {
        self.bins.len()
    }

    pub fn num_particles(&self) -> usize {
        self.cell_of.len()
    }

    pub fn bins(&self) -> &[Vec<usize>] {
        &self.bins
    }

    /// Cell holding particle `j`.
    pub fn cell_of(&self, j: usize) -> Option<usize> {
        self.cell_of.get(j).copied()
    }

    fn locate(&self, x: f64) -> usize {
        let c = libm::floor((x - self.origin) / self.cell_width);
        if c <= 0.0 {
            0
        } else {
            (c as usize).min(self.bins.len() - 1)
        }
    }

    /// Cells whose particles are candidates for a query from `cell`.
    fn candidate_cells(&self, cell: usize) -> impl Iterator<Item = usize> {
        let n = self.bins.len();
        let mut cells = [cell, usize::MAX, usize::MAX];
        match self.domain {
            Some(_) => {
                let left = (cell + n - 1) % n;
                let right = (cell + 1) % n;
                if left != cell {
                    cells[1] = left;
                }
                if right != cell && right != left {
                    cells[2] = right;
                }
            }
            None => {
                if cell > 0 {
                    cells[1] = cell - 1;
                }
                if cell + 1 < n {
                    cells[2] = cell + 1;
                }
            }
        }
        cells.into_iter().filter(|&c| c != usize::MAX)
    }
}

/// Bins `positions` into a cell grid for the given cut-off.
///
/// With `domain = Some(d)` the axis is periodic with length `d`; positions
/// must then lie in `[0, d)` and the cut-off may not exceed `d / 2`.
pub fn build_grid(positions: &[f64], cutoff: f64, domain: Option<f64>) -> Result<CellGrid, Error> {
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::InvalidCutoff { cutoff });
    }
    let wide = cutoff * (1.0 + WIDTH_MARGIN);
    let (origin, num_cells, cell_width) = match domain {
        Some(d) => {
            if !(d.is_finite() && cutoff <= 0.5 * d) {
                return Err(Error::InvalidCutoff { cutoff });
            }
            if let Some((position, &x)) =
                positions.iter().enumerate().find(|(_, &x)| !(0.0..d).contains(&x))
            {
                return Err(Error::PositionOutOfDomain { position, x });
            }
            let n = libm::floor(d / wide).max(1.0) as usize;
            (0.0, n, d / n as f64)
        }
        None => {
            if let Some((position, &x)) = positions.iter().enumerate().find(|(_, x)| !x.is_finite()) {
                return Err(Error::PositionOutOfDomain { position, x });
            }
            let lo = positions.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = positions.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if positions.is_empty() {
                (0.0, 1, wide)
            } else {
                let n = libm::floor((hi - lo) / wide) as usize + 1;
                (lo, n, wide)
            }
        }
    };

    let mut grid = CellGrid {
        cutoff,
        cell_width,
        origin,
        domain,
        bins: vec![Vec::new(); num_cells],
        cell_of: Vec::with_capacity(positions.len()),
    };
    for (j, &x) in positions.iter().enumerate() {
        let c = grid.locate(x);
        grid.bins[c].push(j);
        grid.cell_of.push(c);
    }
    Ok(grid)
}

impl CellGrid {
    /// Ascending positions `k != j` with `predicate(x_j, x_k)` true.
    ///
    /// `positions` must be the slice the grid was built from, and the
    /// predicate must be false whenever the (periodic, if applicable)
    /// separation exceeds the grid's cut-off.
    pub fn range_neighbors<F>(&self, positions: &[f64], j: usize, mut predicate: F) -> Result<IndexTuple, Error>
    where
        F: FnMut(f64, f64) -> bool,
    {
        let len = self.cell_of.len();
        if j >= len || positions.len() != len {
            return Err(Error::IndexOutOfRange { position: j, len });
        }
        let xj = positions[j];
        let mut found: Vec<usize> = self
            .candidate_cells(self.cell_of[j])
            .flat_map(|c| self.bins[c].iter().copied())
            .filter(|&k| k != j && predicate(xj, positions[k]))
            .collect();
        found.sort_unstable();
        Ok(found.into())
    }
}

/// Free-function form of [`CellGrid::range_neighbors`].
pub fn range_neighbors<F>(grid: &CellGrid, positions: &[f64], j: usize, predicate: F) -> Result<IndexTuple, Error>
where
    F: FnMut(f64, f64) -> bool,
{
    grid.range_neighbors(positions, j, predicate)
}

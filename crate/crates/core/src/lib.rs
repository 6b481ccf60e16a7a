//! A sequential execution engine for particle methods.
//!
//! A particle method is given by a particle type, a global-variable type and
//! five functions (neighborhood, stopping condition, interact, evolve and
//! global evolve), gathered here in the [`ParticleMethod`] trait. The engine
//! in [`kernel`] turns any such definition into a state-transition function
//! that folds pairwise interactions over every particle's neighborhood, then
//! evolves every particle, then evolves the global variable.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no I/O. File
//! formats, traces and the command-line front end live in `pm-cli`.
//!
//! Bundled methods, in [`methods`]:
//!
//! * [`methods::dem`]: 1-D perfectly elastic sphere collisions;
//! * [`methods::pse`]: 1-D diffusion by particle strength exchange;
//! * [`methods::lj`]: 1-D periodic Lennard-Jones molecular dynamics;
//! * [`methods::tri`]: midpoint refinement of a triangulation;
//! * [`methods::gauss`]: Gaussian elimination to reduced-row echelon form.
//!
//! Positions of particles inside a state are 0-based everywhere.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod accel;
mod error;
pub mod kernel;
pub mod methods;
pub mod tuple;

pub use error::Error;
pub use kernel::{
    evolve_all, evolve_one, interact_all, interact_neighbors, interact_pair, run, run_observed,
    step, ParticleMethod, State, StepOutcome,
};
pub use tuple::{compose, concat, index_tuple, subtuple, try_compose, IndexTuple};

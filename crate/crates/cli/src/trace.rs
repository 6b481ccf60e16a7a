//! JSON Lines state traces.
//!
//! Every line is `{"step":k,"global":[...],"particles":[[...],...]}` where
//! `k` counts transitions (0 is the initial state). Floats are written in
//! shortest round-trip form, so a trace reproduces the binary64 state.

use std::io::Write;

use pm_core::methods::NeighborSearch;
use pm_core::{run_observed, State};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{dem_def, gauss_def, lj_def, pse_def, Codec, Instance, Loaded};
use crate::CliError;
use pm_core::methods::tri::Tri;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub global: Value,
    pub particles: Vec<Value>,
}

impl TraceRecord {
    pub fn of<M: Codec>(step: usize, state: &State<M::Particle, M::Global>) -> Self {
        TraceRecord {
            step,
            global: M::global_array(&state.global),
            particles: state.particles.iter().map(M::particle_record).collect(),
        }
    }
}

/// Writes one record as a single line.
pub fn write_trace<W: Write>(record: &TraceRecord, sink: &mut W) -> Result<(), CliError> {
    serde_json::to_writer(&mut *sink, record)?;
    sink.write_all(b"\n")?;
    Ok(())
}

/// Summary of a traced run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub transitions: usize,
    pub records: usize,
}

fn traced<M: Codec, W: Write>(
    def: &M,
    state: State<M::Particle, M::Global>,
    trace_every: usize,
    max_steps: Option<usize>,
    sink: &mut W,
) -> Result<RunSummary, CliError> {
    let mut records = 0;
    let mut failure = None;
    let (last, transitions) = run_observed(def, state, max_steps, |k, s| {
        if failure.is_none() && trace_every > 0 && k % trace_every == 0 {
            match write_trace(&TraceRecord::of::<M>(k, s), sink) {
                Ok(()) => records += 1,
                Err(e) => failure = Some(e),
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if trace_every == 0 || transitions % trace_every != 0 {
        write_trace(&TraceRecord::of::<M>(transitions, &last), sink)?;
        records += 1;
    }
    sink.flush()?;
    Ok(RunSummary { transitions, records })
}

/// Runs a loaded instance to its stopping condition, writing every
/// `trace_every`-th state and the final state (only the final state when
/// `trace_every` is 0).
pub fn run_traced<W: Write>(loaded: &Loaded, search: NeighborSearch, sink: &mut W) -> Result<RunSummary, CliError> {
    let (te, ms) = (loaded.trace_every, loaded.max_steps);
    match &loaded.instance {
        Instance::Dem(s) => traced(&dem_def(search), s.clone(), te, ms, sink),
        Instance::Pse(s) => traced(&pse_def(search), s.clone(), te, ms, sink),
        Instance::Lj(s) => traced(&lj_def(search), s.clone(), te, ms, sink),
        Instance::Tri(s) => traced(&Tri, s.clone(), te, ms, sink),
        Instance::Gauss(s) => traced(&gauss_def(s), s.clone(), te, ms, sink),
    }
}

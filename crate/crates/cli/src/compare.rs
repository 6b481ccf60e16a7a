//! Comparison of PSE runs with the exact heat-kernel solution.

use pm_core::methods::pse::{analytic_diffusion, total_mass, PseGlobal, PseParticle};
use pm_core::methods::NeighborSearch;
use pm_core::{run, State};

use crate::config::{pse_def, Instance, Loaded};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// Time actually reached (the first step boundary at or after the
    /// requested time).
    pub t: f64,
    pub transitions: usize,
    /// Largest pointwise error.
    pub linf: f64,
    /// Root mean square pointwise error.
    pub rms: f64,
    /// `|sum w - sum w0| / |sum w0|`.
    pub mass_drift: f64,
}

/// Pointwise errors of `state` against the exact solution at its own time.
pub fn analytic_errors(state: &State<PseParticle, PseGlobal>) -> (f64, f64) {
    let g = &state.global;
    let errs: Vec<f64> = state
        .particles
        .iter()
        .map(|p| (p.w - analytic_diffusion(p.x, g.t, g.diffusivity)).abs())
        .collect();
    let linf = errs.iter().copied().fold(0.0, f64::max);
    let rms = if errs.is_empty() {
        0.0
    } else {
        (errs.iter().map(|e| e * e).sum::<f64>() / errs.len() as f64).sqrt()
    };
    (linf, rms)
}

/// Runs a PSE state until `t >= at_time` and reports its error.
pub fn compare_state(
    state: &State<PseParticle, PseGlobal>,
    at_time: f64,
    search: NeighborSearch,
    max_steps: Option<usize>,
) -> Result<ErrorReport, CliError> {
    let m0 = total_mass(&state.particles);
    let mut start = state.clone();
    start.global.t_end = at_time;
    let (last, transitions) = run(&pse_def(search), start, max_steps)?;
    let (linf, rms) = analytic_errors(&last);
    let drift = (total_mass(&last.particles) - m0).abs();
    Ok(ErrorReport {
        t: last.global.t,
        transitions,
        linf,
        rms,
        mass_drift: if m0 == 0.0 { drift } else { drift / m0.abs() },
    })
}

/// [`compare_state`] on a loaded configuration, which must be a PSE one.
pub fn compare_analytic(loaded: &Loaded, at_time: f64, search: NeighborSearch) -> Result<ErrorReport, CliError> {
    if !at_time.is_finite() {
        return Err(CliError::Usage("--at-time must be finite".into()));
    }
    match &loaded.instance {
        Instance::Pse(s) => compare_state(s, at_time, search, loaded.max_steps),
        other => Err(CliError::Usage(format!(
            "compare needs a pse_diffusion configuration, got {}",
            other.method_name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pm_core::methods::pse;

    #[test]
    fn initial_condition_is_exact() {
        let r = compare_state(&pse::reference_instance(), 0.0, NeighborSearch::Scan, None).unwrap();
        assert_eq!((r.transitions, r.linf, r.rms, r.mass_drift), (0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn short_run() {
        let r = compare_state(&pse::reference_instance(), 1.0, NeighborSearch::Scan, None).unwrap();
        assert!(r.t >= 1.0 && r.transitions >= 10);
        assert!(r.linf > 0.0 && r.rms <= r.linf);
        assert!(r.mass_drift < 1e-10);
    }

    #[test]
    fn rejects_other_methods() {
        let l = crate::examples::example("dem").unwrap();
        assert!(matches!(compare_analytic(&l, 1.0, NeighborSearch::Scan), Err(CliError::Usage(_))));
    }
}

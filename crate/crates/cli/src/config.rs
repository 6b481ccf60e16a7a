//! Instance configuration documents.
//!
//! A configuration is a JSON object with keys `method`, `global`,
//! `particles`, `trace_every` and `max_steps`. `global` is an object keyed by
//! the method's field names; every particle is an array in field order:
//!
//! | method           | global fields          | particle                    |
//! |------------------|------------------------|-----------------------------|
//! | `dem_collision`  | `d t dt T`             | `[x, v]`                    |
//! | `pse_diffusion`  | `D h eps rc dt T t`    | `[x, w, dw]`                |
//! | `lj_md`          | `rc D dt T t`          | `[x, v, a]`                 |
//! | `triangulation`  | `T t`                  | `[iota, [v0,v1,v2], [b0,b1,b2], [g0,g1,g2]]` |
//! | `gauss_elim`     | `N m n`                | `[[a1..aN], b, mu]`         |

use pm_core::methods::dem::{Dem, DemGlobal, DemParticle};
use pm_core::methods::gauss::{Gauss, GaussGlobal, RowParticle};
use pm_core::methods::lj::{Lj, LjGlobal, LjParticle};
use pm_core::methods::pse::{Pse, PseGlobal, PseParticle};
use pm_core::methods::tri::{Tri, TriGlobal, TriParticle};
use pm_core::methods::{dem, gauss, lj, tri, NeighborSearch};
use pm_core::{ParticleMethod, State};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

/// The document as written, before method-specific decoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub method: String,
    pub global: Value,
    pub particles: Vec<Value>,
    #[serde(default)]
    pub trace_every: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
}

/// Serialization of a method's global variable and particles.
pub trait Codec: ParticleMethod {
    const METHOD: &'static str;

    /// The global variable as a config object.
    fn global_record(g: &Self::Global) -> Value;
    /// The global variable as an array in field order, for traces.
    fn global_array(g: &Self::Global) -> Value;
    fn particle_record(p: &Self::Particle) -> Value;
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DemGlobalRec {
    d: f64,
    t: f64,
    dt: f64,
    #[serde(rename = "T")]
    t_end: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PseGlobalRec {
    #[serde(rename = "D")]
    diffusivity: f64,
    h: f64,
    eps: f64,
    rc: f64,
    dt: f64,
    #[serde(rename = "T")]
    t_end: f64,
    t: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LjGlobalRec {
    rc: f64,
    #[serde(rename = "D")]
    domain: f64,
    dt: f64,
    #[serde(rename = "T")]
    t_end: f64,
    t: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriGlobalRec {
    #[serde(rename = "T")]
    t_end: u64,
    t: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussGlobalRec {
    #[serde(rename = "N")]
    dim: usize,
    m: usize,
    n: usize,
}

impl Codec for Dem {
    const METHOD: &'static str = "dem_collision";

    fn global_record(g: &DemGlobal) -> Value {
        json!({"d": g.d, "t": g.t, "dt": g.dt, "T": g.t_end})
    }

    fn global_array(g: &DemGlobal) -> Value {
        json!([g.d, g.t, g.dt, g.t_end])
    }

    fn particle_record(p: &DemParticle) -> Value {
        json!([p.x, p.v])
    }
}

impl Codec for Pse {
    const METHOD: &'static str = "pse_diffusion";

    fn global_record(g: &PseGlobal) -> Value {
        json!({"D": g.diffusivity, "h": g.h, "eps": g.eps, "rc": g.rc, "dt": g.dt, "T": g.t_end, "t": g.t})
    }

    fn global_array(g: &PseGlobal) -> Value {
        json!([g.diffusivity, g.h, g.eps, g.rc, g.dt, g.t_end, g.t])
    }

    fn particle_record(p: &PseParticle) -> Value {
        json!([p.x, p.w, p.dw])
    }
}

impl Codec for Lj {
    const METHOD: &'static str = "lj_md";

    fn global_record(g: &LjGlobal) -> Value {
        json!({"rc": g.rc, "D": g.domain, "dt": g.dt, "T": g.t_end, "t": g.t})
    }

    fn global_array(g: &LjGlobal) -> Value {
        json!([g.rc, g.domain, g.dt, g.t_end, g.t])
    }

    fn particle_record(p: &LjParticle) -> Value {
        json!([p.x, p.v, p.a])
    }
}

impl Codec for Tri {
    const METHOD: &'static str = "triangulation";

    fn global_record(g: &TriGlobal) -> Value {
        json!({"T": g.t_end, "t": g.t})
    }

    fn global_array(g: &TriGlobal) -> Value {
        json!([g.t_end, g.t])
    }

    fn particle_record(p: &TriParticle) -> Value {
        json!([p.iota, p.verts, p.beta, p.gamma])
    }
}

impl Codec for Gauss {
    const METHOD: &'static str = "gauss_elim";

    fn global_record(g: &GaussGlobal) -> Value {
        json!({"N": g.dim, "m": g.col, "n": g.row})
    }

    fn global_array(g: &GaussGlobal) -> Value {
        json!([g.dim, g.col, g.row])
    }

    fn particle_record(p: &RowParticle) -> Value {
        json!([p.a, p.b, p.mu])
    }
}

/// A loaded initial state, tagged by method.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Dem(State<DemParticle, DemGlobal>),
    Pse(State<PseParticle, PseGlobal>),
    Lj(State<LjParticle, LjGlobal>),
    Tri(State<TriParticle, TriGlobal>),
    Gauss(State<RowParticle, GaussGlobal>),
}

/// A validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub instance: Instance,
    pub trace_every: usize,
    pub max_steps: Option<usize>,
}

fn decode<T: for<'de> Deserialize<'de>>(what: &str, v: &Value) -> Result<T, CliError> {
    T::deserialize(v).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

fn decode_particles<T: for<'de> Deserialize<'de>>(ps: &[Value]) -> Result<Vec<T>, CliError> {
    ps.iter()
        .enumerate()
        .map(|(j, p)| decode(&format!("particles[{j}]"), p))
        .collect()
}

fn finite(values: impl IntoIterator<Item = f64>, field: &str) -> Result<(), CliError> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(CliError::InvariantViolation { field: field.into(), reason: "values must be finite".into() })
    }
}

/// Parses and validates a configuration document.
pub fn load_instance(text: &str) -> Result<Loaded, CliError> {
    let cfg: RunConfig = serde_json::from_str(text)?;
    from_config(&cfg)
}

pub fn from_config(cfg: &RunConfig) -> Result<Loaded, CliError> {
    let instance = match cfg.method.as_str() {
        "dem_collision" => {
            let g: DemGlobalRec = decode("global", &cfg.global)?;
            let global = DemGlobal { d: g.d, t: g.t, dt: g.dt, t_end: g.t_end };
            let particles: Vec<DemParticle> = decode_particles::<(f64, f64)>(&cfg.particles)?
                .into_iter()
                .map(|(x, v)| DemParticle::new(x, v))
                .collect();
            global.validate().map_err(CliError::invariant)?;
            dem::validate_particles(&particles).map_err(CliError::invariant)?;
            Instance::Dem(State::new(global, particles))
        }
        "pse_diffusion" => {
            let g: PseGlobalRec = decode("global", &cfg.global)?;
            let global = PseGlobal {
                diffusivity: g.diffusivity,
                h: g.h,
                eps: g.eps,
                rc: g.rc,
                dt: g.dt,
                t_end: g.t_end,
                t: g.t,
            };
            let particles: Vec<PseParticle> = decode_particles::<(f64, f64, f64)>(&cfg.particles)?
                .into_iter()
                .map(|(x, w, dw)| PseParticle { x, w, dw })
                .collect();
            global.validate().map_err(CliError::invariant)?;
            finite(particles.iter().flat_map(|p| [p.x, p.w, p.dw]), "particles")?;
            Instance::Pse(State::new(global, particles))
        }
        "lj_md" => {
            let g: LjGlobalRec = decode("global", &cfg.global)?;
            let global = LjGlobal { rc: g.rc, domain: g.domain, dt: g.dt, t_end: g.t_end, t: g.t };
            let particles: Vec<LjParticle> = decode_particles::<(f64, f64, f64)>(&cfg.particles)?
                .into_iter()
                .map(|(x, v, a)| LjParticle { x, v, a })
                .collect();
            global.validate().map_err(CliError::invariant)?;
            lj::validate_particles(&particles, global.domain).map_err(CliError::invariant)?;
            Instance::Lj(State::new(global, particles))
        }
        "triangulation" => {
            let g: TriGlobalRec = decode("global", &cfg.global)?;
            let global = TriGlobal { t_end: g.t_end, t: g.t };
            type Rec = (usize, [[f64; 2]; 3], [i64; 3], [u8; 3]);
            let particles: Vec<TriParticle> = decode_particles::<Rec>(&cfg.particles)?
                .into_iter()
                .map(|(iota, verts, beta, gamma)| TriParticle { iota, verts, beta, gamma })
                .collect();
            tri::validate_particles(&particles).map_err(CliError::invariant)?;
            finite(particles.iter().flat_map(|p| p.verts.into_iter().flatten()), "particles")?;
            Instance::Tri(State::new(global, particles))
        }
        "gauss_elim" => {
            let g: GaussGlobalRec = decode("global", &cfg.global)?;
            let global = GaussGlobal { dim: g.dim, col: g.m, row: g.n };
            let particles: Vec<RowParticle> = decode_particles::<(Vec<f64>, f64, usize)>(&cfg.particles)?
                .into_iter()
                .map(|(a, b, mu)| RowParticle { a, b, mu })
                .collect();
            global.validate().map_err(CliError::invariant)?;
            gauss::validate_particles(&particles, global.dim).map_err(CliError::invariant)?;
            Instance::Gauss(State::new(global, particles))
        }
        other => return Err(CliError::UnknownMethod(other.to_string())),
    };
    Ok(Loaded { instance, trace_every: cfg.trace_every, max_steps: cfg.max_steps })
}

fn config_of<M: Codec>(state: &State<M::Particle, M::Global>, trace_every: usize, max_steps: Option<usize>) -> RunConfig {
    RunConfig {
        method: M::METHOD.to_string(),
        global: M::global_record(&state.global),
        particles: state.particles.iter().map(M::particle_record).collect(),
        trace_every,
        max_steps,
    }
}

impl Loaded {
    pub fn to_config(&self) -> RunConfig {
        let (te, ms) = (self.trace_every, self.max_steps);
        match &self.instance {
            Instance::Dem(s) => config_of::<Dem>(s, te, ms),
            Instance::Pse(s) => config_of::<Pse>(s, te, ms),
            Instance::Lj(s) => config_of::<Lj>(s, te, ms),
            Instance::Tri(s) => config_of::<Tri>(s, te, ms),
            Instance::Gauss(s) => config_of::<Gauss>(s, te, ms),
        }
    }

    /// Configuration document with one particle per line.
    pub fn to_json(&self) -> String {
        let cfg = self.to_config();
        let compact = |v: &Value| serde_json::to_string(v).expect("config values are finite");
        let mut text = format!("{{\n  \"method\": {},\n  \"global\": {},\n  \"particles\": [", compact(&json!(cfg.method)), compact(&cfg.global));
        for (j, p) in cfg.particles.iter().enumerate() {
            text.push_str(if j == 0 { "\n    " } else { ",\n    " });
            text.push_str(&compact(p));
        }
        if !cfg.particles.is_empty() {
            text.push_str("\n  ");
        }
        text.push_str(&format!("],\n  \"trace_every\": {}", cfg.trace_every));
        if let Some(m) = cfg.max_steps {
            text.push_str(&format!(",\n  \"max_steps\": {m}"));
        }
        text.push_str("\n}\n");
        text
    }
}

impl Instance {
    pub fn method_name(&self) -> &'static str {
        match self {
            Instance::Dem(_) => Dem::METHOD,
            Instance::Pse(_) => Pse::METHOD,
            Instance::Lj(_) => Lj::METHOD,
            Instance::Tri(_) => Tri::METHOD,
            Instance::Gauss(_) => Gauss::METHOD,
        }
    }
}

/// Method definitions for the cut-off methods honor `search`; the others
/// have a single neighborhood.
pub fn dem_def(search: NeighborSearch) -> Dem {
    Dem::with_search(search)
}

pub fn pse_def(search: NeighborSearch) -> Pse {
    Pse::with_search(search)
}

pub fn lj_def(search: NeighborSearch) -> Lj {
    Lj::with_search(search)
}

pub fn gauss_def(state: &State<RowParticle, GaussGlobal>) -> Gauss {
    gauss::gauss_method(state.global.dim)
}

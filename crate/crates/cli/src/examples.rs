//! Built-in reference instances, as emitted by `pm gen`.

use pm_core::methods::{dem, gauss, lj, pse, tri};

use crate::config::{Instance, Loaded};
use crate::CliError;

pub const EXAMPLES: [&str; 5] = ["dem", "pse", "lj", "tri", "gauss"];

pub fn example(name: &str) -> Result<Loaded, CliError> {
    let (instance, trace_every) = match name {
        "dem" => (Instance::Dem(dem::reference_instance()), 1),
        "pse" => (Instance::Pse(pse::reference_instance()), 10),
        "lj" => (Instance::Lj(lj::reference_instance()), 1000),
        "tri" => (Instance::Tri(tri::reference_instance()), 1),
        "gauss" => (Instance::Gauss(gauss::reference_instance()), 1),
        other => {
            return Err(CliError::Usage(format!(
                "unknown example `{other}` (expected one of {})",
                EXAMPLES.join(", ")
            )))
        }
    };
    Ok(Loaded { instance, trace_every, max_steps: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::load_instance;

    #[test]
    fn examples_round_trip_through_config() {
        for name in EXAMPLES {
            let l = example(name).unwrap();
            assert_eq!(load_instance(&l.to_json()).unwrap(), l, "{name}");
        }
        assert!(example("sph").is_err());
    }
}

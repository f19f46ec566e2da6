//! Scenario configuration: a TOML document describing the field, the test
//! particle, the initial state, and the integration parameters.
//!
//! Unknown keys are rejected; constraint violations name the offending
//! field and the bound.

use serde::Deserialize;

use unipot_core::{CatalogSpec, Event, MotionModel, PhysicalConstants};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub field: FieldDoc,
    #[serde(default)]
    pub particle: ParticleDoc,
    #[serde(default)]
    pub initial: InitialDoc,
    #[serde(default = "default_units")]
    pub units: String,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default = "default_dtau")]
    pub dtau: f64,
    #[serde(default = "default_n_steps")]
    pub n_steps: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<String>,
}

fn default_units() -> String {
    "scaled".to_string()
}

fn default_model() -> String {
    "full".to_string()
}

fn default_dtau() -> f64 {
    1e-3
}

fn default_n_steps() -> u64 {
    1000
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub kind: String,
    #[serde(default)]
    pub mass: Option<f64>,
    #[serde(default)]
    pub charge: Option<f64>,
    #[serde(default)]
    pub omega: Option<f64>,
    #[serde(default)]
    pub velocity: Option<[f64; 3]>,
    #[serde(default)]
    pub accel: Option<[f64; 3]>,
    #[serde(default)]
    pub children: Option<Vec<FieldDoc>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleDoc {
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default)]
    pub charge: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for ParticleDoc {
    fn default() -> Self {
        ParticleDoc {
            mass: 1.0,
            charge: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialDoc {
    #[serde(default = "default_position")]
    pub position: [f64; 3],
    #[serde(default)]
    pub velocity: [f64; 3],
    #[serde(default)]
    pub time: f64,
}

fn default_position() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}

impl Default for InitialDoc {
    fn default() -> Self {
        InitialDoc {
            position: default_position(),
            velocity: [0.0; 3],
            time: 0.0,
        }
    }
}

/// A validated scenario, ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub field: CatalogSpec,
    pub particle_mass: f64,
    pub particle_charge: f64,
    pub initial_event: Event,
    pub initial_velocity: [f64; 3],
    pub model: MotionModel,
    pub constants: PhysicalConstants,
    pub dtau: f64,
    pub n_steps: usize,
    pub output: Option<String>,
}

pub fn parse_doc(text: &str) -> Result<ScenarioDoc, ConfigError> {
    toml::from_str(text).map_err(|e| {
        // single-line diagnostic
        ConfigError(e.to_string().replace('\n', " ").trim().to_string())
    })
}

fn field_spec(doc: &FieldDoc, path: &str) -> Result<CatalogSpec, ConfigError> {
    let forbid = |cond: bool, name: &str| -> Result<(), ConfigError> {
        if cond {
            err(format!("{path}.{name}: not a parameter of kind '{}'", doc.kind))
        } else {
            Ok(())
        }
    };
    let spec = match doc.kind.as_str() {
        "point_mass" => {
            forbid(doc.charge.is_some(), "charge")?;
            forbid(doc.omega.is_some(), "omega")?;
            forbid(doc.velocity.is_some(), "velocity")?;
            forbid(doc.accel.is_some(), "accel")?;
            forbid(doc.children.is_some(), "children")?;
            let mass = doc
                .mass
                .ok_or_else(|| ConfigError(format!("{path}.mass: required for point_mass")))?;
            CatalogSpec::PointMass { mass }
        }
        "point_charge" => {
            forbid(doc.mass.is_some(), "mass")?;
            forbid(doc.omega.is_some(), "omega")?;
            forbid(doc.velocity.is_some(), "velocity")?;
            forbid(doc.accel.is_some(), "accel")?;
            forbid(doc.children.is_some(), "children")?;
            let charge = doc
                .charge
                .ok_or_else(|| ConfigError(format!("{path}.charge: required for point_charge")))?;
            CatalogSpec::PointCharge { charge }
        }
        "rotating_frame" | "imaginary_rotation" => {
            forbid(doc.mass.is_some(), "mass")?;
            forbid(doc.charge.is_some(), "charge")?;
            forbid(doc.velocity.is_some(), "velocity")?;
            forbid(doc.accel.is_some(), "accel")?;
            forbid(doc.children.is_some(), "children")?;
            let omega = doc
                .omega
                .ok_or_else(|| ConfigError(format!("{path}.omega: required for {}", doc.kind)))?;
            if doc.kind == "rotating_frame" {
                CatalogSpec::RotatingFrame { omega }
            } else {
                CatalogSpec::ImaginaryRotation { omega }
            }
        }
        "uniform_motion" => {
            forbid(doc.mass.is_some(), "mass")?;
            forbid(doc.charge.is_some(), "charge")?;
            forbid(doc.omega.is_some(), "omega")?;
            forbid(doc.accel.is_some(), "accel")?;
            forbid(doc.children.is_some(), "children")?;
            let velocity = doc.velocity.ok_or_else(|| {
                ConfigError(format!("{path}.velocity: required for uniform_motion"))
            })?;
            CatalogSpec::UniformMotion { velocity }
        }
        "uniform_gravity" => {
            forbid(doc.mass.is_some(), "mass")?;
            forbid(doc.charge.is_some(), "charge")?;
            forbid(doc.omega.is_some(), "omega")?;
            forbid(doc.velocity.is_some(), "velocity")?;
            forbid(doc.children.is_some(), "children")?;
            let accel = doc.accel.ok_or_else(|| {
                ConfigError(format!("{path}.accel: required for uniform_gravity"))
            })?;
            CatalogSpec::UniformGravity { accel }
        }
        "product" => {
            forbid(doc.mass.is_some(), "mass")?;
            forbid(doc.charge.is_some(), "charge")?;
            forbid(doc.omega.is_some(), "omega")?;
            forbid(doc.velocity.is_some(), "velocity")?;
            forbid(doc.accel.is_some(), "accel")?;
            let children = doc.children.as_ref().ok_or_else(|| {
                ConfigError(format!("{path}.children: required for product"))
            })?;
            if children.len() < 2 {
                return err(format!("{path}.children: product needs at least 2 children"));
            }
            let specs = children
                .iter()
                .enumerate()
                .map(|(i, c)| field_spec(c, &format!("{path}.children[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            CatalogSpec::Product(specs)
        }
        other => {
            return err(format!(
                "{path}.kind: unknown kind '{other}' (expected point_mass, point_charge, \
                 rotating_frame, uniform_motion, uniform_gravity, imaginary_rotation, product)"
            ))
        }
    };
    Ok(spec)
}

pub fn validate(doc: &ScenarioDoc) -> Result<Scenario, ConfigError> {
    let constants = match doc.units.as_str() {
        "scaled" => PhysicalConstants::scaled(),
        "si" => PhysicalConstants::si(),
        other => return err(format!("units: unknown unit system '{other}' (expected si|scaled)")),
    };
    let model = match doc.model.as_str() {
        "newtonian" => MotionModel::Newtonian,
        "linear" => MotionModel::Linear,
        "full" => MotionModel::Full,
        other => {
            return err(format!(
                "model: unknown model '{other}' (expected newtonian|linear|full)"
            ))
        }
    };
    if !(doc.dtau > 0.0 && doc.dtau.is_finite()) {
        return err("dtau: must be positive and finite");
    }
    if doc.n_steps < 1 {
        return err("n_steps: must be at least 1");
    }
    let field = field_spec(&doc.field, "field")?;
    field.validate(&constants).map_err(|e| match e {
        unipot_core::Error::MultipleMovers => ConfigError(
            "field.children: unsupported composition (at most one moving constituent)".into(),
        ),
        other => ConfigError(format!("field: {other}")),
    })?;
    if !(doc.particle.mass > 0.0 && doc.particle.mass.is_finite()) {
        return err("particle.mass: must be positive and finite");
    }
    if !doc.particle.charge.is_finite() {
        return err("particle.charge: must be finite");
    }
    let speed = doc
        .initial
        .velocity
        .iter()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt();
    if speed >= constants.c {
        return err(format!(
            "initial.velocity: speed {speed:e} must be below c = {:e}",
            constants.c
        ));
    }
    if doc.initial.position.iter().any(|x| !x.is_finite()) || !doc.initial.time.is_finite() {
        return err("initial.position: components must be finite");
    }
    Ok(Scenario {
        field,
        particle_mass: doc.particle.mass,
        particle_charge: doc.particle.charge,
        initial_event: Event::new(
            doc.initial.position[0],
            doc.initial.position[1],
            doc.initial.position[2],
            doc.initial.time,
        ),
        initial_velocity: doc.initial.velocity,
        model,
        constants,
        dtau: doc.dtau,
        n_steps: doc.n_steps as usize,
        output: doc.output.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_scenario(text: &str) -> Result<Scenario, ConfigError> {
        validate(&parse_doc(text)?)
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let s = parse_scenario("[field]\nkind = \"point_mass\"\nmass = 1.0\n").unwrap();
        assert_eq!(s.model, MotionModel::Full);
        assert_eq!(s.constants, PhysicalConstants::scaled());
        assert_eq!(s.n_steps, 1000);
        assert_eq!(s.particle_mass, 1.0);
        assert_eq!(s.initial_event.x, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn superluminal_initial_velocity_names_the_field() {
        let text = "[field]\nkind = \"point_mass\"\nmass = 1.0\n[initial]\nvelocity = [2.0, 0.0, 0.0]\n";
        let e = parse_scenario(text).unwrap_err();
        assert!(e.0.contains("initial.velocity"), "{}", e.0);
    }

    #[test]
    fn two_moving_children_are_rejected() {
        let text = r#"
[field]
kind = "product"

[[field.children]]
kind = "rotating_frame"
omega = 0.1

[[field.children]]
kind = "uniform_motion"
velocity = [0.1, 0.0, 0.0]
"#;
        let e = parse_scenario(text).unwrap_err();
        assert!(e.0.contains("unsupported composition"), "{}", e.0);
    }

    #[test]
    fn unknown_keys_are_listed() {
        let text = "[field]\nkind = \"point_mass\"\nmass = 1.0\nbogus = 3\n";
        let e = parse_scenario(text).unwrap_err();
        assert!(e.0.contains("bogus"), "{}", e.0);
    }

    #[test]
    fn wrong_parameter_for_kind_is_rejected() {
        let text = "[field]\nkind = \"rotating_frame\"\nomega = 0.1\nmass = 1.0\n";
        let e = parse_scenario(text).unwrap_err();
        assert!(e.0.contains("field.mass"), "{}", e.0);
    }

    #[test]
    fn nested_product_parses() {
        let text = r#"
dtau = 0.01
n_steps = 10

[field]
kind = "product"

[[field.children]]
kind = "point_mass"
mass = 1e-3

[[field.children]]
kind = "point_charge"
charge = 1e-3
"#;
        let s = parse_scenario(text).unwrap();
        match s.field {
            CatalogSpec::Product(ref children) => assert_eq!(children.len(), 2),
            _ => panic!("expected product"),
        }
    }
}

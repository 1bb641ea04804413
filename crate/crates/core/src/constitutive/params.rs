use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::models::{Becker, Bazant, BlatzKo, ExpHencky, Hencky, MooneyRivlinTc, NeoLog, ValanisLandel};
use super::ConstitutiveModel;
use crate::error::{Error, Result};

/// Model file contents: `{"model": "hencky", "params": {"mu": 1.0, "lambda": 1.0}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub model: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl ModelSpec {
    pub fn new(model: impl Into<String>) -> Self {
        Self {
            model: model.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ModelFile(e.to_string()))
    }

    pub fn build(&self) -> Result<Box<dyn ConstitutiveModel>> {
        build_model(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamInfo {
    pub name: &'static str,
    pub default: Option<f64>,
    pub description: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub params: Vec<ParamInfo>,
}

const fn param(name: &'static str, default: Option<f64>, description: &'static str) -> ParamInfo {
    ParamInfo {
        name,
        default,
        description,
    }
}

/// Every model constructible by name, with its parameters and defaults.
pub fn catalogue() -> Vec<CatalogueEntry> {
    const MU: ParamInfo = param("mu", Some(1.0), "shear modulus");
    vec![
        CatalogueEntry {
            name: "hencky",
            description: "mu |log U|^2 + lambda/2 (tr log U)^2",
            params: vec![
                MU,
                param("lambda", Some(0.0), "first Lame parameter"),
                param("kappa", None, "bulk modulus, alternative to lambda"),
            ],
        },
        CatalogueEntry {
            name: "exp-hencky",
            description: "mu/k exp(k |dev log V|^2) + kappa/(2 k_hat) exp(k_hat (tr log V)^2)",
            params: vec![
                MU,
                param("kappa", Some(1.0), "bulk modulus"),
                param("k", Some(ExpHencky::DEFAULT_K), "isochoric exponent"),
                param("k_hat", Some(ExpHencky::DEFAULT_K_HAT), "volumetric exponent"),
            ],
        },
        CatalogueEntry {
            name: "bazant",
            description: "mu/4 sum (lambda_i^2 - lambda_i^-2)^2; small-strain shear modulus 4 mu",
            params: vec![MU],
        },
        CatalogueEntry {
            name: "blatz-ko",
            description: "mu/2 (I1 + 2/sqrt(I3) - 5)",
            params: vec![MU],
        },
        CatalogueEntry {
            name: "neo-log",
            description: "mu/2 (I1 - log I3)",
            params: vec![MU],
        },
        CatalogueEntry {
            name: "mooney-rivlin-tc",
            description: "mu/4 ((I1 I3^-1/3 - 3) + (I2 I3^-2/3 - 3)) + kappa/2 (sqrt(I3) - 1)^2",
            params: vec![MU, param("kappa", Some(0.0), "volumetric modulus (0 disables the term)")],
        },
        CatalogueEntry {
            name: "valanis-landel-becker",
            description: "sum 2 mu (lambda_i (log lambda_i - 1) + 1)",
            params: vec![MU],
        },
        CatalogueEntry {
            name: "becker",
            description: "Biot stress 2 mu log U + lambda tr(log U) id (no energy)",
            params: vec![MU, param("lambda", Some(0.0), "first Lame parameter")],
        },
    ]
}

/// Builds a model, rejecting unknown names and parameters.
pub fn build_model(spec: &ModelSpec) -> Result<Box<dyn ConstitutiveModel>> {
    let entry = catalogue()
        .into_iter()
        .find(|e| e.name == spec.model)
        .ok_or_else(|| Error::UnknownModel(spec.model.clone()))?;
    for name in spec.params.keys() {
        if !entry.params.iter().any(|p| p.name == name) {
            return Err(Error::UnknownParameter {
                model: spec.model.clone(),
                name: name.clone(),
            });
        }
    }
    let get = |name: &str| -> f64 {
        spec.params.get(name).copied().unwrap_or_else(|| {
            entry
                .params
                .iter()
                .find(|p| p.name == name)
                .and_then(|p| p.default)
                .unwrap_or(f64::NAN)
        })
    };
    let mu = get("mu");
    Ok(match entry.name {
        "hencky" => match (spec.params.get("lambda"), spec.params.get("kappa")) {
            (Some(_), Some(&kappa)) => {
                return Err(Error::InvalidParameter {
                    name: "kappa".to_string(),
                    value: kappa,
                    reason: "give either lambda or kappa, not both",
                })
            }
            (None, Some(&kappa)) => Box::new(Hencky::with_kappa(mu, kappa)?),
            _ => Box::new(Hencky::new(mu, get("lambda"))?),
        },
        "exp-hencky" => Box::new(ExpHencky::new(mu, get("kappa"), get("k"), get("k_hat"))?),
        "bazant" => Box::new(Bazant::new(mu)?),
        "blatz-ko" => Box::new(BlatzKo::new(mu)?),
        "neo-log" => Box::new(NeoLog::new(mu)?),
        "mooney-rivlin-tc" => Box::new(MooneyRivlinTc::new(mu, get("kappa"))?),
        "valanis-landel-becker" => Box::new(ValanisLandel::becker_energy(mu)?),
        "becker" => Box::new(Becker::new(mu, get("lambda"))?),
        other => return Err(Error::UnknownModel(other.to_string())),
    })
}

/// One instance of each catalogue model with representative parameters.
pub fn default_models() -> Vec<Box<dyn ConstitutiveModel>> {
    let specs = [
        ModelSpec::new("hencky").with("mu", 1.0).with("lambda", 1.0),
        ModelSpec::new("exp-hencky").with("mu", 1.0).with("kappa", 1.0),
        ModelSpec::new("bazant").with("mu", 1.0),
        ModelSpec::new("blatz-ko").with("mu", 1.0),
        ModelSpec::new("neo-log").with("mu", 1.0),
        ModelSpec::new("mooney-rivlin-tc").with("mu", 1.0).with("kappa", 2.0),
        ModelSpec::new("valanis-landel-becker").with("mu", 1.0),
        ModelSpec::new("becker").with("mu", 1.0).with("lambda", 3.0),
    ];
    specs
        .iter()
        .map(|s| build_model(s).expect("catalogue defaults are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_model_file() {
        let spec = ModelSpec::from_json(r#"{"model": "hencky", "params": {"mu": 1, "lambda": 1}}"#).unwrap();
        let m = spec.build().unwrap();
        assert_eq!(m.name(), "hencky");
        assert_eq!(m.parameters(), vec![("mu".to_string(), 1.0), ("lambda".to_string(), 1.0)]);
    }

    #[test]
    fn rejects_unknown_keys_and_params() {
        assert!(matches!(
            ModelSpec::from_json(r#"{"model": "hencky", "params": {}, "extra": 1}"#),
            Err(Error::ModelFile(_))
        ));
        let spec = ModelSpec::new("neo-log").with("kappa", 1.0);
        assert!(matches!(build_model(&spec), Err(Error::UnknownParameter { .. })));
        assert!(matches!(build_model(&ModelSpec::new("ogden")), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn hencky_accepts_kappa_but_not_both() {
        let m = build_model(&ModelSpec::new("hencky").with("kappa", 5.0 / 3.0)).unwrap();
        let lambda = m.parameters()[1].1;
        assert!((lambda - 1.0).abs() < 1e-15);
        let both = ModelSpec::new("hencky").with("kappa", 1.0).with("lambda", 1.0);
        assert!(matches!(build_model(&both), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn invalid_values_are_reported() {
        let spec = ModelSpec::new("bazant").with("mu", -2.0);
        assert!(matches!(build_model(&spec), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn defaults_cover_the_catalogue() {
        let names: Vec<_> = default_models().iter().map(|m| m.name().to_string()).collect();
        let cat: Vec<_> = catalogue().iter().map(|e| e.name.to_string()).collect();
        assert_eq!(names, cat);
    }
}

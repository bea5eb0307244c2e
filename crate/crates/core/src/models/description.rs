//! JSON model descriptions.
//!
//! ```json
//! {"type": "may_oster", "n": 2, "B": [0.5, 0.4], "A": [[1, 0.2], [0.3, 1]]}
//! {"type": "leslie_gower", "n": 2, "C": [1.3, 1.2], "A": [[1, 0.5], [0.4, 1]]}
//! {"type": "neural_net", "n": 2, "B": [0.5, 0.4], "A": [[1, 0.2], [0.3, 1]], "gamma": 1.0}
//! {"type": "periodic_lv", "n": 1,
//!  "fourier": {"B": [{"const": 1.0, "cos": [0.3]}], "A": [[{"const": 1.0}]]},
//!  "steps_per_period": 256}
//! ```
//!
//! Unknown fields are rejected. `steps_per_period` is optional (default 256).

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CompetitionModel, LeslieGower, MayOster, NeuralNet, PoincareModel};
use crate::error::{Error, Result};
use crate::odeflow::{FourierSeries, IntegrationConfig, PeriodicSystem};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierCoefficients {
    #[serde(rename = "B")]
    pub b: Vec<FourierSeries>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<FourierSeries>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    MayOster {
        n: usize,
        #[serde(rename = "B")]
        b: Vec<f64>,
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
    },
    LeslieGower {
        n: usize,
        #[serde(rename = "C")]
        c: Vec<f64>,
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
    },
    NeuralNet {
        n: usize,
        #[serde(rename = "B")]
        b: Vec<f64>,
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        gamma: f64,
    },
    PeriodicLv {
        n: usize,
        fourier: FourierCoefficients,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        steps_per_period: Option<usize>,
    },
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn n(&self) -> usize {
        match self {
            ModelSpec::MayOster { n, .. }
            | ModelSpec::LeslieGower { n, .. }
            | ModelSpec::NeuralNet { n, .. }
            | ModelSpec::PeriodicLv { n, .. } => *n,
        }
    }

    pub fn periodic_system(&self) -> Option<Result<PeriodicSystem>> {
        match self {
            ModelSpec::PeriodicLv { fourier, .. } => {
                Some(PeriodicSystem::new(fourier.b.clone(), fourier.a.clone()))
            }
            _ => None,
        }
    }

    pub fn integration_config(&self) -> Result<IntegrationConfig> {
        match self {
            ModelSpec::PeriodicLv { steps_per_period: Some(s), .. } => IntegrationConfig::new(*s),
            _ => Ok(IntegrationConfig::default()),
        }
    }

    /// Validates every parameter and builds the model.
    pub fn build(&self) -> Result<Box<dyn CompetitionModel>> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidParameter { field: "n".into(), reason: "must be >= 1".into() });
        }
        let check_len = |field: &str, len: usize| {
            if len != n {
                Err(Error::InvalidParameter {
                    field: field.into(),
                    reason: format!("expected {n} entries to match n, got {len}"),
                })
            } else {
                Ok(())
            }
        };
        Ok(match self {
            ModelSpec::MayOster { b, a, .. } => {
                check_len("B", b.len())?;
                check_len("A", a.len())?;
                Box::new(MayOster::new(b.clone(), a.clone())?)
            }
            ModelSpec::LeslieGower { c, a, .. } => {
                check_len("C", c.len())?;
                check_len("A", a.len())?;
                Box::new(LeslieGower::new(c.clone(), a.clone())?)
            }
            ModelSpec::NeuralNet { b, a, gamma, .. } => {
                check_len("B", b.len())?;
                check_len("A", a.len())?;
                Box::new(NeuralNet::new(b.clone(), a.clone(), *gamma)?)
            }
            ModelSpec::PeriodicLv { fourier, .. } => {
                check_len("fourier.B", fourier.b.len())?;
                check_len("fourier.A", fourier.a.len())?;
                let system = PeriodicSystem::new(fourier.b.clone(), fourier.a.clone())?;
                Box::new(PoincareModel::new(system, self.integration_config()?))
            }
        })
    }
}

/// Reads and validates a model file.
pub fn load_model(path: &Path) -> Result<(ModelSpec, Box<dyn CompetitionModel>)> {
    let text = std::fs::read_to_string(path)?;
    let desc = ModelSpec::from_json(&text)?;
    let model = desc.build()?;
    Ok((desc, model))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_family() {
        let may = ModelSpec::from_json(r#"{"type":"may_oster","n":2,"B":[0.5,0.4],"A":[[1,0.2],[0.3,1]]}"#)
            .unwrap();
        assert_eq!(may.build().unwrap().name(), "may_oster");
        let lg = ModelSpec::from_json(r#"{"type":"leslie_gower","n":1,"C":[1.3],"A":[[1]]}"#).unwrap();
        assert_eq!(lg.build().unwrap().name(), "leslie_gower");
        let nn = ModelSpec::from_json(r#"{"type":"neural_net","n":1,"B":[0.5],"A":[[1]],"gamma":2}"#).unwrap();
        assert_eq!(nn.build().unwrap().name(), "neural_net");
        let lv = ModelSpec::from_json(
            r#"{"type":"periodic_lv","n":1,"fourier":{"B":[{"const":1.0,"cos":[0.3]}],"A":[[{"const":1.0}]]}}"#,
        )
        .unwrap();
        assert_eq!(lv.build().unwrap().name(), "periodic_lv");
    }

    #[test]
    fn rejects_unknown_and_missing_fields() {
        let err = ModelSpec::from_json(r#"{"type":"may_oster","n":1,"B":[0.5],"A":[[1]],"extra":1}"#)
            .unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
        let err = ModelSpec::from_json(r#"{"type":"may_oster","n":1,"A":[[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("`B`"), "{err}");
        assert!(ModelSpec::from_json(r#"{"type":"logistic","n":1}"#).is_err());
    }

    #[test]
    fn validation_names_field() {
        let desc = ModelSpec::from_json(r#"{"type":"may_oster","n":2,"B":[0.5,0.4],"A":[[-1,0.2],[0.3,1]]}"#)
            .unwrap();
        let err = desc.build().unwrap_err();
        assert!(err.to_string().contains("A[1][1]"), "{err}");
        let desc = ModelSpec::from_json(r#"{"type":"may_oster","n":3,"B":[0.5,0.4],"A":[[1,0.2],[0.3,1]]}"#)
            .unwrap();
        assert!(desc.build().unwrap_err().to_string().contains("B"));
    }
}

//! Plain-text (TOML) problem configuration.
//!
//! ```toml
//! gamma = 1.5
//! T = 1.0
//! builtin = 2          # one of 1, 2, 3
//! ```
//!
//! or a separable manufactured solution `u = Σ t^p g(x)`:
//!
//! ```toml
//! gamma = 1.5
//! alpha = 1.0
//! domain = [0.0, 1.0]
//! T = 1.0
//!
//! [[term]]
//! p = 2
//! g = "x*(1-x)"
//!
//! [[term]]
//! p = 1
//! g = "sin(pi*x)"
//! ```

use std::path::Path;

use serde::Deserialize;

use super::{builtin_example, ProblemSpec, SeparableSolution};
use crate::error::{Error, Result};
use crate::fractime::FractionalOrder;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub p: f64,
    pub g: String,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub gamma: f64,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub domain: Option<[f64; 2]>,
    #[serde(rename = "T", default)]
    pub horizon: Option<f64>,
    #[serde(default)]
    pub builtin: Option<u32>,
    #[serde(default, rename = "term")]
    pub terms: Vec<TermConfig>,
}

/// Where a problem comes from; rebuilt whenever `γ` changes, since the
/// source term depends on it.
#[derive(Debug, Clone)]
pub enum ProblemSource {
    Builtin { id: u32, horizon: f64 },
    Manufactured {
        solution: SeparableSolution,
        alpha: f64,
        domain: (f64, f64),
        horizon: f64,
    },
}

impl ProblemSource {
    pub fn builtin(id: u32) -> Self {
        ProblemSource::Builtin { id, horizon: 1.0 }
    }

    pub fn horizon(&self) -> f64 {
        match self {
            ProblemSource::Builtin { horizon, .. } | ProblemSource::Manufactured { horizon, .. } => {
                *horizon
            }
        }
    }

    pub fn set_horizon(&mut self, t: f64) {
        match self {
            ProblemSource::Builtin { horizon, .. } | ProblemSource::Manufactured { horizon, .. } => {
                *horizon = t
            }
        }
    }

    pub fn build(&self, gamma: FractionalOrder) -> Result<ProblemSpec> {
        let spec = match self {
            ProblemSource::Builtin { id, horizon } => {
                builtin_example(*id, gamma)?.with_horizon(*horizon)
            }
            ProblemSource::Manufactured { solution, alpha, domain, horizon } => solution
                .clone()
                .into_problem("manufactured", gamma, *alpha, *domain, *horizon)?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ProblemConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn gamma(&self) -> Result<FractionalOrder> {
        FractionalOrder::new(self.gamma)
    }

    pub fn source(&self) -> Result<ProblemSource> {
        let horizon = self.horizon.unwrap_or(1.0);
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::Config(format!("T must be positive, got {horizon}")));
        }
        match (self.builtin, self.terms.is_empty()) {
            (Some(_), false) => Err(Error::Config("give either 'builtin' or [[term]] entries, not both".into())),
            (None, true) => Err(Error::Config("need 'builtin' or at least one [[term]]".into())),
            (Some(id), true) => {
                if self.alpha.is_some() || self.domain.is_some() {
                    return Err(Error::Config(
                        "'alpha' and 'domain' are fixed by the built-in example".into(),
                    ));
                }
                if !(1..=3).contains(&id) {
                    return Err(Error::UnknownExample(id));
                }
                Ok(ProblemSource::Builtin { id, horizon })
            }
            (None, false) => {
                let terms = self
                    .terms
                    .iter()
                    .map(|t| Ok((t.p, t.g.parse()?)))
                    .collect::<Result<Vec<_>>>()?;
                let [a, b] = self.domain.unwrap_or([0.0, 1.0]);
                Ok(ProblemSource::Manufactured {
                    solution: SeparableSolution::new(terms)?,
                    alpha: self.alpha.unwrap_or(0.0),
                    domain: (a, b),
                    horizon,
                })
            }
        }
    }

    pub fn build(&self) -> Result<ProblemSpec> {
        self.source()?.build(self.gamma()?)
    }
}

//! Scenario files: JSON with every rational encoded as a string.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use pensim_core::metrics::apply_beta;
use pensim_core::rational::parse_rational;
use pensim_core::{
    simulate, simulate_transitioned, DemographyParams, Direction, PolicyScenario, SystemKind,
    SystemSpec, Trajectory, TransitionDirective,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub demography: DemographySection,
    pub system: SystemSection,
    pub horizon: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transition: Option<TransitionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_scenario: Option<BetaSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemographySection {
    pub a0: String,
    pub g: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub kind: KindName,
    pub gamma: String,
    #[serde(rename = "A")]
    pub assets: String,
    #[serde(default = "zero")]
    pub r_debt: String,
}

fn zero() -> String {
    "0".to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindName {
    P,
    C,
    CB,
}

impl From<KindName> for SystemKind {
    fn from(k: KindName) -> Self {
        match k {
            KindName::P => SystemKind::P,
            KindName::C => SystemKind::C,
            KindName::CB => SystemKind::CB,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSection {
    pub at: usize,
    pub direction: DirectionName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionName {
    P2cb,
    Cb2p,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaSection {
    pub beta: String,
    pub start: usize,
}

/// A scenario file after parsing and validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub spec: SystemSpec,
    pub horizon: usize,
    pub transition: Option<TransitionDirective>,
    pub beta: Option<PolicyScenario>,
}

fn rational(field: &str, value: &str) -> Result<pensim_core::Rational> {
    parse_rational(value).with_context(|| format!("field `{field}`"))
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed scenario file")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialises")
    }

    pub fn validate(&self) -> Result<Scenario> {
        let demography = DemographyParams::new(
            rational("demography.a0", &self.demography.a0)?,
            rational("demography.g", &self.demography.g)?,
        )?;
        let spec = SystemSpec::new(
            self.system.kind.into(),
            rational("system.gamma", &self.system.gamma)?,
            rational("system.A", &self.system.assets)?,
            rational("system.r_debt", &self.system.r_debt)?,
            demography,
        )?;
        if self.horizon < 1 {
            bail!("horizon must be at least 1");
        }
        let transition = self
            .transition
            .as_ref()
            .map(|t| {
                let direction = match t.direction {
                    DirectionName::P2cb => Direction::PtoCB,
                    DirectionName::Cb2p => Direction::CBtoP,
                };
                TransitionDirective::new(t.at, direction)
            })
            .transpose()?;
        let beta = self
            .beta_scenario
            .as_ref()
            .map(|b| -> Result<PolicyScenario> {
                Ok(PolicyScenario::new(
                    rational("beta_scenario.beta", &b.beta)?,
                    b.start,
                )?)
            })
            .transpose()?;
        let scenario = Scenario {
            spec,
            horizon: self.horizon,
            transition,
            beta,
        };
        // Surfaces every module-level precondition at load time.
        scenario.trajectory()?;
        Ok(scenario)
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        ScenarioFile::from_json(&text)?.validate()
    }

    pub fn trajectory(&self) -> Result<Trajectory> {
        Ok(match (&self.transition, &self.beta) {
            (Some(t), beta) => {
                simulate_transitioned(&self.spec, self.horizon, &[*t], beta.as_ref())?
            }
            (None, Some(beta)) => apply_beta(&self.spec, beta, self.horizon)?,
            (None, None) => simulate(&self.spec, self.horizon, None)?,
        })
    }
}

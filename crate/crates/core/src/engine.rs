//! Step-by-step simulation of Systems P, C and CB.
//!
//! The ledger is indexed by time. At time `i` the pensioners are generation `i`
//! and the workers are generation `i + 1`, so the contribution recorded at time
//! `i` is the one the per-generation tables attribute to generation `i + 1`.
//!
//! Every step runs in three phases:
//!
//! 1. interest on state debt: `state -= r_debt * max(0, -state)`;
//! 2. the pensioner generation is paid, from asset sales and/or the state;
//! 3. the worker generation contributes, either buying assets or paying in.
//!
//! Scaling is anchored on generations: generation `j` contributes
//! `s_j * a_j` (at time `j - 1`) and is promised `s_j * a_{j+1}` (at time `j`),
//! where `s_j = γ`, or `β·γ` for generations born after a policy scenario's
//! start time.

use std::fmt;

use num::{Signed, Zero};

use crate::demography::DemographyParams;
use crate::error::{Error, Result};
use crate::indexshares::ShareHoldings;
use crate::metrics::PolicyScenario;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemKind {
    /// Pay-as-you-go.
    P,
    /// Capital-funded.
    C,
    /// Capital-funded with state bonus.
    CB,
}

impl SystemKind {
    pub const ALL: [SystemKind; 3] = [SystemKind::P, SystemKind::C, SystemKind::CB];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::P => "P",
            SystemKind::C => "C",
            SystemKind::CB => "CB",
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which system to run, at what scale, against what state balance sheet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    kind: SystemKind,
    gamma: Rational,
    initial_assets: Rational,
    r_debt: Rational,
    demography: DemographyParams,
}

impl SystemSpec {
    pub fn new(
        kind: SystemKind,
        gamma: Rational,
        initial_assets: Rational,
        r_debt: Rational,
        demography: DemographyParams,
    ) -> Result<Self> {
        if !gamma.is_positive() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                reason: format!("must be positive, got {gamma}"),
            });
        }
        if r_debt.is_negative() {
            return Err(Error::InvalidParameter {
                name: "r_debt",
                reason: format!("must be non-negative, got {r_debt}"),
            });
        }
        Ok(Self {
            kind,
            gamma,
            initial_assets,
            r_debt,
            demography,
        })
    }

    /// γ = 1 and no debt interest.
    pub fn baseline(
        kind: SystemKind,
        initial_assets: Rational,
        demography: DemographyParams,
    ) -> Self {
        Self {
            kind,
            gamma: Rational::from_integer(1.into()),
            initial_assets,
            r_debt: Rational::zero(),
            demography,
        }
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn initial_assets(&self) -> &Rational {
        &self.initial_assets
    }

    pub fn r_debt(&self) -> &Rational {
        &self.r_debt
    }

    pub fn demography(&self) -> &DemographyParams {
        &self.demography
    }

    pub fn with_kind(&self, kind: SystemKind) -> Self {
        Self {
            kind,
            ..self.clone()
        }
    }

    pub fn with_gamma(&self, gamma: Rational) -> Result<Self> {
        Self::new(
            self.kind,
            gamma,
            self.initial_assets.clone(),
            self.r_debt.clone(),
            self.demography.clone(),
        )
    }

    pub fn with_r_debt(&self, r_debt: Rational) -> Result<Self> {
        Self::new(
            self.kind,
            self.gamma.clone(),
            self.initial_assets.clone(),
            r_debt,
            self.demography.clone(),
        )
    }

    pub(crate) fn require_no_debt_interest(&self, what: &'static str) -> Result<()> {
        if self.r_debt.is_zero() {
            Ok(())
        } else {
            Err(Error::DebtInterestNotSupported(what))
        }
    }
}

/// One time step of the ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub i: usize,
    /// System whose rules were applied at this step.
    pub regime: SystemKind,
    /// Paid by generation `i + 1`.
    pub contribution: Rational,
    /// Received by generation `i`, bonus included.
    pub benefit: Rational,
    /// State-paid part of the benefit.
    pub bonus: Rational,
    /// Part of the benefit financed by the pensioner selling its assets.
    pub asset_sale: Rational,
    /// Held by generation `i + 1` after the step.
    pub worker_assets_after: Rational,
    pub state_assets_after: Rational,
    /// Interest charged on state debt at the start of the step.
    pub debt_interest: Rational,
    pub shares: ShareHoldings,
}

/// Switch the running system to `to` from step `at` onward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeSwitch {
    pub at: usize,
    pub to: SystemKind,
}

/// A fully materialised ledger for steps `0..=horizon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    spec: SystemSpec,
    horizon: usize,
    scenario: Option<PolicyScenario>,
    switches: Vec<RegimeSwitch>,
    records: Vec<StepRecord>,
}

impl Trajectory {
    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn scenario(&self) -> Option<&PolicyScenario> {
        self.scenario.as_ref()
    }

    pub fn switches(&self) -> &[RegimeSwitch] {
        &self.switches
    }

    pub fn records(&self) -> &[StepRecord] {
        &self.records
    }

    pub fn record(&self, i: usize) -> Result<&StepRecord> {
        self.records.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            horizon: self.horizon,
        })
    }

    pub fn contribution_of(&self, i: usize) -> Result<&Rational> {
        self.record(i).map(|r| &r.contribution)
    }

    pub fn benefit_of(&self, i: usize) -> Result<&Rational> {
        self.record(i).map(|r| &r.benefit)
    }

    pub fn state_assets_after(&self, i: usize) -> Result<&Rational> {
        self.record(i).map(|r| &r.state_assets_after)
    }

    pub fn worker_assets_after(&self, i: usize) -> Result<&Rational> {
        self.record(i).map(|r| &r.worker_assets_after)
    }

    /// State assets at the start of step `i`, before debt interest.
    pub fn state_assets_before(&self, i: usize) -> Result<&Rational> {
        self.record(i)?;
        Ok(match i {
            0 => &self.spec.initial_assets,
            _ => &self.records[i - 1].state_assets_after,
        })
    }
}

/// Runs `spec` over steps `0..=horizon`, optionally under a β-scaling scenario.
pub fn simulate(
    spec: &SystemSpec,
    horizon: usize,
    scenario: Option<&PolicyScenario>,
) -> Result<Trajectory> {
    simulate_schedule(spec, horizon, scenario, &[])
}

/// Runs `spec`, changing the active system at each switch. Switches must be
/// strictly increasing in time and lie in `1..=horizon`.
pub fn simulate_schedule(
    spec: &SystemSpec,
    horizon: usize,
    scenario: Option<&PolicyScenario>,
    switches: &[RegimeSwitch],
) -> Result<Trajectory> {
    if horizon < 1 {
        return Err(Error::InvalidHorizon(horizon));
    }
    if let Some(s) = scenario {
        if s.start() < 1 || s.start() > horizon {
            return Err(Error::InvalidScenario(format!(
                "start {} outside 1..={horizon}",
                s.start()
            )));
        }
    }
    let mut last = 0;
    for sw in switches {
        if sw.at <= last || sw.at > horizon {
            return Err(Error::InvalidTransition(format!(
                "switch at {} must be increasing and within 1..={horizon}",
                sw.at
            )));
        }
        last = sw.at;
    }

    let gamma = spec.gamma.clone();
    let scaled_gamma = scenario.map(|s| s.beta() * &gamma);
    // Scale of generation `j`'s contribution and promised benefit.
    let generation_scale = |j: usize| -> Rational {
        match (scenario, &scaled_gamma) {
            (Some(s), Some(sg)) if j > s.start() => sg.clone(),
            _ => gamma.clone(),
        }
    };

    let cohorts: Vec<Rational> = spec.demography.cohorts().take(horizon + 2).collect();
    let mut regime = spec.kind;
    let mut pending = switches.iter().peekable();
    let mut state = spec.initial_assets.clone();
    // Assets held by the current pensioner generation.
    let mut held = Rational::zero();
    let mut records = Vec::with_capacity(horizon + 1);

    for i in 0..=horizon {
        if let Some(sw) = pending.next_if(|sw| sw.at == i) {
            regime = sw.to;
        }
        let working = &cohorts[i + 1];

        let debt_interest = if state.is_negative() {
            -(&spec.r_debt * &state)
        } else {
            Rational::zero()
        };
        state -= &debt_interest;

        let worker_scale = generation_scale(i + 1);
        let contribution = &worker_scale * working;
        let promised = generation_scale(i) * working;

        let asset_sale = held.clone();
        let (benefit, bonus, worker_after, shares) = match regime {
            SystemKind::P => {
                // Pure P routes the contribution straight to the pensioner. A
                // pensioner still holding CB assets is topped up by the state,
                // and the contribution goes to the state instead.
                let bonus = if held.is_zero() {
                    Rational::zero()
                } else {
                    &promised - &held
                };
                state += &contribution - &promised + &held;
                (
                    promised,
                    bonus,
                    Rational::zero(),
                    ShareHoldings::participants(worker_scale),
                )
            }
            SystemKind::C => {
                let benefit = held.clone();
                (
                    benefit,
                    Rational::zero(),
                    contribution.clone(),
                    ShareHoldings::none(),
                )
            }
            SystemKind::CB => {
                let bonus = &promised - &held;
                state -= &bonus;
                (
                    promised,
                    bonus,
                    contribution.clone(),
                    ShareHoldings::state(worker_scale),
                )
            }
        };

        held = worker_after.clone();
        records.push(StepRecord {
            i,
            regime,
            contribution,
            benefit,
            bonus,
            asset_sale,
            worker_assets_after: worker_after,
            state_assets_after: state.clone(),
            debt_interest,
            shares,
        });
    }

    Ok(Trajectory {
        spec: spec.clone(),
        horizon,
        scenario: scenario.cloned(),
        switches: switches.to_vec(),
        records,
    })
}

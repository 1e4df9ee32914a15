//! Index-share accounting.
//!
//! An index share is worth the chosen indicator at every step; here that is the
//! working population, so a share is worth `a_{i+1}` at step `i`. In System P the
//! workers buy the shares from the pensioners; in System CB the state holds them
//! and their growth in value pays the bonus. System C uses none.

use num::Zero;

use crate::demography::DemographyParams;
use crate::engine::Trajectory;
use crate::error::Result;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indicator {
    #[default]
    WorkingPopulation,
}

impl Indicator {
    pub fn value(self, params: &DemographyParams, i: usize) -> Rational {
        match self {
            Indicator::WorkingPopulation => params.cohort_size(i + 1),
        }
    }
}

/// Index shares outstanding after a step, by holder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareHoldings {
    /// Held by the generation that just contributed.
    pub participants: Rational,
    pub state: Rational,
}

impl ShareHoldings {
    pub fn none() -> Self {
        Self {
            participants: Rational::zero(),
            state: Rational::zero(),
        }
    }

    pub fn participants(amount: Rational) -> Self {
        Self {
            participants: amount,
            state: Rational::zero(),
        }
    }

    pub fn state(amount: Rational) -> Self {
        Self {
            participants: Rational::zero(),
            state: amount,
        }
    }

    pub fn total(&self) -> Rational {
        &self.participants + &self.state
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexShareLedger {
    pub indicator: Indicator,
    /// One entry per step `0..=T`.
    pub holdings: Vec<ShareHoldings>,
}

impl IndexShareLedger {
    pub fn totals(&self) -> impl Iterator<Item = Rational> + '_ {
        self.holdings.iter().map(ShareHoldings::total)
    }
}

/// Value of one index share at step `i`.
pub fn index_share_value(params: &DemographyParams, i: usize) -> Rational {
    Indicator::WorkingPopulation.value(params, i)
}

pub fn holdings_trace(traj: &Trajectory) -> IndexShareLedger {
    IndexShareLedger {
        indicator: Indicator::WorkingPopulation,
        holdings: traj.records().iter().map(|r| r.shares.clone()).collect(),
    }
}

/// A run of consecutive steps over which the share count was constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareSegment {
    pub from_step: usize,
    pub shares: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    /// The system runs with a constant α shares.
    Stable(Rational),
    /// Share count changed; each segment gives the count from a step onward.
    NotStable { segments: Vec<ShareSegment> },
}

impl Stability {
    pub fn alpha(&self) -> Option<&Rational> {
        match self {
            Stability::Stable(alpha) => Some(alpha),
            Stability::NotStable { .. } => None,
        }
    }
}

pub fn alpha_stability(traj: &Trajectory) -> Stability {
    let mut segments: Vec<ShareSegment> = Vec::new();
    for (step, total) in holdings_trace(traj).totals().enumerate() {
        if segments.last().is_none_or(|s| s.shares != total) {
            segments.push(ShareSegment {
                from_step: step,
                shares: total,
            });
        }
    }
    match segments.len() {
        1 => Stability::Stable(segments.pop().map(|s| s.shares).unwrap_or_default()),
        _ => Stability::NotStable { segments },
    }
}

/// State assets after step `i` plus the market value of the state's index shares.
pub fn total_state_position(traj: &Trajectory, i: usize) -> Result<Rational> {
    traj.spec()
        .require_no_debt_interest("total state position")?;
    let record = traj.record(i)?;
    let value = index_share_value(traj.spec().demography(), i);
    Ok(&record.state_assets_after + &record.shares.state * value)
}

//! Conventional sustainability metrics and the β-scaling scenario that makes
//! them disagree on equivalent systems.

use std::fmt;

use num::{One, Signed, Zero};

use crate::demography::DemographyParams;
use crate::engine::{simulate, SystemKind, SystemSpec, Trajectory};
use crate::error::{Error, Result};
use crate::indexshares::total_state_position;
use crate::rational::Rational;

/// Scale every contribution and benefit from time `start` onward by `beta`.
///
/// Scaling is anchored on generations: generation `start` still receives its
/// unscaled benefit, and every later generation contributes and receives
/// `beta` times the baseline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyScenario {
    beta: Rational,
    start: usize,
}

impl PolicyScenario {
    pub fn new(beta: Rational, start: usize) -> Result<Self> {
        if beta <= Rational::one() {
            return Err(Error::InvalidScenario(format!(
                "beta must exceed 1, got {beta}"
            )));
        }
        if start < 1 {
            return Err(Error::InvalidScenario(
                "start must be at least 1".to_string(),
            ));
        }
        Ok(Self { beta, start })
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn start(&self) -> usize {
        self.start
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnView {
    /// What the generation gets back, bonus included.
    Individual,
    /// Only what asset holdings or the direct PAYG transfer yield.
    Systemic,
}

/// Return of `generation` on its contribution: benefit at step `generation`
/// over contribution at step `generation - 1`, minus one.
pub fn rate_of_return(traj: &Trajectory, generation: usize, view: ReturnView) -> Result<Rational> {
    if generation == 0 {
        return Err(Error::UndefinedReturn(0));
    }
    let paid_in = &traj.record(generation - 1)?.contribution;
    let payout = traj.record(generation)?;
    if paid_in.is_zero() {
        return Err(Error::UndefinedReturn(generation));
    }
    let received = match view {
        ReturnView::Individual => payout.benefit.clone(),
        ReturnView::Systemic => &payout.benefit - &payout.bonus,
    };
    Ok(received / paid_in - Rational::one())
}

/// Runs `spec` under the scenario. Baseline debt-free setting only.
pub fn apply_beta(
    spec: &SystemSpec,
    scenario: &PolicyScenario,
    horizon: usize,
) -> Result<Trajectory> {
    spec.require_no_debt_interest("beta scaling")?;
    simulate(spec, horizon, Some(scenario))
}

/// Net pension-related cash flow of the state at step `i`, interest excluded.
///
/// Zero for balanced P and C, minus the bonus for CB, and plus the surplus
/// for P in the step a scale-up starts.
pub fn primary_balance(traj: &Trajectory, i: usize) -> Result<Rational> {
    let record = traj.record(i)?;
    let before = traj.state_assets_before(i)?;
    Ok(&record.state_assets_after - before + &record.debt_interest)
}

/// One-period financial balance of the pension system in isolation:
/// contributions not invested in assets minus pension claims not met by
/// asset sales or state bonuses.
pub fn ndc_balance(traj: &Trajectory, i: usize) -> Result<Rational> {
    if i == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            horizon: traj.horizon(),
        });
    }
    let r = traj.record(i)?;
    let inflow = &r.contribution - &r.worker_assets_after;
    let claims = &r.benefit - &r.asset_sale - &r.bonus;
    Ok(inflow - claims)
}

/// One-off amount a scale-up frees in System P at its start: `(β−1)·γ·a_{i0+1}`.
pub fn free_lunch(spec: &SystemSpec, scenario: &PolicyScenario) -> Result<Rational> {
    if spec.kind() != SystemKind::P {
        return Err(Error::WrongSystem {
            expected: "P",
            actual: spec.kind().name(),
        });
    }
    let working = spec.demography().cohort_size(scenario.start() + 1);
    Ok((scenario.beta() - Rational::one()) * spec.gamma() * working)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Improves,
    Worsens,
    Neutral,
}

impl Verdict {
    pub fn from_delta(delta: &Rational) -> Self {
        if delta.is_positive() {
            Verdict::Improves
        } else if delta.is_negative() {
            Verdict::Worsens
        } else {
            Verdict::Neutral
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Improves => "IMPROVES",
            Verdict::Worsens => "WORSENS",
            Verdict::Neutral => "NEUTRAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub name: &'static str,
    pub system: SystemKind,
    /// First step covered by `values` and `baseline`.
    pub first_step: usize,
    /// Metric under the scenario, per step.
    pub values: Vec<Rational>,
    /// Metric without the scenario, per step.
    pub baseline: Vec<Rational>,
    pub evaluated_at: usize,
    /// Scenario minus baseline, as summarised by `convention`.
    pub delta: Rational,
    pub verdict: Verdict,
    pub convention: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyReport {
    pub scenario: Option<PolicyScenario>,
    pub horizon: usize,
    pub metrics: Vec<MetricReport>,
    /// P and CB have identical contributions and benefits at every step.
    pub flows_identical: bool,
}

impl InconsistencyReport {
    pub fn get(&self, name: &str, system: SystemKind) -> Option<&MetricReport> {
        self.metrics
            .iter()
            .find(|m| m.name == name && m.system == system)
    }
}

pub const STATE_ASSETS: &str = "state_assets";
pub const PRIMARY_BALANCE: &str = "primary_balance";
pub const NDC_BALANCE: &str = "ndc_balance";
pub const TOTAL_STATE_POSITION: &str = "total_state_position";

/// Evaluates every metric on P and CB with and without the scenario.
pub fn inconsistency_report(
    scenario: Option<&PolicyScenario>,
    demography: &DemographyParams,
    initial_assets: &Rational,
    gamma: &Rational,
    horizon: usize,
) -> Result<InconsistencyReport> {
    let p_spec = SystemSpec::new(
        SystemKind::P,
        gamma.clone(),
        initial_assets.clone(),
        Rational::zero(),
        demography.clone(),
    )?;
    let cb_spec = p_spec.with_kind(SystemKind::CB);

    let mut metrics = Vec::new();
    let mut runs = Vec::new();
    for spec in [&p_spec, &cb_spec] {
        let base = simulate(spec, horizon, None)?;
        let scaled = match scenario {
            Some(s) => apply_beta(spec, s, horizon)?,
            None => base.clone(),
        };
        metrics.extend(evaluate(&base, &scaled, scenario)?);
        runs.push(scaled);
    }

    let flows_identical = runs[0]
        .records()
        .iter()
        .zip(runs[1].records())
        .all(|(p, cb)| p.contribution == cb.contribution && p.benefit == cb.benefit);

    // Group by metric so P and CB sit next to each other.
    metrics.sort_by_key(|m| (metric_order(m.name), m.system));
    Ok(InconsistencyReport {
        scenario: scenario.cloned(),
        horizon,
        metrics,
        flows_identical,
    })
}

fn metric_order(name: &str) -> usize {
    [
        STATE_ASSETS,
        PRIMARY_BALANCE,
        NDC_BALANCE,
        TOTAL_STATE_POSITION,
    ]
    .iter()
    .position(|n| *n == name)
    .unwrap_or(usize::MAX)
}

fn evaluate(
    base: &Trajectory,
    scaled: &Trajectory,
    scenario: Option<&PolicyScenario>,
) -> Result<Vec<MetricReport>> {
    let horizon = base.horizon();
    let system = base.spec().kind();
    let series = |first: usize,
                  f: &dyn Fn(&Trajectory, usize) -> Result<Rational>|
     -> Result<(Vec<Rational>, Vec<Rational>)> {
        let values = (first..=horizon)
            .map(|i| f(scaled, i))
            .collect::<Result<Vec<_>>>()?;
        let baseline = (first..=horizon)
            .map(|i| f(base, i))
            .collect::<Result<Vec<_>>>()?;
        Ok((values, baseline))
    };
    let report = |name,
                  first_step,
                  (values, baseline): (Vec<Rational>, Vec<Rational>),
                  evaluated_at: usize,
                  delta: Rational,
                  convention| {
        MetricReport {
            name,
            system,
            first_step,
            values,
            baseline,
            evaluated_at,
            verdict: Verdict::from_delta(&delta),
            delta,
            convention,
        }
    };
    let delta_at =
        |(values, baseline): &(Vec<Rational>, Vec<Rational>), i: usize| &values[i] - &baseline[i];

    let mut out = Vec::with_capacity(4);

    let assets = series(0, &|t, i| t.state_assets_after(i).cloned())?;
    let d = delta_at(&assets, horizon);
    out.push(report(
        STATE_ASSETS,
        0,
        assets,
        horizon,
        d,
        "state assets after step T, scenario minus baseline; higher is better",
    ));

    let primary = series(0, &primary_balance)?;
    let d = primary.0.iter().zip(&primary.1).map(|(v, b)| v - b).sum();
    out.push(report(
        PRIMARY_BALANCE,
        0,
        primary,
        horizon,
        d,
        "cumulative primary balance over steps 0..=T, scenario minus baseline; higher is better",
    ));

    let at = scenario.map_or(1, PolicyScenario::start);
    let ndc = series(1, &ndc_balance)?;
    let d = delta_at(&ndc, at - 1);
    out.push(report(NDC_BALANCE, 1, ndc, at, d,
        "one-period financial balance at the scenario start, scenario minus baseline; higher is better"));

    let position = series(0, &total_state_position)?;
    let d = delta_at(&position, horizon);
    out.push(report(TOTAL_STATE_POSITION, 0, position, horizon, d,
        "state assets plus state-held index shares at step T, scenario minus baseline; higher is better"));

    Ok(out)
}

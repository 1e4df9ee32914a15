//! Switching between System P and System CB mid-run, and the exhaustive check
//! that a switch reproduces the pure target system.
//!
//! P → CB at step `i`: the state pays generation `i` its full benefit and
//! generation `i + 1` buys assets instead of paying the pensioners.
//!
//! CB → P at step `i`: generation `i` sells its assets and gets the usual bonus,
//! then generation `i + 1` pays its contribution to the state instead of buying
//! assets, restoring state assets to their P level.

use std::fmt;

use rayon::prelude::*;

use crate::engine::{
    simulate, simulate_schedule, RegimeSwitch, SystemKind, SystemSpec, Trajectory,
};
use crate::error::{Error, Result};
use crate::metrics::PolicyScenario;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    PtoCB,
    CBtoP,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::PtoCB, Direction::CBtoP];

    pub fn source(self) -> SystemKind {
        match self {
            Direction::PtoCB => SystemKind::P,
            Direction::CBtoP => SystemKind::CB,
        }
    }

    pub fn target(self) -> SystemKind {
        match self {
            Direction::PtoCB => SystemKind::CB,
            Direction::CBtoP => SystemKind::P,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source(), self.target())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitionDirective {
    at: usize,
    direction: Direction,
}

impl TransitionDirective {
    pub fn new(at: usize, direction: Direction) -> Result<Self> {
        if at < 1 {
            return Err(Error::InvalidTransition(
                "transition time must be at least 1".to_string(),
            ));
        }
        Ok(Self { at, direction })
    }

    pub fn at(&self) -> usize {
        self.at
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
}

/// Assets of the workers and of the state after a step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemStatus {
    pub worker_assets: Rational,
    pub state_assets: Rational,
}

impl Trajectory {
    pub fn status_after(&self, i: usize) -> Result<SystemStatus> {
        let r = self.record(i)?;
        Ok(SystemStatus {
            worker_assets: r.worker_assets_after.clone(),
            state_assets: r.state_assets_after.clone(),
        })
    }
}

pub fn simulate_with_transition(
    spec: &SystemSpec,
    horizon: usize,
    directive: TransitionDirective,
) -> Result<Trajectory> {
    simulate_transitioned(spec, horizon, &[directive], None)
}

/// Applies a chain of transitions, optionally under a β-scaling scenario.
///
/// Each directive must start from the system the previous one switched to
/// (the first from `spec.kind()`), and times must be strictly increasing.
pub fn simulate_transitioned(
    spec: &SystemSpec,
    horizon: usize,
    directives: &[TransitionDirective],
    scenario: Option<&PolicyScenario>,
) -> Result<Trajectory> {
    spec.require_no_debt_interest("transitions")?;
    let mut running = spec.kind();
    let mut switches = Vec::with_capacity(directives.len());
    for d in directives {
        if d.direction.source() != running {
            return Err(Error::InvalidTransition(format!(
                "{} transition requested while System {running} is running",
                d.direction
            )));
        }
        if d.at > horizon {
            return Err(Error::InvalidTransition(format!(
                "transition at {} beyond horizon {horizon}",
                d.at
            )));
        }
        running = d.direction.target();
        switches.push(RegimeSwitch {
            at: d.at,
            to: running,
        });
    }
    simulate_schedule(spec, horizon, scenario, &switches)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub at: usize,
    pub direction: Direction,
    /// Contributions and benefits equal both pure trajectories at every step.
    pub flows_match: bool,
    /// Status equals the pure source before `at` and the pure target from `at`.
    pub status_matches: bool,
    pub first_mismatch: Option<String>,
}

impl EquivalenceCheck {
    pub fn passed(&self) -> bool {
        self.flows_match && self.status_matches
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub horizon: usize,
    /// Ordered by transition time, then direction.
    pub checks: Vec<EquivalenceCheck>,
}

impl EquivalenceReport {
    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(EquivalenceCheck::passed)
    }
}

/// Runs every transition time `1..=horizon` in both directions and compares
/// each transitioned run against the pure P and pure CB runs.
pub fn check_equivalence(
    p_spec: &SystemSpec,
    cb_spec: &SystemSpec,
    horizon: usize,
) -> Result<EquivalenceReport> {
    if p_spec.kind() != SystemKind::P || cb_spec.kind() != SystemKind::CB {
        return Err(Error::MismatchedSpecs(format!(
            "expected (P, CB), got ({}, {})",
            p_spec.kind(),
            cb_spec.kind()
        )));
    }
    if p_spec.demography() != cb_spec.demography()
        || p_spec.gamma() != cb_spec.gamma()
        || p_spec.initial_assets() != cb_spec.initial_assets()
    {
        return Err(Error::MismatchedSpecs(
            "P and CB must share demography, gamma and initial assets".to_string(),
        ));
    }
    p_spec.require_no_debt_interest("equivalence checking")?;
    cb_spec.require_no_debt_interest("equivalence checking")?;

    let pure_p = simulate(p_spec, horizon, None)?;
    let pure_cb = simulate(cb_spec, horizon, None)?;
    let pure = |kind: SystemKind| match kind {
        SystemKind::CB => &pure_cb,
        _ => &pure_p,
    };

    let checks = (1..=horizon)
        .into_par_iter()
        .flat_map_iter(|at| Direction::BOTH.into_iter().map(move |d| (at, d)))
        .map(|(at, direction)| {
            let spec = match direction {
                Direction::PtoCB => p_spec,
                Direction::CBtoP => cb_spec,
            };
            let directive = TransitionDirective::new(at, direction)?;
            let moved = simulate_with_transition(spec, horizon, directive)?;
            Ok(compare(
                &moved,
                pure(direction.source()),
                pure(direction.target()),
                at,
                direction,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EquivalenceReport { horizon, checks })
}

fn compare(
    moved: &Trajectory,
    source: &Trajectory,
    target: &Trajectory,
    at: usize,
    direction: Direction,
) -> EquivalenceCheck {
    let mut flow_error = None;
    let mut status_error = None;
    for ((m, s), t) in moved
        .records()
        .iter()
        .zip(source.records())
        .zip(target.records())
    {
        if flow_error.is_none() {
            if m.contribution != s.contribution || m.contribution != t.contribution {
                flow_error = Some(format!("contribution differs at step {}", m.i));
            } else if m.benefit != s.benefit || m.benefit != t.benefit {
                flow_error = Some(format!("benefit differs at step {}", m.i));
            }
        }
        let reference = if m.i < at { s } else { t };
        if status_error.is_none()
            && (m.worker_assets_after != reference.worker_assets_after
                || m.state_assets_after != reference.state_assets_after)
        {
            status_error = Some(format!("status differs at step {}", m.i));
        }
    }
    EquivalenceCheck {
        at,
        direction,
        flows_match: flow_error.is_none(),
        status_matches: status_error.is_none(),
        first_mismatch: flow_error.or(status_error),
    }
}

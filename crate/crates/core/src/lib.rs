//! Exact-rational simulation of three stylised pension systems in a two-generation
//! overlapping generations economy with zero interest and zero wage growth.
//!
//! * System P: pay-as-you-go. Workers pay pensioners directly.
//! * System C: capital-funded. Workers buy assets and sell them in retirement.
//! * System CB: capital-funded, topped up by a state bonus so that benefits match P.
//!
//! All quantities are [`Rational`]s, so equivalence between P and CB is checked
//! by exact equality. The [`transitions`] module switches between P and CB at
//! arbitrary times, [`metrics`] evaluates conventional sustainability metrics,
//! and [`indexshares`] implements index-share accounting and α-stability.

pub mod demography;
pub mod engine;
pub mod error;
pub mod indexshares;
pub mod metrics;
pub mod rational;
pub mod transitions;

pub use demography::DemographyParams;
pub use engine::{simulate, RegimeSwitch, StepRecord, SystemKind, SystemSpec, Trajectory};
pub use error::{Error, Result};
pub use indexshares::{
    alpha_stability, holdings_trace, index_share_value, total_state_position, IndexShareLedger,
    Indicator, ShareHoldings, Stability,
};
pub use metrics::{
    apply_beta, free_lunch, inconsistency_report, ndc_balance, primary_balance, rate_of_return,
    InconsistencyReport, MetricReport, PolicyScenario, ReturnView, Verdict,
};
pub use rational::Rational;
pub use transitions::{
    check_equivalence, simulate_transitioned, simulate_with_transition, Direction,
    EquivalenceCheck, EquivalenceReport, SystemStatus, TransitionDirective,
};

//! Brute-force account ledger. Every generation and the state keep explicit
//! cash and asset accounts, and each time step is played out as a sequence of
//! transfers between them. Cohort sizes are recomputed from scratch by
//! repeated multiplication.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

pub fn cohort(a0: &Q, g: &Q, i: usize) -> Q {
    let mut out = a0.clone();
    for _ in 0..i {
        out = &out + &out * g;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Payg,
    Funded,
    FundedBonus,
}

#[derive(Debug, Clone)]
pub struct Params {
    pub a0: Q,
    pub g: Q,
    pub gamma: Q,
    pub assets: Q,
    pub r_debt: Q,
    /// (β, start)
    pub beta: Option<(Q, usize)>,
    pub horizon: usize,
}

impl Params {
    pub fn new(a0: Q, g: Q, gamma: Q, assets: Q, horizon: usize) -> Self {
        Self {
            a0,
            g,
            gamma,
            assets,
            r_debt: Q::zero(),
            beta: None,
            horizon,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub contribution: Q,
    pub benefit: Q,
    pub bonus: Q,
    pub worker_assets: Q,
    pub state_assets: Q,
}

#[derive(Default)]
struct Accounts {
    cash: BTreeMap<usize, Q>,
    assets: BTreeMap<usize, Q>,
}

impl Accounts {
    fn cash(&mut self, gen: usize) -> &mut Q {
        self.cash.entry(gen).or_insert_with(Q::zero)
    }

    fn assets(&mut self, gen: usize) -> &mut Q {
        self.assets.entry(gen).or_insert_with(Q::zero)
    }
}

/// Plays out steps `0..=horizon` with `rule(i)` deciding the system at step `i`.
pub fn run(p: &Params, rule: impl Fn(usize) -> Rule) -> Vec<Row> {
    let scale = |gen: usize| -> Q {
        match &p.beta {
            Some((beta, start)) if gen > *start => beta * &p.gamma,
            _ => p.gamma.clone(),
        }
    };
    let mut acc = Accounts::default();
    let mut state = p.assets.clone();
    let mut rows = Vec::new();

    for i in 0..=p.horizon {
        let working = cohort(&p.a0, &p.g, i + 1);
        if state.is_negative() {
            state = &state + &state * &p.r_debt;
        }
        let pensioner = i;
        let worker = i + 1;
        let cash_before = acc.cash(pensioner).clone();
        let due = scale(worker) * &working;
        let promised = scale(pensioner) * &working;
        let mut bonus = Q::zero();

        // Pensioner liquidates whatever it holds.
        let holdings = std::mem::take(acc.assets(pensioner));
        *acc.cash(pensioner) += &holdings;

        match rule(i) {
            Rule::Payg => {
                if holdings.is_zero() {
                    // Worker pays the pensioner; any excess goes to the state.
                    *acc.cash(pensioner) += &promised;
                    state += &due - &promised;
                } else {
                    bonus = &promised - &holdings;
                    state -= &bonus;
                    *acc.cash(pensioner) += &bonus;
                    state += &due;
                }
            }
            Rule::Funded => {
                *acc.assets(worker) += &due;
            }
            Rule::FundedBonus => {
                bonus = &promised - &holdings;
                state -= &bonus;
                *acc.cash(pensioner) += &bonus;
                *acc.assets(worker) += &due;
            }
        }

        let benefit = acc.cash(pensioner).clone() - cash_before;
        rows.push(Row {
            contribution: due,
            benefit,
            bonus,
            worker_assets: acc.assets(worker).clone(),
            state_assets: state.clone(),
        });
    }
    rows
}

pub fn pure(p: &Params, rule: Rule) -> Vec<Row> {
    run(p, |_| rule)
}

/// Rule schedule for a single switch at `at`.
pub fn switched(from: Rule, to: Rule, at: usize) -> impl Fn(usize) -> Rule {
    move |i| if i < at { from } else { to }
}

pub fn one() -> Q {
    Q::one()
}

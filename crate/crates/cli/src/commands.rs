use std::io::Write;

use anyhow::{bail, Result};
use num::Zero;

use pensim_core::indexshares::Stability;
use pensim_core::{
    alpha_stability, check_equivalence, free_lunch, holdings_trace, inconsistency_report,
    ndc_balance, primary_balance, rate_of_return, simulate, Rational, ReturnView, SystemKind,
    Trajectory,
};

use crate::ledger_csv;
use crate::render::{scaled, MarkdownTable, NumberStyle};
use crate::scenario::Scenario;
use crate::{Cli, Command, LedgerFormat, MetricKind, EXIT_OK, EXIT_VERIFICATION_FAILED};

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let style = if cli.exact {
        NumberStyle::Exact
    } else {
        NumberStyle::Display
    };
    match &cli.command {
        Command::Simulate { file, format } => {
            let scenario = Scenario::load(file)?;
            let traj = scenario.trajectory()?;
            match format {
                LedgerFormat::Csv => ledger_csv::write_ledger(&ledger_csv::rows(&traj), out)?,
                LedgerFormat::Md => out.write_all(ledger_markdown(&traj, style).as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Table { file, which } => {
            let scenario = Scenario::load(file)?;
            let text = match which {
                1 => table_systems(&scenario, style)?,
                2 => table_assets(&scenario, style)?,
                _ => table_scaled(&scenario, style)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Equivalence { file } => equivalence(&Scenario::load(file)?, out),
        Command::Metrics { file, which } => {
            let scenario = Scenario::load(file)?;
            let text = metrics(&scenario, *which, style)?;
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

pub fn ledger_markdown(traj: &Trajectory, style: NumberStyle) -> String {
    let mut headers = vec!["i", "regime"];
    headers.extend(&ledger_csv::COLUMNS[1..]);
    let mut table = MarkdownTable::new(headers);
    for r in traj.records() {
        table.row([
            r.i.to_string(),
            r.regime.to_string(),
            style.fmt(&r.contribution),
            style.fmt(&r.benefit),
            style.fmt(&r.bonus),
            style.fmt(&r.worker_assets_after),
            style.fmt(&r.state_assets_after),
            style.fmt(&r.shares.participants),
            style.fmt(&r.shares.state),
        ]);
    }
    table.render()
}

fn pure_runs(scenario: &Scenario, kinds: &[SystemKind]) -> Result<Vec<Trajectory>> {
    kinds
        .iter()
        .map(|&k| {
            Ok(simulate(
                &scenario.spec.with_kind(k),
                scenario.horizon,
                None,
            )?)
        })
        .collect()
}

/// Contribution of generation `i`, paid at time `i - 1`.
fn generation_contribution(t: &Trajectory, i: usize) -> Rational {
    match i {
        0 => Rational::zero(),
        _ => t.records()[i - 1].contribution.clone(),
    }
}

fn table_systems(scenario: &Scenario, style: NumberStyle) -> Result<String> {
    let gamma = scenario.spec.gamma();
    let runs = pure_runs(scenario, &SystemKind::ALL)?;
    let contribution = scaled("a_i", gamma);
    let next = scaled("a_{i+1}", gamma);

    let mut symbolic = MarkdownTable::new(["", "System P", "System C", "System CB"]);
    symbolic
        .row([
            "Contribution of generation i > 0".to_string(),
            contribution.clone(),
            contribution.clone(),
            contribution,
        ])
        .row([
            "Benefit of generation i > 0".to_string(),
            next.clone(),
            scaled("a_i", gamma),
            next.clone(),
        ])
        .row([
            "State assets after time step i".to_string(),
            "A".into(),
            "A".into(),
            format!("A − {next}"),
        ]);

    let mut numeric = MarkdownTable::new(["i", "quantity", "System P", "System C", "System CB"]);
    for i in 0..=scenario.horizon {
        let row = |label: &str, f: &dyn Fn(&Trajectory) -> Rational| {
            let mut cells = vec![i.to_string(), label.to_string()];
            cells.extend(runs.iter().map(|t| style.fmt(&f(t))));
            cells
        };
        numeric.row(row("Contribution of generation i", &|t| {
            generation_contribution(t, i)
        }));
        numeric.row(row("Benefit of generation i", &|t| {
            t.records()[i].benefit.clone()
        }));
        numeric.row(row("State assets after time step i", &|t| {
            t.records()[i].state_assets_after.clone()
        }));
    }
    Ok(format!(
        "Table 1: Systems P, C and CB\n\n{}\n{}",
        symbolic.render(),
        numeric.render()
    ))
}

fn table_assets(scenario: &Scenario, style: NumberStyle) -> Result<String> {
    let gamma = scenario.spec.gamma();
    let runs = pure_runs(scenario, &[SystemKind::P, SystemKind::CB])?;
    let next = scaled("a_{i+1}", gamma);

    let mut symbolic = MarkdownTable::new(["", "System P", "System CB"]);
    symbolic
        .row([
            "Worker assets after step i".to_string(),
            "0".into(),
            next.clone(),
        ])
        .row([
            "State assets after step i".to_string(),
            "A".into(),
            format!("A − {next}"),
        ]);

    let mut numeric = MarkdownTable::new(["i", "quantity", "System P", "System CB"]);
    for i in 0..=scenario.horizon {
        let row = |label: &str, f: &dyn Fn(&Trajectory) -> Rational| {
            let mut cells = vec![i.to_string(), label.to_string()];
            cells.extend(runs.iter().map(|t| style.fmt(&f(t))));
            cells
        };
        numeric.row(row("Worker assets after step i", &|t| {
            t.records()[i].worker_assets_after.clone()
        }));
        numeric.row(row("State assets after step i", &|t| {
            t.records()[i].state_assets_after.clone()
        }));
        numeric.row(row("Total assets after step i", &|t| {
            &t.records()[i].worker_assets_after + &t.records()[i].state_assets_after
        }));
    }
    Ok(format!(
        "Table 2: worker and state assets in Systems P and CB\n\n{}\n{}",
        symbolic.render(),
        numeric.render()
    ))
}

fn table_scaled(scenario: &Scenario, style: NumberStyle) -> Result<String> {
    let runs = pure_runs(scenario, &[SystemKind::P, SystemKind::CB])?;

    let mut symbolic = MarkdownTable::new(["", "P_γ", "CB_γ"]);
    symbolic
        .row(["Contribution of generation i > 0", "γ·a_i", "γ·a_i"])
        .row(["Benefit of generation i", "γ·a_{i+1}", "γ·a_{i+1}"])
        .row(["State assets after time step i", "A", "A − γ·a_{i+1}"]);

    let mut numeric = MarkdownTable::new(["i", "quantity", "P_γ", "CB_γ"]);
    for i in 0..=scenario.horizon {
        let row = |label: &str, f: &dyn Fn(&Trajectory) -> Rational| {
            let mut cells = vec![i.to_string(), label.to_string()];
            cells.extend(runs.iter().map(|t| style.fmt(&f(t))));
            cells
        };
        numeric.row(row("Contribution of generation i", &|t| {
            generation_contribution(t, i)
        }));
        numeric.row(row("Benefit of generation i", &|t| {
            t.records()[i].benefit.clone()
        }));
        numeric.row(row("State assets after time step i", &|t| {
            t.records()[i].state_assets_after.clone()
        }));
    }
    Ok(format!(
        "Table 3: P_γ and CB_γ with γ = {}\n\n{}\n{}",
        NumberStyle::Exact.fmt(scenario.spec.gamma()),
        symbolic.render(),
        numeric.render()
    ))
}

fn equivalence(scenario: &Scenario, out: &mut dyn Write) -> Result<i32> {
    let p = scenario.spec.with_kind(SystemKind::P);
    let cb = scenario.spec.with_kind(SystemKind::CB);
    let report = check_equivalence(&p, &cb, scenario.horizon)?;
    let ok = |b: bool| if b { "ok" } else { "MISMATCH" };

    let mut table = MarkdownTable::new(["at", "direction", "flows", "status", "result", "detail"]);
    for c in &report.checks {
        table.row([
            c.at.to_string(),
            c.direction.to_string(),
            ok(c.flows_match).to_string(),
            ok(c.status_matches).to_string(),
            if c.passed() { "PASS" } else { "FAIL" }.to_string(),
            c.first_mismatch.clone().unwrap_or_default(),
        ]);
    }
    write!(out, "{}", table.render())?;
    writeln!(
        out,
        "\n{}/{} checks passed",
        report.passed_count(),
        report.total()
    )?;
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    })
}

fn metrics(scenario: &Scenario, which: MetricKind, style: NumberStyle) -> Result<String> {
    let traj = scenario.trajectory()?;
    let horizon = scenario.horizon;
    Ok(match which {
        MetricKind::Ror => {
            let mut t = MarkdownTable::new(["generation", "individual", "systemic"]);
            for gen in 1..=horizon {
                t.row([
                    gen.to_string(),
                    style.fmt(&rate_of_return(&traj, gen, ReturnView::Individual)?),
                    style.fmt(&rate_of_return(&traj, gen, ReturnView::Systemic)?),
                ]);
            }
            t.render()
        }
        MetricKind::PrimaryBalance => {
            let mut t = MarkdownTable::new(["i", "primary_balance"]);
            for i in 0..=horizon {
                t.row([i.to_string(), style.fmt(&primary_balance(&traj, i)?)]);
            }
            t.render()
        }
        MetricKind::Ndc => {
            let mut t = MarkdownTable::new(["i", "ndc_balance"]);
            for i in 1..=horizon {
                t.row([i.to_string(), style.fmt(&ndc_balance(&traj, i)?)]);
            }
            t.render()
        }
        MetricKind::Alpha => {
            let mut t = MarkdownTable::new(["i", "shares_participants", "shares_state", "total"]);
            for (i, h) in holdings_trace(&traj).holdings.iter().enumerate() {
                t.row([
                    i.to_string(),
                    style.fmt(&h.participants),
                    style.fmt(&h.state),
                    style.fmt(&h.total()),
                ]);
            }
            let verdict = match alpha_stability(&traj) {
                Stability::Stable(alpha) => format!("alpha: {}", NumberStyle::Exact.fmt(&alpha)),
                Stability::NotStable { segments } => {
                    let parts: Vec<_> = segments
                        .iter()
                        .map(|s| {
                            format!(
                                "{} from step {}",
                                NumberStyle::Exact.fmt(&s.shares),
                                s.from_step
                            )
                        })
                        .collect();
                    format!("alpha: NOT_STABLE ({})", parts.join("; "))
                }
            };
            format!("{}\n{verdict}\n", t.render())
        }
        MetricKind::FreeLunch => {
            let Some(beta) = &scenario.beta else {
                bail!("free-lunch needs a beta_scenario section");
            };
            let amount = free_lunch(&scenario.spec, beta)?;
            format!(
                "free lunch at step {}: {} ({})\n",
                beta.start(),
                NumberStyle::Display.fmt(&amount),
                NumberStyle::Exact.fmt(&amount)
            )
        }
        MetricKind::Inconsistency => {
            let spec = &scenario.spec;
            let report = inconsistency_report(
                scenario.beta.as_ref(),
                spec.demography(),
                spec.initial_assets(),
                spec.gamma(),
                horizon,
            )?;
            let mut t =
                MarkdownTable::new(["metric", "system", "evaluated at", "delta", "verdict"]);
            for m in &report.metrics {
                t.row([
                    m.name.to_string(),
                    m.system.to_string(),
                    m.evaluated_at.to_string(),
                    style.fmt(&m.delta),
                    m.verdict.to_string(),
                ]);
            }
            let mut text = t.render();
            text.push_str(&format!(
                "\nflows identical: {}\n",
                if report.flows_identical {
                    "TRUE"
                } else {
                    "FALSE"
                }
            ));
            text.push_str("\nconventions:\n");
            for m in report.metrics.iter().filter(|m| m.system == SystemKind::P) {
                text.push_str(&format!("- {}: {}\n", m.name, m.convention));
            }
            text
        }
    })
}

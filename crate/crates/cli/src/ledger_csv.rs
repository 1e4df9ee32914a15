//! Exact CSV export and import of a simulated ledger.
//!
//! Values are written as `p/q` (or plain integers) so that reading a file back
//! reproduces every rational exactly.

use std::io::{Read, Write};

use anyhow::{Context, Result};

use pensim_core::rational::{format_exact, parse_rational};
use pensim_core::{Rational, StepRecord, Trajectory};

pub const COLUMNS: [&str; 8] = [
    "i",
    "contribution",
    "benefit",
    "bonus",
    "worker_assets_after",
    "state_assets_after",
    "shares_participants",
    "shares_state",
];

/// One CSV line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerRow {
    pub i: usize,
    pub contribution: Rational,
    pub benefit: Rational,
    pub bonus: Rational,
    pub worker_assets_after: Rational,
    pub state_assets_after: Rational,
    pub shares_participants: Rational,
    pub shares_state: Rational,
}

impl From<&StepRecord> for LedgerRow {
    fn from(r: &StepRecord) -> Self {
        Self {
            i: r.i,
            contribution: r.contribution.clone(),
            benefit: r.benefit.clone(),
            bonus: r.bonus.clone(),
            worker_assets_after: r.worker_assets_after.clone(),
            state_assets_after: r.state_assets_after.clone(),
            shares_participants: r.shares.participants.clone(),
            shares_state: r.shares.state.clone(),
        }
    }
}

impl LedgerRow {
    fn values(&self) -> [&Rational; 7] {
        [
            &self.contribution,
            &self.benefit,
            &self.bonus,
            &self.worker_assets_after,
            &self.state_assets_after,
            &self.shares_participants,
            &self.shares_state,
        ]
    }
}

pub fn rows(traj: &Trajectory) -> Vec<LedgerRow> {
    traj.records().iter().map(LedgerRow::from).collect()
}

pub fn write_ledger<W: Write>(rows: &[LedgerRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        let mut fields = vec![row.i.to_string()];
        fields.extend(row.values().into_iter().map(format_exact));
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_ledger<R: Read>(input: R) -> Result<Vec<LedgerRow>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().ne(COLUMNS) {
        anyhow::bail!("unexpected CSV header: {:?}", headers);
    }
    let mut out = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record?;
        let field = |k: usize| -> Result<Rational> {
            let raw = record.get(k).unwrap_or_default();
            parse_rational(raw).with_context(|| format!("row {line}, column {}", COLUMNS[k]))
        };
        out.push(LedgerRow {
            i: record
                .get(0)
                .unwrap_or_default()
                .parse()
                .with_context(|| format!("row {line}, column i"))?,
            contribution: field(1)?,
            benefit: field(2)?,
            bonus: field(3)?,
            worker_assets_after: field(4)?,
            state_assets_after: field(5)?,
            shares_participants: field(6)?,
            shares_state: field(7)?,
        });
    }
    Ok(out)
}

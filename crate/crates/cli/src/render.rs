//! Markdown rendering for ledgers, tables and reports.

use num::One;

use pensim_core::rational::{format_decimal, format_exact};
use pensim_core::Rational;

/// Fractional digits shown in display mode.
pub const DISPLAY_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberStyle {
    /// Rounded decimals.
    Display,
    /// `p/q`.
    Exact,
}

impl NumberStyle {
    pub fn fmt(self, value: &Rational) -> String {
        match self {
            NumberStyle::Display => format_decimal(value, DISPLAY_DIGITS),
            NumberStyle::Exact => format_exact(value),
        }
    }
}

pub struct MarkdownTable {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl MarkdownTable {
    pub fn new<I, S>(headers: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<I, S>(&mut self, cells: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.rows.push(cells.into_iter().map(Into::into).collect());
        self
    }

    pub fn render(&self) -> String {
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        let mut out = line(&self.headers);
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

/// Symbol for a cohort-size term scaled by γ, e.g. `a_{i+1}` or `γ·a_{i+1}`.
pub fn scaled(symbol: &str, gamma: &Rational) -> String {
    if gamma.is_one() {
        symbol.to_string()
    } else {
        format!("γ·{symbol}")
    }
}

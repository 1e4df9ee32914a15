//! Test-only reference implementations that share no code with the engine.

#![allow(dead_code)]

pub mod oracle;

use std::time::{Duration, Instant};

/// Runs one acceptance criterion, prints a PASS/FAIL line and panics on failure
/// or when the time budget is exceeded.
pub fn criterion<F>(id: u32, title: &str, budget: Duration, body: F)
where
    F: FnOnce() -> Result<String, String>,
{
    let started = Instant::now();
    let outcome = body();
    let elapsed = started.elapsed();
    let outcome = match outcome {
        Ok(summary) if elapsed <= budget => Ok(summary),
        Ok(_) => Err(format!("took {elapsed:?}, budget {budget:?}")),
        Err(e) => Err(e),
    };
    match outcome {
        Ok(summary) => println!("[PASS] criterion {id:>2} {title}: {summary} ({elapsed:.2?})"),
        Err(reason) => {
            println!("[FAIL] criterion {id:>2} {title}: {reason} ({elapsed:.2?})");
            panic!("criterion {id} failed: {reason}");
        }
    }
}

/// `ensure!(cond, "fmt", args..)` returns `Err(String)` from the enclosing closure.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

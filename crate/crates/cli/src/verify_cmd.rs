use clap::Subcommand;
use clusterforge::cases::{self, CASE_NAMES};
use serde_json::json;

use crate::input;
use crate::output::Output;
use crate::CmdResult;

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Run every built-in case of a suite.
    All {
        /// Only `paper-golden` is defined: the worked examples.
        #[arg(long, default_value = "paper-golden")]
        suite: String,
    },
}

impl VerifyCmd {
    pub fn name(&self) -> &'static str {
        match self {
            VerifyCmd::All { .. } => "all",
        }
    }
}

pub fn run(cmd: &VerifyCmd, out: &Output) -> CmdResult {
    match cmd {
        VerifyCmd::All { suite } if suite == "paper-golden" => run_cases(CASE_NAMES, out),
        VerifyCmd::All { suite } => {
            Err(crate::error::invalid(format!("unknown suite `{suite}` (known: paper-golden)")))
        }
    }
}

pub fn run_cases(names: &[&str], out: &Output) -> CmdResult {
    let mut engine = input::engine()?;
    let mut reports = Vec::new();
    for name in names {
        reports.push(cases::case(name)?.run(&mut engine)?);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let summary = json!({ "passed": passed, "failed": reports.len() - passed, "checks": checks, "cases": reports });
    out.emit(&summary, || {
        for r in &reports {
            println!("{} {} ({} checks)", if r.passed { "PASS" } else { "FAIL" }, r.case, r.checks.len());
            for f in r.failures() {
                println!("    failed: {} {}", f.label, f.detail.clone().unwrap_or_default());
            }
        }
        println!("{passed} passed, {} failed", reports.len() - passed);
    });
    Ok(passed == reports.len())
}

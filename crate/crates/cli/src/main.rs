//! Command-line front end: seed mutation and exploration, matrix
//! realizations, preprojective modules, `φ_M` evaluation, and the built-in
//! verification cases.

mod cluster_cmd;
mod error;
mod input;
mod nmatrix_cmd;
mod output;
mod phi_cmd;
mod prepmod_cmd;
mod verify_cmd;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;
use output::Output;

#[derive(Debug, Parser)]
#[command(name = "clusterforge", version, about = "Cluster algebras, preprojective modules and flag-variety functions")]
struct Cli {
    /// Emit a versioned JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized steps (isomorphism tests, random points).
    #[arg(long, global = true, default_value_t = 0)]
    rng_seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Seeds, mutation and exchange graphs.
    #[command(subcommand)]
    Cluster(cluster_cmd::ClusterCmd),
    /// Unitriangular matrix realizations and their minors.
    #[command(subcommand)]
    Nmatrix(nmatrix_cmd::NmatrixCmd),
    /// Modules over preprojective algebras.
    #[command(subcommand)]
    Prepmod(prepmod_cmd::PrepmodCmd),
    /// Euler characteristics and the functions phi_M.
    #[command(subcommand)]
    Phi(phi_cmd::PhiCmd),
    /// Run verification suites.
    #[command(subcommand)]
    Verify(verify_cmd::VerifyCmd),
}

impl Command {
    fn name(&self) -> String {
        let (group, sub) = match self {
            Command::Cluster(c) => ("cluster", c.name()),
            Command::Nmatrix(c) => ("nmatrix", c.name()),
            Command::Prepmod(c) => ("prepmod", c.name()),
            Command::Phi(c) => ("phi", c.name()),
            Command::Verify(c) => ("verify", c.name()),
        };
        format!("{group} {sub}")
    }
}

/// `Ok(true)` on success, `Ok(false)` when a verification ran but failed.
type CmdResult = Result<bool, CliError>;

/// Die quietly on a closed pipe (`clusterforge ... | head`) instead of
/// panicking inside `println!`.
#[cfg(unix)]
fn restore_sigpipe() {
    // SAFETY: resetting a signal disposition to its default before any
    // threads are spawned.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_sigpipe() {}

fn main() -> ExitCode {
    restore_sigpipe();
    let cli = Cli::parse();
    let out = Output { json: cli.json, rng_seed: cli.rng_seed, command: cli.command.name() };
    let result = match &cli.command {
        Command::Cluster(c) => cluster_cmd::run(c, &out),
        Command::Nmatrix(c) => nmatrix_cmd::run(c, &out),
        Command::Prepmod(c) => prepmod_cmd::run(c, &out),
        Command::Phi(c) => phi_cmd::run(c, &out),
        Command::Verify(c) => verify_cmd::run(c, &out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            out.error(&e.to_string(), e.code());
            ExitCode::from(e.code())
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Subcommand};
use clusterforge::cluster::{cluster_monomials, explore, is_finite_type, ExploreLimits, Seed};
use serde::Serialize;
use serde_json::json;

use crate::error::invalid;
use crate::input;
use crate::output::Output;
use crate::CmdResult;

#[derive(Debug, Args)]
pub struct SeedArgs {
    /// `builtin:grassmannian_2_5`, `builtin:quadric`, `builtin:d4_flag`,
    /// `builtin:d4_flag_extended`, or a seed JSON file.
    #[arg(long)]
    seed: String,
    /// Size parameter for `builtin:quadric` (vectors in C^{2n}).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 100_000)]
    max_seeds: usize,
    #[arg(long, default_value_t = 64)]
    max_depth: usize,
}

impl LimitArgs {
    fn limits(&self) -> ExploreLimits {
        ExploreLimits { max_seeds: self.max_seeds, max_depth: self.max_depth }
    }
}

#[derive(Debug, Subcommand)]
pub enum ClusterCmd {
    /// Mutate in one or more directions (1-based, applied left to right).
    Mutate {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        direction: Vec<usize>,
        /// Write the resulting seed as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Breadth-first exploration of the exchange graph.
    Explore {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        limits: LimitArgs,
        /// Write the exchange graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide finite type by exhausting the exchange graph.
    FiniteType {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// List cluster monomials up to a total degree.
    Monomials {
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

impl ClusterCmd {
    pub fn name(&self) -> &'static str {
        match self {
            ClusterCmd::Mutate { .. } => "mutate",
            ClusterCmd::Explore { .. } => "explore",
            ClusterCmd::FiniteType { .. } => "finite-type",
            ClusterCmd::Monomials { .. } => "monomials",
        }
    }
}

fn load(args: &SeedArgs) -> Result<Seed, crate::error::CliError> {
    input::seed(&args.seed, args.n)
}

#[derive(Serialize)]
struct NewVariable {
    direction: usize,
    /// `y_k*`, the new variable at position `k`.
    position: String,
    label: String,
    value: String,
}

pub fn run(cmd: &ClusterCmd, out: &Output) -> CmdResult {
    match cmd {
        ClusterCmd::Mutate { seed, direction, out: path } => {
            let mut s = load(seed)?;
            let mut created = Vec::new();
            for &k in direction {
                if k == 0 || k > s.rank() {
                    return Err(invalid(format!("direction {k} outside 1..={}", s.rank())));
                }
                s = s.mutate(k - 1)?;
                created.push(NewVariable {
                    direction: k,
                    position: format!("y{k}*"),
                    label: format!("{}*", s.labels()[k - 1]),
                    value: s.cluster()[k - 1].to_string(),
                });
            }
            if let Some(p) = path {
                input::write_file(p, &serde_json::to_string_pretty(&s.to_record())?)?;
            }
            let result = json!({ "new_variables": created, "matrix": s.matrix().rows(), "seed": s.to_record() });
            out.emit(&result, || {
                for v in &created {
                    println!("mu_{}: {} ({}) = {}", v.direction, v.position, v.label, v.value);
                }
                println!("exchange matrix:\n{}", s.matrix());
                print!("seed:\n{}", s.dump());
            });
            Ok(true)
        }
        ClusterCmd::Explore { seed, limits, dot } => {
            let s = load(seed)?;
            let class = explore(&s, limits.limits())?;
            if let Some(p) = dot {
                input::write_file(p, &class.to_dot())?;
            }
            let variables: Vec<String> = class.variables.iter().map(|v| v.to_string()).collect();
            let clusters: Vec<String> = class.seeds.iter().map(|s| s.key().to_string()).collect();
            let result = json!({
                "exhausted": class.exhausted,
                "cluster_count": class.cluster_count(),
                "cluster_variable_count": class.variable_count(),
                "regular": class.is_regular(),
                "cluster_variables": variables,
                "clusters": clusters,
                "edges": class.graph,
            });
            out.emit(&result, || {
                println!("exhausted: {}", class.exhausted);
                println!("clusters: {}", class.cluster_count());
                println!("cluster variables: {}", class.variable_count());
                for v in &variables {
                    println!("  {v}");
                }
                if let Some(p) = dot {
                    println!("dot graph written to {}", p.display());
                }
            });
            Ok(true)
        }
        ClusterCmd::FiniteType { seed, limits } => {
            let report = is_finite_type(&load(seed)?, limits.limits())?;
            out.emit(&report, || {
                let verdict = if report.finite { "finite type" } else { "not shown finite within the limits" };
                println!(
                    "{verdict}: {} clusters, {} cluster variables",
                    report.cluster_count, report.cluster_variable_count
                );
            });
            Ok(true)
        }
        ClusterCmd::Monomials { seed, limits, degree } => {
            let class = explore(&load(seed)?, limits.limits())?;
            let monomials = cluster_monomials(&class, *degree)?;
            let rows: Vec<_> = monomials
                .iter()
                .map(|m| json!({ "degree": m.degree(), "value": m.value.to_string(), "clusters": m.clusters }))
                .collect();
            out.emit(&rows, || {
                println!("{} cluster monomials of degree <= {degree}", monomials.len());
                for m in &monomials {
                    println!("  [{}] {}", m.degree(), m.value);
                }
            });
            Ok(true)
        }
    }
}

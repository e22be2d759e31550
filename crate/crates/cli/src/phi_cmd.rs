use std::path::PathBuf;

use clap::Subcommand;
use clusterforge::cases::{self, D4_FLAG_WORD, D4_RIGID_CHOICES};
use clusterforge::nmatrix::Word;
use clusterforge::phi::{chi_backend, phi_eval, positivity_check, verify_multiplication, ChiValue, Provenance};
use clusterforge::prepmod::RatRep;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{invalid, CliError};
use crate::input;
use crate::output::Output;
use crate::CmdResult;

#[derive(Debug, Subcommand)]
pub enum PhiCmd {
    /// phi_M(x_{i_1}(t_1) ... x_{i_k}(t_k)) as a polynomial in the t's.
    Eval {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        word: String,
        /// `auto`, `exact` or `interpolated`.
        #[arg(long, default_value = "auto")]
        backend: String,
    },
    /// Euler characteristic of the variety of composition series of a type.
    Chi {
        #[arg(long)]
        module: PathBuf,
        /// The composition-series type, e.g. `4,3,1,2,3,4`.
        #[arg(long = "type", alias = "word")]
        flag_type: String,
        #[arg(long, default_value = "auto")]
        backend: String,
    },
    /// Run a built-in verification case, or check phi_M phi_N = phi_{M+N}
    /// (and = phi_X + phi_Y when --x and --y are given) for module files.
    Verify {
        #[arg(long, conflicts_with_all = ["m", "n"])]
        case: Option<String>,
        #[arg(long, requires_all = ["n", "word"])]
        m: Option<PathBuf>,
        #[arg(long)]
        n: Option<PathBuf>,
        #[arg(long, requires = "y")]
        x: Option<PathBuf>,
        #[arg(long)]
        y: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Evaluate the summands of a complete rigid module at positive points.
    Positivity {
        /// `d4-example`: the rigid modules of Sub Q_4 in type D4.
        #[arg(long, conflicts_with = "modules")]
        rigid: Option<String>,
        /// Which of the four D4 rigid modules (1-4); all four when omitted.
        #[arg(long)]
        choice: Option<usize>,
        /// Module files, as an alternative to --rigid (needs --word).
        #[arg(long, value_delimiter = ',')]
        modules: Vec<PathBuf>,
        #[arg(long)]
        word: Option<String>,
        /// Comma-separated positive rationals, one per letter.
        #[arg(long, conflicts_with = "random")]
        point: Option<String>,
        /// Number of random points drawn with --rng-seed.
        #[arg(long)]
        random: Option<usize>,
    },
}

impl PhiCmd {
    pub fn name(&self) -> &'static str {
        match self {
            PhiCmd::Eval { .. } => "eval",
            PhiCmd::Chi { .. } => "chi",
            PhiCmd::Verify { .. } => "verify",
            PhiCmd::Positivity { .. } => "positivity",
        }
    }
}

fn backend_tag(p: &Provenance) -> (&'static str, Vec<u64>) {
    match p {
        Provenance::ExactEnumeration => ("exact-enumeration", Vec::new()),
        Provenance::Interpolated { primes_used } => ("interpolated", primes_used.clone()),
    }
}

fn random_points(count: usize, len: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=50)), BigInt::from(rng.gen_range(1..=20))))
                .collect()
        })
        .collect()
}

pub fn run(cmd: &PhiCmd, out: &Output) -> CmdResult {
    match cmd {
        PhiCmd::Eval { module, word, backend } => {
            let m = input::module(module)?;
            let w = Word::with_default_params(input::word(word)?);
            let b = chi_backend(backend)?;
            let mut engine = input::engine()?;
            let r = phi_eval(&mut engine, b.as_ref(), &m, &w)?;
            let primes: Vec<u64> = r.primes_used.iter().copied().collect();
            let poly = r.poly.to_string();
            out.emit(&json!({ "polynomial": poly, "backend": r.backend(), "primes_used": primes }), || {
                println!("phi = {poly}");
                println!("backend: {}", r.backend());
                if !primes.is_empty() {
                    println!("primes used: {primes:?}");
                }
            });
            Ok(true)
        }
        PhiCmd::Chi { module, flag_type, backend } => {
            let m = input::module(module)?;
            let letters = input::word(flag_type)?;
            for &l in &letters {
                m.ty().check_vertex(l)?;
            }
            let b = chi_backend(backend)?;
            let mut engine = input::engine()?;
            let ChiValue { value, provenance } = b.chi(&mut engine, &m, &letters)?;
            let (tag, primes) = backend_tag(&provenance);
            let value = value.to_string();
            out.emit(&json!({ "value": value, "backend": tag, "primes_used": primes }), || {
                println!("chi = {value} ({tag})");
                if !primes.is_empty() {
                    println!("primes used: {primes:?}");
                }
            });
            Ok(true)
        }
        PhiCmd::Verify { case: Some(case), .. } => crate::verify_cmd::run_cases(&[case.as_str()], out),
        PhiCmd::Verify { case: None, m, n, x, y, word } => {
            let (Some(m), Some(n), Some(word)) = (m, n, word) else {
                return Err(invalid("give --case, or --m, --n and --word"));
            };
            let (m, n) = (input::module(m)?, input::module(n)?);
            let middles = match (x, y) {
                (Some(x), Some(y)) => Some((input::module(x)?, input::module(y)?)),
                _ => None,
            };
            let w = Word::with_default_params(input::word(word)?);
            let mut engine = input::engine()?;
            let b = chi_backend("auto")?;
            let report =
                verify_multiplication(&mut engine, b.as_ref(), &m, &n, &w, middles.as_ref().map(|(x, y)| (x, y)))?;
            let holds = report.holds();
            out.emit(&report, || {
                let verdict = |ok: bool| if ok { "holds" } else { "FAILS" };
                println!("phi(M) phi(N) = phi(M+N): {}", verdict(report.direct_sum.holds));
                if let Some(w) = &report.direct_sum.witness {
                    println!("  differing term: {w}");
                }
                if let Some(c) = &report.exchange {
                    println!("phi(M) phi(N) = phi(X) + phi(Y): {}", verdict(c.holds));
                    if let Some(w) = &c.witness {
                        println!("  differing term: {w}");
                    }
                }
            });
            Ok(holds)
        }
        PhiCmd::Positivity { rigid, choice, modules, word, point, random } => {
            let (summands, letters): (Vec<(String, RatRep)>, Vec<usize>) = match rigid.as_deref() {
                Some("d4-example") => {
                    let all = cases::d4_flag_modules()?;
                    let choices: Vec<usize> = match choice {
                        Some(c) if (1..=4).contains(c) => vec![*c],
                        Some(c) => return Err(invalid(format!("choice {c} outside 1..=4"))),
                        None => (1..=4).collect(),
                    };
                    let mut names: Vec<&str> = choices.iter().flat_map(|c| D4_RIGID_CHOICES[c - 1]).collect();
                    names.sort();
                    names.dedup();
                    (names.iter().map(|n| (n.to_string(), all[*n].clone())).collect(), D4_FLAG_WORD.to_vec())
                }
                Some(other) => return Err(invalid(format!("unknown rigid module `{other}` (known: d4-example)"))),
                None => {
                    if modules.is_empty() {
                        return Err(invalid("give --rigid or --modules"));
                    }
                    let w = word.as_deref().ok_or_else(|| invalid("--modules needs --word"))?;
                    let named = modules
                        .iter()
                        .map(|p| Ok((p.display().to_string(), input::module(p)?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    (named, input::word(w)?)
                }
            };
            let points = match (point, random) {
                (Some(p), _) => vec![input::point(p)?],
                (None, Some(n)) => random_points(*n, letters.len(), out.rng_seed),
                (None, None) => vec![vec![BigRational::from_integer(1.into()); letters.len()]],
            };
            let w = Word::with_default_params(letters);
            let b = chi_backend("auto")?;
            let mut engine = input::engine()?;
            let mut reports = Vec::new();
            for p in &points {
                reports.push(positivity_check(&mut engine, b.as_ref(), &summands, &w, p)?);
            }
            let all_positive = reports.iter().all(|r| r.all_positive);
            out.emit(&json!({ "reports": reports, "all_positive": all_positive }), || {
                for r in &reports {
                    println!("point ({})", r.point.join(", "));
                    for e in &r.values {
                        println!("  {}: {} {}", e.name, e.value, if e.positive { "> 0" } else { "NOT POSITIVE" });
                    }
                }
                println!("all positive: {all_positive}");
            });
            Ok(all_positive)
        }
    }
}

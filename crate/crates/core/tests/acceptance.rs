//! The twelve acceptance criteria, one PASS/FAIL line each.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clusterforge::cases::{self, d4_exchange_sequences, d4_rigid, A3_WORD, D4_FLAG_WORD};
use clusterforge::cluster::{builtin_seed, explore, BuiltinSeed, ExploreLimits};
use clusterforge::dynkin::DynkinType;
use clusterforge::linalg::Rationals;
use clusterforge::nmatrix::Word;
use clusterforge::phi::{verify_multiplication, AutoBackend, ChiEngine};
use clusterforge::prepmod::{
    exchange_matrix_from_sequences, hom_dim, is_isomorphic, random_module, IsoOptions, RandomModuleSpec, RatRep,
};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

struct Criterion {
    number: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_case(name: &str, engine: &mut ChiEngine) -> Outcome {
    let report = cases::case(name).map_err(|e| e.to_string())?.run(engine).map_err(|e| format!("{name}: {e}"))?;
    let failures: Vec<String> =
        report.failures().map(|c| format!("{}: {}", c.label, c.detail.clone().unwrap_or_default())).collect();
    ensure(failures.is_empty(), || format!("{name}: {}", failures.join("; ")))
}

fn gr25_mutation() -> Outcome {
    run_case("gr25-mutation", &mut ChiEngine::new())
}

fn gr25_exploration() -> Outcome {
    let seed = builtin_seed(&BuiltinSeed::Grassmannian25).map_err(|e| e.to_string())?;
    let class = explore(&seed, ExploreLimits::default()).map_err(|e| e.to_string())?;
    ensure(class.exhausted, || "exploration did not exhaust".into())?;
    ensure(class.cluster_count() == 5, || format!("{} clusters", class.cluster_count()))?;
    ensure(class.variable_count() == 5, || format!("{} cluster variables", class.variable_count()))
}

fn quadric_seeds() -> Outcome {
    run_case("quadric-n", &mut ChiEngine::new())
}

fn d4_exchange_matrices() -> Outcome {
    let c = d4_rigid().map_err(|e| e.to_string())?;
    let mods: Vec<RatRep> = c.summands.iter().map(|s| s.module.clone()).collect();
    let report = exchange_matrix_from_sequences(&mods, &d4_exchange_sequences(), &[4]).map_err(|e| e.to_string())?;
    let want: Vec<Vec<i64>> = cases::D4_EXCHANGE_MATRIX.iter().map(|r| r.to_vec()).collect();
    ensure(report.matrix == want, || format!("B(T) = {:?}", report.matrix))?;
    ensure(report.extension == vec![vec![1, 0]], || format!("extension {:?}", report.extension))?;
    let s4 = RatRep::simple(DynkinType::D(4), Rationals, 4).map_err(|e| e.to_string())?;
    let hom = |name: &str| hom_dim(&s4, c.summand(name).expect("summand")).expect("same type");
    let x2 = hom("M4") + hom("M6");
    ensure((hom("M5"), hom("Q4"), x2, hom("M5")) == (2, 1, 2, 2), || "hom(S4, -) values differ from 2-1 and 2-2".into())
}

fn injectives() -> Outcome {
    run_case("d4-injectives", &mut ChiEngine::new())
}

fn functor_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let opts = IsoOptions::default();
    let mut modules = Vec::new();
    for ty in [DynkinType::D(4), DynkinType::A(3)] {
        for _ in 0..12 {
            modules.push(random_module(ty, RandomModuleSpec::default(), &mut rng));
        }
    }
    let iso = |a: &RatRep, b: &RatRep| is_isomorphic(a, b, opts).expect("same type");
    for (idx, m) in modules.iter().enumerate() {
        let ty = m.ty();
        for dagger in [false, true] {
            let e = |w: &[usize]| m.e_word(w, dagger);
            for i in ty.vertices() {
                ensure(e(&[i]).check_relation().is_ok(), || format!("module {idx}: relation fails after E_{i}"))?;
                ensure(iso(&e(&[i, i]), &e(&[i])), || format!("module {idx}: E_{i}E_{i} != E_{i} (dagger {dagger})"))?;
                for j in ty.vertices().filter(|&j| j > i) {
                    let ok = if ty.adjacent(i, j) {
                        iso(&e(&[i, j, i]), &e(&[j, i, j]))
                    } else {
                        iso(&e(&[i, j]), &e(&[j, i]))
                    };
                    ensure(ok, || format!("module {idx}: relation for ({i}, {j}) fails (dagger {dagger})"))?;
                }
            }
        }
    }
    ensure(modules.len() >= 20, || "too few modules".into())
}

fn rigid_construction() -> Outcome {
    run_case("d4-rigid-construction", &mut ChiEngine::new())
}

fn phi_golden() -> Outcome {
    let mut engine = ChiEngine::new();
    run_case("a2-thm61", &mut engine)?;
    run_case("d4-exercise55", &mut engine)?;
    run_case("a3-plucker", &mut engine)
}

fn multiplication() -> Outcome {
    let mut engine = ChiEngine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let spec = RandomModuleSpec { max_total_dim: 4, allow_zero: false };
    for k in 0..20 {
        let (ty, letters): (DynkinType, &[usize]) =
            if k % 2 == 0 { (DynkinType::A(3), &A3_WORD) } else { (DynkinType::D(4), &D4_FLAG_WORD) };
        let m = random_module(ty, spec, &mut rng);
        let n = random_module(ty, spec, &mut rng);
        let w = Word::with_default_params(letters.to_vec());
        let r =
            verify_multiplication(&mut engine, &AutoBackend, &m, &n, &w, None).map_err(|e| format!("pair {k}: {e}"))?;
        ensure(r.direct_sum.holds, || {
            format!("pair {k}: phi(M) phi(N) != phi(M+N), witness {:?}", r.direct_sum.witness)
        })?;
    }
    // the exchange clauses on the A2 and A3 examples
    run_case("a2-thm61", &mut engine)?;
    run_case("a3-plucker", &mut engine)
}

fn non_rigid() -> Outcome {
    run_case("d4-nonrigid", &mut ChiEngine::new())
}

fn positivity() -> Outcome {
    run_case("d4-positivity", &mut ChiEngine::new())
}

fn property_suites() -> Outcome {
    fn suite<S: Strategy>(name: &str, strategy: S, test: fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
        let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
        runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
    }
    suite("mutation involution", common::exchange_matrix(), common::mutation_involution)?;
    suite("skew-symmetry", common::exchange_matrix(), common::skew_symmetry_preserved)?;
    suite("ring axioms", (common::laurent(), common::laurent(), common::laurent()), common::ring_axioms)?;
    suite("division round trip", (common::laurent(), common::nonzero_laurent()), common::division_round_trip)?;
    suite("ext symmetry", common::module_pair(), common::ext_symmetry)?;
    suite("hom additivity", common::module_triple(), common::hom_additivity)
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let criteria = [
        Criterion { number: 1, title: "Gr(2,5) matrix mutation and y1*", budget: ms(1), run: gr25_mutation },
        Criterion {
            number: 2,
            title: "Gr(2,5) exploration: 5 clusters, 5 variables",
            budget: ms(1000),
            run: gr25_exploration,
        },
        Criterion { number: 3, title: "quadric seeds n = 4..7", budget: ms(10_000), run: quadric_seeds },
        Criterion {
            number: 4,
            title: "D4 exchange matrix and J = {4} row",
            budget: ms(1000),
            run: d4_exchange_matrices,
        },
        Criterion { number: 5, title: "D4 injective socle filtrations", budget: ms(1000), run: injectives },
        Criterion {
            number: 6,
            title: "functor relations on random A3/D4 modules",
            budget: ms(30_000),
            run: functor_suite,
        },
        Criterion { number: 7, title: "D4 complete rigid construction", budget: ms(5000), run: rigid_construction },
        Criterion { number: 8, title: "phi golden values and minors", budget: ms(60_000), run: phi_golden },
        Criterion { number: 9, title: "multiplication identities", budget: ms(30_000), run: multiplication },
        Criterion { number: 10, title: "non-rigid witness", budget: ms(1000), run: non_rigid },
        Criterion {
            number: 11,
            title: "positivity of D4 rigid summands, quadric",
            budget: ms(10_000),
            run: positivity,
        },
        Criterion { number: 12, title: "property suites", budget: Duration::MAX, run: property_suites },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, note) = match (&outcome, elapsed <= c.budget) {
            (Ok(()), true) => ("PASS", String::new()),
            (Ok(()), false) => ("FAIL", format!(" over budget of {:?}", c.budget)),
            (Err(e), _) => ("FAIL", format!(" {e}")),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {:>10.3} ms  {}{note}", c.number, elapsed.as_secs_f64() * 1e3, c.title);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

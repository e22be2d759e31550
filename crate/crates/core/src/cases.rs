//! Worked examples as runnable checks, plus the modules, words and exchange
//! data they are built from.
//!
//! Each case is a [`VerifyCase`] trait object looked up by name, so the CLI
//! and the acceptance suite share one registry.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::cluster::{builtin_seed, explore, BuiltinSeed, ClusterError, ExchangeMatrix, ExploreLimits};
use crate::dynkin::DynkinType;
use crate::laurent::{LaurentError, LaurentPoly, Ring};
use crate::linalg::Rationals;
use crate::nmatrix::{self, generic_unitriangular, parse_poly, product, NMatrixError, Word};
use crate::phi::{phi_eval, verify_multiplication, AutoBackend, ChiEngine, PhiError};
use crate::prepmod::{
    build_complete_rigid, exchange_matrix_from_sequences, ext1_dim, injective, is_isomorphic, is_rigid, pairwise_ext,
    ExchangeSequence, Filtration, IsoOptions, PrepmodError, RatRep,
};

#[derive(Debug, Error)]
pub enum CaseError {
    #[error("unknown verification case `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Prepmod(#[from] PrepmodError),
    #[error(transparent)]
    NMatrix(#[from] NMatrixError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub passed: bool,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[serde(skip_serializing)]
    pub millis: u128,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Collects checks for one case run.
#[derive(Debug, Default)]
pub struct Checks(Vec<Check>);

impl Checks {
    pub fn check(&mut self, label: impl Into<String>, passed: bool) {
        self.0.push(Check { label: label.into(), passed, detail: None });
    }

    pub fn check_with(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { label: label.into(), passed, detail: (!passed).then(|| detail.into()) });
    }

    pub fn equal<T: PartialEq + std::fmt::Debug>(&mut self, label: impl Into<String>, got: &T, want: &T) {
        let passed = got == want;
        self.check_with(label, passed, format!("got {got:?}, expected {want:?}"));
    }

    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|c| c.passed)
    }

    pub fn into_vec(self) -> Vec<Check> {
        self.0
    }
}

pub trait VerifyCase {
    fn name(&self) -> String;
    fn description(&self) -> &'static str;
    fn checks(&self, engine: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError>;

    fn run(&self, engine: &mut ChiEngine) -> Result<CaseReport, CaseError> {
        let start = Instant::now();
        let mut out = Checks::default();
        self.checks(engine, &mut out)?;
        Ok(CaseReport {
            case: self.name(),
            passed: out.all_passed(),
            millis: start.elapsed().as_millis(),
            checks: out.into_vec(),
        })
    }
}

/// Names accepted by [`case`]. `quadric-n` runs `n = 4..=7`; `quadric-5`
/// and the like pick a single `n`.
pub const CASE_NAMES: &[&str] = &[
    "gr25-mutation",
    "a2-thm61",
    "a3-plucker",
    "d4-injectives",
    "d4-exercise55",
    "d4-rigid-construction",
    "d4-example152",
    "d4-nonrigid",
    "d4-positivity",
    "quadric-n",
];

pub fn case(name: &str) -> Result<Box<dyn VerifyCase>, CaseError> {
    Ok(match name {
        "gr25-mutation" => Box::new(Gr25Mutation),
        "a2-thm61" => Box::new(A2Multiplication),
        "a3-plucker" => Box::new(A3Plucker),
        "d4-injectives" => Box::new(D4Injectives),
        "d4-exercise55" => Box::new(D4FirstRow),
        "d4-rigid-construction" => Box::new(D4RigidConstruction),
        "d4-example152" => Box::new(D4ExchangeMatrix),
        "d4-nonrigid" => Box::new(D4NonRigid),
        "d4-positivity" => Box::new(D4Positivity { points: 10, seed: 0 }),
        "quadric-n" => Box::new(QuadricCase { ns: (4..=7).collect() }),
        other => match other.strip_prefix("quadric-").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => Box::new(QuadricCase { ns: vec![n] }),
            None => return Err(CaseError::Unknown(other.to_string())),
        },
    })
}

pub fn all_cases() -> Vec<Box<dyn VerifyCase>> {
    CASE_NAMES.iter().map(|n| case(n).expect("registered name")).collect()
}

// ---------------------------------------------------------------------------
// Shared data

pub const A2_WORD: [usize; 3] = [1, 2, 1];
pub const A3_WORD: [usize; 6] = [1, 2, 3, 1, 2, 1];
/// `(s_1 s_2 s_4 s_3)^3`, the D4 word whose product realizes the quadric.
pub const D4_FLAG_WORD: [usize; 12] = [1, 2, 4, 3, 1, 2, 4, 3, 1, 2, 4, 3];
/// Reduced word for `w_0` in D4 starting with `w_0` of the parabolic on `{1,2,3}`.
pub const D4_RIGID_WORD: [usize; 12] = [1, 3, 1, 2, 3, 1, 4, 3, 1, 2, 3, 4];
pub const D4_K: [usize; 3] = [1, 2, 3];

/// First row of the product over [`D4_FLAG_WORD`] with parameters `t1..t12`.
pub const D4_FIRST_ROW: [&str; 8] = [
    "1",
    "t3 + t7 + t11",
    "t3*t4 + t3*t8 + t7*t8 + t3*t12 + t7*t12 + t11*t12",
    "t3*t4*t6 + t3*t4*t10 + t3*t8*t10 + t7*t8*t10",
    "t3*t4*t5 + t3*t4*t9 + t3*t8*t9 + t7*t8*t9",
    "t3*t4*t5*t6 + t3*t4*t5*t10 + t3*t4*t6*t9 + t3*t4*t9*t10 + t3*t8*t9*t10 + t7*t8*t9*t10",
    "t3*t4*t5*t6*t8 + t3*t4*t5*t6*t12 + t3*t4*t6*t9*t12 + t3*t4*t5*t10*t12 + t3*t4*t9*t10*t12 \
     + t3*t8*t9*t10*t12 + t7*t8*t9*t10*t12",
    "t3*t4*t5*t6*t8*t11",
];

fn d4() -> DynkinType {
    DynkinType::D(4)
}

fn a3() -> DynkinType {
    DynkinType::A(3)
}

/// The eight submodules of `Q_4` in D4, in the order of the first row of the
/// product: each is `E_w(Q_4)` for the listed word.
pub fn d4_q4_submodules() -> Result<Vec<(String, RatRep)>, PrepmodError> {
    let q4 = injective(d4(), Rationals, 4)?;
    let words: [&[usize]; 8] =
        [&[4, 3, 1, 2, 3, 4], &[3, 1, 2, 3, 4], &[1, 2, 3, 4], &[1, 3, 4], &[2, 3, 4], &[3, 4], &[4], &[]];
    Ok(words
        .iter()
        .map(|w| {
            let m = q4.e_word(w, false);
            (m.socle_filtration().to_string(), m)
        })
        .collect())
}

/// The six submodules of `Q_2` in A3.
pub fn a3_q2_submodules() -> Result<Vec<(String, RatRep)>, PrepmodError> {
    let q2 = injective(a3(), Rationals, 2)?;
    let words: [&[usize]; 6] = [&[2, 1, 3, 2], &[1, 3, 2], &[3, 2], &[1, 2], &[2], &[]];
    Ok(words
        .iter()
        .map(|w| {
            let m = q2.e_word(w, false);
            (m.socle_filtration().to_string(), m)
        })
        .collect())
}

/// `M = S_2`, `N = (S_1+S_3 | S_2)`, `X = Q_2`, `Y = (S_1 | S_2)`,
/// `Z = (S_3 | S_2)` in A3, with `Ext^1(M, N)` one-dimensional.
pub struct A3ExchangeModules {
    pub m: RatRep,
    pub n: RatRep,
    pub x: RatRep,
    pub y: RatRep,
    pub z: RatRep,
}

pub fn a3_exchange_modules() -> Result<A3ExchangeModules, PrepmodError> {
    let q2 = injective(a3(), Rationals, 2)?;
    let n = q2.e_functor(2);
    Ok(A3ExchangeModules { m: RatRep::simple(a3(), Rationals, 2)?, y: n.e_functor(3), z: n.e_functor(1), x: q2, n })
}

/// The rigid construction for D4, `K = {1,2,3}`; summands
/// `M7, M8, M4, M5, M6, Q4`.
pub fn d4_rigid() -> Result<crate::prepmod::RigidConstruction, PrepmodError> {
    build_complete_rigid(d4(), &D4_K, &D4_RIGID_WORD)
}

/// `M7* = E_4(Q_4)` and `M8* = E_3 E_4(Q_4)`, the mutations of `M7` and `M8`.
pub fn d4_mutated_summands() -> Result<(RatRep, RatRep), PrepmodError> {
    let q4 = injective(d4(), Rationals, 4)?;
    Ok((q4.e_word(&[4], false), q4.e_word(&[3, 4], false)))
}

/// Middle terms of the exchange sequences for the two mutable summands,
/// as multiplicities over `M7, M8, M4, M5, M6, Q4`:
/// `0 -> M7 -> M5 -> M7* -> 0`, `0 -> M7* -> Q4 -> M7 -> 0`,
/// `0 -> M8 -> M4+M6 -> M8* -> 0`, `0 -> M8* -> M5 -> M8 -> 0`.
pub fn d4_exchange_sequences() -> Vec<ExchangeSequence> {
    vec![
        ExchangeSequence { x: vec![0, 0, 0, 1, 0, 0], y: vec![0, 0, 0, 0, 0, 1] },
        ExchangeSequence { x: vec![0, 0, 1, 0, 1, 0], y: vec![0, 0, 0, 1, 0, 0] },
    ]
}

pub const D4_EXCHANGE_MATRIX: [[i64; 2]; 6] = [[0, 0], [0, 0], [0, -1], [-1, 1], [0, -1], [1, 0]];

/// The eight modules whose functions appear in the four complete rigid
/// modules of `Sub Q_4`, keyed by name.
pub fn d4_flag_modules() -> Result<BTreeMap<String, RatRep>, PrepmodError> {
    let c = d4_rigid()?;
    let (m7s, m8s) = d4_mutated_summands()?;
    let mut out: BTreeMap<String, RatRep> = c.summands.into_iter().map(|s| (s.name, s.module)).collect();
    out.insert("M7*".into(), m7s);
    out.insert("M8*".into(), m8s);
    Ok(out)
}

/// The four basic complete rigid modules of `Sub Q_4` in D4.
pub const D4_RIGID_CHOICES: [[&str; 6]; 4] = [
    ["M4", "M5", "M6", "M7", "M8", "Q4"],
    ["M4", "M5", "M6", "M7*", "M8", "Q4"],
    ["M4", "M5", "M6", "M7", "M8*", "Q4"],
    ["M4", "M5", "M6", "M7*", "M8*", "Q4"],
];

/// `S_3 | S_1+S_2+S_4 | S_3`: a member of a one-parameter family, hence
/// not rigid.
pub fn d4_one_parameter_module() -> RatRep {
    RatRep::from_int_maps(
        d4(),
        vec![1, 1, 2, 1],
        &[
            ("3->1", vec![vec![1, 0]]),
            ("3->2", vec![vec![1, 0]]),
            ("3->4", vec![vec![1, 0]]),
            ("1->3", vec![vec![0], vec![1]]),
            ("2->3", vec![vec![0], vec![2]]),
            ("4->3", vec![vec![0], vec![3]]),
        ],
    )
    .expect("satisfies the preprojective relation")
}

/// The three exchange binomials of the quadric cluster algebra, as
/// `y_k y_{2n+1-k}`.
pub fn quadric_exchange_rhs(ring: &Ring, n: usize, k: usize) -> Result<LaurentPoly, LaurentError> {
    let s = if k == 2 {
        format!("p1 + y1*y{}", 2 * n)
    } else if k == n - 1 {
        format!("y{n}*y{} + p{}", n + 1, n - 3)
    } else {
        format!("p{} + p{}", k - 1, k - 2)
    };
    parse_poly(ring, &s)
}

fn phi(engine: &mut ChiEngine, m: &RatRep, word: &Word) -> Result<LaurentPoly, CaseError> {
    Ok(phi_eval(engine, &AutoBackend, m, word)?.poly)
}

fn word(letters: &[usize]) -> Word {
    Word::with_default_params(letters.to_vec())
}

// ---------------------------------------------------------------------------
// Cases

struct Gr25Mutation;

impl VerifyCase for Gr25Mutation {
    fn name(&self) -> String {
        "gr25-mutation".into()
    }
    fn description(&self) -> &'static str {
        "mutation of the Gr(2,5) seed in direction 1 and its exchange relation"
    }
    fn checks(&self, _: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        let seed = builtin_seed(&BuiltinSeed::Grassmannian25)?;
        let mutated = seed.mutate(0)?;
        let want = ExchangeMatrix::new(vec![
            vec![0, 1],
            vec![-1, 0],
            vec![1, -1],
            vec![-1, 0],
            vec![1, 0],
            vec![0, -1],
            vec![0, 1],
        ])?;
        out.equal("mu_1(B)", mutated.matrix(), &want);
        let ring = Ring::numbered("y", 7);
        let expected = parse_poly(&ring, "y2*y4 + y3*y5")?.div_exact(&parse_poly(&ring, "y1")?)?;
        out.equal("y1* = (y2 y4 + y3 y5)/y1", &mutated.cluster()[0], &expected);
        out.equal("mutation is an involution", &mutated.mutate(0)?.cluster().to_vec(), &seed.cluster().to_vec());
        Ok(())
    }
}

struct A2Multiplication;

impl VerifyCase for A2Multiplication {
    fn name(&self) -> String {
        "a2-thm61".into()
    }
    fn description(&self) -> &'static str {
        "phi of S1, S2, Q1, Q2 in A2 over 1,2,1 and phi(S1) phi(S2) = phi(Q1) + phi(Q2)"
    }
    fn checks(&self, engine: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        let a2 = DynkinType::A(2);
        let w = word(&A2_WORD);
        let ring = w.ring()?;
        let s1 = RatRep::simple(a2, Rationals, 1)?;
        let s2 = RatRep::simple(a2, Rationals, 2)?;
        let q1 = injective(a2, Rationals, 1)?;
        let q2 = injective(a2, Rationals, 2)?;
        let x = product(a2, &w)?;
        for (name, m, want, entry) in [
            ("S1", &s1, "t1 + t3", x.entry(1, 2).clone()),
            ("S2", &s2, "t2", x.entry(2, 3).clone()),
            ("Q1", &q1, "t1*t2", x.entry(1, 3).clone()),
            ("Q2", &q2, "t2*t3", x.minor(&[1, 2], &[2, 3])?),
        ] {
            let got = phi(engine, m, &w)?;
            out.equal(format!("phi({name})"), &got.to_string(), &parse_poly(&ring, want)?.to_string());
            out.equal(format!("phi({name}) as a matrix function"), &got, &entry);
        }
        let report = verify_multiplication(engine, &AutoBackend, &s1, &s2, &w, Some((&q1, &q2)))?;
        out.check("phi(S1) phi(S2) = phi(S1+S2)", report.direct_sum.holds);
        out.check("phi(S1) phi(S2) = phi(Q1) + phi(Q2)", report.exchange.as_ref().is_some_and(|c| c.holds));
        out.equal("phi(0) = 1", &phi(engine, &RatRep::zero(a2, Rationals), &w)?.is_one(), &true);
        Ok(())
    }
}

struct A3Plucker;

impl VerifyCase for A3Plucker {
    fn name(&self) -> String {
        "a3-plucker".into()
    }
    fn description(&self) -> &'static str {
        "submodules of Q2 in A3 against 2x2 minors, and the Plucker relation as a multiplication identity"
    }
    fn checks(&self, engine: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        let w = word(&A3_WORD);
        let x = product(a3(), &w)?;
        let pairs: Vec<[usize; 2]> = (1..=4).flat_map(|a| (a + 1..=4).map(move |b| [a, b])).collect();
        let minors: Vec<LaurentPoly> = pairs.iter().map(|c| x.minor(&[1, 2], c)).collect::<Result<_, _>>()?;
        let minor_of = |p: &LaurentPoly| pairs.iter().zip(&minors).find(|(_, m)| *m == p).map(|(c, _)| *c);

        let mut seen = Vec::new();
        for (name, m) in a3_q2_submodules()? {
            let p = phi(engine, &m, &w)?;
            match minor_of(&p) {
                Some(c) => {
                    out.check(format!("phi({name}) = [{},{}]", c[0], c[1]), true);
                    seen.push(c);
                }
                None => out.check_with(format!("phi({name}) is a minor on rows 1,2"), false, p.to_string()),
            }
        }
        seen.sort();
        seen.dedup();
        out.equal("submodules and nonzero minors correspond bijectively", &seen.len(), &pairs.len());
        out.check("all six minors are nonzero", minors.iter().all(|m| !m.is_zero()));

        let q = injective(a3(), Rationals, 2)?;
        let top_minor = x.minor(&[1, 2], &[3, 4])?;
        out.equal("phi(Q2) = minor rows 1,2 cols 3,4", &phi(engine, &q, &w)?, &top_minor);

        let e = a3_exchange_modules()?;
        out.equal("dim Ext1(M, N)", &ext1_dim(&e.m, &e.n)?, &1);
        let yz = e.y.direct_sum(&e.z)?;
        let report = verify_multiplication(engine, &AutoBackend, &e.m, &e.n, &w, Some((&e.x, &yz)))?;
        out.check("phi(M) phi(N) = phi(M+N)", report.direct_sum.holds);
        out.check_with(
            "phi(M) phi(N) = phi(X) + phi(Y+Z)",
            report.exchange.as_ref().is_some_and(|c| c.holds),
            report.exchange.as_ref().and_then(|c| c.witness.clone()).unwrap_or_default(),
        );
        let col = |m: &RatRep, engine: &mut ChiEngine| -> Result<Option<[usize; 2]>, CaseError> {
            Ok(minor_of(&phi(engine, m, &w)?))
        };
        out.equal("phi(M) = [1,3]", &col(&e.m, engine)?, &Some([1, 3]));
        out.equal("phi(N) = [2,4]", &col(&e.n, engine)?, &Some([2, 4]));
        out.equal("phi(X) = [1,2][3,4]", &col(&e.x, engine)?, &Some([3, 4]));
        out.equal("phi(Y) = [2,3]", &col(&e.y, engine)?, &Some([2, 3]));
        out.equal("phi(Z) = [1,4]", &col(&e.z, engine)?, &Some([1, 4]));

        let g = generic_unitriangular(4);
        let m = |c: [usize; 2]| g.minor(&[1, 2], &c);
        let lhs = &m([1, 3])? * &m([2, 4])?;
        let rhs = &(&m([1, 2])? * &m([3, 4])?) + &(&m([1, 4])? * &m([2, 3])?);
        out.equal("[1,3][2,4] = [1,2][3,4] + [1,4][2,3] on generic matrices", &lhs, &rhs);
        Ok(())
    }
}

struct D4Injectives;

impl VerifyCase for D4Injectives {
    fn name(&self) -> String {
        "d4-injectives".into()
    }
    fn description(&self) -> &'static str {
        "socle filtrations of the D4 injectives Q3 and Q4"
    }
    fn checks(&self, _: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        for (v, want) in [(3, "S3 | S1+S2+S4 | S3+S3 | S1+S2+S4 | S3"), (4, "S4 | S3 | S1+S2 | S3 | S4")] {
            let q = injective(d4(), Rationals, v)?;
            let want = Filtration::parse(4, want).expect("well-formed");
            out.equal(format!("Q{v} socle filtration"), &q.socle_filtration().to_string(), &want.to_string());
            out.equal(format!("Q{v} radical filtration"), &q.radical_filtration().to_string(), &want.to_string());
        }
        Ok(())
    }
}

struct D4FirstRow;

impl VerifyCase for D4FirstRow {
    fn name(&self) -> String {
        "d4-exercise55".into()
    }
    fn description(&self) -> &'static str {
        "the first row of the 12-factor D4 product equals phi over the eight submodules of Q4"
    }
    fn checks(&self, engine: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        let w = word(&D4_FLAG_WORD);
        let ring = w.ring()?;
        let x = product(d4(), &w)?;
        let row = x.first_row();
        for (j, golden) in D4_FIRST_ROW.iter().enumerate() {
            out.equal(format!("n1{} matches the printed row", j + 1), &row[j], &parse_poly(&ring, golden)?);
        }
        for (j, (name, m)) in d4_q4_submodules()?.into_iter().enumerate() {
            let label = if m.is_zero() { "0".to_string() } else { name };
            out.equal(format!("phi({label}) = n1{}", j + 1), &phi(engine, &m, &w)?, &row[j]);
        }
        let q = nmatrix::check_quadric_row(&row)?;
        out.check_with("first row lies on the quadric", q.holds, q.witness.unwrap_or_default());
        Ok(())
    }
}

struct D4RigidConstruction;

impl VerifyCase for D4RigidConstruction {
    fn name(&self) -> String {
        "d4-rigid-construction".into()
    }
    fn description(&self) -> &'static str {
        "complete rigid module in Sub Q4 from a reduced word"
    }
    fn checks(&self, _: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        let c = d4_rigid()?;
        let expected = [
            ("M4", "S2 | S3 | S4"),
            ("M5", "S3 | S1+S2 | S3 | S4+S4"),
            ("M6", "S1 | S3 | S4"),
            ("M7", "S4"),
            ("M8", "S3 | S4"),
            ("Q4", "S4 | S3 | S1+S2 | S3 | S4"),
        ];
        for (name, filt) in expected {
            let got = c.summand(name).map(|m| m.socle_filtration().to_string());
            let want = Filtration::parse(4, filt).expect("well-formed").to_string();
            out.equal(format!("{name} filtration"), &got, &Some(want));
        }
        out.equal("M9..M12 vanish", &c.zero_indices, &vec![9, 10, 11, 12]);
        out.equal("summand count = dim N_K", &c.summands.len(), &(c.r - c.r_k));
        let mods: Vec<RatRep> = c.summands.iter().map(|s| s.module.clone()).collect();
        let ext = pairwise_ext(&mods)?;
        out.check("pairwise Ext1 vanishes", ext.iter().flatten().all(|&e| e == 0));
        Ok(())
    }
}

struct D4ExchangeMatrix;

impl VerifyCase for D4ExchangeMatrix {
    fn name(&self) -> String {
        "d4-example152".into()
    }
    fn description(&self) -> &'static str {
        "exchange matrix of the D4 rigid module, its J = {4} extension, and the mutated summands"
    }
    fn checks(&self, engine: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        let c = d4_rigid()?;
        let mods: Vec<RatRep> = c.summands.iter().map(|s| s.module.clone()).collect();
        let report = exchange_matrix_from_sequences(&mods, &d4_exchange_sequences(), &[4])?;
        let want: Vec<Vec<i64>> = D4_EXCHANGE_MATRIX.iter().map(|r| r.to_vec()).collect();
        out.equal("B(T)", &report.matrix, &want);
        out.equal("extension row for J = {4}", &report.extension, &vec![vec![1, 0]]);
        let seed = builtin_seed(&BuiltinSeed::D4FlagExtended)?;
        out.equal("agrees with the built-in D4 seed", &report.extended_matrix()?, seed.matrix());

        let (m7s, m8s) = d4_mutated_summands()?;
        let m7 = c.summand("M7").expect("summand");
        let m8 = c.summand("M8").expect("summand");
        out.equal("dim Ext1(M7, M7*)", &ext1_dim(m7, &m7s)?, &1);
        out.equal("dim Ext1(M8, M8*)", &ext1_dim(m8, &m8s)?, &1);
        let others: Vec<&RatRep> = ["M4", "M5", "M6", "Q4"].iter().filter_map(|n| c.summand(n)).collect();
        for (name, t) in [("M7*", &m7s), ("M8*", &m8s)] {
            let rigid_with_rest = others.iter().all(|o| ext1_dim(t, o).map(|e| e == 0).unwrap_or(false));
            out.check(format!("{name} is rigid and compatible with M4, M5, M6, Q4"), is_rigid(t)? && rigid_with_rest);
        }
        let opts = IsoOptions::default();
        let m5 = c.summand("M5").expect("summand");
        out.check("M7* is not isomorphic to M7", !is_isomorphic(m7, &m7s, opts)?);

        let w = word(&D4_FLAG_WORD);
        let x = product(d4(), &w)?;
        out.equal("phi(M5) = n17 n78 - n18", &phi(engine, m5, &w)?, &x.minor(&[1, 7], &[7, 8])?);
        // the exchange relations phi(Tk) phi(Tk*) = phi(X) + phi(Y)
        let mid = |mult: &[usize]| -> Result<RatRep, PrepmodError> {
            let parts: Vec<RatRep> = mods.iter().zip(mult).map(|(s, &k)| s.power(k)).collect();
            RatRep::direct_sum_all(d4(), Rationals, parts.iter())
        };
        for (k, (tk, tks)) in [(m7, &m7s), (m8, &m8s)].into_iter().enumerate() {
            let seq = &d4_exchange_sequences()[k];
            let r = verify_multiplication(engine, &AutoBackend, tk, tks, &w, Some((&mid(&seq.x)?, &mid(&seq.y)?)))?;
            out.check(format!("exchange relation in direction {}", k + 1), r.holds());
        }
        Ok(())
    }
}

struct D4NonRigid;

impl VerifyCase for D4NonRigid {
    fn name(&self) -> String {
        "d4-nonrigid".into()
    }
    fn description(&self) -> &'static str {
        "a module from a one-parameter family is not rigid"
    }
    fn checks(&self, _: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        let m = d4_one_parameter_module();
        out.equal("filtration", &m.socle_filtration().to_string(), &"S3 | S1+S2+S4 | S3".to_string());
        out.equal("is_rigid", &is_rigid(&m)?, &false);
        Ok(())
    }
}

/// The functions of the four complete rigid modules of `Sub Q_4` at random
/// positive points, and the quadric on the symbolic first row.
pub struct D4Positivity {
    pub points: usize,
    pub seed: u64,
}

impl VerifyCase for D4Positivity {
    fn name(&self) -> String {
        "d4-positivity".into()
    }
    fn description(&self) -> &'static str {
        "cluster functions of the four complete rigid modules in Sub Q4 are positive at positive points"
    }
    fn checks(&self, engine: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::Signed;
        use rand::{Rng, SeedableRng};

        let w = word(&D4_FLAG_WORD);
        let mut polys = BTreeMap::new();
        for (name, m) in d4_flag_modules()? {
            polys.insert(name, phi(engine, &m, &w)?);
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
        for k in 0..self.points {
            let point: Vec<BigRational> = (0..w.len())
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=50)), BigInt::from(rng.gen_range(1..=20))))
                .collect();
            for (c, choice) in D4_RIGID_CHOICES.iter().enumerate() {
                let mut bad = Vec::new();
                for name in choice {
                    let v = polys[*name].evaluate_slice(&point)?;
                    if !v.is_positive() {
                        bad.push(format!("{name} = {v}"));
                    }
                }
                out.check_with(
                    format!("point {}: rigid module {} positive", k + 1, c + 1),
                    bad.is_empty(),
                    bad.join(", "),
                );
            }
        }
        let q = nmatrix::verify_quadric_relation(d4(), Some(&D4_FLAG_WORD))?;
        out.check_with("y1 y8 - y2 y7 + y3 y6 - y4 y5 = 0 on the first row", q.holds, q.witness.unwrap_or_default());
        Ok(())
    }
}

/// Quadric cluster algebras: `2^(n-2)` clusters and the three shapes of
/// exchange relation.
pub struct QuadricCase {
    pub ns: Vec<usize>,
}

impl VerifyCase for QuadricCase {
    fn name(&self) -> String {
        match self.ns.as_slice() {
            [n] => format!("quadric-{n}"),
            _ => "quadric-n".into(),
        }
    }
    fn description(&self) -> &'static str {
        "quadric cone seeds: cluster count and exchange relations"
    }
    fn checks(&self, _: &mut ChiEngine, out: &mut Checks) -> Result<(), CaseError> {
        for &n in &self.ns {
            let seed = builtin_seed(&BuiltinSeed::Quadric(n))?;
            let class = explore(&seed, ExploreLimits::default())?;
            out.check(format!("n = {n}: exploration exhausts"), class.exhausted);
            out.equal(format!("n = {n}: cluster count"), &class.cluster_count(), &(1usize << (n - 2)));
            out.equal(format!("n = {n}: cluster variables"), &class.variable_count(), &(2 * (n - 2)));
            let ring = seed.cluster()[0].ring().clone();
            let mut failures = Vec::new();
            for e in &class.graph {
                let k = e.direction + 2;
                let lhs = &class.seeds[e.from].cluster()[e.direction] * &class.seeds[e.to].cluster()[e.direction];
                if lhs != quadric_exchange_rhs(&ring, n, k)? {
                    failures.push(format!("edge {} -{}-> {}", e.from, e.direction + 1, e.to));
                }
            }
            out.check_with(
                format!("n = {n}: every exchange edge has a displayed shape"),
                failures.is_empty(),
                failures.join(", "),
            );
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_resolves_names() {
        for name in CASE_NAMES {
            assert_eq!(case(name).unwrap().name(), *name);
        }
        assert_eq!(case("quadric-5").unwrap().name(), "quadric-5");
        assert!(matches!(case("nope"), Err(CaseError::Unknown(_))));
    }

    #[test]
    fn one_parameter_module_is_valid() {
        assert!(d4_one_parameter_module().check_relation().is_ok());
    }

    #[test]
    fn small_cases_pass() {
        let mut e = ChiEngine::new();
        for name in ["gr25-mutation", "a2-thm61", "d4-injectives", "d4-nonrigid", "quadric-4"] {
            let r = case(name).unwrap().run(&mut e).unwrap();
            assert!(r.passed, "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}

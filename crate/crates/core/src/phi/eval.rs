//! `φ_M(x_{i_1}(t_1) ... x_{i_k}(t_k)) = Σ_a χ_{i^a, M} t^a / a!`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{ChiBackend, ChiEngine, PhiError, Provenance};
use crate::laurent::LaurentPoly;
use crate::nmatrix::Word;
use crate::prepmod::RatRep;

#[derive(Clone, Debug)]
pub struct PhiResult {
    pub poly: LaurentPoly,
    /// Nonzero χ values obtained by each backend.
    pub exact_terms: usize,
    pub interpolated_terms: usize,
    pub primes_used: BTreeSet<u64>,
}

impl PhiResult {
    pub fn backend(&self) -> &'static str {
        match (self.exact_terms, self.interpolated_terms) {
            (_, 0) => "exact-enumeration",
            (0, _) => "interpolated",
            _ => "mixed",
        }
    }
}

pub fn phi_eval(
    engine: &mut ChiEngine,
    backend: &dyn ChiBackend,
    m: &RatRep,
    word: &Word,
) -> Result<PhiResult, PhiError> {
    let ring = word.ring()?;
    let mut result = PhiResult {
        poly: LaurentPoly::zero(&ring),
        exact_terms: 0,
        interpolated_terms: 0,
        primes_used: BTreeSet::new(),
    };
    for &l in &word.letters {
        m.ty().check_vertex(l).map_err(crate::prepmod::PrepmodError::from)?;
    }
    let mut terms: Vec<(Vec<i32>, BigInt)> = Vec::new();
    for a in exponent_vectors(&word.letters, m.dims()) {
        let expanded: Vec<usize> = word.letters.iter().zip(&a).flat_map(|(&l, &e)| std::iter::repeat_n(l, e)).collect();
        let chi = backend.chi(engine, m, &expanded)?;
        if chi.value.is_zero() {
            continue;
        }
        match &chi.provenance {
            Provenance::ExactEnumeration => result.exact_terms += 1,
            Provenance::Interpolated { primes_used } => {
                result.interpolated_terms += 1;
                result.primes_used.extend(primes_used);
            }
        }
        let denom: BigInt = a.iter().map(|&e| factorial(e)).product();
        let coeff = BigRational::new(chi.value.clone(), denom);
        if !coeff.is_integer() {
            return Err(PhiError::NonIntegral(coeff.to_string()));
        }
        terms.push((a.iter().map(|&e| e as i32).collect(), coeff.to_integer()));
    }
    result.poly = LaurentPoly::from_terms(&ring, terms)?;
    Ok(result)
}

/// All `a` in `N^k` whose letter counts equal `dims`.
fn exponent_vectors(letters: &[usize], dims: &[usize]) -> Vec<Vec<usize>> {
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); dims.len()];
    for (j, &l) in letters.iter().enumerate() {
        positions[l - 1].push(j);
    }
    if positions.iter().zip(dims).any(|(p, &d)| p.is_empty() && d > 0) {
        return Vec::new();
    }
    let mut out = vec![vec![0usize; letters.len()]];
    for (v, pos) in positions.iter().enumerate() {
        let mut next = Vec::new();
        for partial in &out {
            for comp in compositions(dims[v], pos.len()) {
                let mut a = partial.clone();
                for (&p, &c) in pos.iter().zip(&comp) {
                    a[p] = c;
                }
                next.push(a);
            }
        }
        out = next;
    }
    out
}

/// Ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Each monomial of `poly` carries, per vertex, total degree `dims[v]` in the
/// parameters attached to that vertex.
pub fn weight_grading_holds(poly: &LaurentPoly, letters: &[usize], dims: &[usize]) -> bool {
    poly.terms().all(|(m, _)| {
        let mut w = vec![0i64; dims.len()];
        for (j, &e) in m.exponents().iter().enumerate() {
            w[letters[j] - 1] += i64::from(e);
        }
        w.iter().zip(dims).all(|(&a, &b)| a == b as i64)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseReport {
    pub holds: bool,
    /// A monomial of `lhs - rhs` when the identity fails.
    pub witness: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

impl ClauseReport {
    fn compare(lhs: &LaurentPoly, rhs: &LaurentPoly) -> Self {
        let diff = lhs - rhs;
        let witness =
            diff.leading_term().map(|(m, c)| LaurentPoly::monomial(diff.ring(), m.clone(), c.clone()).to_string());
        ClauseReport { holds: diff.is_zero(), witness, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicationReport {
    /// `φ_M φ_N = φ_{M ⊕ N}`
    pub direct_sum: ClauseReport,
    /// `φ_M φ_N = φ_X + φ_Y`, when middle terms are supplied.
    pub exchange: Option<ClauseReport>,
}

impl MultiplicationReport {
    pub fn holds(&self) -> bool {
        self.direct_sum.holds && self.exchange.as_ref().is_none_or(|c| c.holds)
    }
}

pub fn verify_multiplication(
    engine: &mut ChiEngine,
    backend: &dyn ChiBackend,
    m: &RatRep,
    n: &RatRep,
    word: &Word,
    middles: Option<(&RatRep, &RatRep)>,
) -> Result<MultiplicationReport, PhiError> {
    let pm = phi_eval(engine, backend, m, word)?.poly;
    let pn = phi_eval(engine, backend, n, word)?.poly;
    let product = &pm * &pn;
    let sum = phi_eval(engine, backend, &m.direct_sum(n)?, word)?.poly;
    let direct_sum = ClauseReport::compare(&product, &sum);
    let exchange = match middles {
        Some((x, y)) => {
            let px = phi_eval(engine, backend, x, word)?.poly;
            let py = phi_eval(engine, backend, y, word)?.poly;
            Some(ClauseReport::compare(&product, &(&px + &py)))
        }
        None => None,
    };
    Ok(MultiplicationReport { direct_sum, exchange })
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityEntry {
    pub name: String,
    pub value: String,
    pub positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub point: Vec<String>,
    pub values: Vec<PositivityEntry>,
    pub all_positive: bool,
}

/// Exact values of `φ_{T_i}` at a strictly positive point.
pub fn positivity_check(
    engine: &mut ChiEngine,
    backend: &dyn ChiBackend,
    summands: &[(String, RatRep)],
    word: &Word,
    point: &[BigRational],
) -> Result<PositivityReport, PhiError> {
    if point.len() != word.len() {
        return Err(PhiError::PointLength { found: point.len(), expected: word.len() });
    }
    if let Some((index, value)) = point.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(PhiError::NonPositivePoint { index: index + 1, value: value.to_string() });
    }
    let mut values = Vec::with_capacity(summands.len());
    for (name, m) in summands {
        let v = phi_eval(engine, backend, m, word)?.poly.evaluate_slice(point)?;
        values.push(PositivityEntry { name: name.clone(), value: v.to_string(), positive: v.is_positive() });
    }
    let all_positive = values.iter().all(|e| e.positive);
    Ok(PositivityReport { point: point.iter().map(|q| q.to_string()).collect(), values, all_positive })
}

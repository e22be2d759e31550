//! Unitriangular matrix realizations of the unipotent group `N` in types A
//! and D, products along words, and minors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dynkin::{DynkinError, DynkinType};
use crate::laurent::{LaurentError, LaurentPoly, LaurentRecord, Ring};

#[derive(Debug, Error)]
pub enum NMatrixError {
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error("type {0} has no matrix realization here (only A_n and D_n)")]
    NoRealization(DynkinType),
    #[error("word has {letters} letters but {params} parameters")]
    LengthMismatch { letters: usize, params: usize },
    #[error(
        "row indices {rows:?} and column indices {cols:?} do not select a square submatrix of a {size}x{size} matrix"
    )]
    BadIndices { rows: Vec<usize>, cols: Vec<usize>, size: usize },
    #[error("unknown determinant strategy `{0}`")]
    UnknownStrategy(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Letters (1-based vertices) with one parameter name per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<usize>,
    pub params: Vec<String>,
}

impl Word {
    pub fn new(letters: Vec<usize>, params: Vec<String>) -> Result<Self, NMatrixError> {
        if letters.len() != params.len() {
            return Err(NMatrixError::LengthMismatch { letters: letters.len(), params: params.len() });
        }
        Ok(Word { letters, params })
    }

    /// Parameters `t1, ..., tk`.
    pub fn with_default_params(letters: Vec<usize>) -> Self {
        let params = (1..=letters.len()).map(|i| format!("t{i}")).collect();
        Word { letters, params }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn ring(&self) -> Result<Ring, NMatrixError> {
        Ok(Ring::new(&self.params)?)
    }
}

/// Matrix size of the realization: `n + 1` for `A_n`, `2n` for `D_n`.
pub fn realization_size(ty: DynkinType) -> Result<usize, NMatrixError> {
    match ty {
        DynkinType::A(n) => Ok(n + 1),
        DynkinType::D(n) => Ok(2 * n),
        DynkinType::E(_) => Err(NMatrixError::NoRealization(ty)),
    }
}

/// 1-based positions `(r, c)` of the off-diagonal entries of `x_i(t)`.
pub fn generator_positions(ty: DynkinType, i: usize) -> Result<Vec<(usize, usize)>, NMatrixError> {
    ty.check_vertex(i)?;
    match ty {
        DynkinType::A(_) => Ok(vec![(i, i + 1)]),
        DynkinType::D(n) => {
            if i == 1 {
                Ok(vec![(n - 1, n + 1), (n, n + 2)])
            } else {
                Ok(vec![(n - i + 1, n - i + 2), (n + i - 1, n + i)])
            }
        }
        DynkinType::E(_) => Err(NMatrixError::NoRealization(ty)),
    }
}

/// Square matrix of Laurent polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NMatrix {
    ring: Ring,
    entries: Vec<Vec<LaurentPoly>>,
}

impl NMatrix {
    pub fn identity(ring: &Ring, size: usize) -> Self {
        let entries = (0..size)
            .map(|r| (0..size).map(|c| if r == c { LaurentPoly::one(ring) } else { LaurentPoly::zero(ring) }).collect())
            .collect();
        NMatrix { ring: ring.clone(), entries }
    }

    pub fn from_entries(ring: &Ring, entries: Vec<Vec<LaurentPoly>>) -> Self {
        NMatrix { ring: ring.clone(), entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// 1-based entry access, as in the matrix notation `n_ij`.
    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    /// First row, `(n_11, ..., n_1m)`.
    pub fn first_row(&self) -> Vec<LaurentPoly> {
        self.entries[0].clone()
    }

    pub fn is_unitriangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, v)| match r.cmp(&c) {
                std::cmp::Ordering::Equal => v.is_one(),
                std::cmp::Ordering::Greater => v.is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
    }

    pub fn mul(&self, other: &NMatrix) -> Result<NMatrix, NMatrixError> {
        let n = self.size();
        let mut out = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let mut acc = LaurentPoly::zero(&self.ring);
                for k in 0..n {
                    let a = &self.entries[r][k];
                    let b = &other.entries[k][c];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&a.checked_mul(b)?)?;
                }
                row.push(acc);
            }
            out.push(row);
        }
        Ok(NMatrix { ring: self.ring.clone(), entries: out })
    }

    /// Substitute values for every parameter.
    pub fn evaluate(
        &self,
        point: &[num_rational::BigRational],
    ) -> Result<Vec<Vec<num_rational::BigRational>>, NMatrixError> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate_slice(point).map_err(NMatrixError::from)).collect())
            .collect()
    }

    pub fn to_records(&self) -> Vec<Vec<LaurentRecord>> {
        self.entries.iter().map(|row| row.iter().map(|p| p.to_record()).collect()).collect()
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<LaurentPoly, NMatrixError> {
        self.minor_with(rows, cols, &Bareiss)
    }

    /// Minor on 1-based, strictly increasing `rows` and `cols`.
    pub fn minor_with(
        &self,
        rows: &[usize],
        cols: &[usize],
        strategy: &dyn DeterminantStrategy,
    ) -> Result<LaurentPoly, NMatrixError> {
        let size = self.size();
        let valid = |ix: &[usize]| ix.windows(2).all(|w| w[0] < w[1]) && ix.iter().all(|&i| i >= 1 && i <= size);
        if rows.len() != cols.len() || !valid(rows) || !valid(cols) {
            return Err(NMatrixError::BadIndices { rows: rows.to_vec(), cols: cols.to_vec(), size });
        }
        let sub: Vec<Vec<LaurentPoly>> =
            rows.iter().map(|&r| cols.iter().map(|&c| self.entries[r - 1][c - 1].clone()).collect()).collect();
        strategy.determinant(&self.ring, &sub)
    }
}

/// `x_i(t)` in the realization of `ty`.
pub fn generator(ty: DynkinType, i: usize, ring: &Ring, param: &str) -> Result<NMatrix, NMatrixError> {
    let size = realization_size(ty)?;
    let t = LaurentPoly::var(ring, param)?;
    let mut m = NMatrix::identity(ring, size);
    for (r, c) in generator_positions(ty, i)? {
        m.entries[r - 1][c - 1] = t.clone();
    }
    Ok(m)
}

/// `x_{i_1}(t_1) ... x_{i_k}(t_k)`, multiplied left to right.
pub fn product(ty: DynkinType, word: &Word) -> Result<NMatrix, NMatrixError> {
    let ring = word.ring()?;
    let size = realization_size(ty)?;
    let mut acc = NMatrix::identity(&ring, size);
    for (k, &i) in word.letters.iter().enumerate() {
        // multiplying by I + tE on the right adds t * column r to column c
        let t = LaurentPoly::var_at(&ring, k);
        let positions = generator_positions(ty, i)?;
        let mut next = acc.entries.clone();
        for &(r, c) in &positions {
            for row in 0..size {
                let a = &acc.entries[row][r - 1];
                if !a.is_zero() {
                    next[row][c - 1] = next[row][c - 1].checked_add(&a.checked_mul(&t)?)?;
                }
            }
        }
        acc.entries = next;
    }
    Ok(acc)
}

/// The generic upper unitriangular matrix with entries `n_ij`, `i < j`.
pub fn generic_unitriangular(size: usize) -> NMatrix {
    let names: Vec<String> = (1..=size).flat_map(|i| (i + 1..=size).map(move |j| format!("n{i}{j}"))).collect();
    let ring = Ring::new(&names).expect("distinct names");
    let mut m = NMatrix::identity(&ring, size);
    for i in 1..=size {
        for j in i + 1..=size {
            m.entries[i - 1][j - 1] = LaurentPoly::var(&ring, &format!("n{i}{j}")).expect("declared");
        }
    }
    m
}

/// Determinant algorithm over Laurent polynomials.
pub trait DeterminantStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn determinant(&self, ring: &Ring, m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, NMatrixError>;
}

/// Fraction-free elimination; every intermediate division is exact.
pub struct Bareiss;

/// Laplace expansion along the first row; exponential, meant for small sizes
/// and as an independent check on [`Bareiss`].
pub struct Cofactor;

impl DeterminantStrategy for Bareiss {
    fn name(&self) -> &'static str {
        "bareiss"
    }

    fn determinant(&self, ring: &Ring, m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, NMatrixError> {
        let n = m.len();
        if n == 0 {
            return Ok(LaurentPoly::one(ring));
        }
        if n <= 2 {
            return Cofactor.determinant(ring, m);
        }
        let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
        let mut sign = false;
        let mut prev = LaurentPoly::one(ring);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(LaurentPoly::zero(ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].checked_mul(&a[k][k])?.checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                    a[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign { -det } else { det })
    }
}

impl DeterminantStrategy for Cofactor {
    fn name(&self) -> &'static str {
        "cofactor"
    }

    fn determinant(&self, ring: &Ring, m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, NMatrixError> {
        let n = m.len();
        match n {
            0 => return Ok(LaurentPoly::one(ring)),
            1 => return Ok(m[0][0].clone()),
            _ => {}
        }
        let mut acc = LaurentPoly::zero(ring);
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let sub: Vec<Vec<LaurentPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = m[0][c].checked_mul(&self.determinant(ring, &sub)?)?;
            acc = if c % 2 == 0 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
        }
        Ok(acc)
    }
}

pub const DETERMINANT_STRATEGIES: &[&str] = &["bareiss", "cofactor"];

pub fn determinant_strategy(name: &str) -> Result<Box<dyn DeterminantStrategy>, NMatrixError> {
    match name {
        "bareiss" => Ok(Box::new(Bareiss)),
        "cofactor" => Ok(Box::new(Cofactor)),
        other => Err(NMatrixError::UnknownStrategy(other.to_string())),
    }
}

/// `sum_{i=1}^{n} (-1)^(i-1) y_i y_{2n+1-i}` on a vector of length `2n`.
pub fn quadric_form(row: &[LaurentPoly]) -> Result<LaurentPoly, NMatrixError> {
    let m = row.len();
    assert!(m.is_multiple_of(2) && m > 0, "quadric form needs an even, nonempty vector");
    let n = m / 2;
    let mut acc = LaurentPoly::zero(row[0].ring());
    for i in 1..=n {
        let term = row[i - 1].checked_mul(&row[m - i])?;
        acc = if i % 2 == 1 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricCheck {
    pub holds: bool,
    /// A surviving term of the form, when it does not vanish.
    pub witness: Option<String>,
}

impl QuadricCheck {
    fn from_value(q: &LaurentPoly) -> Self {
        let witness = q.leading_term().map(|(m, c)| LaurentPoly::monomial(q.ring(), m.clone(), c.clone()).to_string());
        QuadricCheck { holds: q.is_zero(), witness }
    }
}

pub fn check_quadric_row(row: &[LaurentPoly]) -> Result<QuadricCheck, NMatrixError> {
    Ok(QuadricCheck::from_value(&quadric_form(row)?))
}

/// The first row of the product over `word` (default: a bipartite reduced
/// word for `w_0`) lies on the isotropic cone of the quadric form.
pub fn verify_quadric_relation(ty: DynkinType, word: Option<&[usize]>) -> Result<QuadricCheck, NMatrixError> {
    if !matches!(ty, DynkinType::D(_)) {
        return Err(NMatrixError::NoRealization(ty));
    }
    let letters = word.map(|w| w.to_vec()).unwrap_or_else(|| ty.bipartite_longest_word());
    let x = product(ty, &Word::with_default_params(letters))?;
    check_quadric_row(&x.first_row())
}

/// Parse a polynomial like `t3*t4 + 2*t7^2 - t1^-1` over `ring`.
pub fn parse_poly(ring: &Ring, s: &str) -> Result<LaurentPoly, LaurentError> {
    let mut acc = LaurentPoly::zero(ring);
    let cleaned = s.replace(' ', "");
    if cleaned.is_empty() || cleaned == "0" {
        return Ok(acc);
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && prev.is_some_and(|p| p != '^') {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((negative, current));
    for (neg, body) in terms {
        let mut coeff = BigInt::one();
        let mut exps = vec![0i32; ring.len()];
        for factor in body.split('*') {
            if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                coeff *= factor.parse::<BigInt>().map_err(|_| LaurentError::BadCoefficient(factor.to_string()))?;
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<i32>().map_err(|_| LaurentError::BadCoefficient(factor.to_string()))?),
                None => (factor, 1),
            };
            let idx = ring.index_of(name).ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))?;
            exps[idx] += e;
        }
        if neg {
            coeff = -coeff;
        }
        if !coeff.is_zero() {
            acc = acc.checked_add(&LaurentPoly::monomial(ring, crate::laurent::Monomial(exps), coeff))?;
        }
    }
    Ok(acc)
}

/// Map each parameter name to a value; convenience for tests and the CLI.
pub fn point_from_pairs(pairs: &[(&str, i64)]) -> HashMap<String, num_rational::BigRational> {
    pairs.iter().map(|&(n, v)| (n.to_string(), num_rational::BigRational::from_integer(v.into()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[usize]) -> Word {
        Word::with_default_params(letters.to_vec())
    }

    #[test]
    fn d4_generators() {
        let w = word(&[4]);
        let x = generator(DynkinType::D(4), 4, &w.ring().unwrap(), "t1").unwrap();
        assert_eq!(x.entry(1, 2).to_string(), "t1");
        assert_eq!(x.entry(7, 8).to_string(), "t1");
        let w1 = generator(DynkinType::D(4), 1, &w.ring().unwrap(), "t1").unwrap();
        assert_eq!(w1.entry(3, 5).to_string(), "t1");
        assert_eq!(w1.entry(4, 6).to_string(), "t1");
        assert!(generator(DynkinType::D(4), 5, &w.ring().unwrap(), "t1").is_err());
    }

    #[test]
    fn product_matches_generator_multiplication() {
        let ty = DynkinType::D(4);
        let w = word(&[1, 3, 4, 3, 2]);
        let ring = w.ring().unwrap();
        let mut slow = NMatrix::identity(&ring, 8);
        for (k, &i) in w.letters.iter().enumerate() {
            slow = slow.mul(&generator(ty, i, &ring, &w.params[k]).unwrap()).unwrap();
        }
        assert_eq!(product(ty, &w).unwrap(), slow);
    }

    #[test]
    fn a2_product_and_minor() {
        let x = product(DynkinType::A(2), &word(&[1, 2, 1])).unwrap();
        let r = x.ring().clone();
        assert_eq!(x.entry(1, 2), &parse_poly(&r, "t1 + t3").unwrap());
        assert_eq!(x.entry(1, 3), &parse_poly(&r, "t1*t2").unwrap());
        assert_eq!(x.entry(2, 3), &parse_poly(&r, "t2").unwrap());
        assert_eq!(x.minor(&[1, 2], &[2, 3]).unwrap(), parse_poly(&r, "t2*t3").unwrap());
        assert!(x.minor(&[1, 2, 3], &[1, 2, 3]).unwrap().is_one());
        assert!(x.minor(&[2, 1], &[1, 2]).is_err());
        assert!(x.minor(&[1], &[1, 2]).is_err());
        assert!(x.minor(&[1, 4], &[1, 2]).is_err());
    }

    #[test]
    fn empty_word_is_identity() {
        let x = product(DynkinType::D(4), &word(&[])).unwrap();
        assert_eq!(x, NMatrix::identity(x.ring(), 8));
        assert!(verify_quadric_relation(DynkinType::D(4), Some(&[])).unwrap().holds);
    }

    #[test]
    fn bareiss_agrees_with_cofactor() {
        let g = generic_unitriangular(5);
        let rows = [1, 2, 4];
        let cols = [2, 4, 5];
        assert_eq!(g.minor_with(&rows, &cols, &Bareiss).unwrap(), g.minor_with(&rows, &cols, &Cofactor).unwrap());
        let all = [1, 2, 3, 4];
        let gt = generic_unitriangular(4);
        // a full matrix with a zero leading entry forces a pivot swap
        let e = gt.entries();
        let t: Vec<Vec<LaurentPoly>> = (0..4).map(|r| (0..4).map(|c| e[c][(r + 1) % 4].clone()).collect()).collect();
        let m = NMatrix::from_entries(gt.ring(), t);
        assert_eq!(m.minor_with(&all, &all, &Bareiss).unwrap(), m.minor_with(&all, &all, &Cofactor).unwrap());
    }

    #[test]
    fn quadric_perturbation_detected() {
        let x = product(DynkinType::D(4), &word(&DynkinType::D(4).bipartite_longest_word())).unwrap();
        let mut row = x.first_row();
        assert!(check_quadric_row(&row).unwrap().holds);
        row[7] = &row[7] + &LaurentPoly::one(x.ring());
        let c = check_quadric_row(&row).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.as_deref(), Some("1"));
    }

    #[test]
    fn parse_poly_round_trip() {
        let r = Ring::numbered("t", 3);
        let p = parse_poly(&r, "-2*t1^2*t3 + t2^-1 - 5").unwrap();
        assert_eq!(parse_poly(&r, &p.to_string()).unwrap(), p);
    }
}

//! Chain counting: exact over the rationals when every step is forced, and
//! point counts over prime fields otherwise.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::PhiError;
use crate::linalg::{primes, Field, Matrix, PrimeField};
use crate::prepmod::{Filtration, QuiverRep, RatRep};

/// Primes examined before giving up, counting those skipped for bad reduction.
const PRIME_SEARCH_LIMIT: usize = 40;
/// Primes actually used for interpolation.
const PRIME_CAP: usize = 12;

type ModpKey = (u64, Vec<usize>, Vec<Matrix<u64>>, Vec<usize>);
type ExactKey = (Vec<usize>, Vec<Matrix<BigRational>>, Vec<usize>);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MemoStats {
    pub entries: usize,
    pub bytes: usize,
    pub hits: usize,
}

/// Memo tables for chain counts. Keys are the exact matrices of the module
/// together with the remaining word, so a hit is always sound.
#[derive(Debug, Default)]
pub struct ChiEngine {
    exact_memo: HashMap<ExactKey, Option<BigInt>>,
    modp_memo: HashMap<ModpKey, u128>,
    budget: Option<usize>,
    stats: MemoStats,
}

impl ChiEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(bytes: Option<usize>) -> Self {
        ChiEngine { budget: bytes, ..Self::default() }
    }

    /// Budget from `CLUSTERFORGE_MAX_MEM` (bytes, or with a `K`/`M`/`G` suffix).
    pub fn from_env() -> Result<Self, String> {
        match std::env::var("CLUSTERFORGE_MAX_MEM") {
            Ok(v) => {
                parse_bytes(&v).map(|b| Self::with_budget(Some(b))).ok_or(format!("bad CLUSTERFORGE_MAX_MEM `{v}`"))
            }
            Err(_) => Ok(Self::new()),
        }
    }

    pub fn stats(&self) -> MemoStats {
        self.stats
    }

    fn charge(&mut self, bytes: usize) -> Result<(), PhiError> {
        self.stats.bytes += bytes;
        self.stats.entries += 1;
        match self.budget {
            Some(b) if self.stats.bytes > b => Err(PhiError::ResourceLimit { budget: b }),
            _ => Ok(()),
        }
    }

    /// `Some(count)` when every run is forced; `None` if some run of `r`
    /// copies of `i` meets an `S_i`-socle part of dimension greater than `r`.
    pub fn exact(&mut self, m: &RatRep, word: &[usize]) -> Result<Option<BigInt>, PhiError> {
        if word.is_empty() {
            return Ok(Some(BigInt::from(u8::from(m.is_zero()))));
        }
        if !letter_counts_match(m.dims(), word) {
            return Ok(Some(BigInt::zero()));
        }
        let key: ExactKey = (m.dims().to_vec(), m.maps().to_vec(), word.to_vec());
        if let Some(v) = self.exact_memo.get(&key) {
            self.stats.hits += 1;
            return Ok(v.clone());
        }
        let i = word[0];
        let run = word.iter().take_while(|&&l| l == i).count();
        let s = m.socle_at(i).ncols();
        let value = if s < run {
            Some(BigInt::zero())
        } else if s > run {
            None
        } else {
            let rest = self.exact(&m.e_dagger(i), &word[run..])?;
            rest.map(|r| r * factorial(run))
        };
        self.charge(entry_bytes(m.maps().iter().map(|x| x.nrows() * x.ncols()).sum(), word.len()) * 4)?;
        self.exact_memo.insert(key, value.clone());
        Ok(value)
    }

    /// Number of chains `0 = M_0 ⊂ ... ⊂ M_d = M` with `M_k / M_{k-1} ≅ S_{i_k}`
    /// over `F_p`, built from the socle up one line at a time.
    pub fn count_flags_mod_p(&mut self, m: &QuiverRep<PrimeField>, word: &[usize]) -> Result<u128, PhiError> {
        if word.is_empty() {
            return Ok(u128::from(m.is_zero()));
        }
        if !letter_counts_match(m.dims(), word) {
            return Ok(0);
        }
        let f = *m.field();
        let key: ModpKey = (f.modulus(), m.dims().to_vec(), m.maps().to_vec(), word.to_vec());
        if let Some(&v) = self.modp_memo.get(&key) {
            self.stats.hits += 1;
            return Ok(v);
        }
        let i = word[0];
        let soc = m.socle_at(i);
        let mut total: u128 = 0;
        for c in projective_points(&f, soc.ncols()) {
            let v = soc.mul(&f, &Matrix::from_rows(c.into_iter().map(|x| vec![x]).collect(), 1));
            let mut bases = m.zero_subspaces();
            bases[i - 1] = v;
            let q = m.quotient(&bases).expect("a socle line spans a submodule");
            total += self.count_flags_mod_p(&q, &word[1..])?;
        }
        self.charge(entry_bytes(m.maps().iter().map(|x| x.nrows() * x.ncols()).sum(), word.len()))?;
        self.modp_memo.insert(key, total);
        Ok(total)
    }

    /// Fit counts over successive good primes until the polynomial of the
    /// first `k` points predicts the next two; return its value at 1.
    pub fn interpolate(&mut self, m: &RatRep, word: &[usize]) -> Result<(BigInt, Vec<u64>), PhiError> {
        if !letter_counts_match(m.dims(), word) {
            return Ok((BigInt::zero(), Vec::new()));
        }
        let reference = reduction_fingerprint(m);
        let mut points: Vec<(u64, u128)> = Vec::new();
        for p in primes().take(PRIME_SEARCH_LIMIT) {
            let Ok(reduced) = m.reduce_mod(p) else { continue };
            if reduced.check_relation().is_err() || reduction_fingerprint(&reduced) != reference {
                continue;
            }
            let count = self.count_flags_mod_p(&reduced, word)?;
            points.push((p, count));
            let n = points.len();
            if n >= 3 {
                let k = n - 2;
                let fit = &points[..k];
                if points[k..].iter().all(|&(x, y)| lagrange_eval(fit, x) == big(y)) {
                    let at_one = lagrange_eval(fit, 1);
                    if !at_one.is_integer() {
                        return Err(PhiError::NonIntegral(at_one.to_string()));
                    }
                    return Ok((at_one.to_integer(), points.iter().map(|&(p, _)| p).collect()));
                }
            }
            if n >= PRIME_CAP {
                break;
            }
        }
        Err(PhiError::Undetermined { primes: points.len() })
    }
}

fn letter_counts_match(dims: &[usize], word: &[usize]) -> bool {
    let mut counts = vec![0usize; dims.len()];
    for &l in word {
        if l == 0 || l > dims.len() {
            return false;
        }
        counts[l - 1] += 1;
    }
    counts == dims
}

fn entry_bytes(matrix_entries: usize, word_len: usize) -> usize {
    64 + 8 * (matrix_entries + word_len)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn big(v: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Value at `x` of the polynomial through `points`, by Lagrange's formula.
fn lagrange_eval(points: &[(u64, u128)], x: u64) -> BigRational {
    let mut acc = BigRational::zero();
    for (j, &(xj, yj)) in points.iter().enumerate() {
        let mut term = big(yj);
        for (k, &(xk, _)) in points.iter().enumerate() {
            if k != j {
                term *= BigRational::new(BigInt::from(x) - BigInt::from(xk), BigInt::from(xj) - BigInt::from(xk));
            }
        }
        acc += term;
    }
    acc
}

/// Dimension data that a good reduction must preserve.
fn reduction_fingerprint<F: Field>(m: &QuiverRep<F>) -> (Vec<usize>, Filtration, Filtration) {
    (m.dims().to_vec(), m.socle_filtration(), m.radical_filtration())
}

/// Representatives of the lines in `F_p^s`: first nonzero coordinate is 1.
fn projective_points(f: &PrimeField, s: usize) -> Vec<Vec<u64>> {
    let p = f.modulus();
    let mut out = Vec::new();
    for lead in 0..s {
        let free = s - lead - 1;
        let total = p.pow(free as u32);
        for mut code in 0..total {
            let mut v = vec![0u64; s];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = code % p;
                code /= p;
            }
            out.push(v);
        }
    }
    out
}

fn parse_bytes(s: &str) -> Option<usize> {
    let t = s.trim();
    let (num, mult) = match t.chars().last()? {
        'k' | 'K' => (&t[..t.len() - 1], 1usize << 10),
        'm' | 'M' => (&t[..t.len() - 1], 1 << 20),
        'g' | 'G' => (&t[..t.len() - 1], 1 << 30),
        _ => (t, 1),
    };
    num.trim().parse::<usize>().ok()?.checked_mul(mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;
    use crate::linalg::Rationals;
    use crate::prepmod::injective;

    #[test]
    fn lines_in_planes() {
        let a2 = DynkinType::A(2);
        let m = RatRep::with_zero_maps(a2, Rationals, vec![2, 0]);
        let mut e = ChiEngine::new();
        for p in [2u64, 3, 5] {
            assert_eq!(e.count_flags_mod_p(&m.reduce_mod(p).unwrap(), &[1, 1]).unwrap(), u128::from(p + 1));
        }
        // the exact backend sees a forced run of length two: 2! chains
        assert_eq!(e.exact(&m, &[1, 1]).unwrap(), Some(BigInt::from(2)));
        let (v, primes) = e.interpolate(&m, &[1, 1]).unwrap();
        assert_eq!(v, BigInt::from(2));
        assert_eq!(primes, vec![2, 3, 5, 7]);
    }

    #[test]
    fn a2_injective_counts() {
        let a2 = DynkinType::A(2);
        let q1 = injective(a2, Rationals, 1).unwrap();
        let mut e = ChiEngine::new();
        let q2p = q1.reduce_mod(2).unwrap();
        assert_eq!(e.count_flags_mod_p(&q2p, &[1, 2]).unwrap(), 1);
        assert_eq!(e.count_flags_mod_p(&q2p, &[2, 1]).unwrap(), 0);
        assert_eq!(e.exact(&q1, &[2, 1]).unwrap(), Some(BigInt::zero()));
        let s1 = RatRep::simple(a2, Rationals, 1).unwrap();
        assert_eq!(e.exact(&s1, &[1]).unwrap(), Some(BigInt::one()));
    }

    #[test]
    fn choice_needs_interpolation() {
        let m = RatRep::with_zero_maps(DynkinType::A(1), Rationals, vec![3]);
        let mut e = ChiEngine::new();
        assert_eq!(e.exact(&m, &[1, 1, 1]).unwrap(), Some(BigInt::from(6)));
        let m2 = RatRep::with_zero_maps(DynkinType::A(2), Rationals, vec![2, 1]);
        assert_eq!(e.exact(&m2, &[1, 2, 1]).unwrap(), None);
        // a line in the S1 part (P^1), then S2, then the remaining S1
        let (v, _) = e.interpolate(&m2, &[1, 2, 1]).unwrap();
        assert_eq!(v, BigInt::from(2));
        let (v, _) = e.interpolate(&m2, &[1, 1, 2]).unwrap();
        assert_eq!(v, BigInt::from(2));
    }

    #[test]
    fn budget_is_enforced() {
        let m = injective(DynkinType::D(4), Rationals, 4).unwrap();
        let mut e = ChiEngine::with_budget(Some(10));
        assert!(matches!(e.exact(&m, &[4, 3, 1, 2, 3, 4]), Err(PhiError::ResourceLimit { budget: 10 })));
        assert_eq!(parse_bytes("2K"), Some(2048));
        assert_eq!(parse_bytes("x"), None);
    }

    #[test]
    fn projective_point_counts() {
        let f = PrimeField::new(3);
        assert_eq!(projective_points(&f, 2).len(), 4);
        assert_eq!(projective_points(&f, 3).len(), 13);
        assert!(projective_points(&f, 0).is_empty());
    }
}

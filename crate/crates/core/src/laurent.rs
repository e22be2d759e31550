//! Exact multivariate Laurent polynomials with big-integer coefficients.
//!
//! Every polynomial lives in a [`Ring`], an ordered list of variable names.
//! Arithmetic between polynomials of different rings is an error: two rings
//! are the same only when their name lists agree exactly.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded-lexicographic, so structural equality is polynomial equality and
//! serialization order is deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in ring")]
    DuplicateVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: ({dividend}) / ({divisor}) leaves a nonzero remainder")]
    InexactDivision { dividend: String, divisor: String },
    #[error("evaluation divides by zero at variable `{0}`")]
    EvaluationPole(String),
    #[error("no value supplied for variable `{0}`")]
    MissingValue(String),
    #[error("exponent vector has length {got}, ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
}

/// An ordered set of variable names shared by a family of polynomials.
#[derive(Clone)]
pub struct Ring {
    names: Arc<Vec<String>>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, LaurentError> {
        let mut seen = std::collections::HashSet::new();
        let mut owned = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().to_string();
            if !seen.insert(n.clone()) {
                return Err(LaurentError::DuplicateVariable(n));
            }
            owned.push(n);
        }
        Ok(Ring { names: Arc::new(owned) })
    }

    /// Ring with variables `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, count: usize) -> Self {
        let names: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
        Ring { names: Arc::new(names) }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn describe(&self) -> String {
        self.names.join(",")
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl PartialOrd for Ring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.names.cmp(&other.names)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.describe())
    }
}

/// Exponent vector; negative entries allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    // graded lex: total degree first, then the first differing exponent
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(ring: &Ring) -> Self {
        LaurentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Ring, c: impl Into<BigInt>) -> Self {
        Self::monomial(ring, Monomial::one(ring.len()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.0.len(), ring.len(), "monomial arity");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, LaurentError> {
        let idx = ring.index_of(name).ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(ring, idx))
    }

    pub fn var_at(ring: &Ring, idx: usize) -> Self {
        let mut e = vec![0; ring.len()];
        e[idx] = 1;
        Self::monomial(ring, Monomial(e), 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, collecting
    /// like terms and dropping zeros.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != ring.len() {
                return Err(LaurentError::ArityMismatch { expected: ring.len(), got: e.len() });
            }
            accumulate(&mut out, Monomial(e), c);
        }
        Ok(LaurentPoly { ring: ring.clone(), terms: out })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| c.is_one() && m.0.iter().all(|&e| e == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Componentwise minimum of the exponent vectors (monomial content).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.ring.len());
        };
        let mut acc = first.0.clone();
        for m in it {
            for (a, b) in acc.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        Monomial(acc)
    }

    /// Per-variable degree: the maximum exponent of variable `idx`.
    pub fn degree_in(&self, idx: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    fn check_ring(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(LaurentError::RingMismatch { left: self.ring.describe(), right: other.ring.describe() })
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(LaurentPoly { ring: self.ring.clone(), terms })
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c);
        }
        Ok(LaurentPoly { ring: self.ring.clone(), terms })
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(LaurentPoly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.ring);
        }
        LaurentPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Multiplies by the monomial `x^shift` (unit coefficient).
    pub fn shift(&self, shift: &Monomial) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(shift), c.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Monomial divisors always succeed when the coefficient divides. Other
    /// divisors are handled by stripping monomial content from both sides and
    /// running multivariate long division; any remainder is reported as
    /// [`LaurentError::InexactDivision`].
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(&self.ring));
        }
        let inexact = || LaurentError::InexactDivision { dividend: self.to_string(), divisor: divisor.to_string() };
        if let Some((dm, dc)) = divisor.as_monomial() {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(inexact());
                }
                terms.insert(m.div(dm), q);
            }
            return Ok(LaurentPoly { ring: self.ring.clone(), terms });
        }

        let a = self.min_exponents();
        let b = divisor.min_exponents();
        let mut rem = self.shift(&Monomial(a.0.iter().map(|e| -e).collect()));
        let den = divisor.shift(&Monomial(b.0.iter().map(|e| -e).collect()));
        let (lm, lc) = {
            let (m, c) = den.leading_term().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(inexact());
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(inexact());
            }
            let qm = m.div(&lm);
            let step = den.shift(&qm).scale(&qc);
            rem = rem.checked_sub(&step)?;
            accumulate(&mut quotient, qm, qc);
        }
        let q = LaurentPoly { ring: self.ring.clone(), terms: quotient };
        Ok(q.shift(&a.div(&b)))
    }

    /// Exact rational value at `point`, given in ring order.
    pub fn evaluate_slice(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.ring.len() {
            return Err(LaurentError::ArityMismatch { expected: self.ring.len(), got: point.len() });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && point[i].is_zero() {
                    return Err(LaurentError::EvaluationPole(self.ring.names[i].clone()));
                }
                v *= point[i].pow(e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact rational value at a named point. Variables absent from every
    /// term may be omitted.
    pub fn evaluate(&self, point: &HashMap<String, BigRational>) -> Result<BigRational, LaurentError> {
        let mut vals = Vec::with_capacity(self.ring.len());
        for (i, name) in self.ring.names.iter().enumerate() {
            match point.get(name) {
                Some(v) => vals.push(v.clone()),
                None => {
                    if self.terms.keys().any(|m| m.0[i] != 0) {
                        return Err(LaurentError::MissingValue(name.clone()));
                    }
                    vals.push(BigRational::zero());
                }
            }
        }
        self.evaluate_slice(&vals)
    }

    /// Re-expresses the polynomial in `target`, which must contain every
    /// variable that actually occurs.
    pub fn embed(&self, target: &Ring) -> Result<LaurentPoly, LaurentError> {
        let map: Vec<Option<usize>> = self.ring.names.iter().map(|n| target.index_of(n)).collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x != 0 {
                    let j = map[i].ok_or_else(|| LaurentError::UnknownVariable(self.ring.names[i].clone()))?;
                    e[j] = x;
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(LaurentPoly { ring: target.clone(), terms })
    }

    pub fn to_record(&self) -> LaurentRecord {
        LaurentRecord {
            vars: self.ring.names.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRecord { exponents: m.0.clone(), coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn from_record(rec: &LaurentRecord) -> Result<Self, LaurentError> {
        let ring = Ring::new(&rec.vars)?;
        Self::from_record_in(rec, &ring)
    }

    /// Parses a record, reusing `ring` when the variable lists agree.
    pub fn from_record_in(rec: &LaurentRecord, ring: &Ring) -> Result<Self, LaurentError> {
        if rec.vars.as_slice() != ring.names() {
            return Err(LaurentError::RingMismatch { left: rec.vars.join(","), right: ring.describe() });
        }
        let mut terms = Vec::with_capacity(rec.terms.len());
        for t in &rec.terms {
            let c: BigInt = t.coeff.parse().map_err(|_| LaurentError::BadCoefficient(t.coeff.clone()))?;
            terms.push((t.exponents.clone(), c));
        }
        Self::from_terms(ring, terms)
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Wire form: the variable list plus `{exponents, coeff}` records in stored
/// (ascending graded-lex) order; coefficients are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentRecord {
    pub vars: Vec<String>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<i32>,
    pub coeff: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = LaurentRecord::deserialize(d)?;
        LaurentPoly::from_record(&rec).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

// Operator forms panic on ring mismatch; the `checked_*` methods report it.
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Ring, LaurentPoly, LaurentPoly) {
        let r = Ring::new(&["x", "y"]).unwrap();
        let x = LaurentPoly::var(&r, "x").unwrap();
        let y = LaurentPoly::var(&r, "y").unwrap();
        (r, x, y)
    }

    #[test]
    fn additive_inverse_and_collection() {
        let (_, x, y) = xy();
        assert!((&x + &(-&x)).is_zero());
        let s = &(&x + &y) + &y;
        assert_eq!(s.to_string(), "x + 2*y");
    }

    #[test]
    fn exchange_numerator() {
        let r = Ring::numbered("y", 7);
        let v = |i: usize| LaurentPoly::var_at(&r, i - 1);
        let num = &(&v(2) * &v(4)) + &(&v(3) * &v(5));
        assert_eq!(num.num_terms(), 2);
        let q = num.div_exact(&v(1)).unwrap();
        assert_eq!(q.to_string(), "y1^-1*y2*y4 + y1^-1*y3*y5");
        assert_eq!(&q * &v(1), num);
    }

    #[test]
    fn unit_inverse_and_difference_of_squares() {
        let (r, x, y) = xy();
        let xinv = LaurentPoly::monomial(&r, Monomial(vec![-1, 0]), 1);
        assert!((&x * &xinv).is_one());
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert_eq!(x.pow(2).div_exact(&x).unwrap(), x);
    }

    #[test]
    fn phi_product_in_a2() {
        let r = Ring::numbered("t", 3);
        let t = |i: usize| LaurentPoly::var_at(&r, i - 1);
        let lhs = &(&t(1) + &t(3)) * &t(2);
        assert_eq!(lhs, &(&t(1) * &t(2)) + &(&t(2) * &t(3)));
    }

    #[test]
    fn inexact_division_is_an_error() {
        let (_, x, y) = xy();
        let e = (&x + &y).div_exact(&(&x - &y)).unwrap_err();
        assert!(matches!(e, LaurentError::InexactDivision { .. }));
        let two = LaurentPoly::constant(x.ring(), 2);
        assert!(x.div_exact(&two).is_err());
        assert_eq!(x.div_exact(&LaurentPoly::zero(x.ring())), Err(LaurentError::DivisionByZero));
    }

    #[test]
    fn division_with_laurent_content() {
        let (r, x, y) = xy();
        let xinv = LaurentPoly::monomial(&r, Monomial(vec![-1, 0]), 1);
        let q = &(&x * &y) + &xinv;
        let d = &(&y * &y) - &(&x * &xinv.pow(3));
        let p = &q * &d;
        assert_eq!(p.div_exact(&d).unwrap(), q);
        assert_eq!(p.div_exact(&q).unwrap(), d);
    }

    #[test]
    fn ring_mismatch_reported() {
        let (_, x, _) = xy();
        let other = Ring::new(&["x", "z"]).unwrap();
        let z = LaurentPoly::var(&other, "z").unwrap();
        assert!(matches!(x.checked_add(&z), Err(LaurentError::RingMismatch { .. })));
        assert!(x.checked_mul(&z).is_err());
    }

    #[test]
    fn evaluation() {
        let r = Ring::numbered("t", 3);
        let t = |i: usize| LaurentPoly::var_at(&r, i - 1);
        let q = |n: i64| BigRational::from_integer(n.into());
        let mut pt = HashMap::new();
        pt.insert("t1".to_string(), q(1));
        pt.insert("t3".to_string(), q(2));
        assert_eq!((&t(1) + &t(3)).evaluate(&pt).unwrap(), q(3));
        let mut pt = HashMap::new();
        pt.insert("t1".to_string(), q(2));
        pt.insert("t2".to_string(), q(3));
        assert_eq!((&t(1) * &t(2)).evaluate(&pt).unwrap(), q(6));
        let inv = LaurentPoly::monomial(&r, Monomial(vec![-1, 0, 0]), 1);
        let pole = inv.evaluate_slice(&[q(0), q(1), q(1)]).unwrap_err();
        assert_eq!(pole, LaurentError::EvaluationPole("t1".into()));
        assert!(matches!(t(2).evaluate(&HashMap::new()), Err(LaurentError::MissingValue(_))));
    }

    #[test]
    fn record_round_trip_keeps_order() {
        let (_, x, y) = xy();
        let p = &(&x.pow(2) - &y) + &LaurentPoly::constant(x.ring(), 7);
        let json = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let rec = p.to_record();
        assert_eq!(rec.terms[0].exponents, vec![0, 0]);
        assert_eq!(rec.terms[0].coeff, "7");
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Ring::new(&["a", "a"]).is_err());
    }
}

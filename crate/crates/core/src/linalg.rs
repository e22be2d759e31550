//! Dense matrices over exact fields: the rationals and prime fields.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field whose elements are plain values; all operations go through the
/// field object so that prime fields can carry their modulus.
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn elem(&self, v: i64) -> Self::Elem;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn elem(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn order(&self) -> Option<u64> {
        None
    }
}

/// `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 31)).contains(&p) && is_prime(p), "{p} is not a usable prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduction of a rational; `None` when `p` divides the denominator.
    pub fn reduce(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = q.numer().mod_floor(&p).to_u64()?;
        Some(self.mul(&num, &self.inv(&den)))
    }

    /// Elements in a fixed order, for enumeration.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(!(*a).is_multiple_of(self.p), "inverse of zero");
        let (mut r, mut e, mut b) = (1u64, self.p - 2, *a % self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.p)
    }
    fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes in increasing order starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input; use `cols` for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<T: Clone + PartialEq>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.rows, c).clone()
            }
        })
    }
}

impl<E: Clone + PartialEq + Eq + Hash + Debug> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), &f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| f.add(self.get(r, c), other.get(r, c)))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| f.sub(self.get(r, c), other.get(r, c)))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        self.map(|x| f.mul(s, x))
    }

    /// Block-diagonal sum.
    pub fn block_diag<F: Field<Elem = E>>(f: &F, a: &Self, b: &Self) -> Self {
        Matrix::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| match (r < a.rows, c < a.cols) {
            (true, true) => a.get(r, c).clone(),
            (false, false) => b.get(r - a.rows, c - a.cols).clone(),
            _ => f.zero(),
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in 0..m.cols {
                let v = f.mul(&inv, m.get(row, c));
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right kernel, as the columns of the result.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Maximal linearly independent subset of the columns, in order.
    pub fn column_basis<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let (_, pivots) = self.rref(f);
        self.select_cols(&pivots)
    }

    /// `X` with `self * X = rhs`, if one exists.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref(f);
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, r.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(f, &Matrix::identity(f, self.rows))?;
        if self.rank(f) == self.rows {
            Some(x)
        } else {
            None
        }
    }

    /// Extend the independent columns of `self` by standard basis vectors
    /// to a basis of the ambient space; returns only the added columns.
    pub fn complement<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let n = self.rows;
        let mut basis = self.column_basis(f);
        let mut added: Vec<usize> = Vec::new();
        for i in 0..n {
            let e = Matrix::from_fn(n, 1, |r, _| if r == i { f.one() } else { f.zero() });
            let trial = basis.hstack(&e);
            if trial.rank(f) > basis.ncols() {
                basis = trial;
                added.push(i);
            }
        }
        Matrix::from_fn(n, added.len(), |r, c| if r == added[c] { f.one() } else { f.zero() })
    }
}

impl Matrix<BigRational> {
    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect(),
            cols,
        )
    }

    /// Reduction mod `p`; `None` if some denominator vanishes.
    pub fn reduce(&self, f: &PrimeField) -> Option<Matrix<u64>> {
        let data = self.data.iter().map(|q| f.reduce(q)).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn denominators_lcm(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    pub fn max_abs_numerator(&self) -> BigInt {
        self.data.iter().map(|q| q.numer().abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rank_kernel_and_solve_over_q() {
        let f = Rationals;
        let m = Matrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]], 3);
        assert_eq!(m.rank(&f), 2);
        let k = m.kernel(&f);
        assert_eq!(k.ncols(), 1);
        assert!(m.mul(&f, &k).is_zero(&f));
        let rhs = Matrix::from_i64_rows(&[vec![6], vec![12], vec![2]], 1);
        let x = m.solve(&f, &rhs).unwrap();
        assert_eq!(m.mul(&f, &x), rhs);
        let bad = Matrix::from_i64_rows(&[vec![1], vec![1], vec![0]], 1);
        assert!(m.solve(&f, &bad).is_none());
        assert!(m.inverse(&f).is_none());
    }

    #[test]
    fn inverse_and_complement() {
        let f = Rationals;
        let m = Matrix::from_i64_rows(&[vec![2, 1], vec![1, 1]], 2);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(&f, 2));
        let u = Matrix::from_i64_rows(&[vec![1], vec![1], vec![0]], 1);
        let c = u.complement(&f);
        assert_eq!(c.ncols(), 2);
        assert_eq!(u.hstack(&c).rank(&f), 3);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7);
        assert_eq!(f.mul(&3, &f.inv(&3)), 1);
        assert_eq!(f.elem(-1), 6);
        assert_eq!(f.reduce(&(q(1) / q(2))), Some(4));
        assert_eq!(f.reduce(&(q(1) / q(7))), None);
        let m = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 4]], 2);
        assert_eq!(m.rank(&f), 1);
        assert_eq!(primes().take(5).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn empty_shapes() {
        let f = Rationals;
        let m: Matrix<BigRational> = Matrix::zeros(&f, 0, 3);
        assert_eq!(m.kernel(&f).ncols(), 3);
        let n: Matrix<BigRational> = Matrix::zeros(&f, 2, 0);
        assert_eq!(n.rank(&f), 0);
        assert_eq!(n.kernel(&f).ncols(), 0);
        assert_eq!(n.complement(&f).ncols(), 2);
    }
}

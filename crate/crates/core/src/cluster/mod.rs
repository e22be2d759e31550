//! Seeds of cluster algebras of geometric type and their mutations.
//!
//! Directions are 0-based in this API (`0..rank`); the command line front
//! end translates from the 1-based numbering used in printed examples.

mod builtin;
mod explore;

pub use builtin::{builtin_seed, BuiltinSeed, BUILTIN_SEED_NAMES};
pub use explore::{
    cluster_monomials, explore, is_finite_type, ClusterMonomial, Edge, ExploreLimits, FiniteTypeReport, MutationClass,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, LaurentRecord, Ring};

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error("direction {direction} out of range for rank {rank}")]
    DirectionOutOfRange { direction: usize, rank: usize },
    #[error("exchange matrix shape: {0}")]
    Shape(String),
    #[error("principal part not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("Laurent phenomenon violated mutating in direction {direction}: {source}\nseed:\n{seed}")]
    LaurentViolation {
        direction: usize,
        seed: String,
        #[source]
        source: LaurentError,
    },
    #[error("seeds with equal clusters carry inconsistent exchange matrices:\n{0}\n{1}")]
    InconsistentMatrix(String, String),
    #[error("mutation class was not exhausted within the limits")]
    NotExhausted,
    #[error("unknown built-in seed `{0}`")]
    UnknownBuiltin(String),
    #[error("quadric seed needs n >= 4, got {0}")]
    QuadricTooSmall(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A `d x (d-n)` integer matrix whose first `d-n` rows are skew-symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    rows: Vec<Vec<i64>>,
    coefficients: usize,
}

impl ExchangeMatrix {
    /// `rows` has `d` entries of length `d - n`; `n` is inferred from the shape.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let d = rows.len();
        let rank = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != rank) {
            return Err(ClusterError::Shape("ragged rows".into()));
        }
        if rank > d {
            return Err(ClusterError::Shape(format!("{d} rows but {rank} columns")));
        }
        for i in 0..rank {
            for j in 0..rank {
                if rows[i][j] != -rows[j][i] {
                    return Err(ClusterError::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(ExchangeMatrix { rows, coefficients: d - rank })
    }

    /// Total variable count `d`.
    pub fn d(&self) -> usize {
        self.rows.len()
    }

    /// Coefficient count `n`.
    pub fn n(&self) -> usize {
        self.coefficients
    }

    pub fn rank(&self) -> usize {
        self.rows.len() - self.coefficients
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_principal_skew_symmetric(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.rows[i][j] == -self.rows[j][i]))
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, ClusterError> {
        if k >= self.rank() {
            return Err(ClusterError::DirectionOutOfRange { direction: k, rank: self.rank() });
        }
        let b = &self.rows;
        let rows = (0..self.d())
            .map(|i| {
                (0..self.rank())
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ExchangeMatrix { rows, coefficients: self.coefficients })
    }

    /// Appends extra coefficient rows.
    pub fn extend_rows(&self, extra: &[Vec<i64>]) -> Result<ExchangeMatrix, ClusterError> {
        let mut rows = self.rows.clone();
        for r in extra {
            if r.len() != self.rank() {
                return Err(ClusterError::Shape("extra row length".into()));
            }
            rows.push(r.clone());
        }
        ExchangeMatrix::new(rows)
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

/// An exchange matrix together with a cluster of `d` Laurent polynomials in
/// the initial variables. The last `n` entries are the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
    labels: Vec<String>,
}

impl Seed {
    /// The initial seed: cluster entry `i` is the `i`-th variable of `ring`.
    pub fn initial(matrix: ExchangeMatrix, ring: &Ring, labels: Vec<String>) -> Result<Self, ClusterError> {
        if ring.len() != matrix.d() {
            return Err(ClusterError::Shape(format!("{} variables for a matrix with {} rows", ring.len(), matrix.d())));
        }
        let cluster = (0..ring.len()).map(|i| LaurentPoly::var_at(ring, i)).collect();
        Self::from_parts(matrix, cluster, labels)
    }

    pub fn from_parts(
        matrix: ExchangeMatrix,
        cluster: Vec<LaurentPoly>,
        labels: Vec<String>,
    ) -> Result<Self, ClusterError> {
        if cluster.len() != matrix.d() {
            return Err(ClusterError::Shape("cluster length differs from d".into()));
        }
        if let Some(first) = cluster.first() {
            if cluster.iter().any(|c| c.ring() != first.ring()) {
                return Err(ClusterError::Shape("cluster entries live in different rings".into()));
            }
        }
        let labels = if labels.is_empty() { (1..=matrix.d()).map(|i| format!("y{i}")).collect() } else { labels };
        if labels.len() != matrix.d() {
            return Err(ClusterError::Shape("label count differs from d".into()));
        }
        Ok(Seed { matrix, cluster, labels })
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn mutable_variables(&self) -> &[LaurentPoly] {
        &self.cluster[..self.rank()]
    }

    pub fn coefficients(&self) -> &[LaurentPoly] {
        &self.cluster[self.rank()..]
    }

    /// The two monomials `prod_{b_ik>0} y_i^{b_ik}` and `prod_{b_ik<0} y_i^{-b_ik}`.
    pub fn exchange_monomials(&self, k: usize) -> Result<(LaurentPoly, LaurentPoly), ClusterError> {
        if k >= self.rank() {
            return Err(ClusterError::DirectionOutOfRange { direction: k, rank: self.rank() });
        }
        let ring = self.cluster[0].ring();
        let mut pos = LaurentPoly::one(ring);
        let mut neg = LaurentPoly::one(ring);
        for (i, y) in self.cluster.iter().enumerate() {
            let b = self.matrix.get(i, k);
            if b > 0 {
                pos = &pos * &y.pow(b as u32);
            } else if b < 0 {
                neg = &neg * &y.pow((-b) as u32);
            }
        }
        Ok((pos, neg))
    }

    /// Seed mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        let (pos, neg) = self.exchange_monomials(k)?;
        let matrix = self.matrix.mutate(k)?;
        let numerator = &pos + &neg;
        let replaced = numerator.div_exact(&self.cluster[k]).map_err(|source| ClusterError::LaurentViolation {
            direction: k,
            seed: self.dump(),
            source,
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = replaced;
        Ok(Seed { matrix, cluster, labels: self.labels.clone() })
    }

    /// Human-readable multi-line description used in diagnostics.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, (label, y)) in self.labels.iter().zip(&self.cluster).enumerate() {
            let row: Vec<String> = self.matrix.rows[i].iter().map(|v| v.to_string()).collect();
            let frozen = if i >= self.rank() { " (frozen)" } else { "" };
            s.push_str(&format!("  {label}: {y}  [{}]{frozen}\n", row.join(", ")));
        }
        s
    }

    pub fn to_record(&self) -> SeedRecord {
        SeedRecord {
            d: self.matrix.d(),
            n: self.matrix.n(),
            matrix: self.matrix.rows.clone(),
            cluster: self.cluster.iter().map(|c| c.to_record()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_record(rec: &SeedRecord) -> Result<Seed, ClusterError> {
        let matrix = ExchangeMatrix::new(rec.matrix.clone())?;
        if matrix.d() != rec.d || matrix.n() != rec.n {
            return Err(ClusterError::Shape(format!(
                "declared d={}, n={} but matrix is {}x{}",
                rec.d,
                rec.n,
                matrix.d(),
                matrix.rank()
            )));
        }
        let ring = match rec.cluster.first() {
            Some(r) => Ring::new(&r.vars)?,
            None => Ring::new::<&str>(&[])?,
        };
        let cluster =
            rec.cluster.iter().map(|r| LaurentPoly::from_record_in(r, &ring)).collect::<Result<Vec<_>, _>>()?;
        Seed::from_parts(matrix, cluster, rec.labels.clone())
    }

    /// Canonical key: sorted mutable variables plus the frozen tuple.
    pub fn key(&self) -> SeedKey {
        let mut mutable = self.mutable_variables().to_vec();
        mutable.sort();
        SeedKey { mutable, frozen: self.coefficients().to_vec() }
    }
}

/// Seed JSON wire form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub d: usize,
    pub n: usize,
    pub matrix: Vec<Vec<i64>>,
    pub cluster: Vec<LaurentRecord>,
    pub labels: Vec<String>,
}

/// Identity of a seed up to reordering of its mutable positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey {
    pub mutable: Vec<LaurentPoly>,
    pub frozen: Vec<LaurentPoly>,
}

impl fmt::Display for SeedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.mutable.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", vars.join("; "))
    }
}

/// `y_k * y_k'` for an edge, and the binomial it must equal.
pub fn exchange_identity_holds(before: &Seed, k: usize, after: &Seed) -> Result<bool, ClusterError> {
    let (pos, neg) = before.exchange_monomials(k)?;
    let lhs = &before.cluster[k] * &after.cluster[k];
    Ok(lhs == &pos + &neg)
}

//! Modules over the preprojective algebra of a simply-laced Dynkin diagram,
//! stored as representations of the double quiver.
//!
//! Every edge `{i, j}` with `i < j` gives a forward arrow `i -> j` and its
//! partner `j -> i`. For an arrow `b` out of `v` let `sign(b)` be `+1` if `b`
//! is forward and `-1` otherwise; the relation at `v` is
//! `sum_b sign(b) M_{b*} M_b = 0`.

mod functors;
mod homext;
mod injective;
mod json;
mod random;
mod rigid;

pub use functors::Filtration;
pub use homext::{ext1_dim, hom_basis, hom_dim, is_isomorphic, is_rigid, IsoOptions};
pub use injective::{injective, AlgebraBasis};
pub use json::ModuleRecord;
pub use random::{random_module, RandomModuleSpec};
pub use rigid::{
    build_complete_rigid, exchange_matrix_from_sequences, pairwise_ext, ExchangeMatrixReport, ExchangeSequence,
    RigidConstruction, RigidReport, RigidSummand, SummandReport,
};

use num_rational::BigRational;
use thiserror::Error;

use crate::dynkin::{DynkinError, DynkinType};
use crate::linalg::{Field, Matrix, PrimeField, Rationals};

#[derive(Debug, Error)]
pub enum PrepmodError {
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error("modules live over different diagrams ({0} and {1})")]
    TypeMismatch(DynkinType, DynkinType),
    #[error("map for arrow {arrow} has shape {found:?}, expected {expected:?}")]
    MapShape { arrow: String, found: (usize, usize), expected: (usize, usize) },
    #[error("dimension vector has {found} entries, diagram has {expected} vertices")]
    DimsLength { found: usize, expected: usize },
    #[error("preprojective relation fails at vertex {0}")]
    RelationViolated(usize),
    #[error("representation is not nilpotent")]
    NotNilpotent,
    #[error("subspaces are not stable under arrow {0}")]
    NotSubmodule(String),
    #[error("Ext dimension formula gave {0}; inputs violate the preprojective relation")]
    NegativeExt(i64),
    #[error("construction produced {found} summands but dim N_K = {expected}")]
    SummandCount { found: usize, expected: usize },
    #[error("exchange sequence {direction}: X and Y share summand {summand}")]
    OverlappingSequence { direction: usize, summand: usize },
    #[error("bad exchange data: {0}")]
    ExchangeData(String),
    #[error("module JSON: {0}")]
    Json(String),
    #[error("reduction mod {0} is undefined (a denominator vanishes)")]
    BadReduction(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub forward: bool,
}

impl Arrow {
    pub fn label(&self) -> String {
        format!("{}->{}", self.source, self.target)
    }

    pub fn sign(&self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }
}

/// Arrows of the double quiver: edge `e` contributes index `2e` (forward) and
/// `2e + 1` (its partner), so `star(a) = a ^ 1`.
pub fn arrows(ty: DynkinType) -> Vec<Arrow> {
    ty.edges()
        .into_iter()
        .flat_map(|(i, j)| {
            [Arrow { source: i, target: j, forward: true }, Arrow { source: j, target: i, forward: false }]
        })
        .collect()
}

pub fn star(a: usize) -> usize {
    a ^ 1
}

/// A representation of the double quiver over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep<F: Field> {
    ty: DynkinType,
    field: F,
    dims: Vec<usize>,
    maps: Vec<Matrix<F::Elem>>,
}

pub type RatRep = QuiverRep<Rationals>;

impl<F: Field> QuiverRep<F> {
    /// Checks shapes only; see [`QuiverRep::check_relation`].
    pub fn new(ty: DynkinType, field: F, dims: Vec<usize>, maps: Vec<Matrix<F::Elem>>) -> Result<Self, PrepmodError> {
        if dims.len() != ty.rank() {
            return Err(PrepmodError::DimsLength { found: dims.len(), expected: ty.rank() });
        }
        let arr = arrows(ty);
        assert_eq!(maps.len(), arr.len(), "one map per arrow");
        for (a, m) in arr.iter().zip(&maps) {
            let expected = (dims[a.target - 1], dims[a.source - 1]);
            if (m.nrows(), m.ncols()) != expected {
                return Err(PrepmodError::MapShape { arrow: a.label(), found: (m.nrows(), m.ncols()), expected });
            }
        }
        Ok(QuiverRep { ty, field, dims, maps })
    }

    pub fn zero(ty: DynkinType, field: F) -> Self {
        Self::with_zero_maps(ty, field, vec![0; ty.rank()])
    }

    pub fn simple(ty: DynkinType, field: F, i: usize) -> Result<Self, PrepmodError> {
        ty.check_vertex(i)?;
        let mut dims = vec![0; ty.rank()];
        dims[i - 1] = 1;
        Ok(Self::with_zero_maps(ty, field, dims))
    }

    /// Semisimple module with the given dimension vector.
    pub fn with_zero_maps(ty: DynkinType, field: F, dims: Vec<usize>) -> Self {
        let maps = arrows(ty).iter().map(|a| Matrix::zeros(&field, dims[a.target - 1], dims[a.source - 1])).collect();
        QuiverRep { ty, field, dims, maps }
    }

    pub fn ty(&self) -> DynkinType {
        self.ty
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Dimension vector in vertex order.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F::Elem> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    /// `(arrow index, arrow)` pairs leaving `v`.
    pub fn arrows_out(&self, v: usize) -> Vec<(usize, Arrow)> {
        arrows(self.ty).into_iter().enumerate().filter(|(_, a)| a.source == v).collect()
    }

    pub fn arrows_in(&self, v: usize) -> Vec<(usize, Arrow)> {
        arrows(self.ty).into_iter().enumerate().filter(|(_, a)| a.target == v).collect()
    }

    fn same_type(&self, other: &Self) -> Result<(), PrepmodError> {
        if self.ty != other.ty {
            return Err(PrepmodError::TypeMismatch(self.ty, other.ty));
        }
        Ok(())
    }

    /// The first vertex where the relation fails, if any.
    pub fn relation_witness(&self) -> Option<usize> {
        let f = &self.field;
        for v in self.ty.vertices() {
            let d = self.dims[v - 1];
            let mut acc = Matrix::zeros(f, d, d);
            for (b, arrow) in self.arrows_out(v) {
                let term = self.maps[star(b)].mul(f, &self.maps[b]);
                acc = if arrow.forward { acc.add(f, &term) } else { acc.sub(f, &term) };
            }
            if !acc.is_zero(f) {
                return Some(v);
            }
        }
        None
    }

    pub fn check_relation(&self) -> Result<(), PrepmodError> {
        match self.relation_witness() {
            Some(v) => Err(PrepmodError::RelationViolated(v)),
            None => Ok(()),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, PrepmodError> {
        self.same_type(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| Matrix::block_diag(&self.field, a, b)).collect();
        Ok(QuiverRep { ty: self.ty, field: self.field.clone(), dims, maps })
    }

    pub fn direct_sum_all<'a>(
        ty: DynkinType,
        field: F,
        parts: impl IntoIterator<Item = &'a Self>,
    ) -> Result<Self, PrepmodError>
    where
        F: 'a,
    {
        let mut acc = Self::zero(ty, field);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// `m` copies of `self`.
    pub fn power(&self, m: usize) -> Self {
        let mut acc = Self::zero(self.ty, self.field.clone());
        for _ in 0..m {
            acc = acc.direct_sum(self).expect("same type");
        }
        acc
    }

    /// Sub-representation on the column spaces of `bases` (one matrix per
    /// vertex, independent columns).
    pub fn submodule(&self, bases: &[Matrix<F::Elem>]) -> Result<Self, PrepmodError> {
        let f = &self.field;
        let arr = arrows(self.ty);
        let dims: Vec<usize> = bases.iter().map(|b| b.ncols()).collect();
        let mut maps = Vec::with_capacity(arr.len());
        for (idx, a) in arr.iter().enumerate() {
            let image = self.maps[idx].mul(f, &bases[a.source - 1]);
            let restricted =
                bases[a.target - 1].solve(f, &image).ok_or_else(|| PrepmodError::NotSubmodule(a.label()))?;
            maps.push(restricted);
        }
        Ok(QuiverRep { ty: self.ty, field: self.field.clone(), dims, maps })
    }

    /// Quotient by the sub-representation spanned by `bases`.
    pub fn quotient(&self, bases: &[Matrix<F::Elem>]) -> Result<Self, PrepmodError> {
        let f = &self.field;
        let arr = arrows(self.ty);
        for (idx, a) in arr.iter().enumerate() {
            let image = self.maps[idx].mul(f, &bases[a.source - 1]);
            if bases[a.target - 1].solve(f, &image).is_none() {
                return Err(PrepmodError::NotSubmodule(a.label()));
            }
        }
        let proj: Vec<_> = bases.iter().map(|b| quotient_projection(f, b)).collect();
        let dims = proj.iter().map(|(p, _)| p.nrows()).collect();
        let maps = arr
            .iter()
            .enumerate()
            .map(|(idx, a)| proj[a.target - 1].0.mul(f, &self.maps[idx]).mul(f, &proj[a.source - 1].1))
            .collect();
        Ok(QuiverRep { ty: self.ty, field: self.field.clone(), dims, maps })
    }

    /// Smallest sub-representation containing the given vectors (columns,
    /// one matrix per vertex). Returns a basis per vertex.
    pub fn generated_subspaces(&self, generators: &[Matrix<F::Elem>]) -> Vec<Matrix<F::Elem>> {
        let f = &self.field;
        let arr = arrows(self.ty);
        let mut spaces: Vec<Matrix<F::Elem>> = generators.iter().map(|g| g.column_basis(f)).collect();
        loop {
            let mut grew = false;
            for (idx, a) in arr.iter().enumerate() {
                let image = self.maps[idx].mul(f, &spaces[a.source - 1]);
                let t = a.target - 1;
                let joined = spaces[t].hstack(&image);
                if joined.rank(f) > spaces[t].ncols() {
                    spaces[t] = joined.column_basis(f);
                    grew = true;
                }
            }
            if !grew {
                return spaces;
            }
        }
    }

    pub fn full_subspaces(&self) -> Vec<Matrix<F::Elem>> {
        self.dims.iter().map(|&d| Matrix::identity(&self.field, d)).collect()
    }

    pub fn zero_subspaces(&self) -> Vec<Matrix<F::Elem>> {
        self.dims.iter().map(|&d| Matrix::zeros(&self.field, d, 0)).collect()
    }

    /// Multiplicities of the simples in the top: `dim M_i - rank(incoming)`.
    pub fn top(&self) -> Vec<usize> {
        self.ty.vertices().map(|v| self.dims[v - 1] - self.incoming_image(v).ncols()).collect()
    }

    /// Multiplicities of the simples in the socle: joint kernel of outgoing maps.
    pub fn socle(&self) -> Vec<usize> {
        self.ty.vertices().map(|v| self.socle_at(v).ncols()).collect()
    }

    /// Basis of the sum of images of arrows ending at `v`.
    pub fn incoming_image(&self, v: usize) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut acc = Matrix::zeros(f, self.dims[v - 1], 0);
        for (idx, _) in self.arrows_in(v) {
            acc = acc.hstack(&self.maps[idx]);
        }
        acc.column_basis(f)
    }

    /// Basis of the joint kernel of arrows leaving `v`.
    pub fn socle_at(&self, v: usize) -> Matrix<F::Elem> {
        let f = &self.field;
        let d = self.dims[v - 1];
        let mut stacked = Matrix::zeros(f, 0, d);
        for (idx, _) in self.arrows_out(v) {
            stacked = stacked.vstack(&self.maps[idx]);
        }
        stacked.kernel(f)
    }

    /// Whether every long enough path acts as zero.
    pub fn is_nilpotent(&self) -> bool {
        let layers = self.radical_layers();
        layers.iter().map(|l| l.iter().sum::<usize>()).sum::<usize>() == self.total_dim()
    }

    /// Apply a function to every matrix entry, e.g. to reduce mod p.
    pub fn map_field<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> Option<G::Elem>) -> Option<QuiverRep<G>> {
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let rows: Option<Vec<Vec<G::Elem>>> = m.to_rows().iter().map(|r| r.iter().map(&f).collect()).collect();
                rows.map(|r| Matrix::from_rows(r, m.ncols()))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(QuiverRep { ty: self.ty, field, dims: self.dims.clone(), maps })
    }
}

impl QuiverRep<Rationals> {
    pub fn reduce_mod(&self, p: u64) -> Result<QuiverRep<PrimeField>, PrepmodError> {
        let f = PrimeField::new(p);
        self.map_field(f, |q: &BigRational| f.reduce(q)).ok_or(PrepmodError::BadReduction(p))
    }

    /// Build from integer matrices keyed by arrow label, e.g. `"1->3"`.
    pub fn from_int_maps(
        ty: DynkinType,
        dims: Vec<usize>,
        maps: &[(&str, Vec<Vec<i64>>)],
    ) -> Result<Self, PrepmodError> {
        let f = Rationals;
        let mut rep = Self::with_zero_maps(ty, f, dims);
        let arr = arrows(ty);
        for (label, rows) in maps {
            let idx = arr
                .iter()
                .position(|a| a.label() == *label)
                .ok_or_else(|| PrepmodError::Json(format!("unknown arrow {label}")))?;
            let a = arr[idx];
            let expected = (rep.dims[a.target - 1], rep.dims[a.source - 1]);
            let cols = rows.first().map_or(expected.1, |r| r.len());
            if rows.len() != expected.0 || cols != expected.1 || rows.iter().any(|r| r.len() != cols) {
                return Err(PrepmodError::MapShape { arrow: a.label(), found: (rows.len(), cols), expected });
            }
            rep.maps[idx] = Matrix::from_i64_rows(rows, cols);
        }
        Ok(rep)
    }
}

/// Projection onto a complement of the column space of `sub`, and the
/// complement itself: `proj * comp = I`, `proj * sub = 0`.
pub(crate) fn quotient_projection<F: Field>(f: &F, sub: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Matrix<F::Elem>) {
    let basis = sub.column_basis(f);
    let comp = sub.complement(f);
    let full = basis.hstack(&comp);
    let inv = full.inverse(f).expect("basis extension is invertible");
    let k = basis.ncols();
    let rows: Vec<usize> = (k..full.ncols()).collect();
    (inv.select_rows(&rows), comp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> DynkinType {
        DynkinType::D(4)
    }

    /// `S3 | S1+S2+S4 | S3` with socle products `p = (1, 2, 3)`.
    pub(crate) fn non_rigid_d4() -> RatRep {
        crate::cases::d4_one_parameter_module()
    }

    #[test]
    fn relation_checks() {
        let s = RatRep::simple(d4(), Rationals, 3).unwrap();
        assert!(s.check_relation().is_ok());
        let m = non_rigid_d4();
        assert!(m.check_relation().is_ok());
        let a2 =
            RatRep::from_int_maps(DynkinType::A(2), vec![1, 1], &[("1->2", vec![vec![1]]), ("2->1", vec![vec![1]])])
                .unwrap();
        assert_eq!(a2.relation_witness(), Some(1));
        assert!(matches!(a2.check_relation(), Err(PrepmodError::RelationViolated(1))));
    }

    #[test]
    fn top_socle_and_shapes() {
        let m = non_rigid_d4();
        assert_eq!(m.top(), vec![0, 0, 1, 0]);
        assert_eq!(m.socle(), vec![0, 0, 1, 0]);
        assert!(m.is_nilpotent());
        let bad = RatRep::from_int_maps(d4(), vec![1, 0, 0, 0], &[("1->3", vec![vec![1]])]);
        assert!(bad.is_err());
    }

    #[test]
    fn sub_and_quotient() {
        let m = non_rigid_d4();
        let f = Rationals;
        let soc = m.generated_subspaces(&[
            Matrix::zeros(&f, 1, 0),
            Matrix::zeros(&f, 1, 0),
            Matrix::from_i64_rows(&[vec![0], vec![1]], 1),
            Matrix::zeros(&f, 1, 0),
        ]);
        let sub = m.submodule(&soc).unwrap();
        assert_eq!(sub.dims(), &[0, 0, 1, 0]);
        let q = m.quotient(&soc).unwrap();
        assert_eq!(q.dims(), &[1, 1, 1, 1]);
        assert!(q.check_relation().is_ok());
        assert_eq!(q.socle(), vec![1, 1, 0, 1]);
        let not_sub = vec![
            Matrix::zeros(&f, 1, 0),
            Matrix::zeros(&f, 1, 0),
            Matrix::from_i64_rows(&[vec![1], vec![0]], 1),
            Matrix::zeros(&f, 1, 0),
        ];
        assert!(m.submodule(&not_sub).is_err());
        assert!(m.quotient(&not_sub).is_err());
    }

    #[test]
    fn reduction() {
        let m = non_rigid_d4();
        let r = m.reduce_mod(2).unwrap();
        assert!(r.check_relation().is_ok());
        assert_eq!(r.map(5).get(1, 0), &1);
    }
}

//! Indecomposable injectives `Q_i = D(e_i Λ)` by graded closure.
//!
//! For a quadratic algebra, degree `L + 1` of `e_i Λ e_v` is the span of
//! `x b` (`b : v -> w`, `x` in degree `L` at `w`) modulo the relation
//! multiples `y ρ_v` with `y` in degree `L - 1`. Right multiplication by
//! arrows is recorded along the way and `Q_i` is its transpose.

use serde::Serialize;

use super::{arrows, quotient_projection, star, PrepmodError, QuiverRep};
use crate::dynkin::DynkinType;
use crate::linalg::{Field, Matrix};

/// Cap on path length; far above the Loewy length of any Dynkin type.
const MAX_DEGREE: usize = 128;

/// Graded dimensions of `e_i Λ e_v`: `graded[i-1][L][v-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraBasis {
    pub ty: DynkinType,
    pub graded: Vec<Vec<Vec<usize>>>,
}

impl AlgebraBasis {
    pub fn compute<F: Field>(ty: DynkinType, field: &F) -> Result<Self, PrepmodError> {
        let graded =
            ty.vertices().map(|i| right_projective(ty, field, i).map(|g| g.dims)).collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraBasis { ty, graded })
    }

    pub fn dimension(&self) -> usize {
        self.graded.iter().flatten().flatten().sum()
    }

    /// Length of the longest nonzero path class, plus one.
    pub fn loewy_length(&self) -> usize {
        self.graded.iter().map(|g| g.len()).max().unwrap_or(0)
    }
}

struct Graded<E> {
    /// `dims[L][v-1]`
    dims: Vec<Vec<usize>>,
    /// `right[L][b]`: degree `L` at `target(b)` to degree `L+1` at `source(b)`.
    right: Vec<Vec<Matrix<E>>>,
}

fn right_projective<F: Field>(ty: DynkinType, f: &F, i: usize) -> Result<Graded<F::Elem>, PrepmodError> {
    ty.check_vertex(i)?;
    let arr = arrows(ty);
    let n = ty.rank();
    let mut dims = vec![(1..=n).map(|v| usize::from(v == i)).collect::<Vec<_>>()];
    let mut right: Vec<Vec<Matrix<F::Elem>>> = Vec::new();
    for level in 0..MAX_DEGREE {
        let cur = &dims[level];
        let mut next_dims = vec![0usize; n];
        let mut maps: Vec<Option<Matrix<F::Elem>>> = vec![None; arr.len()];
        for v in 1..=n {
            let out: Vec<usize> = (0..arr.len()).filter(|&b| arr[b].source == v).collect();
            let mut offsets = Vec::with_capacity(out.len());
            let mut total = 0;
            for &b in &out {
                offsets.push(total);
                total += cur[arr[b].target - 1];
            }
            let prev_dim = if level == 0 { 0 } else { dims[level - 1][v - 1] };
            let mut relations = Matrix::zeros(f, total, prev_dim);
            if level > 0 {
                for (pos, &b) in out.iter().enumerate() {
                    let block = &right[level - 1][star(b)];
                    let sign = f.elem(arr[b].sign());
                    for r in 0..block.nrows() {
                        for c in 0..block.ncols() {
                            relations.set(offsets[pos] + r, c, f.mul(&sign, block.get(r, c)));
                        }
                    }
                }
            }
            let (proj, _) = quotient_projection(f, &relations);
            next_dims[v - 1] = proj.nrows();
            for (pos, &b) in out.iter().enumerate() {
                let w = arr[b].target;
                let cols: Vec<usize> = (offsets[pos]..offsets[pos] + cur[w - 1]).collect();
                maps[b] = Some(proj.select_cols(&cols));
            }
        }
        right.push(maps.into_iter().map(|m| m.expect("every arrow has a source")).collect());
        if next_dims.iter().all(|&d| d == 0) {
            return Ok(Graded { dims, right });
        }
        dims.push(next_dims);
    }
    Err(PrepmodError::NotNilpotent)
}

/// The injective hull `Q_i` of the simple `S_i`.
pub fn injective<F: Field>(ty: DynkinType, field: F, i: usize) -> Result<QuiverRep<F>, PrepmodError> {
    let g = right_projective(ty, &field, i)?;
    let arr = arrows(ty);
    let n = ty.rank();
    let levels = g.dims.len();
    // offsets[L][v-1] inside the total space at v
    let mut offsets = vec![vec![0usize; n]; levels];
    let mut totals = vec![0usize; n];
    for (l, d) in g.dims.iter().enumerate() {
        offsets[l].copy_from_slice(&totals);
        for (t, x) in totals.iter_mut().zip(d) {
            *t += x;
        }
    }
    let mut maps = Vec::with_capacity(arr.len());
    for (b, a) in arr.iter().enumerate() {
        let (v, w) = (a.source - 1, a.target - 1);
        // right multiplication by b maps U_w -> U_v; Q_i carries its transpose
        let mut rmul = Matrix::zeros(&field, totals[v], totals[w]);
        for l in 0..levels.saturating_sub(1) {
            let block = &g.right[l][b];
            for r in 0..block.nrows() {
                for c in 0..block.ncols() {
                    rmul.set(offsets[l + 1][v] + r, offsets[l][w] + c, block.get(r, c).clone());
                }
            }
        }
        maps.push(rmul.transpose());
    }
    let rep = QuiverRep::new(ty, field, totals, maps)?;
    rep.check_relation()?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn d4_injective_dimensions() {
        let d4 = DynkinType::D(4);
        let q4 = injective(d4, Rationals, 4).unwrap();
        assert_eq!(q4.dims(), &[1, 1, 2, 2]);
        let q3 = injective(d4, Rationals, 3).unwrap();
        assert_eq!(q3.dims(), &[2, 2, 4, 2]);
        assert_eq!(q4.socle(), vec![0, 0, 0, 1]);
        assert_eq!(q4.top(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn algebra_dimensions() {
        // dim Λ(A_n) = n(n+1)(n+2)/6
        for n in 1..=5 {
            let b = AlgebraBasis::compute(DynkinType::A(n), &Rationals).unwrap();
            assert_eq!(b.dimension(), n * (n + 1) * (n + 2) / 6, "A{n}");
            assert_eq!(b.loewy_length(), n);
        }
        // dim Λ(D_4) = 28
        assert_eq!(AlgebraBasis::compute(DynkinType::D(4), &Rationals).unwrap().dimension(), 28);
    }

    #[test]
    fn a_type_tops_are_twisted() {
        let a3 = DynkinType::A(3);
        let q1 = injective(a3, Rationals, 1).unwrap();
        assert_eq!(q1.socle(), vec![1, 0, 0]);
        assert_eq!(q1.top(), vec![0, 0, 1]);
        let s = injective(DynkinType::A(1), Rationals, 1).unwrap();
        assert_eq!(s.dims(), &[1]);
    }

    #[test]
    fn prime_field_agrees() {
        let q = injective(DynkinType::D(4), PrimeField::new(3), 3).unwrap();
        assert_eq!(q.dims(), &[2, 2, 4, 2]);
    }
}

//! Hom spaces, the Ext¹ dimension, rigidity, and isomorphism testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{arrows, PrepmodError, QuiverRep};
use crate::linalg::{Field, Matrix};

/// Basis of `Hom(m, n)`; each morphism is one matrix `n_v x m_v` per vertex.
pub fn hom_basis<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<Vec<Vec<Matrix<F::Elem>>>, PrepmodError> {
    let kernel = intertwiner_kernel(m, n)?;
    let offsets = unknown_offsets(m, n);
    let mut out = Vec::with_capacity(kernel.ncols());
    for col in 0..kernel.ncols() {
        let per_vertex = m
            .ty()
            .vertices()
            .map(|v| {
                let (rows, cols) = (n.dim_at(v), m.dim_at(v));
                Matrix::from_fn(rows, cols, |r, c| kernel.get(offsets[v - 1] + r * cols + c, col).clone())
            })
            .collect();
        out.push(per_vertex);
    }
    Ok(out)
}

pub fn hom_dim<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<usize, PrepmodError> {
    Ok(intertwiner_kernel(m, n)?.ncols())
}

fn unknown_offsets<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Vec<usize> {
    let mut acc = 0;
    m.ty()
        .vertices()
        .map(|v| {
            let o = acc;
            acc += n.dim_at(v) * m.dim_at(v);
            o
        })
        .collect()
}

/// Solutions of `N_a f_s = f_t M_a` for every arrow `a : s -> t`.
fn intertwiner_kernel<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<Matrix<F::Elem>, PrepmodError> {
    if m.ty() != n.ty() {
        return Err(PrepmodError::TypeMismatch(m.ty(), n.ty()));
    }
    let f = m.field();
    let offsets = unknown_offsets(m, n);
    let unknowns: usize = m.ty().vertices().map(|v| n.dim_at(v) * m.dim_at(v)).sum();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (idx, a) in arrows(m.ty()).iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (m.map(idx), n.map(idx));
        let (ms, mt, ns, nt) = (m.dim_at(s), m.dim_at(t), n.dim_at(s), n.dim_at(t));
        for r in 0..nt {
            for c in 0..ms {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..ns {
                    // N_a[r,k] f_s[k,c]
                    let x = &mut row[offsets[s - 1] + k * ms + c];
                    *x = f.add(x, na.get(r, k));
                }
                for k in 0..mt {
                    // - f_t[r,k] M_a[k,c]
                    let x = &mut row[offsets[t - 1] + r * mt + k];
                    *x = f.sub(x, ma.get(k, c));
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(Matrix::from_rows(rows, unknowns).kernel(f))
}

/// `dim Ext¹(m, n) = dim Hom(m, n) + dim Hom(n, m) - (dim m, dim n)`.
pub fn ext1_dim<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<usize, PrepmodError> {
    let ty = m.ty();
    let value = hom_dim(m, n)? as i64 + hom_dim(n, m)? as i64 - ty.form(m.dims(), n.dims());
    usize::try_from(value).map_err(|_| PrepmodError::NegativeExt(value))
}

pub fn is_rigid<F: Field>(m: &QuiverRep<F>) -> Result<bool, PrepmodError> {
    Ok(ext1_dim(m, m)? == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub seed: u64,
    pub tries: usize,
    /// Random coefficients are drawn from `-range..=range`.
    pub range: i64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { seed: 0, tries: 8, range: 1000 }
    }
}

/// Las Vegas isomorphism test: invariants first, then random elements of
/// `Hom(m, n)` checked for invertibility. `true` is always correct; `false`
/// after passing the invariants is wrong with probability at most
/// `(d / (2 range + 1))^tries`, `d` the total dimension, over the rationals.
pub fn is_isomorphic<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>, opts: IsoOptions) -> Result<bool, PrepmodError> {
    if m.ty() != n.ty() || m.dims() != n.dims() {
        return Ok(false);
    }
    if m.top() != n.top() || m.socle() != n.socle() {
        return Ok(false);
    }
    let mn = hom_basis(m, n)?;
    let endo = hom_dim(m, m)?;
    if endo != mn.len() || endo != hom_dim(n, n)? || endo != hom_dim(n, m)? {
        return Ok(false);
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.tries {
        let coeffs: Vec<F::Elem> = mn.iter().map(|_| f.elem(rng.gen_range(-opts.range..=opts.range))).collect();
        let invertible = m.ty().vertices().all(|v| {
            let d = m.dim_at(v);
            let mut acc = Matrix::zeros(f, d, d);
            for (c, morph) in coeffs.iter().zip(&mn) {
                acc = acc.add(f, &morph[v - 1].scale(f, c));
            }
            acc.rank(f) == d
        });
        if invertible {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;
    use crate::linalg::Rationals;
    use crate::prepmod::{injective, RatRep};

    #[test]
    fn simple_homs_and_exts() {
        let a2 = DynkinType::A(2);
        let s1 = RatRep::simple(a2, Rationals, 1).unwrap();
        let s2 = RatRep::simple(a2, Rationals, 2).unwrap();
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert!(is_rigid(&s1).unwrap());
        assert!(!is_rigid(&s1.direct_sum(&s2).unwrap()).unwrap());
    }

    #[test]
    fn injectives_have_no_extensions() {
        let d4 = DynkinType::D(4);
        let q4 = injective(d4, Rationals, 4).unwrap();
        let q3 = injective(d4, Rationals, 3).unwrap();
        let m4 = injective(d4, Rationals, 2).unwrap().e_word(&[1, 3, 1, 2], true);
        assert_eq!(ext1_dim(&q4, &m4).unwrap(), 0);
        assert_eq!(ext1_dim(&q3, &q4).unwrap(), 0);
        assert_eq!(hom_dim(&RatRep::simple(d4, Rationals, 4).unwrap(), &q4).unwrap(), 1);
    }

    #[test]
    fn non_rigid_witness() {
        let m = crate::prepmod::tests::non_rigid_d4();
        assert_eq!(hom_dim(&m, &m).unwrap(), 2);
        assert_eq!(ext1_dim(&m, &m).unwrap(), 2);
        assert!(!is_rigid(&m).unwrap());
    }

    #[test]
    fn isomorphism_detection() {
        let d4 = DynkinType::D(4);
        let q4 = injective(d4, Rationals, 4).unwrap();
        // conjugate Q4 by a change of basis at vertex 3
        let mut maps = q4.maps().to_vec();
        let g = crate::linalg::Matrix::from_i64_rows(&[vec![1, 2], vec![1, 3]], 2);
        let gi = g.inverse(&Rationals).unwrap();
        for (idx, a) in crate::prepmod::arrows(d4).iter().enumerate() {
            if a.target == 3 {
                maps[idx] = g.mul(&Rationals, &maps[idx]);
            }
            if a.source == 3 {
                maps[idx] = maps[idx].mul(&Rationals, &gi);
            }
        }
        let conj = RatRep::new(d4, Rationals, q4.dims().to_vec(), maps).unwrap();
        assert!(conj.check_relation().is_ok());
        assert!(is_isomorphic(&q4, &conj, IsoOptions::default()).unwrap());
        let other = crate::prepmod::tests::non_rigid_d4();
        let other2 = RatRep::from_int_maps(
            d4,
            vec![1, 1, 2, 1],
            &[
                ("3->1", vec![vec![1, 0]]),
                ("3->2", vec![vec![1, 0]]),
                ("3->4", vec![vec![1, 0]]),
                ("1->3", vec![vec![0], vec![1]]),
                ("2->3", vec![vec![0], vec![3]]),
                ("4->3", vec![vec![0], vec![4]]),
            ],
        )
        .unwrap();
        // different cross-ratio of the three socle products
        assert!(!is_isomorphic(&other, &other2, IsoOptions::default()).unwrap());
        assert!(is_isomorphic(&other, &other, IsoOptions::default()).unwrap());
    }
}

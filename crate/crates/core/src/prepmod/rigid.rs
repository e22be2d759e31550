//! Complete rigid modules from reduced words, and exchange matrices read
//! off from exchange sequences.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ext1_dim, hom_dim, injective, PrepmodError, RatRep};
use crate::cluster::ExchangeMatrix;
use crate::dynkin::DynkinType;
use crate::linalg::Rationals;

#[derive(Clone, Debug)]
pub struct RigidSummand {
    /// `M7`, `Q4`, ...
    pub name: String,
    pub module: RatRep,
}

#[derive(Clone, Debug)]
pub struct RigidConstruction {
    pub ty: DynkinType,
    pub k: Vec<usize>,
    pub word: Vec<usize>,
    pub r: usize,
    pub r_k: usize,
    /// `M_1, ..., M_r` with `M_p = E†_{i_1} ... E†_{i_p}(Q_{i_p})`.
    pub modules: Vec<RatRep>,
    /// `q_k = max { q <= r_K : i_q = k }` for `k` in `K`.
    pub q: BTreeMap<usize, usize>,
    /// Indices `p > r_K` with `M_p = 0`.
    pub zero_indices: Vec<usize>,
    pub summands: Vec<RigidSummand>,
}

impl RigidConstruction {
    pub fn summand(&self, name: &str) -> Option<&RatRep> {
        self.summands.iter().find(|s| s.name == name).map(|s| &s.module)
    }

    /// `M_p`, 1-based.
    pub fn m(&self, p: usize) -> &RatRep {
        &self.modules[p - 1]
    }

    pub fn report(&self) -> RigidReport {
        RigidReport {
            ty: self.ty.to_string(),
            k: self.k.clone(),
            word: self.word.clone(),
            r: self.r,
            r_k: self.r_k,
            q: self.q.clone(),
            zero_indices: self.zero_indices.clone(),
            summands: self
                .summands
                .iter()
                .map(|s| SummandReport {
                    name: s.name.clone(),
                    dims: s.module.dims().to_vec(),
                    filtration: s.module.socle_filtration().to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub k: Vec<usize>,
    pub word: Vec<usize>,
    pub r: usize,
    pub r_k: usize,
    pub q: BTreeMap<usize, usize>,
    pub zero_indices: Vec<usize>,
    pub summands: Vec<SummandReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub name: String,
    pub dims: Vec<usize>,
    pub filtration: String,
}

/// `T = M_{r_K+1} ⊕ ... ⊕ M_r ⊕ (⊕_{k in K} M_{q_k}) ⊕ (⊕_{j in J} Q_j)`,
/// zero summands dropped. The word must be a reduced word for `w_0` whose
/// first `r_K` letters lie in `K`.
pub fn build_complete_rigid(ty: DynkinType, k: &[usize], word: &[usize]) -> Result<RigidConstruction, PrepmodError> {
    for &v in k.iter().chain(word) {
        ty.check_vertex(v)?;
    }
    let all: Vec<usize> = ty.vertices().collect();
    let r = ty.longest_length(&all);
    if word.len() != r || !ty.is_reduced(word) {
        return Err(PrepmodError::ExchangeData(format!("word {word:?} is not a reduced word for w_0 in {ty}")));
    }
    let mut k_sorted = k.to_vec();
    k_sorted.sort();
    k_sorted.dedup();
    let r_k = ty.longest_length(&k_sorted);
    if word[..r_k].iter().any(|v| !k_sorted.contains(v)) {
        return Err(PrepmodError::ExchangeData(format!(
            "the first {r_k} letters of {word:?} must spell w_0 of the parabolic subgroup on {k_sorted:?}"
        )));
    }

    let mut injectives = BTreeMap::new();
    for &v in &all {
        injectives.insert(v, injective(ty, Rationals, v)?);
    }
    let modules: Vec<RatRep> = (1..=r).map(|p| injectives[&word[p - 1]].e_word(&word[..p], true)).collect();

    let mut q = BTreeMap::new();
    for &kv in &k_sorted {
        if let Some(pos) = (1..=r_k).rev().find(|&p| word[p - 1] == kv) {
            q.insert(kv, pos);
        }
    }
    let zero_indices: Vec<usize> = (r_k + 1..=r).filter(|&p| modules[p - 1].is_zero()).collect();

    let mut summands = Vec::new();
    for p in r_k + 1..=r {
        if !modules[p - 1].is_zero() {
            summands.push(RigidSummand { name: format!("M{p}"), module: modules[p - 1].clone() });
        }
    }
    let mut qs: Vec<usize> = q.values().copied().collect();
    qs.sort();
    for p in qs {
        if !modules[p - 1].is_zero() {
            summands.push(RigidSummand { name: format!("M{p}"), module: modules[p - 1].clone() });
        }
    }
    for &j in all.iter().filter(|v| !k_sorted.contains(v)) {
        summands.push(RigidSummand { name: format!("Q{j}"), module: injectives[&j].clone() });
    }
    if summands.len() != r - r_k {
        return Err(PrepmodError::SummandCount { found: summands.len(), expected: r - r_k });
    }
    Ok(RigidConstruction { ty, k: k_sorted, word: word.to_vec(), r, r_k, modules, q, zero_indices, summands })
}

/// Middle terms of the two exchange sequences in one direction, as
/// multiplicities over the summands of `T`:
/// `0 -> T_k -> X -> T_k* -> 0` and `0 -> T_k* -> Y -> T_k -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeSequence {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeMatrixReport {
    /// One row per summand, one column per mutable direction.
    pub matrix: Vec<Vec<i64>>,
    /// One row per vertex in `J`.
    pub extension: Vec<Vec<i64>>,
}

impl ExchangeMatrixReport {
    pub fn exchange_matrix(&self) -> Result<ExchangeMatrix, crate::cluster::ClusterError> {
        ExchangeMatrix::new(self.matrix.clone())
    }

    pub fn extended_matrix(&self) -> Result<ExchangeMatrix, crate::cluster::ClusterError> {
        let mut rows = self.matrix.clone();
        rows.extend(self.extension.iter().cloned());
        ExchangeMatrix::new(rows)
    }
}

/// `b_ik = [Y_k : T_i] - [X_k : T_i]` and, for `j` in `J`,
/// `b_jk = dim Hom(S_j, X_k) - dim Hom(S_j, Y_k)`.
pub fn exchange_matrix_from_sequences(
    summands: &[RatRep],
    sequences: &[ExchangeSequence],
    j_vertices: &[usize],
) -> Result<ExchangeMatrixReport, PrepmodError> {
    let t = summands.len();
    let ty = summands.first().map(|s| s.ty()).ok_or_else(|| PrepmodError::ExchangeData("no summands".into()))?;
    let mut matrix = vec![vec![0i64; sequences.len()]; t];
    let mut middles = Vec::with_capacity(sequences.len());
    for (k, seq) in sequences.iter().enumerate() {
        if seq.x.len() != t || seq.y.len() != t {
            return Err(PrepmodError::ExchangeData(format!(
                "direction {}: multiplicity vectors must have {t} entries",
                k + 1
            )));
        }
        for i in 0..t {
            if seq.x[i] > 0 && seq.y[i] > 0 {
                return Err(PrepmodError::OverlappingSequence { direction: k + 1, summand: i + 1 });
            }
            matrix[i][k] = seq.y[i] as i64 - seq.x[i] as i64;
        }
        let sum = |mult: &[usize]| {
            RatRep::direct_sum_all(
                ty,
                Rationals,
                summands.iter().zip(mult).map(|(s, &m)| s.power(m)).collect::<Vec<_>>().iter(),
            )
        };
        middles.push((sum(&seq.x)?, sum(&seq.y)?));
    }
    let mut extension = Vec::with_capacity(j_vertices.len());
    for &j in j_vertices {
        let s = RatRep::simple(ty, Rationals, j)?;
        let row = middles
            .iter()
            .map(|(x, y)| Ok(hom_dim(&s, x)? as i64 - hom_dim(&s, y)? as i64))
            .collect::<Result<Vec<_>, PrepmodError>>()?;
        extension.push(row);
    }
    Ok(ExchangeMatrixReport { matrix, extension })
}

/// Pairwise `ext1_dim` over all summands, including each with itself.
pub fn pairwise_ext(summands: &[RatRep]) -> Result<Vec<Vec<usize>>, PrepmodError> {
    summands.iter().map(|a| summands.iter().map(|b| ext1_dim(a, b)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prepmod::Filtration;

    const D4_WORD: [usize; 12] = [1, 3, 1, 2, 3, 1, 4, 3, 1, 2, 3, 4];

    #[test]
    fn d4_sub_q4_construction() {
        let c = build_complete_rigid(DynkinType::D(4), &[1, 2, 3], &D4_WORD).unwrap();
        assert_eq!(c.r_k, 6);
        assert_eq!(c.zero_indices, vec![9, 10, 11, 12]);
        let names: Vec<&str> = c.summands.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["M7", "M8", "M4", "M5", "M6", "Q4"]);
        assert_eq!(c.q.get(&1), Some(&6));
        assert_eq!(c.summand("M4").unwrap().socle_filtration(), Filtration::parse(4, "S2 | S3 | S4").unwrap());
        assert_eq!(c.summand("M5").unwrap().socle(), vec![0, 0, 0, 2]);
        let ext = pairwise_ext(&c.summands.iter().map(|s| s.module.clone()).collect::<Vec<_>>()).unwrap();
        assert!(ext.iter().flatten().all(|&e| e == 0));
    }

    #[test]
    fn a2_construction() {
        let c = build_complete_rigid(DynkinType::A(2), &[], &[1, 2, 1]).unwrap();
        let dims: Vec<Vec<usize>> = c.summands.iter().map(|s| s.module.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 1], vec![1, 1]]);
        assert!(build_complete_rigid(DynkinType::A(2), &[], &[1, 2, 2]).is_err());
        assert!(build_complete_rigid(DynkinType::A(2), &[2], &[1, 2, 1]).is_err());
    }

    #[test]
    fn overlapping_sequences_rejected() {
        let c = build_complete_rigid(DynkinType::A(2), &[], &[1, 2, 1]).unwrap();
        let mods: Vec<RatRep> = c.summands.iter().map(|s| s.module.clone()).collect();
        let bad = ExchangeSequence { x: vec![0, 1, 0], y: vec![0, 1, 0] };
        assert!(matches!(
            exchange_matrix_from_sequences(&mods, &[bad], &[]),
            Err(PrepmodError::OverlappingSequence { direction: 1, summand: 2 })
        ));
    }
}

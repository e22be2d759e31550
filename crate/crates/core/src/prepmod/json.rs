//! Module JSON: `{type, dims: {vertex: int}, maps: {"s->t": [[rational]]}}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{arrows, PrepmodError, QuiverRep, RatRep};
use crate::dynkin::DynkinType;
use crate::linalg::{Matrix, Rationals};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    #[serde(rename = "type")]
    pub ty: String,
    pub dims: BTreeMap<String, usize>,
    /// Missing arrows are zero maps.
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
}

impl RatRep {
    pub fn to_record(&self) -> ModuleRecord {
        let dims = self.ty().vertices().map(|v| (v.to_string(), self.dim_at(v))).collect();
        let maps = arrows(self.ty())
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let rows = self.map(idx).to_rows().iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect();
                (a.label(), rows)
            })
            .collect();
        ModuleRecord { ty: self.ty().to_string(), dims, maps }
    }

    /// Parses and checks the preprojective relation.
    pub fn from_record(rec: &ModuleRecord) -> Result<Self, PrepmodError> {
        let ty: DynkinType = rec.ty.parse()?;
        let mut dims = vec![0usize; ty.rank()];
        for (k, &d) in &rec.dims {
            let v: usize = k.parse().map_err(|_| PrepmodError::Json(format!("bad vertex `{k}`")))?;
            ty.check_vertex(v)?;
            dims[v - 1] = d;
        }
        let arr = arrows(ty);
        let mut maps: Vec<Matrix<BigRational>> = arr
            .iter()
            .map(|a| Matrix::from_fn(dims[a.target - 1], dims[a.source - 1], |_, _| BigRational::default()))
            .collect();
        for (label, rows) in &rec.maps {
            let idx = arr
                .iter()
                .position(|a| a.label() == *label)
                .ok_or_else(|| PrepmodError::Json(format!("no arrow `{label}` in {ty}")))?;
            let a = arr[idx];
            let expected = (dims[a.target - 1], dims[a.source - 1]);
            let cols = rows.first().map_or(expected.1, |r| r.len());
            if rows.len() != expected.0 || cols != expected.1 || rows.iter().any(|r| r.len() != cols) {
                return Err(PrepmodError::MapShape { arrow: label.clone(), found: (rows.len(), cols), expected });
            }
            let parsed = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| {
                            s.trim().parse::<BigRational>().map_err(|_| PrepmodError::Json(format!("bad entry `{s}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            maps[idx] = Matrix::from_rows(parsed, cols);
        }
        let rep = QuiverRep::new(ty, Rationals, dims, maps)?;
        rep.check_relation()?;
        Ok(rep)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, PrepmodError> {
        let rec: ModuleRecord = serde_json::from_str(s).map_err(|e| PrepmodError::Json(e.to_string()))?;
        Self::from_record(&rec)
    }
}

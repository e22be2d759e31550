//! The functors `E_i`, `E_i^†` and the socle and radical series.

use std::fmt;

use serde::Serialize;

use super::{arrows, quotient_projection, QuiverRep};
use crate::linalg::{Field, Matrix};

/// Semisimple layers, listed from the top of the module down to its socle.
/// Each layer is a multiplicity vector in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filtration(pub Vec<Vec<usize>>);

impl Filtration {
    /// Parse layers like `"S3 | S1+S2+S4 | S3"` (also accepts `⊕`).
    pub fn parse(rank: usize, s: &str) -> Option<Self> {
        let mut layers = Vec::new();
        for layer in s.split('|') {
            let mut mult = vec![0usize; rank];
            for part in layer.split(['+', '⊕']) {
                let v: usize = part.trim().trim_start_matches('S').trim_start_matches('_').parse().ok()?;
                if v == 0 || v > rank {
                    return None;
                }
                mult[v - 1] += 1;
            }
            layers.push(mult);
        }
        Some(Filtration(layers))
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let layers: Vec<String> = self
            .0
            .iter()
            .map(|layer| {
                let parts: Vec<String> = layer
                    .iter()
                    .enumerate()
                    .flat_map(|(v, &m)| std::iter::repeat_n(format!("S{}", v + 1), m))
                    .collect();
                parts.join("+")
            })
            .collect();
        write!(f, "{}", layers.join(" | "))
    }
}

impl<F: Field> QuiverRep<F> {
    /// `E_i(M)`: the kernel of `M -> S_i^{m_i(M)}`, i.e. the submodule that
    /// keeps at `i` only the image of the incoming arrows.
    pub fn e_functor(&self, i: usize) -> Self {
        let mut bases = self.full_subspaces();
        bases[i - 1] = self.incoming_image(i);
        self.submodule(&bases).expect("E_i(M) is a submodule")
    }

    /// `E_i^†(M)`: `M` modulo the `S_i`-isotypic part of its socle.
    pub fn e_dagger(&self, i: usize) -> Self {
        let mut bases = self.zero_subspaces();
        bases[i - 1] = self.socle_at(i);
        self.quotient(&bases).expect("socle part is a submodule")
    }

    /// `E_{i_1} ... E_{i_k}(M)`: the last letter acts first.
    pub fn e_word(&self, word: &[usize], dagger: bool) -> Self {
        let mut m = self.clone();
        for &i in word.iter().rev() {
            m = if dagger { m.e_dagger(i) } else { m.e_functor(i) };
        }
        m
    }

    /// Socle series `0 = S_0 ⊂ S_1 ⊂ ...`; returns the subspaces per step,
    /// stopping when the whole module is reached or the series stalls.
    pub fn socle_series(&self) -> Vec<Vec<Matrix<F::Elem>>> {
        let f = self.field();
        let arr = arrows(self.ty());
        let mut current = self.zero_subspaces();
        let mut series = vec![current.clone()];
        loop {
            let projs: Vec<Matrix<F::Elem>> = current.iter().map(|b| quotient_projection(f, b).0).collect();
            let mut next = Vec::with_capacity(current.len());
            for v in self.ty().vertices() {
                let mut stacked = Matrix::zeros(f, 0, self.dim_at(v));
                for (idx, a) in arr.iter().enumerate() {
                    if a.source == v {
                        stacked = stacked.vstack(&projs[a.target - 1].mul(f, self.map(idx)));
                    }
                }
                next.push(stacked.kernel(f));
            }
            let grew = next.iter().zip(&current).any(|(n, c)| n.ncols() > c.ncols());
            if !grew {
                return series;
            }
            series.push(next.clone());
            current = next;
        }
    }

    /// Radical series `M = R_0 ⊃ R_1 ⊃ ...` down to the first repeat.
    pub fn radical_series(&self) -> Vec<Vec<Matrix<F::Elem>>> {
        let f = self.field();
        let arr = arrows(self.ty());
        let mut current = self.full_subspaces();
        let mut series = vec![current.clone()];
        loop {
            let mut next: Vec<Matrix<F::Elem>> = self.zero_subspaces();
            for (idx, a) in arr.iter().enumerate() {
                let image = self.map(idx).mul(f, &current[a.source - 1]);
                let t = a.target - 1;
                next[t] = next[t].hstack(&image);
            }
            let next: Vec<Matrix<F::Elem>> = next.iter().map(|m| m.column_basis(f)).collect();
            let shrank = next.iter().zip(&current).any(|(n, c)| n.ncols() < c.ncols());
            if !shrank {
                return series;
            }
            series.push(next.clone());
            current = next;
        }
    }

    /// Layers of the socle series, from the top down.
    pub fn socle_filtration(&self) -> Filtration {
        let series = self.socle_series();
        let mut layers: Vec<Vec<usize>> =
            series.windows(2).map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| a.ncols() - b.ncols()).collect()).collect();
        layers.reverse();
        Filtration(layers)
    }

    /// Layers of the radical series, from the top down.
    pub fn radical_filtration(&self) -> Filtration {
        Filtration(self.radical_layers())
    }

    pub(crate) fn radical_layers(&self) -> Vec<Vec<usize>> {
        let series = self.radical_series();
        series.windows(2).map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| a.ncols() - b.ncols()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;
    use crate::linalg::Rationals;
    use crate::prepmod::{injective, RatRep};

    fn layers(rank: usize, s: &str) -> Filtration {
        Filtration::parse(rank, s).unwrap()
    }

    #[test]
    fn d4_injective_filtrations() {
        let d4 = DynkinType::D(4);
        let q4 = injective(d4, Rationals, 4).unwrap();
        assert_eq!(q4.socle_filtration(), layers(4, "S4 | S3 | S1+S2 | S3 | S4"));
        assert_eq!(q4.radical_filtration(), q4.socle_filtration());
        let q3 = injective(d4, Rationals, 3).unwrap();
        assert_eq!(q3.socle_filtration(), layers(4, "S3 | S1⊕S2⊕S4 | S3⊕S3 | S1⊕S2⊕S4 | S3"));
    }

    #[test]
    fn e_functors_on_q4() {
        let d4 = DynkinType::D(4);
        let q4 = injective(d4, Rationals, 4).unwrap();
        let e4 = q4.e_functor(4);
        assert_eq!(e4.socle_filtration(), layers(4, "S3 | S1+S2 | S3 | S4"));
        assert!(e4.check_relation().is_ok());
        let m4 = injective(d4, Rationals, 2).unwrap().e_word(&[1, 3, 1, 2], true);
        assert_eq!(m4.socle_filtration(), layers(4, "S2 | S3 | S4"));
        let s = RatRep::simple(d4, Rationals, 2).unwrap();
        assert!(s.e_functor(2).is_zero());
        assert!(s.e_dagger(2).is_zero());
        assert_eq!(s.e_functor(1), s);
        assert_eq!(s.e_word(&[], false), s);
    }

    #[test]
    fn display_round_trip() {
        let f = layers(4, "S3 | S1+S2+S4 | S3");
        assert_eq!(f.to_string(), "S3 | S1+S2+S4 | S3");
        assert_eq!(Filtration(vec![]).to_string(), "0");
        assert!(Filtration::parse(4, "S5").is_none());
    }
}

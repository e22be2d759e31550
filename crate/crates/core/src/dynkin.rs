//! Simply-laced Dynkin diagrams, their root systems, and words in the
//! simple reflections.
//!
//! Vertices are 1-based. Type `D_n` uses `1 - 3, 2 - 3, 3 - 4 - ... - n`, so
//! for `D_4` the external nodes are 1, 2, 4 and the central node is 3.
//! Type `E_n` uses `1 - 3 - 4 - 5 - ... - n` with 2 attached to 4.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynkinError {
    #[error("cannot parse Dynkin type `{0}` (expected A<n>, D<n> with n >= 4, or E6/E7/E8)")]
    Parse(String),
    #[error("vertex {vertex} is not in {ty}")]
    InvalidVertex { ty: DynkinType, vertex: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), DynkinError> {
        if v >= 1 && v <= self.rank() {
            Ok(())
        } else {
            Err(DynkinError::InvalidVertex { ty: *self, vertex: v })
        }
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = match *self {
            DynkinType::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
            DynkinType::D(n) => {
                let mut v = vec![(1, 3), (2, 3)];
                v.extend((3..n).map(|i| (i, i + 1)));
                v
            }
            DynkinType::E(n) => {
                let mut v = vec![(1, 3), (2, 4), (3, 4)];
                v.extend((4..n).map(|i| (i, i + 1)));
                v
            }
        };
        e.sort();
        e
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges().contains(&(a, b))
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        self.vertices().filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Symmetric bilinear form: 2 on the diagonal, -1 on edges.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if self.adjacent(i, j) {
            -1
        } else {
            0
        }
    }

    /// `(a, b)` for dimension vectors indexed by vertex order.
    pub fn form(&self, a: &[usize], b: &[usize]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += self.cartan(i + 1, j + 1) * a[i] as i64 * b[j] as i64;
            }
        }
        s
    }

    /// Positive roots of the subsystem generated by `subset`, in the basis
    /// of simple roots of the full diagram.
    pub fn positive_roots(&self, subset: &[usize]) -> Vec<Vec<i64>> {
        let n = self.rank();
        let simple = |k: usize| {
            let mut v = vec![0i64; n];
            v[k - 1] = 1;
            v
        };
        let mut seen: HashSet<Vec<i64>> = subset.iter().map(|&k| simple(k)).collect();
        let mut frontier: Vec<Vec<i64>> = seen.iter().cloned().collect();
        while let Some(beta) = frontier.pop() {
            for &k in subset {
                let next = self.reflect(k, &beta);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        pos.sort();
        pos
    }

    /// Length of the longest element of the parabolic subgroup `W_K`.
    pub fn longest_length(&self, subset: &[usize]) -> usize {
        self.positive_roots(subset).len()
    }

    fn reflect(&self, k: usize, beta: &[i64]) -> Vec<i64> {
        let pairing: i64 = (1..=self.rank()).map(|j| beta[j - 1] * self.cartan(j, k)).sum();
        let mut out = beta.to_vec();
        out[k - 1] -= pairing;
        out
    }

    /// A word is reduced iff each letter sends the accumulated prefix image of
    /// its simple root to a positive root.
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        for (p, &i) in word.iter().enumerate() {
            let mut beta = vec![0i64; self.rank()];
            beta[i - 1] = 1;
            for &j in word[..p].iter().rev() {
                beta = self.reflect(j, &beta);
            }
            if beta.iter().any(|&c| c < 0) {
                return false;
            }
        }
        true
    }

    /// A reduced word for `w_0` built from a bipartite Coxeter element
    /// `c = c_+ c_-`; its length is the number of positive roots.
    pub fn bipartite_longest_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut colour = vec![None; n + 1];
        colour[1] = Some(0);
        let mut stack = vec![1];
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if colour[w].is_none() {
                    colour[w] = Some(1 - colour[v].unwrap());
                    stack.push(w);
                }
            }
        }
        let plus: Vec<usize> = self.vertices().filter(|&v| colour[v] == Some(0)).collect();
        let minus: Vec<usize> = self.vertices().filter(|&v| colour[v] == Some(1)).collect();
        let target = self.longest_length(&self.vertices().collect::<Vec<_>>());
        let mut word = Vec::with_capacity(target);
        let mut turn = 0;
        while word.len() < target {
            let part = if turn % 2 == 0 { &plus } else { &minus };
            word.extend(part);
            turn += 1;
        }
        word.truncate(target);
        word
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = DynkinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || DynkinError::Parse(s.to_string());
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        match letter {
            'A' if n >= 1 => Ok(DynkinType::A(n)),
            'D' if n >= 4 => Ok(DynkinType::D(n)),
            'E' if (6..=8).contains(&n) => Ok(DynkinType::E(n)),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for DynkinType {
    type Error = DynkinError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<DynkinType> for String {
    fn from(t: DynkinType) -> String {
        t.to_string()
    }
}

/// Parse `1,2,1` or `1 2 1` into letters.
pub fn parse_word(s: &str) -> Result<Vec<usize>, std::num::ParseIntError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().trim_start_matches('s').parse())
        .collect()
}

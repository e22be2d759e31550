use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::{ClusterError, Seed, SeedKey};
use crate::laurent::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreLimits {
    pub max_seeds: usize,
    pub max_depth: usize,
}

impl Default for ExploreLimits {
    fn default() -> Self {
        ExploreLimits { max_seeds: 100_000, max_depth: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub direction: usize,
    pub to: usize,
}

/// The seeds reached from an initial seed, in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct MutationClass {
    pub seeds: Vec<Seed>,
    pub depths: Vec<usize>,
    /// Distinct mutable cluster variables in discovery order.
    pub variables: Vec<LaurentPoly>,
    pub graph: Vec<Edge>,
    pub exhausted: bool,
}

impl MutationClass {
    pub fn cluster_count(&self) -> usize {
        self.seeds.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn initial(&self) -> &Seed {
        &self.seeds[0]
    }

    /// Neighbour of seed `i` in direction `k`, when that edge was explored.
    pub fn neighbour(&self, i: usize, k: usize) -> Option<usize> {
        self.graph.iter().find(|e| e.from == i && e.direction == k).map(|e| e.to)
    }

    pub fn is_regular(&self) -> bool {
        let rank = self.initial().rank();
        (0..self.seeds.len()).all(|i| (0..rank).all(|k| self.neighbour(i, k).is_some()))
    }

    /// Graphviz export: one node per seed, undirected edges labelled by the
    /// 1-based direction.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph mutation_class {\n");
        for (i, s) in self.seeds.iter().enumerate() {
            let label = s.key().to_string().replace('"', "\\\"");
            let _ = writeln!(out, "  s{i} [label=\"{label}\"];");
        }
        for e in &self.graph {
            if e.from < e.to {
                let _ = writeln!(out, "  s{} -- s{} [label=\"{}\"];", e.from, e.to, e.direction + 1);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of `seed` under mutation.
///
/// Seeds are identified by [`Seed::key`]; when a mutation lands on a known
/// cluster, the stored exchange matrix must agree with the new one under the
/// induced permutation of mutable positions. Running out of `limits` yields
/// a partial class with `exhausted == false`.
pub fn explore(seed: &Seed, limits: ExploreLimits) -> Result<MutationClass, ClusterError> {
    let rank = seed.rank();
    let mut seeds = vec![seed.clone()];
    let mut depths = vec![0usize];
    let mut index: HashMap<SeedKey, usize> = HashMap::new();
    index.insert(seed.key(), 0);
    let mut variables: Vec<LaurentPoly> = Vec::new();
    let mut known_vars: std::collections::HashSet<LaurentPoly> = std::collections::HashSet::new();
    for v in seed.mutable_variables() {
        if known_vars.insert(v.clone()) {
            variables.push(v.clone());
        }
    }
    let mut graph = Vec::new();
    let mut exhausted = true;
    let mut queue = VecDeque::from([0usize]);

    while let Some(i) = queue.pop_front() {
        for k in 0..rank {
            let next = seeds[i].mutate(k)?;
            let key = next.key();
            if let Some(&j) = index.get(&key) {
                check_consistent(&seeds[j], &next)?;
                graph.push(Edge { from: i, direction: k, to: j });
                continue;
            }
            if depths[i] + 1 > limits.max_depth || seeds.len() >= limits.max_seeds {
                exhausted = false;
                continue;
            }
            let j = seeds.len();
            let v = next.cluster()[k].clone();
            if known_vars.insert(v.clone()) {
                variables.push(v);
            }
            index.insert(key, j);
            seeds.push(next);
            depths.push(depths[i] + 1);
            graph.push(Edge { from: i, direction: k, to: j });
            queue.push_back(j);
        }
    }
    Ok(MutationClass { seeds, depths, variables, graph, exhausted })
}

fn check_consistent(stored: &Seed, fresh: &Seed) -> Result<(), ClusterError> {
    let rank = stored.rank();
    let mut perm = vec![usize::MAX; rank];
    for (p, v) in fresh.mutable_variables().iter().enumerate() {
        match stored.mutable_variables().iter().position(|w| w == v) {
            Some(q) => perm[p] = q,
            None => return Err(ClusterError::InconsistentMatrix(stored.dump(), fresh.dump())),
        }
    }
    let row = |r: usize| if r < rank { perm[r] } else { r };
    for r in 0..fresh.matrix().d() {
        for c in 0..rank {
            if fresh.matrix().get(r, c) != stored.matrix().get(row(r), perm[c]) {
                return Err(ClusterError::InconsistentMatrix(stored.dump(), fresh.dump()));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteTypeReport {
    pub finite: bool,
    pub exhausted: bool,
    pub cluster_variable_count: usize,
    pub cluster_count: usize,
}

/// Finite type by exhaustion: `finite` only when exploration completes.
pub fn is_finite_type(seed: &Seed, limits: ExploreLimits) -> Result<FiniteTypeReport, ClusterError> {
    let class = explore(seed, limits)?;
    Ok(FiniteTypeReport {
        finite: class.exhausted,
        exhausted: class.exhausted,
        cluster_variable_count: class.variable_count(),
        cluster_count: class.cluster_count(),
    })
}

/// A cluster monomial together with the clusters that contain its support.
#[derive(Clone, Debug)]
pub struct ClusterMonomial {
    pub value: LaurentPoly,
    /// `(variable index, exponent)` pairs; indices refer to the class
    /// variables followed by the coefficients of the initial seed.
    pub support: Vec<(usize, u32)>,
    pub clusters: Vec<usize>,
}

impl ClusterMonomial {
    pub fn degree(&self) -> u32 {
        self.support.iter().map(|&(_, e)| e).sum()
    }
}

/// All cluster monomials of total degree at most `bound`, without repeats.
pub fn cluster_monomials(class: &MutationClass, bound: u32) -> Result<Vec<ClusterMonomial>, ClusterError> {
    if !class.exhausted {
        return Err(ClusterError::NotExhausted);
    }
    let mut all_vars = class.variables.clone();
    all_vars.extend(class.initial().coefficients().iter().cloned());
    let global: HashMap<&LaurentPoly, usize> = all_vars.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let mut found: BTreeMap<Vec<(usize, u32)>, ClusterMonomial> = BTreeMap::new();
    for (ci, seed) in class.seeds.iter().enumerate() {
        let ids: Vec<usize> = seed.cluster().iter().map(|v| global[v]).collect();
        let mut exps = vec![0u32; ids.len()];
        enumerate_exponents(&mut exps, 0, bound, &mut |e| {
            let mut support: Vec<(usize, u32)> =
                ids.iter().zip(e).filter(|(_, &x)| x > 0).map(|(&i, &x)| (i, x)).collect();
            support.sort();
            let entry = found.entry(support.clone()).or_insert_with(|| {
                let ring = seed.cluster()[0].ring();
                let mut value = LaurentPoly::one(ring);
                for &(i, x) in &support {
                    value = &value * &all_vars[i].pow(x);
                }
                ClusterMonomial { value, support, clusters: Vec::new() }
            });
            if entry.clusters.last() != Some(&ci) {
                entry.clusters.push(ci);
            }
        });
    }
    let mut out: Vec<ClusterMonomial> = found.into_values().collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.support.cmp(&b.support)));
    // Distinct supports give distinct Laurent polynomials for genuine
    // cluster monomials; collapse any coincidences all the same.
    let mut seen = std::collections::HashSet::new();
    out.retain(|m| seen.insert(m.value.clone()));
    Ok(out)
}

fn enumerate_exponents(exps: &mut [u32], pos: usize, budget: u32, f: &mut impl FnMut(&[u32])) {
    if pos == exps.len() {
        f(exps);
        return;
    }
    for e in 0..=budget {
        exps[pos] = e;
        enumerate_exponents(exps, pos + 1, budget - e, f);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{builtin_seed, BuiltinSeed, ExchangeMatrix};
    use crate::laurent::Ring;

    #[test]
    fn rank_zero_seed() {
        let ring = Ring::numbered("y", 2);
        let m = ExchangeMatrix::new(vec![vec![], vec![]]).unwrap();
        let s = Seed::initial(m, &ring, vec![]).unwrap();
        let c = explore(&s, ExploreLimits::default()).unwrap();
        assert!(c.exhausted);
        assert_eq!(c.cluster_count(), 1);
        assert_eq!(c.variable_count(), 0);
        let mons = cluster_monomials(&c, 0).unwrap();
        assert_eq!(mons.len(), 1);
        assert!(mons[0].value.is_one());
    }

    #[test]
    fn kronecker_is_not_exhausted() {
        let ring = Ring::numbered("x", 2);
        let m = ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]]).unwrap();
        let s = Seed::initial(m, &ring, vec![]).unwrap();
        let r = is_finite_type(&s, ExploreLimits { max_seeds: 100_000, max_depth: 20 }).unwrap();
        assert!(!r.finite);
        assert!(!r.exhausted);
        // the exchange graph is a line: depth 20 either side of the start
        assert_eq!(r.cluster_count, 41);
    }

    #[test]
    fn seed_limit_marks_partial() {
        let s = builtin_seed(&BuiltinSeed::Grassmannian25).unwrap();
        let c = explore(&s, ExploreLimits { max_seeds: 3, max_depth: 64 }).unwrap();
        assert!(!c.exhausted);
        assert_eq!(c.cluster_count(), 3);
        assert!(cluster_monomials(&c, 1).is_err());
    }

    #[test]
    fn dot_export_lists_every_edge_once() {
        let s = builtin_seed(&BuiltinSeed::Grassmannian25).unwrap();
        let c = explore(&s, ExploreLimits::default()).unwrap();
        let dot = c.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 5);
        assert_eq!(dot.matches("[label=").count(), 10);
    }
}

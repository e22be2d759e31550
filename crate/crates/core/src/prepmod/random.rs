//! Random small modules: submodules of sums of injectives generated by random
//! vectors, optionally followed by a random quotient.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{injective, RatRep};
use crate::dynkin::DynkinType;
use crate::linalg::{Matrix, Rationals};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomModuleSpec {
    pub max_total_dim: usize,
    /// Allow the zero module.
    pub allow_zero: bool,
}

impl Default for RandomModuleSpec {
    fn default() -> Self {
        RandomModuleSpec { max_total_dim: 8, allow_zero: false }
    }
}

pub fn random_module<R: Rng>(ty: DynkinType, spec: RandomModuleSpec, rng: &mut R) -> RatRep {
    let vertices: Vec<usize> = ty.vertices().collect();
    let injectives: Vec<RatRep> =
        vertices.iter().map(|&v| injective(ty, Rationals, v).expect("valid vertex")).collect();
    loop {
        let parts = rng.gen_range(1..=2);
        let mut ambient = RatRep::zero(ty, Rationals);
        for _ in 0..parts {
            let q = injectives.choose(rng).expect("nonempty diagram");
            ambient = ambient.direct_sum(q).expect("same type");
        }
        let gens = random_vectors(&ambient, rng.gen_range(1..=2), rng);
        let span = ambient.generated_subspaces(&gens);
        let mut m = ambient.submodule(&span).expect("generated subspaces are stable");
        if rng.gen_bool(0.5) && !m.is_zero() {
            let kill = random_vectors(&m, 1, rng);
            let span = m.generated_subspaces(&kill);
            m = m.quotient(&span).expect("generated subspaces are stable");
        }
        let size = m.total_dim();
        if size <= spec.max_total_dim && (spec.allow_zero || size > 0) {
            return m;
        }
    }
}

/// `count` vectors, each supported at one random vertex with entries in -2..=2.
fn random_vectors<R: Rng>(m: &RatRep, count: usize, rng: &mut R) -> Vec<Matrix<num_rational::BigRational>> {
    let f = Rationals;
    let support: Vec<usize> = m.ty().vertices().filter(|&v| m.dim_at(v) > 0).collect();
    let mut gens: Vec<Matrix<num_rational::BigRational>> =
        m.ty().vertices().map(|v| Matrix::zeros(&f, m.dim_at(v), 0)).collect();
    if support.is_empty() {
        return gens;
    }
    for _ in 0..count {
        let v = *support.choose(rng).expect("nonempty");
        let d = m.dim_at(v);
        let col: Vec<Vec<i64>> = (0..d).map(|_| vec![rng.gen_range(-2..=2)]).collect();
        gens[v - 1] = gens[v - 1].hstack(&Matrix::from_i64_rows(&col, 1));
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_valid_and_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for ty in [DynkinType::A(3), DynkinType::D(4)] {
            for _ in 0..10 {
                let m = random_module(ty, RandomModuleSpec::default(), &mut rng);
                assert!(m.check_relation().is_ok());
                assert!(m.total_dim() >= 1 && m.total_dim() <= 8);
                assert!(m.is_nilpotent());
            }
        }
    }
}

//! Strategies and property bodies shared by the property and acceptance suites.
#![allow(dead_code)]

use clusterforge::cluster::{ExchangeMatrix, Seed};
use clusterforge::dynkin::DynkinType;
use clusterforge::laurent::{LaurentPoly, Monomial, Ring};
use clusterforge::prepmod::{ext1_dim, hom_dim, random_module, RandomModuleSpec, RatRep};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const VARS: usize = 3;

pub fn ring() -> Ring {
    Ring::numbered("x", VARS)
}

/// A Laurent polynomial with up to four terms, exponents in `-2..=3`.
pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=3, VARS), -5i64..=5), 0..=4).prop_map(|terms| {
        let r = ring();
        terms.into_iter().fold(LaurentPoly::zero(&r), |acc, (e, c)| acc + LaurentPoly::monomial(&r, Monomial(e), c))
    })
}

pub fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero divisor", |p| !p.is_zero())
}

/// A `d x rank` matrix with skew-symmetric principal part and up to three
/// coefficient rows, plus a direction.
pub fn exchange_matrix() -> impl Strategy<Value = (ExchangeMatrix, usize)> {
    (1usize..=4, 0usize..=3)
        .prop_flat_map(|(rank, extra)| {
            let upper = prop::collection::vec(-2i64..=2, rank * (rank - 1) / 2);
            let coeffs = prop::collection::vec(prop::collection::vec(-2i64..=2, rank), extra);
            (Just(rank), upper, coeffs, 0..rank)
        })
        .prop_map(|(rank, upper, coeffs, k)| {
            let mut rows = vec![vec![0i64; rank]; rank];
            let mut it = upper.into_iter();
            for i in 0..rank {
                for j in i + 1..rank {
                    let v = it.next().expect("sized");
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            rows.extend(coeffs);
            (ExchangeMatrix::new(rows).expect("skew-symmetric by construction"), k)
        })
}

/// Random small modules of type A3 or D4, from a seed.
pub fn module_pair() -> impl Strategy<Value = (RatRep, RatRep)> {
    (any::<u64>(), prop::bool::ANY).prop_map(|(seed, d4)| {
        let ty = if d4 { DynkinType::D(4) } else { DynkinType::A(3) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = RandomModuleSpec { max_total_dim: 6, allow_zero: true };
        (random_module(ty, spec, &mut rng), random_module(ty, spec, &mut rng))
    })
}

pub fn module_triple() -> impl Strategy<Value = (RatRep, RatRep, RatRep)> {
    (any::<u64>(), prop::bool::ANY).prop_map(|(seed, d4)| {
        let ty = if d4 { DynkinType::D(4) } else { DynkinType::A(3) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = RandomModuleSpec { max_total_dim: 5, allow_zero: true };
        (random_module(ty, spec, &mut rng), random_module(ty, spec, &mut rng), random_module(ty, spec, &mut rng))
    })
}

pub fn point() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((1i64..=9, 1i64..=5), VARS)
        .prop_map(|v| v.into_iter().map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect())
}

pub fn mutation_involution((b, k): (ExchangeMatrix, usize)) -> Result<(), TestCaseError> {
    let once = b.mutate(k).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(once.mutate(k).map_err(|e| TestCaseError::fail(e.to_string()))?, b.clone());
    let ring = Ring::numbered("y", b.d());
    let seed = Seed::initial(b, &ring, vec![]).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let back = seed.mutate(k).and_then(|s| s.mutate(k)).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.cluster(), seed.cluster());
    Ok(())
}

pub fn skew_symmetry_preserved((b, k): (ExchangeMatrix, usize)) -> Result<(), TestCaseError> {
    let m = b.mutate(k).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(m.is_principal_skew_symmetric());
    prop_assert_eq!(m.d(), b.d());
    prop_assert_eq!(m.rank(), b.rank());
    Ok(())
}

pub fn ring_axioms((a, b, c): (LaurentPoly, LaurentPoly, LaurentPoly)) -> Result<(), TestCaseError> {
    let one = LaurentPoly::one(&ring());
    let zero = LaurentPoly::zero(&ring());
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a * &one, a.clone());
    prop_assert_eq!(&a + &zero, a.clone());
    let copy = a.clone();
    prop_assert!((&a - &copy).is_zero());
    prop_assert_eq!(-(-&a), a.clone());
    Ok(())
}

pub fn division_round_trip((a, b): (LaurentPoly, LaurentPoly)) -> Result<(), TestCaseError> {
    let q = (&a * &b).div_exact(&b).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(q, a);
    Ok(())
}

pub fn ext_symmetry((m, n): (RatRep, RatRep)) -> Result<(), TestCaseError> {
    let mn = ext1_dim(&m, &n).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let nm = ext1_dim(&n, &m).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(mn, nm);
    Ok(())
}

pub fn hom_additivity((a, b, c): (RatRep, RatRep, RatRep)) -> Result<(), TestCaseError> {
    let f = |x: &RatRep, y: &RatRep| hom_dim(x, y).map_err(|e| TestCaseError::fail(e.to_string()));
    let ab = a.direct_sum(&b).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(f(&ab, &c)?, f(&a, &c)? + f(&b, &c)?);
    prop_assert_eq!(f(&c, &ab)?, f(&c, &a)? + f(&c, &b)?);
    Ok(())
}

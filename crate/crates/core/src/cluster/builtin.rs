//! Seeds from the worked examples: the quadric cone, Gr(2,5), and the
//! partial flag variety of type D4 with `J = {4}`.

use super::{ClusterError, ExchangeMatrix, Seed};
use crate::laurent::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinSeed {
    /// Isotropic cone of `sum (-1)^(i-1) y_i y_{2n+1-i}` in `C^{2n}`, `n >= 4`.
    Quadric(usize),
    Grassmannian25,
    D4Flag,
    D4FlagExtended,
}

pub const BUILTIN_SEED_NAMES: &[&str] = &["quadric", "grassmannian_2_5", "d4_flag", "d4_flag_extended"];

impl BuiltinSeed {
    /// `quadric` needs `n`; the other names ignore it.
    pub fn parse(name: &str, n: Option<usize>) -> Result<Self, ClusterError> {
        let name = name.strip_prefix("builtin:").unwrap_or(name);
        match name {
            "grassmannian_2_5" | "gr25" => Ok(BuiltinSeed::Grassmannian25),
            "d4_flag" => Ok(BuiltinSeed::D4Flag),
            "d4_flag_extended" => Ok(BuiltinSeed::D4FlagExtended),
            "quadric" => Ok(BuiltinSeed::Quadric(n.unwrap_or(4))),
            other => {
                if let Some(rest) = other.strip_prefix("quadric") {
                    let digits = rest.trim_matches(|c: char| !c.is_ascii_digit());
                    if let Ok(v) = digits.parse() {
                        return Ok(BuiltinSeed::Quadric(v));
                    }
                }
                Err(ClusterError::UnknownBuiltin(other.to_string()))
            }
        }
    }
}

pub fn builtin_seed(which: &BuiltinSeed) -> Result<Seed, ClusterError> {
    match which {
        BuiltinSeed::Quadric(n) => quadric(*n),
        BuiltinSeed::Grassmannian25 => {
            let m = ExchangeMatrix::new(vec![
                vec![0, -1],
                vec![1, 0],
                vec![-1, 0],
                vec![1, 0],
                vec![-1, 1],
                vec![0, -1],
                vec![0, 1],
            ])?;
            let labels = ["[1,3]", "[1,4]", "[1,2]", "[2,3]", "[3,4]", "[4,5]", "[1,5]"];
            Seed::initial(m, &Ring::numbered("y", 7), labels.iter().map(|s| s.to_string()).collect())
        }
        BuiltinSeed::D4Flag => d4(false),
        BuiltinSeed::D4FlagExtended => d4(true),
    }
}

fn d4(extended: bool) -> Result<Seed, ClusterError> {
    let mut rows = vec![vec![0, 0], vec![0, 0], vec![0, -1], vec![-1, 1], vec![0, -1], vec![1, 0]];
    let mut names = vec!["M7", "M8", "M4", "M5", "M6", "Q4"];
    if extended {
        rows.push(vec![1, 0]);
        names.push("D4");
    }
    let labels =
        names.iter().map(|n| if *n == "D4" { "Delta(w4,w4)".to_string() } else { format!("phi({n})") }).collect();
    Seed::initial(ExchangeMatrix::new(rows)?, &Ring::new(&names)?, labels)
}

/// Quadric seed. Mutable positions are `y_2, ..., y_{n-1}`; coefficients are
/// `y_1, y_n, y_{n+1}, y_{2n}, p_1, ..., p_{n-3}`. The principal part is zero
/// and each column carries one of the three exchange binomials
/// `y_1 y_{2n} + p_1`, `p_{k-2} + p_{k-1}`, `y_n y_{n+1} + p_{n-3}`.
/// Signs are chosen so that for `n = 4` the matrix agrees, up to a
/// permutation of coefficient rows, with the extended D4 flag seed.
fn quadric(n: usize) -> Result<Seed, ClusterError> {
    if n < 4 {
        return Err(ClusterError::QuadricTooSmall(n));
    }
    let rank = n - 2;
    let mut names: Vec<String> = (2..n).map(|k| format!("y{k}")).collect();
    names.extend([1, n, n + 1, 2 * n].iter().map(|k| format!("y{k}")));
    names.extend((1..=n - 3).map(|s| format!("p{s}")));
    let ring = Ring::new(&names)?;
    let row_of = |name: String| ring.index_of(&name).expect("quadric variable");
    let mut rows = vec![vec![0i64; rank]; names.len()];
    for k in 2..n {
        let col = k - 2;
        if k == 2 {
            rows[row_of("y1".into())][col] = 1;
            rows[row_of(format!("y{}", 2 * n))][col] = 1;
            rows[row_of("p1".into())][col] -= 1;
        }
        if (3..=n - 2).contains(&k) {
            rows[row_of(format!("p{}", k - 1))][col] -= 1;
            rows[row_of(format!("p{}", k - 2))][col] += 1;
        }
        if k == n - 1 {
            rows[row_of(format!("y{n}"))][col] = -1;
            rows[row_of(format!("y{}", n + 1))][col] = -1;
            rows[row_of(format!("p{}", n - 3))][col] += 1;
        }
    }
    Seed::initial(ExchangeMatrix::new(rows)?, &ring, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmannian_labels() {
        let s = builtin_seed(&BuiltinSeed::Grassmannian25).unwrap();
        assert_eq!(s.labels()[0], "[1,3]");
        assert_eq!(s.labels()[6], "[1,5]");
        assert_eq!(s.matrix().d(), 7);
        assert_eq!(s.matrix().n(), 5);
    }

    #[test]
    fn d4_matrices() {
        let s = builtin_seed(&BuiltinSeed::D4Flag).unwrap();
        assert_eq!(s.matrix().rows()[3], vec![-1, 1]);
        let e = builtin_seed(&BuiltinSeed::D4FlagExtended).unwrap();
        assert_eq!(e.matrix().d(), 7);
        assert_eq!(e.matrix().rows()[6], vec![1, 0]);
    }

    #[test]
    fn quadric_small_n_rejected() {
        assert!(matches!(builtin_seed(&BuiltinSeed::Quadric(3)), Err(ClusterError::QuadricTooSmall(3))));
        assert!(BuiltinSeed::parse("nope", None).is_err());
        assert_eq!(BuiltinSeed::parse("builtin:quadric", Some(6)).unwrap(), BuiltinSeed::Quadric(6));
        assert_eq!(BuiltinSeed::parse("quadric(5)", None).unwrap(), BuiltinSeed::Quadric(5));
    }

    #[test]
    fn quadric_four_matches_extended_d4_rows() {
        let q = builtin_seed(&BuiltinSeed::Quadric(4)).unwrap();
        let e = builtin_seed(&BuiltinSeed::D4FlagExtended).unwrap();
        let mut a = q.matrix().rows().to_vec();
        let mut b = e.matrix().rows().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

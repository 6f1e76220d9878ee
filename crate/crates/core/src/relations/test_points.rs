use crate::scalar::Scalar;
use crate::word_algebra::{ParamAssignment, ParamUniverse};

const POOL: [(i64, i64); 12] = [
    (2, 1),
    (3, 5),
    (7, 3),
    (11, 4),
    (5, 1),
    (13, 6),
    (17, 5),
    (19, 7),
    (23, 8),
    (29, 9),
    (31, 10),
    (37, 11),
];

/// `i`-th value of the test-point pool; every value is distinct and nonzero.
pub fn pool_value<S: Scalar>(i: usize) -> S {
    match POOL.get(i) {
        Some(&(n, d)) => S::ratio(n, d),
        None => S::from_int(i as i64 + 2),
    }
}

/// `rounds` assignments of the universe; the `p`-th parameter gets pool
/// value `p + r` in round `r`, so values within a round are distinct.
pub fn default_test_points<S: Scalar>(
    universe: &ParamUniverse,
    rounds: usize,
) -> Vec<ParamAssignment<S>> {
    let len = POOL.len().max(universe.len());
    (0..rounds)
        .map(|r| {
            let mut a = ParamAssignment::new();
            for (p, param) in universe.iter().enumerate() {
                a.set(param, pool_value((p + r) % len))
                    .expect("pool values are nonzero");
            }
            a
        })
        .collect()
}

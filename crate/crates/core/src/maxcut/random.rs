use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MaxCutInstance;
use crate::weight::ExactWeight;

/// A connected random graph on `n` vertices (`x0`, `x1`, ...) with maximum
/// degree `max_degree` and nonzero integer weights in `[-max_abs, max_abs]`.
pub fn random_instance(n: usize, max_degree: usize, max_abs: i64, seed: u64) -> MaxCutInstance {
    assert!(n >= 1 && max_degree >= 2 && max_abs >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0usize; n];
    let mut pairs = Vec::new();
    let weight = |rng: &mut ChaCha8Rng| {
        let w = rng.gen_range(1..=max_abs);
        if rng.gen_bool(0.3) {
            -w
        } else {
            w
        }
    };
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| deg[u] < max_degree).collect();
        let u = *open.choose(&mut rng).expect("a path always leaves an open vertex");
        deg[u] += 1;
        deg[v] += 1;
        pairs.push((u, v, weight(&mut rng)));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v
            || deg[u] >= max_degree
            || deg[v] >= max_degree
            || pairs
                .iter()
                .any(|&(a, b, _)| (a, b) == (u, v) || (a, b) == (v, u))
        {
            continue;
        }
        deg[u] += 1;
        deg[v] += 1;
        pairs.push((u, v, weight(&mut rng)));
    }
    let names = (0..n).map(|i| format!("x{i}")).collect();
    MaxCutInstance::new(
        names,
        pairs.into_iter().map(|(u, v, w)| (u, v, ExactWeight::int(w))),
    )
    .expect("generated graph is simple")
}

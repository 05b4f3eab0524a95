//! Random congruence systems small enough to brute-force.

use num_integer::Integer;
use rand::Rng;
use twistlab_core::abelian::{CongruenceSystem, IntMatrix};

const MODULI: [i64; 7] = [2, 3, 4, 5, 6, 8, 9];

/// A system with 1 to 4 rows and 1 to 5 variables whose search space is at
/// most `10⁶`. Each coefficient is a multiple of `m_i / gcd(m_i, n_j)`, so
/// every row is well defined on the variable ranges.
pub fn random_system<R: Rng>(rng: &mut R) -> CongruenceSystem {
    let rows = rng.random_range(1..=4);
    let vars = rng.random_range(1..=5);
    let mut var_moduli: Vec<i64> = Vec::with_capacity(vars);
    let mut space: i64 = 1;
    for _ in 0..vars {
        let options: Vec<i64> = MODULI.iter().copied().filter(|&n| space * n <= 1_000_000).collect();
        let n = options[rng.random_range(0..options.len())];
        space *= n;
        var_moduli.push(n);
    }
    let row_moduli: Vec<i64> = (0..rows).map(|_| MODULI[rng.random_range(0..MODULI.len())]).collect();
    let matrix = IntMatrix::from_fn(rows, vars, |i, j| {
        let step = row_moduli[i] / row_moduli[i].gcd(&var_moduli[j]);
        step * rng.random_range(-4..5)
    });
    // Half the targets are images of a random point, so both outcomes occur.
    let target = if rng.random_bool(0.5) {
        let x: Vec<i64> = var_moduli.iter().map(|&n| rng.random_range(0..n)).collect();
        (0..rows)
            .map(|i| (0..vars).map(|j| matrix[(i, j)] * x[j]).sum::<i64>().rem_euclid(row_moduli[i]))
            .collect()
    } else {
        row_moduli.iter().map(|&m| rng.random_range(0..m)).collect()
    };
    CongruenceSystem { matrix, target, row_moduli, var_moduli }
}

pub fn search_space(system: &CongruenceSystem) -> i64 {
    system.var_moduli.iter().product()
}

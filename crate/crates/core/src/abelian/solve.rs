//! Linear congruence systems `M x ≡ t` with per-row moduli.
//!
//! Row `i` is read modulo `row_moduli[i]` (0 meaning an equation over ℤ);
//! variable `j` lives in ℤ/`var_moduli[j]` (0 meaning unbounded). Every
//! coboundary question in the crate is phrased as one of these and decided
//! through a single Smith normal form of `[M | diag(row_moduli)]`.

use super::snf::{int_mul_vec, smith_normal_form, IntMatrix, SmithForm};
use crate::error::AbelianError;

#[derive(Clone, Debug)]
pub struct CongruenceSystem {
    pub matrix: IntMatrix,
    pub target: Vec<i64>,
    pub row_moduli: Vec<i64>,
    pub var_moduli: Vec<i64>,
}

impl CongruenceSystem {
    /// Does `x` satisfy every row?
    pub fn is_solution(&self, x: &[i64]) -> bool {
        satisfies(&self.matrix, &self.row_moduli, &self.target, x)
    }
}

fn satisfies(matrix: &IntMatrix, row_moduli: &[i64], target: &[i64], x: &[i64]) -> bool {
    if x.len() != matrix.ncols() || target.len() != matrix.nrows() {
        return false;
    }
    int_mul_vec(matrix, x)
        .into_iter()
        .zip(target)
        .zip(row_moduli)
        .all(|((lhs, &t), &m)| {
            let diff = lhs - t as i128;
            if m == 0 {
                diff == 0
            } else {
                diff.rem_euclid(m as i128) == 0
            }
        })
}

/// A system whose matrix has been factored once, ready for many targets.
#[derive(Clone, Debug)]
pub struct PreparedSystem {
    matrix: IntMatrix,
    row_moduli: Vec<i64>,
    var_moduli: Vec<i64>,
    snf: SmithForm,
}

impl PreparedSystem {
    pub fn new(
        matrix: IntMatrix,
        row_moduli: Vec<i64>,
        var_moduli: Vec<i64>,
    ) -> Result<Self, AbelianError> {
        let (rows, cols) = matrix.shape();
        if row_moduli.len() != rows || var_moduli.len() != cols {
            return Err(AbelianError::DimensionMismatch(format!(
                "system is {rows}x{cols} but has {} row moduli and {} variable moduli",
                row_moduli.len(),
                var_moduli.len()
            )));
        }
        if row_moduli.iter().chain(&var_moduli).any(|&m| m < 0) {
            return Err(AbelianError::InvalidOrder(-1));
        }
        // Each variable must be well defined modulo its own modulus.
        for j in 0..cols {
            let n = var_moduli[j];
            for i in 0..rows {
                let m = row_moduli[i];
                let c = matrix[(i, j)];
                let ok = match (n, m) {
                    (0, _) => true,
                    (_, 0) => c == 0,
                    _ => (c as i128 * n as i128).rem_euclid(m as i128) == 0,
                };
                if !ok {
                    return Err(AbelianError::IncompatibleModuli { row: i, column: j });
                }
            }
        }
        let mut full = IntMatrix::zeros(rows, cols + rows);
        full.view_mut((0, 0), (rows, cols)).copy_from(&matrix);
        for i in 0..rows {
            full[(i, cols + i)] = row_moduli[i];
        }
        let snf = smith_normal_form(&full);
        Ok(Self {
            matrix,
            row_moduli,
            var_moduli,
            snf,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn num_rows(&self) -> usize {
        self.matrix.nrows()
    }

    /// Some solution of `M x ≡ target`, reduced into the variable ranges,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, target: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(target.len(), self.num_rows(), "target length mismatch");
        let cols = self.num_vars();
        let ut = int_mul_vec(&self.snf.u, target);
        let total = self.snf.v.ncols();
        let mut z = vec![0i64; total];
        for (k, &value) in ut.iter().enumerate() {
            let s = if k < self.snf.rank {
                self.snf.s[(k, k)] as i128
            } else {
                0
            };
            if s == 0 {
                if value != 0 {
                    return None;
                }
            } else {
                if value % s != 0 {
                    return None;
                }
                z[k] = i64::try_from(value / s).expect("solution coordinate overflow");
            }
        }
        let full = int_mul_vec(&self.snf.v, &z);
        let x: Vec<i64> = (0..cols)
            .map(|j| {
                let n = self.var_moduli[j] as i128;
                let v = if n == 0 { full[j] } else { full[j].rem_euclid(n) };
                i64::try_from(v).expect("solution coordinate overflow")
            })
            .collect();
        assert!(
            satisfies(&self.matrix, &self.row_moduli, target, &x),
            "congruence solution failed substitution check"
        );
        Some(x)
    }

    /// Generators of the solution set of the homogeneous system, reduced
    /// into the variable ranges. Together with the multiples of each
    /// variable modulus they span every homogeneous solution.
    pub fn kernel_generators(&self) -> Vec<Vec<i64>> {
        let cols = self.num_vars();
        let total = self.snf.v.ncols();
        let mut out = Vec::new();
        for k in self.snf.rank..total {
            let g: Vec<i64> = (0..cols)
                .map(|j| {
                    let n = self.var_moduli[j];
                    let v = self.snf.v[(j, k)];
                    if n == 0 {
                        v
                    } else {
                        v.rem_euclid(n)
                    }
                })
                .collect();
            if g.iter().any(|&v| v != 0) {
                out.push(g);
            }
        }
        out
    }
}

/// One-shot solve; `None` means the system has no solution.
pub fn solve_coboundary(system: &CongruenceSystem) -> Result<Option<Vec<i64>>, AbelianError> {
    let prepared = PreparedSystem::new(
        system.matrix.clone(),
        system.row_moduli.clone(),
        system.var_moduli.clone(),
    )?;
    Ok(prepared.solve(&system.target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(a: i64, t: i64, m: i64) -> CongruenceSystem {
        CongruenceSystem {
            matrix: IntMatrix::from_row_slice(1, 1, &[a]),
            target: vec![t],
            row_moduli: vec![m],
            var_moduli: vec![m],
        }
    }

    #[test]
    fn two_x_zero_mod_four() {
        let x = solve_coboundary(&single(2, 0, 4)).unwrap().unwrap();
        assert!(x == vec![0] || x == vec![2]);
    }

    #[test]
    fn two_x_one_mod_four_unsolvable() {
        assert_eq!(solve_coboundary(&single(2, 1, 4)).unwrap(), None);
    }

    #[test]
    fn integer_rows() {
        // x - y = 3, y - z = -1 over ℤ
        let sys = CongruenceSystem {
            matrix: IntMatrix::from_row_slice(2, 3, &[1, -1, 0, 0, 1, -1]),
            target: vec![3, -1],
            row_moduli: vec![0, 0],
            var_moduli: vec![0, 0, 0],
        };
        let x = solve_coboundary(&sys).unwrap().unwrap();
        assert!(sys.is_solution(&x));
        let sys = CongruenceSystem {
            matrix: IntMatrix::from_row_slice(1, 1, &[2]),
            target: vec![3],
            row_moduli: vec![0],
            var_moduli: vec![0],
        };
        assert_eq!(solve_coboundary(&sys).unwrap(), None);
    }

    #[test]
    fn incompatible_moduli_rejected() {
        // x in ℤ/3 cannot be read mod 2.
        let sys = CongruenceSystem {
            matrix: IntMatrix::from_row_slice(1, 1, &[1]),
            target: vec![0],
            row_moduli: vec![2],
            var_moduli: vec![3],
        };
        assert!(matches!(
            solve_coboundary(&sys),
            Err(AbelianError::IncompatibleModuli { .. })
        ));
    }

    #[test]
    fn kernel_generators_span_kernel() {
        // x + y ≡ 0 mod 4 over (ℤ/4)^2: kernel has 4 elements.
        let p = PreparedSystem::new(IntMatrix::from_row_slice(1, 2, &[1, 1]), vec![4], vec![4, 4])
            .unwrap();
        let gens = p.kernel_generators();
        let mut span = std::collections::BTreeSet::new();
        span.insert(vec![0, 0]);
        loop {
            let before = span.len();
            let current: Vec<_> = span.iter().cloned().collect();
            for v in &current {
                for g in &gens {
                    span.insert(vec![(v[0] + g[0]) % 4, (v[1] + g[1]) % 4]);
                }
            }
            if span.len() == before {
                break;
            }
        }
        assert_eq!(span.len(), 4);
        assert!(span.iter().all(|v| (v[0] + v[1]) % 4 == 0));
    }
}

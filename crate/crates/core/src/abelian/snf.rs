//! Smith normal form over the integers.
//!
//! For an integer matrix `M` we compute unimodular `U`, `V` (and their
//! inverses) with `U * M * V = S`, where `S` is diagonal, non-negative and
//! satisfies the divisibility chain `s_1 | s_2 | ... | s_r`. All arithmetic is
//! exact. Elimination runs in `i128`; results that do not fit `i64` panic,
//! which signals an input far outside the sizes this crate is meant for.

use nalgebra::DMatrix;

pub type IntMatrix = DMatrix<i64>;

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries of `S`, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<i64> {
        let k = self.s.nrows().min(self.s.ncols());
        (0..k).map(|i| self.s[(i, i)]).collect()
    }

    /// The nonzero invariant factors `s_1 | ... | s_rank`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.s[(i, i)]).collect()
    }
}

type Wide = DMatrix<i128>;

#[inline]
fn mul_add(acc: i128, c: i128, x: i128) -> i128 {
    c.checked_mul(x)
        .and_then(|p| acc.checked_add(p))
        .expect("integer overflow in Smith normal form")
}

/// Quotient of `x` by `p` rounded to nearest, so the remainder is at most
/// `|p|/2` in size; this keeps the transforms noticeably smaller than
/// truncating division does.
fn nearest_quotient(x: i128, p: i128) -> i128 {
    let r = x.rem_euclid(p);
    let q = (x - r) / p;
    if 2 * r > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

fn narrow(m: &Wide) -> IntMatrix {
    m.map(|x| i64::try_from(x).expect("Smith normal form entry exceeds i64"))
}

struct Work {
    a: Wide,
    u: Wide,
    u_inv: Wide,
    v: Wide,
    v_inv: Wide,
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
        self.u_inv.swap_columns(i, k);
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        self.a.swap_columns(j, l);
        self.v.swap_columns(j, l);
        self.v_inv.swap_rows(j, l);
    }

    /// row_i += c * row_k
    fn add_row(&mut self, i: usize, k: usize, c: i128) {
        if c == 0 {
            return;
        }
        for j in 0..self.a.ncols() {
            self.a[(i, j)] = mul_add(self.a[(i, j)], c, self.a[(k, j)]);
        }
        for j in 0..self.u.ncols() {
            self.u[(i, j)] = mul_add(self.u[(i, j)], c, self.u[(k, j)]);
        }
        for r in 0..self.u_inv.nrows() {
            self.u_inv[(r, k)] = mul_add(self.u_inv[(r, k)], -c, self.u_inv[(r, i)]);
        }
    }

    /// col_j += c * col_l
    fn add_col(&mut self, j: usize, l: usize, c: i128) {
        if c == 0 {
            return;
        }
        for r in 0..self.a.nrows() {
            self.a[(r, j)] = mul_add(self.a[(r, j)], c, self.a[(r, l)]);
        }
        for r in 0..self.v.nrows() {
            self.v[(r, j)] = mul_add(self.v[(r, j)], c, self.v[(r, l)]);
        }
        for col in 0..self.v_inv.ncols() {
            self.v_inv[(l, col)] = mul_add(self.v_inv[(l, col)], -c, self.v_inv[(j, col)]);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.ncols() {
            self.a[(i, j)] = -self.a[(i, j)];
        }
        for j in 0..self.u.ncols() {
            self.u[(i, j)] = -self.u[(i, j)];
        }
        for r in 0..self.u_inv.nrows() {
            self.u_inv[(r, i)] = -self.u_inv[(r, i)];
        }
    }

    /// Pivot for step `t`: smallest absolute value, ties broken by the
    /// Markowitz count to limit fill-in (and with it, entry growth).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (rows, cols) = self.a.shape();
        let mut row_nnz = vec![0usize; rows];
        let mut col_nnz = vec![0usize; cols];
        for j in t..cols {
            for i in t..rows {
                if self.a[(i, j)] != 0 {
                    row_nnz[i] += 1;
                    col_nnz[j] += 1;
                }
            }
        }
        let mut best: Option<(usize, usize, i128, usize)> = None;
        for j in t..cols {
            for i in t..rows {
                let x = self.a[(i, j)].abs();
                if x == 0 {
                    continue;
                }
                let cost = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                if best.is_none_or(|(_, _, b, c)| x < b || (x == b && cost < c)) {
                    best = Some((i, j, x, cost));
                }
            }
        }
        best.map(|(i, j, _, _)| (i, j))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut w = Work {
        a: m.map(i128::from),
        u: Wide::identity(rows, rows),
        u_inv: Wide::identity(rows, rows),
        v: Wide::identity(cols, cols),
        v_inv: Wide::identity(cols, cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = nearest_quotient(w.a[(i, t)], p);
                w.add_row(i, t, -q);
                clean &= w.a[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = nearest_quotient(w.a[(t, j)], p);
                w.add_col(j, t, -q);
                clean &= w.a[(t, j)] == 0;
            }
            if !clean {
                // A remainder smaller than the pivot survived; move it in.
                let (bi, bj) = smallest_in_cross(&w.a, t);
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| w.a[(i, j)] % p != 0);
            match offender {
                Some((i, _)) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[(t, t)] < 0 {
            w.negate_row(t);
        }
        rank += 1;
    }
    SmithForm {
        u: narrow(&w.u),
        u_inv: narrow(&w.u_inv),
        s: narrow(&w.a),
        v: narrow(&w.v),
        v_inv: narrow(&w.v_inv),
        rank,
    }
}

/// Smallest nonzero entry in row `t` or column `t` (pivot included).
fn smallest_in_cross(a: &Wide, t: usize) -> (usize, usize) {
    let mut best = (t, t, a[(t, t)].abs());
    for i in t + 1..a.nrows() {
        let x = a[(i, t)].abs();
        if x != 0 && x < best.2 {
            best = (i, t, x);
        }
    }
    for j in t + 1..a.ncols() {
        let x = a[(t, j)].abs();
        if x != 0 && x < best.2 {
            best = (t, j, x);
        }
    }
    (best.0, best.1)
}

/// Integer matrix product, accumulated in `i128`; panics if an entry of the
/// result does not fit `i64`.
pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.ncols(), b.nrows(), "dimension mismatch in integer product");
    let mut out = Wide::zeros(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let x = a[(i, k)] as i128;
            if x == 0 {
                continue;
            }
            for j in 0..b.ncols() {
                out[(i, j)] = mul_add(out[(i, j)], x, b[(k, j)] as i128);
            }
        }
    }
    narrow(&out)
}

/// Matrix-vector product accumulated in `i128`.
pub fn int_mul_vec(a: &IntMatrix, x: &[i64]) -> Vec<i128> {
    assert_eq!(a.ncols(), x.len(), "dimension mismatch in integer product");
    (0..a.nrows())
        .map(|i| {
            (0..a.ncols())
                .map(|j| a[(i, j)] as i128 * x[j] as i128)
                .sum()
        })
        .collect()
}

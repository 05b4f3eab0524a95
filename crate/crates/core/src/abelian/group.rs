use serde::{Deserialize, Serialize};

use super::snf::{int_mul, smith_normal_form, IntMatrix};
use crate::error::AbelianError;
use crate::report::{Rule, ValidationReport};

/// A finite abelian group `ℤ/d_1 ⊕ … ⊕ ℤ/d_k`.
///
/// [`FinAbGroup::new`] insists on invariant-factor form; the cyclic factors
/// of a group built with [`FinAbGroup::from_cyclic_orders`] need not divide
/// each other. Factors of order 1 are always dropped. Elements are vectors
/// with `0 <= x_i < d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    orders: Vec<i64>,
}

impl FinAbGroup {
    pub fn new(invariant_factors: Vec<i64>) -> Result<Self, AbelianError> {
        let g = Self::from_cyclic_orders(invariant_factors)?;
        if g.orders.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(AbelianError::NotAChain(g.orders));
        }
        Ok(g)
    }

    pub fn from_cyclic_orders(orders: Vec<i64>) -> Result<Self, AbelianError> {
        if let Some(&bad) = orders.iter().find(|&&d| d < 1) {
            return Err(AbelianError::InvalidOrder(bad));
        }
        Ok(Self {
            orders: orders.into_iter().filter(|&d| d > 1).collect(),
        })
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_cyclic_orders(vec![n]).expect("cyclic order must be positive")
    }

    pub fn trivial() -> Self {
        Self { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    /// Number of elements, for groups small enough to enumerate.
    pub fn size(&self) -> usize {
        usize::try_from(self.order()).expect("group too large to enumerate")
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Canonical invariant factors, whatever decomposition was supplied.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let k = self.rank();
        let d = IntMatrix::from_fn(k, k, |i, j| if i == j { self.orders[i] } else { 0 });
        smith_normal_form(&d)
            .invariant_factors()
            .into_iter()
            .filter(|&x| x > 1)
            .collect()
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FinAbGroup { orders }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn normalize(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rank(), "element has wrong length");
        x.iter()
            .zip(&self.orders)
            .map(|(&v, &d)| v.rem_euclid(d))
            .collect()
    }

    pub fn is_normal(&self, x: &[i64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.orders).all(|(&v, &d)| 0 <= v && v < d)
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &d)| (a + b).rem_euclid(d))
            .collect()
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &d)| (a - b).rem_euclid(d))
            .collect()
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| (-a).rem_euclid(d))
            .collect()
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| ((k as i128 * a as i128).rem_euclid(d as i128)) as i64)
            .collect()
    }

    /// Element with mixed-radix index `idx` (first coordinate fastest).
    pub fn element(&self, mut idx: usize) -> Vec<i64> {
        self.orders
            .iter()
            .map(|&d| {
                let v = (idx % d as usize) as i64;
                idx /= d as usize;
                v
            })
            .collect()
    }

    pub fn index_of(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (&v, &d) in x.iter().zip(&self.orders).rev() {
            idx = idx * d as usize + v.rem_euclid(d) as usize;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }

    pub fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|k| {
                let mut e = self.zero();
                e[k] = 1;
                e
            })
            .collect()
    }
}

/// A homomorphism between finite abelian groups, given by an integer matrix
/// acting on coordinate vectors (codomain rank × domain rank).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(
        domain: FinAbGroup,
        codomain: FinAbGroup,
        matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.shape() != (codomain.rank(), domain.rank()) {
            return Err(AbelianError::DimensionMismatch(format!(
                "matrix is {:?}, expected {}x{}",
                matrix.shape(),
                codomain.rank(),
                domain.rank()
            )));
        }
        for (j, &d) in domain.orders().iter().enumerate() {
            for (i, &e) in codomain.orders().iter().enumerate() {
                if (matrix[(i, j)] as i128 * d as i128).rem_euclid(e as i128) != 0 {
                    return Err(AbelianError::IllDefinedHom { column: j });
                }
            }
        }
        let mut matrix = matrix;
        for (i, &e) in codomain.orders().iter().enumerate() {
            for j in 0..matrix.ncols() {
                matrix[(i, j)] = matrix[(i, j)].rem_euclid(e);
            }
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    /// Build from rows given as nested vectors (the JSON layout).
    pub fn from_rows(
        domain: FinAbGroup,
        codomain: FinAbGroup,
        rows: &[Vec<i64>],
    ) -> Result<Self, AbelianError> {
        let r = codomain.rank();
        let c = domain.rank();
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(AbelianError::DimensionMismatch(format!(
                "expected a {r}x{c} matrix"
            )));
        }
        let m = IntMatrix::from_fn(r, c, |i, j| rows[i][j]);
        Self::new(domain, codomain, m)
    }

    pub fn zero(domain: FinAbGroup, codomain: FinAbGroup) -> Self {
        let m = IntMatrix::zeros(codomain.rank(), domain.rank());
        Self {
            domain,
            codomain,
            matrix: m,
        }
    }

    pub fn identity(group: FinAbGroup) -> Self {
        let k = group.rank();
        Self {
            domain: group.clone(),
            codomain: group,
            matrix: IntMatrix::identity(k, k),
        }
    }

    /// Multiplication by `k` on a cyclic group into another cyclic group.
    pub fn cyclic(from: i64, to: i64, k: i64) -> Result<Self, AbelianError> {
        let d = FinAbGroup::cyclic(from);
        let c = FinAbGroup::cyclic(to);
        let m = IntMatrix::from_element(c.rank(), d.rank(), k);
        Self::new(d, c, m)
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.matrix.nrows())
            .map(|i| (0..self.matrix.ncols()).map(|j| self.matrix[(i, j)]).collect())
            .collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.domain.rank(), "element has wrong length");
        (0..self.codomain.rank())
            .map(|i| {
                let e = self.codomain.orders()[i] as i128;
                let s: i128 = (0..x.len())
                    .map(|j| self.matrix[(i, j)] as i128 * x[j] as i128)
                    .sum();
                s.rem_euclid(e) as i64
            })
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, AbelianError> {
        if other.domain != self.codomain {
            return Err(AbelianError::DimensionMismatch(
                "composition of incompatible homomorphisms".into(),
            ));
        }
        GroupHom::new(
            self.domain.clone(),
            other.codomain.clone(),
            int_mul(&other.matrix, &self.matrix),
        )
    }

    pub fn negate(&self) -> GroupHom {
        GroupHom::new(self.domain.clone(), self.codomain.clone(), -self.matrix.clone())
            .expect("negation preserves well-definedness")
    }

    pub fn is_injective(&self) -> bool {
        self.domain
            .elements()
            .all(|x| x.iter().all(|&v| v == 0) || self.apply(&x).iter().any(|&v| v != 0))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size()];
        for x in self.domain.elements() {
            hit[self.codomain.index_of(&self.apply(&x))] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// `0 → A →i B →p C → 0`, exactness certified separately by [`ShortExactSeq::check_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSeq {
    pub a: FinAbGroup,
    pub b: FinAbGroup,
    pub c: FinAbGroup,
    pub i: GroupHom,
    pub p: GroupHom,
}

impl ShortExactSeq {
    pub fn new(i: GroupHom, p: GroupHom) -> Result<Self, AbelianError> {
        if i.codomain() != p.domain() {
            return Err(AbelianError::DimensionMismatch(
                "codomain of i differs from domain of p".into(),
            ));
        }
        Ok(Self {
            a: i.domain().clone(),
            b: i.codomain().clone(),
            c: p.codomain().clone(),
            i,
            p,
        })
    }

    /// `0 → ℤ/m →(×n) ℤ/mn →(mod n) ℤ/n → 0`.
    pub fn cyclic(m: i64, n: i64) -> Self {
        let i = GroupHom::cyclic(m, m * n, n).expect("multiplication by n is well defined");
        let p = GroupHom::cyclic(m * n, n, 1).expect("reduction mod n is well defined");
        Self::new(i, p).expect("cyclic sequence shapes agree")
    }

    /// `0 → ⟨gens⟩ → B → B/⟨gens⟩ → 0` with both ends in computed presentations.
    pub fn from_subgroup(b: &FinAbGroup, gens: &[Vec<i64>]) -> Self {
        let i = subgroup(b, gens);
        let p = quotient(b, gens);
        Self::new(i, p).expect("subgroup and quotient share the ambient group")
    }

    pub fn check_exact(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let zero_a = self.a.zero();
        for x in self.a.elements() {
            if x != zero_a && self.i.apply(&x).iter().all(|&v| v == 0) {
                report.push(
                    Rule::Injectivity,
                    vec![self.a.index_of(&x)],
                    format!("i({x:?}) = 0"),
                );
                break;
            }
        }
        let mut hit = vec![false; self.c.size()];
        let mut in_image = vec![false; self.b.size()];
        for x in self.a.elements() {
            in_image[self.b.index_of(&self.i.apply(&x))] = true;
        }
        for (k, y) in self.b.elements().enumerate() {
            let py = self.p.apply(&y);
            hit[self.c.index_of(&py)] = true;
            let in_kernel = py.iter().all(|&v| v == 0);
            if in_kernel != in_image[k] {
                report.push(
                    Rule::ImageEqualsKernel,
                    vec![k],
                    if in_kernel {
                        format!("{y:?} lies in ker p but not in im i")
                    } else {
                        format!("{y:?} lies in im i but not in ker p")
                    },
                );
            }
        }
        if let Some(miss) = hit.iter().position(|h| !h) {
            report.push(
                Rule::Surjectivity,
                vec![miss],
                format!("{:?} is not hit by p", self.c.element(miss)),
            );
        }
        report
    }
}

/// The subgroup generated by `gens`, as an injection from a group in
/// computed presentation.
pub fn subgroup(g: &FinAbGroup, gens: &[Vec<i64>]) -> GroupHom {
    let n = g.rank();
    let k = gens.len();
    if k == 0 || n == 0 {
        return GroupHom::zero(FinAbGroup::trivial(), g.clone());
    }
    // Relations among the generators: kernel of ℤ^k ⊕ ℤ^n → ℤ^n, [K | D].
    let mut a = IntMatrix::zeros(n, k + n);
    for (c, v) in gens.iter().enumerate() {
        for r in 0..n {
            a[(r, c)] = v[r];
        }
    }
    for r in 0..n {
        a[(r, k + r)] = g.orders()[r];
    }
    let f = smith_normal_form(&a);
    let rel_cols: Vec<usize> = (f.rank..k + n).collect();
    let rel = IntMatrix::from_fn(k, rel_cols.len(), |r, c| f.v[(r, rel_cols[c])]);
    let h = smith_normal_form(&rel);
    debug_assert_eq!(h.rank, k, "a subgroup of a finite group is finite");
    let mut orders = Vec::new();
    let mut columns = Vec::new();
    for t in 0..k {
        let s = h.s[(t, t)];
        if s > 1 {
            orders.push(s);
            // generator t corresponds to U⁻¹ e_t in generator coordinates
            let image: Vec<i64> = (0..n)
                .map(|r| {
                    let v: i128 = (0..k)
                        .map(|c| gens[c][r] as i128 * h.u_inv[(c, t)] as i128)
                        .sum();
                    v.rem_euclid(g.orders()[r] as i128) as i64
                })
                .collect();
            columns.push(image);
        }
    }
    let domain = FinAbGroup::from_cyclic_orders(orders).expect("positive orders");
    let m = IntMatrix::from_fn(n, columns.len(), |r, c| columns[c][r]);
    GroupHom::new(domain, g.clone(), m).expect("subgroup inclusion is well defined")
}

/// The projection of `g` onto `g/⟨gens⟩`, the quotient in computed presentation.
pub fn quotient(g: &FinAbGroup, gens: &[Vec<i64>]) -> GroupHom {
    let n = g.rank();
    let k = gens.len();
    let mut a = IntMatrix::zeros(n, k + n);
    for (c, v) in gens.iter().enumerate() {
        for r in 0..n {
            a[(r, c)] = v[r];
        }
    }
    for r in 0..n {
        a[(r, k + r)] = g.orders()[r];
    }
    let f = smith_normal_form(&a);
    let mut orders = Vec::new();
    let mut rows = Vec::new();
    for t in 0..n {
        let s = f.s[(t, t)];
        if s > 1 {
            orders.push(s);
            rows.push(t);
        }
    }
    let codomain = FinAbGroup::from_cyclic_orders(orders).expect("positive orders");
    let m = IntMatrix::from_fn(rows.len(), n, |r, c| f.u[(rows[r], c)]);
    GroupHom::new(g.clone(), codomain, m).expect("quotient map is well defined")
}

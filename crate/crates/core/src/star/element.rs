use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::groupoid::FiniteGroupoid;

pub type ComplexMatrix = DMatrix<Complex64>;

/// A complex function on the arrows of a finite groupoid, as an element of
/// its convolution algebra (counting measure on every range fiber).
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub groupoid: Arc<FiniteGroupoid>,
    pub coeffs: Vec<Complex64>,
}

fn same_groupoid(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn zero(groupoid: Arc<FiniteGroupoid>) -> Self {
        let n = groupoid.num_arrows();
        Self {
            groupoid,
            coeffs: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn delta(groupoid: Arc<FiniteGroupoid>, arrow: usize) -> Self {
        let mut e = Self::zero(groupoid);
        e.coeffs[arrow] = Complex64::new(1.0, 0.0);
        e
    }

    /// `Σ_u δ_u`, the identity of the algebra.
    pub fn unit(groupoid: Arc<FiniteGroupoid>) -> Self {
        let mut e = Self::zero(groupoid.clone());
        for u in groupoid.units() {
            e.coeffs[u] = Complex64::new(1.0, 0.0);
        }
        e
    }

    pub fn from_coeffs(groupoid: Arc<FiniteGroupoid>, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), groupoid.num_arrows(), "one coefficient per arrow");
        Self { groupoid, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_groupoid(&self.groupoid, &other.groupoid) {
            Ok(())
        } else {
            Err(AlgebraError::GroupoidMismatch)
        }
    }

    /// `(f * g)(γ) = Σ_{η ∈ Γ^{r(γ)}} f(η) g(η⁻¹γ)`.
    pub fn convolve(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let g = &self.groupoid;
        let mut out = Self::zero(g.clone());
        for a in g.arrows() {
            let fa = self.coeffs[a];
            if fa == Complex64::new(0.0, 0.0) {
                continue;
            }
            for b in g.source_fiber_iter(a) {
                let gb = other.coeffs[b];
                if gb == Complex64::new(0.0, 0.0) {
                    continue;
                }
                if let Some(c) = g.compose(a, b) {
                    out.coeffs[c] += fa * gb;
                }
            }
        }
        Ok(out)
    }

    /// `f*(γ) = conj(f(γ⁻¹))`.
    pub fn involution(&self) -> Self {
        let g = &self.groupoid;
        let coeffs = g
            .arrows()
            .map(|x| self.coeffs[g.inverse(x)].conj())
            .collect();
        Self {
            groupoid: g.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
        Ok(Self {
            groupoid: self.groupoid.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            groupoid: self.groupoid.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Largest coefficient-wise distance; the residual used by every
    /// identity check.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Operator norm in the left regular representation.
    pub fn norm(&self) -> f64 {
        operator_norm(&left_regular_matrix(self))
    }
}

impl FiniteGroupoid {
    /// Arrows `b` with `r(b) = s(a)`, i.e. those composable on the right of `a`.
    pub(crate) fn source_fiber_iter(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let u = self.source(a);
        self.arrows().filter(move |&b| self.range(b) == u)
    }
}

/// The matrix of `ξ ↦ f * ξ` on the arrow-indexed space:
/// `L(f)[γ][ζ] = f(γ ζ⁻¹)` when `s(γ) = s(ζ)`.
pub fn left_regular_matrix(f: &AlgebraElement) -> ComplexMatrix {
    let g = &f.groupoid;
    let n = g.num_arrows();
    let mut m = ComplexMatrix::zeros(n, n);
    for (a, b, c) in g.composition_triples() {
        m[(c, b)] += f.coeffs[a];
    }
    m
}

/// The left regular representation of a finite groupoid algebra.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub dimension: usize,
    /// `basis[g] = L(δ_g)`.
    pub basis: Vec<ComplexMatrix>,
}

pub fn left_regular_rep(g: &Arc<FiniteGroupoid>) -> MatrixRep {
    let basis = g
        .arrows()
        .map(|x| left_regular_matrix(&AlgebraElement::delta(g.clone(), x)))
        .collect();
    MatrixRep {
        dimension: g.num_arrows(),
        basis,
    }
}

impl MatrixRep {
    pub fn apply(&self, f: &AlgebraElement) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dimension, self.dimension);
        for (c, b) in f.coeffs.iter().zip(&self.basis) {
            if *c != Complex64::new(0.0, 0.0) {
                m += b * *c;
            }
        }
        m
    }
}

pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Numerical rank: singular values above `tol` times the largest one.
pub fn numerical_rank(m: &ComplexMatrix, tol: f64) -> (usize, f64) {
    if m.is_empty() {
        return (0, 0.0);
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    let cutoff = tol * top.max(1.0);
    let rank = sv.iter().filter(|&&s| s > cutoff).count();
    let smallest_kept = sv
        .iter()
        .copied()
        .filter(|&s| s > cutoff)
        .fold(f64::INFINITY, f64::min);
    (rank, smallest_kept)
}

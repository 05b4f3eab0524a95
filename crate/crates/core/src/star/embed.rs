//! Extension by zero from a wide subgroupoid, and the multiplier `j(a)`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::groupoid::{product_with_group, FiniteGroupoid};
use crate::star::element::{numerical_rank, AlgebraElement, ComplexMatrix};
use crate::star::CertificateReport;
use crate::twist::ObstructionTwist;

/// A subgroupoid `Σ ⊆ Γ` with the same units, given by where each arrow of
/// `Σ` lands.
#[derive(Clone, Debug)]
pub struct WideEmbedding {
    pub sub: Arc<FiniteGroupoid>,
    pub ambient: Arc<FiniteGroupoid>,
    pub arrow_map: Vec<usize>,
}

impl WideEmbedding {
    pub fn new(
        sub: Arc<FiniteGroupoid>,
        ambient: Arc<FiniteGroupoid>,
        arrow_map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        if arrow_map.len() != sub.num_arrows() {
            return Err(AlgebraError::ContextMismatch("one image per arrow required".into()));
        }
        if sub.num_units() != ambient.num_units() || sub.units().any(|u| arrow_map[u] != u) {
            return Err(AlgebraError::UnitSpaceMismatch(format!(
                "{} units inside {}; units must map identically",
                sub.num_units(),
                ambient.num_units()
            )));
        }
        let mut seen = vec![false; ambient.num_arrows()];
        for &x in &arrow_map {
            if x >= ambient.num_arrows() || std::mem::replace(&mut seen[x], true) {
                return Err(AlgebraError::ContextMismatch("arrow map is not injective".into()));
            }
        }
        for (a, b, c) in sub.composition_triples() {
            if ambient.compose(arrow_map[a], arrow_map[b]) != Some(arrow_map[c]) {
                return Err(AlgebraError::ContextMismatch(format!(
                    "arrow map is not a functor at ({a}, {b})"
                )));
            }
        }
        Ok(Self {
            sub,
            ambient,
            arrow_map,
        })
    }

    /// `Σ` inside itself.
    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        let arrow_map = g.arrows().collect();
        Self {
            sub: g.clone(),
            ambient: g,
            arrow_map,
        }
    }

    /// `Σ_φ ⊆ Γ × B`.
    pub fn obstruction_twist(twist: &ObstructionTwist) -> Result<Self, AlgebraError> {
        let product = product_with_group(&twist.twist.base, &twist.seq.b);
        let arrow_map = twist
            .labels
            .iter()
            .map(|l| product.index(l).expect("Σ_φ sits inside Γ × B"))
            .collect();
        Self::new(twist.twist.sigma.clone(), Arc::new(product.groupoid), arrow_map)
    }

    /// `i_Σ(a)`: extension by zero.
    pub fn extend(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if *a.groupoid != *self.sub {
            return Err(AlgebraError::GroupoidMismatch);
        }
        let mut out = AlgebraElement::zero(self.ambient.clone());
        for (s, c) in a.coeffs.iter().enumerate() {
            out.coeffs[self.arrow_map[s]] = *c;
        }
        Ok(out)
    }

    /// `j(a)` as a matrix acting on coefficient vectors over `Γ`:
    /// `j(a) f = i_Σ(a) * f`.
    pub fn multiplier_matrix(&self, a: &AlgebraElement) -> Result<ComplexMatrix, AlgebraError> {
        let ia = self.extend(a)?;
        let n = self.ambient.num_arrows();
        let mut m = ComplexMatrix::zeros(n, n);
        for (x, y, z) in self.ambient.composition_triples() {
            m[(z, y)] += ia.coeffs[x];
        }
        Ok(m)
    }
}

/// Multiplicativity and `*`-compatibility of `i_Σ` on basis pairs,
/// `j(a*) = j(a)†`, injectivity of `j` by rank, and agreement of left
/// regular norms on the basis and on `samples` random elements.
pub fn verify_embedding(
    emb: &WideEmbedding,
    tolerance: f64,
    samples: usize,
    seed: u64,
) -> Result<CertificateReport, AlgebraError> {
    let sub = emb.sub.clone();
    let n = sub.num_arrows();
    let delta = |s: usize| AlgebraElement::delta(sub.clone(), s);
    let mut report = CertificateReport::new(tolerance);

    let mut mult = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let lhs = emb.extend(&delta(s).convolve(&delta(t))?)?;
            let rhs = emb.extend(&delta(s))?.convolve(&emb.extend(&delta(t))?)?;
            mult.push((vec![s, t], lhs.max_diff(&rhs)));
        }
    }
    report.residuals("multiplicative", "all basis pairs", mult);

    let mut inv = Vec::with_capacity(n);
    let mut adj = Vec::with_capacity(n);
    for s in 0..n {
        let d = delta(s);
        inv.push((vec![s], emb.extend(&d.involution())?.max_diff(&emb.extend(&d)?.involution())));
        let lhs = emb.multiplier_matrix(&d.involution())?;
        let rhs = emb.multiplier_matrix(&d)?.adjoint();
        adj.push((vec![s], (lhs - rhs).iter().map(|c| c.norm()).fold(0.0, f64::max)));
    }
    report.residuals("involution", "all basis elements", inv);
    report.residuals("multiplier_adjoint", "j(a*) = j(a)^dagger on the basis", adj);

    // j is linear in a; stack vec(j(δ_s)) as columns.
    let m = emb.ambient.num_arrows();
    let mut stacked = ComplexMatrix::zeros(m * m, n);
    for s in 0..n {
        let j = emb.multiplier_matrix(&delta(s))?;
        for (k, c) in j.iter().enumerate() {
            stacked[(k, s)] = *c;
        }
    }
    let (rank, margin) = numerical_rank(&stacked, tolerance);
    report.flag(
        "multiplier_injective",
        rank == n,
        if rank == n { 0.0 } else { (n - rank) as f64 },
        format!("rank {rank} of {n}, smallest kept singular value {margin:.3e}"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elems: Vec<AlgebraElement> = (0..n).map(delta).collect();
    for _ in 0..samples {
        let coeffs = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        elems.push(AlgebraElement::from_coeffs(sub.clone(), coeffs));
    }
    let norms = elems
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let inner = a.norm();
            let outer = emb.extend(a)?.norm();
            Ok((vec![k], (inner - outer).abs() / inner.max(1.0)))
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    report.residuals(
        "norm_preserving",
        format!("relative, {n} basis elements and {samples} random elements"),
        norms,
    );
    Ok(report)
}

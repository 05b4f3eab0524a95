//! The induced algebra `{f: B̂ → C*(Γ) : f(x − h) = α_h(f(x)), h ∈ Ĉ}` and
//! the map `Ψ(f)(x) = ρ(γ_{−x} f)` from `C*(Σ_φ)` into it.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::abelian::{annihilator, dual_group, dual_hom, pairing, Annihilator, FinAbGroup};
use crate::error::AlgebraError;
use crate::groupoid::FiniteGroupoid;
use crate::star::actions::{
    alpha_action, gamma_dual_action, phase, rho, section_lift, unitary_multiplier, FiberWeight,
};
use crate::star::element::{numerical_rank, AlgebraElement, ComplexMatrix};
use crate::star::CertificateReport;
use crate::twist::ObstructionTwist;

/// An obstruction twist together with the dual data the induced algebra
/// needs: `Ĉ ⊆ B̂`, a transversal of `B̂/Ĉ`, and for each `h ∈ Ĉ` the
/// character of `C` it comes from.
#[derive(Clone, Debug)]
pub struct ObstructionContext {
    pub twist: ObstructionTwist,
    pub annihilator: Annihilator,
    pub dual_b: FinAbGroup,
    c_character: HashMap<usize, Vec<i64>>,
}

impl ObstructionContext {
    pub fn new(twist: ObstructionTwist) -> Self {
        let seq = &twist.seq;
        let dual_b = dual_group(&seq.b);
        let p_dual = dual_hom(&seq.p);
        let c_character = dual_group(&seq.c)
            .elements()
            .map(|t| (dual_b.index_of(&p_dual.apply(&t)), t))
            .collect();
        Self {
            annihilator: annihilator(seq),
            dual_b,
            c_character,
            twist,
        }
    }

    pub fn base(&self) -> &Arc<FiniteGroupoid> {
        &self.twist.twist.base
    }

    pub fn sigma(&self) -> &Arc<FiniteGroupoid> {
        &self.twist.twist.sigma
    }

    /// `α_h` for `h ∈ Ĉ` given as an element of `B̂`.
    pub fn alpha(&self, h: &[i64], f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let t = self
            .c_character
            .get(&self.dual_b.index_of(h))
            .ok_or_else(|| AlgebraError::ContextMismatch(format!("{h:?} does not annihilate i(A)")))?;
        alpha_action(&self.twist.phi, t, f)
    }

    pub fn gamma(&self, t: &[i64], f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        gamma_dual_action(&self.twist, t, f)
    }

    pub fn rho(&self, f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        rho(&self.twist.twist, f)
    }

    pub fn induced(&self) -> InducedAlgebra<'_> {
        InducedAlgebra { ctx: self }
    }
}

/// A function on `B̂` stored by its values on the transversal.
#[derive(Clone, Debug)]
pub struct InducedElement {
    pub values: Vec<AlgebraElement>,
}

#[derive(Clone, Copy, Debug)]
pub struct InducedAlgebra<'a> {
    ctx: &'a ObstructionContext,
}

impl InducedAlgebra<'_> {
    /// One copy of `C*(Γ)` per coset of `Ĉ`.
    pub fn dimension(&self) -> usize {
        self.ctx.annihilator.transversal.len() * self.ctx.base().num_arrows()
    }

    pub fn zero(&self) -> InducedElement {
        InducedElement {
            values: vec![AlgebraElement::zero(self.ctx.base().clone()); self.ctx.annihilator.transversal.len()],
        }
    }

    pub fn unit(&self) -> InducedElement {
        InducedElement {
            values: vec![AlgebraElement::unit(self.ctx.base().clone()); self.ctx.annihilator.transversal.len()],
        }
    }

    /// `f(r + h) = α_{−h}(f(r))`.
    pub fn eval(&self, f: &InducedElement, x: &[i64]) -> Result<AlgebraElement, AlgebraError> {
        let b = &self.ctx.dual_b;
        let (slot, h) = &self.ctx.annihilator.decomposition[b.index_of(x)];
        self.ctx.alpha(&b.neg(h), &f.values[*slot])
    }

    pub fn multiply(&self, f: &InducedElement, g: &InducedElement) -> Result<InducedElement, AlgebraError> {
        let values = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(x, y)| x.convolve(y))
            .collect::<Result<_, _>>()?;
        Ok(InducedElement { values })
    }

    pub fn involution(&self, f: &InducedElement) -> InducedElement {
        InducedElement {
            values: f.values.iter().map(AlgebraElement::involution).collect(),
        }
    }

    /// `β_g(f)(x) = f(x − g)`.
    pub fn beta(&self, g: &[i64], f: &InducedElement) -> Result<InducedElement, AlgebraError> {
        let b = &self.ctx.dual_b;
        let values = self
            .ctx
            .annihilator
            .transversal
            .iter()
            .map(|r| self.eval(f, &b.sub(r, g)))
            .collect::<Result<_, _>>()?;
        Ok(InducedElement { values })
    }

    /// `π(f) = f(0)`; slot 0 of the transversal is `0`.
    pub fn pi(&self, f: &InducedElement) -> AlgebraElement {
        f.values[0].clone()
    }

    /// Pointwise multiplication by a function `k` on `B̂/Ĉ`, given per slot.
    pub fn multiply_scalar(&self, k: &[Complex64], f: &InducedElement) -> InducedElement {
        InducedElement {
            values: f.values.iter().zip(k).map(|(v, &c)| v.scale(c)).collect(),
        }
    }

    pub fn norm(&self, f: &InducedElement) -> f64 {
        f.values.iter().map(AlgebraElement::norm).fold(0.0, f64::max)
    }

    /// `Ψ(f)(r) = ρ(γ_{−r} f)` on each transversal point.
    pub fn psi(&self, f: &AlgebraElement) -> Result<InducedElement, AlgebraError> {
        let b = &self.ctx.dual_b;
        let values = self
            .ctx
            .annihilator
            .transversal
            .iter()
            .map(|r| self.psi_at(f, &b.neg(r)))
            .collect::<Result<_, _>>()?;
        Ok(InducedElement { values })
    }

    fn psi_at(&self, f: &AlgebraElement, minus_x: &[i64]) -> Result<AlgebraElement, AlgebraError> {
        self.ctx.rho(&self.ctx.gamma(minus_x, f)?)
    }

    pub fn max_diff(&self, f: &InducedElement, g: &InducedElement) -> f64 {
        f.values
            .iter()
            .zip(&g.values)
            .map(|(x, y)| x.max_diff(y))
            .fold(0.0, f64::max)
    }

    fn flatten(&self, f: &InducedElement) -> Vec<Complex64> {
        f.values.iter().flat_map(|v| v.coeffs.iter().copied()).collect()
    }
}

/// Checks, on every basis element (and basis pair where relevant), the four
/// hypotheses that characterize `C*(Σ_φ)` as an induced algebra and the
/// conclusion that `Ψ` is an equivariant `*`-isomorphism onto it.
pub fn verify_characterization(
    ctx: &ObstructionContext,
    tolerance: f64,
) -> Result<CertificateReport, AlgebraError> {
    let sigma = ctx.sigma().clone();
    let base = ctx.base().clone();
    let twist = &ctx.twist.twist;
    let ind = ctx.induced();
    let n_sigma = sigma.num_arrows();
    let delta = |s: usize| AlgebraElement::delta(sigma.clone(), s);
    let b_hat: Vec<Vec<i64>> = ctx.dual_b.elements().collect();
    let a_grp = &twist.fiber;
    let mut report = CertificateReport::new(tolerance);

    // ρ is a surjective *-homomorphism.
    let rho_basis: Vec<AlgebraElement> = (0..n_sigma).map(|s| ctx.rho(&delta(s))).collect::<Result<_, _>>()?;
    let pair_residuals = |op: &(dyn Fn(usize, usize) -> Result<f64, AlgebraError> + Sync)| {
        (0..n_sigma)
            .into_par_iter()
            .map(|s| {
                (0..n_sigma)
                    .map(|t| op(s, t).map(|r| (vec![s, t], r)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|v| v.into_iter().flatten().collect::<Vec<_>>())
    };
    let rho_mult = pair_residuals(&|s, t| {
        let lhs = ctx.rho(&delta(s).convolve(&delta(t))?)?;
        Ok(lhs.max_diff(&rho_basis[s].convolve(&rho_basis[t])?))
    })?;
    report.residuals("rho_multiplicative", "all basis pairs", rho_mult);
    let rho_inv = (0..n_sigma)
        .map(|s| Ok((vec![s], ctx.rho(&delta(s).involution())?.max_diff(&rho_basis[s].involution()))))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    report.residuals("rho_involution", "all basis elements", rho_inv);
    let lifts = base
        .arrows()
        .map(|g| {
            let d = AlgebraElement::delta(base.clone(), g);
            let mut worst: f64 = 0.0;
            for w in [FiberWeight::Uniform, FiberWeight::Transversal] {
                worst = worst.max(ctx.rho(&section_lift(twist, &d, w)?)?.max_diff(&d));
            }
            Ok((vec![g], worst))
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    report.residuals("rho_surjective", "rho of the section lift of each basis element", lifts);

    // (i) ρ(u_a f) = ρ(f).
    let mut cond = Vec::new();
    for a in 0..a_grp.size() {
        for s in 0..n_sigma {
            let moved = ctx.rho(&unitary_multiplier(twist, a, &delta(s))?)?;
            cond.push((vec![a, s], moved.max_diff(&rho_basis[s])));
        }
    }
    report.residuals("i_rho_u_invariant", "every a in A, every basis element", cond);

    // (ii) ρ(γ_h f) = α_h(ρ f) for h ∈ Ĉ.
    let mut cond = Vec::new();
    for h in &ctx.annihilator.members {
        let hi = ctx.dual_b.index_of(h);
        for s in 0..n_sigma {
            let lhs = ctx.rho(&ctx.gamma(h, &delta(s))?)?;
            let rhs = ctx.alpha(h, &rho_basis[s])?;
            cond.push((vec![hi, s], lhs.max_diff(&rhs)));
        }
    }
    report.residuals("ii_rho_equivariant", "every h in the annihilator, every basis element", cond);

    // (iii) the maps ρ∘γ_t, t ∈ B̂, have no common kernel.
    let n_base = base.num_arrows();
    let mut stacked = ComplexMatrix::zeros(b_hat.len() * n_base, n_sigma);
    for (ti, t) in b_hat.iter().enumerate() {
        for s in 0..n_sigma {
            let col = ctx.rho(&ctx.gamma(t, &delta(s))?)?;
            for (g, c) in col.coeffs.iter().enumerate() {
                stacked[(ti * n_base + g, s)] = *c;
            }
        }
    }
    let (rank, margin) = numerical_rank(&stacked, tolerance);
    report.flag(
        "iii_separating",
        rank == n_sigma,
        if rank == n_sigma { 0.0 } else { (n_sigma - rank) as f64 },
        format!("stacked rank {rank} of {n_sigma}, smallest kept singular value {margin:.3e}"),
    );

    // (iv) u_0 = 1.
    let zero_a = a_grp.index_of(&a_grp.zero());
    let cond = (0..n_sigma)
        .map(|s| Ok((vec![s], unitary_multiplier(twist, zero_a, &delta(s))?.max_diff(&delta(s)))))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    report.residuals("iv_u_zero_is_identity", "every basis element", cond);

    // Centrality of u_a and its group law.
    let mut cond = Vec::new();
    for a in 0..a_grp.size() {
        for s in 0..n_sigma {
            for t in 0..n_sigma {
                let prod = delta(s).convolve(&delta(t))?;
                let lhs = unitary_multiplier(twist, a, &prod)?;
                let left = delta(s).convolve(&unitary_multiplier(twist, a, &delta(t))?)?;
                let right = unitary_multiplier(twist, a, &delta(s))?.convolve(&delta(t))?;
                cond.push((vec![a, s, t], lhs.max_diff(&left).max(lhs.max_diff(&right))));
            }
        }
    }
    report.residuals("u_central", "u_a(fg) = f u_a(g) = u_a(f) g on basis pairs", cond);

    // Conclusion: Ψ.
    let dims_match = n_sigma == ind.dimension();
    report.flag(
        "dimension",
        dims_match,
        0.0,
        format!("dim C*(Sigma) = {n_sigma}, induced dimension = {}", ind.dimension()),
    );
    let psi_basis: Vec<_> = (0..n_sigma).map(|s| ind.psi(&delta(s))).collect::<Result<_, _>>()?;

    let mut cond = Vec::new();
    for s in 0..n_sigma {
        for (xi, x) in b_hat.iter().enumerate() {
            let direct = ind.psi_at(&delta(s), &ctx.dual_b.neg(x))?;
            cond.push((vec![s, xi], direct.max_diff(&ind.eval(&psi_basis[s], x)?)));
        }
    }
    report.residuals("psi_lands_in_induced", "Psi(f)(x) at every x agrees with the equivariant extension", cond);

    let mut matrix = ComplexMatrix::zeros(ind.dimension(), n_sigma);
    for (s, p) in psi_basis.iter().enumerate() {
        for (row, c) in ind.flatten(p).into_iter().enumerate() {
            matrix[(row, s)] = c;
        }
    }
    let (rank, margin) = numerical_rank(&matrix, tolerance);
    report.flag(
        "psi_bijective",
        dims_match && rank == n_sigma,
        if rank == n_sigma { 0.0 } else { (n_sigma - rank) as f64 },
        format!("rank {rank} of {n_sigma}, smallest kept singular value {margin:.3e}"),
    );

    let mult = pair_residuals(&|s, t| {
        let lhs = ind.psi(&delta(s).convolve(&delta(t))?)?;
        Ok(ind.max_diff(&lhs, &ind.multiply(&psi_basis[s], &psi_basis[t])?))
    })?;
    report.residuals("psi_multiplicative", "all basis pairs", mult);

    let cond = (0..n_sigma)
        .map(|s| Ok((vec![s], ind.max_diff(&ind.psi(&delta(s).involution())?, &ind.involution(&psi_basis[s])))))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    report.residuals("psi_involution", "all basis elements", cond);

    let mut cond = Vec::new();
    for (ti, t) in b_hat.iter().enumerate() {
        for s in 0..n_sigma {
            let lhs = ind.psi(&ctx.gamma(t, &delta(s))?)?;
            let rhs = ind.beta(t, &psi_basis[s])?;
            cond.push((vec![ti, s], ind.max_diff(&lhs, &rhs)));
        }
    }
    report.residuals("psi_equivariant", "Psi(gamma_t f) = beta_t(Psi f) for all t", cond);

    let cond = (0..n_sigma)
        .map(|s| (vec![s], ind.pi(&psi_basis[s]).max_diff(&rho_basis[s])))
        .collect::<Vec<_>>();
    report.residuals("pi_psi_is_rho", "evaluation at 0 after Psi", cond);

    // Module compatibility: Ψ(u_a f) = k_a Ψ(f) with k_a(x) = e(−⟨x, i(a)⟩).
    let seq = &ctx.twist.seq;
    let mut cond = Vec::new();
    for (ai, a) in a_grp.elements().enumerate() {
        let ia = seq.i.apply(&a);
        let k: Vec<Complex64> = ctx
            .annihilator
            .transversal
            .iter()
            .map(|r| phase(pairing(&seq.b, r, &ia).neg()))
            .collect();
        for s in 0..n_sigma {
            let lhs = ind.psi(&unitary_multiplier(twist, ai, &delta(s))?)?;
            let rhs = ind.multiply_scalar(&k, &psi_basis[s]);
            cond.push((vec![ai, s], ind.max_diff(&lhs, &rhs)));
        }
    }
    report.residuals("psi_module", "Psi(u_a f) = e(-<x, i(a)>) Psi(f)", cond);

    let unit_image = ind.psi(&AlgebraElement::unit(sigma.clone()))?;
    report.residuals(
        "psi_unital",
        "Psi(1) = 1",
        [(vec![], ind.max_diff(&unit_image, &ind.unit()))],
    );

    Ok(report)
}

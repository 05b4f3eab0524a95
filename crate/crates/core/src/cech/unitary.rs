//! The gauge action `α_n f(x, i, j) = e(n λ_ij(x)) f(x, i, j)` is inner on
//! each ideal `J_i` (arrows over `U_i`), implemented by the diagonal unitary
//! `w_i(x, j, j) = e(λ_ji(x))`.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::abelian::{Circle, QmodZ};
use crate::cech::cochain::Cochain;
use crate::cech::cohomology::{CohomologyClass, NerveCohomology};
use crate::cech::cover::CoverGroupoid;
use crate::cech::obstruct::lift_and_obstruct;
use crate::error::CechError;
use crate::groupoid::UnitSubset;
use crate::star::{phase, AlgebraElement};

#[derive(Clone, Debug, Serialize)]
pub struct LocalUnitary {
    pub set: usize,
    /// Arrows of `J_i`, as arrows of the cover groupoid.
    pub arrows: Vec<usize>,
    /// `λ_ji(x)` at each unit `(x, j, j)` of `J_i`, in arrow order.
    pub phases: Vec<String>,
    pub unitary_residual: f64,
    /// `max_f ‖α₁(f) − w f w*‖` over the basis of `J_i`.
    pub implement_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalUnitaryReport {
    pub tolerance: f64,
    pub unitaries: Vec<LocalUnitary>,
    pub transitions_checked: usize,
    /// `(i, j, k, x)` where `λ_ij(x) + w_i(x, k, k) ≠ w_j(x, k, k)`.
    pub transition_failures: Vec<[usize; 4]>,
}

impl LocalUnitaryReport {
    pub fn max_residual(&self) -> f64 {
        self.unitaries
            .iter()
            .map(|u| u.unitary_residual.max(u.implement_residual))
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_residual() <= self.tolerance && self.transition_failures.is_empty()
    }
}

pub fn local_unitaries(
    lambda: &Cochain<Circle>,
    base: &CoverGroupoid,
    tolerance: f64,
) -> Result<LocalUnitaryReport, CechError> {
    if let Some((indices, point)) = lambda.cocycle_failure() {
        return Err(CechError::NotCechCocycle { indices, point });
    }
    let cover = &base.cover;
    let g = &base.groupoid;
    let lam = |i: usize, j: usize, x: usize| *lambda.at(&[i, j], x);
    let mut unitaries = Vec::new();
    for i in 0..cover.num_sets() {
        let units = g.units().filter(|&u| cover.contains(i, base.label(u).0));
        let subset = UnitSubset::new(g, units)?;
        let red = g.reduce_to_units(&subset)?;
        let ideal = Arc::new(red.groupoid);
        let parent = red.parent_arrow;
        let w_phase: Vec<QmodZ> = ideal
            .arrows()
            .map(|a| {
                let (x, j, k) = base.label(parent[a]);
                if j == k {
                    lam(j, i, x)
                } else {
                    QmodZ::zero()
                }
            })
            .collect();
        let mut w = AlgebraElement::zero(ideal.clone());
        for u in ideal.units() {
            w.coeffs[u] = phase(w_phase[u]);
        }
        let w_star = w.involution();
        let one = AlgebraElement::unit(ideal.clone());
        let unitary_residual = w
            .convolve(&w_star)?
            .max_diff(&one)
            .max(w_star.convolve(&w)?.max_diff(&one));
        let mut implement_residual: f64 = 0.0;
        for a in ideal.arrows() {
            let f = AlgebraElement::delta(ideal.clone(), a);
            let (x, j, k) = base.label(parent[a]);
            let alpha = f.scale(phase(lam(j, k, x)));
            let inner = w.convolve(&f)?.convolve(&w_star)?;
            let diff = alpha.add(&inner.scale(Complex64::new(-1.0, 0.0)))?;
            implement_residual = implement_residual.max(diff.norm());
        }
        unitaries.push(LocalUnitary {
            set: i,
            phases: ideal.units().map(|u| w_phase[u].to_string()).collect(),
            arrows: parent,
            unitary_residual,
            implement_residual,
        });
    }

    let mut transitions_checked = 0;
    let mut transition_failures = Vec::new();
    let n = cover.num_sets();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for x in cover.intersection(&[i, j, k]) {
                    transitions_checked += 1;
                    // w_i(x, k, k) = λ_ki(x).
                    if lam(i, j, x).add(lam(k, i, x)) != lam(k, j, x) {
                        transition_failures.push([i, j, k, x]);
                    }
                }
            }
        }
    }
    Ok(LocalUnitaryReport {
        tolerance,
        unitaries,
        transitions_checked,
        transition_failures,
    })
}

/// The obstruction class of `λ` and the symbolic Dixmier–Douady descriptor
/// `(z, [λ*])`; the cup product itself is not computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DdReport {
    pub obstruction: CohomologyClass,
    pub obstruction_group: String,
    pub obstruction_vanishes: bool,
    pub obstruction_generates: bool,
    pub gauge_class: String,
    pub descriptor: String,
    pub symbolic: bool,
}

pub fn dd_report(lambda: &Cochain<Circle>) -> Result<DdReport, CechError> {
    let (_, star) = lift_and_obstruct(lambda)?;
    let nerve = NerveCohomology::new(lambda.cover.clone(), 2)?;
    let obstruction = nerve.class_of(&star)?;
    let coords = obstruction
        .coordinates
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    Ok(DdReport {
        obstruction_group: nerve.group.to_string(),
        obstruction_vanishes: obstruction.is_zero(),
        obstruction_generates: obstruction.is_generator(),
        gauge_class: "the class of lambda in H^1(X, T), carried to [lambda*] by the connecting map".into(),
        descriptor: format!("(z, [{coords}])"),
        symbolic: true,
        obstruction,
    })
}

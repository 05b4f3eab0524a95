//! Convolution algebras of finite groupoids and the numerical certificates
//! built on them.

pub mod actions;
pub mod element;
pub mod embed;
pub mod induced;

pub use actions::{
    alpha_action, central_multiplier, gamma_dual_action, phase, rho, section_lift,
    unitary_multiplier, FiberWeight,
};
pub use element::{
    left_regular_matrix, left_regular_rep, numerical_rank, operator_norm, AlgebraElement,
    ComplexMatrix, MatrixRep,
};
pub use embed::{verify_embedding, WideEmbedding};
pub use induced::{verify_characterization, InducedAlgebra, InducedElement, ObstructionContext};

use serde::Serialize;

/// One certified property: its largest residual over everything checked and
/// the first place it failed, if any.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionResult {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub witness: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CertificateReport {
    pub tolerance: f64,
    pub conditions: Vec<ConditionResult>,
}

impl CertificateReport {
    pub fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            conditions: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// Records a residual-based condition; `samples` are `(witness, residual)`
    /// pairs in a fixed order, so the reported witness is deterministic.
    pub(crate) fn residuals(
        &mut self,
        name: &str,
        detail: impl Into<String>,
        samples: impl IntoIterator<Item = (Vec<usize>, f64)>,
    ) {
        let tol = self.tolerance;
        let mut max = 0.0f64;
        let mut witness = None;
        for (w, r) in samples {
            if r.is_nan() || r > tol {
                witness.get_or_insert(w);
            }
            max = if r.is_nan() { f64::NAN } else { max.max(r) };
        }
        self.conditions.push(ConditionResult {
            name: name.into(),
            passed: witness.is_none(),
            max_residual: max,
            witness,
            detail: detail.into(),
        });
    }

    pub(crate) fn flag(&mut self, name: &str, passed: bool, residual: f64, detail: impl Into<String>) {
        self.conditions.push(ConditionResult {
            name: name.into(),
            passed,
            max_residual: residual,
            witness: None,
            detail: detail.into(),
        });
    }
}

impl std::fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.conditions {
            write!(
                f,
                "{:<28} {}  max residual {:.3e}",
                c.name,
                if c.passed { "ok  " } else { "FAIL" },
                c.max_residual
            )?;
            if let Some(w) = &c.witness {
                write!(f, "  at {w:?}")?;
            }
            if !c.detail.is_empty() {
                write!(f, "  ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

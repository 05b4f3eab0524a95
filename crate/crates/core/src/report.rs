//! Violation reports shared by every validator in the crate.
//!
//! Validators never fail: a broken axiom is recorded as a [`Violation`]
//! carrying the arrows (or element indices) that witness it.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The rule a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Composition is defined exactly on pairs with `s(g1) = r(g2)` and
    /// the composite has range `r(g1)` and source `s(g2)`.
    ComposableDomain,
    Associativity,
    /// Units are fixed by source and range and act as identities.
    UnitIdentity,
    /// `g g^-1 = r(g)` and `g^-1 g = s(g)`.
    InverseCancellation,
    /// `r(g^-1) = s(g)`, `s(g^-1) = r(g)` and inversion is an involution.
    InverseRange,
    CocycleIdentity,
    Normalization,
    InclusionInjective,
    InclusionHomomorphism,
    InclusionIntoIsotropy,
    ProjectionSurjective,
    ProjectionHomomorphism,
    ProjectionOnUnits,
    Centrality,
    FreeTransitiveFibers,
    Injectivity,
    Surjectivity,
    ImageEqualsKernel,
    SectionHomomorphism,
    SectionSplitsProjection,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        f.write_str(&name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    /// Arrow identifiers (or element indices) involved in the failure.
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rule: Rule, witness: Vec<usize>, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            witness,
            detail: detail.into(),
        });
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn cites(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn first(&self, rule: Rule) -> Option<&Violation> {
        self.violations.iter().find(|v| v.rule == rule)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{}: {:?} {}", v.rule, v.witness, v.detail)?;
        }
        Ok(())
    }
}

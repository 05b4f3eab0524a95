//! Groupoid 1- and 2-cocycles with coefficients in an abelian group.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::abelian::{subgroup, Coefficients, FinAbGroup, GroupHom, IntMatrix, PreparedSystem};
use crate::error::TwistError;
use crate::groupoid::FiniteGroupoid;
use crate::report::{Rule, ValidationReport};

/// Enumeration is refused above this many candidates.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// A map on arrows, meant to satisfy `φ(γ₁γ₂) = φ(γ₁) + φ(γ₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle1<K: Coefficients> {
    pub groupoid: Arc<FiniteGroupoid>,
    pub target: K,
    pub values: Vec<K::Elem>,
}

impl<K: Coefficients> Cocycle1<K> {
    pub fn new(groupoid: Arc<FiniteGroupoid>, target: K, values: Vec<K::Elem>) -> Self {
        assert_eq!(values.len(), groupoid.num_arrows(), "one value per arrow");
        Self {
            groupoid,
            target,
            values,
        }
    }

    pub fn zero(groupoid: Arc<FiniteGroupoid>, target: K) -> Self {
        let values = vec![target.zero(); groupoid.num_arrows()];
        Self::new(groupoid, target, values)
    }

    pub fn value(&self, g: usize) -> &K::Elem {
        &self.values[g]
    }

    pub fn is_cocycle1(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (a, b, c) in self.groupoid.composition_triples() {
            let sum = self.target.add(&self.values[a], &self.values[b]);
            if sum != self.values[c] {
                report.push(
                    Rule::CocycleIdentity,
                    vec![a, b],
                    format!(
                        "value on {c} is {:?} but the pair sums to {sum:?}",
                        self.values[c]
                    ),
                );
            }
        }
        report
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.groupoid, other.groupoid, "cocycles on different groupoids");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| self.target.add(x, y))
            .collect();
        Self::new(self.groupoid.clone(), self.target.clone(), values)
    }

    pub fn neg(&self) -> Self {
        let values = self.values.iter().map(|x| self.target.neg(x)).collect();
        Self::new(self.groupoid.clone(), self.target.clone(), values)
    }
}

impl Cocycle1<FinAbGroup> {
    /// `h ∘ φ`.
    pub fn pushforward(&self, h: &GroupHom) -> Cocycle1<FinAbGroup> {
        assert_eq!(h.domain(), &self.target, "pushforward along a hom from another group");
        let values = self.values.iter().map(|x| h.apply(x)).collect();
        Cocycle1::new(self.groupoid.clone(), h.codomain().clone(), values)
    }

    /// The coboundary `γ ↦ b(r(γ)) − b(s(γ))` of a function on units.
    pub fn coboundary_of(groupoid: Arc<FiniteGroupoid>, target: FinAbGroup, b: &[Vec<i64>]) -> Self {
        let values = groupoid
            .arrows()
            .map(|g| target.sub(&b[groupoid.range(g)], &b[groupoid.source(g)]))
            .collect();
        Self::new(groupoid, target, values)
    }
}

/// A function on composable pairs, meant to satisfy the groupoid 2-cocycle
/// identity `σ(γ₁,γ₂) + σ(γ₁γ₂,γ₃) = σ(γ₂,γ₃) + σ(γ₁,γ₂γ₃)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle2<K: Coefficients> {
    pub groupoid: Arc<FiniteGroupoid>,
    pub target: K,
    values: BTreeMap<(usize, usize), K::Elem>,
}

impl<K: Coefficients> Cocycle2<K> {
    /// Missing composable pairs default to zero; non-composable keys are
    /// rejected.
    pub fn new(
        groupoid: Arc<FiniteGroupoid>,
        target: K,
        entries: impl IntoIterator<Item = ((usize, usize), K::Elem)>,
    ) -> Result<Self, TwistError> {
        let mut values: BTreeMap<(usize, usize), K::Elem> = groupoid
            .composable_pairs()
            .into_iter()
            .map(|p| (p, target.zero()))
            .collect();
        for (pair, v) in entries {
            match values.get_mut(&pair) {
                Some(slot) => *slot = v,
                None => {
                    return Err(TwistError::Malformed(format!(
                        "pair {pair:?} is not composable"
                    )))
                }
            }
        }
        Ok(Self {
            groupoid,
            target,
            values,
        })
    }

    pub fn zero(groupoid: Arc<FiniteGroupoid>, target: K) -> Self {
        Self::new(groupoid, target, std::iter::empty()).expect("no entries to reject")
    }

    pub fn value(&self, a: usize, b: usize) -> &K::Elem {
        self.values
            .get(&(a, b))
            .expect("2-cocycle evaluated on a non-composable pair")
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &K::Elem)> {
        self.values.iter()
    }

    pub fn is_cocycle2(&self) -> ValidationReport {
        let g = &self.groupoid;
        let k = &self.target;
        let mut report = ValidationReport::new();
        for (a, b, ab) in g.composition_triples() {
            for c in g.range_fiber(g.source(b)) {
                let Some(bc) = g.compose(b, c) else { continue };
                let lhs = k.add(self.value(a, b), self.value(ab, c));
                let rhs = k.add(self.value(b, c), self.value(a, bc));
                if lhs != rhs {
                    report.push(
                        Rule::CocycleIdentity,
                        vec![a, b, c],
                        format!("{lhs:?} != {rhs:?}"),
                    );
                }
            }
        }
        report
    }

    /// Every pair with a unit argument carrying a nonzero value.
    pub fn check_normalized(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (&(a, b), v) in &self.values {
            if (self.groupoid.is_unit(a) || self.groupoid.is_unit(b)) && !self.target.is_zero(v) {
                report.push(Rule::Normalization, vec![a, b], format!("value {v:?} on a unit pair"));
            }
        }
        report
    }

    /// First pair with a unit argument carrying a nonzero value.
    pub fn normalization_failure(&self) -> Option<(usize, usize)> {
        self.values
            .iter()
            .find(|(&(a, b), v)| {
                (self.groupoid.is_unit(a) || self.groupoid.is_unit(b)) && !self.target.is_zero(v)
            })
            .map(|(&p, _)| p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let values = self
            .values
            .iter()
            .map(|(p, v)| (*p, self.target.add(v, other.value(p.0, p.1))))
            .collect();
        Self {
            groupoid: self.groupoid.clone(),
            target: self.target.clone(),
            values,
        }
    }
}

impl Cocycle2<FinAbGroup> {
    /// `(γ₁,γ₂) ↦ b(γ₁) + b(γ₂) − b(γ₁γ₂)`.
    pub fn coboundary_of(groupoid: Arc<FiniteGroupoid>, target: FinAbGroup, b: &[Vec<i64>]) -> Self {
        let entries: Vec<_> = groupoid
            .composition_triples()
            .into_iter()
            .map(|(x, y, z)| ((x, y), target.sub(&target.add(&b[x], &b[y]), &b[z])))
            .collect();
        Self::new(groupoid, target, entries).expect("composable pairs only")
    }
}

/// The linear system `x(γ₁) + x(γ₂) − x(γ₁γ₂)` over `A`, one row per
/// composable pair and coordinate of `A`, one variable per arrow and
/// coordinate.
pub(crate) fn coboundary_matrix(
    g: &FiniteGroupoid,
    group: &FinAbGroup,
) -> (IntMatrix, Vec<i64>, Vec<i64>) {
    let r = group.rank();
    let triples = g.composition_triples();
    let mut m = IntMatrix::zeros(triples.len() * r, g.num_arrows() * r);
    let mut row_moduli = Vec::with_capacity(triples.len() * r);
    for (t, &(a, b, c)) in triples.iter().enumerate() {
        for k in 0..r {
            let row = t * r + k;
            m[(row, a * r + k)] += 1;
            m[(row, b * r + k)] += 1;
            m[(row, c * r + k)] -= 1;
            row_moduli.push(group.orders()[k]);
        }
    }
    let var_moduli = (0..g.num_arrows())
        .flat_map(|_| group.orders().iter().copied())
        .collect();
    (m, row_moduli, var_moduli)
}

/// `Z_Γ(A)` as a finite abelian group in computed presentation.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub groupoid: Arc<FiniteGroupoid>,
    pub target: FinAbGroup,
    /// Injection of the presentation group into `A^{arrows}`.
    embedding: GroupHom,
}

impl CocycleSpace {
    pub fn new(groupoid: Arc<FiniteGroupoid>, target: FinAbGroup) -> Self {
        let (m, rows, vars) = coboundary_matrix(&groupoid, &target);
        let ambient = FinAbGroup::from_cyclic_orders(vars.clone()).expect("positive orders");
        let gens = PreparedSystem::new(m, rows, vars)
            .expect("coboundary system is compatible")
            .kernel_generators();
        let embedding = subgroup(&ambient, &gens);
        Self {
            groupoid,
            target,
            embedding,
        }
    }

    /// The abstract group `Z_Γ(A)`.
    pub fn group(&self) -> &FinAbGroup {
        self.embedding.domain()
    }

    pub fn order(&self) -> u128 {
        self.group().order()
    }

    /// The cocycle with coordinates `z` in [`CocycleSpace::group`].
    pub fn cocycle(&self, z: &[i64]) -> Cocycle1<FinAbGroup> {
        let flat = self.embedding.apply(z);
        let r = self.target.rank();
        let values = (0..self.groupoid.num_arrows())
            .map(|g| flat[g * r..(g + 1) * r].to_vec())
            .collect();
        Cocycle1::new(self.groupoid.clone(), self.target.clone(), values)
    }

    /// Every cocycle, refusing spaces above [`ENUMERATION_LIMIT`].
    pub fn enumerate(&self) -> Result<Vec<Cocycle1<FinAbGroup>>, TwistError> {
        let n = self.order();
        if n > ENUMERATION_LIMIT {
            return Err(TwistError::SearchSpaceTooLarge(n));
        }
        Ok(self.group().elements().map(|z| self.cocycle(&z)).collect())
    }

    /// A uniformly random cocycle.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Cocycle1<FinAbGroup> {
        let z: Vec<i64> = self
            .group()
            .orders()
            .iter()
            .map(|&d| rng.random_range(0..d))
            .collect();
        self.cocycle(&z)
    }
}

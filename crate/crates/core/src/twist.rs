//! Twists (central extensions) of finite groupoids by finite abelian groups.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{FinAbGroup, IntMatrix, PreparedSystem, ShortExactSeq};
use crate::cocycle::{coboundary_matrix, Cocycle1, Cocycle2, CocycleSpace};
use crate::error::TwistError;
use crate::groupoid::{FiniteGroupoid, Labeled};
use crate::report::{Rule, ValidationReport};

/// `Γ⁰ × A →j Σ →π Γ`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub sigma: Arc<FiniteGroupoid>,
    pub base: Arc<FiniteGroupoid>,
    pub fiber: FinAbGroup,
    /// `inclusion[u][a]` is the arrow `j(u, a)` for unit `u` of `Γ` and
    /// element index `a` of `A`.
    pub inclusion: Vec<Vec<usize>>,
    /// `projection[σ]` is `π(σ)`.
    pub projection: Vec<usize>,
}

/// Coordinates of a twist relative to its least-preimage section: every
/// arrow is `j(r, a) · s(π(σ))` for exactly one `a`.
#[derive(Clone, Debug)]
pub struct Frame {
    /// Least preimage of each base arrow.
    pub section: Vec<usize>,
    /// Element index `a` of each arrow of `Σ`.
    pub coordinate: Vec<usize>,
    /// `arrow_at[γ][a] = j(r(γ), a) · s(γ)`.
    pub arrow_at: Vec<Vec<usize>>,
}

/// A map `Γ → Σ`, one arrow of `Σ` per arrow of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub arrows: Vec<usize>,
}

impl Twist {
    pub fn j(&self, unit: usize, a: usize) -> usize {
        self.inclusion[unit][a]
    }

    /// `j(r(σ), a) σ`.
    pub fn act(&self, a: usize, sigma: usize) -> Option<usize> {
        let u = self.base.range(self.projection[sigma]);
        self.sigma.compose(self.j(u, a), sigma)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.sigma.validate();
        let base = &self.base;
        let sig = &self.sigma;
        let fiber = &self.fiber;
        let size = fiber.size();
        if self.projection.len() != sig.num_arrows()
            || self.inclusion.len() != base.num_units()
            || self.inclusion.iter().any(|row| row.len() != size)
        {
            report.push(
                Rule::InclusionInjective,
                vec![],
                "inclusion or projection table has the wrong shape",
            );
            return report;
        }
        let mut seen = HashMap::new();
        for u in base.units() {
            for a in 0..size {
                let s = self.j(u, a);
                if let Some(&(v, b)) = seen.get(&s) {
                    report.push(
                        Rule::InclusionInjective,
                        vec![u, a, v, b],
                        format!("j({u}, {a}) = j({v}, {b}) = {s}"),
                    );
                }
                seen.insert(s, (u, a));
                if self.projection[s] != u {
                    report.push(
                        Rule::InclusionIntoIsotropy,
                        vec![u, a],
                        format!("π(j({u}, {a})) = {} is not the unit {u}", self.projection[s]),
                    );
                }
                for b in 0..size {
                    let ab = fiber.index_of(&fiber.add(&fiber.element(a), &fiber.element(b)));
                    if sig.compose(s, self.j(u, b)) != Some(self.j(u, ab)) {
                        report.push(
                            Rule::InclusionHomomorphism,
                            vec![u, a, b],
                            format!("j({u}, {a}) j({u}, {b}) != j({u}, {ab})"),
                        );
                    }
                }
            }
            if !sig.is_unit(self.j(u, 0)) {
                report.push(
                    Rule::InclusionHomomorphism,
                    vec![u],
                    format!("j({u}, 0) is not a unit"),
                );
            }
        }
        let mut hit = vec![false; base.num_arrows()];
        for s in sig.arrows() {
            let g = self.projection[s];
            hit[g] = true;
            if sig.is_unit(s) && !base.is_unit(g) {
                report.push(
                    Rule::ProjectionOnUnits,
                    vec![s],
                    format!("unit {s} projects to the non-unit {g}"),
                );
            }
            if self.projection[sig.source(s)] != base.source(g)
                || self.projection[sig.range(s)] != base.range(g)
            {
                report.push(
                    Rule::ProjectionHomomorphism,
                    vec![s],
                    format!("π does not respect source and range at {s}"),
                );
            }
        }
        if sig.num_units() != base.num_units() {
            report.push(
                Rule::ProjectionOnUnits,
                vec![],
                format!("{} units over {} base units", sig.num_units(), base.num_units()),
            );
        }
        if let Some(miss) = hit.iter().position(|h| !h) {
            report.push(
                Rule::ProjectionSurjective,
                vec![miss],
                format!("arrow {miss} of the base has no preimage"),
            );
        }
        for (a, b, c) in sig.composition_triples() {
            if base.compose(self.projection[a], self.projection[b]) != Some(self.projection[c]) {
                report.push(
                    Rule::ProjectionHomomorphism,
                    vec![a, b],
                    format!("π({a}{b}) != π({a})π({b})"),
                );
            }
        }
        for s in sig.arrows() {
            let g = self.projection[s];
            for a in 0..size {
                let left = sig.compose(self.j(base.range(g), a), s);
                let right = sig.compose(s, self.j(base.source(g), a));
                if left.is_none() || left != right {
                    report.push(
                        Rule::Centrality,
                        vec![s, a],
                        format!("j(r, {a}) {s} = {left:?} but {s} j(s, {a}) = {right:?}"),
                    );
                }
            }
        }
        let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); base.num_arrows()];
        for s in sig.arrows() {
            fibers[self.projection[s]].push(s);
        }
        for (g, fib) in fibers.iter().enumerate() {
            let Some(&first) = fib.first() else { continue };
            let mut orbit: Vec<Option<usize>> = (0..size).map(|a| self.act(a, first)).collect();
            orbit.sort();
            orbit.dedup();
            let mut sorted = fib.clone();
            sorted.sort();
            let orbit: Vec<usize> = orbit.into_iter().flatten().collect();
            if fib.len() != size || orbit != sorted {
                report.push(
                    Rule::FreeTransitiveFibers,
                    vec![g],
                    format!("fiber over {g} is not a free transitive orbit of A"),
                );
            }
        }
        report
    }

    pub fn frame(&self) -> Result<Frame, TwistError> {
        let base = &self.base;
        let size = self.fiber.size();
        let mut section = vec![usize::MAX; base.num_arrows()];
        for s in self.sigma.arrows() {
            let g = self.projection[s];
            section[g] = section[g].min(s);
        }
        if let Some(g) = section.iter().position(|&s| s == usize::MAX) {
            return Err(TwistError::Malformed(format!("no arrow lies over {g}")));
        }
        let mut coordinate = vec![usize::MAX; self.sigma.num_arrows()];
        let mut arrow_at = Vec::with_capacity(base.num_arrows());
        for (g, &s) in section.iter().enumerate() {
            let mut row = Vec::with_capacity(size);
            for a in 0..size {
                let t = self.act(a, s).ok_or_else(|| {
                    TwistError::Malformed(format!("fiber action undefined over {g}"))
                })?;
                if coordinate[t] != usize::MAX {
                    return Err(TwistError::Malformed(format!("fiber action over {g} is not free")));
                }
                coordinate[t] = a;
                row.push(t);
            }
            arrow_at.push(row);
        }
        if coordinate.contains(&usize::MAX) {
            return Err(TwistError::Malformed("fiber action is not transitive".into()));
        }
        Ok(Frame {
            section,
            coordinate,
            arrow_at,
        })
    }

    /// The `A`-valued 2-cocycle of the least-preimage section:
    /// `s(γ₁)s(γ₂) = j(r, c(γ₁,γ₂)) s(γ₁γ₂)`.
    pub fn section_cocycle(&self, frame: &Frame) -> Cocycle2<FinAbGroup> {
        let entries: Vec<_> = self
            .base
            .composable_pairs()
            .into_iter()
            .map(|(a, b)| {
                let prod = self
                    .sigma
                    .compose(frame.section[a], frame.section[b])
                    .expect("sections of composable arrows compose");
                ((a, b), self.fiber.element(frame.coordinate[prod]))
            })
            .collect();
        Cocycle2::new(self.base.clone(), self.fiber.clone(), entries).expect("composable pairs")
    }

    /// The same extension with `A` acting through `−id`.
    pub fn negate(&self) -> Twist {
        let f = &self.fiber;
        let inclusion = self
            .inclusion
            .iter()
            .map(|row| {
                (0..row.len())
                    .map(|a| row[f.index_of(&f.neg(&f.element(a)))])
                    .collect()
            })
            .collect();
        Twist {
            inclusion,
            ..self.clone()
        }
    }
}

pub fn verify_section(t: &Twist, section: &Section) -> ValidationReport {
    let mut report = ValidationReport::new();
    if section.arrows.len() != t.base.num_arrows() {
        report.push(Rule::SectionSplitsProjection, vec![], "section has the wrong length");
        return report;
    }
    for g in t.base.arrows() {
        if t.projection[section.arrows[g]] != g {
            report.push(Rule::SectionSplitsProjection, vec![g], format!("π(τ({g})) != {g}"));
        }
    }
    for (a, b, c) in t.base.composition_triples() {
        if t.sigma.compose(section.arrows[a], section.arrows[b]) != Some(section.arrows[c]) {
            report.push(Rule::SectionHomomorphism, vec![a, b], format!("τ({a})τ({b}) != τ({c})"));
        }
    }
    report
}

/// Decides triviality of twists over a fixed base and fiber, reusing one
/// factorization of the coboundary system.
#[derive(Clone, Debug)]
pub struct TrivialityDecider {
    base: Arc<FiniteGroupoid>,
    fiber: FinAbGroup,
    system: PreparedSystem,
}

impl TrivialityDecider {
    pub fn new(base: Arc<FiniteGroupoid>, fiber: FinAbGroup) -> Self {
        let (m, rows, vars) = coboundary_matrix(&base, &fiber);
        let system = PreparedSystem::new(m, rows, vars).expect("coboundary system is compatible");
        Self {
            base,
            fiber,
            system,
        }
    }

    /// A homomorphic section when one exists. `None` is definitive: the
    /// section 2-cocycle is not a coboundary.
    pub fn decide(&self, t: &Twist) -> Result<Option<Section>, TwistError> {
        if *t.base != *self.base {
            return Err(TwistError::BaseMismatch);
        }
        if t.fiber != self.fiber {
            return Err(TwistError::FiberMismatch);
        }
        let frame = t.frame()?;
        let f = &self.fiber;
        // x(γ₁) + x(γ₂) − x(γ₁γ₂) = −c(γ₁,γ₂)
        let target: Vec<i64> = self
            .base
            .composition_triples()
            .into_iter()
            .flat_map(|(a, b, _)| {
                let prod = t
                    .sigma
                    .compose(frame.section[a], frame.section[b])
                    .expect("sections of composable arrows compose");
                f.neg(&f.element(frame.coordinate[prod]))
            })
            .collect();
        let Some(x) = self.system.solve(&target) else {
            return Ok(None);
        };
        let r = f.rank();
        let arrows = self
            .base
            .arrows()
            .map(|g| frame.arrow_at[g][f.index_of(&x[g * r..(g + 1) * r])])
            .collect();
        let section = Section { arrows };
        let check = verify_section(t, &section);
        assert!(check.is_ok(), "solver produced an invalid section: {check}");
        Ok(Some(section))
    }
}

pub fn is_trivial(t: &Twist) -> Result<Option<Section>, TwistError> {
    TrivialityDecider::new(t.base.clone(), t.fiber.clone()).decide(t)
}

/// The obstruction twist `Σ_φ = {(γ, b) : φ(γ) = p(b)} ⊆ Γ × B`.
#[derive(Clone, Debug)]
pub struct ObstructionTwist {
    pub twist: Twist,
    pub phi: Cocycle1<FinAbGroup>,
    pub seq: ShortExactSeq,
    /// `(γ, element index of b)` for each arrow.
    pub labels: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl ObstructionTwist {
    pub fn new(phi: &Cocycle1<FinAbGroup>, seq: &ShortExactSeq) -> Result<Self, TwistError> {
        if phi.target != seq.c {
            return Err(TwistError::InvalidCocycle(
                "cocycle target differs from the quotient group".into(),
            ));
        }
        let report = phi.is_cocycle1();
        if let Some(v) = report.violations.first() {
            return Err(TwistError::InvalidCocycle(format!(
                "identity fails at {:?}",
                v.witness
            )));
        }
        let exact = seq.check_exact();
        if let Some(v) = exact.violations.first() {
            return Err(TwistError::InexactSequence(format!("{}: {}", v.rule, v.detail)));
        }
        Ok(Self::build(phi, seq))
    }

    /// Construction without the input checks, for callers that already
    /// validated `phi` and `seq`.
    pub fn build(phi: &Cocycle1<FinAbGroup>, seq: &ShortExactSeq) -> Self {
        let base = phi.groupoid.clone();
        let b = &seq.b;
        let b_elems: Vec<Vec<i64>> = b.elements().collect();
        let mut over: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (k, e) in b_elems.iter().enumerate() {
            over.entry(seq.p.apply(e)).or_default().push(k);
        }
        let units: Vec<(usize, usize)> = base.units().map(|u| (u, 0)).collect();
        let mut others = Vec::new();
        for g in base.arrows() {
            for &k in over.get(&phi.values[g]).map(Vec::as_slice).unwrap_or(&[]) {
                if !(base.is_unit(g) && k == 0) {
                    others.push((g, k));
                }
            }
        }
        let add = |x: usize, y: usize| b.index_of(&b.add(&b_elems[x], &b_elems[y]));
        let labeled = Labeled::build(
            units,
            others,
            |&(g, _)| (base.source(g), 0),
            |&(g, _)| (base.range(g), 0),
            |&(g, x), &(h, y)| (base.compose(g, h).unwrap_or(usize::MAX), add(x, y)),
            |&(g, x)| (base.inverse(g), b.index_of(&b.neg(&b_elems[x]))),
        )
        .expect("obstruction twist is closed under the product operations");
        let a_images: Vec<usize> = seq
            .a
            .elements()
            .map(|a| b.index_of(&seq.i.apply(&a)))
            .collect();
        let inclusion = base
            .units()
            .map(|u| {
                a_images
                    .iter()
                    .map(|&k| labeled.index(&(u, k)).expect("i(A) lies over units"))
                    .collect()
            })
            .collect();
        let projection = labeled.labels.iter().map(|&(g, _)| g).collect();
        let labels = labeled.labels.clone();
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Self {
            twist: Twist {
                sigma: Arc::new(labeled.groupoid),
                base,
                fiber: seq.a.clone(),
                inclusion,
                projection,
            },
            phi: phi.clone(),
            seq: seq.clone(),
            labels,
            index,
        }
    }

    pub fn arrow(&self, g: usize, b: &[i64]) -> Option<usize> {
        self.index.get(&(g, self.seq.b.index_of(b))).copied()
    }

    pub fn b_value(&self, s: usize) -> Vec<i64> {
        self.seq.b.element(self.labels[s].1)
    }

    /// Arrows of `Σ_φ` over `γ`, i.e. the coset `A_γ` labelled by `b`.
    pub fn fiber_over(&self, g: usize) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&s| self.labels[s].0 == g)
            .collect()
    }
}

pub fn obstruction_twist(
    phi: &Cocycle1<FinAbGroup>,
    seq: &ShortExactSeq,
) -> Result<ObstructionTwist, TwistError> {
    ObstructionTwist::new(phi, seq)
}

/// Decides liftability of cocycles along `p` for a fixed base and sequence.
#[derive(Clone, Debug)]
pub struct LiftSolver {
    base: Arc<FiniteGroupoid>,
    seq: ShortExactSeq,
    system: PreparedSystem,
    cocycle_rows: usize,
}

impl LiftSolver {
    pub fn new(base: Arc<FiniteGroupoid>, seq: ShortExactSeq) -> Self {
        let (cob, mut rows, vars) = coboundary_matrix(&base, &seq.b);
        let rb = seq.b.rank();
        let rc = seq.c.rank();
        let n = base.num_arrows();
        let cocycle_rows = cob.nrows();
        let mut m = IntMatrix::zeros(cocycle_rows + n * rc, n * rb);
        m.view_mut((0, 0), cob.shape()).copy_from(&cob);
        let p = seq.p.matrix();
        for g in 0..n {
            for l in 0..rc {
                for k in 0..rb {
                    m[(cocycle_rows + g * rc + l, g * rb + k)] = p[(l, k)];
                }
                rows.push(seq.c.orders()[l]);
            }
        }
        let system = PreparedSystem::new(m, rows, vars).expect("lift system is compatible");
        Self {
            base,
            seq,
            system,
            cocycle_rows,
        }
    }

    /// `φ̃ ∈ Z_Γ(B)` with `p_* φ̃ = φ`, when one exists.
    pub fn lift(&self, phi: &Cocycle1<FinAbGroup>) -> Option<Cocycle1<FinAbGroup>> {
        assert_eq!(*phi.groupoid, *self.base, "cocycle lives on another groupoid");
        let mut target = vec![0i64; self.cocycle_rows];
        for v in &phi.values {
            target.extend_from_slice(v);
        }
        let x = self.system.solve(&target)?;
        let rb = self.seq.b.rank();
        let values = self
            .base
            .arrows()
            .map(|g| x[g * rb..(g + 1) * rb].to_vec())
            .collect();
        let lifted = Cocycle1::new(self.base.clone(), self.seq.b.clone(), values);
        assert!(lifted.is_cocycle1().is_ok(), "lift is not a cocycle");
        assert_eq!(lifted.pushforward(&self.seq.p).values, phi.values, "lift does not project");
        Some(lifted)
    }
}

pub fn lift_cocycle(
    phi: &Cocycle1<FinAbGroup>,
    seq: &ShortExactSeq,
) -> Option<Cocycle1<FinAbGroup>> {
    LiftSolver::new(phi.groupoid.clone(), seq.clone()).lift(phi)
}

/// The Baer sum. Its arrows are identified with the arrows of `t2`: the
/// class of `(s₁(γ), σ)` in the fibered product modulo the antidiagonal.
pub fn baer_sum(t1: &Twist, t2: &Twist) -> Result<Twist, TwistError> {
    if *t1.base != *t2.base {
        return Err(TwistError::BaseMismatch);
    }
    if t1.fiber != t2.fiber {
        return Err(TwistError::FiberMismatch);
    }
    let frame1 = t1.frame()?;
    let c1 = t1.section_cocycle(&frame1);
    let f = &t1.fiber;
    let sig = &t2.sigma;
    let units: Vec<usize> = sig.units().collect();
    let others: Vec<usize> = sig.arrows().filter(|&s| !sig.is_unit(s)).collect();
    let labeled = Labeled::build(
        units,
        others,
        |&s| sig.source(s),
        |&s| sig.range(s),
        |&s, &t| {
            let (g, h) = (t2.projection[s], t2.projection[t]);
            let c = f.index_of(c1.value(g, h));
            let st = sig.compose(s, t).unwrap_or(usize::MAX);
            t2.act(c, st).unwrap_or(usize::MAX)
        },
        |&s| {
            let g = t2.projection[s];
            let inv1 = t1.sigma.inverse(frame1.section[g]);
            let e = frame1.coordinate[inv1];
            t2.act(e, sig.inverse(s)).unwrap_or(usize::MAX)
        },
    )?;
    Ok(Twist {
        sigma: Arc::new(labeled.groupoid),
        base: t2.base.clone(),
        fiber: t2.fiber.clone(),
        inclusion: t2.inclusion.clone(),
        projection: t2.projection.clone(),
    })
}

pub fn properly_isomorphic(t1: &Twist, t2: &Twist) -> Result<bool, TwistError> {
    let diff = baer_sum(t1, &t2.negate())?;
    Ok(is_trivial(&diff)?.is_some())
}

/// The extension `A × Γ` with product
/// `(γ₁, m)(γ₂, n) = (γ₁γ₂, m + n + σ(γ₁,γ₂))`.
pub fn twist_from_2cocycle(sigma: &Cocycle2<FinAbGroup>) -> Result<Twist, TwistError> {
    if let Some(v) = sigma.is_cocycle2().violations.first() {
        return Err(TwistError::NotCocycle((v.witness[0], v.witness[1], v.witness[2])));
    }
    if let Some(pair) = sigma.normalization_failure() {
        return Err(TwistError::NotNormalized(pair));
    }
    let base = sigma.groupoid.clone();
    let a = &sigma.target;
    let elems: Vec<Vec<i64>> = a.elements().collect();
    let size = elems.len();
    let units: Vec<(usize, usize)> = base.units().map(|u| (u, 0)).collect();
    let others: Vec<(usize, usize)> = base
        .arrows()
        .flat_map(|g| (0..size).map(move |k| (g, k)))
        .filter(|&(g, k)| !(base.is_unit(g) && k == 0))
        .collect();
    let labeled = Labeled::build(
        units,
        others,
        |&(g, _)| (base.source(g), 0),
        |&(g, _)| (base.range(g), 0),
        |&(g, m), &(h, n)| {
            let gh = base.compose(g, h).unwrap_or(usize::MAX);
            let v = a.add(&a.add(&elems[m], &elems[n]), sigma.value(g, h));
            (gh, a.index_of(&v))
        },
        |&(g, n)| {
            let gi = base.inverse(g);
            let v = a.sub(&a.neg(&elems[n]), sigma.value(gi, g));
            (gi, a.index_of(&v))
        },
    )?;
    let inclusion = base
        .units()
        .map(|u| (0..size).map(|k| labeled.index(&(u, k)).expect("unit fiber")).collect())
        .collect();
    let projection = labeled.labels.iter().map(|&(g, _)| g).collect();
    Ok(Twist {
        sigma: Arc::new(labeled.groupoid),
        base,
        fiber: a.clone(),
        inclusion,
        projection,
    })
}

/// The trivial twist `Γ × A`.
pub fn trivial_twist(base: Arc<FiniteGroupoid>, fiber: FinAbGroup) -> Twist {
    twist_from_2cocycle(&Cocycle2::zero(base, fiber)).expect("zero is a normalized cocycle")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub checked: usize,
    pub liftable: usize,
    pub trivial: usize,
    /// Cocycle values (by arrow) where liftability and triviality disagree.
    pub disagreements: Vec<Vec<Vec<i64>>>,
    pub seed: Option<u64>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// For each `φ ∈ Z_Γ(C)` (all of them, or a seeded sample): `φ` lifts
/// along `p` exactly when `Σ_φ` is trivial.
pub fn delta_exactness_check(
    base: Arc<FiniteGroupoid>,
    seq: &ShortExactSeq,
    mode: SampleMode,
) -> Result<ExactnessReport, TwistError> {
    let exact = seq.check_exact();
    if let Some(v) = exact.violations.first() {
        return Err(TwistError::InexactSequence(format!("{}: {}", v.rule, v.detail)));
    }
    let space = CocycleSpace::new(base.clone(), seq.c.clone());
    let (candidates, seed) = match mode {
        SampleMode::Exhaustive => (space.enumerate()?, None),
        SampleMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ((0..count).map(|_| space.sample(&mut rng)).collect(), Some(seed))
        }
    };
    let lifter = LiftSolver::new(base.clone(), seq.clone());
    let decider = TrivialityDecider::new(base, seq.a.clone());
    let outcomes: Vec<Result<(bool, bool), TwistError>> = candidates
        .par_iter()
        .map(|phi| {
            let lifts = lifter.lift(phi).is_some();
            let twist = ObstructionTwist::build(phi, seq);
            let trivial = decider.decide(&twist.twist)?.is_some();
            Ok((lifts, trivial))
        })
        .collect();
    let mut report = ExactnessReport {
        checked: candidates.len(),
        liftable: 0,
        trivial: 0,
        disagreements: Vec::new(),
        seed,
    };
    for (phi, outcome) in candidates.iter().zip(outcomes) {
        let (lifts, trivial) = outcome?;
        report.liftable += lifts as usize;
        report.trivial += trivial as usize;
        if lifts != trivial {
            report.disagreements.push(phi.values.clone());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{from_group, pair_groupoid};

    fn z2() -> Arc<FiniteGroupoid> {
        Arc::new(from_group(&FinAbGroup::cyclic(2)))
    }

    fn identity_on_z2() -> Cocycle1<FinAbGroup> {
        Cocycle1::new(z2(), FinAbGroup::cyclic(2), vec![vec![0], vec![1]])
    }

    #[test]
    fn zero_cocycle_gives_trivial_twist() {
        let seq = ShortExactSeq::cyclic(2, 2);
        let phi = Cocycle1::zero(z2(), seq.c.clone());
        let t = obstruction_twist(&phi, &seq).unwrap();
        assert!(t.twist.validate().is_ok());
        assert_eq!(t.twist.sigma.num_arrows(), 4);
        assert!(is_trivial(&t.twist).unwrap().is_some());
        assert!(lift_cocycle(&phi, &seq).is_some());
    }

    #[test]
    fn identity_on_z2_is_z4() {
        let seq = ShortExactSeq::cyclic(2, 2);
        let t = obstruction_twist(&identity_on_z2(), &seq).unwrap();
        let g = &t.twist.sigma;
        assert!(t.twist.validate().is_ok());
        assert_eq!(g.num_arrows(), 4);
        // (1, 1) generates a cyclic group of order 4
        let x = t.arrow(1, &[1]).unwrap();
        let x2 = g.compose(x, x).unwrap();
        let x3 = g.compose(x2, x).unwrap();
        assert_ne!(x2, 0);
        assert_eq!(g.compose(x3, x), Some(0));
        assert!(is_trivial(&t.twist).unwrap().is_none());
        assert!(lift_cocycle(&identity_on_z2(), &seq).is_none());
    }

    #[test]
    fn planted_twist_defect() {
        let seq = ShortExactSeq::cyclic(2, 2);
        let t = obstruction_twist(&identity_on_z2(), &seq).unwrap();
        let mut bad = t.twist.clone();
        bad.projection.swap(0, 2);
        assert!(!bad.validate().is_ok());
    }

    #[test]
    fn twist_from_extension_cocycle() {
        let g = z2();
        let a = FinAbGroup::cyclic(2);
        let sigma = Cocycle2::new(g.clone(), a.clone(), [((1, 1), vec![1])]).unwrap();
        let t = twist_from_2cocycle(&sigma).unwrap();
        assert!(t.validate().is_ok());
        assert!(is_trivial(&t).unwrap().is_none());
        let doubled = baer_sum(&t, &t).unwrap();
        assert!(doubled.validate().is_ok());
        assert!(is_trivial(&doubled).unwrap().is_some());
        let cob = Cocycle2::coboundary_of(g.clone(), a.clone(), &[vec![0], vec![1]]);
        assert!(is_trivial(&twist_from_2cocycle(&cob).unwrap()).unwrap().is_some());
        let seq = ShortExactSeq::cyclic(2, 2);
        let obstruction = obstruction_twist(&identity_on_z2(), &seq).unwrap();
        assert!(properly_isomorphic(&t, &obstruction.twist).unwrap());
        assert!(!properly_isomorphic(&t, &trivial_twist(g, a)).unwrap());
    }

    #[test]
    fn non_normalized_rejected() {
        let g = z2();
        let a = FinAbGroup::cyclic(2);
        let cob = Cocycle2::coboundary_of(g, a, &[vec![1], vec![1]]);
        assert!(matches!(twist_from_2cocycle(&cob), Err(TwistError::NotNormalized(_))));
    }

    #[test]
    fn exactness_small_cases() {
        let seq = ShortExactSeq::cyclic(2, 2);
        let r = delta_exactness_check(z2(), &seq, SampleMode::Exhaustive).unwrap();
        assert_eq!((r.checked, r.liftable, r.trivial), (2, 1, 1));
        assert!(r.passed());
        let z3 = Arc::new(from_group(&FinAbGroup::cyclic(3)));
        let r = delta_exactness_check(z3, &ShortExactSeq::cyclic(2, 3), SampleMode::Exhaustive)
            .unwrap();
        assert_eq!((r.checked, r.liftable), (3, 3));
        let pair = Arc::new(pair_groupoid(3).groupoid);
        let r = delta_exactness_check(pair, &seq, SampleMode::Exhaustive).unwrap();
        assert_eq!(r.liftable, r.checked);
        assert!(r.passed());
    }
}

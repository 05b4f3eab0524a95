//! The twist of the cover groupoid by an integral 2-cocycle, and the map
//! `ξ` onto the obstruction twist over `0 → ℤ → ℚ → ℚ/ℤ → 0`.

use std::collections::HashSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::abelian::{Circle, FinAbGroup, Integers, QmodZ, Rationals};
use crate::cech::cochain::Cochain;
use crate::cech::cover::CoverGroupoid;
use crate::cech::obstruct::obstruct_with_lift;
use crate::cocycle::Cocycle2;
use crate::error::CechError;
use crate::twist::{twist_from_2cocycle, Twist};

/// `(m, γ)(n, η) = (m + n + c(γ, η), γη)` over the cover groupoid with the
/// integer fiber kept symbolic; arrows are materialized only on request.
#[derive(Clone, Debug)]
pub struct SymbolicIntegerTwist {
    pub base: CoverGroupoid,
    pub star: Cochain<Integers>,
}

pub type IntegerArrow = (i64, usize);

impl SymbolicIntegerTwist {
    pub fn new(base: CoverGroupoid, star: Cochain<Integers>) -> Result<Self, CechError> {
        if star.degree() != 2 {
            return Err(CechError::DegreeOutOfRange(star.degree()));
        }
        if let Some((indices, point)) = star.normalization_failure() {
            return Err(CechError::NotNormalized { indices, point });
        }
        Ok(Self { base, star })
    }

    /// `c((x, i, j), (x, j, k)) = λ*_ijk(x)`.
    pub fn cocycle_value(&self, g: usize, h: usize) -> Option<i64> {
        let (x, i, j) = self.base.label(g);
        let (y, j2, k) = self.base.label(h);
        (x == y && j == j2).then(|| *self.star.at(&[i, j, k], x))
    }

    pub fn compose(&self, a: IntegerArrow, b: IntegerArrow) -> Option<IntegerArrow> {
        let c = self.cocycle_value(a.1, b.1)?;
        let g = self.base.groupoid.compose(a.1, b.1)?;
        Some((a.0 + b.0 + c, g))
    }

    /// `(m, (x, i, j))⁻¹ = (−m − λ*_iji(x), (x, j, i))`.
    pub fn inverse(&self, a: IntegerArrow) -> IntegerArrow {
        let (x, i, j) = self.base.label(a.1);
        let inv = self.base.groupoid.inverse(a.1);
        (-a.0 - *self.star.at(&[i, j, i], x), inv)
    }

    pub fn is_unit(&self, a: IntegerArrow) -> bool {
        a.0 == 0 && self.base.groupoid.is_unit(a.1)
    }

    /// All arrows with `|m| ≤ window`.
    pub fn window(&self, window: i64) -> Vec<IntegerArrow> {
        (-window..=window)
            .flat_map(|m| self.base.groupoid.arrows().map(move |g| (m, g)))
            .collect()
    }

    /// `max |λ*|`, which sizes the default truncation.
    pub fn max_abs(&self) -> i64 {
        self.star.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

/// The default modulus `2·max|λ*| + 3` for the `ℤ/N` pushout.
pub fn default_modulus(star: &Cochain<Integers>) -> i64 {
    2 * star.values.iter().map(|v| v.abs()).max().unwrap_or(0) + 3
}

/// `φ*((x, i, j), (x, j, k)) = λ*_ijk(x)` reduced mod `n`, and the twist it
/// defines.
pub fn groupoid_2cocycle_and_twist(
    star: &Cochain<Integers>,
    base: &CoverGroupoid,
    modulus: Option<i64>,
) -> Result<(Cocycle2<FinAbGroup>, Twist), CechError> {
    let sym = SymbolicIntegerTwist::new(base.clone(), star.clone())?;
    let n = modulus.unwrap_or_else(|| default_modulus(star));
    if n < 1 {
        return Err(CechError::Malformed(format!("truncation modulus {n} must be positive")));
    }
    let fiber = FinAbGroup::cyclic(n);
    let entries = base
        .groupoid
        .composable_pairs()
        .into_iter()
        .map(|(g, h)| {
            let v = sym.cocycle_value(g, h).expect("composable pairs share a point");
            ((g, h), vec![v.rem_euclid(n)])
        })
        .filter(|(_, v)| v[0] != 0);
    let cocycle = Cocycle2::new(base.groupoid.clone(), fiber, entries)?;
    let twist = twist_from_2cocycle(&cocycle)?;
    Ok((cocycle, twist))
}

/// Outcome of a windowed verification; `failures` keeps the first few.
#[derive(Clone, Debug, Default, Serialize)]
pub struct WindowReport {
    pub window: i64,
    pub arrows_checked: usize,
    pub pairs_checked: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

impl WindowReport {
    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < 10 {
            self.failures.push(msg);
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// An arrow `(γ, q)` of the obstruction twist over `ℤ → ℚ → ℚ/ℤ`, i.e.
/// `e(q) = λ(γ)`.
pub type RationalArrow = (usize, Ratio<i64>);

/// `ξ(n, γ) = (γ, λ̃(γ) + n)`, checked on the window `|n| ≤ window`:
/// it lands in `Σ_φ`, is multiplicative on every composable pair, preserves
/// units and inverses, is injective, and every arrow of `Σ_φ` whose rational
/// part lies within the window has a preimage.
pub fn xi_check(
    lambda: &Cochain<Circle>,
    lift: &Cochain<Rationals>,
    base: &CoverGroupoid,
    window: i64,
) -> Result<WindowReport, CechError> {
    let star = obstruct_with_lift(lambda, lift)?;
    let sym = SymbolicIntegerTwist::new(base.clone(), star)?;
    let g = &base.groupoid;
    let lam = |a: usize| {
        let (x, i, j) = base.label(a);
        *lambda.at(&[i, j], x)
    };
    let lifted = |a: usize| {
        let (x, i, j) = base.label(a);
        *lift.at(&[i, j], x)
    };
    let xi = |(n, a): IntegerArrow| -> RationalArrow { (a, lifted(a) + Ratio::from_integer(n)) };
    // Σ_φ ⊆ Γ × ℚ with the product of Γ × ℚ.
    let sigma_phi_mul = |(a, p): RationalArrow, (b, q): RationalArrow| g.compose(a, b).map(|c| (c, p + q));
    let in_sigma_phi = |(a, q): RationalArrow| QmodZ::from_ratio(q) == lam(a);

    let mut report = WindowReport {
        window,
        ..Default::default()
    };
    let arrows = sym.window(window);
    let mut images = HashSet::new();
    for &s in &arrows {
        report.arrows_checked += 1;
        let im = xi(s);
        if !in_sigma_phi(im) {
            report.fail(format!("xi{s:?} = {im:?} is not in the obstruction twist"));
        }
        if !images.insert(im) {
            report.fail(format!("xi is not injective at {s:?}"));
        }
        let inv = xi(sym.inverse(s));
        let expect = (g.inverse(im.0), -im.1);
        if inv != expect {
            report.fail(format!("xi does not preserve the inverse of {s:?}"));
        }
        if sym.is_unit(s) && im != (s.1, Ratio::from_integer(0)) {
            report.fail(format!("unit {s:?} maps to {im:?}"));
        }
    }
    for &s in &arrows {
        for &t in &arrows {
            let Some(st) = sym.compose(s, t) else { continue };
            report.pairs_checked += 1;
            let lhs = xi(st);
            let rhs = sigma_phi_mul(xi(s), xi(t));
            if Some(lhs) != rhs {
                report.fail(format!("xi({s:?} {t:?}) = {lhs:?} but the images compose to {rhs:?}"));
            }
        }
    }
    // Surjectivity onto the part of Σ_φ with |q| ≤ window: enumerate the
    // rationals with the right denominator and check each has a preimage.
    for a in g.arrows() {
        let l = lam(a);
        let d = l.denom();
        for k in (-window * d)..=(window * d) {
            let q = Ratio::new(k, d);
            if QmodZ::from_ratio(q) != l {
                continue;
            }
            let n = q - lifted(a);
            if !n.is_integer() {
                report.fail(format!("({a}, {q}) has no integral preimage"));
            } else if xi((n.to_integer(), a)) != (a, q) {
                report.fail(format!("({a}, {q}) is not hit"));
            }
        }
    }
    Ok(report)
}

/// For two lifts `λ̃' = λ̃ + n`, the map `(m, γ) ↦ (m − n(γ), γ)` between
/// the two twists, checked to be a bijective homomorphism on the window.
pub fn lift_independence_check(
    lambda: &Cochain<Circle>,
    lift: &Cochain<Rationals>,
    other: &Cochain<Rationals>,
    base: &CoverGroupoid,
    window: i64,
) -> Result<WindowReport, CechError> {
    let first = SymbolicIntegerTwist::new(base.clone(), obstruct_with_lift(lambda, lift)?)?;
    let second = SymbolicIntegerTwist::new(base.clone(), obstruct_with_lift(lambda, other)?)?;
    let shift = |a: usize| {
        let (x, i, j) = base.label(a);
        let d = other.at(&[i, j], x) - lift.at(&[i, j], x);
        d.to_integer()
    };
    let map = |(m, a): IntegerArrow| (m - shift(a), a);
    let unmap = |(m, a): IntegerArrow| (m + shift(a), a);
    let mut report = WindowReport {
        window,
        ..Default::default()
    };
    let arrows = first.window(window);
    for &s in &arrows {
        report.arrows_checked += 1;
        if unmap(map(s)) != s {
            report.fail(format!("not invertible at {s:?}"));
        }
        if map(first.inverse(s)) != second.inverse(map(s)) {
            report.fail(format!("inverse not preserved at {s:?}"));
        }
    }
    for &s in &arrows {
        for &t in &arrows {
            let Some(st) = first.compose(s, t) else { continue };
            report.pairs_checked += 1;
            if Some(map(st)) != second.compose(map(s), map(t)) {
                report.fail(format!("not multiplicative at ({s:?}, {t:?})"));
            }
        }
    }
    Ok(report)
}

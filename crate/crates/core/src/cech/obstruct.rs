//! From a circle-valued Čech 1-cocycle to its integral obstruction.

use num_rational::Ratio;

use crate::abelian::{Circle, Coefficients, Integers, QmodZ, Rationals};
use crate::cech::cochain::Cochain;
use crate::cech::cover::CoverGroupoid;
use crate::cocycle::Cocycle1;
use crate::error::CechError;

fn not_cocycle(e: (Vec<usize>, usize)) -> CechError {
    CechError::NotCechCocycle {
        indices: e.0,
        point: e.1,
    }
}

/// `φ((x, i, j)) = λ_ij(x)`, without checking the cocycle condition.
pub fn groupoid_values<K: Coefficients>(lambda: &Cochain<K>, g: &CoverGroupoid) -> Cocycle1<K> {
    assert_eq!(lambda.degree(), 1, "a 1-cochain is required");
    let values = g
        .groupoid
        .arrows()
        .map(|a| {
            let (x, i, j) = g.label(a);
            lambda.at(&[i, j], x).clone()
        })
        .collect();
    Cocycle1::new(g.groupoid.clone(), lambda.coeffs.clone(), values)
}

/// `φ((x, i, j)) = λ_ij(x)` for a Čech 1-cocycle `λ`.
pub fn cech_to_groupoid_cocycle<K: Coefficients>(
    lambda: &Cochain<K>,
    g: &CoverGroupoid,
) -> Result<Cocycle1<K>, CechError> {
    if lambda.degree() != 1 {
        return Err(CechError::DegreeOutOfRange(lambda.degree()));
    }
    if let Some(e) = lambda.cocycle_failure() {
        return Err(not_cocycle(e));
    }
    Ok(groupoid_values(lambda, g))
}

/// The canonical representative in `[0, 1)`.
pub fn canonical_lift(lambda: &Cochain<Circle>) -> Cochain<Rationals> {
    lambda.map(Rationals, QmodZ::lift)
}

/// `λ̃` and `λ* = d¹λ̃` for the canonical lift.
pub fn lift_and_obstruct(
    lambda: &Cochain<Circle>,
) -> Result<(Cochain<Rationals>, Cochain<Integers>), CechError> {
    let lift = canonical_lift(lambda);
    let star = obstruct_with_lift(lambda, &lift)?;
    Ok((lift, star))
}

/// `λ*_ijk = λ̃_jk − λ̃_ik + λ̃_ij` for a caller-chosen lift `λ̃` of `λ`.
pub fn obstruct_with_lift(
    lambda: &Cochain<Circle>,
    lift: &Cochain<Rationals>,
) -> Result<Cochain<Integers>, CechError> {
    if lambda.degree() != 1 || lift.degree() != 1 {
        return Err(CechError::DegreeOutOfRange(lambda.degree().max(lift.degree())));
    }
    if let Some(e) = lambda.cocycle_failure() {
        return Err(not_cocycle(e));
    }
    for ((t, x), (q, l)) in lift.shape.entries.iter().zip(lift.values.iter().zip(&lambda.values)) {
        if QmodZ::from_ratio(*q) != *l {
            return Err(CechError::InconsistentLift {
                indices: t.clone(),
                point: *x,
            });
        }
    }
    let d = lift.coboundary();
    let mut ints = Vec::with_capacity(d.values.len());
    for ((t, x), v) in d.shape.entries.iter().zip(&d.values) {
        if !v.is_integer() {
            // Only reachable if the lift and λ disagree, which was excluded.
            return Err(CechError::InconsistentLift {
                indices: t.clone(),
                point: *x,
            });
        }
        ints.push(v.to_integer());
    }
    Ok(Cochain {
        cover: d.cover,
        coeffs: Integers,
        shape: d.shape,
        values: ints,
    })
}

/// A lift differing from another by an integer 1-cochain.
pub fn shift_lift(lift: &Cochain<Rationals>, shift: &Cochain<Integers>) -> Cochain<Rationals> {
    let values = lift
        .values
        .iter()
        .zip(&shift.values)
        .map(|(q, n)| q + Ratio::from_integer(*n))
        .collect();
    Cochain {
        values,
        ..lift.clone()
    }
}

/// `a = c − d¹λ` with `λ_ii = c_iii` and `λ_ij = 0` otherwise; returns `a`
/// and the `λ` used.
pub fn normalize_2cocycle<K: Coefficients>(
    c: &Cochain<K>,
) -> Result<(Cochain<K>, Cochain<K>), CechError> {
    if c.degree() != 2 {
        return Err(CechError::DegreeOutOfRange(c.degree()));
    }
    if let Some(e) = c.cocycle_failure() {
        return Err(not_cocycle(e));
    }
    let k = c.coeffs.clone();
    let lambda = Cochain::from_fn(c.cover.clone(), k.clone(), 1, |t, x| {
        if t[0] == t[1] {
            c.at(&[t[0], t[0], t[0]], x).clone()
        } else {
            k.zero()
        }
    });
    let a = c.sub(&lambda.coboundary());
    debug_assert!(a.normalization_failure().is_none());
    Ok((a, lambda))
}

/// `λ_ij(x) = ν_j(x) − ν_i(x)` for per-set functions `ν_i` on `U_i`: the
/// coboundary shape that every circle-valued 1-cocycle takes pointwise.
pub fn cocycle_from_potentials(
    cover: &std::sync::Arc<crate::cech::Cover>,
    nu: impl Fn(usize, usize) -> QmodZ,
) -> Cochain<Circle> {
    Cochain::from_fn(cover.clone(), Circle, 1, |t, x| nu(t[1], x).sub(nu(t[0], x)))
}

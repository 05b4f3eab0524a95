use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::abelian::{pairing, FinAbGroup, QmodZ};
use crate::cocycle::Cocycle1;
use crate::error::AlgebraError;
use crate::star::element::AlgebraElement;
use crate::twist::{ObstructionTwist, Twist};

/// `e(q) = exp(2πi q)`, exact at the quarter turns so that order-2 and
/// order-4 characters produce no roundoff at all.
pub fn phase(q: QmodZ) -> Complex64 {
    let (n, d) = (q.numer(), q.denom());
    match (n, d) {
        (0, _) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        _ => Complex64::from_polar(1.0, TAU * n as f64 / d as f64),
    }
}

/// `α^φ_t(f)(γ) = e(⟨t, φ(γ)⟩) f(γ)` for a character `t` of the cocycle's
/// target.
pub fn alpha_action(
    phi: &Cocycle1<FinAbGroup>,
    t: &[i64],
    f: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    if *f.groupoid != *phi.groupoid {
        return Err(AlgebraError::GroupoidMismatch);
    }
    if t.len() != phi.target.rank() {
        return Err(AlgebraError::ContextMismatch(format!(
            "character has {} exponents, target has rank {}",
            t.len(),
            phi.target.rank()
        )));
    }
    let coeffs = f
        .coeffs
        .iter()
        .zip(&phi.values)
        .map(|(c, v)| c * phase(pairing(&phi.target, t, v)))
        .collect();
    Ok(AlgebraElement::from_coeffs(f.groupoid.clone(), coeffs))
}

fn check_sigma(twist: &Twist, f: &AlgebraElement) -> Result<(), AlgebraError> {
    if std::sync::Arc::ptr_eq(&f.groupoid, &twist.sigma) || *f.groupoid == *twist.sigma {
        Ok(())
    } else {
        Err(AlgebraError::GroupoidMismatch)
    }
}

fn check_base(twist: &Twist, g: &AlgebraElement) -> Result<(), AlgebraError> {
    if std::sync::Arc::ptr_eq(&g.groupoid, &twist.base) || *g.groupoid == *twist.base {
        Ok(())
    } else {
        Err(AlgebraError::GroupoidMismatch)
    }
}

/// The dual action on `C*(Σ_φ)`: `γ_t(f)(γ, b) = e(⟨t, b⟩) f(γ, b)`, `t ∈ B̂`.
pub fn gamma_dual_action(
    twist: &ObstructionTwist,
    t: &[i64],
    f: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    check_sigma(&twist.twist, f)?;
    let b = &twist.seq.b;
    if t.len() != b.rank() {
        return Err(AlgebraError::ContextMismatch(
            "character does not match the middle group".into(),
        ));
    }
    let chars: Vec<Complex64> = b.elements().map(|x| phase(pairing(b, t, &x))).collect();
    let coeffs = f
        .coeffs
        .iter()
        .zip(&twist.labels)
        .map(|(c, &(_, k))| c * chars[k])
        .collect();
    Ok(AlgebraElement::from_coeffs(f.groupoid.clone(), coeffs))
}

/// Push-forward along the projection: `ρ(f)(γ) = Σ_{π(σ)=γ} f(σ)`.
pub fn rho(twist: &Twist, f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    check_sigma(twist, f)?;
    let mut out = AlgebraElement::zero(twist.base.clone());
    for (s, c) in f.coeffs.iter().enumerate() {
        out.coeffs[twist.projection[s]] += c;
    }
    Ok(out)
}

/// How a function on the base is spread over each fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberWeight {
    /// Constant `1/|A|` on every fiber.
    Uniform,
    /// The indicator of the least-index arrow in each fiber.
    Transversal,
}

/// `f(σ) = g(π(σ)) w(σ)` with `Σ_{σ over γ} w(σ) = 1`, so `ρ(f) = g`.
pub fn section_lift(
    twist: &Twist,
    g: &AlgebraElement,
    weight: FiberWeight,
) -> Result<AlgebraElement, AlgebraError> {
    check_base(twist, g)?;
    let mut out = AlgebraElement::zero(twist.sigma.clone());
    match weight {
        FiberWeight::Uniform => {
            let w = 1.0 / twist.fiber.size() as f64;
            for s in twist.sigma.arrows() {
                out.coeffs[s] = g.coeffs[twist.projection[s]] * w;
            }
        }
        FiberWeight::Transversal => {
            let frame = twist.frame()?;
            for (gamma, &s) in frame.section.iter().enumerate() {
                out.coeffs[s] = g.coeffs[gamma];
            }
        }
    }
    Ok(out)
}

/// `(i(h)f)(σ) = Σ_a h(a) f(j(r(σ), −a) σ)`, with `h` indexed by the
/// elements of `A`.
pub fn central_multiplier(
    twist: &Twist,
    h: &[Complex64],
    f: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    check_sigma(twist, f)?;
    let a_grp = &twist.fiber;
    if h.len() != a_grp.size() {
        return Err(AlgebraError::ContextMismatch(format!(
            "multiplier has {} values, the fiber group has {} elements",
            h.len(),
            a_grp.size()
        )));
    }
    let mut out = AlgebraElement::zero(f.groupoid.clone());
    for (a, &ha) in h.iter().enumerate() {
        if ha == Complex64::new(0.0, 0.0) {
            continue;
        }
        let neg = a_grp.index_of(&a_grp.neg(&a_grp.element(a)));
        for s in twist.sigma.arrows() {
            let moved = twist.act(neg, s).expect("fiber action is defined everywhere");
            out.coeffs[s] += ha * f.coeffs[moved];
        }
    }
    Ok(out)
}

/// The unitary multiplier `u_a = i(δ_a)`.
pub fn unitary_multiplier(
    twist: &Twist,
    a: usize,
    f: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    let mut h = vec![Complex64::new(0.0, 0.0); twist.fiber.size()];
    h[a] = Complex64::new(1.0, 0.0);
    central_multiplier(twist, &h, f)
}

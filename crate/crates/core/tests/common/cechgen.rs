//! Random cochains and hand-rolled Čech identities.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;
use rand::Rng;
use twistlab_core::abelian::{Circle, Integers, QmodZ, Rationals};
use twistlab_core::cech::{
    cocycle_from_potentials, cohomology_class, lift_and_obstruct, Cochain, CohomologyClass, Cover,
    CoverGroupoid,
};
use twistlab_core::groupoid::UnitSubset;
use twistlab_core::star::{left_regular_matrix, operator_norm, phase, AlgebraElement};

pub fn covers() -> Vec<Arc<Cover>> {
    vec![Arc::new(Cover::tetrahedral()), Arc::new(Cover::circle_three_arcs())]
}

const DENOMINATORS: [i64; 6] = [2, 3, 4, 5, 6, 12];

pub fn random_qmodz<R: Rng>(rng: &mut R) -> QmodZ {
    let d = DENOMINATORS[rng.random_range(0..DENOMINATORS.len())];
    QmodZ::new(rng.random_range(0..d), d)
}

/// Every circle-valued 1-cocycle is pointwise `ν_j − ν_i`; drawing `ν`
/// at random therefore draws from all cocycles.
pub fn random_circle_cocycle<R: Rng>(cover: &Arc<Cover>, rng: &mut R) -> Cochain<Circle> {
    let nu: Vec<Vec<QmodZ>> = (0..cover.num_sets())
        .map(|_| (0..cover.num_points()).map(|_| random_qmodz(rng)).collect())
        .collect();
    cocycle_from_potentials(cover, |i, x| nu[i][x])
}

pub fn random_rationals<R: Rng>(cover: &Arc<Cover>, degree: usize, rng: &mut R) -> Cochain<Rationals> {
    Cochain::from_fn(cover.clone(), Rationals, degree, |_, _| {
        Ratio::new(rng.random_range(-50..50), rng.random_range(1..13))
    })
}

/// Integer cochain whose value depends on the index tuple only, zero on
/// constant tuples so that shifting a lift by it keeps `λ̃_ii = 0`.
pub fn locally_constant_integers<R: Rng>(cover: &Arc<Cover>, degree: usize, rng: &mut R) -> Cochain<Integers> {
    let mut by_tuple: HashMap<Vec<usize>, i64> = HashMap::new();
    Cochain::from_fn(cover.clone(), Integers, degree, |t, _| {
        if t.iter().all(|&i| i == t[0]) {
            return 0;
        }
        *by_tuple.entry(t.to_vec()).or_insert_with(|| rng.random_range(-3..4))
    })
}

/// `(dc)(i₀…iₙ₊₁) = Σ_k (−1)^k c(i₀…îₖ…iₙ₊₁)`, written out directly.
pub fn coboundary_by_hand(c: &Cochain<Rationals>) -> Cochain<Rationals> {
    Cochain::from_fn(c.cover.clone(), Rationals, c.degree() + 1, |t, x| {
        (0..t.len())
            .map(|k| {
                let face: Vec<usize> = t.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &v)| v).collect();
                let v = *c.at(&face, x);
                if k % 2 == 0 { v } else { -v }
            })
            .sum()
    })
}

/// Failures of `λ*_jkl − λ*_ikl + λ*_ijl − λ*_ijk = 0` over all index
/// quadruples and points.
pub fn alternating_identity_failures(star: &Cochain<Integers>) -> usize {
    let cover = &star.cover;
    let n = cover.num_sets();
    let mut failures = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for x in cover.intersection(&[i, j, k, l]) {
                        let v = star.at(&[j, k, l], x) - star.at(&[i, k, l], x) + star.at(&[i, j, l], x)
                            - star.at(&[i, j, k], x);
                        failures += (v != 0) as usize;
                    }
                }
            }
        }
    }
    failures
}

/// `λ*_ijk = λ̃_jk − λ̃_ik + λ̃_ij` entry by entry.
pub fn matches_definition(lift: &Cochain<Rationals>, star: &Cochain<Integers>) -> bool {
    star.shape.entries.iter().zip(&star.values).all(|((t, x), &v)| {
        let (i, j, k) = (t[0], t[1], t[2]);
        lift.at(&[j, k], *x) - lift.at(&[i, k], *x) + lift.at(&[i, j], *x) == Ratio::from_integer(v)
    })
}

/// Draws `μ ∈ C⁰(ℚ/ℤ)`, constant on each set, and keeps the perturbations
/// `λ + d⁰μ` whose canonical lift differs from `λ̃ + d⁰μ̃` by a locally
/// constant integer cochain; those are the gauge changes the nerve can
/// see. Each kept obstruction class goes to `check`. Returns accepted and
/// rejected counts.
pub fn gauge_sweep<R: Rng>(
    lam: &Cochain<Circle>,
    want: usize,
    rng: &mut R,
    mut check: impl FnMut(&CohomologyClass),
) -> (usize, usize) {
    let cover = &lam.cover;
    let (lift, _) = lift_and_obstruct(lam).expect("λ is a cocycle");
    let (mut accepted, mut rejected) = (0, 0);
    while accepted < want && rejected < 100_000 {
        let mu: Vec<QmodZ> = (0..cover.num_sets()).map(|_| random_qmodz(rng)).collect();
        let moved = lam.add(&cocycle_from_potentials(cover, |i, _| mu[i]));
        let (moved_lift, star) = lift_and_obstruct(&moved).expect("perturbation keeps the cocycle identity");
        let offsets = Cochain::from_fn(cover.clone(), Rationals, 1, |t, x| {
            moved_lift.at(t, x) - lift.at(t, x) - (mu[t[1]].lift() - mu[t[0]].lift())
        });
        let locally_constant = (0..cover.num_sets()).all(|i| {
            (0..cover.num_sets()).all(|j| {
                let pts = cover.intersection(&[i, j]);
                pts.iter().all(|&x| offsets.at(&[i, j], x) == offsets.at(&[i, j], pts[0]))
            })
        });
        if !locally_constant {
            rejected += 1;
            continue;
        }
        match cohomology_class(&star) {
            Ok(class) => {
                check(&class);
                accepted += 1;
            }
            Err(e) => panic!("locally constant offsets give a readable class: {e}"),
        }
    }
    (accepted, rejected)
}

/// `max ‖L(α₁(δ_a)) − L(w) L(δ_a) L(w)†‖` over sets and basis arrows, with
/// everything done on left regular matrices.
pub fn matrix_residual(lam: &Cochain<Circle>, base: &CoverGroupoid) -> f64 {
    let cover = &base.cover;
    let g = &base.groupoid;
    let mut worst = 0.0f64;
    for i in 0..cover.num_sets() {
        let units = g.units().filter(|&u| cover.contains(i, base.label(u).0));
        let red = g.reduce_to_units(&UnitSubset::new(g, units).unwrap()).unwrap();
        let ideal = Arc::new(red.groupoid);
        let mut w = AlgebraElement::zero(ideal.clone());
        for u in ideal.units() {
            let (x, k, _) = base.label(red.parent_arrow[u]);
            w.coeffs[u] = phase(*lam.at(&[k, i], x));
        }
        let lw = left_regular_matrix(&w);
        for a in ideal.arrows() {
            let (x, j, k) = base.label(red.parent_arrow[a]);
            let f = AlgebraElement::delta(ideal.clone(), a);
            let alpha = left_regular_matrix(&f.scale(phase(*lam.at(&[j, k], x))));
            let inner = &lw * left_regular_matrix(&f) * lw.adjoint();
            worst = worst.max(operator_norm(&(alpha - inner)));
        }
    }
    worst
}

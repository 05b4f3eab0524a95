//! Instances shared by the integration suites.
#![allow(dead_code)]

pub mod cechgen;
pub mod defects;
pub mod oracles;
pub mod systems;

use std::sync::Arc;

use rand::SeedableRng;

use twistlab_core::abelian::{Circle, FinAbGroup, QmodZ, ShortExactSeq};
use twistlab_core::cech::{cocycle_from_potentials, cover_groupoid, Cochain, Cover, CoverGroupoid};
use twistlab_core::cocycle::Cocycle1;
use twistlab_core::groupoid::{from_group, pair_groupoid, product_with_group, FiniteGroupoid};
use twistlab_core::star::ObstructionContext;
use twistlab_core::twist::ObstructionTwist;

pub fn tetrahedral() -> (Arc<Cover>, CoverGroupoid) {
    let c = Arc::new(Cover::tetrahedral());
    let g = cover_groupoid(&c);
    (c, g)
}

/// `λ_ij(x) = ν_j(x) − ν_i(x)`, where at each point the three sets
/// containing it (in index order) get potentials `0, 2/3, 1/3` at `t123`
/// and `0, 1/3, 2/3` elsewhere. The wrap-around pattern differs at exactly
/// one point, which is what makes the obstruction a generator.
pub fn tetrahedral_generator(cover: &Arc<Cover>) -> Cochain<Circle> {
    cocycle_from_potentials(cover, |i, x| {
        let here: Vec<usize> = (0..cover.num_sets()).filter(|&k| cover.contains(k, x)).collect();
        let slot = here.iter().position(|&k| k == i).expect("set contains the point") as i64;
        let pattern = if x == 0 { [0, 2, 1] } else { [0, 1, 2] };
        QmodZ::new(pattern[slot as usize], 3)
    })
}

pub fn z2_identity() -> (Cocycle1<FinAbGroup>, ShortExactSeq) {
    let g = Arc::new(from_group(&FinAbGroup::cyclic(2)));
    let phi = Cocycle1::new(g, FinAbGroup::cyclic(2), vec![vec![0], vec![1]]);
    (phi, ShortExactSeq::cyclic(2, 2))
}

fn context(phi: &Cocycle1<FinAbGroup>, seq: &ShortExactSeq) -> ObstructionContext {
    ObstructionContext::new(ObstructionTwist::new(phi, seq).expect("valid context"))
}

/// `φ(i, j) = μ_i − μ_j` on the pair groupoid with `μ = (0, 1)`, into `ℤ/2`.
pub fn pair_context() -> ObstructionContext {
    let p = pair_groupoid(2);
    let values = p.labels.iter().map(|&(i, j)| vec![(i as i64 - j as i64).rem_euclid(2)]).collect();
    let phi = Cocycle1::new(Arc::new(p.groupoid.clone()), FinAbGroup::cyclic(2), values);
    context(&phi, &ShortExactSeq::cyclic(2, 2))
}

/// 24 arrows: pair groupoid on two units times `ℤ/6`, with
/// `φ((i, j), k) = 2k + μ_i − μ_j` into `ℤ/4`, over `ℤ/2 → ℤ/8 → ℤ/4`.
/// The `ℤ/6` part cannot lift to `ℤ/8`, so the twist is nontrivial.
pub fn context_24() -> ObstructionContext {
    let p = pair_groupoid(2);
    let z6 = FinAbGroup::cyclic(6);
    let prod = product_with_group(&p.groupoid, &z6);
    let values = prod
        .labels
        .iter()
        .map(|&(a, k)| {
            let (i, j) = *p.label(a);
            vec![(2 * k as i64 + i as i64 - j as i64).rem_euclid(4)]
        })
        .collect();
    let phi = Cocycle1::new(Arc::new(prod.groupoid.clone()), FinAbGroup::cyclic(4), values);
    context(&phi, &ShortExactSeq::cyclic(2, 4))
}

pub fn z3_zero_context() -> ObstructionContext {
    let g = Arc::new(from_group(&FinAbGroup::cyclic(3)));
    let phi = Cocycle1::zero(g, FinAbGroup::cyclic(3));
    context(&phi, &ShortExactSeq::cyclic(3, 3))
}

pub fn z2_context() -> ObstructionContext {
    let (phi, seq) = z2_identity();
    context(&phi, &seq)
}

/// The grid of base groupoids used by the lifting and exactness sweeps.
pub fn sweep_bases() -> Vec<(&'static str, Arc<FiniteGroupoid>)> {
    vec![
        ("Z/2", Arc::new(from_group(&FinAbGroup::cyclic(2)))),
        ("Z/3", Arc::new(from_group(&FinAbGroup::cyclic(3)))),
        ("pair(3)", Arc::new(pair_groupoid(3).groupoid.clone())),
        ("tetrahedral cover", tetrahedral().1.groupoid),
    ]
}

pub fn sweep_sequences() -> Vec<(&'static str, ShortExactSeq)> {
    vec![
        ("Z/2 -> Z/4 -> Z/2", ShortExactSeq::cyclic(2, 2)),
        ("Z/2 -> Z/6 -> Z/3", ShortExactSeq::cyclic(2, 3)),
        ("Z/3 -> Z/9 -> Z/3", ShortExactSeq::cyclic(3, 3)),
    ]
}

/// Outputs of every constructor, each with its validation report.
pub fn constructor_outputs() -> Vec<(String, twistlab_core::ValidationReport)> {
    use twistlab_core::cocycle::Cocycle2;
    use twistlab_core::groupoid::{disjoint_union, UnitSubset};
    use twistlab_core::twist::twist_from_2cocycle;

    let mut out = Vec::new();
    let z2 = FinAbGroup::cyclic(2);
    let pair3 = pair_groupoid(3).groupoid;
    for (name, g) in sweep_bases() {
        out.push((name.to_string(), g.validate()));
        for n in [2, 3, 4] {
            let p = product_with_group(&g, &FinAbGroup::cyclic(n));
            out.push((format!("{name} x Z/{n}"), p.groupoid.validate()));
        }
    }
    let v4 = FinAbGroup::from_cyclic_orders(vec![2, 2]).unwrap();
    out.push(("pair(3) x Z/2+Z/2".into(), product_with_group(&pair3, &v4).groupoid.validate()));

    let two = disjoint_union(&from_group(&z2), &pair3).groupoid;
    out.push(("Z/2 + pair(3)".into(), two.validate()));
    let first = UnitSubset::new(&two, [0]).unwrap();
    out.push(("first component".into(), two.reduce_to_units(&first).unwrap().groupoid.validate()));
    let second = UnitSubset::new(&two, [1, 2, 3]).unwrap();
    out.push(("second component".into(), two.reduce_to_units(&second).unwrap().groupoid.validate()));

    let (cover, cg) = tetrahedral();
    for i in 0..cover.num_sets() {
        let units: Vec<usize> =
            cg.groupoid.units().filter(|&u| cover.contains(i, cg.label(u).0)).collect();
        let v = UnitSubset::new(&cg.groupoid, units).unwrap();
        let r = cg.groupoid.reduce_to_units(&v).unwrap();
        out.push((format!("cover groupoid reduced to set {i}"), r.groupoid.validate()));
    }
    let circle = Arc::new(Cover::circle_three_arcs());
    out.push(("circle cover groupoid".into(), cover_groupoid(&circle).groupoid.validate()));

    for ctx in [z2_context(), pair_context(), z3_zero_context(), context_24()] {
        out.push((format!("obstruction twist, {} arrows", ctx.sigma().num_arrows()), ctx.twist.twist.validate()));
    }
    for (gname, g) in sweep_bases() {
        for (sname, seq) in sweep_sequences() {
            let space = twistlab_core::cocycle::CocycleSpace::new(g.clone(), seq.c.clone());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..3 {
                let phi = space.sample(&mut rng);
                let t = ObstructionTwist::new(&phi, &seq).unwrap();
                out.push((format!("Sigma_phi over {gname}, {sname}"), t.twist.validate()));
            }
        }
    }

    let zg = Arc::new(from_group(&z2));
    let ext = Cocycle2::new(zg.clone(), z2.clone(), [((1, 1), vec![1])]).unwrap();
    out.push(("Z/4 from a 2-cocycle".into(), twist_from_2cocycle(&ext).unwrap().validate()));
    let pg = Arc::new(pair3.clone());
    let b: Vec<Vec<i64>> = pg.arrows().map(|x| vec![(x as i64 * 5) % 3]).collect();
    let cob = Cocycle2::coboundary_of(pg.clone(), FinAbGroup::cyclic(3), &b);
    let cob = normalized(&cob);
    out.push(("pair(3) twisted by a coboundary".into(), twist_from_2cocycle(&cob).unwrap().validate()));
    out
}

/// Removes the unit-pair values of a 2-cocycle of the form `d b` by
/// subtracting `d` of the values `b` takes on units.
fn normalized(c: &twistlab_core::cocycle::Cocycle2<FinAbGroup>) -> twistlab_core::cocycle::Cocycle2<FinAbGroup> {
    use twistlab_core::cocycle::Cocycle2;
    let g = c.groupoid.clone();
    let t = c.target.clone();
    // c(u, u) = b(u) for a coboundary; push it off with the constant-on-
    // range correction x(γ) = c(r(γ), r(γ)).
    let fix: Vec<Vec<i64>> = g.arrows().map(|x| c.value(g.range(x), g.range(x)).clone()).collect();
    let d = Cocycle2::coboundary_of(g.clone(), t.clone(), &fix);
    let entries: Vec<_> = c.entries().map(|(&(a, b), v)| ((a, b), t.sub(v, d.value(a, b)))).collect();
    Cocycle2::new(g, t, entries).unwrap()
}

//! Deliberately broken structures, five per axiom. Each one is paired with
//! the rule its validator is expected to cite.

use std::sync::Arc;

use twistlab_core::abelian::{FinAbGroup, GroupHom, IntMatrix, ShortExactSeq};
use twistlab_core::cocycle::{Cocycle1, Cocycle2};
use twistlab_core::groupoid::{
    from_group, from_group_table, pair_groupoid, product_with_group, FiniteGroupoid,
};
use twistlab_core::twist::{is_trivial, trivial_twist, verify_section, ObstructionTwist, Twist};
use twistlab_core::{Rule, ValidationReport};

pub struct Planted {
    pub rule: Rule,
    pub label: String,
    pub report: ValidationReport,
}

/// Raw tables of a groupoid, editable and reassembled without checks
/// beyond shape.
#[derive(Clone)]
struct Tables {
    units: usize,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    triples: Vec<(usize, usize, usize)>,
}

impl Tables {
    fn of(g: &FiniteGroupoid) -> Self {
        Self {
            units: g.num_units(),
            source: g.arrows().map(|x| g.source(x)).collect(),
            range: g.arrows().map(|x| g.range(x)).collect(),
            inverse: g.arrows().map(|x| g.inverse(x)).collect(),
            triples: g.composition_triples(),
        }
    }

    fn set_composite(&mut self, a: usize, b: usize, c: usize) {
        let t = self.triples.iter_mut().find(|t| t.0 == a && t.1 == b).expect("composable");
        t.2 = c;
    }

    fn drop_pair(&mut self, a: usize, b: usize) {
        self.triples.retain(|t| !(t.0 == a && t.1 == b));
    }

    fn validate(&self) -> ValidationReport {
        FiniteGroupoid::from_tables(
            self.units,
            self.source.clone(),
            self.range.clone(),
            self.inverse.clone(),
            &self.triples,
        )
        .expect("mutation keeps shapes valid")
        .validate()
    }
}

/// Another arrow with the same source and range as `g`.
fn parallel(g: &FiniteGroupoid, x: usize) -> usize {
    g.arrows()
        .find(|&y| y != x && g.source(y) == g.source(x) && g.range(y) == g.range(x))
        .expect("hom-sets have more than one arrow")
}

fn groupoid_defects(out: &mut Vec<Planted>) {
    // Pair groupoid on two units times ℤ/3: 12 arrows, every hom-set has
    // three arrows, and half of all pairs are not composable.
    let g = product_with_group(&pair_groupoid(2).groupoid, &FinAbGroup::cyclic(3)).groupoid;
    let base = Tables::of(&g);
    let non_units: Vec<usize> = g.arrows().filter(|&x| !g.is_unit(x)).collect();
    let pairs: Vec<(usize, usize)> = g
        .composable_pairs()
        .into_iter()
        .filter(|&(a, b)| !g.is_unit(a) && !g.is_unit(b))
        .collect();
    let mut push = |rule, label: String, t: &Tables| {
        out.push(Planted { rule, label, report: t.validate() })
    };

    for &(a, b) in pairs.iter().step_by(3).take(3) {
        let mut t = base.clone();
        t.drop_pair(a, b);
        push(Rule::ComposableDomain, format!("composite of ({a}, {b}) removed"), &t);
    }
    let loose: Vec<(usize, usize)> = g
        .arrows()
        .flat_map(|a| g.arrows().map(move |b| (a, b)))
        .filter(|&(a, b)| g.compose(a, b).is_none())
        .collect();
    for &(a, b) in loose.iter().step_by(7).take(2) {
        let mut t = base.clone();
        t.triples.push((a, b, a));
        push(Rule::ComposableDomain, format!("non-composable ({a}, {b}) given a composite"), &t);
    }

    for &(a, b) in pairs.iter().step_by(4).take(5) {
        let mut t = base.clone();
        let c = g.compose(a, b).unwrap();
        t.set_composite(a, b, parallel(&g, c));
        push(Rule::Associativity, format!("({a}, {b}) redirected to a parallel arrow"), &t);
    }

    for &x in non_units.iter().take(5) {
        let mut t = base.clone();
        let u = g.range(x);
        t.set_composite(u, x, parallel(&g, x));
        push(Rule::UnitIdentity, format!("unit {u} moves arrow {x}"), &t);
    }

    for &x in non_units.iter().skip(1).take(4) {
        let mut t = base.clone();
        t.inverse[x] = parallel(&g, g.inverse(x));
        push(Rule::InverseCancellation, format!("inverse of {x} replaced by a parallel arrow"), &t);
    }
    // The textbook case: on the pair groupoid, (1, 2) declared its own inverse.
    let pair = pair_groupoid(2);
    let mut t = Tables::of(&pair.groupoid);
    let x = pair.index(&(0, 1)).unwrap();
    t.inverse[x] = x;
    push(Rule::InverseCancellation, "pair groupoid arrow declared self-inverse".into(), &t);

    for &x in non_units.iter().filter(|&&x| g.source(x) != g.range(x)).take(5) {
        let mut t = base.clone();
        // A loop at the range has the wrong endpoints for an inverse.
        t.inverse[x] = g.range(x);
        push(Rule::InverseRange, format!("inverse of {x} sent to a unit"), &t);
    }
}

fn cocycle_defects(out: &mut Vec<Planted>) {
    let z3 = FinAbGroup::cyclic(3);
    let g = Arc::new(product_with_group(&pair_groupoid(2).groupoid, &FinAbGroup::cyclic(3)).groupoid);
    let zero = Cocycle1::zero(g.clone(), z3.clone());
    for x in [0, 3, 5, 8, 11] {
        let mut c = zero.clone();
        c.values[x] = vec![1];
        out.push(Planted {
            rule: Rule::CocycleIdentity,
            label: format!("1-cocycle bumped at arrow {x}"),
            report: c.is_cocycle1(),
        });
    }

    let pairs: Vec<(usize, usize)> = g
        .composable_pairs()
        .into_iter()
        .filter(|&(a, b)| !g.is_unit(a) && !g.is_unit(b))
        .collect();
    for &(a, b) in pairs.iter().step_by(5).take(5) {
        let c = Cocycle2::new(g.clone(), z3.clone(), [((a, b), vec![1])]).unwrap();
        out.push(Planted {
            rule: Rule::CocycleIdentity,
            label: format!("2-cocycle bumped at ({a}, {b})"),
            report: c.is_cocycle2(),
        });
    }

    let units: Vec<(usize, usize)> = g
        .composable_pairs()
        .into_iter()
        .filter(|&(a, b)| g.is_unit(a) || g.is_unit(b))
        .collect();
    for &(a, b) in units.iter().step_by(3).take(5) {
        let c = Cocycle2::new(g.clone(), z3.clone(), [((a, b), vec![2])]).unwrap();
        out.push(Planted {
            rule: Rule::Normalization,
            label: format!("2-cocycle nonzero at unit pair ({a}, {b})"),
            report: c.check_normalized(),
        });
    }
}

fn hom(domain: &FinAbGroup, codomain: &FinAbGroup, rows: &[i64]) -> GroupHom {
    let m = IntMatrix::from_row_slice(codomain.rank(), domain.rank(), rows);
    GroupHom::new(domain.clone(), codomain.clone(), m).expect("well-defined hom")
}

fn sequence_defects(out: &mut Vec<Planted>) {
    let cyc = FinAbGroup::cyclic;
    let mut push = |rule, label: &str, i: GroupHom, p: GroupHom| {
        let seq = ShortExactSeq::new(i, p).unwrap();
        out.push(Planted { rule, label: label.into(), report: seq.check_exact() });
    };
    // Injectivity: i kills something.
    push(Rule::Injectivity, "Z/2 ->0 Z/4", hom(&cyc(2), &cyc(4), &[0]), hom(&cyc(4), &cyc(2), &[1]));
    push(Rule::Injectivity, "Z/4 ->2 Z/8", hom(&cyc(4), &cyc(8), &[4]), hom(&cyc(8), &cyc(4), &[1]));
    push(Rule::Injectivity, "Z/3 ->0 Z/9", hom(&cyc(3), &cyc(9), &[0]), hom(&cyc(9), &cyc(3), &[1]));
    push(Rule::Injectivity, "Z/6 ->3 Z/6", hom(&cyc(6), &cyc(6), &[3]), hom(&cyc(6), &cyc(3), &[1]));
    push(Rule::Injectivity, "Z/2 ->0 Z/6", hom(&cyc(2), &cyc(6), &[0]), hom(&cyc(6), &cyc(3), &[1]));
    // Surjectivity: p misses something.
    push(Rule::Surjectivity, "Z/4 ->0 Z/2", hom(&cyc(2), &cyc(4), &[2]), hom(&cyc(4), &cyc(2), &[0]));
    push(Rule::Surjectivity, "Z/4 ->2 Z/4", hom(&cyc(2), &cyc(4), &[2]), hom(&cyc(4), &cyc(4), &[2]));
    push(Rule::Surjectivity, "Z/6 ->3 Z/6", hom(&cyc(2), &cyc(6), &[3]), hom(&cyc(6), &cyc(6), &[3]));
    push(Rule::Surjectivity, "Z/9 ->0 Z/3", hom(&cyc(3), &cyc(9), &[3]), hom(&cyc(9), &cyc(3), &[0]));
    push(Rule::Surjectivity, "Z/8 ->2 Z/4", hom(&cyc(2), &cyc(8), &[4]), hom(&cyc(8), &cyc(4), &[2]));
    // Image and kernel disagree.
    let v4 = FinAbGroup::from_cyclic_orders(vec![2, 2]).unwrap();
    push(Rule::ImageEqualsKernel, "Z/2 -> Z/4 -> Z/4 identity", hom(&cyc(2), &cyc(4), &[2]), hom(&cyc(4), &cyc(4), &[1]));
    push(Rule::ImageEqualsKernel, "p kills the wrong factor", hom(&cyc(2), &v4, &[1, 0]), hom(&v4, &cyc(2), &[1, 0]));
    push(Rule::ImageEqualsKernel, "Z/3 -> Z/9 -> Z/9 identity", hom(&cyc(3), &cyc(9), &[3]), hom(&cyc(9), &cyc(9), &[1]));
    push(Rule::ImageEqualsKernel, "Z/2 -> Z/8 -> Z/2", hom(&cyc(2), &cyc(8), &[4]), hom(&cyc(8), &cyc(2), &[1]));
    push(Rule::ImageEqualsKernel, "Z/2 -> Z/6 -> Z/6", hom(&cyc(2), &cyc(6), &[3]), hom(&cyc(6), &cyc(6), &[1]));
}

/// `D_n` as an extension of `ℤ/2` by the rotations `ℤ/n`: a valid exact
/// sequence of groups whose kernel is not central.
pub fn dihedral_twist(n: usize) -> Twist {
    let idx = |k: usize, e: usize| e * n + k;
    let table: Vec<Vec<usize>> = (0..2 * n)
        .map(|x| {
            let (k1, e1) = (x % n, x / n);
            (0..2 * n)
                .map(|y| {
                    let (k2, e2) = (y % n, y / n);
                    let k = if e1 == 0 { k1 + k2 } else { k1 + n - k2 };
                    idx(k % n, e1 ^ e2)
                })
                .collect()
        })
        .collect();
    Twist {
        sigma: Arc::new(from_group_table(&table).unwrap()),
        base: Arc::new(from_group(&FinAbGroup::cyclic(2))),
        fiber: FinAbGroup::cyclic(n as i64),
        inclusion: vec![(0..n).collect()],
        projection: (0..2 * n).map(|x| x / n).collect(),
    }
}

fn twist_defects(out: &mut Vec<Planted>) {
    // ℤ/3 → ℤ/9 → ℤ/3 over the group ℤ/3: Σ_φ for φ = id is ℤ/9.
    let g = Arc::new(from_group(&FinAbGroup::cyclic(3)));
    let phi = Cocycle1::new(g, FinAbGroup::cyclic(3), vec![vec![0], vec![1], vec![2]]);
    let cyclic = ObstructionTwist::new(&phi, &ShortExactSeq::cyclic(3, 3)).unwrap().twist;
    let pair = common_pair_twist();
    let bases = [("Z/9 over Z/3", &cyclic), ("pair groupoid twist", &pair)];
    let mut push = |rule, label: String, t: Twist| {
        out.push(Planted { rule, label, report: t.validate() })
    };

    for (k, (name, t)) in bases.iter().cycle().take(5).enumerate() {
        let mut m = (*t).clone();
        let u = k % m.inclusion.len();
        let a = 1 + k % (m.fiber.size() - 1);
        m.inclusion[u][a] = m.inclusion[u][0];
        push(Rule::InclusionInjective, format!("{name}: j({u}, {a}) = j({u}, 0)"), m);
    }

    for (k, (name, t)) in bases.iter().cycle().take(5).enumerate() {
        let mut m = (*t).clone();
        let u = k % m.inclusion.len();
        let a = 1 + k % (m.fiber.size() - 1);
        let off = m.sigma.arrows().find(|&s| m.projection[s] != u && !m.inclusion.iter().flatten().any(|&x| x == s)).unwrap();
        m.inclusion[u][a] = off;
        push(Rule::InclusionIntoIsotropy, format!("{name}: j({u}, {a}) leaves the isotropy"), m);
    }

    // ℤ/9 with A = {0, 3, 6}: j(0, a) moved to another arrow of the isotropy
    // that still projects to the unit is impossible, so homomorphism breaks
    // through j(0, 0) no longer being a unit, or through reordering the
    // fiber of a ℤ/4 twist.
    {
        let mut m = cyclic.clone();
        m.inclusion[0].swap(0, 1);
        push(Rule::InclusionHomomorphism, "Z/9: j(0, 0) swapped with j(0, 1)".into(), m);
        let mut m = pair.clone();
        m.inclusion[1].swap(0, 1);
        push(Rule::InclusionHomomorphism, "pair twist: j(1, 0) swapped with j(1, 1)".into(), m);
        let z4 = quartic_twist();
        for (a, b) in [(1, 2), (2, 3), (0, 3)] {
            let mut m = z4.clone();
            m.inclusion[0].swap(a, b);
            push(Rule::InclusionHomomorphism, format!("Z/4 fiber: j(0, {a}) and j(0, {b}) swapped"), m);
        }
    }

    for (k, (name, t)) in bases.iter().cycle().take(5).enumerate() {
        let mut m = (*t).clone();
        // Everything over one non-unit base arrow is reassigned to another.
        let non_units: Vec<usize> = m.base.arrows().filter(|&x| !m.base.is_unit(x)).collect();
        let g = non_units[k % non_units.len()];
        let target = non_units[(k + 1) % non_units.len()];
        for p in m.projection.iter_mut() {
            if *p == g {
                *p = target;
            }
        }
        push(Rule::ProjectionSurjective, format!("{name}: nothing projects to {g}"), m);
    }

    for (k, (name, t)) in bases.iter().cycle().take(5).enumerate() {
        let mut m = (*t).clone();
        let s = m.sigma.arrows().filter(|&s| !m.sigma.is_unit(s)).nth(k).unwrap();
        let g = m.projection[s];
        let other = m.base.arrows().find(|&x| x != g && !m.base.is_unit(x)).unwrap();
        m.projection[s] = other;
        push(Rule::ProjectionHomomorphism, format!("{name}: arrow {s} projects to {other}"), m);
    }

    for (k, (name, t)) in bases.iter().cycle().take(5).enumerate() {
        let mut m = (*t).clone();
        let u = k % m.sigma.num_units();
        let g = m.base.arrows().find(|&x| !m.base.is_unit(x)).unwrap();
        m.projection[u] = g;
        push(Rule::ProjectionOnUnits, format!("{name}: unit {u} projects to {g}"), m);
    }

    for n in 3..8 {
        push(Rule::Centrality, format!("dihedral group of order {}", 2 * n), dihedral_twist(n));
    }

    for (k, (name, t)) in bases.iter().cycle().take(5).enumerate() {
        let mut m = (*t).clone();
        // One arrow migrates to a different fiber: one fiber is too small,
        // another too large.
        let s = m.sigma.arrows().filter(|&s| !m.sigma.is_unit(s)).nth(k + 1).unwrap();
        let g = m.projection[s];
        let other = m.base.arrows().find(|&x| x != g && !m.base.is_unit(x)).unwrap();
        m.projection[s] = other;
        push(Rule::FreeTransitiveFibers, format!("{name}: arrow {s} moved to the fiber of {other}"), m);
    }
}

fn common_pair_twist() -> Twist {
    let p = pair_groupoid(2);
    let values = p.labels.iter().map(|&(i, j)| vec![(i as i64 - j as i64).rem_euclid(2)]).collect();
    let phi = Cocycle1::new(Arc::new(p.groupoid.clone()), FinAbGroup::cyclic(2), values);
    ObstructionTwist::new(&phi, &ShortExactSeq::cyclic(2, 2)).unwrap().twist
}

fn quartic_twist() -> Twist {
    let g = Arc::new(from_group(&FinAbGroup::cyclic(2)));
    let phi = Cocycle1::new(g, FinAbGroup::cyclic(2), vec![vec![0], vec![1]]);
    ObstructionTwist::new(&phi, &ShortExactSeq::cyclic(4, 2)).unwrap().twist
}

fn section_defects(out: &mut Vec<Planted>) {
    let base = Arc::new(pair_groupoid(3).groupoid.clone());
    let t = trivial_twist(base.clone(), FinAbGroup::cyclic(3));
    let tau = is_trivial(&t).unwrap().expect("trivial twist splits");
    let non_units: Vec<usize> = base.arrows().filter(|&x| !base.is_unit(x)).collect();
    for &g in non_units.iter().take(5) {
        let mut m = tau.clone();
        m.arrows[g] = t.act(1, m.arrows[g]).unwrap();
        out.push(Planted {
            rule: Rule::SectionHomomorphism,
            label: format!("τ({g}) shifted along the fiber"),
            report: verify_section(&t, &m),
        });
    }
    for &g in non_units.iter().take(5) {
        let mut m = tau.clone();
        m.arrows[g] = m.arrows[base.inverse(g)];
        out.push(Planted {
            rule: Rule::SectionSplitsProjection,
            label: format!("τ({g}) replaced by τ of its inverse"),
            report: verify_section(&t, &m),
        });
    }
}

pub fn all() -> Vec<Planted> {
    let mut out = Vec::new();
    groupoid_defects(&mut out);
    cocycle_defects(&mut out);
    sequence_defects(&mut out);
    twist_defects(&mut out);
    section_defects(&mut out);
    out
}

//! Finite groupoids as explicit composition tables.
//!
//! Arrows are `0..n` and units are the first `k` of them. A
//! [`FiniteGroupoid`] can hold data that violates the axioms; construction
//! only checks shapes, and [`FiniteGroupoid::validate`] reports every broken
//! axiom with the arrows that witness it.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use crate::abelian::FinAbGroup;
use crate::error::GroupoidError;
use crate::report::{Rule, ValidationReport};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    num_units: usize,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    table: Vec<usize>,
}

impl FiniteGroupoid {
    /// Assemble a groupoid from raw tables. Only shapes are checked here:
    /// indices in range, sources and ranges landing on units, and no pair
    /// composed twice.
    pub fn from_tables(
        num_units: usize,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self, GroupoidError> {
        let n = source.len();
        if range.len() != n || inverse.len() != n {
            return Err(GroupoidError::Malformed(format!(
                "source, range and inverse have lengths {}, {}, {}",
                n,
                range.len(),
                inverse.len()
            )));
        }
        if num_units > n {
            return Err(GroupoidError::Malformed(format!(
                "{num_units} units but only {n} arrows"
            )));
        }
        for g in 0..n {
            if source[g] >= num_units || range[g] >= num_units {
                return Err(GroupoidError::Malformed(format!(
                    "arrow {g} has source or range outside the units"
                )));
            }
            if inverse[g] >= n {
                return Err(GroupoidError::Malformed(format!(
                    "inverse of arrow {g} is not an arrow"
                )));
            }
        }
        let mut table = vec![NONE; n * n];
        for &(a, b, c) in compose {
            if a >= n || b >= n || c >= n {
                return Err(GroupoidError::Malformed(format!(
                    "composition triple ({a}, {b}, {c}) names a missing arrow"
                )));
            }
            if table[a * n + b] != NONE {
                return Err(GroupoidError::Malformed(format!(
                    "pair ({a}, {b}) is composed twice"
                )));
            }
            table[a * n + b] = c;
        }
        Ok(Self {
            num_units,
            source,
            range,
            inverse,
            table,
        })
    }

    pub fn num_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn num_units(&self) -> usize {
        self.num_units
    }

    pub fn units(&self) -> std::ops::Range<usize> {
        0..self.num_units
    }

    pub fn arrows(&self) -> std::ops::Range<usize> {
        0..self.num_arrows()
    }

    pub fn is_unit(&self, g: usize) -> bool {
        g < self.num_units
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn range(&self, g: usize) -> usize {
        self.range[g]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn compose(&self, g1: usize, g2: usize) -> Option<usize> {
        match self.table[g1 * self.num_arrows() + g2] {
            NONE => None,
            c => Some(c),
        }
    }

    /// Every pair with a recorded composite, as `(g1, g2, g1 g2)`.
    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.num_arrows();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.table[a * n + b];
                if c != NONE {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Composable pairs `(g1, g2)` in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        self.composition_triples()
            .into_iter()
            .map(|(a, b, _)| (a, b))
            .collect()
    }

    /// Arrows with range `u` (the fiber `Γ^u`).
    pub fn range_fiber(&self, u: usize) -> Vec<usize> {
        self.arrows().filter(|&g| self.range[g] == u).collect()
    }

    /// Arrows with source `u` (the fiber `Γ_u`).
    pub fn source_fiber(&self, u: usize) -> Vec<usize> {
        self.arrows().filter(|&g| self.source[g] == u).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.num_arrows();
        for a in 0..n {
            for b in 0..n {
                let composable = self.source[a] == self.range[b];
                match (composable, self.compose(a, b)) {
                    (true, None) => report.push(
                        Rule::ComposableDomain,
                        vec![a, b],
                        format!("s({a}) = r({b}) but the pair has no composite"),
                    ),
                    (false, Some(c)) => report.push(
                        Rule::ComposableDomain,
                        vec![a, b],
                        format!("s({a}) != r({b}) but the pair composes to {c}"),
                    ),
                    (true, Some(c)) => {
                        if self.range[c] != self.range[a] || self.source[c] != self.source[b] {
                            report.push(
                                Rule::ComposableDomain,
                                vec![a, b, c],
                                format!("composite {c} has the wrong source or range"),
                            );
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.compose(a, b) else {
                    continue;
                };
                for c in 0..n {
                    let Some(bc) = self.compose(b, c) else {
                        continue;
                    };
                    if let (Some(l), Some(r)) = (self.compose(ab, c), self.compose(a, bc)) {
                        if l != r {
                            report.push(
                                Rule::Associativity,
                                vec![a, b, c],
                                format!("({a}{b}){c} = {l} but {a}({b}{c}) = {r}"),
                            );
                        }
                    }
                }
            }
        }
        for u in self.units() {
            if self.source[u] != u || self.range[u] != u {
                report.push(
                    Rule::UnitIdentity,
                    vec![u],
                    format!("unit {u} is not its own source and range"),
                );
            }
            for g in 0..n {
                if self.range[g] == u {
                    if let Some(c) = self.compose(u, g) {
                        if c != g {
                            report.push(
                                Rule::UnitIdentity,
                                vec![u, g],
                                format!("{u} {g} = {c}"),
                            );
                        }
                    }
                }
                if self.source[g] == u {
                    if let Some(c) = self.compose(g, u) {
                        if c != g {
                            report.push(
                                Rule::UnitIdentity,
                                vec![g, u],
                                format!("{g} {u} = {c}"),
                            );
                        }
                    }
                }
            }
        }
        for g in 0..n {
            let inv = self.inverse[g];
            if self.compose(g, inv) != Some(self.range[g]) {
                report.push(
                    Rule::InverseCancellation,
                    vec![g, inv],
                    format!("{g} {inv} is not r({g}) = {}", self.range[g]),
                );
            }
            if self.compose(inv, g) != Some(self.source[g]) {
                report.push(
                    Rule::InverseCancellation,
                    vec![inv, g],
                    format!("{inv} {g} is not s({g}) = {}", self.source[g]),
                );
            }
            if self.range[inv] != self.source[g] || self.source[inv] != self.range[g] {
                report.push(
                    Rule::InverseRange,
                    vec![g, inv],
                    format!("r({inv}) != s({g}) or s({inv}) != r({g})"),
                );
            }
            if self.inverse[inv] != g {
                report.push(
                    Rule::InverseRange,
                    vec![g, inv],
                    format!("inverse of {inv} is {} not {g}", self.inverse[inv]),
                );
            }
        }
        report
    }

    /// Arrows joining a unit in `members` to one outside it.
    fn crossing_arrow(&self, members: &BTreeSet<usize>) -> Option<usize> {
        self.arrows()
            .find(|&g| members.contains(&self.source[g]) != members.contains(&self.range[g]))
    }

    /// The subgroupoid on an invariant set of units.
    pub fn reduce_to_units(&self, subset: &UnitSubset<'_>) -> Result<Reduction, GroupoidError> {
        if !std::ptr::eq(subset.owner, self) && subset.owner != self {
            return Err(GroupoidError::Mismatch(
                "unit subset belongs to another groupoid".into(),
            ));
        }
        if let Some(arrow) = self.crossing_arrow(&subset.members) {
            return Err(GroupoidError::NotInvariant { arrow });
        }
        let mut kept: Vec<usize> = subset.members.iter().copied().collect();
        kept.extend(
            self.arrows()
                .filter(|&g| !self.is_unit(g) && subset.members.contains(&self.source[g])),
        );
        Ok(Reduction::from_arrows(self, kept))
    }

    /// The subgroupoid carried by `arrows`, which must contain every unit
    /// it touches and be closed under composition and inversion.
    pub fn restrict(&self, arrows: &[usize]) -> Result<Reduction, GroupoidError> {
        let set: BTreeSet<usize> = arrows.iter().copied().collect();
        for &g in &set {
            for end in [self.source[g], self.range[g], self.inverse[g]] {
                if !set.contains(&end) {
                    return Err(GroupoidError::Malformed(format!(
                        "arrow set is not closed: {g} needs {end}"
                    )));
                }
            }
        }
        let mut kept: Vec<usize> = set.iter().copied().filter(|&g| self.is_unit(g)).collect();
        kept.extend(set.iter().copied().filter(|&g| !self.is_unit(g)));
        Ok(Reduction::from_arrows(self, kept))
    }
}

/// A subgroupoid together with the arrow correspondence to its parent.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub groupoid: FiniteGroupoid,
    /// `parent_arrow[g]` is the arrow of the parent that `g` stands for.
    pub parent_arrow: Vec<usize>,
}

impl Reduction {
    /// `kept` lists units first; compositions leaving the set are dropped.
    fn from_arrows(parent: &FiniteGroupoid, kept: Vec<usize>) -> Self {
        let mut local = HashMap::new();
        for (i, &g) in kept.iter().enumerate() {
            local.insert(g, i);
        }
        let num_units = kept.iter().filter(|&&g| parent.is_unit(g)).count();
        let at = |g: usize| local.get(&g).copied();
        let source = kept.iter().map(|&g| at(parent.source[g]).unwrap_or(0)).collect();
        let range = kept.iter().map(|&g| at(parent.range[g]).unwrap_or(0)).collect();
        let inverse = kept.iter().map(|&g| at(parent.inverse[g]).unwrap_or(0)).collect();
        let mut compose = Vec::new();
        for (i, &a) in kept.iter().enumerate() {
            for (j, &b) in kept.iter().enumerate() {
                if let Some(c) = parent.compose(a, b).and_then(at) {
                    compose.push((i, j, c));
                }
            }
        }
        let groupoid = FiniteGroupoid::from_tables(num_units, source, range, inverse, &compose)
            .expect("restriction of a well-shaped groupoid is well shaped");
        Self {
            groupoid,
            parent_arrow: kept,
        }
    }
}

/// A set of units of a particular groupoid.
#[derive(Clone, Debug)]
pub struct UnitSubset<'a> {
    owner: &'a FiniteGroupoid,
    members: BTreeSet<usize>,
}

impl<'a> UnitSubset<'a> {
    pub fn new(
        owner: &'a FiniteGroupoid,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GroupoidError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&u| !owner.is_unit(u)) {
            return Err(GroupoidError::Malformed(format!("{bad} is not a unit")));
        }
        Ok(Self { owner, members })
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.contains(&u)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// No arrow joins the subset to its complement.
    pub fn is_invariant(&self) -> bool {
        self.owner.crossing_arrow(&self.members).is_none()
    }
}

/// A groupoid whose arrows carry labels of type `K`.
#[derive(Clone, Debug)]
pub struct Labeled<K> {
    pub groupoid: FiniteGroupoid,
    pub labels: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash + std::fmt::Debug> Labeled<K> {
    /// Build from labelled units and non-unit arrows plus structure maps on
    /// labels. `compose` is only called on pairs whose source and range
    /// match, and must return an existing label.
    pub fn build(
        units: Vec<K>,
        others: Vec<K>,
        source: impl Fn(&K) -> K,
        range: impl Fn(&K) -> K,
        compose: impl Fn(&K, &K) -> K,
        invert: impl Fn(&K) -> K,
    ) -> Result<Self, GroupoidError> {
        let num_units = units.len();
        let mut labels = units;
        labels.extend(others);
        let mut index = HashMap::with_capacity(labels.len());
        for (i, k) in labels.iter().enumerate() {
            if index.insert(k.clone(), i).is_some() {
                return Err(GroupoidError::Malformed(format!("duplicate arrow label {k:?}")));
            }
        }
        let lookup = |k: &K| {
            index
                .get(k)
                .copied()
                .ok_or_else(|| GroupoidError::Malformed(format!("unknown arrow label {k:?}")))
        };
        let mut src = Vec::with_capacity(labels.len());
        let mut rng = Vec::with_capacity(labels.len());
        let mut inv = Vec::with_capacity(labels.len());
        for k in &labels {
            src.push(lookup(&source(k))?);
            rng.push(lookup(&range(k))?);
            inv.push(lookup(&invert(k))?);
        }
        let mut by_range: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
        for (g, &r) in rng.iter().enumerate() {
            by_range[r].push(g);
        }
        let mut triples = Vec::new();
        for a in 0..labels.len() {
            for &b in &by_range[src[a]] {
                let c = lookup(&compose(&labels[a], &labels[b]))?;
                triples.push((a, b, c));
            }
        }
        let groupoid = FiniteGroupoid::from_tables(num_units, src, rng, inv, &triples)?;
        Ok(Self {
            groupoid,
            labels,
            index,
        })
    }

    pub fn index(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn label(&self, g: usize) -> &K {
        &self.labels[g]
    }
}

/// A finite abelian group as a one-unit groupoid; arrow `k` is element
/// `k` in [`FinAbGroup::element`] order.
pub fn from_group(group: &FinAbGroup) -> FiniteGroupoid {
    let n = group.size();
    let elems: Vec<Vec<i64>> = group.elements().collect();
    let mut compose = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            compose.push((a, b, group.index_of(&group.add(&elems[a], &elems[b]))));
        }
    }
    let inverse = (0..n).map(|a| group.index_of(&group.neg(&elems[a]))).collect();
    FiniteGroupoid::from_tables(1, vec![0; n], vec![0; n], inverse, &compose)
        .expect("group tables are well shaped")
}

/// A group given by its multiplication table, identity at index 0.
pub fn from_group_table(table: &[Vec<usize>]) -> Result<FiniteGroupoid, GroupoidError> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n) {
        return Err(GroupoidError::Malformed("multiplication table is not square".into()));
    }
    let mut inverse = vec![usize::MAX; n];
    let mut compose = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            compose.push((a, b, table[a][b]));
            if table[a][b] == 0 {
                inverse[a] = b;
            }
        }
    }
    if inverse.contains(&usize::MAX) {
        return Err(GroupoidError::Malformed("some element has no inverse".into()));
    }
    FiniteGroupoid::from_tables(1, vec![0; n], vec![0; n], inverse, &compose)
}

/// The pair groupoid on `n` units: arrow `(i, j)` from `j` to `i`.
/// Labels are `(range, source)`.
pub fn pair_groupoid(n: usize) -> Labeled<(usize, usize)> {
    let units = (0..n).map(|i| (i, i)).collect();
    let others = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    Labeled::build(
        units,
        others,
        |&(_, j)| (j, j),
        |&(i, _)| (i, i),
        |&(i, _), &(_, k)| (i, k),
        |&(i, j)| (j, i),
    )
    .expect("pair groupoid is well formed")
}

/// Disjoint union; arrows of `b` come after those of `a` (units first).
/// Labels are `(0, arrow of a)` or `(1, arrow of b)`.
pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> Labeled<(usize, usize)> {
    let units = a
        .units()
        .map(|u| (0, u))
        .chain(b.units().map(|u| (1, u)))
        .collect();
    let others = a
        .arrows()
        .filter(|&g| !a.is_unit(g))
        .map(|g| (0, g))
        .chain(b.arrows().filter(|&g| !b.is_unit(g)).map(|g| (1, g)))
        .collect();
    let part = |side: usize| if side == 0 { a } else { b };
    Labeled::build(
        units,
        others,
        |&(s, g)| (s, part(s).source(g)),
        |&(s, g)| (s, part(s).range(g)),
        |&(s, g), &(_, h)| (s, part(s).compose(g, h).unwrap_or(usize::MAX)),
        |&(s, g)| (s, part(s).inverse(g)),
    )
    .expect("disjoint union of groupoids is well formed")
}

/// `Γ × A` with `(γ₁, a₁)(γ₂, a₂) = (γ₁γ₂, a₁ + a₂)`. Labels are
/// `(arrow of Γ, element index in A)`; units are `(u, 0)`.
pub fn product_with_group(g: &FiniteGroupoid, group: &FinAbGroup) -> Labeled<(usize, usize)> {
    let size = group.size();
    let elems: Vec<Vec<i64>> = group.elements().collect();
    let units = g.units().map(|u| (u, 0)).collect();
    let others = g
        .arrows()
        .flat_map(|x| (0..size).map(move |a| (x, a)))
        .filter(|&(x, a)| !(g.is_unit(x) && a == 0))
        .collect();
    Labeled::build(
        units,
        others,
        |&(x, _)| (g.source(x), 0),
        |&(x, _)| (g.range(x), 0),
        |&(x, a), &(y, b)| {
            (
                g.compose(x, y).unwrap_or(usize::MAX),
                group.index_of(&group.add(&elems[a], &elems[b])),
            )
        },
        |&(x, a)| (g.inverse(x), group.index_of(&group.neg(&elems[a]))),
    )
    .expect("product with a group is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_is_a_groupoid() {
        let g = from_group(&FinAbGroup::cyclic(3));
        assert!(g.validate().is_ok());
        assert_eq!(g.compose(1, 2), Some(0));
    }

    #[test]
    fn pair_groupoid_valid() {
        let p = pair_groupoid(2);
        assert!(p.groupoid.validate().is_ok());
        assert_eq!(p.groupoid.num_arrows(), 4);
        assert_eq!(p.groupoid.num_units(), 2);
    }

    #[test]
    fn planted_inverse_defect() {
        let p = pair_groupoid(2);
        let g = &p.groupoid;
        let a = p.index(&(0, 1)).unwrap();
        let mut inverse: Vec<usize> = g.arrows().map(|x| g.inverse(x)).collect();
        inverse[a] = a;
        let bad = FiniteGroupoid::from_tables(
            2,
            g.arrows().map(|x| g.source(x)).collect(),
            g.arrows().map(|x| g.range(x)).collect(),
            inverse,
            &g.composition_triples(),
        )
        .unwrap();
        let report = bad.validate();
        let v = report.first(Rule::InverseCancellation).unwrap();
        assert!(v.witness.contains(&a));
    }

    #[test]
    fn product_cardinality() {
        let p = pair_groupoid(2);
        let prod = product_with_group(&p.groupoid, &FinAbGroup::cyclic(2));
        assert_eq!(prod.groupoid.num_arrows(), 8);
        assert_eq!(prod.groupoid.num_units(), 2);
        assert!(prod.groupoid.validate().is_ok());
    }

    #[test]
    fn product_with_trivial_group() {
        let p = pair_groupoid(3);
        let prod = product_with_group(&p.groupoid, &FinAbGroup::trivial());
        assert_eq!(prod.groupoid.num_arrows(), p.groupoid.num_arrows());
        for (a, b, c) in prod.groupoid.composition_triples() {
            let (x, _) = prod.labels[a];
            let (y, _) = prod.labels[b];
            let (z, _) = prod.labels[c];
            assert_eq!(p.groupoid.compose(x, y), Some(z));
        }
    }

    #[test]
    fn z2_times_z2_is_klein_four() {
        let z2 = from_group(&FinAbGroup::cyclic(2));
        let prod = product_with_group(&z2, &FinAbGroup::cyclic(2));
        let g = &prod.groupoid;
        assert_eq!(g.num_units(), 1);
        // every element squares to the identity and the table is abelian
        for x in g.arrows() {
            assert_eq!(g.compose(x, x), Some(0));
            for y in g.arrows() {
                assert_eq!(g.compose(x, y), g.compose(y, x));
                let (a, i) = prod.labels[x];
                let (b, j) = prod.labels[y];
                let (c, k) = prod.labels[g.compose(x, y).unwrap()];
                assert_eq!((c, k), ((a + b) % 2, (i + j) % 2));
            }
        }
    }

    #[test]
    fn reduction_needs_invariance() {
        let p = pair_groupoid(3);
        let v = UnitSubset::new(&p.groupoid, [0, 1]).unwrap();
        assert!(!v.is_invariant());
        assert!(matches!(
            p.groupoid.reduce_to_units(&v),
            Err(GroupoidError::NotInvariant { .. })
        ));
    }

    #[test]
    fn reduction_to_a_component() {
        let z2 = from_group(&FinAbGroup::cyclic(2));
        let u = disjoint_union(&z2, &z2);
        let v = UnitSubset::new(&u.groupoid, [0]).unwrap();
        let r = u.groupoid.reduce_to_units(&v).unwrap();
        assert_eq!(r.groupoid.num_arrows(), 2);
        assert!(r.groupoid.validate().is_ok());
        assert!(r.parent_arrow.iter().all(|&g| u.labels[g].0 == 0));
    }

    #[test]
    fn nonabelian_group_table() {
        // S3 as permutations of {0,1,2}, composed right to left
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let g = from_group_table(&table).unwrap();
        assert!(g.validate().is_ok());
        assert_ne!(g.compose(1, 2), g.compose(2, 1));
    }
}

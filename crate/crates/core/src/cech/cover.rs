//! Finite covers and their groupoids `{(x, i, j) : x ∈ U_i ∩ U_j}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::CechError;
use crate::groupoid::{FiniteGroupoid, Labeled};

/// A finite set of named points with an indexed family of subsets covering it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    points: Vec<String>,
    set_names: Vec<String>,
    /// `members[i][x]`: whether point `x` lies in `U_i`.
    members: Vec<Vec<bool>>,
}

impl Cover {
    pub fn new(points: Vec<String>, sets: Vec<(String, Vec<usize>)>) -> Result<Self, CechError> {
        let n = points.len();
        let mut seen = HashMap::new();
        for (k, p) in points.iter().enumerate() {
            if seen.insert(p.as_str(), k).is_some() {
                return Err(CechError::Malformed(format!("duplicate point {p:?}")));
            }
        }
        if sets.is_empty() && n > 0 {
            return Err(CechError::Malformed("a nonempty space needs at least one set".into()));
        }
        let mut set_names = Vec::with_capacity(sets.len());
        let mut members = Vec::with_capacity(sets.len());
        for (name, pts) in sets {
            if set_names.contains(&name) {
                return Err(CechError::Malformed(format!("duplicate set name {name:?}")));
            }
            let mut row = vec![false; n];
            for x in pts {
                if x >= n {
                    return Err(CechError::Malformed(format!("set {name:?} names point {x}, only {n} exist")));
                }
                row[x] = true;
            }
            set_names.push(name);
            members.push(row);
        }
        if let Some(x) = (0..n).find(|&x| members.iter().all(|row| !row[x])) {
            return Err(CechError::Malformed(format!("point {:?} is not covered", points[x])));
        }
        Ok(Self {
            points,
            set_names,
            members,
        })
    }

    /// Build from point names and sets given by point names.
    pub fn from_names(points: &[&str], sets: &[(&str, &[&str])]) -> Result<Self, CechError> {
        let index: HashMap<&str, usize> = points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let sets = sets
            .iter()
            .map(|(name, pts)| {
                let members = pts
                    .iter()
                    .map(|p| index.get(p).copied().ok_or_else(|| CechError::Malformed(format!("unknown point {p:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((name.to_string(), members))
            })
            .collect::<Result<Vec<_>, CechError>>()?;
        Self::new(points.iter().map(|p| p.to_string()).collect(), sets)
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_sets(&self) -> usize {
        self.set_names.len()
    }

    pub fn point_name(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn set_name(&self, i: usize) -> &str {
        &self.set_names[i]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub fn set_index(&self, name: &str) -> Option<usize> {
        self.set_names.iter().position(|p| p == name)
    }

    pub fn contains(&self, i: usize, x: usize) -> bool {
        self.members[i][x]
    }

    /// Members of `U_i` in point order.
    pub fn set(&self, i: usize) -> Vec<usize> {
        (0..self.num_points()).filter(|&x| self.members[i][x]).collect()
    }

    /// `U_{i₀…iₙ}` in point order.
    pub fn intersection(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.num_points())
            .filter(|&x| indices.iter().all(|&i| self.members[i][x]))
            .collect()
    }

    /// Ordered `(n+1)`-tuples of set indices (repetitions allowed) with
    /// nonempty intersection, in lexicographic order.
    pub fn nerve_tuples(&self, degree: usize) -> Vec<Vec<usize>> {
        let k = self.num_sets();
        let len = degree + 1;
        let mut out = Vec::new();
        let mut t = vec![0usize; len];
        if k == 0 {
            return out;
        }
        loop {
            if !self.intersection(&t).is_empty() {
                out.push(t.clone());
            }
            let mut pos = len;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                t[pos] += 1;
                if t[pos] < k {
                    break;
                }
                t[pos] = 0;
            }
        }
    }

    /// Four points `t_jkl` (one per 3-subset of `{1,2,3,4}`) covered by
    /// `U_i = {t_jkl : i ∈ {j,k,l}}`; its nerve is the boundary of a
    /// tetrahedron.
    pub fn tetrahedral() -> Self {
        let triples = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];
        let points: Vec<String> = triples.iter().map(|t| format!("t{}{}{}", t[0], t[1], t[2])).collect();
        let sets = (1..=4)
            .map(|i| {
                let pts = (0..4).filter(|&x| triples[x].contains(&i)).collect();
                (format!("U{i}"), pts)
            })
            .collect();
        Self::new(points, sets).expect("tetrahedral cover is well formed")
    }

    /// Six points on a circle covered by three arcs of three points, each
    /// overlapping its neighbours in one point; no point lies in all three.
    pub fn circle_three_arcs() -> Self {
        let points = (0..6).map(|k| format!("p{k}")).collect();
        let sets = (0..3)
            .map(|i| (format!("A{i}"), vec![2 * i, 2 * i + 1, (2 * i + 2) % 6]))
            .collect();
        Self::new(points, sets).expect("three-arc cover is well formed")
    }
}

/// The groupoid of a cover with labels `(x, i, j)`: source `(x, j, j)`,
/// range `(x, i, i)`, and `(x, i, j)(x, j, k) = (x, i, k)`.
#[derive(Clone, Debug)]
pub struct CoverGroupoid {
    pub cover: Arc<Cover>,
    pub labeled: Labeled<(usize, usize, usize)>,
    pub groupoid: Arc<FiniteGroupoid>,
}

impl CoverGroupoid {
    pub fn arrow(&self, x: usize, i: usize, j: usize) -> Option<usize> {
        self.labeled.index(&(x, i, j))
    }

    pub fn label(&self, g: usize) -> (usize, usize, usize) {
        *self.labeled.label(g)
    }
}

pub fn cover_groupoid(cover: &Arc<Cover>) -> CoverGroupoid {
    let mut units = Vec::new();
    let mut others = Vec::new();
    for x in 0..cover.num_points() {
        let here: Vec<usize> = (0..cover.num_sets()).filter(|&i| cover.contains(i, x)).collect();
        for &i in &here {
            units.push((x, i, i));
            for &j in &here {
                if i != j {
                    others.push((x, i, j));
                }
            }
        }
    }
    let labeled = Labeled::build(
        units,
        others,
        |&(x, _, j)| (x, j, j),
        |&(x, i, _)| (x, i, i),
        |&(x, i, _), &(_, _, k)| (x, i, k),
        |&(x, i, j)| (x, j, i),
    )
    .expect("cover groupoid is closed under its operations");
    CoverGroupoid {
        cover: cover.clone(),
        groupoid: Arc::new(labeled.groupoid.clone()),
        labeled,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedral_counts() {
        let c = Arc::new(Cover::tetrahedral());
        assert_eq!(c.num_sets(), 4);
        assert!((0..4).all(|i| c.set(i).len() == 3));
        let g = cover_groupoid(&c);
        assert_eq!(g.groupoid.num_units(), 12);
        assert_eq!(g.groupoid.num_arrows(), 36);
        assert_eq!(g.groupoid.composable_pairs().len(), 108);
        assert!(g.groupoid.validate().is_ok());
    }

    #[test]
    fn single_set_gives_the_space() {
        let c = Arc::new(Cover::from_names(&["a", "b"], &[("U", &["a", "b"])]).unwrap());
        let g = cover_groupoid(&c);
        assert_eq!(g.groupoid.num_arrows(), 2);
        assert_eq!(g.groupoid.num_units(), 2);
    }

    #[test]
    fn doubled_point_gives_pair_groupoid() {
        let c = Arc::new(Cover::from_names(&["x"], &[("U1", &["x"]), ("U2", &["x"])]).unwrap());
        let g = cover_groupoid(&c);
        assert_eq!(g.groupoid.num_units(), 2);
        assert_eq!(g.groupoid.num_arrows(), 4);
        let a = g.arrow(0, 0, 1).unwrap();
        let b = g.arrow(0, 1, 0).unwrap();
        assert_eq!(g.groupoid.compose(a, b), g.arrow(0, 0, 0));
    }

    #[test]
    fn uncovered_point_rejected() {
        let r = Cover::from_names(&["a", "b"], &[("U", &["a"])]);
        assert!(matches!(r, Err(CechError::Malformed(_))));
    }

    #[test]
    fn nerve_of_circle_has_no_triple_of_distinct_sets() {
        let c = Cover::circle_three_arcs();
        assert!(c.intersection(&[0, 1, 2]).is_empty());
        assert_eq!(c.intersection(&[0, 1]).len(), 1);
        assert_eq!(c.nerve_tuples(2).len(), 27 - 6);
    }
}

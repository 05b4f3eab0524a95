//! Pointwise Čech cochains: a value at every point of every nonempty
//! `U_{i₀…iₙ}`, for ordered tuples with repetitions allowed.

use std::collections::HashMap;
use std::sync::Arc;

use crate::abelian::Coefficients;
use crate::cech::cover::Cover;
use crate::error::CechError;

/// The coordinates of degree-`n` cochains: all `(tuple, point)` pairs with
/// the point in the tuple's intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainShape {
    pub degree: usize,
    pub entries: Vec<(Vec<usize>, usize)>,
    lookup: HashMap<(Vec<usize>, usize), usize>,
}

impl CochainShape {
    pub fn new(cover: &Cover, degree: usize) -> Self {
        let mut entries = Vec::new();
        for t in cover.nerve_tuples(degree) {
            for x in cover.intersection(&t) {
                entries.push((t.clone(), x));
            }
        }
        let lookup = entries.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        Self {
            degree,
            entries,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, tuple: &[usize], x: usize) -> Option<usize> {
        self.lookup.get(&(tuple.to_vec(), x)).copied()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<K: Coefficients> {
    pub cover: Arc<Cover>,
    pub coeffs: K,
    pub shape: Arc<CochainShape>,
    pub values: Vec<K::Elem>,
}

impl<K: Coefficients> Cochain<K> {
    pub fn zero(cover: Arc<Cover>, coeffs: K, degree: usize) -> Self {
        let shape = Arc::new(CochainShape::new(&cover, degree));
        let values = vec![coeffs.zero(); shape.len()];
        Self {
            cover,
            coeffs,
            shape,
            values,
        }
    }

    /// `values` is consulted for every `(tuple, point)` of the shape.
    pub fn from_fn(
        cover: Arc<Cover>,
        coeffs: K,
        degree: usize,
        mut values: impl FnMut(&[usize], usize) -> K::Elem,
    ) -> Self {
        let shape = Arc::new(CochainShape::new(&cover, degree));
        let values = shape.entries.iter().map(|(t, x)| values(t, *x)).collect();
        Self {
            cover,
            coeffs,
            shape,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.shape.degree
    }

    pub fn get(&self, tuple: &[usize], x: usize) -> Option<&K::Elem> {
        self.shape.position(tuple, x).map(|k| &self.values[k])
    }

    /// The value at a `(tuple, point)` known to be in the shape.
    pub fn at(&self, tuple: &[usize], x: usize) -> &K::Elem {
        self.get(tuple, x)
            .unwrap_or_else(|| panic!("point {x} is not in the intersection of {tuple:?}"))
    }

    pub fn set(&mut self, tuple: &[usize], x: usize, v: K::Elem) -> Result<(), CechError> {
        let k = self.shape.position(tuple, x).ok_or_else(|| {
            CechError::Malformed(format!("point {x} is not in the intersection of {tuple:?}"))
        })?;
        self.values[k] = v;
        Ok(())
    }

    fn check(&self, other: &Self) {
        assert!(
            *self.cover == *other.cover && self.degree() == other.degree(),
            "cochains live on different covers or degrees"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| self.coeffs.add(x, y))
            .collect();
        Self {
            values,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| self.coeffs.sub(x, y))
            .collect();
        Self {
            values,
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.coeffs.is_zero(v))
    }

    /// Apply a coefficient map pointwise.
    pub fn map<L: Coefficients>(&self, coeffs: L, f: impl Fn(&K::Elem) -> L::Elem) -> Cochain<L> {
        Cochain {
            cover: self.cover.clone(),
            coeffs,
            shape: self.shape.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// `(dc)_{i₀…i_{n+1}}(x) = Σ_k (−1)^k c_{i₀…î_k…i_{n+1}}(x)`.
    pub fn coboundary(&self) -> Self {
        let n = self.degree();
        Self::from_fn(self.cover.clone(), self.coeffs.clone(), n + 1, |t, x| {
            let mut acc = self.coeffs.zero();
            for k in 0..t.len() {
                let mut face = t.to_vec();
                face.remove(k);
                let v = self.at(&face, x);
                acc = if k % 2 == 0 {
                    self.coeffs.add(&acc, v)
                } else {
                    self.coeffs.sub(&acc, v)
                };
            }
            acc
        })
    }

    /// The first `(tuple, point)` where the coboundary is nonzero.
    pub fn cocycle_failure(&self) -> Option<(Vec<usize>, usize)> {
        let d = self.coboundary();
        d.shape
            .entries
            .iter()
            .zip(&d.values)
            .find(|(_, v)| !d.coeffs.is_zero(v))
            .map(|(e, _)| e.clone())
    }

    pub fn is_cech_cocycle(&self) -> bool {
        self.cocycle_failure().is_none()
    }

    /// A degree-2 cochain is normalized when it vanishes on `(i, i, k)` and
    /// `(i, k, k)`; returns the first offending entry.
    pub fn normalization_failure(&self) -> Option<(Vec<usize>, usize)> {
        self.shape
            .entries
            .iter()
            .zip(&self.values)
            .find(|((t, _), v)| {
                t.len() == 3 && (t[0] == t[1] || t[1] == t[2]) && !self.coeffs.is_zero(v)
            })
            .map(|(e, _)| e.clone())
    }
}

//! Integral cohomology of the nerve, via Smith normal form.
//!
//! An integer cochain counts as a class only when it is constant on every
//! intersection it is defined on (the finite stand-in for continuity into a
//! discrete group); such a cochain is one integer per nerve tuple.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::abelian::{int_mul, int_mul_vec, smith_normal_form, IntMatrix, Integers, SmithForm};
use crate::cech::cochain::Cochain;
use crate::cech::cover::Cover;
use crate::error::CechError;

/// Cochains of degree above this are not tabulated.
pub const MAX_DEGREE: usize = 3;

/// `ℤ^free ⊕ ⊕ ℤ/t_i` with `t_1 | t_2 | …`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl CohomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A cohomology class: coordinates in the torsion summands (reduced) and
/// then the free summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyClass {
    pub group: CohomologyGroup,
    pub coordinates: Vec<i64>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }

    /// Whether the class generates a group isomorphic to `ℤ`.
    pub fn is_generator(&self) -> bool {
        self.group.is_integers() && self.coordinates.len() == 1 && self.coordinates[0].abs() == 1
    }
}

fn coboundary_matrix(from: &[Vec<usize>], to: &[Vec<usize>]) -> IntMatrix {
    let index: std::collections::HashMap<&[usize], usize> =
        from.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
    let mut m = IntMatrix::zeros(to.len(), from.len());
    for (r, t) in to.iter().enumerate() {
        for k in 0..t.len() {
            let mut face = t.clone();
            face.remove(k);
            let c = index[face.as_slice()];
            m[(r, c)] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// The data needed to read off `Ȟⁿ` and class coordinates in one degree.
#[derive(Clone, Debug)]
pub struct NerveCohomology {
    pub cover: Arc<Cover>,
    pub group: CohomologyGroup,
    pub tuples: Vec<Vec<usize>>,
    outgoing: IntMatrix,
    /// Rows map a cocycle to its coordinates in a basis of `ker dⁿ`.
    kernel_coords: IntMatrix,
    quotient: SmithForm,
}

impl NerveCohomology {
    pub fn new(cover: Arc<Cover>, degree: usize) -> Result<Self, CechError> {
        if degree > MAX_DEGREE {
            return Err(CechError::DegreeOutOfRange(degree));
        }
        let tuples = cover.nerve_tuples(degree);
        let next = cover.nerve_tuples(degree + 1);
        let outgoing = coboundary_matrix(&tuples, &next);
        let incoming = if degree == 0 {
            IntMatrix::zeros(tuples.len(), 0)
        } else {
            coboundary_matrix(&cover.nerve_tuples(degree - 1), &tuples)
        };
        let out_snf = smith_normal_form(&outgoing);
        let r = out_snf.rank;
        let kernel_coords = out_snf.v_inv.rows(r, tuples.len() - r).into_owned();
        let image = int_mul(&kernel_coords, &incoming);
        let quotient = smith_normal_form(&image);
        let k = kernel_coords.nrows();
        let torsion = quotient
            .invariant_factors()
            .into_iter()
            .filter(|&d| d > 1)
            .collect();
        let group = CohomologyGroup {
            degree,
            free_rank: k - quotient.rank,
            torsion,
        };
        Ok(Self {
            cover,
            group,
            tuples,
            outgoing,
            kernel_coords,
            quotient,
        })
    }

    /// One integer per nerve tuple, or the first tuple on which the cochain
    /// takes two different values.
    pub fn nerve_values(&self, c: &Cochain<Integers>) -> Result<Vec<i64>, CechError> {
        if c.degree() != self.group.degree || *c.cover != *self.cover {
            return Err(CechError::Malformed("cochain does not match this complex".into()));
        }
        self.tuples
            .iter()
            .map(|t| {
                let pts = self.cover.intersection(t);
                let first = *c.at(t, pts[0]);
                if pts.iter().any(|&x| *c.at(t, x) != first) {
                    Err(CechError::NotLocallyConstant { indices: t.clone() })
                } else {
                    Ok(first)
                }
            })
            .collect()
    }

    pub fn class_of_values(&self, v: &[i64]) -> Result<CohomologyClass, CechError> {
        let d = int_mul_vec(&self.outgoing, v);
        if let Some(row) = d.iter().position(|&x| x != 0) {
            let t = self.cover.nerve_tuples(self.group.degree + 1)[row].clone();
            let point = self.cover.intersection(&t)[0];
            return Err(CechError::NotCechCocycle { indices: t, point });
        }
        let z: Vec<i64> = int_mul_vec(&self.kernel_coords, v)
            .into_iter()
            .map(|x| i64::try_from(x).expect("class coordinate fits in i64"))
            .collect();
        let w = int_mul_vec(&self.quotient.u, &z);
        let factors = self.quotient.invariant_factors();
        let mut coordinates = Vec::new();
        for (i, &wi) in w.iter().enumerate() {
            let wi = i64::try_from(wi).expect("class coordinate fits in i64");
            match factors.get(i) {
                Some(&1) => {}
                Some(&d) => coordinates.push(wi.rem_euclid(d)),
                None => coordinates.push(wi),
            }
        }
        Ok(CohomologyClass {
            group: self.group.clone(),
            coordinates,
        })
    }

    pub fn class_of(&self, c: &Cochain<Integers>) -> Result<CohomologyClass, CechError> {
        self.class_of_values(&self.nerve_values(c)?)
    }
}

pub fn cohomology_group(cover: &Arc<Cover>, degree: usize) -> Result<CohomologyGroup, CechError> {
    Ok(NerveCohomology::new(cover.clone(), degree)?.group)
}

pub fn cohomology_class(c: &Cochain<Integers>) -> Result<CohomologyClass, CechError> {
    NerveCohomology::new(c.cover.clone(), c.degree())?.class_of(c)
}

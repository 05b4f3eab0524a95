//! JSON formats for every input and output object.
//!
//! Each object has a plain serde document type and a pair of conversion
//! functions. Parsing goes through [`parse`], which keeps serde's line and
//! column on syntax errors; conversion errors carry the domain message.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{Circle, Coefficients, FinAbGroup, GroupHom, IntMatrix, Integers, QmodZ, Rationals, ShortExactSeq};
use crate::cech::{Cochain, Cover};
use crate::cocycle::{Cocycle1, Cocycle2};
use crate::groupoid::FiniteGroupoid;
use crate::star::AlgebraElement;
use crate::twist::Twist;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("document types always serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDoc {
    pub units: Vec<usize>,
    pub arrows: Vec<usize>,
    pub source: Vec<usize>,
    pub range: Vec<usize>,
    pub inverse: Vec<usize>,
    pub compose: Vec<(usize, usize, usize)>,
}

impl From<&FiniteGroupoid> for GroupoidDoc {
    fn from(g: &FiniteGroupoid) -> Self {
        Self {
            units: g.units().collect(),
            arrows: g.arrows().collect(),
            source: g.arrows().map(|a| g.source(a)).collect(),
            range: g.arrows().map(|a| g.range(a)).collect(),
            inverse: g.arrows().map(|a| g.inverse(a)).collect(),
            compose: g.composition_triples(),
        }
    }
}

impl GroupoidDoc {
    /// Only shapes are checked; run `validate` for the axioms.
    pub fn build(&self) -> Result<FiniteGroupoid, IoError> {
        if self.arrows != (0..self.arrows.len()).collect::<Vec<_>>() {
            return Err(invalid("arrows must be 0, 1, 2, ... in order"));
        }
        if self.units != (0..self.units.len()).collect::<Vec<_>>() {
            return Err(invalid("units must be the first arrows, listed in order"));
        }
        if self.source.len() != self.arrows.len() {
            return Err(invalid("one source per arrow required"));
        }
        FiniteGroupoid::from_tables(
            self.units.len(),
            self.source.clone(),
            self.range.clone(),
            self.inverse.clone(),
            &self.compose,
        )
        .map_err(invalid)
    }
}

/// Cyclic orders; a divisibility chain is not required.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub invariant_factors: Vec<i64>,
}

impl From<&FinAbGroup> for GroupDoc {
    fn from(g: &FinAbGroup) -> Self {
        Self {
            invariant_factors: g.orders().to_vec(),
        }
    }
}

impl GroupDoc {
    pub fn build(&self) -> Result<FinAbGroup, IoError> {
        FinAbGroup::from_cyclic_orders(self.invariant_factors.clone()).map_err(invalid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub matrix: Vec<Vec<i64>>,
}

impl From<&GroupHom> for HomDoc {
    fn from(h: &GroupHom) -> Self {
        Self { matrix: h.rows() }
    }
}

impl HomDoc {
    pub fn build(&self, domain: &FinAbGroup, codomain: &FinAbGroup) -> Result<GroupHom, IoError> {
        let (rows, cols) = (codomain.rank(), domain.rank());
        if self.matrix.len() != rows || self.matrix.iter().any(|r| r.len() != cols) {
            return Err(invalid(format!("homomorphism matrix must be {rows}x{cols}")));
        }
        let m = IntMatrix::from_fn(rows, cols, |i, j| self.matrix[i][j]);
        GroupHom::new(domain.clone(), codomain.clone(), m).map_err(invalid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDoc {
    #[serde(rename = "A")]
    pub a: GroupDoc,
    #[serde(rename = "B")]
    pub b: GroupDoc,
    #[serde(rename = "C")]
    pub c: GroupDoc,
    pub i: HomDoc,
    pub p: HomDoc,
}

impl From<&ShortExactSeq> for SequenceDoc {
    fn from(s: &ShortExactSeq) -> Self {
        Self {
            a: (&s.a).into(),
            b: (&s.b).into(),
            c: (&s.c).into(),
            i: (&s.i).into(),
            p: (&s.p).into(),
        }
    }
}

impl SequenceDoc {
    /// Exactness is not checked here.
    pub fn build(&self) -> Result<ShortExactSeq, IoError> {
        let (a, b, c) = (self.a.build()?, self.b.build()?, self.c.build()?);
        ShortExactSeq::new(self.i.build(&a, &b)?, self.p.build(&b, &c)?).map_err(invalid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub groupoid: GroupoidDoc,
    pub target: GroupDoc,
    pub values: Vec<(usize, Vec<i64>)>,
}

impl From<&Cocycle1<FinAbGroup>> for CocycleDoc {
    fn from(c: &Cocycle1<FinAbGroup>) -> Self {
        Self {
            groupoid: c.groupoid.as_ref().into(),
            target: (&c.target).into(),
            values: c.values.iter().cloned().enumerate().collect(),
        }
    }
}

fn element_of(g: &FinAbGroup, v: &[i64]) -> Result<Vec<i64>, IoError> {
    if v.len() != g.rank() {
        return Err(invalid(format!("element {v:?} should have {} coordinates", g.rank())));
    }
    Ok(g.normalize(v))
}

impl CocycleDoc {
    /// Arrows left out take the value zero. The cocycle identity is not
    /// checked here.
    pub fn build(&self) -> Result<Cocycle1<FinAbGroup>, IoError> {
        let g = Arc::new(self.groupoid.build()?);
        self.build_on(g)
    }

    pub fn build_on(&self, g: Arc<FiniteGroupoid>) -> Result<Cocycle1<FinAbGroup>, IoError> {
        let target = self.target.build()?;
        let mut values = vec![target.zero(); g.num_arrows()];
        for (a, v) in &self.values {
            let slot = values
                .get_mut(*a)
                .ok_or_else(|| invalid(format!("arrow {a} does not exist")))?;
            *slot = element_of(&target, v)?;
        }
        Ok(Cocycle1::new(g, target, values))
    }
}

/// A normalized 2-cocycle, by composable pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle2Doc {
    pub groupoid: GroupoidDoc,
    pub target: GroupDoc,
    pub values: Vec<((usize, usize), Vec<i64>)>,
}

impl From<&Cocycle2<FinAbGroup>> for Cocycle2Doc {
    fn from(c: &Cocycle2<FinAbGroup>) -> Self {
        Self {
            groupoid: c.groupoid.as_ref().into(),
            target: (&c.target).into(),
            values: c.entries().map(|(&p, v)| (p, v.clone())).collect(),
        }
    }
}

impl Cocycle2Doc {
    pub fn build(&self) -> Result<Cocycle2<FinAbGroup>, IoError> {
        let g = Arc::new(self.groupoid.build()?);
        let target = self.target.build()?;
        let entries = self
            .values
            .iter()
            .map(|(p, v)| Ok((*p, element_of(&target, v)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        Cocycle2::new(g, target, entries).map_err(invalid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistDoc {
    pub sigma: GroupoidDoc,
    pub base: GroupoidDoc,
    pub fiber: GroupDoc,
    /// `j[u][a]`: the arrow `j(u, a)`, with `a` indexing the fiber's elements
    /// in lexicographic order.
    pub j: Vec<Vec<usize>>,
    /// `pi[σ]`: the image of `σ` in the base.
    pub pi: Vec<usize>,
}

impl From<&Twist> for TwistDoc {
    fn from(t: &Twist) -> Self {
        Self {
            sigma: t.sigma.as_ref().into(),
            base: t.base.as_ref().into(),
            fiber: (&t.fiber).into(),
            j: t.inclusion.clone(),
            pi: t.projection.clone(),
        }
    }
}

impl TwistDoc {
    /// Table shapes are checked; run `validate` for the twist axioms.
    pub fn build(&self) -> Result<Twist, IoError> {
        let sigma = Arc::new(self.sigma.build()?);
        let base = Arc::new(self.base.build()?);
        let fiber = self.fiber.build()?;
        if self.pi.len() != sigma.num_arrows() || self.pi.iter().any(|&g| g >= base.num_arrows()) {
            return Err(invalid("pi must send each arrow of sigma to an arrow of the base"));
        }
        if self.j.len() != base.num_units()
            || self
                .j
                .iter()
                .any(|row| row.len() != fiber.size() || row.iter().any(|&s| s >= sigma.num_arrows()))
        {
            return Err(invalid("j must have one row per base unit and one arrow per fiber element"));
        }
        Ok(Twist {
            sigma,
            base,
            fiber,
            inclusion: self.j.clone(),
            projection: self.pi.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub groupoid: GroupoidDoc,
    pub coefficients: Vec<(usize, f64, f64)>,
}

impl From<&AlgebraElement> for ElementDoc {
    fn from(f: &AlgebraElement) -> Self {
        Self {
            groupoid: f.groupoid.as_ref().into(),
            coefficients: f
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| c.norm() != 0.0)
                .map(|(a, c)| (a, c.re, c.im))
                .collect(),
        }
    }
}

impl ElementDoc {
    pub fn build(&self) -> Result<AlgebraElement, IoError> {
        let g = Arc::new(self.groupoid.build()?);
        let mut f = AlgebraElement::zero(g);
        for &(a, re, im) in &self.coefficients {
            let slot = f
                .coeffs
                .get_mut(a)
                .ok_or_else(|| invalid(format!("arrow {a} does not exist")))?;
            *slot += Complex64::new(re, im);
        }
        Ok(f)
    }
}

/// Sets are keyed by name; they are indexed in name order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub points: Vec<String>,
    pub sets: BTreeMap<String, Vec<String>>,
}

impl From<&Cover> for CoverDoc {
    fn from(c: &Cover) -> Self {
        Self {
            points: (0..c.num_points()).map(|x| c.point_name(x).to_string()).collect(),
            sets: (0..c.num_sets())
                .map(|i| {
                    let members = c.set(i).into_iter().map(|x| c.point_name(x).to_string()).collect();
                    (c.set_name(i).to_string(), members)
                })
                .collect(),
        }
    }
}

impl CoverDoc {
    pub fn build(&self) -> Result<Cover, IoError> {
        let index: BTreeMap<&str, usize> =
            self.points.iter().enumerate().map(|(k, p)| (p.as_str(), k)).collect();
        let sets = self
            .sets
            .iter()
            .map(|(name, pts)| {
                let members = pts
                    .iter()
                    .map(|p| {
                        index
                            .get(p.as_str())
                            .copied()
                            .ok_or_else(|| invalid(format!("set {name:?} names unknown point {p:?}")))
                    })
                    .collect::<Result<Vec<_>, IoError>>()?;
                Ok((name.clone(), members))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Cover::new(self.points.clone(), sets).map_err(invalid)
    }
}

/// Coefficient systems with a textual value format.
pub trait TextCoefficients: Coefficients + Default {
    const NAME: &'static str;
    fn parse_value(s: &str) -> Option<Self::Elem>;
    fn format_value(v: &Self::Elem) -> String;
}

impl TextCoefficients for Integers {
    const NAME: &'static str = "Z";
    fn parse_value(s: &str) -> Option<i64> {
        s.trim().parse().ok()
    }
    fn format_value(v: &i64) -> String {
        v.to_string()
    }
}

impl TextCoefficients for Rationals {
    const NAME: &'static str = "Q";
    fn parse_value(s: &str) -> Option<Ratio<i64>> {
        Ratio::from_str(s.trim()).ok()
    }
    fn format_value(v: &Ratio<i64>) -> String {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl TextCoefficients for Circle {
    const NAME: &'static str = "QmodZ";
    fn parse_value(s: &str) -> Option<QmodZ> {
        Rationals::parse_value(s).map(QmodZ::from_ratio)
    }
    fn format_value(v: &QmodZ) -> String {
        v.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainDoc {
    pub degree: usize,
    pub coefficients: String,
    /// `(set names, point name, value)`.
    pub values: Vec<(Vec<String>, String, String)>,
}

impl<K: TextCoefficients> From<&Cochain<K>> for CochainDoc {
    fn from(c: &Cochain<K>) -> Self {
        let cover = &c.cover;
        Self {
            degree: c.degree(),
            coefficients: K::NAME.into(),
            values: c
                .shape
                .entries
                .iter()
                .zip(&c.values)
                .map(|((t, x), v)| {
                    (
                        t.iter().map(|&i| cover.set_name(i).to_string()).collect(),
                        cover.point_name(*x).to_string(),
                        K::format_value(v),
                    )
                })
                .collect(),
        }
    }
}

impl CochainDoc {
    /// Entries left out are zero.
    pub fn build<K: TextCoefficients>(&self, cover: &Arc<Cover>) -> Result<Cochain<K>, IoError> {
        if self.coefficients != K::NAME {
            return Err(invalid(format!(
                "expected {} coefficients, found {:?}",
                K::NAME,
                self.coefficients
            )));
        }
        let mut c = Cochain::zero(cover.clone(), K::default(), self.degree);
        for (names, point, value) in &self.values {
            if names.len() != self.degree + 1 {
                return Err(invalid(format!("{names:?} should name {} sets", self.degree + 1)));
            }
            let tuple = names
                .iter()
                .map(|n| cover.set_index(n).ok_or_else(|| invalid(format!("unknown set {n:?}"))))
                .collect::<Result<Vec<_>, IoError>>()?;
            let x = cover
                .point_index(point)
                .ok_or_else(|| invalid(format!("unknown point {point:?}")))?;
            let v = K::parse_value(value)
                .ok_or_else(|| invalid(format!("cannot read {value:?} as a {} value", K::NAME)))?;
            c.set(&tuple, x, v).map_err(invalid)?;
        }
        Ok(c)
    }
}

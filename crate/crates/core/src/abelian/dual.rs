//! Characters of finite abelian groups and the circle ℚ/ℤ.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::group::{FinAbGroup, GroupHom, ShortExactSeq};
use super::snf::IntMatrix;

/// An element of ℚ/ℤ, stored as its representative in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Ratio<i64>);

impl QmodZ {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(q: Ratio<i64>) -> Self {
        QmodZ(q - q.floor())
    }

    pub fn zero() -> Self {
        QmodZ(Ratio::zero())
    }

    /// The canonical lift to ℚ, in `[0, 1)`.
    pub fn lift(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(self, other: QmodZ) -> QmodZ {
        Self::from_ratio(self.0 + other.0)
    }

    pub fn neg(self) -> QmodZ {
        Self::from_ratio(-self.0)
    }

    pub fn sub(self, other: QmodZ) -> QmodZ {
        Self::from_ratio(self.0 - other.0)
    }

    pub fn scale(self, k: i64) -> QmodZ {
        Self::from_ratio(self.0 * k)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// A character of a finite abelian group, as an exponent vector `t` acting by
/// `g ↦ Σ t_i g_i / d_i mod 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub group: FinAbGroup,
    pub exponents: Vec<i64>,
}

impl Character {
    pub fn new(group: FinAbGroup, exponents: &[i64]) -> Self {
        let exponents = group.normalize(exponents);
        Self { group, exponents }
    }

    pub fn eval(&self, g: &[i64]) -> QmodZ {
        pairing(&self.group, &self.exponents, g)
    }
}

pub fn pairing(group: &FinAbGroup, t: &[i64], g: &[i64]) -> QmodZ {
    assert_eq!(t.len(), group.rank(), "character has wrong length");
    assert_eq!(g.len(), group.rank(), "element has wrong length");
    let mut acc = Ratio::<i64>::zero();
    for ((&ti, &gi), &d) in t.iter().zip(g).zip(group.orders()) {
        let num = (ti.rem_euclid(d) as i128 * gi.rem_euclid(d) as i128) % d as i128;
        acc += Ratio::new(num as i64, d);
        if acc >= Ratio::one() {
            acc -= Ratio::one();
        }
    }
    QmodZ::from_ratio(acc)
}

/// The dual group, identified with the group itself through exponent vectors.
pub fn dual_group(group: &FinAbGroup) -> FinAbGroup {
    group.clone()
}

/// The dual `Ĉ → B̂` of a homomorphism `B → C`, so that
/// `⟨dual(t), b⟩ = ⟨t, h(b)⟩`.
pub fn dual_hom(h: &GroupHom) -> GroupHom {
    let b = h.domain();
    let c = h.codomain();
    let m = h.matrix();
    let dual = IntMatrix::from_fn(b.rank(), c.rank(), |j, i| {
        let db = b.orders()[j] as i128;
        let dc = c.orders()[i] as i128;
        let v = db * m[(i, j)] as i128;
        debug_assert_eq!(v % dc, 0);
        ((v / dc).rem_euclid(db)) as i64
    });
    GroupHom::new(c.clone(), b.clone(), dual).expect("dual of a hom is well defined")
}

/// `Ĉ` realized inside `B̂` as the characters killing `i(A)`, with a fixed
/// transversal for `B̂/Ĉ`.
#[derive(Clone, Debug)]
pub struct Annihilator {
    /// Members of `Ĉ`, as exponent vectors of `B̂`, in index order.
    pub members: Vec<Vec<i64>>,
    /// The least element (by index) of each coset; contains 0 first.
    pub transversal: Vec<Vec<i64>>,
    /// For each element of `B̂` (by index): its coset's transversal slot and
    /// the member `h` with `x = r + h`.
    pub decomposition: Vec<(usize, Vec<i64>)>,
}

pub fn annihilator(seq: &ShortExactSeq) -> Annihilator {
    let b = &seq.b;
    let a_images: Vec<Vec<i64>> = seq.a.generators().iter().map(|g| seq.i.apply(g)).collect();
    let members: Vec<Vec<i64>> = b
        .elements()
        .filter(|t| a_images.iter().all(|ia| pairing(b, t, ia).is_zero()))
        .collect();
    let mut decomposition: Vec<Option<(usize, Vec<i64>)>> = vec![None; b.size()];
    let mut transversal = Vec::new();
    for (k, x) in b.elements().enumerate() {
        if decomposition[k].is_some() {
            continue;
        }
        let slot = transversal.len();
        for h in &members {
            let y = b.add(&x, h);
            decomposition[b.index_of(&y)] = Some((slot, h.clone()));
        }
        transversal.push(x);
    }
    Annihilator {
        members,
        transversal,
        decomposition: decomposition
            .into_iter()
            .map(|d| d.expect("cosets partition the dual group"))
            .collect(),
    }
}

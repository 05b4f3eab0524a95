//! Coefficient carriers for cocycles and cochains.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::Zero;

use super::dual::QmodZ;
use super::group::FinAbGroup;

pub trait Coefficients: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }
}

impl Coefficients for FinAbGroup {
    type Elem = Vec<i64>;

    fn zero(&self) -> Vec<i64> {
        FinAbGroup::zero(self)
    }
    fn add(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        FinAbGroup::add(self, x, y)
    }
    fn neg(&self, x: &Vec<i64>) -> Vec<i64> {
        FinAbGroup::neg(self, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Coefficients for Integers {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn add(&self, x: &i64, y: &i64) -> i64 {
        x.checked_add(*y).expect("integer overflow")
    }
    fn neg(&self, x: &i64) -> i64 {
        -x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Coefficients for Rationals {
    type Elem = Ratio<i64>;

    fn zero(&self) -> Ratio<i64> {
        Ratio::zero()
    }
    fn add(&self, x: &Ratio<i64>, y: &Ratio<i64>) -> Ratio<i64> {
        x + y
    }
    fn neg(&self, x: &Ratio<i64>) -> Ratio<i64> {
        -x
    }
}

/// ℚ/ℤ, the finite model of the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Circle;

impl Coefficients for Circle {
    type Elem = QmodZ;

    fn zero(&self) -> QmodZ {
        QmodZ::zero()
    }
    fn add(&self, x: &QmodZ, y: &QmodZ) -> QmodZ {
        x.add(*y)
    }
    fn neg(&self, x: &QmodZ) -> QmodZ {
        x.neg()
    }
}

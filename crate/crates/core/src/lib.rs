//! Finite groupoids, their twists by abelian groups, and the convolution
//! algebras and Čech data attached to them.
//!
//! Everything is finite and explicit: groupoids are composition tables,
//! abelian groups are lists of cyclic orders, and every coboundary question
//! is decided exactly through Smith normal form. Complex numbers only
//! appear in the [`star`] module, where algebra identities are checked to a
//! stated tolerance.

pub mod abelian;
pub mod cech;
pub mod cocycle;
pub mod error;
pub mod groupoid;
pub mod io;
pub mod report;
pub mod star;
pub mod twist;

pub use error::{AbelianError, AlgebraError, CechError, GroupoidError, TwistError};
pub use report::{Rule, ValidationReport, Violation};

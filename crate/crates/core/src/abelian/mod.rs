//! Finite abelian groups, their duals, and exact integer linear algebra.

pub mod coeffs;
pub mod dual;
pub mod group;
pub mod snf;
pub mod solve;

pub use coeffs::{Circle, Coefficients, Integers, Rationals};
pub use dual::{annihilator, dual_group, dual_hom, pairing, Annihilator, Character, QmodZ};
pub use group::{quotient, subgroup, FinAbGroup, GroupHom, ShortExactSeq};
pub use snf::{int_mul, int_mul_vec, smith_normal_form, IntMatrix, SmithForm};
pub use solve::{solve_coboundary, CongruenceSystem, PreparedSystem};

//! Finite covers, Čech cochains with pointwise coefficients, and the
//! passage from a circle-valued 1-cocycle to an integral 2-cocycle and the
//! corresponding twist of the cover groupoid.

pub mod cochain;
pub mod cohomology;
pub mod cover;
pub mod obstruct;
pub mod twist;
pub mod unitary;

pub use cochain::{Cochain, CochainShape};
pub use cohomology::{cohomology_class, cohomology_group, CohomologyClass, CohomologyGroup, NerveCohomology};
pub use cover::{cover_groupoid, Cover, CoverGroupoid};
pub use obstruct::{
    canonical_lift, cech_to_groupoid_cocycle, cocycle_from_potentials, groupoid_values,
    lift_and_obstruct, normalize_2cocycle, obstruct_with_lift, shift_lift,
};
pub use twist::{
    default_modulus, groupoid_2cocycle_and_twist, lift_independence_check, xi_check,
    SymbolicIntegerTwist, WindowReport,
};
pub use unitary::{dd_report, local_unitaries, DdReport, LocalUnitaryReport};

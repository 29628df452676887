//! Exact computation with the Pauli-type grading on the Lie superalgebra
//! `P(2^q)`.
//!
//! The crate builds the grading group `(Z_2)^{2q+1}` and the signed tensor
//! words that realize it ([`pauli`]), carries all matrices over
//! arbitrary-precision integers ([`matrix`]), constructs `P(t)` with its
//! structure-constant table and machine-checks its structural properties
//! ([`superalg`]), computes graded codimensions exactly by a feasibility
//! dynamic program with an independent brute-force oracle ([`codim`]), and
//! certifies the closed-form growth exponent `t^2 - 1 + t sqrt(t^2 - 1)`
//! numerically ([`exponent`]).

pub mod codim;
pub mod error;
pub mod exponent;
pub mod matrix;
pub mod numeric;
pub mod pauli;
pub mod report;
pub mod superalg;

pub use codim::{
    brute_force_feasible, brute_force_monomial_values, compositions, degree_of, multinomial,
    z_degree_of, FeasibilityTable, MultiDegree, WitnessTree, BRUTE_FORCE_MAX_TOTAL,
};
pub use error::{Error, Result};
pub use exponent::{
    estimate_exponent, g_of_z, maximize_phi_constrained, phi, probe_reduction,
    stirling_sandwich_check, theoretical_exponent, upper_bound_check, verify_critical_point,
    z_star, ExponentEstimate, ExponentReport, PhiMaximum,
};
pub use matrix::IntMatrix;
pub use pauli::{GroupElement, PauliWord, Sigma, Sign};
pub use report::{CheckItem, CheckReport};
pub use superalg::{
    supercommutator, verify_prop1, verify_prop2, verify_super_axioms, BasisElement, Kind,
    PSuperalgebra, Parity, StructureTable, TripleSelection,
};

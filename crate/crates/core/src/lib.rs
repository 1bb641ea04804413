//! Shear in isotropic finite elasticity.
//!
//! The crate is layered bottom-up:
//!
//! * [`tensor3`]: 3×3 tensors, invariants, Jacobi eigensolver, matrix functions, polar decomposition.
//! * [`kinematics`]: simple shear, finite simple shear, pure shear stretch, pure shear stress and
//!   the decompositions of stretches that commute with it.
//! * [`constitutive`]: the isotropic model interface, stress formulas and a model catalogue.
//! * [`analysis`]: purity checks, effect classification, compatibility audits, the inverse
//!   pure-shear solver and monotonicity probes.
//! * [`report`]: CSV and JSON emission helpers shared with the command-line tool.

pub mod analysis;
pub mod constitutive;
pub mod error;
pub mod kinematics;
pub mod report;
pub mod tensor3;

pub use error::{Error, Result};
pub use tensor3::{
    DeformationGradient, EigenSystem3, Invariants, Rotation3, SpdTensor3, SymTensor3, Tensor3,
};

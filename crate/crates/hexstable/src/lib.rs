//! hexstable: stable 3-forms, SU(3)-structure predicates and the Hitchin
//! flow on 6-dimensional Lie algebras, with exact arithmetic in quadratic
//! number fields.
//!
//! The crate verifies structure-equation catalogs: definiteness of
//! 3-forms via the Hitchin invariant, semi-positivity certificates for
//! (2,2)-forms through Hermitian principal minors, torsion scalars of
//! closed SU(3)-structures, taming checks for symplectic forms, and a
//! fixed-step integrator for the Hitchin flow with invariant monitors.

pub mod exterior;
pub mod liealg;
pub mod sampling;
pub mod stable;
pub mod conditions;
pub mod flow;
pub mod suites;
pub mod linalg;
pub mod scalars;

pub use exterior::{lefschetz_solve, Endomorphism6, ExteriorForm, FormError};
pub use scalars::{QuadComplex, QuadScalar, Rational, RealScalar, Scalar, ScalarError};

//! Numerical verification of the Schläfli identity for Euclidean tetrahedra,
//! built on the spinor phase spaces that underlie the semiclassics of the
//! Wigner 6j-symbol.
//!
//! The crate assembles, in order of increasing structure:
//!
//! - [`geometry`]: tetrahedra from six edge lengths, signed dihedral angles,
//!   the phase `S = Σ J_r ψ_r`, and finite-difference residuals for the
//!   Euler, Schläfli and generating-function identities.
//! - [`spinor`]: the `ℂ²` phase-space primitives — Hopf map, axis-angle
//!   SU(2), time reversal, the quaternion matrix `M(z)` and group recovery.
//! - [`contour`]: the twelve-spinor configuration of a tetrahedron and the
//!   three-leg closed contour whose action is twice the phase `S`, plus the
//!   Stokes-theorem sweep that turns that statement into the Schläfli
//!   identity.
//! - [`reduction`]: both symplectic reductions — down to `T*SU(2)` and then
//!   to the `(J, τ)` cylinders — with closed-form group flows, the reduced
//!   one-form, and the SU(2) character.
//! - [`sixj`]: an exact big-rational Wigner 6j oracle (Racah sum) and the
//!   `cos(S + π/4)/√(12π|V|)` asymptotic formula it validates.
//! - [`qdeform`]: the group `B` of upper-triangular `SL(2,ℂ)` matrices as
//!   deformed angular-momentum space, its coproduct, and the hyperbolic
//!   geometry it acts on.
//!
//! [`acceptance`] bundles the end-to-end checks; the `tetraphase` binary in
//! the companion CLI crate exposes everything as subcommands.

pub mod acceptance;
pub mod contour;
pub mod geometry;
pub mod linalg;
pub mod qdeform;
pub mod reduction;
pub mod sample;
pub mod sixj;
pub mod spinor;

pub use geometry::{EdgeLengths, ExistenceClass, GeometryError, Orientation, TetraEmbedding};
pub use linalg::{Mat3, Spinor, SpinorMatrix, Vec3};
pub use spinor::Su2;

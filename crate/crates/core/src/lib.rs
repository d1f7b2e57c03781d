//! Exact classical and twisted Alexander invariants of knots.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`]: exact scalars in Q, Q(i) and simple extensions Q(θ);
//! * [`laurent`]: Laurent polynomials over those fields, normal forms, gcds;
//! * [`matrix`]: Smith normal form, minor gcds, null spaces, determinants;
//! * [`knot`]: Wirtinger presentations, braid closures, representations;
//! * [`invariants`]: Alexander matrices, elementary ideals, Wada quotients;
//! * [`dilation`]: dilation representations and the dimension count that
//!   ties them to the zeros of the elementary polynomials;
//! * [`derived`]: derived groups of actions, normal forms and the
//!   S-group operator action.

pub mod derived;
pub mod dilation;
pub mod field;
pub mod invariants;
pub mod knot;
pub mod laurent;
pub mod matrix;
pub mod parse;
mod qpoly;

pub use field::{Field, FieldError, FieldKind, Scalar};
pub use laurent::{LaurentError, LaurentPoly, RationalFunction};
pub use matrix::{Matrix, MatrixError, PolyMatrix, ScalarMatrix};

//! Exact computations on Hesse-pencil cubics.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: rationals, tower fields, sparse polynomials and exact
//!   linear algebra;
//! * [`cayley`]: Hessians, bordered Hessians, osculating conics and the
//!   second Hessian of an arbitrary plane curve;
//! * [`hesse`]: the Hesse pencil, its 27 sextactic points, the symmetry
//!   group and three independent constructions of osculating conics;
//! * [`intersect`]: local intersection multiplicities;
//! * [`syzygy`]: Jacobian syzygies, exponents and freeness.

pub mod algebra;
pub mod cayley;
pub mod hesse;
pub mod intersect;
pub mod syzygy;

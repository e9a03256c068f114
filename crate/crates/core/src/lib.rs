//! Chebyshev centres and fixed points of isometric actions on
//! finite-dimensional L1-type spaces.
//!
//! The crate computes circumradii and Chebyshev centres for finite point sets
//! in weighted ℓ¹ spaces, trace-class matrix spaces and their ⊕₁ sums,
//! averages centres over finite isometry groups to obtain invariant points,
//! trivializes bounded cocycles with the norm bound `‖v‖ ≤ sup_g ‖b(g)‖`, and
//! writes derivations into matrix preduals as inner derivations.

pub mod chebyshev;
pub mod error;
pub mod fixedpoint;
pub mod groups;
pub mod linalg;
pub mod lp;
#[cfg(any(test, feature = "oracles"))]
pub mod oracles;
pub mod spaces;
#[cfg(any(test, feature = "oracles"))]
pub mod testkit;

pub use chebyshev::{chebyshev_centre, chebyshev_centre_with, circumradius, CentreOptions, CentreResult, Method, Selection};
pub use error::{Error, Result};
pub use fixedpoint::{
    check_embedded_centre, invariant_point, solve_derivation, trivialize_cocycle, unitary_decomposition, Derivation,
    FixedPointResult,
};
pub use groups::{AffineIsometry, Cocycle, GroupElements, LinearIsometry};
pub use linalg::CMatrix;
pub use spaces::{Point, PointSet, SpaceKind, SpaceSpec};

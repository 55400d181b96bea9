//! Exact analysis of line arrangements in the complex projective plane:
//! intersection lattices, Tjurina numbers, modular and nearly modular
//! points, Jacobian syzygies and the free / nearly free classification,
//! jumping points, combinatorially predicted splitting types, and a
//! slope-count certificate for rational point configurations.
//!
//! All arithmetic is exact. The core is generic over the coefficient
//! [`scalar::Field`]; the two shipped fields are arbitrary-precision
//! rationals and cyclotomic extensions Q(zeta_n), with concrete aliases
//! below. Input files choose the field at runtime through
//! [`FieldArrangement`].

pub mod arrangement;
pub mod error;
pub mod families;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod slopes;
pub mod syzygy;

pub use arrangement::{Arrangement, FieldArrangement, ProjPoint, Solvability};
pub use error::{Error, Result};
pub use scalar::{Cyclotomic, Field, FieldKind, Rational};

/// Arrangement over the rationals.
pub type QArrangement = Arrangement<Rational>;
/// Arrangement over a cyclotomic field.
pub type CycArrangement = Arrangement<Cyclotomic>;
/// Rational projective point.
pub type QPoint = ProjPoint<Rational>;
/// Rational homogeneous polynomial.
pub type QPoly = poly::HomogPoly<Rational>;
/// Homogeneous polynomial over a cyclotomic field.
pub type CycPoly = poly::HomogPoly<Cyclotomic>;

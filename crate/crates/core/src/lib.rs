//! Exact-arithmetic construction and verification of elliptic curves with
//! large cyclic torsion: Z/10 and Z/12 over Q, Z/14 and Z/16 over quadratic
//! fields Q(sqrt(d)).
//!
//! Everything is computed with arbitrary-precision rationals; nothing in the
//! verification path touches floating point. The one exception is the mod-p
//! sieve score in [`sieve`], which is a ranking heuristic only.

pub mod curve;
pub mod cwalk;
pub mod families;
pub mod field;
pub mod geometry;
pub mod params;
pub mod record;
pub mod sieve;

pub use curve::{Curve, CurveError, Point, PointOrder};
pub use field::{FieldDesc, FieldError, QFElem, Rat};

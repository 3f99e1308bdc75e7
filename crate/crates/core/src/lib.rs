//! Counting elliptic curves over Q by naive height and torsion subgroup.
//!
//! Three independent routes to the same counts: a direct census of minimal
//! short Weierstrass equations, lattice-point counting in semi-algebraic
//! regions followed by a Mobius sieve, and specialization of universal
//! families with a marked torsion structure.

pub mod arith;
pub mod census;
pub mod curves;
pub mod families;
pub mod regions;
pub mod torsion;
pub mod verify;

pub use arith::{mobius, valuation, zeta, RatPoly, Rational};
pub use curves::{disc_core, height, is_minimal, long_to_short, minimal_reduce, LongCurve, ShortCurve};
pub use torsion::{torsion_subgroup, CurvePoint, TorsionGroup};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular curve: 4A^3+27B^2 = 0 for A={a}, B={b}")]
    SingularCurve { a: String, b: String },
    #[error("point is not on the curve")]
    PointOffCurve,
    #[error("factorization gave up on {0}")]
    FactorizationTimeout(String),
    #[error("family validation failed for {group}: {reason}")]
    FamilyValidation { group: String, reason: String },
    #[error("sieve route disagreement at (A,B)=({a},{b})")]
    SieveMismatch { a: i128, b: i128 },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::fan::Cone;

pub type Result<T, E = ToricError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("ray {index} has {found} coordinates, expected {expected}")]
    RayDimension {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },

    #[error("ray {index} is not primitive (gcd of coordinates is {gcd})")]
    NonPrimitiveRay { index: usize, gcd: i64 },

    #[error("rays {first} and {second} are equal")]
    DuplicateRay { first: usize, second: usize },

    #[error("ray {index} does not appear in any maximal cone")]
    UnusedRay { index: usize },

    #[error("maximal cone {index} has {found} rays, expected {expected}")]
    ConeSize {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("ray index {ray} is out of range (fan has {count} rays)")]
    RayIndexOutOfRange { ray: usize, count: usize },

    #[error("maximal cone {index} repeats a ray index")]
    RepeatedRayInCone { index: usize },

    #[error("maximal cone {cone} is listed twice")]
    DuplicateCone { cone: Cone },

    #[error("rays of cone {cone} are linearly dependent")]
    DependentCone { cone: Cone },

    #[error("cones {first} and {second} overlap across their common wall")]
    FanCondition { first: Cone, second: Cone },

    #[error("wall {wall} lies in more than two maximal cones")]
    OverfullWall { wall: Cone },

    #[error("fan is not smooth: cone {cone} has determinant {determinant}")]
    NotSmooth { cone: Cone, determinant: i128 },

    #[error("fan is not complete: {reason}")]
    NotComplete { reason: String },

    #[error("{cone} is not a face of the fan")]
    NotAFace { cone: Cone },

    #[error("face dimension {k} is out of range 0..={dim}")]
    FaceDimensionOutOfRange { k: usize, dim: usize },

    #[error("divisor has {found} coefficients but the fan has {expected} rays")]
    DivisorLength { expected: usize, found: usize },

    #[error("character has {found} coordinates, expected {expected}")]
    CharacterLength { expected: usize, found: usize },

    #[error("Riemann-Roch integral {value} is not an integer")]
    NonIntegralChi { value: String },

    #[error("recursion budget of {budget} evaluations exceeded")]
    RecursionBudgetExceeded { budget: usize },

    #[error("cohomology scan region did not stabilise after {expansions} expansions")]
    ScanRegionUnstable { expansions: usize },

    #[error("unknown catalog entry {name:?}")]
    UnknownCatalog { name: String },

    #[error("invalid parameters for catalog entry {name}: {reason}")]
    InvalidCatalogParams { name: String, reason: String },

    #[error("invalid divisor literal {literal:?}")]
    DivisorLiteral { literal: String },
}

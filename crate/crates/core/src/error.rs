//! Error types shared by all modules.

use thiserror::Error;

/// Every validation rule and cross-check failure in the library maps to one
/// variant here, named after the rule it violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid tropical point ({a},{b},{c}) for s={s}: a+b must equal min(s*c, 0)")]
    InvalidTropicalPoint { a: String, b: String, c: String, s: u32 },

    #[error("non-primitive tropical point ({a},{b},{c}): divide by gcd {g} and scale the level")]
    NonPrimitiveTropicalPoint { a: String, b: String, c: String, g: String },

    #[error(
        "vertex ({x},0) lies on the mutation wall y = 0 and on {count} facets: the local model \
there is not determined by a single chart"
    )]
    VertexOnMutationWall { x: String, count: usize },

    #[error("non-negative level {level} for constraint {index}: levels must be strictly negative")]
    NonNegativeLevel { index: usize, level: String },

    #[error("shear parameter must be at least 1")]
    InvalidShearParameter,

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("chart {chart} has a non-integral vertex ({x},{y})")]
    NonIntegralVertex { chart: u8, x: String, y: String },

    #[error("chart 2 image is not convex near ({x},{y})")]
    NonConvexChartImage { x: String, y: String },

    #[error("constraint {index} is not tight on a one-dimensional face")]
    RedundantConstraint { index: usize },

    #[error("degenerate polytope: fewer than 3 affinely independent points")]
    DegeneratePolytope,

    #[error("origin is not strictly interior to the polygon")]
    OriginNotInterior,

    #[error("({x},{y}) is not a vertex of the polygon")]
    NotAVertex { x: String, y: String },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("no rational scaling: c^{s} = {ratio} has no rational solution")]
    NoRationalScaling { s: u32, ratio: String },

    #[error("polynomial is not in normal form (monic with constant term 1) and cannot be normalized")]
    NotNormalForm,

    #[error("empty slice: vertical degree {b} is outside the projection of the polytope")]
    EmptySlice { b: String },

    #[error("dual mutation identity failed: {0}")]
    MutationIdentityFailed(String),

    #[error("toricity criterion and elimination oracle disagree: {0}")]
    CriterionOracleMismatch(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::interval::Interval;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kupisch series violates ℓ_(i+1) ≥ ℓ_i − 1 or the linear bounds at vertex {vertex}")]
    KupischViolation { vertex: usize },
    #[error("cyclic algebra has a winding projective at vertex {vertex} (length {len} > {n})")]
    WindingUnsupported { vertex: usize, len: usize, n: usize },
    #[error("malformed algebra: {0}")]
    InvalidAlgebra(String),
    #[error("{0} is not an indecomposable module of this algebra")]
    InvalidInterval(Interval),
    #[error("{0} is projective and has no Auslander-Reiten translate")]
    ProjectiveHasNoTau(Interval),
    #[error("there is no non-split extension of {quot} by {sub}")]
    NotAnExtension { sub: Interval, quot: Interval },
    #[error("{count} Auslander-Reiten sequences exceed the enumeration cap of {cap}")]
    TooManyStructures { count: usize, cap: usize },
    #[error("bit string of length {got} does not match {expected} Auslander-Reiten sequences")]
    StructureWidth { expected: usize, got: usize },
    #[error("object of total dimension {dim} exceeds the bound {bound}")]
    DimensionBound { dim: usize, bound: usize },
    #[error("unsupported field characteristic {0}; use 2 or 3")]
    UnsupportedField(u32),
    #[error("could not split the module into catalogued indecomposables: {0}")]
    DecompositionFailed(String),
    #[error("module does not match the catalogue of indecomposables")]
    UnrecognizedModule,
    #[error("morphism is not injective")]
    NotMonic,
    #[error("not a short exact sequence: {0}")]
    NotExact(String),
    #[error("Ext between {quot} and {sub} has dimension {dim}; only multiplicity-free Ext is supported")]
    ExtNotMultiplicityFree { quot: String, sub: String, dim: usize },
    #[error("composition series have lengths between {min} and {max}")]
    NotJordanHolder { min: usize, max: usize },
    #[error("invalid fixture: {0}")]
    Fixture(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

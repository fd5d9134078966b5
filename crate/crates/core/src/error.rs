use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// The axiom or structural condition a validation step found violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    // monoid presentations
    ZeroGenerator,
    GeneratorDimension,
    NotSharp,
    // half-edge graph structure
    DuplicateId,
    UnknownId,
    RootIdempotent,
    Involution,
    FixedPoints,
    LengthSymmetry,
    LengthAxiom,
    LengthDimension,
    LengthMembership,
    Disconnected,
    // morphisms
    VertexImage,
    HalfEdgeRoots,
    InvolutionCompat,
    Divisibility,
    ContractedEnds,
    MissingImage,
    // targets of gonality witnesses
    NotHarmonic,
    Degenerate,
    NotATree,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::ZeroGenerator => "zero_generator",
            Axiom::GeneratorDimension => "generator_dimension",
            Axiom::NotSharp => "not_sharp",
            Axiom::DuplicateId => "duplicate_id",
            Axiom::UnknownId => "unknown_id",
            Axiom::RootIdempotent => "root_idempotent",
            Axiom::Involution => "involution",
            Axiom::FixedPoints => "fixed_points",
            Axiom::LengthSymmetry => "length_symmetry",
            Axiom::LengthAxiom => "length_axiom",
            Axiom::LengthDimension => "length_dimension",
            Axiom::LengthMembership => "length_membership",
            Axiom::Disconnected => "disconnected",
            Axiom::VertexImage => "vertex_image",
            Axiom::HalfEdgeRoots => "half_edge_roots",
            Axiom::InvolutionCompat => "involution_compat",
            Axiom::Divisibility => "divisibility",
            Axiom::ContractedEnds => "contracted_ends",
            Axiom::MissingImage => "missing_image",
            Axiom::NotHarmonic => "not_harmonic",
            Axiom::Degenerate => "degenerate",
            Axiom::NotATree => "not_a_tree",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed validation: which axiom, at which element, and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub element: Option<String>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: Axiom, element: Option<&str>, detail: impl Into<String>) -> Self {
        Violation {
            axiom,
            element: element.map(str::to_owned),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.element {
            Some(el) => write!(f, "{} at {}: {}", self.axiom, el, self.detail),
            None => write!(f, "{}: {}", self.axiom, self.detail),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed monoid spec: {0}")]
    MalformedSpec(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("division by the zero element")]
    ZeroDivisor,
    #[error("empty input")]
    EmptyInput,
    #[error("wrong monoid: {0}")]
    MonoidMode(String),
    #[error("homomorphism image {image:?} of {element} is not in the target monoid")]
    HomRange { element: String, image: Vec<i64> },
    #[error("function is not piecewise linear along edge {0}")]
    NotPiecewiseLinear(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("morphism is not harmonic")]
    NotHarmonic,
    #[error("morphism is degenerate at vertex {0}")]
    Degenerate(String),
    #[error("degree is undefined for a morphism onto a single vertex")]
    SingleVertexTarget,
    #[error("size limit exceeded: {size} > {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("parse error at {pointer}: {message}")]
    Parse { pointer: String, message: String },
    #[error("invalid input: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Invalid(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

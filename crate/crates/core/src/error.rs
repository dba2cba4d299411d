use thiserror::Error;

/// Errors produced by graph construction, the coloring pipeline, and the
/// exact checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0} rejected")]
    LoopEdge(usize),

    #[error("graph must be connected for this operation")]
    Disconnected,

    #[error("coloring has {got} entries but graph has {expected} vertices")]
    ColoringLength { got: usize, expected: usize },

    #[error("coloring value {0} is not 0 or 1")]
    BadColorValue(u8),

    #[error("R must be an odd number >= 5, got {0}")]
    InvalidRadius(usize),

    #[error("net has R = {net} but radius selection has R = {selection}")]
    RadiusMismatch { net: usize, selection: usize },

    #[error("no odd R <= {cap} satisfies the sphere-product inequality; worst vertex {worst_vertex}")]
    NoValidRadius { cap: usize, worst_vertex: usize },

    #[error("sphere-code capacity insufficient at net vertex {net_index} (base vertex {base_vertex}): {needed} codes needed, {available} available")]
    CapacityExceeded {
        net_index: usize,
        base_vertex: usize,
        needed: u64,
        available: u64,
    },

    #[error("sphere code at net vertex {net_index} assigns {assigned} ones on a sphere of size {sphere}")]
    CodeOverflow {
        net_index: usize,
        assigned: u64,
        sphere: usize,
    },

    #[error("mapping is not a valid automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("no net point within distance 1 of the image of net vertex {0}")]
    ProjectionFailed(usize),

    #[error("projected map is not an automorphism of the quotient")]
    ProjectionNotAutomorphism,

    #[error("search budget exhausted after {0} steps")]
    BudgetExceeded(u64),

    #[error("size budget exceeded: {0}")]
    SizeBudget(String),

    #[error("parameter constraint violated: {0}")]
    Parameter(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

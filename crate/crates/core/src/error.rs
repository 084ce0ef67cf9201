use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("invalid simple type: {0}")]
    InvalidType(String),
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("weight is not a root: {0}")]
    NotARoot(String),
    #[error("operands belong to different algebras ({0} vs {1})")]
    MixedAlgebra(String, String),
    #[error("algebra construction failed: {0}")]
    Construction(String),
    #[error("empty crossed-node set does not define a proper parabolic")]
    EmptyCross,
    #[error("zero element has no degree")]
    ZeroElement,
    #[error("element has a component of degree {found} below the filtrand {required}")]
    BelowFiltrand { found: i32, required: i32 },
    #[error("word ({j}{k}) is not a length-2 Hasse word for this parabolic")]
    NotHasseWord { j: usize, k: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("cochain degree {0} not supported here")]
    UnsupportedDegree(usize),
    #[error("zero cochain: annihilator is all of g0")]
    ZeroCochain,
    #[error("a0 is not a subalgebra of g0: {0}")]
    NotSubalgebra(String),
    #[error("no regular harmonic module: the upper bound is undefined")]
    NoRegularModule,
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("lowest weight vector not of root-vector form")]
    NotRootVectorForm,
}

pub type Result<T> = std::result::Result<T, LieError>;

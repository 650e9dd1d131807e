use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {position}: generator index {index} out of range for {strands} strands")]
    IndexOutOfRange {
        position: usize,
        index: u32,
        strands: u32,
    },
    #[error("letter {position}: 0 is not a generator")]
    ZeroLetter { position: usize },
    #[error("cannot parse braid letter {0:?}")]
    BadToken(String),
    #[error("move does not apply: {0}")]
    MoveMismatch(String),
    #[error(
        "destabilization needs e_{index} = 1 as the final letter, found e_{index} = {exponent}"
    )]
    NotDestabilizable { index: u32, exponent: i64 },
    #[error("expected a positive braid word")]
    NotPositive,
    #[error("split needs e_{index} = 1, found {exponent}")]
    NotSplittable { index: u32, exponent: i64 },
    #[error("closure is a {0}-component link, not a knot")]
    NotAKnot(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("faces are undefined for a patch with dangling ends")]
    DanglingEnds,
    #[error("label {label} end at {vertex} is absent and not a declared ghost")]
    MissingEnd { vertex: String, label: u32 },
    #[error("lambda path left the same-sign region at {0}")]
    SignChange(String),
    #[error("no Scharlemann cycle on labels ({0}, {1})")]
    NoAnchorCycle(u32, u32),
    #[error("{0}")]
    Inconsistent(String),
}

impl GraphError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        GraphError::Field {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex set is not a great web: {}", .0.join("; "))]
    NotCertified(Vec<String>),
    #[error("valence of u{vertex} in Gamma is {found}, expected {expected}")]
    Valence {
        vertex: u32,
        found: usize,
        expected: usize,
    },
    #[error("no Scharlemann cycle of the web on labels ({0}, {1})")]
    NoAnchorCycle(u32, u32),
    #[error("the web admits no planar realization of Gamma")]
    Unrealizable,
    #[error("{0}")]
    Inconsistent(String),
}

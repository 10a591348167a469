use crate::galois_map::GaloisClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not in trace-zero form (c4 = {0})")]
    NotTraceZero(String),
    #[error("polynomial is not squarefree; roots cannot be separated")]
    RootFinding,
    #[error("galois screen classified the polynomial as {0:?}, not D5")]
    NotD5(GaloisClass),
    #[error("a resolvent V_j vanishes (degenerate t^5 - c^5 shape)")]
    DegenerateResolvent,
    #[error("no root ordering yields an integral triple up to {0} bits")]
    NoValidOrdering(u32),
    #[error("numerical instability persisted up to {0} bits")]
    NumericalInstability(u32),
    #[error("triple does not satisfy Nm(B^2 - 4 conj(A) A^2) = 5 C^2")]
    NotOnVariety,
    #[error("degenerate triple: Nm(A) = 0")]
    DegenerateTriple,
    #[error("subfield witness needs C != 0")]
    ZeroC,
    #[error("need at least {need} rows in the fit window, have {have}")]
    InsufficientRows { need: usize, have: usize },
    #[error("zero count in the fit window at X = {0}")]
    ZeroCount(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

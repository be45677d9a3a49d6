use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("not a monic irreducible polynomial: {0}")]
    NotIrreducible(String),
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeBound { degree: usize, bound: u32 },
    #[error("not SL(2): nonzero trace")]
    NotSl2,
    #[error("not in B': spectral datum vanishes identically")]
    ZeroDatum,
    #[error("cone relation violated")]
    ConeViolated,
    #[error("inconsistent spectral datum bounds: {0}")]
    DatumBounds(String),
    #[error("factor {0} is not in the zero locus")]
    NotInZeroLocus(String),
    #[error("invalid Higgs pair: {0}")]
    InvalidPair(String),
    #[error("point pair is not traceless")]
    NotTraceless,
    #[error("point pair does not commute")]
    NotCommuting,
    #[error("metric is not Hermitian positive definite")]
    BadMetric,
    #[error("invalid flow configuration: {0}")]
    BadConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

/// Errors raised by builders, the refinement engine and the analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("no built-in modulus for F_{q}; an irreducible modulus must be supplied")]
    MissingModulus { q: u64 },
    #[error("modulus must be a monic polynomial of degree {expected}, got {got} coefficients")]
    BadModulus { expected: usize, got: usize },
    #[error("field element {value} out of range for F_{q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),

    #[error("matrix is not in SL_n: determinant {det}")]
    NotSpecialLinear { det: u32 },
    #[error("matrix dimension {got} does not match {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point {0} is mapped outside the point list")]
    NotClosed(usize),
    #[error("enumeration needs {needed} points, cap is {cap}")]
    SizeCap { needed: u128, cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator set has no identity label `e`")]
    MissingIdentity,
    #[error("generator `{0}` has no inverse in the generator set")]
    NotInverseClosed(String),
    #[error("action is not transitive: point {0} is unreachable from point 0")]
    NotTransitive(usize),
    #[error("generator `{label}` acts on {got} points, expected {expected}")]
    DegreeMismatch { label: String, expected: usize, got: usize },
    #[error("group closure exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("{0} is out of range")]
    OutOfRange(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("vertex counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("refinement did not stabilize within {0} iterations")]
    IterationCapExceeded(usize),
    #[error("snapshot {0} was not retained")]
    SnapshotDropped(usize),

    #[error("graph is disconnected: no path from {from} to {to}")]
    Disconnected { from: usize, to: usize },
    #[error("configuration is not coherent")]
    NotCoherent,
    #[error("color {0} is not used by any pair")]
    NoPairOfColor(u32),
    #[error("walk count mismatch for base color {base}: recurrence {recurrence}, direct {direct}")]
    WalkMismatch { base: u32, recurrence: u64, direct: u64 },

    #[error("lower bound requires q > 2, got q = {0}")]
    InapplicableQ(u64),
    #[error("permutation is not an automorphism: color of ({0}, {1}) changes")]
    NotAutomorphism(usize, usize),
    #[error("power {power} of the witness fixes point {point}")]
    HasFixedPoint { power: usize, point: usize },
    #[error("no automorphism witness available")]
    NoWitness,

    #[error("spec error: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

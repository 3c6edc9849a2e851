use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("q = {0} is not a supported field (expected one of 17, 41, 89, 97)")]
    UnsupportedField(u64),
    #[error("({u} + {v}·√q)/2 is not integral: u and v must have the same parity")]
    Parity { u: String, v: String },
    #[error("operands live in different fields (q = {0} and q = {1})")]
    MixedField(u32, u32),
    #[error("valuation of zero is infinite")]
    InfiniteValuation,
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides 2q = {two_q}")]
    BadAuxiliaryPrime { p: u64, two_q: u64 },
    #[error("{0} is not a quadratic non-residue mod {1}")]
    NotNonResidue(u64, u64),
    #[error("quadratic character is undefined at zero")]
    ZeroElement,
    #[error("curve is singular over the residue field")]
    SingularCurve,
    #[error("additive degeneration: both c4 and Δ vanish")]
    AdditiveReduction,
    #[error("field of order {0} is too large for naive enumeration")]
    FieldTooLarge(u64),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("p = q: the splitting character is undefined at the ramified prime")]
    RamifiedPrime,
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("decomposition search exhausted (|r| ≤ {r_max}, coefficient box {coeff_box})")]
    DecompositionNotFound { r_max: u32, coeff_box: u64 },
    #[error("valuation mismatch for {name}: expected {expected}, found {actual}")]
    ValuationMismatch {
        name: String,
        expected: String,
        actual: String,
    },
    #[error("no coefficient data for {label} at p = {p}")]
    MissingCoefficients { label: String, p: u64 },
    #[error("{label} has only numeric embeddings at p = {p}")]
    NumericOnly { label: String, p: u64 },
    #[error(
        "numeric product not certified: error bound {bound:.3e} ≥ 0.5; embeddings need error ≤ {required:.3e}"
    )]
    InsufficientPrecision { bound: f64, required: f64 },
    #[error("invalid coefficient data: {0}")]
    InvalidData(String),
    #[error("multi-Frey step failed: {0}")]
    MultiFrey(String),
}

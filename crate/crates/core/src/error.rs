use thiserror::Error;

/// Errors raised by the simulator, the polynomial builders and the harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCount { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: state has {state} qubits, operator acts on {operator}")]
    DimensionMismatch { state: usize, operator: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },

    #[error("CNOT control and target must differ (both {0})")]
    CnotSameQubit(usize),

    #[error("invalid Pauli label {0:?}, expected X or Y")]
    PauliLabel(char),

    #[error("Y-count {y_count} has mixed coefficients; polynomial is not symmetry-collapsible")]
    MixedClass { y_count: usize },

    #[error("state is not an eigenvector of the polynomial (residual {residual:.3e})")]
    NotEigenvector { residual: f64 },

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("invalid probability distribution: {0}")]
    Distribution(String),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("missing estimate for Y-count {0}")]
    MissingClass(usize),

    #[error("need at least 2 estimates, got {0}")]
    TooFewEstimates(usize),

    #[error("probability {name}={value} outside [0, 1]")]
    Probability { name: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown report format {0:?}")]
    Format(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("serialization failed: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, SimError>;

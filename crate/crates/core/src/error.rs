use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("instance with {num_nodes} nodes exceeds the exhaustive-search bound of {max}")]
    TooLarge { num_nodes: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "{num_qubits} qubits exceeds the simulator limit of {max} \
         (would need {bytes} bytes of amplitudes)"
    )]
    Capacity { num_qubits: usize, max: usize, bytes: u128 },

    #[error("objective returned {value} at {point:?}")]
    NonFiniteObjective { point: Vec<f64>, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

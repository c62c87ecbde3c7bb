use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Numeric(#[from] biaxial_core::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("output: {0}")]
    Csv(#[from] csv::Error),
    #[error("output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn invalid(e: biaxial_core::Error) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 3,
        }
    }
}

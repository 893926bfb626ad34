use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] sofic_core::Error),
    #[error("input error: {0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 input, 3 budget, 4 infeasible, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(sofic_core::Error::Budget { .. }) => 3,
            CliError::Core(sofic_core::Error::Infeasible(_)) => 4,
            CliError::Core(_) | CliError::Input(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

pub fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

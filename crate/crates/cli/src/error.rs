use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{0:?} is neither a readable model file nor a catalog tag")]
    UnknownSource(String),

    #[error("no fibre named {name:?}; available: {available}")]
    UnknownFibre { name: String, available: String },

    #[error(transparent)]
    Library(#[from] genus2_pencils::Error),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    /// 1 for a failed check on well-formed input, 2 for anything the user
    /// has to fix in the invocation or the file.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(_) => 1,
            _ => 2,
        }
    }
}

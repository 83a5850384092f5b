use thiserror::Error;

/// Failures surfaced by the command-line tool, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at {location}: {message}")]
    Config { location: String, message: String },

    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Engine(#[from] fso_capacity::Error),
}

impl CliError {
    /// Wraps a parameter error raised while building `section` of the config.
    pub(crate) fn field(section: &str, e: fso_capacity::Error) -> Self {
        match e {
            fso_capacity::Error::InvalidParameter { field, value, reason } => Self::Config {
                location: format!("{section}.{field}"),
                message: format!("{value} {reason}"),
            },
            other => Self::Engine(other),
        }
    }

    /// 2 for configuration problems, 3 for engine preconditions, 4 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } | Self::Io { .. } => 2,
            Self::Engine(e) => match e {
                fso_capacity::Error::InvalidParameter { .. } => 2,
                fso_capacity::Error::Precondition(_) | fso_capacity::Error::Pole { .. } => 3,
                _ => 4,
            },
        }
    }
}

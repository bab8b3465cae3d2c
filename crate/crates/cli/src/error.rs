use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    VerificationFailure = 1,
    Usage = 2,
    InvariantBreach = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(#[source] cellq_core::Error),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: cellq_core::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: not a valid artifact: {source}", path.display())]
    Artifact {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("cache entry {key} is corrupt: {source}")]
    CorruptCache {
        key: String,
        #[source]
        source: serde_json::Error,
    },
}

impl CliError {
    pub fn stage(stage: &'static str) -> impl FnOnce(cellq_core::Error) -> Self {
        move |source| CliError::Stage { stage, source }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io { .. } | CliError::Artifact { .. } => Exit::Usage,
            CliError::Stage { source, .. } if source.is_invariant_breach() => Exit::InvariantBreach,
            CliError::Stage { .. } => Exit::VerificationFailure,
            CliError::CorruptCache { .. } => Exit::InvariantBreach,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kinds() {
        let stage = |e| CliError::Stage { stage: "reps", source: e };
        assert_eq!(CliError::Usage("x".into()).exit(), Exit::Usage);
        assert_eq!(CliError::Config(cellq_core::Error::UnknownType("Z".into())).exit(), Exit::Usage);
        assert_eq!(stage(cellq_core::Error::SplitFailure("x".into())).exit(), Exit::VerificationFailure);
        assert_eq!(stage(cellq_core::Error::NoRationalPerronRoot("x".into())).exit(), Exit::VerificationFailure);
        for e in [
            cellq_core::Error::NotDivisible("x".into()),
            cellq_core::Error::PositivityViolation("x".into()),
            cellq_core::Error::CrossCheckMismatch("x".into()),
        ] {
            assert_eq!(stage(e).exit(), Exit::InvariantBreach);
        }
        let bad = serde_json::from_str::<u8>("{").unwrap_err();
        assert_eq!(CliError::CorruptCache { key: "k".into(), source: bad }.exit(), Exit::InvariantBreach);
        assert_eq!(Exit::InvariantBreach as i32, 3);
    }
}

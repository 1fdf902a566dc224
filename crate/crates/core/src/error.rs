use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Caller supplied an argument outside the operation's domain.
    #[error("argument error: {0}")]
    Argument(String),

    /// A configured budget (patch cap, coset budget, search nodes) ran out.
    #[error("resource error: {0}")]
    Resource(String),

    /// Input text did not match the expected schema.
    #[error("parse error: {0}")]
    Parse(String),

    /// The input is valid but falls outside what the pipelines handle.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A pipeline stage failed; wraps the stage name and the cause.
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    /// An internal invariant was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Innermost error, skipping stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// Process exit status: 2 argument/parse/unsupported input, 3 resource,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Argument(_) | Error::Parse(_) | Error::Unsupported(_) => 2,
            Error::Resource(_) => 3,
            _ => 1,
        }
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })
    }
}

use std::io;
use std::path::PathBuf;

use mono2rest_core::callgraph::CallGraphError;
use mono2rest_core::clustering::ClusteringError;
use mono2rest_core::evaluation::EvaluationError;
use mono2rest_core::restify::RestifyError;
use mono2rest_core::semantics::SemanticsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
    #[error("call graph: {0}")]
    CallGraph(#[from] CallGraphError),
    #[error("semantics: {0}")]
    Semantics(#[from] SemanticsError),
    #[error("clustering: {0}")]
    Clustering(#[from] ClusteringError),
    #[error("restify: {0}")]
    Restify(#[from] RestifyError),
    #[error("evaluation: {0}")]
    Evaluation(#[from] EvaluationError),
}

impl CliError {
    /// Process exit code; one per error family. 2 is shared with argument
    /// parsing errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Io { .. } => 3,
            Self::Input { .. } => 4,
            Self::CallGraph(_) => 5,
            Self::Semantics(_) => 6,
            Self::Clustering(_) => 7,
            Self::Restify(_) => 8,
            Self::Evaluation(_) => 9,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn input(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        Self::Input {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let errors = [
            CliError::Config(String::new()),
            CliError::io("x", io::Error::other("x")),
            CliError::input("x", "x"),
            CliError::CallGraph(CallGraphError::EmptyGraph),
            CliError::Semantics(SemanticsError::NoVectors),
            CliError::Clustering(ClusteringError::InfeasibleK { n: 1, k: 2 }),
            CliError::Restify(RestifyError::UnknownVerb("x".into())),
            CliError::Evaluation(EvaluationError::EmptyCluster),
        ];
        let mut codes: Vec<i32> = errors.iter().map(CliError::exit_code).collect();
        assert!(codes.iter().all(|&c| c != 0));
        codes.dedup();
        assert_eq!(codes.len(), errors.len());
    }
}

use std::path::PathBuf;

use gencov::cover::CoverError;
use gencov::dartgraph::GraphError;
use gencov::normalize::NormalizeError;
use gencov::permgrp::GroupError;
use gencov::quotient::QuotientError;
use gencov::voltage::VoltageError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    pub fn io(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
        move |source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

fn group_is_cap(e: &GroupError) -> bool {
    matches!(e, GroupError::OrderCapExceeded { .. })
}

fn graph_is_cap(e: &GraphError) -> bool {
    matches!(e, GraphError::TooLarge { .. })
}

fn voltage_is_cap(e: &VoltageError) -> bool {
    match e {
        VoltageError::Group(g) => group_is_cap(g),
        VoltageError::Graph(g) => graph_is_cap(g),
        _ => false,
    }
}

fn classify(is_cap: bool, message: String) -> CliError {
    if is_cap {
        CliError::Cap(message)
    } else {
        CliError::Input(message)
    }
}

impl From<VoltageError> for CliError {
    fn from(e: VoltageError) -> Self {
        classify(voltage_is_cap(&e), e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        classify(graph_is_cap(&e), e.to_string())
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        let cap = match &e {
            CoverError::SizeCapExceeded { .. } => true,
            CoverError::Voltage(v) => voltage_is_cap(v),
            CoverError::Group(g) => group_is_cap(g),
            CoverError::Graph(g) => graph_is_cap(g),
            _ => false,
        };
        classify(cap, e.to_string())
    }
}

impl From<QuotientError> for CliError {
    fn from(e: QuotientError) -> Self {
        let cap = match &e {
            QuotientError::Group(g) => group_is_cap(g),
            QuotientError::Graph(g) => graph_is_cap(g),
            QuotientError::Voltage(v) => voltage_is_cap(v),
            _ => false,
        };
        classify(cap, e.to_string())
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> Self {
        match e {
            NormalizeError::Cover(c) => c.into(),
            NormalizeError::Voltage(v) => v.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

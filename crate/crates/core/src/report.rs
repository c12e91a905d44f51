//! Per-instance outcome records shared by the checkers and the CLI.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Violated,
    SamplingExhausted,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub identity: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Report {
    pub fn from_result<T>(identity: &str, instance: impl Into<String>, result: &Result<T>) -> Self {
        let (status, witness) = match result {
            Ok(_) => (Status::Pass, None),
            Err(Error::IdentityViolated { witness, .. }) => (Status::Violated, Some(witness.clone())),
            Err(e @ Error::SamplingExhausted { .. }) => (Status::SamplingExhausted, Some(e.to_string())),
            Err(e) => (Status::Error, Some(e.to_string())),
        };
        Report {
            identity: identity.to_string(),
            instance: instance.into(),
            status,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

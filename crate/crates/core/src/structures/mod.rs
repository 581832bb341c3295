//! The four G-structure packages: metric almost contact, almost hermitian,
//! G₂ and Spin(7) structures, their derived tensors, classification
//! predicates, Tanno deformation and almost contact 3-structures.

pub mod contact;
pub mod contact3;
pub mod g2;
pub mod hermitian;
pub mod spin7;
pub mod tanno;

use crate::connection::CharSolve;
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum StructureError {
    #[error("structure invariant `{0}` fails{1}")]
    InvariantViolation(&'static str, String),
    #[error("characteristic-connection criterion fails; no characteristic torsion")]
    NoCharacteristicConnection,
    #[error("ξ is not a Killing vector field")]
    XiNotKilling,
    #[error("deformation parameter must be a positive rational, got `{0}`")]
    BadDeformationParameter(String),
    #[error("deformation parameter `{0}` is not a rational square")]
    NonSquareParameter(String),
    #[error("ξ must be a frame vector for this operation")]
    XiNotFrameVector,
}

/// One defining-relation residual of a classification table.
#[derive(Clone, Debug)]
pub struct ResidualEntry {
    pub label: String,
    pub is_zero: bool,
    /// 1-based multi-index and value of the first nonzero component.
    pub witness: Option<(Vec<usize>, Scalar)>,
}

impl ResidualEntry {
    pub fn new(label: impl Into<String>, witness: Option<(Vec<usize>, Scalar)>) -> Self {
        ResidualEntry { label: label.into(), is_zero: witness.is_none(), witness }
    }
}

/// Classification output: per-class residuals, named verdicts and scalar
/// invariants, plus the characteristic-connection solve when it was run.
#[derive(Debug)]
pub struct ClassReport {
    pub geometry: &'static str,
    pub residuals: Vec<ResidualEntry>,
    pub verdicts: Vec<(String, bool)>,
    pub invariants: Vec<(String, Scalar)>,
    pub char_connection: Option<CharSolve>,
}

impl ClassReport {
    pub fn residual(&self, label: &str) -> Option<&ResidualEntry> {
        self.residuals.iter().find(|r| r.label == label)
    }

    pub fn is_class(&self, label: &str) -> bool {
        self.residual(label).map(|r| r.is_zero).unwrap_or(false)
    }

    pub fn verdict(&self, name: &str) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn invariant(&self, name: &str) -> Option<&Scalar> {
        self.invariants
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    /// The unique single-class label that holds, when exactly one does.
    pub fn pure_class(&self, candidates: &[&str]) -> Option<String> {
        let mut hits = self
            .residuals
            .iter()
            .filter(|r| r.is_zero && candidates.contains(&r.label.as_str()));
        match (hits.next(), hits.next()) {
            (Some(r), None) => Some(r.label.clone()),
            _ => None,
        }
    }
}

pub use contact::{ContactStructure, NijenhuisTensor};
pub use contact3::contact3_check;
pub use g2::G2Structure;
pub use hermitian::HermitianStructure;
pub use spin7::Spin7Structure;
pub use tanno::tanno_deform;

//! Workbench over the core calculus: model registry, manifold-spec files,
//! the verification suite and report machinery, and spinor workflows.

pub mod registry;
pub mod report;
pub mod specfile;
pub mod spinors;
pub mod suite;

pub use report::{CheckResult, Report};

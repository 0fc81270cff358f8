//! Exact computations with finitely generated modules over `Z` and `Z/n`:
//! presentations and canonical forms, Hom, tensor, Ext and Tor, adic torsion
//! and completion functors, their relative versions, generalized local
//! (co)homology and a bounded-grid claim checker.

pub mod adic;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod functors;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod ring;
pub mod verify;

pub use adic::{StabilizationResult, DEFAULT_KMAX};
pub use error::{Error, Result};
pub use expr::{parse_module, GRAMMAR};
pub use linalg::{smith_normal_form, Matrix, SmithDecomposition};
pub use module::{CanonicalForm, ModuleMap, Presentation, Submodule};
pub use ring::{parse_ideal, Ideal, RingSpec};
pub use verify::{check_claim, run_suite, ClaimReport, GridSpec, SuiteReport, Verdict};

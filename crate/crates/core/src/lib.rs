//! Uniquely restricted matchings in subcubic graphs: verification,
//! exact optima at small scale, and certified lower-bound constructions.
//!
//! A matching M is uniquely restricted when no other matching covers the
//! same vertex set, equivalently when the graph has no M-alternating
//! cycle. The crate provides
//!
//! - [`matching`]: the property verifier (witness-producing) and
//!   by-definition cross-checks,
//! - [`oracle`]: exact maximum matching, uniquely restricted matching and
//!   acyclic matching sizes by budgeted branch and bound,
//! - [`bridge_cert`]: a certified construction achieving
//!   6|M| >= m + (good bridges) on connected subcubic graphs other than
//!   K_{3,3}, with a machine-checked step ledger,
//! - [`girth_cert`]: a certified construction achieving 3|M| >= n - 1 on
//!   connected subcubic graphs of girth at least 7 (plus a relaxed mode
//!   for data collection at smaller girth),
//! - [`structure`]: bridges, good bridges, degree-2 paths,
//! - [`forge`]: named instances, the bridge-tight family, seeded random
//!   generators,
//! - [`enumerate`]: exhaustive small connected subcubic graphs and trees
//!   up to isomorphism,
//! - [`io`]: plain text graph and matching formats.

pub mod bridge_cert;
pub mod enumerate;
pub mod forge;
pub mod girth_cert;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod structure;

pub use bridge_cert::{certify_bridges, CertError, CertException, Certificate, CertifyOptions};
pub use girth_cert::{certify_girth, GirthCertificate, GirthError, GirthMode};
pub use graph::{edge, Edge, Graph, GraphError, Vertex};
pub use io::{read_edge_list, read_matching, write_edge_list, write_matching, FormatError};
pub use matching::{
    is_acyclic_matching, is_uniquely_restricted, AlternatingCycleWitness, Matching,
    MatchingError, UrVerdict,
};
pub use oracle::{nu_ac_exact, nu_exact, nu_ur_exact, OracleError, OracleResult};
pub use structure::{bridge_report, BridgeReport, StructureError};

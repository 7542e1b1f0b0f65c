//! Exact algebra of continuous-variable weighted graph states.
//!
//! * [`graph`]: weighted graphs, canonical encoding and the text file format.
//! * [`pauli`]: CV Pauli group with exact phases, gate conjugation tables,
//!   stabilizer generators and stabilizer transport.
//! * [`symplectic`]: the independent symplectic-matrix oracle.
//! * [`rules`]: the LG, F² and scale graph rewrite rules.
//! * [`orbit`]: bounded orbit enumeration and sequence search.
//! * [`verify`]: rule-versus-oracle checks over op scripts.
//!
//! All arithmetic is over exact rationals; there are no tolerances anywhere.

pub mod dot;
pub mod exec;
pub mod gate;
pub mod graph;
pub mod matrix;
pub mod orbit;
pub mod pauli;
pub mod rules;
pub mod scalar;
pub mod symplectic;
pub mod verify;

pub use exec::Execution;
pub use gate::{GateError, GaussianGate};
pub use graph::{GraphError, ParseError, Vertex, WeightedGraph};
pub use orbit::{explore, find_sequence, orbit_stats, Orbit, OrbitConfig, OrbitNode, OrbitStats, SearchOutcome};
pub use pauli::{
    expand_lg, nullifier_to_pauli, stabilizer, stabilizer_generator, verify_stabilizer_transport, Nullifier,
    PauliElement, PauliError,
};
pub use rules::{apply_f2_rule, apply_lg_rule, apply_scale_rule, apply_sequence, parse_ops, RuleOp};
pub use scalar::{parse_scalar, Scalar};
pub use symplectic::{
    gate_symplectic, graph_nullifier_matrix, oracle_apply, recover_graph, transport, NotGraphForm,
    NullifierMatrix, OracleError, SymplecticMatrix,
};

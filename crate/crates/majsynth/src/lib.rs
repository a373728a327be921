//! Synthesis of multi-output majority/inverter logic networks with a
//! genetic algorithm.
//!
//! A network is built from three-input majority gates, inverters, the
//! constants 0 and 1, and the input variables. Candidate circuits are
//! linear chromosomes: a preorder walk of an expression tree, evolved
//! with elitism, tournament selection, subtree crossover, and fresh
//! random immigrants in place of point mutation.
//!
//! Outputs of a multi-output specification are synthesized one at a
//! time. The first output is scored on truth-table distance alone
//! until an exact realization appears, then on gate count and depth.
//! Every later output is scored against the partial networks stored
//! for the previous outputs, so the search is pulled toward circuits
//! that reuse gates already paid for. The stored network and the
//! candidate are harmonized first: structurally different subtrees
//! computing the same function are rewritten to a single spelling, so
//! shared logic is counted once and reported as common gates.
//!
//! Everything is deterministic for a given seed, including the
//! parallel fitness path. An exhaustive searcher for up to four
//! variables provides ground truth for the minimum number of majority
//! gates ([`oracle`]).
//!
//! Expressions read and print in a compact text form:
//!
//! ```
//! use majsynth::Chromosome;
//!
//! let c: Chromosome = "M(M(B',C,0),A,1)".parse().unwrap();
//! assert_eq!(c.evaluate(3).unwrap().minterms(), vec![1, 4, 5, 6, 7]);
//! assert_eq!(c.to_string(), "M(M(B',C,0),A,1)");
//! ```

pub mod corpus;
pub mod expr;
pub mod fitness;
pub mod ga;
pub mod mig;
pub mod oracle;
pub mod problem;
pub mod report;
pub mod rewrite;
pub mod table;

pub use fitness::{fitness1, fitness2, is_valid, CombinedMetrics, FitnessContext, RowStore, StoredRow};
pub use ga::{synthesize, GaConfig, OutputTarget, Solution, SolvedOutput, SynthError, SynthOptions};
pub use mig::{Chromosome, Gene, Metrics, MigError};
pub use oracle::{exact_min_majority, verify, Closure, ExactResult, OracleError, VerifyCase, VerifyReport};
pub use problem::{CircuitSpec, OutputSpec, ProblemError};
pub use report::{build_report, render_json, render_table, Report};
pub use rewrite::{harmonize, simplify};
pub use table::{TableError, TruthTable, MAX_VARS};

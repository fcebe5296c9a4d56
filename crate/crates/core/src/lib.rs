//! Catalog, census, and counting-identity verification for Hamiltonian
//! 7-vertex subgraphs of strongly regular graphs with λ = 1, μ = 2.
//!
//! In an srg(n,k,1,2) host every adjacent vertex pair has exactly one common
//! neighbor and every non-adjacent pair exactly two. These local constraints
//! leave exactly 19 isomorphism classes of Hamiltonian 7-vertex graphs that
//! can occur as induced subgraphs, and the number of occurrences of each
//! class satisfies a closed form in n, k and two free counts (`n_3`, `h_11`).
//! This crate rebuilds that pipeline end to end:
//!
//! - [`catalog`]: isomorph-free generation of the admissible classes
//!   ([`catalog::generate_catalog`]) and a constant-time classification
//!   table over all 2²¹ labeled 7-vertex graphs ([`classifier`]).
//! - [`census`]: induced-subgraph counting in arbitrary hosts, by exhaustive
//!   7-subset scan ([`census::census_subsets`]) or by connected extension
//!   ([`census::census_extend`]), plus induced-cycle counts
//!   ([`census::count_polygons`]).
//! - [`formulas`]: exact-rational evaluation of the closed forms
//!   `h_0..h_18` and `p_3..p_7`, parameter feasibility, bounds, integrality,
//!   and fitting of measured censuses ([`formulas::fit_and_verify`]).
//! - [`srg`]: strong-regularity verification, reference constructions
//!   (rook's graph, Paley graphs, cycles, cliques), and seeded random
//!   hosts.
//! - [`graph`] / [`graph6`] / [`canon`]: bit-packed graph types, a strict
//!   graph6 codec, and canonical forms for orders up to 8.

pub mod canon;
pub mod catalog;
pub mod census;
pub mod classifier;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod srg;

pub use canon::{canonical_form, CanonKey};
// The exact-arithmetic types appearing in the public formula API.
pub use catalog::{generate_catalog, Catalog, CatalogEntry, CatalogError, C7_CLASS_ID};
pub use census::{
    census_extend, census_extend_jobs, census_subsets, count_polygons, count_polygons_jobs,
    CensusError, CountVector, PolygonCounts,
};
pub use classifier::{
    build_classifier, load_or_build, load_or_build_in, Classifier, ClassifierError,
};
pub use formulas::{
    check_bounds, check_integrality, evaluate_h, evaluate_p, feasible_params, fit_and_verify,
    n_of_k, FitCandidate, FitResult, FormulaError, FormulaTable, FreeVars, SrgParams, Violation,
};
pub use graph::{GraphError, HostGraph, SmallGraph};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use srg::{
    construct, random_graph, verify_srg, NamedGraph, SrgFailure, SrgSignature, SrgToolsError,
    SrgVerdict,
};

//! Exact polyhedral machinery for the one-quadratic-term matching polytopes
//! on complete bipartite graphs: inequality families, separation through
//! gadget graphs, constructive decompositions, b-matching reductions and
//! desk-scale verification of complete descriptions.

pub mod bmatching;
pub mod decomposition;
pub mod error;
pub mod exactlp;
pub mod graph;
pub mod inequalities;
pub mod problem;
pub mod rational;
pub mod separation;
pub mod verify;

pub use bmatching::{
    bmatching_families, enumerate_bmatchings, project_split, project_subdivision, split_nodes_lift,
    subdivide_edges_lift, verify_bmatching_description, BMatchingProblem, BMatchingReport,
    SplitLift, SubdivisionLift,
};
pub use decomposition::{
    decompose_matching, lemma_down_decompose, lemma_up_decompose, surgery_down, surgery_up,
    LemmaDecomposition, MatchingCombination, SurgeryOutcome, WeightedMatching,
};
pub use error::{Error, Result};
pub use graph::{chi, enumerate_matchings, EdgeId, GeneralGraph, Matching, NodeId, NodeSet};
pub use inequalities::{
    build, enumerate_family, violation, Family, FamilyInstance, Host, LinearInequality, Sense,
};
pub use problem::{
    vertex_set, y_of, BPoint, BiEdge, ConvexCombination, Limits, QPoint, QProblem, Side, Term,
    Variant,
};
pub use rational::{format_rational, parse_rational, Rational};
pub use verify::{
    check_completeness, check_facet, check_monotonization_identity, check_validity,
    CompletenessReport, FacetReport, FacetVerdict, MonotonizationReport, ValidityReport,
};

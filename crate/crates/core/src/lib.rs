//! Function-based transformations on finite families of labelled hypergraphs.
//!
//! The crate is organised bottom-up: [`hypergraph`] holds the value types and
//! the direct-sum algebra, [`quotient`] the vertex-partition quotients,
//! [`transform`] distinguished-set transformations, [`compose`] composition and
//! coincidence sets, [`families`] the built-in constructors and
//! [`quotient_transform`] quotient transformations.

// Errors carry the offending hypergraph by value.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod compose;
pub mod families;
pub mod hypergraph;
pub mod partition;
pub mod quotient;
pub mod quotient_transform;
pub mod transform;
mod union_find;

pub use hypergraph::{
    direct_sum, validate, ComponentSet, EdgeSet, Family, FamilyError, Hyperedge, Hypergraph,
    HypergraphError, Label, LabelError, LoopPolicy, RawHypergraph, Relation, SubRelation, Violation,
};
pub use partition::{PartitionError, VertexPartition};
pub use quotient::{
    check_canonical_iso, e_equivalent, edge_quotient, quotient, vertex_augmented_quotient, EdgeClass,
    QuotientError, QuotientResult,
};
pub use transform::{
    derive, derive_with, is_component_maximal, is_upward_closed, maximal_subset, verify, Condition,
    DistinguishedSet, InvalidSpec, MaximalSubset, NoMaximalSubset, SpecError, TransformError,
    TransformSpec, Transformation, VerifyError,
};
pub use compose::{
    are_disjoint, coincidence, compose, compose_seq, disjoint_apply, CoincidenceReport, ComposeError,
    PartialMap,
};
pub use families::{
    closure_check, edge_add, edge_toggle, graph_add, graph_edge_add, graph_toggle, ClosureKind,
    ConstructionError, Counterexample,
};
pub use quotient_transform::{
    equiv_edge_add, equiv_edge_quotient_relation, is_s_preserving, is_w_disjointness_preserving,
    quotient_commutativity, quotient_transformation, CommutativityReport, EquivEdgeAddition,
    EquivEdgeError, NotAmenable, QuotientTransformError, QuotientTransformation, RelationViolation,
};

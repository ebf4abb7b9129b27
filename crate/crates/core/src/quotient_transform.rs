//! Quotients of transformations by vertex partitions, and the
//! equivalent-hyperedge addition transformation.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::compose::{coincidence, ComposeError, PartialMap};
use crate::families::{build, closure_check, edge_add, is_equiv_shape, ClosureKind, ConstructionError};
use crate::hypergraph::{EdgeSet, Family, FamilyError, Hyperedge, Hypergraph, Label};
use crate::partition::VertexPartition;
use crate::quotient::{e_equivalent, vertex_augmented_quotient, EdgeClass, QuotientError};
use crate::transform::{
    derive, is_upward_closed, verify, DistinguishedSet, TransformSpec, Transformation, VerifyError,
};

/// Why a transformation has no quotient.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotAmenable {
    #[error("{first} and {second} have equal quotients but their images do not")]
    IllDefinedPi { first: Hypergraph, second: Hypergraph },
    #[error("{first} and {second} have equal quotients but their maximal subsets do not")]
    IllDefinedD { first: Hypergraph, second: Hypergraph },
    #[error("quotient triple is not a transformation: {0}")]
    FailsDef33(VerifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientTransformError {
    #[error("vertex {0} is not in the partition universe")]
    UniverseTooSmall(Label),
    #[error("not amenable: {0}")]
    NotAmenable(NotAmenable),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error("expected between 2 and 4 transformations, got {0}")]
    SequenceLength(usize),
    #[error("quotient coincidence set misses {0}")]
    CommutativityViolated(Hypergraph),
}

/// T/R together with the base transformation and relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientTransformation {
    pub base: Transformation,
    pub relation: VertexPartition,
    pub quotient_family: Family,
    pub quotient_distinguished: DistinguishedSet,
    pub quotient_table: BTreeMap<Hypergraph, Hypergraph>,
    pub quotient_maximal: BTreeMap<Hypergraph, BTreeSet<Hypergraph>>,
    /// The quotient triple as a derived transformation.
    pub quotient: Transformation,
}

/// X//R under the family's loop policy.
///
/// # Errors
/// [`QuotientError::UniverseTooSmall`] when R does not cover V(X).
pub fn project(x: &Hypergraph, r: &VertexPartition, family: &Family) -> Result<Hypergraph, QuotientError> {
    Ok(vertex_augmented_quotient(x, r, family.loop_policy())?.quotient)
}

fn quotient_universe(r: &VertexPartition) -> BTreeSet<Label> {
    r.universe().iter().filter_map(|v| r.class_of(v).cloned()).collect()
}

fn covers(r: &VertexPartition, vertices: impl IntoIterator<Item = Label>) -> Result<(), QuotientTransformError> {
    for v in vertices {
        if !r.universe().contains(&v) {
            return Err(QuotientTransformError::UniverseTooSmall(v));
        }
    }
    Ok(())
}

/// 𝒞(S) ⊆ 𝒞(X) ⇒ 𝒞(S//R) ⊆ 𝒞(X//R) for every S ∈ s and X ∈ family.
///
/// # Errors
/// [`QuotientError::UniverseTooSmall`] when R does not cover a member.
pub fn is_s_preserving(r: &VertexPartition, s: &DistinguishedSet, family: &Family) -> Result<bool, QuotientError> {
    for x in family.members() {
        for m in s.iter().filter(|m| m.is_component_subset_of(x)) {
            if !project(m, r, family)?.is_component_subset_of(&project(x, r, family)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// V(W) ∩ V(X) = ∅ ⇒ V(W//R) ∩ V(X//R) = ∅ for every X ∈ family.
///
/// # Errors
/// [`QuotientError::UniverseTooSmall`] when R does not cover W or a member.
pub fn is_w_disjointness_preserving(
    r: &VertexPartition,
    w: &Hypergraph,
    family: &Family,
) -> Result<bool, QuotientError> {
    let qw = project(w, r, family)?;
    for x in family.members().iter().filter(|x| x.is_vertex_disjoint(w)) {
        if !qw.is_vertex_disjoint(&project(x, r, family)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds T/R, checking that π/R and D/R are well defined on preimages and
/// that the quotient triple passes the verifier.
///
/// # Errors
/// [`QuotientTransformError::NotAmenable`] naming the failed condition, or
/// [`QuotientTransformError::UniverseTooSmall`] when R misses a vertex of a
/// member or image.
pub fn quotient_transformation(
    t: &Transformation,
    r: &VertexPartition,
) -> Result<QuotientTransformation, QuotientTransformError> {
    let family = t.family();
    covers(r, family.universe_vertices())?;
    covers(r, t.codomain().iter().flat_map(|x| x.vertices().iter().cloned()))?;
    let q = |x: &Hypergraph| project(x, r, family);

    let mut seen: BTreeMap<Hypergraph, (Hypergraph, Hypergraph, BTreeSet<Hypergraph>)> = BTreeMap::new();
    for (x, y) in t.table() {
        let qx = q(x)?;
        let qy = q(y)?;
        let qd = t
            .maximal_subset(x)
            .expect("table and maximal subsets share keys")
            .members
            .iter()
            .map(q)
            .collect::<Result<BTreeSet<_>, _>>()?;
        if let Some((first, fy, fd)) = seen.get(&qx) {
            if fy != &qy {
                return Err(QuotientTransformError::NotAmenable(NotAmenable::IllDefinedPi {
                    first: first.clone(),
                    second: x.clone(),
                }));
            }
            if fd != &qd {
                return Err(QuotientTransformError::NotAmenable(NotAmenable::IllDefinedD {
                    first: first.clone(),
                    second: x.clone(),
                }));
            }
        } else {
            seen.insert(qx, (x.clone(), qy, qd));
        }
    }

    let quotient_table: BTreeMap<Hypergraph, Hypergraph> =
        seen.iter().map(|(qx, (_, qy, _))| (qx.clone(), qy.clone())).collect();
    let quotient_maximal = seen.iter().map(|(qx, (_, _, qd))| (qx.clone(), qd.clone())).collect();
    let quotient_family = Family::new(quotient_table.keys().cloned(), family.loop_policy(), quotient_universe(r))?;
    let quotient_distinguished: DistinguishedSet = t.distinguished().iter().map(q).collect::<Result<_, _>>()?;

    let fails = |e: VerifyError| QuotientTransformError::NotAmenable(NotAmenable::FailsDef33(e));
    verify(&quotient_family, &quotient_table, &quotient_distinguished).map_err(fails)?;
    let images = quotient_distinguished.iter().map(|s| (s.clone(), quotient_table[s].clone())).collect();
    let spec = TransformSpec::new(quotient_family.clone(), quotient_distinguished.clone(), images)
        .map_err(|_| fails(VerifyError { condition: crate::Condition::Totality, target: Hypergraph::null() }))?;
    let quotient = derive(spec).map_err(|e| fails(e.into()))?;
    Ok(QuotientTransformation {
        base: t.clone(),
        relation: r.clone(),
        quotient_family,
        quotient_distinguished,
        quotient_table,
        quotient_maximal,
        quotient,
    })
}

/// Outcome of [`quotient_commutativity`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativityReport {
    /// Coin(seq)/R.
    pub projected_coincidence: BTreeSet<Hypergraph>,
    /// Coin(seq/R).
    pub quotient_coincidence: BTreeSet<Hypergraph>,
    /// Members of Coin(seq/R) outside Coin(seq)/R.
    pub strict_witnesses: BTreeSet<Hypergraph>,
}

/// Checks Coin(seq)/R ⊆ Coin(seq/R) for 2 to 4 amenable transformations.
///
/// # Errors
/// [`QuotientTransformError::SequenceLength`], a non-amenable member, or
/// [`QuotientTransformError::CommutativityViolated`] with the witness X//R.
pub fn quotient_commutativity(
    ts: &[&Transformation],
    r: &VertexPartition,
) -> Result<CommutativityReport, QuotientTransformError> {
    if !(2..=4).contains(&ts.len()) {
        return Err(QuotientTransformError::SequenceLength(ts.len()));
    }
    let qs = ts.iter().map(|t| quotient_transformation(t, r)).collect::<Result<Vec<_>, _>>()?;
    let base: Vec<PartialMap> = ts.iter().map(|t| PartialMap::from(*t)).collect();
    let quot: Vec<PartialMap> = qs.iter().map(|q| PartialMap::new(q.quotient_table.clone())).collect();
    let base_coin = coincidence(&base.iter().collect::<Vec<_>>())?.coincidence;
    let quotient_coincidence = coincidence(&quot.iter().collect::<Vec<_>>())?.coincidence;
    let family = ts[0].family();
    let mut projected_coincidence = BTreeSet::new();
    for x in &base_coin {
        let qx = project(x, r, family)?;
        if !quotient_coincidence.contains(&qx) {
            return Err(QuotientTransformError::CommutativityViolated(qx));
        }
        projected_coincidence.insert(qx);
    }
    let strict_witnesses = quotient_coincidence.difference(&projected_coincidence).cloned().collect();
    Ok(CommutativityReport { projected_coincidence, quotient_coincidence, strict_witnesses })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivEdgeError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("family is not closed: {0}")]
    NotClosed(crate::families::Counterexample),
    #[error("family is not amenable for addition: {0}")]
    NotAmenableFamily(crate::families::Counterexample),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// T_ẽ with the edge class and relation it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivEdgeAddition {
    pub transformation: Transformation,
    pub class: EdgeClass,
    pub relation: VertexPartition,
}

/// S̃ for `class` inside `family`.
pub fn equiv_distinguished(family: &Family, class: &EdgeClass) -> DistinguishedSet {
    family.members().iter().filter(|s| is_equiv_shape(s, class)).cloned().collect()
}

/// The equivalent-hyperedges addition transformation: adds all of ẽ_X when
/// ẽ_X ≠ ∅ and ẽ_X ∩ E(X) = ∅, otherwise fixes X.
///
/// # Errors
/// [`EquivEdgeError::NotClosed`], [`EquivEdgeError::NotAmenableFamily`],
/// quotient failures for e, or derivation failures.
pub fn equiv_edge_add(
    family: &Family,
    e: &Hyperedge,
    r: &VertexPartition,
) -> Result<EquivEdgeAddition, EquivEdgeError> {
    let class = e_equivalent(e, r, family)?;
    closure_check(family, ClosureKind::EAdd(&class)).map_err(EquivEdgeError::NotClosed)?;
    closure_check(family, ClosureKind::EAmenable(&class)).map_err(EquivEdgeError::NotAmenableFamily)?;
    let mut additions = BTreeMap::new();
    for x in family.members() {
        if class.is_present_in(x) && !class.meets_edges_of(x) {
            additions.insert(x.clone(), class.members_in(x)?);
        }
    }
    let rule = |x: &Hypergraph| match additions.get(x) {
        Some(h) => x.edge_symdiff(h).unwrap_or_else(|_| x.clone()),
        None => x.clone(),
    };
    let s = equiv_distinguished(family, &class);
    let transformation = build(family, s, rule, |x| {
        if additions.contains_key(x) {
            BTreeSet::from([class.meet(x)])
        } else {
            BTreeSet::new()
        }
    })?;
    Ok(EquivEdgeAddition { transformation, class, relation: r.clone() })
}

/// Which clause of the equivalent-edge quotient relation failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationViolation {
    #[error("relation is not preserving for the distinguished set")]
    NotSPreserving,
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("quotient transformation failed: {0}")]
    NotAmenable(QuotientTransformError),
    #[error("quotient edge addition failed: {0}")]
    EdgeAdd(ConstructionError),
    #[error("quotient distinguished set is not contained in the addition distinguished set")]
    NotSubset,
    #[error("quotient distinguished set is not upward closed")]
    NotUpwardClosed,
    #[error("quotient table differs from the support reduction at {0}")]
    TableMismatch(Hypergraph),
}

/// Checks that T_ẽ/R is the support reduction of T⁺_{e//R} on 𝒳/R to S̃/R.
///
/// # Errors
/// The first failed clause.
pub fn equiv_edge_quotient_relation(te: &EquivEdgeAddition) -> Result<QuotientTransformation, RelationViolation> {
    let t = &te.transformation;
    let r = &te.relation;
    if !is_s_preserving(r, t.distinguished(), t.family())? {
        return Err(RelationViolation::NotSPreserving);
    }
    let q = quotient_transformation(t, r).map_err(RelationViolation::NotAmenable)?;
    let edge = Hyperedge::with_derived_label(te.class.class_set().iter().cloned()).map_err(QuotientError::from)?;
    let h = EdgeSet::new([edge]).map_err(QuotientError::from)?;
    let plus = edge_add(&q.quotient_family, &h).map_err(RelationViolation::EdgeAdd)?;
    if !q.quotient_distinguished.is_subset(plus.distinguished()) {
        return Err(RelationViolation::NotSubset);
    }
    if !is_upward_closed(&q.quotient_distinguished, plus.distinguished()) {
        return Err(RelationViolation::NotUpwardClosed);
    }
    let reduced = plus
        .support_reduction(&q.quotient_distinguished)
        .map_err(|_| RelationViolation::NotUpwardClosed)?;
    for (x, y) in &q.quotient_table {
        if reduced.table().get(x) != Some(y) {
            return Err(RelationViolation::TableMismatch(x.clone()));
        }
    }
    Ok(q)
}

//! Built-in transformations: hyperedge toggling and addition, hypergraph
//! toggling and addition, and combined hypergraph-hyperedge addition.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{direct_sum, EdgeSet, Family, Hypergraph, Label, Violation};
use crate::quotient::EdgeClass;
use crate::transform::{
    derive, is_upward_closed, verify, DistinguishedSet, InvalidSpec, SpecError, TransformSpec, Transformation,
    VerifyError,
};

/// Which closure predicate to test.
#[derive(Debug, Clone, Copy)]
pub enum ClosureKind<'a> {
    /// H-closed for addition.
    HAdd(&'a EdgeSet),
    /// H-closed for deletion.
    HDelete(&'a EdgeSet),
    /// H-closed.
    HFull(&'a EdgeSet),
    /// W-H-closed for addition.
    WhAdd(&'a Hypergraph, &'a EdgeSet),
    /// ẽ-closed for addition.
    EAdd(&'a EdgeClass),
    /// ẽ-amenable for addition.
    EAmenable(&'a EdgeClass),
}

impl ClosureKind<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            ClosureKind::HAdd(_) => "h-add",
            ClosureKind::HDelete(_) => "h-delete",
            ClosureKind::HFull(_) => "h-full",
            ClosureKind::WhAdd(..) => "wh-add",
            ClosureKind::EAdd(_) => "e-add",
            ClosureKind::EAmenable(_) => "e-amenable",
        }
    }
}

/// The first member at which a closure predicate fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub kind: &'static str,
    /// The member X at fault.
    pub member: Hypergraph,
    /// The hypergraph that should have been a member, for closure kinds.
    pub missing: Option<Hypergraph>,
    /// The distinguished-shaped member S with 𝒞(S) ⊆ 𝒞(X), for amenability.
    pub witness: Option<Hypergraph>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.kind, self.member)?;
        if let Some(m) = &self.missing {
            write!(f, ": {m} is not a member")?;
        }
        if let Some(w) = &self.witness {
            write!(f, ": {w} is component contained")?;
        }
        Ok(())
    }
}

fn h_applies(x: &Hypergraph, h: &EdgeSet) -> bool {
    h.is_covered_by(x)
}

/// Whether X ⊕ W is defined with ⋃H ⊆ V(X ⊕ W) and H ∩ E(X ⊕ W) = ∅.
fn wh_applies(x: &Hypergraph, w: &Hypergraph, h: &EdgeSet) -> Option<Hypergraph> {
    let xw = direct_sum([x, w]).ok()?;
    (h.is_covered_by(&xw) && h.is_disjoint_from(&xw)).then_some(xw)
}

/// S̃ membership shape: ẽ_S ≠ ∅, ẽ_S ∩ E(S) = ∅ and S = S ∧ ẽ_S.
pub fn is_equiv_shape(s: &Hypergraph, class: &EdgeClass) -> bool {
    class.is_present_in(s) && !class.meets_edges_of(s) && &class.meet(s) == s
}

/// Tests a closure predicate on every member.
///
/// # Errors
/// The first [`Counterexample`], scanning members in canonical order.
pub fn closure_check(family: &Family, kind: ClosureKind<'_>) -> Result<(), Counterexample> {
    let fail = |member: &Hypergraph, missing: Option<Hypergraph>, witness: Option<Hypergraph>| Counterexample {
        kind: kind.name(),
        member: member.clone(),
        missing,
        witness,
    };
    for x in family.members() {
        let required = match kind {
            ClosureKind::HAdd(h) => (h_applies(x, h) && h.is_disjoint_from(x)).then(|| x.meet_components(h)),
            ClosureKind::HDelete(h) => {
                (h_applies(x, h) && h.iter().all(|e| x.edges().contains(e))).then(|| x.meet_components(h))
            }
            ClosureKind::HFull(h) => h_applies(x, h).then(|| x.meet_components(h)),
            ClosureKind::WhAdd(w, h) => {
                wh_applies(x, w, h).map(|_| x.meet_components(h)).filter(|m| !m.is_null())
            }
            ClosureKind::EAdd(class) => {
                (class.is_present_in(x) && !class.meets_edges_of(x)).then(|| class.meet(x))
            }
            ClosureKind::EAmenable(class) => {
                if class.meets_edges_of(x) {
                    if let Some(s) = family
                        .members()
                        .iter()
                        .find(|s| is_equiv_shape(s, class) && s.is_component_subset_of(x))
                    {
                        return Err(fail(x, None, Some(s.clone())));
                    }
                }
                None
            }
        };
        if let Some(m) = required {
            if !family.contains(&m) {
                return Err(fail(x, Some(m), None));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the edge set is empty")]
    EmptyEdgeSet,
    #[error("edge set breaks the loop policy: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    EdgePolicy(Vec<Violation>),
    #[error("family is not closed: {0}")]
    NotClosed(Counterexample),
    #[error("the summand must not be the null hypergraph")]
    NullWNotAllowed,
    #[error("the family must contain the null hypergraph")]
    NullNotInFamily,
    #[error("summand vertex {0} is a vertex of the family")]
    WNotDisjointFromFamily(Label),
    #[error("every edge of H lies inside the summand and none is present there, so no member can be decomposed")]
    EdgesInsideSummand,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    InvalidSpec(#[from] InvalidSpec),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("derived table disagrees with the defining rule at {0}")]
    RuleMismatch(Hypergraph),
    #[error("derived maximal subset disagrees with the closed form at {0}")]
    MaximalMismatch(Hypergraph),
    #[error("hyperedge addition differs from the support reduction of toggling at {0}")]
    ReductionMismatch(Hypergraph),
}

fn check_edges(family: &Family, h: &EdgeSet) -> Result<(), ConstructionError> {
    if h.is_empty() {
        return Err(ConstructionError::EmptyEdgeSet);
    }
    h.validate(family.loop_policy()).map_err(ConstructionError::EdgePolicy)
}

fn require(family: &Family, kind: ClosureKind<'_>) -> Result<(), ConstructionError> {
    closure_check(family, kind).map_err(ConstructionError::NotClosed)
}

/// Derives from S and `rule`, then checks the table against `rule`, the
/// maximal subsets against `expected`, and runs the verifier.
pub(crate) fn build(
    family: &Family,
    s: DistinguishedSet,
    rule: impl Fn(&Hypergraph) -> Hypergraph,
    expected: impl Fn(&Hypergraph) -> BTreeSet<Hypergraph>,
) -> Result<Transformation, ConstructionError> {
    let t = derive(TransformSpec::from_rule(family.clone(), s, &rule)?)?;
    for x in family.members() {
        if t.table()[x] != rule(x) {
            return Err(ConstructionError::RuleMismatch(x.clone()));
        }
        if t.maximal_subset(x).map(|d| &d.members) != Some(&expected(x)) {
            return Err(ConstructionError::MaximalMismatch(x.clone()));
        }
    }
    verify(family, t.table(), t.distinguished())?;
    Ok(t)
}

/// π_H(X) = X ⊞ H when ⋃H ⊆ V(X), else X.
pub fn toggle_rule(h: &EdgeSet) -> impl Fn(&Hypergraph) -> Hypergraph + '_ {
    move |x| if h_applies(x, h) { x.edge_symdiff(h).unwrap_or_else(|_| x.clone()) } else { x.clone() }
}

/// π⁺_H(X) = X ⊞ H when ⋃H ⊆ V(X) and H ∩ E(X) = ∅, else X.
pub fn add_rule(h: &EdgeSet) -> impl Fn(&Hypergraph) -> Hypergraph + '_ {
    move |x| {
        if h_applies(x, h) && h.is_disjoint_from(x) {
            x.edge_symdiff(h).unwrap_or_else(|_| x.clone())
        } else {
            x.clone()
        }
    }
}

/// The hyperedge addition/deletion transformation T_H.
///
/// # Errors
/// [`ConstructionError::NotClosed`] unless the family is H-closed, or any
/// derivation failure.
pub fn edge_toggle(family: &Family, h: &EdgeSet) -> Result<Transformation, ConstructionError> {
    check_edges(family, h)?;
    require(family, ClosureKind::HFull(h))?;
    let s = family.members().iter().filter(|x| h_applies(x, h) && &x.meet_components(h) == *x).cloned().collect();
    build(family, s, toggle_rule(h), |x| {
        if h_applies(x, h) {
            BTreeSet::from([x.meet_components(h)])
        } else {
            BTreeSet::new()
        }
    })
}

/// S⁺ for hyperedge addition.
pub fn edge_add_distinguished(family: &Family, h: &EdgeSet) -> DistinguishedSet {
    family
        .members()
        .iter()
        .filter(|x| h_applies(x, h) && h.is_disjoint_from(x) && &x.meet_components(h) == *x)
        .cloned()
        .collect()
}

/// The hyperedge addition transformation T⁺_H. When the family is also
/// H-closed, the result is checked against the support reduction of
/// [`edge_toggle`] to S⁺.
///
/// # Errors
/// [`ConstructionError::NotClosed`] unless the family is H-closed for addition,
/// [`ConstructionError::ReductionMismatch`] if the reduction check fails.
pub fn edge_add(family: &Family, h: &EdgeSet) -> Result<Transformation, ConstructionError> {
    check_edges(family, h)?;
    require(family, ClosureKind::HAdd(h))?;
    let s = edge_add_distinguished(family, h);
    let t = build(family, s.clone(), add_rule(h), |x| {
        if h_applies(x, h) && h.is_disjoint_from(x) {
            BTreeSet::from([x.meet_components(h)])
        } else {
            BTreeSet::new()
        }
    })?;
    if closure_check(family, ClosureKind::HFull(h)).is_ok() {
        let toggle = edge_toggle(family, h)?;
        let reduced = toggle
            .support_reduction(&s)
            .map_err(|_| ConstructionError::ReductionMismatch(Hypergraph::null()))?;
        if let Some((x, _)) = t.table().iter().find(|(x, y)| reduced.table().get(*x) != Some(*y)) {
            return Err(ConstructionError::ReductionMismatch(x.clone()));
        }
    }
    Ok(t)
}

fn check_summand(family: &Family, w: &Hypergraph) -> Result<(), ConstructionError> {
    if w.is_null() {
        return Err(ConstructionError::NullWNotAllowed);
    }
    if !family.contains(&Hypergraph::null()) {
        return Err(ConstructionError::NullNotInFamily);
    }
    Ok(())
}

/// π_W(X) = ⊕(𝒞(X) ⊞ 𝒞(W)) when 𝒞(W) ⊆ 𝒞(X) or V(W) ∩ V(X) = ∅, else X.
pub fn graph_toggle_rule(w: &Hypergraph) -> impl Fn(&Hypergraph) -> Hypergraph + '_ {
    move |x| {
        if w.is_component_subset_of(x) || w.is_vertex_disjoint(x) {
            let parts = x.components().symmetric_difference(&w.components());
            direct_sum(&parts).unwrap_or_else(|_| x.clone())
        } else {
            x.clone()
        }
    }
}

/// π⁺_W(X) = X ⊕ W when V(W) ∩ V(X) = ∅, else X.
pub fn graph_add_rule(w: &Hypergraph) -> impl Fn(&Hypergraph) -> Hypergraph + '_ {
    move |x| if w.is_vertex_disjoint(x) { direct_sum([x, w]).unwrap_or_else(|_| x.clone()) } else { x.clone() }
}

/// The hypergraph addition/deletion transformation T_W with S = {𝒩, W}.
/// W must be a member because S lies inside the family.
///
/// # Errors
/// [`ConstructionError::NullWNotAllowed`], [`ConstructionError::NullNotInFamily`],
/// or [`ConstructionError::Spec`] when W is not a member.
pub fn graph_toggle(family: &Family, w: &Hypergraph) -> Result<Transformation, ConstructionError> {
    check_summand(family, w)?;
    let s = DistinguishedSet::new([Hypergraph::null(), w.clone()]);
    build(family, s, graph_toggle_rule(w), |x| {
        if w.is_component_subset_of(x) {
            BTreeSet::from([Hypergraph::null(), w.clone()])
        } else {
            BTreeSet::from([Hypergraph::null()])
        }
    })
}

/// The hypergraph addition transformation T⁺_W with S⁺ = {𝒩}.
///
/// This is never a support reduction of [`graph_toggle`]: {𝒩} is not upward
/// closed in {𝒩, W}.
///
/// # Errors
/// [`ConstructionError::NullWNotAllowed`] or [`ConstructionError::NullNotInFamily`].
pub fn graph_add(family: &Family, w: &Hypergraph) -> Result<Transformation, ConstructionError> {
    check_summand(family, w)?;
    let s = DistinguishedSet::new([Hypergraph::null()]);
    debug_assert!(!is_upward_closed(&s, &DistinguishedSet::new([Hypergraph::null(), w.clone()])));
    build(family, s, graph_add_rule(w), |_| BTreeSet::from([Hypergraph::null()]))
}

/// π⁺⁺_{W,H}(X) = (X ⊕ W) ⊞ H under the addition conditions, else X.
pub fn graph_edge_add_rule<'a>(w: &'a Hypergraph, h: &'a EdgeSet) -> impl Fn(&Hypergraph) -> Hypergraph + 'a {
    move |x| match wh_applies(x, w, h) {
        Some(xw) => xw.edge_symdiff(h).unwrap_or_else(|_| x.clone()),
        None => x.clone(),
    }
}

/// D⁺⁺_X in closed form: {X ∧ H} when the addition conditions hold and
/// X ∧ H ≠ 𝒩, otherwise empty.
pub fn graph_edge_add_maximal(x: &Hypergraph, w: &Hypergraph, h: &EdgeSet) -> BTreeSet<Hypergraph> {
    wh_applies(x, w, h)
        .map(|_| x.meet_components(h))
        .filter(|m| !m.is_null())
        .into_iter()
        .collect()
}

/// The combined hypergraph-hyperedge addition transformation T⁺⁺_{W,H}.
///
/// When ⋃H ⊆ V(W) and H ∩ E(W) = ∅ the rule changes every member while
/// every D⁺⁺_X is empty, so no transformation exists; this is rejected.
///
/// # Errors
/// [`ConstructionError::WNotDisjointFromFamily`], [`ConstructionError::NotClosed`],
/// [`ConstructionError::EdgesInsideSummand`], or a derivation failure.
pub fn graph_edge_add(family: &Family, w: &Hypergraph, h: &EdgeSet) -> Result<Transformation, ConstructionError> {
    check_edges(family, h)?;
    if w.is_null() {
        return Err(ConstructionError::NullWNotAllowed);
    }
    if let Some(v) = w.vertices().iter().find(|v| family.member_vertices().contains(*v)) {
        return Err(ConstructionError::WNotDisjointFromFamily(v.clone()));
    }
    if h.is_covered_by(w) && h.is_disjoint_from(w) {
        return Err(ConstructionError::EdgesInsideSummand);
    }
    require(family, ClosureKind::WhAdd(w, h))?;
    let s = family.members().iter().flat_map(|x| graph_edge_add_maximal(x, w, h)).collect();
    build(family, s, graph_edge_add_rule(w, h), |x| graph_edge_add_maximal(x, w, h))
}

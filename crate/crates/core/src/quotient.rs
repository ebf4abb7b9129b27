//! Quotient hypergraphs and equivalent hyperedges.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::hypergraph::{derived_edge_label, EdgeSet, Family, Hyperedge, Hypergraph, HypergraphError, Label, LoopPolicy};
use crate::partition::VertexPartition;

/// Upper bound on the number of e-equivalent hyperedges that will be listed.
pub const MAX_EQUIVALENT_EDGES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("partition universe differs from the vertex set")]
    UniverseMismatch,
    #[error("vertex {0} is not in the partition universe")]
    UniverseTooSmall(Label),
    #[error("edge collapses to a single class while loops are disallowed")]
    Rejected,
    #[error("edge vertex {0} is outside the family universe")]
    OutsideFamily(Label),
    #[error("{count} equivalent hyperedges exceed the enumeration limit")]
    TooManyEquivalentEdges { count: u128 },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A quotient hypergraph with the projection from source vertices to classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: Hypergraph,
    pub projection: BTreeMap<Label, Label>,
}

fn class_set<'a>(
    vertices: impl IntoIterator<Item = &'a Label>,
    r: &VertexPartition,
) -> Result<BTreeSet<Label>, QuotientError> {
    vertices
        .into_iter()
        .map(|v| r.class_of(v).cloned().ok_or_else(|| QuotientError::UniverseTooSmall(v.clone())))
        .collect()
}

fn project(x: &Hypergraph, r: &VertexPartition, policy: LoopPolicy) -> Result<QuotientResult, QuotientError> {
    let mut projection = BTreeMap::new();
    for v in x.vertices() {
        let c = r.class_of(v).ok_or_else(|| QuotientError::UniverseTooSmall(v.clone()))?;
        projection.insert(v.clone(), c.clone());
    }
    let mut images = BTreeSet::new();
    for e in x.edges() {
        let k = class_set(e.vertices(), r)?;
        if k.len() >= policy.min_edge_size() {
            images.insert(k);
        }
    }
    let edges = images
        .into_iter()
        .map(|k| Hyperedge::new(derived_edge_label(&k), k))
        .collect::<Result<Vec<_>, _>>()?;
    let quotient = Hypergraph::new(projection.values().cloned(), edges)?;
    Ok(QuotientResult { quotient, projection })
}

/// X/R for a partition of exactly V(X).
///
/// A class-set is an edge when some edge of X meets every class and lies in
/// their union, which is the same as being the class image of that edge.
///
/// # Errors
/// [`QuotientError::UniverseMismatch`] unless the universe of `r` is V(x).
pub fn quotient(x: &Hypergraph, r: &VertexPartition, policy: LoopPolicy) -> Result<QuotientResult, QuotientError> {
    if r.universe() != x.vertices() {
        return Err(QuotientError::UniverseMismatch);
    }
    project(x, r, policy)
}

/// X//R_F for a partition of a universe containing V(X). Vertices are
/// the classes of vertices of X, labelled by their full blocks.
///
/// # Errors
/// [`QuotientError::UniverseTooSmall`] when a vertex of x is not covered.
pub fn vertex_augmented_quotient(
    x: &Hypergraph,
    r_f: &VertexPartition,
    policy: LoopPolicy,
) -> Result<QuotientResult, QuotientError> {
    project(x, r_f, policy)
}

/// Probes whether [v]_R ↦ [v]_{R_F} is an isomorphism X/R → X//R_F, where R
/// is R_F restricted to V(X).
///
/// # Errors
/// [`QuotientError::UniverseTooSmall`] when a vertex of x is not covered.
pub fn check_canonical_iso(x: &Hypergraph, r_f: &VertexPartition, policy: LoopPolicy) -> Result<bool, QuotientError> {
    let r = r_f.restrict(x.vertices());
    let small = quotient(x, &r, policy)?;
    let big = vertex_augmented_quotient(x, r_f, policy)?;
    let mut phi = BTreeMap::new();
    for (v, c) in &small.projection {
        let d = &big.projection[v];
        if let Some(prev) = phi.insert(c.clone(), d.clone()) {
            if &prev != d {
                return Ok(false);
            }
        }
    }
    let image: BTreeSet<&Label> = phi.values().collect();
    if image.len() != phi.len() || image.len() != big.quotient.vertices().len() {
        return Ok(false);
    }
    let mapped: BTreeSet<BTreeSet<Label>> = small
        .quotient
        .edges()
        .iter()
        .map(|e| e.vertices().iter().map(|c| phi[c].clone()).collect())
        .collect();
    let target: BTreeSet<BTreeSet<Label>> = big.quotient.edges().iter().map(|e| e.vertices().clone()).collect();
    Ok(mapped == target)
}

/// e//R = {[v] | v ∈ e}.
///
/// # Errors
/// [`QuotientError::Rejected`] for a singleton image under Disallow and
/// [`QuotientError::UniverseTooSmall`] for an uncovered vertex.
pub fn edge_quotient(
    vertices: &BTreeSet<Label>,
    r: &VertexPartition,
    policy: LoopPolicy,
) -> Result<BTreeSet<Label>, QuotientError> {
    let k = class_set(vertices, r)?;
    if k.len() < policy.min_edge_size() {
        return Err(QuotientError::Rejected);
    }
    Ok(k)
}

/// ẽ: every vertex set f ⊆ V(𝒳) with f//R = e//R.
///
/// Members are compared by vertex set; when listed as edges they carry labels
/// derived from their vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    representative: Hyperedge,
    class_set: BTreeSet<Label>,
    classes: BTreeMap<Label, BTreeSet<Label>>,
}

/// Computes ẽ for `e` over the universe of `family`.
///
/// # Errors
/// [`QuotientError::OutsideFamily`] when e leaves V(𝒳),
/// [`QuotientError::UniverseTooSmall`] when `r` does not cover V(𝒳), and
/// [`QuotientError::Rejected`] when e//R is not an edge under the loop policy.
pub fn e_equivalent(e: &Hyperedge, r: &VertexPartition, family: &Family) -> Result<EdgeClass, QuotientError> {
    let universe = family.universe_vertices();
    if let Some(v) = e.vertices().iter().find(|v| !universe.contains(*v)) {
        return Err(QuotientError::OutsideFamily(v.clone()));
    }
    if let Some(v) = universe.iter().find(|v| r.class_of(v).is_none()) {
        return Err(QuotientError::UniverseTooSmall(v.clone()));
    }
    let k = edge_quotient(e.vertices(), r, family.loop_policy())?;
    let mut classes: BTreeMap<Label, BTreeSet<Label>> = k.iter().map(|c| (c.clone(), BTreeSet::new())).collect();
    for v in &universe {
        let c = r.class_of(v).expect("checked above");
        if let Some(members) = classes.get_mut(c) {
            members.insert(v.clone());
        }
    }
    Ok(EdgeClass { representative: e.clone(), class_set: k, classes })
}

impl EdgeClass {
    pub fn representative(&self) -> &Hyperedge {
        &self.representative
    }

    /// e//R.
    pub fn class_set(&self) -> &BTreeSet<Label> {
        &self.class_set
    }

    /// Vertices of V(𝒳) lying in some class of e//R.
    pub fn span(&self) -> BTreeSet<Label> {
        self.classes.values().flatten().cloned().collect()
    }

    /// Whether the vertex set f belongs to ẽ.
    pub fn contains(&self, f: &BTreeSet<Label>) -> bool {
        let mut hit = BTreeSet::new();
        for v in f {
            match self.classes.iter().find(|(_, m)| m.contains(v)) {
                Some((c, _)) => {
                    hit.insert(c);
                }
                None => return false,
            }
        }
        hit.len() == self.classes.len()
    }

    fn count_within(&self, vertices: Option<&BTreeSet<Label>>) -> u128 {
        self.classes
            .values()
            .map(|m| {
                let n = vertices.map_or(m.len(), |vs| m.intersection(vs).count());
                if n >= 127 {
                    u128::MAX
                } else {
                    (1u128 << n) - 1
                }
            })
            .fold(1u128, u128::saturating_mul)
    }

    fn enumerate(&self, vertices: Option<&BTreeSet<Label>>) -> Result<Vec<BTreeSet<Label>>, QuotientError> {
        let count = self.count_within(vertices);
        if count > MAX_EQUIVALENT_EDGES as u128 {
            return Err(QuotientError::TooManyEquivalentEdges { count });
        }
        let mut acc: Vec<BTreeSet<Label>> = vec![BTreeSet::new()];
        for members in self.classes.values() {
            let members: Vec<&Label> = match vertices {
                Some(vs) => members.iter().filter(|v| vs.contains(*v)).collect(),
                None => members.iter().collect(),
            };
            let mut next = Vec::with_capacity(acc.len() * ((1usize << members.len()) - 1).max(1));
            for mask in 1usize..(1 << members.len()) {
                for base in &acc {
                    let mut f = base.clone();
                    f.extend((0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i].clone()));
                    next.push(f);
                }
            }
            acc = next;
        }
        acc.sort();
        Ok(acc)
    }

    /// |ẽ|.
    pub fn len(&self) -> u128 {
        self.count_within(None)
    }

    /// Never true: e itself is a member.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All vertex sets of ẽ, sorted.
    ///
    /// # Errors
    /// [`QuotientError::TooManyEquivalentEdges`] above [`MAX_EQUIVALENT_EDGES`].
    pub fn members(&self) -> Result<Vec<BTreeSet<Label>>, QuotientError> {
        self.enumerate(None)
    }

    /// ẽ_X as edges with derived labels.
    ///
    /// # Errors
    /// [`QuotientError::TooManyEquivalentEdges`] above [`MAX_EQUIVALENT_EDGES`].
    pub fn members_in(&self, x: &Hypergraph) -> Result<EdgeSet, QuotientError> {
        if !self.is_present_in(x) {
            return Ok(EdgeSet::default());
        }
        let sets = self.enumerate(Some(x.vertices()))?;
        let edges = sets
            .into_iter()
            .map(Hyperedge::with_derived_label)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EdgeSet::new(edges)?)
    }

    /// ẽ_X ≠ ∅: every class of e//R meets V(X).
    pub fn is_present_in(&self, x: &Hypergraph) -> bool {
        self.classes.values().all(|m| !m.is_disjoint(x.vertices()))
    }

    /// ẽ_X ∩ E(X) ≠ ∅, compared by vertex set.
    pub fn meets_edges_of(&self, x: &Hypergraph) -> bool {
        x.edges().iter().any(|f| self.contains(f.vertices()))
    }

    /// X ∧ ẽ_X.
    pub fn meet(&self, x: &Hypergraph) -> Hypergraph {
        if !self.is_present_in(x) {
            return Hypergraph::null();
        }
        x.meet_vertices(&self.span())
    }
}

//! Labelled hypergraphs and the component / direct-sum algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::union_find::UnionFind;

const RESERVED: &[char] = &[',', ';', '{', '}', ':', '<', '>', '"'];

/// A vertex or edge label.
///
/// Labels are nonempty and contain no whitespace and none of `,;{}:<>"`,
/// so that the text notation stays unambiguous.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid label {0:?}")]
pub struct LabelError(pub String);

impl Label {
    /// # Errors
    /// Returns [`LabelError`] for an empty label or one using a reserved character.
    pub fn new(text: impl AsRef<str>) -> Result<Self, LabelError> {
        let text = text.as_ref();
        if text.is_empty() || text.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
            return Err(LabelError(text.to_owned()));
        }
        Ok(Self(Arc::from(text)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Label {
    type Err = LabelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s)
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Label::new(&text).map_err(serde::de::Error::custom)
    }
}

/// Builds the label used for a synthesized edge over `vertices`, e.g. `([a]+[b])`.
pub fn derived_edge_label<'a>(vertices: impl IntoIterator<Item = &'a Label>) -> Label {
    let parts: Vec<&str> = vertices.into_iter().map(Label::as_str).collect();
    Label::new(format!("({})", parts.join("+"))).expect("derived labels are well formed")
}

/// Whether singleton hyperedges (loops) are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopPolicy {
    #[default]
    Allow,
    Disallow,
}

impl LoopPolicy {
    pub fn min_edge_size(self) -> usize {
        match self {
            LoopPolicy::Allow => 1,
            LoopPolicy::Disallow => 2,
        }
    }
}

/// A labelled hyperedge. Identity is the pair (label, vertex set).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperedge {
    label: Label,
    vertices: BTreeSet<Label>,
}

impl Hyperedge {
    /// # Errors
    /// [`HypergraphError::EmptyEdge`] when `vertices` is empty.
    pub fn new(
        label: Label,
        vertices: impl IntoIterator<Item = Label>,
    ) -> Result<Self, HypergraphError> {
        let vertices: BTreeSet<Label> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(HypergraphError::EmptyEdge(label));
        }
        Ok(Self { label, vertices })
    }

    /// An edge whose label is derived from its vertex set.
    ///
    /// # Errors
    /// [`HypergraphError::EmptyEdge`] when `vertices` is empty.
    pub fn with_derived_label(
        vertices: impl IntoIterator<Item = Label>,
    ) -> Result<Self, HypergraphError> {
        let vertices: BTreeSet<Label> = vertices.into_iter().collect();
        let label = derived_edge_label(&vertices);
        Self::new(label, vertices)
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn vertices(&self) -> &BTreeSet<Label> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_loop(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Always false; edges are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn meets(&self, vertices: &BTreeSet<Label>) -> bool {
        self.vertices.iter().any(|v| vertices.contains(v))
    }
}

impl fmt::Debug for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.label)?;
        write_set(f, &self.vertices)
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<Label>) -> fmt::Result {
    f.write_str("{")?;
    for (i, v) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("}")
}

/// One reason a hypergraph fails validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    InvalidLabel { text: String },
    DuplicateVertex { vertex: String },
    DuplicateEdgeLabel { edge: String },
    EmptyEdge { edge: String },
    VertexNotInVertexSet { edge: String, vertex: String },
    LoopDisallowed { edge: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidLabel { text } => write!(f, "invalid label {text:?}"),
            Violation::DuplicateVertex { vertex } => write!(f, "duplicate vertex {vertex}"),
            Violation::DuplicateEdgeLabel { edge } => write!(f, "duplicate edge label {edge}"),
            Violation::EmptyEdge { edge } => write!(f, "empty edge {edge}"),
            Violation::VertexNotInVertexSet { edge, vertex } => {
                write!(f, "edge {edge} uses vertex {vertex} outside the vertex set")
            }
            Violation::LoopDisallowed { edge } => write!(f, "loop disallowed on edge {edge}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("invalid hypergraph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("edge {0} has no vertices")]
    EmptyEdge(Label),
    #[error("edge label {0} names different vertex sets")]
    LabelCollision(Label),
    #[error("summands {i} and {j} share vertex {vertex}")]
    NotDisjoint { i: usize, j: usize, vertex: Label },
    #[error("subtrahend is not a union of components of the minuend")]
    NotComponentSubset,
    #[error("vertex {0} of the edge set is not a vertex of the hypergraph")]
    VerticesNotCovered(Label),
    #[error("cannot parse hypergraph: {0}")]
    Parse(String),
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// The result of [`Hypergraph::relate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub vertex_disjoint: bool,
    pub component_disjoint: bool,
}

/// The result of [`Hypergraph::strong_subhypergraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubRelation {
    pub is_sub: bool,
    pub is_induced: bool,
}

/// A finite hypergraph. Edge vertex sets lie inside the vertex set and edge
/// labels are pairwise distinct; both hold by construction.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypergraph {
    vertices: BTreeSet<Label>,
    edges: BTreeSet<Hyperedge>,
}

impl Hypergraph {
    /// # Errors
    /// [`HypergraphError::Invalid`] listing every structural violation.
    pub fn new(
        vertices: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = Hyperedge>,
    ) -> Result<Self, HypergraphError> {
        let vertices: BTreeSet<Label> = vertices.into_iter().collect();
        let mut violations = Vec::new();
        let mut labels = BTreeSet::new();
        let mut set = BTreeSet::new();
        for e in edges {
            if !labels.insert(e.label.clone()) {
                violations.push(Violation::DuplicateEdgeLabel { edge: e.label.to_string() });
            }
            for v in e.vertices.iter().filter(|v| !vertices.contains(*v)) {
                violations.push(Violation::VertexNotInVertexSet {
                    edge: e.label.to_string(),
                    vertex: v.to_string(),
                });
            }
            set.insert(e);
        }
        if violations.is_empty() {
            Ok(Self { vertices, edges: set })
        } else {
            Err(HypergraphError::Invalid(violations))
        }
    }

    /// Builds from string labels, for fixtures and tests.
    ///
    /// # Errors
    /// Propagates label and structure errors.
    pub fn from_parts<V, E, S>(vertices: V, edges: E) -> Result<Self, HypergraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, Vec<S>)>,
        S: AsRef<str>,
    {
        let vs = vertices.into_iter().map(Label::new).collect::<Result<Vec<_>, _>>()?;
        let mut es = Vec::new();
        for (l, members) in edges {
            let members = members.into_iter().map(Label::new).collect::<Result<Vec<_>, _>>()?;
            es.push(Hyperedge::new(Label::new(l)?, members)?);
        }
        Self::new(vs, es)
    }

    /// The null hypergraph.
    pub fn null() -> Self {
        Self::default()
    }

    pub fn is_null(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &BTreeSet<Label> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Hyperedge> {
        &self.edges
    }

    pub fn edge(&self, label: &Label) -> Option<&Hyperedge> {
        self.edges.iter().find(|e| &e.label == label)
    }

    /// Whether some edge of `self` has exactly this vertex set.
    pub fn has_edge_on(&self, vertices: &BTreeSet<Label>) -> bool {
        self.edges.iter().any(|e| &e.vertices == vertices)
    }

    /// Checks the loop policy. Structural invariants already hold.
    ///
    /// # Errors
    /// The list of loop violations.
    pub fn validate(&self, policy: LoopPolicy) -> Result<(), Vec<Violation>> {
        let bad: Vec<Violation> = self
            .edges
            .iter()
            .filter(|e| e.len() < policy.min_edge_size())
            .map(|e| Violation::LoopDisallowed { edge: e.label.to_string() })
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    /// The connected components, each a connected strong subhypergraph.
    pub fn components(&self) -> ComponentSet {
        let index: Vec<&Label> = self.vertices.iter().collect();
        let pos = |v: &Label| index.binary_search(&v).expect("edge vertex in vertex set");
        let mut uf = UnionFind::new(index.len());
        for e in &self.edges {
            let mut it = e.vertices.iter();
            let first = pos(it.next().expect("nonempty edge"));
            for v in it {
                uf.union(first, pos(v));
            }
        }
        let mut groups: BTreeMap<usize, Hypergraph> = BTreeMap::new();
        for (i, v) in index.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().vertices.insert((*v).clone());
        }
        for e in &self.edges {
            let root = uf.find(pos(e.vertices.iter().next().expect("nonempty edge")));
            groups.get_mut(&root).expect("root group").edges.insert(e.clone());
        }
        ComponentSet(groups.into_values().collect())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Tests 𝒞(self) ⊆ 𝒞(x) without computing components: `self` must be a
    /// strong subhypergraph of `x` that owns every edge of `x` it touches.
    pub fn is_component_subset_of(&self, x: &Hypergraph) -> bool {
        self.vertices.is_subset(&x.vertices)
            && self.edges.is_subset(&x.edges)
            && x.edges
                .iter()
                .filter(|e| e.meets(&self.vertices))
                .all(|e| self.edges.contains(e))
    }

    pub fn is_vertex_disjoint(&self, other: &Hypergraph) -> bool {
        self.vertices.is_disjoint(&other.vertices)
    }

    pub fn is_component_disjoint(&self, other: &Hypergraph) -> bool {
        if self.is_vertex_disjoint(other) {
            return true;
        }
        let theirs = other.components();
        self.components().iter().all(|c| !theirs.contains(c))
    }

    pub fn relate(&self, other: &Hypergraph) -> Relation {
        Relation {
            vertex_disjoint: self.is_vertex_disjoint(other),
            component_disjoint: self.is_component_disjoint(other),
        }
    }

    /// Hypergraph union.
    ///
    /// # Errors
    /// [`HypergraphError::LabelCollision`] when an edge label names different vertex sets.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph, HypergraphError> {
        let vertices = self.vertices.union(&other.vertices).cloned().collect();
        let edges = merge_edges(self.edges.iter().chain(other.edges.iter()))?;
        Ok(Hypergraph { vertices, edges })
    }

    /// X ⊖ Z.
    ///
    /// # Errors
    /// [`HypergraphError::NotComponentSubset`] unless 𝒞(z) ⊆ 𝒞(self).
    pub fn direct_difference(&self, z: &Hypergraph) -> Result<Hypergraph, HypergraphError> {
        if !z.is_component_subset_of(self) {
            return Err(HypergraphError::NotComponentSubset);
        }
        Ok(Hypergraph {
            vertices: self.vertices.difference(&z.vertices).cloned().collect(),
            edges: self.edges.difference(&z.edges).cloned().collect(),
        })
    }

    /// X ⊞ H: same vertices, symmetric difference of edge sets.
    ///
    /// # Errors
    /// [`HypergraphError::VerticesNotCovered`] when ⋃H ⊄ V(X), and
    /// [`HypergraphError::LabelCollision`] when the result would reuse a label.
    pub fn edge_symdiff(&self, h: &EdgeSet) -> Result<Hypergraph, HypergraphError> {
        if let Some(v) = h.vertices().into_iter().find(|v| !self.vertices.contains(v)) {
            return Err(HypergraphError::VerticesNotCovered(v));
        }
        let edges = merge_edges(self.edges.symmetric_difference(&h.0))?;
        Ok(Hypergraph { vertices: self.vertices.clone(), edges })
    }

    /// X ∧ H: the union of the components of X touched by an edge of H.
    pub fn meet_components(&self, h: &EdgeSet) -> Hypergraph {
        let touched: BTreeSet<Label> = h.0.iter().flat_map(|e| e.vertices.iter().cloned()).collect();
        self.meet_vertices(&touched)
    }

    /// The union of the components of X that contain a vertex of `touched`.
    pub fn meet_vertices(&self, touched: &BTreeSet<Label>) -> Hypergraph {
        let parts: Vec<Hypergraph> = self
            .components()
            .into_iter()
            .filter(|c| !c.vertices.is_disjoint(touched))
            .collect();
        direct_sum(&parts).expect("components are vertex disjoint")
    }

    /// Strong-subhypergraph relation of `self` inside `y`.
    pub fn strong_subhypergraph(&self, y: &Hypergraph) -> SubRelation {
        let is_sub = self.vertices.is_subset(&y.vertices) && self.edges.is_subset(&y.edges);
        let is_induced = is_sub && self.edges == y.induced_edges(&self.vertices);
        SubRelation { is_sub, is_induced }
    }

    /// {e ∈ E(self) | e ⊆ vertices}.
    pub fn induced_edges(&self, vertices: &BTreeSet<Label>) -> BTreeSet<Hyperedge> {
        self.edges.iter().filter(|e| e.vertices.is_subset(vertices)).cloned().collect()
    }

    /// The strong subhypergraph induced by `vertices ∩ V(self)`.
    pub fn induced(&self, vertices: &BTreeSet<Label>) -> Hypergraph {
        let vertices: BTreeSet<Label> = self.vertices.intersection(vertices).cloned().collect();
        let edges = self.induced_edges(&vertices);
        Hypergraph { vertices, edges }
    }

    /// Edge labels of `self`.
    pub fn edge_labels(&self) -> impl Iterator<Item = &Label> {
        self.edges.iter().map(|e| &e.label)
    }
}

fn merge_edges<'a>(
    edges: impl IntoIterator<Item = &'a Hyperedge>,
) -> Result<BTreeSet<Hyperedge>, HypergraphError> {
    let mut by_label: BTreeMap<&Label, &Hyperedge> = BTreeMap::new();
    for e in edges {
        if let Some(prev) = by_label.insert(&e.label, e) {
            if prev.vertices != e.vertices {
                return Err(HypergraphError::LabelCollision(e.label.clone()));
            }
        }
    }
    Ok(by_label.into_values().cloned().collect())
}

/// The direct sum of pairwise vertex-disjoint hypergraphs. The empty sum is 𝒩.
///
/// # Errors
/// [`HypergraphError::NotDisjoint`] naming the first overlapping pair, and
/// [`HypergraphError::LabelCollision`] when two summands reuse an edge label.
pub fn direct_sum<'a, I>(parts: I) -> Result<Hypergraph, HypergraphError>
where
    I: IntoIterator<Item = &'a Hypergraph>,
{
    let mut owner: BTreeMap<&Label, usize> = BTreeMap::new();
    let mut out = Hypergraph::null();
    let mut edges = Vec::new();
    for (j, p) in parts.into_iter().enumerate() {
        for v in &p.vertices {
            if let Some(&i) = owner.get(v) {
                return Err(HypergraphError::NotDisjoint { i, j, vertex: v.clone() });
            }
            owner.insert(v, j);
            out.vertices.insert(v.clone());
        }
        edges.extend(p.edges.iter());
    }
    out.edges = merge_edges(edges)?;
    Ok(out)
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text notation `<{a,b}; {e1:{a,b}}>`.
impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        write_set(f, &self.vertices)?;
        f.write_str("; {")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}>")
    }
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, c: char) -> Result<(), HypergraphError> {
        self.skip_ws();
        match self.rest.strip_prefix(c) {
            Some(r) => {
                self.rest = r;
                Ok(())
            }
            None => Err(HypergraphError::Parse(format!("expected {c:?} at {:?}", self.rest))),
        }
    }

    fn peek(&mut self, c: char) -> bool {
        self.skip_ws();
        self.rest.starts_with(c)
    }

    fn label(&mut self) -> Result<Label, HypergraphError> {
        self.skip_ws();
        let end = self
            .rest
            .find(|c: char| c.is_whitespace() || RESERVED.contains(&c))
            .unwrap_or(self.rest.len());
        let (head, tail) = self.rest.split_at(end);
        self.rest = tail;
        Ok(Label::new(head)?)
    }

    fn label_set(&mut self) -> Result<Vec<Label>, HypergraphError> {
        self.eat('{')?;
        let mut out = Vec::new();
        if self.peek('}') {
            self.eat('}')?;
            return Ok(out);
        }
        loop {
            out.push(self.label()?);
            if self.peek(',') {
                self.eat(',')?;
            } else {
                self.eat('}')?;
                return Ok(out);
            }
        }
    }
}

impl FromStr for Hypergraph {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor { rest: s };
        c.eat('<')?;
        let vertices = c.label_set()?;
        c.eat(';')?;
        c.eat('{')?;
        let mut edges = Vec::new();
        if c.peek('}') {
            c.eat('}')?;
        } else {
            loop {
                let label = c.label()?;
                c.eat(':')?;
                let members = c.label_set()?;
                edges.push(Hyperedge::new(label, members)?);
                if c.peek(',') {
                    c.eat(',')?;
                } else {
                    c.eat('}')?;
                    break;
                }
            }
        }
        c.eat('>')?;
        c.skip_ws();
        if !c.rest.is_empty() {
            return Err(HypergraphError::Parse(format!("trailing input {:?}", c.rest)));
        }
        Hypergraph::new(vertices, edges)
    }
}

/// Unvalidated hypergraph as it appears in input files:
/// `{"vertices": [...], "edges": {"label": [...]}}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawHypergraph {
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default, with = "raw_edges")]
    pub edges: Vec<(String, Vec<String>)>,
}

/// Reads an edges object as an ordered list so that duplicate keys survive
/// long enough to be reported.
pub(crate) mod raw_edges {
    use serde::de::{MapAccess, Visitor};
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(
        edges: &[(String, Vec<String>)],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(edges.len()))?;
        for (k, v) in edges {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(String, Vec<String>)>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<(String, Vec<String>)>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from edge labels to vertex lists")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry()? {
                    out.push(entry);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

/// Checks a raw hypergraph against every structural invariant and the loop policy.
///
/// # Errors
/// Every violation found.
pub fn validate(raw: &RawHypergraph, policy: LoopPolicy) -> Result<Hypergraph, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut vertices = BTreeSet::new();
    for v in &raw.vertices {
        match Label::new(v) {
            Ok(l) => {
                if !vertices.insert(l) {
                    violations.push(Violation::DuplicateVertex { vertex: v.clone() });
                }
            }
            Err(_) => violations.push(Violation::InvalidLabel { text: v.clone() }),
        }
    }
    let mut labels = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for (l, members) in &raw.edges {
        let Ok(label) = Label::new(l) else {
            violations.push(Violation::InvalidLabel { text: l.clone() });
            continue;
        };
        if !labels.insert(label.clone()) {
            violations.push(Violation::DuplicateEdgeLabel { edge: l.clone() });
        }
        let mut set = BTreeSet::new();
        for m in members {
            match Label::new(m) {
                Ok(v) => {
                    if !vertices.contains(&v) {
                        violations.push(Violation::VertexNotInVertexSet {
                            edge: l.clone(),
                            vertex: m.clone(),
                        });
                    }
                    set.insert(v);
                }
                Err(_) => violations.push(Violation::InvalidLabel { text: m.clone() }),
            }
        }
        if set.is_empty() {
            violations.push(Violation::EmptyEdge { edge: l.clone() });
        } else if set.len() < policy.min_edge_size() {
            violations.push(Violation::LoopDisallowed { edge: l.clone() });
        } else {
            edges.insert(Hyperedge { label, vertices: set });
        }
    }
    if violations.is_empty() {
        Ok(Hypergraph { vertices, edges })
    } else {
        Err(violations)
    }
}

impl From<&Hypergraph> for RawHypergraph {
    fn from(h: &Hypergraph) -> Self {
        RawHypergraph {
            vertices: h.vertices.iter().map(ToString::to_string).collect(),
            edges: h
                .edges
                .iter()
                .map(|e| (e.label.to_string(), e.vertices.iter().map(ToString::to_string).collect()))
                .collect(),
        }
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawHypergraph::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(d)?;
        validate(&raw, LoopPolicy::Allow)
            .map_err(|vs| serde::de::Error::custom(HypergraphError::Invalid(vs)))
    }
}

/// 𝒞(X): pairwise vertex-disjoint connected hypergraphs.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSet(BTreeSet<Hypergraph>);

impl ComponentSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: &Hypergraph) -> bool {
        self.0.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hypergraph> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &ComponentSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ComponentSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Symmetric difference in the component space.
    pub fn symmetric_difference(&self, other: &ComponentSet) -> Vec<Hypergraph> {
        self.0.symmetric_difference(&other.0).cloned().collect()
    }

    /// ⊕ of the components.
    pub fn sum(&self) -> Hypergraph {
        direct_sum(&self.0).expect("components are vertex disjoint")
    }
}

impl IntoIterator for ComponentSet {
    type Item = Hypergraph;
    type IntoIter = std::collections::btree_set::IntoIter<Hypergraph>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// A set of hyperedges with pairwise distinct labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(BTreeSet<Hyperedge>);

impl EdgeSet {
    /// # Errors
    /// [`HypergraphError::LabelCollision`] when two edges share a label.
    pub fn new(edges: impl IntoIterator<Item = Hyperedge>) -> Result<Self, HypergraphError> {
        let edges: Vec<Hyperedge> = edges.into_iter().collect();
        Ok(EdgeSet(merge_edges(&edges)?))
    }

    /// # Errors
    /// Propagates label and collision errors.
    pub fn from_parts<E, S>(edges: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator<Item = (S, Vec<S>)>,
        S: AsRef<str>,
    {
        let mut es = Vec::new();
        for (l, members) in edges {
            let members = members.into_iter().map(Label::new).collect::<Result<Vec<_>, _>>()?;
            es.push(Hyperedge::new(Label::new(l)?, members)?);
        }
        Self::new(es)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hyperedge> {
        self.0.iter()
    }

    pub fn contains(&self, e: &Hyperedge) -> bool {
        self.0.contains(e)
    }

    /// ⋃H.
    pub fn vertices(&self) -> BTreeSet<Label> {
        self.0.iter().flat_map(|e| e.vertices.iter().cloned()).collect()
    }

    /// Whether H ∩ E(x) = ∅.
    pub fn is_disjoint_from(&self, x: &Hypergraph) -> bool {
        self.0.is_disjoint(&x.edges)
    }

    /// Whether ⋃H ⊆ V(x).
    pub fn is_covered_by(&self, x: &Hypergraph) -> bool {
        self.0.iter().all(|e| e.vertices.is_subset(&x.vertices))
    }

    /// # Errors
    /// [`Violation::LoopDisallowed`] for edges too small under `policy`.
    pub fn validate(&self, policy: LoopPolicy) -> Result<(), Vec<Violation>> {
        let bad: Vec<Violation> = self
            .0
            .iter()
            .filter(|e| e.len() < policy.min_edge_size())
            .map(|e| Violation::LoopDisallowed { edge: e.label.to_string() })
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for e in &self.0 {
            m.serialize_entry(&e.label, &e.vertices)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("member {member} violates the loop policy: {}", join_violations(.violations))]
    Member { member: Hypergraph, violations: Vec<Violation> },
    #[error("label {0} is used both as a vertex and as an edge label")]
    AlphabetOverlap(Label),
}

/// A finite family of hypergraphs sharing a loop policy and a vertex universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    members: BTreeSet<Hypergraph>,
    loop_policy: LoopPolicy,
    extra_vertices: BTreeSet<Label>,
}

impl Family {
    /// # Errors
    /// [`FamilyError`] when a member breaks the loop policy or when vertex and
    /// edge labels overlap.
    pub fn new(
        members: impl IntoIterator<Item = Hypergraph>,
        loop_policy: LoopPolicy,
        extra_vertices: impl IntoIterator<Item = Label>,
    ) -> Result<Self, FamilyError> {
        let members: BTreeSet<Hypergraph> = members.into_iter().collect();
        for m in &members {
            if let Err(violations) = m.validate(loop_policy) {
                return Err(FamilyError::Member { member: m.clone(), violations });
            }
        }
        let family = Family { members, loop_policy, extra_vertices: extra_vertices.into_iter().collect() };
        let vertices = family.universe_vertices();
        if let Some(l) = family.members.iter().flat_map(Hypergraph::edge_labels).find(|l| vertices.contains(*l)) {
            return Err(FamilyError::AlphabetOverlap(l.clone()));
        }
        Ok(family)
    }

    pub fn members(&self) -> &BTreeSet<Hypergraph> {
        &self.members
    }

    pub fn contains(&self, x: &Hypergraph) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn loop_policy(&self) -> LoopPolicy {
        self.loop_policy
    }

    pub fn extra_vertices(&self) -> &BTreeSet<Label> {
        &self.extra_vertices
    }

    /// ⋃ V(X) over the members.
    pub fn member_vertices(&self) -> BTreeSet<Label> {
        self.members.iter().flat_map(|m| m.vertices.iter().cloned()).collect()
    }

    /// V(𝒳): member vertices together with the declared extras.
    pub fn universe_vertices(&self) -> BTreeSet<Label> {
        let mut out = self.member_vertices();
        out.extend(self.extra_vertices.iter().cloned());
        out
    }

    /// ⋃ E(X) over the members.
    pub fn edges(&self) -> BTreeSet<Hyperedge> {
        self.members.iter().flat_map(|m| m.edges.iter().cloned()).collect()
    }

    /// The same universe and policy with different members.
    ///
    /// # Errors
    /// As for [`Family::new`].
    pub fn with_members(
        &self,
        members: impl IntoIterator<Item = Hypergraph>,
    ) -> Result<Family, FamilyError> {
        Family::new(members, self.loop_policy, self.universe_vertices())
    }
}

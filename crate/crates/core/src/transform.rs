//! Distinguished-set hypergraph transformations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{direct_sum, Family, Hypergraph, Violation};

/// A set S of distinguished hypergraphs. May contain 𝒩.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistinguishedSet(BTreeSet<Hypergraph>);

impl DistinguishedSet {
    pub fn new(members: impl IntoIterator<Item = Hypergraph>) -> Self {
        Self(members.into_iter().collect())
    }

    pub fn members(&self) -> &BTreeSet<Hypergraph> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hypergraph> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Hypergraph) -> bool {
        self.0.contains(x)
    }

    pub fn contains_null(&self) -> bool {
        self.0.contains(&Hypergraph::null())
    }

    pub fn is_subset(&self, other: &DistinguishedSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<Hypergraph> for DistinguishedSet {
    fn from_iter<I: IntoIterator<Item = Hypergraph>>(iter: I) -> Self {
        Self::new(iter)
    }
}

/// Why no S-maximal subset exists for a target.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoMaximalSubset {
    #[error("maximal candidates {first} and {second} inside {target} share a component")]
    Overlap { target: Hypergraph, first: Hypergraph, second: Hypergraph },
    #[error("candidate {candidate} inside {target} lies in no maximal member")]
    Uncovered { target: Hypergraph, candidate: Hypergraph },
}

impl NoMaximalSubset {
    pub fn target(&self) -> &Hypergraph {
        match self {
            NoMaximalSubset::Overlap { target, .. } | NoMaximalSubset::Uncovered { target, .. } => target,
        }
    }
}

/// D_X.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaximalSubset {
    pub for_target: Hypergraph,
    pub members: BTreeSet<Hypergraph>,
}

/// Computes the unique S-maximal subset D_X.
///
/// Candidates are the non-null members of S whose components are components
/// of X. D_X consists of the component-containment-maximal candidates,
/// together with 𝒩 when 𝒩 ∈ S.
///
/// # Errors
/// [`NoMaximalSubset`] when two maximal candidates share a component.
pub fn maximal_subset(s: &DistinguishedSet, x: &Hypergraph) -> Result<MaximalSubset, NoMaximalSubset> {
    let candidates: Vec<&Hypergraph> = s.iter().filter(|c| !c.is_null() && c.is_component_subset_of(x)).collect();
    let maximal: Vec<&Hypergraph> = candidates
        .iter()
        .copied()
        .filter(|c| !candidates.iter().any(|d| d != c && c.is_component_subset_of(d)))
        .collect();
    for (i, a) in maximal.iter().enumerate() {
        for b in &maximal[i + 1..] {
            if !a.is_component_disjoint(b) {
                return Err(NoMaximalSubset::Overlap {
                    target: x.clone(),
                    first: (*a).clone(),
                    second: (*b).clone(),
                });
            }
        }
    }
    if let Some(c) = candidates.iter().find(|c| !maximal.iter().any(|m| c.is_component_subset_of(m))) {
        return Err(NoMaximalSubset::Uncovered { target: x.clone(), candidate: (*c).clone() });
    }
    let mut members: BTreeSet<Hypergraph> = maximal.into_iter().cloned().collect();
    if s.contains_null() {
        members.insert(Hypergraph::null());
    }
    Ok(MaximalSubset { for_target: x.clone(), members })
}

/// Checks that every member of `family` has an S-maximal subset.
///
/// # Errors
/// The failure for the first member without one.
pub fn is_component_maximal(s: &DistinguishedSet, family: &Family) -> Result<(), NoMaximalSubset> {
    family.members().iter().try_for_each(|x| maximal_subset(s, x).map(|_| ()))
}

/// Errors raised while assembling a [`TransformSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("distinguished hypergraph {0} is not a family member")]
    NotInFamily(Hypergraph),
    #[error("distinguished hypergraph {0} has no image")]
    MissingImage(Hypergraph),
    #[error("image given for non-distinguished hypergraph {0}")]
    StrayImage(Hypergraph),
    #[error("image {image} breaks the loop policy: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    ImagePolicy { image: Hypergraph, violations: Vec<Violation> },
}

/// (𝒳, S, π|_S).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformSpec {
    family: Family,
    distinguished: DistinguishedSet,
    images: BTreeMap<Hypergraph, Hypergraph>,
}

impl TransformSpec {
    /// # Errors
    /// [`SpecError`] when S ⊄ 𝒳, when images are not exactly defined on S,
    /// or when an image breaks the loop policy.
    pub fn new(
        family: Family,
        distinguished: DistinguishedSet,
        images: BTreeMap<Hypergraph, Hypergraph>,
    ) -> Result<Self, SpecError> {
        if let Some(s) = distinguished.iter().find(|s| !family.contains(s)) {
            return Err(SpecError::NotInFamily(s.clone()));
        }
        if let Some(s) = distinguished.iter().find(|s| !images.contains_key(s)) {
            return Err(SpecError::MissingImage(s.clone()));
        }
        if let Some(k) = images.keys().find(|k| !distinguished.contains(k)) {
            return Err(SpecError::StrayImage(k.clone()));
        }
        for image in images.values() {
            if let Err(violations) = image.validate(family.loop_policy()) {
                return Err(SpecError::ImagePolicy { image: image.clone(), violations });
            }
        }
        Ok(Self { family, distinguished, images })
    }

    /// A spec whose images are given by `rule`.
    ///
    /// # Errors
    /// As for [`TransformSpec::new`].
    pub fn from_rule(
        family: Family,
        distinguished: DistinguishedSet,
        rule: impl Fn(&Hypergraph) -> Hypergraph,
    ) -> Result<Self, SpecError> {
        let images = distinguished.iter().map(|s| (s.clone(), rule(s))).collect();
        Self::new(family, distinguished, images)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn distinguished(&self) -> &DistinguishedSet {
        &self.distinguished
    }

    pub fn images(&self) -> &BTreeMap<Hypergraph, Hypergraph> {
        &self.images
    }

    /// The same family and images restricted to `sub`.
    ///
    /// # Errors
    /// [`SpecError::StrayImage`] when `sub` is not a subset of S.
    pub fn restrict(&self, sub: &DistinguishedSet) -> Result<TransformSpec, SpecError> {
        if let Some(x) = sub.iter().find(|x| !self.distinguished.contains(x)) {
            return Err(SpecError::StrayImage(x.clone()));
        }
        let images = sub.iter().map(|s| (s.clone(), self.images[s].clone())).collect();
        TransformSpec::new(self.family.clone(), sub.clone(), images)
    }
}

/// The defining condition a candidate transformation fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Nonredundancy,
    Maximality,
    DisjointImages,
    ImageCount,
    Decomposition,
    Totality,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Nonredundancy => "nonredundancy",
            Condition::Maximality => "maximality",
            Condition::DisjointImages => "disjoint images",
            Condition::ImageCount => "image count",
            Condition::Decomposition => "decomposition",
            Condition::Totality => "totality",
        })
    }
}

/// Reasons `derive` rejects a spec.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidSpec {
    #[error("{0} shares a component with its image")]
    NotNonredundant(Hypergraph),
    #[error(transparent)]
    NotComponentMaximal(#[from] NoMaximalSubset),
    #[error("active images for {0} are not vertex disjoint")]
    ImagesNotDisjoint(Hypergraph),
    #[error("two active members for {0} share an image")]
    ImageCountCollision(Hypergraph),
    #[error("rebuilding {0} reuses an edge label")]
    LabelCollision(Hypergraph),
    #[error("decomposition of distinguished {0} disagrees with its image")]
    DecompositionNotPreserved(Hypergraph),
}

impl InvalidSpec {
    pub fn condition(&self) -> Condition {
        match self {
            InvalidSpec::NotNonredundant(_) => Condition::Nonredundancy,
            InvalidSpec::NotComponentMaximal(_) => Condition::Maximality,
            InvalidSpec::ImagesNotDisjoint(_) => Condition::DisjointImages,
            InvalidSpec::ImageCountCollision(_) => Condition::ImageCount,
            InvalidSpec::LabelCollision(_) | InvalidSpec::DecompositionNotPreserved(_) => Condition::Decomposition,
        }
    }

    pub fn target(&self) -> &Hypergraph {
        match self {
            InvalidSpec::NotComponentMaximal(e) => e.target(),
            InvalidSpec::NotNonredundant(x)
            | InvalidSpec::ImagesNotDisjoint(x)
            | InvalidSpec::ImageCountCollision(x)
            | InvalidSpec::LabelCollision(x)
            | InvalidSpec::DecompositionNotPreserved(x) => x,
        }
    }
}

/// A failed check of the defining conditions, naming the hypergraph at fault.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("condition {condition} fails at {target}")]
pub struct VerifyError {
    pub condition: Condition,
    pub target: Hypergraph,
}

impl From<InvalidSpec> for VerifyError {
    fn from(e: InvalidSpec) -> Self {
        VerifyError { condition: e.condition(), target: e.target().clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Invalid(#[from] InvalidSpec),
    #[error("{0} is not in the domain")]
    NotInDomain(Hypergraph),
    #[error("subset is not upward closed in the distinguished set")]
    NotUpwardClosed,
}

struct Analysis {
    maximal: MaximalSubset,
    active: BTreeSet<Hypergraph>,
    image: Hypergraph,
}

fn check_nonredundant<'a>(
    s: &DistinguishedSet,
    image: impl Fn(&Hypergraph) -> &'a Hypergraph,
) -> Result<(), InvalidSpec> {
    for m in s.iter() {
        let p = image(m);
        let redundant = if m.is_null() { p.is_null() } else { !m.is_component_disjoint(p) };
        if redundant {
            return Err(InvalidSpec::NotNonredundant(m.clone()));
        }
    }
    Ok(())
}

/// D_X, S_X and X̄ ⊕ (⊕ π(S_X)) for one target.
fn analyse<'a>(
    s: &DistinguishedSet,
    x: &Hypergraph,
    image: &impl Fn(&Hypergraph) -> &'a Hypergraph,
) -> Result<Analysis, InvalidSpec> {
    let maximal = maximal_subset(s, x)?;
    let mut active = BTreeSet::new();
    for m in &maximal.members {
        let rest = x.direct_difference(m).expect("members of D_X are component subsets");
        if image(m).is_vertex_disjoint(&rest) {
            active.insert(m.clone());
        }
    }
    let images: Vec<&Hypergraph> = active.iter().map(image).collect();
    for (i, a) in images.iter().enumerate() {
        for b in &images[i + 1..] {
            if a == b {
                return Err(InvalidSpec::ImageCountCollision(x.clone()));
            }
            if !a.is_vertex_disjoint(b) {
                return Err(InvalidSpec::ImagesNotDisjoint(x.clone()));
            }
        }
    }
    let removed = direct_sum(&active).expect("active members are vertex disjoint");
    let bar = x.direct_difference(&removed).expect("active members are whole components");
    let result = direct_sum(std::iter::once(&bar).chain(images.iter().copied()))
        .map_err(|_| InvalidSpec::LabelCollision(x.clone()))?;
    Ok(Analysis { maximal, active, image: result })
}

/// A validated hypergraph transformation with its full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    spec: TransformSpec,
    maximal_subsets: BTreeMap<Hypergraph, MaximalSubset>,
    active_sets: BTreeMap<Hypergraph, BTreeSet<Hypergraph>>,
    table: BTreeMap<Hypergraph, Hypergraph>,
}

/// Builds the transformation determined by S and π(S), checking every
/// defining condition on the way.
///
/// # Errors
/// [`InvalidSpec`] naming the first failed condition.
pub fn derive(spec: TransformSpec) -> Result<Transformation, InvalidSpec> {
    let image = |m: &Hypergraph| &spec.images[m];
    check_nonredundant(&spec.distinguished, image)?;
    let mut maximal_subsets = BTreeMap::new();
    let mut active_sets = BTreeMap::new();
    let mut table = BTreeMap::new();
    for x in spec.family.members() {
        let a = analyse(&spec.distinguished, x, &image)?;
        if let Some(given) = spec.images.get(x) {
            if given != &a.image {
                return Err(InvalidSpec::DecompositionNotPreserved(x.clone()));
            }
        }
        maximal_subsets.insert(x.clone(), a.maximal);
        active_sets.insert(x.clone(), a.active);
        table.insert(x.clone(), a.image);
    }
    Ok(Transformation { spec, maximal_subsets, active_sets, table })
}

/// Checks that (family, table, S) satisfies the defining conditions.
///
/// # Errors
/// [`VerifyError`] naming the failed condition and the hypergraph at fault.
pub fn verify(
    family: &Family,
    table: &BTreeMap<Hypergraph, Hypergraph>,
    s: &DistinguishedSet,
) -> Result<(), VerifyError> {
    if let Some(x) = family.members().iter().find(|x| !table.contains_key(x)) {
        return Err(VerifyError { condition: Condition::Totality, target: x.clone() });
    }
    if let Some(x) = table.keys().find(|x| !family.contains(x)) {
        return Err(VerifyError { condition: Condition::Totality, target: x.clone() });
    }
    if let Some(x) = s.iter().find(|x| !family.contains(x)) {
        return Err(VerifyError { condition: Condition::Maximality, target: x.clone() });
    }
    let image = |m: &Hypergraph| &table[m];
    check_nonredundant(s, image)?;
    for x in family.members() {
        let a = analyse(s, x, &image)?;
        if a.image != table[x] {
            return Err(VerifyError { condition: Condition::Decomposition, target: x.clone() });
        }
    }
    Ok(())
}

/// Whether `sub` is upward closed in `s`: S ∈ sub, T ∈ s and 𝒞(S) ⊆ 𝒞(T)
/// imply T ∈ sub. False when `sub` is not a subset of `s`.
pub fn is_upward_closed(sub: &DistinguishedSet, s: &DistinguishedSet) -> bool {
    sub.is_subset(s)
        && sub
            .iter()
            .all(|a| s.iter().all(|t| sub.contains(t) || !a.is_component_subset_of(t)))
}

impl Transformation {
    pub fn spec(&self) -> &TransformSpec {
        &self.spec
    }

    pub fn family(&self) -> &Family {
        &self.spec.family
    }

    pub fn distinguished(&self) -> &DistinguishedSet {
        &self.spec.distinguished
    }

    /// π(S) for a distinguished S.
    pub fn image(&self, s: &Hypergraph) -> Option<&Hypergraph> {
        self.spec.images.get(s)
    }

    pub fn maximal_subset(&self, x: &Hypergraph) -> Option<&MaximalSubset> {
        self.maximal_subsets.get(x)
    }

    /// S_X.
    pub fn active_set(&self, x: &Hypergraph) -> Option<&BTreeSet<Hypergraph>> {
        self.active_sets.get(x)
    }

    pub fn table(&self) -> &BTreeMap<Hypergraph, Hypergraph> {
        &self.table
    }

    /// π(x).
    ///
    /// # Errors
    /// [`TransformError::NotInDomain`] for hypergraphs outside the family.
    pub fn apply(&self, x: &Hypergraph) -> Result<&Hypergraph, TransformError> {
        self.table.get(x).ok_or_else(|| TransformError::NotInDomain(x.clone()))
    }

    /// The non-fixed points.
    pub fn support(&self) -> BTreeSet<Hypergraph> {
        self.table.iter().filter(|(x, y)| x != y).map(|(x, _)| x.clone()).collect()
    }

    /// Family members together with every image.
    pub fn codomain(&self) -> BTreeSet<Hypergraph> {
        self.table.keys().chain(self.table.values()).cloned().collect()
    }

    /// The support reduction to an upward-closed `sub` ⊆ S.
    ///
    /// # Errors
    /// [`TransformError::NotUpwardClosed`] unless `sub` is an upward-closed subset of S.
    pub fn support_reduction(&self, sub: &DistinguishedSet) -> Result<Transformation, TransformError> {
        if !is_upward_closed(sub, self.distinguished()) {
            return Err(TransformError::NotUpwardClosed);
        }
        Ok(derive(self.spec.restrict(sub)?)?)
    }
}

/// Convenience: derive from family, S and an image rule.
///
/// # Errors
/// Spec assembly or derivation failures.
pub fn derive_with(
    family: &Family,
    s: DistinguishedSet,
    rule: impl Fn(&Hypergraph) -> Hypergraph,
) -> Result<Transformation, TransformError> {
    Ok(derive(TransformSpec::from_rule(family.clone(), s, rule)?)?)
}

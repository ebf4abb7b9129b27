//! Composition of partial transformations and coincidence sets.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{direct_sum, Hypergraph};
use crate::transform::Transformation;

/// Longest sequence accepted by [`coincidence`].
pub const MAX_COINCIDENCE_MAPS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("coincidence needs at least two maps, got {0}")]
    TooFewMaps(usize),
    #[error("coincidence enumerates n! orderings and accepts at most {MAX_COINCIDENCE_MAPS} maps, got {0}")]
    TooManyMaps(usize),
    #[error("transformations {i} and {j} are not disjoint")]
    NotPairwiseDisjoint { i: usize, j: usize },
    #[error("{0} is not in the coincidence set")]
    NotInCoincidence(Hypergraph),
    #[error("closed form {closed} differs from sequential result {sequential}")]
    DecompositionMismatch { closed: Hypergraph, sequential: Hypergraph },
}

/// A finite partial map on hypergraphs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PartialMap {
    entries: BTreeMap<Hypergraph, Hypergraph>,
}

impl PartialMap {
    pub fn new(entries: BTreeMap<Hypergraph, Hypergraph>) -> Self {
        Self { entries }
    }

    pub fn identity<'a>(universe: impl IntoIterator<Item = &'a Hypergraph>) -> Self {
        Self { entries: universe.into_iter().map(|x| (x.clone(), x.clone())).collect() }
    }

    pub fn entries(&self) -> &BTreeMap<Hypergraph, Hypergraph> {
        &self.entries
    }

    pub fn get(&self, x: &Hypergraph) -> Option<&Hypergraph> {
        self.entries.get(x)
    }

    pub fn domain(&self) -> BTreeSet<Hypergraph> {
        self.entries.keys().cloned().collect()
    }

    pub fn image(&self) -> BTreeSet<Hypergraph> {
        self.entries.values().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl From<&Transformation> for PartialMap {
    fn from(t: &Transformation) -> Self {
        PartialMap::new(t.table().clone())
    }
}

/// outer ∘ inner on the largest domain inner⁻¹(Im(inner) ∩ Dom(outer)).
pub fn compose(outer: &PartialMap, inner: &PartialMap) -> PartialMap {
    let entries = inner
        .entries
        .iter()
        .filter_map(|(x, y)| outer.entries.get(y).map(|z| (x.clone(), z.clone())))
        .collect();
    PartialMap { entries }
}

/// Applies `seq` in order, first element first. The empty sequence yields the
/// identity on `universe`.
pub fn compose_seq<'a>(seq: &[&PartialMap], universe: impl IntoIterator<Item = &'a Hypergraph>) -> PartialMap {
    match seq.split_first() {
        None => PartialMap::identity(universe),
        Some((first, rest)) => rest.iter().fold((*first).clone(), |acc, m| compose(m, &acc)),
    }
}

/// What [`coincidence`] found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport {
    pub ordering_count: usize,
    pub common_domain: BTreeSet<Hypergraph>,
    pub coincidence: BTreeSet<Hypergraph>,
}

/// Enumerates every ordering of `seq` and keeps the common-domain members on
/// which all orderings agree.
///
/// # Errors
/// [`ComposeError::TooFewMaps`] below two maps and
/// [`ComposeError::TooManyMaps`] above [`MAX_COINCIDENCE_MAPS`].
pub fn coincidence(seq: &[&PartialMap]) -> Result<CoincidenceReport, ComposeError> {
    let n = seq.len();
    if n < 2 {
        return Err(ComposeError::TooFewMaps(n));
    }
    if n > MAX_COINCIDENCE_MAPS {
        return Err(ComposeError::TooManyMaps(n));
    }
    let composites: Vec<PartialMap> = (0..n)
        .permutations(n)
        .map(|order| {
            let ordered: Vec<&PartialMap> = order.iter().map(|&i| seq[i]).collect();
            compose_seq(&ordered, [])
        })
        .collect();
    let (first, rest) = composites.split_first().expect("n >= 2");
    let common_domain: BTreeSet<Hypergraph> =
        first.entries.keys().filter(|x| rest.iter().all(|m| m.entries.contains_key(*x))).cloned().collect();
    let coincidence = common_domain
        .iter()
        .filter(|x| {
            let y = &first.entries[*x];
            rest.iter().all(|m| &m.entries[*x] == y)
        })
        .cloned()
        .collect();
    Ok(CoincidenceReport { ordering_count: composites.len(), common_domain, coincidence })
}

fn footprint(t: &Transformation) -> impl Iterator<Item = &Hypergraph> {
    t.distinguished().iter().chain(t.spec().images().values())
}

/// Whether every member of S₁ ∪ π₁(S₁) is vertex disjoint from every member
/// of S₂ ∪ π₂(S₂).
pub fn are_disjoint(t1: &Transformation, t2: &Transformation) -> bool {
    footprint(t1).all(|x| footprint(t2).all(|y| x.is_vertex_disjoint(y)))
}

/// Applies pairwise disjoint transformations through the closed form
/// X̄ ⊕ (⊕ᵢ ⊕_{S ∈ Sⁱ_X} πᵢ(S)), and checks it against applying them in order.
///
/// # Errors
/// [`ComposeError::NotPairwiseDisjoint`], [`ComposeError::NotInCoincidence`],
/// or [`ComposeError::DecompositionMismatch`] if the two computations disagree.
pub fn disjoint_apply(ts: &[&Transformation], x: &Hypergraph) -> Result<Hypergraph, ComposeError> {
    for (i, a) in ts.iter().enumerate() {
        for (j, b) in ts.iter().enumerate().skip(i + 1) {
            if !are_disjoint(a, b) {
                return Err(ComposeError::NotPairwiseDisjoint { i, j });
            }
        }
    }
    // Coincidence membership of x alone: every ordering defined at x and agreeing.
    let n = ts.len();
    let mut results = (0..n).permutations(n).map(|order| apply_in_order(order.iter().map(|&i| ts[i]), x));
    let sequential = results.next().flatten();
    if n > 0 && (sequential.is_none() || results.any(|y| y != sequential)) {
        return Err(ComposeError::NotInCoincidence(x.clone()));
    }
    let mut removed = Vec::new();
    let mut added = Vec::new();
    for t in ts {
        let active = t.active_set(x).expect("x is in every domain");
        for s in active {
            removed.push(s.clone());
            added.push(t.image(s).expect("active members are distinguished").clone());
        }
    }
    let mismatch = |closed: Hypergraph| ComposeError::DecompositionMismatch {
        closed,
        sequential: sequential.clone().unwrap_or_default(),
    };
    let bar = direct_sum(&removed).ok().and_then(|r| x.direct_difference(&r).ok());
    let closed = bar
        .as_ref()
        .and_then(|b| direct_sum(std::iter::once(b).chain(added.iter())).ok())
        .ok_or_else(|| mismatch(Hypergraph::null()))?;
    match &sequential {
        Some(y) if y != &closed => Err(mismatch(closed)),
        _ => Ok(closed),
    }
}

/// Applies `ts` to x in order; `None` once a result leaves a domain.
fn apply_in_order<'a>(ts: impl IntoIterator<Item = &'a Transformation>, x: &Hypergraph) -> Option<Hypergraph> {
    ts.into_iter().try_fold(x.clone(), |y, t| t.table().get(&y).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{Family, LoopPolicy};
    use crate::transform::{derive_with, DistinguishedSet};

    fn hg(s: &str) -> Hypergraph {
        s.parse().unwrap()
    }

    fn map(pairs: &[(&str, &str)]) -> PartialMap {
        PartialMap::new(pairs.iter().map(|(a, b)| (hg(a), hg(b))).collect())
    }

    #[test]
    fn compose_examples() {
        let p = map(&[("<{a}; {}>", "<{b}; {}>"), ("<{b}; {}>", "<{c}; {}>")]);
        assert!(compose(&p, &PartialMap::default()).is_empty());
        let q = map(&[("<{z}; {}>", "<{y}; {}>")]);
        assert!(compose(&q, &p).is_empty());
        let id = PartialMap::identity([&hg("<{c}; {}>")]);
        assert_eq!(compose(&id, &p), map(&[("<{b}; {}>", "<{c}; {}>")]));
        assert_eq!(compose(&p, &p), map(&[("<{a}; {}>", "<{c}; {}>")]));
    }

    #[test]
    fn compose_seq_examples() {
        let p = map(&[("<{a}; {}>", "<{b}; {}>"), ("<{b}; {}>", "<{c}; {}>")]);
        let q = map(&[("<{b}; {}>", "<{a}; {}>"), ("<{c}; {}>", "<{c}; {}>")]);
        let u = hg("<{u}; {}>");
        assert_eq!(compose_seq(&[], [&u]), PartialMap::identity([&u]));
        assert_eq!(compose_seq(&[&p], []), p);
        assert_eq!(compose_seq(&[&p, &q], []), compose(&q, &p));
    }

    #[test]
    fn coincidence_limits() {
        let p = map(&[("<{a}; {}>", "<{a}; {}>")]);
        assert_eq!(coincidence(&[&p]), Err(ComposeError::TooFewMaps(1)));
        let seven = vec![&p; 7];
        assert_eq!(coincidence(&seven), Err(ComposeError::TooManyMaps(7)));
        let r = coincidence(&[&p, &p, &p]).unwrap();
        assert_eq!(r.ordering_count, 6);
        assert_eq!(r.coincidence, r.common_domain);
    }

    #[test]
    fn graph_additions_commute() {
        let w1 = hg("<{p}; {}>");
        let w2 = hg("<{q}; {}>");
        let members = [Hypergraph::null(), w1.clone(), w2.clone(), direct_sum([&w1, &w2]).unwrap()];
        let family = Family::new(members, LoopPolicy::Allow, []).unwrap();
        let add = |w: Hypergraph| {
            derive_with(&family, DistinguishedSet::new([Hypergraph::null()]), move |_| w.clone()).unwrap()
        };
        let t1 = add(w1.clone());
        let t2 = add(w2.clone());
        assert!(are_disjoint(&t1, &t2));
        let both = direct_sum([&w1, &w2]).unwrap();
        assert_eq!(disjoint_apply(&[&t1, &t2], &Hypergraph::null()).unwrap(), both);
        assert_eq!(disjoint_apply(&[&t2, &t1], &Hypergraph::null()).unwrap(), both);
        assert_eq!(disjoint_apply(&[&t1], &w2).unwrap(), both);
        let t3 = add(hg("<{p,r}; {}>"));
        assert_eq!(disjoint_apply(&[&t1, &t3], &Hypergraph::null()), Err(ComposeError::NotPairwiseDisjoint { i: 0, j: 1 }));
    }
}

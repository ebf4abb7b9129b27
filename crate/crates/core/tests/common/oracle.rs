//! Slow, direct implementations used to cross-check the library.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use hyperform::partition::class_label;
use hyperform::{Hyperedge, Hypergraph, Label, LoopPolicy, VertexPartition};

/// Components by breadth-first search over the vertex adjacency relation.
pub fn components(x: &Hypergraph) -> BTreeSet<Hypergraph> {
    let mut adj: BTreeMap<&Label, BTreeSet<&Label>> = x.vertices().iter().map(|v| (v, BTreeSet::new())).collect();
    for e in x.edges() {
        for u in e.vertices() {
            for v in e.vertices() {
                adj.get_mut(u).unwrap().insert(v);
            }
        }
    }
    let mut seen: BTreeSet<&Label> = BTreeSet::new();
    let mut out = BTreeSet::new();
    for start in x.vertices() {
        if seen.contains(start) {
            continue;
        }
        let mut class = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            class.insert(v.clone());
            for w in &adj[v] {
                if seen.insert(*w) {
                    queue.push_back(*w);
                }
            }
        }
        let edges: Vec<Hyperedge> = x.edges().iter().filter(|e| e.vertices().is_subset(&class)).cloned().collect();
        out.insert(Hypergraph::new(class, edges).unwrap());
    }
    out
}

pub fn component_subset(z: &Hypergraph, x: &Hypergraph) -> bool {
    components(z).is_subset(&components(x))
}

fn component_disjoint(a: &Hypergraph, b: &Hypergraph) -> bool {
    components(a).is_disjoint(&components(b))
}

/// Every D ⊆ S satisfying the four component-maximality conditions for X.
pub fn maximal_subsets(s: &[Hypergraph], x: &Hypergraph) -> Vec<BTreeSet<Hypergraph>> {
    let null = Hypergraph::null();
    let has_null = s.contains(&null);
    let mut out = Vec::new();
    for mask in 0u32..(1 << s.len()) {
        let d: Vec<&Hypergraph> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| &s[i]).collect();
        let pairwise = d.iter().enumerate().all(|(i, a)| d.iter().skip(i + 1).all(|b| component_disjoint(a, b)));
        let null_ok = !has_null || d.contains(&&null);
        let inside = d.iter().all(|t| component_subset(t, x));
        let covering = s
            .iter()
            .filter(|m| component_subset(m, x))
            .all(|m| d.iter().any(|t| components(m).is_subset(&components(t))));
        if pairwise && null_ok && inside && covering {
            out.push(d.into_iter().cloned().collect());
        }
    }
    out
}

/// Quotient edges of X/R as sets of class labels, by testing every nonempty
/// set of classes.
pub fn quotient_edges(x: &Hypergraph, r: &VertexPartition, policy: LoopPolicy) -> BTreeSet<BTreeSet<Label>> {
    let classes = restricted_classes(x, r);
    let names: Vec<(&Label, &BTreeSet<Label>)> = classes.iter().collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << names.len()) {
        let k: Vec<&(&Label, &BTreeSet<Label>)> = (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| &names[i]).collect();
        if k.len() < policy.min_edge_size() {
            continue;
        }
        let union: BTreeSet<&Label> = k.iter().flat_map(|(_, b)| b.iter()).collect();
        let hit = x.edges().iter().any(|e| {
            k.iter().all(|(_, b)| !b.is_disjoint(e.vertices())) && e.vertices().iter().all(|v| union.contains(v))
        });
        if hit {
            out.insert(k.iter().map(|(n, _)| (*n).clone()).collect());
        }
    }
    out
}

/// Class label ↦ class ∩ V(X) for the restriction of R to V(X).
pub fn restricted_classes(x: &Hypergraph, r: &VertexPartition) -> BTreeMap<Label, BTreeSet<Label>> {
    let mut out = BTreeMap::new();
    for v in x.vertices() {
        let block: BTreeSet<Label> = r.block_of(v).unwrap().intersection(x.vertices()).cloned().collect();
        out.insert(class_label(&block), block);
    }
    out
}

/// Every nonempty f ⊆ universe whose classes under R are exactly those of e.
pub fn equivalent_sets(e: &BTreeSet<Label>, r: &VertexPartition, universe: &BTreeSet<Label>) -> BTreeSet<BTreeSet<Label>> {
    let target: BTreeSet<&Label> = e.iter().map(|v| r.class_of(v).unwrap()).collect();
    let vs: Vec<&Label> = universe.iter().collect();
    assert!(vs.len() <= 20, "brute force over {} vertices", vs.len());
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << vs.len()) {
        let f: BTreeSet<Label> = (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i].clone()).collect();
        let k: BTreeSet<&Label> = f.iter().map(|v| r.class_of(v).unwrap()).collect();
        if k == target {
            out.insert(f);
        }
    }
    out
}

/// Checks that [v]_R ↦ [v]_{R_F} is a well-defined bijection on vertices
/// carrying the edge sets of X/R and X//R_F onto each other, with both
/// quotients built here from the quotient definition.
pub fn canonical_iso(x: &Hypergraph, r_f: &VertexPartition, policy: LoopPolicy) -> bool {
    let restricted = restricted_classes(x, r_f);
    let mut phi: BTreeMap<Label, Label> = BTreeMap::new();
    for (name, block) in &restricted {
        let images: BTreeSet<&Label> = block.iter().map(|v| r_f.class_of(v).unwrap()).collect();
        if images.len() != 1 {
            return false;
        }
        phi.insert(name.clone(), (*images.iter().next().unwrap()).clone());
    }
    let targets: BTreeSet<&Label> = phi.values().collect();
    if targets.len() != phi.len() {
        return false;
    }
    let small = quotient_edges(x, r_f, policy);
    // X//R_F: classes of F restricted to the classes meeting V(X).
    let augmented: BTreeSet<BTreeSet<Label>> = {
        let meet: BTreeMap<Label, BTreeSet<Label>> = x
            .vertices()
            .iter()
            .map(|v| (r_f.class_of(v).unwrap().clone(), r_f.block_of(v).unwrap().clone()))
            .collect();
        let names: Vec<(&Label, &BTreeSet<Label>)> = meet.iter().collect();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << names.len()) {
            let k: Vec<_> = (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| names[i]).collect();
            if k.len() < policy.min_edge_size() {
                continue;
            }
            let union: BTreeSet<&Label> = k.iter().flat_map(|(_, b)| b.iter()).collect();
            let hit = x.edges().iter().any(|e| {
                k.iter().all(|(_, b)| !b.is_disjoint(e.vertices())) && e.vertices().iter().all(|v| union.contains(v))
            });
            if hit {
                out.insert(k.iter().map(|(n, _)| (*n).clone()).collect());
            }
        }
        out
    };
    let mapped: BTreeSet<BTreeSet<Label>> =
        small.iter().map(|k| k.iter().map(|c| phi[c].clone()).collect()).collect();
    mapped == augmented
}

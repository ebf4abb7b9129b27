//! Random instances assembled from [`super::gen`] for the transformation,
//! composition and quotient checks.

use std::collections::BTreeSet;

use hyperform::{
    derive, edge_add, edge_toggle, graph_add, graph_edge_add, graph_toggle, DistinguishedSet, EdgeSet, Family,
    Hyperedge, Hypergraph, Label, TransformSpec, Transformation, VertexPartition,
};
use rand::seq::SliceRandom;
use rand::Rng as _;

use super::gen::{self, l, labels, Block, Lattice, Rng};

#[derive(Debug, Clone)]
pub struct Built {
    pub lattice: Lattice,
    pub t: Transformation,
    pub kind: &'static str,
}

fn toggles(blocks: &[Block]) -> Vec<&EdgeSet> {
    blocks.iter().filter_map(|b| b.toggled.as_ref()).collect()
}

/// The union of the toggle sets of a random nonempty subset of toggle blocks.
pub fn toggle_set(rng: &mut Rng, blocks: &[Block]) -> Option<EdgeSet> {
    let ts = toggles(blocks);
    if ts.is_empty() {
        return None;
    }
    let mut picked: Vec<&EdgeSet> = ts.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if picked.is_empty() {
        picked.push(ts.choose(rng).unwrap());
    }
    Some(EdgeSet::new(picked.into_iter().flat_map(|h| h.iter().cloned())).unwrap())
}

/// A random member version of a random block.
pub fn block_version(rng: &mut Rng, blocks: &[Block]) -> Hypergraph {
    blocks.choose(rng).unwrap().versions().choose(rng).unwrap().clone()
}

/// Edges joining a summand to block vertices, never lying inside the summand.
pub fn bridge(rng: &mut Rng, w: &Hypergraph, blocks: &[Block]) -> EdgeSet {
    let ws: Vec<Label> = w.vertices().iter().cloned().collect();
    let bs: Vec<Label> = blocks.iter().flat_map(|b| b.base.vertices().iter().cloned()).collect();
    let n = rng.gen_range(1..=2);
    let edges = (0..n).map(|i| {
        let mut vs = vec![ws.choose(rng).unwrap().clone(), bs.choose(rng).unwrap().clone()];
        if rng.gen_bool(0.3) {
            vs.push(bs.choose(rng).unwrap().clone());
        }
        Hyperedge::new(l(&format!("wh{i}")), vs).unwrap()
    });
    EdgeSet::new(edges.collect::<Vec<_>>()).unwrap()
}

/// A random valid transformation on a random lattice family, drawn from the
/// built-in constructors and from random specs that happen to derive.
pub fn transformation(rng: &mut Rng) -> Built {
    loop {
        let policy = gen::policy(rng);
        let k = rng.gen_range(1..=3);
        let blocks = gen::random_blocks(rng, k, 3, 0.5, policy);
        let w = gen::summand(rng, 0, 2, policy);
        let lattice = gen::lattice(blocks, policy, w.vertices().iter().cloned());
        let f = &lattice.family;
        let (kind, t) = match rng.gen_range(0..6) {
            0 => ("graph-toggle", graph_toggle(f, &block_version(rng, &lattice.blocks)).ok()),
            1 => ("edge-toggle", toggle_set(rng, &lattice.blocks).and_then(|h| edge_toggle(f, &h).ok())),
            2 => ("edge-add", toggle_set(rng, &lattice.blocks).and_then(|h| edge_add(f, &h).ok())),
            3 => ("graph-add", graph_add(f, &w).ok()),
            4 => ("graph-edge-add", graph_edge_add(f, &w, &bridge(rng, &w, &lattice.blocks)).ok()),
            _ => ("random-spec", random_spec(rng, f)),
        };
        if let Some(t) = t {
            return Built { lattice, t, kind };
        }
    }
}

/// A random S with images on fresh vertices; `None` when it does not derive.
pub fn random_spec(rng: &mut Rng, f: &Family) -> Option<Transformation> {
    let members: Vec<&Hypergraph> = f.members().iter().collect();
    let n = rng.gen_range(0..=members.len().min(3));
    let s: DistinguishedSet = members.choose_multiple(rng, n).map(|m| (*m).clone()).collect();
    let pool = labels("r", 4);
    let images = s
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let img = if rng.gen_bool(0.2) {
                Hypergraph::null()
            } else {
                gen::hypergraph(rng, &pool, 3, 2, f.loop_policy(), &format!("r{i}e"))
            };
            (m.clone(), img)
        })
        .collect();
    derive(TransformSpec::new(f.clone(), s, images).ok()?).ok()
}

/// n pairwise disjoint transformations on one lattice family, each acting on
/// its own block or summand.
pub fn disjoint_sequence(rng: &mut Rng, n: usize) -> (Lattice, Vec<Transformation>) {
    loop {
        let policy = gen::policy(rng);
        let k = n + rng.gen_range(0..=1);
        let blocks = gen::random_blocks(rng, k, 2, 0.6, policy);
        let ws: Vec<Hypergraph> = (0..n).map(|i| gen::summand(rng, i, 2, policy)).collect();
        let extras: Vec<Label> = ws.iter().flat_map(|w| w.vertices().iter().cloned()).collect();
        let lattice = gen::lattice(blocks, policy, extras);
        let f = &lattice.family;
        let ts: Option<Vec<Transformation>> = (0..n)
            .map(|i| {
                let b = &lattice.blocks[i];
                match (rng.gen_range(0..4), &b.toggled) {
                    (1, Some(h)) => edge_toggle(f, h).ok(),
                    (2, Some(h)) => edge_add(f, h).ok(),
                    (3, _) => graph_add(f, &ws[i]).ok(),
                    _ => graph_toggle(f, b.versions().choose(rng).unwrap()).ok(),
                }
            })
            .collect();
        if let Some(ts) = ts {
            return (lattice, ts);
        }
    }
}

/// A random subset of S closed upward inside S.
pub fn upward_closed_subset(rng: &mut Rng, s: &DistinguishedSet) -> DistinguishedSet {
    let seeds: Vec<&Hypergraph> = s.iter().filter(|_| rng.gen_bool(0.4)).collect();
    s.iter().filter(|t| seeds.iter().any(|a| a.is_component_subset_of(t))).cloned().collect()
}

/// A lattice with at least one toggle block, so that it is H-closed for the
/// returned H.
pub fn h_closed(rng: &mut Rng) -> (Lattice, EdgeSet) {
    loop {
        let policy = gen::policy(rng);
        let k = rng.gen_range(1..=3);
        let blocks = gen::random_blocks(rng, k, 3, 0.7, policy);
        if let Some(h) = toggle_set(rng, &blocks) {
            return (gen::lattice(blocks, policy, []), h);
        }
    }
}

/// (family, W, R) with R W-disjointness preserving for graph addition.
pub fn graph_add_quotient(rng: &mut Rng) -> (Lattice, Hypergraph, VertexPartition) {
    loop {
        let policy = gen::policy(rng);
        let k = rng.gen_range(1..=3);
        let blocks = gen::random_blocks(rng, k, 3, 0.5, policy);
        let w = gen::summand(rng, 0, 3, policy);
        let lattice = gen::lattice(blocks, policy, w.vertices().iter().cloned());
        let universe = lattice.family.universe_vertices();
        let merges = rng.gen_range(0..=3);
        let r = if rng.gen_bool(0.7) {
            let groups = [lattice.family.member_vertices(), w.vertices().clone()];
            gen::partition_within(rng, &universe, &groups, merges)
        } else {
            gen::partition(rng, &universe, merges)
        };
        if hyperform::is_w_disjointness_preserving(&r, &w, &lattice.family).unwrap() {
            return (lattice, w, r);
        }
    }
}

/// An equivalent-edge instance: block 0 exists with and without the edge e,
/// and R may merge vertices of e with vertices of other blocks.
pub fn equiv_edge(rng: &mut Rng) -> (Family, Hyperedge, VertexPartition) {
    let policy = gen::policy(rng);
    let k = rng.gen_range(2..=3);
    let mut blocks = gen::random_blocks(rng, k, 3, 0.0, policy);
    // Block 0 is a path v0 - v1 - v2, so e spanning v0 and v2 is absent from it.
    let vs = labels("b0v", 3);
    blocks[0].base = gen::connected(rng, &vs, 0, policy, "b0e");
    let mut ev = vec![vs[0].clone(), vs[2].clone()];
    if rng.gen_bool(0.3) {
        ev.push(vs[1].clone());
    }
    let e = Hyperedge::new(l("x0"), ev.clone()).unwrap();
    blocks[0].toggled = Some(EdgeSet::new([e.clone()]).unwrap());
    let lattice = gen::lattice(blocks.clone(), policy, []);
    let universe = lattice.family.universe_vertices();
    let others: Vec<Label> = blocks[1..].iter().flat_map(|b| b.base.vertices().iter().cloned()).collect();
    let mut merged: Vec<BTreeSet<Label>> = Vec::new();
    for v in &ev {
        if rng.gen_bool(0.6) {
            let u = others.choose(rng).unwrap().clone();
            if !merged.iter().any(|m| m.contains(&u) || m.contains(v)) {
                merged.push(BTreeSet::from([v.clone(), u]));
            }
        }
    }
    let m = rng.gen_range(0..=1);
    let extra = gen::partition(rng, &others.iter().cloned().collect(), m);
    for b in extra.blocks().iter().filter(|b| b.len() > 1) {
        if merged.iter().all(|m| m.is_disjoint(b)) {
            merged.push(b.clone());
        }
    }
    let r = VertexPartition::new(universe.iter().cloned(), merged).unwrap();
    (lattice.family, e, r)
}

//! Seeded random instances.
//!
//! Closed families come from "lattices": a few vertex-disjoint connected
//! blocks, each available in one or two versions, and every direct sum taking
//! at most one version of each block. Any union of components of a lattice
//! member is again a member.

use std::collections::BTreeSet;

use hyperform::{direct_sum, EdgeSet, Family, Hyperedge, Hypergraph, Label, LoopPolicy, VertexPartition};
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn l(s: &str) -> Label {
    Label::new(s).unwrap()
}

pub fn labels(prefix: &str, n: usize) -> Vec<Label> {
    (0..n).map(|i| l(&format!("{prefix}{i}"))).collect()
}

pub fn policy(rng: &mut Rng) -> LoopPolicy {
    if rng.gen_bool(0.5) {
        LoopPolicy::Allow
    } else {
        LoopPolicy::Disallow
    }
}

pub fn sum<'a>(hs: impl IntoIterator<Item = &'a Hypergraph>) -> Hypergraph {
    direct_sum(hs).unwrap()
}

fn edge_vertices(rng: &mut Rng, vs: &[Label], policy: LoopPolicy) -> Option<Vec<Label>> {
    let lo = policy.min_edge_size();
    if vs.len() < lo {
        return None;
    }
    let n = rng.gen_range(lo..=vs.len().min(3));
    Some(vs.choose_multiple(rng, n).cloned().collect())
}

/// Up to `n` random edges on `vs`, labelled `{prefix}0`, `{prefix}1`, ...
pub fn edges_on(rng: &mut Rng, vs: &[Label], n: usize, policy: LoopPolicy, prefix: &str) -> Vec<Hyperedge> {
    (0..n)
        .filter_map(|i| edge_vertices(rng, vs, policy).map(|e| Hyperedge::new(l(&format!("{prefix}{i}")), e).unwrap()))
        .collect()
}

/// A random hypergraph on at most `max_v` vertices of `pool` with at most
/// `max_e` edges.
pub fn hypergraph(rng: &mut Rng, pool: &[Label], max_v: usize, max_e: usize, policy: LoopPolicy, prefix: &str) -> Hypergraph {
    let nv = rng.gen_range(0..=max_v.min(pool.len()));
    let vs: Vec<Label> = pool.choose_multiple(rng, nv).cloned().collect();
    let ne = rng.gen_range(0..=max_e);
    Hypergraph::new(vs.clone(), edges_on(rng, &vs, ne, policy, prefix)).unwrap()
}

/// A connected hypergraph on `vs`: a path plus up to `extra` random edges.
pub fn connected(rng: &mut Rng, vs: &[Label], extra: usize, policy: LoopPolicy, prefix: &str) -> Hypergraph {
    let mut edges: Vec<Hyperedge> = vs
        .windows(2)
        .enumerate()
        .map(|(i, w)| Hyperedge::new(l(&format!("{prefix}p{i}")), w.iter().cloned()).unwrap())
        .collect();
    let n = rng.gen_range(0..=extra);
    edges.extend(edges_on(rng, vs, n, policy, &format!("{prefix}x")));
    Hypergraph::new(vs.iter().cloned(), edges).unwrap()
}

/// A random union of components of `x`.
pub fn component_sum(rng: &mut Rng, x: &Hypergraph) -> Hypergraph {
    let picked: Vec<Hypergraph> = x.components().into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    sum(&picked)
}

/// A block of a lattice: `base` and optionally `base ⊞ toggled`.
#[derive(Debug, Clone)]
pub struct Block {
    pub base: Hypergraph,
    pub toggled: Option<EdgeSet>,
}

impl Block {
    pub fn versions(&self) -> Vec<Hypergraph> {
        let mut out = vec![self.base.clone()];
        if let Some(h) = &self.toggled {
            out.push(self.base.edge_symdiff(h).unwrap());
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Lattice {
    pub blocks: Vec<Block>,
    pub family: Family,
}

/// Every direct sum choosing at most one version of each block.
pub fn lattice_members(blocks: &[Block]) -> Vec<Hypergraph> {
    let mut acc = vec![Hypergraph::null()];
    for b in blocks {
        let mut next = acc.clone();
        for v in b.versions() {
            next.extend(acc.iter().map(|x| sum([x, &v])));
        }
        acc = next;
    }
    acc
}

pub fn lattice(blocks: Vec<Block>, policy: LoopPolicy, extras: impl IntoIterator<Item = Label>) -> Lattice {
    let family = Family::new(lattice_members(&blocks), policy, extras).unwrap();
    Lattice { blocks, family }
}

/// `k` blocks of up to `max_v` vertices named `b{i}v{j}`; a block gets a
/// toggle edge set (labels `b{i}h{j}`) with probability `toggle_p`.
pub fn random_blocks(rng: &mut Rng, k: usize, max_v: usize, toggle_p: f64, policy: LoopPolicy) -> Vec<Block> {
    (0..k)
        .map(|i| {
            let lo = policy.min_edge_size();
            let nv = rng.gen_range(1..=max_v.max(1));
            let vs = labels(&format!("b{i}v"), nv);
            let base = connected(rng, &vs, 1, policy, &format!("b{i}e"));
            let toggled = (nv >= lo && rng.gen_bool(toggle_p)).then(|| {
                let n = rng.gen_range(1..=2);
                EdgeSet::new(edges_on(rng, &vs, n, policy, &format!("b{i}h"))).unwrap()
            });
            Block { base, toggled }
        })
        .collect()
}

/// A summand on fresh vertices `w{tag}v{j}`.
pub fn summand(rng: &mut Rng, tag: usize, max_v: usize, policy: LoopPolicy) -> Hypergraph {
    let nv = rng.gen_range(1..=max_v.max(1));
    let vs = labels(&format!("w{tag}v"), nv);
    if rng.gen_bool(0.5) {
        connected(rng, &vs, 1, policy, &format!("w{tag}e"))
    } else {
        let ne = rng.gen_range(0..=2);
        Hypergraph::new(vs.clone(), edges_on(rng, &vs, ne, policy, &format!("w{tag}e"))).unwrap()
    }
}

/// A random partition of `universe` into at most `blocks` nontrivial blocks.
pub fn partition(rng: &mut Rng, universe: &BTreeSet<Label>, merges: usize) -> VertexPartition {
    let vs: Vec<Label> = universe.iter().cloned().collect();
    let mut blocks: Vec<Vec<Label>> = Vec::new();
    for _ in 0..merges {
        if vs.len() < 2 {
            break;
        }
        let n = rng.gen_range(2..=vs.len().min(3));
        blocks.push(vs.choose_multiple(rng, n).cloned().collect());
    }
    // Merge overlapping blocks so the result is a partition.
    let mut merged: Vec<BTreeSet<Label>> = Vec::new();
    for b in blocks {
        let mut cur: BTreeSet<Label> = b.into_iter().collect();
        merged.retain(|m| {
            if m.is_disjoint(&cur) {
                true
            } else {
                cur.extend(m.iter().cloned());
                false
            }
        });
        merged.push(cur);
    }
    VertexPartition::new(vs, merged).unwrap()
}

/// A partition whose nontrivial blocks each stay inside one of `groups`.
pub fn partition_within(rng: &mut Rng, universe: &BTreeSet<Label>, groups: &[BTreeSet<Label>], merges: usize) -> VertexPartition {
    let mut blocks: Vec<BTreeSet<Label>> = Vec::new();
    for g in groups {
        let p = partition(rng, g, merges);
        blocks.extend(p.blocks().iter().filter(|b| b.len() > 1).cloned());
    }
    VertexPartition::new(universe.iter().cloned(), blocks).unwrap()
}

/// Up to `max_c` connected components of one to three vertices each, on
/// vertices `{prefix}{i}v{j}`.
pub fn multi(rng: &mut Rng, prefix: &str, max_c: usize, policy: LoopPolicy) -> Hypergraph {
    let k = rng.gen_range(0..=max_c);
    let parts: Vec<Hypergraph> = (0..k)
        .map(|i| {
            let nv = rng.gen_range(1..=3);
            let vs = labels(&format!("{prefix}{i}v"), nv);
            connected(rng, &vs, 1, policy, &format!("{prefix}{i}e"))
        })
        .collect();
    sum(&parts)
}

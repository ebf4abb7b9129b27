//! Equivalence relations on vertex sets, stored as partitions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::hypergraph::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("block vertex {0} is not in the universe")]
    OutsideUniverse(Label),
    #[error("vertex {0} appears in more than one block")]
    Overlap(Label),
}

/// A partition of a finite vertex universe. Lookup is total on the universe;
/// universe vertices not named by any block form singleton blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    universe: BTreeSet<Label>,
    blocks: BTreeSet<BTreeSet<Label>>,
    lookup: BTreeMap<Label, Label>,
}

/// The class label of a block: its sorted members joined by `|`, in brackets.
pub fn class_label(block: &BTreeSet<Label>) -> Label {
    let parts: Vec<&str> = block.iter().map(Label::as_str).collect();
    Label::new(format!("[{}]", parts.join("|"))).expect("class labels are well formed")
}

impl VertexPartition {
    /// # Errors
    /// [`PartitionError`] when a block leaves the universe or blocks overlap.
    pub fn new<B, I>(universe: impl IntoIterator<Item = Label>, blocks: B) -> Result<Self, PartitionError>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = Label>,
    {
        let universe: BTreeSet<Label> = universe.into_iter().collect();
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        for block in blocks {
            let block: BTreeSet<Label> = block.into_iter().collect();
            if block.is_empty() {
                continue;
            }
            for v in &block {
                if !universe.contains(v) {
                    return Err(PartitionError::OutsideUniverse(v.clone()));
                }
                if !seen.insert(v.clone()) {
                    return Err(PartitionError::Overlap(v.clone()));
                }
            }
            out.insert(block);
        }
        for v in universe.difference(&seen) {
            out.insert(BTreeSet::from([v.clone()]));
        }
        let mut lookup = BTreeMap::new();
        for block in &out {
            let label = class_label(block);
            for v in block {
                lookup.insert(v.clone(), label.clone());
            }
        }
        Ok(Self { universe, blocks: out, lookup })
    }

    /// The identity relation on `universe`.
    pub fn identity(universe: impl IntoIterator<Item = Label>) -> Self {
        Self::new(universe, Vec::<Vec<Label>>::new()).expect("no blocks to clash")
    }

    pub fn universe(&self) -> &BTreeSet<Label> {
        &self.universe
    }

    pub fn blocks(&self) -> &BTreeSet<BTreeSet<Label>> {
        &self.blocks
    }

    /// The class label [v], if v is in the universe.
    pub fn class_of(&self, v: &Label) -> Option<&Label> {
        self.lookup.get(v)
    }

    /// The block containing v.
    pub fn block_of(&self, v: &Label) -> Option<&BTreeSet<Label>> {
        self.blocks.iter().find(|b| b.contains(v))
    }

    pub fn same_class(&self, u: &Label, v: &Label) -> bool {
        matches!((self.class_of(u), self.class_of(v)), (Some(a), Some(b)) if a == b)
    }

    /// The relation restricted to `vertices ∩ universe`.
    pub fn restrict(&self, vertices: &BTreeSet<Label>) -> VertexPartition {
        let universe: BTreeSet<Label> = self.universe.intersection(vertices).cloned().collect();
        let blocks: Vec<BTreeSet<Label>> = self
            .blocks
            .iter()
            .map(|b| b.intersection(&universe).cloned().collect())
            .collect();
        VertexPartition::new(universe, blocks).expect("restriction of a partition")
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

impl fmt::Debug for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.blocks.iter()).finish()
    }
}

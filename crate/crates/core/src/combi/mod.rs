//! Matchings, set partitions and permutations on a boxed ground set.
//!
//! Elements are 0-based internally (`0..n`); the textual forms produced by
//! [`SetPartition`]'s `Display` and accepted by [`SetPartition::parse`] are
//! 1-based, as in the usual notation `1 4/2 3 7/5 8/6`.

mod enumerate;
pub mod star;
mod stats;
mod weights;

use std::fmt;

use crate::error::{Error, Result};

pub use enumerate::{
    count, enumerate, for_each_matching, for_each_partition, for_each_permutation,
    set_partitions, EnumerationCaps,
};
pub use stats::{partition_stats, permutation_crossings, permutation_stats, statistics, StatRecord};
pub use weights::{
    family_rule, stat_distribution, weighted_sum, BoxFactor, BoxStat, Stat, StatDistribution,
    WeightRule,
};

/// What a box is allowed to do under the inhomogeneous filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxRole {
    /// No block, arc or permutation step stays inside the box.
    Deranged,
    /// Unrestricted box (the `S_0` of generalized moments). For partitions
    /// its elements may be singletons but still may not share a block.
    Free,
    /// Elements not chosen for the permutation are sent injectively into
    /// `[N]`; see [`star`].
    InjectionTarget(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxedGroundSet {
    sizes: Vec<usize>,
    roles: Vec<BoxRole>,
    owner: Vec<usize>,
    starts: Vec<usize>,
}

impl BoxedGroundSet {
    /// All boxes deranged.
    pub fn new(sizes: &[usize]) -> Self {
        Self::with_roles(sizes, &vec![BoxRole::Deranged; sizes.len()])
            .expect("lengths agree")
    }

    pub fn with_roles(sizes: &[usize], roles: &[BoxRole]) -> Result<Self> {
        if sizes.len() != roles.len() {
            return Err(Error::InvalidIndex(format!(
                "{} box sizes but {} roles",
                sizes.len(),
                roles.len()
            )));
        }
        let mut owner = Vec::with_capacity(sizes.iter().sum());
        let mut starts = Vec::with_capacity(sizes.len());
        for (b, &s) in sizes.iter().enumerate() {
            starts.push(owner.len());
            owner.extend(std::iter::repeat(b).take(s));
        }
        Ok(BoxedGroundSet {
            sizes: sizes.to_vec(),
            roles: roles.to_vec(),
            owner,
            starts,
        })
    }

    pub fn total(&self) -> usize {
        self.owner.len()
    }

    pub fn num_boxes(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn roles(&self) -> &[BoxRole] {
        &self.roles
    }

    /// Index of the box containing element `e`.
    pub fn box_of(&self, e: usize) -> usize {
        self.owner[e]
    }

    pub fn role_of(&self, e: usize) -> BoxRole {
        self.roles[self.owner[e]]
    }

    /// Elements of box `b`.
    pub fn box_range(&self, b: usize) -> std::ops::Range<usize> {
        self.starts[b]..self.starts[b] + self.sizes[b]
    }
}

/// A set partition of `0..n`, blocks sorted internally and ordered by their
/// minima. Perfect matchings are partitions whose blocks all have size two.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { blocks }
    }

    /// Rebuilds the partition of `0..n` whose successive-element arcs are
    /// `arcs`.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut next = vec![None; n];
        let mut has_prev = vec![false; n];
        for &(a, b) in arcs {
            if a >= b || b >= n || next[a].is_some() || has_prev[b] {
                return Err(Error::Domain(format!("({a},{b}) is not a valid arc")));
            }
            next[a] = Some(b);
            has_prev[b] = true;
        }
        let mut blocks = Vec::new();
        for start in (0..n).filter(|&i| !has_prev[i]) {
            let mut block = vec![start];
            let mut cur = start;
            while let Some(nx) = next[cur] {
                block.push(nx);
                cur = nx;
            }
            blocks.push(block);
        }
        Ok(SetPartition::from_blocks(blocks))
    }

    /// Parses the 1-based slash notation, e.g. `"1 4/2 3 7/5 8/6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut seen = Vec::new();
        for part in s.split('/') {
            let mut block = Vec::new();
            for tok in part.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad element `{tok}`")))?;
                if v == 0 {
                    return Err(Error::Domain("elements are 1-based".into()));
                }
                block.push(v - 1);
                seen.push(v - 1);
            }
            blocks.push(block);
        }
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Domain(format!("`{s}` does not partition [1..n]")));
        }
        Ok(SetPartition::from_blocks(blocks))
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Arcs joining consecutive elements of each block, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    /// Minima of the blocks (openers and singletons).
    pub fn minima(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.blocks.iter().map(|b| *b.last().unwrap()).collect();
        m.sort_unstable();
        m
    }

    pub fn singletons(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|b| b.len() == 1)
            .map(|b| b[0])
            .collect()
    }

    /// Block index of each element.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.size()];
        for (k, b) in self.blocks.iter().enumerate() {
            for &e in b {
                idx[e] = k;
            }
        }
        idx
    }

    pub fn is_matching(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|e| (e + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&parts.join("/"))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Matching,
    Partition,
    Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    Inhomogeneous,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramObject {
    Matching(SetPartition),
    Partition(SetPartition),
    /// Function table, `sigma[i]` is the image of `i`.
    Permutation(Vec<usize>),
}

impl DiagramObject {
    pub fn kind(&self) -> ObjectKind {
        match self {
            DiagramObject::Matching(_) => ObjectKind::Matching,
            DiagramObject::Partition(_) => ObjectKind::Partition,
            DiagramObject::Permutation(_) => ObjectKind::Permutation,
        }
    }

    /// Arcs in the 1-based convention for matchings and partitions, or the
    /// pairs `(i, σ(i))` for permutations.
    pub fn arcs_one_based(&self) -> Vec<(usize, usize)> {
        match self {
            DiagramObject::Matching(p) | DiagramObject::Partition(p) => {
                p.arcs().into_iter().map(|(a, b)| (a + 1, b + 1)).collect()
            }
            DiagramObject::Permutation(s) => {
                s.iter().enumerate().map(|(i, &v)| (i + 1, v + 1)).collect()
            }
        }
    }
}

impl fmt::Display for DiagramObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramObject::Matching(p) | DiagramObject::Partition(p) => write!(f, "{p}"),
            DiagramObject::Permutation(s) => {
                let w: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
                f.write_str(&w.join(" "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcs_round_trip() {
        let p = SetPartition::parse("1 4/2 3 7/5 8/6").unwrap();
        assert_eq!(p.arcs(), vec![(0, 3), (1, 2), (2, 6), (4, 7)]);
        assert_eq!(SetPartition::from_arcs(8, &p.arcs()).unwrap(), p);
        assert_eq!(p.to_string(), "1 4/2 3 7/5 8/6");
    }

    #[test]
    fn parse_rejects_gaps() {
        assert!(SetPartition::parse("1 3").is_err());
        assert!(SetPartition::parse("0 1").is_err());
    }

    #[test]
    fn ground_set_layout() {
        let g = BoxedGroundSet::new(&[2, 0, 3]);
        assert_eq!(g.total(), 5);
        assert_eq!(g.box_of(1), 0);
        assert_eq!(g.box_of(2), 2);
        assert_eq!(g.box_range(2), 2..5);
        assert!(g.box_range(1).is_empty());
    }
}

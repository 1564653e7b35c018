//! Partitions of a finite set as unital commutative subalgebras.
//!
//! The functions constant on the blocks of a partition `P` of a finite set `X`
//! form a unital *-subalgebra `S_P` of `C(X)`, and every unital subalgebra of
//! `C(X)` arises this way. Coarser partitions give smaller algebras, the join
//! of two subalgebras is the common refinement and their intersection merges
//! overlapping blocks.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ordered, labelled points of a finite spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientSet {
    points: Vec<String>,
    index: HashMap<String, usize>,
}

impl AmbientSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate ambient label {p:?}")));
            }
        }
        Ok(AmbientSet { points, index })
    }

    /// Points labelled `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> Self {
        AmbientSet::new((0..n).map(|i| i.to_string())).expect("numbered labels are unique")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Parses a partition given as lists of point labels.
    pub fn partition<B, S>(&self, blocks: B) -> Result<Partition>
    where
        B: IntoIterator,
        B::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut idx_blocks = Vec::new();
        for block in blocks {
            let mut b = Vec::new();
            for label in block {
                let label = label.as_ref();
                let i = self
                    .position(label)
                    .ok_or_else(|| Error::input(format!("unknown point label {label:?}")))?;
                b.push(i);
            }
            idx_blocks.push(b);
        }
        Partition::from_blocks(self.len(), idx_blocks)
    }

    /// `{a,b}`: the canonical string for a block.
    pub fn block_label(&self, block: &[usize]) -> String {
        let inner: Vec<&str> = block.iter().map(|&i| self.label(i)).collect();
        format!("{{{}}}", inner.join(","))
    }

    pub fn blocks_as_labels(&self, p: &Partition) -> Vec<Vec<String>> {
        p.blocks()
            .iter()
            .map(|b| b.iter().map(|&i| self.points[i].clone()).collect())
            .collect()
    }

    /// `{{a,b},{c,d}}`.
    pub fn format(&self, p: &Partition) -> String {
        let inner: Vec<String> = p.blocks().iter().map(|b| self.block_label(b)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// A set partition of `{0, ..., n-1}` in canonical form.
///
/// Stored as a restricted growth string: `code[i]` is the index of the block
/// containing point `i`, and blocks are numbered in order of their least
/// element. Two partitions are equal iff their codes are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    code: Vec<u32>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalises an arbitrary block assignment `labels[i]`.
    pub fn from_assignment<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut seen: HashMap<T, u32> = HashMap::new();
        let mut code = Vec::with_capacity(labels.len());
        for l in labels {
            let next = seen.len() as u32;
            code.push(*seen.entry(*l).or_insert(next));
        }
        Partition::from_code_unchecked(code)
    }

    fn from_code_unchecked(code: Vec<u32>) -> Self {
        let k = code.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); k];
        for (i, &c) in code.iter().enumerate() {
            blocks[c as usize].push(i);
        }
        Partition { code, blocks }
    }

    /// Validates disjointness, coverage and non-emptiness.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::input("partition has an empty block"));
            }
            for &p in block {
                if p >= n {
                    return Err(Error::input(format!("point {p} outside ambient of size {n}")));
                }
                if owner[p] != usize::MAX {
                    return Err(Error::input(format!("point {p} appears in two blocks")));
                }
                owner[p] = bi;
            }
        }
        if let Some(p) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::input(format!("point {p} is not covered by any block")));
        }
        Ok(Partition::from_assignment(&owner))
    }

    /// The one-block partition, i.e. the scalars `C·1`.
    pub fn trivial(n: usize) -> Self {
        Partition::from_code_unchecked(vec![0; n])
    }

    /// All singletons, i.e. the full algebra `C(X)`.
    pub fn discrete(n: usize) -> Self {
        Partition::from_code_unchecked((0..n as u32).collect())
    }

    pub fn ambient_len(&self) -> usize {
        self.code.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Dimension of `S_P`.
    pub fn dim(&self) -> usize {
        self.block_count()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.code[point] as usize
    }

    pub fn code(&self) -> &[u32] {
        &self.code
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.code.len()
    }

    fn check_same_ambient(&self, other: &Partition) -> Result<()> {
        if self.ambient_len() != other.ambient_len() {
            return Err(Error::AmbientMismatch {
                left: self.ambient_len(),
                right: other.ambient_len(),
            });
        }
        Ok(())
    }

    /// Blocks are the nonempty intersections `p ∩ q`; this is `S_P ∨ S_Q`.
    pub fn common_refinement(&self, other: &Partition) -> Result<Partition> {
        self.check_same_ambient(other)?;
        let pairs: Vec<(u32, u32)> = self.code.iter().copied().zip(other.code.iter().copied()).collect();
        Ok(Partition::from_assignment(&pairs))
    }

    /// Connected components of the block overlap graph; this is `S_P ∩ S_Q`.
    pub fn overlap_join(&self, other: &Partition) -> Result<Partition> {
        self.check_same_ambient(other)?;
        let n = self.ambient_len();
        let mut uf = UnionFind::new(n);
        for block in self.blocks.iter().chain(other.blocks.iter()) {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
        Ok(Partition::from_assignment(&roots))
    }

    /// True iff every block of `finer` lies inside a block of `self`,
    /// i.e. `S_self ⊆ S_finer`.
    pub fn is_coarser(&self, finer: &Partition) -> Result<bool> {
        self.check_same_ambient(finer)?;
        Ok(self.is_coarser_unchecked(finer))
    }

    pub(crate) fn is_coarser_unchecked(&self, finer: &Partition) -> bool {
        finer
            .blocks
            .iter()
            .all(|b| b.iter().all(|&p| self.code[p] == self.code[b[0]]))
    }

    /// Relabels points: point `i` of the result is point `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Partition {
        let labels: Vec<u32> = perm.iter().map(|&p| self.code[p]).collect();
        Partition::from_assignment(&labels)
    }

    /// Pushes a partition of this partition's *blocks* down to the points.
    pub(crate) fn coarsen_by(&self, block_code: &[u32]) -> Partition {
        let labels: Vec<u32> = self.code.iter().map(|&c| block_code[c as usize]).collect();
        Partition::from_assignment(&labels)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order used for every report: fewer blocks first, then by code.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.code.len(), self.blocks.len(), &self.code).cmp(&(
            other.code.len(),
            other.blocks.len(),
            &other.code,
        ))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let inner: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        f.write_str("}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let blocks: Vec<Vec<usize>> = Vec::deserialize(d)?;
        let n = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, blocks).map_err(serde::de::Error::custom)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Restricted growth strings of length `n` in lexicographic order.
pub(crate) fn restricted_growth_strings(n: usize) -> impl Iterator<Item = Vec<u32>> {
    let mut current: Option<Vec<u32>> = Some(vec![0; n]);
    std::iter::from_fn(move || {
        let out = current.take()?;
        // Next string: bump the rightmost position that may still grow.
        let mut next = out.clone();
        let mut prefix_max = vec![0u32; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        let mut i = n;
        while i > 1 {
            i -= 1;
            if next[i] <= prefix_max[i] {
                next[i] += 1;
                for v in next.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Every partition of an `n`-point set, in restricted-growth order.
pub fn all_partitions(n: usize) -> impl Iterator<Item = Partition> {
    restricted_growth_strings(n).map(Partition::from_code_unchecked)
}

/// Bell numbers via the Bell triangle; `None` on overflow.
pub fn bell_number(n: usize) -> Option<u128> {
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last()?);
        for v in &row {
            let x = next.last()?.checked_add(*v)?;
            next.push(x);
        }
        row = next;
    }
    row.first().copied()
}

//! Integer partitions, Young diagram nodes and p-residues.
//!
//! Rows and columns are 1-based. Residues are the canonical
//! representatives `0..p`. The modulus is never stored on a partition:
//! every p-dependent routine takes it as an argument.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduces `v` to its representative in `0..p`.
pub fn residue(v: i64, p: u32) -> u32 {
    v.rem_euclid(i64::from(p)) as u32
}

pub(crate) fn check_modulus(p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidModulus(p));
    }
    Ok(())
}

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

/// One block `l^a` of the exponential form: `a` rows of length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub len: u32,
    pub mult: u32,
}

/// A cell `(row, col)` of the Young diagram, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: u32,
    pub col: u32,
}

impl Node {
    pub fn new(row: u32, col: u32) -> Self {
        Node { row, col }
    }

    /// `(col - row) mod p`.
    pub fn residue(&self, p: u32) -> u32 {
        residue(i64::from(self.col) - i64::from(self.row), p)
    }
}

/// Number of nodes of each residue, indexed by residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentVector(pub Vec<u64>);

impl ContentVector {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing steps.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParts(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds `(l_1^{a_1}, ..., l_t^{a_t})`; blocks must have strictly
    /// decreasing lengths and positive multiplicities.
    pub fn from_blocks(blocks: &[Block]) -> Result<Self> {
        let ok = blocks.iter().all(|b| b.len > 0 && b.mult > 0)
            && blocks.windows(2).all(|w| w[0].len > w[1].len);
        let parts: Vec<u32> = blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.len, b.mult as usize))
            .collect();
        if !ok {
            return Err(Error::InvalidParts(parts));
        }
        Partition::new(parts)
    }

    /// The rectangle `(l^a)`.
    pub fn rectangle(l: u32, a: u32) -> Self {
        if l == 0 || a == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![l; a as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts (rows).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The size `n`, the sum of the parts.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Row length, 0 beyond the last row. `row` is 1-based.
    pub fn part(&self, row: usize) -> u32 {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    pub fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<Block> = Vec::new();
        for &x in &self.parts {
            match out.last_mut() {
                Some(b) if b.len == x => b.mult += 1,
                _ => out.push(Block { len: x, mult: 1 }),
            }
        }
        out
    }

    /// True iff no part is repeated `p` or more times.
    pub fn is_p_regular(&self, p: u32) -> bool {
        self.blocks().iter().all(|b| b.mult < p)
    }

    pub fn contains(&self, node: Node) -> bool {
        node.row >= 1 && node.col >= 1 && node.col <= self.part(node.row as usize)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l).map(move |j| Node::new(i as u32 + 1, j)))
    }

    /// The removable node of each block, top to bottom.
    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut row = 0;
        self.blocks()
            .iter()
            .map(|b| {
                row += b.mult;
                Node::new(row, b.len)
            })
            .collect()
    }

    /// The indent node at the outer corner of each block, followed by the
    /// indent node below the last row.
    pub fn indent_nodes(&self) -> Vec<Node> {
        let mut row = 0;
        let mut out: Vec<Node> = self
            .blocks()
            .iter()
            .map(|b| {
                let node = Node::new(row + 1, b.len + 1);
                row += b.mult;
                node
            })
            .collect();
        out.push(Node::new(row + 1, 1));
        out
    }

    pub fn content(&self, p: u32) -> ContentVector {
        let mut counts = vec![0u64; p as usize];
        for node in self.nodes() {
            counts[node.residue(p) as usize] += 1;
        }
        ContentVector(counts)
    }

    /// Rows of residues, as in a printed residue diagram.
    pub fn residue_diagram(&self, p: u32) -> Vec<Vec<u32>> {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                (1..=l)
                    .map(|j| Node::new(i as u32 + 1, j).residue(p))
                    .collect()
            })
            .collect()
    }

    fn block_pair(&self, i: usize, j: usize) -> Result<Vec<Block>> {
        let blocks = self.blocks();
        if i == 0 || i > j || j > blocks.len() {
            return Err(Error::BlockIndex {
                i,
                j,
                t: blocks.len(),
            });
        }
        Ok(blocks)
    }

    /// `l_i - l_j + (a_i + ... + a_j) mod p` for blocks `1 <= i <= j <= t`.
    pub fn beta(&self, i: usize, j: usize, p: u32) -> Result<u32> {
        let b = self.block_pair(i, j)?;
        let span: i64 = b[i - 1..j].iter().map(|x| i64::from(x.mult)).sum();
        Ok(residue(
            i64::from(b[i - 1].len) - i64::from(b[j - 1].len) + span,
            p,
        ))
    }

    /// `l_i - l_j + (a_{i+1} + ... + a_j) mod p` for blocks `1 <= i <= j <= t`.
    pub fn gamma(&self, i: usize, j: usize, p: u32) -> Result<u32> {
        let b = self.block_pair(i, j)?;
        let span: i64 = b[i..j].iter().map(|x| i64::from(x.mult)).sum();
        Ok(residue(
            i64::from(b[i - 1].len) - i64::from(b[j - 1].len) + span,
            p,
        ))
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&l| l >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook length of a node of the diagram.
    pub fn hook_length(&self, node: Node) -> u32 {
        let arm = self.part(node.row as usize) - node.col;
        let leg = self.conjugate().part(node.col as usize) - node.row;
        arm + leg + 1
    }
}

impl fmt::Display for Partition {
    /// Exponential form, e.g. `(5^2,4,1^3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                if b.mult == 1 {
                    b.len.to_string()
                } else {
                    format!("{}^{}", b.len, b.mult)
                }
            })
            .collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `6,6,5,4`, `5^2,4,1^3`, optionally wrapped in brackets.
    /// `()`, `[]` and the empty string denote the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if trimmed.is_empty() || trimmed == "∅" {
            return Ok(Partition::empty());
        }
        let bad = || Error::Parse(s.to_string());
        let mut parts = Vec::new();
        for item in trimmed.split(',') {
            let item = item.trim();
            let (len, mult) = match item.split_once('^') {
                Some((l, a)) => (l.trim(), a.trim()),
                None => (item, "1"),
            };
            let len: u32 = len.parse().map_err(|_| bad())?;
            let mult: usize = mult.parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(len, mult));
        }
        Partition::new(parts)
    }
}

/// All partitions of `n` in lexicographically decreasing order.
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Partitions {
    pub fn new(n: u32) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions { next: Some(first) }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Rightmost part larger than 1; everything after it is 1s.
        if let Some(i) = current.iter().rposition(|&x| x > 1) {
            let mut succ = current[..i].to_vec();
            let v = current[i] - 1;
            // The decremented unit plus the trailing 1s.
            let mut rem = (current.len() - i) as u32;
            succ.push(v);
            while rem > 0 {
                let take = rem.min(v);
                succ.push(take);
                rem -= take;
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}

/// Every p-regular partition of `n`, in lexicographically decreasing order.
pub fn enumerate_p_regular(n: u32, p: u32) -> impl Iterator<Item = Partition> {
    Partitions::new(n).filter(move |lam| lam.is_p_regular(p))
}

/// Every p-regular partition of size at most `nmax`, by increasing size.
pub fn enumerate_p_regular_up_to(nmax: u32, p: u32) -> impl Iterator<Item = Partition> {
    (0..=nmax).flat_map(move |n| enumerate_p_regular(n, p))
}

//! Signature sequences and normal/good nodes.
//!
//! A signature sequence is a word of signed residues. For a residue `α`,
//! `σ_α(i)` is the signed count of `α` entries up to index `i` and `π_α` is its
//! maximum over `0..=s`. An entry is normal when its prefix value is positive
//! and strictly above every earlier prefix value; the good entry of `α` is the
//! first one reaching `π_α`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{check_modulus, Node, Partition};
use crate::symbols::{residue_symbol_of, ResidueSymbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "−", alias = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "−",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entry {
    pub res: u32,
    pub sign: Sign,
}

impl Entry {
    pub fn plus(res: u32) -> Self {
        Entry {
            res,
            sign: Sign::Plus,
        }
    }

    pub fn minus(res: u32) -> Self {
        Entry {
            res,
            sign: Sign::Minus,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.res, self.sign)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignatureSequence {
    pub entries: Vec<Entry>,
}

impl SignatureSequence {
    pub fn new(entries: Vec<Entry>) -> Self {
        SignatureSequence { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `σ_α(i)`.
    pub fn sigma(&self, alpha: u32, i: usize) -> Result<i64> {
        if i >= self.entries.len() {
            return Err(Error::SequenceIndex {
                index: i,
                len: self.entries.len(),
            });
        }
        Ok(self.entries[..=i]
            .iter()
            .filter(|e| e.res == alpha)
            .map(|e| e.sign.value())
            .sum())
    }

    /// The end value `σ_α(s)`; 0 for the empty sequence.
    pub fn end_value(&self, alpha: u32) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.res == alpha)
            .map(|e| e.sign.value())
            .sum()
    }

    /// `π_α`, the maximum of `σ_α(i)` over all indices; 0 for the empty sequence.
    pub fn peak(&self, alpha: u32) -> i64 {
        let mut acc = 0;
        let mut best = None;
        for e in &self.entries {
            if e.res == alpha {
                acc += e.sign.value();
            }
            best = Some(best.map_or(acc, |b: i64| b.max(acc)));
        }
        best.unwrap_or(0)
    }

    pub fn check_residues(&self, p: u32) -> Result<()> {
        match self.entries.iter().find(|e| e.res >= p) {
            Some(e) => Err(Error::Parse(format!("residue {} not below p = {p}", e.res))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for SignatureSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for SignatureSequence {
    type Err = Error;

    /// Accepts `"1+ 2− 0-"`: whitespace-separated residues with a `+`, `-` or
    /// `−` suffix.
    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in s.split_whitespace() {
            let (num, sign) = if let Some(n) = tok.strip_suffix('+') {
                (n, Sign::Plus)
            } else if let Some(n) = tok.strip_suffix('-').or_else(|| tok.strip_suffix('−')) {
                (n, Sign::Minus)
            } else {
                return Err(Error::Parse(tok.to_string()));
            };
            let res = num.parse().map_err(|_| Error::Parse(tok.to_string()))?;
            entries.push(Entry { res, sign });
        }
        Ok(SignatureSequence { entries })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub normal: Vec<bool>,
    pub good: Vec<bool>,
    /// `σ_α(i)` at each normal entry.
    pub height: Vec<Option<i64>>,
    /// `π_α` for each residue.
    pub peaks: Vec<i64>,
    /// `σ_α(s)` for each residue.
    pub end_values: Vec<i64>,
}

impl NormalityReport {
    pub fn normal_indices(&self) -> Vec<usize> {
        indices(&self.normal)
    }

    pub fn good_indices(&self) -> Vec<usize> {
        indices(&self.good)
    }
}

fn indices(flags: &[bool]) -> Vec<usize> {
    flags
        .iter()
        .enumerate()
        .filter_map(|(i, &f)| f.then_some(i))
        .collect()
}

pub fn analyze(x: &SignatureSequence, p: u32) -> NormalityReport {
    let p = p.max(1) as usize;
    let len = x.len();
    let mut sigma = vec![0i64; p];
    let mut record: Vec<Option<i64>> = vec![None; p];
    let mut normal = vec![false; len];
    let mut height = vec![None; len];
    let mut first_at = vec![None::<(usize, i64)>; p];

    for (i, e) in x.entries.iter().enumerate() {
        let a = e.res as usize % p;
        sigma[a] += e.sign.value();
        let v = sigma[a];
        if v > 0 && record[a].is_none_or(|r| v > r) {
            normal[i] = true;
            height[i] = Some(v);
        }
        record[a] = Some(record[a].map_or(v.max(0), |r| r.max(v)));
        if first_at[a].is_none_or(|(_, best)| v > best) {
            first_at[a] = Some((i, v));
        }
    }

    let peaks: Vec<i64> = (0..p).map(|a| x.peak(a as u32)).collect();
    let mut good = vec![false; len];
    for a in 0..p {
        if let Some((i, v)) = first_at[a] {
            if v == peaks[a] && normal[i] {
                good[i] = true;
            }
        }
    }
    NormalityReport {
        normal,
        good,
        height,
        peaks,
        end_values: sigma,
    }
}

/// Normal entries by cancelling `α− … α+` pairs: scanning left to right, a
/// `+` cancels against the nearest uncancelled earlier `−` of its residue.
/// Returns the uncancelled `+` indices; the last of each residue is good.
pub fn cancellation_normal(x: &SignatureSequence, p: u32) -> (Vec<usize>, Vec<usize>) {
    let p = p.max(1) as usize;
    let mut open = vec![0usize; p];
    let mut normal = Vec::new();
    let mut last = vec![None; p];
    for (i, e) in x.entries.iter().enumerate() {
        let a = e.res as usize % p;
        match e.sign {
            Sign::Minus => open[a] += 1,
            Sign::Plus if open[a] > 0 => open[a] -= 1,
            Sign::Plus => {
                normal.push(i);
                last[a] = Some(i);
            }
        }
    }
    let mut good: Vec<usize> = last.into_iter().flatten().collect();
    good.sort_unstable();
    (normal, good)
}

/// The corner nodes of `lam` in reading order (top to bottom, left to right
/// within a row), removable nodes signed `+` and indent nodes `−`.
pub fn node_sequence_nodes(lam: &Partition, p: u32) -> Vec<(Node, Entry)> {
    let mut nodes: Vec<(Node, Sign)> = lam
        .removable_nodes()
        .into_iter()
        .map(|n| (n, Sign::Plus))
        .chain(lam.indent_nodes().into_iter().map(|n| (n, Sign::Minus)))
        .collect();
    nodes.sort_by_key(|(n, _)| (n.row, n.col));
    nodes
        .into_iter()
        .map(|(n, sign)| {
            (
                n,
                Entry {
                    res: n.residue(p),
                    sign,
                },
            )
        })
        .collect()
}

/// `N(λ)`.
pub fn node_sequence(lam: &Partition, p: u32) -> SignatureSequence {
    SignatureSequence::new(
        node_sequence_nodes(lam, p)
            .into_iter()
            .map(|(_, e)| e)
            .collect(),
    )
}

/// `0−` followed by `x+ (x+1)− y+ (y−1)−` for each residue column.
pub fn mullineux_sequence_of_symbol(rs: &ResidueSymbol, p: u32) -> SignatureSequence {
    let mut entries = vec![Entry::minus(0)];
    for c in &rs.columns {
        entries.push(Entry::plus(c.x));
        entries.push(Entry::minus((c.x + 1) % p));
        entries.push(Entry::plus(c.y));
        entries.push(Entry::minus((c.y + p - 1) % p));
    }
    SignatureSequence::new(entries)
}

/// `M(λ)`.
pub fn mullineux_sequence(lam: &Partition, p: u32) -> Result<SignatureSequence> {
    Ok(mullineux_sequence_of_symbol(&residue_symbol_of(lam, p)?, p))
}

/// Normal and good blocks of a p-regular partition, found with the
/// distinct-representatives condition on the blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockNormality {
    /// 1-based indices of normal blocks.
    pub normal: Vec<usize>,
    /// 1-based indices of good blocks, one per residue that has a normal block.
    pub good: Vec<usize>,
    /// Height of each normal block: its rank, from the top, among normal
    /// blocks whose removable nodes share its residue.
    pub heights: Vec<u32>,
    /// Residue of each normal block's removable node.
    pub residues: Vec<u32>,
}

/// Kuhn's augmenting-path matching. `adj[j]` lists the right vertices
/// allowed for left vertex `j`; returns the matching size.
fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    fn augment(
        j: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &d in &adj[j] {
            if seen[d] {
                continue;
            }
            seen[d] = true;
            if owner[d].is_none_or(|o| augment(o, adj, seen, owner)) {
                owner[d] = Some(j);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    let mut size = 0;
    for j in 0..adj.len() {
        let mut seen = vec![false; right];
        if augment(j, adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

pub fn normal_nodes_block(lam: &Partition, p: u32) -> Result<BlockNormality> {
    check_modulus(p)?;
    if !lam.is_p_regular(p) {
        return Err(Error::NotRegular {
            partition: lam.to_string(),
            p,
        });
    }
    let t = lam.blocks().len();
    let beta0 = |j: usize, i: usize| lam.beta(j, i, p).map(|b| b == 0);
    let mut normal = Vec::new();
    for i in 1..=t {
        let mut m_i = Vec::new();
        for j in 1..i {
            if beta0(j, i)? {
                m_i.push(j);
            }
        }
        let mut adj = Vec::with_capacity(m_i.len());
        for &j in &m_i {
            let mut opts = Vec::new();
            for d in j + 1..i {
                if beta0(j, d)? {
                    opts.push(d);
                }
            }
            adj.push(opts);
        }
        if max_matching(&adj, t + 1) == m_i.len() {
            normal.push(i);
        }
    }

    let removable = lam.removable_nodes();
    let residues: Vec<u32> = normal
        .iter()
        .map(|&i| removable[i - 1].residue(p))
        .collect();
    let mut heights = Vec::with_capacity(normal.len());
    for (k, &r) in residues.iter().enumerate() {
        heights.push(residues[..=k].iter().filter(|&&s| s == r).count() as u32);
    }
    let mut good = Vec::new();
    for (k, &i) in normal.iter().enumerate() {
        let mut is_good = true;
        for &i2 in &normal[k + 1..] {
            if lam.gamma(i, i2, p)? == 0 {
                is_good = false;
                break;
            }
        }
        if is_good {
            good.push(i);
        }
    }
    Ok(BlockNormality {
        normal,
        good,
        heights,
        residues,
    })
}

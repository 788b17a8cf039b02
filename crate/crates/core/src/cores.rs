//! p-rims, p-cores, weights and n-vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{residue, Node, Partition};

/// Cyclic differences of the content vector: `n_j = c_j - c_{j+1}`.
/// Entries sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NVector(pub Vec<i64>);

impl NVector {
    pub fn zero(p: u32) -> Self {
        NVector(vec![0; p as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn bump(&mut self, at: i64, by: i64) {
        let p = self.0.len() as u32;
        self.0[residue(at, p) as usize] += by;
    }
}

/// The cores that occur for JS-partitions: empty or a rectangle `(l^a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoreShape {
    Empty,
    Rect { l: u32, a: u32 },
}

impl CoreShape {
    /// Normalizes degenerate rectangles to `Empty`.
    pub fn rect(l: u32, a: u32) -> Self {
        if l == 0 || a == 0 {
            CoreShape::Empty
        } else {
            CoreShape::Rect { l, a }
        }
    }

    pub fn size(&self) -> u32 {
        match *self {
            CoreShape::Empty => 0,
            CoreShape::Rect { l, a } => l * a,
        }
    }

    /// `(l^a)` is a p-core iff its hook length `l + a - 1` is below `p`.
    pub fn is_p_core(&self, p: u32) -> bool {
        match *self {
            CoreShape::Empty => true,
            CoreShape::Rect { l, a } => l + a - 1 < p,
        }
    }

    pub fn to_partition(&self) -> Partition {
        match *self {
            CoreShape::Empty => Partition::empty(),
            CoreShape::Rect { l, a } => Partition::rectangle(l, a),
        }
    }

    /// `Some` iff `lam` is empty or a rectangle.
    pub fn from_partition(lam: &Partition) -> Option<Self> {
        match lam.blocks().as_slice() {
            [] => Some(CoreShape::Empty),
            [b] => Some(CoreShape::Rect {
                l: b.len,
                a: b.mult,
            }),
            _ => None,
        }
    }
}

/// Rim nodes of each row, as the column range `lo..=hi` read right to left.
fn rim_ranges(lam: &Partition) -> Vec<(u32, u32)> {
    (1..=lam.len())
        .map(|i| (lam.part(i + 1).max(1), lam.part(i)))
        .collect()
}

/// The p-rim of a p-regular partition, in traversal order.
///
/// Segments of `p` rim nodes are taken from the top right along the rim.
/// A segment that stops in row `i` is followed by one starting at the right
/// end of row `i + 1`; the walk ends once a segment reaches the last row.
pub fn p_rim(lam: &Partition, p: u32) -> Result<Vec<Node>> {
    if lam.is_empty() {
        return Err(Error::EmptyPartition);
    }
    if !lam.is_p_regular(p) {
        return Err(Error::NotRegular {
            partition: lam.to_string(),
            p,
        });
    }
    let ranges = rim_ranges(lam);
    let last = ranges.len() - 1;
    let mut out = Vec::new();
    let mut row = 0usize;
    loop {
        let mut col = ranges[row].1;
        let mut taken = 0;
        loop {
            out.push(Node::new(row as u32 + 1, col));
            taken += 1;
            if taken == p {
                break;
            }
            if col > ranges[row].0 {
                col -= 1;
            } else if row < last {
                row += 1;
            } else {
                break;
            }
        }
        if row == last {
            return Ok(out);
        }
        row += 1;
    }
}

/// Result of removing the p-rim once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimStrip {
    pub rest: Partition,
    /// Number of nodes in the p-rim.
    pub rim_len: u32,
    /// Number of rows of the stripped partition.
    pub rows: u32,
}

pub fn strip_p_rim(lam: &Partition, p: u32) -> Result<RimStrip> {
    let rim = p_rim(lam, p)?;
    let mut parts = lam.parts().to_vec();
    for node in &rim {
        parts[node.row as usize - 1] -= 1;
    }
    parts.retain(|&x| x > 0);
    Ok(RimStrip {
        rest: Partition::new(parts)?,
        rim_len: rim.len() as u32,
        rows: lam.len() as u32,
    })
}

/// First-column hook lengths of `lam` padded to `k` rows.
fn beta_set(lam: &Partition, k: usize) -> Vec<u32> {
    (1..=k).map(|i| lam.part(i) + (k - i) as u32).collect()
}

fn from_beta_set(mut beta: Vec<u32>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let k = beta.len();
    let parts: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (k - 1 - i) as u32)
        .filter(|&x| x > 0)
        .collect();
    Partition::new(parts).expect("beta-set decodes to a partition")
}

/// The p-core, by sliding every bead of the p-abacus to the top of its runner.
pub fn p_core(lam: &Partition, p: u32) -> Partition {
    let k = lam.len();
    let mut on_runner = vec![0u32; p as usize];
    for b in beta_set(lam, k) {
        on_runner[(b % p) as usize] += 1;
    }
    let beads = on_runner
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| (0..c).map(move |i| r as u32 + i * p))
        .collect();
    from_beta_set(beads)
}

/// Number of p-hooks removed on the way to the p-core.
pub fn weight(lam: &Partition, p: u32) -> u32 {
    (lam.n() - p_core(lam, p).n()) / p
}

pub fn n_vector_of(lam: &Partition, p: u32) -> NVector {
    let c = lam.content(p).0;
    let len = c.len();
    NVector(
        (0..len)
            .map(|j| c[j] as i64 - c[(j + 1) % len] as i64)
            .collect(),
    )
}

/// n-vector of an empty or rectangular p-core.
///
/// A wide rectangle `(l^a)`, `a <= l`, has `+1` at residues `l-a, ..., l-1`
/// and `-1` at `p-a, ..., p-1`. A tall one is handled through its conjugate,
/// using `n(v')_i = -n(v)_{p-1-i}`.
pub fn rect_n_vector(shape: CoreShape, p: u32) -> Result<NVector> {
    let (l, a) = match shape {
        CoreShape::Empty => return Ok(NVector::zero(p)),
        CoreShape::Rect { l, a } => (l, a),
    };
    if !shape.is_p_core(p) {
        return Err(Error::NotACore { l, a, p });
    }
    if a <= l {
        let mut v = NVector::zero(p);
        for i in 0..a {
            v.bump(i64::from(l - a + i), 1);
            v.bump(i64::from(p - a + i), -1);
        }
        Ok(v)
    } else {
        let wide = rect_n_vector(CoreShape::Rect { l: a, a: l }, p)?.0;
        let n = wide.len();
        Ok(NVector((0..n).map(|i| -wide[n - 1 - i]).collect()))
    }
}

/// Inverse of [`rect_n_vector`] over all empty and rectangular p-cores.
pub fn classify_rect_nvector(v: &NVector, p: u32) -> Result<CoreShape> {
    if v.0.len() != p as usize {
        return Err(Error::NotRectangular(v.0.clone()));
    }
    if v.is_zero() {
        return Ok(CoreShape::Empty);
    }
    for l in 1..p {
        for a in 1..=(p - l) {
            let shape = CoreShape::Rect { l, a };
            if rect_n_vector(shape, p)? == *v {
                return Ok(shape);
            }
        }
    }
    Err(Error::NotRectangular(v.0.clone()))
}

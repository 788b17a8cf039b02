//! Mullineux symbols, residue symbols and the Mullineux map.
//!
//! The Mullineux symbol records, for the successive p-rim removals of a
//! p-regular partition, the rim length `a_i` and the row count `r_i`. The
//! residue symbol is its reversed reduction mod p: column `j` holds
//! `x_j = a - r` and `y_j = 1 - r` taken from column `m + 1 - j`.
//!
//! Consecutive Mullineux columns `(a, r)` before `(a', r')` satisfy
//!
//! ```text
//! eps <= r - r' < p + eps
//! (r - r') + eps' <= a - a' < p + (r - r') + eps'
//! ```
//!
//! with `eps = 0` iff `p | a` and `eps' = 0` iff `p | a'`. Both windows have width `p`, so a residue
//! symbol pins down the Mullineux symbol one column at a time.

use serde::{Deserialize, Serialize};

use crate::cores::{strip_p_rim, NVector};
use crate::error::{Error, Result};
use crate::partitions::{check_modulus, residue, Partition};

/// One column of a Mullineux symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MullineuxColumn {
    /// Length of the p-rim.
    pub a: u32,
    /// Number of rows.
    pub r: u32,
}

impl MullineuxColumn {
    pub fn new(a: u32, r: u32) -> Self {
        MullineuxColumn { a, r }
    }

    pub fn is_singular(&self, p: u32) -> bool {
        self.a.is_multiple_of(p)
    }

    /// 0 for a singular column, 1 otherwise.
    pub fn eps(&self, p: u32) -> u32 {
        u32::from(!self.is_singular(p))
    }
}

/// Columns in removal order: the first column is the outermost p-rim.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "SymbolRows", try_from = "SymbolRows")]
pub struct MullineuxSymbol {
    pub columns: Vec<MullineuxColumn>,
}

#[derive(Serialize, Deserialize)]
struct SymbolRows {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl From<MullineuxSymbol> for SymbolRows {
    fn from(g: MullineuxSymbol) -> Self {
        SymbolRows {
            top: g.columns.iter().map(|c| c.a).collect(),
            bottom: g.columns.iter().map(|c| c.r).collect(),
        }
    }
}

impl TryFrom<SymbolRows> for MullineuxSymbol {
    type Error = String;

    fn try_from(rows: SymbolRows) -> std::result::Result<Self, String> {
        if rows.top.len() != rows.bottom.len() {
            return Err("top and bottom rows differ in length".into());
        }
        Ok(MullineuxSymbol::from_pairs(
            rows.top.into_iter().zip(rows.bottom).collect::<Vec<_>>(),
        ))
    }
}

impl MullineuxSymbol {
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        MullineuxSymbol {
            columns: pairs
                .into_iter()
                .map(|(a, r)| MullineuxColumn::new(a, r))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Total rim length, i.e. the size of the partition.
    pub fn size(&self) -> u32 {
        self.columns.iter().map(|c| c.a).sum()
    }

    /// Index (1-based) of the first column violating the consecutive-column
    /// windows or the final `r_m <= a_m < r_m + p` bound, if any.
    pub fn first_violation(&self, p: u32) -> Option<usize> {
        for (i, w) in self.columns.windows(2).enumerate() {
            if !consecutive_ok(w[0], w[1], p) {
                return Some(i + 1);
            }
        }
        match self.columns.last() {
            Some(c) if c.r == 0 || c.a < c.r || c.a >= c.r + p => Some(self.columns.len()),
            _ => None,
        }
    }
}

fn consecutive_ok(cur: MullineuxColumn, next: MullineuxColumn, p: u32) -> bool {
    let (e, e2) = (i64::from(cur.eps(p)), i64::from(next.eps(p)));
    let p = i64::from(p);
    let dr = i64::from(cur.r) - i64::from(next.r);
    let da = i64::from(cur.a) - i64::from(next.a);
    e <= dr && dr < p + e && dr + e2 <= da && da < p + dr + e2
}

/// One column `{x / y}` of a residue symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueColumn {
    pub x: u32,
    pub y: u32,
}

impl ResidueColumn {
    pub fn new(x: u32, y: u32) -> Self {
        ResidueColumn { x, y }
    }

    /// Reduces arbitrary integers mod p.
    pub fn reduced(x: i64, y: i64, p: u32) -> Self {
        ResidueColumn {
            x: residue(x, p),
            y: residue(y, p),
        }
    }

    /// `x + 1 = y (mod p)`.
    pub fn is_singular(&self, p: u32) -> bool {
        (self.x + 1) % p == self.y
    }

    /// 1 for a singular column, 0 otherwise.
    pub fn delta(&self, p: u32) -> u32 {
        u32::from(self.is_singular(p))
    }
}

/// Columns in construction order: column 1 comes from the innermost rim.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "ResidueRows", try_from = "ResidueRows")]
pub struct ResidueSymbol {
    pub columns: Vec<ResidueColumn>,
}

#[derive(Serialize, Deserialize)]
struct ResidueRows {
    x: Vec<u32>,
    y: Vec<u32>,
}

impl From<ResidueSymbol> for ResidueRows {
    fn from(r: ResidueSymbol) -> Self {
        ResidueRows {
            x: r.columns.iter().map(|c| c.x).collect(),
            y: r.columns.iter().map(|c| c.y).collect(),
        }
    }
}

impl TryFrom<ResidueRows> for ResidueSymbol {
    type Error = String;

    fn try_from(rows: ResidueRows) -> std::result::Result<Self, String> {
        if rows.x.len() != rows.y.len() {
            return Err("x and y rows differ in length".into());
        }
        Ok(ResidueSymbol::from_pairs(
            rows.x.into_iter().zip(rows.y).collect::<Vec<_>>(),
        ))
    }
}

impl ResidueSymbol {
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        ResidueSymbol {
            columns: pairs
                .into_iter()
                .map(|(x, y)| ResidueColumn::new(x, y))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

/// The Mullineux symbol, by stripping p-rims until nothing is left.
/// The empty partition has the empty symbol.
pub fn mullineux_symbol(lam: &Partition, p: u32) -> Result<MullineuxSymbol> {
    check_modulus(p)?;
    if !lam.is_p_regular(p) {
        return Err(Error::NotRegular {
            partition: lam.to_string(),
            p,
        });
    }
    let mut columns = Vec::new();
    let mut cur = lam.clone();
    while !cur.is_empty() {
        let s = strip_p_rim(&cur, p)?;
        columns.push(MullineuxColumn::new(s.rim_len, s.rows));
        cur = s.rest;
    }
    Ok(MullineuxSymbol { columns })
}

struct Attach<'a> {
    mu: &'a [u32],
    rows: usize,
    rim_len: u32,
    p: u32,
}

impl Attach<'_> {
    /// Chooses row `i` of the new partition. `u` counts the nodes already in
    /// the current p-segment; `forced` is set when the segment runs on from
    /// the row above, which fixes this row's length.
    #[allow(clippy::too_many_arguments)]
    fn go(
        &self,
        i: usize,
        u: u32,
        forced: Option<u32>,
        cap: u32,
        used: u32,
        lam: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let mu_i = self.mu[i];
        let (lo, hi) = match forced {
            Some(v) => (v, v),
            None => (mu_i + 1, cap.min(mu_i + self.p - u)),
        };
        for v in lo..=hi {
            if v <= mu_i {
                continue;
            }
            let h = v - mu_i;
            if h > self.p - u {
                continue;
            }
            let remaining_rows = (self.rows - 1 - i) as u32;
            if used + h + remaining_rows > self.rim_len {
                break;
            }
            lam.push(v);
            if i + 1 == self.rows {
                // Last row: the segment takes min(p - u, v) nodes.
                let full_row = mu_i == 0;
                if used + h == self.rim_len && (full_row || h == self.p - u) {
                    out.push(lam.clone());
                }
            } else if u + h < self.p {
                // The segment crosses into the next row at its right end.
                self.go(i + 1, u + h, Some(mu_i + 1), 0, used + h, lam, out);
            } else {
                // The segment ends here; the next one starts in row i + 1,
                // whose rim nodes must all lie at columns <= mu_i + 1.
                self.go(i + 1, 0, None, mu_i + 1, used + h, lam, out);
            }
            lam.pop();
        }
    }
}

/// Every p-regular `lam` whose p-rim has `rim_len` nodes, which has `rows`
/// rows, and which leaves `mu` once the p-rim is removed.
pub fn attach_p_rim(mu: &Partition, rim_len: u32, rows: u32, p: u32) -> Vec<Partition> {
    let rows = rows as usize;
    if rows == 0 || mu.len() > rows || p < 2 {
        return Vec::new();
    }
    let padded: Vec<u32> = (1..=rows).map(|i| mu.part(i)).collect();
    let search = Attach {
        mu: &padded,
        rows,
        rim_len,
        p,
    };
    let mut out = Vec::new();
    search.go(0, 0, None, u32::MAX, 0, &mut Vec::new(), &mut out);
    out.into_iter()
        .filter_map(|parts| Partition::new(parts).ok())
        .filter(|lam| lam.is_p_regular(p))
        .filter(|lam| {
            strip_p_rim(lam, p)
                .map(|s| s.rest == *mu && s.rim_len == rim_len && s.rows as usize == rows)
                .unwrap_or(false)
        })
        .collect()
}

/// The partition with the given Mullineux symbol, rebuilt by re-attaching
/// p-rims from the innermost column outwards.
pub fn partition_of_symbol(g: &MullineuxSymbol, p: u32) -> Result<Partition> {
    check_modulus(p)?;
    let mut cur = Partition::empty();
    for (idx, col) in g.columns.iter().enumerate().rev() {
        let mut found = attach_p_rim(&cur, col.a, col.r, p);
        if found.len() != 1 {
            return Err(Error::Unrealizable { column: idx + 1 });
        }
        cur = found.pop().expect("one candidate");
    }
    Ok(cur)
}

pub fn residue_symbol(g: &MullineuxSymbol, p: u32) -> ResidueSymbol {
    ResidueSymbol {
        columns: g
            .columns
            .iter()
            .rev()
            .map(|c| {
                let (a, r) = (i64::from(c.a), i64::from(c.r));
                ResidueColumn::reduced(a - r, 1 - r, p)
            })
            .collect(),
    }
}

/// Residue symbol of a p-regular partition.
pub fn residue_symbol_of(lam: &Partition, p: u32) -> Result<ResidueSymbol> {
    Ok(residue_symbol(&mullineux_symbol(lam, p)?, p))
}

/// The Mullineux column for residue column `col`, given the column of the
/// next smaller partition (`None` for the innermost column).
///
/// The innermost partition is a hook `(l, 1^{r-1})` with `l <= p`, so
/// `1 <= r <= p` and `0 <= a - r < p`, excluding `r = p` with `a = r`.
pub fn next_mullineux_column(
    inner: Option<MullineuxColumn>,
    col: ResidueColumn,
    p: u32,
) -> Option<MullineuxColumn> {
    let (x, y, pp) = (i64::from(col.x), i64::from(col.y), i64::from(p));
    match inner {
        None => {
            let r = match residue(1 - y, p) {
                0 => pp,
                r => i64::from(r),
            };
            let a = r + i64::from(residue(x, p));
            if r == pp && a == r {
                return None;
            }
            Some(MullineuxColumn::new(a as u32, r as u32))
        }
        Some(prev) => {
            let eps = i64::from(!col.is_singular(p));
            let eps_inner = i64::from(prev.eps(p));
            let (a0, r0) = (i64::from(prev.a), i64::from(prev.r));
            let dr = eps + residue(1 - y - r0 - eps, p) as i64;
            let r = r0 + dr;
            let target = x + r;
            let low = a0 + dr + eps_inner;
            let a = low + residue(target - low, p) as i64;
            Some(MullineuxColumn::new(a as u32, r as u32))
        }
    }
}

/// Recovers the Mullineux symbol from a residue symbol and checks that it is
/// realized by a p-regular partition. Errors name the residue column (1-based)
/// where reconstruction fails.
pub fn reconstruct_mullineux(rs: &ResidueSymbol, p: u32) -> Result<MullineuxSymbol> {
    check_modulus(p)?;
    let mut rev = Vec::with_capacity(rs.len());
    for (j, &col) in rs.columns.iter().enumerate() {
        let next = next_mullineux_column(rev.last().copied(), col, p)
            .ok_or(Error::InvalidResidueSymbol { column: j + 1 })?;
        rev.push(next);
    }
    rev.reverse();
    let g = MullineuxSymbol { columns: rev };
    let m = g.len();
    partition_of_symbol(&g, p).map_err(|e| match e {
        Error::Unrealizable { column } => Error::InvalidResidueSymbol {
            column: m + 1 - column,
        },
        other => other,
    })?;
    Ok(g)
}

/// The Mullineux map on symbols: `r_j -> a_j - r_j + eps_j`.
pub fn mullineux_map_g(g: &MullineuxSymbol, p: u32) -> MullineuxSymbol {
    MullineuxSymbol {
        columns: g
            .columns
            .iter()
            .map(|c| MullineuxColumn::new(c.a, c.a - c.r + c.eps(p)))
            .collect(),
    }
}

/// The Mullineux map on residue symbols: `{x / y} -> {delta - y / delta - x}`.
pub fn mullineux_map_r(rs: &ResidueSymbol, p: u32) -> ResidueSymbol {
    ResidueSymbol {
        columns: rs
            .columns
            .iter()
            .map(|c| {
                let d = i64::from(c.delta(p));
                ResidueColumn::reduced(d - i64::from(c.y), d - i64::from(c.x), p)
            })
            .collect(),
    }
}

/// `lam^M`, the Mullineux conjugate of a p-regular partition.
pub fn mullineux_conjugate(lam: &Partition, p: u32) -> Result<Partition> {
    let g = mullineux_symbol(lam, p)?;
    partition_of_symbol(&mullineux_map_g(&g, p), p)
}

/// `n_j = #{i : x_i = j} - #{i : y_i = j + 1}`.
pub fn n_vector_from_residue_symbol(rs: &ResidueSymbol, p: u32) -> NVector {
    let mut v = vec![0i64; p as usize];
    for c in &rs.columns {
        v[c.x as usize] += 1;
        v[residue(i64::from(c.y) - 1, p) as usize] -= 1;
    }
    NVector(v)
}

/// `x_j + y_j = delta_j (mod p)` for every column.
pub fn residue_symbol_is_fixed(rs: &ResidueSymbol, p: u32) -> bool {
    rs.columns.iter().all(|c| (c.x + c.y) % p == c.delta(p))
}

pub fn is_mullineux_fixed(lam: &Partition, p: u32) -> Result<bool> {
    Ok(residue_symbol_is_fixed(&residue_symbol_of(lam, p)?, p))
}

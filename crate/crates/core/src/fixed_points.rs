//! JS-partitions fixed by the Mullineux map.
//!
//! These are all of type 0, and their residue symbols are the walks from
//! `(0, 0)` in the subgraph of the type-0 construction graph on columns with
//! `x + y ≡ δ`. That leaves the regular columns `(a, -a)` and the single
//! singular column `(0, 1)`. Their p-cores are empty or squares.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cores::CoreShape;
use crate::error::{Error, Result};
use crate::js_construction::{build_js_graph, check_odd, is_js, JsColumn, JsGraph, StartColumn};
use crate::partitions::Partition;
use crate::symbols::{
    is_mullineux_fixed, partition_of_symbol, reconstruct_mullineux, ResidueColumn, ResidueSymbol,
};

/// The regular column `(a, -a)`, written `a` in the walks below.
fn vertex(a: i64, p: u32) -> JsColumn {
    ResidueColumn::reduced(a, -a, p)
}

/// The singular column `(0, 1)`.
fn prime() -> JsColumn {
    ResidueColumn::new(0, 1)
}

/// JS and Mullineux fixed. The empty partition counts as the walk of length 0.
pub fn is_fixed_js(lam: &Partition, p: u32) -> Result<bool> {
    check_odd(p)?;
    if lam.is_empty() {
        return Ok(true);
    }
    Ok(is_js(lam, p)? && is_mullineux_fixed(lam, p)?)
}

/// Successors of `c`: `(1-y, y-1)` and `(y-1, 1-y)` when regular, and
/// `(0, 1)` when `y = 1`.
pub fn fixed_extensions(c: JsColumn, p: u32) -> Vec<JsColumn> {
    let y = i64::from(c.y);
    let mut out: Vec<JsColumn> = [
        ResidueColumn::reduced(1 - y, y - 1, p),
        ResidueColumn::reduced(y - 1, 1 - y, p),
    ]
    .into_iter()
    .filter(|c| !c.is_singular(p))
    .collect();
    if c.y == 1 {
        out.push(prime());
    }
    let mut seen = BTreeSet::new();
    out.retain(|c| seen.insert(*c));
    out
}

/// The walks from `(0, 0)` under `fixed_extensions`, as a subgraph of the
/// type-0 construction graph with its edge labels.
pub fn build_fixed_js_graph(p: u32) -> Result<JsGraph> {
    check_odd(p)?;
    let full = build_js_graph(0, p)?;
    let start = ResidueColumn::new(0, 0);
    let mut seen = BTreeSet::from([start]);
    let mut queue = vec![start];
    let mut edges = Vec::new();
    while let Some(v) = queue.pop() {
        for w in fixed_extensions(v, p) {
            let e = full.edge(v, w).ok_or_else(|| {
                Error::IllegalEdge(format!("({}, {}) -> ({}, {})", v.x, v.y, w.x, w.y))
            })?;
            edges.push(*e);
            if seen.insert(w) {
                queue.push(w);
            }
        }
    }
    Ok(JsGraph::assemble(
        0,
        p,
        vec![StartColumn { col: start, d0: 0 }],
        seen,
        edges,
    ))
}

/// Core of a fixed JS-partition ending in column `c`: `(l^l)` for the
/// columns `(l-1, 1-l)` and `(-l-1, l+1)` with `1 <= l <= (p-1)/2`; empty for
/// `(-1, 1)` and `(0, 1)`.
pub fn fixed_core(c: JsColumn, p: u32) -> Result<CoreShape> {
    check_odd(p)?;
    if c == prime() {
        return Ok(CoreShape::Empty);
    }
    if !(c.x + c.y).is_multiple_of(p) {
        return Err(Error::Unreachable {
            x: c.x,
            y: c.y,
            alpha: 0,
        });
    }
    let l = (c.x + 1) % p;
    if l == 0 {
        return Ok(CoreShape::Empty);
    }
    let l = l.min(p - l);
    Ok(CoreShape::rect(l, l))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum FixedWitness {
    Found {
        partition: Partition,
        symbol: ResidueSymbol,
    },
    Infeasible,
}

fn side_of(mu: CoreShape, p: u32) -> Result<u32> {
    match mu {
        CoreShape::Empty => Ok(0),
        CoreShape::Rect { l, a } if l != a => Err(Error::NotSquare),
        CoreShape::Rect { l, a } => {
            if 2 * l > p {
                return Err(Error::NotACore { l, a, p });
            }
            Ok(l)
        }
    }
}

/// The walk for weight `w` and core `mu`, or `None` for the one infeasible
/// case `w = 2`, `mu = ((p-1)/2)^((p-1)/2)`.
pub fn fixed_witness_symbol(w: u32, mu: CoreShape, p: u32) -> Result<Option<ResidueSymbol>> {
    check_odd(p)?;
    if w % 2 == 1 {
        return Err(Error::OddWeight(w));
    }
    let j = i64::from(side_of(mu, p)?);
    let up_to = |from: i64, to: i64| (from..=to).map(|a| vertex(a, p));
    // 0 -> -1 -> (0')^m
    let via_prime = |m: u32| {
        [vertex(0, p), vertex(-1, p)]
            .into_iter()
            .chain(std::iter::repeat_n(prime(), m as usize))
    };
    let cols: Vec<JsColumn> = if j == 0 {
        match w {
            0 => Vec::new(),
            2 => via_prime(0).collect(),
            _ => via_prime((w - 2) / 2).collect(),
        }
    } else {
        let w = i64::from(w);
        if w == 0 {
            up_to(0, j - 1).collect()
        } else if w == 2 {
            if 2 * j + 1 == i64::from(p) {
                return Ok(None);
            }
            up_to(0, j).chain([vertex(-(j + 1), p)]).collect()
        } else if w <= 2 * j + 2 {
            let i = j + 1 - w / 2;
            up_to(0, i)
                .chain([vertex(-(i + 1), p)])
                .chain(up_to(i, j - 1))
                .collect()
        } else {
            let m = ((w - 2 * j - 2) / 2) as u32;
            via_prime(m).chain(up_to(0, j - 1)).collect()
        }
    };
    Ok(Some(ResidueSymbol { columns: cols }))
}

/// A Mullineux fixed JS-partition of weight `w` with p-core `mu`.
pub fn fixed_witness(w: u32, mu: CoreShape, p: u32) -> Result<FixedWitness> {
    let Some(symbol) = fixed_witness_symbol(w, mu, p)? else {
        return Ok(FixedWitness::Infeasible);
    };
    let partition = if symbol.is_empty() {
        Partition::empty()
    } else {
        partition_of_symbol(&reconstruct_mullineux(&symbol, p)?, p)?
    };
    Ok(FixedWitness::Found { partition, symbol })
}

/// The column in the `a` / `0'` shorthand, with `a` taken in
/// `-(p-1)/2..=(p-1)/2`.
pub fn vertex_label(c: JsColumn, p: u32) -> String {
    if c == prime() {
        "0'".into()
    } else {
        let a = i64::from(c.x);
        if 2 * a < i64::from(p) {
            a.to_string()
        } else {
            (a - i64::from(p)).to_string()
        }
    }
}

/// `(p-1)/2`, the side of the largest square p-core.
pub fn largest_square_side(p: u32) -> u32 {
    (p - 1) / 2
}

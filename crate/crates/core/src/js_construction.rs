//! JS-partitions and the graph that builds their residue symbols.
//!
//! A JS-partition `(l_1^{a_1}, …, l_t^{a_t})` satisfies
//! `l_i - l_{i+1} + a_i + a_{i+1} ≡ 0 (mod p)` for consecutive blocks; its
//! type is `l_1 - a_1 mod p`. Their residue symbols are exactly the walks in a
//! small directed graph on residue columns, starting from one of at most three
//! start columns. Edges carry labels `(d, e)` from which the p-weight is read
//! off along the walk.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cores::{p_core, CoreShape};
use crate::error::{Error, Result};
use crate::partitions::{residue, Partition};
use crate::signatures::mullineux_sequence_of_symbol;
use crate::symbols::{
    mullineux_symbol, next_mullineux_column, partition_of_symbol, residue_symbol_of,
    MullineuxColumn, MullineuxSymbol, ResidueColumn, ResidueSymbol,
};

pub type JsColumn = ResidueColumn;

fn col(x: i64, y: i64, p: u32) -> JsColumn {
    ResidueColumn::reduced(x, y, p)
}

pub(crate) fn check_odd(p: u32) -> Result<()> {
    if p < 3 {
        return Err(Error::NeedsOddPrime(p));
    }
    Ok(())
}

fn check_regular_nonempty(lam: &Partition, p: u32) -> Result<()> {
    if lam.is_empty() {
        return Err(Error::EmptyPartition);
    }
    if p < 2 || !lam.is_p_regular(p) {
        return Err(Error::NotRegular {
            partition: lam.to_string(),
            p,
        });
    }
    Ok(())
}

pub fn is_js(lam: &Partition, p: u32) -> Result<bool> {
    check_regular_nonempty(lam, p)?;
    let t = lam.blocks().len();
    for i in 1..t {
        if lam.beta(i, i + 1, p)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `l_1 - a_1 mod p`, the residue of the removable node of the first block.
pub fn js_type(lam: &Partition, p: u32) -> Result<u32> {
    check_regular_nonempty(lam, p)?;
    let b = lam.blocks()[0];
    Ok(residue(i64::from(b.len) - i64::from(b.mult), p))
}

/// Type of `lam` if its Mullineux sequence keeps every `σ_β(i) <= 0` for
/// `β != α` and `σ_α(i) <= 1`; `None` when no residue qualifies.
pub fn js_by_sequence(lam: &Partition, p: u32) -> Result<Option<u32>> {
    check_regular_nonempty(lam, p)?;
    let x = mullineux_sequence_of_symbol(&residue_symbol_of(lam, p)?, p);
    let peaks: Vec<i64> = (0..p).map(|b| x.peak(b)).collect();
    let high: Vec<u32> = (0..p).filter(|&b| peaks[b as usize] > 0).collect();
    Ok(match high.as_slice() {
        [a] if peaks[*a as usize] == 1 => Some(*a),
        _ => None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StartColumn {
    pub col: JsColumn,
    /// 1 on the singular start, 0 on regular starts.
    pub d0: u32,
}

pub fn start_columns(alpha: u32, p: u32) -> Result<Vec<StartColumn>> {
    check_odd(p)?;
    let a = i64::from(alpha % p);
    let mut cols = Vec::new();
    if alpha % p != 1 {
        cols.push(col(0, a, p));
    }
    cols.push(col(a, 0, p));
    if !alpha.is_multiple_of(p) {
        cols.push(col(a, a + 1, p));
    }
    let mut out: Vec<StartColumn> = Vec::new();
    for c in cols {
        if out.iter().all(|s| s.col != c) {
            out.push(StartColumn {
                col: c,
                d0: c.delta(p),
            });
        }
    }
    Ok(out)
}

/// Successor columns of `c` in the type-`α` construction, deduplicated.
pub fn js_extensions(c: JsColumn, alpha: u32, p: u32) -> Vec<JsColumn> {
    let (a, y) = (i64::from(alpha), i64::from(c.y));
    let mut out = Vec::with_capacity(4);
    if residue(2 * y - a - 3, p) != 0 {
        out.push(col(a + 1 - y, y - 1, p));
    }
    if residue(2 * y - a - 1, p) != 0 {
        out.push(col(y - 1, a + 1 - y, p));
    }
    out.push(col(y - 1, y, p));
    out.push(col(a + 1 - y, a + 2 - y, p));
    let mut seen = BTreeSet::new();
    out.retain(|c| seen.insert(*c));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EndValueVector {
    /// `-e_0`.
    V0,
    /// `e_α - e_β - e_{α-β}`, with `β` the smaller of the two equivalent choices.
    Vab { alpha: u32, beta: u32 },
    /// `e_α - 2 e_β` with `2β ≡ α`.
    W { alpha: u32 },
}

impl EndValueVector {
    pub fn to_vector(self, p: u32) -> Vec<i64> {
        let mut v = vec![0i64; p as usize];
        match self {
            EndValueVector::V0 => v[0] = -1,
            EndValueVector::Vab { alpha, beta } => {
                v[alpha as usize] += 1;
                v[beta as usize] -= 1;
                v[residue(i64::from(alpha) - i64::from(beta), p) as usize] -= 1;
            }
            EndValueVector::W { alpha } => {
                v[alpha as usize] += 1;
                v[half(alpha, p) as usize] -= 2;
            }
        }
        v
    }
}

/// The residue `β` with `2β ≡ α (mod p)`, p odd.
fn half(alpha: u32, p: u32) -> u32 {
    if alpha.is_multiple_of(2) {
        alpha / 2
    } else {
        (alpha + p) / 2
    }
}

/// `σ_β` at the end of the Mullineux sequence, for every residue `β`.
pub fn end_value_vector(rs: &ResidueSymbol, p: u32) -> Vec<i64> {
    let x = mullineux_sequence_of_symbol(rs, p);
    (0..p).map(|b| x.end_value(b)).collect()
}

/// Classifies the end value vector of a type-`α` JS residue symbol and checks
/// the matching condition on the last `y`.
pub fn classify_end_values(rs: &ResidueSymbol, alpha: u32, p: u32) -> Result<EndValueVector> {
    check_odd(p)?;
    let sigma = end_value_vector(rs, p);
    let fail = || Error::Unclassified(sigma.clone());
    let last_y = rs.columns.last().ok_or_else(fail)?.y;
    let a = alpha % p;
    for beta in 0..p {
        let probe = EndValueVector::Vab { alpha: a, beta }.to_vector(p);
        if probe != sigma {
            continue;
        }
        let other = residue(i64::from(a) - i64::from(beta), p);
        let allowed = [(beta + 1) % p, (other + 1) % p];
        if !allowed.contains(&last_y) {
            return Err(fail());
        }
        return Ok(if beta == 0 || other == 0 {
            EndValueVector::V0
        } else if beta == other {
            EndValueVector::W { alpha: a }
        } else {
            EndValueVector::Vab {
                alpha: a,
                beta: beta.min(other),
            }
        });
    }
    Err(fail())
}

/// Drops singular columns, checking that the regular columns left behind
/// follow one another by regular extensions, and that a leading run of
/// singular columns is followed by `(α, 0)` or `(0, α)`.
pub fn collapse_singular_runs(rs: &ResidueSymbol, alpha: u32, p: u32) -> Result<ResidueSymbol> {
    let a = i64::from(alpha);
    let mut out: Vec<ResidueColumn> = Vec::new();
    let mut leading_singular = false;
    for (j, c) in rs.columns.iter().enumerate() {
        if c.is_singular(p) {
            if out.is_empty() {
                leading_singular = true;
            }
            continue;
        }
        match out.last() {
            Some(prev) => {
                let y = i64::from(prev.y);
                let ok = [col(a + 1 - y, y - 1, p), col(y - 1, a + 1 - y, p)];
                if !ok.contains(c) {
                    return Err(Error::JsViolation(format!(
                        "regular column {} ({}, {}) does not follow ({}, {})",
                        j + 1,
                        c.x,
                        c.y,
                        prev.x,
                        prev.y
                    )));
                }
            }
            None if leading_singular && ![col(a, 0, p), col(0, a, p)].contains(c) => {
                return Err(Error::JsViolation(format!(
                    "first regular column {} ({}, {}) after singular start",
                    j + 1,
                    c.x,
                    c.y
                )));
            }
            None => {}
        }
        out.push(*c);
    }
    Ok(ResidueSymbol { columns: out })
}

/// The p-core of any type-`α` JS-partition whose residue symbol ends in `c`.
///
/// Put `h = x + 1` for a regular column and `h = x` for a singular one. The
/// core is empty when `h ≡ 0` or `h ≡ α`; otherwise exactly one of `h`,
/// `α - h` (as residues) is a valid side length `l`, giving `(l^{p+l-α})` for
/// `1 <= l <= α/2` and `(l^{l-α})` for `α+1 <= l < (p+1+α)/2`.
pub fn js_core_at_column(c: JsColumn, alpha: u32, p: u32) -> Result<CoreShape> {
    check_odd(p)?;
    let a = alpha % p;
    let singular = c.is_singular(p);
    if !singular && (c.x + c.y) % p != a {
        return Err(Error::Unreachable {
            x: c.x,
            y: c.y,
            alpha,
        });
    }
    let h = if singular { c.x } else { (c.x + 1) % p };
    if h == 0 || h == a {
        return Ok(CoreShape::Empty);
    }
    let other = residue(i64::from(a) - i64::from(h), p);
    for l in [h, other] {
        if 2 * l <= a {
            return Ok(CoreShape::rect(l, p + l - a));
        }
        if l > a && 2 * l < p + 1 + a {
            return Ok(CoreShape::rect(l, l - a));
        }
    }
    Err(Error::Unreachable {
        x: c.x,
        y: c.y,
        alpha,
    })
}

/// The p-core of a JS-partition from its type and its number of rows mod p.
pub fn js_core_from_length(lam: &Partition, p: u32) -> Result<CoreShape> {
    check_odd(p)?;
    if !is_js(lam, p)? {
        return Err(Error::NotJs {
            partition: lam.to_string(),
            p,
        });
    }
    let a = js_type(lam, p)?;
    let r = lam.len() as u32 % p;
    let q = p - a;
    // Comparisons against (p - α)/2 and p - α/2 are done doubled.
    Ok(if 2 * r <= q {
        CoreShape::rect(a + r, r)
    } else if r <= q {
        let s = q - r;
        CoreShape::rect(a + s, s)
    } else if 2 * r <= 2 * p - a {
        let s = r - q;
        CoreShape::rect(s, q + s)
    } else {
        let s = p - r;
        CoreShape::rect(s, q + s)
    })
}

/// `d` label of the edge `src -> dst`: the increase of `⌊a/p⌋` between the
/// Mullineux columns of the two steps.
pub fn edge_d(src: JsColumn, dst: JsColumn, alpha: u32, p: u32) -> Result<u32> {
    check_odd(p)?;
    if !js_extensions(src, alpha, p).contains(&dst) {
        return Err(Error::IllegalEdge(format!(
            "({}, {}) -> ({}, {})",
            src.x, src.y, dst.x, dst.y
        )));
    }
    let t = residue(i64::from(dst.x) - i64::from(dst.y) + 1, p);
    let t1 = residue(i64::from(src.x) - i64::from(src.y) + 1, p);
    let s = residue(i64::from(src.y) - i64::from(dst.y), p);
    Ok(match (t1 != 0, t != 0) {
        (true, true) => (t1 + 2 * s) / p,
        (true, false) => (t1 + s + p) / p,
        (false, _) => (p - 1 + s - t) / p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JsEdge {
    pub from: JsColumn,
    pub to: JsColumn,
    pub d: u32,
    pub e: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsGraph {
    pub alpha: u32,
    pub p: u32,
    pub vertices: Vec<JsColumn>,
    pub starts: Vec<StartColumn>,
    pub edges: Vec<JsEdge>,
    #[serde(skip)]
    adj: BTreeMap<JsColumn, Vec<usize>>,
}

impl JsGraph {
    pub(crate) fn assemble(
        alpha: u32,
        p: u32,
        starts: Vec<StartColumn>,
        vertices: BTreeSet<JsColumn>,
        mut edges: Vec<JsEdge>,
    ) -> Self {
        edges.sort();
        let mut adj: BTreeMap<JsColumn, Vec<usize>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for (i, e) in edges.iter().enumerate() {
            adj.get_mut(&e.from)
                .expect("edge source is a vertex")
                .push(i);
        }
        JsGraph {
            alpha,
            p,
            vertices: vertices.into_iter().collect(),
            starts,
            edges,
            adj,
        }
    }

    pub fn is_vertex(&self, c: JsColumn) -> bool {
        self.adj.contains_key(&c)
    }

    pub fn start(&self, c: JsColumn) -> Option<StartColumn> {
        self.starts.iter().copied().find(|s| s.col == c)
    }

    pub fn out_edges(&self, c: JsColumn) -> impl Iterator<Item = &JsEdge> + '_ {
        self.adj
            .get(&c)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    pub fn edge(&self, from: JsColumn, to: JsColumn) -> Option<&JsEdge> {
        self.out_edges(from).find(|e| e.to == to)
    }

    pub fn core_at(&self, c: JsColumn) -> Result<CoreShape> {
        js_core_at_column(c, self.alpha, self.p)
    }

    pub fn to_dot(&self) -> String {
        let name = |c: &JsColumn| format!("\"{}/{}\"", c.x, c.y);
        let mut s = format!("digraph js_type_{} {{\n", self.alpha);
        for v in &self.vertices {
            match self.start(*v) {
                Some(st) => writeln!(
                    s,
                    "  {} [label=\"{}/{}\", shape=doublecircle, xlabel=\"d0={}\"];",
                    name(v),
                    v.x,
                    v.y,
                    st.d0
                ),
                None => writeln!(s, "  {} [label=\"{}/{}\"];", name(v), v.x, v.y),
            }
            .expect("write to string");
        }
        for e in &self.edges {
            writeln!(
                s,
                "  {} -> {} [label=\"{},{}\"];",
                name(&e.from),
                name(&e.to),
                e.d,
                e.e
            )
            .expect("write to string");
        }
        s.push_str("}\n");
        s
    }
}

/// Closure of the start columns under `js_extensions`, with edge labels.
pub fn build_js_graph(alpha: u32, p: u32) -> Result<JsGraph> {
    check_odd(p)?;
    let alpha = alpha % p;
    let starts = start_columns(alpha, p)?;
    let mut seen: BTreeSet<JsColumn> = starts.iter().map(|s| s.col).collect();
    let mut queue: Vec<JsColumn> = seen.iter().copied().collect();
    let mut edges = Vec::new();
    while let Some(v) = queue.pop() {
        let core_v = js_core_at_column(v, alpha, p)?.size();
        for w in js_extensions(v, alpha, p) {
            let core_w = js_core_at_column(w, alpha, p)?.size();
            edges.push(JsEdge {
                from: v,
                to: w,
                d: edge_d(v, w, alpha, p)?,
                e: u32::from(core_w < core_v),
            });
            if seen.insert(w) {
                queue.push(w);
            }
        }
    }
    Ok(JsGraph::assemble(alpha, p, starts, seen, edges))
}

/// A walk in the construction graph: the start column and each later column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JsPath {
    pub start: JsColumn,
    pub steps: Vec<JsColumn>,
}

impl JsPath {
    /// Number of edges.
    pub fn k(&self) -> usize {
        self.steps.len()
    }

    pub fn residue_symbol(&self) -> ResidueSymbol {
        ResidueSymbol {
            columns: std::iter::once(self.start)
                .chain(self.steps.iter().copied())
                .collect(),
        }
    }

    /// The walk spelling out `rs`, if `rs` starts at a start column and every
    /// step is an edge of `graph`.
    pub fn of_symbol(rs: &ResidueSymbol, graph: &JsGraph) -> Result<JsPath> {
        let (first, rest) = rs
            .columns
            .split_first()
            .ok_or_else(|| Error::JsViolation("empty residue symbol".into()))?;
        if graph.start(*first).is_none() {
            return Err(Error::Unreachable {
                x: first.x,
                y: first.y,
                alpha: graph.alpha,
            });
        }
        let mut prev = *first;
        for c in rest {
            if graph.edge(prev, *c).is_none() {
                return Err(Error::IllegalEdge(format!(
                    "({}, {}) -> ({}, {})",
                    prev.x, prev.y, c.x, c.y
                )));
            }
            prev = *c;
        }
        Ok(JsPath {
            start: *first,
            steps: rest.to_vec(),
        })
    }
}

/// `Σ_{i=0}^{k} (k+1-i) d_i + Σ_{i=1}^{k} e_i`.
pub fn weight_of_path(path: &JsPath, graph: &JsGraph) -> Result<u32> {
    let start = graph.start(path.start).ok_or(Error::Unreachable {
        x: path.start.x,
        y: path.start.y,
        alpha: graph.alpha,
    })?;
    let k = path.k() as u32;
    let mut w = (k + 1) * start.d0;
    let mut prev = path.start;
    for (i, &c) in path.steps.iter().enumerate() {
        let e = graph.edge(prev, c).ok_or_else(|| {
            Error::IllegalEdge(format!("({}, {}) -> ({}, {})", prev.x, prev.y, c.x, c.y))
        })?;
        let i = i as u32 + 1;
        w += (k + 1 - i) * e.d + e.e;
        prev = c;
    }
    Ok(w)
}

/// A residue symbol generated by the graph together with its Mullineux symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSymbol {
    pub residue: ResidueSymbol,
    pub mullineux: MullineuxSymbol,
}

impl GeneratedSymbol {
    pub fn size(&self) -> u32 {
        self.mullineux.size()
    }
}

/// Every walk whose Mullineux symbol has total size at most `nmax`. Sizes are
/// tracked while walking, since each step only adds an outer Mullineux column.
pub fn generate_js_symbols(graph: &JsGraph, nmax: u32) -> Vec<GeneratedSymbol> {
    fn walk(
        graph: &JsGraph,
        nmax: u32,
        size: u32,
        rcols: &mut Vec<ResidueColumn>,
        gcols: &mut Vec<MullineuxColumn>,
        out: &mut Vec<GeneratedSymbol>,
    ) {
        let mut g = gcols.clone();
        g.reverse();
        out.push(GeneratedSymbol {
            residue: ResidueSymbol {
                columns: rcols.clone(),
            },
            mullineux: MullineuxSymbol { columns: g },
        });
        let last = *rcols.last().expect("non-empty walk");
        let inner = *gcols.last().expect("non-empty walk");
        for e in graph.out_edges(last) {
            let Some(next) = next_mullineux_column(Some(inner), e.to, graph.p) else {
                continue;
            };
            if size + next.a > nmax {
                continue;
            }
            rcols.push(e.to);
            gcols.push(next);
            walk(graph, nmax, size + next.a, rcols, gcols, out);
            rcols.pop();
            gcols.pop();
        }
    }

    let mut out = Vec::new();
    for s in &graph.starts {
        let Some(first) = next_mullineux_column(None, s.col, graph.p) else {
            continue;
        };
        if first.a > nmax {
            continue;
        }
        walk(
            graph,
            nmax,
            first.a,
            &mut vec![s.col],
            &mut vec![first],
            &mut out,
        );
    }
    out
}

/// A JS-partition with p-core `mu` and weight `w`: `(pw)` for the empty core,
/// otherwise the rectangle's Mullineux symbol extended outwards by `w`
/// columns `(p, a)`.
pub fn js_witness(mu: CoreShape, w: u32, p: u32) -> Result<Partition> {
    check_odd(p)?;
    match mu {
        CoreShape::Empty => {
            if w == 0 {
                Ok(Partition::empty())
            } else {
                Partition::new(vec![p * w])
            }
        }
        CoreShape::Rect { l, a } => {
            if !mu.is_p_core(p) {
                return Err(Error::NotACore { l, a, p });
            }
            let inner = mullineux_symbol(&mu.to_partition(), p)?;
            let columns = std::iter::repeat_n(MullineuxColumn::new(p, a), w as usize)
                .chain(inner.columns)
                .collect();
            partition_of_symbol(&MullineuxSymbol { columns }, p)
        }
    }
}

/// Checks a partition against the core and weight it should have.
pub fn check_js_witness(lam: &Partition, mu: CoreShape, w: u32, p: u32) -> bool {
    let core_ok = CoreShape::from_partition(&p_core(lam, p)) == Some(mu);
    let n_ok = lam.n() == mu.size() + p * w;
    let js_ok = lam.is_empty() || is_js(lam, p).unwrap_or(false);
    core_ok && n_ok && js_ok
}

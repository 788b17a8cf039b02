//! Exhaustive verification suites over all p-regular partitions up to a size
//! bound. Each suite tallies passes and failures per property and keeps the
//! first counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cores::{classify_rect_nvector, n_vector_of, p_core, weight, CoreShape};
use crate::error::{Error, Result};
use crate::fixed_points::{
    build_fixed_js_graph, fixed_core, fixed_witness, is_fixed_js, largest_square_side, FixedWitness,
};
use crate::js_construction::{
    build_js_graph, classify_end_values, collapse_singular_runs, generate_js_symbols, is_js,
    js_by_sequence, js_core_at_column, js_core_from_length, js_type, weight_of_path, JsPath,
};
use crate::partitions::{enumerate_p_regular, enumerate_p_regular_up_to, Partition};
use crate::signatures::{
    analyze, mullineux_sequence, node_sequence, normal_nodes_block, SignatureSequence,
};
use crate::symbols::{
    is_mullineux_fixed, mullineux_map_g, mullineux_map_r, mullineux_symbol,
    n_vector_from_residue_symbol, partition_of_symbol, reconstruct_mullineux, residue_symbol,
    residue_symbol_is_fixed, residue_symbol_of, ResidueSymbol,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Roundtrip,
    Peaks,
    JsEquiv,
    Cores,
    Weights,
    Fixed,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Roundtrip,
        Suite::Peaks,
        Suite::JsEquiv,
        Suite::Cores,
        Suite::Weights,
        Suite::Fixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Peaks => "peaks",
            Suite::JsEquiv => "js-equiv",
            Suite::Cores => "cores",
            Suite::Weights => "weights",
            Suite::Fixed => "fixed",
            Suite::All => "all",
        }
    }

    fn needs_odd_p(self) -> bool {
        !matches!(self, Suite::Roundtrip | Suite::Peaks)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub property: String,
    pub pass: u64,
    pub fail: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub p: Vec<u32>,
    pub nmax: u32,
    pub properties: Vec<PropertyTally>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|t| t.fail == 0)
    }

    pub fn failures(&self) -> u64 {
        self.properties.iter().map(|t| t.fail).sum()
    }

    pub fn first_counterexample(&self) -> Option<(&str, &str)> {
        self.properties
            .iter()
            .find_map(|t| Some((t.property.as_str(), t.counterexample.as_deref()?)))
    }

    pub fn property(&self, name: &str) -> Option<&PropertyTally> {
        self.properties.iter().find(|t| t.property == name)
    }
}

/// Functions under test. Swapping one out lets a suite be checked against a
/// deliberately broken implementation.
#[derive(Clone, Copy)]
pub struct Probes {
    pub node_sequence: fn(&Partition, u32) -> SignatureSequence,
    pub mullineux_sequence: fn(&Partition, u32) -> Result<SignatureSequence>,
}

impl Default for Probes {
    fn default() -> Self {
        Probes {
            node_sequence,
            mullineux_sequence,
        }
    }
}

#[derive(Default)]
struct Tallies {
    order: Vec<String>,
    map: BTreeMap<String, PropertyTally>,
}

impl Tallies {
    fn check(&mut self, property: &str, ok: bool, witness: impl FnOnce() -> String) {
        if !self.map.contains_key(property) {
            self.order.push(property.to_string());
        }
        let t = self
            .map
            .entry(property.to_string())
            .or_insert_with(|| PropertyTally {
                property: property.to_string(),
                ..PropertyTally::default()
            });
        if ok {
            t.pass += 1;
        } else {
            t.fail += 1;
            if t.counterexample.is_none() {
                t.counterexample = Some(witness());
            }
        }
    }

    /// Records an operation that should not have errored.
    fn ok<T>(&mut self, property: &str, r: Result<T>, ctx: impl Fn() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(property, false, || format!("{}: {e}", ctx()));
                None
            }
        }
    }

    fn finish(mut self) -> Vec<PropertyTally> {
        self.order
            .iter()
            .map(|k| self.map.remove(k).expect("tally"))
            .collect()
    }
}

pub fn run_suite(suite: Suite, ps: &[u32], nmax: u32) -> Result<VerificationReport> {
    run_suite_with(suite, ps, nmax, Probes::default())
}

pub fn run_suite_with(
    suite: Suite,
    ps: &[u32],
    nmax: u32,
    probes: Probes,
) -> Result<VerificationReport> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for &p in ps {
        if p < 2 {
            return Err(Error::InvalidModulus(p));
        }
        if p < 3 && suites.iter().any(|s| s.needs_odd_p()) {
            return Err(Error::NeedsOddPrime(p));
        }
    }
    let mut t = Tallies::default();
    for &p in ps {
        let parts: Vec<Partition> = enumerate_p_regular_up_to(nmax, p)
            .filter(|l| !l.is_empty())
            .collect();
        for s in &suites {
            match s {
                Suite::Roundtrip => roundtrip(&mut t, p, &parts),
                Suite::Peaks => peaks(&mut t, p, &parts, probes),
                Suite::JsEquiv => js_equiv(&mut t, p, nmax, &parts),
                Suite::Cores => cores(&mut t, p, &parts),
                Suite::Weights => weights(&mut t, p, &parts),
                Suite::Fixed => fixed(&mut t, p, nmax, &parts),
                Suite::All => unreachable!("expanded above"),
            }
        }
    }
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        p: ps.to_vec(),
        nmax,
        properties: t.finish(),
    })
}

fn roundtrip(t: &mut Tallies, p: u32, parts: &[Partition]) {
    for lam in parts {
        let ctx = || format!("{lam} p={p}");
        let Some(g) = t.ok("symbol", mullineux_symbol(lam, p), ctx) else {
            continue;
        };
        t.check("symbol-inequalities", g.first_violation(p).is_none(), ctx);
        let back = partition_of_symbol(&g, p);
        t.check("lambda-g-lambda", back.as_ref() == Ok(lam), ctx);
        let r = residue_symbol(&g, p);
        let g2 = reconstruct_mullineux(&r, p);
        t.check("g-r-g", g2.as_ref() == Ok(&g), ctx);

        let img = mullineux_map_g(&g, p);
        t.check("map-involution", mullineux_map_g(&img, p) == g, ctx);
        t.check(
            "map-top-row",
            img.columns.iter().zip(&g.columns).all(|(a, b)| a.a == b.a),
            ctx,
        );
        let conj = partition_of_symbol(&img, p);
        let conj_ok = conj
            .as_ref()
            .ok()
            .and_then(|c| mullineux_symbol(c, p).ok())
            .is_some_and(|h| h == img);
        t.check("map-realizable", conj_ok, ctx);
        t.check(
            "map-r-commutes",
            residue_symbol(&img, p) == mullineux_map_r(&r, p),
            ctx,
        );
        t.check(
            "n-vector",
            n_vector_from_residue_symbol(&r, p) == n_vector_of(lam, p),
            ctx,
        );
        t.check(
            "fixed-criteria",
            residue_symbol_is_fixed(&r, p) == (img == g),
            ctx,
        );
    }
}

fn peaks(t: &mut Tallies, p: u32, parts: &[Partition], probes: Probes) {
    for lam in parts {
        let ctx = || format!("{lam} p={p}");
        let n = (probes.node_sequence)(lam, p);
        let Some(m) = t.ok("m-sequence", (probes.mullineux_sequence)(lam, p), ctx) else {
            continue;
        };
        let Some(block) = t.ok("block-normality", normal_nodes_block(lam, p), ctx) else {
            continue;
        };
        for a in 0..p {
            let (pn, pm) = (n.peak(a), m.peak(a));
            t.check("peak-equality", pn == pm, || {
                format!("{lam} p={p} α={a}: π(N)={pn} π(M)={pm}")
            });
            t.check("peak-equality-nonnegative", pn.max(0) == pm.max(0), || {
                format!("{lam} p={p} α={a}: π(N)={pn} π(M)={pm}")
            });
        }
        let (rn, rm) = (analyze(&n, p), analyze(&m, p));
        let residues = |x: &SignatureSequence, idx: Vec<usize>| -> BTreeSet<u32> {
            idx.into_iter().map(|i| x.entries[i].res).collect()
        };
        let nn = residues(&n, rn.normal_indices());
        let nm = residues(&m, rm.normal_indices());
        let nb: BTreeSet<u32> = block.residues.iter().copied().collect();
        t.check("normal-residues", nn == nm && nn == nb, ctx);
        let gn = residues(&n, rn.good_indices());
        let gm = residues(&m, rm.good_indices());
        let removable = lam.removable_nodes();
        let gb: BTreeSet<u32> = block
            .good
            .iter()
            .map(|&i| removable[i - 1].residue(p))
            .collect();
        t.check("good-residues", gn == gm && gn == gb, ctx);

        let mut hn: Vec<(u32, i64)> = rn
            .normal_indices()
            .into_iter()
            .map(|i| (n.entries[i].res, rn.height[i].unwrap_or(0)))
            .collect();
        let mut hb: Vec<(u32, i64)> = block
            .residues
            .iter()
            .zip(&block.heights)
            .map(|(&r, &h)| (r, i64::from(h)))
            .collect();
        hn.sort_unstable();
        hb.sort_unstable();
        t.check("normal-heights", hn == hb, ctx);
        let one_good = (0..p).all(|a| {
            let goods = rn
                .good_indices()
                .iter()
                .filter(|&&i| n.entries[i].res == a)
                .count();
            goods == usize::from(rn.peaks[a as usize] > 0)
        });
        t.check("one-good-per-peak", one_good, ctx);
    }
}

fn js_equiv(t: &mut Tallies, p: u32, nmax: u32, parts: &[Partition]) {
    let mut by_type: BTreeMap<u32, BTreeSet<ResidueSymbol>> = BTreeMap::new();
    for lam in parts {
        let ctx = || format!("{lam} p={p}");
        let Some(def) = t.ok("js-definition", is_js(lam, p), ctx) else {
            continue;
        };
        let report = analyze(&node_sequence(lam, p), p);
        let one_normal = report.normal_indices().len() == 1;
        let seq = js_by_sequence(lam, p).ok().flatten();
        t.check(
            "js-three-way",
            def == one_normal && def == seq.is_some(),
            ctx,
        );
        if def {
            let ty = js_type(lam, p).ok();
            t.check("js-type-sequence", seq == ty, ctx);
            let n = node_sequence(lam, p);
            let good: Vec<u32> = report
                .good_indices()
                .into_iter()
                .map(|i| n.entries[i].res)
                .collect();
            t.check(
                "good-residue-is-type",
                ty.is_some_and(|a| good == vec![a]),
                ctx,
            );
            if let (Some(a), Ok(rs)) = (ty, residue_symbol_of(lam, p)) {
                by_type.entry(a).or_default().insert(rs);
            }
        }
    }
    for alpha in 0..p {
        let ctx = || format!("p={p} α={alpha}");
        let Some(g) = t.ok("graph", build_js_graph(alpha, p), ctx) else {
            continue;
        };
        let generated = generate_js_symbols(&g, nmax);
        let gen_set: BTreeSet<ResidueSymbol> =
            generated.iter().map(|s| s.residue.clone()).collect();
        let empty = BTreeSet::new();
        let want = by_type.get(&alpha).unwrap_or(&empty);
        t.check("graph-completeness", &gen_set == want, || {
            let missing = want.difference(&gen_set).next();
            let extra = gen_set.difference(want).next();
            format!("p={p} α={alpha} missing={missing:?} extra={extra:?}")
        });
        for s in &generated {
            let ctx = || format!("p={p} α={alpha} {:?}", s.residue);
            let ev = classify_end_values(&s.residue, alpha, p);
            t.check("end-value-class", ev.is_ok(), ctx);
            let collapsed = collapse_singular_runs(&s.residue, alpha, p);
            t.check("singular-collapse", collapsed.is_ok(), ctx);
            let prefix_ok = (1..s.residue.len()).all(|k| {
                let prefix = ResidueSymbol {
                    columns: s.residue.columns[..k].to_vec(),
                };
                gen_set.contains(&prefix)
            });
            t.check("prefix-closure", prefix_ok, ctx);
        }
    }
}

fn cores(t: &mut Tallies, p: u32, parts: &[Partition]) {
    for lam in parts.iter().filter(|l| is_js(l, p).unwrap_or(false)) {
        let ctx = || format!("{lam} p={p}");
        let Some(alpha) = t.ok("js-type", js_type(lam, p), ctx) else {
            continue;
        };
        let core = CoreShape::from_partition(&p_core(lam, p));
        let shape_ok = match core {
            Some(CoreShape::Empty) => true,
            Some(CoreShape::Rect { l, a }) => (l + p - a % p) % p == alpha,
            None => false,
        };
        t.check("core-rectangular", shape_ok, ctx);
        let Some(rs) = t.ok("residue-symbol", residue_symbol_of(lam, p), ctx) else {
            continue;
        };
        let last = *rs.columns.last().expect("non-empty symbol");
        let at_col = js_core_at_column(last, alpha, p).ok();
        t.check("core-final-column", at_col.is_some() && at_col == core, ctx);
        let by_len = js_core_from_length(lam, p).ok();
        t.check("core-length", by_len.is_some() && by_len == core, ctx);
        let by_n = classify_rect_nvector(&n_vector_of(lam, p), p).ok();
        t.check("core-n-vector", by_n.is_some() && by_n == core, ctx);
    }
}

fn weights(t: &mut Tallies, p: u32, parts: &[Partition]) {
    let graphs: Vec<_> = (0..p).map(|a| build_js_graph(a, p)).collect();
    // For each edge, the level increases seen and the distinct prefixes
    // reaching it.
    let mut seen: BTreeMap<(u32, ResidueSymbol), (BTreeSet<u32>, usize)> = BTreeMap::new();
    for lam in parts.iter().filter(|l| is_js(l, p).unwrap_or(false)) {
        let ctx = || format!("{lam} p={p}");
        let (Ok(alpha), Ok(g)) = (js_type(lam, p), mullineux_symbol(lam, p)) else {
            t.check("weight-formula", false, ctx);
            continue;
        };
        let rs = residue_symbol(&g, p);
        let Ok(graph) = &graphs[alpha as usize] else {
            t.check("weight-formula", false, ctx);
            continue;
        };
        let Some(path) = t.ok("path", JsPath::of_symbol(&rs, graph), ctx) else {
            continue;
        };
        let w = weight_of_path(&path, graph);
        t.check(
            "weight-formula",
            w.as_ref().ok() == Some(&weight(lam, p)),
            ctx,
        );
        let k = rs.len();
        if k >= 2 {
            let (outer, inner) = (g.columns[0], g.columns[1]);
            let step = ResidueSymbol {
                columns: rs.columns[k - 2..].to_vec(),
            };
            let Some(edge) = graph.edge(rs.columns[k - 2], rs.columns[k - 1]) else {
                continue;
            };
            let rise = outer.a / p - inner.a / p;
            t.check("d-level-rise", rise == edge.d, ctx);
            let entry = seen.entry((alpha, step)).or_default();
            entry.0.insert(rise);
            entry.1 += 1;
        }
    }
    for ((alpha, step), (rises, prefixes)) in seen {
        if prefixes >= 2 {
            t.check("d-path-independent", rises.len() == 1, || {
                format!("p={p} α={alpha} edge {step:?} rises {rises:?}")
            });
        }
    }
}

fn fixed(t: &mut Tallies, p: u32, nmax: u32, parts: &[Partition]) {
    let Some(graph) = t.ok("fixed-graph", build_fixed_js_graph(p), || format!("p={p}")) else {
        return;
    };
    let generated: BTreeSet<ResidueSymbol> = generate_js_symbols(&graph, nmax)
        .into_iter()
        .map(|s| s.residue)
        .collect();
    let mut found = BTreeSet::new();
    for lam in parts {
        let ctx = || format!("{lam} p={p}");
        let mullineux_fixed = is_mullineux_fixed(lam, p).unwrap_or(false);
        if mullineux_fixed {
            t.check("fixed-even-weight", weight(lam, p).is_multiple_of(2), ctx);
        }
        if !(mullineux_fixed && is_js(lam, p).unwrap_or(false)) {
            continue;
        }
        t.check("fixed-type-0", js_type(lam, p) == Ok(0), ctx);
        let core = CoreShape::from_partition(&p_core(lam, p));
        let square = matches!(core, Some(CoreShape::Empty))
            || matches!(core, Some(CoreShape::Rect { l, a }) if l == a);
        t.check("fixed-square-core", square, ctx);
        if let Ok(rs) = residue_symbol_of(lam, p) {
            let last = *rs.columns.last().expect("non-empty symbol");
            t.check("fixed-core-table", fixed_core(last, p).ok() == core, ctx);
            found.insert(rs);
        }
    }
    t.check("fixed-characterization", generated == found, || {
        let missing = found.difference(&generated).next();
        let extra = generated.difference(&found).next();
        format!("p={p} missing={missing:?} extra={extra:?}")
    });

    let top = largest_square_side(p);
    for j in 0..=top {
        let mu = CoreShape::rect(j, j);
        for w in (0..=10).step_by(2) {
            let ctx = || format!("p={p} core=({j}^{j}) w={w}");
            match fixed_witness(w, mu, p) {
                Ok(FixedWitness::Found { partition, .. }) => {
                    let ok = is_fixed_js(&partition, p).unwrap_or(false)
                        && CoreShape::from_partition(&p_core(&partition, p)) == Some(mu)
                        && weight(&partition, p) == w;
                    t.check("fixed-witness", ok, ctx);
                }
                Ok(FixedWitness::Infeasible) => {
                    t.check("fixed-witness", w == 2 && j == top, ctx);
                }
                Err(e) => t.check("fixed-witness", false, || format!("{}: {e}", ctx())),
            }
        }
    }
    let mu = CoreShape::rect(top, top);
    let n = mu.size() + 2 * p;
    let hit = enumerate_p_regular(n, p).find(|lam| {
        is_fixed_js(lam, p).unwrap_or(false)
            && CoreShape::from_partition(&p_core(lam, p)) == Some(mu)
    });
    t.check("fixed-exception", hit.is_none(), || {
        format!(
            "p={p}: {} is fixed JS with core ({top}^{top}) and weight 2",
            hit.clone().unwrap_or_default()
        )
    });
}

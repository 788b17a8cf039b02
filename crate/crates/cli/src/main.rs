use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use mullineux::cores::{n_vector_of, p_core, weight, CoreShape};
use mullineux::fixed_points::{build_fixed_js_graph, fixed_witness, is_fixed_js, FixedWitness};
use mullineux::js_construction::{build_js_graph, is_js, js_type, js_witness, JsGraph};
use mullineux::signatures::{analyze, mullineux_sequence, node_sequence_nodes, SignatureSequence};
use mullineux::symbols::{
    is_mullineux_fixed, mullineux_conjugate, mullineux_symbol, residue_symbol_of,
};
use mullineux::verify::{run_suite, Suite, VerificationReport};
use mullineux::{Error, Partition};

#[derive(Parser)]
#[command(
    name = "mullineux",
    version,
    about = "Mullineux symbols and JS-partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of a partition as one JSON object.
    Analyze {
        partition: Partition,
        #[arg(long)]
        p: u32,
    },
    /// Mullineux image of a p-regular partition.
    Mullineux {
        partition: Partition,
        #[arg(long)]
        p: u32,
    },
    /// Construction graph of JS residue symbols.
    Graph {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        /// The subgraph for Mullineux-fixed JS-partitions.
        #[arg(long)]
        fixed: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// A JS-partition with a given rectangular p-core and weight.
    JsWitness {
        #[arg(long)]
        p: u32,
        /// Core as a partition literal such as `2^3`; empty for no core.
        #[arg(long, default_value = "")]
        core: Partition,
        #[arg(long)]
        weight: u32,
    },
    /// A Mullineux-fixed JS-partition with square core (j^j) and even weight.
    FixedWitness {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        weight: u32,
        /// Side of the square core; 0 for the empty core.
        #[arg(long, default_value_t = 0)]
        core: u32,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
        p: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        "expected one of roundtrip, peaks, js-equiv, cores, weights, fixed, all".into()
    })
}

enum Failure {
    Usage(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Analyze { partition, p } => Ok(pretty(&cmd_analyze(&partition, p)?)),
        Command::Mullineux { partition, p } => {
            let image = mullineux_conjugate(&partition, p)?;
            Ok(pretty(&versioned(json!({
                "partition": partition,
                "p": p,
                "image": image,
                "symbol": mullineux_symbol(&partition, p)?,
                "image_symbol": mullineux_symbol(&image, p)?,
                "fixed": image == partition,
            }))))
        }
        Command::Graph {
            p,
            alpha,
            fixed,
            format,
        } => Ok(cmd_graph(alpha, p, fixed, format)?),
        Command::JsWitness { p, core, weight: w } => {
            let mu = CoreShape::from_partition(&core).ok_or(Error::NotRectangular(
                core.parts().iter().map(|&x| i64::from(x)).collect(),
            ))?;
            let lam = js_witness(mu, w, p)?;
            Ok(pretty(&versioned(json!({
                "p": p,
                "core": core,
                "weight": w,
                "partition": lam,
            }))))
        }
        Command::FixedWitness { p, weight: w, core } => {
            let mu = if core == 0 {
                CoreShape::Empty
            } else {
                CoreShape::rect(core, core)
            };
            match fixed_witness(w, mu, p)? {
                FixedWitness::Infeasible => Ok("infeasible".to_string()),
                FixedWitness::Found { partition, symbol } => Ok(pretty(&versioned(json!({
                    "p": p,
                    "core": mu.to_partition(),
                    "weight": w,
                    "partition": partition,
                    "residue_symbol": symbol,
                })))),
            }
        }
        Command::Verify {
            suite,
            p,
            nmax,
            format,
        } => {
            let report = run_suite(suite, &p, nmax)?;
            let out = match format {
                ReportFormat::Json => pretty(&versioned(to_value(&report))),
                ReportFormat::Text => report_text(&report),
            };
            if report.passed() {
                Ok(out)
            } else {
                emit(&out);
                Err(Failure::Verification)
            }
        }
    }
}

fn cmd_analyze(lam: &Partition, p: u32) -> Result<Value, Error> {
    if p < 2 {
        return Err(Error::InvalidModulus(p));
    }
    let regular = lam.is_p_regular(p);
    let nodes = node_sequence_nodes(lam, p);
    let n_seq = SignatureSequence::new(nodes.iter().map(|&(_, e)| e).collect());
    let report = analyze(&n_seq, p);
    let node_list = |idx: Vec<usize>| -> Value {
        idx.into_iter()
            .map(|i| {
                let (node, e) = nodes[i];
                json!({"row": node.row, "col": node.col, "residue": e.res})
            })
            .collect()
    };
    let core = p_core(lam, p);
    let js = if regular { is_js(lam, p).ok() } else { None };
    let mut out = Map::new();
    out.insert("partition".into(), json!(lam));
    out.insert("p".into(), json!(p));
    out.insert("n".into(), json!(lam.n()));
    out.insert("p_regular".into(), json!(regular));
    out.insert("residue_diagram".into(), json!(lam.residue_diagram(p)));
    out.insert("content".into(), json!(lam.content(p)));
    out.insert("n_vector".into(), json!(n_vector_of(lam, p)));
    out.insert("core".into(), json!(core));
    out.insert("weight".into(), json!(weight(lam, p)));
    out.insert("mullineux_symbol".into(), field(mullineux_symbol(lam, p)));
    out.insert("residue_symbol".into(), field(residue_symbol_of(lam, p)));
    out.insert("node_sequence".into(), json!(n_seq.to_string()));
    out.insert(
        "mullineux_sequence".into(),
        field(mullineux_sequence(lam, p).map(|m| m.to_string())),
    );
    out.insert("normal_nodes".into(), node_list(report.normal_indices()));
    out.insert("good_nodes".into(), node_list(report.good_indices()));
    out.insert("js".into(), field(is_js(lam, p)));
    out.insert(
        "js_type".into(),
        match js {
            Some(true) => field(js_type(lam, p)),
            _ => Value::Null,
        },
    );
    out.insert("mullineux_image".into(), field(mullineux_conjugate(lam, p)));
    out.insert("fixed".into(), field(is_mullineux_fixed(lam, p)));
    let fixed_js = if p > 2 {
        field(is_fixed_js(lam, p))
    } else {
        Value::Null
    };
    out.insert("fixed_js".into(), fixed_js);
    Ok(versioned(Value::Object(out)))
}

fn cmd_graph(alpha: u32, p: u32, fixed: bool, format: GraphFormat) -> Result<String, Error> {
    let g: JsGraph = if fixed {
        build_fixed_js_graph(p)?
    } else {
        build_js_graph(alpha, p)?
    };
    Ok(match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => {
            let mut v = versioned(to_value(&g));
            v["fixed"] = json!(fixed);
            pretty(&v)
        }
    })
}

fn report_text(r: &VerificationReport) -> String {
    let ps: Vec<String> = r.p.iter().map(u32::to_string).collect();
    let mut lines = vec![format!(
        "suite {} p={} nmax={}",
        r.suite,
        ps.join(","),
        r.nmax
    )];
    for t in &r.properties {
        let status = if t.fail == 0 { "ok  " } else { "FAIL" };
        let mut line = format!(
            "{status} {:<28} pass={} fail={}",
            t.property, t.pass, t.fail
        );
        if let Some(c) = &t.counterexample {
            line.push_str(&format!("  first: {c}"));
        }
        lines.push(line);
    }
    lines.push(if r.passed() { "PASS" } else { "FAIL" }.to_string());
    lines.join("\n")
}

fn field<T: Serialize>(r: Result<T, Error>) -> Value {
    match r {
        Ok(v) => to_value(&v),
        Err(e) => json!({"error": e.to_string()}),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn versioned(v: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(1));
    if let Value::Object(m) = v {
        out.extend(m);
    }
    Value::Object(out)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

//! Command-line front end: graph classification, K-theory invariants,
//! splitting moves, shifted-matrix-algebra decisions, dimension-triple
//! arithmetic, and shift-equivalence tooling. Text reports by default,
//! machine-readable reports with --json, fully deterministic output.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use graded_k::abelian::{FgAbGroup, SubgroupPresentation};
use graded_k::dimension::{
    default_positivity_bound, dm_add, dm_equal, dm_positive, dm_shift, dm_unshift, sse_search,
    verify_se_witness, verify_sse_chain, DimensionTriple, PositivityResult, SseChain, SseStep,
};
use graded_k::error::KError;
use graded_k::graph::{classify, out_split, in_split, Graph, GraphTag, SplitPartition};
use graded_k::graphk::{
    k0_lpa, k0gr_graded_field, k0gr_graded_local, k0gr_lpa, k0gr_path_algebra,
    lpa_crossed_product, lpa_strongly_graded, lpa_structure, picgr_graded_field, KInvariant,
    LpaStructure,
};
use graded_k::linalg::IntMatrix;
use graded_k::shiftalg::{
    graded_iso, has_invertible_of_degree, is_crossed_product, is_strongly_graded,
    zero_component_blocks, ShiftedMatrixAlgebra,
};

const SCHEMA: &str = "graded-k/1";

#[derive(Parser)]
#[command(name = "graded-k", version, about = "Graded K-theory of graph algebras")]
struct Cli {
    /// Emit a machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Exit with code 3 when a decision procedure returns unknown
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph: acyclic, comet, or general, with sink/source data
    Classify(GraphArg),
    /// K0 of the Leavitt path algebra of a graph
    K0(GraphArg),
    /// Graded K0 of the Leavitt path algebra (or path algebra) of a graph
    K0gr(K0grArgs),
    /// Structural form of the Leavitt path algebra when one exists
    LpaStructure(GraphArg),
    /// Out-split a graph along a partition of outgoing edges
    SplitOut(SplitArgs),
    /// In-split a graph along a partition of incoming edges
    SplitIn(SplitArgs),
    /// Decide graded isomorphism of two shifted matrix algebras
    MatIso(MatIsoArgs),
    /// Block sizes of the degree-zero component of a shifted matrix algebra
    MatBlocks(AlgArg),
    /// Strongly-graded and crossed-product predicates for a graph or algebra
    Predicates(PredicatesArgs),
    /// Evaluate dimension-triple operations on elements
    DmEval(DmEvalArgs),
    /// Verify a shift-equivalence witness of a given lag
    SeVerify(SeVerifyArgs),
    /// Verify a strong-shift-equivalence chain of elementary steps
    SseVerify(SseVerifyArgs),
    /// Bounded search for a strong-shift-equivalence chain
    SseSearch(SseSearchArgs),
    /// Try to refute shift equivalence by comparing invariants
    SeRefute(PairArgs),
    /// Graded K0 and Picard group of a graded division or local ring
    GfieldK0gr(GfieldArgs),
}

#[derive(Args)]
struct GraphArg {
    /// Graph file with `v <name>` and `e <name> <src> <dst>` lines
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
struct K0grArgs {
    #[arg(long)]
    graph: String,
    /// Compute for the path algebra instead of the Leavitt path algebra
    #[arg(long)]
    path_algebra: bool,
}

#[derive(Args)]
struct SplitArgs {
    #[arg(long)]
    graph: String,
    /// Partition file: one `<vertex>: e1 e2 | e3` line per split vertex
    #[arg(long, conflicts_with_all = ["singleton", "trivial"])]
    partition: Option<String>,
    /// Use the finest partition (every edge its own block)
    #[arg(long, conflicts_with = "trivial")]
    singleton: bool,
    /// Use the coarsest partition (one block per vertex)
    #[arg(long)]
    trivial: bool,
}

#[derive(Args)]
struct MatIsoArgs {
    /// First algebra literal, e.g. "M5(K)(0,1,1,2,2)"
    a: String,
    /// Second algebra literal
    b: String,
}

#[derive(Args)]
struct AlgArg {
    /// Algebra literal, e.g. "M3(K[x^2,x^-2])(0,1,1)"
    alg: String,
}

#[derive(Args)]
struct PredicatesArgs {
    #[arg(long, conflicts_with = "alg")]
    graph: Option<String>,
    #[arg(long)]
    alg: Option<String>,
    /// Also test for an invertible homogeneous element of this degree
    #[arg(long, requires = "alg")]
    degree: Option<String>,
}

#[derive(Args)]
struct DmEvalArgs {
    /// Matrix file for the triple
    #[arg(long)]
    matrix: String,
    /// Operation: equal | add | shift | unshift | positive
    #[arg(long)]
    op: String,
    /// Element literals like "(1,-1)@0"; equal and add take two
    elements: Vec<String>,
    /// Exponent bound for positivity searches
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Args)]
struct SeVerifyArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    r: String,
    #[arg(long)]
    s: String,
    #[arg(long)]
    lag: u64,
}

#[derive(Args)]
struct SseVerifyArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// JSON chain file: a list of {"r": [[..]], "s": [[..]]} steps
    #[arg(long)]
    chain: String,
}

#[derive(Args)]
struct SseSearchArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 3)]
    max_inner_dim: usize,
    #[arg(long, default_value_t = 1)]
    max_entry: u64,
    #[arg(long, default_value_t = 3)]
    max_depth: usize,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct GfieldArgs {
    /// Grade group, e.g. "Z", "Z^2", "Z/2 x Z/4", "0"
    #[arg(long)]
    group: String,
    /// Support generators, element literals joined by ';', e.g. "(2)" or
    /// "(1,0);(0,1)"; empty string for the trivial subgroup
    #[arg(long)]
    subgroup: String,
    /// Treat the subgroup as the unit support of a graded local ring
    #[arg(long)]
    local: bool,
    /// Report the graded Picard group instead
    #[arg(long)]
    pic: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

struct Report {
    text: String,
    json: Value,
    exit_unknown: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, exit_unknown: false }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, KError> {
    let report = match &cli.command {
        Command::Classify(a) => cmd_classify(a)?,
        Command::K0(a) => cmd_k0(a)?,
        Command::K0gr(a) => cmd_k0gr(a)?,
        Command::LpaStructure(a) => cmd_structure(a)?,
        Command::SplitOut(a) => cmd_split(a, true)?,
        Command::SplitIn(a) => cmd_split(a, false)?,
        Command::MatIso(a) => cmd_mat_iso(a)?,
        Command::MatBlocks(a) => cmd_mat_blocks(a)?,
        Command::Predicates(a) => cmd_predicates(a)?,
        Command::DmEval(a) => cmd_dm_eval(a)?,
        Command::SeVerify(a) => cmd_se_verify(a)?,
        Command::SseVerify(a) => cmd_sse_verify(a)?,
        Command::SseSearch(a) => cmd_sse_search(a)?,
        Command::SeRefute(a) => cmd_se_refute(a)?,
        Command::GfieldK0gr(a) => cmd_gfield(a)?,
    };
    let rendered = if cli.json {
        let mut value = report.json;
        if let Value::Object(ref mut map) = value {
            map.insert("schema".into(), Value::String(SCHEMA.into()));
        }
        let mut s = serde_json::to_string_pretty(&value).expect("serializable report");
        s.push('\n');
        s
    } else {
        report.text
    };
    // a closed pipe downstream is not an error
    use std::io::Write as _;
    let _ = std::io::stdout().write_all(rendered.as_bytes());
    if report.exit_unknown && cli.strict {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn read_file(path: &str) -> Result<String, KError> {
    fs::read_to_string(path)
        .map_err(|e| KError::invalid(format!("cannot read {}: {}", path, e)))
}

fn load_graph(path: &str) -> Result<Graph, KError> {
    Graph::parse(&read_file(path)?)
}

fn load_matrix(path: &str) -> Result<IntMatrix, KError> {
    IntMatrix::parse(&read_file(path)?)
}

fn vertex_order_line(g: &Graph) -> String {
    format!("vertex order: {}\n", g.vertices().join(" "))
}

fn matrix_json(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                m.row(i)
                    .iter()
                    .map(|c| {
                        let text = c.to_string();
                        // entries outside the JSON number range become strings
                        serde_json::from_str(&text).unwrap_or(Value::String(text))
                    })
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn json_to_matrix(v: &Value) -> Result<IntMatrix, KError> {
    let rows = v
        .as_array()
        .ok_or_else(|| KError::invalid("matrix must be an array of rows"))?;
    let mut entries = Vec::new();
    let mut cols = None;
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| KError::invalid("matrix row must be an array"))?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(KError::invalid("matrix rows have unequal lengths"))
            }
            _ => {}
        }
        for cell in row {
            let text = match cell {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(KError::invalid("matrix entry must be an integer")),
            };
            entries.push(
                text.parse::<BigInt>()
                    .map_err(|_| KError::invalid(format!("bad matrix entry {:?}", text)))?,
            );
        }
    }
    let cols = cols.ok_or_else(|| KError::invalid("matrix has no rows"))?;
    if cols == 0 {
        return Err(KError::invalid("matrix has empty rows"));
    }
    IntMatrix::new(rows.len(), cols, entries)
}

fn group_json(g: &FgAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

fn invariant_json(inv: &KInvariant) -> Value {
    match inv {
        KInvariant::FreeGroupRingModule { rank, group, order_unit } => json!({
            "kind": "free_group_ring_module",
            "rank": rank,
            "group": group_json(group),
            "order_unit": order_unit.as_ref().map(|us| {
                us.iter().map(|u| u.to_string()).collect::<Vec<_>>()
            }),
        }),
        KInvariant::AbGroupPresentation { group, unit } => json!({
            "kind": "ab_group",
            "group": group_json(group),
            "unit_class": unit.to_string(),
        }),
        KInvariant::DimensionTripleInv { triple, unit } => json!({
            "kind": "dimension_triple",
            "matrix": matrix_json(triple.matrix()),
            "order_unit": unit.to_string(),
        }),
    }
}

fn cmd_classify(a: &GraphArg) -> Result<Report, KError> {
    let g = load_graph(&a.graph)?;
    let c = classify(&g);
    let mut text = vertex_order_line(&g);
    let (class_text, class_json) = match &c.tag {
        GraphTag::Acyclic => ("acyclic".to_string(), json!({"kind": "acyclic"})),
        GraphTag::Comet { cycle_len, cycle } => {
            let names: Vec<&str> =
                cycle.iter().map(|&v| g.vertices()[v].as_str()).collect();
            (
                format!("comet (cycle length {}: {})", cycle_len, names.join(" ")),
                json!({"kind": "comet", "cycle_length": cycle_len, "cycle": names}),
            )
        }
        GraphTag::Other => ("general".to_string(), json!({"kind": "general"})),
    };
    writeln!(text, "class: {}", class_text).unwrap();
    let sinks: Vec<&str> = g.sinks().iter().map(|&v| g.vertices()[v].as_str()).collect();
    let sources: Vec<&str> = (0..g.n_vertices())
        .filter(|&v| g.is_source(v))
        .map(|v| g.vertices()[v].as_str())
        .collect();
    writeln!(text, "sinks: {}", if sinks.is_empty() { "none".into() } else { sinks.join(" ") })
        .unwrap();
    writeln!(
        text,
        "sources: {}",
        if sources.is_empty() { "none".into() } else { sources.join(" ") }
    )
    .unwrap();
    writeln!(text, "essential: {}", if c.is_essential { "yes" } else { "no" }).unwrap();
    writeln!(text, "irreducible: {}", if c.is_irreducible { "yes" } else { "no" }).unwrap();
    let json = json!({
        "command": "classify",
        "vertex_order": g.vertices(),
        "class": class_json,
        "sinks": sinks,
        "sources": sources,
        "essential": c.is_essential,
        "irreducible": c.is_irreducible,
    });
    Ok(Report::new(text, json))
}

fn cmd_k0(a: &GraphArg) -> Result<Report, KError> {
    let g = load_graph(&a.graph)?;
    let inv = k0_lpa(&g)?;
    let (group, unit) = match &inv {
        KInvariant::AbGroupPresentation { group, unit } => (group, unit),
        _ => unreachable!("plain K-theory is an abelian group presentation"),
    };
    let mut text = vertex_order_line(&g);
    writeln!(text, "K0 = {}", group).unwrap();
    writeln!(text, "unit class = {}", unit).unwrap();
    let json = json!({
        "command": "k0",
        "vertex_order": g.vertices(),
        "k0": {
            "free_rank": group.free_rank(),
            "torsion": group.torsion().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "unit_class": unit.to_string(),
        },
    });
    Ok(Report::new(text, json))
}

fn cmd_k0gr(a: &K0grArgs) -> Result<Report, KError> {
    let g = load_graph(&a.graph)?;
    let inv = if a.path_algebra { k0gr_path_algebra(&g) } else { k0gr_lpa(&g)? };
    let mut text = vertex_order_line(&g);
    writeln!(text, "K0gr = {}", inv).unwrap();
    if let KInvariant::DimensionTripleInv { triple, .. } = &inv {
        writeln!(text, "matrix:").unwrap();
        writeln!(text, "{}", triple.matrix()).unwrap();
    }
    let json = json!({
        "command": "k0gr",
        "vertex_order": g.vertices(),
        "path_algebra": a.path_algebra,
        "k0gr": invariant_json(&inv),
    });
    Ok(Report::new(text, json))
}

fn structure_json(s: &LpaStructure) -> Value {
    match s {
        LpaStructure::MatricialOverK { blocks } => json!({
            "kind": "matricial_over_k",
            "blocks": blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        }),
        LpaStructure::CometMatrix { algebra } => json!({
            "kind": "comet_matrix",
            "algebra": algebra.to_string(),
        }),
        LpaStructure::General { reason } => json!({
            "kind": "general",
            "reason": reason,
        }),
    }
}

fn cmd_structure(a: &GraphArg) -> Result<Report, KError> {
    let g = load_graph(&a.graph)?;
    let s = lpa_structure(&g);
    let mut text = vertex_order_line(&g);
    writeln!(text, "structure: {}", s).unwrap();
    let json = json!({
        "command": "lpa-structure",
        "vertex_order": g.vertices(),
        "structure": structure_json(&s),
    });
    Ok(Report::new(text, json))
}

fn cmd_split(a: &SplitArgs, out: bool) -> Result<Report, KError> {
    let g = load_graph(&a.graph)?;
    let partition = if let Some(path) = &a.partition {
        SplitPartition::parse(&read_file(path)?)?
    } else if a.singleton {
        if out {
            SplitPartition::singleton_out(&g)
        } else {
            SplitPartition::singleton_in(&g)
        }
    } else if a.trivial {
        if out {
            SplitPartition::trivial_out(&g)
        } else {
            SplitPartition::trivial_in(&g)
        }
    } else {
        return Err(KError::invalid(
            "one of --partition, --singleton, --trivial is required",
        ));
    };
    let split = if out { out_split(&g, &partition)? } else { in_split(&g, &partition)? };
    let text = split.to_string();
    let json = json!({
        "command": if out { "split-out" } else { "split-in" },
        "vertex_order": split.vertices(),
        "graph": split.to_string(),
    });
    Ok(Report::new(text, json))
}

fn cmd_mat_iso(a: &MatIsoArgs) -> Result<Report, KError> {
    let alg_a = ShiftedMatrixAlgebra::parse(&a.a)?;
    let alg_b = ShiftedMatrixAlgebra::parse(&a.b)?;
    let witness = graded_iso(&alg_a, &alg_b)?;
    let mut text = String::new();
    match &witness {
        Some(w) => {
            writeln!(text, "graded isomorphic: yes").unwrap();
            writeln!(text, "witness: {}", w).unwrap();
        }
        None => writeln!(text, "graded isomorphic: no").unwrap(),
    }
    let json = json!({
        "command": "mat-iso",
        "isomorphic": witness.is_some(),
        "witness": witness.as_ref().map(|w| json!({
            "permutation": w.permutation.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "sigma": w.sigma.to_string(),
            "taus": w.taus.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })),
    });
    Ok(Report::new(text, json))
}

fn cmd_mat_blocks(a: &AlgArg) -> Result<Report, KError> {
    let alg = ShiftedMatrixAlgebra::parse(&a.alg)?;
    let blocks = zero_component_blocks(&alg)?;
    let mut text = String::new();
    writeln!(text, "algebra: {}", alg).unwrap();
    writeln!(
        text,
        "zero component blocks: {}",
        blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
    )
    .unwrap();
    let json = json!({
        "command": "mat-blocks",
        "algebra": alg.to_string(),
        "blocks": blocks,
    });
    Ok(Report::new(text, json))
}

fn cmd_predicates(a: &PredicatesArgs) -> Result<Report, KError> {
    if let Some(path) = &a.graph {
        let g = load_graph(path)?;
        let strongly = lpa_strongly_graded(&g);
        let crossed = lpa_crossed_product(&g)?;
        let mut text = vertex_order_line(&g);
        writeln!(text, "strongly graded: {}", if strongly { "yes" } else { "no" }).unwrap();
        writeln!(text, "crossed product: {}", if crossed { "yes" } else { "no" }).unwrap();
        let json = json!({
            "command": "predicates",
            "vertex_order": g.vertices(),
            "strongly_graded": strongly,
            "crossed_product": crossed,
        });
        return Ok(Report::new(text, json));
    }
    let literal = a
        .alg
        .as_ref()
        .ok_or_else(|| KError::invalid("one of --graph or --alg is required"))?;
    let alg = ShiftedMatrixAlgebra::parse(literal)?;
    let strongly = is_strongly_graded(&alg)?;
    let crossed = is_crossed_product(&alg)?;
    let mut text = String::new();
    writeln!(text, "algebra: {}", alg).unwrap();
    writeln!(text, "strongly graded: {}", if strongly { "yes" } else { "no" }).unwrap();
    writeln!(text, "crossed product: {}", if crossed { "yes" } else { "no" }).unwrap();
    let mut degree_json = Value::Null;
    if let Some(d) = &a.degree {
        let gamma = alg.base().grade_group().parse_element(d)?;
        let inv = has_invertible_of_degree(&alg, &gamma)?;
        writeln!(
            text,
            "invertible in degree {}: {}",
            gamma,
            if inv { "yes" } else { "no" }
        )
        .unwrap();
        degree_json = json!({"degree": gamma.to_string(), "invertible": inv});
    }
    let json = json!({
        "command": "predicates",
        "algebra": alg.to_string(),
        "strongly_graded": strongly,
        "crossed_product": crossed,
        "degree_test": degree_json,
    });
    Ok(Report::new(text, json))
}

fn cmd_dm_eval(a: &DmEvalArgs) -> Result<Report, KError> {
    let m = load_matrix(&a.matrix)?;
    let t = DimensionTriple::new(m)?;
    let need = match a.op.as_str() {
        "equal" | "add" => 2,
        "shift" | "unshift" | "positive" => 1,
        other => {
            return Err(KError::invalid(format!(
                "unknown operation {:?} (expected equal, add, shift, unshift, positive)",
                other
            )))
        }
    };
    if a.elements.len() != need {
        return Err(KError::invalid(format!(
            "operation {} takes {} element(s), got {}",
            a.op,
            need,
            a.elements.len()
        )));
    }
    let elements: Result<Vec<_>, KError> =
        a.elements.iter().map(|e| t.parse_element(e)).collect();
    let elements = elements?;
    let mut text = String::new();
    let mut exit_unknown = false;
    let result_json;
    match a.op.as_str() {
        "equal" => {
            let eq = dm_equal(&t, &elements[0], &elements[1])?;
            writeln!(text, "equal: {}", if eq { "yes" } else { "no" }).unwrap();
            result_json = json!({"equal": eq});
        }
        "add" => {
            let sum = dm_add(&t, &elements[0], &elements[1])?;
            writeln!(text, "sum = {}", sum).unwrap();
            result_json = json!({"sum": sum.to_string()});
        }
        "shift" => {
            let out = dm_shift(&t, &elements[0])?;
            writeln!(text, "shifted = {}", out).unwrap();
            result_json = json!({"shifted": out.to_string()});
        }
        "unshift" => {
            let out = dm_unshift(&t, &elements[0])?;
            writeln!(text, "unshifted = {}", out).unwrap();
            result_json = json!({"unshifted": out.to_string()});
        }
        "positive" => {
            let bound = a.bound.unwrap_or_else(|| default_positivity_bound(t.n()));
            let res = dm_positive(&t, &elements[0], bound)?;
            match &res {
                PositivityResult::Positive(w) => {
                    writeln!(text, "positive: yes (witness exponent {})", w).unwrap();
                    result_json = json!({"positive": "positive", "witness": w});
                }
                PositivityResult::Zero => {
                    writeln!(text, "positive: zero element").unwrap();
                    result_json = json!({"positive": "zero"});
                }
                PositivityResult::NotPositive(sign) => {
                    writeln!(text, "positive: no (Perron pairing {})", sign).unwrap();
                    result_json =
                        json!({"positive": "not_positive", "certificate": sign.to_string()});
                }
                PositivityResult::Unknown(b) => {
                    writeln!(text, "positive: unknown (bound {} exhausted)", b).unwrap();
                    result_json = json!({"positive": "unknown", "bound": b});
                    exit_unknown = true;
                }
            }
        }
        _ => unreachable!("operation validated above"),
    }
    let json = json!({
        "command": "dm-eval",
        "op": a.op,
        "result": result_json,
    });
    let mut report = Report::new(text, json);
    report.exit_unknown = exit_unknown;
    Ok(report)
}

fn cmd_se_verify(a: &SeVerifyArgs) -> Result<Report, KError> {
    let ma = load_matrix(&a.a)?;
    let mb = load_matrix(&a.b)?;
    let r = load_matrix(&a.r)?;
    let s = load_matrix(&a.s)?;
    let ok = verify_se_witness(&ma, &mb, &r, &s, a.lag)?;
    let text = format!("witness verified: {}\n", if ok { "yes" } else { "no" });
    let json = json!({
        "command": "se-verify",
        "lag": a.lag,
        "verified": ok,
    });
    Ok(Report::new(text, json))
}

fn parse_chain(text: &str) -> Result<SseChain, KError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| KError::invalid(format!("bad chain JSON: {}", e)))?;
    let arr = value
        .as_array()
        .ok_or_else(|| KError::invalid("chain must be a JSON array of steps"))?;
    let mut steps = Vec::new();
    for step in arr {
        let r = step
            .get("r")
            .ok_or_else(|| KError::invalid("chain step missing \"r\""))?;
        let s = step
            .get("s")
            .ok_or_else(|| KError::invalid("chain step missing \"s\""))?;
        steps.push(SseStep { r: json_to_matrix(r)?, s: json_to_matrix(s)? });
    }
    Ok(SseChain { steps })
}

fn chain_json(chain: &SseChain) -> Value {
    Value::Array(
        chain
            .steps
            .iter()
            .map(|st| json!({"r": matrix_json(&st.r), "s": matrix_json(&st.s)}))
            .collect(),
    )
}

fn cmd_sse_verify(a: &SseVerifyArgs) -> Result<Report, KError> {
    let ma = load_matrix(&a.a)?;
    let mb = load_matrix(&a.b)?;
    let chain = parse_chain(&read_file(&a.chain)?)?;
    let ok = verify_sse_chain(&ma, &mb, &chain)?;
    let text = format!("chain verified: {}\n", if ok { "yes" } else { "no" });
    let json = json!({
        "command": "sse-verify",
        "steps": chain.len(),
        "verified": ok,
    });
    Ok(Report::new(text, json))
}

fn cmd_sse_search(a: &SseSearchArgs) -> Result<Report, KError> {
    let ma = load_matrix(&a.a)?;
    let mb = load_matrix(&a.b)?;
    let found = sse_search(&ma, &mb, a.max_inner_dim, a.max_entry, a.max_depth)?;
    let mut text = String::new();
    let mut exit_unknown = false;
    match &found {
        Some(chain) => {
            writeln!(text, "chain found: {} step(s)", chain.len()).unwrap();
            for (i, step) in chain.steps.iter().enumerate() {
                writeln!(text, "step {} R:", i + 1).unwrap();
                writeln!(text, "{}", step.r).unwrap();
                writeln!(text, "step {} S:", i + 1).unwrap();
                writeln!(text, "{}", step.s).unwrap();
            }
        }
        None => {
            writeln!(text, "no chain found within bounds").unwrap();
            exit_unknown = true;
        }
    }
    let json = json!({
        "command": "sse-search",
        "found": found.is_some(),
        "chain": found.as_ref().map(chain_json),
    });
    let mut report = Report::new(text, json);
    report.exit_unknown = exit_unknown;
    Ok(report)
}

fn cmd_se_refute(a: &PairArgs) -> Result<Report, KError> {
    let ma = load_matrix(&a.a)?;
    let mb = load_matrix(&a.b)?;
    let refutation = graded_k::dimension::se_refute(&ma, &mb)?;
    let mut text = String::new();
    match &refutation {
        Some(r) => writeln!(text, "refuted: {}", r).unwrap(),
        None => writeln!(text, "no refutation found").unwrap(),
    }
    let json = json!({
        "command": "se-refute",
        "refuted": refutation.is_some(),
        "reason": refutation.as_ref().map(|r| r.to_string()),
    });
    Ok(Report::new(text, json))
}

fn cmd_gfield(a: &GfieldArgs) -> Result<Report, KError> {
    let group = FgAbGroup::parse(&a.group)?;
    let gens = if a.subgroup.trim().is_empty() {
        Vec::new()
    } else {
        let parts: Result<Vec<_>, KError> = a
            .subgroup
            .split(';')
            .map(|p| group.parse_element(p))
            .collect();
        parts?
    };
    let sub = SubgroupPresentation::new(group.clone(), gens)?;
    if a.pic {
        let pic = picgr_graded_field(&group, &sub)?;
        let text = format!("Picgr = {}\n", pic);
        let json = json!({
            "command": "gfield-k0gr",
            "pic": group_json(&pic),
        });
        return Ok(Report::new(text, json));
    }
    let inv = if a.local {
        k0gr_graded_local(&group, &sub)?
    } else {
        k0gr_graded_field(&group, &sub)?
    };
    let text = format!("K0gr = {}\n", inv);
    let json = json!({
        "command": "gfield-k0gr",
        "local": a.local,
        "k0gr": invariant_json(&inv),
    });
    Ok(Report::new(text, json))
}

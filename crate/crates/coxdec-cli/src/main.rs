//! coxdec: classify Coxeter systems, emit their direct-product
//! factorizations, and cross-check against group- and Lie-theoretic
//! oracles. JSON on stdout by default; one line per input.

mod parse;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxdec_core::coxeter::{
    build_group, classify, to_dot, CoxKind, CoxeterError, CoxeterSystem, ReflectionGroup,
    DEFAULT_CLOSURE_BUDGET,
};
use coxdec_core::decomp::{
    cross_validate, decompose, CrossError, DecompFactor, FactorSize,
};
use coxdec_core::exact::{CycloNumber, ExactError, DEFAULT_SIGN_BUDGET_BITS};
use coxdec_core::grouptheory::{
    kn_free, remak_decompose, CayleyGroup, GroupError, Subgroup, DEFAULT_LATTICE_CAP,
    DEFAULT_QM_ORDER_BOUND,
};
use coxdec_core::liealg::{decompose_ideals, of_algebra, IdealVerdict, LieAlgebra, OfSignature};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser)]
#[command(name = "coxdec", version, about = "Coxeter system classification and decomposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (json is the default machine format; dot only for
    /// `graph`).
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Element budget for group closure (env COXDEC_CLOSURE_BUDGET).
    #[arg(long, global = true)]
    closure_budget: Option<usize>,
    /// Precision budget in bits for certified signs (env COXDEC_SIGN_BITS).
    #[arg(long, global = true)]
    sign_bits: Option<u64>,
    /// Group-order bound for subgroup searches (env COXDEC_ORDER_BOUND).
    #[arg(long, global = true)]
    order_bound: Option<usize>,
    /// Normal-lattice size cap (env COXDEC_LATTICE_CAP).
    #[arg(long, global = true)]
    lattice_cap: Option<usize>,
    /// Wall-time budget in seconds (env COXDEC_WALL_TIME).
    #[arg(long, global = true)]
    wall_time: Option<u64>,
    /// Parallel jobs for multi-input runs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Tits-form signature of each input system.
    Signature { inputs: Vec<PathBuf> },
    /// Finite / affine / indefinite classification with type recognition.
    Classify { inputs: Vec<PathBuf> },
    /// Connected components with their classifications.
    Components { inputs: Vec<PathBuf> },
    /// Canonical direct-product factorization by the rule table.
    Decompose { inputs: Vec<PathBuf> },
    /// Rule-table factorization checked against the Remak oracle.
    CrossValidate { inputs: Vec<PathBuf> },
    /// Enumerate the reflection group of a finite system.
    BuildGroup { inputs: Vec<PathBuf> },
    /// Remak decomposition of a Cayley-table group.
    Remak { inputs: Vec<PathBuf> },
    /// Center of a Cayley-table group.
    Center { inputs: Vec<PathBuf> },
    /// Hypercenter (limit of the upper central series).
    Hypercenter { inputs: Vec<PathBuf> },
    /// Intersection of all normal subgroups of index at most n.
    Kn {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        n: u64,
    },
    /// k_n of the free group of the given rank, by kernel enumeration.
    KnFree {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u64,
    },
    /// Largest minimal proper-normal index over nontrivial subgroups.
    QmBound { inputs: Vec<PathBuf> },
    /// Structure constants of of(B) for a signature (p, q, r).
    LieOf {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
    },
    /// Centroid-based ideal decomposition of a structure-constant file.
    LieDecompose { inputs: Vec<PathBuf> },
    /// Labeled Coxeter graph (JSON wrapper or raw DOT).
    Graph { inputs: Vec<PathBuf> },
}

struct Budgets {
    closure: usize,
    sign_bits: u64,
    order_bound: usize,
    lattice_cap: usize,
    wall_time: Option<u64>,
}

fn env_parse<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

enum CliError {
    Parse(String),
    Budget(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Budget(m) | CliError::Internal(m) => m,
        }
    }
}

fn from_coxeter(e: CoxeterError) -> CliError {
    match e {
        CoxeterError::Validation { .. } | CoxeterError::Disconnected | CoxeterError::NotFinite => {
            CliError::Parse(e.to_string())
        }
        CoxeterError::BudgetExceeded { .. } | CoxeterError::TableTooLarge { .. } => {
            CliError::Budget(e.to_string())
        }
        CoxeterError::Exact(ref ex) => from_exact_ref(ex, e.to_string()),
        CoxeterError::Internal(_) => CliError::Internal(e.to_string()),
    }
}

fn from_exact_ref(e: &ExactError, msg: String) -> CliError {
    match e {
        ExactError::BudgetExceeded { .. } => CliError::Budget(msg),
        _ => CliError::Internal(msg),
    }
}

fn from_group(e: GroupError) -> CliError {
    match e {
        GroupError::SizeBound { .. }
        | GroupError::LatticeCap { .. }
        | GroupError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    }
}

fn from_cross(e: CrossError) -> CliError {
    match e {
        CrossError::Coxeter(c) => from_coxeter(c),
        CrossError::Group(g) => from_group(g),
        CrossError::Mismatch(m) => CliError::Internal(m),
    }
}

// -- JSON emission ----------------------------------------------------------

fn system_json(cs: &CoxeterSystem) -> Value {
    let n = cs.rank();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            let row: Vec<Value> = (0..n)
                .map(|j| match cs.label(i, j) {
                    Some(m) => json!(m),
                    None => json!("inf"),
                })
                .collect();
            json!(row)
        })
        .collect();
    json!({ "rank": n, "matrix": rows })
}

fn signature_json(s: &coxdec_core::exact::Signature) -> Value {
    json!({ "p": s.p, "q": s.q, "r": s.r })
}

fn kind_str(k: CoxKind) -> &'static str {
    match k {
        CoxKind::Finite => "Finite",
        CoxKind::Affine => "Affine",
        CoxKind::IndefiniteInfinite => "IndefiniteInfinite",
    }
}

fn rat_str(q: &num_rational::BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn cyclo_json(v: &CycloNumber, bits: u64) -> Value {
    let coeffs: Vec<String> = v.coeffs().iter().map(rat_str).collect();
    json!({
        "conductor": v.conductor(),
        "coeffs": coeffs,
        "preview": v.decimal_preview(bits.min(256)),
    })
}

fn factor_json(f: &DecompFactor) -> Value {
    json!({
        "size": match f.size {
            FactorSize::Finite(o) => json!(o),
            FactorSize::Infinite => json!("infinite"),
        },
        "label": f.label,
        "central": f.central,
        "rule": format!("{:?}", f.rule),
        "provenance": format!("{:?}", f.provenance),
    })
}

fn subgroup_json(g: &CayleyGroup, s: &Subgroup) -> Value {
    json!({
        "order": g.order(),
        "subgroup_order": s.len(),
        "members": s.members(),
    })
}

// -- command execution ------------------------------------------------------

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_coxeter(path: &PathBuf, format: Option<Format>) -> Result<CoxeterSystem, CliError> {
    let src = read_input(path)?;
    let json_input = matches!(format, Some(Format::Json))
        || path.extension().is_some_and(|e| e == "json");
    let parsed = if json_input {
        parse::parse_coxeter_json(&src)
    } else {
        parse::parse_coxeter_text(&src)
    };
    parsed.map_err(|d| CliError::Parse(format!("{}: {d}", path.display())))
}

fn load_cayley(path: &PathBuf) -> Result<CayleyGroup, CliError> {
    let src = read_input(path)?;
    parse::parse_cayley_text(&src).map_err(|d| CliError::Parse(format!("{}: {d}", path.display())))
}

fn load_lie(path: &PathBuf) -> Result<LieAlgebra, CliError> {
    let src = read_input(path)?;
    parse::parse_lie_json(&src).map_err(|d| CliError::Parse(format!("{}: {d}", path.display())))
}

fn build_group_json(rg: &ReflectionGroup, bits: u64) -> Value {
    let n = rg.rank;
    let gens: Vec<Value> = rg
        .generators
        .iter()
        .map(|m| {
            let rows: Vec<Value> = (0..n)
                .map(|r| {
                    let row: Vec<Value> =
                        (0..n).map(|c| cyclo_json(&m[c * n + r], bits)).collect();
                    json!(row)
                })
                .collect();
            json!(rows)
        })
        .collect();
    json!({ "order": rg.order, "rank": n, "generators": gens })
}

fn run_one(cli: &Cli, budgets: &Budgets, path: &PathBuf) -> Result<String, CliError> {
    let fmt = cli.format.unwrap_or(Format::Json);
    if fmt == Format::Dot && !matches!(cli.command, Command::Graph { .. }) {
        return Err(CliError::Parse("dot format is only valid for `graph`".into()));
    }
    let out = match &cli.command {
        Command::Signature { .. } => {
            let cs = load_coxeter(path, cli.format)?;
            let form = cs.tits_form().map_err(|e| from_exact_ref(&e, e.to_string()))?;
            let sig = form
                .signature_with_budget(budgets.sign_bits)
                .map_err(|e| from_exact_ref(&e, e.to_string()))?;
            let v = json!({ "system": system_json(&cs), "signature": signature_json(&sig) });
            match fmt {
                Format::Text => format!("signature ({}, {}, {})", sig.p, sig.q, sig.r),
                _ => v.to_string(),
            }
        }
        Command::Classify { .. } => {
            let cs = load_coxeter(path, cli.format)?;
            let cls = classify(&cs).map_err(from_coxeter)?;
            let v = json!({
                "system": system_json(&cs),
                "kind": kind_str(cls.kind),
                "signature": signature_json(&cls.signature),
                "type": cls.type_name.as_ref().map(|t| t.to_string()),
            });
            match fmt {
                Format::Text => format!(
                    "{} ({}, {}, {}){}",
                    kind_str(cls.kind),
                    cls.signature.p,
                    cls.signature.q,
                    cls.signature.r,
                    cls.type_name
                        .as_ref()
                        .map(|t| format!(", type {t}"))
                        .unwrap_or_default()
                ),
                _ => v.to_string(),
            }
        }
        Command::Components { .. } => {
            let cs = load_coxeter(path, cli.format)?;
            let mut comps = Vec::new();
            for (vertices, sub) in cs.components() {
                let cls = classify(&sub).map_err(from_coxeter)?;
                comps.push(json!({
                    "vertices": vertices,
                    "system": system_json(&sub),
                    "kind": kind_str(cls.kind),
                    "type": cls.type_name.as_ref().map(|t| t.to_string()),
                }));
            }
            let v = json!({ "system": system_json(&cs), "components": comps });
            match fmt {
                Format::Text => format!("{} components", comps_len(&v)),
                _ => v.to_string(),
            }
        }
        Command::Decompose { .. } => {
            let cs = load_coxeter(path, cli.format)?;
            let dec = decompose(&cs).map_err(from_coxeter)?;
            let factors: Vec<Value> = dec.factors.iter().map(factor_json).collect();
            let v = json!({ "system": system_json(&cs), "factors": factors });
            match fmt {
                Format::Text => dec
                    .factors
                    .iter()
                    .map(|f| match f.size {
                        FactorSize::Finite(o) => {
                            format!("{}{}", o, if f.central { " (central)" } else { "" })
                        }
                        FactorSize::Infinite => format!("infinite [{}]", f.label),
                    })
                    .collect::<Vec<_>>()
                    .join(" x "),
                _ => v.to_string(),
            }
        }
        Command::CrossValidate { .. } => {
            let cs = load_coxeter(path, cli.format)?;
            let rep = cross_validate(&cs, budgets.closure).map_err(from_cross)?;
            let pairs: Vec<Value> = rep
                .pairs
                .iter()
                .map(|(rule, oracle)| {
                    json!({
                        "rule": factor_json(rule),
                        "oracle": {
                            "order": oracle.order,
                            "family": oracle.family.as_ref().map(|f| format!("{f:?}")),
                        },
                    })
                })
                .collect();
            let v = json!({
                "system": system_json(&cs),
                "group_order": rep.group_order,
                "pairs": pairs,
            });
            match fmt {
                Format::Text => format!("group order {}, {} factors matched", rep.group_order, rep.pairs.len()),
                _ => v.to_string(),
            }
        }
        Command::BuildGroup { .. } => {
            let cs = load_coxeter(path, cli.format)?;
            let rg = build_group(&cs, budgets.closure).map_err(from_coxeter)?;
            let v = build_group_json(&rg, budgets.sign_bits);
            match fmt {
                Format::Text => format!("order {}", rg.order),
                _ => v.to_string(),
            }
        }
        Command::Graph { .. } => {
            let cs = load_coxeter(path, cli.format)?;
            let dot = to_dot(&cs);
            match fmt {
                Format::Dot => dot,
                Format::Text => dot,
                Format::Json => json!({ "system": system_json(&cs), "dot": dot }).to_string(),
            }
        }
        Command::Remak { .. } => {
            let g = load_cayley(path)?;
            let dec = remak_decompose(&g, budgets.lattice_cap).map_err(from_group)?;
            let factors: Vec<Value> = dec
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "order": f.label.order,
                        "family": f.label.family.as_ref().map(|x| format!("{x:?}")),
                    })
                })
                .collect();
            let v = json!({ "order": g.order(), "factors": factors });
            match fmt {
                Format::Text => dec
                    .factors
                    .iter()
                    .map(|f| f.label.order.to_string())
                    .collect::<Vec<_>>()
                    .join(" x "),
                _ => v.to_string(),
            }
        }
        Command::Center { .. } => {
            let g = load_cayley(path)?;
            let v = subgroup_json(&g, &g.center());
            match fmt {
                Format::Text => v["subgroup_order"].to_string(),
                _ => v.to_string(),
            }
        }
        Command::Hypercenter { .. } => {
            let g = load_cayley(path)?;
            let v = subgroup_json(&g, &g.hypercenter());
            match fmt {
                Format::Text => v["subgroup_order"].to_string(),
                _ => v.to_string(),
            }
        }
        Command::Kn { n, .. } => {
            let g = load_cayley(path)?;
            let (kernel, kn) = g.kn(*n, budgets.lattice_cap).map_err(from_group)?;
            let v = json!({
                "order": g.order(),
                "n": n,
                "kn": kn,
                "kernel_order": kernel.len(),
            });
            match fmt {
                Format::Text => kn.to_string(),
                _ => v.to_string(),
            }
        }
        Command::QmBound { .. } => {
            let g = load_cayley(path)?;
            let qm = g
                .qm_bound(budgets.order_bound, budgets.lattice_cap)
                .map_err(from_group)?;
            let v = json!({ "order": g.order(), "qm_bound": qm });
            match fmt {
                Format::Text => qm.to_string(),
                _ => v.to_string(),
            }
        }
        Command::LieDecompose { .. } => {
            let l = load_lie(path)?;
            let verdict = decompose_ideals(&l).map_err(|e| CliError::Parse(e.to_string()))?;
            let v = match &verdict {
                IdealVerdict::Split(ideals) => {
                    let js: Vec<Value> = ideals
                        .iter()
                        .map(|basis| {
                            let rows: Vec<Vec<String>> = basis
                                .iter()
                                .map(|v| v.iter().map(rat_str).collect())
                                .collect();
                            json!(rows)
                        })
                        .collect();
                    json!({ "dim": l.dim(), "verdict": "Split", "ideals": js })
                }
                IdealVerdict::CertifiedIndecomposable => {
                    json!({ "dim": l.dim(), "verdict": "CertifiedIndecomposable" })
                }
                IdealVerdict::Inconclusive => {
                    json!({ "dim": l.dim(), "verdict": "Inconclusive" })
                }
            };
            match fmt {
                Format::Text => v["verdict"].as_str().unwrap_or_default().to_string(),
                _ => v.to_string(),
            }
        }
        Command::KnFree { .. } | Command::LieOf { .. } => unreachable!("inputless commands"),
    };
    Ok(out)
}

fn comps_len(v: &Value) -> usize {
    v["components"].as_array().map_or(0, Vec::len)
}

fn run_inputless(cli: &Cli, budgets: &Budgets) -> Result<String, CliError> {
    let fmt = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::KnFree { g, n } => {
            let out = kn_free(*g, *n, budgets.closure).map_err(from_group)?;
            let v = json!({ "g": g, "n": n, "kn": out.kn, "kernels": out.kernels });
            Ok(match fmt {
                Format::Text => out.kn.to_string(),
                _ => v.to_string(),
            })
        }
        Command::LieOf { p, q, r } => {
            let alg = of_algebra(OfSignature { p: *p, q: *q, r: *r });
            let d = alg.dim();
            let mut brackets = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let c = alg.structure_constant(i, j, k);
                        if !num_traits_is_zero(c) {
                            brackets.push(json!([i, j, k, rat_str(c)]));
                        }
                    }
                }
            }
            let v = json!({ "p": p, "q": q, "r": r, "dim": d, "brackets": brackets });
            Ok(match fmt {
                Format::Text => format!("dim {d}, {} nonzero brackets", brackets.len()),
                _ => v.to_string(),
            })
        }
        _ => unreachable!(),
    }
}

fn num_traits_is_zero(q: &num_rational::BigRational) -> bool {
    use num_bigint::BigInt;
    q.numer() == &BigInt::from(0)
}

fn inputs_of(cmd: &Command) -> Option<&[PathBuf]> {
    match cmd {
        Command::Signature { inputs }
        | Command::Classify { inputs }
        | Command::Components { inputs }
        | Command::Decompose { inputs }
        | Command::CrossValidate { inputs }
        | Command::BuildGroup { inputs }
        | Command::Remak { inputs }
        | Command::Center { inputs }
        | Command::Hypercenter { inputs }
        | Command::Kn { inputs, .. }
        | Command::QmBound { inputs }
        | Command::LieDecompose { inputs }
        | Command::Graph { inputs } => Some(inputs),
        Command::KnFree { .. } | Command::LieOf { .. } => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = Budgets {
        closure: cli
            .closure_budget
            .or_else(|| env_parse("COXDEC_CLOSURE_BUDGET"))
            .unwrap_or(DEFAULT_CLOSURE_BUDGET),
        sign_bits: cli
            .sign_bits
            .or_else(|| env_parse("COXDEC_SIGN_BITS"))
            .unwrap_or(DEFAULT_SIGN_BUDGET_BITS),
        order_bound: cli
            .order_bound
            .or_else(|| env_parse("COXDEC_ORDER_BOUND"))
            .unwrap_or(DEFAULT_QM_ORDER_BOUND),
        lattice_cap: cli
            .lattice_cap
            .or_else(|| env_parse("COXDEC_LATTICE_CAP"))
            .unwrap_or(DEFAULT_LATTICE_CAP),
        wall_time: cli.wall_time.or_else(|| env_parse("COXDEC_WALL_TIME")),
    };
    let start = Instant::now();
    let fail = |e: CliError| -> ExitCode {
        eprintln!("error: {}", e.message());
        ExitCode::from(e.code())
    };
    let Some(inputs) = inputs_of(&cli.command) else {
        return match run_inputless(&cli, &budgets) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        };
    };
    if inputs.is_empty() {
        eprintln!("error: no input files given");
        return ExitCode::from(2);
    }
    // Fan out over inputs; results are printed in input order.
    let jobs = cli.jobs.max(1);
    let mut results: Vec<Option<Result<String, CliError>>> = Vec::new();
    results.resize_with(inputs.len(), || None);
    for chunk_start in (0..inputs.len()).step_by(jobs) {
        if let Some(limit) = budgets.wall_time {
            if start.elapsed().as_secs() >= limit {
                return fail(CliError::Budget(format!(
                    "wall-time budget of {limit} s exhausted"
                )));
            }
        }
        let end = (chunk_start + jobs).min(inputs.len());
        let chunk: Vec<(usize, &PathBuf)> =
            (chunk_start..end).map(|i| (i, &inputs[i])).collect();
        let outputs: Vec<(usize, Result<String, CliError>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .into_iter()
                .map(|(i, path)| {
                    let cli = &cli;
                    let budgets = &budgets;
                    scope.spawn(move || (i, run_one(cli, budgets, path)))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (i, r) in outputs {
            results[i] = Some(r);
        }
    }
    for r in results {
        match r.unwrap() {
            Ok(s) => println!("{s}"),
            Err(e) => return fail(e),
        }
    }
    ExitCode::SUCCESS
}

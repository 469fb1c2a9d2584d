//! Command-line front end: structure checks, solving, certification,
//! configuration verification, proof replays, and discharging audits over
//! the JSON file formats.
//!
//! Reports are JSON on stdout (or `--out FILE`), deterministic for fixed
//! inputs and flags. Exit codes: 0 success/certified/SAT, 1
//! counterexample/UNSAT/violations, 2 usage or input errors. Errors are
//! structured JSON objects on stderr.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use dpcolor::dp_cover::{instance_to_json, parse_instance_json, ListAssignment, MatchingAssignment};
use dpcolor::discharging::{run_discharging, RuleSet};
use dpcolor::plane_graph::{CycleRef, NineCycleClass, PlaneGraph};
use dpcolor::reducibility::{
    builtin, builtin_bad9_templates, replay_identification_proof, verify_configuration,
};
use dpcolor::solver::{
    certify_dp_k, certify_extension, certify_extension_instance, solve, CertifyMode,
    CertifyOptions, CertifyVerdict,
};
use dpcolor::configuration::Configuration;

const SCHEMA: &str = "dpcolor/v1";
const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "dpcolor",
    version,
    about = "DP-coloring engine and discharging auditor for plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle spectrum, triangle distance, separating cycles, chords, and
    /// hypothesis verdicts for a graph file.
    Structure { graph: PathBuf },
    /// Decide one instance: graph file plus lists/matchings file.
    Solve { graph: PathBuf, instance: PathBuf },
    /// Certify DP-k-colorability by enumerating matching assignments.
    Certify {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: u8,
        /// Sample this many assignments instead of exhausting the space.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Fix the first edge's matching to the identity.
        #[arg(long)]
        symmetry: bool,
    },
    /// Certify that every precoloring of the outer cycle extends; with an
    /// instance file, check just that instance.
    Extend {
        graph: PathBuf,
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        k: u8,
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Verify a configuration by name (built-in) or from a file: ordering
    /// check, greedy-vs-oracle agreement, or the identification replay.
    Reduce {
        config: String,
        #[arg(long, default_value_t = 3)]
        k: u8,
    },
    /// Run a discharging rule system and audit the outcome.
    Discharge {
        graph: PathBuf,
        #[arg(long, value_parser = parse_rules)]
        rules: RuleSet,
        /// Refuse graphs violating the rule system's structural hypotheses.
        #[arg(long)]
        strict: bool,
        /// Print the transfer log to stderr in application order.
        #[arg(long)]
        trace: bool,
    },
}

fn parse_rules(text: &str) -> Result<RuleSet, String> {
    RuleSet::parse(text).ok_or_else(|| format!("unknown rule set {text:?}; use section-2 or section-3"))
}

struct CliError {
    message: String,
    detail: Value,
}

impl CliError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            detail: Value::Null,
        }
    }

    fn with_detail(message: impl Into<String>, detail: Value) -> Self {
        Self {
            message: message.into(),
            detail,
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::new(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!(
                            "{}",
                            json!({"error": {"message": format!("cannot write report: {e}")}})
                        );
                        return ExitCode::from(2);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(e) => {
            let obj = json!({"error": {"message": e.message, "detail": e.detail}});
            eprintln!("{}", serde_json::to_string_pretty(&obj).expect("error serializes"));
            ExitCode::from(2)
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn read_text(path: &Path) -> Result<(String, Value), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(format!("cannot read {}: {e}", path.display())))?;
    let meta = json!({"path": path.display().to_string(), "sha256": sha256_hex(text.as_bytes())});
    Ok((text, meta))
}

fn read_graph(path: &Path) -> Result<(PlaneGraph, Value), CliError> {
    let (text, meta) = read_text(path)?;
    let g = PlaneGraph::from_json_str(&text)?;
    Ok((g, meta))
}

fn read_instance(path: &Path) -> Result<((ListAssignment, MatchingAssignment), Value), CliError> {
    let (text, meta) = read_text(path)?;
    Ok((parse_instance_json(&text)?, meta))
}

fn report(command: &str, inputs: Value, flags: Value, verdict: &str, payload: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "flags": flags,
        "verdict": verdict,
        "payload": payload,
    })
}

fn outer_cycle_of(g: &PlaneGraph) -> Result<CycleRef, CliError> {
    let outer = g
        .outer_cycle()
        .ok_or_else(|| CliError::new("graph file designates no outer cycle"))?;
    Ok(CycleRef::new(g, outer.to_vec())?)
}

fn run(cli: &Cli) -> Result<(Value, u8), CliError> {
    match &cli.command {
        Command::Structure { graph } => cmd_structure(graph),
        Command::Solve { graph, instance } => cmd_solve(graph, instance),
        Command::Certify {
            graph,
            k,
            sample,
            seed,
            symmetry,
        } => cmd_certify(graph, *k, *sample, *seed, *symmetry),
        Command::Extend {
            graph,
            instance,
            k,
            sample,
            seed,
        } => cmd_extend(graph, instance.as_deref(), *k, *sample, *seed),
        Command::Reduce { config, k } => cmd_reduce(config, *k),
        Command::Discharge {
            graph,
            rules,
            strict,
            trace,
        } => cmd_discharge(graph, *rules, *strict, *trace),
    }
}

fn cycle_value(c: &CycleRef) -> Value {
    json!(c.vertices())
}

fn cmd_structure(path: &Path) -> Result<(Value, u8), CliError> {
    let (g, meta) = read_graph(path)?;
    let mut cycle_counts = BTreeMap::new();
    let mut cycles_by_len = BTreeMap::new();
    for len in 3..=10usize {
        let cycles = g.cycles_of_length(len)?;
        cycle_counts.insert(len.to_string(), cycles.len());
        cycles_by_len.insert(len, cycles);
    }
    let dist = g.triangle_distance();

    let outer = g.outer_cycle().map(|c| c.to_vec());
    let outer_info = match &outer {
        None => Value::Null,
        Some(cycle) => {
            let c = CycleRef::new(&g, cycle.clone())?;
            let chordless = !g.has_chord(&c)?;
            let nine_class = if c.len() == 9 {
                match g.classify_9cycle(&c, &builtin_bad9_templates())? {
                    NineCycleClass::Good => json!("good"),
                    NineCycleClass::Bad { template } => json!({"bad": template}),
                }
            } else {
                Value::Null
            };
            json!({
                "cycle": cycle,
                "length": c.len(),
                "chordless": chordless,
                "nine_cycle_class": nine_class,
            })
        }
    };

    // separating cycles, relative to the designated outer face
    let separating = match &outer {
        None => Value::Null,
        Some(_) => {
            let templates = builtin_bad9_templates();
            let mut short = Vec::new();
            for len in [3usize, 6, 7, 8] {
                for c in &cycles_by_len[&len] {
                    if g.is_separating(c)? {
                        short.push(cycle_value(c));
                    }
                }
            }
            let mut good9 = Vec::new();
            for c in &cycles_by_len[&9] {
                if g.is_separating(c)?
                    && g.classify_9cycle(c, &templates)? == NineCycleClass::Good
                {
                    good9.push(cycle_value(c));
                }
            }
            let mut seven_to_ten = Vec::new();
            for len in 7..=10usize {
                for c in &cycles_by_len[&len] {
                    if g.is_separating(c)? {
                        seven_to_ten.push(cycle_value(c));
                    }
                }
            }
            json!({
                "lengths_3_6_7_8": short,
                "good_9": good9,
                "lengths_7_to_10": seven_to_ten,
            })
        }
    };

    let no4 = cycle_counts["4"] == 0;
    let no5 = cycle_counts["5"] == 0;
    let no6 = cycle_counts["6"] == 0;
    let dist_ok = |min: usize| dist.map_or(true, |d| d >= min);
    let outer_len = outer.as_ref().map(|c| c.len());
    let outer_good9 = matches!(
        outer_info.pointer("/nine_cycle_class"),
        Some(Value::String(s)) if s == "good"
    );
    let admissible_a = matches!(outer_len, Some(3 | 6 | 7 | 8)) || (outer_len == Some(9) && outer_good9);
    let admissible_b = matches!(outer_len, Some(7..=10));
    let hyp_a = json!({
        "description": "no {4,5}-cycles, triangle distance >= 3, outer cycle of length 3, 6, 7, 8 or a good 9-cycle",
        "no_4_cycles": no4,
        "no_5_cycles": no5,
        "triangle_distance_at_least_3": dist_ok(3),
        "outer_cycle_admissible": admissible_a,
        "satisfied": no4 && no5 && dist_ok(3) && admissible_a,
    });
    let hyp_b = json!({
        "description": "no {4,5,6}-cycles, triangle distance >= 2, outer cycle of length 7 to 10",
        "no_4_cycles": no4,
        "no_5_cycles": no5,
        "no_6_cycles": no6,
        "triangle_distance_at_least_2": dist_ok(2),
        "outer_cycle_admissible": admissible_b,
        "satisfied": no4 && no5 && no6 && dist_ok(2) && admissible_b,
    });

    let payload = json!({
        "vertex_count": g.vertex_count(),
        "edge_count": g.edge_count(),
        "cycle_counts": cycle_counts,
        "triangle_distance": dist,
        "outer": outer_info,
        "separating": separating,
        "hypotheses": {"no45_dist3": hyp_a, "no456_dist2": hyp_b},
    });
    Ok((
        report("structure", json!({"graph": meta}), json!({}), "ok", payload),
        0,
    ))
}

fn cmd_solve(graph: &Path, instance: &Path) -> Result<(Value, u8), CliError> {
    let (g, gmeta) = read_graph(graph)?;
    let ((l, m), imeta) = read_instance(instance)?;
    let cov = dpcolor::dp_cover::build_cover(&g.simple(), &l, &m)?;
    let r = solve(&cov, &dpcolor::dp_cover::PartialColoring::new())?;
    let verdict = if r.is_sat() { "SAT" } else { "UNSAT" };
    let witness: Value = match &r.witness {
        Some(w) => json!(w
            .iter()
            .map(|(v, c)| (v.to_string(), c))
            .collect::<BTreeMap<String, u8>>()),
        None => Value::Null,
    };
    let payload = json!({
        "witness": witness,
        "statistics": {"nodes_expanded": r.nodes_expanded},
    });
    let code = if r.is_sat() { 0 } else { 1 };
    Ok((
        report(
            "solve",
            json!({"graph": gmeta, "instance": imeta}),
            json!({}),
            verdict,
            payload,
        ),
        code,
    ))
}

fn counterexample_value(lists: &ListAssignment, matching: &MatchingAssignment) -> Value {
    serde_json::from_str(&instance_to_json(lists, matching)).expect("instance round-trips")
}

fn certify_payload(r: &dpcolor::solver::CertifyResult) -> (Value, &'static str, u8) {
    match &r.verdict {
        CertifyVerdict::Colorable => (
            json!({"examined": r.examined, "total": r.total}),
            "certified",
            0,
        ),
        CertifyVerdict::NoCounterexampleFound => (
            json!({"examined": r.examined, "total": r.total}),
            "no-counterexample-found",
            0,
        ),
        CertifyVerdict::Counterexample {
            lists,
            matching,
            precoloring,
        } => {
            let pre: Value = match precoloring {
                Some(p) => json!(p
                    .iter()
                    .map(|(v, c)| (v.to_string(), c))
                    .collect::<BTreeMap<String, u8>>()),
                None => Value::Null,
            };
            (
                json!({
                    "examined": r.examined,
                    "total": r.total,
                    "counterexample": counterexample_value(lists, matching),
                    "precoloring": pre,
                }),
                "counterexample",
                1,
            )
        }
    }
}

fn certify_options(sample: Option<u64>, seed: u64, symmetry: bool) -> CertifyOptions {
    CertifyOptions {
        mode: match sample {
            Some(samples) => CertifyMode::Sample { samples, seed },
            None => CertifyMode::Exhaustive,
        },
        fix_first_edge_identity: symmetry,
    }
}

fn cmd_certify(
    graph: &Path,
    k: u8,
    sample: Option<u64>,
    seed: u64,
    symmetry: bool,
) -> Result<(Value, u8), CliError> {
    let (g, gmeta) = read_graph(graph)?;
    let r = certify_dp_k(&g.simple(), k, certify_options(sample, seed, symmetry))?;
    let (payload, verdict, code) = certify_payload(&r);
    Ok((
        report(
            "certify",
            json!({"graph": gmeta}),
            json!({"k": k, "sample": sample, "seed": seed, "symmetry": symmetry}),
            verdict,
            payload,
        ),
        code,
    ))
}

fn cmd_extend(
    graph: &Path,
    instance: Option<&Path>,
    k: u8,
    sample: Option<u64>,
    seed: u64,
) -> Result<(Value, u8), CliError> {
    let (g, gmeta) = read_graph(graph)?;
    let c0 = outer_cycle_of(&g)?;
    let simple = g.simple();
    match instance {
        Some(path) => {
            let ((l, m), imeta) = read_instance(path)?;
            let r = certify_extension_instance(&simple, &l, &m, &c0)?;
            let (payload, verdict, code) = certify_payload(&r);
            Ok((
                report(
                    "extend",
                    json!({"graph": gmeta, "instance": imeta}),
                    json!({"k": k}),
                    verdict,
                    payload,
                ),
                code,
            ))
        }
        None => {
            let r = certify_extension(&simple, &c0, k, certify_options(sample, seed, false))?;
            let (payload, verdict, code) = certify_payload(&r);
            Ok((
                report(
                    "extend",
                    json!({"graph": gmeta}),
                    json!({"k": k, "sample": sample, "seed": seed}),
                    verdict,
                    payload,
                ),
                code,
            ))
        }
    }
}

fn load_config(name_or_path: &str) -> Result<(Configuration, Value), CliError> {
    if let Ok(cfg) = builtin(name_or_path) {
        return Ok((cfg, json!({"builtin": name_or_path})));
    }
    let path = Path::new(name_or_path);
    if path.exists() {
        let (text, meta) = read_text(path)?;
        return Ok((Configuration::from_json_str(&text)?, meta));
    }
    Err(CliError::with_detail(
        format!("unknown configuration {name_or_path:?}"),
        json!({"builtins": dpcolor::reducibility::builtin_configurations()
            .iter().map(|c| c.name.clone()).collect::<Vec<_>>()}),
    ))
}

fn cmd_reduce(config: &str, k: u8) -> Result<(Value, u8), CliError> {
    const REPLAYS: [&str; 3] = ["lemma-2.4", "lemma-2.5", "lemma-3.3c"];
    if REPLAYS.contains(&config) {
        let r = replay_identification_proof(config)?;
        let ok = r.success;
        let payload = serde_json::to_value(&r).expect("report serializes");
        return Ok((
            report(
                "reduce",
                json!({"config": {"builtin": config}}),
                json!({"k": k, "mode": "replay"}),
                if ok { "replayed" } else { "failed" },
                payload,
            ),
            u8::from(!ok),
        ));
    }
    let (cfg, meta) = load_config(config)?;
    let run_greedy = cfg.ordering.is_some();
    let v = verify_configuration(&cfg, k, run_greedy)?;
    let ok = v.oracle_reducible
        && v.ordering_valid.unwrap_or(true)
        && v.greedy_all_succeeded.unwrap_or(true)
        && v.routes_agree.unwrap_or(true);
    let payload = serde_json::to_value(&v).expect("report serializes");
    Ok((
        report(
            "reduce",
            json!({"config": meta}),
            json!({"k": k, "mode": if run_greedy { "ordering+oracle" } else { "oracle" }}),
            if ok { "reducible" } else { "not-reducible" },
            payload,
        ),
        u8::from(!ok),
    ))
}

fn cmd_discharge(
    graph: &Path,
    rules: RuleSet,
    strict: bool,
    trace: bool,
) -> Result<(Value, u8), CliError> {
    let (g, gmeta) = read_graph(graph)?;
    if strict {
        let mut violations = Vec::new();
        let lens: &[usize] = match rules {
            RuleSet::SectionTwo => &[4, 5],
            RuleSet::SectionThree => &[4, 5, 6],
        };
        for &len in lens {
            let n = g.cycles_of_length(len)?.len();
            if n > 0 {
                violations.push(format!("contains {n} cycle(s) of length {len}"));
            }
        }
        let min_dist = match rules {
            RuleSet::SectionTwo => 3,
            RuleSet::SectionThree => 2,
        };
        if let Some(d) = g.triangle_distance() {
            if d < min_dist {
                violations.push(format!(
                    "triangle distance {d} below the required {min_dist}"
                ));
            }
        }
        if !violations.is_empty() {
            return Err(CliError::with_detail(
                format!("graph violates the {} hypotheses", rules.name()),
                json!({"violations": violations}),
            ));
        }
    }

    let run = run_discharging(&g, rules)?;
    if trace {
        for t in run.ledger.transfers() {
            eprintln!(
                "{}: {:?} -> {:?}: {}/2",
                t.rule, t.from, t.to, t.amount2
            );
        }
    }
    let elements: Vec<Value> = run
        .initial
        .vertices()
        .map(|(v, c)| json!({"element": {"vertex": v}, "initial2": c, "final2": run.ledger.charge2(dpcolor::discharging::Element::Vertex(v))}))
        .chain(run.initial.faces().map(|(f, c)| {
            json!({"element": {"face": f}, "initial2": c, "final2": run.ledger.charge2(dpcolor::discharging::Element::Face(f))})
        }))
        .collect();
    let violations = !run.nonnegativity.negatives.is_empty();
    let payload = json!({
        "rules": rules.name(),
        "elements": elements,
        "transfers": serde_json::to_value(run.ledger.transfers()).expect("serializes"),
        "audit": serde_json::to_value(&run.audit).expect("serializes"),
        "nonnegativity": serde_json::to_value(&run.nonnegativity).expect("serializes"),
        "anomalies": run.tags.anomalies,
        "total2": run.ledger.total2(),
    });
    Ok((
        report(
            "discharge",
            json!({"graph": gmeta}),
            json!({"rules": rules.name(), "strict": strict, "trace": trace}),
            if violations { "violations" } else { "clean" },
            payload,
        ),
        u8::from(violations),
    ))
}

//! Command-line front end: generate, validate, verify, compare, and export
//! ice-model crystals.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 resource cap exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ice_crystal::crystal_graph::{
    canonical_key, check_axioms_c1_c6, find_highest_weights, generate, highest_weight_model,
    parse_graph_json, to_dot, verify_staircase, GenerateError, GraphJson, IceCrystal, LoadedGraph,
    OperatorOracle,
};
use ice_crystal::crystal_ops::{e_op, f_op, weight};
use ice_crystal::ice_model::{brute_force_enumerate, from_boxes, IceModel};
use ice_crystal::partition::Partition;
use ice_crystal::stembridge::{verify_regular, CartanA};
use ice_crystal::tableau::{crystal_isomorphic, tableau_crystal};

const DEFAULT_NODE_CAP: usize = 100_000;
const DEFAULT_BRUTE_CAP: u128 = 1_000_000;
const NODE_CAP_ENV: &str = "ICE_CRYSTAL_NODE_CAP";

#[derive(Parser)]
#[command(
    name = "ice-crystal",
    version,
    about = "Crystals of 5-vertex ice models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the highest weight model for a partition as JSON.
    Hw {
        /// Partition as comma-separated parts, e.g. 2,1,0.
        #[arg(long)]
        lambda: String,
    },
    /// Generate the crystal graph and write it as JSON or DOT.
    Gen {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        node_cap: Option<usize>,
    },
    /// Audit a crystal: model validation, crystal axioms, regularity,
    /// staircase structure, and counting against brute force.
    Check {
        #[arg(long, conflicts_with = "graph")]
        lambda: Option<String>,
        /// Audit a previously exported graph JSON file instead.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        node_cap: Option<usize>,
        #[arg(long)]
        brute_cap: Option<u128>,
        #[arg(long, short)]
        verbose: bool,
    },
    /// Compare the generated crystal with the tableau crystal.
    Iso {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        node_cap: Option<usize>,
    },
    /// Apply a crystal operator to a model read from a JSON file; prints the
    /// image model or the literal token "none".
    Apply {
        #[arg(long, value_enum)]
        op: OpKind,
        #[arg(long)]
        color: usize,
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    E,
    F,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn cap(message: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Hw { lambda } => {
            let lambda = parse_lambda(&lambda)?;
            println!("{}", highest_weight_model(&lambda).to_json());
            Ok(())
        }
        Command::Gen {
            lambda,
            format,
            out,
            node_cap,
        } => {
            let lambda = parse_lambda(&lambda)?;
            let crystal = generate_with_cap(&lambda, node_cap)?;
            let rendered = match format {
                Format::Json => GraphJson::from_crystal(&crystal).to_string_pretty() + "\n",
                Format::Dot => to_dot(&crystal),
            };
            match out {
                Some(path) => fs::write(&path, rendered).map_err(|e| {
                    Failure::invalid(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{rendered}"),
            }
            Ok(())
        }
        Command::Check {
            lambda,
            graph,
            node_cap,
            brute_cap,
            verbose,
        } => match (lambda, graph) {
            (Some(lambda), None) => {
                let lambda = parse_lambda(&lambda)?;
                let crystal = generate_with_cap(&lambda, node_cap)?;
                check_generated(&crystal, brute_cap.unwrap_or(DEFAULT_BRUTE_CAP), verbose)
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(&path).map_err(|e| {
                    Failure::invalid(format!("cannot read {}: {e}", path.display()))
                })?;
                let loaded =
                    parse_graph_json(&text).map_err(|e| Failure::invalid(e.to_string()))?;
                check_loaded(&loaded, verbose)
            }
            _ => Err(Failure::invalid(
                "check needs exactly one of --lambda or --graph",
            )),
        },
        Command::Iso { lambda, node_cap } => {
            let lambda = parse_lambda(&lambda)?;
            let crystal = generate_with_cap(&lambda, node_cap)?;
            let cap = resolve_node_cap(node_cap);
            let tableaux = tableau_crystal(&lambda, lambda.num_rows(), cap)
                .map_err(|e| Failure::cap(e.to_string()))?;
            match crystal_isomorphic(crystal.graph(), tableaux.graph()) {
                Ok(()) => {
                    println!("yes");
                    Ok(())
                }
                Err(witness) => {
                    println!("no: {witness}");
                    Err(Failure::verification("crystals are not isomorphic"))
                }
            }
        }
        Command::Apply { op, color, model } => {
            let text = fs::read_to_string(&model)
                .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", model.display())))?;
            let parsed = IceModel::from_json(&text).map_err(Failure::invalid)?;
            if let Some(violation) = parsed.validate().first() {
                return Err(Failure::invalid(format!(
                    "model does not satisfy its boundary condition: {violation}"
                )));
            }
            if color < 1 || color >= parsed.num_rows() {
                return Err(Failure::invalid(format!(
                    "color must lie in 1..={}, got {color}",
                    parsed.num_rows() - 1
                )));
            }
            let image = match op {
                OpKind::E => e_op(&parsed, color),
                OpKind::F => f_op(&parsed, color),
            };
            match image {
                Some(m) => println!("{}", m.to_json()),
                None => println!("none"),
            }
            Ok(())
        }
    }
}

fn parse_lambda(text: &str) -> Result<Partition, Failure> {
    let mut parts = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        let value: usize = piece.parse().map_err(|_| {
            Failure::invalid(format!(
                "partition part {piece:?} is not a nonnegative integer"
            ))
        })?;
        parts.push(value);
    }
    if parts.last() != Some(&0) {
        parts.push(0); // the boundary condition needs a trailing zero part
    }
    Partition::new(parts).map_err(|e| Failure::invalid(e.to_string()))
}

fn resolve_node_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var(NODE_CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_NODE_CAP)
}

fn generate_with_cap(lambda: &Partition, flag: Option<usize>) -> Result<IceCrystal, Failure> {
    generate(lambda, resolve_node_cap(flag)).map_err(|e| match e {
        GenerateError::NodeCap { .. } => Failure::cap(e.to_string()),
        GenerateError::RaisingAudit { .. } => Failure::verification(e.to_string()),
    })
}

/// One audit finding, rendered as a JSON object in the failure listing.
struct Issue {
    check: &'static str,
    node: Option<String>,
    detail: String,
}

impl Issue {
    fn render(&self) -> String {
        let node = match &self.node {
            Some(key) => format!(", \"node\": {}", json_string(key)),
            None => String::new(),
        };
        format!(
            "{{\"check\": {}{node}, \"detail\": {}}}",
            json_string(self.check),
            json_string(&self.detail)
        )
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn finish_check(
    issues: Vec<Issue>,
    nodes: usize,
    summary: Vec<String>,
    verbose: bool,
) -> Result<(), Failure> {
    if issues.is_empty() {
        if verbose {
            for line in &summary {
                println!("{line}");
            }
        }
        println!("ok: {nodes} nodes audited");
        Ok(())
    } else {
        println!("[");
        for (idx, issue) in issues.iter().enumerate() {
            let comma = if idx + 1 < issues.len() { "," } else { "" };
            println!("  {}{comma}", issue.render());
        }
        println!("]");
        Err(Failure::verification(format!(
            "{} violation(s) found",
            issues.len()
        )))
    }
}

fn check_generated(crystal: &IceCrystal, brute_cap: u128, verbose: bool) -> Result<(), Failure> {
    let lambda = crystal.lambda().clone();
    let mut issues = Vec::new();
    let mut summary = Vec::new();

    for (idx, model) in crystal.models().iter().enumerate() {
        for violation in model.validate() {
            issues.push(Issue {
                check: "validate",
                node: Some(crystal.graph().key(idx).to_string()),
                detail: violation.to_string(),
            });
        }
    }
    summary.push(format!("validated {} models", crystal.node_count()));

    let axioms = check_axioms_c1_c6(crystal.graph(), Some(crystal));
    for v in &axioms.violations {
        issues.push(Issue {
            check: "axioms",
            node: Some(v.node.clone()),
            detail: v.to_string(),
        });
    }
    summary.push("crystal axioms C1-C6 evaluated".to_string());

    let regular = verify_regular(crystal.graph(), &CartanA::new(lambda.num_rows() - 1));
    for v in &regular.violations {
        issues.push(Issue {
            check: "regularity",
            node: Some(v.node.clone()),
            detail: v.to_string(),
        });
    }
    summary.push("regularity R1-R6' evaluated".to_string());

    let sources = find_highest_weights(crystal.graph());
    if sources.len() != 1 {
        issues.push(Issue {
            check: "staircase",
            node: None,
            detail: format!("expected exactly one source node, found {}", sources.len()),
        });
    } else {
        let idx = crystal.graph().index_of(&sources[0]).unwrap();
        for v in verify_staircase(crystal.model(idx)).violations {
            issues.push(Issue {
                check: "staircase",
                node: Some(sources[0].clone()),
                detail: v.to_string(),
            });
        }
        summary.push("staircase of the source verified".to_string());
    }

    match brute_force_enumerate(&lambda, brute_cap) {
        Ok(models) => {
            let mut brute: Vec<String> = models
                .iter()
                .map(|m| canonical_key(&lambda, &m.boxes()))
                .collect();
            brute.sort();
            let mut generated: Vec<String> = crystal
                .graph()
                .nodes()
                .map(|(_, data)| data.key.clone())
                .collect();
            generated.sort();
            if brute != generated {
                issues.push(Issue {
                    check: "counting",
                    node: None,
                    detail: format!(
                        "brute force finds {} models, generation {}",
                        brute.len(),
                        generated.len()
                    ),
                });
            }
            summary.push(format!("counted against brute force ({})", brute.len()));
        }
        Err(e) => summary.push(format!("counting skipped: {e}")),
    }

    finish_check(issues, crystal.node_count(), summary, verbose)
}

/// Oracle over models reconstructed from a loaded graph's box sets.
struct LoadedOracle {
    lambda: Partition,
    models: Vec<Option<IceModel>>,
}

impl OperatorOracle for LoadedOracle {
    fn f_key(&self, node: usize, color: usize) -> Option<String> {
        let model = self.models[node].as_ref()?;
        f_op(model, color).map(|m| canonical_key(&self.lambda, &m.boxes()))
    }

    fn e_key(&self, node: usize, color: usize) -> Option<String> {
        let model = self.models[node].as_ref()?;
        e_op(model, color).map(|m| canonical_key(&self.lambda, &m.boxes()))
    }
}

fn check_loaded(loaded: &LoadedGraph, verbose: bool) -> Result<(), Failure> {
    let lambda = &loaded.lambda;
    let mut issues = Vec::new();
    let mut summary = Vec::new();

    let mut models: Vec<Option<IceModel>> = Vec::with_capacity(loaded.graph.node_count());
    for (idx, data) in loaded.graph.nodes() {
        match from_boxes(lambda, &loaded.boxes[idx]) {
            Ok(model) => {
                let key = canonical_key(lambda, &model.boxes());
                if key != data.key {
                    issues.push(Issue {
                        check: "validate",
                        node: Some(data.key.clone()),
                        detail: format!("key does not match its box set (canonical form {key})"),
                    });
                }
                if weight(&model) != data.weight {
                    issues.push(Issue {
                        check: "validate",
                        node: Some(data.key.clone()),
                        detail: "stored weight differs from the model's row counts".to_string(),
                    });
                }
                models.push(Some(model));
            }
            Err(e) => {
                issues.push(Issue {
                    check: "validate",
                    node: Some(data.key.clone()),
                    detail: format!("box set does not reconstruct to a model: {e}"),
                });
                models.push(None);
            }
        }
    }
    summary.push(format!("validated {} nodes", loaded.graph.node_count()));

    let oracle = LoadedOracle {
        lambda: lambda.clone(),
        models,
    };
    let all_reconstructed = oracle.models.iter().all(Option::is_some);
    let axioms = check_axioms_c1_c6(
        &loaded.graph,
        if all_reconstructed {
            Some(&oracle)
        } else {
            None
        },
    );
    for v in &axioms.violations {
        issues.push(Issue {
            check: "axioms",
            node: Some(v.node.clone()),
            detail: v.to_string(),
        });
    }
    summary.push("crystal axioms C1-C6 evaluated".to_string());

    let regular = verify_regular(&loaded.graph, &CartanA::new(lambda.num_rows() - 1));
    for v in &regular.violations {
        issues.push(Issue {
            check: "regularity",
            node: Some(v.node.clone()),
            detail: v.to_string(),
        });
    }
    summary.push("regularity R1-R6' evaluated".to_string());

    finish_check(issues, loaded.graph.node_count(), summary, verbose)
}

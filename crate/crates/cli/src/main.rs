//! `dilworth`: command-line access to the dilworth crate with JSON reports.
//!
//! Exit codes: 0 success, 1 a verification disagreed with its expectation,
//! 2 bad input.

mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use dilworth::amoeba::{amoeba_dim_combinatorial, amoeba_dim_numeric, ConjSpaceRep};
use dilworth::counterexamples::{verify_counterexample1, verify_counterexample2, Verdict};
use dilworth::geodil::{verify_section_dilworth, FamilyJson, SectionCheck, SubspaceFamily};
use dilworth::hadamard::{
    algebraic_matroid_rank_numeric, all_bracketings, conjecture_value, generic_dimension,
    generic_witness, nested_upper_bound, pair_matroid_rank, BoundMethod, Bracketing,
    HadamardInstance, LinearSpaceRep,
};
use dilworth::matroids::{pebble_game_rank, Graph, MatroidRank};
use dilworth::rng::{derive_seed, seeded};
use dilworth::setfunc::{dilworth_matroid_rank, dilworth_truncation_witness, induced_independent};
use dilworth::{ConjMatrix, Matrix, MatrixJson, PrimeField, DEFAULT_MODULUS};

use input::{parse_subset, read_json, read_matrix, FunctionSpec};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(Value),
}

fn input_err(field: &str) -> impl Fn(dilworth::Error) -> CliError + '_ {
    move |e| CliError::Input(format!("{field}: {e}"))
}

#[derive(Parser)]
#[command(
    name = "dilworth",
    version,
    about = "Dilworth truncations, Hadamard products and amoeba dimensions over GF(p)"
)]
struct Cli {
    /// Prime modulus, congruent to 1 mod 4.
    #[arg(long, global = true, default_value_t = DEFAULT_MODULUS)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials for numeric ranks, or sections drawn by section-check.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Largest set whose subsets or partitions are enumerated.
    #[arg(long, global = true, default_value_t = 12)]
    cap: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of a matrix.
    RankMatrix {
        #[arg(long)]
        input: PathBuf,
    },
    /// Dilworth truncation and induced matroid rank of a set function.
    Dilworth {
        #[arg(long)]
        function: PathBuf,
        /// Comma-separated elements; the whole ground set by default.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Rank in the (k,l)-count matroid of a graph, by the pebble game.
    Sparsity {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Rank of a coordinate set in the algebraic matroid of a Hadamard product.
    HadamardDim {
        #[arg(long, num_args = 1.., required = true)]
        spaces: Vec<PathBuf>,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum, default_value_t = HadamardMethod::Numeric)]
        method: HadamardMethod,
        /// Bracketing for the bound method, e.g. "((1,2),3)"; all bracketings by default.
        #[arg(long)]
        grouping: Option<String>,
    },
    /// Dimension of the amoeba of a linear space.
    AmoebaDim {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum, default_value_t = AmoebaMethod::Both)]
        method: AmoebaMethod,
    },
    /// 0/1 matrices whose concatenation has the generic rank.
    GenericWitness {
        /// Comma-separated factor dimensions.
        #[arg(long)]
        dims: String,
        #[arg(long)]
        m: usize,
    },
    /// Checks random sections of a subspace family against the truncation formula.
    SectionCheck {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        codim: usize,
    },
    /// The first counterexample (graphic, graphic, bicircular).
    VerifyCe1,
    /// The second counterexample (3-partite hypergraph).
    VerifyCe2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum HadamardMethod {
    Numeric,
    Pair,
    Bound,
    Conjecture,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum AmoebaMethod {
    Both,
    Combinatorial,
    Numeric,
}

#[derive(Serialize)]
struct RankReport {
    rows: usize,
    cols: usize,
    rank: usize,
}

#[derive(Serialize)]
struct DilworthReport {
    ground: usize,
    set: Vec<usize>,
    truncation: i64,
    partition: Vec<Vec<usize>>,
    matroid_rank: i64,
    independent: bool,
}

#[derive(Serialize)]
struct SparsityReport {
    k: usize,
    l: usize,
    vertices: usize,
    edges: usize,
    rank: usize,
    independent: bool,
}

#[derive(Serialize)]
struct HadamardReport {
    method: HadamardMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    grouping: Option<String>,
    rank: i64,
    trials: Vec<usize>,
}

#[derive(Serialize)]
struct AmoebaReport {
    method: AmoebaMethod,
    ambient: usize,
    combinatorial: Option<i64>,
    numeric: Option<i64>,
    trials: Vec<usize>,
}

#[derive(Serialize)]
struct WitnessReport {
    dims: Vec<usize>,
    m: usize,
    expected: usize,
    rank: usize,
    factors: Vec<MatrixJson>,
}

#[derive(Serialize)]
struct Mismatch {
    trial: usize,
    #[serde(flatten)]
    check: SectionCheck,
}

#[derive(Serialize)]
struct SectionSummary {
    codim: usize,
    members: usize,
    trials: usize,
    passed: usize,
    pass: bool,
    mismatches: Vec<Mismatch>,
}

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    let field = PrimeField::new(cli.prime).map_err(input_err("prime"))?;
    if cli.trials == 0 {
        return Err(CliError::Input("trials: must be at least 1".into()));
    }
    let mut rng = seeded(cli.seed);
    match &cli.command {
        Command::RankMatrix { input } => {
            let m = read_matrix(field, input, "input")?;
            Ok(to_value(&RankReport {
                rows: m.rows(),
                cols: m.cols(),
                rank: m.rank(),
            }))
        }
        Command::Dilworth { function, subset } => {
            let spec: FunctionSpec = read_json(function, "function")?;
            let f = spec.build(field)?;
            let set = parse_subset(subset.as_deref(), f.ground_size())?;
            let (truncation, partition) =
                dilworth_truncation_witness(&f, set, cli.cap).map_err(input_err("subset"))?;
            let matroid_rank =
                dilworth_matroid_rank(&f, set, cli.cap).map_err(input_err("subset"))?;
            let independent = induced_independent(&f, set, cli.cap).map_err(input_err("subset"))?;
            Ok(to_value(&DilworthReport {
                ground: f.ground_size(),
                set: set.elems(),
                truncation,
                partition: partition.blocks().iter().map(|b| b.elems()).collect(),
                matroid_rank,
                independent,
            }))
        }
        Command::Sparsity {
            graph,
            k,
            l,
            subset,
        } => {
            let g: Graph = read_json(graph, "graph")?;
            let set = parse_subset(subset.as_deref(), g.edge_count())?;
            let edges = set.elems();
            let rank = pebble_game_rank(&g, *k, *l, &edges).map_err(input_err("k, l"))?;
            Ok(to_value(&SparsityReport {
                k: *k,
                l: *l,
                vertices: g.vertex_count(),
                edges: edges.len(),
                rank,
                independent: rank == edges.len(),
            }))
        }
        Command::HadamardDim {
            spaces,
            subset,
            method,
            grouping,
        } => {
            let factors = spaces
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    read_matrix(field, p, &format!("spaces[{i}]"))
                        .map(|m| LinearSpaceRep::from_spanning(&m))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let inst = HadamardInstance::new(factors).map_err(input_err("spaces"))?;
            let set = parse_subset(subset.as_deref(), inst.m())?;
            let elems = set.elems();
            let leaves = inst.rank_nodes();
            let mut grouping_text = None;
            let (rank, trials) = match method {
                HadamardMethod::Numeric => {
                    let r = algebraic_matroid_rank_numeric(&inst, &elems, cli.trials, &mut rng)
                        .map_err(input_err("subset"))?;
                    (r.rank as i64, r.trials)
                }
                HadamardMethod::Pair => {
                    if inst.d() != 2 {
                        return Err(CliError::Input(format!(
                            "spaces: the pair method needs 2 spaces, got {}",
                            inst.d()
                        )));
                    }
                    let r1 = MatroidRank::new(inst.factors()[0].row_matroid())
                        .map_err(input_err("spaces[0]"))?;
                    let r2 = MatroidRank::new(inst.factors()[1].row_matroid())
                        .map_err(input_err("spaces[1]"))?;
                    (
                        pair_matroid_rank(&r1, &r2, set, cli.cap).map_err(input_err("subset"))?,
                        vec![],
                    )
                }
                HadamardMethod::Bound => {
                    let groupings = match grouping {
                        Some(text) => {
                            vec![text.parse::<Bracketing>().map_err(input_err("grouping"))?]
                        }
                        None => all_bracketings(inst.d()),
                    };
                    let mut best: Option<(usize, &Bracketing)> = None;
                    for g in &groupings {
                        let r = nested_upper_bound(&leaves, &elems, g, BoundMethod::Union, cli.cap)
                            .map_err(input_err("grouping"))?;
                        if best.is_none_or(|(b, _)| r < b) {
                            best = Some((r, g));
                        }
                    }
                    let (r, g) = best.expect("at least one bracketing");
                    grouping_text = Some(g.to_string());
                    (r as i64, vec![])
                }
                HadamardMethod::Conjecture => (
                    conjecture_value(&leaves, &elems, BoundMethod::Union, cli.cap)
                        .map_err(input_err("subset"))? as i64,
                    vec![],
                ),
            };
            Ok(to_value(&HadamardReport {
                method: *method,
                grouping: grouping_text,
                rank,
                trials,
            }))
        }
        Command::AmoebaDim { space, method } => {
            let json: MatrixJson = read_json(space, "space")?;
            let matrix = ConjMatrix::from_json(field, &json).map_err(input_err("space"))?;
            let rep = ConjSpaceRep::new(matrix).map_err(input_err("space"))?;
            let combinatorial = match method {
                AmoebaMethod::Numeric => None,
                _ => {
                    let r = MatroidRank::new(rep.row_matroid()).map_err(input_err("space"))?;
                    Some(amoeba_dim_combinatorial(&r, cli.cap).map_err(input_err("space"))?)
                }
            };
            let numeric = match method {
                AmoebaMethod::Combinatorial => None,
                _ => Some(
                    amoeba_dim_numeric(&rep, cli.trials, &mut rng).map_err(input_err("space"))?,
                ),
            };
            let report = to_value(&AmoebaReport {
                method: *method,
                ambient: rep.ambient_dim(),
                combinatorial,
                numeric: numeric.as_ref().map(|n| n.rank as i64),
                trials: numeric.map(|n| n.trials).unwrap_or_default(),
            });
            match (combinatorial, &report["numeric"]) {
                (Some(c), Value::Number(n)) if n.as_i64() != Some(c) => {
                    Err(CliError::Verification(report))
                }
                _ => Ok(report),
            }
        }
        Command::GenericWitness { dims, m } => {
            let dims = dims
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Input(format!("dims: '{s}' is not a dimension")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let expected = generic_dimension(&dims, *m).map_err(input_err("dims"))?;
            let ys = generic_witness(field, &dims, *m).map_err(input_err("dims"))?;
            let refs: Vec<&Matrix> = ys.iter().collect();
            let rank = Matrix::hcat(field, *m, &refs)
                .map_err(input_err("dims"))?
                .rank();
            let report = to_value(&WitnessReport {
                dims,
                m: *m,
                expected,
                rank,
                factors: ys.iter().map(Matrix::to_json).collect(),
            });
            if rank == expected {
                Ok(report)
            } else {
                Err(CliError::Verification(report))
            }
        }
        Command::SectionCheck { family, codim } => {
            let json: FamilyJson = read_json(family, "family")?;
            let fam = SubspaceFamily::from_json(field, &json).map_err(input_err("family"))?;
            let mut passed = 0;
            let mut mismatches = Vec::new();
            for trial in 0..cli.trials {
                let mut trial_rng = seeded(derive_seed(cli.seed, trial as u64));
                let report = verify_section_dilworth(&fam, *codim, &mut trial_rng, cli.cap)
                    .map_err(input_err("codim"))?;
                if report.pass {
                    passed += 1;
                }
                mismatches.extend(
                    report
                        .checks
                        .into_iter()
                        .filter(|c| !c.pass)
                        .map(|check| Mismatch { trial, check }),
                );
            }
            let report = to_value(&SectionSummary {
                codim: *codim,
                members: fam.len(),
                trials: cli.trials,
                passed,
                pass: passed == cli.trials,
                mismatches,
            });
            if passed == cli.trials {
                Ok(report)
            } else {
                Err(CliError::Verification(report))
            }
        }
        Command::VerifyCe1 => {
            let r = verify_counterexample1(field, cli.trials, &mut rng)
                .map_err(input_err("verify-ce1"))?;
            let ok = r.passed() && r.verdict == Verdict::Violated;
            let report = to_value(&r);
            if ok {
                Ok(report)
            } else {
                Err(CliError::Verification(report))
            }
        }
        Command::VerifyCe2 => {
            let r = verify_counterexample2(field, cli.trials, &mut rng)
                .map_err(input_err("verify-ce2"))?;
            let ok = r.passed() && r.verdict == Verdict::Violated;
            let report = to_value(&r);
            if ok {
                Ok(report)
            } else {
                Err(CliError::Verification(report))
            }
        }
    }
}

fn render(report: &Value, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(report).expect("valid JSON");
    }
    match report {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                    format!("{k}: {} entries", items.len())
                }
                _ => format!("{k}: {v}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            emit(&render(&report, cli.json));
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(report)) => {
            emit(&render(&report, cli.json));
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

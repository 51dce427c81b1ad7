//! hklat: exact lattice computations over JSON input with stable exit
//! codes.
//!
//! Exit codes: 0 for definitive results (reports, Found, Witness,
//! CertifiedRound, WallFound, ProvablyNone), 3 when a budget ran out
//! (Unknown, Exhausted), 2 for malformed or unresolvable input, 1 for
//! contract violations such as unsupported ranks or non-isotropic
//! vectors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use hklat::catalog::{catalog_get, catalog_list};
use hklat::chambers::{chambers_rank2, is_round, MbmSpec, Roundness};
use hklat::embedding::{embed_un, EmbedOutcome};
use hklat::isotropy::{
    distinct_invariants, enumerate_isotropic_pairs, find_isotropic, IsotropicSearch, SearchBudget,
};
use hklat::json as hkjson;
use hklat::lattice::GramLattice;

const EXIT_OK: u8 = 0;
const EXIT_CONTRACT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hklat",
    version,
    about = "Exact integer quadratic-lattice toolkit: isotropic vectors, U(N) embeddings, cone chambers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputSource {
    /// Path to a lattice JSON file `{"name": ..., "gram": [[...]]}`
    #[arg(long, value_name = "PATH")]
    lattice: Option<PathBuf>,

    /// Built-in lattice key (see `hklat catalog list`)
    #[arg(long, value_name = "KEY")]
    catalog: Option<String>,

    /// Inline Gram matrix, e.g. '[[0,1],[1,0]]', or a full lattice object
    #[arg(long, value_name = "JSON")]
    gram: Option<String>,
}

#[derive(Args)]
struct InputArgs {
    #[command(flatten)]
    source: InputSource,

    /// Parameter n for parametrized catalog keys (`K3^[n]`, `Kum_n`)
    #[arg(long, value_name = "N")]
    n: Option<u32>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Coordinate box radius for enumeration-backed searches
    #[arg(long, value_name = "B", default_value_t = 10)]
    coefficient_bound: u32,

    /// Cap on examined candidates; HKLAT_MAX_CANDIDATES overrides the
    /// built-in default of 1000000
    #[arg(long, value_name = "COUNT")]
    max_candidates: Option<u64>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MbmArgs {
    /// Comma-separated admissible negative squares, e.g. '-2,-10'
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    mbm_squares: Option<String>,

    /// Bound C: every square in [-C, -1] is admissible
    #[arg(long, value_name = "C")]
    mbm_bound: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, signature, determinant, discriminant, value divisor
    Info {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for a primitive isotropic vector
    Isotropic {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate isotropic pairs with coordinates in a box
    Pairs {
        #[command(flatten)]
        input: InputArgs,
        /// Coordinate box radius
        #[arg(long, value_name = "B", default_value_t = 3)]
        bound: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distinct pair invariants realized within a box
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        /// Coordinate box radius
        #[arg(long, value_name = "B", default_value_t = 5)]
        bound: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Embed a primitive U(N) sublattice with N above a bound
    #[command(name = "embed-un")]
    EmbedUn {
        #[command(flatten)]
        input: InputArgs,
        /// Exclusive lower bound: the witness satisfies N > this value
        #[arg(long = "min-n", value_name = "A")]
        min_n: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide roundness of the positive cone of a rank-2 lattice
    Round {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        mbm: MbmArgs,
        /// Coordinate box radius for the wall search
        #[arg(long, value_name = "B", default_value_t = 10)]
        bound: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Wall-and-chamber decomposition of the positive cone
    Chambers {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        mbm: MbmArgs,
        /// Coordinate box radius for the wall search
        #[arg(long, value_name = "B", default_value_t = 10)]
        bound: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quotient of the orthogonal complement of a primitive isotropic
    /// vector by the vector itself
    Quotient {
        #[command(flatten)]
        input: InputArgs,
        /// The vector, as a JSON array, e.g. `[1,0,0]`
        #[arg(long, value_name = "JSON", allow_hyphen_values = true)]
        vector: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Primitive closure (saturation) of a set of vectors
    Saturate {
        #[command(flatten)]
        input: InputArgs,
        /// The vectors, as a JSON array of arrays, e.g. `[[1,0],[0,2]]`
        #[arg(long, value_name = "JSON", allow_hyphen_values = true)]
        vectors: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List or export the built-in lattices
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print all catalog keys
    List {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export one entry in the lattice JSON format (plus metadata)
    Show {
        /// Catalog key
        key: String,
        /// Parameter n for parametrized keys
        #[arg(long, value_name = "N")]
        n: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct Failure {
    operation: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    fn input(operation: &'static str, message: String) -> Self {
        Failure {
            operation,
            message,
            code: EXIT_INPUT,
        }
    }

    fn from_lib(operation: &'static str, err: hklat::Error) -> Self {
        let code = if err.is_input_error() {
            EXIT_INPUT
        } else {
            EXIT_CONTRACT
        };
        Failure {
            operation,
            message: err.to_string(),
            code,
        }
    }
}

struct Report {
    value: Value,
    text: String,
    code: u8,
}

impl Report {
    fn ok(value: Value, text: String) -> Self {
        Report {
            value,
            text,
            code: EXIT_OK,
        }
    }

    fn budget(value: Value, text: String) -> Self {
        Report {
            value,
            text,
            code: EXIT_BUDGET,
        }
    }
}

fn load_input(op: &'static str, input: &InputArgs) -> Result<GramLattice, Failure> {
    let lattice = if let Some(path) = &input.source.lattice {
        if input.n.is_some() {
            return Err(Failure::input(
                op,
                "--n only applies to --catalog inputs".into(),
            ));
        }
        let body = std::fs::read_to_string(path).map_err(|e| {
            Failure::input(op, format!("cannot read {}: {e}", path.display()))
        })?;
        hkjson::lattice_from_str(&body).map_err(|e| Failure::input(op, e.to_string()))?
    } else if let Some(key) = &input.source.catalog {
        catalog_get(key, input.n)
            .map_err(|e| Failure::input(op, e.to_string()))?
            .lattice
    } else if let Some(inline) = &input.source.gram {
        if input.n.is_some() {
            return Err(Failure::input(
                op,
                "--n only applies to --catalog inputs".into(),
            ));
        }
        hkjson::lattice_from_str(inline).map_err(|e| Failure::input(op, e.to_string()))?
    } else {
        unreachable!("clap enforces exactly one input source");
    };
    Ok(lattice)
}

fn resolve_budget(op: &'static str, budget: &BudgetArgs) -> Result<SearchBudget, Failure> {
    let max = match budget.max_candidates {
        Some(m) => m,
        None => match std::env::var("HKLAT_MAX_CANDIDATES") {
            Ok(raw) => raw.parse::<u64>().map_err(|_| {
                Failure::input(op, format!("HKLAT_MAX_CANDIDATES is not a count: {raw:?}"))
            })?,
            Err(_) => 1_000_000,
        },
    };
    if budget.coefficient_bound == 0 || max == 0 {
        return Err(Failure::input(op, "budget values must be positive".into()));
    }
    Ok(SearchBudget::new(budget.coefficient_bound, max))
}

fn resolve_mbm(op: &'static str, mbm: &MbmArgs) -> Result<MbmSpec, Failure> {
    if let Some(list) = &mbm.mbm_squares {
        let mut squares = Vec::new();
        for piece in list.split(',') {
            let piece = piece.trim();
            let n: BigInt = piece
                .parse()
                .map_err(|_| Failure::input(op, format!("not an integer square: {piece:?}")))?;
            squares.push(n);
        }
        MbmSpec::from_squares(squares).map_err(|e| Failure::input(op, e.to_string()))
    } else if let Some(c) = mbm.mbm_bound {
        MbmSpec::from_bound(BigInt::from(c)).map_err(|e| Failure::input(op, e.to_string()))
    } else {
        unreachable!("clap enforces exactly one MBM source");
    }
}

fn signature_value(l: &GramLattice) -> Value {
    let sig = l.signature();
    json!({
        "positive": sig.positive,
        "null": sig.null,
        "negative": sig.negative,
    })
}

fn cmd_info(input: &InputArgs) -> Result<Report, Failure> {
    const OP: &str = "info";
    let l = load_input(OP, input)?;
    let sig = l.signature();
    let det = l.discriminant();
    let value = json!({
        "name": l.name(),
        "rank": l.rank(),
        "signature": signature_value(&l),
        "determinant": hkjson::bigint_to_value(&det),
        "abs_discriminant": hkjson::bigint_to_value(&l.abs_discriminant()),
        "value_divisor": hkjson::bigint_to_value(&l.value_divisor()),
        "even": l.is_even(),
        "sha256": hkjson::gram_sha256(&l),
    });
    let text = format!(
        "name: {}\nrank: {}\nsignature: {}\ndeterminant: {}\n|disc|: {}\nvalue divisor: {}\neven: {}",
        l.name().unwrap_or("(unnamed)"),
        l.rank(),
        sig,
        det,
        l.abs_discriminant(),
        l.value_divisor(),
        l.is_even(),
    );
    Ok(Report::ok(value, text))
}

fn cmd_isotropic(input: &InputArgs, budget: &BudgetArgs) -> Result<Report, Failure> {
    const OP: &str = "isotropic";
    let l = load_input(OP, input)?;
    let budget = resolve_budget(OP, budget)?;
    let outcome = find_isotropic(&l, &budget).map_err(|e| Failure::from_lib(OP, e))?;
    Ok(match outcome {
        IsotropicSearch::Found(ray) => Report::ok(
            json!({"result": "found", "ray": hkjson::vector_to_value(ray.rep())}),
            format!(
                "found isotropic ray [{}]",
                ray.rep()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ),
        IsotropicSearch::ProvablyNone => Report::ok(
            json!({"result": "provably_none"}),
            "provably none: the lattice is definite".into(),
        ),
        IsotropicSearch::Unknown => Report::budget(
            json!({"result": "unknown"}),
            "unknown: budget exhausted without a find".into(),
        ),
    })
}

fn cmd_pairs(input: &InputArgs, bound: u32) -> Result<Report, Failure> {
    const OP: &str = "pairs";
    let l = load_input(OP, input)?;
    let pairs = enumerate_isotropic_pairs(&l, bound);
    let listed: Vec<Value> = pairs
        .iter()
        .map(|p| {
            json!({
                "first": hkjson::vector_to_value(p.first.rep()),
                "second": hkjson::vector_to_value(p.second.rep()),
                "invariant": hkjson::bigint_to_value(&p.invariant_n),
            })
        })
        .collect();
    let text = format!("{} isotropic pairs within the box of radius {bound}", pairs.len());
    Ok(Report::ok(
        json!({"bound": bound, "count": pairs.len(), "pairs": listed}),
        text,
    ))
}

fn cmd_invariants(input: &InputArgs, bound: u32) -> Result<Report, Failure> {
    const OP: &str = "invariants";
    let l = load_input(OP, input)?;
    let inv = distinct_invariants(&l, bound);
    let listed: Vec<Value> = inv.iter().map(hkjson::bigint_to_value).collect();
    let text = format!(
        "{} distinct invariants within radius {bound}: {}",
        inv.len(),
        inv.iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(Report::ok(
        json!({"bound": bound, "count": inv.len(), "invariants": listed}),
        text,
    ))
}

fn cmd_embed_un(input: &InputArgs, min_n: u64, budget: &BudgetArgs) -> Result<Report, Failure> {
    const OP: &str = "embed-un";
    let l = load_input(OP, input)?;
    let budget = resolve_budget(OP, budget)?;
    let outcome = embed_un(&l, min_n, &budget).map_err(|e| Failure::from_lib(OP, e))?;
    Ok(match outcome {
        EmbedOutcome::Witness(w) => {
            let divisor = w.embedding.induced_lattice().value_divisor();
            let text = format!(
                "witness: primitive U({}) with saturation index 1, value divisor {divisor}",
                w.n_value
            );
            Report::ok(
                json!({
                    "result": "witness",
                    "witness": hkjson::witness_to_value(&l, &w, min_n),
                }),
                text,
            )
        }
        EmbedOutcome::Exhausted => Report::budget(
            json!({"result": "exhausted"}),
            "exhausted: budget ran out before a witness appeared".into(),
        ),
    })
}

fn cmd_round(input: &InputArgs, mbm: &MbmArgs, bound: u32) -> Result<Report, Failure> {
    const OP: &str = "round";
    let l = load_input(OP, input)?;
    let spec = resolve_mbm(OP, mbm)?;
    let verdict = is_round(&l, &spec, bound).map_err(|e| Failure::from_lib(OP, e))?;
    Ok(match verdict {
        Roundness::CertifiedRound(d) => Report::ok(
            json!({"result": "certified_round", "value_divisor": hkjson::bigint_to_value(&d)}),
            format!("certified round: value divisor {d} exceeds every admissible |square|"),
        ),
        Roundness::WallFound(class) => {
            let square = l.eval_square(&class).map_err(|e| Failure::from_lib(OP, e))?;
            Report::ok(
                json!({
                    "result": "wall_found",
                    "class": hkjson::vector_to_value(&class),
                    "square": hkjson::bigint_to_value(&square),
                }),
                format!(
                    "wall found: class [{}] with square {square}",
                    class
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            )
        }
        Roundness::Unknown => Report::budget(
            json!({"result": "unknown"}),
            "unknown: no certificate within the box".into(),
        ),
    })
}

fn cmd_chambers(input: &InputArgs, mbm: &MbmArgs, bound: u32) -> Result<Report, Failure> {
    const OP: &str = "chambers";
    let l = load_input(OP, input)?;
    let spec = resolve_mbm(OP, mbm)?;
    let decomposition =
        chambers_rank2(&l, &spec, bound).map_err(|e| Failure::from_lib(OP, e))?;
    let mut value = hkjson::decomposition_to_value(&decomposition);
    if let Some(obj) = value.as_object_mut() {
        obj.insert("wall_count".into(), json!(decomposition.walls.len()));
        obj.insert("chamber_count".into(), json!(decomposition.chambers.len()));
        obj.insert("bound".into(), json!(bound));
    }
    let text = format!(
        "{} walls, {} chambers, truncated: {}",
        decomposition.walls.len(),
        decomposition.chambers.len(),
        decomposition.truncated
    );
    Ok(Report::ok(value, text))
}

fn cmd_quotient(input: &InputArgs, vector: &str) -> Result<Report, Failure> {
    const OP: &str = "quotient";
    let l = load_input(OP, input)?;
    let u = hkjson::vector_from_str(vector, "--vector")
        .map_err(|e| Failure::input(OP, e.to_string()))?;
    let w = l.quotient_isotropic(&u).map_err(|e| Failure::from_lib(OP, e))?;
    let text = format!(
        "quotient rank {}, signature {}",
        w.rank(),
        w.signature()
    );
    Ok(Report::ok(
        json!({
            "vector": hkjson::vector_to_value(&u),
            "quotient": hkjson::lattice_to_value(&w),
            "rank": w.rank(),
            "signature": signature_value(&w),
        }),
        text,
    ))
}

fn cmd_saturate(input: &InputArgs, vectors: &str) -> Result<Report, Failure> {
    const OP: &str = "saturate";
    let l = load_input(OP, input)?;
    let parsed: Value = serde_json::from_str(vectors)
        .map_err(|e| Failure::input(OP, format!("--vectors: invalid JSON ({e})")))?;
    let rows = hkjson::matrix_from_value(&parsed, "--vectors")
        .map_err(|e| Failure::input(OP, e.to_string()))?;
    let index = l
        .saturation_index(&rows)
        .map_err(|e| Failure::from_lib(OP, e))?;
    let emb = l.saturate(&rows).map_err(|e| Failure::from_lib(OP, e))?;
    let text = format!(
        "saturation has rank {} and index {index} over the input span",
        emb.rank()
    );
    Ok(Report::ok(
        json!({
            "input": hkjson::matrix_to_value(&rows),
            "basis": hkjson::matrix_to_value(&emb.basis),
            "induced_gram": hkjson::matrix_to_value(&emb.induced_gram),
            "saturation_index": hkjson::bigint_to_value(&index),
        }),
        text,
    ))
}

fn cmd_catalog(action: &CatalogAction) -> Result<Report, Failure> {
    const OP: &str = "catalog";
    match action {
        CatalogAction::List { .. } => {
            let keys = catalog_list();
            Ok(Report::ok(
                json!({"keys": keys}),
                keys.join("\n"),
            ))
        }
        CatalogAction::Show { key, n, .. } => {
            let entry = catalog_get(key, *n).map_err(|e| Failure::input(OP, e.to_string()))?;
            let mut value = hkjson::lattice_to_value(&entry.lattice);
            if let Some(obj) = value.as_object_mut() {
                obj.insert("b2".into(), json!(entry.b2));
                obj.insert("mbm_bound_default".into(), json!(entry.mbm_bound_default));
                obj.insert("notes".into(), json!(entry.notes));
            }
            let text = format!(
                "{}: rank {}, {}",
                entry.key,
                entry.lattice.rank(),
                entry.notes
            );
            Ok(Report::ok(value, text))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Report, Format), Failure> {
    match &cli.command {
        Command::Info { input, output } => Ok((cmd_info(input)?, output.format)),
        Command::Isotropic {
            input,
            budget,
            output,
        } => Ok((cmd_isotropic(input, budget)?, output.format)),
        Command::Pairs {
            input,
            bound,
            output,
        } => Ok((cmd_pairs(input, *bound)?, output.format)),
        Command::Invariants {
            input,
            bound,
            output,
        } => Ok((cmd_invariants(input, *bound)?, output.format)),
        Command::EmbedUn {
            input,
            min_n,
            budget,
            output,
        } => Ok((cmd_embed_un(input, *min_n, budget)?, output.format)),
        Command::Round {
            input,
            mbm,
            bound,
            output,
        } => Ok((cmd_round(input, mbm, *bound)?, output.format)),
        Command::Chambers {
            input,
            mbm,
            bound,
            output,
        } => Ok((cmd_chambers(input, mbm, *bound)?, output.format)),
        Command::Quotient {
            input,
            vector,
            output,
        } => Ok((cmd_quotient(input, vector)?, output.format)),
        Command::Saturate {
            input,
            vectors,
            output,
        } => Ok((cmd_saturate(input, vectors)?, output.format)),
        Command::Catalog { action } => {
            let format = match action {
                CatalogAction::List { output } | CatalogAction::Show { output, .. } => {
                    output.format
                }
            };
            Ok((cmd_catalog(action)?, format))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((report, format)) => {
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report.value)
                            .expect("reports are serializable")
                    );
                }
                Format::Text => println!("{}", report.text),
            }
            std::process::exit(report.code as i32);
        }
        Err(failure) => {
            let err = json!({
                "error": failure.message,
                "operation": failure.operation,
            });
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&err).expect("errors are serializable")
            );
            std::process::exit(failure.code as i32);
        }
    }
}

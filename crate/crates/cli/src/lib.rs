//! The `tally` command-line tool.
//!
//! Exit codes: 0 on success or a positive verdict, 1 on a well-formed
//! negative verdict or an absent construction, 2 on parse, validation or
//! usage errors.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use tally_core::format::{parse_odot, tsv_table};
use tally_core::{
    analyze, derive_addition, derive_multiplication_indexed, derive_multiplication_single, emit_system,
    evaluation, free_eval, initiality_report, is_free_report, is_isomorphism, monoid_closure, morphism_find,
    parse_system, CountingSystem, Error, FreeElement, Outcome, SystemDocument,
};

use report::{render, system_json, table_json};

#[derive(Debug, Parser)]
#[command(name = "tally", version, about = "Counting systems and the arithmetic they carry")]
struct Cli {
    /// Use the minimal core of non-minimal inputs instead of rejecting them
    #[arg(long, global = true)]
    auto_core: bool,

    /// Print reports and tables as JSON
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a system file and check its invariants
    Validate { file: PathBuf },
    /// Minimality, map flags, Dedekind and initiality diagnostics
    Analyze { file: PathBuf },
    /// Print the minimal core as a system file
    Core { file: PathBuf },
    /// Size and generators of the transformation monoid
    Closure {
        file: PathBuf,
        /// Also print the composition table
        #[arg(long)]
        full: bool,
    },
    /// The derived addition table
    Add { file: PathBuf },
    /// The derived multiplication table
    Mul {
        file: PathBuf,
        /// Operation on the index set driving a multi-map multiplication
        #[arg(long, value_name = "ODOTFILE")]
        odot: Option<PathBuf>,
    },
    /// The unique morphism SRC -> DST, if any
    Morphism {
        src: PathBuf,
        dst: PathBuf,
        /// Rename index labels of SRC before matching, e.g. `s=t`
        #[arg(long, value_name = "OLD=NEW", value_delimiter = ',')]
        relabel: Vec<String>,
    },
    /// Print the product system
    Product { a: PathBuf, b: PathBuf },
    /// Adjoin a new base point in front of the old one
    Omega { file: PathBuf },
    /// Evaluate a multiset of labels in the system
    FreeEval {
        file: PathBuf,
        /// e.g. "s:3,t:1"
        #[arg(long)]
        multiset: String,
    },
    /// Initiality verdict with per-label diagnostics
    Initial { file: PathBuf },
    /// Freeness and direct-sum report on the derived monoid
    FreeReport { file: PathBuf },
}

/// Output of a successful invocation.
struct Done {
    text: String,
    code: i32,
}

impl Done {
    fn ok(text: String) -> Self {
        Done { text, code: 0 }
    }

    fn verdict(text: String, holds: bool) -> Self {
        Done {
            text,
            code: if holds { 0 } else { 1 },
        }
    }
}

/// A diagnostic for exit code 2.
struct Failure(String);

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

fn core_error(path: &Path, e: Error) -> Failure {
    let hint = match e {
        Error::MinimalityRequired { .. } => "; pass --auto-core to use the minimal core",
        Error::SingleMapRequired { .. } => "; pass --odot for multi-map systems",
        _ => "",
    };
    Failure(format!("{}: {e}{hint}", path.display()))
}

/// Run the tool on `args` (including the program name), writing to `out`
/// and `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let stream: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(done) => {
            if out.write_all(done.text.as_bytes()).is_err() {
                return 2;
            }
            done.code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn load(path: &Path) -> Result<SystemDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    parse_system(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// The document's system, or its core under `--auto-core`.
fn minimal(cli: &Cli, path: &Path, doc: &SystemDocument) -> Result<CountingSystem, Failure> {
    if doc.system.is_minimal() {
        Ok(doc.system.clone())
    } else if cli.auto_core {
        Ok(doc.system.minimal_core())
    } else {
        let unreachable = doc
            .system
            .unreachable()
            .into_iter()
            .map(|x| doc.system.label(x).to_string())
            .collect();
        Err(core_error(path, Error::MinimalityRequired { unreachable }))
    }
}

fn with_name(name: &str, value: Value) -> Value {
    let mut map = Map::new();
    map.insert("system".into(), json!(name));
    if let Value::Object(rest) = value {
        map.extend(rest);
    }
    Value::Object(map)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn system_out(cli: &Cli, name: &str, sys: &CountingSystem) -> String {
    if cli.json {
        render(&system_json(name, sys), true)
    } else {
        emit_system(name, sys)
    }
}

fn table_out(cli: &Cli, symbol: &str, labels: &[String], table: &[Vec<usize>]) -> String {
    if cli.json {
        render(&table_json(symbol, labels, table), true)
    } else {
        tsv_table(symbol, labels, table)
    }
}

fn dispatch(cli: &Cli) -> Result<Done, Failure> {
    match &cli.command {
        Command::Validate { file } => {
            let doc = load(file)?;
            let sys = &doc.system;
            let v = json!({
                "system": doc.name,
                "valid": true,
                "elements": sys.size(),
                "maps": sys.index_set(),
                "minimal": sys.is_minimal(),
            });
            Ok(Done::ok(render(&v, cli.json)))
        }
        Command::Analyze { file } => {
            let doc = load(file)?;
            let r = analyze(&doc.system).map_err(|e| core_error(file, e))?;
            Ok(Done::ok(render(&with_name(&doc.name, to_value(&r)), cli.json)))
        }
        Command::Core { file } => {
            let doc = load(file)?;
            Ok(Done::ok(system_out(cli, &doc.name, &doc.system.minimal_core())))
        }
        Command::Closure { file, full } => closure(cli, file, *full),
        Command::Add { file } => {
            let doc = load(file)?;
            let sys = minimal(cli, file, &doc)?;
            let plus = derive_addition(&sys).map_err(|e| core_error(file, e))?;
            Ok(Done::ok(table_out(cli, "+", plus.labels(), plus.table())))
        }
        Command::Mul { file, odot } => mul(cli, file, odot.as_deref()),
        Command::Morphism { src, dst, relabel } => morphism(cli, src, dst, relabel),
        Command::Product { a, b } => {
            let (da, db) = (load(a)?, load(b)?);
            let p = da.system.product(&db.system).map_err(|e| core_error(b, e))?;
            Ok(Done::ok(system_out(cli, &format!("{}_x_{}", da.name, db.name), &p)))
        }
        Command::Omega { file } => {
            let doc = load(file)?;
            let w = doc.system.adjoin_omega().map_err(|e| core_error(file, e))?;
            Ok(Done::ok(system_out(cli, &format!("{}_omega", doc.name), &w)))
        }
        Command::FreeEval { file, multiset } => {
            let doc = load(file)?;
            let e: FreeElement = multiset
                .parse()
                .map_err(|e| Failure(format!("--multiset: {e}")))?;
            let y = free_eval(&doc.system, &e).map_err(|e| core_error(file, e))?;
            let v = json!({ "multiset": e.to_string(), "value": doc.system.label(y) });
            Ok(Done::ok(render(&v, cli.json)))
        }
        Command::Initial { file } => initial(cli, file),
        Command::FreeReport { file } => {
            let doc = load(file)?;
            let sys = minimal(cli, file, &doc)?;
            let plus = derive_addition(&sys).map_err(|e| core_error(file, e))?;
            let gens: Vec<usize> = (0..sys.index_set().len()).map(|s| sys.generator_point(s)).collect();
            let r = is_free_report(&plus, &gens).map_err(|e| core_error(file, e))?;
            let labels: Vec<&str> = gens.iter().map(|&g| sys.label(g)).collect();
            let mut v = with_name(&doc.name, json!({ "generators": labels }));
            if let (Value::Object(map), Value::Object(rest)) = (&mut v, to_value(&r)) {
                map.extend(rest);
            }
            Ok(Done::verdict(render(&v, cli.json), r.free))
        }
    }
}

/// `id` for the identity, otherwise the generator word joined by `.`.
fn word_label(sys: &CountingSystem, word: &[usize]) -> String {
    if word.is_empty() {
        "id".into()
    } else {
        word.iter().map(|&s| sys.index_set()[s].as_str()).collect::<Vec<_>>().join(".")
    }
}

fn closure(cli: &Cli, file: &Path, full: bool) -> Result<Done, Failure> {
    let doc = load(file)?;
    let sys = &doc.system;
    let tm = monoid_closure(sys).map_err(|e| core_error(file, e))?;
    let ev = evaluation(&tm, sys);
    let labels: Vec<String> = (0..tm.len()).map(|i| word_label(sys, tm.word(i))).collect();
    let mut generators = Map::new();
    for (label, &i) in sys.index_set().iter().zip(tm.gen_index()) {
        generators.insert(label.clone(), json!(i));
    }
    let mut v = json!({
        "system": doc.name,
        "size": tm.len(),
        "generators": generators,
        "evaluation_bijective": ev.bijective,
    });
    if full && cli.json {
        v["composition"] = table_json("∘", &labels, tm.comp());
    }
    let mut text = render(&v, cli.json);
    if full && !cli.json {
        text.push('\n');
        text.push_str(&tsv_table("∘", &labels, tm.comp()));
    }
    Ok(Done::ok(text))
}

fn mul(cli: &Cli, file: &Path, odot: Option<&Path>) -> Result<Done, Failure> {
    let doc = load(file)?;
    let sys = minimal(cli, file, &doc)?;
    let plus = derive_addition(&sys).map_err(|e| core_error(file, e))?;
    let times = match odot {
        None => derive_multiplication_single(&sys, &plus).map_err(|e| core_error(file, e))?,
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
            let table = parse_odot(&text, sys.index_set()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            match derive_multiplication_indexed(&sys, &plus, &table).map_err(|e| core_error(file, e))? {
                Outcome::Found(t) => t,
                Outcome::Absent(c) => {
                    let text = if cli.json {
                        render(&json!({ "found": false, "conflict": to_value(&c) }), true)
                    } else {
                        format!("no multiplication: {c}\n")
                    };
                    return Ok(Done::verdict(text, false));
                }
            }
        }
    };
    Ok(Done::ok(table_out(cli, "*", plus.labels(), times.table())))
}

fn morphism(cli: &Cli, src: &Path, dst: &Path, relabel: &[String]) -> Result<Done, Failure> {
    let (ds, dd) = (load(src)?, load(dst)?);
    let mut from = minimal(cli, src, &ds)?;
    if !relabel.is_empty() {
        let renames = relabel
            .iter()
            .map(|r| {
                r.split_once('=')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .ok_or_else(|| Failure(format!("--relabel: expected OLD=NEW, got `{r}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        from = from.relabel_index(&renames).map_err(|e| core_error(src, e))?;
    }
    let to = &dd.system;
    match morphism_find(&from, to).map_err(|e| core_error(dst, e))? {
        Outcome::Found(m) => {
            let mut map = Map::new();
            for (x, &y) in m.map().iter().enumerate() {
                map.insert(from.label(x).to_string(), json!(to.label(y)));
            }
            let image: Vec<&str> = m.image().into_iter().map(|y| to.label(y)).collect();
            let iso = is_isomorphism(&m).map_err(|e| core_error(dst, e))?;
            let v = json!({ "found": true, "isomorphism": iso, "map": map, "image": image });
            Ok(Done::ok(render(&v, cli.json)))
        }
        Outcome::Absent(c) => {
            let text = if cli.json {
                render(&json!({ "found": false, "conflict": to_value(&c) }), true)
            } else {
                format!("no morphism: {c}\n")
            };
            Ok(Done::verdict(text, false))
        }
    }
}

fn initial(cli: &Cli, file: &Path) -> Result<Done, Failure> {
    let doc = load(file)?;
    if !doc.system.is_minimal() && !cli.auto_core {
        let unreachable: Vec<&str> = doc
            .system
            .unreachable()
            .into_iter()
            .map(|x| doc.system.label(x))
            .collect();
        let v = json!({
            "system": doc.name,
            "initial": false,
            "minimal": false,
            "unreachable": unreachable,
        });
        return Ok(Done::verdict(render(&v, cli.json), false));
    }
    let sys = minimal(cli, file, &doc)?;
    let r = initiality_report(&sys).map_err(|e| core_error(file, e))?;
    Ok(Done::verdict(render(&with_name(&doc.name, to_value(&r)), cli.json), r.initial))
}

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polyad::{action, cover, fixtures, rep, structure, Budget, Error, NaryGroup, SubgroupRef};
use serde::Serialize;
use serde_json::{json, Map, Value};

use io::{GroupFile, LoadError, Loaded};

#[derive(Parser)]
#[command(
    name = "polyad",
    version,
    about = "Finite polyadic groups: verification, structure and representations"
)]
struct Cli {
    /// Worker threads for exhaustive scans (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the n-ary group axioms (or the group axioms for a binary file).
    Verify { file: PathBuf },
    /// Skew element of every element.
    SkewTable { file: PathBuf },
    /// The binary retract at an element.
    Retract {
        file: PathBuf,
        #[arg(long)]
        at: usize,
    },
    /// Hosszú–Gluskin decomposition at an element.
    Hg {
        file: PathBuf,
        #[arg(long)]
        at: usize,
    },
    /// The covering group G × Z_(n−1) anchored at an element.
    Cover {
        file: PathBuf,
        #[arg(long)]
        at: usize,
        /// Also write the covering group as a group file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjugacy classes under the canonical action.
    Classes { file: PathBuf },
    /// Centralizer of an element.
    Centralizer {
        file: PathBuf,
        #[arg(long)]
        of: usize,
    },
    /// All n-ary subgroups.
    Subgroups {
        file: PathBuf,
        #[arg(long)]
        normal: bool,
    },
    /// Quotient by a normal subgroup given as a comma-separated list.
    Quotient {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
    },
    /// Representations of the given dimension (only 1 is supported).
    Reps {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Characters of the 1-dimensional representations.
    Chars {
        file: PathBuf,
        #[arg(long)]
        orthogonality: bool,
    },
    /// Simplicity classification.
    Classify { file: PathBuf },
    /// Print a built-in fixture (T2, T2b, Z4M, S3T, Q4) as a group file.
    Fixture { name: String },
}

struct Failure {
    code: u8,
    message: String,
    report: Option<Value>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            report: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Format(_)) { 2 } else { 1 };
        let report = match &e {
            Error::Unverified(r) | Error::NotARepresentation(r) => serde_json::to_value(r).ok(),
            _ => None,
        };
        Failure {
            code,
            message: e.to_string(),
            report,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Malformed(m) => Failure::usage(format!("malformed group file: {m}")),
            LoadError::Invalid(e) => e.into(),
        }
    }
}

type CmdResult = Result<Value, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("group files serialize as objects"),
    }
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    Ok(GroupFile::read(path)?.load(Budget::from_env())?)
}

fn load_nary(path: &Path) -> Result<NaryGroup, Failure> {
    match load(path)? {
        Loaded::Nary(g) => {
            g.require_verified()?;
            Ok(g)
        }
        Loaded::Binary(_) => Err(Failure::usage("this command expects an n-ary group file")),
    }
}

fn failure_report(axiom: &str, witness: &[usize]) -> Value {
    json!({"passed": false, "sampled": false, "failures": [{"axiom": axiom, "witness": witness}]})
}

fn verify(path: &Path) -> CmdResult {
    let file = GroupFile::read(path)?;
    let mut out = Map::new();
    out.insert("arity".into(), json!(file.arity));
    out.insert("order".into(), json!(file.order));
    out.insert("kind".into(), to_value(&file.kind));
    let report = match file.load(Budget::from_env()) {
        Ok(Loaded::Nary(g)) => to_value(&g.verify_nary_group()),
        Ok(Loaded::Binary(b)) => {
            out.insert("isomorphism".into(), json!(b.identify()));
            json!({"passed": true, "sampled": false, "failures": []})
        }
        Err(LoadError::Invalid(e)) => match &e {
            Error::NotAGroup { axiom, witness } => failure_report(axiom, witness),
            Error::HgCondition { condition, witness } => failure_report(condition, witness),
            Error::NotAutomorphism { reason, witness } => failure_report(reason, witness),
            _ => return Err(e.into()),
        },
        Err(e) => return Err(e.into()),
    };
    let passed = report["passed"].as_bool() == Some(true);
    out.insert("report".into(), report);
    let out = Value::Object(out);
    if passed {
        Ok(out)
    } else {
        Err(Failure {
            code: 1,
            message: "group axioms fail".into(),
            report: Some(out),
        })
    }
}

fn retract(path: &Path, at: usize) -> CmdResult {
    let g = load_nary(path)?;
    let r = g.retract(at)?;
    let mut out = object(to_value(&GroupFile::binary(&r)));
    out.insert("anchor".into(), json!(at));
    out.insert("identity".into(), json!(r.identity()));
    out.insert("isomorphism".into(), json!(r.identify()));
    Ok(Value::Object(out))
}

fn hg(path: &Path, at: usize) -> CmdResult {
    let g = load_nary(path)?;
    let data = g.hg_decompose(at)?;
    let report = data.reproduces(&g);
    if !report.passed() {
        return Err(Failure {
            code: 1,
            message: "the decomposition does not reproduce the operation".into(),
            report: Some(to_value(&report)),
        });
    }
    let mut out = object(to_value(&GroupFile::hg(&data)));
    out.insert("anchor".into(), json!(at));
    Ok(Value::Object(out))
}

fn cover_cmd(path: &Path, at: usize, out_file: Option<&Path>) -> CmdResult {
    let g = load_nary(path)?;
    let c = cover::covering_group(&g, at)?;
    let h = cover::cover_h(&c)?;
    let embedding = cover::verify_embedding(&c);
    if !embedding.passed() {
        return Err(Failure {
            code: 1,
            message: "embedding product law fails".into(),
            report: Some(to_value(&embedding)),
        });
    }
    let file = GroupFile::binary(c.group());
    if let Some(p) = out_file {
        let text = serde_json::to_string_pretty(&to_value(&file)).expect("serializable") + "\n";
        std::fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
    }
    let mut out = object(to_value(&file));
    out.insert("anchor".into(), json!(at));
    out.insert("identity".into(), to_value(&c.element(c.group().identity())));
    out.insert("isomorphism".into(), json!(c.group().identify()));
    out.insert("h".into(), json!(h));
    out.insert("embedding".into(), json!(c.embedding()));
    out.insert("embedding_report".into(), to_value(&embedding));
    Ok(Value::Object(out))
}

fn classes(path: &Path) -> CmdResult {
    let g = load_nary(path)?;
    let classes = action::conjugacy_classes(&g)?;
    Ok(json!({
        "classes": classes,
        "sizes": classes.sizes(),
        "conjugation_congruence": action::is_conjugation_congruence(&g)?,
    }))
}

fn centralizer(path: &Path, of: usize) -> CmdResult {
    let g = load_nary(path)?;
    Ok(json!({"element": of, "centralizer": action::centralizer(&g, of)?}))
}

fn subgroups(path: &Path, normal: bool) -> CmdResult {
    let g = load_nary(path)?;
    let subs = if normal {
        structure::normal_subgroups(&g)?
    } else {
        structure::subgroups(&g)?
    };
    Ok(json!({"count": subs.len(), "normal": normal, "subgroups": subs}))
}

fn quotient(path: &Path, subgroup: &[usize]) -> CmdResult {
    let g = load_nary(path)?;
    let h = SubgroupRef::new(&g, subgroup.iter().copied())?;
    let q = structure::quotient(&g, &h)?;
    let mut out = object(to_value(&GroupFile::dense(q.group(), None)?));
    out.insert("subgroup".into(), to_value(&h));
    out.insert("cosets".into(), json!(q.cosets().blocks()));
    out.insert("identity_block".into(), json!(q.identity_block()));
    Ok(Value::Object(out))
}

fn reps(path: &Path, dim: usize) -> CmdResult {
    if dim != 1 {
        return Err(Failure::usage("only --dim 1 is supported"));
    }
    let g = load_nary(path)?;
    let table = rep::one_dim_exponents(&g)?;
    let reps: Vec<Value> = table
        .exponents
        .iter()
        .zip(table.representations())
        .map(|(k, r)| {
            json!({
                "exponents": k,
                "character": rep::Character::new(1, r.traces()),
                "kernel": r.kernel_elements(),
            })
        })
        .collect();
    Ok(json!({"dim": 1, "modulus": table.modulus, "count": reps.len(), "representations": reps}))
}

fn chars(path: &Path, orthogonality: bool) -> CmdResult {
    let g = load_nary(path)?;
    let reps = rep::one_dim_reps(&g)?;
    let mut chars = Vec::new();
    let mut listed = Vec::new();
    for r in &reps {
        let chi = rep::character(&g, r)?;
        let kernel = rep::kernel(&g, r)?;
        listed.push(json!({"character": chi, "kernel": kernel}));
        chars.push((chi, kernel.elements()[0]));
    }
    let mut out = Map::new();
    out.insert("characters".into(), Value::Array(listed));
    out.insert("classes".into(), to_value(&action::conjugacy_classes(&g)?));
    if !orthogonality {
        return Ok(Value::Object(out));
    }
    let e = 0;
    let mut pairs = Vec::new();
    let mut all = true;
    for (i, (c1, p1)) in chars.iter().enumerate() {
        for (j, (c2, p2)) in chars.iter().enumerate() {
            let o = rep::orthogonality_check(&g, c1, *p1, c2, *p2, e)?;
            all &= o.holds();
            pairs.push(json!({"i": i, "j": j, "value": o.value, "expected": o.expected, "holds": o.holds()}));
        }
    }
    out.insert("orthogonality".into(), json!({"at": e, "pairs": pairs, "holds": all}));
    let out = Value::Object(out);
    if all {
        Ok(out)
    } else {
        Err(Failure {
            code: 1,
            message: "orthogonality relation fails".into(),
            report: Some(out),
        })
    }
}

fn classify(path: &Path) -> CmdResult {
    let g = load_nary(path)?;
    let class = structure::classify_simplicity(&g)?;
    let mut out = object(to_value(&class));
    out.insert("central".into(), json!(g.central_elements()));
    out.insert("semiabelian".into(), json!(g.is_semiabelian()));
    out.insert("medial".into(), json!(g.is_medial()));
    Ok(Value::Object(out))
}

fn fixture(name: &str) -> CmdResult {
    let g = fixtures::by_name(name).ok_or_else(|| Failure::usage(format!("unknown fixture `{name}`")))?;
    let labels = name.eq_ignore_ascii_case("s3t").then(|| fixtures::symmetric_labels(3));
    Ok(to_value(&GroupFile::dense(&g, labels)?))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Verify { file } => verify(&file),
        Command::SkewTable { file } => {
            let g = load_nary(&file)?;
            Ok(json!({"skew": g.skew_table()?}))
        }
        Command::Retract { file, at } => retract(&file, at),
        Command::Hg { file, at } => hg(&file, at),
        Command::Cover { file, at, out } => cover_cmd(&file, at, out.as_deref()),
        Command::Classes { file } => classes(&file),
        Command::Centralizer { file, of } => centralizer(&file, of),
        Command::Subgroups { file, normal } => subgroups(&file, normal),
        Command::Quotient { file, subgroup } => quotient(&file, &subgroup),
        Command::Reps { file, dim } => reps(&file, dim),
        Command::Chars { file, orthogonality } => chars(&file, orthogonality),
        Command::Classify { file } => classify(&file),
        Command::Fixture { name } => fixture(&name),
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.into()).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(r) = &f.report {
                print(r);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

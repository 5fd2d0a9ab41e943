//! Command-line front end for `magma-dual`.
//!
//! [`run`] parses an argument vector, executes one command and returns the
//! exit code, a human-readable rendering and a machine-readable [`Report`].
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use magma_dual::checklist::{run_checklist, ChecklistOptions, Corpus};
use magma_dual::{
    are_compatible, are_isomorphic, automorphisms, classify_op, conjugate, count_group_structures,
    count_ops, dual_set_with, enumerate_ops, group_ops_with_identity, hat_op, iso_classes,
    parse_inline, partition_group_ops, phi, read_table, scan_question, CayleyTable, ClassFilter,
    DualConfig, DualMethod, Error, Exec, ExploreOptions, LabelMap, OpCode, Permutation,
    ScanOptions,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "MAGMA_WORKERS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub result: Value,
    pub version: String,
}

impl Report {
    /// Pretty-printed JSON with sorted object keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub report: Report,
}

#[derive(Parser, Debug)]
#[command(name = "magma", version, about = "Binary operations on finite sets and their duals")]
struct Cli {
    /// Write the machine-readable report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to $MAGMA_WORKERS, then the CPU count).
    #[arg(long, global = true, value_name = "K")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exhaustive,
    Backtrack,
    Sandwich,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a table: nondegenerate, semigroup, monoid, group.
    Classify {
        /// Table file, or an inline table such as "a b / b a".
        file: Option<String>,
        #[arg(long, value_name = "ROWS")]
        table: Option<String>,
    },
    /// All tables compatible with the given one.
    Dual {
        file: Option<String>,
        #[arg(long, value_name = "ROWS")]
        table: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Node budget for backtracking.
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
    },
    /// The table `FILE1 ^LABEL FILE2`.
    Hat { file1: String, label: String, file2: String },
    /// Whether two tables are compatible, with the smallest failing triple.
    Compatible { file1: String, file2: String },
    /// The sandwich table `z ^LABEL z` of a monoid.
    Phi { file: String, label: String },
    /// Conjugate a table by a permutation (`b<->c` or cycle notation).
    Conjugate {
        file: Option<String>,
        #[arg(long, value_name = "ROWS")]
        table: Option<String>,
        #[arg(long, value_name = "SPEC")]
        perm: String,
    },
    /// An isomorphism between two tables, if any.
    Iso { file1: String, file2: String },
    /// The automorphism group of a table.
    Aut {
        file: Option<String>,
        #[arg(long, value_name = "ROWS")]
        table: Option<String>,
    },
    /// Group tables of order N with a given identity.
    Groups {
        n: usize,
        #[arg(long, value_name = "LABEL", default_value = "a")]
        identity: String,
    },
    /// The duals of the groups with identity a, as a partition of all group tables.
    Partition { n: usize },
    /// Isomorphism classes of the groups with identity a.
    Classes { n: usize },
    /// Number of group structures of order N up to isomorphism.
    CountGroups { n: usize },
    /// Census of all tables of order N in a class.
    Enumerate {
        n: usize,
        #[arg(long, default_value = "all")]
        filter: String,
        #[arg(long)]
        count_only: bool,
        /// Allow the 4^16-code scans at order 4.
        #[arg(long)]
        opt_in_large: bool,
        /// Resumable progress file for full scans.
        #[arg(long, value_name = "FILE")]
        checkpoint: Option<PathBuf>,
    },
    /// Evidence for the two-part question on degenerate semigroups at order N.
    ExploreQuestion {
        n: usize,
        #[arg(long, value_name = "SECONDS", default_value_t = 60)]
        budget: u64,
    },
    /// Run the reproduction checklist against the bundled or a given corpus.
    VerifyPaper {
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
        /// Random samples at order 4 for the law sweep.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Dual { .. } => "dual",
            Command::Hat { .. } => "hat",
            Command::Compatible { .. } => "compatible",
            Command::Phi { .. } => "phi",
            Command::Conjugate { .. } => "conjugate",
            Command::Iso { .. } => "iso",
            Command::Aut { .. } => "aut",
            Command::Groups { .. } => "groups",
            Command::Partition { .. } => "partition",
            Command::Classes { .. } => "classes",
            Command::CountGroups { .. } => "count-groups",
            Command::Enumerate { .. } => "enumerate",
            Command::ExploreQuestion { .. } => "explore-question",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

/// A failed command: exit code and message.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered result of a successful command.
struct Done {
    code: i32,
    text: String,
    result: Value,
}

impl Done {
    fn ok(text: String, result: Value) -> Self {
        Done { code: 0, text, result }
    }
}

type CmdResult = Result<Done, Failure>;

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let inputs: Vec<String> = argv.iter().skip(1).cloned().collect();
    let report = |command: &str, result: Value| Report {
        command: command.to_string(),
        inputs: inputs.clone(),
        result,
        version: VERSION.to_string(),
    };

    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let result = if code == 0 {
                json!({})
            } else {
                json!({ "error": text.trim_end() })
            };
            return Outcome {
                code,
                text,
                report: report("", result),
            };
        }
    };

    let name = cli.command.name();
    let (code, text, result) = match execute(&cli) {
        Ok(done) => (done.code, done.text, done.result),
        Err(f) => {
            let synopsis = if f.code == 2 { usage_line(name) } else { String::new() };
            (f.code, format!("error: {}\n{synopsis}", f.message), json!({ "error": f.message }))
        }
    };
    let mut outcome = Outcome {
        code,
        text,
        report: report(name, result),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, outcome.report.to_json()) {
            outcome.code = 2;
            outcome.text = format!("error: cannot write {}: {e}\n", path.display());
        }
    }
    if cli.json && outcome.code != 2 {
        outcome.text = outcome.report.to_json();
    }
    outcome
}

fn usage_line(command: &str) -> String {
    let mut cmd = <Cli as clap::CommandFactory>::command();
    cmd.build();
    match cmd.find_subcommand_mut(command) {
        Some(sub) => format!("{}\n", sub.render_usage()),
        None => String::new(),
    }
}

fn workers(cli: &Cli) -> Result<Exec, Failure> {
    let k = match cli.workers {
        Some(k) => k,
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("{WORKERS_ENV} must be a positive integer, got {v:?}")))?,
            Err(_) => magma_dual::exec::default_workers(),
        },
    };
    if k == 0 {
        return Err(Failure::usage("worker count must be at least 1"));
    }
    Ok(Exec::with_workers(k))
}

/// A table argument: an existing file, or else an inline table such as
/// `"a b / b a"`.
fn load(arg: &str) -> Result<(CayleyTable, LabelMap), Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {arg}: {e}")))?;
        return read_table(&text).map_err(|e| Failure::usage(format!("{arg}: {e}")));
    }
    if arg.contains(char::is_whitespace) {
        return parse_inline(arg).map_err(|e| Failure::usage(format!("inline table {arg:?}: {e}")));
    }
    Err(Failure::usage(format!("no such table file: {arg}")))
}

fn one_table(file: &Option<String>, table: &Option<String>) -> Result<(CayleyTable, LabelMap), Failure> {
    match (file, table) {
        (Some(f), None) => load(f),
        (None, Some(t)) => parse_inline(t).map_err(|e| Failure::usage(format!("inline table: {e}"))),
        (Some(_), Some(_)) => Err(Failure::usage("give either FILE or --table, not both")),
        (None, None) => Err(Failure::usage("a table FILE or --table is required")),
    }
}

fn two_tables(a: &str, b: &str) -> Result<(CayleyTable, CayleyTable, LabelMap), Failure> {
    let (x, lx) = load(a)?;
    let (y, ly) = load(b)?;
    if lx != ly {
        return Err(Failure::usage(format!(
            "tables use different labels: {} and {}",
            lx.labels().join(","),
            ly.labels().join(",")
        )));
    }
    Ok((x, y, lx))
}

fn element(labels: &LabelMap, name: &str) -> Result<usize, Failure> {
    labels
        .index_of(name)
        .ok_or_else(|| Failure::usage(format!("unknown element {name:?}; labels are {}", labels.labels().join(","))))
}

/// Cayley table in the paper's layout: header row, rule, labelled rows.
pub fn render_table(name: &str, t: &CayleyTable, labels: &LabelMap) -> String {
    let n = t.order();
    let width = (0..n).map(|i| labels.label(i).len()).max().unwrap_or(1);
    let head = name.len().max(width);
    let mut s = format!("{name:>head$} |");
    for j in 0..n {
        let _ = write!(s, " {:>width$}", labels.label(j));
    }
    s.push('\n');
    let _ = writeln!(s, "{}-+{}", "-".repeat(head), "-".repeat((width + 1) * n));
    for i in 0..n {
        let _ = write!(s, "{:>head$} |", labels.label(i));
        for j in 0..n {
            let _ = write!(s, " {:>width$}", labels.label(t.at(i, j)));
        }
        s.push('\n');
    }
    s
}

fn table_json(t: &CayleyTable, labels: &LabelMap) -> Value {
    let rows: Vec<String> = t
        .rows()
        .map(|r| r.iter().map(|&v| labels.label(v as usize)).collect::<Vec<_>>().join(" "))
        .collect();
    let code = t.encode().map(|c| c.to_string()).ok();
    json!({ "order": t.order().to_string(), "rows": rows, "code": code })
}

fn code_json(c: OpCode, labels: &LabelMap) -> Value {
    table_json(&c.decode(), labels)
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Classify { file, table } => {
            let (t, l) = one_table(file, table)?;
            classify(&t, &l)
        }
        Command::Dual { file, table, method, budget } => {
            let (t, l) = one_table(file, table)?;
            dual(&t, &l, *method, *budget, workers(cli)?)
        }
        Command::Hat { file1, label, file2 } => {
            let (x, y, l) = two_tables(file1, file2)?;
            let a = element(&l, label)?;
            let h = hat_op(&x, a, &y)?;
            let name = format!("^{}", l.label(a));
            Ok(Done::ok(render_table(&name, &h, &l), json!({ "table": table_json(&h, &l) })))
        }
        Command::Compatible { file1, file2 } => {
            let (x, y, l) = two_tables(file1, file2)?;
            let r = are_compatible(&x, &y)?;
            let witness = r.witness.map(|(a, b, c)| [l.label(a), l.label(b), l.label(c)].map(String::from));
            let equation = r.failing_equation.map(|e| e.to_string());
            let mut text = format!("compatible: {}\n", bool_word(r.compatible));
            if let (Some(e), Some(w)) = (&equation, &witness) {
                let _ = writeln!(text, "fails {e} at ({}, {}, {})", w[0], w[1], w[2]);
            }
            Ok(Done::ok(
                text,
                json!({ "compatible": r.compatible, "failing_equation": equation, "witness": witness }),
            ))
        }
        Command::Phi { file, label } => {
            let (t, l) = load(file)?;
            let a = element(&l, label)?;
            let p = phi(&t, a)?;
            let name = format!("phi({})", l.label(a));
            Ok(Done::ok(render_table(&name, &p, &l), json!({ "table": table_json(&p, &l) })))
        }
        Command::Conjugate { file, table, perm } => {
            let (t, l) = one_table(file, table)?;
            let p = Permutation::parse(perm, &l).map_err(|e| Failure::usage(e.to_string()))?;
            let c = conjugate(&t, &p)?;
            let name = format!("z^{}", p.to_cycle_string(&l));
            Ok(Done::ok(
                render_table(&name, &c, &l),
                json!({ "permutation": p.to_cycle_string(&l), "table": table_json(&c, &l) }),
            ))
        }
        Command::Iso { file1, file2 } => {
            let (x, y, l) = two_tables(file1, file2)?;
            let p = are_isomorphic(&x, &y);
            let cycles = p.as_ref().map(|p| p.to_cycle_string(&l));
            let text = match &cycles {
                Some(c) => format!("isomorphic: yes\nsigma: {c}\n"),
                None => "isomorphic: no\n".to_string(),
            };
            Ok(Done::ok(text, json!({ "isomorphic": p.is_some(), "permutation": cycles })))
        }
        Command::Aut { file, table } => {
            let (t, l) = one_table(file, table)?;
            let aut = automorphisms(&t);
            let cycles: Vec<String> = aut.iter().map(|p| p.to_cycle_string(&l)).collect();
            let mut text = format!("|Aut| = {}\n", aut.len());
            for c in &cycles {
                let _ = writeln!(text, "{c}");
            }
            Ok(Done::ok(text, json!({ "order": aut.len().to_string(), "automorphisms": cycles })))
        }
        Command::Groups { n, identity } => {
            let l = letters(*n)?;
            let e = element(&l, identity)?;
            let groups = group_ops_with_identity(*n, e)?;
            let mut text = format!("{} group tables of order {n} with identity {}\n", groups.len(), l.label(e));
            for (i, g) in groups.iter().enumerate() {
                let _ = write!(text, "\n{}", render_table(&format!("z{}", i + 1), g, &l));
            }
            let tables: Vec<Value> = groups.iter().map(|g| table_json(g, &l)).collect();
            Ok(Done::ok(
                text,
                json!({ "count": groups.len().to_string(), "identity": l.label(e), "tables": tables }),
            ))
        }
        Command::Partition { n } => {
            let l = letters(*n)?;
            let p = partition_group_ops(*n)?;
            let mut text = format!(
                "{} group tables of order {n} split into {} duals of groups with identity a\n",
                p.total,
                p.blocks.len()
            );
            let mut blocks = Vec::new();
            for (i, b) in p.blocks.iter().enumerate() {
                let codes: Vec<String> = b.members.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(text, "dual of z{}: {} members, codes {}", i + 1, b.len(), codes.join(" "));
                blocks.push(json!({
                    "group": code_json(b.base, &l),
                    "members": b.members.iter().map(|&c| code_json(c, &l)).collect::<Vec<_>>(),
                }));
            }
            Ok(Done::ok(text, json!({ "total": p.total.to_string(), "blocks": blocks })))
        }
        Command::Classes { n } => {
            let l = letters(*n)?;
            let classes = iso_classes(*n, 0)?;
            let mut text = format!("{} isomorphism classes of groups of order {n} with identity a\n", classes.len());
            let mut out = Vec::new();
            for (i, c) in classes.iter().enumerate() {
                let _ = write!(
                    text,
                    "\nclass {}: {} members, |Aut| = {}, (n-1)!/|Aut| = {}\n{}",
                    i + 1,
                    c.members.len(),
                    c.aut_size,
                    c.predicted_size,
                    render_table("rep", &c.representative, &l)
                );
                out.push(json!({
                    "representative": table_json(&c.representative, &l),
                    "size": c.members.len().to_string(),
                    "aut_size": c.aut_size.to_string(),
                    "predicted_size": c.predicted_size.to_string(),
                }));
            }
            Ok(Done::ok(text, json!({ "classes": out })))
        }
        Command::CountGroups { n } => {
            let k = count_group_structures(*n)?;
            Ok(Done::ok(
                format!("{k} group structures of order {n}\n"),
                json!({ "n": n.to_string(), "count": k.to_string() }),
            ))
        }
        Command::Enumerate { n, filter, count_only, opt_in_large, checkpoint } => {
            let filter: ClassFilter = filter.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
            let options = ScanOptions {
                opt_in_large: *opt_in_large,
                checkpoint: checkpoint.clone(),
                ..ScanOptions::with_exec(workers(cli)?)
            };
            enumerate(*n, filter, *count_only, &options)
        }
        Command::ExploreQuestion { n, budget } => {
            let options = ExploreOptions {
                budget: Duration::from_secs(*budget),
                exec: workers(cli)?,
                ..ExploreOptions::default()
            };
            explore(*n, &options)
        }
        Command::VerifyPaper { corpus, samples } => {
            let corpus = match corpus {
                Some(dir) => Corpus::load(dir)?,
                None => Corpus::bundled(),
            };
            let options = ChecklistOptions {
                exec: workers(cli)?,
                samples: *samples,
                ..ChecklistOptions::default()
            };
            let results = run_checklist(&corpus, &options);
            let passed = results.iter().filter(|r| r.passed).count();
            let mut text = String::new();
            let mut items = BTreeMap::new();
            for r in &results {
                let _ = writeln!(text, "{r}");
                items.insert(
                    r.item.to_string(),
                    json!({ "passed": r.passed, "title": r.item.title(), "detail": r.detail }),
                );
            }
            let _ = writeln!(text, "{passed} of {} items passed", results.len());
            Ok(Done {
                code: if passed == results.len() { 0 } else { 1 },
                text,
                result: json!({ "items": items, "passed": passed.to_string(), "total": results.len().to_string() }),
            })
        }
    }
}

fn letters(n: usize) -> Result<LabelMap, Failure> {
    if n == 0 || n > magma_dual::table::MAX_ORDER {
        return Err(Failure::usage(format!("order must be between 1 and {}", magma_dual::table::MAX_ORDER)));
    }
    Ok(LabelMap::letters(n))
}

fn classify(t: &CayleyTable, l: &LabelMap) -> CmdResult {
    let r = classify_op(t);
    let lab = |i: usize| l.label(i).to_string();
    let triple = r.assoc_counterexample.map(|(a, b, c)| [lab(a), lab(b), lab(c)]);
    let mut text = render_table("z", t, l);
    for (name, v) in [("nondegenerate", r.nd), ("semigroup", r.sg), ("monoid", r.mn), ("group", r.gr)] {
        let _ = writeln!(text, "{name:<14} {}", bool_word(v));
    }
    let _ = writeln!(text, "{:<14} {}", "commutative", bool_word(r.commutative));
    if let Some(e) = r.identity {
        let _ = writeln!(text, "{:<14} {}", "identity", lab(e));
    }
    if let Some(w) = &triple {
        let _ = writeln!(text, "not associative at ({} {} {})", w[0], w[1], w[2]);
    }
    if let Some(m) = r.missing_image {
        let _ = writeln!(text, "{} is not a product", lab(m));
    }
    if let Some(a) = r.non_invertible {
        let _ = writeln!(text, "{} has no inverse", lab(a));
    }
    Ok(Done::ok(
        text,
        json!({
            "nd": r.nd, "sg": r.sg, "mn": r.mn, "gr": r.gr,
            "commutative": r.commutative,
            "identity": r.identity.map(lab),
            "assoc_counterexample": triple,
            "missing_image": r.missing_image.map(lab),
            "non_invertible": r.non_invertible.map(lab),
            "table": table_json(t, l),
        }),
    ))
}

fn dual(t: &CayleyTable, l: &LabelMap, method: MethodArg, budget: Option<u64>, exec: Exec) -> CmdResult {
    let method = match method {
        MethodArg::Auto if classify_op(t).mn => DualMethod::Sandwich,
        MethodArg::Auto => DualMethod::Backtrack,
        MethodArg::Exhaustive => DualMethod::Exhaustive,
        MethodArg::Backtrack => DualMethod::Backtrack,
        MethodArg::Sandwich => DualMethod::Sandwich,
    };
    let mut config = DualConfig {
        exec,
        ..DualConfig::default()
    };
    if let Some(b) = budget {
        config.budget = b;
    }
    let d = dual_set_with(t, method, &config)?;
    let mut text = format!("{} members ({})\n", d.len(), method.name());
    for (i, m) in d.tables().enumerate() {
        let _ = write!(text, "\n{}", render_table(&format!("w{}", i + 1), &m, l));
    }
    let members: Vec<Value> = d.members.iter().map(|&c| code_json(c, l)).collect();
    Ok(Done::ok(
        text,
        json!({ "method": method.name(), "count": d.len().to_string(), "members": members }),
    ))
}

fn enumerate(n: usize, filter: ClassFilter, count_only: bool, options: &ScanOptions) -> CmdResult {
    let (census, codes) = if count_only {
        (count_ops(n, filter, options)?, None)
    } else {
        let found = std::sync::Mutex::new(Vec::new());
        let census = enumerate_ops(n, filter, options, |c| found.lock().expect("lock").push(c))?;
        let mut codes = found.into_inner().expect("lock");
        codes.sort_unstable();
        (census, Some(codes))
    };
    let mut text = format!("{} tables of order {n} in class {filter}\n", census.count);
    let mut result = json!({ "n": n.to_string(), "filter": filter.name(), "count": census.count.to_string() });
    if let Some(codes) = codes {
        let strings: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
        for chunk in strings.chunks(16) {
            let _ = writeln!(text, "{}", chunk.join(" "));
        }
        result["codes"] = json!(strings);
    }
    Ok(Done::ok(text, result))
}

fn explore(n: usize, options: &ExploreOptions) -> CmdResult {
    let r = scan_question(n, options)?;
    let l = LabelMap::letters(n);
    let codes = |v: &[OpCode]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let pairs = |v: &[(OpCode, OpCode)]| {
        v.iter()
            .map(|(a, b)| json!([a.to_string(), b.to_string()]))
            .collect::<Vec<_>>()
    };
    let mut text = format!("order {n}: scan {}\n", r.status);
    let _ = writeln!(
        text,
        "part 1 (every degenerate semigroup lies in the dual of some nondegenerate non-associative table): {} ({} of {} uncovered)",
        r.part1,
        r.part1_missing.len(),
        r.scanned.sg_not_nd
    );
    if let Some(&w) = r.part1_missing.first() {
        let _ = write!(text, "{}", render_table(&format!("#{w}"), &w.decode(), &l));
    }
    let _ = writeln!(
        text,
        "part 2 (every semigroup has a nondegenerate member in its dual): {} ({} of {} fail)",
        r.part2,
        r.part2_failures.len(),
        r.scanned.sg
    );
    if let Some(&w) = r.part2_failures.first() {
        let _ = write!(text, "{}", render_table(&format!("#{w}"), &w.decode(), &l));
    }
    if !r.unresolved.is_empty() {
        let _ = writeln!(text, "{} semigroups unresolved within the budget", r.unresolved.len());
    }
    let _ = writeln!(
        text,
        "forward pass: {} nondegenerate non-associative tables checked{}",
        r.scanned.nd_not_sg_scanned,
        r.scanned.nd_not_sg_total.map_or(String::new(), |t| format!(" of {t}"))
    );
    let ranges: Vec<Value> = r
        .scanned
        .forward_ranges
        .iter()
        .map(|(lo, hi)| json!([lo.to_string(), hi.to_string()]))
        .collect();
    Ok(Done::ok(
        text,
        json!({
            "n": n.to_string(),
            "status": r.status.to_string(),
            "part1": r.part1.to_string(),
            "part1_missing": codes(&r.part1_missing),
            "part1_cover": pairs(&r.part1_cover),
            "part2": r.part2.to_string(),
            "part2_failures": codes(&r.part2_failures),
            "part2_cover": pairs(&r.part2_cover),
            "unresolved": codes(&r.unresolved),
            "scanned": {
                "sg": r.scanned.sg.to_string(),
                "sg_not_nd": r.scanned.sg_not_nd.to_string(),
                "sg_resolved": r.scanned.sg_resolved.to_string(),
                "nd_not_sg_scanned": r.scanned.nd_not_sg_scanned.to_string(),
                "nd_not_sg_total": r.scanned.nd_not_sg_total.map(|t| t.to_string()),
                "forward_ranges": ranges,
            },
        }),
    ))
}

//! The `rootdatum` command line: one verb per computation, JSON on stdout.

pub mod commands;
pub mod group_spec;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use commands::DescribeReport;

/// Prefix of every `"schema"` field; the verb and version follow.
pub const SCHEMA_PREFIX: &str = "rootdatum";
pub const SCHEMA_VERSION: &str = "v1";

pub fn schema_id(verb: &str) -> String {
    format!("{SCHEMA_PREFIX}/{verb}/{SCHEMA_VERSION}")
}

#[derive(Debug, Parser)]
#[command(name = "rootdatum", version, about = "Root data, L-groups, C-groups and algebraicity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// `GL 3`, `PGL(2)`, `sl4` or a JSON file. Names: Torus, GL, SL, PGL, Sp (Sp N is Sp_2N), U.
    #[arg(required = true, num_args = 1..=2)]
    pub group: Vec<String>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// `holomorphic` or `maass`.
    #[arg(long)]
    pub kind: Option<String>,
    /// Weight of a holomorphic family.
    #[arg(long)]
    pub k: Option<i64>,
    /// Twist exponent, e.g. `1/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Hecke eigenvalue `p:a_p`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub hecke: Vec<String>,
    /// JSON family file instead of the flags above.
    #[arg(long, conflicts_with_all = ["kind", "k", "s", "hecke"])]
    pub spec: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root datum, Cartan matrix, positive roots and δ.
    Describe(GroupArg),
    /// Dual root datum with the dual Galois action.
    Dual(GroupArg),
    /// C-group by the quotient construction, compared with the dual of G̃.
    Cgroup(GroupArg),
    /// Twisting elements in a box; existence is decided exactly.
    Twisting {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "box", default_value_t = 3)]
        bound: i64,
    },
    /// The canonical central extension G̃.
    Gtilde(GroupArg),
    /// L/C-algebraicity and arithmeticity of a GL_2 family.
    Classify(FamilyArgs),
    /// Satake parameter at a prime.
    Satake {
        #[command(flatten)]
        family: FamilyArgs,
        /// Use the trivial representation of GL_n instead of a family.
        #[arg(long, conflicts_with_all = ["kind", "k", "s", "hecke", "spec"])]
        trivial: Option<usize>,
        #[arg(long)]
        prime: u64,
        /// Twist by |det|^t.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
    },
    /// Sampled checks of the comparison between the unitary C-group and G_n.
    UnitaryCheck {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// `F<p>`, a bare prime, or `qi`.
        #[arg(long, default_value = "F97")]
        field: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Defaults to ROOTDATUM_SEED, then a fixed seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Runs every acceptance criterion.
    VerifyAll {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true)]
        mutate_delta: bool,
    },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Describe(_) => "describe",
            Command::Dual(_) => "dual",
            Command::Cgroup(_) => "cgroup",
            Command::Twisting { .. } => "twisting",
            Command::Gtilde(_) => "gtilde",
            Command::Classify(_) => "classify",
            Command::Satake { .. } => "satake",
            Command::UnitaryCheck { .. } => "unitary-check",
            Command::VerifyAll { .. } => "verify-all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: String,
    pub message: String,
}

impl CliError {
    pub fn input(message: String) -> Self {
        CliError { code: "bad_input".into(), message }
    }

    pub fn io(message: String) -> Self {
        CliError { code: "io".into(), message }
    }
}

impl From<rootdatum::Error> for CliError {
    fn from(e: rootdatum::Error) -> Self {
        CliError { code: e.code().into(), message: e.to_string() }
    }
}

/// Result of a verb: the JSON document and whether its checks passed.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

pub fn error_json(e: &CliError) -> Value {
    json!({ "schema": schema_id("error"), "error": { "code": e.code, "message": e.message } })
}

/// Pretty JSON with a trailing newline. Object keys come out sorted.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Runs a parsed command, returning the text for stdout and the exit code.
pub fn execute(cli: Cli) -> (String, i32) {
    let verb = cli.command.verb();
    match commands::dispatch(cli.command) {
        Ok(mut out) => {
            if let Value::Object(m) = &mut out.value {
                m.insert("schema".into(), Value::from(schema_id(verb)));
            }
            (render(&out.value), if out.ok { 0 } else { 1 })
        }
        Err(e) => (render(&error_json(&e)), 1),
    }
}

/// Parses `argv` and runs it. Usage errors print to stderr and exit 2.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (text, code) = execute(cli);
    print!("{text}");
    code
}

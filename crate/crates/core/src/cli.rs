//! Command-line front-end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 semantic error,
//! 10 SAT / true / bisimilar, 20 UNSAT / false / not bisimilar.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bisim::{find_distinguishing_sentence, greatest_bisimulation};
use crate::format::{
    parse_assignment, parse_derived_relation, parse_signature, parse_skolem_table, parse_structure, write_structure,
    FormatError,
};
use crate::model::{canonical_domain, Assignment, LanguageSignature, RelationalStructure, Symbol};
use crate::overlap::{build_collapsing_graph, build_dependence_graph, overlap_failure, OverlapFailure};
use crate::semantics::evaluate;
use crate::skolem::{entanglement_set, validate_skolem_map, CouplingMap, Schema};
use crate::solver::{
    basic_interpolant, decide_sat_with, find_model_bounded, leaf_tree, SolveOptions, SolverError, Verdict,
    DEFAULT_GROUND_CAP,
};
use crate::syntax::{
    classify_fragment, free_placeholders, parse_formula_with, rename_apart, to_binding_normal_form, Formula,
    FragmentClass, NormalFormSentence, ParseOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SEMANTIC: i32 = 2;
pub const EXIT_YES: i32 = 10;
pub const EXIT_NO: i32 = 20;

/// Result of one invocation: exit code plus captured output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "bindform", version, about = "Argument/binding first-order logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormulaInput {
    /// Formula file.
    #[arg(long, value_name = "FILE", required_unless_present = "expr")]
    formula: Option<PathBuf>,
    /// Formula text given inline.
    #[arg(long, conflicts_with = "formula")]
    expr: Option<String>,
    /// Argument order for positional atoms `r(x, y)`.
    #[arg(long, value_delimiter = ',')]
    arg_order: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a signature and optionally a structure and a formula.
    Check {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long = "str")]
        structure: Option<PathBuf>,
        #[arg(long)]
        formula: Option<PathBuf>,
    },
    /// Print the fragment (OB, CB, DB, BB) of a sentence.
    Classify {
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Evaluate a formula on a structure.
    Eval {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long = "str")]
        structure: PathBuf,
        #[command(flatten)]
        input: FormulaInput,
        /// Assignment such as `x=d0,b=d1`.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Decide satisfiability of a one-binding sentence.
    Sat {
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        input: FormulaInput,
        /// Also write the certificate JSON to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Search for a finite model up to a given order.
    Model {
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_GROUND_CAP)]
        ground_cap: usize,
    },
    /// Check two structures for bisimilarity.
    Bisim {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        str1: PathBuf,
        #[arg(long)]
        str2: PathBuf,
        /// Quantifier depth searched for a distinguishing sentence.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Write collapsing and dependence graphs as DOT files.
    Graphs {
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the binding normal form of a sentence.
    Normalize {
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Compute an interpolant between two derived relations.
    Interpolate {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Validate a Skolem map table (JSON).
    SkolemCheck {
        #[arg(long)]
        table: PathBuf,
    },
    /// Sample coupling maps and print entanglement sets.
    Entangle {
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }

    fn semantic(message: impl ToString) -> Self {
        Self { code: EXIT_SEMANTIC, message: message.to_string() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        if e.is_parse_error() {
            Failure::usage(e)
        } else {
            Failure::semantic(e)
        }
    }
}

macro_rules! semantic {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::semantic(e)
            }
        }
    )*};
}

semantic!(
    SolverError,
    crate::skolem::SkolemError,
    crate::semantics::EvalError,
    crate::bisim::BisimError,
    crate::syntax::NormalFormError
);

type Outcome = Result<(i32, String), Failure>;

/// Runs the CLI on `argv` (program name first) and captures its output.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                CliOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => CliOutput { code, stdout, stderr: String::new() },
        Err(f) => CliOutput { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_signature(path: &Path) -> Result<LanguageSignature, Failure> {
    parse_signature(&read(path)?).map_err(|e| located(path, e))
}

fn load_structure(path: &Path, sig: &LanguageSignature) -> Result<RelationalStructure, Failure> {
    parse_structure(&read(path)?, sig).map_err(|e| located(path, e))
}

fn located(path: &Path, e: FormatError) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn load_formula(input: &FormulaInput, sig: &LanguageSignature) -> Result<Formula, Failure> {
    let (text, origin) = match (&input.formula, &input.expr) {
        (Some(path), _) => (read(path)?, path.display().to_string()),
        (None, Some(text)) => (text.clone(), "--expr".to_string()),
        (None, None) => return Err(Failure::usage("missing --formula or --expr")),
    };
    let arg_order = match &input.arg_order {
        Some(names) => {
            Some(names.iter().map(|n| Symbol::new(n.trim()).map_err(Failure::usage)).collect::<Result<Vec<_>, _>>()?)
        }
        None => None,
    };
    parse_formula_with(&text, sig, &ParseOptions { arg_order }).map_err(|e| Failure::usage(format!("{origin}:{e}")))
}

fn load_sentence(input: &FormulaInput, sig: &LanguageSignature) -> Result<(Formula, NormalFormSentence), Failure> {
    let phi = load_formula(input, sig)?;
    let nf = to_binding_normal_form(&phi, sig)?;
    Ok((phi, nf))
}

/// Schemas and derived relations of the distinct leaves of a one-binding
/// sentence, variables renamed apart.
fn ob_schemas(nf: &NormalFormSentence, sig: &LanguageSignature) -> Result<Vec<Schema>, Failure> {
    let class = classify_fragment(nf);
    if class != FragmentClass::OB {
        return Err(SolverError::NotOneBinding(class).into());
    }
    let (leaves, _) = leaf_tree(&rename_apart(nf, sig));
    leaves.iter().map(|b| Schema::from_block(b).map(|(s, _)| s).map_err(Failure::from)).collect()
}

fn verdict(yes: bool) -> i32 {
    if yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Check { sig, structure, formula } => {
            let signature = load_signature(&sig)?;
            let mut out = format!(
                "signature: {} arguments, {} relations\n",
                signature.arguments().len(),
                signature.relations().len()
            );
            if let Some(path) = structure {
                let m = load_structure(&path, &signature)?;
                let _ = writeln!(out, "structure: order {}", m.order());
            }
            if let Some(path) = formula {
                let input = FormulaInput { formula: Some(path), expr: None, arg_order: None };
                let phi = load_formula(&input, &signature)?;
                let free = free_placeholders(&phi, &signature);
                if free.is_empty() {
                    out.push_str("formula: sentence\n");
                } else {
                    let _ = writeln!(out, "formula: free {{{}}}", free.iter().join(", "));
                }
            }
            Ok((EXIT_OK, out))
        }
        Command::Classify { sig, input } => {
            let signature = load_signature(&sig)?;
            let (_, nf) = load_sentence(&input, &signature)?;
            Ok((EXIT_OK, format!("{}\n", classify_fragment(&nf).name())))
        }
        Command::Eval { sig, structure, input, assign } => {
            let signature = load_signature(&sig)?;
            let m = load_structure(&structure, &signature)?;
            let phi = load_formula(&input, &signature)?;
            let chi = match assign {
                Some(text) => parse_assignment(&text)?,
                None => Assignment::new(),
            };
            let value = evaluate(&m, &chi, &phi)?;
            Ok((verdict(value), format!("{value}\n")))
        }
        Command::Sat { sig, input, certificate, jobs } => {
            let signature = load_signature(&sig)?;
            let (_, nf) = load_sentence(&input, &signature)?;
            let v = decide_sat_with(&nf, &signature, SolveOptions { jobs })?;
            let json = serde_json::to_string_pretty(&v.certificate()).expect("serializable") + "\n";
            if let Some(path) = certificate {
                fs::write(&path, &json).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            Ok((verdict(matches!(v, Verdict::Sat { .. })), json))
        }
        Command::Model { sig, input, max_order, ground_cap } => {
            let signature = load_signature(&sig)?;
            let phi = load_formula(&input, &signature)?;
            match find_model_bounded(&phi, &signature, max_order, ground_cap)? {
                Some(m) => Ok((EXIT_YES, write_structure(&m))),
                None => Ok((EXIT_NO, String::new())),
            }
        }
        Command::Bisim { sig, str1, str2, depth } => {
            let signature = load_signature(&sig)?;
            let m1 = load_structure(&str1, &signature)?;
            let m2 = load_structure(&str2, &signature)?;
            let z = greatest_bisimulation(&m1, &m2)?;
            match z.unmatched() {
                None => Ok((EXIT_YES, "bisimilar\n".to_string())),
                Some((side, chi)) => {
                    let mut out = format!("not bisimilar\nunmatched: structure {side} {chi}\n");
                    if let Some(phi) = find_distinguishing_sentence(&m1, &m2, depth)? {
                        let _ = writeln!(out, "distinguishing: {phi}");
                    }
                    Ok((EXIT_NO, out))
                }
            }
        }
        Command::Graphs { sig, input, out } => {
            let signature = load_signature(&sig)?;
            let (_, nf) = load_sentence(&input, &signature)?;
            let schemas = ob_schemas(&nf, &signature)?;
            fs::create_dir_all(&out).map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;
            let groups = schemas.iter().into_group_map_by(|s| s.arguments());
            let mut report = String::new();
            for args in groups.keys().sorted() {
                let group = &groups[args];
                let name = args.iter().join("-");
                let c = build_collapsing_graph(group, args)?;
                let d = build_dependence_graph(group, args)?;
                for (kind, dot) in [("collapsing", c.to_dot()), ("dependence", d.to_dot())] {
                    let path = out.join(format!("{kind}_{name}.dot"));
                    fs::write(&path, dot).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                }
                let status = match overlap_failure(group, args)? {
                    None => "overlapping".to_string(),
                    Some(OverlapFailure::Conflict(e1, e2)) => format!("conflict {} {}", e1.label(), e2.label()),
                    Some(OverlapFailure::Cycle(cycle)) => {
                        format!("cycle {}", cycle.iter().map(|e| e.label()).join(" -> "))
                    }
                };
                let _ = writeln!(report, "{}: {} schemas, {status}", args.iter().join(","), group.len());
            }
            Ok((EXIT_OK, report))
        }
        Command::Normalize { sig, input } => {
            let signature = load_signature(&sig)?;
            let (_, nf) = load_sentence(&input, &signature)?;
            Ok((EXIT_OK, format!("{}\n", nf.to_formula())))
        }
        Command::Interpolate { sig, left, right } => {
            let signature = load_signature(&sig)?;
            let l = parse_derived_relation(&read(&left)?, &signature).map_err(|e| located(&left, e))?;
            let r = parse_derived_relation(&read(&right)?, &signature).map_err(|e| located(&right, e))?;
            Ok((EXIT_OK, format!("{}\n", basic_interpolant(&l, &r)?)))
        }
        Command::SkolemCheck { table } => {
            let theta = parse_skolem_table(&read(&table)?).map_err(|e| located(&table, e))?;
            let violations = validate_skolem_map(&theta)?;
            if violations.is_empty() {
                Ok((EXIT_OK, format!("valid: {} entries\n", theta.table.len())))
            } else {
                let list = violations.iter().map(|v| v.to_string()).join("\n");
                Err(Failure::semantic(format!("invalid Skolem map\n{list}")))
            }
        }
        Command::Entangle { sig, input, seed, samples, carrier } => {
            if carrier == 0 {
                return Err(Failure::usage("--carrier must be positive"));
            }
            let signature = load_signature(&sig)?;
            let (_, nf) = load_sentence(&input, &signature)?;
            let schemas = ob_schemas(&nf, &signature)?;
            let domain = canonical_domain(carrier);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let groups = schemas.iter().into_group_map_by(|s| s.arguments());
            let mut out = String::new();
            for i in 0..samples {
                let gamma = CouplingMap::random(&schemas, &domain, &mut rng);
                for args in groups.keys().sorted() {
                    let set = entanglement_set(&gamma, &groups[args], args)?;
                    let shown = set.iter().join(", ");
                    let _ = writeln!(out, "sample {i} {}: {{{shown}}}", args.iter().join(","));
                }
            }
            Ok((EXIT_OK, out))
        }
    }
}

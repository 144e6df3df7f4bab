//! `homz`: solvability of homogeneous integer linear systems from the command
//! line.
//!
//! Exit codes: 0 solvable or success, 1 unsolvable, 2 usage or parse error,
//! 3 when the filtration pipeline's hypotheses fail.

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homz_core::json::wrap;
use homz_core::{
    analyze, avoid_hom, dual_basis, gen_chain, hnf, kernel_basis, min_unsolvable_size, minimal_core,
    sample_unsolvable_size, snf, solve, solve_via_filtration, validate_filtration, AvoidanceProblem, BigInt,
    IntMatrix, Mode, Presentation, System,
};
use serde_json::{json, Value};

use input::{load, read_source, Format, Input};

#[derive(Parser)]
#[command(name = "homz", version, about = "Exact solvability of homogeneous linear systems over the integers")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a solution with every variable nonzero
    Solve {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Nontrivial)]
        mode: ModeArg,
    },
    /// Look for a solution that is not identically zero
    WeakSolve {
        #[command(flatten)]
        input: InputArg,
    },
    /// Saturated basis of the integer solution lattice
    Kernel {
        #[command(flatten)]
        input: InputArg,
    },
    /// Row-style Hermite normal form with its transform
    Hnf {
        #[command(flatten)]
        input: InputArg,
    },
    /// Smith normal form with both transforms
    Snf {
        #[command(flatten)]
        input: InputArg,
    },
    /// Structure and dual of a finitely presented abelian group
    Dual {
        #[command(flatten)]
        input: InputArg,
    },
    /// Convert between systems (.zls) and presentations (.zpres)
    Translate {
        #[command(flatten)]
        input: InputArg,
    },
    /// Extract an unsolvable core by deleting equations
    Core {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Nontrivial)]
        mode: ModeArg,
    },
    /// Size of the smallest unsolvable subsystem
    MinSize {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Nontrivial)]
        mode: ModeArg,
        /// Largest number of equations searched exactly
        #[arg(long, default_value_t = homz_core::DEFAULT_SEARCH_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        /// Estimate from this many random subsets per size instead of searching exactly
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        sample: Option<u64>,
        /// Seed for --sample
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate instances
    #[command(subcommand)]
    Gen(GenCommand),
    /// Avoidance homomorphism for a JSON problem fixture
    LemmaHom {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        strict: StrictArg,
    },
    /// Nontrivial solution through the free quotient of the relation lattice
    FiltrationSolve {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        strict: StrictArg,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Divisibility chain x_i = P * x_{i+1} of length N
    Chain { n: usize, p: BigInt },
}

#[derive(Args)]
struct InputArg {
    /// Input file, or - for standard input
    input: String,
}

#[derive(Args)]
struct StrictArg {
    /// Require each generator to lie outside the span of the earlier ones
    #[arg(long)]
    strict_filtration: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Nontrivial,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Nontrivial => Mode::Nontrivial,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// A library error while handling the named input.
    Core(String, homz_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_, e) if e.is_hypothesis_failure() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

const SOLVABLE: u8 = 0;
const UNSOLVABLE: u8 = 1;

/// Collects stdout text so that a failed command prints nothing but its
/// diagnostic.
struct Output {
    json: bool,
    text: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn value(&mut self, v: &Value) {
        self.line(serde_json::to_string_pretty(v).expect("JSON values serialize"));
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(wrap(m.row(i)))).collect())
}

fn presentation_json(p: &Presentation) -> Value {
    let mut v = json!({ "gens": p.n_generators() });
    if let Some(names) = p.generator_names() {
        v["names"] = json!(names);
    }
    v["relations"] = matrix_json(p.relations());
    v
}

fn warn_generators_in_relations(path: &str, p: &Presentation) {
    for i in p.generators_in_relations() {
        let name = p.generator_names().map_or_else(|| format!("e{i}"), |n| n[i].clone());
        log::warn!("{path}: generator {name} lies in the relation subgroup");
    }
}

fn run(cli: Cli, out: &mut Output) -> Result<u8, CliError> {
    match cli.command {
        Command::Solve { input, mode } => run_solve(&input.input, mode.into(), out),
        Command::WeakSolve { input } => run_solve(&input.input, Mode::Weak, out),
        Command::Kernel { input } => {
            let (m, labels) = load(&input.input)?.into_matrix();
            let k = kernel_basis(&m);
            if out.json {
                let mut v = json!({ "ambient_dim": k.ambient_dim, "rank": k.len() });
                if let Some(labels) = &labels {
                    v["variables"] = json!(labels);
                }
                v["vectors"] = matrix_json(&k.to_matrix());
                out.value(&v);
            } else {
                out.line(format!("# kernel rank {} in dimension {}", k.len(), k.ambient_dim));
                if let Some(labels) = labels {
                    out.line(format!("# columns: {}", labels.join(" ")));
                }
                out.text.push_str(&k.to_matrix().to_string());
            }
            Ok(SOLVABLE)
        }
        Command::Hnf { input } => {
            let (m, _) = load(&input.input)?.into_matrix();
            let r = hnf(&m);
            if out.json {
                out.value(&json!({
                    "rank": r.rank,
                    "pivots": r.pivots,
                    "h": matrix_json(&r.h),
                    "u": matrix_json(&r.u),
                }));
            } else {
                out.line(format!("# rank {}, pivot columns {:?}", r.rank, r.pivots));
                out.text.push_str(&r.h.to_string());
            }
            Ok(SOLVABLE)
        }
        Command::Snf { input } => {
            let (m, _) = load(&input.input)?.into_matrix();
            let r = snf(&m);
            if out.json {
                out.value(&json!({
                    "invariant_factors": wrap(&r.invariant_factors),
                    "d": matrix_json(&r.d),
                    "u": matrix_json(&r.u),
                    "v": matrix_json(&r.v),
                }));
            } else {
                let factors: Vec<String> = r.invariant_factors.iter().map(ToString::to_string).collect();
                out.line(format!("# invariant factors: {}", factors.join(" ")));
                out.text.push_str(&r.d.to_string());
            }
            Ok(SOLVABLE)
        }
        Command::Dual { input } => {
            let p = load(&input.input)?.into_presentation();
            warn_generators_in_relations(&input.input, &p);
            let info = analyze(&p);
            let basis = dual_basis(&p);
            if out.json {
                let mut v = info.to_json();
                v["dual_basis"] = matrix_json(&basis.to_matrix());
                out.value(&v);
            } else {
                out.line(info.to_string());
                if info.has_trivial_dual() {
                    out.line("dual is trivial");
                } else {
                    out.line("# dual basis");
                    out.text.push_str(&basis.to_matrix().to_string());
                }
            }
            Ok(SOLVABLE)
        }
        Command::Translate { input } => {
            let loaded = load(&input.input)?;
            match loaded.format() {
                Format::Zpres => {
                    let p = loaded.into_presentation();
                    warn_generators_in_relations(&input.input, &p);
                    emit_system(&homz_core::presentation_to_system(&p), out);
                }
                Format::Zls | Format::Json => {
                    let p = loaded.into_presentation();
                    if out.json {
                        out.value(&presentation_json(&p));
                    } else {
                        out.text.push_str(&p.to_string());
                    }
                }
                Format::Matrix => emit_system(&loaded.into_system(), out),
            }
            Ok(SOLVABLE)
        }
        Command::Core { input, mode } => {
            let s = load(&input.input)?.into_system();
            let mode = mode.into();
            let Some(report) = minimal_core(&s, mode) else {
                if out.json {
                    out.value(&json!({ "mode": mode, "status": "solvable", "core_indices": null }));
                } else {
                    out.line(format!("solvable ({mode}): no unsolvable core"));
                }
                return Ok(SOLVABLE);
            };
            if out.json {
                let mut v = report.to_json();
                v["status"] = json!("unsolvable");
                v["equations"] = json!(report.core_indices.iter().map(|&i| s.equation_to_string(i)).collect::<Vec<_>>());
                out.value(&v);
            } else {
                let minimal = if report.locally_minimal { "locally minimal" } else { "not locally minimal" };
                out.line(format!("unsolvable ({mode}): core of {} equations, {minimal}", report.core_indices.len()));
                for &i in &report.core_indices {
                    out.line(format!("  [{i}] {}", s.equation_to_string(i)));
                }
            }
            Ok(UNSOLVABLE)
        }
        Command::MinSize {
            input,
            mode,
            bound,
            sample,
            seed,
        } => {
            let s = load(&input.input)?.into_system();
            let mode = mode.into();
            let (size, exact) = match sample {
                Some(k) => (sample_unsolvable_size(&s, mode, k as usize, seed), false),
                None => {
                    let size = min_unsolvable_size(&s, mode, bound as usize)
                        .map_err(|e| CliError::Core(input.input.clone(), e))?;
                    (size, true)
                }
            };
            if out.json {
                out.value(&json!({ "mode": mode, "min_size": size, "exact": exact }));
            } else {
                match (size, exact) {
                    (Some(k), true) => out.line(format!("smallest unsolvable subsystem ({mode}): {k} equations")),
                    (Some(k), false) => out.line(format!(
                        "smallest unsolvable subsystem ({mode}): at most {k} equations (sampled)"
                    )),
                    (None, true) => out.line(format!("every subsystem is solvable ({mode})")),
                    (None, false) => out.line(format!("no unsolvable subsystem found ({mode}, sampled)")),
                }
            }
            Ok(if size.is_some() { UNSOLVABLE } else { SOLVABLE })
        }
        Command::Gen(GenCommand::Chain { n, p }) => {
            let s = gen_chain(n, p).map_err(|e| CliError::Core("gen chain".into(), e))?;
            emit_system(&s, out);
            Ok(SOLVABLE)
        }
        Command::LemmaHom { input, strict } => {
            let text = read_source(&input.input)?;
            let located = |e| CliError::Core(input.input.clone(), e);
            let problem = AvoidanceProblem::from_json(&text).map_err(located)?;
            if strict.strict_filtration {
                validate_filtration(&problem).map_err(located)?;
            }
            let psi = avoid_hom(&problem).map_err(located)?;
            if out.json {
                out.value(&json!({ "psi": wrap(&psi) }));
            } else {
                let entries: Vec<String> = psi.iter().map(ToString::to_string).collect();
                out.line(format!("psi = [{}]", entries.join(", ")));
            }
            Ok(SOLVABLE)
        }
        Command::FiltrationSolve { input, strict } => {
            let loaded = load(&input.input)?;
            if let Input::Presentation(p) = &loaded {
                warn_generators_in_relations(&input.input, p);
            }
            let s = loaded.into_system();
            let sol = solve_via_filtration(&s, strict.strict_filtration)
                .map_err(|e| CliError::Core(input.input.clone(), e))?;
            if out.json {
                out.value(&sol.to_json());
            } else {
                out.line(format!("solvable (nontrivial) via a free quotient of rank {}", sol.quotient.rank));
                let entries: Vec<String> = sol.psi.iter().map(ToString::to_string).collect();
                out.line(format!("psi = [{}]", entries.join(", ")));
                for (name, value) in &sol.witness.assignment {
                    out.line(format!("  {name} = {value}"));
                }
            }
            Ok(SOLVABLE)
        }
    }
}

fn run_solve(path: &str, mode: Mode, out: &mut Output) -> Result<u8, CliError> {
    let s = load(path)?.into_system();
    let report = solve(&s, mode);
    if out.json {
        out.value(&report.to_json());
    } else if let Some(w) = &report.witness {
        out.line(format!("solvable ({mode})"));
        for (name, value) in &w.assignment {
            out.line(format!("  {name} = {value}"));
        }
    } else if let Some(c) = &report.certificate {
        out.line(format!("unsolvable ({mode})"));
        out.line(format!("dead variables: {}", c.dead_variables.join(" ")));
    }
    Ok(if report.is_solvable() { SOLVABLE } else { UNSOLVABLE })
}

fn emit_system(s: &System, out: &mut Output) {
    if out.json {
        out.value(&s.to_json());
    } else {
        out.text.push_str(&s.to_string());
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format(|buf, record| {
            let label = match record.level() {
                log::Level::Error => "error",
                log::Level::Warn => "warning",
                _ => "note",
            };
            writeln!(buf, "{label}: {}", record.args())
        })
        .init();
    let cli = Cli::parse();
    let mut out = Output {
        json: cli.json,
        text: String::new(),
    };
    match run(cli, &mut out) {
        Ok(code) => {
            print!("{}", out.text);
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! Command dispatch for the `invariance` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use invariance::closure::{decide_commutative, m_closure};
use invariance::price::{self, PriceDataset, PriceVerdict};
use invariance::refutation::{Step, MAX_AXIOM_UNIVERSE};
use invariance::{
    check_derivation, decide_general, forced_comparisons, random, sat, Certificate, Instance, Monoid,
    Refutation, Source, Verdict,
};
use serde_json::json;

pub const EXIT_RATIONALIZABLE: i32 = 0;
pub const EXIT_NOT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "invariance", version, about = "Invariant rationalizability of choice data")]
pub struct Cli {
    /// Seed for anything randomised.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides such as `max_width=3,max_clauses=20000`.
    #[arg(long, global = true)]
    pub limits: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Collapse,
    Sat,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PriceTest {
    Quasilinear,
    Homothetic,
    Translation,
    Garp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    General,
    Commuting,
    Identity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide rationalizability.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Cross-check against the SAT encoding.
        #[arg(long)]
        oracle: bool,
        /// Write the CNF encoding in DIMACS format.
        #[arg(long)]
        dimacs_out: Option<PathBuf>,
    },
    /// Comparisons shared by every invariant rationalization, as JSON.
    Predict { file: PathBuf },
    /// Print a re-validated refutation or a rationalization.
    Explain { file: PathBuf },
    /// Revealed-preference tests on price data (CSV).
    Price {
        #[arg(value_enum)]
        test: PriceTest,
        file: PathBuf,
    },
    /// Print a random instance.
    Generate {
        #[arg(long, value_enum, default_value_t = Family::General)]
        family: Family,
        #[arg(long, default_value_t = 6)]
        size: usize,
    },
}

/// Exit code plus what goes to stdout and stderr.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }

    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }
}

pub fn exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Rationalizable(_) => EXIT_RATIONALIZABLE,
        Verdict::NotRationalizable(_) => EXIT_NOT,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return Outcome { code, stdout: if code == 0 { e.to_string() } else { String::new() }, stderr: if code == 0 { String::new() } else { e.to_string() } };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(msg) => Outcome::usage(msg),
    }
}

fn load(path: &PathBuf, limits: &Option<String>) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut inst = Instance::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(spec) = limits {
        apply_limits(&mut inst, spec)?;
    }
    Ok(inst)
}

pub fn apply_limits(inst: &mut Instance, spec: &str) -> Result<(), String> {
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| format!("bad limit `{item}`, expected key=value"))?;
        let v: usize = value.trim().parse().map_err(|_| format!("bad value in `{item}`"))?;
        let l = &mut inst.limits;
        match key.trim() {
            "max_links" => l.max_links = Some(v),
            "max_clauses" => l.max_clauses = v,
            "max_width" => l.max_width = v,
            "search_nodes" => l.search_nodes = v,
            "monoid_cap" => inst.monoid_cap = v,
            other => return Err(format!("unknown limit `{other}`")),
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Check { file, mode, oracle, dimacs_out } => {
            let inst = load(file, &cli.limits)?;
            check(&inst, *mode, *oracle, dimacs_out.as_ref())
        }
        Command::Predict { file } => predict(&load(file, &cli.limits)?),
        Command::Explain { file } => explain(&load(file, &cli.limits)?),
        Command::Price { test, file } => {
            let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
            let ds = PriceDataset::from_csv(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            price_report(&ds, *test)
        }
        Command::Generate { family, size } => {
            let mut rng = random::rng(cli.seed);
            let size = (*size).max(1);
            let inst = match family {
                Family::General => random::general_instance(&mut rng, size.max(2), 12),
                Family::Commuting => random::commuting_instance(&mut rng, size.max(2), 3),
                Family::Identity => random::identity_instance(&mut rng, size),
            };
            Ok(Outcome::ok(0, inst.to_json() + "\n"))
        }
    }
}

/// The engine `auto` would pick, and its verdict.
pub fn decide(inst: &Instance, monoid: &Monoid, mode: Mode) -> Result<(&'static str, Verdict), String> {
    match mode {
        Mode::Sat => sat::decide(&inst.data, monoid).map(|v| ("sat", v)).map_err(|e| e.to_string()),
        Mode::Collapse => Ok(("collapse", decide_general(&inst.data, monoid, &inst.limits))),
        Mode::Auto => match decide_commutative(&inst.data, monoid) {
            // for partial families a collapse derivation says more than the cycle
            Ok(Verdict::NotRationalizable(Refutation::Cycle(c)))
                if !monoid.all_total() && monoid.universe_len() <= MAX_AXIOM_UNIVERSE =>
            {
                match decide_general(&inst.data, monoid, &inst.limits) {
                    v @ Verdict::NotRationalizable(Refutation::Derivation(_)) => Ok(("collapse", v)),
                    _ => Ok(("closure", Verdict::NotRationalizable(Refutation::Cycle(c)))),
                }
            }
            Ok(v) => Ok(("closure", v)),
            Err(_) => Ok(("collapse", decide_general(&inst.data, monoid, &inst.limits))),
        },
    }
}

fn check(inst: &Instance, mode: Mode, oracle: bool, dimacs: Option<&PathBuf>) -> Result<Outcome, String> {
    let monoid = inst.monoid();
    let mut out = String::new();
    if let Some(path) = dimacs {
        let enc = sat::encode_phi(&inst.data, &monoid);
        std::fs::write(path, enc.cnf.to_dimacs()).map_err(|e| format!("{}: {e}", path.display()))?;
        writeln!(out, "dimacs: {} ({} clauses)", path.display(), enc.stats.emitted).unwrap();
    }
    writeln!(out, "alternatives: {}", inst.universe.len()).unwrap();
    writeln!(out, "monoid: {} elements{}", monoid.len(), if monoid.is_closed() { "" } else { " (truncated)" }).unwrap();
    let (engine, mut verdict) = decide(inst, &monoid, mode)?;
    writeln!(out, "engine: {engine}").unwrap();
    writeln!(out, "verdict: {}", verdict.label()).unwrap();
    out.push_str(&describe(inst, &monoid, &verdict));
    if oracle {
        let reference = sat::decide(&inst.data, &monoid).map_err(|e| e.to_string())?;
        match (verdict.as_bool(), reference.as_bool()) {
            (Some(a), Some(b)) if a != b => {
                return Ok(Outcome {
                    code: EXIT_USAGE,
                    stdout: out,
                    stderr: format!("engines disagree: {engine} says {}, sat says {}", verdict.label(), reference.label()),
                });
            }
            (None, _) => {
                writeln!(out, "oracle: sat decides {}", reference.label()).unwrap();
                verdict = reference;
            }
            _ => writeln!(out, "oracle: sat agrees").unwrap(),
        }
    }
    Ok(Outcome::ok(exit_code(&verdict), out))
}

fn describe(inst: &Instance, monoid: &Monoid, verdict: &Verdict) -> String {
    let u = &inst.universe;
    let mut out = String::new();
    match verdict {
        Verdict::NotRationalizable(Refutation::Derivation(d)) => {
            writeln!(out, "derivation: {} steps", d.len()).unwrap();
            if let Some(Step::Collapse { left, right, .. }) = d.steps.last() {
                writeln!(
                    out,
                    "collapsed: {} and {}",
                    d.steps[*left].result().display(u),
                    d.steps[*right].result().display(u)
                )
                .unwrap();
            }
            out.push_str(&d.trace(monoid, u));
        }
        Verdict::NotRationalizable(Refutation::Cycle(c)) => {
            let closure = m_closure(&inst.data, monoid);
            writeln!(out, "cycle: {}", c.display(&closure, u)).unwrap();
        }
        Verdict::NotRationalizable(Refutation::Unsatisfiable) => out.push_str("the clause system has no model\n"),
        Verdict::Rationalizable(Certificate::Witness(p)) => writeln!(out, "witness: {}", p.display(u)).unwrap(),
        Verdict::Rationalizable(Certificate::AcyclicClosure) => out.push_str("certificate: acyclic M-closure\n"),
        Verdict::Rationalizable(Certificate::Saturated) => out.push_str("certificate: saturation without ⟨∅,∅⟩\n"),
        Verdict::Unknown(why) => writeln!(out, "reason: {why}").unwrap(),
    }
    out
}

fn predict(inst: &Instance) -> Result<Outcome, String> {
    let monoid = inst.monoid();
    let f = match forced_comparisons(&inst.data, &monoid, &inst.limits) {
        Ok(f) => f,
        Err(invariance::PredictError::NotRationalizable) => {
            return Ok(Outcome { code: EXIT_NOT, stdout: String::new(), stderr: "instance is not rationalizable".into() })
        }
        Err(e) => return Err(e.to_string()),
    };
    let u = &inst.universe;
    let pairs = |m: &std::collections::BTreeMap<(usize, usize), Source>| {
        m.keys().map(|&(x, y)| json!([u.label(x), u.label(y)])).collect::<Vec<_>>()
    };
    let sources = |m: &std::collections::BTreeMap<(usize, usize), Source>| m.values().copied().collect::<Vec<_>>();
    let doc = json!({
        "format_version": invariance::instance::FORMAT_VERSION,
        "weak": pairs(&f.weak),
        "strict": pairs(&f.strict),
        "source": { "weak": sources(&f.weak), "strict": sources(&f.strict) },
    });
    Ok(Outcome::ok(EXIT_RATIONALIZABLE, serde_json::to_string_pretty(&doc).unwrap() + "\n"))
}

fn explain(inst: &Instance) -> Result<Outcome, String> {
    let monoid = inst.monoid();
    let (engine, verdict) = decide(inst, &monoid, Mode::Auto)?;
    let mut out = format!("engine: {engine}\nverdict: {}\n", verdict.label());
    let valid = match &verdict {
        Verdict::NotRationalizable(Refutation::Derivation(d)) => check_derivation(d, &inst.data, &monoid)
            .map_err(|e| e.to_string()),
        Verdict::NotRationalizable(Refutation::Cycle(c)) => {
            if c.verify(&m_closure(&inst.data, &monoid)) {
                Ok(())
            } else {
                Err("cycle does not re-verify".to_string())
            }
        }
        Verdict::Rationalizable(Certificate::Witness(p)) => p.check(&inst.data, &monoid).map_err(|e| format!("{e:?}")),
        _ => Ok(()),
    };
    out.push_str(&describe(inst, &monoid, &verdict));
    if let Verdict::Rationalizable(Certificate::AcyclicClosure | Certificate::Saturated) = verdict {
        if let Ok(Verdict::Rationalizable(Certificate::Witness(p))) = sat::decide(&inst.data, &monoid) {
            writeln!(out, "witness: {}", p.display(&inst.universe)).unwrap();
        }
    }
    match valid {
        Ok(()) => {
            out.push_str("re-validated: yes\n");
            Ok(Outcome::ok(exit_code(&verdict), out))
        }
        Err(e) => Ok(Outcome { code: EXIT_USAGE, stdout: out, stderr: format!("re-validation failed: {e}") }),
    }
}

fn price_report(ds: &PriceDataset, test: PriceTest) -> Result<Outcome, String> {
    let (verdict, value) = match test {
        PriceTest::Quasilinear => {
            let v = price::quasilinear_check(ds);
            let val = fail_value(&v, |c| price::quasilinear_problem(ds).cycle_value(c).to_string());
            (v, val)
        }
        PriceTest::Homothetic => {
            let p = price::homothetic_problem(ds).map_err(|e| e.to_string())?;
            let v = price::homothetic_check(ds).map_err(|e| e.to_string())?;
            let val = fail_value(&v, |c| p.cycle_value(c).to_string());
            (v, val)
        }
        PriceTest::Translation => {
            let v = price::translation_check(ds);
            let val = fail_value(&v, |c| price::translation_problem(ds).cycle_value(c).to_string());
            (v, val)
        }
        PriceTest::Garp => (price::garp_check(ds), None),
    };
    let mut out = format!("observations: {}\n", ds.len());
    let code = match &verdict {
        PriceVerdict::Pass => {
            out.push_str("result: pass\n");
            EXIT_RATIONALIZABLE
        }
        PriceVerdict::Fail(c) => {
            let cycle: Vec<String> = c.iter().chain(c.first()).map(|k| (k + 1).to_string()).collect();
            writeln!(out, "result: fail\ncycle: {}", cycle.join(" -> ")).unwrap();
            if let Some(v) = value {
                writeln!(out, "cycle value: {v}").unwrap();
            }
            EXIT_NOT
        }
    };
    Ok(Outcome::ok(code, out))
}

fn fail_value(v: &PriceVerdict, f: impl Fn(&[usize]) -> String) -> Option<String> {
    match v {
        PriceVerdict::Fail(c) => Some(f(c)),
        PriceVerdict::Pass => None,
    }
}

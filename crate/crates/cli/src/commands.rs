use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ratser::automata::{
    automaton_from_json, automaton_to_json, automaton_to_term, compile_term, equivalent,
    equivalent_automata, search_simulation, Direction, EquivSemiring, WeightedAutomaton,
};
use ratser::harness::{run_suite, CayleyTable, SuiteConfig, Verdict};
use ratser::par::Execution;
use ratser::semiring::{
    Booleans, ExtendedNaturals, InitialIteration, Naturals, QuotientK, SemiringDescriptor,
};
use ratser::series::{render_series, series_to_json, Alphabet, SeriesSemiring, Word};
use ratser::term::{eval_term, normalize, normalize_disjoint, parse_term, Term};
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Cli, Command, Output};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ratser::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

type Result<T> = std::result::Result<T, CliError>;

const DIFFERENT: u8 = 1;

/// Binds `$s` to the semiring named by `$desc` and evaluates `$body`.
macro_rules! with_semiring {
    ($desc:expr, $s:ident => $body:expr) => {
        match $desc {
            SemiringDescriptor::N => {
                let $s = Naturals;
                $body
            }
            SemiringDescriptor::Ninf => {
                let $s = ExtendedNaturals;
                $body
            }
            SemiringDescriptor::Bool => {
                let $s = Booleans;
                $body
            }
            SemiringDescriptor::QuotientK(k) => {
                let $s = QuotientK::new(*k)?;
                $body
            }
            SemiringDescriptor::InitialIteration => {
                let $s = InitialIteration;
                $body
            }
            other => return Err(ratser::Error::Unsupported(format!("semiring {other} on the command line")).into()),
        }
    };
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Eval { expr } => eval(cli, expr),
        Command::Normalize { expr, disjoint } => normalize_cmd(cli, expr, *disjoint),
        Command::Compile { expr, out } => compile(cli, expr, out.as_deref()),
        Command::Totterm { file } => totterm(cli, file),
        Command::Equiv { left, right } => equiv(cli, left, right),
        Command::EquivFile { left, right } => equiv_file(cli, left, right),
        Command::Simulate { left, right, budget } => simulate(cli, left, right, *budget),
        Command::Check { suite, trials, group } => {
            let group = group.as_deref().map(load_group).transpose()?;
            let cfg = SuiteConfig {
                semiring: cli.semiring.clone(),
                trials: *trials,
                seed: cli.seed,
                group,
                alphabet: cli.alphabet.as_deref().map_or_else(|| Alphabet::parse("ab"), Alphabet::parse)?,
                maxlen: cli.maxlen,
                exec: exec(cli),
            };
            let reports = run_suite(*suite, &cfg)?;
            for r in &reports {
                match cli.output {
                    Output::Text => println!("{r}"),
                    Output::Json => println!("{}", r.to_json_line()),
                }
            }
            let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
            Ok(if failed { ExitCode::from(DIFFERENT) } else { ExitCode::SUCCESS })
        }
    }
}

fn exec(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Parses the expressions against the given alphabet, or against the
/// letters they use when none is given.
fn terms(cli: &Cli, exprs: &[&str]) -> Result<(Vec<Term>, Alphabet)> {
    let any = Alphabet::new('a'..='z')?;
    let ts = exprs.iter().map(|e| parse_term(e, &any)).collect::<ratser::Result<Vec<_>>>()?;
    if cli.semiring != SemiringDescriptor::Ninf && ts.iter().any(Term::has_inf) {
        return Err(ratser::Error::InvalidValue(format!("inf outside ninf (semiring {})", cli.semiring)).into());
    }
    let alphabet = match &cli.alphabet {
        Some(a) => {
            let a = Alphabet::parse(a)?;
            for e in exprs {
                parse_term(e, &a)?;
            }
            a
        }
        None => Alphabet::new(ts.iter().flat_map(Term::letters))?,
    };
    Ok((ts, alphabet))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialise"));
}

fn eval(cli: &Cli, expr: &str) -> Result<ExitCode> {
    let (ts, alphabet) = terms(cli, &[expr])?;
    with_semiring!(&cli.semiring, s => {
        let ctx = SeriesSemiring::new(s, alphabet, cli.maxlen);
        let v = eval_term(&ts[0], &ctx)?;
        match cli.output {
            Output::Text => println!("{}", render_series(&s, &v, true)),
            Output::Json => print_json(&series_to_json(&s, &v)),
        }
    });
    Ok(ExitCode::SUCCESS)
}

fn normalize_cmd(cli: &Cli, expr: &str, disjoint: bool) -> Result<ExitCode> {
    let (ts, alphabet) = terms(cli, &[expr])?;
    let nf = if disjoint { normalize_disjoint(&ts[0], &alphabet)? } else { normalize(&ts[0]) };
    match cli.output {
        Output::Text => println!("{nf}"),
        Output::Json => print_json(&json!({
            "tc": nf.tc.to_string(),
            "t0": nf.t0.to_string(),
            "tinf": nf.tinf.to_string(),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn compile(cli: &Cli, expr: &str, out: Option<&Path>) -> Result<ExitCode> {
    let (ts, alphabet) = terms(cli, &[expr])?;
    let doc = with_semiring!(&cli.semiring, s => automaton_to_json(&s, &compile_term(&ts[0], &s, &alphabet)?));
    match out {
        Some(path) => {
            let text = serde_json::to_string_pretty(&doc).expect("json values serialise");
            fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        }
        None => print_json(&doc),
    }
    Ok(ExitCode::SUCCESS)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(serde_json::from_str(&text).map_err(ratser::Error::from)?)
}

fn totterm(cli: &Cli, file: &Path) -> Result<ExitCode> {
    let v = read_json(file)?;
    let term = match &cli.semiring {
        SemiringDescriptor::N => automaton_to_term(&Naturals, &automaton_from_json(&Naturals, &v)?),
        SemiringDescriptor::Ninf => {
            automaton_to_term(&ExtendedNaturals, &automaton_from_json(&ExtendedNaturals, &v)?)
        }
        SemiringDescriptor::Bool => automaton_to_term(&Booleans, &automaton_from_json(&Booleans, &v)?),
        SemiringDescriptor::QuotientK(k) => {
            let q = QuotientK::new(*k)?;
            automaton_to_term(&q, &automaton_from_json(&q, &v)?)
        }
        other => return Err(ratser::Error::Unsupported(format!("terms for automata over {other}")).into()),
    };
    match cli.output {
        Output::Text => println!("{term}"),
        Output::Json => print_json(&json!({ "term": term.to_string() })),
    }
    Ok(ExitCode::SUCCESS)
}

fn equiv_semiring(d: &SemiringDescriptor) -> Result<EquivSemiring> {
    match d {
        SemiringDescriptor::N => Ok(EquivSemiring::N),
        SemiringDescriptor::Ninf => Ok(EquivSemiring::Ninf),
        other => Err(ratser::Error::Unsupported(format!("equivalence over {other}; use n or ninf")).into()),
    }
}

fn report_difference(cli: &Cli, alphabet: &Alphabet, diff: Option<Word>) -> ExitCode {
    let witness = diff.as_ref().map(|w| alphabet.render(w));
    match cli.output {
        Output::Text => match &witness {
            None => println!("equivalent"),
            Some(w) => println!("inequivalent, witness {w}"),
        },
        Output::Json => print_json(&json!({ "equivalent": witness.is_none(), "witness": witness })),
    }
    if witness.is_some() {
        ExitCode::from(DIFFERENT)
    } else {
        ExitCode::SUCCESS
    }
}

fn equiv(cli: &Cli, left: &str, right: &str) -> Result<ExitCode> {
    let semiring = equiv_semiring(&cli.semiring)?;
    let (ts, alphabet) = terms(cli, &[left, right])?;
    let diff = equivalent(&ts[0], &ts[1], semiring, &alphabet)?;
    Ok(report_difference(cli, &alphabet, diff))
}

type Pair<E> = (WeightedAutomaton<E>, WeightedAutomaton<E>, Alphabet);

/// Reads two automata and brings them onto the union of their alphabets.
fn load_pair<S: ratser::semiring::ValueText>(
    s: &S,
    left: &Path,
    right: &Path,
) -> Result<Pair<S::Elem>> {
    let m1 = automaton_from_json(s, &read_json(left)?)?;
    let m2 = automaton_from_json(s, &read_json(right)?)?;
    let alphabet = m1.alphabet().union(m2.alphabet());
    Ok((m1.extend_alphabet(&alphabet)?, m2.extend_alphabet(&alphabet)?, alphabet))
}

fn equiv_file(cli: &Cli, left: &Path, right: &Path) -> Result<ExitCode> {
    let semiring = equiv_semiring(&cli.semiring)?;
    let (m1, m2, alphabet) = load_pair(&ExtendedNaturals, left, right)?;
    let diff = equivalent_automata(semiring, &m1, &m2)?;
    Ok(report_difference(cli, &alphabet, diff))
}

fn simulate(cli: &Cli, left: &Path, right: &Path, budget: u128) -> Result<ExitCode> {
    let found = with_semiring!(&cli.semiring, s => {
        let (m1, m2, _) = load_pair(&s, left, right)?;
        search_simulation(&s, &m1, &m2, budget, exec(cli))?
    });
    let direction = |d: Direction| match d {
        Direction::Forward => "forward",
        Direction::Dual => "dual",
    };
    match (&found, cli.output) {
        (Some(w), Output::Text) => println!("{} simulation rho={:?}", direction(w.direction), w.rho.map()),
        (None, Output::Text) => println!("no simulation"),
        (Some(w), Output::Json) => print_json(&json!({"direction": direction(w.direction), "rho": w.rho.map()})),
        (None, Output::Json) => print_json(&json!({ "direction": null, "rho": null })),
    }
    Ok(if found.is_some() { ExitCode::SUCCESS } else { ExitCode::from(DIFFERENT) })
}

fn load_group(spec: &str) -> Result<CayleyTable> {
    let path = Path::new(spec);
    if path.extension().is_some_and(|e| e == "json") {
        let name = path.file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(CayleyTable::from_json(name, &read_json(path)?)?);
    }
    Ok(CayleyTable::builtin(spec)?)
}

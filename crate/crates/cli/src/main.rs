//! `baxter`: command-line front end to `baxter-core`.
//!
//! Exit codes: 0 for success or YES, 1 for NO or a refutation, 2 for usage
//! and input errors.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use baxter_core::families::{basis2, basis4, isoterm_search, pk_qk};
use baxter_core::oracle::{default_max_len, sampled_check, DEFAULT_BUDGET};
use baxter_core::repr::{phi_n, represent};
use baxter_core::{
    brute_force_check, canonical, check, equivalent, p_baxt, sharp_word, AWord, CheckReport, Error, IWord, Identity,
    Mode, OracleVerdict, Tropical, UTMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "baxter", version, about = "Baxter monoids with the Schützenberger involution")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Rank of the monoid.
    #[arg(long = "n", global = true, default_value_t = 3)]
    rank: u8,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for the oracle and enumerations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical invariants (ev, lpi, rpi) of a word over A_n.
    Canon { word: String },
    /// Whether two words are congruent.
    Equiv { u: String, v: String },
    /// Image of a word under the involution.
    Sharp { word: String },
    /// Twin binary search trees of a word.
    Trees { word: String },
    /// Tropical matrix representation of a word.
    Repr { word: String },
    /// Decide identities; reads one per line from stdin when none is given.
    CheckId {
        identity: Option<String>,
        #[arg(long, default_value = "involution")]
        mode: Mode,
    },
    /// Search for a falsifying substitution.
    Oracle {
        identity: Option<String>,
        /// Longest image word; defaults by number of variables.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Sample this many assignments instead of the full grid.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a named identity family, one identity per line.
    Family {
        #[arg(value_parser = ["pkqk", "basis2", "basis4"])]
        name: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Rearrangements of a word that it is identically equal to.
    Isoterm { word: String },
}

/// Failure of a command: exit code 2 with a message.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string(value).expect("values serialize"));
}

fn word(text: &str, rank: u8) -> std::result::Result<AWord, Failure> {
    AWord::parse(text, rank).map_err(|e| Failure(format!("word {text:?}: {e}")))
}

/// The identities named on the command line, or every non-empty stdin line.
fn identities(arg: Option<String>) -> std::result::Result<Vec<Identity>, Failure> {
    let lines: Vec<String> = match arg {
        Some(s) => vec![s],
        None => io::stdin().lock().lines().collect::<io::Result<Vec<_>>>()?,
    };
    let mut out = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(Identity::parse(line).map_err(|e| Failure(format!("identity on line {}: {e}", i + 1)))?);
    }
    if out.is_empty() {
        return Err(Failure("no identity given".into()));
    }
    Ok(out)
}

fn canon(cli: &Cli, text: &str) -> Outcome {
    let e = canonical(&word(text, cli.rank)?);
    match cli.format {
        Format::Json => emit(&serde_json::to_value(&e).unwrap()),
        _ => {
            println!("class {e}");
            println!("ev  {:?}", e.ev());
            let lpi: Vec<String> = e.lpi().iter().map(|(a, b, l)| format!("({a}-{b}, {l})")).collect();
            let rpi: Vec<String> = e.rpi().iter().map(|(b, a, r)| format!("({b}-{a}, {r})")).collect();
            println!("lpi {{{}}}", lpi.join(", "));
            println!("rpi {{{}}}", rpi.join(", "));
        }
    }
    Ok(true)
}

fn equiv(cli: &Cli, u: &str, v: &str) -> Outcome {
    let (u, v) = (word(u, cli.rank)?, word(v, cli.rank)?);
    let same = equivalent(&u, &v)?;
    match cli.format {
        Format::Json => emit(&json!({ "equivalent": same, "u": canonical(&u), "v": canonical(&v) })),
        _ => println!("{}", if same { "equivalent" } else { "not equivalent" }),
    }
    Ok(same)
}

fn sharp(cli: &Cli, text: &str) -> Outcome {
    let w = word(text, cli.rank)?;
    let s = sharp_word(&w);
    match cli.format {
        Format::Json => emit(&json!({ "word": w.letters(), "sharp": s.letters(), "class": canonical(&s) })),
        _ => println!("{s}"),
    }
    Ok(true)
}

fn trees(cli: &Cli, text: &str) -> Outcome {
    let t = p_baxt(&word(text, cli.rank)?);
    match cli.format {
        Format::Json => emit(&serde_json::to_value(&t).unwrap()),
        Format::Dot => print!("{}", t.to_dot()),
        Format::Text => {
            println!("left-strict  {:?}", t.left_strict.inorder());
            println!("right-strict {:?}", t.right_strict.inorder());
            print!("{}", t.to_dot());
        }
    }
    Ok(true)
}

fn repr(cli: &Cli, text: &str) -> Outcome {
    let w = word(text, cli.rank)?;
    let m: UTMatrix<Tropical> = represent(&w)?;
    match cli.format {
        Format::Json if w.rank() >= 4 => emit(&json!({ "tuple": phi_n(&w)?, "matrix": m })),
        Format::Json => emit(&serde_json::to_value(&m).unwrap()),
        _ => print!("{m}"),
    }
    Ok(true)
}

fn report_text(id: &Identity, r: &CheckReport) -> String {
    match (&r.violated, &r.witness) {
        (None, _) => format!("YES  {id}"),
        (Some(c), Some(w)) => format!("NO   {id}  [{c}, {:?}, {}: {}]", w.side, w.vars.join(" "), w.detail),
        (Some(c), None) => format!("NO   {id}  [{c}]"),
    }
}

fn check_id(cli: &Cli, arg: Option<String>, mode: Mode) -> Outcome {
    let mut all = true;
    for id in identities(arg)? {
        let r = check(&id, cli.rank, mode)?;
        all &= r.verdict;
        match cli.format {
            Format::Json => emit(&serde_json::to_value(&r).unwrap()),
            _ => println!("{}", report_text(&id, &r)),
        }
    }
    Ok(all)
}

fn oracle(cli: &Cli, arg: Option<String>, max_len: Option<usize>, budget: u64, samples: Option<u64>, seed: u64) -> Outcome {
    let mut clean = true;
    for id in identities(arg)? {
        let len = max_len.unwrap_or_else(|| default_max_len(id.bases().len()));
        let v = match samples {
            Some(s) => sampled_check(&id, cli.rank, len, s, seed)?,
            None => brute_force_check(&id, cli.rank, len, budget)?,
        };
        clean &= !v.is_refuted();
        match cli.format {
            Format::Json => emit(&serde_json::to_value(&v).unwrap()),
            _ => match &v {
                OracleVerdict::Refuted { witness } => {
                    let parts: Vec<String> = witness.assignment.iter().map(|(k, w)| format!("{k} -> {w}")).collect();
                    println!("refuted  {id}  [{}]", parts.join(", "));
                }
                OracleVerdict::NoCounterexample { tried } => {
                    println!("no counterexample  {id}  [{tried} assignments, L = {len}]")
                }
            },
        }
    }
    Ok(clean)
}

fn family(name: &str, k: usize) -> Outcome {
    let ids = match name {
        "pkqk" => vec![pk_qk(k)?],
        "basis2" => basis2(),
        _ => basis4(),
    };
    let mut out = io::stdout().lock();
    for id in ids {
        writeln!(out, "{id}")?;
    }
    Ok(true)
}

fn isoterm(cli: &Cli, text: &str) -> Outcome {
    let u = IWord::parse(text)?;
    let found = isoterm_search(&u, cli.rank)?;
    match cli.format {
        Format::Json => emit(&json!({
            "word": u.to_string(),
            "n": cli.rank,
            "isoterm": found.is_empty(),
            "equal_to": found.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })),
        _ if found.is_empty() => println!("isoterm"),
        _ => found.iter().for_each(|v| println!("{u} ~= {v}")),
    }
    Ok(found.is_empty())
}

fn run(cli: &Cli) -> Outcome {
    if cli.rank == 0 {
        return Err(Failure("--n must be at least 1".into()));
    }
    match &cli.command {
        Command::Canon { word } => canon(cli, word),
        Command::Equiv { u, v } => equiv(cli, u, v),
        Command::Sharp { word } => sharp(cli, word),
        Command::Trees { word } => trees(cli, word),
        Command::Repr { word } => repr(cli, word),
        Command::CheckId { identity, mode } => check_id(cli, identity.clone(), *mode),
        Command::Oracle { identity, max_len, budget, samples, seed } => {
            oracle(cli, identity.clone(), *max_len, *budget, *samples, *seed)
        }
        Command::Family { name, k } => family(name, *k),
        Command::Isoterm { word } => isoterm(cli, word),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

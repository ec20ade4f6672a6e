use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dehnkit::format::{self, load, Human};
use dehnkit::magnus::{descend, DescendOptions, DescentError, DescentTrace, DEFAULT_MAX_DEPTH};
use dehnkit::oracle::{hom_count, Budget};
use dehnkit::presentation::{classify_torsion, surface_presentation, Presentation, TorsionClassification};
use dehnkit::query::{descent_json, step_json, oracle_only, result_json, wp, Answer, Certificate, QueryResult};
use dehnkit::spelling::{compile_dehn, find_spelling_subword};
use dehnkit::tietze::simplify;
use dehnkit::word::Word;

#[derive(Parser)]
#[command(name = "dehnkit", version, about = "Word problems for finitely presented groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    /// Cap on intermediate word length in the closure search (default: word length + 8).
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, default_value_t = 6)]
    max_moves: usize,
    #[arg(long, default_value_t = 5)]
    max_degree: usize,
    /// Soft wall-clock limit for the oracle, in seconds.
    #[arg(long, default_value_t = 10.0)]
    time_limit: f64,
}

impl BudgetArgs {
    fn budget(&self, w: &Word) -> Budget {
        Budget {
            max_len_slack: self.max_len.map_or(8, |m| m.saturating_sub(w.free_reduce().len())),
            max_moves: self.max_moves,
            max_degree: self.max_degree,
            time_limit: Duration::from_secs_f64(self.time_limit.max(0.0)),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Torsion classification of a one-relator presentation.
    Classify { file: PathBuf },
    /// Decide whether a word is trivial.
    Wp {
        file: PathBuf,
        word: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Look for a spelling-theorem subword.
    Spell { file: PathBuf, word: String },
    /// Run the Magnus–Moldavanskii descent.
    Descend {
        file: PathBuf,
        /// Stable generator for successive steps.
        #[arg(long)]
        stable: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Follow this word through the descent.
        #[arg(long)]
        word: Option<String>,
    },
    /// Greedy Tietze simplification.
    TietzeSimplify {
        file: PathBuf,
        /// Print the result in file format.
        #[arg(long)]
        emit: bool,
    },
    /// Bounded certificate search, bypassing Dehn's algorithm.
    Oracle {
        file: PathBuf,
        word: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print the closed orientable surface presentation of a genus.
    Surface {
        #[arg(long)]
        genus: usize,
    },
    /// Count homomorphisms into the symmetric group of a degree.
    Homcount {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

enum Outcome {
    Definite,
    Unknown,
}

/// Write to stdout; a closed pipe ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        emit(format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn emit(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Definite) => ExitCode::SUCCESS,
        Ok(Outcome::Unknown) => ExitCode::from(2),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<Presentation, Failure> {
    Ok(load(path)?.presentation)
}

fn word_arg(text: &str, p: &Presentation) -> Result<Word, Failure> {
    format::parse_word(text, p.generators()).map_err(|e| Failure(format!("word: {e}")))
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Classify { file } => classify(&read(file)?, cli.json),
        Command::Wp { file, word, budget } => {
            let p = read(file)?;
            let w = word_arg(word, &p)?;
            let r = wp(&p, &w, &budget.budget(&w));
            report(&r, &p, cli.json)
        }
        Command::Oracle { file, word, budget } => {
            let p = read(file)?;
            let w = word_arg(word, &p)?;
            let r = oracle_only(&p, &w, &budget.budget(&w));
            report(&r, &p, cli.json)
        }
        Command::Spell { file, word } => spell(&read(file)?, word, cli.json),
        Command::Descend { file, stable, max_depth, word } => {
            let p = read(file)?;
            let w = word.as_deref().map(|t| word_arg(t, &p)).transpose()?;
            let options = DescendOptions { max_depth: *max_depth, stable: stable.clone() };
            match descend(&p, &options) {
                Ok(t) => {
                    print_descent(&t, w.as_ref(), cli.json);
                    Ok(Outcome::Definite)
                }
                Err(DescentError::DepthExceeded(partial)) => {
                    if cli.json {
                        let steps: Vec<Value> = partial.steps.iter().map(|s| step_json(s, None)).collect();
                        print_json(&json!({ "steps": steps, "error": "depth exceeded", "last": partial.last.to_string() }));
                    } else {
                        for (i, s) in partial.steps.iter().enumerate() {
                            print_step(i, s, None);
                        }
                    }
                    Err(Failure(format!("no terminal presentation within {} steps", partial.steps.len())))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::TietzeSimplify { file, emit } => {
            let p = read(file)?;
            let (q, log) = simplify(&p);
            if cli.json {
                let steps: Vec<Value> =
                    log.iter().map(|s| json!({ "move": s.action.to_string(), "after": s.after.to_string() })).collect();
                print_json(&json!({ "input": p.to_string(), "steps": steps, "result": q.to_string() }));
            } else {
                outln!("input: {p}");
                for s in &log {
                    outln!("{}: {}", s.action, s.after);
                }
                outln!("result: {q}");
                if *emit {
                    out!("{}", format::format_presentation(&q));
                }
            }
            Ok(Outcome::Definite)
        }
        Command::Surface { genus } => {
            let p = surface_presentation(*genus)?;
            if cli.json {
                print_json(&json!({ "genus": genus, "presentation": p.to_string(), "text": format::format_presentation(&p) }));
            } else {
                out!("{}", format::format_presentation(&p));
            }
            Ok(Outcome::Definite)
        }
        Command::Homcount { file, degree } => {
            let p = read(file)?;
            let n = hom_count(&p, *degree)?;
            if cli.json {
                print_json(&json!({ "degree": degree, "count": n }));
            } else {
                outln!("{n}");
            }
            Ok(Outcome::Definite)
        }
    }
}

fn classify(p: &Presentation, as_json: bool) -> Result<Outcome, Failure> {
    let c = classify_torsion(p);
    let dehn = compile_dehn(p).is_ok();
    let text = match &c {
        TorsionClassification::Torsion { root, exponent } => {
            format!("torsion, root={}, n={exponent}", p.display_word(root))
        }
        TorsionClassification::TorsionFree { free: true } => "torsion-free (free group)".to_string(),
        TorsionClassification::TorsionFree { free: false } => "torsion-free".to_string(),
        TorsionClassification::NotOneRelator { relators } => format!("not one-relator ({relators} relators)"),
    };
    if as_json {
        let mut v = match &c {
            TorsionClassification::Torsion { root, exponent } => {
                json!({ "kind": "torsion", "root": p.display_word(root).to_string(), "exponent": exponent })
            }
            TorsionClassification::TorsionFree { free } => json!({ "kind": "torsion-free", "free": free }),
            TorsionClassification::NotOneRelator { relators } => json!({ "kind": "not-one-relator", "relators": relators }),
        };
        v["dehn"] = json!(dehn);
        print_json(&v);
    } else {
        outln!("{text}");
    }
    Ok(Outcome::Definite)
}

fn report(r: &QueryResult, p: &Presentation, as_json: bool) -> Result<Outcome, Failure> {
    if as_json {
        print_json(&result_json(r, p));
    } else {
        let g = p.generators();
        outln!("{} ({})", r.answer.as_str(), r.method.as_str());
        if let Some(t) = &r.trace {
            for (before, m, after) in t.replay() {
                outln!(
                    "  {} -> {}  [pos {}, len {}, entry {}]",
                    Human(&before, g),
                    Human(&after, g),
                    m.position,
                    m.length,
                    Human(&m.table_entry, g)
                );
            }
            outln!("final: {}", Human(&t.final_word, g));
        }
        match &r.certificate {
            Some(Certificate::Trivial(c)) => outln!("certificate: {} moves", c.moves.len()),
            Some(Certificate::Nontrivial(c)) => {
                let images: Vec<String> = g.iter().zip(&c.images).map(|(n, perm)| format!("{n} -> {perm}")).collect();
                outln!("certificate: degree {}: {}", c.degree, images.join(", "));
            }
            None => {}
        }
    }
    Ok(match r.answer {
        Answer::Unknown => Outcome::Unknown,
        _ => Outcome::Definite,
    })
}

fn spell(p: &Presentation, word: &str, as_json: bool) -> Result<Outcome, Failure> {
    let d = compile_dehn(p)?;
    let w = word_arg(word, p)?.free_reduce();
    let m = find_spelling_subword(&w, &d);
    let g = p.generators();
    if as_json {
        let v = match &m {
            Some(m) => json!({
                "match": {
                    "pos": m.position,
                    "len": m.length,
                    "entry": p.display_word(&m.table_entry).to_string(),
                    "replacement": p.display_word(&m.replacement).to_string(),
                },
                "after": p.display_word(&m.apply(&w)).to_string(),
            }),
            None => json!({ "match": Value::Null }),
        };
        print_json(&v);
    } else {
        match &m {
            Some(m) => outln!(
                "match at {}, length {}, entry {}, replacement {}",
                m.position,
                m.length,
                Human(&m.table_entry, g),
                Human(&m.replacement, g)
            ),
            None => outln!("no match"),
        }
    }
    Ok(Outcome::Definite)
}

fn print_step(i: usize, s: &dehnkit::magnus::DescentStep, word: Option<&Option<Word>>) {
    outln!("step {}: {}", i + 1, s.before);
    if let Some(f) = &s.fixup {
        outln!("  fix-up: {} (unreduced {})", f.presentation, Human(&f.unreduced_image, f.presentation.generators()));
    }
    outln!("  stable: {}", s.stable);
    outln!("  reindexed: {}", s.annotated.display(s.working().generators()));
    outln!("  after: {}", s.after);
    if let Some(w) = word {
        match w {
            Some(w) => outln!("  word: {}", Human(w, s.before.generators())),
            None => outln!("  word: not expressible"),
        }
    }
}

fn print_descent(t: &DescentTrace, word: Option<&Word>, as_json: bool) {
    let path = word.map(|w| t.follow(w));
    let at = |i: usize| path.as_ref().map(|p| &p[i]);
    if as_json {
        print_json(&descent_json(t, word));
        return;
    }
    for (i, s) in t.steps.iter().enumerate() {
        print_step(i, s, at(i));
    }
    outln!("terminal: {} ({})", t.terminal, t.shape);
    if let Some(p) = &path {
        match p.last().expect("nonempty") {
            Some(w) => outln!("word at terminal: {}", Human(w, t.terminal.generators())),
            None => outln!("word at terminal: not expressible"),
        }
        if t.used_fixup() {
            outln!("note: translation passed through a fix-up substitution (informational)");
        }
    }
}

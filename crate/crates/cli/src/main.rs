//! Command-line front end: generate, run, convert, analyze, compare, and
//! drive the graph-accessibility pipelines.
//!
//! Exit codes: 0 for accept/holds/equivalent, 1 for reject/fails/
//! inequivalent, 2 for usage or processing errors. Results go to stdout,
//! diagnostics to stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use zigzag::analysis::{
    is_oblivious, is_outer_nondeterministic, is_quasi_sweeping, is_rotating, is_sweeping,
    max_reversals, CheckMethod, ClassifierVerdict,
};
use zigzag::chrobak::chrobak_normal_form;
use zigzag::families::{generate, Family, FamilySpec, Variant};
use zigzag::format;
use zigzag::gap::{
    bfs_gap, build_unary_gap_2nfa, decode_graph, encode_graph, prime_decode, prime_encode,
    Digraph, PrimeEncoding, SweepSimulator,
};
use zigzag::machine::{Machine, TwoWayMachine};
use zigzag::simulate::Verdict;
use zigzag::transform::{
    bounded_equiv, determinize, exact_equiv_oneway, exact_equiv_twoway, minimize,
    rotating_to_sweeping, shepherdson, EquivMethod, EquivalenceVerdict,
};

#[derive(Parser)]
#[command(name = "zigzag", version, about = "One-way and two-way finite automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a machine from the built-in language families
    Gen {
        /// Family name: I or L
        #[arg(long)]
        family: String,
        /// Family parameter (at least 1)
        #[arg(long)]
        n: usize,
        /// One of: nfa, dfa-minimal, one-reversal, naive, improved,
        /// sweeping-quadratic, sweeping-linear, rotating, outer-nondet
        #[arg(long)]
        variant: String,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a machine on an input word or a unary length
    Run {
        #[arg(long)]
        machine: PathBuf,
        /// Input word (characters for single-character alphabets)
        #[arg(long, conflicts_with = "unary_length")]
        input: Option<String>,
        /// Unary input length as a decimal of unbounded size; routed to the
        /// length-only simulation of quasi-sweeping machines
        #[arg(long = "unary-length")]
        unary_length: Option<String>,
    },
    /// Convert a machine to another class
    Convert {
        /// One of: determinize, minimize, shepherdson, sweeping, chrobak
        #[arg(long)]
        to: String,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a behavioural or structural property
    Analyze {
        /// One of: sweeping, oblivious, rotating, outer-nondet,
        /// quasi-sweeping, reversals
        #[arg(long)]
        check: String,
        /// Exhaustive word-length bound for behavioural checks
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        machine: PathBuf,
    },
    /// Compare the languages of two machines
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Exhaustive comparison on all words up to this length
        #[arg(long, conflicts_with = "exact")]
        max_len: Option<usize>,
        /// Exact comparison (one-way machines, or deterministic wrap-free
        /// two-way machines)
        #[arg(long)]
        exact: bool,
    },
    /// Graph-accessibility pipelines over prime-encoded unary inputs
    Gap {
        #[command(subcommand)]
        command: GapCommand,
    },
    /// State-count table for a list of family specs
    Report {
        /// Also write the table as CSV to this path
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Specs of the form FAMILY:N:VARIANT, e.g. L:3:sweeping-quadratic
        specs: Vec<String>,
    },
}

#[derive(Subcommand)]
enum GapCommand {
    /// Decide accessibility of a graph through the unary pipeline
    Solve {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Print the unary encoding of a graph
    Encode {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Decode a unary length back into a graph
    Decode {
        #[arg(long)]
        length: String,
        #[arg(long)]
        n: usize,
    },
    /// Emit the unary accessibility machine for n vertices
    BuildNfa {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Factor a unary length into prime powers
    PrimeEncode {
        #[arg(long)]
        length: String,
    },
    /// Multiply a prime-power factorization back into a length
    PrimeDecode {
        #[arg(long)]
        encoding: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_machine(path: &Path) -> Result<Machine, String> {
    let machine =
        format::parse(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let violations = machine.validate();
    if !violations.is_empty() {
        let mut msg = format!("{} is not well formed:", path.display());
        for v in violations {
            let _ = write!(msg, "\n  {v}");
        }
        return Err(msg);
    }
    Ok(machine)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_spec(text: &str) -> Result<FamilySpec, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("spec {text:?} is not FAMILY:N:VARIANT"));
    }
    let family =
        Family::parse(parts[0]).ok_or_else(|| format!("unknown family {:?}", parts[0]))?;
    let n: usize = parts[1]
        .parse()
        .map_err(|_| format!("bad parameter {:?}", parts[1]))?;
    let variant =
        Variant::parse(parts[2]).ok_or_else(|| format!("unknown variant {:?}", parts[2]))?;
    let spec = FamilySpec::new(family, n, variant);
    spec.check().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn parse_length(text: &str) -> Result<BigUint, String> {
    BigUint::from_str(text.trim()).map_err(|_| format!("{text:?} is not a decimal length"))
}

fn dispatch(command: Command) -> Result<u8, String> {
    match command {
        Command::Gen {
            family,
            n,
            variant,
            output,
        } => {
            let spec = parse_spec(&format!("{family}:{n}:{variant}"))?;
            let machine = generate(&spec).map_err(|e| e.to_string())?;
            emit(&format::serialize(&machine), output.as_deref())?;
            Ok(0)
        }
        Command::Run {
            machine,
            input,
            unary_length,
        } => run_command(&machine, input.as_deref(), unary_length.as_deref()),
        Command::Convert { to, input, output } => convert_command(&to, &input, output.as_deref()),
        Command::Analyze {
            check,
            max_len,
            machine,
        } => analyze_command(&check, max_len, &machine),
        Command::Equiv {
            a,
            b,
            max_len,
            exact,
        } => equiv_command(&a, &b, max_len, exact),
        Command::Gap { command } => gap_command(command),
        Command::Report { csv, specs } => report_command(csv.as_deref(), &specs),
    }
}

fn run_command(
    path: &Path,
    input: Option<&str>,
    unary_length: Option<&str>,
) -> Result<u8, String> {
    let machine = load_machine(path)?;
    if let Some(length) = unary_length {
        let m = parse_length(length)?;
        let two_way = machine
            .as_two_way()
            .ok_or("length-only simulation needs a two-way machine")?;
        let sim = SweepSimulator::new(two_way).map_err(|e| e.to_string())?;
        let accepted = sim.accepts(&m).map_err(|e| e.to_string())?;
        println!("{}", if accepted { "accept" } else { "reject" });
        return Ok(u8::from(!accepted));
    }
    let text = input.ok_or("provide --input or --unary-length")?;
    let word = machine
        .alphabet()
        .word(text)
        .ok_or_else(|| format!("{text:?} is not a word over the machine's alphabet"))?;
    match &machine {
        Machine::OneWay(m) => {
            let (_, accepted) = m.run(&word);
            println!("{}", if accepted { "accept" } else { "reject" });
            Ok(u8::from(!accepted))
        }
        Machine::TwoWay(m) => {
            if m.is_deterministic() {
                let trajectory = m.run_deterministic(&word).map_err(|e| e.to_string())?;
                let (text, code) = match trajectory.verdict {
                    Verdict::Accept => ("accept", 0),
                    Verdict::Reject => ("reject", 1),
                    Verdict::Loop => ("reject (loop)", 1),
                };
                println!("{text}");
                Ok(code)
            } else {
                let accepted = m.accepts(&word);
                println!("{}", if accepted { "accept" } else { "reject" });
                Ok(u8::from(!accepted))
            }
        }
    }
}

fn convert_command(to: &str, input: &Path, output: Option<&Path>) -> Result<u8, String> {
    let machine = load_machine(input)?;
    let converted = match (to, &machine) {
        ("determinize", Machine::OneWay(m)) => Machine::OneWay(determinize(m)),
        ("minimize", Machine::OneWay(m)) => {
            Machine::OneWay(minimize(m).map_err(|e| e.to_string())?)
        }
        ("shepherdson", Machine::TwoWay(m)) => {
            Machine::OneWay(shepherdson(m).map_err(|e| e.to_string())?)
        }
        ("sweeping", Machine::TwoWay(m)) => {
            Machine::TwoWay(rotating_to_sweeping(m).map_err(|e| e.to_string())?)
        }
        ("chrobak", Machine::OneWay(m)) => {
            let form = chrobak_normal_form(m).map_err(|e| e.to_string())?;
            eprintln!(
                "normal form: tail {} state(s), cycles {:?}",
                form.tail_len(),
                form.cycle_lengths()
            );
            Machine::OneWay(form.to_machine())
        }
        ("determinize" | "minimize" | "chrobak", Machine::TwoWay(_)) => {
            return Err(format!("conversion {to:?} needs a one-way machine"))
        }
        ("shepherdson" | "sweeping", Machine::OneWay(_)) => {
            return Err(format!("conversion {to:?} needs a two-way machine"))
        }
        _ => return Err(format!("unknown conversion {to:?}")),
    };
    emit(&format::serialize(&converted), output)?;
    Ok(0)
}

fn print_verdict(name: &str, verdict: &ClassifierVerdict) -> u8 {
    let method = match verdict.method {
        CheckMethod::Structural => "structural".to_string(),
        CheckMethod::Behavioral(bound) => format!("behavioral, max length {bound}"),
    };
    if verdict.holds {
        println!("{name} holds ({method})");
        0
    } else {
        match &verdict.counterexample {
            Some(cx) => println!("fails: {} on word {}", cx.evidence, cx.word),
            None => println!("fails ({method})"),
        }
        1
    }
}

fn analyze_command(check: &str, max_len: usize, path: &Path) -> Result<u8, String> {
    let machine = load_machine(path)?;
    let two_way: &TwoWayMachine = match &machine {
        Machine::TwoWay(m) => m,
        Machine::OneWay(_) => {
            return Err(
                "analysis applies to two-way machines; embed one-way machines first".into(),
            )
        }
    };
    match check {
        "sweeping" => {
            let v = is_sweeping(two_way, max_len).map_err(|e| e.to_string())?;
            Ok(print_verdict("sweeping", &v))
        }
        "oblivious" => {
            let v = is_oblivious(two_way, max_len).map_err(|e| e.to_string())?;
            Ok(print_verdict("oblivious", &v))
        }
        "rotating" => Ok(print_verdict("rotating", &is_rotating(two_way))),
        "outer-nondet" => Ok(print_verdict(
            "outer-nondeterministic",
            &is_outer_nondeterministic(two_way),
        )),
        "quasi-sweeping" => {
            let v = is_quasi_sweeping(two_way, max_len).map_err(|e| e.to_string())?;
            Ok(print_verdict("quasi-sweeping", &v))
        }
        "reversals" => {
            let report = max_reversals(two_way, max_len).map_err(|e| e.to_string())?;
            match report.witness {
                Some(witness) => println!(
                    "max reversals {} within length {} (witness {})",
                    report.max_reversals, report.bound_checked, witness
                ),
                None => println!(
                    "max reversals {} within length {}",
                    report.max_reversals, report.bound_checked
                ),
            }
            Ok(0)
        }
        other => Err(format!("unknown check {other:?}")),
    }
}

fn print_equivalence(verdict: &EquivalenceVerdict, alphabet: &zigzag::Alphabet) -> u8 {
    let method = match verdict.method {
        EquivMethod::Bounded(len) => format!("bounded {len}"),
        EquivMethod::ExactViaMinimization => "exact, minimization".to_string(),
        EquivMethod::ExactViaShepherdson => "exact, crossing tables".to_string(),
    };
    if verdict.equivalent {
        println!("equivalent ({method})");
        0
    } else {
        let witness = verdict
            .counterexample
            .as_ref()
            .map(|w| alphabet.render(w))
            .unwrap_or_default();
        println!("inequivalent ({method}): counterexample {witness}");
        1
    }
}

fn equiv_command(a: &Path, b: &Path, max_len: Option<usize>, exact: bool) -> Result<u8, String> {
    let left = load_machine(a)?;
    let right = load_machine(b)?;
    if exact {
        let verdict = match (&left, &right) {
            (Machine::OneWay(x), Machine::OneWay(y)) => {
                exact_equiv_oneway(x, y).map_err(|e| e.to_string())?
            }
            (Machine::TwoWay(x), Machine::TwoWay(y)) => {
                exact_equiv_twoway(x, y).map_err(|e| e.to_string())?
            }
            (Machine::OneWay(x), Machine::TwoWay(y)) => {
                let y = shepherdson(y).map_err(|e| e.to_string())?;
                exact_equiv_oneway(x, &y).map_err(|e| e.to_string())?
            }
            (Machine::TwoWay(x), Machine::OneWay(y)) => {
                let x = shepherdson(x).map_err(|e| e.to_string())?;
                exact_equiv_oneway(&x, y).map_err(|e| e.to_string())?
            }
        };
        return Ok(print_equivalence(&verdict, left.alphabet()));
    }
    let bound = max_len.ok_or("provide --max-len or --exact")?;
    let verdict = bounded_equiv(&left, &right, bound).map_err(|e| e.to_string())?;
    Ok(print_equivalence(&verdict, left.alphabet()))
}

fn gap_command(command: GapCommand) -> Result<u8, String> {
    match command {
        GapCommand::Solve { graph } => {
            let g = Digraph::parse(&read_file(&graph)?).map_err(|e| e.to_string())?;
            let reachable = zigzag::gap::solve_gap_via_unary(&g).map_err(|e| e.to_string())?;
            debug_assert_eq!(reachable, bfs_gap(&g));
            println!("{}", if reachable { "yes" } else { "no" });
            Ok(u8::from(!reachable))
        }
        GapCommand::Encode { graph } => {
            let g = Digraph::parse(&read_file(&graph)?).map_err(|e| e.to_string())?;
            println!("{}", encode_graph(&g));
            Ok(0)
        }
        GapCommand::Decode { length, n } => {
            let m = parse_length(&length)?;
            print!("{}", decode_graph(&m, n));
            Ok(0)
        }
        GapCommand::BuildNfa { n, output } => {
            let machine = build_unary_gap_2nfa(n).map_err(|e| e.to_string())?;
            emit(
                &format::serialize(&Machine::TwoWay(machine)),
                output.as_deref(),
            )?;
            Ok(0)
        }
        GapCommand::PrimeEncode { length } => {
            let m = parse_length(&length)?;
            let encoding = prime_encode(&m).map_err(|e| e.to_string())?;
            println!("{encoding}");
            Ok(0)
        }
        GapCommand::PrimeDecode { encoding } => {
            let parsed = PrimeEncoding::parse(&encoding).map_err(|e| e.to_string())?;
            println!("{}", prime_decode(&parsed));
            Ok(0)
        }
    }
}

fn report_command(csv: Option<&Path>, specs: &[String]) -> Result<u8, String> {
    let mut rows: Vec<[String; 6]> = Vec::new();
    for text in specs {
        let spec = parse_spec(text)?;
        let machine = generate(&spec).map_err(|e| e.to_string())?;
        let states = machine.num_states();
        let (minimized, reversals) = match &machine {
            Machine::OneWay(m) => {
                let minimal = minimize(&determinize(m)).map_err(|e| e.to_string())?;
                (minimal.num_states().to_string(), "0".to_string())
            }
            Machine::TwoWay(m) if m.is_deterministic() => {
                let wrap_free = if m.has_wrap() {
                    rotating_to_sweeping(m).map_err(|e| e.to_string())?
                } else {
                    m.clone()
                };
                let minimal = minimize(&shepherdson(&wrap_free).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let report = max_reversals(m, 2 * spec.n + 4).map_err(|e| e.to_string())?;
                (
                    minimal.num_states().to_string(),
                    report.max_reversals.to_string(),
                )
            }
            Machine::TwoWay(_) => ("-".to_string(), "-".to_string()),
        };
        rows.push([
            spec.family.to_string(),
            spec.n.to_string(),
            spec.variant.to_string(),
            states.to_string(),
            minimized,
            reversals,
        ]);
    }

    let header = [
        "family",
        "n",
        "variant",
        "states",
        "min-dfa-states",
        "max-reversals",
    ];
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut line = String::new();
    for (w, h) in widths.iter().zip(header.iter()) {
        let _ = write!(line, "{h:<w$}  ");
    }
    println!("{}", line.trim_end());
    for row in &rows {
        let mut line = String::new();
        for (w, cell) in widths.iter().zip(row.iter()) {
            let _ = write!(line, "{cell:<w$}  ");
        }
        println!("{}", line.trim_end());
    }

    if let Some(path) = csv {
        let mut text = String::from("family,n,variant,states,min_dfa_states,max_reversals\n");
        for row in &rows {
            let _ = writeln!(text, "{}", row.join(","));
        }
        fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(0)
}

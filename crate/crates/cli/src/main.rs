//! `twovg`: verify, construct and enumerate finite involutive two-valued groups.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input,
//! 3 internal invariant breach.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use twovalued::axioms::{verify_all, AxiomReport};
use twovalued::construct::{abelian_coset, group_coset_attempt, AbelianSpec};
use twovalued::enumerate::{enumerate, EnumOptions, DEFAULT_MAX_ORDER};
use twovalued::io::{parse_group, parse_table, serialize_table};
use twovalued::powers::{order, power_sequence, Order};
use twovalued::theoremlab::{case_census, lemma_report, CaseCensus, LemmaReport};
use twovalued::{Element, Table};

#[derive(Debug, Parser)]
#[command(name = "twovg", version, about = "Finite involutive two-valued groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of a `2vg 1` table (and, if it is valid, the lemmas and case census).
    Verify {
        /// Input file, `-` for stdin.
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the power sequence and order of one element.
    Powers {
        file: PathBuf,
        /// Element name or index.
        element: String,
        /// Last exponent to print; defaults to n^2.
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build a coset table from an abelian group or a `grp 1` Cayley table.
    #[command(group(ArgGroup::new("source").required(true).args(["factors", "group"])))]
    Construct {
        /// Cyclic factor moduli, e.g. `2,2,3`.
        #[arg(long)]
        factors: Option<String>,
        /// A `grp 1` Cayley table.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Output file; the table goes to stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate every structure of order N up to isomorphism.
    Enumerate {
        #[arg(short = 'n', long = "order")]
        order: usize,
        /// Print only the number of structures.
        #[arg(long)]
        count_only: bool,
        /// Keep every labeled table instead of one per isomorphism class.
        #[arg(long)]
        raw: bool,
        /// Write each table plus `census.jsonl` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Print census entries as JSON lines.
        #[arg(long)]
        json: bool,
    },
    /// Classify every ordered pair by the case split of the commutativity argument.
    Census {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exit {
    Ok = 0,
    Failed = 1,
    Input = 2,
    Internal = 3,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

/// An error message together with the exit status it maps to.
struct Fail(Exit, String);

type CmdResult = Result<Exit, Fail>;

fn input(msg: impl std::fmt::Display) -> Fail {
    Fail(Exit::Input, msg.to_string())
}

fn read_source(path: &Path) -> Result<String, Fail> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
    }
}

fn load_table(path: &Path) -> Result<Table, Fail> {
    let text = read_source(path)?;
    parse_table(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { file, json } => cmd_verify(&file, json),
        Command::Powers {
            file,
            element,
            horizon,
            json,
        } => cmd_powers(&file, &element, horizon, json),
        Command::Construct {
            factors,
            group,
            output,
        } => cmd_construct(factors, group, output),
        Command::Enumerate {
            order,
            count_only,
            raw,
            out_dir,
            jobs,
            max_order,
            json,
        } => {
            let opts = EnumOptions {
                raw,
                jobs,
                max_order,
            };
            cmd_enumerate(order, &opts, count_only, out_dir, json)
        }
        Command::Census { file, json } => cmd_census(&file, json),
    };
    match result {
        Ok(code) => code.into(),
        Err(Fail(code, msg)) => {
            eprintln!("twovg: {msg}");
            code.into()
        }
    }
}

fn verdict_line(out: &mut String, label: &str, holds: bool, detail: Option<String>) {
    let _ = match (holds, detail) {
        (true, _) => writeln!(out, "{label:<28}holds"),
        (false, Some(d)) => writeln!(out, "{label:<28}FAILS: {d}"),
        (false, None) => writeln!(out, "{label:<28}FAILS"),
    };
}

/// `[a, b, ...]` using element names where the table has them.
fn bracket(t: &Table, items: impl IntoIterator<Item = Element>) -> String {
    let names: Vec<String> = items.into_iter().map(|x| t.name_of(x)).collect();
    format!("[{}]", names.join(", "))
}

fn describe_axioms(t: &Table, r: &AxiomReport, out: &mut String) {
    let name = |x| t.name_of(x);
    let pair = |x, y| bracket(t, t.cell(x, y).elements());
    verdict_line(
        out,
        "associativity",
        r.associative.holds(),
        r.associative.witness().map(|w| {
            format!(
                "({0}*{1})*{2} = {3} but {0}*({1}*{2}) = {4}",
                name(w.x),
                name(w.y),
                name(w.z),
                bracket(t, w.lhs.iter()),
                bracket(t, w.rhs.iter())
            )
        }),
    );
    verdict_line(
        out,
        "strong identity",
        r.strong_identity.holds(),
        r.strong_identity
            .witness()
            .map(|&x| format!("x = {}", name(x))),
    );
    verdict_line(
        out,
        "involutivity",
        r.involutive.holds(),
        r.involutive
            .witness()
            .map(|w| format!("{}*{} = {}", name(w.x), name(w.y), pair(w.x, w.y))),
    );
    verdict_line(
        out,
        "commutativity",
        r.commutative.holds(),
        r.commutative.witness().map(|w| {
            format!(
                "{0}*{1} = {2} but {1}*{0} = {3}",
                name(w.x),
                name(w.y),
                pair(w.x, w.y),
                pair(w.y, w.x)
            )
        }),
    );
    let _ = writeln!(
        out,
        "{:<28}{}",
        "involutive two-valued group",
        if r.is_involutive_2vg { "yes" } else { "no" }
    );
}

fn census_line(c: &CaseCensus) -> String {
    format!(
        "case1={} case2={} case3={} other={}",
        c.case1, c.case2, c.case3, c.other
    )
}

fn describe_lemmas(t: &Table, l: &LemmaReport, out: &mut String) {
    let name = |x| t.name_of(x);
    verdict_line(
        out,
        "lemma 1",
        l.lemma1.holds(),
        l.lemma1
            .witness()
            .map(|w| format!("(x, y, z) = ({}, {}, {})", name(w.x), name(w.y), name(w.z))),
    );
    verdict_line(
        out,
        "lemma 2",
        l.lemma2.holds(),
        l.lemma2
            .witness()
            .map(|w| format!("x = {}, y = {}", name(w.x), name(w.y))),
    );
    verdict_line(
        out,
        "main identity",
        l.main_identity.holds(),
        l.main_identity.witness().map(|w| {
            format!(
                "(x, y) = ({}, {}): {} vs {}",
                name(w.x),
                name(w.y),
                bracket(t, w.lhs.iter()),
                bracket(t, w.rhs.iter())
            )
        }),
    );
    let _ = writeln!(out, "{:<28}{}", "case census", census_line(&l.census));
}

fn cmd_verify(file: &Path, as_json: bool) -> CmdResult {
    let t = load_table(file)?;
    let report = verify_all(&t);
    if !report.witnesses_reverify(&t) {
        return Err(Fail(
            Exit::Internal,
            "a reported witness does not reproduce".into(),
        ));
    }
    let lemmas = if report.is_involutive_2vg {
        Some(lemma_report(&t).map_err(|e| {
            Fail(
                Exit::Internal,
                format!("valid table has ill-formed powers: {e}"),
            )
        })?)
    } else {
        None
    };
    if as_json {
        let v = json!({ "order": t.order(), "axioms": report, "lemmas": lemmas });
        println!("{v}");
    } else {
        let mut out = format!("{:<28}{}\n", "order", t.order());
        describe_axioms(&t, &report, &mut out);
        if let Some(l) = &lemmas {
            describe_lemmas(&t, l, &mut out);
        }
        print!("{out}");
    }
    if !report.is_involutive_2vg {
        return Ok(Exit::Failed);
    }
    let consistent =
        report.commutative.holds() && lemmas.as_ref().is_some_and(LemmaReport::all_hold);
    if !consistent {
        return Err(Fail(
            Exit::Internal,
            "valid structure contradicts commutativity or a lemma; the checker is wrong".into(),
        ));
    }
    Ok(Exit::Ok)
}

fn cmd_powers(file: &Path, element: &str, horizon: Option<usize>, as_json: bool) -> CmdResult {
    let t = load_table(file)?;
    let x = t
        .lookup(element)
        .ok_or_else(|| input(format!("unknown element `{element}`")))?;
    let n2 = t.order() * t.order();
    let horizon = horizon.unwrap_or(n2);
    let failed = |e: twovalued::powers::PowerError| Fail(Exit::Failed, e.to_string());
    let seq = power_sequence(&t, x, horizon).map_err(failed)?;
    let ord = order(&t, x).map_err(failed)?;
    if as_json {
        let v = json!({ "element": x, "horizon": horizon, "powers": seq.terms, "order": ord });
        println!("{v}");
    } else {
        let terms: Vec<String> = seq.terms.iter().map(|&p| t.name_of(p)).collect();
        println!("powers of {}: {}", t.name_of(x), terms.join(" "));
        match ord {
            Order::Finite(k) => println!("ord = {k}"),
            Order::Unbounded => println!("ord = unbounded (no x^k = e for k <= {n2})"),
        }
    }
    Ok(Exit::Ok)
}

fn cmd_construct(
    factors: Option<String>,
    group: Option<PathBuf>,
    output: Option<PathBuf>,
) -> CmdResult {
    let t = match (factors, group) {
        (Some(f), _) => {
            let spec: AbelianSpec = f.parse().map_err(|e| input(format!("--factors: {e}")))?;
            abelian_coset(&spec)
        }
        (None, Some(path)) => {
            let text = read_source(&path)?;
            let g = parse_group(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            group_coset_attempt(&g)
        }
        (None, None) => return Err(input("one of --factors or --group is required")),
    };
    let text = serialize_table(&t);
    let report = verify_all(&t);
    let mut summary = String::new();
    match &output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            let _ = writeln!(summary, "wrote {} (order {})", path.display(), t.order());
        }
        None => println!("{text}"),
    }
    describe_axioms(&t, &report, &mut summary);
    if output.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(if report.is_involutive_2vg {
        Exit::Ok
    } else {
        Exit::Failed
    })
}

fn cmd_enumerate(
    n: usize,
    opts: &EnumOptions,
    count_only: bool,
    out_dir: Option<PathBuf>,
    as_json: bool,
) -> CmdResult {
    let entries = enumerate(n, opts).map_err(input)?;
    let census: String = entries.iter().map(|e| e.to_json_line() + "\n").collect();
    if let Some(dir) = &out_dir {
        let io = |e: std::io::Error| input(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        for e in &entries {
            fs::write(dir.join(&e.file), serialize_table(&e.table)).map_err(io)?;
        }
        fs::write(dir.join("census.jsonl"), &census).map_err(io)?;
    }
    let k = entries.len();
    let what = if opts.raw {
        "labeled tables"
    } else {
        "structures"
    };
    if count_only {
        println!("{k}");
    } else if as_json {
        print!("{census}");
    } else {
        println!("order {n}: {k} {what}");
    }

    if let Some(bad) = entries.iter().find(|e| !e.is_involutive_2vg()) {
        return Err(Fail(
            Exit::Internal,
            format!("search emitted an invalid table ({})", bad.file),
        ));
    }
    let broken: Vec<&str> = entries
        .iter()
        .filter(|e| !e.commutative)
        .map(|e| e.file.as_str())
        .collect();
    if !broken.is_empty() {
        return Err(Fail(
            Exit::Failed,
            format!(
                "non-commutative valid structures found: {}",
                broken.join(", ")
            ),
        ));
    }
    let verdict = format!("theorem holds for all {k} {what} of order {n}");
    if count_only || as_json {
        eprintln!("{verdict}");
    } else {
        println!("{verdict}");
    }
    Ok(Exit::Ok)
}

fn cmd_census(file: &Path, as_json: bool) -> CmdResult {
    let t = load_table(file)?;
    let report = verify_all(&t);
    let census = case_census(&t);
    if as_json {
        let v = match &census {
            Ok(c) => json!({ "order": t.order(), "valid": report.is_involutive_2vg, "census": c }),
            Err(e) => {
                json!({ "order": t.order(), "valid": report.is_involutive_2vg, "census": null, "error": e.to_string() })
            }
        };
        println!("{v}");
    } else if let Ok(c) = &census {
        println!("{}", census_line(c));
        for (label, ex) in [
            ("case2", c.examples.case2),
            ("case3", c.examples.case3),
            ("other", c.examples.other),
        ] {
            if let Some(w) = ex {
                println!(
                    "first {label} pair: ({}, {})",
                    t.name_of(w.x),
                    t.name_of(w.y)
                );
            }
        }
    }
    if !report.is_involutive_2vg {
        let mut why = String::new();
        describe_axioms(&t, &report, &mut why);
        let reason = why
            .lines()
            .find(|l| l.contains("FAILS"))
            .unwrap_or("axioms fail")
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        return Err(Fail(
            Exit::Failed,
            format!("not an involutive two-valued group: {reason}"),
        ));
    }
    match census {
        Ok(c) if c.is_clean() => Ok(Exit::Ok),
        Ok(_) => Ok(Exit::Failed),
        Err(e) => Err(Fail(Exit::Failed, e.to_string())),
    }
}

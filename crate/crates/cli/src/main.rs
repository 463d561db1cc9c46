use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use twobridge::{
    all_negations, build_catalog, c_m, canonical_fraction, crossing_number, ek, even_expansion,
    expand, find_seams, is_strictly_greater, lift_construction, negate_segments, parsings_wrt, phi,
    phi_inverse, smaller_knots, torus_vector, verify_all, EkMode, Error, Fraction, KnotClass,
    SearchConfig,
};

#[derive(Parser)]
#[command(
    name = "twobridge",
    version,
    about = "Epimorphisms between 2-bridge knots"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest crossing number to enumerate exhaustively.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with `budget` and `workers`; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Even continued fraction, vector and crossing number of p/q.
    Convert { fraction: String },
    /// Crossing number of p/q.
    Cr { fraction: String },
    /// Nontrivial knots strictly below p/q.
    Smaller { fraction: String },
    /// Order relation between two knots.
    Compare { a: String, b: String },
    /// Least odd number with at least m nontrivial proper divisors.
    Cm { m: usize },
    /// EK(n), the most knots lying below one knot with n crossings.
    Ek {
        n: u64,
        #[arg(long, conflicts_with = "assisted")]
        exact: bool,
        #[arg(long)]
        assisted: bool,
    },
    /// Every knot with n crossings and the knots below it.
    Enumerate { n: u64 },
    /// Cut points shared by the parsings of p/q.
    Seams {
        fraction: String,
        /// Restrict to parsings with respect to these knots (default: all smaller knots).
        #[arg(long)]
        wrt: Vec<String>,
    },
    /// Negate the pieces between seams.
    Negate {
        fraction: String,
        /// Comma-separated piece numbers, counted from 1; omit to list every accepted pattern.
        #[arg(long, value_delimiter = ',')]
        segments: Vec<usize>,
        #[arg(long)]
        wrt: Vec<String>,
    },
    /// A knot with the target crossing number lying above p/q and everything below it.
    Lift {
        fraction: String,
        #[arg(long)]
        target: u64,
    },
    /// The torus knot T(2,n).
    Torus { n: u64 },
    /// Recompute the published tables and examples.
    #[command(name = "verify-paper")]
    VerifyPaper,
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::InvalidFraction(_) => (3, "invalid_fraction"),
            Error::DivisionByZero { .. } | Error::InvalidContinuedFraction(_) | Error::Overflow => {
                (3, "invalid_continued_fraction")
            }
            Error::InvalidVector(_) => (3, "invalid_vector"),
            Error::Unknot | Error::CrossingNumber(_) => (3, "trivial_knot"),
            Error::InvalidParsing(_) => (3, "invalid_parsing"),
            Error::BudgetExceeded { .. } => (4, "budget_exceeded"),
            Error::NotCertified { .. } => (4, "not_certified"),
            Error::NegationRejected(_) => (5, "negation_rejected"),
            Error::LiftTarget { .. } => (5, "lift_target"),
            Error::NoCommonFamily(_) => (5, "no_common_family"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure {
            code: 6,
            kind: "io",
            message: format!("{}: {e}", path.display()),
        }
    }

    fn config(message: String) -> Self {
        Failure {
            code: 2,
            kind: "invalid_config",
            message,
        }
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            ok: true,
        }
    }
}

fn knot(s: &str) -> Result<KnotClass, Failure> {
    let f: Fraction = s.parse()?;
    Ok(canonical_fraction(&f)?)
}

fn knots_json(ks: &BTreeSet<KnotClass>) -> Value {
    serde_json::to_value(ks).expect("knots serialize")
}

fn knots_text(ks: &BTreeSet<KnotClass>) -> String {
    let items: Vec<String> = ks.iter().map(KnotClass::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn bigint_json(n: &impl std::fmt::Display) -> Value {
    let s = n.to_string();
    s.parse::<i64>().map_or_else(|_| json!(s), |v| json!(v))
}

fn load_config(global: &Global) -> Result<SearchConfig, Failure> {
    let mut config = match &global.config {
        Some(path) => {
            let raw = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            toml::from_str(&raw).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?
        }
        None => SearchConfig::default(),
    };
    if let Some(b) = global.budget {
        config.budget = b;
    }
    if let Some(w) = global.workers {
        config.workers = w;
    }
    Ok(config)
}

fn seams_for(fraction: &str, wrt: &[String]) -> Result<twobridge::SeamSet, Failure> {
    let k = knot(fraction)?;
    let v = phi_inverse(&k).into_representative();
    let classes: Vec<KnotClass> = if wrt.is_empty() {
        smaller_knots(&v)?.into_iter().collect()
    } else {
        wrt.iter().map(|s| knot(s)).collect::<Result<_, _>>()?
    };
    let parsings = parsings_wrt(&v, &classes);
    if parsings.is_empty() {
        return Err(Error::InvalidParsing(format!(
            "{k} has no parsing of fold >= 3 w.r.t. the given knots"
        ))
        .into());
    }
    Ok(find_seams(&v, &parsings)?)
}

fn run(verb: Verb, config: &SearchConfig) -> Outcome {
    match verb {
        Verb::Convert { fraction } => {
            let f: Fraction = fraction.parse()?;
            let cf = even_expansion(&f)?;
            let mut text = format!("fraction {f}\neven continued fraction {cf}\n");
            let mut doc = json!({
                "fraction": f.to_string(),
                "even_cf": {"integer": bigint_json(&cf.integer), "terms": cf.terms},
            });
            if f.denom() >= &3u32.into() {
                let k = canonical_fraction(&f)?;
                let v = expand(&cf.terms)?;
                let n = crossing_number(&v);
                let _ = writeln!(text, "knot {k}\nvector ({v})\ncrossing number {n}");
                doc["knot"] = serde_json::to_value(&k).expect("knot serializes");
                doc["vector"] = serde_json::to_value(&v).expect("vector serializes");
                doc["crossing_number"] = json!(n);
            }
            Ok(Output::new(text, doc))
        }
        Verb::Cr { fraction } => {
            let k = knot(&fraction)?;
            let n = crossing_number(phi_inverse(&k).representative());
            Ok(Output::new(
                format!("{n}\n"),
                json!({"knot": k, "crossing_number": n}),
            ))
        }
        Verb::Smaller { fraction } => {
            let k = knot(&fraction)?;
            let below = smaller_knots(phi_inverse(&k).representative())?;
            Ok(Output::new(
                format!("{}\n", knots_text(&below)),
                knots_json(&below),
            ))
        }
        Verb::Compare { a, b } => {
            let (ka, kb) = (knot(&a)?, knot(&b)?);
            let (va, vb) = (phi_inverse(&ka), phi_inverse(&kb));
            let (relation, symbol) = if ka == kb {
                ("equal", "=")
            } else if is_strictly_greater(&va, &vb) {
                ("greater", ">")
            } else if is_strictly_greater(&vb, &va) {
                ("less", "<")
            } else {
                ("incomparable", "||")
            };
            Ok(Output::new(
                format!("{ka} {symbol} {kb}\n"),
                json!({"a": ka, "b": kb, "relation": relation}),
            ))
        }
        Verb::Cm { m } => {
            let value = c_m(m);
            Ok(Output::new(
                format!("c_{m} = {value}\n"),
                json!({"m": m, "value": value}),
            ))
        }
        Verb::Ek {
            n,
            exact: _,
            assisted,
        } => {
            let mode = if assisted {
                EkMode::Assisted
            } else {
                EkMode::Exact
            };
            let value = ek(n, mode, config)?;
            Ok(Output::new(
                format!("{value}\n"),
                serde_json::to_value(&value).expect("serializes"),
            ))
        }
        Verb::Enumerate { n } => {
            let catalog = build_catalog(n, config)?;
            let mut text = String::new();
            for e in &catalog.entries {
                let below: BTreeSet<KnotClass> = e.smaller.iter().cloned().collect();
                let _ = writeln!(
                    text,
                    "{}\t({})\t{}",
                    e.knot,
                    e.vector.representative(),
                    knots_text(&below)
                );
            }
            let _ = writeln!(
                text,
                "{} knots, EK({n}) = {}",
                catalog.entries.len(),
                catalog.ek
            );
            let doc: Value = serde_json::from_str(&catalog.to_json()).expect("catalog json");
            Ok(Output::new(text, doc))
        }
        Verb::Seams { fraction, wrt } => {
            let s = seams_for(&fraction, &wrt)?;
            let mut text = format!("vector ({})\n", s.vector);
            for p in &s.parsings {
                let _ = writeln!(text, "parsing: {}-fold w.r.t. ({})", p.fold(), p.base());
            }
            let cuts: Vec<String> = s.cuts.iter().map(usize::to_string).collect();
            let _ = writeln!(
                text,
                "seams {{{}}}, {} pieces",
                cuts.join(", "),
                s.segment_count()
            );
            Ok(Output::new(
                text,
                serde_json::to_value(&s).expect("serializes"),
            ))
        }
        Verb::Negate {
            fraction,
            segments,
            wrt,
        } => {
            let s = seams_for(&fraction, &wrt)?;
            if segments.is_empty() {
                let all = all_negations(&s);
                let mut text = String::new();
                for n in &all {
                    let pieces: Vec<String> = n.segments.iter().map(usize::to_string).collect();
                    let _ = writeln!(
                        text,
                        "{{{}}}\t{}\t{}",
                        pieces.join(","),
                        n.knot,
                        n.crossing_number
                    );
                }
                return Ok(Output::new(
                    text,
                    serde_json::to_value(&all).expect("serializes"),
                ));
            }
            let chosen: BTreeSet<usize> = segments.into_iter().collect();
            let d = negate_segments(&s, &chosen)?;
            let k = phi(&d)?;
            let n = crossing_number(&d);
            Ok(Output::new(
                format!("{k}\nvector ({d})\ncrossing number {n}\n"),
                json!({"segments": chosen, "knot": k, "vector": d, "crossing_number": n}),
            ))
        }
        Verb::Lift { fraction, target } => {
            let k = knot(&fraction)?;
            let d = lift_construction(phi_inverse(&k).representative(), target)?;
            let lifted = phi(&d)?;
            Ok(Output::new(
                format!(
                    "{lifted}\nvector ({d})\ncrossing number {}\n",
                    crossing_number(&d)
                ),
                json!({"knot": lifted, "vector": d, "crossing_number": crossing_number(&d)}),
            ))
        }
        Verb::Torus { n } => {
            let v = torus_vector(n)?;
            let k = phi(&v)?;
            let below = smaller_knots(&v)?;
            Ok(Output::new(
                format!("{k}\nvector ({v})\nsmaller {}\n", knots_text(&below)),
                json!({"knot": k, "vector": v, "smaller": knots_json(&below)}),
            ))
        }
        Verb::VerifyPaper => {
            let report = verify_all(config);
            let json = serde_json::to_value(&report).expect("serializes");
            Ok(Output {
                text: report.to_string(),
                json,
                ok: report.all_passed(),
            })
        }
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", json!({"error": f.kind, "message": f.message}));
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let kind = match e.kind() {
                ErrorKind::InvalidSubcommand => "unknown_verb",
                _ => "usage",
            };
            let message = e.to_string();
            let first = message
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            return fail(&Failure {
                code: 2,
                kind,
                message: first.to_string(),
            });
        }
    };
    let config = match load_config(&cli.global) {
        Ok(c) => c,
        Err(f) => return fail(&f),
    };
    // catalog files are always JSON
    let as_json =
        cli.global.json || (matches!(cli.verb, Verb::Enumerate { .. }) && cli.global.out.is_some());
    let output = match run(cli.verb, &config) {
        Ok(o) => o,
        Err(f) => return fail(&f),
    };
    let mut doc = if as_json {
        serde_json::to_string_pretty(&output.json).expect("json")
    } else {
        output.text
    };
    if !doc.ends_with('\n') {
        doc.push('\n');
    }
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &doc) {
                return fail(&Failure::io(path, e));
            }
        }
        None => print!("{doc}"),
    }
    if output.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

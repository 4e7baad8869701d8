//! Command-line front-end: one verb per kernel operation, text or JSON out.

use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use fsplit::{
    asymptotic_test_ideal, check_symbolic_containment, f_jumping_candidates, fedder_split_test,
    fpt_interval, frobenius_power, frobenius_root, fsignature_estimate, is_compatible,
    is_uniformly_compatible, nu_value, parse_ideal, parse_polynomial, splitting_coefficient,
    symbolic_power, test_ideal_quotient, test_ideal_regular, vassilev_chain, Budget, CartierMap,
    Error, Exponent, GradedSequenceSpec, Ideal, MonomialOrder, Ring, StabilizationReport,
};

#[derive(Parser, Debug)]
#[command(name = "fsplit", version, about = "Frobenius splitting invariants over F_p")]
struct Cli {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Comma-separated variable names, in order.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Vec<String>,
    /// Monomial order: degrevlex, lex or deglex.
    #[arg(long, global = true, default_value = "degrevlex")]
    order: MonomialOrder,
    /// Exponent `t`, written `a` or `a/b`.
    #[arg(long, global = true)]
    t: Option<String>,
    /// Frobenius level.
    #[arg(long, global = true)]
    e: Option<u32>,
    #[arg(long = "max-e", global = true)]
    max_e: Option<usize>,
    /// Consecutive repeats needed before a chain counts as stable.
    #[arg(long = "confirm", global = true)]
    confirm: Option<usize>,
    #[arg(long, global = true)]
    json: bool,
    /// Test element for `tau-quotient`.
    #[arg(long = "test-element", global = true)]
    test_element: Option<String>,
    /// Run the command once per listed prime.
    #[arg(long = "sweep-prime", global = true, value_delimiter = ',')]
    sweep_prime: Vec<u64>,
    /// File of `key = value` budget settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Reduced Gröbner basis.
    Gb { ideal: String },
    /// Ideal membership.
    Member { poly: String, ideal: String },
    /// Colon ideal (I : J).
    Colon { i: String, j: String },
    /// Intersection of two ideals.
    Intersect { i: String, j: String },
    /// Frobenius power I^[p^e].
    Fpower { ideal: String },
    /// Frobenius root I^[1/p^e].
    Froot { ideal: String },
    /// Frobenius splitting of S/I at the origin.
    Split { ideal: String },
    /// Coefficient of (x_1...x_d)^(p-1) in f^(p-1).
    SplitCoeff { poly: String },
    /// Largest n with a^n outside J^[p^e]; J defaults to the maximal ideal.
    Nu { a: String, j: Option<String> },
    /// Compatibility of J with the map given by a multiplier at level e.
    Compatible { ideal: String, multiplier: String },
    /// Compatibility with every map.
    Ucompatible { ideal: String },
    /// Test ideal of a^t.
    TestIdeal { ideal: String },
    /// F-pure threshold bracket at level e.
    Fpt { ideal: String },
    /// Jumping candidates on the p^-e grid up to t.
    Jumps { ideal: String },
    /// Lifted test ideal of S/I.
    TauQuotient {
        ideal: String,
        /// Minimal primes of I, separated by `;`.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Chain of test ideals of successive quotients.
    Vassilev { ideal: String },
    /// Asymptotic test ideal of ordinary or symbolic powers.
    Asymptotic {
        ideal: Option<String>,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Symbolic power of a squarefree monomial ideal.
    Symbolic {
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Whether I^(dn) is contained in I^n.
    SymbolicCheck {
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// Defaults to the number of variables.
        #[arg(long)]
        d: Option<u64>,
    },
    /// F-signature samples of a hypersurface for e = 1..=e.
    Fsig { poly: String },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Gb { .. } => "gb",
            Verb::Member { .. } => "member",
            Verb::Colon { .. } => "colon",
            Verb::Intersect { .. } => "intersect",
            Verb::Fpower { .. } => "fpower",
            Verb::Froot { .. } => "froot",
            Verb::Split { .. } => "split",
            Verb::SplitCoeff { .. } => "split-coeff",
            Verb::Nu { .. } => "nu",
            Verb::Compatible { .. } => "compatible",
            Verb::Ucompatible { .. } => "ucompatible",
            Verb::TestIdeal { .. } => "test-ideal",
            Verb::Fpt { .. } => "fpt",
            Verb::Jumps { .. } => "jumps",
            Verb::TauQuotient { .. } => "tau-quotient",
            Verb::Vassilev { .. } => "vassilev",
            Verb::Asymptotic { .. } => "asymptotic",
            Verb::Symbolic { .. } => "symbolic",
            Verb::SymbolicCheck { .. } => "symbolic-check",
            Verb::Fsig { .. } => "fsig",
        }
    }
}

enum Failure {
    Usage(String),
    Kernel(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Kernel(Error::Parse { .. } | Error::NotPrime(_) | Error::BadVariables(_)) => 2,
            Failure::Kernel(Error::BudgetExceeded { .. }) => 3,
            Failure::Kernel(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Kernel(e) => e.to_string(),
        }
    }
}

/// What one run produced, in both renderings.
struct Outcome {
    inputs: Map<String, Value>,
    result: Value,
    text: String,
    stabilized_at_e: Option<usize>,
}

fn ideal_value(i: &Ideal) -> Value {
    json!(i.basis_strings())
}

fn stabilized_text(rep: &StabilizationReport) -> String {
    format!(
        "{}\nstabilized at e = {} after {} confirmations",
        rep.result, rep.stabilized_at_e, rep.confirmations
    )
}

fn parse_primes(text: &str, ring: &Arc<Ring>) -> Result<Vec<Ideal>, Failure> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_ideal(s, ring).map_err(Failure::from))
        .collect()
}

fn budget(cli: &Cli) -> Result<Budget, Failure> {
    let mut b = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Budget::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => Budget::default(),
    };
    if let Some(m) = cli.max_e {
        b.max_e = m;
    }
    if let Some(c) = cli.confirm {
        b.confirmations = c;
    }
    b.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(b)
}

fn exponent(cli: &Cli) -> Result<Exponent, Failure> {
    match &cli.t {
        Some(text) => Ok(text.parse::<Exponent>()?),
        None => Ok(Exponent::ONE),
    }
}

fn run(cli: &Cli, prime: u64, budget: &Budget) -> Result<Outcome, Failure> {
    if cli.vars.is_empty() {
        return Err(Failure::Usage("--vars is required".into()));
    }
    let ring = Ring::new(prime, &cli.vars, cli.order)?;
    let e = cli.e.unwrap_or(1);
    let mut inputs = Map::new();
    inputs.insert("prime".into(), json!(prime));
    inputs.insert("vars".into(), json!(cli.vars));
    inputs.insert("order".into(), json!(cli.order.name()));
    let mut put = |k: &str, v: Value| {
        inputs.insert(k.into(), v);
    };
    let ideal = |s: &str| parse_ideal(s, &ring);
    let mut stabilized_at_e = None;

    let (result, text) = match &cli.verb {
        Verb::Gb { ideal: i } => {
            put("ideal", json!(i));
            let i = ideal(i)?;
            (ideal_value(&i), i.basis().iter().rev().map(|g| g.to_string()).collect::<Vec<_>>().join("\n"))
        }
        Verb::Member { poly, ideal: i } => {
            put("poly", json!(poly));
            put("ideal", json!(i));
            let b = ideal(i)?.contains(&parse_polynomial(poly, &ring)?);
            (json!(b), b.to_string())
        }
        Verb::Colon { i, j } | Verb::Intersect { i, j } => {
            put("i", json!(i));
            put("j", json!(j));
            let (a, b) = (ideal(i)?, ideal(j)?);
            let r = if matches!(cli.verb, Verb::Colon { .. }) { a.colon(&b) } else { a.intersect(&b) };
            (ideal_value(&r), r.to_string())
        }
        Verb::Fpower { ideal: i } | Verb::Froot { ideal: i } => {
            put("ideal", json!(i));
            put("e", json!(e));
            let a = ideal(i)?;
            let r = if matches!(cli.verb, Verb::Fpower { .. }) {
                frobenius_power(&a, e)?
            } else {
                frobenius_root(&a, e)?
            };
            (ideal_value(&r), r.to_string())
        }
        Verb::Split { ideal: i } => {
            put("ideal", json!(i));
            let b = fedder_split_test(&ideal(i)?)?;
            (json!(b), b.to_string())
        }
        Verb::SplitCoeff { poly } => {
            put("poly", json!(poly));
            let c = splitting_coefficient(&parse_polynomial(poly, &ring)?)?;
            (json!(c), c.to_string())
        }
        Verb::Nu { a, j } => {
            put("a", json!(a));
            put("j", json!(j.as_deref().unwrap_or("maximal")));
            put("e", json!(e));
            let j = match j {
                Some(j) => ideal(j)?,
                None => Ideal::maximal(&ring),
            };
            let n = nu_value(&ideal(a)?, &j, e)?;
            (json!(n), n.to_string())
        }
        Verb::Compatible { ideal: i, multiplier } => {
            put("ideal", json!(i));
            put("multiplier", json!(multiplier));
            put("e", json!(e));
            let phi = CartierMap::new(parse_polynomial(multiplier, &ring)?, e)?;
            let b = is_compatible(&ideal(i)?, &phi)?;
            (json!(b), b.to_string())
        }
        Verb::Ucompatible { ideal: i } => {
            put("ideal", json!(i));
            let b = is_uniformly_compatible(&ideal(i)?)?;
            (json!(b), b.to_string())
        }
        Verb::TestIdeal { ideal: i } => {
            let t = exponent(cli)?;
            put("ideal", json!(i));
            put("t", json!(t.fraction_string()));
            let rep = test_ideal_regular(&ideal(i)?, t, budget)?;
            stabilized_at_e = Some(rep.stabilized_at_e);
            (ideal_value(&rep.result), stabilized_text(&rep))
        }
        Verb::Fpt { ideal: i } => {
            put("ideal", json!(i));
            put("e", json!(e));
            let b = fpt_interval(&ideal(i)?, e)?;
            (
                json!({"low": b.low.fraction_string(), "high": b.high.fraction_string(), "level": b.level}),
                format!("[{}, {}]", b.low, b.high),
            )
        }
        Verb::Jumps { ideal: i } => {
            let t = exponent(cli)?;
            put("ideal", json!(i));
            put("e", json!(e));
            put("t_max", json!(t.fraction_string()));
            let jumps = f_jumping_candidates(&ideal(i)?, e, t, budget)?;
            (
                json!(jumps.iter().map(|j| j.fraction_string()).collect::<Vec<_>>()),
                jumps.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(", "),
            )
        }
        Verb::TauQuotient { ideal: i, primes } => {
            put("ideal", json!(i));
            let c = cli.test_element.as_deref().map(|s| parse_polynomial(s, &ring)).transpose()?;
            let primes = match primes {
                Some(p) => {
                    put("primes", json!(p));
                    parse_primes(p, &ring)?
                }
                None => Vec::new(),
            };
            let q = test_ideal_quotient(&ideal(i)?, c.as_ref(), &primes, budget)?;
            put("test_element", json!(q.test_element.to_string()));
            stabilized_at_e = Some(q.report.stabilized_at_e);
            (
                ideal_value(&q.report.result),
                format!("{}\ntest element {}", stabilized_text(&q.report), q.test_element),
            )
        }
        Verb::Vassilev { ideal: i } => {
            put("ideal", json!(i));
            let chain = vassilev_chain(&ideal(i)?, budget)?;
            let text = if chain.is_empty() {
                "(empty chain)".to_string()
            } else {
                chain.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n")
            };
            (json!(chain.iter().map(ideal_value).collect::<Vec<_>>()), text)
        }
        Verb::Asymptotic { ideal: i, primes, n } => {
            put("n", json!(n));
            let seq = match (i, primes) {
                (Some(i), None) => {
                    put("ideal", json!(i));
                    GradedSequenceSpec::OrdinaryPowers(ideal(i)?)
                }
                (None, Some(p)) => {
                    put("primes", json!(p));
                    GradedSequenceSpec::SymbolicSquarefree(parse_primes(p, &ring)?)
                }
                _ => return Err(Failure::Usage("give either an ideal or --primes".into())),
            };
            let rep = asymptotic_test_ideal(&seq, *n, budget)?;
            stabilized_at_e = Some(rep.stabilized_at_e);
            (ideal_value(&rep.result), stabilized_text(&rep))
        }
        Verb::Symbolic { primes, n } => {
            put("primes", json!(primes));
            put("n", json!(n));
            let r = symbolic_power(&parse_primes(primes, &ring)?, *n)?;
            (ideal_value(&r), r.to_string())
        }
        Verb::SymbolicCheck { primes, n, d } => {
            let d = d.unwrap_or(cli.vars.len() as u64);
            put("primes", json!(primes));
            put("n", json!(n));
            put("d", json!(d));
            let b = check_symbolic_containment(&parse_primes(primes, &ring)?, *n, d)?;
            (json!(b), b.to_string())
        }
        Verb::Fsig { poly } => {
            let e_max = cli.e.unwrap_or(3);
            put("poly", json!(poly));
            put("e", json!(e_max));
            let rep = fsignature_estimate(&parse_polynomial(poly, &ring)?, e_max)?;
            let samples: Vec<Value> = rep
                .samples
                .iter()
                .map(|s| json!({"e": s.e, "a_e": s.a_e, "ratio": s.ratio.fraction_string()}))
                .collect();
            let mut text: Vec<String> = rep
                .samples
                .iter()
                .map(|s| format!("e = {}: a_e = {}, ratio = {} ≈ {:.6}", s.e, s.a_e, s.ratio, s.ratio.to_f64()))
                .collect();
            text.push(format!("estimate {} ≈ {:.6}", rep.estimate, rep.estimate.to_f64()));
            (
                json!({
                    "prime": rep.prime,
                    "dimension": rep.dimension,
                    "samples": samples,
                    "estimate": rep.estimate.fraction_string(),
                    "delta_exponent": rep.delta_exponent,
                }),
                text.join("\n"),
            )
        }
    };
    Ok(Outcome {
        inputs,
        result,
        text,
        stabilized_at_e,
    })
}

fn render(cli: &Cli, budget: &Budget, outcome: Outcome, elapsed_ms: u128) -> String {
    if cli.json {
        let mut obj = Map::new();
        obj.insert("verb".into(), json!(cli.verb.name()));
        obj.insert("inputs".into(), Value::Object(outcome.inputs));
        obj.insert("result".into(), outcome.result);
        if let Some(e) = outcome.stabilized_at_e {
            obj.insert("stabilized_at_e".into(), json!(e));
        }
        obj.insert(
            "budget".into(),
            json!({"max_e": budget.max_e, "confirmations": budget.confirmations}),
        );
        if cli.timing {
            obj.insert("timing_ms".into(), json!(elapsed_ms));
        }
        Value::Object(obj).to_string()
    } else if cli.timing {
        format!("{}\ntime {elapsed_ms} ms", outcome.text)
    } else {
        outcome.text
    }
}

fn timed(cli: &Cli, prime: u64, budget: &Budget) -> Result<String, Failure> {
    let start = Instant::now();
    let outcome = run(cli, prime, budget)?;
    Ok(render(cli, budget, outcome, start.elapsed().as_millis()))
}

fn main_inner() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    let budget = match budget(&cli) {
        Ok(b) => b,
        Err(f) => {
            eprintln!("fsplit: {}", f.message());
            return f.exit_code();
        }
    };

    if cli.sweep_prime.is_empty() {
        let Some(prime) = cli.prime else {
            eprintln!("fsplit: --prime or --sweep-prime is required");
            return 2;
        };
        return match timed(&cli, prime, &budget) {
            Ok(out) => {
                println!("{out}");
                0
            }
            Err(f) => {
                eprintln!("fsplit: {}", f.message());
                f.exit_code()
            }
        };
    }

    let results: Vec<Result<String, Failure>> =
        cli.sweep_prime.par_iter().map(|&p| timed(&cli, p, &budget)).collect();
    let mut code = 0;
    for (p, r) in cli.sweep_prime.iter().zip(results) {
        match r {
            Ok(out) if cli.json => println!("{out}"),
            Ok(out) => println!("p = {p}: {}", out.replace('\n', "\n    ")),
            Err(f) => {
                eprintln!("fsplit: p = {p}: {}", f.message());
                code = code.max(f.exit_code());
            }
        }
    }
    code
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|info| eprintln!("fsplit: internal error: {info}")));
    ExitCode::from(panic::catch_unwind(main_inner).unwrap_or(1))
}

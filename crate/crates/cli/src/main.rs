//! `equicode`: group-algebra arithmetic and equivariant codes from the command line.
//!
//! Exit codes: 0 success, 1 usage or any other error, 2 invariant violation,
//! 3 word not in the code, 4 decoding failure.

mod bench;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use equicode::code::{paper_fixture, rs_degenerate_code, synth_split_code};
use equicode::decode::{basic_decode, derive_seed, make_rs_decoder_data, DecodeOutcome};
use equicode::{DecoderData, EquivariantCode, Error, GroupAlgebra};
use rayon::prelude::*;
use serde_json::json;

use files::{parse_element, parse_group, read_code, read_vector, vector_json, write_or_print};

#[derive(Parser, Debug)]
#[command(name = "equicode", version, about = "Group-algebra arithmetic and G-equivariant codes")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "EQUICODE_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for benchmark repetitions and decode rounds (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Report errors as one JSON object on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two group-algebra elements.
    Mul(MulArgs),
    /// Time naive and fast multiplication over a family of groups; writes CSV.
    BenchMul(bench::BenchArgs),
    /// Validate, encode, check or interpolate with a code file.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Decode a received word.
    Decode(DecodeArgs),
    /// Generate code (and decoder) files.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Monic modulus coefficients, low to high (comma separated); default: a fixed irreducible.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Fast,
    Both,
}

#[derive(Args, Debug)]
struct MulArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Invariant factors, e.g. `4`, `2x6` or `2,6`; `1` is the trivial group.
    #[arg(long)]
    group: String,
    /// Element file, or inline coefficients (`1,1,0,0` or a JSON list).
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, value_enum, default_value_t = Method::Fast)]
    method: Method,
    /// Also write the product to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CodeCmd {
    /// Check the code identities; warnings go to stderr.
    Validate {
        #[arg(long)]
        code: PathBuf,
    },
    /// Codeword `E m` of a message file.
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Syndrome `C^T r` of a received word.
    Check {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        received: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Message of a codeword; exit 3 when the word is not a codeword.
    Interpolate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        received: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// Code file; required when the decoder file refers to its code by path.
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long)]
    decoder: PathBuf,
    #[arg(long)]
    received: PathBuf,
    /// Black-box attempts per round.
    #[arg(long, default_value_t = equicode::blackbox::DEFAULT_MAX_ATTEMPTS)]
    max_attempts: usize,
    /// Independent rounds with derived seeds; the lowest successful round wins.
    #[arg(long, default_value_t = 3)]
    rounds: usize,
    /// Print the pipeline transcript to stderr.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Random code over a split group algebra.
    Split {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degenerate Reed–Solomon code over the trivial group, plus its decoder file.
    Rs {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Largest polynomial degree of the code.
        #[arg(long)]
        deg: usize,
        /// Denominator degree; default `(n - deg - 1) / 2`.
        #[arg(long)]
        deg_d0: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Decoder file (the code is embedded in it).
        #[arg(long)]
        decoder_out: Option<PathBuf>,
    },
    /// The small cyclic-cover code over `F_3[Z/4]` used in the tests.
    Fixture {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // usage errors exit 1 so that 2 keeps meaning "invariant violation"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let json_errors = cli.json_errors;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = exit_code(&err);
            if json_errors {
                let kind = err.downcast_ref::<Error>().map_or("Other".to_string(), |e| error_kind(e).to_string());
                eprintln!("{}", json!({ "error": kind, "message": format!("{err:#}"), "exit_code": code }));
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvariantViolation(_)) => 2,
        Some(Error::NotInImage) => 3,
        Some(Error::DecodeFail(_)) => 4,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvariantViolation(_) => "InvariantViolation",
        Error::NotInImage => "NotInImage",
        Error::DecodeFail(_) => "DecodeFail",
        Error::Parse(_) => "ParseError",
        Error::Mismatch => "Mismatch",
        Error::NotSplit => "NotSplit",
        Error::TooManyPoints { .. } => "TooManyPoints",
        Error::DegreeWindow(_) => "DegreeWindow",
        _ => "Error",
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build()?;
    match cli.command {
        Command::Mul(args) => cmd_mul(args),
        Command::BenchMul(args) => {
            eprintln!("seed: {}", cli.seed);
            pool.install(|| bench::run(&args, cli.seed))
        }
        Command::Code(cmd) => cmd_code(cmd),
        Command::Decode(args) => {
            eprintln!("seed: {}", cli.seed);
            pool.install(|| cmd_decode(args, cli.seed))
        }
        Command::Gen(cmd) => cmd_gen(cmd, cli.seed),
    }
}

fn make_field(f: &FieldArgs) -> anyhow::Result<std::sync::Arc<equicode::Field>> {
    Ok(equicode::Field::new(f.p, f.d, f.modulus.clone())?)
}

fn cmd_mul(args: MulArgs) -> anyhow::Result<()> {
    let alg = GroupAlgebra::new(make_field(&args.field)?, parse_group(&args.group)?);
    let a = parse_element(&alg, &args.a).context("reading --a")?;
    let b = parse_element(&alg, &args.b).context("reading --b")?;
    let product = match args.method {
        Method::Naive => a.mul_naive(&b)?,
        Method::Fast => a.mul(&b)?,
        Method::Both => {
            let (naive, fast) = (a.mul_naive(&b)?, a.mul(&b)?);
            println!("agree: {}", naive == fast);
            if naive != fast {
                bail!("fast and naive products differ");
            }
            fast
        }
    };
    let value = alg.to_json(&product);
    println!("{value}");
    if let Some(path) = args.out {
        files::write_text(&path, &equicode::io::to_text(&json!({ "version": 1, "element": value })))?;
    }
    Ok(())
}

fn cmd_code(cmd: CodeCmd) -> anyhow::Result<()> {
    match cmd {
        CodeCmd::Validate { code } => {
            let code = read_code(&code)?;
            let report = code.validate()?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "valid: n={} k={} N={} expanded_rank={}",
                code.n(),
                code.k(),
                code.length(),
                report.expanded_rank
            );
        }
        CodeCmd::Encode { code, message, out } => {
            let code = read_code(&code)?;
            let m = read_vector(&code, &message)?;
            write_or_print(out.as_deref(), &vector_json(&code, &code.encode(&m)?))?;
        }
        CodeCmd::Check { code, received, out } => {
            let code = read_code(&code)?;
            let r = read_vector(&code, &received)?;
            let s = code.parity_check(&r)?;
            eprintln!("codeword: {}", s.iter().all(|x| x.is_zero()));
            write_or_print(out.as_deref(), &vector_json(&code, &s))?;
        }
        CodeCmd::Interpolate { code, received, out } => {
            let code = read_code(&code)?;
            let r = read_vector(&code, &received)?;
            write_or_print(out.as_deref(), &vector_json(&code, &code.interpolate(&r)?))?;
        }
    }
    Ok(())
}

fn cmd_decode(args: DecodeArgs, seed: u64) -> anyhow::Result<()> {
    let external = args.code.as_deref().map(read_code).transpose()?;
    let text = files::read_text(&args.decoder)?;
    let dd = DecoderData::from_text(&text, external.as_ref()).with_context(|| format!("reading {}", args.decoder.display()))?;
    for w in dd.warnings() {
        eprintln!("warning: {w}");
    }
    let r = read_vector(dd.code(), &args.received)?;
    // every round runs (in parallel when allowed); the lowest successful one is reported,
    // so the output does not depend on the thread count
    let results: Vec<equicode::Result<DecodeOutcome>> = (0..args.rounds.max(1) as u64)
        .into_par_iter()
        .map(|round| basic_decode(&dd, &r, derive_seed(seed, round), args.max_attempts))
        .collect();
    let mut last_err = None;
    let mut found = None;
    for (round, res) in results.into_iter().enumerate() {
        match res {
            Ok(out) => {
                found = Some((round, out));
                break;
            }
            Err(e) => {
                if args.trace {
                    eprintln!("trace: round={round} failed: {e}");
                }
                last_err = Some(e);
            }
        }
    }
    let Some((round, out)) = found else {
        return Err(last_err.map_or_else(|| anyhow!("no decode rounds"), anyhow::Error::from));
    };
    if args.trace {
        eprintln!("trace: round={round}");
        for line in &out.trace {
            eprintln!("trace: {line}");
        }
        eprintln!("trace: blackbox calls={} attempts={}", out.blackbox_calls, out.blackbox_attempts);
    }
    let code = dd.code();
    let value = json!({
        "version": 1,
        "codeword": code.vector_to_json(&out.codeword),
        "message": code.vector_to_json(&out.message),
        "error": code.vector_to_json(&out.error),
    });
    write_or_print(args.out.as_deref(), &value)
}

fn cmd_gen(cmd: GenCmd, seed: u64) -> anyhow::Result<()> {
    match cmd {
        GenCmd::Split { p, d, group, n, k, out } => {
            eprintln!("seed: {seed}");
            let code = synth_split_code(p, d, parse_group(&group)?, n, k, seed)?;
            emit_code(&code, out.as_deref())
        }
        GenCmd::Rs { p, n, deg, deg_d0, out, decoder_out } => {
            let code = rs_degenerate_code(p, n, deg)?;
            let deg_d0 = deg_d0.unwrap_or(n.saturating_sub(deg + 1) / 2);
            emit_code(&code, out.as_deref())?;
            if let Some(path) = decoder_out {
                let dd = make_rs_decoder_data(&code, deg_d0)?;
                files::write_text(&path, &dd.to_text())?;
            }
            Ok(())
        }
        GenCmd::Fixture { out } => emit_code(&paper_fixture(), out.as_deref()),
    }
}

fn emit_code(code: &EquivariantCode, out: Option<&std::path::Path>) -> anyhow::Result<()> {
    for w in code.validate()?.warnings {
        eprintln!("warning: {w}");
    }
    match out {
        Some(path) => files::write_text(path, &code.to_text()),
        None => {
            print!("{}", code.to_text());
            Ok(())
        }
    }
}

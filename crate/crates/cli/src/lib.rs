//! Command-line front end for `crc_forge`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 when a verification fails or parameters are
//! infeasible, 2 on usage, file format or I/O errors.

pub mod codefile;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use crc_forge::constructions::ConstructionSpec;
use crc_forge::parameters::{self, ConditionOneWitness};
use crc_forge::search::{enumerate_crcs, SearchConstraints};
use crc_forge::verifier::{self, check_crc, CrcVerdict};
use crc_forge::{Code, CrcCertificate, Space};
use serde_json::Value;

use codefile::CodeFile;

pub const THREADS_VAR: &str = "CRC_FORGE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed code file: {0}")]
    Format(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] crc_forge::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

type Outcome = Result<i32, CliError>;

#[derive(Parser)]
#[command(name = "crc-forge", version, about = "Completely regular codes with covering radius 1 in Hamming graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code of H(3,q) from an explicit construction
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check complete regularity and print the intersection array
    Verify {
        file: PathBuf,
        #[arg(long)]
        expect_gamma: Option<usize>,
        #[arg(long)]
        expect_beta: Option<usize>,
        #[arg(long)]
        expect_index: Option<usize>,
    },
    /// Delete all nonessential positions
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Insert a nonessential position so that it becomes position P (1-based)
    Extend {
        file: PathBuf,
        #[arg(long, value_name = "P")]
        at: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write the complement of a code
    Complement {
        file: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Parameter queries
    Params {
        #[command(subcommand)]
        query: ParamsQuery,
    },
    /// Report hyperface and clique counts, derivatives and clique structure
    Analyze {
        file: PathBuf,
        #[arg(long)]
        derivatives: bool,
        #[arg(long)]
        cliques: bool,
    },
    /// Enumerate every covering radius 1 code of a small Hamming graph
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// normalized gamma (gamma <= beta); requires --index
        #[arg(long, requires = "index")]
        gamma: Option<u32>,
        #[arg(long)]
        index: Option<usize>,
        /// write one file per code and an index.tsv into this directory
        #[arg(long, value_name = "DIR", conflicts_with = "count_only")]
        emit: Option<PathBuf>,
        #[arg(long)]
        count_only: bool,
        /// only codes containing the all-zero word
        #[arg(long)]
        fix_zero: bool,
    },
    /// Feasibility of every gamma for the second eigenvalue of H(3,q)
    Table {
        #[arg(long, value_name = "Q")]
        q_max: u32,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// output file (default: standard output)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    out: OutputArgs,
    /// write the complement when gamma exceeds beta
    #[arg(long)]
    normalize: bool,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// extended stochastic code of H(2,q), even gamma
    A {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        gamma: u32,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// parity lifting of a code of H(3,2), even q
    B {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        variant: u8,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// book construction, even q and q/2 < t < q
    C {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// three stochastic blocks from a Condition 1 witness
    D {
        #[arg(long)]
        q: u32,
        #[arg(long, value_name = "R,S,T,A,B,C", value_delimiter = ',', num_args = 1..)]
        witness: Vec<u32>,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// B x A x A with |B| = size
    Index1 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        size: u32,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// m residue classes of x1+x2+x3 mod q
    Index3 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        args: ConstructArgs,
    },
}

#[derive(Subcommand)]
enum ParamsQuery {
    /// Existence of a code with the given gamma and eigenvalue index
    Feasible {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        gamma: u32,
        #[arg(long, default_value_t = 2)]
        index: usize,
    },
    /// All Condition 1 witnesses (r,s,t,a,b,c) for q
    SolveC1 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        gamma: Option<u32>,
    },
    /// Eigenvalues and multiplicities of H(n,q)
    Lambda {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        i: Option<usize>,
    },
}

/// Runs the command line with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Runs the command line writing reports to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = thread_pool().and_then(|pool| match pool {
        Some(pool) => pool.install(|| dispatch(cli.command, out, err)),
        None => dispatch(cli.command, out, err),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else { return Ok(None) };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map(Some).map_err(|e| CliError::Usage(e.to_string()))
}

fn io_err(what: &str) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(what.to_string(), e)
}

fn dispatch(command: Command, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Outcome {
    match command {
        Command::Construct { kind } => construct(kind, out, err),
        Command::Verify { file, expect_gamma, expect_beta, expect_index } => {
            verify(&file, [expect_gamma, expect_beta, expect_index], out)
        }
        Command::Reduce { file, out: dest } => {
            let code = CodeFile::read(&file)?.code;
            let reduced = verifier::reduce(&code)?;
            emit(CodeFile::new(reduced).with_meta("operation", "reduce".into()), &dest, out)
        }
        Command::Extend { file, at, out: dest } => {
            let code = CodeFile::read(&file)?.code;
            let n = code.space().n();
            if at == 0 || at > n + 1 {
                return Err(CliError::Usage(format!("--at must lie in 1..={}, got {at}", n + 1)));
            }
            let extended = verifier::extend(&code, at - 1)?;
            emit(CodeFile::new(extended).with_meta("operation", format!("extend at {at}").into()), &dest, out)
        }
        Command::Complement { file, out: dest } => {
            let code = CodeFile::read(&file)?.code;
            emit(CodeFile::new(code.complement()).with_meta("operation", "complement".into()), &dest, out)
        }
        Command::Params { query } => params(query, out),
        Command::Analyze { file, derivatives, cliques } => {
            let code = CodeFile::read(&file)?.code;
            report::analyze(&code, derivatives, cliques, out).map_err(io_err("output"))?;
            Ok(0)
        }
        Command::Search { n, q, gamma, index, emit, count_only, fix_zero } => {
            search(SearchArgs { n, q, gamma, index, emit, count_only, fix_zero }, out)
        }
        Command::Table { q_max } => {
            if q_max < 2 {
                return Err(CliError::Usage("--q-max must be at least 2".into()));
            }
            report::table(q_max, out).map_err(io_err("output"))?;
            Ok(0)
        }
    }
}

/// Writes a code to the requested file, or to `out` when none is given.
fn emit(file: CodeFile, dest: &OutputArgs, out: &mut (dyn Write + Send)) -> Outcome {
    match &dest.output {
        Some(path) => {
            file.write(path)?;
            let s = file.code.space();
            writeln!(out, "wrote {} codewords of H({},{}) to {}", file.code.len(), s.n(), s.q(), path.display())
                .map_err(io_err("output"))?;
        }
        None => out.write_all(file.render().as_bytes()).map_err(io_err("output"))?,
    }
    Ok(0)
}

fn spec_of(kind: &ConstructKind) -> Result<(ConstructionSpec, &ConstructArgs), CliError> {
    Ok(match kind {
        ConstructKind::A { q, gamma, args } => (ConstructionSpec::A { q: *q, gamma: *gamma }, args),
        ConstructKind::B { q, variant, args } => (ConstructionSpec::B { q: *q, variant: *variant }, args),
        ConstructKind::C { q, t, args } => (ConstructionSpec::C { q: *q, t: *t }, args),
        ConstructKind::D { q, witness, args } => {
            let &[r, s, t, a, b, c] = witness.as_slice() else {
                return Err(CliError::Usage(format!(
                    "--witness needs six integers r,s,t,a,b,c, got {}",
                    witness.len()
                )));
            };
            (ConstructionSpec::D { q: *q, witness: ConditionOneWitness::new(r, s, t, a, b, c) }, args)
        }
        ConstructKind::Index1 { q, size, args } => (ConstructionSpec::Index1 { q: *q, size: *size }, args),
        ConstructKind::Index3 { q, m, args } => (ConstructionSpec::Index3 { q: *q, m: *m }, args),
    })
}

fn certify(code: &Code) -> Result<CrcCertificate, CliError> {
    match check_crc(code)? {
        CrcVerdict::Regular(k) if k.rho == 1 => Ok(k),
        CrcVerdict::Regular(k) => Err(CliError::Failed(format!("covering radius is {}, not 1", k.rho))),
        CrcVerdict::NotRegular(f) => Err(CliError::Failed(report::failure_line(&f))),
    }
}

fn construct(kind: ConstructKind, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Outcome {
    let (spec, args) = spec_of(&kind)?;
    let mut code = spec.build()?;
    let k = certify(&code).map_err(|e| CliError::Failed(format!("self-check failed: {e}")))?;
    let expected = spec.expected();
    let matches = k.eigenvalue_index == Some(expected.eigenvalue_index)
        && expected.gamma.is_none_or(|g| g == k.gamma())
        && expected.beta.is_none_or(|b| b == k.beta());
    if !matches {
        return Err(CliError::Failed(format!(
            "self-check failed: construction promised {expected:?}, verifier found gamma={}, beta={}, index={:?}",
            k.gamma(),
            k.beta(),
            k.eigenvalue_index
        )));
    }
    let mut file_cert = k.clone();
    let mut complemented = false;
    if k.gamma() > k.beta() {
        if args.normalize {
            code = code.complement();
            file_cert = certify(&code)?;
            complemented = true;
        } else {
            writeln!(
                err,
                "warning: gamma={} exceeds beta={}; pass --normalize to write the complement (gamma={})",
                k.gamma(),
                k.beta(),
                k.beta()
            )
            .map_err(io_err("diagnostics"))?;
        }
    }
    let mut file = CodeFile::new(code)
        .with_meta("construction", serde_json::to_value(spec).expect("serializable"))
        .with_meta("certificate", serde_json::to_value(&file_cert).expect("serializable"));
    if complemented {
        file = file.with_meta("complemented", Value::Bool(true));
    }
    emit(file, &args.out, out)
}

fn verify(path: &Path, expect: [Option<usize>; 3], out: &mut (dyn Write + Send)) -> Outcome {
    let code = CodeFile::read(path)?.code;
    let verdict = match check_crc(&code) {
        Ok(v) => v,
        Err(crc_forge::Error::EmptyOrFullCode) => {
            return Err(CliError::Failed("the empty set and the full vertex set are not codes".into()))
        }
        Err(e) => return Err(e.into()),
    };
    report::verdict(&code, &verdict, out).map_err(io_err("output"))?;
    let CrcVerdict::Regular(k) = verdict else { return Ok(1) };
    let [gamma, beta, index] = expect;
    let mut failed = Vec::new();
    if k.rho == 1 {
        if let Some(g) = gamma.filter(|&g| g != k.gamma()) {
            failed.push(format!("gamma is {}, expected {g}", k.gamma()));
        }
        if let Some(b) = beta.filter(|&b| b != k.beta()) {
            failed.push(format!("beta is {}, expected {b}", k.beta()));
        }
        if let Some(i) = index.filter(|&i| Some(i) != k.eigenvalue_index) {
            failed.push(format!("eigenvalue index is {:?}, expected {i}", k.eigenvalue_index));
        }
    } else if gamma.or(beta).or(index).is_some() {
        failed.push(format!("expectations refer to covering radius 1, found {}", k.rho));
    }
    for f in &failed {
        writeln!(out, "expectation failed: {f}").map_err(io_err("output"))?;
    }
    Ok(if failed.is_empty() { 0 } else { 1 })
}

fn params(query: ParamsQuery, out: &mut (dyn Write + Send)) -> Outcome {
    let w = |out: &mut (dyn Write + Send), s: String| writeln!(out, "{s}").map_err(io_err("output"));
    match query {
        ParamsQuery::Feasible { n, q, gamma, index } => {
            let verdict = if n == 3 {
                parameters::feasible_h3q(q, gamma, index)?
            } else if index == 2 {
                parameters::feasible_hnq(n, q, gamma)?
            } else {
                return Err(CliError::Usage(format!("for n = {n} only eigenvalue index 2 is classified")));
            };
            let status = if verdict.feasible { "feasible" } else { "infeasible" };
            w(out, format!("H({n},{q}), gamma={gamma}, eigenvalue index {index}: {status}"))?;
            w(out, format!("rule: {}", verdict.rule))?;
            if let Some(witness) = verdict.witness {
                w(out, format!("witness: {witness}"))?;
            }
            Ok(if verdict.feasible { 0 } else { 1 })
        }
        ParamsQuery::SolveC1 { q, gamma } => {
            if q < 2 {
                return Err(CliError::Usage("q must be at least 2".into()));
            }
            let found = parameters::solve_condition1(q, gamma);
            for witness in &found {
                w(out, format!("{witness} gamma={}", witness.gamma()))?;
            }
            w(out, format!("{} witnesses", found.len()))?;
            Ok(if found.is_empty() { 1 } else { 0 })
        }
        ParamsQuery::Lambda { n, q, i } => {
            Space::new(n, q)?;
            let indices: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (0..=n).collect(),
            };
            for i in indices {
                let l = parameters::lambda(n, q, i)?;
                let m = parameters::multiplicity(n, q, i)?;
                w(out, format!("lambda_{i}({n},{q}) = {l}, multiplicity {m}"))?;
            }
            Ok(0)
        }
    }
}

struct SearchArgs {
    n: usize,
    q: u32,
    gamma: Option<u32>,
    index: Option<usize>,
    emit: Option<PathBuf>,
    count_only: bool,
    fix_zero: bool,
}

struct EmitState {
    dir: PathBuf,
    next: usize,
    index: std::fs::File,
    error: Option<CliError>,
}

impl EmitState {
    fn write(&mut self, code: &Code, k: &CrcCertificate) -> Result<(), CliError> {
        self.next += 1;
        let name = format!("code-{:06}.json", self.next);
        let path = self.dir.join(&name);
        CodeFile::new(code.clone())
            .with_meta("certificate", serde_json::to_value(k).expect("serializable"))
            .write(&path)?;
        let index_err = io_err("index.tsv");
        writeln!(
            self.index,
            "{name}\t{}\t{}\t{}\t{}",
            code.len(),
            k.gamma(),
            k.beta(),
            k.eigenvalue_index.map_or("-".into(), |i| i.to_string())
        )
        .map_err(index_err)
    }
}

fn search(args: SearchArgs, out: &mut (dyn Write + Send)) -> Outcome {
    let space = Space::new(args.n, args.q)?;
    let constraints = SearchConstraints {
        gamma: args.gamma,
        eigenvalue_index: args.index,
        count_only: args.count_only,
        fix_zero: args.fix_zero,
        ..SearchConstraints::new(space)
    };
    let state = match &args.emit {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(io_err(&dir.display().to_string()))?;
            let index_path = dir.join("index.tsv");
            let mut index = std::fs::File::create(&index_path).map_err(io_err(&index_path.display().to_string()))?;
            writeln!(index, "file\tsize\tgamma\tbeta\tindex").map_err(io_err("index.tsv"))?;
            Some(Mutex::new(EmitState { dir: dir.clone(), next: 0, index, error: None }))
        }
        None => None,
    };
    let summary = enumerate_crcs(&constraints, |code, k| {
        if let Some(state) = &state {
            let mut s = state.lock().unwrap();
            if s.error.is_none() {
                if let Err(e) = s.write(code, k) {
                    s.error = Some(e);
                }
            }
        }
    })?;
    if let Some(state) = state {
        if let Some(e) = state.into_inner().unwrap().error {
            return Err(e);
        }
    }
    report::search_summary(&space, &summary, out).map_err(io_err("output"))?;
    Ok(0)
}

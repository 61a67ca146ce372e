//! `bfpc`: analyse, compress and query texts with minimum-entropy
//! bounded-factor parsings.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bfpc::analysis::{analyze_text, optimal_parsing, ReportRow};
use bfpc::codec::{compress_parsing, decompress, SizeReport};
use bfpc::parsing::best_naive;
use bfpc::random_access::{build_access_from_parsing, AccessStructure, StructureSize};
use bfpc::{load_text, Order};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_FORMAT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bfpc",
    version,
    about = "Minimum-entropy bounded-factor parsing and compression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the best naive parsing with the optimal parsing for each m.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::H0)]
        order: OrderArg,
        /// Comma-separated phrase bounds.
        #[arg(long = "m", value_delimiter = ',', default_values_t = [4usize, 6, 8])]
        m: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Name reported in the `file` column (defaults to the file name).
        #[arg(long)]
        name: Option<String>,
    },
    /// Compress a file and print its size report.
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::H0)]
        order: OrderArg,
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Encode the best naive parsing instead of the optimal one.
        #[arg(long)]
        baseline: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Restore a compressed file.
    Decompress { input: PathBuf, output: PathBuf },
    /// Build the random-access structure and time random and block reads.
    AccessBench(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Position sampling rate (defaults to 2m).
    #[arg(long)]
    d: Option<usize>,
    /// Code sampling rate.
    #[arg(long, default_value_t = 8)]
    t: usize,
    #[arg(long, default_value_t = 1_000_000)]
    queries: usize,
    #[arg(long, default_value_t = 1_000)]
    blocks: usize,
    #[arg(long, default_value_t = 50 * 1024)]
    block_size: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random positions checked against the raw file before timing.
    #[arg(long, default_value_t = 10_000)]
    verify: usize,
    /// Use the best naive parsing instead of the optimal one.
    #[arg(long)]
    baseline: bool,
    /// Also write the serialised structure here.
    #[arg(long)]
    save: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    H0,
    H1,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::H0 => Order::H0,
            OrderArg::H1 => Order::H1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Format(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
            Failure::Format(_) => EXIT_FORMAT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Format(m) => m,
        }
    }
}

impl From<bfpc::Error> for Failure {
    fn from(e: bfpc::Error) -> Self {
        match e {
            bfpc::Error::Io(_) => Failure::Io(e.to_string()),
            bfpc::Error::Format(_) => Failure::Format(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(io_err(path))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(io_err(path))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bfpc: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze {
            input,
            order,
            m,
            format,
            name,
        } => {
            let text = load_text(&read(&input)?);
            let name = name.unwrap_or_else(|| file_name(&input));
            let rows = analyze_text(&name, &text, order.into(), &m)?;
            emit(format, &rows, |w| {
                for r in &rows {
                    w.serialize(FlatRow::from(r))?;
                }
                Ok(())
            })
        }
        Command::Compress {
            input,
            output,
            order,
            m,
            baseline,
            format,
        } => {
            let order = Order::from(order);
            let text = load_text(&read(&input)?);
            let parsing = if baseline {
                best_naive(&text, m, order)?.0
            } else {
                optimal_parsing(&text, m, order)?.0
            };
            let archive = compress_parsing(&parsing, order)?;
            write(&output, &archive.to_bytes())?;
            let report = CompressReport {
                file: file_name(&input),
                variant: order,
                m,
                parsing: if baseline { "baseline" } else { "algorithm" },
                phrases: parsing.len(),
                size: archive.size_report(),
            };
            emit(format, &report, |w| w.serialize(report.flat()))
        }
        Command::Decompress { input, output } => {
            let bytes = decompress(&read(&input)?)?;
            write(&output, &bytes)
        }
        Command::AccessBench(args) => access_bench(args),
    }
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

/// Prints `value` as pretty JSON, or as CSV through `rows`.
fn emit<T: Serialize>(
    format: Format,
    value: &T,
    rows: impl FnOnce(&mut csv::Writer<io::StdoutLock<'static>>) -> csv::Result<()>,
) -> Result<(), Failure> {
    let out = |e: &dyn std::fmt::Display| Failure::Io(format!("stdout: {e}"));
    match format {
        Format::Json => {
            let mut stdout = io::stdout().lock();
            serde_json::to_writer_pretty(&mut stdout, value).map_err(|e| out(&e))?;
            writeln!(stdout).map_err(|e| out(&e))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            rows(&mut w).map_err(|e| out(&e))?;
            w.flush().map_err(|e| out(&e))
        }
    }
}

/// CSV form of a [`ReportRow`]: `b_*` columns describe the best naive
/// parsing, `a_*` the optimal one.
#[derive(Serialize)]
struct FlatRow<'a> {
    file: &'a str,
    variant: Order,
    m: usize,
    b_bps: f64,
    b_avg_len: f64,
    b_sigma: usize,
    b_pairs: usize,
    b_offset: usize,
    a_bps: f64,
    a_avg_len: f64,
    a_sigma: usize,
    a_pairs: usize,
    mean_entropy_bps: f64,
}

impl<'a> From<&'a ReportRow> for FlatRow<'a> {
    fn from(r: &'a ReportRow) -> Self {
        FlatRow {
            file: &r.file,
            variant: r.variant,
            m: r.m,
            b_bps: r.baseline.bps,
            b_avg_len: r.baseline.avg_phrase_len,
            b_sigma: r.baseline.distinct,
            b_pairs: r.baseline.pairs,
            b_offset: r.baseline_offset,
            a_bps: r.algorithm.bps,
            a_avg_len: r.algorithm.avg_phrase_len,
            a_sigma: r.algorithm.distinct,
            a_pairs: r.algorithm.pairs,
            mean_entropy_bps: r.mean_entropy_bps,
        }
    }
}

#[derive(Serialize)]
struct CompressReport {
    file: String,
    variant: Order,
    m: usize,
    parsing: &'static str,
    phrases: usize,
    size: SizeReport,
}

#[derive(Serialize)]
struct FlatCompress<'a> {
    file: &'a str,
    variant: Order,
    m: usize,
    parsing: &'a str,
    n: usize,
    phrases: usize,
    total_bps: f64,
    string_bps: f64,
    dict_bps: f64,
    total_bits: u64,
}

impl CompressReport {
    fn flat(&self) -> FlatCompress<'_> {
        FlatCompress {
            file: &self.file,
            variant: self.variant,
            m: self.m,
            parsing: self.parsing,
            n: self.size.n,
            phrases: self.phrases,
            total_bps: self.size.total_bps,
            string_bps: self.size.string_bps,
            dict_bps: self.size.dict_bps,
            total_bits: self.size.total_bits,
        }
    }
}

#[derive(Serialize)]
struct Hardware {
    cpu: String,
    threads: usize,
    os: &'static str,
    arch: &'static str,
}

fn hardware() -> Hardware {
    let cpu = fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|v| v.trim().to_owned())
        })
        .unwrap_or_else(|| "unknown".into());
    Hardware {
        cpu,
        threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        os: std::env::consts::OS,
        arch: std::env::consts::ARCH,
    }
}

#[derive(Serialize)]
struct BenchReport {
    file: String,
    parsing: &'static str,
    n: usize,
    m: usize,
    d: usize,
    t: usize,
    phrases: usize,
    size: StructureSize,
    build_seconds: f64,
    verified: usize,
    failures: usize,
    queries: usize,
    /// Median wall time of the random-access workload over 3 runs.
    tr_seconds: Option<f64>,
    blocks: usize,
    block_size: usize,
    /// Median wall time of the block-read workload over 3 runs.
    tb_seconds: Option<f64>,
    seed: u64,
    hardware: Hardware,
}

#[derive(Serialize)]
struct FlatBench<'a> {
    file: &'a str,
    parsing: &'a str,
    n: usize,
    m: usize,
    d: usize,
    t: usize,
    phrases: usize,
    bps: f64,
    archive_bps: f64,
    delta_bps: f64,
    build_seconds: f64,
    verified: usize,
    failures: usize,
    queries: usize,
    tr_seconds: Option<f64>,
    blocks: usize,
    block_size: usize,
    tb_seconds: Option<f64>,
    seed: u64,
    cpu: &'a str,
}

impl BenchReport {
    fn flat(&self) -> FlatBench<'_> {
        FlatBench {
            file: &self.file,
            parsing: self.parsing,
            n: self.n,
            m: self.m,
            d: self.d,
            t: self.t,
            phrases: self.phrases,
            bps: self.size.bps,
            archive_bps: self.size.archive_bps,
            delta_bps: self.size.delta_bps,
            build_seconds: self.build_seconds,
            verified: self.verified,
            failures: self.failures,
            queries: self.queries,
            tr_seconds: self.tr_seconds,
            blocks: self.blocks,
            block_size: self.block_size,
            tb_seconds: self.tb_seconds,
            seed: self.seed,
            cpu: &self.hardware.cpu,
        }
    }
}

fn median_of_3(mut run: impl FnMut() -> Result<(), Failure>) -> Result<f64, Failure> {
    let mut times: Vec<Duration> = Vec::with_capacity(3);
    for _ in 0..3 {
        let start = Instant::now();
        run()?;
        times.push(start.elapsed());
    }
    times.sort();
    Ok(times[1].as_secs_f64())
}

fn access_bench(args: BenchArgs) -> Result<(), Failure> {
    let raw = read(&args.input)?;
    let text = load_text(&raw);
    let n = raw.len();
    let d = args.d.unwrap_or(2 * args.m);

    let start = Instant::now();
    let parsing = if args.baseline {
        best_naive(&text, args.m, Order::H0)?.0
    } else {
        optimal_parsing(&text, args.m, Order::H0)?.0
    };
    let structure = build_access_from_parsing(&parsing, d, args.t)?;
    let build_seconds = start.elapsed().as_secs_f64();
    if let Some(path) = &args.save {
        let bytes = structure.to_bytes();
        write(path, &bytes)?;
        // the saved file must answer like the in-memory structure
        let reloaded = AccessStructure::from_bytes(&bytes)?;
        verify(&reloaded, &raw, args.verify.min(1_000), args.seed ^ 1)?;
    }

    let mut rng = StdRng::seed_from_u64(args.seed);
    let verified = verify(&structure, &raw, args.verify, args.seed)?;

    let mut tr_seconds = None;
    if args.queries > 0 && n > 0 {
        let positions: Vec<usize> = (0..args.queries).map(|_| rng.gen_range(0..n)).collect();
        tr_seconds = Some(median_of_3(|| {
            let mut acc = 0u8;
            for &i in &positions {
                acc ^= structure.access(i)?;
            }
            std::hint::black_box(acc);
            Ok(())
        })?);
    }
    let mut tb_seconds = None;
    let block = args.block_size.min(n);
    if args.blocks > 0 && n > 0 {
        let starts: Vec<usize> = (0..args.blocks)
            .map(|_| rng.gen_range(0..=n - block))
            .collect();
        for &s in starts.iter().take(10) {
            if structure.read_block(s, block)? != raw[s..s + block] {
                return Err(Failure::Format(format!(
                    "block read at {s} does not match the input"
                )));
            }
        }
        tb_seconds = Some(median_of_3(|| {
            for &s in &starts {
                std::hint::black_box(structure.read_block(s, block)?);
            }
            Ok(())
        })?);
    }

    let report = BenchReport {
        file: file_name(&args.input),
        parsing: if args.baseline {
            "baseline"
        } else {
            "algorithm"
        },
        n,
        m: args.m,
        d,
        t: args.t,
        phrases: structure.phrase_count(),
        size: structure.structure_size(),
        build_seconds,
        verified,
        failures: 0,
        queries: args.queries,
        tr_seconds,
        blocks: args.blocks,
        block_size: block,
        tb_seconds,
        seed: args.seed,
        hardware: hardware(),
    };
    emit(args.format, &report, |w| w.serialize(report.flat()))
}

/// Checks `count` seeded random positions against `raw`; any mismatch is
/// a hard failure.
fn verify(
    structure: &AccessStructure,
    raw: &[u8],
    count: usize,
    seed: u64,
) -> Result<usize, Failure> {
    if raw.is_empty() {
        return Ok(0);
    }
    let mut rng = StdRng::seed_from_u64(seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    for _ in 0..count {
        let i = rng.gen_range(0..raw.len());
        let got = structure.access(i)?;
        if got != raw[i] {
            return Err(Failure::Format(format!(
                "verification failed at position {i}: expected {:#04x}, got {got:#04x}",
                raw[i]
            )));
        }
    }
    Ok(count)
}

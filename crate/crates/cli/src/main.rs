use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bwca::bench::{load_corpus_dir, render_report, run_corpus};
use bwca::dictionary::{build_dictionary, dict_encode, update_dictionary, DEFAULT_CAPACITY};
use bwca::pipeline::{compress, compress_traced, decompress, DEFAULT_BLOCK_SIZE};
use bwca::{Container, Dictionary, Error, Method, PipelineSpec, UnknownWordLog};

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Block-sorting text compressor with word-dictionary preprocessing.
#[derive(Parser)]
#[command(name = "bwca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a word dictionary from corpus files or directories
    BuildDict {
        #[arg(required = true)]
        corpus: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAPACITY)]
        capacity: usize,
    },
    /// Compress a file
    Compress {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// bwca, proposed, dict-bwca or dict-proposed
        #[arg(long, default_value = "bwca")]
        method: String,
        #[arg(long)]
        dict: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BLOCK_SIZE)]
        block_size: u16,
        /// Write BWT.txt, MTF.txt, RLE.txt, HUFFMAN.txt (and DICTIONARY.txt)
        /// next to the output
        #[arg(long)]
        dump_stages: bool,
        /// Where to write words missing from the dictionary
        #[arg(long)]
        unknown_log: Option<PathBuf>,
    },
    /// Decompress a file
    Decompress {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        dict: Option<PathBuf>,
    },
    /// Compress every file in a directory with each method and write a CSV report
    Bench {
        dir: PathBuf,
        /// Comma-separated methods
        #[arg(long, value_delimiter = ',', default_value = "bwca,proposed")]
        methods: Vec<String>,
        #[arg(long)]
        dict: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BLOCK_SIZE)]
        block_size: u16,
    },
    /// Check that a file survives a compress/decompress roundtrip
    Verify {
        input: PathBuf,
        #[arg(long, default_value = "bwca")]
        method: String,
        #[arg(long)]
        dict: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BLOCK_SIZE)]
        block_size: u16,
        /// Corrupt the container before decoding (exercises the failure path)
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Merge an unknown-word log into a dictionary
    UpdateDict {
        dict: PathBuf,
        log: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Capacity of the updated dictionary (defaults to the larger of
        /// 5000 and the current entry count)
        #[arg(long)]
        capacity: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Config(_) => Failure::Usage(err.to_string()),
            Error::Verification { .. } => Failure::Verify(err.to_string()),
            _ => Failure::Io(err.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, data: &[u8]) -> CliResult {
    fs::write(path, data).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_dict(path: Option<&Path>) -> Result<Option<Dictionary>, Failure> {
    path.map(|p| Dictionary::from_bytes(&read(p)?).map_err(Failure::from))
        .transpose()
}

fn parse_method(name: &str) -> Result<Method, Failure> {
    name.parse::<Method>().map_err(Failure::from)
}

fn spec_and_dict(
    method: &str,
    block_size: u16,
    dict: Option<&Path>,
) -> Result<(PipelineSpec, Option<Dictionary>), Failure> {
    let method = parse_method(method)?;
    let spec = PipelineSpec::new(method, block_size)?;
    match (method.uses_dictionary(), dict) {
        (true, None) => Err(Failure::Usage(format!("--method {} needs --dict", method.flag()))),
        (false, Some(_)) => Err(Failure::Usage(format!(
            "--method {} does not take --dict",
            method.flag()
        ))),
        _ => Ok((spec, load_dict(dict)?)),
    }
}

fn roundtrips(bytes: &[u8], input: &[u8], dict: Option<&Dictionary>) -> bool {
    Container::parse(bytes)
        .and_then(|c| decompress(&c, dict))
        .is_ok_and(|out| out == input)
}

fn build_dict(corpus: &[PathBuf], output: &Path, capacity: usize) -> CliResult {
    if capacity == 0 {
        return Err(Failure::Usage("--capacity must be at least 1".into()));
    }
    let mut texts = Vec::new();
    for path in corpus {
        if path.is_dir() {
            texts.extend(load_corpus_dir(path)?.into_iter().map(|f| f.data));
        } else {
            texts.push(read(path)?);
        }
    }
    let dict = build_dictionary(&texts, capacity);
    write(output, &dict.to_bytes())?;
    eprintln!("{} words ({:016x})", dict.len(), dict.fingerprint());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn compress_file(
    input: &Path,
    output: &Path,
    method: &str,
    dict: Option<&Path>,
    block_size: u16,
    dump_stages: bool,
    unknown_log: Option<&Path>,
) -> CliResult {
    let (spec, dict) = spec_and_dict(method, block_size, dict)?;
    let data = read(input)?;
    let container = if dump_stages {
        let (container, trace) = compress_traced(&data, &spec, dict.as_ref())?;
        let dir = output.parent().unwrap_or_else(|| Path::new("."));
        trace.write_to(dir)?;
        container
    } else {
        compress(&data, &spec, dict.as_ref())?
    };
    let bytes = container.to_bytes();
    if !roundtrips(&bytes, &data, dict.as_ref()) {
        return Err(Failure::Verify(format!(
            "{} does not roundtrip with {}; nothing written",
            input.display(),
            spec.method
        )));
    }
    write(output, &bytes)?;
    if let (Some(path), Some(d)) = (unknown_log, dict.as_ref()) {
        write(path, &dict_encode(&data, d).unknown.to_bytes())?;
    }
    eprintln!("{} -> {} bytes", data.len(), bytes.len());
    Ok(())
}

fn decompress_file(input: &Path, output: &Path, dict: Option<&Path>) -> CliResult {
    let container = Container::parse(&read(input)?)?;
    let dict = if container.spec.method.uses_dictionary() {
        if dict.is_none() {
            return Err(Failure::Usage(format!(
                "{} was compressed with {}; pass --dict",
                input.display(),
                container.spec.method.flag()
            )));
        }
        load_dict(dict)?
    } else {
        None
    };
    let data = decompress(&container, dict.as_ref())?;
    write(output, &data)
}

fn bench(
    dir: &Path,
    methods: &[String],
    dict: Option<&Path>,
    output: &Path,
    block_size: u16,
) -> CliResult {
    let methods = methods
        .iter()
        .map(|m| parse_method(m.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if methods.is_empty() {
        return Err(Failure::Usage("--methods is empty".into()));
    }
    if methods.iter().any(|m| m.uses_dictionary()) && dict.is_none() {
        return Err(Failure::Usage("dictionary methods need --dict".into()));
    }
    let dict = load_dict(dict)?;
    let files = load_corpus_dir(dir)?;
    let run = run_corpus(&files, &methods, block_size, dict.as_ref())?;
    let report = render_report(&run);
    report.write(output)?;
    print!("{}", report.table);
    Ok(())
}

fn verify(
    input: &Path,
    method: &str,
    dict: Option<&Path>,
    block_size: u16,
    inject_fault: bool,
) -> CliResult {
    let (spec, dict) = spec_and_dict(method, block_size, dict)?;
    let data = read(input)?;
    let container = compress(&data, &spec, dict.as_ref())?;
    let mut bytes = container.to_bytes();
    if inject_fault {
        inject(&mut bytes, &container);
    }
    if roundtrips(&bytes, &data, dict.as_ref()) {
        println!("ok {} {} bytes", spec.method, bytes.len());
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "{} failed the {} roundtrip",
            input.display(),
            spec.method
        )))
    }
}

/// Shifts the first block's primary index, which decodes to the wrong
/// rotation of that block.
fn inject(bytes: &mut [u8], container: &Container) {
    let Some(first) = container.blocks.first() else {
        bytes.iter_mut().for_each(|b| *b ^= 0xff);
        return;
    };
    let table = bytes.len() - container.payload.len() - 6 * container.blocks.len();
    let len = container.transformed_len.min(u64::from(container.spec.block_size)) as u16;
    let shifted = (first.primary_index + 1) % len.max(1);
    bytes[table..table + 2].copy_from_slice(&shifted.to_le_bytes());
}

fn update_dict(dict: &Path, log: &Path, output: &Path, capacity: Option<usize>) -> CliResult {
    let mut current = load_dict(Some(dict))?.expect("path given");
    if let Some(capacity) = capacity {
        if capacity == 0 {
            return Err(Failure::Usage("--capacity must be at least 1".into()));
        }
        current = current.with_capacity(capacity);
    }
    let log = UnknownWordLog::from_bytes(&read(log)?)?;
    let updated = update_dictionary(&current, &log);
    write(output, &updated.to_bytes())?;
    eprintln!("{} words ({:016x})", updated.len(), updated.fingerprint());
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::BuildDict {
            corpus,
            output,
            capacity,
        } => build_dict(&corpus, &output, capacity),
        Command::Compress {
            input,
            output,
            method,
            dict,
            block_size,
            dump_stages,
            unknown_log,
        } => compress_file(
            &input,
            &output,
            &method,
            dict.as_deref(),
            block_size,
            dump_stages,
            unknown_log.as_deref(),
        ),
        Command::Decompress {
            input,
            output,
            dict,
        } => decompress_file(&input, &output, dict.as_deref()),
        Command::Bench {
            dir,
            methods,
            dict,
            output,
            block_size,
        } => bench(&dir, &methods, dict.as_deref(), &output, block_size),
        Command::Verify {
            input,
            method,
            dict,
            block_size,
            inject_fault,
        } => verify(&input, &method, dict.as_deref(), block_size, inject_fault),
        Command::UpdateDict {
            dict,
            log,
            output,
            capacity,
        } => update_dict(&dict, &log, &output, capacity),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `bwca --help` for usage");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}

//! Corpus benchmark: compressed sizes, compression ratios and CSV reports.

use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::pipeline::{compress, decompress, Container, Method, PipelineSpec};

/// A compression ratio in percent, held in hundredths and rounded half-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompressionRatio(i64);

impl CompressionRatio {
    pub fn from_hundredths(hundredths: i64) -> Self {
        CompressionRatio(hundredths)
    }

    pub fn hundredths(self) -> i64 {
        self.0
    }

    pub fn percent(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for CompressionRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", abs / 100, abs % 100)
    }
}

/// `(original - compressed) / original * 100`, unrounded.
pub fn compression_ratio_exact(original: u64, compressed: u64) -> Result<f64> {
    if original == 0 {
        return Err(Error::InvalidInput("original size must be at least 1".into()));
    }
    Ok((original as f64 - compressed as f64) / original as f64 * 100.0)
}

/// Compression ratio rounded half-up to two decimals.
pub fn compression_ratio(original: u64, compressed: u64) -> Result<CompressionRatio> {
    if original == 0 {
        return Err(Error::InvalidInput("original size must be at least 1".into()));
    }
    // floor(x + 1/2) with x = (o - c) * 10000 / o, in exact integer arithmetic
    let o = i128::from(original);
    let num = (o - i128::from(compressed)) * 10_000;
    let hundredths = (2 * num + o).div_euclid(2 * o);
    Ok(CompressionRatio(hundredths as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFile {
    pub name: String,
    pub data: Vec<u8>,
}

/// Regular files directly inside `dir`, sorted by name.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusFile>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            files.push(CorpusFile {
                name: entry.file_name().to_string_lossy().into_owned(),
                data: fs::read(entry.path())?,
            });
        }
    }
    files.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(files)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRow {
    pub name: String,
    pub original: u64,
    /// One size per method, in [`CorpusRun::methods`] order.
    pub compressed: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Averages {
    pub original: f64,
    pub compressed: Vec<f64>,
    pub ratio: Vec<f64>,
}

/// Measured sizes for each (file, method). Ratios and averages are always
/// derived from the sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRun {
    pub methods: Vec<Method>,
    pub rows: Vec<RunRow>,
}

impl CorpusRun {
    pub fn ratio(&self, row: usize, method: usize) -> CompressionRatio {
        let r = &self.rows[row];
        compression_ratio(r.original, r.compressed[method]).expect("rows have non-zero sizes")
    }

    pub fn ratios(&self, method: usize) -> Vec<CompressionRatio> {
        (0..self.rows.len()).map(|row| self.ratio(row, method)).collect()
    }

    /// Column means; the ratio mean is taken over the rounded ratios.
    pub fn averages(&self) -> Option<Averages> {
        if self.rows.is_empty() {
            return None;
        }
        let n = self.rows.len() as f64;
        let mean = |values: &mut dyn Iterator<Item = f64>| values.sum::<f64>() / n;
        let original = mean(&mut self.rows.iter().map(|r| r.original as f64));
        let compressed = (0..self.methods.len())
            .map(|m| mean(&mut self.rows.iter().map(|r| r.compressed[m] as f64)))
            .collect();
        let ratio = (0..self.methods.len())
            .map(|m| {
                let total: i64 = self.ratios(m).iter().map(|r| r.hundredths()).sum();
                total as f64 / 100.0 / n
            })
            .collect();
        Some(Averages {
            original,
            compressed,
            ratio,
        })
    }
}

fn measure(file: &CorpusFile, method: Method, block_size: u16, dict: Option<&Dictionary>) -> Result<u64> {
    let spec = PipelineSpec::new(method, block_size)?;
    let dict = if method.uses_dictionary() { dict } else { None };
    let bytes = compress(&file.data, &spec, dict)?.to_bytes();
    let verification = || Error::Verification {
        file: file.name.clone(),
        method: method.name().to_string(),
    };
    let restored = Container::parse(&bytes)
        .and_then(|c| decompress(&c, dict))
        .map_err(|_| verification())?;
    if restored != file.data {
        return Err(verification());
    }
    Ok(bytes.len() as u64)
}

/// Compresses every file with every method, verifying each roundtrip.
pub fn run_corpus(
    files: &[CorpusFile],
    methods: &[Method],
    block_size: u16,
    dict: Option<&Dictionary>,
) -> Result<CorpusRun> {
    if methods.iter().any(|m| m.uses_dictionary()) && dict.is_none() {
        return Err(Error::Config("dictionary methods need a dictionary".into()));
    }
    if let Some(empty) = files.iter().find(|f| f.data.is_empty()) {
        return Err(Error::InvalidInput(format!("{} is empty", empty.name)));
    }
    let rows = files
        .par_iter()
        .map(|file| {
            let compressed = methods
                .iter()
                .map(|&m| measure(file, m, block_size, dict))
                .collect::<Result<Vec<u64>>>()?;
            Ok(RunRow {
                name: file.name.clone(),
                original: file.data.len() as u64,
                compressed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorpusRun {
        methods: methods.to_vec(),
        rows,
    })
}

/// The main table plus one data series per chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub table: String,
    pub average_sizes: String,
    pub compressed_sizes: String,
    pub compression_ratios: String,
    pub average_ratios: String,
}

impl Report {
    /// Writes the table to `path` and each series next to it as
    /// `<stem>.<series>.csv`.
    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, &self.table)?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "report".into());
        let dir = path.parent().unwrap_or_else(|| Path::new(""));
        for (name, body) in self.series() {
            fs::write(dir.join(format!("{stem}.{name}.csv")), body)?;
        }
        Ok(())
    }

    pub fn series(&self) -> [(&'static str, &str); 4] {
        [
            ("average_sizes", &self.average_sizes),
            ("compressed_sizes", &self.compressed_sizes),
            ("compression_ratios", &self.compression_ratios),
            ("average_ratios", &self.average_ratios),
        ]
    }
}

fn to_csv(records: Vec<Vec<String>>) -> String {
    let mut writer = csv::WriterBuilder::new()
        .flexible(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for record in records {
        writer.write_record(&record).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("CSV is UTF-8")
}

/// Renders the run as CSV. Data rows carry integer sizes and two-decimal
/// ratios; the `Avg.` row carries size means to one decimal and ratio means
/// to three.
pub fn render_report(run: &CorpusRun) -> Report {
    let names: Vec<String> = run.methods.iter().map(|m| m.name().to_string()).collect();
    let averages = run.averages();

    let mut header = vec!["File".to_string(), "OriginalSize".to_string()];
    header.extend(names.iter().map(|n| format!("CompressedSize_{n}")));
    header.extend(names.iter().map(|n| format!("CR_{n}")));
    let mut table = vec![header];
    for (i, row) in run.rows.iter().enumerate() {
        let mut rec = vec![row.name.clone(), row.original.to_string()];
        rec.extend(row.compressed.iter().map(u64::to_string));
        rec.extend((0..run.methods.len()).map(|m| run.ratio(i, m).to_string()));
        table.push(rec);
    }
    if let Some(avg) = &averages {
        let mut rec = vec!["Avg.".to_string(), format!("{:.1}", avg.original)];
        rec.extend(avg.compressed.iter().map(|v| format!("{v:.1}")));
        rec.extend(avg.ratio.iter().map(|v| format!("{v:.3}")));
        table.push(rec);
    }

    let mut average_sizes = vec![vec!["Series".to_string(), "AverageSize".to_string()]];
    let mut average_ratios = vec![vec!["Method".to_string(), "AverageCR".to_string()]];
    if let Some(avg) = &averages {
        average_sizes.push(vec!["Original".to_string(), format!("{:.1}", avg.original)]);
        for (name, v) in names.iter().zip(&avg.compressed) {
            average_sizes.push(vec![name.clone(), format!("{v:.1}")]);
        }
        for (name, v) in names.iter().zip(&avg.ratio) {
            average_ratios.push(vec![name.clone(), format!("{v:.3}")]);
        }
    }

    let per_file_header: Vec<String> = std::iter::once("File".to_string())
        .chain(names.iter().cloned())
        .collect();
    let mut compressed_sizes = vec![per_file_header.clone()];
    let mut compression_ratios = vec![per_file_header];
    for (i, row) in run.rows.iter().enumerate() {
        let mut sizes = vec![row.name.clone()];
        sizes.extend(row.compressed.iter().map(u64::to_string));
        compressed_sizes.push(sizes);
        let mut ratios = vec![row.name.clone()];
        ratios.extend((0..run.methods.len()).map(|m| run.ratio(i, m).to_string()));
        compression_ratios.push(ratios);
    }

    Report {
        table: to_csv(table),
        average_sizes: to_csv(average_sizes),
        compressed_sizes: to_csv(compressed_sizes),
        compression_ratios: to_csv(compression_ratios),
        average_ratios: to_csv(average_ratios),
    }
}

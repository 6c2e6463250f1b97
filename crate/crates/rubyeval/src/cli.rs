//! The `rubyeval` command line.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rubyeval_core::harness::{compare_models, permute_preserving_bleu, score_corpus, CorpusPair, ScoringConfig};
use rubyeval_core::metrics::{
    bleu, ruby_with, BleuConfig, BrevityPenalty, RubyConfig, StsNorm, ZeroPolicy, DEFAULT_EXACT_LIMIT,
};
use rubyeval_core::minilang::{parse_source, tokenize, TokenizeMode};
use rubyeval_core::pdg::build_pdg;
use rubyeval_core::stats::{ransac_consensus, RansacConfig};
use thiserror::Error;

use crate::corpus::{load_corpus, write_corpus, CorpusError};
use crate::report::{read_records, write_records, write_summary, ReportError, SummaryJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rubyeval", version, about = "Score migrated code against reference code")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MetricOpts {
    /// Tokenization for BLEU and STS: lexical, whitespace or character.
    #[arg(long, default_value = "lexical")]
    pub mode: TokenizeMode,
    /// Highest n-gram order for BLEU.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=16))]
    pub max_n: u8,
    /// BLEU brevity penalty: ratio or exp.
    #[arg(long, default_value = "ratio")]
    pub bp: BrevityPenalty,
    /// Add-one smoothing of BLEU precisions.
    #[arg(long)]
    pub smooth: bool,
    /// STS normalization: max-length or reference-length.
    #[arg(long, default_value = "max-length")]
    pub norm: StsNorm,
    /// Longest Exas path counted by GRS.
    #[arg(long, default_value_t = 1)]
    pub max_path: usize,
    /// Largest tree pair scored with the exact edit distance.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    pub ted_limit: usize,
}

impl MetricOpts {
    pub fn scoring(&self) -> ScoringConfig {
        ScoringConfig {
            bleu: self.bleu(),
            ruby: RubyConfig {
                mode: self.mode,
                sts_norm: self.norm,
                max_path_length: self.max_path,
                ted_exact_limit: self.ted_limit,
            },
        }
    }

    fn bleu(&self) -> BleuConfig {
        BleuConfig {
            max_n: usize::from(self.max_n),
            brevity_penalty: self.bp,
            zero_policy: if self.smooth { ZeroPolicy::AddOne } else { ZeroPolicy::ScoreZero },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score one reference/candidate file pair.
    Score {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
        #[command(flatten)]
        opts: MetricOpts,
    },
    /// Score a JSON-lines corpus into a record CSV and a summary JSON.
    Corpus {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        summary: PathBuf,
        #[command(flatten)]
        opts: MetricOpts,
    },
    /// Paired t-test of one metric between two record CSVs.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value = "ruby")]
        metric: String,
    },
    /// Reorder each candidate without changing its BLEU.
    Permute {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "lexical")]
        mode: TokenizeMode,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// RANSAC consensus subset of (metric, semantic) points from a record CSV.
    Ransac {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "ruby")]
        metric: String,
    },
    /// Write the dependence graph of a method as Graphviz DOT.
    PdgDump {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn corpus_err(path: &Path, e: CorpusError) -> CliError {
    match e {
        CorpusError::Io(source) => CliError::Io { path: path.to_path_buf(), source },
        CorpusError::Empty { rejected } => {
            let mut msg = format!("{}: corpus has no valid pairs", path.display());
            for r in rejected {
                msg.push_str(&format!("\n  {r}"));
            }
            CliError::Invalid(msg)
        }
        other => CliError::Invalid(format!("{}: {other}", path.display())),
    }
}

fn report_err(path: &Path, e: ReportError) -> CliError {
    match e {
        ReportError::Io(source) => CliError::Io { path: path.to_path_buf(), source },
        other => CliError::Invalid(format!("{}: {other}", path.display())),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"))
}

fn score(reference: &Path, candidate: &Path, opts: &MetricOpts, out: &mut dyn Write) -> Result<i32, CliError> {
    let (r, c) = (read_text(reference)?, read_text(candidate)?);
    let cfg = opts.scoring();
    let outcome =
        ruby_with(&r, &c, &cfg.ruby).map_err(|e| CliError::Invalid(format!("{}: {e}", reference.display())))?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err(Path::new("<stdout>")));
    for mode in [TokenizeMode::Lexical, TokenizeMode::Whitespace] {
        let b = bleu(&tokenize(&r, mode), &tokenize(&c, mode), &cfg.bleu);
        w(out, format!("bleu[{}]\t{:.6}", mode.as_str(), b.value))?;
    }
    if cfg.mode() == TokenizeMode::Character {
        let b = bleu(&tokenize(&r, cfg.mode()), &tokenize(&c, cfg.mode()), &cfg.bleu);
        w(out, format!("bleu[character]\t{:.6}", b.value))?;
    }
    w(out, format!("sts\t{:.6}\t(distance {})", outcome.sts.value, outcome.sts.distance))?;
    let trs = outcome.trs.map(|t| {
        let tag = if t.approximate { " approximate" } else { "" };
        format!("trs\t{:.6}\t(distance {}{tag})", t.value, t.distance)
    });
    w(out, trs.unwrap_or_else(|| "trs\t-".to_string()))?;
    w(out, format!("grs\t{}", opt(outcome.grs)))?;
    w(out, format!("ruby\t{:.6}\t{}", outcome.ruby, outcome.level))?;
    Ok(EXIT_OK)
}

fn corpus(input: &Path, out: &Path, summary: &Path, opts: &MetricOpts, err: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = load_corpus(input).map_err(|e| corpus_err(input, e))?;
    let report = score_corpus(&loaded.pairs, &opts.scoring());
    let mut w = create(out)?;
    write_records(&report.records, &mut w).map_err(|e| report_err(out, e))?;
    let mut s = create(summary)?;
    write_summary(&SummaryJson::from_report(&report), &mut s).map_err(|e| report_err(summary, e))?;
    for f in &report.failures {
        let _ = writeln!(err, "pair {} (`{}`) not scored: {}", f.index + 1, f.id, f.error);
    }
    if loaded.rejected.is_empty() {
        return Ok(EXIT_OK);
    }
    for r in &loaded.rejected {
        let _ = writeln!(err, "{}: {r}", input.display());
    }
    Ok(EXIT_INVALID)
}

fn read_report(path: &Path) -> Result<Vec<rubyeval_core::metrics::ScoreRecord>, CliError> {
    let f = File::open(path).map_err(io_err(path))?;
    read_records(f).map_err(|e| report_err(path, e))
}

fn compare(a: &Path, b: &Path, metric: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    if !rubyeval_core::metrics::METRIC_NAMES.contains(&metric) {
        return Err(CliError::Usage(format!("unknown metric `{metric}`")));
    }
    let (ra, rb) = (read_report(a)?, read_report(b)?);
    let c = compare_models(&ra, &rb, metric).map_err(|e| CliError::Invalid(e.to_string()))?;
    let t = &c.test;
    let text = format!(
        "metric\t{}\nn\t{}\nmean_a\t{:.6}\nmean_b\t{:.6}\nmean_diff\t{:.6}\nt\t{:.6}\ndf\t{}\np_two_sided\t{:e}\nci95_half_width\t{:.6}\n",
        c.metric, c.n, c.mean_a, c.mean_b, t.mean_diff, t.t, t.df, t.p_two_sided, t.ci95_half_width
    );
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))?;
    if t.degenerate {
        let _ = writeln!(out, "note\tdifferences have zero variance");
    }
    Ok(EXIT_OK)
}

fn permute(
    input: &Path,
    out: &Path,
    seed: u64,
    mode: TokenizeMode,
    max_n: usize,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let loaded = load_corpus(input).map_err(|e| corpus_err(input, e))?;
    let cfg = BleuConfig::with_max_n(max_n);
    let mut permuted = 0;
    let pairs: Vec<CorpusPair> = loaded
        .pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let result = permute_preserving_bleu(
                &tokenize(&p.reference, mode),
                &tokenize(&p.candidate, mode),
                &cfg,
                seed.wrapping_add(i as u64),
            );
            permuted += usize::from(result.permuted);
            CorpusPair { candidate: result.tokens.joined(), semantic_raw: None, ..p.clone() }
        })
        .collect();
    let mut w = create(out)?;
    write_corpus(&pairs, &mut w).map_err(io_err(out))?;
    let _ = writeln!(err, "permuted {permuted} of {} candidates", pairs.len());
    for r in &loaded.rejected {
        let _ = writeln!(err, "{}: {r}", input.display());
    }
    Ok(if loaded.rejected.is_empty() { EXIT_OK } else { EXIT_INVALID })
}

fn ransac(input: &Path, cfg: &RansacConfig, seed: u64, metric: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    if !rubyeval_core::metrics::METRIC_NAMES.contains(&metric) || metric == "semantic" {
        return Err(CliError::Usage(format!("unknown metric `{metric}`")));
    }
    let records = read_report(input)?;
    let (ids, points): (Vec<&str>, Vec<(f64, f64)>) =
        records.iter().filter_map(|r| Some((r.id.as_str(), (r.metric(metric)?, r.semantic?)))).unzip();
    let result =
        ransac_consensus(&points, cfg, seed).map_err(|e| CliError::Invalid(format!("{}: {e}", input.display())))?;
    let mut text = String::from("run\tsize\tcorrelation\n");
    for (i, r) in result.runs.iter().enumerate() {
        let mark = if i == result.selected_run { "\t*" } else { "" };
        text.push_str(&format!("{}\t{}\t{:.6}{mark}\n", i + 1, r.size, r.correlation));
    }
    text.push_str(&format!(
        "selected\trun {} of {}\nsize\t{} of {}\ncorrelation\t{:.6}\nline\ty = {:.6} x + {:.6}\ninliers\t{}\n",
        result.selected_run + 1,
        result.runs.len(),
        result.inliers.len(),
        points.len(),
        result.subset_correlation,
        result.line.slope,
        result.line.intercept,
        result.inliers.iter().map(|&i| ids[i]).collect::<Vec<_>>().join(",")
    ));
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))?;
    Ok(EXIT_OK)
}

fn pdg_dump(file: &Path, out: &Path) -> Result<i32, CliError> {
    let src = read_text(file)?;
    let parsed = parse_source(&src);
    let Some(tree) = parsed.tree else {
        let d = parsed.diagnostics.first().map(|d| d.to_string()).unwrap_or_default();
        return Err(CliError::Invalid(format!("{}: does not parse: {d}", file.display())));
    };
    let g = build_pdg(&tree).map_err(|e| CliError::Invalid(format!("{}: {e}", file.display())))?;
    let mut w = create(out)?;
    w.write_all(g.to_dot().as_bytes()).and_then(|()| w.flush()).map_err(io_err(out))?;
    Ok(EXIT_OK)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Score { reference, candidate, opts } => score(reference, candidate, opts, out),
        Command::Corpus { input, out: csv, summary, opts } => corpus(input, csv, summary, opts, err),
        Command::Compare { a, b, metric } => compare(a, b, metric, out),
        Command::Permute { input, out: dest, seed, mode, max_n } => permute(input, dest, *seed, *mode, *max_n, err),
        Command::Ransac { input, runs, epsilon, iterations, seed, metric } => {
            if *runs == 0 || epsilon.is_nan() || *epsilon <= 0.0 {
                Err(CliError::Usage("--runs must be at least 1 and --epsilon positive".into()))
            } else {
                let cfg = RansacConfig { iterations: *iterations, epsilon: *epsilon, runs: *runs };
                ransac(input, &cfg, *seed, metric, out)
            }
        }
        Command::PdgDump { file, out: dest } => pdg_dump(file, dest),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

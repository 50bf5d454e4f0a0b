use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use segtext::core::{clean, make_config_in, DocType, LanguageRegistry, Segmenter, SegmenterConfig};
use segtext::{
    bench_with, embedded_fixture, load_grs, naive_segment, registry_with_dirs, run_grs_with, synthetic_corpus, Error,
    ErrorKind, GrsReport,
};

#[derive(Parser)]
#[command(name = "segtext", version, about = "Rule-based sentence segmentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct LangArgs {
    /// Language code; falls back to $SEGTEXT_LANG, then "en".
    #[arg(long, env = "SEGTEXT_LANG", default_value = "en")]
    lang: String,
    /// Extra profile directory to register (repeatable).
    #[arg(long = "profile-dir", value_name = "DIR")]
    profile_dirs: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DocTypeArg {
    Plain,
    Pdf,
}

impl DocTypeArg {
    fn name(self) -> &'static str {
        match self {
            DocTypeArg::Plain => "plain",
            DocTypeArg::Pdf => "pdf",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LineFormat {
    Lines,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Split text into sentences.
    Segment {
        #[command(flatten)]
        lang: LangArgs,
        /// Report char offsets into the input.
        #[arg(long)]
        char_span: bool,
        /// Clean the text first (cannot be combined with --char-span).
        #[arg(long)]
        clean: bool,
        #[arg(long, value_enum, default_value = "plain")]
        doc_type: DocTypeArg,
        #[arg(long, value_enum, default_value = "lines")]
        format: LineFormat,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Read this file instead of standard input.
        input: Option<PathBuf>,
    },
    /// Print the cleaned text.
    Clean {
        #[arg(long, value_enum, default_value = "plain")]
        doc_type: DocTypeArg,
        /// Also print rule counts to standard error.
        #[arg(long)]
        report: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Score a golden-rule fixture.
    Grs {
        #[command(flatten)]
        lang: LangArgs,
        /// Fixture file; defaults to the one shipped for --lang.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long, default_value_t = 0.9)]
        min_accuracy: f64,
        /// Also score the naive punctuation splitter.
        #[arg(long)]
        baseline: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: ReportFormat,
    },
    /// Time segmentation of a file (or of generated text).
    Bench {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Size of the generated text when no --file is given.
        #[arg(long, default_value_t = 100_000)]
        words: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: ReportFormat,
    },
}

/// A failure with its exit code: 1 for runtime and I/O, 2 for usage and
/// configuration.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e.kind() {
            None | Some(ErrorKind::ReservedCodepointInInput) => 1,
            Some(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<segtext::SegmenterError> for Failure {
    fn from(e: segtext::SegmenterError) -> Failure {
        Error::from(e).into()
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    // a closed pipe (`segtext ... | head`) is not an error
    if e.kind() == io::ErrorKind::BrokenPipe {
        return Failure {
            code: 0,
            message: String::new(),
        };
    }
    Error::Io {
        path: path.to_path_buf(),
        source: e,
    }
    .into()
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| io_failure(p, e)),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| io_failure(Path::new("<stdin>"), e))?;
            Ok(s)
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(std::fs::File::create(p).map_err(|e| io_failure(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn registry(lang: &LangArgs) -> Result<LanguageRegistry, Failure> {
    Ok(registry_with_dirs(&lang.profile_dirs)?)
}

fn config(
    reg: &LanguageRegistry,
    lang: &LangArgs,
    clean: bool,
    span: bool,
    doc: DocTypeArg,
) -> Result<SegmenterConfig, Failure> {
    Ok(make_config_in(reg, &lang.lang, clean, span, doc.name())?)
}

#[derive(Serialize)]
struct SpanRecord<'a> {
    text: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    end: Option<usize>,
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Segment {
            lang,
            char_span,
            clean,
            doc_type,
            format,
            output,
            input,
        } => {
            let reg = registry(&lang)?;
            let cfg = config(&reg, &lang, clean, char_span, doc_type)?;
            let seg = Segmenter::new_in(&reg, cfg)?;
            let text = read_input(input.as_deref())?;
            let out_path = output.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
            let mut out = open_output(output.as_deref())?;
            let write =
                |out: &mut Box<dyn Write>, line: &str| writeln!(out, "{line}").map_err(|e| io_failure(&out_path, e));
            if char_span {
                for s in seg.segment_spans(&text)? {
                    let line = match format {
                        LineFormat::Lines => format!("{}\t{}\t{}", s.start, s.end, s.sent),
                        LineFormat::Jsonl => json_line(&SpanRecord {
                            text: &s.sent,
                            start: Some(s.start),
                            end: Some(s.end),
                        }),
                    };
                    write(&mut out, &line)?;
                }
            } else {
                for s in seg.segment(&text)? {
                    let line = match format {
                        LineFormat::Lines => s.replace('\n', " "),
                        LineFormat::Jsonl => json_line(&SpanRecord {
                            text: &s,
                            start: None,
                            end: None,
                        }),
                    };
                    write(&mut out, &line)?;
                }
            }
            out.flush().map_err(|e| io_failure(&out_path, e))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Clean {
            doc_type,
            report,
            output,
            input,
        } => {
            let text = read_input(input.as_deref())?;
            let doc: DocType = doc_type.name().parse()?;
            let r = clean(&text, doc);
            let out_path = output.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
            let mut out = open_output(output.as_deref())?;
            out.write_all(r.output.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| io_failure(&out_path, e))?;
            if report {
                for (id, n) in &r.actions {
                    eprintln!("{id}\t{n}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Grs {
            lang,
            fixture,
            min_accuracy,
            baseline,
            format,
        } => {
            let reg = registry(&lang)?;
            let cfg = config(&reg, &lang, false, false, DocTypeArg::Plain)?;
            let seg = Segmenter::new_in(&reg, cfg)?;
            let rules = match &fixture {
                Some(p) => load_grs(p)?,
                None => embedded_fixture(&lang.lang.to_ascii_lowercase()).ok_or_else(|| Failure {
                    code: 2,
                    message: format!("no fixture shipped for '{}'; pass --fixture", lang.lang),
                })?,
            };
            let pipeline = run_grs_with(&rules, |t| seg.segment(t));
            let mut reports = vec![("pipeline", &pipeline)];
            let naive = baseline.then(|| run_grs_with(&rules, |t| Ok(naive_segment(t))));
            if let Some(n) = &naive {
                reports.push(("baseline", n));
            }
            let stdout = io::stdout();
            let mut out = stdout.lock();
            print_grs(&mut out, &reports, format).map_err(|e| io_failure(Path::new("<stdout>"), e))?;
            Ok(if pipeline.accuracy() >= min_accuracy {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bench {
            lang,
            reps,
            file,
            words,
            format,
        } => {
            let reg = registry(&lang)?;
            let cfg = config(&reg, &lang, false, false, DocTypeArg::Plain)?;
            let seg = Segmenter::new_in(&reg, cfg)?;
            let text = match &file {
                Some(p) => std::fs::read_to_string(p).map_err(|e| io_failure(p, e))?,
                None => synthetic_corpus(words),
            };
            let r = bench_with(&text, reps as usize, |t| seg.segment(t))?;
            let mut out = io::stdout().lock();
            let written = match format {
                ReportFormat::Json => writeln!(out, "{}", json_line(&r)),
                ReportFormat::Table => writeln!(
                    out,
                    "wall_time_ms\t{:.3}\nsentences\t{}\nchars\t{}\nthroughput\t{:.0} chars/s\nrepetitions\t{}",
                    r.wall_time_ms, r.sentences, r.chars, r.throughput, r.repetitions
                ),
            };
            written.map_err(|e| io_failure(Path::new("<stdout>"), e))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain records serialize")
}

#[derive(Serialize)]
struct GrsSummary<'a> {
    scorer: &'a str,
    passed: usize,
    total: usize,
    accuracy: f64,
    failures: &'a [segtext::GrsFailure],
}

fn print_grs(out: &mut impl Write, reports: &[(&str, &GrsReport)], format: ReportFormat) -> io::Result<()> {
    match format {
        ReportFormat::Json => {
            for (name, r) in reports {
                let s = GrsSummary {
                    scorer: name,
                    passed: r.passed,
                    total: r.total,
                    accuracy: r.accuracy(),
                    failures: &r.failures,
                };
                writeln!(out, "{}", json_line(&s))?;
            }
        }
        ReportFormat::Table => {
            for (name, r) in reports {
                for f in &r.failures {
                    writeln!(out, "FAIL\t{name}\t{}\t{}", f.id, f.description)?;
                    match &f.got {
                        Ok(got) => writeln!(out, "\tgot      {got:?}")?,
                        Err(e) => writeln!(out, "\terror    {e}")?,
                    }
                    writeln!(out, "\texpected {:?}", f.expected)?;
                }
            }
            for (name, r) in reports {
                writeln!(out, "{name}\t{}/{}\t{}%", r.passed, r.total, r.percent())?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("segtext: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

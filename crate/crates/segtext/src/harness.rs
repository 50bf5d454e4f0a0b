//! Scoring against golden rules and gold corpora, the naive baseline, and
//! timing.

use std::time::{Duration, Instant};

use segtext_core::{ErrorKind, Segmenter, SegmenterConfig, SegmenterError};
use serde::Serialize;

use crate::fixtures::GoldenRule;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrsFailure {
    pub id: u32,
    pub description: String,
    /// Sentences produced, or the error message when segmentation failed.
    pub got: Result<Vec<String>, String>,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrsReport {
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<GrsFailure>,
}

impl GrsReport {
    /// passed / total; an empty fixture scores 1.
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.passed as f64 / self.total as f64
        }
    }

    /// Accuracy as a percentage with two decimals, e.g. "97.92".
    pub fn percent(&self) -> String {
        format!("{:.2}", self.accuracy() * 100.0)
    }
}

fn same_sentences(got: &[String], expected: &[String]) -> bool {
    got.len() == expected.len() && got.iter().zip(expected).all(|(g, e)| g.trim() == e.trim())
}

/// Scores each rule with `segment`; errors count as failures.
pub fn run_grs_with<F>(rules: &[GoldenRule], segment: F) -> GrsReport
where
    F: Fn(&str) -> Result<Vec<String>, SegmenterError>,
{
    let mut report = GrsReport {
        total: rules.len(),
        passed: 0,
        failures: Vec::new(),
    };
    for rule in rules {
        let got = segment(&rule.input).map_err(|e| e.to_string());
        match &got {
            Ok(s) if same_sentences(s, &rule.expected) => report.passed += 1,
            _ => report.failures.push(GrsFailure {
                id: rule.id,
                description: rule.description.clone(),
                got,
                expected: rule.expected.clone(),
            }),
        }
    }
    report
}

/// Scores the shipped segmenter for `config`.
pub fn run_grs(config: &SegmenterConfig, rules: &[GoldenRule]) -> GrsReport {
    match Segmenter::new(*config) {
        Ok(seg) => run_grs_with(rules, |t| seg.segment(t)),
        Err(e) => run_grs_with(rules, |_| Err(e.clone())),
    }
}

/// The control: split after `? ! : ; .` when whitespace or the end follows.
pub fn naive_segment(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..chars.len() {
        let boundary =
            matches!(chars[i], '?' | '!' | ':' | ';' | '.') && chars.get(i + 1).is_none_or(|c| c.is_whitespace());
        if boundary {
            push_trimmed(&mut out, &chars[start..=i]);
            start = i + 1;
        }
    }
    push_trimmed(&mut out, &chars[start..]);
    out
}

fn push_trimmed(out: &mut Vec<String>, piece: &[char]) {
    let s: String = piece.iter().collect();
    let s = s.trim();
    if !s.is_empty() {
        out.push(s.to_string());
    }
}

/// Joins consecutive gold sentences `group_size` at a time with single
/// spaces, segments each group, and returns the share of gold sentences
/// that come back exactly. Matching is by multiset within a group. An empty
/// gold list scores 1.
pub fn eval_corpus_with<F>(gold: &[String], group_size: usize, segment: F) -> Result<f64, SegmenterError>
where
    F: Fn(&str) -> Result<Vec<String>, SegmenterError>,
{
    if group_size == 0 {
        return Err(SegmenterError::new(
            ErrorKind::InvalidOption,
            "group_size must be at least 1",
        ));
    }
    if gold.is_empty() {
        return Ok(1.0);
    }
    let mut recovered = 0;
    for group in gold.chunks(group_size) {
        let joined = group.iter().map(|s| s.trim()).collect::<Vec<_>>().join(" ");
        let mut got = segment(&joined)?;
        for g in group {
            if let Some(i) = got.iter().position(|s| s == g.trim()) {
                got.swap_remove(i);
                recovered += 1;
            }
        }
    }
    Ok(recovered as f64 / gold.len() as f64)
}

pub fn eval_corpus(config: &SegmenterConfig, gold: &[String], group_size: usize) -> Result<f64, SegmenterError> {
    let seg = Segmenter::new(*config)?;
    eval_corpus_with(gold, group_size, |t| seg.segment(t))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    /// Median over the repetitions.
    pub wall_time_ms: f64,
    pub sentences: usize,
    pub chars: usize,
    /// chars per second at the median time.
    pub throughput: f64,
    pub repetitions: usize,
}

/// Times `segment` on `text`; construction of the segmenter is not timed.
pub fn bench_with<F>(text: &str, repetitions: usize, segment: F) -> Result<BenchReport, SegmenterError>
where
    F: Fn(&str) -> Result<Vec<String>, SegmenterError>,
{
    if repetitions == 0 {
        return Err(SegmenterError::new(
            ErrorKind::InvalidOption,
            "repetitions must be at least 1",
        ));
    }
    let mut times = Vec::with_capacity(repetitions);
    let mut sentences = 0;
    for _ in 0..repetitions {
        let t0 = Instant::now();
        sentences = segment(text)?.len();
        times.push(t0.elapsed());
    }
    times.sort();
    let median: Duration = if repetitions % 2 == 1 {
        times[repetitions / 2]
    } else {
        (times[repetitions / 2 - 1] + times[repetitions / 2]) / 2
    };
    let chars = text.chars().count();
    let mut ms = median.as_secs_f64() * 1000.0;
    if chars > 0 && ms <= 0.0 {
        ms = f64::MIN_POSITIVE;
    }
    Ok(BenchReport {
        wall_time_ms: ms,
        sentences,
        chars,
        throughput: if ms > 0.0 { chars as f64 / (ms / 1000.0) } else { 0.0 },
        repetitions,
    })
}

pub fn bench(config: &SegmenterConfig, text: &str, repetitions: usize) -> Result<BenchReport, SegmenterError> {
    let seg = Segmenter::new(*config)?;
    bench_with(text, repetitions, |t| seg.segment(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use segtext_core::make_config;

    fn en() -> SegmenterConfig {
        make_config("en", false, false, "").unwrap()
    }

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn naive_examples() {
        assert_eq!(naive_segment("Hi. Bye."), ["Hi.", "Bye."]);
        assert_eq!(naive_segment("Mr. Smith left."), ["Mr.", "Smith left."]);
        assert_eq!(naive_segment("a:b"), ["a:b"]);
        assert!(naive_segment("  ").is_empty());
    }

    #[test]
    fn trivial_grs() {
        let rules = vec![GoldenRule {
            id: 1,
            description: "simple".into(),
            input: "Hi. Bye.".into(),
            expected: strings(&["Hi.", "Bye."]),
        }];
        let r = run_grs(&en(), &rules);
        assert_eq!(r.accuracy(), 1.0);
        let doubled: Vec<_> = rules.iter().chain(&rules).cloned().collect();
        assert_eq!(run_grs(&en(), &doubled).accuracy(), r.accuracy());

        let mut swapped = rules.clone();
        swapped[0].expected.reverse();
        assert_eq!(run_grs(&en(), &swapped).passed, 0);
    }

    #[test]
    fn eval_corpus_examples() {
        let gold = strings(&["It rained.", "We stayed in."]);
        assert_eq!(eval_corpus(&en(), &gold, 2).unwrap(), 1.0);
        assert_eq!(eval_corpus(&en(), &gold, 1).unwrap(), 1.0);

        // no terminal on the first: both merge and neither comes back
        let gold = strings(&["It rained", "we stayed in.", "Then it stopped.", "Good."]);
        assert_eq!(eval_corpus(&en(), &gold, 4).unwrap(), 0.5);
        assert_eq!(eval_corpus(&en(), &gold, 0).unwrap_err().kind, ErrorKind::InvalidOption);
    }

    #[test]
    fn bench_counts() {
        let r = bench(&en(), "Hi. Bye.", 3).unwrap();
        assert_eq!((r.sentences, r.chars, r.repetitions), (2, 8, 3));
        assert!(r.wall_time_ms > 0.0);
        let r = bench(&en(), "", 1).unwrap();
        assert_eq!(r.sentences, 0);
        assert!(bench(&en(), "x", 0).is_err());
    }
}

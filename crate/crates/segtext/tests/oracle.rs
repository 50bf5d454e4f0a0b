//! Cases whose expected output was produced by an independent reference
//! segmenter and frozen into tests/data.

use serde::Deserialize;

use segtext::core::Segmenter;

#[derive(Deserialize)]
struct Case {
    input: String,
    expected: Vec<String>,
}

#[test]
fn matches_reference_segmenter() {
    let src = include_str!("data/oracle_en.jsonl");
    let seg = Segmenter::for_language("en").unwrap();
    let mut failures = Vec::new();
    let mut total = 0;
    for line in src.lines().filter(|l| !l.trim().is_empty()) {
        let case: Case = serde_json::from_str(line).unwrap();
        total += 1;
        let got = seg.segment(&case.input).unwrap();
        if got != case.expected {
            failures.push(format!(
                "{:?}\n  got      {:?}\n  expected {:?}",
                case.input, got, case.expected
            ));
        }
    }
    assert!(total >= 300, "{total}");
    assert!(
        failures.is_empty(),
        "{} of {total} differ:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

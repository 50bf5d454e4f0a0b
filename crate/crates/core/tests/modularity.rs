use std::sync::Arc;

use segtext_core::{make_config_in, LanguageProfile, LanguageRegistry, ProfileSource, Segmenter};

const PIPELINE_SOURCES: &[&str] = &[
    "src/cleaner.rs",
    "src/config.rs",
    "src/pattern.rs",
    "src/placeholder.rs",
    "src/processor.rs",
    "src/rules.rs",
    "src/special/mod.rs",
    "src/special/abbreviations.rs",
    "src/special/exclamations.rs",
    "src/special/lists.rs",
    "src/special/pairs.rs",
    "src/languages/mod.rs",
    "src/languages/profile.rs",
];

// everything before the unit tests, without comment lines
fn code_part(src: &str) -> String {
    let body = src.split("#[cfg(test)]").next().unwrap();
    body.lines()
        .filter(|l| !l.trim_start().starts_with("//"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn pipeline_has_no_language_branches() {
    let root = env!("CARGO_MANIFEST_DIR");
    let codes = LanguageRegistry::with_builtin().unwrap().codes();
    assert!(codes.len() >= 5);
    for file in PIPELINE_SOURCES {
        let src = std::fs::read_to_string(format!("{root}/{file}")).unwrap();
        let code = code_part(&src);
        for c in &codes {
            let lit = format!("\"{}\"", c.as_str());
            assert!(!code.contains(&lit), "{file} mentions {lit}");
        }
    }
}

fn greek() -> LanguageProfile {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/el");
    let read = |f: &str| std::fs::read_to_string(format!("{dir}/{f}")).unwrap_or_default();
    let (profile, abbreviations, rules) = (read("profile.txt"), read("abbreviations.txt"), read("rules.tsv"));
    LanguageProfile::from_sources(&ProfileSource {
        profile: &profile,
        abbreviations: &abbreviations,
        rules: &rules,
        exclamations: "",
    })
    .unwrap()
}

#[test]
fn data_only_language() {
    let mut reg = LanguageRegistry::with_builtin().unwrap();
    assert!(reg.lookup("el").is_err());
    assert!(reg.register(greek()).is_none());
    let cfg = make_config_in(&reg, "el", false, false, "plain").unwrap();
    let seg = Segmenter::new_in(&reg, cfg).unwrap();
    assert_eq!(
        seg.segment("Τι κάνεις; Είμαι καλά. Ο κ. Παπαδόπουλος ήρθε.").unwrap(),
        ["Τι κάνεις;", "Είμαι καλά.", "Ο κ. Παπαδόπουλος ήρθε."]
    );
    assert_eq!(
        seg.segment("Φρούτα, π.χ. μήλα. Τέλος!").unwrap(),
        ["Φρούτα, π.χ. μήλα.", "Τέλος!"]
    );
    // the Greek question mark is a terminal here and nowhere else
    let en = Segmenter::for_language("en").unwrap();
    assert_eq!(en.segment("Τι κάνεις; Είμαι καλά.").unwrap().len(), 1);
}

#[test]
fn profile_shared_across_threads() {
    let seg = Arc::new(Segmenter::with_profile(Arc::new(greek())));
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let s = Arc::clone(&seg);
            std::thread::spawn(move || s.segment("Ναι. Όχι;").unwrap())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), ["Ναι.", "Όχι;"]);
    }
}

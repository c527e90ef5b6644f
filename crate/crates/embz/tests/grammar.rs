//! Golden-corpus test for the text grammar: every production appears at
//! least once in `data/grammar_corpus.txt`, each with either its canonical
//! form or an expected error fragment.

use embz::parse::{parse_element, parse_morphism, parse_register, parse_scalar, parse_word};

const CORPUS: &str = include_str!("data/grammar_corpus.txt");

/// Parse and canonically print one input of the given kind.
fn canonicalize(kind: &str, input: &str) -> Result<String, String> {
    match kind {
        "scalar" => parse_scalar(input)
            .map(|v| v.to_string())
            .map_err(|e| e.to_string()),
        "element" => parse_element(input)
            .map(|v| v.to_string())
            .map_err(|e| e.to_string()),
        "word" => parse_word(input)
            .map(|v| v.to_string())
            .map_err(|e| e.to_string()),
        "register" => parse_register(input)
            .map(|v| v.to_string())
            .map_err(|e| e.to_string()),
        "morphism" => parse_morphism(input)
            .map(|v| v.to_string())
            .map_err(|e| e.to_string()),
        other => panic!("corpus names unknown kind {other:?}"),
    }
}

#[test]
fn corpus_cases_hold() {
    let mut cases = 0;
    for (number, line) in CORPUS.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.splitn(4, '|').map(str::trim).collect();
        let [kind, input, expectation, detail] = fields[..] else {
            panic!("line {}: expected 4 '|'-separated fields", number + 1);
        };
        cases += 1;
        match expectation {
            "ok" => {
                let canonical = canonicalize(kind, input).unwrap_or_else(|e| {
                    panic!("line {}: {kind} {input:?} failed to parse: {e}", number + 1)
                });
                assert_eq!(
                    canonical,
                    detail,
                    "line {}: {kind} {input:?} canonicalized differently",
                    number + 1
                );
                // canonical text is a fixed point of parse-then-print
                let again = canonicalize(kind, &canonical).unwrap_or_else(|e| {
                    panic!(
                        "line {}: canonical {canonical:?} failed to re-parse: {e}",
                        number + 1
                    )
                });
                assert_eq!(
                    again,
                    canonical,
                    "line {}: canonical form not a fixed point",
                    number + 1
                );
            }
            "err" => {
                let error = match canonicalize(kind, input) {
                    Err(e) => e,
                    Ok(v) => panic!(
                        "line {}: {kind} {input:?} parsed to {v:?}, expected an error",
                        number + 1
                    ),
                };
                assert!(
                    error.contains(detail),
                    "line {}: error {error:?} does not mention {detail:?}",
                    number + 1
                );
            }
            other => panic!("line {}: unknown expectation {other:?}", number + 1),
        }
    }
    // the corpus is not allowed to silently shrink
    assert!(cases >= 80, "only {cases} corpus cases ran");
}

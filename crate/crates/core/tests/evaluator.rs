use std::collections::BTreeMap;

use newsroom::corpus::Dataset;
use newsroom::evaluator::{
    average_of_cells, compare_methods, evaluate_articles, improvement_pct, render_markdown, EvalDoc, EvalError,
    MethodResult, SignificanceOptions,
};
use newsroom::text_metrics::Lexicon;

const HARD: &str = "Allosteric regulation enables enzymatic modulation through conformational heterogeneity. \
    Crystallographic characterisation demonstrated cryptic hydrophobic channels.";
const EASY: &str = "The cat sat on the mat. It was a warm day. The dog ran to the park and back.";

fn docs(text: &str, n: usize) -> Vec<EvalDoc> {
    (0..n)
        .map(|i| EvalDoc {
            id: format!("d{i}"),
            dataset: if i % 2 == 0 { Dataset::SciTech } else { Dataset::ELife },
            text: format!("{text} Item {i} is here."),
        })
        .collect()
}

#[test]
fn published_style_cells() {
    let cells: BTreeMap<Dataset, [f64; 3]> =
        BTreeMap::from([(Dataset::SciTech, [12.0, 10.0, 9.0]), (Dataset::Plos, [11.0, 10.0, 8.0])]);
    assert!((average_of_cells(&cells).unwrap() - 10.0).abs() < 1e-12);
    assert_eq!(average_of_cells(&BTreeMap::new()), Err(EvalError::EmptyInput));
}

#[test]
fn improvement_edge_cases() {
    assert_eq!(improvement_pct(10.0, 10.0).unwrap(), 0.0);
    assert!(improvement_pct(10.0, 12.0).unwrap() < 0.0);
    assert!(matches!(improvement_pct(0.0, 1.0), Err(EvalError::NonPositiveAverage(_))));
    assert!(matches!(improvement_pct(-3.0, 1.0), Err(EvalError::NonPositiveAverage(_))));
}

#[test]
fn easier_method_wins_significantly() {
    let lex = Lexicon::dale_chall();
    let hard = evaluate_articles("hard", &docs(HARD, 20), &lex).unwrap();
    let easy = evaluate_articles("easy", &docs(EASY, 20), &lex).unwrap();
    assert!(easy.avg < hard.avg);
    let opts = SignificanceOptions { resamples: 2000, ..Default::default() };
    let report = compare_methods(vec![hard, easy], "easy", &opts).unwrap();
    assert!(report.methods[0].impr_vs_reference.unwrap() > 0.0);
    assert!(report.significance.iter().all(|s| s.p_value < 0.01));
    let md = render_markdown(&report);
    assert!(md.contains("††"));
    let json = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<newsroom::evaluator::Report>(&json).unwrap(), report);
}

#[test]
fn reference_against_itself_has_p_one() {
    let lex = Lexicon::dale_chall();
    let a = evaluate_articles("a", &docs(EASY, 6), &lex).unwrap();
    let mut b = a.clone();
    b.method_name = "b".into();
    let report = compare_methods(vec![a, b], "a", &SignificanceOptions::default()).unwrap();
    assert!(report.significance.iter().all(|s| s.p_value == 1.0));
}

#[test]
fn misaligned_documents_are_rejected() {
    let lex = Lexicon::dale_chall();
    let a = evaluate_articles("a", &docs(EASY, 4), &lex).unwrap();
    let mut other = docs(EASY, 4);
    other[0].id = "zz".into();
    let b = evaluate_articles("b", &other, &lex).unwrap();
    assert!(matches!(
        compare_methods(vec![a, b], "a", &SignificanceOptions::default()),
        Err(EvalError::Misaligned { .. })
    ));
}

#[test]
fn unknown_reference() {
    let m = MethodResult::from_cells("x", vec![], BTreeMap::from([(Dataset::ELife, [1.0, 2.0, 3.0])])).unwrap();
    assert!(matches!(
        compare_methods(vec![m], "y", &SignificanceOptions::default()),
        Err(EvalError::UnknownReference(_))
    ));
}

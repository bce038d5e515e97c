use std::collections::BTreeMap;

use cospectral::survey::catalog::{canonical_set, ingest_lines};
use cospectral::survey::{
    constructed_set, generate_cubic, CatalogAnalysis, CatalogSource, Semantics, Sources, Survey, SurveyOptions,
    SurveyReport,
};
use cospectral::{Error, Graph};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn counts(r: &SurveyReport) -> [usize; 6] {
    [
        r.total(),
        r.rep_edge_self(),
        r.rep_vertex_self(),
        r.nus3(),
        r.rep_edge_mate(),
        r.rep_vertex_mate(),
    ]
}

#[test]
fn census_ignores_input_order_and_labels() {
    let catalog = generate_cubic(12).unwrap();
    let mut rng = StdRng::seed_from_u64(3);
    let mut lines: Vec<String> = catalog
        .graphs()
        .iter()
        .map(|g| {
            let mut perm: Vec<usize> = (0..12).collect();
            perm.shuffle(&mut rng);
            g.permute(&perm).to_graph6().unwrap()
        })
        .collect();
    lines.shuffle(&mut rng);
    let shuffled = ingest_lines(&lines.join("\n"), 12, CatalogSource::Generated).unwrap();
    assert_eq!(canonical_set(&shuffled), canonical_set(&catalog));

    let opts = SurveyOptions::default();
    let a = SurveyReport::build(&CatalogAnalysis::new(catalog), opts, None);
    let b = SurveyReport::build(&CatalogAnalysis::new(shuffled), opts, None);
    assert_eq!(counts(&a), counts(&b));
    assert_eq!(a, b);
}

#[test]
fn symmetry_reduction_does_not_change_results() {
    let options = |reduce| SurveyOptions {
        symmetry_reduction: reduce,
        ..SurveyOptions::default()
    };
    let mut on = Survey::new(Sources::default(), options(true));
    let mut off = Survey::new(Sources::default(), options(false));
    let a = on.report(14, true).unwrap();
    let b = off.report(14, true).unwrap();
    assert_eq!(a, b);
    let set_on: Vec<usize> = on.constructed(14).unwrap().members.into_keys().collect();
    let set_off: Vec<usize> = off.constructed(14).unwrap().members.into_keys().collect();
    assert_eq!(set_on, set_off);
}

#[test]
fn constructed_needs_order_12_inputs() {
    let mut survey = Survey::new(Sources::default(), SurveyOptions::default());
    survey.constructed(14).unwrap();
    let lower: BTreeMap<usize, &CatalogAnalysis> =
        (4..=10).step_by(2).map(|n| (n, survey.analysis(n).unwrap())).collect();
    let target = survey.analysis(14).unwrap();
    assert!(constructed_set(target, &lower, Semantics::Strict, true).is_empty());
    assert!(constructed_set(target, &lower, Semantics::Loose, true).is_empty());
}

#[test]
fn ingest_round_trips_generation() {
    let c = generate_cubic(10).unwrap();
    let back = ingest_lines(&c.to_graph6_lines(), 10, CatalogSource::Generated).unwrap();
    assert_eq!(back.codes(), c.codes());
    assert_eq!(back.len(), 19);
}

#[test]
fn ingest_rejects_bad_catalogs() {
    let k4 = Graph::complete(4).to_graph6().unwrap();
    let relabeled = Graph::complete(4).permute(&[3, 1, 0, 2]).to_graph6().unwrap();
    let dup = format!("{}\n{}\n", k4, relabeled);
    match ingest_lines(&dup, 4, CatalogSource::Generated) {
        Err(Error::Validation(msg)) => assert!(msg.contains("lines 1 and 2"), "{}", msg),
        other => panic!("{:?}", other),
    }

    let k5 = Graph::complete(5).to_graph6().unwrap();
    match ingest_lines(&k5, 5, CatalogSource::Generated) {
        Err(Error::Validation(msg)) => assert!(msg.contains("line 1") && msg.contains("3-regular"), "{}", msg),
        other => panic!("{:?}", other),
    }

    let two_k4 = Graph::complete(4)
        .disjoint_union(&Graph::complete(4))
        .unwrap()
        .to_graph6()
        .unwrap();
    let text = format!("{}\n", two_k4);
    assert!(matches!(
        ingest_lines(&text, 8, CatalogSource::Generated),
        Err(Error::Validation(_))
    ));
    assert!(matches!(
        ingest_lines(&k4, 6, CatalogSource::Generated),
        Err(Error::Validation(_))
    ));
    assert!(matches!(
        ingest_lines("C~\n!!\n", 4, CatalogSource::Generated),
        Err(Error::Validation(_))
    ));
}

#[test]
fn orders_beyond_generation_need_a_corpus() {
    let mut survey = Survey::new(Sources::default(), SurveyOptions::default());
    assert!(matches!(survey.load(16), Err(Error::Validation(_))));
    assert!(matches!(survey.load(9), Err(Error::InvalidOrder(9))));
    assert!(matches!(generate_cubic(16), Err(Error::InvalidOrder(16))));
}

#[test]
fn ratio_is_undefined_without_nus3() {
    let mut survey = Survey::new(Sources::default(), SurveyOptions::default());
    let r = survey.report(10, true).unwrap();
    let ratio = r.conjecture_ratio().unwrap();
    assert_eq!((ratio.num, ratio.den), (0, 0));
    assert_eq!(ratio.decimal(), "n/a");
}

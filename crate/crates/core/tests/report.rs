use ringlab::harness::{
    build_report, comparable, default_catalog, has_counterexample, parse_catalog, run_suite, Bounds, Claim, Status, Suite,
};
use serde_json::json;

fn small_catalog() -> ringlab::harness::Catalog {
    let text = "Z/12\nZ/6\nF2[x]/(1,1,1)\nM2(Z/2)\nUT2(Z/2)\nZ/2 x Z/4\nZ\nt5_samples = 40\nt12_max = 5\n";
    parse_catalog(text, &Bounds::default()).unwrap()
}

#[test]
fn reports_are_byte_identical_without_metadata() {
    let cat = small_catalog();
    let render = || {
        let verdicts = run_suite(Suite::All, &cat.entries, &cat.bounds).unwrap();
        let report = build_report(Suite::All, &cat.entries, &cat.bounds, &verdicts);
        serde_json::to_string(&comparable(&report)).unwrap()
    };
    let first = render();
    for _ in 0..3 {
        assert_eq!(first, render());
    }
    assert!(!first.contains("generated_unix"));
}

#[test]
fn verdicts_are_ordered_by_claim_then_catalog() {
    let cat = small_catalog();
    let verdicts = run_suite(Suite::All, &cat.entries, &cat.bounds).unwrap();
    let position = |subject: &str| cat.entries.iter().position(|e| e.spec.to_string() == subject).unwrap();
    for pair in verdicts.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        assert!(a.claim < b.claim || (a.claim == b.claim && position(&a.subject) <= position(&b.subject)));
    }
    assert!(!has_counterexample(&verdicts));
}

#[test]
fn metadata_is_kept_apart() {
    let cat = small_catalog();
    let verdicts = run_suite(Suite::One(Claim::Sr1ImpliesAsr1), &cat.entries, &cat.bounds).unwrap();
    let report = build_report(Suite::One(Claim::Sr1ImpliesAsr1), &cat.entries, &cat.bounds, &verdicts);
    assert!(report["metadata"]["generated_unix"].is_u64());
    assert!(comparable(&report).get("metadata").is_none());
    assert_eq!(report["passed"], json!(true));
}

#[test]
fn residue_rings_share_verdicts_with_their_radical_quotient() {
    let cat = parse_catalog("Z/12\nZ/6\nZ/27\n", &Bounds::default()).unwrap();
    let verdicts = run_suite(Suite::One(Claim::RadicalQuotient), &cat.entries, &cat.bounds).unwrap();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts.iter().all(|v| v.status == Status::Verified), "{verdicts:?}");
}

#[test]
fn small_residue_rings_satisfy_first_implication() {
    let entries: Vec<_> = default_catalog().into_iter().filter(|e| e.tags.contains("residue")).collect();
    let verdicts = run_suite(Suite::One(Claim::Sr1ImpliesAsr1), &entries, &Bounds::default()).unwrap();
    assert_eq!(verdicts.len(), 29);
    assert!(verdicts.iter().all(|v| v.status == Status::Verified));
}

#[test]
fn empty_catalog_gives_no_verdicts() {
    let verdicts = run_suite(Suite::All, &[], &Bounds::default()).unwrap();
    assert!(verdicts.is_empty());
}

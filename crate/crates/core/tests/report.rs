use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use smkdv::charges::Charge;
use smkdv::report::*;
use smkdv::{ex, Flow};

fn quick() -> Options {
    Options { oracle_seeds: 4, random_superfields: 20, ..Options::default() }
}

fn ids(sel: Selection) -> Vec<String> {
    registry(&quick()).into_iter().filter(|c| sel.matches(c)).map(|c| c.id).collect()
}

#[test]
fn check_ids_are_unique() {
    let mut all: Vec<String> = registry(&Options { order: Some(3), ..quick() }).into_iter().map(|c| c.id).collect();
    let n = all.len();
    all.sort();
    all.dedup();
    assert_eq!(all.len(), n);
}

#[test]
fn every_criterion_has_checks() {
    let reg = registry(&quick());
    for k in 1..=9u8 {
        assert!(reg.iter().any(|c| c.criterion == Some(k)), "criterion {k}");
    }
}

#[test]
fn flow_and_charge_filters() {
    let sel = Selection { suite: Suite::Defects, flow: Some(Flow::T5), charge: Some(Charge::Momentum) };
    assert_eq!(ids(sel), ["defects/modified-P-t5"]);
    let zc = ids(Selection { suite: Suite::ZeroCurvature, flow: Some(Flow::T3), charge: None });
    assert!(zc.contains(&"zero-curvature/t3".to_string()));
    assert!(zc.iter().all(|id| id.starts_with("zero-curvature/")));
    assert!(ids(Selection::suite(Suite::All)).len() > ids(Selection::suite(Suite::Charges)).len());
}

#[test]
fn order_adds_generated_charges() {
    let base = registry(&quick()).len();
    assert_eq!(registry(&Options { order: Some(3), ..quick() }).len(), base + 4);
}

#[test]
fn order_parsing() {
    assert_eq!(parse_order("3/2").unwrap(), 3);
    assert_eq!(parse_order("2").unwrap(), 4);
    assert!(matches!(parse_order("3/4"), Err(ReportError::BadOrder(_))));
    assert!(matches!(parse_order("0/2"), Err(ReportError::BadOrder(_))));
    assert!(matches!(parse_charge("Q"), Err(ReportError::BadCharge(_))));
}

#[test]
fn suite_runs_are_sorted_and_repeatable() {
    let sel = Selection::suite(Suite::Superspace);
    let a = run_checks(sel, &Context::new(quick()), Some(2)).unwrap();
    let b = run_checks(sel, &Context::new(quick()), Some(1)).unwrap();
    assert!(a.windows(2).all(|w| w[0].check_id < w[1].check_id));
    assert!(a.iter().all(VerificationReport::passed));
    assert_eq!(to_json(&without_timing(&a)).unwrap(), to_json(&without_timing(&b)).unwrap());
}

#[test]
fn failures_carry_samples() {
    let o = Outcome::zero(vec![("x".into(), ex("phi_1 + psb*psb_1")), ("y".into(), ex("0"))]);
    assert!(!o.pass);
    assert_eq!(o.residual.terms, 2);
    assert_eq!(o.residual.sample.len(), 1);
    assert!(Outcome::nonzero(vec![("x".into(), ex("phi_1"))]).pass);
    assert!(!Outcome::nonzero(vec![("x".into(), ex("0"))]).pass);
}

#[test]
fn golden_files_match_the_derivation() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    let stored = read_golden(&dir).unwrap();
    let derived = golden_entries(&Context::new(quick())).unwrap();
    assert_eq!(stored.len(), derived.len());
    for ((tag, text), (dtag, e)) in stored.iter().zip(&derived) {
        assert_eq!(tag, dtag);
        assert_eq!(text, &e.to_string(), "{tag}");
        assert_eq!(&ex(text), e, "{tag} does not parse back");
    }
}

fn smkdv(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_smkdv")).args(args).output().unwrap()
}

#[test]
fn cli_exit_codes() {
    let ok = smkdv(&["verify", "zero-curvature", "--flow", "t3", "--format", "json"]);
    assert_eq!(ok.status.code(), Some(0));
    let reports = from_json(&String::from_utf8(ok.stdout).unwrap()).unwrap();
    assert!(reports.iter().any(|r| r.check_id == "zero-curvature/t3" && r.passed()));
    assert_eq!(smkdv(&["verify", "zero-curvature", "--bogus"]).status.code(), Some(2));
    assert_eq!(smkdv(&["verify", "zero-curvature", "--flow", "t7"]).status.code(), Some(2));
    assert_eq!(smkdv(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(smkdv(&["verify", "charges", "--order", "3/4"]).status.code(), Some(2));
    let text = smkdv(&["verify", "defects", "--charge", "P", "--flow", "t5"]);
    assert_eq!(text.status.code(), Some(0));
    assert!(String::from_utf8(text.stdout).unwrap().starts_with("PASS  defects/modified-P-t5"));
}

#[test]
fn cli_dumps_golden_files() {
    let dir = std::env::temp_dir().join(format!("smkdv-golden-{}", std::process::id()));
    let out = smkdv(&["verify", "zero-curvature", "--flow", "tm1", "--dump-golden", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stored = read_golden(&Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")).unwrap();
    assert_eq!(read_golden(&dir).unwrap(), stored);
    std::fs::remove_dir_all(dir).unwrap();
}

fn arb_report() -> impl Strategy<Value = VerificationReport> {
    (
        "[a-z-]{1,12}/[a-z0-9-]{1,12}",
        "[ -~]{0,40}",
        proptest::option::of(1u8..=10),
        any::<bool>(),
        (0usize..1000, proptest::collection::vec("[ -~]{0,30}", 0..3)),
        any::<u64>(),
    )
        .prop_map(|(check_id, anchor, criterion, pass, (terms, sample), elapsed_ms)| VerificationReport {
            check_id,
            anchor,
            criterion,
            status: if pass { Status::Pass } else { Status::Fail },
            residual: ResidualSummary { terms, sample },
            elapsed_ms,
        })
}

proptest! {
    #[test]
    fn json_round_trips(reports in proptest::collection::vec(arb_report(), 0..5)) {
        let s = to_json(&reports).unwrap();
        prop_assert_eq!(from_json(&s).unwrap(), reports.clone());
        prop_assert_eq!(to_json(&from_json(&s).unwrap()).unwrap(), s);
    }
}

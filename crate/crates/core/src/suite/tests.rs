use super::*;

fn only(names: &[&str]) -> Config {
    Config { only: names.iter().map(|s| s.to_string()).collect(), samples: 8, ..Config::default() }
}

#[test]
fn names_are_unique_and_cover_criteria() {
    let defs = registry();
    let mut names: Vec<&str> = defs.iter().map(|d| d.name).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), defs.len());
    for c in 1..=7 {
        assert!(defs.iter().any(|d| d.criterion == c));
    }
    for (n, _) in KNOWN_DEVIATIONS {
        assert!(defs.iter().any(|d| d.name == *n));
    }
}

#[test]
fn prefix_and_glob_selection() {
    let r = run_suite(only(&["ranks.clifford_group", "ranks.hermitian_*"])).unwrap();
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, vec!["ranks.hermitian_map", "ranks.clifford_group"]);
    assert!(r.all_passed());
    let defs = selected(registry(), &["ranks".to_string()]).unwrap();
    assert!(defs.iter().all(|d| d.name.starts_with("ranks.")));
    assert_eq!(defs.len(), 7);
}

#[test]
fn bad_selection_is_config_error() {
    assert!(matches!(run_suite(only(&["nothing.here"])), Err(ConfigError::NoMatch(_))));
    assert!(matches!(run_suite(only(&["[unclosed"])), Err(ConfigError::Pattern(..))));
    assert!(matches!(run_suite(Config { samples: 0, ..Config::default() }), Err(ConfigError::Samples)));
}

#[test]
fn report_round_trips_and_is_deterministic() {
    let cfg = only(&["identities.jacobi", "ranks.ideal"]);
    let a = run_suite(cfg.clone()).unwrap();
    let b = run_suite(cfg).unwrap();
    assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    let back: Report = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    assert_eq!(a.version, REPORT_VERSION);
    assert_eq!(a.get("identities.jacobi").unwrap().instances, Some(8));
}

#[test]
fn tampered_ideal_breaks_closure() {
    let mut cfg = only(&["identities.ideal_closed"]);
    cfg.samples = 50;
    let good = run_suite(cfg.clone()).unwrap();
    assert_eq!(good.checks[0].status, Status::Pass);
    cfg.tamper_ideal = true;
    let bad = run_suite(cfg).unwrap();
    assert_eq!(bad.checks[0].status, Status::Fail);
    assert!(bad.checks[0].witness["failed"].as_u64().unwrap() > 0);
    assert!(!bad.all_passed());
}

use std::collections::BTreeMap;

use glagr::suite::{known_deviation, run_suite, Config, Status, KNOWN_DEVIATIONS};

fn samples() -> usize {
    std::env::var("GLAGR_SAMPLES").ok().and_then(|s| s.parse().ok()).unwrap_or(Config::default().samples)
}

#[test]
fn acceptance() {
    let report = run_suite(Config { samples: samples(), ..Config::default() }).expect("suite config");

    let mut by_criterion: BTreeMap<u8, (usize, usize)> = BTreeMap::new();
    let mut unexpected = Vec::new();
    for c in &report.checks {
        let pass = c.status == Status::Pass;
        let tag = match (pass, known_deviation(&c.name)) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        println!("{tag:<13} criterion {} {:<34} {}", c.criterion, c.name, c.description);
        let e = by_criterion.entry(c.criterion).or_default();
        if pass {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
        if pass == known_deviation(&c.name).is_some() {
            unexpected.push(c.name.clone());
        }
    }
    for (k, (p, f)) in &by_criterion {
        println!("{} criterion {k}: {p} passed, {f} failed", if *f == 0 { "PASS" } else { "FAIL" });
    }
    for (name, why) in KNOWN_DEVIATIONS {
        println!("known deviation {name}: {why}");
    }
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:?}");
}

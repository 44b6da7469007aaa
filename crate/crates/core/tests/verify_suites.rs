//! Every built-in verification suite passes at the default precision.

use ezeta::verify::{run, Suite};
use ezeta::EvalConfig;

#[test]
fn all_suites_pass() {
    let cfg = EvalConfig::default();
    for suite in Suite::ALL {
        let report = run(suite, &cfg);
        assert!(!report.checks.is_empty(), "{suite} is empty");
        assert!(report.passed(), "{}", report.to_text());
        assert!(report.to_text().ends_with(&format!("{n}/{n} passed\n", n = report.checks.len())), "{}", report.to_text());
    }
}

#[test]
fn suite_names_round_trip() {
    for suite in Suite::ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!("nope".parse::<Suite>().is_err());
}

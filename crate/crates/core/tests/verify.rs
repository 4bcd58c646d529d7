use adams_core::verify::{registry, run_suite, Params, Status, VerifyError};

fn params(seed: u64, cases: usize, max_n: usize, k: &[usize]) -> Params {
    Params { seed, cases, max_rank: 2, max_n, k_list: k.to_vec() }
}

#[test]
fn every_suite_runs_at_small_scale() {
    for s in registry() {
        let r = run_suite(s.name, &params(11, 3, 2, &[2]), false).unwrap();
        assert_eq!(r.cases.len(), (s.count)(&r.params));
        // Only the worked example is expected to fail at k = 2.
        assert_eq!(r.all_passed(), s.name != "adams-example", "{}", s.name);
    }
}

#[test]
fn worked_example_reports_the_disputed_coefficient() {
    let r = run_suite("adams-example", &params(1, 1, 1, &[2]), false).unwrap();
    assert_eq!(r.cases.len(), 1);
    let f = r.cases[0].failure.as_ref().unwrap();
    assert_eq!(f.diff.len(), 1);
    assert!(f.diff[0].ends_with("printed -3 computed +3"), "{:?}", f.diff);
}

#[test]
fn adams_split_fails_only_for_two_directions_and_k_three() {
    let r = run_suite("psi-chain", &params(7, 40, 2, &[2, 3]), false).unwrap();
    assert!(r.failed > 0);
    for c in &r.cases {
        if c.status == Status::Fail {
            assert_eq!(c.label, "n=2 k=3");
        }
    }
}

#[test]
fn tier_strict_turns_tier_two_passes_into_failures() {
    let p = params(7, 40, 2, &[2]);
    let loose = run_suite("psi-chain", &p, false).unwrap();
    let strict = run_suite("psi-chain", &p, true).unwrap();
    assert!(loose.passed_tier2 > 0);
    assert_eq!(strict.failed, loose.failed + loose.passed_tier2);
}

#[test]
fn bad_requests_are_errors() {
    assert_eq!(run_suite("unknown", &Params::default(), false).unwrap_err(), VerifyError::UnknownSuite("unknown".into()));
    assert!(matches!(run_suite("koszul", &params(0, 0, 1, &[2]), false), Err(VerifyError::InvalidParameter(_))));
    assert!(matches!(run_suite("koszul", &params(0, 1, 1, &[0]), false), Err(VerifyError::InvalidParameter(_))));
}

use elliptica::algebra::ConstantsSource;
use elliptica::harness::{run_suite, HarnessConfig, Suite};
use elliptica::{Error, Rational, Symbol};

#[test]
fn parses_keys_comments_and_overrides() {
    let cfg = HarnessConfig::parse(
        "# small run\n\
         window = 2\n\
         window.pollaczek = 7\n\
         seed = 11\n\
         constants = paper\n\
         bind.chi0 = -3/2\n\
         split_level = yes\n",
    )
    .unwrap();
    assert_eq!(cfg.window_for(Suite::Jacobi), 2);
    assert_eq!(cfg.window_for(Suite::Pollaczek), 7);
    assert_eq!(cfg.seed, 11);
    assert_eq!(cfg.constants, ConstantsSource::Paper);
    assert!(cfg.split_level);
    assert_eq!(cfg.bindings[&Symbol::Chi0], Rational::new((-3).into(), 2.into()));
}

#[test]
fn default_windows_per_suite() {
    let cfg = HarnessConfig::default();
    assert_eq!(cfg.window_for(Suite::Pollaczek), 12);
    assert_eq!(cfg.window_for(Suite::Realize), 3);
    assert_eq!(cfg.window_for(Suite::Cocycle), 4);
}

#[test]
fn errors_carry_the_line_number() {
    match HarnessConfig::parse("seed = 1\n\nfrobnicate = 3\n") {
        Err(Error::Config { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
    assert!(HarnessConfig::parse("r = 2\n").is_err());
    assert!(HarnessConfig::parse("bind.b = 1\n").is_err());
    assert!(HarnessConfig::parse("window = 0\n").and_then(|c| c.validate()).is_err());
}

#[test]
fn report_is_independent_of_thread_count() {
    let mut one = HarnessConfig::parse("window = 2\nstates = 2\n").unwrap();
    one.threads = Some(1);
    let mut four = one.clone();
    four.threads = Some(4);
    let a = run_suite(Suite::Twodim, &one).unwrap();
    let b = run_suite(Suite::Twodim, &four).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.exit_code(), 0);
}

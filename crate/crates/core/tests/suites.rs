//! Every verification suite passes over every variety at a small instance
//! count, with its negative control flagged.

use affinet::algebra::Variety;
use affinet::{run_suite, GenConfig, SuiteId};

fn small(seed: u64, variety: Variety) -> GenConfig {
    let mut cfg = GenConfig::new(seed, variety);
    cfg.instances = 6;
    cfg.max_points = 3;
    cfg.max_algebra = 5;
    cfg
}

#[test]
fn every_suite_passes_over_every_variety() {
    for variety in Variety::ALL {
        for suite in SuiteId::ALL {
            let cfg = small(0xA11CE ^ suite.as_str().len() as u64, variety);
            let report = run_suite(suite, &cfg)
                .unwrap_or_else(|e| panic!("{suite} over {} errored: {e}", variety.tag()));
            assert!(
                report.failures.is_empty(),
                "{suite} over {}: {:?}",
                variety.tag(),
                report.failures
            );
            assert!(
                report.negative_control_flagged,
                "{suite} over {}: negative control went unflagged",
                variety.tag()
            );
            assert!(report.passed());
        }
    }
}

#[test]
fn reports_are_reproducible_for_a_fixed_seed() {
    let cfg = small(42, Variety::Frame);
    let a = run_suite(SuiteId::Thm2, &cfg).unwrap();
    let b = run_suite(SuiteId::Thm2, &cfg).unwrap();
    assert_eq!(a.passes, b.passes);
    assert_eq!(a.failures.len(), b.failures.len());
    assert_eq!(a.instances, b.instances);
}

#[test]
fn the_refuting_suite_reports_its_witness() {
    let cfg = small(7, Variety::UQuant);
    let report = run_suite(SuiteId::Cor2, &cfg).unwrap();
    assert!(report.passed());
    assert!(!report.theorem_holds);
    assert_eq!(report.witness.as_deref(), Some("{\"A1\":[0,1],\"A2\":[0]}"));
}

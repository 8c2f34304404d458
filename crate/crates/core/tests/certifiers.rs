//! Cross-module checks: certificates produced by both constructions are
//! audited, verified, and compared against the exact oracles.

use urm_core::bridge_cert::{certify_bridges, CertException, CertifyOptions};
use urm_core::enumerate::connected_subcubic_graphs;
use urm_core::forge::{claw_chain, named, random_subcubic_girth, tight_bridge_family};
use urm_core::girth_cert::{certify_girth, GirthMode};
use urm_core::matching::is_uniquely_restricted;
use urm_core::oracle::{nu_ur_exact, nu_ur_exact_with};

#[test]
fn mcgee_goes_through_the_cubic_fallback_and_meets_the_bound() {
    let g = named("MCGEE").unwrap();
    let c = certify_bridges(&g, &CertifyOptions::default()).unwrap();
    // Cubic, so no good bridges: the certificate must reach 36/6 = 6.
    assert_eq!(c.bound_numerator(), 36);
    assert!(c.bound_met(), "achieved {}", c.achieved());
    assert!(matches!(c.exceptions[0], CertException::CubicFallback { .. }));
    assert!(c.audit().is_ok());
    assert!(is_uniquely_restricted(&g, &c.matching).unwrap().is_ur());
}

#[test]
fn tight_family_certificates_close_with_equality() {
    for (k, attach) in [(1usize, vec![1]), (2, vec![1, 2]), (3, vec![1, 2, 3])] {
        let inst = tight_bridge_family(&named("K13").unwrap(), &attach).unwrap();
        let c = certify_bridges(&inst.graph, &CertifyOptions::default()).unwrap();
        assert!(c.bound_met());
        assert!(c.audit().is_ok());
        // m + good = (3 + 6k) + 3 = 6(k + 1): the bound forces exactly the
        // optimum on these instances.
        assert_eq!(c.bound_numerator(), 6 * (k + 1));
        assert_eq!(c.achieved(), inst.predicted_nu_ur);
        let opt = nu_ur_exact(&inst.graph).unwrap();
        assert_eq!(opt.size, c.achieved(), "certificate must be optimal here");
    }
    let inst = tight_bridge_family(&claw_chain(4), &[7, 8]).unwrap();
    let c = certify_bridges(&inst.graph, &CertifyOptions::default()).unwrap();
    assert!(c.bound_met() && c.audit().is_ok());
    assert_eq!(c.achieved(), inst.predicted_nu_ur);
}

#[test]
fn exhaustive_small_graphs_certify_and_stay_below_the_optimum() {
    let opts = CertifyOptions::default();
    for n in 1..=8 {
        for g in connected_subcubic_graphs(n) {
            let res = certify_bridges(&g, &opts);
            let c = match res {
                Ok(c) => c,
                Err(e) => panic!("n={n} edges {:?}: {e}", g.edges()),
            };
            assert!(c.audit().is_ok());
            if g.is_k33() {
                assert!(!c.bound_met());
                continue;
            }
            assert!(c.bound_met(), "n={n} edges {:?}", g.edges());
            let opt = nu_ur_exact(&g).unwrap();
            assert!(c.achieved() <= opt.size);
            assert!(6 * opt.size >= c.bound_numerator());
        }
    }
}

#[test]
fn girth_seven_random_instances_certify_strictly() {
    for seed in 0..30 {
        let g = random_subcubic_girth(40, 7, seed).unwrap();
        let c = certify_girth(&g, GirthMode::Strict).unwrap();
        assert!(c.bound_met());
        assert!(c.violations.is_empty());
        assert!(is_uniquely_restricted(&g, &c.matching).unwrap().is_ur());
    }
}

#[test]
fn girth_certificates_stay_below_the_optimum_on_small_instances() {
    for seed in 0..10 {
        let g = random_subcubic_girth(18, 7, seed).unwrap();
        let c = certify_girth(&g, GirthMode::Strict).unwrap();
        let opt = nu_ur_exact_with(&g, 10_000_000).unwrap();
        assert!(c.achieved() <= opt.size);
        assert!(3 * opt.size as i64 >= g.n() as i64 - 1);
    }
}

#[test]
fn heawood_needs_the_relaxed_mode_and_still_reports_honestly() {
    let g = named("HEAWOOD").unwrap();
    assert!(certify_girth(&g, GirthMode::Strict).is_err());
    let c = certify_girth(&g, GirthMode::Relaxed).unwrap();
    assert!(is_uniquely_restricted(&g, &c.matching).unwrap().is_ur());
    // Whatever the census said, the reported numbers must be real.
    assert_eq!(c.bound_met(), 3 * c.achieved() >= 13);
}

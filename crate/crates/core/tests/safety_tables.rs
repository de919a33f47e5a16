use aerorisk_core::fixtures::HAZARDS_JSON;
use aerorisk_core::safety::{
    Avoidance, Exposure, PerformanceLevel, ProbabilityClass, RiskLevel, RiskMatrix, Severity,
    SeverityClass, SfpTriple,
};
use aerorisk_core::{plr_lookup, registry_load, risk_matrix_lookup};

use PerformanceLevel as Pl;
use ProbabilityClass as P;
use RiskLevel as R;
use SeverityClass as S;

/// (hazard id, probability, severity, risk level) as published in the hazard tables.
const RISK_GOLDEN: [(u32, P, S, R); 11] = [
    (1, P::Probable, S::Negligible, R::Medium),
    (2, P::Remote, S::Catastrophic, R::Serious),
    (3, P::Occasional, S::Critical, R::Serious),
    (4, P::Probable, S::Catastrophic, R::High),
    (5, P::Probable, S::Critical, R::High),
    (6, P::Occasional, S::Catastrophic, R::High),
    (7, P::Remote, S::Negligible, R::Low),
    (8, P::Probable, S::Critical, R::High),
    (9, P::Remote, S::Catastrophic, R::Serious),
    (10, P::Remote, S::Catastrophic, R::Serious),
    (11, P::Occasional, S::Negligible, R::Low),
];

/// (hazard id, S, F, P, required performance level) for the populated safeguard rows.
const PLR_GOLDEN: [(u32, Severity, Exposure, Avoidance, Pl); 6] = [
    (3, Severity::S1, Exposure::F2, Avoidance::P2, Pl::C),
    (6, Severity::S2, Exposure::F1, Avoidance::P2, Pl::D),
    (7, Severity::S1, Exposure::F1, Avoidance::P1, Pl::A),
    (8, Severity::S2, Exposure::F2, Avoidance::P1, Pl::D),
    (9, Severity::S2, Exposure::F1, Avoidance::P2, Pl::D),
    (10, Severity::S2, Exposure::F1, Avoidance::P2, Pl::D),
];

#[test]
fn risk_matrix_reproduces_published_triples() {
    for (id, p, s, r) in RISK_GOLDEN {
        assert_eq!(risk_matrix_lookup(p, s), r, "hazard {id}");
    }
}

#[test]
fn plr_reproduces_published_assignments() {
    for (id, s, f, p, pl) in PLR_GOLDEN {
        assert_eq!(plr_lookup(SfpTriple::new(s, f, p)), pl, "hazard {id}");
    }
}

#[test]
fn fixture_registry_agrees_with_golden_tables() {
    let records = registry_load(HAZARDS_JSON).unwrap();
    assert_eq!(records.len(), 11);
    for ((id, p, s, r), h) in RISK_GOLDEN.iter().zip(&records) {
        assert_eq!(
            (h.id, h.probability, h.severity, h.risk_level),
            (*id, *p, *s, *r)
        );
    }
    for (id, s, f, p, pl) in PLR_GOLDEN {
        let h = records.iter().find(|h| h.id == id).unwrap();
        assert!(
            h.measures
                .iter()
                .any(|m| m.sfp == Some(SfpTriple::new(s, f, p)) && m.plr == Some(pl)),
            "hazard {id}"
        );
    }
}

#[test]
fn matrix_is_monotone_in_both_axes() {
    assert!(RiskMatrix::default().is_monotone());
    for p in P::ALL {
        for s in S::ALL {
            let here = risk_matrix_lookup(p, s);
            if let Some(&up) = P::ALL.get(p.index() + 1) {
                assert!(risk_matrix_lookup(up, s) >= here);
            }
            if let Some(&worse) = S::ALL.get(s.index() + 1) {
                assert!(risk_matrix_lookup(p, worse) >= here);
            }
        }
    }
}

#[test]
fn plr_is_monotone_in_each_parameter() {
    for t in SfpTriple::all() {
        let here = plr_lookup(t);
        if t.s == Severity::S1 {
            assert!(
                plr_lookup(SfpTriple {
                    s: Severity::S2,
                    ..t
                }) >= here
            );
        }
        if t.f == Exposure::F1 {
            assert!(
                plr_lookup(SfpTriple {
                    f: Exposure::F2,
                    ..t
                }) >= here
            );
        }
        if t.p == Avoidance::P1 {
            assert!(
                plr_lookup(SfpTriple {
                    p: Avoidance::P2,
                    ..t
                }) >= here
            );
        }
    }
    assert_eq!(
        plr_lookup(SfpTriple::new(Severity::S1, Exposure::F1, Avoidance::P1)),
        Pl::A
    );
    assert_eq!(
        plr_lookup(SfpTriple::new(Severity::S2, Exposure::F2, Avoidance::P2)),
        Pl::E
    );
}

//! Risk scoring matrix and the performance-level risk graph.

use super::classes::{
    Avoidance, Exposure, PerformanceLevel, ProbabilityClass, RiskLevel, Severity, SeverityClass,
    SfpTriple,
};

use RiskLevel::{High as H, Low as L, Medium as M, Serious as S};

/// Default cell values, rows by probability class (Improbable..Frequent), columns by
/// severity class (Negligible..Catastrophic).
///
/// Only five distinct cells are pinned by the hazard register; the rest is the minimal
/// monotone completion. Swap this constant to use a different organisational matrix.
pub const DEFAULT_CELLS: [[RiskLevel; 4]; 5] = [
    [L, L, L, M],
    [L, L, M, S],
    [L, M, S, H],
    [M, S, H, H],
    [M, S, H, H],
];

/// Total mapping from (probability, severity) to a risk level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiskMatrix {
    cells: [[RiskLevel; 4]; 5],
}

impl Default for RiskMatrix {
    fn default() -> Self {
        RiskMatrix {
            cells: DEFAULT_CELLS,
        }
    }
}

impl RiskMatrix {
    /// Build a custom matrix. Returns `None` if the cells are not monotone
    /// non-decreasing along both axes.
    pub fn from_cells(cells: [[RiskLevel; 4]; 5]) -> Option<Self> {
        let m = RiskMatrix { cells };
        m.is_monotone().then_some(m)
    }

    pub fn lookup(&self, p: ProbabilityClass, s: SeverityClass) -> RiskLevel {
        self.cells[p.index()][s.index()]
    }

    pub fn is_monotone(&self) -> bool {
        for p in 0..5 {
            for s in 0..4 {
                let here = self.cells[p][s];
                if p + 1 < 5 && self.cells[p + 1][s] < here {
                    return false;
                }
                if s + 1 < 4 && self.cells[p][s + 1] < here {
                    return false;
                }
            }
        }
        true
    }
}

/// Scores a hazard with the default matrix.
pub fn risk_matrix_lookup(p: ProbabilityClass, s: SeverityClass) -> RiskLevel {
    RiskMatrix::default().lookup(p, s)
}

/// Required performance level from the S/F/P risk graph.
pub fn plr_lookup(t: SfpTriple) -> PerformanceLevel {
    use PerformanceLevel::*;
    match (t.s, t.f, t.p) {
        (Severity::S1, Exposure::F1, Avoidance::P1) => A,
        (Severity::S1, Exposure::F1, Avoidance::P2) => B,
        (Severity::S1, Exposure::F2, Avoidance::P1) => B,
        (Severity::S1, Exposure::F2, Avoidance::P2) => C,
        (Severity::S2, Exposure::F1, Avoidance::P1) => C,
        (Severity::S2, Exposure::F1, Avoidance::P2) => D,
        (Severity::S2, Exposure::F2, Avoidance::P1) => D,
        (Severity::S2, Exposure::F2, Avoidance::P2) => E,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ProbabilityClass::*;
    use SeverityClass::*;

    #[test]
    fn register_cells() {
        assert_eq!(risk_matrix_lookup(Remote, Catastrophic), RiskLevel::Serious);
        assert_eq!(risk_matrix_lookup(Probable, Negligible), RiskLevel::Medium);
        assert_eq!(risk_matrix_lookup(Probable, Catastrophic), RiskLevel::High);
        assert_eq!(risk_matrix_lookup(Occasional, Negligible), RiskLevel::Low);
        assert_eq!(risk_matrix_lookup(Improbable, Negligible), RiskLevel::Low);
    }

    #[test]
    fn default_is_monotone() {
        assert!(RiskMatrix::default().is_monotone());
    }

    #[test]
    fn non_monotone_cells_rejected() {
        let mut cells = DEFAULT_CELLS;
        cells[4][3] = RiskLevel::Low;
        assert!(RiskMatrix::from_cells(cells).is_none());
    }

    #[test]
    fn risk_graph_examples() {
        use Avoidance::*;
        use Exposure::*;
        use Severity::*;
        assert_eq!(plr_lookup(SfpTriple::new(S1, F2, P2)), PerformanceLevel::C);
        assert_eq!(plr_lookup(SfpTriple::new(S2, F1, P2)), PerformanceLevel::D);
        assert_eq!(plr_lookup(SfpTriple::new(S1, F1, P1)), PerformanceLevel::A);
        assert_eq!(plr_lookup(SfpTriple::new(S2, F2, P1)), PerformanceLevel::D);
    }

    #[test]
    fn risk_graph_monotone_in_each_parameter() {
        for t in SfpTriple::all() {
            let base = plr_lookup(t);
            if t.s == Severity::S1 {
                assert!(
                    plr_lookup(SfpTriple {
                        s: Severity::S2,
                        ..t
                    }) >= base
                );
            }
            if t.f == Exposure::F1 {
                assert!(
                    plr_lookup(SfpTriple {
                        f: Exposure::F2,
                        ..t
                    }) >= base
                );
            }
            if t.p == Avoidance::P1 {
                assert!(
                    plr_lookup(SfpTriple {
                        p: Avoidance::P2,
                        ..t
                    }) >= base
                );
            }
        }
    }
}

//! Deterministic markdown/JSON reports over the register, scenario runs and tornado analyses.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::run::ScenarioResult;
use crate::bn::TornadoReport;
use crate::safety::{HazardRecord, MeasureCategory};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Markdown,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    hazards: &'a [HazardRecord],
    scenarios: &'a [ScenarioResult],
    tornado: &'a [TornadoReport],
}

pub fn emit_report(
    results: &[ScenarioResult],
    tornado: &[TornadoReport],
    registry: &[HazardRecord],
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Json => {
            let doc = ReportDocument {
                hazards: registry,
                scenarios: results,
                tornado,
            };
            let mut s =
                serde_json::to_string_pretty(&doc).expect("report serialization is infallible");
            s.push('\n');
            s
        }
        ReportFormat::Markdown => markdown(results, tornado, registry),
    }
}

fn pct(p: f64) -> String {
    format!("{:.3}%", p * 100.0)
}

fn signed_pp(d: f64) -> String {
    // avoid printing "-0.000"
    let v = d * 100.0;
    if v.abs() < 0.0005 {
        "+0.000 pp".to_string()
    } else {
        format!("{v:+.3} pp")
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown(
    results: &[ScenarioResult],
    tornado: &[TornadoReport],
    registry: &[HazardRecord],
) -> String {
    let mut out = String::new();
    out.push_str("# UAV mission risk report\n\n## Hazard register\n\n");
    if registry.is_empty() {
        out.push_str("_No hazards._\n");
    } else {
        out.push_str("| ID | Hazard | Source | Type | Element | P | S | Risk level | Risk reduction measures | PLr |\n");
        out.push_str("|---:|---|---|---|---|---|---|---|---|---|\n");
        for h in registry {
            let measures = h
                .measures
                .iter()
                .map(|m| {
                    let tag = match m.category {
                        MeasureCategory::InherentlySafeDesign => "design",
                        MeasureCategory::Safeguarding => "safeguard",
                        MeasureCategory::InformationForUse => "information",
                    };
                    match (m.sfp, m.plr) {
                        (Some(sfp), Some(plr)) => {
                            format!("{} ({tag}; {sfp} -> {plr})", cell(&m.description))
                        }
                        _ => format!("{} ({tag})", cell(&m.description)),
                    }
                })
                .collect::<Vec<_>>()
                .join("<br>");
            let plr = h
                .measures
                .iter()
                .filter_map(|m| m.plr.map(|p| p.to_string()))
                .collect::<Vec<_>>();
            let plr = if plr.is_empty() {
                "-".to_string()
            } else {
                plr.join(", ")
            };
            let _ = writeln!(
                out,
                "| {} | {} | {:?} | {} | {} | {} | {} | {} | {} | {} |",
                h.id,
                cell(&h.name),
                h.source,
                cell(&h.hazard_type),
                cell(&h.element),
                h.probability,
                h.severity,
                h.risk_level,
                measures,
                plr
            );
        }
    }

    out.push_str("\n## Scenarios\n\n");
    if results.is_empty() {
        out.push_str("_No scenarios._\n\n");
    }
    for r in results {
        let _ = writeln!(out, "### {} ({:?})\n", cell(&r.name), r.direction);
        let evidence = if r.evidence.is_empty() {
            "none".to_string()
        } else {
            r.evidence
                .iter()
                .map(|(n, s)| format!("{n} = {s}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(out, "Target: {}. Evidence: {}.\n", r.target(), evidence);
        out.push_str("| State | Prior | Posterior | Delta |\n|---|---:|---:|---:|\n");
        for (i, s) in r.posterior.states.iter().enumerate() {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                s,
                pct(r.prior.probabilities[i]),
                pct(r.posterior.probabilities[i]),
                signed_pp(r.delta[i])
            );
        }
        for w in &r.warnings {
            let _ = writeln!(out, "\n> warning: {w}");
        }
        out.push('\n');
    }

    out.push_str("## Sensitivity\n\n");
    if tornado.is_empty() {
        out.push_str("_No sensitivity analysis._\n");
    }
    for t in tornado {
        let _ = writeln!(
            out,
            "### {} = {}\n\nBaseline: {}\n",
            t.target,
            t.target_state,
            pct(t.baseline)
        );
        out.push_str("| Node | Min | Max | Bar length | Per state |\n|---|---:|---:|---:|---|\n");
        for row in &t.rows {
            let per_state = row
                .values
                .iter()
                .map(|v| match v.value {
                    Some(p) => format!("{}: {}", v.state, pct(p)),
                    None => format!("{}: undefined", v.state),
                })
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                row.node,
                pct(row.min),
                pct(row.max),
                pct(row.bar_length),
                per_state
            );
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_json_has_empty_arrays() {
        let doc = emit_report(&[], &[], &[], ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        for key in ["hazards", "scenarios", "tornado"] {
            assert_eq!(v[key], serde_json::json!([]), "{key}");
        }
    }

    #[test]
    fn empty_markdown_sections() {
        let doc = emit_report(&[], &[], &[], ReportFormat::Markdown);
        assert!(doc.contains("_No hazards._"));
        assert!(doc.contains("_No scenarios._"));
    }

    #[test]
    fn percent_formatting() {
        assert_eq!(pct(0.60106), "60.106%");
        assert_eq!(signed_pp(-1e-12), "+0.000 pp");
        assert_eq!(signed_pp(0.05), "+5.000 pp");
        assert_eq!(signed_pp(-0.05), "-5.000 pp");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("pdf".parse::<ReportFormat>().is_err());
    }
}

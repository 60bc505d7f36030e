use std::fmt::Write;

use super::ReportSet;

/// Plain-text table: one row per claim key and combo, then violations and
/// errors.
pub fn render_table(report: &ReportSet) -> String {
    let mut out = String::new();
    let key_w = report
        .tallies
        .keys()
        .map(String::len)
        .max()
        .unwrap_or(5)
        .max(5);
    let combo_w = report
        .tallies
        .values()
        .flat_map(|m| m.keys())
        .map(String::len)
        .max()
        .unwrap_or(5)
        .max(5);
    let _ = writeln!(
        out,
        "{:key_w$}  {:combo_w$}  {:>6}  {:>8}  {:>12}",
        "claim", "combo", "holds", "violated", "inconclusive"
    );
    for (key, per_combo) in &report.tallies {
        for (combo, t) in per_combo {
            let _ = writeln!(
                out,
                "{key:key_w$}  {combo:combo_w$}  {:>6}  {:>8}  {:>12}",
                t.holds, t.violated, t.inconclusive
            );
        }
    }
    if !report.violations.is_empty() {
        let _ = writeln!(out, "\nviolations:");
        for v in &report.violations {
            let _ = writeln!(
                out,
                "  {} [{}] #{} {}: {}{}",
                v.key,
                v.combo,
                v.instance,
                v.source,
                v.verdict.detail,
                if v.reverified {
                    ""
                } else {
                    " (did not reverify)"
                }
            );
        }
    }
    if !report.errors.is_empty() {
        let _ = writeln!(out, "\nerrors:");
        for e in &report.errors {
            let _ = writeln!(
                out,
                "  #{} {} [{}]: {}",
                e.instance, e.source, e.combo, e.message
            );
        }
    }
    for s in &report.sanity_failures {
        let _ = writeln!(out, "sanity: {s}");
    }
    let _ = writeln!(out, "\n{}", report.summary_line());
    out
}

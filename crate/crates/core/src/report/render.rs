use std::collections::BTreeSet;
use std::fmt::Write;

use crate::metrics::Group;
use crate::report::stats::{aggregate, completion_rate, mcp_adoption, mean_fctc, GroupStats};
use crate::report::trials::TrialRecord;
use crate::report::welch::welch_t;

/// A requested t-test: `treatment` against `baseline`, optionally within one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub treatment: String,
    pub baseline: String,
    pub group: Option<Group>,
}

/// `"99.4% ± 3.6% (n=31)"` for ACS stats held as fractions.
pub fn stats_cell(s: &GroupStats) -> String {
    format!("{:.1}% ± {:.1}% (n={})", s.mean * 100.0, s.std * 100.0, s.n)
}

fn pct(x: f64) -> String {
    format!("{:.1}%", x * 100.0)
}

fn opt_pct(x: Option<f64>) -> String {
    x.map(pct).unwrap_or_else(|| "-".into())
}

fn row(cells: &[String]) -> String {
    format!("| {} |\n", cells.join(" | "))
}

fn header(out: &mut String, title: &str, cols: &[&str]) {
    let _ = writeln!(out, "## {title}\n");
    out.push_str(&row(&cols.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
    out.push_str(&row(&vec!["---".to_string(); cols.len()]));
}

fn select(trials: &[TrialRecord], condition: &str, group: Option<Group>) -> Vec<TrialRecord> {
    trials
        .iter()
        .filter(|t| t.condition == condition && group.is_none_or(|g| t.group == g))
        .cloned()
        .collect()
}

fn acs_stats(trials: &[TrialRecord]) -> Option<GroupStats> {
    GroupStats::from_values(&trials.iter().map(|t| t.metrics.acs).collect::<Vec<_>>())
}

/// One Welch line, or the reason it could not be computed.
pub fn render_comparison(trials: &[TrialRecord], cmp: &Comparison) -> String {
    let scope = cmp.group.map(|g| format!(" ({g})")).unwrap_or_default();
    let label = format!("{} vs {}{scope}", cmp.treatment, cmp.baseline);
    let a = acs_stats(&select(trials, &cmp.treatment, cmp.group));
    let b = acs_stats(&select(trials, &cmp.baseline, cmp.group));
    match (a, b) {
        (Some(a), Some(b)) => match welch_t(&a, &b) {
            Ok(r) => format!("{label}: t={:.2}, df={:.1}, {}", r.t, r.df, r.significance),
            Err(e) => format!("{label}: t-test not computed: {e}"),
        },
        _ => format!("{label}: t-test not computed: no trials for one side"),
    }
}

/// Result tables in pipe-delimited form, followed by requested t-tests.
pub fn render_report(trials: &[TrialRecord], comparisons: &[Comparison]) -> String {
    let mut out = String::new();
    if trials.is_empty() {
        out.push_str("(no trials)\n");
        return out;
    }
    let conditions: BTreeSet<&str> = trials.iter().map(|t| t.condition.as_str()).collect();
    let groups: BTreeSet<Group> = trials.iter().map(|t| t.group).collect();
    let by_key = aggregate(trials);

    let mut cols = vec!["Condition"];
    cols.extend(groups.iter().map(|g| g.as_str()));
    cols.push("Overall");
    header(&mut out, "ACS by condition and group", &cols);
    for c in &conditions {
        let mut cells = vec![c.to_string()];
        for g in &groups {
            cells.push(
                by_key
                    .get(&(c.to_string(), *g))
                    .map(stats_cell)
                    .unwrap_or_else(|| "-".into()),
            );
        }
        cells.push(
            acs_stats(&select(trials, c, None))
                .as_ref()
                .map(stats_cell)
                .unwrap_or_default(),
        );
        out.push_str(&row(&cells));
    }

    out.push('\n');
    header(
        &mut out,
        "Completion and FCTC",
        &["Condition", "Completion (ACS >= 1.0)", "Mean FCTC", "n"],
    );
    for c in &conditions {
        let ts = select(trials, c, None);
        let done = ts.iter().filter(|t| t.metrics.acs >= 1.0).count();
        let rate = completion_rate(&ts).map(pct).unwrap_or_else(|_| "-".into());
        let fctc = mean_fctc(&ts).map(|f| format!("{f:.2}")).unwrap_or_else(|| "-".into());
        out.push_str(&row(&[
            c.to_string(),
            format!("{rate} ({done}/{})", ts.len()),
            fctc,
            ts.len().to_string(),
        ]));
    }

    out.push('\n');
    header(
        &mut out,
        "Navigation tool adoption",
        &[
            "Condition",
            "Adoption",
            "Mean calls",
            "ACS (calls >= 1)",
            "ACS (calls = 0)",
        ],
    );
    for c in &conditions {
        let a = mcp_adoption(&select(trials, c, None));
        out.push_str(&row(&[
            c.to_string(),
            format!("{} ({}/{})", pct(a.adoption), a.used, a.n),
            format!("{:.2}", a.mean_calls),
            opt_pct(a.acs_when_used),
            opt_pct(a.acs_when_unused),
        ]));
    }

    if !comparisons.is_empty() {
        out.push_str("\n## Welch's t-tests\n\n");
        for cmp in comparisons {
            out.push_str(&render_comparison(trials, cmp));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::trials::tests::trial;

    #[test]
    fn cell_format() {
        assert_eq!(stats_cell(&GroupStats::new(0.994, 0.036, 31)), "99.4% ± 3.6% (n=31)");
    }

    #[test]
    fn single_trial_table() {
        let ts = [trial("task_21", "C", 1.0, 1)];
        let r = render_report(
            &ts,
            &[Comparison {
                treatment: "C".into(),
                baseline: "A".into(),
                group: None,
            }],
        );
        let acs_rows: Vec<_> = r
            .lines()
            .skip_while(|l| !l.starts_with("## ACS"))
            .skip(4)
            .take_while(|l| l.starts_with('|'))
            .collect();
        assert_eq!(acs_rows, ["| C | 100.0% ± 0.0% (n=1) | 100.0% ± 0.0% (n=1) |"]);
        assert!(r.contains("C vs A: t-test not computed"));
    }

    #[test]
    fn fctc_two_decimals() {
        let mut ts = vec![
            trial("task_01", "B", 1.0, 0),
            trial("task_02", "B", 1.0, 0),
            trial("task_03", "B", 1.0, 0),
        ];
        ts[2].metrics.fctc = Some(3);
        let r = render_report(&ts, &[]);
        assert!(r.contains("| B | 100.0% (3/3) | 1.67 | 3 |"), "{r}");
    }

    #[test]
    fn refuses_single_trial_ttest() {
        let ts = [
            trial("task_21", "C", 1.0, 1),
            trial("task_21", "A", 0.5, 0),
            trial("task_22", "A", 0.7, 0),
        ];
        let line = render_comparison(
            &ts,
            &Comparison {
                treatment: "C".into(),
                baseline: "A".into(),
                group: Some(Group::G3),
            },
        );
        assert!(line.starts_with("C vs A (G3): t-test not computed"), "{line}");
        assert!(line.contains("n >= 2"));
    }
}

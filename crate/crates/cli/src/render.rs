//! Table and JSON rendering. JSON output is byte-stable: struct field
//! order is fixed and every collection is ordered.

use devhom::deviation::{ClaimReport, CurvatureStatus, DeviationReport, HomologyEntry};
use devhom::homalg::HomologyGroup;

pub fn entry_group_string(e: &HomologyEntry) -> String {
    let g = HomologyGroup {
        betti: e.betti,
        torsion: e
            .torsion
            .iter()
            .map(|t| t.parse().expect("torsion strings are integers"))
            .collect(),
    };
    g.to_string()
}

pub fn profile_line(entries: &[HomologyEntry]) -> String {
    entries
        .iter()
        .map(|e| format!("H{}={}", e.n, entry_group_string(e)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn chi_str(chi: Option<i64>) -> String {
    chi.map_or_else(|| "undefined".to_string(), |c| c.to_string())
}

pub fn deviation_table(report: &DeviationReport) -> String {
    let mut out = String::new();
    let model_note = if report.model_display == report.model {
        String::new()
    } else {
        format!(" {}", report.model_display)
    };
    out.push_str(&format!(
        "sigma: {}   model: {}{}   truncation: D={}\n",
        report.sigma, report.model, model_note, report.truncation
    ));
    out.push_str(&format!(
        "coefficients: {}; {}\n\n",
        report.conventions.coefficients, report.conventions.verdict_scope
    ));
    let mut rows: Vec<[String; 5]> = vec![[
        "formula".into(),
        "satisfied".into(),
        "H-profile".into(),
        "chi".into(),
        "aspherical".into(),
    ]];
    for f in &report.per_formula {
        rows.push([
            f.display.clone(),
            if f.satisfied { "yes".into() } else { "no".into() },
            profile_line(&f.homology),
            chi_str(f.chi),
            if f.aspherical { "yes".into() } else { "no".into() },
        ]);
    }
    out.push_str(&align(&rows));
    let quasi = if report.quasi_model {
        if report.is_model() {
            "yes".to_string()
        } else {
            format!("yes (up to D={})", report.truncation)
        }
    } else {
        "no".to_string()
    };
    out.push_str(&format!(
        "\nmodel: {}, quasi-model: {}, errant: {}\n",
        if report.is_model() { "yes" } else { "no" },
        quasi,
        if report.errant { "yes" } else { "no" }
    ));
    if !report.curvature_set.is_empty() {
        out.push_str(&format!(
            "curvature set: {}\n",
            report.curvature_set.join(", ")
        ));
    }
    out
}

pub fn claim_table(report: &ClaimReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "claim: {} ({})\n\n",
        report.claim,
        if report.asserted {
            "hard invariant"
        } else {
            "evidence only"
        }
    ));
    let mut rows: Vec<[String; 4]> = vec![[
        "case".into(),
        "computed".into(),
        "expected/other side".into(),
        "agree".into(),
    ]];
    for c in &report.cases {
        rows.push([
            c.label.clone(),
            c.lhs.clone(),
            c.rhs.clone(),
            if c.agree { "yes".into() } else { "NO".into() },
        ]);
    }
    out.push_str(&align4(&rows));
    out.push_str(&format!(
        "\nall cases agree: {}\n",
        if report.all_agree { "yes" } else { "NO" }
    ));
    out
}

pub fn curvature_table(
    partition: &[(String, CurvatureStatus, Vec<HomologyGroup>)],
    display: &dyn Fn(&str) -> String,
) -> String {
    let mut rows: Vec<[String; 3]> =
        vec![["formula".into(), "status".into(), "H-profile".into()]];
    for (phi, status, profile) in partition {
        let profile_str = if profile.is_empty() {
            "-".to_string()
        } else {
            profile
                .iter()
                .enumerate()
                .map(|(n, g)| format!("H{n}={g}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        rows.push([display(phi), status.to_string(), profile_str]);
    }
    align3(&rows)
}

fn align(rows: &[[String; 5]]) -> String {
    let mut widths = [0usize; 5];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(i, cell)| format!("{cell:<w$}", w = widths[i]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn align4(rows: &[[String; 4]]) -> String {
    let expanded: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r[0].clone(),
                r[1].clone(),
                r[2].clone(),
                r[3].clone(),
                String::new(),
            ]
        })
        .collect();
    align(&expanded)
}

fn align3(rows: &[[String; 3]]) -> String {
    let expanded: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r[0].clone(),
                r[1].clone(),
                r[2].clone(),
                String::new(),
                String::new(),
            ]
        })
        .collect();
    align(&expanded)
}

pub fn to_json_string<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

//! Plain-text tables for `--format table`.

use std::fmt::Write;

use gcoh_core::abelian::FgAbGroup;
use serde_json::Value;

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Object(o) if o.contains_key("free") => serde_json::from_value::<FgAbGroup>(v.clone())
            .map(|g| g.to_string())
            .unwrap_or_else(|_| v.to_string()),
        other => other.to_string(),
    }
}

fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{:<w$}", c, w = widths[j]))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).expect("string write");
    }
    out
}

fn sequence_table(result: &Value) -> String {
    let mut rows = vec![vec![
        "n".into(),
        "ker(1-σ*)".into(),
        "coker(1-σ*)".into(),
        "H^n(Γ)".into(),
    ]];
    for r in result["table"].as_array().into_iter().flatten() {
        let group = match &r["group"] {
            Value::Null => format!("ext({}, {})", text(&r["ker"]), text(&r["coker"])),
            g => text(g),
        };
        rows.push(vec![text(&r["n"]), text(&r["ker"]), text(&r["coker"]), group]);
    }
    let mut out = columns(&rows);
    writeln!(out, "Br(Γ) = {}", text(&result["brauer"])).expect("string write");
    out
}

fn report_table(report: &Value) -> String {
    let mut out = if report["subject"] == "correspondence" {
        format!("correspondence: {} spanning functions\n", text(&report["elements"]))
    } else {
        format!(
            "{}: {} elements, |m| <= {}, witnesses <= {}\n",
            text(&report["subject"]),
            text(&report["elements"]),
            text(&report["maxAbsM"]),
            text(&report["maxWitness"])
        )
    };
    let mut rows = vec![vec![
        "law".into(),
        "result".into(),
        "checked".into(),
        "counterexample".into(),
    ]];
    for l in report["laws"].as_array().into_iter().flatten() {
        let verdict = if l["pass"].as_bool() == Some(true) {
            "pass"
        } else {
            "FAIL"
        };
        rows.push(vec![
            text(&l["law"]),
            verdict.into(),
            text(&l["checked"]),
            text(&l["counterexample"]),
        ]);
    }
    out.push_str(&columns(&rows));
    out
}

fn tower_table(result: &Value) -> String {
    let mut rows = vec![vec!["m".into(), "lim".into(), "lim¹".into()]];
    for t in result["towers"].as_array().into_iter().flatten() {
        let lim = match t["limit"]["status"].as_str() {
            Some("group") => text(&t["limit"]["group"]),
            _ => format!("inconclusive ({})", text(&t["limit"]["reason"])),
        };
        rows.push(vec![text(&t["degree"]), lim, text(&t["limOne"]["status"])]);
    }
    let mut out = columns(&rows);
    for s in result["HGamma"].as_array().into_iter().flatten() {
        let g = if s["groupDetermined"].as_bool() == Some(true) {
            text(&s["group"])
        } else {
            "undetermined".into()
        };
        writeln!(out, "H^{}(Γ) = {}", text(&s["n"]), g).expect("string write");
    }
    out
}

pub fn table(command: &str, result: &Value) -> String {
    match command {
        "torus" | "solenoid" | "simplicial" => sequence_table(result),
        "tower" => tower_table(result),
        "groupoid-verify" => result["reports"]
            .as_array()
            .into_iter()
            .flatten()
            .map(report_table)
            .collect::<Vec<_>>()
            .join("\n"),
        _ => report_table(&result["report"]),
    }
}

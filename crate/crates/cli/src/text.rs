//! Plain-text rendering of reports, for `--text`.

use std::fmt::Write;

use serde_json::Value;

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    let command = report["command"].as_str().unwrap_or("?");
    let _ = writeln!(out, "hocoh {command}");
    if let Some(name) = report["problem"].as_str().filter(|s| !s.is_empty()) {
        let _ = writeln!(out, "problem: {name}");
    }
    if let Some(field) = report["field"].as_str() {
        let _ = writeln!(
            out,
            "field: {field}  q_max: {}  p_max: {}{}",
            report["q_max"],
            report["p_max"],
            if report["recheck"] == Value::Bool(true) { "  (recheck)" } else { "" }
        );
    }
    let result = &report["result"];
    match command {
        "selftest" => selftest(&mut out, result),
        "ideals" => ideals(&mut out, result),
        "info" => tree(&mut out, result, 0),
        _ => modules(&mut out, result),
    }
    let _ = writeln!(out, "{}", if report["pass"] == Value::Bool(true) { "PASS" } else { "FAIL" });
    out
}

fn selftest(out: &mut String, result: &Value) {
    for c in result["checks"].as_array().into_iter().flatten() {
        let mark = if c["pass"] == Value::Bool(true) { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{mark} {}: {}", c["name"].as_str().unwrap_or(""), c["actual"]);
        if c["pass"] != Value::Bool(true) {
            let _ = writeln!(out, "     expected {}", c["expected"]);
        }
    }
}

fn ideals(out: &mut String, result: &Value) {
    let _ = writeln!(
        out,
        "dim A = {}, dim I = {}, dim A·I_Σ = {}, J stabilizes at q = {}",
        result["algebra_dim"], result["dim_augmentation_ideal"], result["dim_sigma_ideal"], result["stabilization_q"]
    );
    let _ = writeln!(out, "{:>4} {:>8} {:>6}", "q", "dim J_q", "N(q)");
    for r in result["rows"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "{:>4} {:>8} {:>6}", r["q"].to_string(), r["dim_j"].to_string(), r["n"].to_string());
    }
}

fn grid(out: &mut String, g: &Value) {
    let rows = g.as_array().cloned().unwrap_or_default();
    let width = rows.first().and_then(|r| r.as_array()).map_or(0, |r| r.len());
    let _ = write!(out, "  {:>4}", "q\\p");
    for p in 0..width {
        let _ = write!(out, " {p:>5}");
    }
    out.push('\n');
    for (q, row) in rows.iter().enumerate() {
        let _ = write!(out, "  {:>4}", q + 1);
        for d in row.as_array().into_iter().flatten() {
            let _ = write!(out, " {:>5}", d.to_string());
        }
        out.push('\n');
    }
}

fn modules(out: &mut String, result: &Value) {
    if let Some(t) = result.get("trivial_action") {
        let ns: Vec<String> = t.as_array().into_iter().flatten().map(|r| r["n"].to_string()).collect();
        let _ = writeln!(out, "layers J_q/J_(q+1) carry trivial action, N(q) = [{}]", ns.join(", "));
    }
    if let Some(v) = result.get("vanishing") {
        let _ = writeln!(
            out,
            "vanishing on {}: {}",
            v["module"].as_str().unwrap_or(""),
            if v["pass"] == Value::Bool(true) { "ok" } else { "FAIL" }
        );
    }
    for m in result["modules"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "module {} [{}]",
            m["module"].as_str().unwrap_or(""),
            if m["pass"] == Value::Bool(true) { "ok" } else { "FAIL" }
        );
        if m.get("grid").is_some() {
            let _ = writeln!(out, " dim H_q^p:");
            grid(out, &m["grid"]);
        }
        for r in m["rows"].as_array().into_iter().flatten() {
            let _ = writeln!(
                out,
                "  q={} dim Hom_A(J_q,V)={} rank alpha={} H^1 cocycle={} ext={}",
                r["q"], r["hom_dim"], r["alpha_rank"], r["cocycle"], r["ext"]
            );
        }
        for s in m["sequences"].as_array().into_iter().chain(m["les"].as_array()).flatten() {
            let dims: Vec<String> = s["degrees"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|d| format!("({},{},{})", d["dim_h_q"], d["dim_h_q_plus_1"], d["dim_layer_ext"]))
                .collect();
            let _ = writeln!(
                out,
                "  q={} sequence {} dims {}",
                s["q"],
                if s["exact"] == Value::Bool(true) { "exact" } else { "NOT exact" },
                dims.join(" ")
            );
        }
        for key in ["q1_vs_bar", "p1_vs_cocycle", "power_identification", "h0_annihilator_vs_inductive"] {
            let rows = m[key].as_array().cloned().unwrap_or_default();
            if rows.is_empty() {
                continue;
            }
            let bad = rows.iter().filter(|r| r["agree"] != Value::Bool(true)).count();
            let _ = writeln!(out, "  {key}: {} checks, {bad} disagreements", rows.len());
        }
        if let Some(c) = m.get("collapse") {
            let _ = writeln!(out, "  collapse applies: {}, constant in q: {}", c["applies"], c["constant_in_q"]);
        }
    }
}

fn tree(out: &mut String, v: &Value, indent: usize) {
    if let Value::Object(map) = v {
        for (k, val) in map {
            match val {
                Value::Object(_) => {
                    let _ = writeln!(out, "{:indent$}{k}:", "");
                    tree(out, val, indent + 2);
                }
                _ => {
                    let _ = writeln!(out, "{:indent$}{k}: {val}", "");
                }
            }
        }
    }
}

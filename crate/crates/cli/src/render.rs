use std::fmt::Write;

use milnor_core::class_engine::{RouteOutcome, VarietyKind, VarietyReport};
use milnor_core::{ChowClass, ClassReport, Verdict};

pub fn json(report: &ClassReport) -> serde_json::Result<String> {
    serde_json::to_string_pretty(report)
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Agree => "AGREE",
        Verdict::Disagree => "DISAGREE",
        Verdict::Single => "SINGLE",
        Verdict::Unavailable => "UNAVAILABLE",
    }
}

fn header(report: &ClassReport, out: &mut String) {
    for w in &report.warnings {
        let _ = writeln!(out, "{w}");
    }
    let _ = writeln!(
        out,
        "ambient P^{}  transversality {}",
        report.ambient_dim,
        if report.transversality_asserted {
            "asserted"
        } else {
            "not asserted"
        }
    );
}

fn kind(v: &VarietyReport) -> &'static str {
    match v.kind {
        VarietyKind::Hypersurface => "hypersurface",
        VarietyKind::Intersection => "intersection",
    }
}

fn outcome_text(o: &RouteOutcome) -> String {
    match (&o.class, &o.note) {
        (Some(c), _) => c.to_string(),
        (None, Some(note)) => format!("n/a ({note})"),
        (None, None) => "n/a".to_string(),
    }
}

pub fn text(report: &ClassReport) -> String {
    let mut out = String::new();
    header(report, &mut out);
    for v in &report.varieties {
        let degrees: Vec<String> = v.degrees.iter().map(i64::to_string).collect();
        let _ = writeln!(
            out,
            "\n{} ({}, dim {}, degrees {})",
            v.name,
            kind(v),
            v.dim,
            degrees.join(",")
        );
        let _ = writeln!(out, "  [X]   = {}", v.fundamental_class);
        let _ = writeln!(out, "  c^FJ  = {}", v.cfj);
        match &v.csm {
            Some(c) => {
                let _ = writeln!(out, "  c^SM  = {}  ({})", c.class, c.source);
            }
            None => {
                let _ = writeln!(out, "  c^SM  = n/a");
            }
        }
        if let Some(p) = &v.csm_product {
            let _ = writeln!(out, "  c^SM (product formula) = {p}");
        }
        if let Some(chi) = &v.euler_characteristic {
            let _ = writeln!(out, "  chi   = {chi}");
        }
        for o in &v.milnor {
            let _ = writeln!(out, "  M[{}] = {}", o.route, outcome_text(o));
        }
        let _ = writeln!(out, "  verdict: {}", verdict_label(v.verdict));
    }
    out
}

fn reference(v: &VarietyReport) -> Option<&ChowClass> {
    v.milnor.iter().find_map(|o| o.class.as_ref())
}

pub fn crosscheck(report: &ClassReport) -> String {
    let mut out = String::new();
    header(report, &mut out);
    let name_width = report
        .varieties
        .iter()
        .map(|v| v.name.chars().count())
        .max()
        .unwrap_or(0)
        .max("variety".len());
    let _ = writeln!(
        out,
        "{:<name_width$}  {:<10}  {:<9}  milnor class",
        "variety", "route", "status"
    );
    for v in &report.varieties {
        let first = reference(v);
        for o in &v.milnor {
            let status = match (&o.class, first) {
                (None, _) => "n/a",
                (Some(c), Some(f)) if c == f => "AGREE",
                _ => "DISAGREE",
            };
            let _ = writeln!(
                out,
                "{:<name_width$}  {:<10}  {:<9}  {}",
                v.name,
                o.route.to_string(),
                status,
                outcome_text(o)
            );
        }
    }
    out.push('\n');
    for v in &report.varieties {
        let computed = v.milnor.iter().filter(|o| o.class.is_some()).count();
        let _ = writeln!(
            out,
            "{}: {} over {} routes",
            v.name,
            verdict_label(v.verdict),
            computed
        );
    }
    out
}

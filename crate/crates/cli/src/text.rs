//! Plain-text rendering of report documents.

use std::fmt::Write;

use crate::report::{CertificateDoc, LineDoc, ReportDocument, ResultPayload, WeightDim};

fn lines(out: &mut String, name: &str, ls: &[LineDoc]) {
    if ls.is_empty() {
        let _ = writeln!(out, "  {name}: 0");
    }
    for l in ls {
        let _ = writeln!(
            out,
            "  {name}: weight {} dim {} [{}]",
            l.weight,
            l.dim,
            l.basis.join(", ")
        );
    }
}

fn dims(ds: &[WeightDim]) -> String {
    ds.iter()
        .map(|d| format!("{}:{}", d.weight, d.dim))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn certificate(out: &mut String, c: &CertificateDoc) {
    let window = c.window.map_or("finite".to_string(), |w| w.to_string());
    let _ = writeln!(
        out,
        "certificate: {} (window {window})",
        if c.certified {
            "certified"
        } else {
            "NOT certified"
        }
    );
    for e in &c.entries {
        if let Some(coef) = &e.coefficient {
            let _ = writeln!(
                out,
                "  {} on {}: coefficient {coef}, roots {:?}, stable beyond index {}",
                e.direction, e.module, e.roots, e.bound
            );
        }
    }
}

pub fn render(doc: &ReportDocument) -> String {
    let mut out = String::new();
    match &doc.result {
        ResultPayload::Jacquet(j) => {
            let _ = writeln!(out, "{}", j.representation);
            for d in &j.degrees {
                let _ = writeln!(out, "H^{} J_P = {}", d.degree, d.text);
            }
        }
        ResultPayload::Cohomology(c) => {
            let _ = writeln!(out, "{}-cohomology of {}", c.direction, c.module);
            lines(&mut out, "H^0", &c.h0);
            lines(&mut out, "H^1", &c.h1);
        }
        ResultPayload::BggCheck(b) => {
            let _ = writeln!(out, "{}: {}", b.map, verdict(b.pass));
            let _ = writeln!(out, "  equivariant: {}", b.equivariant);
            let _ = writeln!(out, "  cokernel dims: {}", dims(&b.cokernel_dims));
            let _ = writeln!(out, "  simple dims:   {}", dims(&b.simple_dims));
        }
        ResultPayload::Kostant(k) => {
            let _ = writeln!(out, "n-cohomology of {}: {}", k.module, verdict(k.pass));
            lines(&mut out, "H^0", &k.h0);
            lines(&mut out, "H^1", &k.h1);
        }
        ResultPayload::ExtBound(e) => {
            let _ = writeln!(out, "{}", e.group);
            let _ = writeln!(
                out,
                "verdict: {} (dimension {}..={})",
                e.verdict, e.dimension[0], e.dimension[1]
            );
            if !e.fired.is_empty() {
                let fired: Vec<String> = e.fired.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(out, "cases fired: {}", fired.join(", "));
            }
            for r in &e.relations {
                let _ = writeln!(out, "  {}: {} ({})", r.relation, r.holds, r.provenance);
            }
            let _ = writeln!(out, "H^1 J_P({}) = {}", e.target, e.target_h1.text);
            for m in &e.matched {
                let _ = writeln!(out, "  matched: {}", m.text);
            }
        }
        ResultPayload::LesCheck(l) => {
            let _ = writeln!(out, "{}: {}", l.sequence, verdict(l.pass));
            for t in [&l.sub, &l.middle, &l.quotient] {
                let euler: Vec<String> = t
                    .euler
                    .iter()
                    .map(|e| format!("{:+} {}", e.multiplicity, e.character.text))
                    .collect();
                let _ = writeln!(out, "  chi({}) = {}", t.representation, euler.join(", "));
            }
        }
    }
    if let Some(c) = &doc.certificate {
        certificate(&mut out, c);
    }
    out
}

use std::fmt::{Display, Write};

use lss_core::decomp::{DecompositionReport, Verdict};
use lss_core::gbasis::GbReport;
use lss_core::variety::SampleJson;
use lss_core::{Graph, PrimeComponent, VertexSet};

fn graph_line(g: &lss_core::GraphJson) -> String {
    Graph::from_json(g).map(|g| g.to_string()).unwrap_or_default()
}

fn verdict<T: Display + Copy>(v: &Verdict<T>) -> String {
    match v {
        Verdict::Theorem { value, .. } => value.to_string(),
        Verdict::HypothesisViolated { hypothesis } => format!("n/a (hypothesis violated: {hypothesis})"),
    }
}

fn members(s: VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// `Q_S` as `x_i,y_i (i ∈ S) + I_K{..} + I_K{A|B} ...`
pub fn prime_component(p: &PrimeComponent) -> String {
    let mut parts = Vec::new();
    if !p.s.is_empty() {
        parts.push(format!("(x_i,y_i : i in {})", p.s));
    }
    for c in &p.comps {
        match c.blocks {
            Some((_, b)) if b.is_empty() => {}
            Some((a, b)) => parts.push(format!("I_K{{{}|{}}}", members(a), members(b))),
            None => parts.push(format!("I_K{{{}}}", members(c.vertices))),
        }
    }
    if parts.is_empty() {
        "(0)".into()
    } else {
        parts.join(" + ")
    }
}

pub fn gb(r: &GbReport) -> String {
    let mut out = String::new();
    writeln!(out, "graph: {}", graph_line(&r.graph)).unwrap();
    writeln!(out, "field: {}", r.field).unwrap();
    writeln!(out, "basis of Pi_G ({} elements):", r.elements.len()).unwrap();
    let width = r.elements.iter().map(|e| e.poly.len()).max().unwrap_or(0);
    for e in &r.elements {
        let paths: Vec<String> = e
            .witnesses
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-"))
            .collect();
        writeln!(out, "  {:<5} {:<width$}  {}", format!("[{}]", e.kind), e.poly, paths.join("  ")).unwrap();
    }
    match (&r.certificate, &r.note) {
        (Some(c), _) => writeln!(
            out,
            "certificate: is_gb={} reduced_match={} initial_squarefree={}",
            c.is_gb, c.reduced_match, c.initial_squarefree
        )
        .unwrap(),
        (None, Some(note)) => writeln!(out, "note: {note}").unwrap(),
        (None, None) => {}
    }
    out
}

pub fn invariants(r: &DecompositionReport) -> String {
    let mut out = String::new();
    writeln!(out, "graph: {}", graph_line(&r.graph)).unwrap();
    writeln!(out, "field: {}   n = {}   b = {}", r.field, r.n, r.b).unwrap();
    writeln!(out, "dim T/L_G: {}", verdict(&r.dim)).unwrap();
    writeln!(out, "unmixed:   {}", verdict(&r.unmixed)).unwrap();
    writeln!(out, "prime:     {}", verdict(&r.prime)).unwrap();
    writeln!(out, "radical:   {} ({}: {})", r.radical.value, r.radical.hypothesis, r.radical.reason).unwrap();
    out
}

pub fn decomposition(r: &DecompositionReport, verified: Option<bool>) -> String {
    let mut out = invariants(r);
    let note = if r.hypothesis_holds { "" } else { " [hypothesis sqrt(-1) not in K violated]" };
    writeln!(out, "minimal primes Q_S, S in M(G) ({}){note}:", r.minimal_primes.len()).unwrap();
    let width = r.minimal_primes.iter().map(|p| p.s.to_string().len()).max().unwrap_or(2);
    for p in &r.minimal_primes {
        writeln!(out, "  S = {:<width$}  height {:>2}  {}", p.s.to_string(), p.height, prime_component(p)).unwrap();
    }
    if let Some(v) = verified {
        writeln!(out, "L_G = intersection of the Q_S: {v}").unwrap();
    }
    out
}

pub fn sample(s: &SampleJson, vanishes: bool) -> String {
    let mut out = String::new();
    writeln!(out, "S = {}", s.s).unwrap();
    for (v, [x, y]) in &s.assignment {
        writeln!(out, "  {v} -> ({x}, {y})").unwrap();
    }
    writeln!(out, "vanishes on L_G: {vanishes}").unwrap();
    out
}

//! Human-readable renderings of the library reports.

use std::fmt::Write;

use gkset::bounds::BoundReport;
use gkset::extremal::ExtremalReport;
use gkset::pipeline::PipelineReport;
use gkset::{ExactResult, GkSet, Membership, Rational};

use crate::AnalyzeDoc;

fn list(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn frac(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub(crate) fn analyze(doc: &AnalyzeDoc) -> String {
    let mut s = String::new();
    writeln!(s, "n = {}, m = {}, components = {}", doc.n, doc.m, doc.components).unwrap();
    writeln!(s, "omega = {} ({} back edges)", doc.omega, doc.back_edges.len()).unwrap();
    match &doc.structure {
        Some(cs) => {
            writeln!(s, "cycles pairwise vertex-disjoint: yes").unwrap();
            for (i, c) in cs.cycles.iter().enumerate() {
                let pendant = match c.pendant_anchor {
                    Some(a) => format!(", pendant at {a}"),
                    None => String::new(),
                };
                writeln!(s, "  cycle {i}: length {}{pendant}: {}", c.length, list(&c.vertices)).unwrap();
            }
            writeln!(s, "gamma: {} vertices", cs.gamma_vertices.len()).unwrap();
            writeln!(s, "contracted: n = {}, m = {}", cs.contracted_n, cs.contracted_m).unwrap();
        }
        None => {
            let w = doc.overlap_witness.expect("witness when cycles overlap");
            writeln!(s, "cycles pairwise vertex-disjoint: no (vertex {w} lies on two cycles)").unwrap();
        }
    }
    s
}

pub(crate) fn bound(r: &BoundReport) -> String {
    let mut s = String::new();
    writeln!(s, "k = {}, n = {}, omega = {}", r.k, r.n, r.omega).unwrap();
    writeln!(s, "base (k-1)(n-omega)/k  {}  ceil {}", frac(&r.base), r.base_ceil).unwrap();
    if let (Some(b), Some(w)) = (r.overlap_bound, r.overlap_witness) {
        writeln!(s, "overlap slack          {}  at vertex {w}  bound {b}", frac(&r.overlap_slack)).unwrap();
    }
    for p in &r.pendant_slacks {
        writeln!(
            s,
            "pendant slack          {}  cycle {} (length {}, anchor {})",
            frac(&p.slack),
            p.cycle,
            p.length,
            p.anchor
        )
        .unwrap();
    }
    if let Some(b) = r.pendant_bound {
        writeln!(s, "pendant bound          {b}").unwrap();
    }
    for c in &r.gamma_slacks {
        let bonus = if c.non_r_bonus { "  +1 (not a union of k-blocks)" } else { "" };
        writeln!(s, "gamma component        size {} residue {} slack {}{bonus}", c.size, c.residue, frac(&c.slack))
            .unwrap();
    }
    if let Some(b) = r.gamma_bound {
        writeln!(s, "gamma bound            {b}").unwrap();
    }
    writeln!(s, "combined               {}", r.combined).unwrap();
    writeln!(s, "conservative           {}", r.conservative).unwrap();
    s
}

pub(crate) fn gkset(g: &GkSet) -> String {
    let mut s = String::new();
    writeln!(s, "k = {}, |S| = {}, guarantee = {}", g.k, g.len(), g.guarantee).unwrap();
    writeln!(s, "S = {}", list(&g.vertices)).unwrap();
    writeln!(s, "phase A removed {}", list(&g.phase_a_removed)).unwrap();
    writeln!(s, "phase B removed {}", list(&g.phase_b_removed)).unwrap();
    writeln!(s, "max component {} (< k: {})", g.max_component, yes_no(g.max_component < g.k)).unwrap();
    s
}

pub(crate) fn exact(r: &ExactResult) -> String {
    let method = match r.method {
        gkset::Method::ForestGreedy => "forest-greedy",
        gkset::Method::BranchBound => "branch-bound",
        gkset::Method::BruteForce => "brute-force",
    };
    let mut s = String::new();
    writeln!(s, "alpha = {}, tau = {}", r.alpha, r.tau).unwrap();
    writeln!(s, "witness = {}", list(&r.witness)).unwrap();
    writeln!(s, "method = {method}, nodes explored = {}, optimal = {}", r.nodes_explored, yes_no(r.optimal)).unwrap();
    s
}

pub(crate) fn extremal(r: &ExtremalReport) -> String {
    let mut s = String::new();
    writeln!(s, "k = {}, n = {}, omega = {}", r.k, r.n, r.omega).unwrap();
    match r.overlap_witness {
        Some(w) => writeln!(s, "(i)   cycles vertex-disjoint: no (vertex {w})").unwrap(),
        None => writeln!(s, "(i)   cycles vertex-disjoint: yes").unwrap(),
    }
    if let Some(ok) = r.condition_ii {
        writeln!(s, "(ii)  cycle lengths 1 mod k: {}", yes_no(ok)).unwrap();
        for c in r.cycles.iter().filter(|c| !c.holds) {
            writeln!(s, "      length {} has residue {}", c.length, c.residue).unwrap();
        }
    }
    if let Some(ok) = r.condition_iii {
        writeln!(s, "(iii) gamma components are k-block trees: {}", yes_no(ok)).unwrap();
        for c in r.gamma_components.iter().filter(|c| !c.holds) {
            writeln!(s, "      component of size {} fails: {}", c.size, list(&c.vertices)).unwrap();
        }
    }
    writeln!(s, "extremal: {}", yes_no(r.is_extremal)).unwrap();
    s
}

pub(crate) fn membership(m: &Membership, k: usize) -> String {
    let mut s = String::new();
    match m {
        Membership::Member(d) => {
            writeln!(s, "member: {} blocks of {k}", d.blocks.len()).unwrap();
            for b in &d.blocks {
                writeln!(s, "  {}", list(b)).unwrap();
            }
        }
        Membership::NotMember { witness, reason } => match witness {
            Some(w) => writeln!(s, "not a member: {reason} (vertex {w})").unwrap(),
            None => writeln!(s, "not a member: {reason}").unwrap(),
        },
    }
    s
}

pub(crate) fn pipeline(r: &PipelineReport) -> String {
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    let exact = match (r.exact, r.exact_proven) {
        (Some(a), true) => a.to_string(),
        (Some(a), false) => format!(">= {a} (budget exhausted)"),
        (None, _) => "- (too large)".to_string(),
    };
    let rows = [
        ("k", r.k.to_string()),
        ("n", r.n.to_string()),
        ("m", r.m.to_string()),
        ("omega", r.omega.to_string()),
        ("bound", r.base_ceil.to_string()),
        ("combined bound", r.combined_bound.to_string()),
        ("constructed", r.constructed.to_string()),
        ("refined", opt(r.refined)),
        ("exact", exact),
        ("extremal", yes_no(r.extremal).to_string()),
    ];
    let mut s = String::new();
    for (name, value) in rows {
        writeln!(s, "{name:<16}{value}").unwrap();
    }
    s
}

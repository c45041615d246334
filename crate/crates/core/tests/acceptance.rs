//! End-to-end acceptance checks. Each criterion prints one `PASS`/`FAIL`
//! line; the process exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use gkset::bounds::BoundReport;
use gkset::exact::DEFAULT_BUDGET;
use gkset::generators::{random_tree, seeded_rng, sparse_random, SeededRng};
use gkset::pipeline::run_pipeline;
use gkset::*;
use rand::Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(g: &Graph, k: usize) -> usize {
    exact_alpha(g, k, DEFAULT_BUDGET).expect("exact solver").alpha
}

fn bounds_below(rep: &BoundReport, alpha: usize, what: &str) -> std::result::Result<(), String> {
    ensure(rep.combined <= alpha && rep.conservative <= alpha, || {
        format!("{what}: combined {} conservative {} exceed alpha {alpha}", rep.combined, rep.conservative)
    })
}

fn worked_example() -> Outcome {
    let file = parse_graph(include_str!("data/figure1_k3.txt")).map_err(|e| e.to_string())?;
    ensure(file == figure1_graph(3), || "fixture differs from generated k=3 graph".into())?;
    ensure(file.n() == 17 && file.m() == 18, || "fixture size".into())?;
    for k in 2..=4 {
        let g = figure1_graph(k);
        let r = run_pipeline(&g, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let target = 5 * (k - 1);
        ensure(r.n == 5 * k + 2 && r.omega == 2, || format!("k={k}: n={} omega={}", r.n, r.omega))?;
        ensure(r.base_ceil == target, || format!("k={k}: base_ceil {}", r.base_ceil))?;
        ensure(r.extremal, || format!("k={k}: not extremal"))?;
        ensure(r.refined == Some(target), || format!("k={k}: refined {:?}", r.refined))?;
        ensure(r.exact == Some(target) && r.exact_proven, || format!("k={k}: exact {:?}", r.exact))?;
    }
    Ok("k=2,3,4 all reach 5(k-1)".into())
}

fn closed_forms() -> Outcome {
    let mut checked = 0;
    for k in 2..=5 {
        for n in 3..=14 {
            let p = brute_force_alpha(&Graph::path(n), k).unwrap().alpha;
            let c = brute_force_alpha(&Graph::cycle(n), k).unwrap().alpha;
            ensure(path_alpha(n, k).unwrap() == p, || format!("P{n} k={k}: brute {p}"))?;
            ensure(cycle_alpha(n, k).unwrap() == c, || format!("C{n} k={k}: brute {c}"))?;
            checked += 2;
        }
    }
    Ok(format!("{checked} path/cycle values"))
}

fn tree_instances() -> Vec<(Graph, usize)> {
    let mut rng = seeded_rng(2024);
    (0..500)
        .map(|i| {
            let k = 2 + i % 3;
            let t = if i % 3 == 0 {
                generate_r_tree(rng.gen_range(1..=12 / k), k, rng.gen()).unwrap().graph
            } else {
                random_tree(rng.gen_range(1..=12), &mut rng)
            };
            (t, k)
        })
        .collect()
}

fn tree_equivalence() -> Outcome {
    let mut equal = 0;
    for (i, (t, k)) in tree_instances().iter().enumerate() {
        let (n, k) = (t.n(), *k);
        let alpha = brute_force_alpha(t, k).unwrap().alpha;
        let floor = ((k - 1) * n).div_ceil(k);
        ensure(alpha >= floor, || format!("tree {i}: alpha {alpha} < {floor}"))?;
        let is_equal = alpha * k == (k - 1) * n;
        let predicted = n % k == 0 && r_membership(t, k).unwrap().is_member();
        ensure(is_equal == predicted, || format!("tree {i}: equality {is_equal}, membership says {predicted}"))?;
        equal += usize::from(is_equal);
    }
    ensure(equal > 0 && equal < 500, || "both directions must be exercised".into())?;
    Ok(format!("500 trees, {equal} attain equality"))
}

fn constructor_guarantee() -> Outcome {
    let mut rng = seeded_rng(7);
    let probs = [0.02, 0.05, 0.1, 0.3];
    let ks = [2, 3, 4, 5, 8];
    for i in 0..1000 {
        let n = rng.gen_range(1..=200);
        let g = gkset::generators::gnp(n, probs[i % 4], &mut rng);
        let k = ks[(i / 4) % 5];
        let s = construct_set(&g, k).map_err(|e| format!("graph {i}: {e}"))?;
        let guarantee = base_bound(n, cycle_space_dimension(&g), k).unwrap();
        ensure(s.len() >= guarantee, || format!("graph {i}: |S|={} < {guarantee}", s.len()))?;
        let largest = verify_set(&g, k, &s.vertices).unwrap();
        ensure(largest < k, || format!("graph {i}: component of size {largest}"))?;
    }
    Ok("1000 graphs, zero violations".into())
}

fn small_graphs() -> Vec<(Graph, usize)> {
    random_graphs(500, 1, 14, &[0.1, 0.2, 0.3, 0.5], 55)
        .into_iter()
        .enumerate()
        .map(|(i, g)| (g, 2 + (i / 4) % 4))
        .collect()
}

fn exact_oracle() -> Outcome {
    let mut nodes = 0;
    for (i, (g, k)) in small_graphs().iter().enumerate() {
        let e = exact_alpha(g, *k, DEFAULT_BUDGET).map_err(|e| format!("graph {i}: {e}"))?;
        let b = brute_force_alpha(g, *k).unwrap();
        ensure(e.alpha == b.alpha, || format!("graph {i} k={k}: exact {} brute {}", e.alpha, b.alpha))?;
        ensure(
            gkset::constructor::is_gk_independent(g, *k, &e.witness).unwrap() && e.witness.len() == e.alpha,
            || format!("graph {i}: bad witness"),
        )?;
        nodes += e.nodes_explored;
    }
    Ok(format!("500 graphs agree ({nodes} search nodes)"))
}

/// Attaches `h` to `g` by one edge between random vertices.
fn attach(g: &Graph, h: &Graph, rng: &mut SeededRng) -> Graph {
    let offset = g.n();
    let a = rng.gen_range(0..g.n());
    let b = offset + rng.gen_range(0..h.n());
    g.disjoint_union(h).with_edges([(a, b)]).unwrap()
}

fn non_r_tree(k: usize, rng: &mut SeededRng) -> Graph {
    loop {
        let t = random_tree(k * rng.gen_range(1..=2), rng);
        if !r_membership(&t, k).unwrap().is_member() {
            return t;
        }
    }
}

/// Graphs aimed at each refinement clause, tagged with the clause.
fn engineered(rng: &mut SeededRng) -> Vec<(&'static str, Graph, usize)> {
    let mut out = Vec::new();
    for i in 0..50 {
        let k = 2 + i % 3;
        let g = loop {
            let g = gkset::generators::gnp(rng.gen_range(5..=13), 0.35, rng);
            if matches!(cycle_structure(&g), CycleAnalysis::NotVertexDisjoint { .. }) {
                break g;
            }
        };
        out.push(("overlap", g, k));
    }
    for i in 0..50 {
        let k = 2 + i % 3;
        let s = i / 3 % k;
        let q = (3..).find(|q| q % k == s).unwrap();
        let mut g = random_tree(rng.gen_range(1..=5), rng);
        for _ in 0..rng.gen_range(1..=2) {
            let anchor = rng.gen_range(0..g.n());
            let c = Graph::cycle(q);
            let base = g.n();
            g = g.disjoint_union(&c).with_edges([(anchor, base)]).unwrap();
        }
        out.push(("pendant", g, k));
    }
    for i in 0..50 {
        let k = 2 + i % 3;
        let mut g = Graph::cycle(rng.gen_range(3..=6));
        let size = loop {
            let s = rng.gen_range(1..=7);
            if s % k != 0 {
                break s;
            }
        };
        g = attach(&g, &random_tree(size, rng), rng);
        if rng.gen_bool(0.5) {
            g = attach(&g, &Graph::cycle(rng.gen_range(3..=4)), rng);
        }
        out.push(("gamma-residue", g, k));
    }
    for i in 0..50 {
        let k = 2 + i % 3;
        let g = Graph::cycle(rng.gen_range(3..=6));
        let g = attach(&g, &non_r_tree(k, rng), rng);
        out.push(("non-r", g, k));
    }
    out
}

fn clause_hit(tag: &str, rep: &BoundReport, k: usize, g: &Graph) -> bool {
    match tag {
        "overlap" => rep.overlap_bound.is_some(),
        "pendant" => {
            let s = cycle_structure(g).structure().map(|cs| cs.cycle_lengths()).unwrap_or_default();
            !rep.pendant_slacks.is_empty() && s.iter().all(|q| q % k == s[0] % k)
        }
        "gamma-residue" => rep.gamma_slacks.iter().any(|c| c.residue > 0),
        "non-r" => rep.gamma_slacks.iter().any(|c| c.non_r_bonus),
        _ => false,
    }
}

fn refined_soundness() -> Outcome {
    for (i, (t, k)) in tree_instances().iter().enumerate() {
        let alpha = brute_force_alpha(t, *k).unwrap().alpha;
        bounds_below(&refined_bound(t, *k).unwrap(), alpha, &format!("tree {i}"))?;
    }
    for (i, (g, k)) in small_graphs().iter().enumerate() {
        let alpha = brute_force_alpha(g, *k).unwrap().alpha;
        bounds_below(&refined_bound(g, *k).unwrap(), alpha, &format!("graph {i}"))?;
    }
    let mut rng = seeded_rng(606);
    let mut residues = std::collections::BTreeSet::new();
    let mut lifted = 0;
    for (i, (tag, g, k)) in engineered(&mut rng).iter().enumerate() {
        let rep = refined_bound(g, *k).unwrap();
        ensure(clause_hit(tag, &rep, *k, g), || format!("engineered {i} ({tag}) misses its clause"))?;
        if *tag == "pendant" {
            residues.extend(rep.pendant_slacks.iter().map(|p| (*k, p.length % k)));
        }
        let alpha = exact(g, *k);
        lifted += usize::from(rep.combined > rep.base_ceil);
        bounds_below(&rep, alpha, &format!("engineered {i} ({tag})"))?;
    }
    let want: usize = (2..=4).sum();
    ensure(residues.len() == want, || format!("pendant residues covered: {residues:?}"))?;
    Ok(format!("1200 instances sound, {lifted} of 200 engineered lift the base bound"))
}

fn extremal_round_trip() -> Outcome {
    let mut rng = seeded_rng(31337);
    let mut made = Vec::new();
    let mut seed = 0u64;
    while made.len() < 200 {
        seed += 1;
        let k = 2 + (seed as usize) % 2;
        let cycles = rng.gen_range(0..=2);
        let mults: Vec<usize> = (0..cycles).map(|_| rng.gen_range(1..=3)).collect();
        let blocks = rng.gen_range(usize::from(cycles == 0)..=3);
        let n = mults.iter().map(|a| a * k + 1).sum::<usize>() + blocks * k;
        if n > 14 {
            continue;
        }
        let inst = generate_extremal(cycles, &mults, blocks, k, seed).map_err(|e| e.to_string())?;
        made.push(inst);
    }
    for (i, inst) in made.iter().enumerate() {
        let (g, k) = (&inst.graph, inst.k);
        let omega = cycle_space_dimension(g);
        ensure(check_extremal(g, k).unwrap().is_extremal, || format!("instance {i}: check_extremal false"))?;
        let alpha = brute_force_alpha(g, k).unwrap().alpha;
        ensure(alpha * k == (k - 1) * (g.n() - omega), || {
            format!("instance {i}: alpha {alpha} n={} omega={omega}", g.n())
        })?;
    }
    for (i, inst) in made.iter().take(50).enumerate() {
        let k = inst.k;
        let h = add_leaf(&inst.graph, &mut rng);
        let alpha = brute_force_alpha(&h, k).unwrap().alpha;
        let omega = cycle_space_dimension(&h);
        ensure(alpha * k > (k - 1) * (h.n() - omega), || format!("perturbation {i}: equality survives"))?;
        ensure(!check_extremal(&h, k).unwrap().is_extremal, || format!("perturbation {i}: still reported extremal"))?;
    }
    Ok("200 extremal graphs exact, 50 perturbations strict".into())
}

fn best_time(g: &Graph, k: usize, runs: usize) -> Duration {
    (0..runs)
        .map(|_| {
            let start = Instant::now();
            let s = construct_set(g, k).unwrap();
            let t = start.elapsed();
            assert!(s.meets_guarantee());
            t
        })
        .min()
        .unwrap()
}

fn linear_scaling() -> Outcome {
    let mut rng = seeded_rng(1);
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, small, large) in [
        ("path", Graph::path(100_000), Graph::path(1_000_000)),
        ("sparse", sparse_random(100_000, 200_000, &mut rng), sparse_random(1_000_000, 2_000_000, &mut rng)),
    ] {
        best_time(&small, 3, 2);
        let ratio = best_time(&large, 3, 5).as_secs_f64() / best_time(&small, 3, 9).as_secs_f64();
        parts.push(format!("{name} {ratio:.2}"));
        ok &= (5.0..=20.0).contains(&ratio);
    }
    let summary = format!("time(1e6)/time(1e5): {}", parts.join(", "));
    if ok {
        Ok(summary)
    } else {
        Err(format!("{summary}; allowed range [5, 20]"))
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("worked example", worked_example),
        ("closed forms", closed_forms),
        ("tree equality characterization", tree_equivalence),
        ("constructor guarantee", constructor_guarantee),
        ("exact solver oracle", exact_oracle),
        ("refined bound soundness", refined_soundness),
        ("extremal round trip", extremal_round_trip),
        ("linear scaling", linear_scaling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfvs_core::embed::{digirth, enumerate_dicycles, euler_phi_total, Girth, PlanarDigraph};
use pfvs_core::instances::{brute_force_packing, brute_force_tau, Family, GeneratorSpec};
use pfvs_core::machinery::{check_lemma1, check_lemma2, max_dicycle_packing};
use pfvs_core::pipeline::{proof_records, solve_record, sweep_cell};
use pfvs_core::report::{Record, SolveRecord, Status};
use pfvs_core::solvers::{
    cover_arcs_greedy, fractional_tau_star, min_feedback_vertex_set, min_vertex_cover_of_arcs,
    SolverLimits,
};

type Q = BigRational;

/// Wall-clock limit for the full corpus solve.
const SWEEP_LIMIT: Duration = Duration::from_secs(600);

fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

fn theorem_bound(n: usize, g: usize) -> Q {
    let n = n as i64;
    match g {
        4 => q(5 * n - 5, 9),
        5 => q(2 * n - 5, 4),
        _ => q(2 * n - 6, g as i64),
    }
}

fn claim_bound(outer: bool, k: usize, g: usize) -> Q {
    let (k, gi) = (k as i64, g as i64);
    let slope = q(3 * (gi - 2) * k, 2);
    if outer {
        slope + q(if g >= 6 { 6 } else { 3 }, 1)
    } else {
        slope + q(3 * gi, 2) + q(if g >= 6 { 3 } else { 0 }, 1)
    }
}

fn girth_of(g: &PlanarDigraph) -> Option<usize> {
    match digirth(g) {
        Girth::Finite(x) => Some(x),
        Girth::Infinite => None,
    }
}

struct Corpus {
    graphs: Vec<(String, GeneratorSpec, PlanarDigraph)>,
    solved: Vec<SolveRecord>,
    solve_time: Duration,
}

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn theorem_suite(c: &Corpus) -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for ((_, _, g), r) in c.graphs.iter().zip(&c.solved) {
        let Some(gv) = girth_of(g) else { continue };
        if r.status != Status::Ok || !(4..=8).contains(&gv) || !(6..=24).contains(&g.n()) {
            continue;
        }
        count += 1;
        let tau = r.tau.expect("solved");
        if q(tau as i64, 1) > theorem_bound(g.n(), gv) {
            bad.push(r.id.clone());
        }
    }
    check(
        count >= 200 && bad.is_empty() && c.solve_time < SWEEP_LIMIT,
        format!(
            "{count} instances, {} violations, sweep {:.1}s (limit {}s) {bad:?}",
            bad.len(),
            c.solve_time.as_secs_f64(),
            SWEEP_LIMIT.as_secs()
        ),
    )
}

fn ly_identity(c: &Corpus) -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for r in &c.solved {
        if let (Some(a), Some(nu)) = (r.fas, r.nu) {
            count += 1;
            if a != nu {
                bad.push(format!("{}: |A|={a} nu={nu}", r.id));
            }
        }
    }
    check(
        count >= 150 && bad.is_empty(),
        format!(
            "{count} instances with |A| = nu checked, {} mismatches {bad:?}",
            bad.len()
        ),
    )
}

fn proof_trace(c: &Corpus, limits: SolverLimits) -> Outcome {
    let (mut instances, mut nodes, mut intersecting) = (0, 0, 0);
    let mut kinds = [0usize; 4];
    let mut bad = Vec::new();
    for (id, _, g) in &c.graphs {
        let Some(gv) = girth_of(g) else { continue };
        if gv < 4 {
            continue;
        }
        instances += 1;
        let recs = proof_records(id, g, limits);
        let Record::Proof(summary) = &recs[0] else {
            unreachable!()
        };
        if summary.status != Status::Ok {
            bad.push(format!("{id}: {:?}", summary.message));
            continue;
        }
        // (a) the regions partition the faces, so phi sums to 6n - 12
        let total: i64 = recs
            .iter()
            .filter_map(|r| match r {
                Record::Region(x) => Some(x.phi),
                _ => None,
            })
            .sum();
        let expected = 6 * g.n() as i64 - 12;
        if total != expected || euler_phi_total(g) != Ok(expected) {
            bad.push(format!("{id}: phi total {total} != {expected}"));
        }
        for r in &recs[1..] {
            let Record::Region(x) = r else { continue };
            nodes += 1;
            for p in &x.pieces {
                kinds[u8::from(p.kind) as usize] += 1;
            }
            let outer = x.node == "outer";
            // (b), (c)
            if q(x.phi, 1) < claim_bound(outer, x.k, x.g) || !x.claim_holds {
                bad.push(format!("{id} node {}: phi {} below bound", x.node, x.phi));
            }
            // (d) boundary cycles U = C_0..C_k (k + 1 of them) or the k roots
            if let Some(b) = x.t3_bound {
                intersecting += 1;
                let u = if outer { x.k } else { x.k + 1 } as i64;
                if b != 2 * u - 4 || x.t3 as i64 > b {
                    bad.push(format!("{id} node {}: T3 {} > {}", x.node, x.t3, b));
                }
            }
            if !x.all_hold {
                bad.push(format!("{id} node {}: a region check failed", x.node));
            }
        }
        if !summary.verdicts.values().all(|&v| v) {
            bad.push(format!("{id}: {:?}", summary.verdicts));
        }
    }
    check(
        instances > 0 && bad.is_empty(),
        format!(
            "{instances} instances, {nodes} regions, {intersecting} with intersecting boundaries, pieces of type 1/2/3: {}/{}/{}, {} failures {bad:?}",
            kinds[1],
            kinds[2],
            kinds[3],
            bad.len()
        ),
    )
}

fn lemma_verifiers(c: &Corpus) -> Outcome {
    let mut bad = Vec::new();
    let mut h_count = 0;
    let mut seed = 0;
    while h_count < 150 && seed < 5000 {
        seed += 1;
        let Some(h) = common::random_bipartite(seed) else {
            continue;
        };
        h_count += 1;
        match check_lemma1(&h) {
            Ok(true) => {}
            other => bad.push(format!("lemma 1 on bipartite seed {seed}: {other:?}")),
        }
    }
    let mut s_count = 0;
    for (i, (id, _, g)) in c.graphs.iter().enumerate() {
        let Some(s) = common::random_face_set(g, i as u64) else {
            continue;
        };
        s_count += 1;
        match check_lemma2(g, &s) {
            Ok(true) => {}
            other => bad.push(format!("lemma 2 on {id}: {other:?}")),
        }
    }
    // equality cases: one L-cycle with S its inner face, and K_{2,2}
    let mut equal = true;
    for len in 3..9 {
        let arcs: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        let pts: Vec<(f64, f64)> = (0..len)
            .map(|i| {
                let t = std::f64::consts::PI + std::f64::consts::TAU * i as f64 / len as f64;
                (t.cos(), t.sin())
            })
            .collect();
        let g = pfvs_core::instances::embedding_from_coordinates(&pts, arcs, Girth::Infinite)
            .expect("cycle embeds");
        let inner = (0..2)
            .find(|&f| Some(f) != g.outer_face(0))
            .expect("two faces");
        let rest = 3 * len as i64 - 6;
        let bound = 3 * len as i64 + 6 - 12;
        equal &= rest == bound && check_lemma2(&g, &[inner]) == Ok(true);
    }
    let k22 = pfvs_core::instances::embedding_from_coordinates(
        &[(0.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, -1.0)],
        vec![(0, 2), (1, 2), (0, 3), (1, 3)],
        Girth::Infinite,
    )
    .expect("K22 embeds");
    let h = pfvs_core::machinery::IncidenceBipartite::from_plane_graph(k22, 2).expect("bipartite");
    let big = h.face_degrees.iter().filter(|&&d| d >= 6).count();
    equal &= big == 0 && 2 * h.u.len() - 4 == 0 && check_lemma1(&h) == Ok(true);
    check(
        h_count >= 100 && s_count >= 100 && bad.is_empty() && equal,
        format!(
            "lemma 1 on {h_count} bipartite graphs, lemma 2 on {s_count} face sets, equality cases {}, {} failures {bad:?}",
            if equal { "exact" } else { "WRONG" },
            bad.len()
        ),
    )
}

fn oracle_equivalence(c: &Corpus, limits: SolverLimits) -> Outcome {
    let (mut tau_n, mut nu_n) = (0, 0);
    let mut bad = Vec::new();
    for (id, _, g) in &c.graphs {
        if g.n() <= 14 {
            tau_n += 1;
            let oracle = brute_force_tau(g).expect("n within oracle guard");
            let solver = min_feedback_vertex_set(g, limits).map(|r| r.size);
            if solver != Ok(oracle) {
                bad.push(format!("{id}: tau oracle {oracle} solver {solver:?}"));
            }
        }
        if let Ok(oracle) = brute_force_packing(g) {
            nu_n += 1;
            let solver = max_dicycle_packing(g, limits.packing()).map(|p| p.len());
            if solver != Ok(oracle) {
                bad.push(format!("{id}: nu oracle {oracle} solver {solver:?}"));
            }
        }
    }
    check(
        tau_n >= 50 && nu_n > 0 && bad.is_empty(),
        format!(
            "tau on {tau_n} instances (n <= 14), nu on {nu_n} instances (<= 20 cycles), {} mismatches {bad:?}",
            bad.len()
        ),
    )
}

fn covers(g: &PlanarDigraph, a: &[usize], x: &[usize]) -> bool {
    let x: HashSet<usize> = x.iter().copied().collect();
    a.iter().all(|&e| {
        let (t, h) = g.arc(e);
        x.contains(&t) || x.contains(&h)
    })
}

fn cover_bounds(c: &Corpus, limits: SolverLimits) -> Outcome {
    let mut trials = 0;
    let mut chains = 0;
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for ((id, _, g), r) in c.graphs.iter().zip(&c.solved) {
        for _ in 0..2 {
            let p = rng.gen_range(0.0..1.0);
            let a: Vec<usize> = (0..g.m()).filter(|_| rng.gen_bool(p)).collect();
            let x = cover_arcs_greedy(g, &a);
            trials += 1;
            if !covers(g, &a, &x) || 3 * x.len() > g.n() + a.len() {
                bad.push(format!("{id}: |X|={} n={} |A|={}", x.len(), g.n(), a.len()));
            }
        }
        if girth_of(g) == Some(4) && r.status == Status::Ok {
            // tau <= |X| <= (n + |A|)/3 <= (5n - 5)/9 with A a minimum feedback arc set
            let fas = r.fas.expect("solved");
            let fvs = r.fvs.as_ref().expect("solved");
            let greedy = r.x_greedy.as_ref().expect("solved");
            let exact = r.x_exact.as_ref().expect("solved");
            let arcs = pfvs_core::solvers::min_feedback_arc_set(g, limits)
                .expect("fas")
                .arcs;
            let x_again = min_vertex_cover_of_arcs(g, &arcs, limits).expect("cover");
            chains += 1;
            let cover_bound = q((g.n() + fas) as i64, 3);
            let ok = r.tau == Some(fvs.len())
                && fvs.len() <= exact.len()
                && exact.len() == x_again.len()
                && exact.len() <= greedy.len()
                && covers(g, &arcs, &cover_arcs_greedy(g, &arcs))
                && q(greedy.len() as i64, 1) <= cover_bound
                && cover_bound <= theorem_bound(g.n(), 4);
            if !ok {
                bad.push(format!("{id}: g=4 chain broken"));
            }
        }
    }
    check(
        trials >= 200 && chains > 0 && bad.is_empty(),
        format!(
            "{trials} (G, A) trials, {chains} g=4 chains, {} failures {bad:?}",
            bad.len()
        ),
    )
}

fn fractional_suite(c: &Corpus) -> Outcome {
    let mut count = 0;
    let mut enumerated = 0;
    let mut max_ratio: Option<(Q, String)> = None;
    let mut bad = Vec::new();
    for ((id, _, g), r) in c.graphs.iter().zip(&c.solved) {
        let Some(tau) = r.tau else { continue };
        let fr = fractional_tau_star(g);
        count += 1;
        let sum: Q = fr.weights.iter().sum();
        let in_range = fr
            .weights
            .iter()
            .all(|w| !(*w < Q::zero()) && *w <= Q::one());
        let gv = girth_of(g);
        let n_over_g_ok = gv.is_none_or(|gv| fr.objective <= q(g.n() as i64, gv as i64));
        let final_ok = fr.final_min_weight.as_ref().is_none_or(|w| *w >= Q::one());
        if sum != fr.objective || !in_range || !n_over_g_ok || !final_ok {
            bad.push(format!("{id}: tau* {} invalid", fr.objective));
        }
        if fr.objective > q(tau as i64, 1) {
            bad.push(format!("{id}: tau* {} > tau {tau}", fr.objective));
        }
        // independent pass over every dicycle when they can be listed
        if let Ok(cycles) = enumerate_dicycles(g, 20_000) {
            enumerated += 1;
            for cyc in &cycles {
                let w: Q = cyc.vertices().iter().map(|&v| fr.weights[v].clone()).sum();
                if w < Q::one() {
                    bad.push(format!("{id}: cycle of weight {w}"));
                    break;
                }
            }
        }
        if !fr.objective.is_zero() {
            let ratio = q(tau as i64, 1) / fr.objective.clone();
            if ratio > q(3, 2) {
                bad.push(format!("{id}: GW candidate, ratio {ratio}"));
            }
            if max_ratio.as_ref().is_none_or(|(m, _)| ratio > *m) {
                max_ratio = Some((ratio, id.clone()));
            }
        }
    }
    let max = max_ratio.map_or("-".to_string(), |(m, id)| format!("{m} ({id})"));
    check(
        count > 0 && bad.is_empty(),
        format!(
            "{count} instances, {enumerated} fully enumerated, max tau/tau* = {max}, {} failures {bad:?}",
            bad.len()
        ),
    )
}

fn determinism(limits: SolverLimits) -> Outcome {
    let stream = || -> String {
        let mut out = String::new();
        for family in [
            Family::StackedCycles,
            Family::CylinderGrid,
            Family::RandomPlanarFiltered,
        ] {
            for g in 4..=6 {
                for n in (6..=16).step_by(2) {
                    let seeds = [7, 8];
                    let (row, recs) = sweep_cell(family, n, g, &seeds, limits);
                    for r in recs {
                        out.push_str(&Record::Solve(r).to_line());
                        out.push('\n');
                    }
                    out.push_str(&Record::Sweep(row).to_line());
                    out.push('\n');
                }
            }
        }
        out
    };
    let (a, b) = (stream(), stream());
    check(
        a == b && !a.is_empty(),
        format!("two sweeps, {} bytes each, identical: {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let limits = SolverLimits::default();
    let start = Instant::now();
    let graphs = common::corpus();
    let solved: Vec<SolveRecord> = graphs
        .iter()
        .map(|(id, _, g)| solve_record(id, g, limits))
        .collect();
    let corpus = Corpus {
        graphs,
        solved,
        solve_time: start.elapsed(),
    };
    let skipped = corpus
        .solved
        .iter()
        .filter(|r| r.status != Status::Ok)
        .count();
    println!(
        "corpus: {} instances, {} not solved",
        corpus.graphs.len(),
        skipped
    );
    let results = [
        ("1 theorem bound", theorem_suite(&corpus)),
        ("2 Lucchesi-Younger identity", ly_identity(&corpus)),
        ("3 proof trace", proof_trace(&corpus, limits)),
        ("4 lemma verifiers", lemma_verifiers(&corpus)),
        ("5 oracle equivalence", oracle_equivalence(&corpus, limits)),
        ("6 cover bounds", cover_bounds(&corpus, limits)),
        ("7 fractional relaxation", fractional_suite(&corpus)),
        ("8 determinism", determinism(limits)),
    ];
    let mut all = true;
    for (name, r) in &results {
        match r {
            Ok(d) => println!("PASS  criterion {name}: {d}"),
            Err(d) => {
                all = false;
                println!("FAIL  criterion {name}: {d}");
            }
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

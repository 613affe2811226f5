//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p evc-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use evc_core::characterize::{
    class_f_membership, decide_evc_equals_mvc, necessary_condition, MembershipMode, Verdict,
};
use evc_core::defense::{verify_moveset, DefenseSession, StrategyMode};
use evc_core::gadgets::{
    add_universal_vertex, complete, connected_graphs, cycle, double_and_join, fig4_instance, path,
    random_biconnected_chordal, random_connected, triangulate_faces,
};
use evc_core::game::{evc_exact, minimax_oracle, safe_family};
use evc_core::graph::{cut_vertices_and_blocks, is_vertex_cover, PlanarEmbedding};
use evc_core::vc::{mvc_exact, Engine, Limits};
use evc_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CLOSED_FORM_BUDGET: Duration = Duration::from_secs(60);
const FIG4_BUDGET: Duration = Duration::from_secs(600);
const CHAR_BUDGET: Duration = Duration::from_secs(900);
const RANDOM_POOL: usize = 200;
const RANDOM_MAX_N: usize = 8;
const CHORDAL_POOL: usize = 100;
const CHORDAL_MAX_N: usize = 10;
const ROUNDS: usize = 500;
const GADGET_POOL: usize = 50;

/// (n, graph, expected evc)
type ClosedForm = (usize, Graph, usize);
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Smallest cover by trying every subset in order of size.
fn brute_mvc(g: &Graph) -> usize {
    let edges: Vec<_> = g.edges().collect();
    (0u64..1 << g.n())
        .filter(|&m| edges.iter().all(|&(a, b)| m >> a & 1 == 1 || m >> b & 1 == 1))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

fn exhaustive_pool() -> Vec<Graph> {
    (2..=7).flat_map(connected_graphs).collect()
}

fn random_pool() -> Vec<Graph> {
    (0..RANDOM_POOL)
        .map(|i| {
            let n = 2 + i % (RANDOM_MAX_N - 1);
            let p = 0.25 + 0.15 * (i % 5) as f64;
            random_connected(n, p, 1000 + i as u64).expect("generator")
        })
        .collect()
}

fn chordal_pool() -> Vec<Graph> {
    (0..CHORDAL_POOL)
        .map(|i| {
            let n = 3 + i % (CHORDAL_MAX_N - 2);
            let density = 0.2 + 0.2 * (i % 4) as f64;
            random_biconnected_chordal(n, density, 5000 + i as u64).expect("generator")
        })
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn closed_forms(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let families: [(&str, Vec<ClosedForm>); 3] = [
        ("P", (2..=8).map(|n| (n, path(n), n - 1)).collect()),
        ("C", (3..=10).map(|n| (n, cycle(n), n.div_ceil(2))).collect()),
        ("K", (2..=6).map(|n| (n, complete(n), n - 1)).collect()),
    ];
    let mut checked = 0;
    for (name, cases) in families {
        for (n, g, expected) in cases {
            checked += 1;
            match evc_exact(&g, limits) {
                Ok(r) if r.evc == expected => {}
                Ok(r) => bad.push(format!("{name}_{n}: got {}, want {expected}", r.evc)),
                Err(e) => bad.push(format!("{name}_{n}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < CLOSED_FORM_BUDGET,
        format!("{checked} graphs in {elapsed:.2?} (budget {CLOSED_FORM_BUDGET:?}) {bad:?}"),
    )
}

fn counterexample(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let g = fig4_instance();
    let id = |l: &str| g.vertex(l).expect("builtin label");
    let mvc = mvc_exact(&g, limits).map(|r| r.size);
    let nc = necessary_condition(&g, Engine::Exact, limits).map(|c| c.holds);
    let evc = evc_exact(&g, limits).map(|r| r.evc);
    let start_cfg: VertexSet = ["y1", "y2", "y3", "y4", "y5"].iter().map(|l| id(l)).collect();
    let scripted = DefenseSession::with_start(
        &g,
        evc_core::characterize::ClassFEvidence::Assumed,
        start_cfg,
        Engine::Exact,
        limits,
    )
    .map_err(|e| e.to_string())
    .and_then(|mut s| {
        s.defend((id("y4"), id("x2"))).map_err(|e| e.to_string())?;
        match s.defend((id("x1"), id("y5"))) {
            Err(evc_core::defense::DefenseError::DefenseImpossible { round, .. }) => Ok(round),
            Err(e) => Err(e.to_string()),
            Ok(_) => Err("round 2 was defended".into()),
        }
    });
    let elapsed = start.elapsed();
    let pass = mvc == Ok(5)
        && nc == Ok(true)
        && matches!(evc, Ok(e) if e > 5)
        && scripted == Ok(2)
        && elapsed < FIG4_BUDGET;
    outcome(
        pass,
        format!(
            "mvc={mvc:?} necessary={nc:?} evc={evc:?} scripted failure round={scripted:?} in {elapsed:.2?}"
        ),
    )
}

fn oracle_equivalence(pool: &[Graph], limits: &Limits) -> Outcome {
    let mut mismatches = Vec::new();
    let mut checks = 0;
    for (i, g) in pool.iter().enumerate() {
        let mvc = mvc_exact(g, limits).expect("within limits").size;
        if mvc != brute_mvc(g) {
            mismatches.push(format!("#{i} mvc {mvc} vs {}", brute_mvc(g)));
        }
        for k in mvc..=(2 * mvc).min(g.n()) {
            checks += 1;
            let fixed_point = !safe_family(g, k, limits).expect("within limits").is_empty();
            let minimax = minimax_oracle(g, k, limits).expect("within limits");
            if fixed_point != minimax {
                mismatches.push(format!("#{i} k={k}: fixed point {fixed_point}, minimax {minimax}"));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{} graphs, {checks} (graph, k) checks, mismatches {mismatches:?}", pool.len()),
    )
}

fn characterization(pool: &[Graph], limits: &Limits) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut verdicts = [0usize; 4];
    for (i, g) in pool.iter().enumerate() {
        let ev = class_f_membership(g, MembershipMode::Sufficient, limits).expect("membership");
        let report = decide_evc_equals_mvc(g, ev, Engine::Polynomial, limits).expect("verdict");
        let exact = evc_exact(g, limits).expect("exact").evc;
        verdicts[report.verdict as usize] += 1;
        let agrees = match report.verdict {
            Verdict::EvcEqualsMvc => exact == report.mvc && report.evc == Some(exact),
            Verdict::EvcEqualsMvcPlusOne => exact == report.mvc + 1 && report.evc == Some(exact),
            Verdict::EvcExceedsMvc => exact > report.mvc,
            Verdict::Undetermined => false,
        };
        if !agrees {
            mismatches.push(format!("#{i} {:?} vs exact {exact}", report.verdict));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && elapsed < CHAR_BUDGET,
        format!(
            "{} graphs (=mvc {}, =mvc+1 {}, >mvc {}, undetermined {}) in {elapsed:.2?}, mismatches {mismatches:?}",
            pool.len(),
            verdicts[0],
            verdicts[1],
            verdicts[2],
            verdicts[3]
        ),
    )
}

fn strategy_soundness(pool: &[Graph], limits: &Limits) -> Outcome {
    let mut failures = Vec::new();
    let (mut equal, mut plus_one, mut rounds, mut max_ratio) = (0, 0, 0usize, (0usize, 1usize));
    for (i, g) in pool.iter().enumerate() {
        let ev = class_f_membership(g, MembershipMode::Sufficient, limits).expect("membership");
        let mut session = match DefenseSession::new(g, ev, Engine::Exact, limits) {
            Ok(s) => s,
            Err(_) => continue,
        };
        // certification must agree with the exact game before the strategy is trusted
        let exact = evc_exact(g, limits).expect("exact").evc;
        let certified = match session.mode {
            StrategyMode::HallEqual => exact == session.mvc,
            StrategyMode::ConnectedPlusOne => exact == session.mvc + 1,
        };
        if !certified {
            failures.push(format!("#{i} certified {:?} but evc={exact}", session.mode));
            continue;
        }
        match session.mode {
            StrategyMode::HallEqual => equal += 1,
            StrategyMode::ConnectedPlusOne => plus_one += 1,
        }
        let mvc = brute_mvc(g);
        let cut = cut_vertices_and_blocks(g).expect("connected").cut_vertices;
        let edges: Vec<_> = g.edges().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + i as u64);
        for _ in 0..ROUNDS {
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            let attack = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            let before = session.config.clone();
            let rec = match session.defend(attack) {
                Ok(r) => r.clone(),
                Err(e) => {
                    failures.push(format!("#{i} round {}: {e}", session.round + 1));
                    break;
                }
            };
            rounds += 1;
            let boundary_ok = match session.mode {
                StrategyMode::HallEqual => {
                    rec.config.len() == mvc
                        && is_vertex_cover(g, &rec.config)
                        && cut.is_subset(&rec.config)
                }
                StrategyMode::ConnectedPlusOne => {
                    rec.config.len() == mvc + 1 && is_vertex_cover(g, &rec.config)
                }
            };
            if !verify_moveset(g, &before, &rec.config, &rec.moves, attack) || !boundary_ok {
                failures.push(format!("#{i} round {}: invalid round", rec.round));
                break;
            }
        }
        if session.max_refinements >= g.n() {
            failures.push(format!("#{i}: {} refinements for n={}", session.max_refinements, g.n()));
        }
        if session.max_refinements * max_ratio.1 > max_ratio.0 * g.n() {
            max_ratio = (session.max_refinements, g.n());
        }
    }
    let has_plus_one = plus_one > 0;
    outcome(
        failures.is_empty() && equal > 0 && has_plus_one,
        format!(
            "{equal} hall-equal + {plus_one} plus-one sessions, {rounds} rounds, worst refinements/n = {}/{}, failures {:?}",
            max_ratio.0,
            max_ratio.1,
            &failures[..failures.len().min(5)]
        ),
    )
}

fn gadget_identities(pool: &[Graph], limits: &Limits) -> Outcome {
    let mut bad = Vec::new();
    let mvc = |g: &Graph| mvc_exact(g, limits).expect("within limits").size;
    let step = (pool.len() / GADGET_POOL).max(1);
    let sample: Vec<&Graph> = pool.iter().step_by(step).take(GADGET_POOL).collect();
    for (i, g) in sample.iter().enumerate() {
        let out = add_universal_vertex(g).expect("connected");
        if mvc(&out.graph) != mvc(g) + 1 {
            bad.push(format!("universal #{i}"));
        }
    }
    for t in 4..=6 {
        let g = cycle(t);
        let face: Vec<usize> = (0..t).collect();
        let emb = PlanarEmbedding {
            internal_faces: vec![face.clone()],
            outer_face: face,
        };
        let out = triangulate_faces(&g, &emb).expect("cycle face");
        if mvc(&out.graph) != t.div_ceil(2) + 3 {
            bad.push(format!("triangulate C_{t}: {}", mvc(&out.graph)));
        }
    }
    for (n, want) in [(3, 7), (4, 9)] {
        let out = double_and_join(&complete(n), (0, 1)).expect("edge");
        if mvc(&out.graph) != want {
            bad.push(format!("double K_{n}: {}", mvc(&out.graph)));
        }
    }
    outcome(
        bad.is_empty() && sample.len() == GADGET_POOL,
        format!("{} universal, 3 triangulated, 2 doubled; failures {bad:?}", sample.len()),
    )
}

fn necessary_condition_sweep(pool: &[Graph], limits: &Limits) -> Outcome {
    let mut violations = Vec::new();
    let mut failing = 0;
    for (i, g) in pool.iter().enumerate() {
        let nc = necessary_condition(g, Engine::Exact, limits).expect("within limits");
        if nc.holds {
            continue;
        }
        failing += 1;
        let r = evc_exact(g, limits).expect("exact");
        if r.evc == r.mvc {
            violations.push(format!("#{i}"));
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{} graphs, {failing} fail the condition, violations {violations:?}",
            pool.len()
        ),
    )
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let exhaustive = exhaustive_pool();
    let random = random_pool();
    let chordal = chordal_pool();
    let mixed: Vec<Graph> = exhaustive.iter().chain(&random).cloned().collect();
    let with_chordal: Vec<Graph> = mixed.iter().chain(&chordal).cloned().collect();

    let criteria: Vec<Criterion> = vec![
        ("closed-forms", Box::new(|| closed_forms(&limits))),
        ("counterexample", Box::new(|| counterexample(&limits))),
        ("oracle-equivalence", Box::new(|| oracle_equivalence(&mixed, &limits))),
        ("characterization", Box::new(|| characterization(&chordal, &limits))),
        ("strategy-soundness", Box::new(|| strategy_soundness(&with_chordal, &limits))),
        ("gadget-identities", Box::new(|| gadget_identities(&exhaustive, &limits))),
        ("necessary-condition", Box::new(|| necessary_condition_sweep(&with_chordal, &limits))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

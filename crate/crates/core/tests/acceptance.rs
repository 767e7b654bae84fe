//! Acceptance criteria 1 through 11. Each criterion prints one line
//! `criterion N: PASS|FAIL ...`; the test fails if any criterion fails.
//! Criterion 10 runs only with `FORGE_SLOW=1` and otherwise reports
//! `skipped-slow`.

use std::time::{Duration, Instant};

use forge_core::binomial_ideal::{normal_form, toric_ideal, Element, MonomialOrder};
use forge_core::constructors::{gap_semigroup, join, GapSpec};
use forge_core::exactlinalg::SimplicialComplex;
use forge_core::poly::{Monomial, Poly};
use forge_core::verify::{join_grid, verify_claim, ClaimReport, Status, VerifyConfig, DEFAULT_SEED};
use forge_core::Caps;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn claim(id: &str, cfg: &VerifyConfig) -> ClaimReport {
    verify_claim(id, cfg).unwrap_or_else(|| panic!("unknown claim {id}"))
}

fn counts(r: &ClaimReport) -> String {
    let parts: Vec<String> = [Status::Verified, Status::Refuted, Status::HypothesisFailed, Status::SkippedSlow]
        .into_iter()
        .filter(|&s| r.count(s) > 0)
        .map(|s| format!("{} {}", r.count(s), s.as_str()))
        .collect();
    format!("{}[{}]", r.id, parts.join(", "))
}

fn all_verified(r: &ClaimReport) -> bool {
    !r.instances.is_empty() && r.count(Status::Verified) == r.instances.len()
}

/// Verified wherever the hypotheses hold, with at least one verified instance.
fn verified_where_applicable(r: &ClaimReport) -> bool {
    r.count(Status::Verified) > 0
        && r.instances
            .iter()
            .all(|i| matches!(i.status, Status::Verified | Status::HypothesisFailed))
}

fn run(n: u32, budget_secs: u64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_secs);
    let pass = out.pass && in_time;
    println!(
        "criterion {n}: {} {} ({:.2}s of {budget_secs}s)",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64()
    );
    pass
}

fn c1(cfg: &VerifyConfig) -> Outcome {
    let r = claim("thm-5.2", cfg);
    let skipped: Vec<String> = r
        .instances
        .iter()
        .filter(|i| i.status == Status::HypothesisFailed)
        .map(|i| format!("{} ({})", i.params, i.details))
        .collect();
    Outcome {
        pass: verified_where_applicable(&r),
        detail: format!("{}; non-minimal skipped: {}", counts(&r), skipped.len()),
    }
}

fn c2(cfg: &VerifyConfig) -> Outcome {
    let r = claim("thm-5.3", cfg);
    Outcome {
        pass: all_verified(&r) && r.instances.len() == 32,
        detail: counts(&r),
    }
}

fn c3(cfg: &VerifyConfig) -> Outcome {
    let r = claim("thm-5.5", cfg);
    let type_ok = r
        .instances
        .iter()
        .filter(|i| i.status != Status::HypothesisFailed)
        .all(|i| {
            let n = i.params["n"].as_u64().unwrap_or(0);
            let t = i.details["type"].as_u64().unwrap_or(u64::MAX);
            let cm = &i.details["cm_type"];
            t + 1 == n && (cm.is_null() || cm.as_u64() == Some(t))
        });
    Outcome {
        pass: verified_where_applicable(&r) && type_ok,
        detail: format!("{}; type = n-1 and cm_type = type: {type_ok}", counts(&r)),
    }
}

fn c4(cfg: &VerifyConfig) -> Outcome {
    let progression = claim("lem-5.6", cfg);
    let grid = join_grid(2..=5, &[1, 2]);
    let mut failing = Vec::new();
    for (l, r) in &grid {
        let g = join(&gap_semigroup(l).expect("left"), &gap_semigroup(r).expect("right")).expect("join");
        if !g.normal_by_qf_criterion(&cfg.caps).expect("criterion") {
            failing.push(format!("(n1={},n2={},h={})", l.n, r.n, l.h));
        }
    }
    Outcome {
        pass: verified_where_applicable(&progression) && failing.is_empty(),
        detail: format!(
            "{}; joins failing -QF in Ap: {} of {}",
            counts(&progression),
            failing.len(),
            grid.len()
        ),
    }
}

fn c5(cfg: &VerifyConfig) -> Outcome {
    let r = claim("thm-5.9", cfg);
    Outcome {
        pass: all_verified(&r) && r.instances.len() == 15,
        detail: counts(&r),
    }
}

fn c6(cfg: &VerifyConfig) -> Outcome {
    let main = claim("thm-5.10", cfg);
    let reported: Vec<ClaimReport> = ["thm-5.10-literal", "thm-5.10-extended", "thm-5.10-full", "cor-5.11"]
        .iter()
        .map(|id| claim(id, cfg))
        .collect();
    let literal_ran = reported
        .iter()
        .all(|r| r.instances.iter().all(|i| i.details.get("error").is_none()));
    let detail: Vec<String> = std::iter::once(&main).chain(&reported).map(counts).collect();
    Outcome {
        pass: all_verified(&main) && literal_ran && all_verified(&reported[2]),
        detail: detail.join("; "),
    }
}

fn c7(cfg: &VerifyConfig) -> Outcome {
    let rs: Vec<ClaimReport> = ["thm-4.2", "cor-4.3", "thm-5.12"].iter().map(|id| claim(id, cfg)).collect();
    Outcome {
        pass: rs.iter().all(|r| all_verified(r) && r.instances.len() == 9),
        detail: rs.iter().map(counts).collect::<Vec<_>>().join("; "),
    }
}

fn c8(cfg: &VerifyConfig) -> Outcome {
    let r = claim("thm-5.8", cfg);
    Outcome {
        pass: all_verified(&r) && r.instances.len() == 15,
        detail: counts(&r),
    }
}

fn c9(cfg: &VerifyConfig) -> Outcome {
    let gr = claim("thm-5.13", cfg);
    let herzog = claim("herzog", cfg);
    let transfer = claim("thm-3.1", cfg);
    let equal = transfer
        .instances
        .iter()
        .all(|i| i.details["betti_equal"] == Value::Bool(true));
    Outcome {
        pass: all_verified(&gr) && gr.instances.len() == 9 && all_verified(&herzog) && equal,
        detail: format!(
            "{}; {}; transfer Betti equal on all joins: {equal} ({})",
            counts(&gr),
            counts(&herzog),
            counts(&transfer)
        ),
    }
}

fn c10(cfg: &VerifyConfig) -> Option<Outcome> {
    if std::env::var("FORGE_SLOW").map_or(true, |v| v != "1") {
        return None;
    }
    let cfg = VerifyConfig { slow: true, ..cfg.clone() };
    let r = claim("ex-3.3", &cfg);
    let inst = &r.instances[0];
    let support = inst.details["z1_z5_in_every_support"] == Value::Bool(true);
    Outcome {
        pass: matches!(inst.status, Status::Verified | Status::HypothesisFailed | Status::SkippedSlow)
            && (inst.status == Status::SkippedSlow || support),
        detail: format!("{}; details {}", counts(&r), inst.details),
    }
    .into()
}

fn el(o: &MonomialOrder, a: Vec<u32>, b: Vec<u32>) -> Option<Element> {
    Element::from_terms(o, &[(Monomial(a), 1), (Monomial(b), -1)])
}

fn trace_replay(rng: &mut ChaCha8Rng) -> bool {
    let caps = Caps::default();
    let g = gap_semigroup(&GapSpec::new(vec![1, 2], vec![2, 1], 1, 4)).expect("gap semigroup");
    let ideal = toric_ideal(&g, None, &caps).expect("toric ideal");
    let nv = ideal.nvars();
    let orders = [
        MonomialOrder::degrevlex(nv),
        MonomialOrder::lex(nv),
        MonomialOrder::neg_degrevlex(nv),
    ];
    orders.iter().all(|o| {
        let basis = ideal.basis(o, &caps).expect("basis");
        let polys: Vec<Poly> = basis.iter().map(Element::to_poly).collect();
        (0..50).all(|_| {
            let a: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..4)).collect();
            let b: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..4)).collect();
            let Some(f) = el(o, a, b) else { return true };
            let (r, t) = normal_form(&f, &basis, o, &caps).expect("normal form");
            t.replay(&f.to_poly(), &polys) == r.map_or(Poly::zero(), |e| e.to_poly())
        })
    })
}

fn cones_acyclic(rng: &mut ChaCha8Rng) -> bool {
    (0..200).all(|_| {
        let nv = rng.gen_range(1..=6);
        let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..=4))
            .map(|_| (0..nv).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let base = SimplicialComplex::from_facets(&facets);
        base.cone(nv).reduced_homology().is_acyclic()
    })
}

fn membership_monotone(rng: &mut ChaCha8Rng) -> bool {
    let g = gap_semigroup(&GapSpec::new(vec![1, 2], vec![2, 1], 2, 4)).expect("gap semigroup");
    let gens = g.generators().to_vec();
    let member = |rng: &mut ChaCha8Rng| -> Vec<i64> {
        let mut v = vec![0i64; 2];
        for gen in &gens {
            let c = rng.gen_range(0..3);
            for (x, y) in v.iter_mut().zip(gen) {
                *x += c * y;
            }
        }
        v
    };
    (0..1000).all(|_| {
        let u = member(rng);
        let w: Vec<i64> = (0..2).map(|_| rng.gen_range(0..25)).collect();
        let sum: Vec<i64> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
        g.contains(&u) && (!g.contains(&w) || g.contains(&sum))
    })
}

fn c11(cfg: &VerifyConfig) -> Outcome {
    let axioms = claim("order-axioms", cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let replay = trace_replay(&mut rng);
    let cones = cones_acyclic(&mut rng);
    let monotone = membership_monotone(&mut rng);
    Outcome {
        pass: all_verified(&axioms) && replay && cones && monotone,
        detail: format!(
            "{}; trace replay: {replay}; cone homology vanishes: {cones}; membership monotone: {monotone}",
            counts(&axioms)
        ),
    }
}

#[test]
fn acceptance() {
    let cfg = VerifyConfig::default();
    assert_eq!(cfg.seed, DEFAULT_SEED);
    let mut results = vec![
        run(1, 10, || c1(&cfg)),
        run(2, 30, || c2(&cfg)),
        run(3, 10, || c3(&cfg)),
        run(4, 5, || c4(&cfg)),
        run(5, 60, || c5(&cfg)),
        run(6, 60, || c6(&cfg)),
        run(7, 120, || c7(&cfg)),
        run(8, 10, || c8(&cfg)),
        run(9, 120, || c9(&cfg)),
    ];
    let start = Instant::now();
    match c10(&cfg) {
        Some(out) => {
            println!(
                "criterion 10: {} {} ({:.2}s)",
                if out.pass { "PASS" } else { "FAIL" },
                out.detail,
                start.elapsed().as_secs_f64()
            );
            results.push(out.pass);
        }
        None => println!("criterion 10: skipped-slow (set FORGE_SLOW=1 to run)"),
    }
    results.push(run(11, 30, || c11(&cfg)));
    let failed = results.iter().filter(|&&p| !p).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

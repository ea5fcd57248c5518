//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured values. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use plumbing::arith::{hj_expand, hj_value, rational, tree_determinant, Rational};
use plumbing::classify::{find_proper_e8, find_very_bad, LauferOutcome};
use plumbing::diag::{delta, derationalizer, is_negative_definite, rooted_diagonalize, split, surger, MarkedGraph};
use plumbing::enumerate::{canonical_code, enumerate_with_cap, weighted_trees};
use plumbing::fixtures::{e8, e8_with, six_vertex_example};
use plumbing::graph::{blow_down_once, minimalize, PlumbingGraph};
use plumbing::laufer::{
    chi, deficiency_iteration, laufer_run, min_cycle_bruteforce, LatticeVector, LauferOptions, TieBreak, Verdict,
};
use plumbing::pi1::{abelianization_invariants, mumford_presentation};
use rand::Rng;

type Outcome = Result<String, String>;
// attachment vertex, cycle name, cycle, weight of w making the graph definite
type ProofCase = (&'static str, &'static str, &'static [(&'static str, i64)], i64);
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let g = e8();
    let res = laufer_run(&g, &LauferOptions::default()).map_err(|e| e.to_string())?;
    let expected = LatticeVector::from_named(
        &g,
        &[("X", 6), ("x1", 5), ("x2", 4), ("x3", 3), ("x4", 2), ("z1", 3), ("y1", 4), ("y2", 2)],
    )
    .unwrap();
    let z = res.z_min.clone().ok_or("no convergence")?;
    check(z == expected, || format!("z_min = {}", z.render(&g)))?;
    check(chi(&g, &z) == 1, || format!("chi(z_min) = {}", chi(&g, &z)))?;
    check(res.verdict == Verdict::LatticeLSpace, || "verdict".into())?;
    check(res.iterations == 21, || format!("{} iterations", res.iterations))?;
    Ok(format!("z_min={} chi=1 iterations=21", z.render(&g)))
}

fn criterion_2() -> Outcome {
    let cases: [ProofCase; 3] = [
        (
            "y2",
            "z10",
            &[("X", 3), ("x1", 3), ("x2", 2), ("x3", 2), ("x4", 1), ("z1", 2), ("y1", 3), ("y2", 2), ("w", 1)],
            -5,
        ),
        (
            "z1",
            "z4",
            &[("X", 2), ("x1", 2), ("x2", 1), ("x3", 1), ("x4", 1), ("z1", 2), ("w", 1), ("y1", 2), ("y2", 1)],
            -9,
        ),
        (
            "x4",
            "z20",
            &[("X", 5), ("x1", 5), ("x2", 4), ("x3", 3), ("x4", 2), ("w", 1), ("z1", 3), ("y1", 4), ("y2", 3)],
            -3,
        ),
    ];
    let mut report = Vec::new();
    let mut failures = Vec::new();
    for (at, name, terms, nd_weight) in cases {
        let g = e8_with(at, -2);
        // with w = -2 the form is not negative-definite; run the sequence anyway
        let opts = LauferOptions {
            allow_indefinite: true,
            ..LauferOptions::default()
        };
        let res = laufer_run(&g, &opts).map_err(|e| e.to_string())?;
        if res.verdict != Verdict::NotLatticeLSpace {
            failures.push(format!("{at}: verdict {}", res.verdict));
        }
        let nd = e8_with(at, nd_weight);
        let nd_res = laufer_run(&nd, &LauferOptions::default()).map_err(|e| e.to_string())?;
        if nd_res.verdict != Verdict::NotLatticeLSpace {
            failures.push(format!("{at} (w={nd_weight}): verdict {}", nd_res.verdict));
        }
        let z = LatticeVector::from_named(&g, terms).unwrap();
        let c = chi(&g, &z);
        report.push(format!("chi({name})={c}"));
        if c >= 1 {
            failures.push(format!("chi({name}) = {c}, not < 1"));
        }
    }
    if failures.is_empty() {
        Ok(report.join(" "))
    } else {
        let verdicts_ok = failures.iter().all(|f| f.starts_with("chi("));
        let note = if verdicts_ok { "; all three verdicts not-L-space" } else { "" };
        Err(format!("{}{note}", failures.join("; ")))
    }
}

fn criterion_3() -> Outcome {
    let g = six_vertex_example();
    let mg = MarkedGraph::new(g.clone(), "b").unwrap();
    let d = delta(&mg).map_err(|e| e.to_string())?;
    let r = derationalizer(&mg).map_err(|e| e.to_string())?;
    check(d == rational(-1481, 273), || format!("delta = {d}"))?;
    check(r == rational(-273, 1481), || format!("derationalizer = {r}"))?;
    let form = rooted_diagonalize(&g, "b").map_err(|e| e.to_string())?;
    let expected = [
        rational(-3, 1),
        rational(-1481, 273),
        rational(-2, 1),
        rational(-91, 22),
        rational(-11, 4),
        rational(-4, 1),
    ];
    check(form.entries() == expected, || format!("diagonal = {:?}", form.entries()))?;
    Ok(format!("delta={d} derationalizer={r}"))
}

fn criterion_4() -> Outcome {
    let mut rng = common::rng(4);
    for i in 0..200 {
        let g = common::random_nd_tree(&mut rng, 10, -6, -2);
        let mark = g.id(rng.gen_range(0..g.len())).to_string();
        let mg = MarkedGraph::new(g.clone(), &mark).unwrap();
        let r = derationalizer(&mg).map_err(|e| e.to_string())?;
        let filled = surger(&mg, &r).map_err(|e| e.to_string())?;
        let det = tree_determinant(&filled);
        check(det.is_zero(), || format!("instance {i}: det = {det} for\n{}", g.serialize()))?;
    }
    Ok("200/200 surgered graphs singular".into())
}

struct Arm {
    root: &'static str,
    vertices: &'static [&'static str],
    low: Rational,
    high: Rational,
    run: usize,
}

fn criterion_5() -> Outcome {
    let arms = [
        Arm {
            root: "x1",
            vertices: &["x1", "x2", "x3", "x4"],
            low: rational(-5, 4),
            high: rational(-6, 5),
            run: 4,
        },
        Arm {
            root: "y1",
            vertices: &["y1", "y2"],
            low: rational(-3, 2),
            high: rational(-10, 7),
            run: 2,
        },
        Arm {
            root: "z1",
            vertices: &["z1"],
            low: rational(-2, 1),
            high: rational(-15, 8),
            run: 1,
        },
    ];
    let mut rng = common::rng(5);
    let mut summary = Vec::new();
    for arm in &arms {
        let mut seen = BTreeSet::new();
        let mut attempts = 0;
        while seen.len() < 25 && attempts < 20_000 {
            attempts += 1;
            let extra = common::random_tree(&mut rng, 3, -12, -2);
            let at = arm.vertices[rng.gen_range(0..arm.vertices.len())];
            let mut g = e8();
            let base = g.len();
            for v in 0..extra.len() {
                let id = format!("t{v}");
                let anchor = match extra.neighbors(v).iter().find(|&&u| u < v) {
                    Some(&u) => format!("t{u}"),
                    None => at.to_string(),
                };
                g = g.with_leaf(&anchor, &id, extra.weight(v)).unwrap();
            }
            debug_assert_eq!(g.len(), base + extra.len());
            if !is_negative_definite(&g) || !seen.insert(canonical_code(&g)) {
                continue;
            }
            if find_proper_e8(&g).is_none() {
                return Err(format!("no proper E8 found in\n{}", g.serialize()));
            }
            let (_, side) = split(&g, "X", arm.root).map_err(|e| e.to_string())?;
            let d = delta(&side).map_err(|e| e.to_string())?;
            check(arm.low < d && d < arm.high, || {
                format!("delta_{} = {d} outside ({}, {})", arm.root, arm.low, arm.high)
            })?;
            let e = hj_expand(&d).map_err(|e| e.to_string())?;
            let prefix_ok = e.entries().iter().take(arm.run).all(|&a| a == -2);
            check(prefix_ok && e.len() > arm.run, || format!("delta_{} = {d} expands to {e}", arm.root))?;
        }
        check(seen.len() >= 20, || format!("only {} instances for {}", seen.len(), arm.root))?;
        summary.push(format!("{}:{}", arm.root, seen.len()));
    }
    Ok(format!("instances {}", summary.join(" ")))
}

fn criterion_6() -> Outcome {
    let results = enumerate_with_cap(7, -5, -2, 7).map_err(|e| e.to_string())?;
    let mut violations = Vec::new();
    for (g, report) in &results {
        let verdict = laufer_run(g, &LauferOptions::default()).unwrap().verdict;
        let lspace = verdict == Verdict::LatticeLSpace;
        if report.laufer_verdict != LauferOutcome::from(verdict) {
            violations.push(format!("report disagrees with laufer on\n{}", g.serialize()));
        }
        let d: Vec<i64> = (0..g.len()).map(|v| g.deficiency(v)).collect();
        let bad = |v: usize| d[v] >= 1;
        let bad_neighbors = |v: usize| g.neighbors(v).iter().filter(|&&u| bad(u)).count() as i64;
        let very_bad = d.iter().any(|&x| x >= 2);
        let e8 = find_proper_e8(g).is_some();
        let adjacent_bad = g.edges().iter().any(|&(a, b)| bad(a) && bad(b));
        let crowded_good = (0..g.len()).any(|v| !bad(v) && d[v] + bad_neighbors(v) >= 2);
        for (name, holds) in [
            ("very bad vertex", very_bad),
            ("proper E8", e8),
            ("adjacent bad pair", adjacent_bad),
            ("good vertex with d+K >= 2", crowded_good),
        ] {
            if holds && lspace {
                violations.push(format!("{name} but L-space:\n{}", g.serialize()));
            }
        }
        let insulated = !very_bad && !adjacent_bad && (0..g.len()).all(|v| bad(v) || d[v] + bad_neighbors(v) <= 0);
        if insulated && !lspace {
            violations.push(format!("insulated but not L-space:\n{}", g.serialize()));
        }
        if insulated != report.insulated {
            violations.push(format!("insulation disagrees with report:\n{}", g.serialize()));
        }
        if very_bad != find_very_bad(g).is_some() {
            violations.push(format!("very bad detection disagrees:\n{}", g.serialize()));
        }
    }
    check(violations.is_empty(), || {
        format!("{} violations, first: {}", violations.len(), violations[0])
    })?;
    Ok(format!("{} trees, 0 violations", results.len()))
}

fn full_run(g: &PlumbingGraph, tie_break: TieBreak) -> LatticeVector {
    let opts = LauferOptions {
        tie_break,
        early_exit: false,
        ..LauferOptions::default()
    };
    laufer_run(g, &opts).unwrap().z_min.expect("converges")
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(7);
    let strategies = [
        TieBreak::Last,
        TieBreak::MaxPairing,
        TieBreak::SeededRandom(1),
        TieBreak::SeededRandom(2),
    ];
    for i in 0..500 {
        let g = common::random_nd_tree(&mut rng, 12, -6, -2);
        let z = full_run(&g, TieBreak::First);
        for tb in strategies {
            let other = full_run(&g, tb);
            check(other == z, || format!("instance {i}: {tb} gives {}", other.render(&g)))?;
        }
        let verdict = laufer_run(&g, &LauferOptions::default()).unwrap().verdict;
        check(deficiency_iteration(&g).unwrap() == verdict, || {
            format!("deficiency iteration disagrees on\n{}", g.serialize())
        })?;
    }
    let small: Vec<_> = weighted_trees(6, -5, -2).into_iter().filter(is_negative_definite).collect();
    for g in &small {
        let z = full_run(g, TieBreak::First);
        let mut bound = 1;
        let oracle = loop {
            match min_cycle_bruteforce(g, bound) {
                Ok(v) => break v,
                Err(plumbing::laufer::BruteForceError::NoCandidate { .. }) => bound += 1,
                Err(e) => return Err(format!("{e} on\n{}", g.serialize())),
            }
        };
        check(oracle == z, || {
            format!("oracle {} vs laufer {} on\n{}", oracle.render(g), z.render(g), g.serialize())
        })?;
        let verdict = laufer_run(g, &LauferOptions::default()).unwrap().verdict;
        check(deficiency_iteration(g).unwrap() == verdict, || {
            format!("deficiency iteration disagrees on\n{}", g.serialize())
        })?;
    }
    Ok(format!("500 random trees, {} brute-force checks", small.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    for _ in 0..1000 {
        let mut p: i64 = rng.gen_range(-1_000_000..=1_000_000);
        if p == 0 {
            p = -1;
        }
        let q: i64 = rng.gen_range(1..=1_000_000);
        let r = rational(p, q);
        let e = hj_expand(&r).map_err(|e| e.to_string())?;
        check(hj_value(&e) == r, || format!("{r} -> {e} -> {}", hj_value(&e)))?;
        if r < rational(-1, 1) {
            check(e.entries().iter().all(|&a| a <= -2), || format!("{r} -> {e}"))?;
        }
    }
    Ok("1000 rationals".into())
}

fn criterion_9() -> Outcome {
    let mut rng = common::rng(9);
    for _ in 0..500 {
        let g = common::random_tree(&mut rng, 12, -7, 1);
        let d = abelianization_invariants(&mumford_presentation(&g, None).unwrap());
        let product: BigInt = d.iter().filter(|x| !x.is_zero()).product();
        let det = tree_determinant(&g).abs();
        if det.is_zero() {
            check(d.iter().any(Zero::is_zero), || format!("no free part for\n{}", g.serialize()))?;
        } else {
            check(product == det, || format!("product {product} vs |det| {det} for\n{}", g.serialize()))?;
        }
    }
    let d = abelianization_invariants(&mumford_presentation(&e8(), None).unwrap());
    check(d.iter().all(|x| *x == BigInt::from(1)), || format!("E8 divisors {d:?}"))?;
    Ok("500 random trees, E8 H1 trivial".into())
}

fn criterion_10() -> Outcome {
    let mut rng = common::rng(10);
    let mut instances = 0;
    let mut moves = 0;
    while instances < 1000 {
        let g = common::random_tree(&mut rng, 12, -9, 1);
        let det = tree_determinant(&g).abs();
        let mut any = false;
        for v in 0..g.len() {
            if let Ok(h) = blow_down_once(&g, g.id(v)) {
                any = true;
                moves += 1;
                let after = tree_determinant(&h).abs();
                check(after == det, || format!("|det| {det} -> {after} blowing down {}", g.id(v)))?;
            }
        }
        instances += usize::from(any);
    }
    let m = minimalize(&PlumbingGraph::chain(&[-3, -1, -3]).unwrap());
    check(m.weights() == [-2, -2] && m.edges().len() == 1, || format!("chain minimalizes to\n{}", m.serialize()))?;
    Ok(format!("{moves} blow-downs on 1000 instances; (-3,-1,-3) -> (-2,-2)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("E8 golden test", criterion_1, Duration::from_secs(1)),
        ("E8 plus one vertex: cycles and verdicts", criterion_2, Duration::from_secs(1)),
        ("de-rationaliser golden test", criterion_3, Duration::from_secs(1)),
        ("surgery along the de-rationaliser is singular", criterion_4, Duration::from_secs(10)),
        ("interval bounds on E8 arms", criterion_5, Duration::from_secs(10)),
        ("property suite over exhaustive enumeration", criterion_6, Duration::from_secs(300)),
        ("path independence and oracle equivalence", criterion_7, Duration::from_secs(300)),
        ("continued fraction roundtrip", criterion_8, Duration::from_secs(1)),
        ("abelianization cross-check", criterion_9, Duration::from_secs(30)),
        ("blow-down soundness", criterion_10, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *budget {
            outcome = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}) [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({detail}) [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

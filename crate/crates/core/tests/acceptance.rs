//! Acceptance criteria, one line of output each.
//!
//! Runs without the libtest harness so that the verdict lines always show.
//! All arithmetic is exact; the only tolerances are the wall-clock budgets.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use cuntz_core::constants::{u_cp, v_cp, w_cp};
use cuntz_core::decision::*;
use cuntz_core::endo::{
    gauge, is_unitary, lambda_apply, left_inverse, shift, sum_of_words_profile,
};
use cuntz_core::expr::parse;
use cuntz_core::intertwiner::*;
use cuntz_core::{Element, Laurent, Target};

type Outcome = Result<(), String>;
type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SUB_SECOND: Duration = Duration::from_secs(1);

/// Vertices `(name, label)` and edges of the reference drawing of `E_w` for `w = v u`.
const REFERENCE_VERTICES: [(&str, i32); 6] = [
    ("11", 1),
    ("122", 0),
    ("211", -1),
    ("22", 0),
    ("121", 0),
    ("212", 0),
];
const REFERENCE_EDGES: [(&str, &str); 7] = [
    ("11", "122"),
    ("122", "211"),
    ("211", "22"),
    ("22", "121"),
    ("22", "212"),
    ("121", "11"),
    ("212", "11"),
];

fn w0() -> Element {
    parse("S1 S11* + S21 S12* + S22 S2*", 2).unwrap()
}

fn criterion_1() -> Outcome {
    let (u, v) = (u_cp(), v_cp());
    ensure!(is_unitary(&u), "u is not unitary");
    ensure!(u.is_in(Target::F), "u is not in F_2");
    ensure!(u.is_in(Target::Fk(4)), "u does not live in F_2^4");
    ensure!(is_unitary(&v), "v is not unitary");
    let off: Vec<i32> = v.degrees().into_iter().filter(|&d| d != 0).collect();
    ensure!(!off.is_empty(), "v has no off-degree terms");
    ensure!(!v.is_in(Target::F), "v is in F_2");
    ensure!(is_self_intertwiner(&u, &v).unwrap(), "v != u phi(v) u^*");
    Ok(())
}

fn criterion_2() -> Outcome {
    let w = w_cp();
    ensure!(w == &v_cp() * &u_cp(), "w != v u");
    ensure!(!w.is_in(Target::F), "w is in F_2");
    let a = agree_on_f(&u_cp(), &w, 4).map_err(|e| e.to_string())?;
    ensure!(
        a.agree,
        "lambda_u and lambda_w differ at level {:?}",
        a.failing_level
    );
    for m in [MethodChoice::Graph, MethodChoice::Cocycle] {
        let r = decide_preserves(&w, m, None).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::Preserves, "{m:?} says {}", r.verdict);
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let profile = sum_of_words_profile(&w_cp()).map_err(|e| e.to_string())?;
    let build = build_ew(&profile).map_err(|e| e.to_string())?;
    ensure!(build.is_complete(), "edge rule incomplete");
    let g = &build.graph;
    ensure!(
        g.vertices.len() == 6,
        "{} overlap classes",
        g.vertices.len()
    );
    let mut labels: Vec<i32> = g.vertices.iter().map(|v| v.label).collect();
    labels.sort();
    ensure!(labels == [-1, 0, 0, 0, 0, 1], "label multiset {labels:?}");
    ensure!(path_condition(g).holds, "path condition fails");

    let ours: BTreeSet<(String, i32)> = g
        .vertices
        .iter()
        .map(|v| (v.name.clone(), v.label))
        .collect();
    let reference: BTreeSet<(String, i32)> = REFERENCE_VERTICES
        .iter()
        .map(|(n, l)| (n.to_string(), *l))
        .collect();
    if ours != reference {
        return Err(format!(
            "vertex naming differs from the reference: derived {ours:?}, reference {reference:?}"
        ));
    }
    let edges: BTreeSet<(String, String)> = g.named_edges().into_iter().collect();
    let ref_edges: BTreeSet<(String, String)> = REFERENCE_EDGES
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    ensure!(edges.len() == 7, "{} edges", edges.len());
    ensure!(
        edges == ref_edges,
        "edges {edges:?} differ from {ref_edges:?}"
    );
    Ok(())
}

fn criterion_4() -> Outcome {
    let w = w0();
    ensure!(is_unitary(&w), "w0 is not unitary");
    ensure!(sum_of_words_profile(&w).is_ok(), "w0 is not a sum of words");

    // Oracle: some level-one matrix unit leaves F_2 under lambda_{w0}.
    let leaves = matrix_units(w.context(), 1)
        .iter()
        .any(|x| !lambda_apply(&w, x).unwrap().is_in(Target::F));
    ensure!(leaves, "every level-one image stays in F_2");

    let r = decide_preserves(&w, MethodChoice::Auto, None).map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::NotPreserves, "verdict {}", r.verdict);
    let Certificate::Violation { violation, cocycle } = &r.certificate else {
        return Err("no violation certificate".into());
    };
    ensure!(violation.level == 1, "failing level {}", violation.level);
    ensure!(violation.reproduces(&w), "witness does not reproduce");
    let f = cocycle.as_ref().ok_or("no cocycle certificate")?;
    let half = Laurent::from_ratio(1, 2);
    let expected = &(&Laurent::g_pow(1) + &Laurent::g_pow(-1)) * &half;
    let (_, c) = f.bad_block.as_ref().ok_or("no offending block")?;
    ensure!(
        *c == expected,
        "offending coefficient {c}, expected {expected}"
    );
    ensure!(c.as_monomial().is_none(), "coefficient {c} is a monomial");
    Ok(())
}

fn criterion_5() -> Outcome {
    let u = u_cp();
    let r = intertwiner_space(&u, 3).map_err(|e| e.to_string())?;
    ensure!(r.dimension >= 2, "dimension {}", r.dimension);
    let oracle = dense_kernel_dimension(&u, 3);
    ensure!(
        r.dimension == oracle,
        "dimension {} vs dense {}",
        r.dimension,
        oracle
    );
    ensure!(r.contains(&v_cp()), "v not in the computed space");
    ensure!(
        is_self_intertwiner(&u, &v_cp()).unwrap(),
        "v is not a fixed point"
    );
    for b in &r.basis {
        ensure!(
            is_self_intertwiner(&u, b).unwrap(),
            "basis element {b} not fixed"
        );
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut r = rng(0x5eed_0006);
    for case in 0..150 {
        let n = 2 + (case % 3) as u32;
        let c = ctx(n);
        let x = random_element(&mut r, c, 4, 3);
        let y = random_element(&mut r, c, 4, 3);
        let z = random_element(&mut r, c, 4, 3);
        ensure!(&x + &y == &y + &x, "addition not commutative");
        ensure!(
            &(&x * &y) * &z == &x * &(&y * &z),
            "product not associative"
        );
        ensure!(
            &x * &(&y + &z) == &(&x * &y) + &(&x * &z),
            "not distributive"
        );
        ensure!(
            (&x * &y).adjoint() == &y.adjoint() * &x.adjoint(),
            "adjoint"
        );
        let mut sum = Element::zero(c);
        for i in 1..=c.n() {
            let s = Element::generator(c, i).unwrap();
            ensure!((&s.adjoint() * &s).is_identity(), "S_{i}^* S_{i} != I");
            ensure!(&s * &x == &shift(&x) * &s, "S_i x != phi(x) S_i");
            sum = &sum + &(&s * &s.adjoint());
        }
        ensure!(sum.is_identity(), "sum of range projections != I");
        ensure!(left_inverse(&shift(&x)) == x, "phi_hat(phi(x)) != x");

        if n == 2 {
            let w = random_s_unitary(&mut r, c);
            let lxy = lambda_apply(&w, &(&x * &y)).unwrap();
            let lx = lambda_apply(&w, &x).unwrap();
            let ly = lambda_apply(&w, &y).unwrap();
            ensure!(lxy == &lx * &ly, "lambda_w not multiplicative for {w}");
            let lhs = lambda_apply(&gauge(&w, 1), &x).unwrap();
            let rhs = gauge(&lambda_apply(&w, &gauge(&x, -1)).unwrap(), 1);
            ensure!(lhs == rhs, "gauge covariance fails for {w}");
        }
        let v = random_words_unitary(&mut r, c, 3);
        let p = sum_of_words_profile(&v).map_err(|e| e.to_string())?;
        ensure!(p.is_n_covering(), "profile of {v} is not an n-covering");
    }
    for _ in 0..200 {
        let w = random_s_unitary(&mut r, ctx(2));
        let chk = normalizer_cocycle_check(&w).map_err(|e| e.to_string())?;
        ensure!(chk.diagonal, "w^* alpha(w) not diagonal for {w}");
        ensure!(
            chk.value == degree_projection_sum(&w).unwrap(),
            "w^* alpha(w) != sum g^deg P_beta for {w}"
        );
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut r = rng(0x5eed_0007);
    let mut conclusive = 0;
    for _ in 0..100 {
        let w = random_degree_restricted(&mut r, ctx(2));
        let cocycle =
            decide_preserves(&w, MethodChoice::Cocycle, Some(40)).map_err(|e| e.to_string())?;
        let graph = decide_preserves(&w, MethodChoice::Graph, None);
        for rep in std::iter::once(&cocycle).chain(graph.as_ref().ok()) {
            if let Certificate::Violation { violation, .. } = &rep.certificate {
                ensure!(
                    violation.reproduces(&w),
                    "witness for {w} does not reproduce"
                );
            }
        }
        if let Ok(g) = &graph {
            if cocycle.verdict != Verdict::Undecided {
                conclusive += 1;
                ensure!(
                    g.verdict == cocycle.verdict,
                    "graph {} vs cocycle {} on {w}",
                    g.verdict,
                    cocycle.verdict
                );
            }
        }
    }
    ensure!(
        conclusive >= 20,
        "only {conclusive} samples decided by both methods"
    );

    let mut r = rng(0x5eed_0008);
    for _ in 0..100 {
        let (labels, edges) = random_digraph(&mut r, 8);
        let g = EwGraph::from_labels(&labels, edges.iter().copied());
        let bfs = path_condition(&g);
        let naive8 = naive_path_condition(&labels, &edges, 8);
        let bfs_fails_by_8 = bfs.witness.as_ref().is_some_and(|w| w.length <= 8);
        ensure!(
            bfs_fails_by_8 == naive8.is_some(),
            "BFS and enumeration disagree on {labels:?} {edges:?}"
        );
        if let (Some(w), Some(k)) = (&bfs.witness, naive8) {
            ensure!(w.length == k, "shortest failing length {} vs {k}", w.length);
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let w = w_cp();
    let c = coboundary_witness(&w).map_err(|e| e.to_string())?;
    ensure!(
        is_unitary(&c.u) && c.u.is_in(Target::F),
        "U is not a unitary of F_2"
    );
    ensure!(is_unitary(&c.z), "z is not unitary");
    let lhs = left_inverse(&(&w.adjoint() * &gauge(&w, 1)));
    let rhs = &c.z * &gauge(&c.z.adjoint(), 1);
    ensure!(
        lhs == rhs,
        "phi_hat(w^* alpha(w)) = {lhs} but z alpha(z^*) = {rhs}"
    );
    for x in matrix_units(w.context(), 1) {
        ensure!(
            lambda_apply(&c.u, &x).unwrap() == lambda_apply(&w, &x).unwrap(),
            "lambda_U and lambda_w differ on {x}"
        );
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "constant verification", criterion_1, SUB_SECOND),
        (2, "counterexample pipeline", criterion_2, SUB_SECOND),
        (3, "graph fidelity", criterion_3, SUB_SECOND),
        (4, "negative control", criterion_4, SUB_SECOND),
        (
            5,
            "intertwiner recovery",
            criterion_5,
            Duration::from_secs(30),
        ),
        (6, "property suites", criterion_6, Duration::from_secs(60)),
        (
            7,
            "decision cross-validation",
            criterion_7,
            Duration::from_secs(60),
        ),
        (8, "coboundary witness", criterion_8, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= budget {
                Ok(())
            } else {
                Err(format!("over budget ({budget:?})"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {id} {name}: PASS ({elapsed:.2?} / {budget:?})"),
            Err(e) => {
                failed += 1;
                println!("criterion {id} {name}: FAIL ({elapsed:.2?} / {budget:?}) {e}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

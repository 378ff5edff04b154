use std::io::Write;

use cuntz_core::constants::{u_cp, v_cp, w_cp};
use cuntz_core::decision::{
    self, build_ew, decide_preserves, path_condition, Certificate, CocycleFailure, DecisionReport,
    MethodChoice, Recursion, Verdict,
};
use cuntz_core::endo::{is_unitary, lambda_apply, sum_of_words_profile};
use cuntz_core::expr::{parse, render, to_json, to_json_value};
use cuntz_core::intertwiner::{
    agree_on_f, coboundary_witness, degree_projection_sum, intertwiner_space, is_self_intertwiner,
    normalizer_cocycle_check, perturb, Order,
};
use cuntz_core::{Element, Error, Target};
use serde_json::json;

use crate::{search, Cli, Command, Exit, MethodArg, OrderArg};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult = Result<Exit, CliError>;

fn element(cli: &Cli, text: &str) -> Result<Element, CliError> {
    Ok(parse(text, cli.n)?)
}

fn print_element(cli: &Cli, out: &mut impl Write, x: &Element) -> CliResult {
    if cli.json {
        writeln!(out, "{}", to_json(x))?;
    } else {
        writeln!(out, "{}", render(x))?;
    }
    Ok(Exit::Yes)
}

fn print_bool(cli: &Cli, out: &mut impl Write, key: &str, b: bool) -> CliResult {
    if cli.json {
        writeln!(out, "{}", json!({ key: b }))?;
    } else {
        writeln!(out, "{b}")?;
    }
    Ok(Exit::from_bool(b))
}

fn parse_target(name: &str, level: Option<usize>) -> Result<Target, CliError> {
    let need =
        |what: &str| level.ok_or_else(|| CliError::Usage(format!("--in {what} requires --level")));
    let lower = name.to_ascii_lowercase();
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| CliError::Usage(format!("unknown target `{name}`")))
    };
    match lower.as_str() {
        "f" => Ok(Target::F),
        "d" => Ok(Target::D),
        "fk" => Ok(Target::Fk(need("Fk")?)),
        "phik" => Ok(Target::PhiRange(need("phik")?)),
        s if s.starts_with("phi") => Ok(Target::PhiRange(number(&s[3..])?)),
        s if s.starts_with('f') => Ok(Target::Fk(number(&s[1..])?)),
        _ => Err(CliError::Usage(format!(
            "unknown target `{name}`; expected F, Fk, D or phik"
        ))),
    }
}

fn verdict_exit(v: Verdict) -> Exit {
    match v {
        Verdict::Preserves => Exit::Yes,
        Verdict::NotPreserves => Exit::No,
        Verdict::Undecided => Exit::Undecided,
    }
}

fn recursion_name(r: Recursion) -> &'static str {
    match r {
        Recursion::Tilde => "z~",
        Recursion::Standard => "z",
    }
}

fn write_failure(out: &mut impl Write, f: &CocycleFailure) -> std::io::Result<()> {
    let name = recursion_name(f.recursion);
    writeln!(out, "cocycle: {name}_{} = {}", f.level, f.cocycle)?;
    writeln!(
        out,
        "  in range of phi: {}, unitary: {}",
        f.in_shift_range, f.unitary
    )?;
    if let Some((gamma, c)) = &f.bad_block {
        writeln!(out, "  offending block: P_{gamma} with coefficient {c}")?;
    }
    Ok(())
}

pub fn write_report(out: &mut impl Write, r: &DecisionReport) -> std::io::Result<()> {
    writeln!(out, "verdict: {}", r.verdict)?;
    writeln!(out, "method: {}", r.method)?;
    writeln!(out, "depth: {}", r.depth)?;
    match &r.certificate {
        Certificate::Violation { violation, cocycle } => {
            writeln!(out, "witness: {} (level {})", violation.witness, violation.level)?;
            writeln!(out, "image: {}", violation.image)?;
            if let Some(f) = cocycle {
                write_failure(out, f)?;
            }
        }
        Certificate::PathCondition {
            condition,
            vertices,
            edges,
        } => writeln!(
            out,
            "certificate: path condition holds on {vertices} vertices and {edges} edges ({} pair states, r = {})",
            condition.pair_states, condition.bound_r
        )?,
        Certificate::Cycle {
            recursion,
            start,
            period,
        } => {
            let name = recursion_name(*recursion);
            writeln!(
                out,
                "certificate: {name}_{} = {name}_{start} (period {period})",
                start + period
            )?
        }
        Certificate::None => writeln!(out, "certificate: none")?,
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut impl Write) -> CliResult {
    match &cli.command {
        Command::Normalize { expr } => {
            let x = element(cli, expr)?;
            print_element(cli, out, &x)
        }
        Command::Mul { exprs } => {
            let mut acc = element(cli, &exprs[0])?;
            for e in &exprs[1..] {
                acc = acc.checked_mul(&element(cli, e)?)?;
            }
            print_element(cli, out, &acc)
        }
        Command::Adjoint { expr } => {
            let x = element(cli, expr)?;
            print_element(cli, out, &x.adjoint())
        }
        Command::Eq { left, right } => {
            let b = element(cli, left)?.equals(&element(cli, right)?)?;
            print_bool(cli, out, "equal", b)
        }
        Command::Unitary { expr } => {
            let x = element(cli, expr)?;
            print_bool(cli, out, "unitary", is_unitary(&x))
        }
        Command::Member {
            expr,
            target,
            level,
        } => {
            let x = element(cli, expr)?;
            let m = x.membership(parse_target(target, *level)?);
            if cli.json {
                let w = m.witness.as_ref().map(to_json_value);
                writeln!(out, "{}", json!({ "member": m.member, "witness": w }))?;
            } else {
                writeln!(out, "{}", m.member)?;
                if let Some(w) = &m.witness {
                    writeln!(out, "preimage: {w}")?;
                }
            }
            Ok(Exit::from_bool(m.member))
        }
        Command::Lambda { u, x } => {
            let img = lambda_apply(&element(cli, u)?, &element(cli, x)?)?;
            print_element(cli, out, &img)
        }
        Command::PreservesUhf { w, method, depth } => {
            let w = element(cli, w)?;
            let method = match method {
                MethodArg::Auto => MethodChoice::Auto,
                MethodArg::Graph => MethodChoice::Graph,
                MethodArg::Cocycle => MethodChoice::Cocycle,
                MethodArg::Direct => MethodChoice::Direct,
            };
            let r = decide_preserves(&w, method, *depth)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
            } else {
                write_report(out, &r)?;
            }
            Ok(verdict_exit(r.verdict))
        }
        Command::Cocycles { w, k } => {
            let w = element(cli, w)?;
            let (seq, failure) = decision::cocycle::tilde_sequence(&w, *k)?;
            if cli.json {
                let v = json!({
                    "cocycles": seq.iter().map(to_json_value).collect::<Vec<_>>(),
                    "failure": failure,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                for (i, z) in seq.iter().enumerate() {
                    writeln!(out, "z~_{} = {z}", i + 1)?;
                }
                if let Some(f) = &failure {
                    writeln!(out, "level {} fails", f.level)?;
                    write_failure(out, f)?;
                }
            }
            Ok(Exit::from_bool(failure.is_none()))
        }
        Command::Graph { w, dot } => {
            let w = element(cli, w)?;
            let build = build_ew(&sum_of_words_profile(&w)?)?;
            let g = &build.graph;
            let pc = path_condition(g);
            if let Some(path) = dot {
                std::fs::write(path, g.to_dot())?;
            }
            if cli.json {
                let v = json!({
                    "graph": g,
                    "complete": build.is_complete(),
                    "path_condition": pc,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "vertices:")?;
                for v in &g.vertices {
                    let label = if v.label > 0 {
                        format!("+{}", v.label)
                    } else {
                        v.label.to_string()
                    };
                    writeln!(out, "  {} : {label}", v.name)?;
                }
                writeln!(out, "edges:")?;
                for (a, b) in g.named_edges() {
                    writeln!(out, "  {a} -> {b}")?;
                }
                if !build.is_complete() {
                    writeln!(
                        out,
                        "warning: some tail extends an alpha; the edge rule is incomplete"
                    )?;
                }
                match &pc.witness {
                    None => writeln!(out, "path condition: holds (r = {})", pc.bound_r)?,
                    Some(wit) => writeln!(
                        out,
                        "path condition: fails; walks of length {} from {} end at {} ({:+}) and {} ({:+})",
                        wit.length, wit.start, wit.ends.0, wit.labels.0, wit.ends.1, wit.labels.1
                    )?,
                }
            }
            Ok(Exit::from_bool(pc.holds && build.is_complete()))
        }
        Command::Intertwiner { u, check, level } => {
            let u = element(cli, u)?;
            if let Some(v) = check {
                let b = is_self_intertwiner(&u, &element(cli, v)?)?;
                return print_bool(cli, out, "self_intertwiner", b);
            }
            let r = intertwiner_space(&u, level.unwrap_or(2))?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
            } else {
                writeln!(out, "level: {}", r.level)?;
                writeln!(out, "dimension: {} of {}", r.dimension, r.ambient_dimension)?;
                for b in &r.basis {
                    let tag = if b.is_in(Target::F) {
                        ""
                    } else {
                        "  [not in F]"
                    };
                    writeln!(out, "  {b}{tag}")?;
                }
            }
            Ok(Exit::Yes)
        }
        Command::Perturb { u, v, order } => {
            let order = match order {
                OrderArg::Left => Order::Left,
                OrderArg::ShiftRight => Order::ShiftRight,
            };
            let w = perturb(&element(cli, u)?, &element(cli, v)?, order)?;
            print_element(cli, out, &w)
        }
        Command::Agree { v, w, depth } => {
            let a = agree_on_f(&element(cli, v)?, &element(cli, w)?, *depth)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string(&a)?)?;
            } else if let Some(k) = a.failing_level {
                writeln!(out, "disagree at level {k}")?;
            } else {
                writeln!(out, "agree up to level {depth}")?;
            }
            Ok(Exit::from_bool(a.agree))
        }
        Command::VerifyConstants => verify_constants(cli, out),
        Command::Search {
            k,
            samples,
            seed,
            level,
        } => search::run(cli, out, *k, *samples, *seed, *level),
    }
}

type Claim = (&'static str, Result<bool, Error>);

fn claims() -> Vec<Claim> {
    let (u, v, w) = (u_cp(), v_cp(), w_cp());
    let w0 = parse("S1 S11* + S21 S12* + S22 S2*", 2);
    let verdict = |m: MethodChoice| decide_preserves(&w, m, None).map(|r| r.verdict);
    vec![
        ("u_cp is unitary", Ok(is_unitary(&u))),
        ("u_cp lies in F_2^4", Ok(u.is_in(Target::Fk(4)))),
        ("v_cp is unitary", Ok(is_unitary(&v))),
        ("v_cp is not in F_2", Ok(!v.is_in(Target::F))),
        ("v_cp = u_cp phi(v_cp) u_cp^*", is_self_intertwiner(&u, &v)),
        (
            "w_cp = v_cp u_cp is unitary and not in F_2",
            Ok(is_unitary(&w) && !w.is_in(Target::F)),
        ),
        (
            "perturb(u_cp, v_cp, left) = w_cp",
            perturb(&u, &v, Order::Left).map(|x| x == w),
        ),
        (
            "lambda_w_cp = lambda_u_cp on F_2^4",
            agree_on_f(&u, &w, 4).map(|a| a.agree),
        ),
        (
            "E_w has 6 vertices and 7 edges and the path condition holds",
            sum_of_words_profile(&w)
                .and_then(|p| build_ew(&p))
                .map(|b| {
                    b.graph.vertices.len() == 6
                        && b.graph.edges.len() == 7
                        && path_condition(&b.graph).holds
                }),
        ),
        (
            "graph method: PRESERVES",
            verdict(MethodChoice::Graph).map(|v| v == Verdict::Preserves),
        ),
        (
            "cocycle method: PRESERVES",
            verdict(MethodChoice::Cocycle).map(|v| v == Verdict::Preserves),
        ),
        (
            "v_cp^* alpha_t(v_cp) = sum g^(|a|-|b|) P_b",
            normalizer_cocycle_check(&v)
                .and_then(|c| Ok(c.diagonal && c.value == degree_projection_sum(&v)?)),
        ),
        (
            "coboundary witness for w_cp verifies",
            coboundary_witness(&w).map(|c| c.u.is_in(Target::F)),
        ),
        (
            "S1 S11* + S21 S12* + S22 S2* fails at level 1",
            w0.and_then(|x| decide_preserves(&x, MethodChoice::Auto, None))
                .map(|r| r.verdict == Verdict::NotPreserves && r.depth == 1),
        ),
    ]
}

fn verify_constants(cli: &Cli, out: &mut impl Write) -> CliResult {
    let results = claims();
    let all = results.iter().all(|(_, r)| matches!(r, Ok(true)));
    if cli.json {
        let v: Vec<_> = results
            .iter()
            .map(|(claim, r)| match r {
                Ok(b) => json!({ "claim": claim, "pass": b }),
                Err(e) => json!({ "claim": claim, "pass": false, "error": e.to_string() }),
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        for (claim, r) in &results {
            match r {
                Ok(true) => writeln!(out, "PASS  {claim}")?,
                Ok(false) => writeln!(out, "FAIL  {claim}")?,
                Err(e) => writeln!(out, "FAIL  {claim}: {e}")?,
            }
        }
    }
    Ok(Exit::from_bool(all))
}

//! The cocycle recursion for `lambda_w` and `lambda_{alpha_t(w)}`.
//!
//! Two sequences are tracked side by side:
//!
//! * tilde: `z~_0 = I`, `z~_k = phi_hat(w^* z~_{k-1} alpha_t(w))`,
//! * standard: `z_1 = phi_hat(w^* alpha_t(w))`, `z_{k+1} = phi_hat(w^* z_k w)`.
//!
//! Both stay unitary and in the shift range up to level `k` exactly when
//! `lambda_w(F_n^k)` is contained in `F_n`. A repeated state in either
//! sequence means the recursion never fails.

use std::collections::HashMap;

use serde::Serialize;

use crate::coeff::Laurent;
use crate::element::Element;
use crate::endo::{gauge, is_partition, is_unitary, left_inverse, shift};
use crate::error::Result;
use crate::word::{MultiIndex, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Recursion {
    Tilde,
    Standard,
}

/// Why a step of the recursion failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleFailure {
    pub level: usize,
    pub recursion: Recursion,
    /// `w^* z alpha_t(w)` (or `w^* z w`) lies in the range of `phi`.
    pub in_shift_range: bool,
    /// The extracted `z` is unitary.
    pub unitary: bool,
    /// The extracted `z = phi_hat(...)`.
    pub cocycle: Element,
    /// For diagonal `z`: a block `P_gamma` whose coefficient is not a
    /// unimodular monomial, or a zero coefficient on an uncovered block.
    pub bad_block: Option<(MultiIndex, Laurent)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocycleOutcome {
    Failed(CocycleFailure),
    /// `state[start + period] == state[start]` in the given sequence.
    Cycle {
        recursion: Recursion,
        start: usize,
        period: usize,
    },
    /// No failure and no repetition within the depth budget.
    Exhausted,
}

/// Full trace of a run. `tilde[k]` is `z~_k` (with `tilde[0] = I`);
/// `standard[k - 1]` is `z_k`.
#[derive(Clone, Debug)]
pub struct CocycleRun {
    pub tilde: Vec<Element>,
    pub standard: Vec<Element>,
    pub outcome: CocycleOutcome,
}

/// Unitarity of a diagonal element read off its blocks.
///
/// The normal form of a diagonal element is a combination of projections
/// `P_gamma` with pairwise incomparable `gamma`, so it is unitary iff every
/// coefficient is unimodular and the `gamma` cover the unit.
pub fn diagonal_unitarity(z: &Element) -> std::result::Result<(), (MultiIndex, Laurent)> {
    debug_assert!(z.terms().all(|(w, _)| w.is_diagonal()));
    if let Some((w, c)) = z.terms().find(|(_, c)| !c.is_unimodular()) {
        return Err((w.alpha.clone(), c.clone()));
    }
    let gammas: Vec<MultiIndex> = z.terms().map(|(w, _)| w.alpha.clone()).collect();
    if is_partition(&gammas, z.n()) {
        return Ok(());
    }
    Err((uncovered(&gammas, z.n()), Laurent::zero()))
}

/// Some cylinder disjoint from all of `gammas`, which must not cover the unit.
fn uncovered(gammas: &[MultiIndex], n: u8) -> MultiIndex {
    let mut cur = MultiIndex::empty();
    loop {
        if !gammas.iter().any(|g| g.is_comparable(&cur)) {
            return cur;
        }
        let next = (1..=n)
            .map(|i| cur.concat(&[i]))
            .find(|c| !gammas.iter().any(|g| g.is_prefix_of(c)));
        match next {
            Some(c) => cur = c,
            None => unreachable!("gammas cover the unit"),
        }
    }
}

fn is_diagonal(z: &Element) -> bool {
    z.terms().all(|(w, _)| w.is_diagonal())
}

fn step(
    w_star: &Element,
    prev: &Element,
    right: &Element,
    level: usize,
    recursion: Recursion,
) -> std::result::Result<Element, CocycleFailure> {
    let pre = &(w_star * prev) * right;
    let z = left_inverse(&pre);
    let in_shift_range = shift(&z) == pre;
    let (unitary, bad_block) = if is_diagonal(&z) {
        match diagonal_unitarity(&z) {
            Ok(()) => (true, None),
            Err(b) => (false, Some(b)),
        }
    } else {
        (is_unitary(&z), None)
    };
    if in_shift_range && unitary {
        Ok(z)
    } else {
        Err(CocycleFailure {
            level,
            recursion,
            in_shift_range,
            unitary,
            cocycle: z,
            bad_block,
        })
    }
}

/// Runs both recursions for `k = 1..=depth`.
pub fn cocycle_run(w: &Element, depth: usize) -> Result<CocycleRun> {
    if !is_unitary(w) {
        return Err(crate::error::Error::NotUnitary);
    }
    let ctx = w.context();
    let w_star = w.adjoint();
    let gw = gauge(w, 1);
    let mut tilde = vec![Element::identity(ctx)];
    let mut standard: Vec<Element> = Vec::new();
    let mut seen_tilde: HashMap<Element, usize> = HashMap::from([(tilde[0].clone(), 0)]);
    let mut seen_std: HashMap<Element, usize> = HashMap::new();

    let finish = |tilde, standard, outcome| {
        Ok(CocycleRun {
            tilde,
            standard,
            outcome,
        })
    };
    for k in 1..=depth {
        let t = match step(&w_star, &tilde[k - 1], &gw, k, Recursion::Tilde) {
            Ok(z) => z,
            Err(f) => return finish(tilde, standard, CocycleOutcome::Failed(f)),
        };
        let s = if k == 1 {
            step(
                &w_star,
                &Element::identity(ctx),
                &gw,
                k,
                Recursion::Standard,
            )
        } else {
            step(&w_star, &standard[k - 2], w, k, Recursion::Standard)
        };
        let s = match s {
            Ok(z) => z,
            Err(f) => return finish(tilde, standard, CocycleOutcome::Failed(f)),
        };
        tilde.push(t.clone());
        standard.push(s.clone());
        if let Some(&j) = seen_tilde.get(&t) {
            let outcome = CocycleOutcome::Cycle {
                recursion: Recursion::Tilde,
                start: j,
                period: k - j,
            };
            return finish(tilde, standard, outcome);
        }
        if let Some(&j) = seen_std.get(&s) {
            let outcome = CocycleOutcome::Cycle {
                recursion: Recursion::Standard,
                start: j,
                period: k - j,
            };
            return finish(tilde, standard, outcome);
        }
        seen_tilde.insert(t, k);
        seen_std.insert(s, k);
    }
    finish(tilde, standard, CocycleOutcome::Exhausted)
}

/// `z~_1, ..., z~_depth`, continuing past repetitions; stops at the first failure.
pub fn tilde_sequence(w: &Element, depth: usize) -> Result<(Vec<Element>, Option<CocycleFailure>)> {
    if !is_unitary(w) {
        return Err(crate::error::Error::NotUnitary);
    }
    let w_star = w.adjoint();
    let gw = gauge(w, 1);
    let mut z = Element::identity(w.context());
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        match step(&w_star, &z, &gw, k, Recursion::Tilde) {
            Ok(next) => {
                out.push(next.clone());
                z = next;
            }
            Err(f) => return Ok((out, Some(f))),
        }
    }
    Ok((out, None))
}

/// `(1/n) sum_{beta in J_2} g^{psi(beta)} P_{beta~}`, the shape a standard
/// cocycle of a sum-of-words unitary takes when written over tails.
pub fn psi_element(ctx: crate::element::Context, labelled: &[(MultiIndex, i32)]) -> Element {
    let inv_n = num_rational::BigRational::new(1.into(), (ctx.n() as i64).into());
    Element::from_terms(
        ctx,
        labelled.iter().map(|(beta, psi)| {
            (
                Word::projection(beta.tail()),
                Laurent::monomial(inv_n.clone(), *psi),
            )
        }),
    )
}

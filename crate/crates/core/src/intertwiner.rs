//! Self-intertwiners of `lambda_u`, perturbations of `u` that leave
//! `lambda_u` unchanged on `F_n`, and coboundary witnesses for gauge cocycles.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::Laurent;
use crate::decision::direct::find_violation;
use crate::element::{Context, Element, Target};
use crate::endo::{
    all_indices, gauge, is_unitary, left_inverse, shift, sum_of_words_profile, Lambda, Tower,
};
use crate::error::{Error, Result};
use crate::linalg::{null_space, SparseMatrix};
use crate::word::{MultiIndex, Word};

fn require_unitary(u: &Element) -> Result<()> {
    if is_unitary(u) {
        Ok(())
    } else {
        Err(Error::NotUnitary)
    }
}

/// `(Ad u o phi)(x) = u phi(x) u^*`.
pub fn ad_shift(u: &Element, x: &Element) -> Element {
    &(u * &shift(x)) * &u.adjoint()
}

/// Is `v` a fixed point of `Ad u o phi`?
pub fn is_self_intertwiner(u: &Element, v: &Element) -> Result<bool> {
    require_unitary(u)?;
    v.equals(&ad_shift(u, v))
}

/// Target length of `beta` for a word of degree `d` in the basis of `Span_L`.
fn top_beta_len(level: usize, d: i32) -> Option<usize> {
    let l = level as i32;
    if d.abs() > l {
        None
    } else if d >= 0 {
        Some((l - d) as usize)
    } else {
        Some(level)
    }
}

/// Basis of `Span_L = span{S_a S_b^* : |a|, |b| <= L}`: for every degree `d`
/// the words of that degree with `max(|a|, |b|) = L`.
pub fn span_basis(ctx: Context, level: usize) -> Vec<Word> {
    let l = level as i32;
    let mut out = Vec::new();
    for d in -l..=l {
        let b_len = top_beta_len(level, d).expect("|d| <= L");
        let a_len = (b_len as i32 + d) as usize;
        for a in all_indices(ctx, a_len) {
            for b in all_indices(ctx, b_len) {
                out.push(Word::new(a.clone(), b));
            }
        }
    }
    out.sort();
    out
}

/// `{x in Span_L : x = u phi(x) u^*}` with rational coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct SpanBasisReport {
    pub level: usize,
    pub dimension: usize,
    /// Dimension of `Span_L` itself.
    pub ambient_dimension: usize,
    pub basis: Vec<Element>,
    #[serde(skip)]
    columns: Vec<Word>,
    #[serde(skip)]
    free: Vec<usize>,
}

impl SpanBasisReport {
    /// Exact membership in the computed space.
    pub fn contains(&self, v: &Element) -> bool {
        let Some(coords) = self.coordinates(v) else {
            return false;
        };
        let ctx = v.context();
        let mut sum = Element::zero(ctx);
        for (f, b) in self.free.iter().zip(&self.basis) {
            if let Some(c) = coords.get(&self.columns[*f]) {
                sum = &sum + &b.scale(c);
            }
        }
        sum == *v
    }

    /// Coordinates of `v` in the word basis of `Span_L`, if it lies there
    /// with rational coefficients.
    fn coordinates(&self, v: &Element) -> Option<HashMap<Word, BigRational>> {
        let level = self.level;
        if v.terms()
            .any(|(w, _)| top_beta_len(level, w.degree()).is_none())
        {
            return None;
        }
        let terms = v.expanded(|d| top_beta_len(level, d).unwrap_or(0))?;
        let mut out = HashMap::new();
        for (w, c) in terms {
            if !c.is_constant() || w.alpha.len() > level {
                return None;
            }
            out.insert(w, c.constant_term());
        }
        Some(out)
    }
}

/// Computes the rational fixed points of `Ad u o phi` inside `Span_L`.
///
/// Unknowns are the coefficients of the [`span_basis`] words. The equations
/// `u phi(x) u^* - x = 0` are read off after expanding every image so that
/// words of each degree share one `beta` length; each power of `g` gives its
/// own block of equations.
pub fn intertwiner_space(u: &Element, level: usize) -> Result<SpanBasisReport> {
    require_unitary(u)?;
    let ctx = u.context();
    let columns = span_basis(ctx, level);
    let images: Vec<Element> = columns
        .iter()
        .map(|w| {
            let b = Element::from_word(ctx, w.clone());
            &ad_shift(u, &b) - &b
        })
        .collect();
    let mut max_beta: HashMap<i32, usize> = HashMap::new();
    for img in &images {
        for (w, _) in img.terms() {
            let e = max_beta.entry(w.degree()).or_insert(0);
            *e = (*e).max(w.beta.len());
        }
    }
    let mut row_index: HashMap<(i32, Word), usize> = HashMap::new();
    let mut entries: Vec<Vec<(usize, BigRational)>> = Vec::new();
    for (col, img) in images.iter().enumerate() {
        let expanded = img
            .expanded(|d| max_beta[&d])
            .expect("targets are maximal lengths");
        for (w, c) in expanded {
            for (p, q) in c.iter() {
                let next = row_index.len();
                let r = *row_index.entry((p, w.clone())).or_insert(next);
                if r == entries.len() {
                    entries.push(Vec::new());
                }
                entries[r].push((col, q.clone()));
            }
        }
    }
    let mut m = SparseMatrix::new(columns.len());
    for row in entries {
        m.push_row(row);
    }
    let echelon = crate::linalg::row_reduce(&m);
    let free = echelon.free_columns();
    let basis: Vec<Element> = echelon
        .null_space()
        .into_iter()
        .map(|x| {
            Element::from_terms(
                ctx,
                columns
                    .iter()
                    .zip(x)
                    .filter(|(_, q)| !q.is_zero())
                    .map(|(w, q)| (w.clone(), Laurent::monomial(q, 0))),
            )
        })
        .collect();
    debug_assert_eq!(null_space(&m).len(), basis.len());
    Ok(SpanBasisReport {
        level,
        dimension: basis.len(),
        ambient_dimension: columns.len(),
        basis,
        columns,
        free,
    })
}

/// Outcome of comparing `lambda_v` and `lambda_w` on `F_n^1, ..., F_n^K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub agree: bool,
    pub failing_level: Option<usize>,
    pub depth: usize,
}

/// Checks `w_k^* v_k in phi^k(O_n)` for `k = 1..=depth`, cross-checked by
/// the recursion `z_1 = phi_hat(w^* v)`, `z_{k+1} = phi_hat(w^* z_k v)`.
pub fn agree_on_f(v: &Element, w: &Element, depth: usize) -> Result<Agreement> {
    require_unitary(v)?;
    require_unitary(w)?;
    if v.context() != w.context() {
        return Err(Error::ContextMismatch {
            left: v.n(),
            right: w.n(),
        });
    }
    let mut tv = Tower::new(v)?;
    let mut tw = Tower::new(w)?;
    let w_star = w.adjoint();
    let mut z = Element::identity(v.context());
    let mut failing = None;
    for k in 1..=depth {
        let by_range = (tw.get_adjoint(k) * tv.get(k)).is_in(Target::PhiRange(k));
        let pre = &(&w_star * &z) * v;
        let next = left_inverse(&pre);
        let by_recursion = shift(&next) == pre && is_unitary(&next);
        if by_range != by_recursion {
            return Err(Error::Inconsistent(format!(
                "level {k}: range test says {by_range}, recursion says {by_recursion}"
            )));
        }
        if !by_range {
            failing = Some(k);
            break;
        }
        z = next;
    }
    Ok(Agreement {
        agree: failing.is_none(),
        failing_level: failing,
        depth,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Order {
    /// `u phi(v)`.
    ShiftRight,
    /// `v u`.
    #[default]
    Left,
}

/// Depth to which [`perturb`] verifies its own result.
pub const PERTURB_CHECK_DEPTH: usize = 3;

/// A unitary `w` with `lambda_w = lambda_u` on `F_n`, built from a
/// self-intertwiner `v` of `lambda_u`.
pub fn perturb(u: &Element, v: &Element, order: Order) -> Result<Element> {
    if !is_self_intertwiner(u, v)? {
        return Err(Error::PreconditionFailed(
            "v is not a self-intertwiner of lambda_u".into(),
        ));
    }
    if !is_unitary(v) {
        return Err(Error::PreconditionFailed("v is not unitary".into()));
    }
    let w = match order {
        Order::ShiftRight => u * &shift(v),
        Order::Left => v * u,
    };
    let check = agree_on_f(u, &w, PERTURB_CHECK_DEPTH)?;
    if !check.agree {
        return Err(Error::Inconsistent(format!(
            "perturbation disagrees with lambda_u at level {:?}",
            check.failing_level
        )));
    }
    Ok(w)
}

/// A unitary `U` in `F_n` with `lambda_U = lambda_w` on `F_n^1`, and `z` with
/// `w^* U = phi(z)`, so that `phi_hat(w^* alpha_t(w)) = z alpha_t(z^*)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coboundary {
    pub u: Element,
    pub z: Element,
}

/// Constructs the coboundary data for `w`.
///
/// `U = sum_i e_i1 V S_1 S_i^*` where `e_ij = lambda_w(S_i S_j^*)` and `V`
/// is the partial isometry from `P_1` onto `e_11` that pairs the level-`m`
/// cylinders of both in lexicographic order. Only diagonal `e_11` with unit
/// coefficients is handled.
pub fn coboundary_witness(w: &Element) -> Result<Coboundary> {
    require_unitary(w)?;
    let ctx = w.context();
    let mut lambda = Lambda::new(w)?;
    if find_violation(&mut lambda, 1, sum_of_words_profile(w).is_ok()).is_some() {
        return Err(Error::PreconditionFailed(
            "lambda_w does not map F_n^1 into F_n".into(),
        ));
    }
    let (u, z) = if w.is_in(Target::F) {
        (w.clone(), Element::identity(ctx))
    } else {
        let u = matching_unitary(ctx, &mut lambda)?;
        let pre = &w.adjoint() * &u;
        let z = left_inverse(&pre);
        if shift(&z) != pre {
            return Err(Error::Inconsistent(
                "w^* U is not in the range of phi".into(),
            ));
        }
        (u, z)
    };
    let lhs = left_inverse(&(&w.adjoint() * &gauge(w, 1)));
    let rhs = &z * &gauge(&z.adjoint(), 1);
    if lhs != rhs || !is_unitary(&z) {
        return Err(Error::Inconsistent("coboundary identity fails".into()));
    }
    Ok(Coboundary { u, z })
}

fn matching_unitary(ctx: Context, lambda: &mut Lambda) -> Result<Element> {
    let n = ctx.n();
    let unit = |i: u8, j: u8| Element::from_word(ctx, Word::from_slices(&[i], &[j]));
    let e = |lambda: &mut Lambda, i: u8, j: u8| lambda.apply(&unit(i, j));
    let e11 = e(lambda, 1, 1)?;
    if !e11.terms().all(|(w, c)| w.is_diagonal() && c.is_one()) {
        return Err(Error::Unsupported(
            "lambda_w(S_1 S_1^*) is not a sum of diagonal projections".into(),
        ));
    }
    let m = e11.max_length().max(1);
    let targets: Vec<Word> = e11
        .expanded(|_| m)
        .expect("m is the maximal length")
        .into_iter()
        .map(|(w, _)| w)
        .collect();
    let sources = all_indices(ctx, m - 1);
    if targets.len() != sources.len() {
        return Err(Error::Inconsistent(format!(
            "rank of lambda_w(S_1 S_1^*) is {} of {} at level {m}",
            targets.len(),
            (n as usize).pow(m as u32)
        )));
    }
    let v = Element::sum_of_words(
        ctx,
        targets
            .iter()
            .zip(&sources)
            .map(|(t, s)| Word::new(t.alpha.clone(), s.prepend(1)))
            .collect::<Vec<_>>()
            .iter(),
    );
    let mut u = Element::zero(ctx);
    for i in 1..=n {
        let ei1 = e(lambda, i, 1)?;
        u = &u + &(&(&ei1 * &v) * &unit(1, i));
    }
    Ok(u)
}

/// `w^* alpha_t(w)` for a sum-of-words unitary and whether it is diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizerCheck {
    pub diagonal: bool,
    pub value: Element,
}

pub fn normalizer_cocycle_check(w: &Element) -> Result<NormalizerCheck> {
    sum_of_words_profile(w)?;
    let value = &w.adjoint() * &gauge(w, 1);
    Ok(NormalizerCheck {
        diagonal: value.is_in(Target::D),
        value,
    })
}

/// `sum_{(a, b)} g^{|a| - |b|} P_b` over the index pairs of `w`.
pub fn degree_projection_sum(w: &Element) -> Result<Element> {
    let profile = sum_of_words_profile(w)?;
    Ok(Element::from_terms(
        w.context(),
        profile
            .pairs()
            .iter()
            .map(|(a, b): &(MultiIndex, MultiIndex)| {
                (
                    Word::projection(b.clone()),
                    Laurent::monomial(BigRational::one(), a.len() as i32 - b.len() as i32),
                )
            }),
    ))
}

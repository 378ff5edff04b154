//! Direct evaluation of `lambda_w` on matrix units of `F_n^k`.

use crate::element::{Element, Target};
use crate::endo::{all_indices, sum_of_words_profile, Lambda};
use crate::error::Result;
use crate::word::{MultiIndex, Word};

use super::{Certificate, DecisionReport, Method, Verdict};

/// A matrix unit of `F_n^k` whose image leaves `F_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub level: usize,
    pub witness: Element,
    pub image: Element,
}

impl Violation {
    /// Re-evaluates `lambda_w(witness)` and confirms it is not in `F_n`.
    pub fn reproduces(&self, w: &Element) -> bool {
        match crate::endo::lambda_apply(w, &self.witness) {
            Ok(img) => img == self.image && !img.is_in(Target::F),
            Err(_) => false,
        }
    }
}

/// Searches the matrix units `S_a S_b^*`, `|a| = |b| = level`.
///
/// For sums of words every `lambda_w(S_a)` is a sum of words whose betas
/// partition unity, so `lambda_w(S_a S_b^*)` is in `F_n` iff the degree
/// profiles of `lambda_w(S_a)` and `lambda_w(S_b)` agree pointwise. Comparing
/// every profile against the first one then finds a violation if any exists.
pub(crate) fn find_violation(lambda: &mut Lambda, level: usize, words: bool) -> Option<Violation> {
    let ctx = lambda.unitary().context();
    let indices = all_indices(ctx, level);
    let images: Vec<Element> = indices.iter().map(|a| lambda.apply_isometry(a)).collect();
    let unit =
        |a: &MultiIndex, b: &MultiIndex| Element::from_word(ctx, Word::new(a.clone(), b.clone()));
    let check = |lambda: &mut Lambda, i: usize, j: usize| -> Option<Violation> {
        let image = &images[i] * &images[j].adjoint();
        (!image.is_in(Target::F)).then(|| {
            let witness = unit(&indices[i], &indices[j]);
            debug_assert_eq!(lambda.apply(&witness).ok().as_ref(), Some(&image));
            Violation {
                level,
                witness,
                image,
            }
        })
    };
    if words {
        let first = &images[0];
        for (j, img) in images.iter().enumerate().skip(1) {
            if profiles_differ(first, img) {
                return check(lambda, 0, j);
            }
        }
        None
    } else {
        for i in 0..images.len() {
            for j in 0..images.len() {
                if let Some(v) = check(lambda, i, j) {
                    return Some(v);
                }
            }
        }
        None
    }
}

/// Do two sums of words assign different degrees to some overlapping pair of ranges?
fn profiles_differ(a: &Element, b: &Element) -> bool {
    a.terms().any(|(x, _)| {
        b.terms()
            .any(|(y, _)| x.beta.is_comparable(&y.beta) && x.degree() != y.degree())
    })
}

/// Applies `lambda_w` to the matrix units of `F_n^k` for `k = 1..=depth`.
///
/// Can refute preservation but never certify it.
pub fn direct_check(w: &Element, depth: usize) -> Result<DecisionReport> {
    let mut lambda = Lambda::new(w)?;
    let words = sum_of_words_profile(w).is_ok();
    for level in 1..=depth {
        if let Some(v) = find_violation(&mut lambda, level, words) {
            return Ok(DecisionReport {
                verdict: Verdict::NotPreserves,
                method: Method::Direct,
                certificate: Certificate::Violation {
                    violation: v,
                    cocycle: None,
                },
                depth: level,
            });
        }
    }
    Ok(DecisionReport {
        verdict: Verdict::Undecided,
        method: Method::Direct,
        certificate: Certificate::None,
        depth,
    })
}

//! The canonical shift, its left inverse, the gauge action and the
//! endomorphisms `lambda_u`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::coeff::Laurent;
use crate::element::{Context, Element};
use crate::error::{Error, Result};
use crate::word::{word_mul, MultiIndex, Word};

/// `phi(x) = sum_i S_i x S_i^*`: prepend `i` to both sides of every word.
pub fn shift(x: &Element) -> Element {
    let ctx = x.context();
    Element::from_terms(
        ctx,
        x.terms().flat_map(|(w, c)| {
            ctx.letters()
                .map(move |i| (Word::new(w.alpha.prepend(i), w.beta.prepend(i)), c.clone()))
        }),
    )
}

pub fn shift_pow(x: &Element, k: usize) -> Element {
    (0..k).fold(x.clone(), |acc, _| shift(&acc))
}

/// `phi_hat(x) = (1/n) sum_i S_i^* x S_i`.
pub fn left_inverse(x: &Element) -> Element {
    let ctx = x.context();
    let n = ctx.n();
    let inv_n = Laurent::monomial(BigRational::new(BigInt::one(), BigInt::from(n)), 0);
    let mut out = Vec::new();
    for i in ctx.letters() {
        let si_star = Word::from_slices(&[], &[i]);
        let si = Word::from_slices(&[i], &[]);
        for (w, c) in x.terms() {
            if let Some(p) = word_mul(&si_star, w).and_then(|p| word_mul(&p, &si)) {
                out.push((p, c * &inv_n));
            }
        }
    }
    Element::from_terms(ctx, out)
}

pub fn left_inverse_pow(x: &Element, k: usize) -> Element {
    (0..k).fold(x.clone(), |acc, _| left_inverse(&acc))
}

/// `alpha_t^power`: multiplies each word of degree `d` by `g^(power * d)`.
pub fn gauge(x: &Element, power: i32) -> Element {
    x.map_coefficients(|w, c| c.shift_power(power * w.degree()))
}

/// Symbolic check of `x x^* = x^* x = I`, with a fast path for sums of words.
pub fn is_unitary(x: &Element) -> bool {
    if x.has_unit_coefficients() {
        let alphas: Vec<MultiIndex> = x.terms().map(|(w, _)| w.alpha.clone()).collect();
        let betas: Vec<MultiIndex> = x.terms().map(|(w, _)| w.beta.clone()).collect();
        if is_partition(&alphas, x.n()) && is_partition(&betas, x.n()) {
            return true;
        }
    }
    let xs = x.adjoint();
    (x * &xs).is_identity() && (&xs * x).is_identity()
}

/// `sum P_gamma = I`: pairwise incomparable with Kraft sum one.
pub fn is_partition(indices: &[MultiIndex], n: u8) -> bool {
    let mut sorted: Vec<&MultiIndex> = indices.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|p| p[0].is_prefix_of(p[1])) {
        return false;
    }
    let n = BigInt::from(n);
    let total: BigRational = sorted
        .iter()
        .map(|g| BigRational::new(BigInt::one(), num_traits::pow(n.clone(), g.len())))
        .sum();
    total.is_one()
}

fn require_unitary(u: &Element) -> Result<()> {
    if is_unitary(u) {
        Ok(())
    } else {
        Err(Error::NotUnitary)
    }
}

/// Lazily computed `u_k = u phi(u) ... phi^{k-1}(u)` and adjoints.
#[derive(Clone, Debug)]
pub struct Tower {
    u: Element,
    powers: Vec<Element>,
    adjoints: Vec<Element>,
}

impl Tower {
    pub fn new(u: &Element) -> Result<Self> {
        require_unitary(u)?;
        Ok(Self::new_unchecked(u))
    }

    fn new_unchecked(u: &Element) -> Self {
        let id = Element::identity(u.context());
        Self {
            u: u.clone(),
            powers: vec![id.clone()],
            adjoints: vec![id],
        }
    }

    pub fn unitary(&self) -> &Element {
        &self.u
    }

    /// `u_k`, with `u_0 = I`.
    pub fn get(&mut self, k: usize) -> &Element {
        while self.powers.len() <= k {
            let prev = self.powers.last().expect("u_0 present");
            let next = &self.u * &shift(prev);
            self.adjoints.push(next.adjoint());
            self.powers.push(next);
        }
        &self.powers[k]
    }

    /// `u_k^*`.
    pub fn get_adjoint(&mut self, k: usize) -> &Element {
        self.get(k);
        &self.adjoints[k]
    }
}

/// `u_k` for a unitary `u`.
pub fn u_tower(u: &Element, k: usize) -> Result<Element> {
    Ok(Tower::new(u)?.get(k).clone())
}

/// The endomorphism `lambda_u`, `lambda_u(S_i) = u S_i`, with its tower cached.
#[derive(Clone, Debug)]
pub struct Lambda {
    tower: Tower,
}

impl Lambda {
    pub fn new(u: &Element) -> Result<Self> {
        Ok(Self {
            tower: Tower::new(u)?,
        })
    }

    pub fn unitary(&self) -> &Element {
        self.tower.unitary()
    }

    pub fn tower(&mut self) -> &mut Tower {
        &mut self.tower
    }

    /// `lambda_u(S_alpha S_beta^*) = u_k S_alpha S_beta^* u_m^*`, extended linearly.
    pub fn apply(&mut self, x: &Element) -> Result<Element> {
        let ctx = self.unitary().context();
        if x.context() != ctx {
            return Err(Error::ContextMismatch {
                left: ctx.n(),
                right: x.n(),
            });
        }
        let mut acc = Element::zero(ctx);
        for (w, c) in x.terms() {
            let left = self.apply_word(w);
            acc = &acc + &left.scalar_mul(c);
        }
        Ok(acc)
    }

    pub fn apply_word(&mut self, w: &Word) -> Element {
        let ctx = self.unitary().context();
        let word = Element::from_word(ctx, w.clone());
        let uk = self.tower.get(w.alpha.len()).clone();
        let um_star = self.tower.get_adjoint(w.beta.len());
        &(&uk * &word) * um_star
    }

    /// `lambda_u(S_alpha) = u_k S_alpha`.
    pub fn apply_isometry(&mut self, alpha: &MultiIndex) -> Element {
        let ctx = self.unitary().context();
        let s = Element::from_word(ctx, Word::new(alpha.clone(), MultiIndex::empty()));
        self.tower.get(alpha.len()) * &s
    }
}

pub fn lambda_apply(u: &Element, x: &Element) -> Result<Element> {
    Lambda::new(u)?.apply(x)
}

/// The unitary implementing `lambda_u . lambda_v`, namely `lambda_u(v) u`.
pub fn compose(u: &Element, v: &Element) -> Result<Element> {
    require_unitary(v)?;
    let image = lambda_apply(u, v)?;
    Ok(&image * u)
}

/// The family `J` of a sum-of-words unitary `w = sum_{(alpha, beta) in J} S_alpha S_beta^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPairSet {
    ctx: Context,
    /// Sorted by `beta`.
    pairs: Vec<(MultiIndex, MultiIndex)>,
    n_covering: bool,
}

impl IndexPairSet {
    /// Validates an explicit presentation. A lone `(0, 0)` pair (the identity)
    /// is split into `{(i, i)}` so that every beta has a tail.
    pub fn from_pairs(ctx: Context, pairs: Vec<(MultiIndex, MultiIndex)>) -> Result<Self> {
        let mut pairs = pairs;
        if pairs.len() == 1 && pairs[0].0.is_empty() && pairs[0].1.is_empty() {
            pairs = ctx
                .letters()
                .map(|i| (MultiIndex::from_slice(&[i]), MultiIndex::from_slice(&[i])))
                .collect();
        }
        for (a, b) in &pairs {
            MultiIndex::new(a.letters(), ctx.n())?;
            MultiIndex::new(b.letters(), ctx.n())?;
        }
        let alphas: Vec<MultiIndex> = pairs.iter().map(|p| p.0.clone()).collect();
        let betas: Vec<MultiIndex> = pairs.iter().map(|p| p.1.clone()).collect();
        if !is_partition(&alphas, ctx.n()) {
            return Err(Error::NotSumOfWords(
                "the projections P_alpha do not form a partition of unity".into(),
            ));
        }
        if !is_partition(&betas, ctx.n()) {
            return Err(Error::NotSumOfWords(
                "the projections P_beta do not form a partition of unity".into(),
            ));
        }
        pairs.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
        let mut set = Self {
            ctx,
            pairs,
            n_covering: false,
        };
        set.n_covering = set.check_n_covering();
        Ok(set)
    }

    fn check_n_covering(&self) -> bool {
        let ctx = self.ctx;
        let total = Element::from_terms(
            ctx,
            self.pairs
                .iter()
                .map(|(_, b)| (Word::projection(b.tail()), Laurent::one())),
        );
        total == Element::scalar(ctx, Laurent::from_int(ctx.n() as i64))
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn pairs(&self) -> &[(MultiIndex, MultiIndex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `J_2`, the betas, in the same order as [`Self::pairs`].
    pub fn betas(&self) -> impl Iterator<Item = &MultiIndex> {
        self.pairs.iter().map(|p| &p.1)
    }

    /// The tails `beta~`, in the same order as [`Self::pairs`].
    pub fn tails(&self) -> Vec<MultiIndex> {
        self.pairs.iter().map(|p| p.1.tail()).collect()
    }

    /// `sum P_{beta~} = n I`.
    pub fn is_n_covering(&self) -> bool {
        self.n_covering
    }

    pub fn degrees(&self) -> BTreeSet<i32> {
        self.pairs
            .iter()
            .map(|(a, b)| a.len() as i32 - b.len() as i32)
            .collect()
    }

    pub fn to_element(&self) -> Element {
        Element::sum_of_words(
            self.ctx,
            self.pairs
                .iter()
                .map(|(a, b)| Word::new(a.clone(), b.clone()))
                .collect::<Vec<_>>()
                .iter(),
        )
    }
}

/// Reads off the index pairs of a sum-of-words unitary.
///
/// The normal form of such an element is its coarsest word presentation, so
/// the check runs on that presentation.
pub fn sum_of_words_profile(x: &Element) -> Result<IndexPairSet> {
    if x.is_zero() {
        return Err(Error::NotSumOfWords("zero element".into()));
    }
    if let Some((w, c)) = x.terms().find(|(_, c)| !c.is_one()) {
        return Err(Error::NotSumOfWords(format!(
            "coefficient {c} on S_{}S_{}^* is not 1",
            w.alpha, w.beta
        )));
    }
    IndexPairSet::from_pairs(
        x.context(),
        x.terms()
            .map(|(w, _)| (w.alpha.clone(), w.beta.clone()))
            .collect(),
    )
}

/// The sum-of-words unitary `sum_gamma S_{sigma(gamma)} S_gamma^*` over all
/// `gamma` of length `k`, where `perm[j]` is the image of the `j`-th index in
/// lexicographic order.
pub fn permutation_unitary(ctx: Context, k: usize, perm: &[usize]) -> Result<Element> {
    let words = all_indices(ctx, k);
    if perm.len() != words.len() {
        return Err(Error::PreconditionFailed(format!(
            "permutation of length {} for {} indices",
            perm.len(),
            words.len()
        )));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::PreconditionFailed("not a permutation".into()));
        }
    }
    let terms: Vec<Word> = words
        .iter()
        .zip(perm)
        .map(|(g, &p)| Word::new(words[p].clone(), g.clone()))
        .collect();
    Ok(Element::sum_of_words(ctx, terms.iter()))
}

/// All multi-indices of length `k` in lexicographic order.
pub fn all_indices(ctx: Context, k: usize) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::empty()];
    for _ in 0..k {
        out = out
            .iter()
            .flat_map(|g| ctx.letters().map(move |i| g.concat(&[i])))
            .collect();
    }
    out
}

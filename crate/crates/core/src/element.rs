//! Elements of the word algebra of `O_n` over `Q[g, 1/g]`, kept in a
//! canonical normal form.
//!
//! Words of a fixed degree are organised in a forest: the children of
//! `S_a S_b^*` are `S_{ai} S_{bi}^*`, `i = 1..n`, and by the Cuntz relation a
//! word equals the sum of its children. Within one tree the element is a
//! function on the leaves of a finite subtree; the normal form pushes every
//! coefficient down to the leaves and then merges complete sibling sets
//! carrying equal coefficients. Words of equal shape are linearly
//! independent, so the result is unique: equal elements have identical term
//! maps.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::coeff::Laurent;
use crate::endo;
use crate::error::{Error, Result};
use crate::word::{word_mul, MultiIndex, Word};

/// The number of Cuntz generators, `2 <= n <= 9`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Context {
    n: u8,
}

impl Context {
    pub fn new(n: u32) -> Result<Self> {
        if (2..=9).contains(&n) {
            Ok(Self { n: n as u8 })
        } else {
            Err(Error::InvalidContext(n))
        }
    }

    pub fn n(self) -> u8 {
        self.n
    }

    pub fn letters(self) -> impl Iterator<Item = u8> + Clone {
        1..=self.n
    }

    fn check(self, other: Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

/// A finite linear combination of words in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    ctx: Context,
    terms: BTreeMap<Word, Laurent>,
}

/// Subalgebras and ranges that [`Element::membership`] can test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// The core UHF algebra `F_n` (degree zero).
    F,
    /// `F_n^k`: degree zero, words of length at most `k`.
    Fk(usize),
    /// The diagonal `D_n`.
    D,
    /// The range of `phi^k`.
    PhiRange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// For `PhiRange(k)`: the extracted preimage `phi_hat^k(x)`.
    pub witness: Option<Element>,
}

impl Element {
    pub fn zero(ctx: Context) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(ctx: Context) -> Self {
        Self::from_word(ctx, Word::identity())
    }

    /// A single word with coefficient one. Letters must already be valid for `ctx`.
    pub fn from_word(ctx: Context, word: Word) -> Self {
        Self::from_terms(ctx, [(word, Laurent::one())])
    }

    /// `S_alpha S_beta^*`, with letters checked.
    pub fn word(ctx: Context, alpha: &[u8], beta: &[u8]) -> Result<Self> {
        let w = Word::new(
            MultiIndex::new(alpha, ctx.n())?,
            MultiIndex::new(beta, ctx.n())?,
        );
        Ok(Self::from_word(ctx, w))
    }

    /// The generator `S_i`.
    pub fn generator(ctx: Context, i: u8) -> Result<Self> {
        Self::word(ctx, &[i], &[])
    }

    /// `P_gamma`.
    pub fn projection(ctx: Context, gamma: &[u8]) -> Result<Self> {
        Self::word(ctx, gamma, gamma)
    }

    pub fn scalar(ctx: Context, c: Laurent) -> Self {
        Self::from_terms(ctx, [(Word::identity(), c)])
    }

    /// Sums arbitrary (possibly repeated or overlapping) terms and normalises.
    pub fn from_terms(ctx: Context, terms: impl IntoIterator<Item = (Word, Laurent)>) -> Self {
        Self {
            ctx,
            terms: normalize_terms(ctx.n(), terms),
        }
    }

    /// Sum of words with unit coefficients.
    pub fn sum_of_words<'a>(ctx: Context, words: impl IntoIterator<Item = &'a Word>) -> Self {
        Self::from_terms(ctx, words.into_iter().map(|w| (w.clone(), Laurent::one())))
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn n(&self) -> u8 {
        self.ctx.n()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(w, c)| *w == Word::identity() && c.is_one())
    }

    /// Terms in canonical order `(degree, beta, alpha)`.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Word, &Laurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Laurent> {
        self.terms.get(w)
    }

    /// Longest multi-index occurring in the normal form.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Word::length).max().unwrap_or(0)
    }

    /// Is every coefficient exactly `1 g^0`?
    pub fn has_unit_coefficients(&self) -> bool {
        self.terms.values().all(Laurent::is_one)
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.ctx.check(other.ctx)?;
        Ok(Self::from_terms(
            self.ctx,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(w, c)| (w.clone(), c.clone())),
        ))
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.ctx.check(other.ctx)?;
        if self.is_identity() {
            return Ok(other.clone());
        }
        if other.is_identity() {
            return Ok(self.clone());
        }
        let mut acc: HashMap<Word, Laurent> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(p) = word_mul(a, b) {
                    let c = ca * cb;
                    match acc.get_mut(&p) {
                        Some(slot) => *slot += &c,
                        None => {
                            acc.insert(p, c);
                        }
                    }
                }
            }
        }
        Ok(Self::from_terms(self.ctx, acc))
    }

    /// `x == y` as algebra elements: `normalize(x - y)` is zero.
    pub fn equals(&self, other: &Element) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }

    pub fn scalar_mul(&self, c: &Laurent) -> Element {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        Self {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Element {
        self.scalar_mul(&Laurent::monomial(q.clone(), 0))
    }

    /// Swaps `alpha` and `beta` in every word and conjugates coefficients.
    pub fn adjoint(&self) -> Element {
        Self::from_terms(
            self.ctx,
            self.terms.iter().map(|(w, c)| (w.adjoint(), c.conj())),
        )
    }

    /// Replaces each coefficient `c` of word `w` by `f(w, c)`.
    pub fn map_coefficients(&self, f: impl Fn(&Word, &Laurent) -> Laurent) -> Element {
        Self::from_terms(
            self.ctx,
            self.terms.iter().map(|(w, c)| (w.clone(), f(w, c))),
        )
    }

    /// Degree-zero part with coefficients restricted to their `g^0` component.
    pub fn gauge_expectation(&self) -> Element {
        Self::from_terms(
            self.ctx,
            self.terms
                .iter()
                .filter(|(w, _)| w.degree() == 0)
                .map(|(w, c)| (w.clone(), Laurent::monomial(c.constant_term(), 0))),
        )
    }

    /// Part of `self` of word degree `d`.
    pub fn degree_part(&self, d: i32) -> Element {
        Self {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(Word::degree).collect();
        d.dedup();
        d
    }

    pub fn membership(&self, target: Target) -> Membership {
        let plain = |member| Membership {
            member,
            witness: None,
        };
        match target {
            Target::F => plain(self.terms.keys().all(|w| w.degree() == 0)),
            Target::Fk(k) => plain(
                self.terms
                    .keys()
                    .all(|w| w.degree() == 0 && w.alpha.len() <= k),
            ),
            Target::D => plain(self.terms.keys().all(Word::is_diagonal)),
            Target::PhiRange(k) => {
                let pre = endo::left_inverse_pow(self, k);
                let member = endo::shift_pow(&pre, k) == *self;
                Membership {
                    member,
                    witness: member.then_some(pre),
                }
            }
        }
    }

    pub fn is_in(&self, target: Target) -> bool {
        self.membership(target).member
    }

    /// Terms expanded so that every word of degree `d` has `|beta| = target(d)`.
    ///
    /// Returns `None` if some word is already longer than its target.
    pub fn expanded(&self, target: impl Fn(i32) -> usize) -> Option<Vec<(Word, Laurent)>> {
        let mut out = Vec::new();
        for (w, c) in &self.terms {
            let goal = target(w.degree());
            if w.beta.len() > goal {
                return None;
            }
            expand_word(w, goal - w.beta.len(), self.n(), &mut |x| {
                out.push((x, c.clone()))
            });
        }
        Some(out)
    }
}

/// Calls `f` on every descendant of `w` exactly `depth` levels down.
pub(crate) fn expand_word(w: &Word, depth: usize, n: u8, f: &mut impl FnMut(Word)) {
    if depth == 0 {
        f(w.clone());
        return;
    }
    for i in 1..=n {
        expand_word(&w.child(i), depth - 1, n, f);
    }
}

#[derive(Default)]
struct Node {
    coeff: Laurent,
    children: BTreeMap<u8, Node>,
}

/// Pushes coefficients to leaves, then merges full sibling sets with equal coefficients.
fn emit(
    node: Option<&Node>,
    n: u8,
    path: &mut Vec<u8>,
    inherited: &Laurent,
    out: &mut Vec<(Vec<u8>, Laurent)>,
) {
    let c = match node {
        Some(nd) if !nd.coeff.is_zero() => inherited + &nd.coeff,
        _ => inherited.clone(),
    };
    let has_children = node.is_some_and(|nd| !nd.children.is_empty());
    if !has_children {
        if !c.is_zero() {
            out.push((path.clone(), c));
        }
        return;
    }
    let children = &node.expect("checked above").children;
    let start = out.len();
    for i in 1..=n {
        path.push(i);
        emit(children.get(&i), n, path, &c, out);
        path.pop();
    }
    let produced = &out[start..];
    let depth = path.len() + 1;
    let collapsible = produced.len() == n as usize
        && produced.iter().enumerate().all(|(k, (p, pc))| {
            p.len() == depth && p[depth - 1] == k as u8 + 1 && *pc == produced[0].1
        });
    if collapsible {
        let merged = produced[0].1.clone();
        out.truncate(start);
        out.push((path.clone(), merged));
    }
}

pub(crate) fn normalize_terms(
    n: u8,
    terms: impl IntoIterator<Item = (Word, Laurent)>,
) -> BTreeMap<Word, Laurent> {
    // Group by tree root: strip the longest common suffix of alpha and beta.
    let mut roots: HashMap<Word, Node> = HashMap::new();
    for (w, c) in terms {
        if c.is_zero() {
            continue;
        }
        let a = w.alpha.letters();
        let b = w.beta.letters();
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[b.len() - 1 - k] {
            k += 1;
        }
        let root = Word::from_slices(&a[..a.len() - k], &b[..b.len() - k]);
        let mut node = roots.entry(root).or_default();
        for &l in &a[a.len() - k..] {
            node = node.children.entry(l).or_default();
        }
        node.coeff += &c;
    }
    let mut out = BTreeMap::new();
    let mut leaves = Vec::new();
    let zero = Laurent::zero();
    for (root, node) in &roots {
        leaves.clear();
        emit(Some(node), n, &mut Vec::new(), &zero, &mut leaves);
        for (path, c) in leaves.drain(..) {
            out.insert(
                Word::new(root.alpha.concat(&path), root.beta.concat(&path)),
                c,
            );
        }
    }
    out
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs)
            .expect("context mismatch in Element + Element")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs)
            .expect("context mismatch in Element - Element")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs)
            .expect("context mismatch in Element * Element")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

/// Serialized in the JSON interchange schema.
impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::expr::to_json_value(self).serialize(s)
    }
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Element(n={}; {})", self.n(), crate::expr::render(self))
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::expr::render(self))
    }
}

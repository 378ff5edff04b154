//! Multi-indices and words `S_alpha S_beta^*`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A finite sequence of letters in `1..=n`. The empty sequence stands for `S_0 = I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(SmallVec<[u8; 12]>);

impl MultiIndex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a multi-index, checking every letter against `n`.
    pub fn new(letters: &[u8], n: u8) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::LetterOutOfRange {
                letter: bad as u32,
                n,
            });
        }
        Ok(Self(SmallVec::from_slice(letters)))
    }

    /// Unchecked constructor for letters already known to be in range.
    pub(crate) fn from_slice(letters: &[u8]) -> Self {
        Self(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &MultiIndex) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `P_self P_other != 0`.
    pub fn is_comparable(&self, other: &MultiIndex) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn concat(&self, other: &[u8]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Self(v)
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// The index with its first letter deleted (`beta~`).
    pub fn tail(&self) -> Self {
        Self(self.0.iter().skip(1).copied().collect())
    }

    pub fn prepend(&self, letter: u8) -> Self {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Self(v)
    }
}

impl serde::Serialize for MultiIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// The word `S_alpha S_beta^*`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl Word {
    pub fn new(alpha: MultiIndex, beta: MultiIndex) -> Self {
        Self { alpha, beta }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// The projection `P_gamma = S_gamma S_gamma^*`.
    pub fn projection(gamma: MultiIndex) -> Self {
        Self {
            alpha: gamma.clone(),
            beta: gamma,
        }
    }

    pub(crate) fn from_slices(alpha: &[u8], beta: &[u8]) -> Self {
        Self {
            alpha: MultiIndex::from_slice(alpha),
            beta: MultiIndex::from_slice(beta),
        }
    }

    /// `|alpha| - |beta|`, the spectral degree under the gauge action.
    pub fn degree(&self) -> i32 {
        self.alpha.len() as i32 - self.beta.len() as i32
    }

    pub fn is_diagonal(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn adjoint(&self) -> Self {
        Self {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Appends `letter` to both sides: one step of the expansion
    /// `S_a S_b^* = sum_i S_{ai} S_{bi}^*`.
    pub fn child(&self, letter: u8) -> Self {
        Self {
            alpha: self.alpha.concat(&[letter]),
            beta: self.beta.concat(&[letter]),
        }
    }

    /// Longest of `|alpha|`, `|beta|`.
    pub fn length(&self) -> usize {
        self.alpha.len().max(self.beta.len())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.beta.cmp(&other.beta))
            .then_with(|| self.alpha.cmp(&other.alpha))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}S{}*", self.alpha, self.beta)
    }
}

/// Product of two words: a word, or `None` for zero.
///
/// `S_a S_b^* S_c S_d^*` is nonzero iff `b` and `c` are prefix-comparable.
pub fn word_mul(a: &Word, b: &Word) -> Option<Word> {
    let left = a.beta.letters();
    let right = b.alpha.letters();
    if let Some(rest) = right.strip_prefix(left) {
        Some(Word {
            alpha: a.alpha.concat(rest),
            beta: b.beta.clone(),
        })
    } else {
        left.strip_prefix(right).map(|rest| Word {
            alpha: a.alpha.clone(),
            beta: b.beta.concat(rest),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: &[u8], b: &[u8]) -> Word {
        Word::from_slices(a, b)
    }

    #[test]
    fn word_mul_examples() {
        assert_eq!(word_mul(&w(&[1], &[2]), &w(&[2], &[])), Some(w(&[1], &[])));
        assert_eq!(word_mul(&w(&[1], &[2]), &w(&[1], &[])), None);
        assert_eq!(
            word_mul(&w(&[], &[1]), &w(&[1, 2], &[2, 1])),
            Some(w(&[2], &[2, 1]))
        );
        // beta longer than the next alpha
        assert_eq!(
            word_mul(&w(&[3], &[1, 2]), &w(&[1], &[])),
            Some(w(&[3], &[2]))
        );
    }

    #[test]
    fn ordering_is_degree_beta_alpha() {
        let mut v = vec![w(&[1], &[]), w(&[2], &[2]), w(&[1], &[1]), w(&[], &[1])];
        v.sort();
        assert_eq!(
            v,
            vec![w(&[], &[1]), w(&[1], &[1]), w(&[2], &[2]), w(&[1], &[])]
        );
    }

    #[test]
    fn letters_are_checked() {
        assert!(MultiIndex::new(&[1, 3], 2).is_err());
        assert!(MultiIndex::new(&[0], 2).is_err());
        assert!(MultiIndex::new(&[1, 2], 2).is_ok());
    }

    #[test]
    fn tail_and_comparability() {
        let a = MultiIndex::from_slice(&[2, 1, 1]);
        assert_eq!(a.tail(), MultiIndex::from_slice(&[1, 1]));
        assert!(MultiIndex::empty().is_comparable(&a));
        assert!(!MultiIndex::from_slice(&[1]).is_comparable(&a));
    }
}

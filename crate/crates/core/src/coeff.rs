//! Laurent polynomials in the formal gauge phase `g` with exact rational
//! coefficients.
//!
//! The gauge action multiplies a word of degree `d` by `e^{itd}`; writing
//! `g = e^{it}` turns every computation into an identity in `Q[g, 1/g]`
//! that holds for all `t` at once. Coefficients are real, so the adjoint
//! only flips the exponent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `Q[g, g^-1]`. The empty map is zero; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// `c * g^power`.
    pub fn monomial(c: BigRational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        Self { terms }
    }

    pub fn g_pow(power: i32) -> Self {
        Self::monomial(BigRational::one(), power)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::monomial(BigRational::new(num.into(), den.into()), 0)
    }

    pub fn from_int(v: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(v)), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    /// Returns `(power, c)` when this is a single monomial `c g^power`.
    pub fn as_monomial(&self) -> Option<(i32, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(p, c)| (*p, c))
        } else {
            None
        }
    }

    /// The `g^0` component.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&0)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&p| p == 0)
    }

    /// Iterates `(power, coefficient)` in increasing power.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adjoint on scalars: `g -> g^-1`, rationals fixed.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(p, c)| (-p, c.clone())).collect(),
        }
    }

    /// Multiplies by `g^shift`.
    pub fn shift_power(&self, shift: i32) -> Self {
        if shift == 0 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p + shift, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(p, c)| (*p, c * q)).collect(),
        }
    }

    /// Adds `c g^power` in place.
    pub fn add_monomial(&mut self, power: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&power) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&power);
                }
            }
            None => {
                self.terms.insert(power, c.clone());
            }
        }
    }

    /// True iff `c(g) c(1/g) = 1`, i.e. the scalar has modulus one for every `t`.
    pub fn is_unimodular(&self) -> bool {
        (self * &self.conj()).is_one()
    }
}

/// Serialized as its display string.
impl serde::Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (p, c) in &rhs.terms {
            self.add_monomial(*p, c);
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut out = Laurent::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_monomial(p + q, &(a * b));
            }
        }
        out
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match (*p, abs.is_one()) {
                (0, _) => fmt_rational(&abs, f)?,
                (_, true) => {}
                (_, false) => {
                    fmt_rational(&abs, f)?;
                    write!(f, " ")?;
                }
            }
            if *p != 0 {
                write!(f, "g^{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn cancellation_leaves_no_zero_entries() {
        let a = Laurent::g_pow(1);
        let b = -&a;
        assert!((&a + &b).is_zero());
        assert_eq!((&a + &b).len(), 0);
    }

    #[test]
    fn conj_flips_exponent() {
        let x = &Laurent::monomial(half(), 3) + &Laurent::from_int(2);
        let y = x.conj();
        assert_eq!(y, &Laurent::monomial(half(), -3) + &Laurent::from_int(2));
        assert_eq!(y.conj(), x);
    }

    #[test]
    fn unimodular_detects_monomials_only() {
        assert!(Laurent::g_pow(5).is_unimodular());
        assert!((-&Laurent::g_pow(-2)).is_unimodular());
        // (g + 1/g)/2 has modulus |cos t|
        let c = &Laurent::monomial(half(), 1) + &Laurent::monomial(half(), -1);
        assert!(!c.is_unimodular());
        assert!(!Laurent::from_ratio(1, 2).is_unimodular());
    }

    #[test]
    fn display() {
        let c = &Laurent::monomial(half(), -1) + &Laurent::monomial(half(), 1);
        assert_eq!(c.to_string(), "1/2 g^-1 + 1/2 g^1");
        assert_eq!((-&Laurent::one()).to_string(), "-1");
        assert_eq!(Laurent::g_pow(2).to_string(), "g^2");
    }
}

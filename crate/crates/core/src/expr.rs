//! Text and JSON surfaces for elements.
//!
//! Grammar:
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := [coeff] factor+
//! factor   := 'I' | 'S' digits ['*'] | '@' name | '(' expr ')'
//! coeff    := rational ['g' ['^' sint]]
//! rational := int ['/' posint]
//! ```
//!
//! Juxtaposed factors multiply left to right. `S121` is `S_1 S_2 S_1` and
//! `S121*` is its adjoint `S_1^* S_2^* S_1^*`. A coefficient with no factor
//! is a scalar multiple of `I`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Number, Value};

use crate::coeff::Laurent;
use crate::constants;
use crate::element::{Context, Element};
use crate::error::{Error, Result};
use crate::word::{MultiIndex, Word};

pub fn parse(text: &str, n: u32) -> Result<Element> {
    let ctx = Context::new(n)?;
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: Context,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Element> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = Element::zero(self.ctx);
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Element> {
        let start = self.pos;
        let coeff = self.coeff()?;
        let mut product: Option<Element> = None;
        while let Some(f) = self.factor()? {
            product = Some(match product {
                None => f,
                Some(p) => &p * &f,
            });
        }
        match (coeff, product) {
            (None, None) => {
                self.pos = self.pos.max(start);
                Err(self.err("expected a term"))
            }
            (Some(c), None) => Ok(Element::scalar(self.ctx, c)),
            (None, Some(p)) => Ok(p),
            (Some(c), Some(p)) => Ok(p.scalar_mul(&c)),
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(digits.parse().expect("digits parse as integer"))
    }

    fn coeff(&mut self) -> Result<Option<Laurent>> {
        let rational = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.int().expect("digit seen");
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    match self.int() {
                        Some(d) if !d.is_zero() => d,
                        _ => return Err(self.err("expected a positive denominator")),
                    }
                } else {
                    BigInt::one()
                };
                Some(BigRational::new(num, den))
            }
            _ => None,
        };
        let power = if self.peek() == Some(b'g') {
            self.pos += 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let neg = match self.src.get(self.pos) {
                    Some(b'-') => {
                        self.pos += 1;
                        true
                    }
                    Some(b'+') => {
                        self.pos += 1;
                        false
                    }
                    _ => false,
                };
                let p = self
                    .int()
                    .ok_or_else(|| self.err("expected an exponent after 'g^'"))?;
                let p: i32 = p
                    .try_into()
                    .map_err(|_| self.err("exponent out of range"))?;
                Some(if neg { -p } else { p })
            } else {
                Some(1)
            }
        } else {
            None
        };
        Ok(match (rational, power) {
            (None, None) => None,
            (r, p) => Some(Laurent::monomial(
                r.unwrap_or_else(BigRational::one),
                p.unwrap_or(0),
            )),
        })
    }

    fn factor(&mut self) -> Result<Option<Element>> {
        match self.peek() {
            Some(b'I') => {
                self.pos += 1;
                Ok(Some(Element::identity(self.ctx)))
            }
            Some(b'S') => {
                self.pos += 1;
                let start = self.pos;
                let mut letters = Vec::new();
                while let Some(&c) = self.src.get(self.pos) {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    let l = c - b'0';
                    if l == 0 || l > self.ctx.n() {
                        return Err(Error::Parse {
                            pos: self.pos,
                            msg: format!("letter {l} out of range 1..={}", self.ctx.n()),
                        });
                    }
                    letters.push(l);
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.err("expected digits after 'S'"));
                }
                let star = self.src.get(self.pos) == Some(&b'*');
                if star {
                    self.pos += 1;
                }
                let idx = MultiIndex::new(&letters, self.ctx.n())?;
                let w = if star {
                    Word::new(MultiIndex::empty(), idx)
                } else {
                    Word::new(idx, MultiIndex::empty())
                };
                Ok(Some(Element::from_word(self.ctx, w)))
            }
            Some(b'@') => {
                let at = self.pos;
                self.pos += 1;
                let start = self.pos;
                while let Some(&c) = self.src.get(self.pos) {
                    if !(c.is_ascii_alphanumeric() || c == b'_') {
                        break;
                    }
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let value = constants::by_name(name)?;
                if value.context() != self.ctx {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("constant @{name} lives in O_{}", value.n()),
                    });
                }
                Ok(Some(value))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(Some(inner))
            }
            _ => Ok(None),
        }
    }
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn word_text(w: &Word) -> String {
    match (w.alpha.is_empty(), w.beta.is_empty()) {
        (true, true) => "I".to_string(),
        (false, true) => format!("S{}", w.alpha),
        (true, false) => format!("S{}*", w.beta),
        (false, false) => format!("S{} S{}*", w.alpha, w.beta),
    }
}

/// Canonical text: terms in normal-form order, one monomial per `g` power.
pub fn render(x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (w, c) in x.terms() {
        for (p, q) in c.iter() {
            let negative = q.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = q.abs();
            let mut parts = Vec::new();
            if p != 0 || !abs.is_one() {
                parts.push(rational_text(&abs));
            }
            if p != 0 {
                parts.push(format!("g^{p}"));
            }
            parts.push(word_text(w));
            out.push_str(&parts.join(" "));
        }
    }
    out
}

fn bigint_number(v: &BigInt) -> Number {
    v.to_string()
        .parse()
        .expect("integer literal is a JSON number")
}

pub fn to_json_value(x: &Element) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(w, c)| {
            let coeff: Vec<Value> = c
                .iter()
                .map(|(p, q)| {
                    json!([
                        p,
                        Value::Number(bigint_number(q.numer())),
                        Value::Number(bigint_number(q.denom()))
                    ])
                })
                .collect();
            json!({
                "alpha": w.alpha.letters(),
                "beta": w.beta.letters(),
                "coeff": coeff,
            })
        })
        .collect();
    json!({ "n": x.n(), "terms": terms })
}

/// Compact JSON: `{"n":..,"terms":[{"alpha":[..],"beta":[..],"coeff":[[gpow,num,den],..]}]}`.
pub fn to_json(x: &Element) -> String {
    to_json_value(x).to_string()
}

pub fn from_json(text: &str) -> Result<Element> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    from_json_value(&v)
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("missing field `{key}`")))
}

fn as_bigint(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(num) => num
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| schema(format!("{what} must be an integer"))),
        _ => Err(schema(format!("{what} must be an integer"))),
    }
}

pub fn from_json_value(v: &Value) -> Result<Element> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("top level must be an object"))?;
    let n: u32 = as_bigint(field(obj, "n")?, "n")?
        .try_into()
        .map_err(|_| schema("n out of range"))?;
    let ctx = Context::new(n).map_err(|e| schema(e.to_string()))?;
    let terms = field(obj, "terms")?
        .as_array()
        .ok_or_else(|| schema("`terms` must be an array"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t
            .as_object()
            .ok_or_else(|| schema("term must be an object"))?;
        let index = |key: &str| -> Result<MultiIndex> {
            let arr = field(t, key)?
                .as_array()
                .ok_or_else(|| schema(format!("`{key}` must be an array")))?;
            let letters = arr
                .iter()
                .map(|l| {
                    let l: u8 = as_bigint(l, "letter")?
                        .try_into()
                        .map_err(|_| schema("letter out of range"))?;
                    Ok(l)
                })
                .collect::<Result<Vec<u8>>>()?;
            MultiIndex::new(&letters, ctx.n()).map_err(|e| schema(e.to_string()))
        };
        let word = Word::new(index("alpha")?, index("beta")?);
        let mut coeff = Laurent::zero();
        let entries = field(t, "coeff")?
            .as_array()
            .ok_or_else(|| schema("`coeff` must be an array"))?;
        for e in entries {
            let e = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| schema("coefficient entries are [gpow, num, den]"))?;
            let p: i32 = as_bigint(&e[0], "gpow")?
                .try_into()
                .map_err(|_| schema("gpow out of range"))?;
            let num = as_bigint(&e[1], "num")?;
            let den = as_bigint(&e[2], "den")?;
            if !den.is_positive() {
                return Err(schema("den must be positive"));
            }
            coeff.add_monomial(p, &BigRational::new(num, den));
        }
        out.push((word, coeff));
    }
    Ok(Element::from_terms(ctx, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(2).unwrap()
    }

    #[test]
    fn parse_examples() {
        let x = parse("S1 S2*", 2).unwrap();
        assert_eq!(x, Element::word(ctx(), &[1], &[2]).unwrap());
        let y = parse("S12 S21* + S11 S22*", 2).unwrap();
        assert_eq!(y.len(), 2);
        let z = parse("1/2 g^-1 I", 2).unwrap();
        assert_eq!(
            z,
            Element::scalar(
                ctx(),
                Laurent::monomial(BigRational::new(1.into(), 2.into()), -1)
            )
        );
    }

    #[test]
    fn composite_adjoint_reverses_letters() {
        // (S_1 S_2)^* = S_2^* S_1^*
        let a = parse("S12*", 2).unwrap();
        let b = parse("S2* S1*", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse("S1 S2 S1", 2).unwrap(), parse("S121", 2).unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(parse("S13", 2), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("S1 +", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("S", 2), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(
            parse("S1 ) ", 2),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(parse("1/0 I", 2), Err(Error::Parse { .. })));
        assert!(parse("S13", 3).is_ok());
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Element::identity(ctx())), "I");
        assert_eq!(render(&Element::zero(ctx())), "0");
        assert_eq!(render(&parse("S1 S2* - 2 S2", 2).unwrap()), "S1 S2* - 2 S2");
        assert_eq!(render(&parse("-1/2 g^-1 S1*", 2).unwrap()), "-1/2 g^-1 S1*");
        assert_eq!(render(&parse("g S1", 2).unwrap()), "1 g^1 S1");
    }

    #[test]
    fn json_identity_is_bit_exact() {
        assert_eq!(
            to_json(&Element::identity(ctx())),
            r#"{"n":2,"terms":[{"alpha":[],"beta":[],"coeff":[[0,1,1]]}]}"#
        );
    }

    #[test]
    fn json_rejects_malformed() {
        let bad = r#"{"n":2,"terms":[{"alpha":[],"beta":[],"coeff":[["0",1,1]]}]}"#;
        assert!(matches!(from_json(bad), Err(Error::Schema(_))));
        assert!(matches!(from_json(r#"{"n":2}"#), Err(Error::Schema(_))));
        assert!(matches!(
            from_json(r#"{"n":12,"terms":[]}"#),
            Err(Error::Schema(_))
        ));
        let letter = r#"{"n":2,"terms":[{"alpha":[3],"beta":[],"coeff":[[0,1,1]]}]}"#;
        assert!(matches!(from_json(letter), Err(Error::Schema(_))));
        let den = r#"{"n":2,"terms":[{"alpha":[],"beta":[],"coeff":[[0,1,0]]}]}"#;
        assert!(matches!(from_json(den), Err(Error::Schema(_))));
    }

    #[test]
    fn big_coefficients_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let x = Element::scalar(ctx(), Laurent::monomial(BigRational::new(big, 7.into()), 3));
        assert_eq!(from_json(&to_json(&x)).unwrap(), x);
    }
}

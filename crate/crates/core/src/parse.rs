//! Polynomial expressions in the input syntax:
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := integer | [integer "*"] factor ("*" factor)*
//! factor := variable ["^" positive-integer]
//! ```
//!
//! Whitespace is insignificant. Coefficients are reduced into the ring's field.

use thiserror::Error;

use crate::polyalgebra::{Monomial, Poly, PolyRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::UnknownVariable { pos, .. } => *pos,
        }
    }
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    /// Digits as a residue mod `p`, plus whether the literal is zero.
    fn integer(&mut self, p: u64) -> Option<(u32, bool)> {
        self.skip_ws();
        let start = self.pos;
        let mut acc: u64 = 0;
        let mut zero = true;
        while let Some(&c) = self.text.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            let digit = u64::from(c - b'0');
            zero &= digit == 0;
            acc = (acc * 10 + digit) % p;
            self.pos += 1;
        }
        (self.pos > start).then_some((acc as u32, zero))
    }

    fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.text.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return None,
        }
        while let Some(c) = self.text.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        std::str::from_utf8(&self.text[start..self.pos]).ok()
    }
}

pub fn parse_polynomial(text: &str, ring: &PolyRing) -> Result<Poly, ParseError> {
    let field = ring.field();
    let nvars = ring.nvars();
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut out = Poly::zero(field, nvars);
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        None => return cur.error("empty polynomial"),
        _ => false,
    };
    loop {
        let (coeff, monomial) = parse_term(&mut cur, ring)?;
        let coeff = if negative { field.neg(coeff) } else { coeff };
        let mut term = Poly::zero(field, nvars);
        term.add_term(monomial, coeff);
        out = out.add(&term);
        negative = match cur.peek() {
            None => break,
            Some(b'+') => false,
            Some(b'-') => true,
            Some(c) => return cur.error(format!("unexpected character `{}`", c as char)),
        };
        cur.pos += 1;
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor<'_>, ring: &PolyRing) -> Result<(u32, Monomial), ParseError> {
    let p = u64::from(ring.field().characteristic());
    let nvars = ring.nvars();
    let mut exps = vec![0u16; nvars];
    let mut coeff = 1u32;
    if let Some((c, _)) = cur.integer(p) {
        coeff = c;
        if !cur.eat(b'*') {
            return Ok((coeff, Monomial::from_exponents(exps)));
        }
    }
    loop {
        let at = {
            cur.skip_ws();
            cur.pos
        };
        let Some(name) = cur.identifier() else {
            return cur.error("expected a variable");
        };
        let Some(i) = ring.variable_index(name) else {
            return Err(ParseError::UnknownVariable {
                name: name.to_string(),
                pos: at,
            });
        };
        let mut e: u64 = 1;
        if cur.eat(b'^') {
            let start = {
                cur.skip_ws();
                cur.pos
            };
            let digits = &cur.text[start..];
            let len = digits.iter().take_while(|c| c.is_ascii_digit()).count();
            if len == 0 {
                return cur.error("expected an exponent");
            }
            e = std::str::from_utf8(&digits[..len])
                .ok()
                .and_then(|s| s.parse().ok())
                .filter(|&e| e > 0 && e <= u64::from(u16::MAX))
                .ok_or(ParseError::Syntax {
                    pos: start,
                    message: "exponent must be a positive integer below 65536".into(),
                })?;
            cur.pos += len;
        }
        let total = u64::from(exps[i]) + e;
        exps[i] = u16::try_from(total).map_err(|_| ParseError::Syntax {
            pos: at,
            message: "exponent overflow".into(),
        })?;
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((coeff, Monomial::from_exponents(exps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use proptest::prelude::*;

    fn ring(p: u32) -> PolyRing {
        PolyRing::new(["x", "y"], FieldSpec::new(p).unwrap()).unwrap()
    }

    #[test]
    fn single_monomial() {
        let r = ring(32003);
        let p = parse_polynomial("x^4", &r).unwrap();
        assert_eq!(r.render(&p), "x^4");
    }

    #[test]
    fn commutativity_cancels() {
        let r = ring(32003);
        assert!(parse_polynomial("x*y - y*x", &r).unwrap().is_zero());
    }

    #[test]
    fn coefficients_mod_seven() {
        let r = ring(7);
        let p = parse_polynomial("3*x^2*y + 2*y^3", &r).unwrap();
        let c: Vec<u32> = p.terms().map(|(_, c)| c).collect();
        let mut c = c;
        c.sort_unstable();
        assert_eq!(c, vec![2, 3]);
        let q = parse_polynomial("10*x - 14*y", &r).unwrap();
        assert_eq!(r.render(&q), "3*x");
    }

    #[test]
    fn whitespace_and_signs() {
        let r = ring(32003);
        let p = parse_polynomial("  - 2 * x ^ 2 +y*  y  ", &r).unwrap();
        assert_eq!(r.render(&p), "-2*x^2 + y^2");
        assert_eq!(r.render(&parse_polynomial("5", &r).unwrap()), "5");
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(32003);
        assert_eq!(
            parse_polynomial("x + z^2", &r),
            Err(ParseError::UnknownVariable {
                name: "z".into(),
                pos: 4
            })
        );
        assert_eq!(parse_polynomial("x +", &r).unwrap_err().position(), 3);
        assert_eq!(parse_polynomial("x y", &r).unwrap_err().position(), 2);
        assert_eq!(parse_polynomial("x^0", &r).unwrap_err().position(), 2);
        assert_eq!(parse_polynomial("x^", &r).unwrap_err().position(), 2);
        assert!(parse_polynomial("", &r).is_err());
        assert!(parse_polynomial("2*", &r).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u16, u16, i64)>> {
        prop::collection::vec((0u16..6, 0u16..6, -40000i64..40000), 0..8)
    }

    proptest! {
        #[test]
        fn render_round_trips(terms in arb_poly(), p in prop::sample::select(vec![2u32, 7, 32003])) {
            let r = ring(p);
            let f = r.field();
            let mut poly = Poly::zero(f, 2);
            for (a, b, c) in terms {
                let mut t = Poly::zero(f, 2);
                t.add_term(Monomial::from_exponents(vec![a, b]), f.reduce(c));
                poly = poly.add(&t);
            }
            let text = r.render(&poly);
            prop_assert_eq!(parse_polynomial(&text, &r).unwrap(), poly);
        }
    }
}

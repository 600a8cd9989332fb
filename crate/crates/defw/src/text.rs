//! Textual element syntax shared by the CLI and the JSON payloads.
//!
//! Monomials are written `h[i,a]`, `c[i,b]`, joined by `*`; elements are
//! signed sums like `-15/14 h[1,0]*h[1,1] + 2 c[1,0]`. Coefficients accept
//! an optional parenthesized form `(p/q)`.

use num_rational::BigRational;
use num_traits::One;

use crate::context::{AlgebraContext, DefwError, Result};
use crate::element::{Element, Rat};
use crate::monomial::Generator;

pub fn parse_element(input: &str, ctx: AlgebraContext) -> Result<Element> {
    Parser::new(input, ctx).parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: AlgebraContext,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ctx: AlgebraContext) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            ctx,
        }
    }

    fn parse(&mut self) -> Result<Element> {
        let mut out = Element::zero(self.ctx);
        self.skip_ws();
        if self.eof() {
            return Err(DefwError::Parse("empty element".into()));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.eof() {
                break;
            }
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                Some(other) => {
                    return Err(DefwError::Parse(format!(
                        "expected '+' or '-' before term, found '{}'",
                        other as char
                    )))
                }
                None => break,
            };
            first = false;
            let term = self.parse_term()?;
            let signed = if sign < 0 { -&term } else { term };
            out = &out + &signed;
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<Element> {
        self.skip_ws();
        let coeff = if matches!(self.peek(), Some(b'0'..=b'9') | Some(b'(')) {
            self.parse_rational()?
        } else {
            Rat::one()
        };
        self.skip_ws();
        if matches!(self.peek(), Some(b'*')) {
            self.pos += 1;
            self.skip_ws();
        }
        let mut factors: Vec<Generator> = Vec::new();
        while matches!(self.peek(), Some(b'h') | Some(b'c')) {
            factors.push(self.parse_generator()?);
            self.skip_ws();
            if matches!(self.peek(), Some(b'*')) {
                self.pos += 1;
                self.skip_ws();
            } else {
                break;
            }
        }
        if factors.is_empty() {
            return Ok(Element::one(self.ctx).scale(&coeff));
        }
        let hs: Vec<(u32, u32)> = factors
            .iter()
            .filter(|g| g.kind == crate::monomial::GenKind::H)
            .map(|g| (g.index, g.order))
            .collect();
        let cs: Vec<(u32, u32)> = factors
            .iter()
            .filter(|g| g.kind == crate::monomial::GenKind::C)
            .map(|g| (g.index, g.order))
            .collect();
        // h-factors keep their written order; from_generators resolves the parity
        let m = Element::from_generators(self.ctx, &hs, &cs)?;
        Ok(m.scale(&coeff))
    }

    fn parse_generator(&mut self) -> Result<Generator> {
        let kind = match self.peek() {
            Some(b'h') => crate::monomial::GenKind::H,
            Some(b'c') => crate::monomial::GenKind::C,
            _ => return Err(DefwError::Parse("expected generator".into())),
        };
        self.pos += 1;
        self.expect(b'[')?;
        let index = self.parse_u32()?;
        self.expect(b',')?;
        let order = self.parse_u32()?;
        self.expect(b']')?;
        Ok(Generator { kind, index, order })
    }

    fn parse_rational(&mut self) -> Result<Rat> {
        let parenthesized = matches!(self.peek(), Some(b'('));
        if parenthesized {
            self.pos += 1;
            self.skip_ws();
        }
        let num = self.parse_u64()? as i64;
        self.skip_ws();
        let r = if matches!(self.peek(), Some(b'/')) {
            self.pos += 1;
            self.skip_ws();
            let den = self.parse_u64()? as i64;
            if den == 0 {
                return Err(DefwError::Parse("zero denominator".into()));
            }
            BigRational::new(num.into(), den.into())
        } else {
            BigRational::from_integer(num.into())
        };
        if parenthesized {
            self.skip_ws();
            self.expect(b')')?;
        }
        Ok(r)
    }

    fn parse_u32(&mut self) -> Result<u32> {
        Ok(self.parse_u64()? as u32)
    }

    fn parse_u64(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(DefwError::Parse("expected integer".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| DefwError::Parse(format!("bad integer: {e}")))
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(DefwError::Parse(format!(
                "expected '{}' at offset {}",
                b as char, self.pos
            )))
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eof(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> AlgebraContext {
        AlgebraContext::free(1)
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "h[1,0]*c[1,0]",
            "-15/14 h[1,0]*h[1,1] + 2 c[1,0]",
            "1/3 h[1,2] - c[1,0]*c[1,1]",
            "0",
            "3",
        ] {
            let e = parse_element(s, ctx()).unwrap();
            let printed = e.to_string();
            let e2 = parse_element(&printed, ctx()).unwrap();
            assert_eq!(e, e2, "round trip through `{printed}`");
        }
    }

    #[test]
    fn parenthesized_coefficients() {
        let a = parse_element("-(15/14) h[1,0]", ctx()).unwrap();
        let b = parse_element("-15/14 h[1,0]", ctx()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn anticommutative_input_order() {
        let a = parse_element("h[1,1]*h[1,0]", ctx()).unwrap();
        let b = parse_element("-h[1,0]*h[1,1]", ctx()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_element("", ctx()).is_err());
        assert!(parse_element("h[1", ctx()).is_err());
        assert!(parse_element("h[2,0]", ctx()).is_err()); // index out of range
        assert!(parse_element("1/0 h[1,0]", ctx()).is_err());
    }
}

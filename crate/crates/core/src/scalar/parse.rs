//! Recursive-descent parser for the scalar expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' int)?
//! base   := int | 'i' | symbol | '(' expr ')' | '-' base
//! ```
//!
//! Whitespace is insignificant. Symbols must be declared in the context;
//! `i` is the imaginary unit and `r` the radial symbol.

use super::{Context, Scalar, ScalarError};
use std::sync::Arc;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Arc<Context>,
}

/// Parses `expr` into a canonical [`Scalar`] over the given context.
pub fn parse_scalar(expr: &str, ctx: &Arc<Context>) -> Result<Scalar, ScalarError> {
    let mut p = Parser { src: expr.as_bytes(), pos: 0, ctx };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let pos = self.pos;
                let rhs = self.factor()?;
                acc = acc.checked_div(&rhs).map_err(|_| ScalarError::Syntax {
                    pos,
                    msg: "division by the zero polynomial".to_string(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.base()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let pos = self.pos;
            let n = self.integer()?;
            let n: i32 = n.try_into().map_err(|_| ScalarError::Syntax {
                pos,
                msg: "exponent out of range".to_string(),
            })?;
            let n = if neg { -n } else { n };
            if n < 0 && base.is_zero() {
                return Err(ScalarError::Syntax {
                    pos,
                    msg: "negative power of zero".to_string(),
                });
            }
            self.skip_ws();
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                Ok(-&self.base()?)
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                self.skip_ws();
                Ok(Scalar::from_int(self.ctx, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|c| c.is_ascii_alphanumeric() || c == b'_')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.skip_ws();
                if name == "i" {
                    return Ok(Scalar::i(self.ctx));
                }
                Scalar::symbol(self.ctx, name)
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }

    fn integer(&mut self) -> Result<i64, ScalarError> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<Context> {
        Context::new(&["rho", "c1", "c2", "a", "t", "k"])
    }

    #[test]
    fn literal_fixtures() {
        let c = ctx();
        assert!(parse_scalar("0", &c).unwrap().is_zero());
        assert_eq!(
            parse_scalar("(2*3)/(4)", &c).unwrap(),
            Scalar::from_ratio(&c, 3, 2)
        );
        let a = parse_scalar("-(c1+c2)/4", &c).unwrap();
        let c1 = Scalar::symbol(&c, "c1").unwrap();
        let c2 = Scalar::symbol(&c, "c2").unwrap();
        assert_eq!(a, -&((&c1 + &c2) / Scalar::from_int(&c, 4)));
    }

    #[test]
    fn precedence_and_powers() {
        let c = ctx();
        let x = parse_scalar("2+3*rho^2", &c).unwrap();
        let rho = Scalar::symbol(&c, "rho").unwrap();
        assert_eq!(
            x,
            &Scalar::from_int(&c, 2) + &(&Scalar::from_int(&c, 3) * &rho.pow(2))
        );
        assert_eq!(parse_scalar("r^-2", &c).unwrap(), Scalar::r(&c).pow(-2));
        assert_eq!(parse_scalar("i^2", &c).unwrap(), Scalar::from_int(&c, -1));
    }

    #[test]
    fn errors_carry_position() {
        let c = ctx();
        match parse_scalar("rho+/2", &c) {
            Err(ScalarError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert_eq!(
            parse_scalar("sigma", &c),
            Err(ScalarError::UndeclaredSymbol("sigma".into()))
        );
        assert!(matches!(
            parse_scalar("1/(rho-rho)", &c),
            Err(ScalarError::Syntax { .. })
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        let c = ctx();
        let samples = [
            "(rho^2 - 2*rho + 1)/(c1*r)",
            "i*rho - (3/4)*c2",
            "-(c1+c2)/4",
            "(1 - i)/(r^2 + 1)",
            "0",
        ];
        for s in samples {
            let v = parse_scalar(s, &c).unwrap();
            let reparsed = parse_scalar(&v.to_string(), &c).unwrap();
            assert_eq!(v, reparsed, "round trip failed for {s}");
        }
    }
}

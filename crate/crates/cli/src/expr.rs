//! Exact rational arithmetic expressions such as `(n-1)/n` or `-0.5`.

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};

#[derive(Debug, Clone, PartialEq)]
pub struct ExprError(pub String);

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: Option<i64>,
}

/// Evaluates `src`, substituting `n` for the variable `n`.
pub fn eval(src: &str, n: Option<i64>) -> Result<Rational64, ExprError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, n };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.fail("unexpected input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn fail(&self, what: &str) -> ExprError {
        ExprError(format!("{what} at position {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Rational64, ExprError> {
        let mut acc = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = checked(if op == b'+' { acc.checked_add(&rhs) } else { acc.checked_sub(&rhs) }, self)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Rational64, ExprError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                checked(acc.checked_mul(&rhs), self)?
            } else if rhs == Rational64::from(0) {
                return Err(self.fail("division by zero"));
            } else {
                checked(acc.checked_div(&rhs), self)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Rational64, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Rational64, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'n') => {
                self.pos += 1;
                self.n.map(Rational64::from).ok_or_else(|| ExprError("expression uses n; pass --n".into()))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(_) => Err(self.fail("unexpected character")),
            None => Err(self.fail("unexpected end of expression")),
        }
    }

    fn number(&mut self) -> Result<Rational64, ExprError> {
        let start = self.pos;
        let mut value = Rational64::from(0);
        let mut scale: Option<i64> = None;
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b'0'..=b'9' => {
                    let digit = Rational64::from(i64::from(c - b'0'));
                    value = match scale.as_mut() {
                        None => checked(value.checked_mul(&Rational64::from(10)).and_then(|v| v.checked_add(&digit)), self)?,
                        Some(s) => {
                            *s = s.checked_mul(10).ok_or_else(|| self.fail("number too long"))?;
                            checked(value.checked_add(&(digit / Rational64::from(*s))), self)?
                        }
                    };
                }
                b'.' if scale.is_none() => scale = Some(1),
                _ => break,
            }
            self.pos += 1;
        }
        if self.pos == start + 1 && self.src[start] == b'.' {
            return Err(self.fail("bad number"));
        }
        Ok(value)
    }
}

fn checked(v: Option<Rational64>, p: &Parser<'_>) -> Result<Rational64, ExprError> {
    v.ok_or_else(|| p.fail("arithmetic overflow"))
}

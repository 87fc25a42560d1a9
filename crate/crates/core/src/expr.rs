//! Recursive-descent parser for phase-space expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'q1' | 'q2' | 'p1' | 'p2' | 'i' | 'hbar' | 'pi'
//!         | 'vacuum' | 'sqrt' integer | '(' expr ')'
//! ```
//!
//! Division is only by nonzero constants with an exact inverse; negative
//! exponents are only allowed on `pi`. The output of
//! [`PhaseSpaceFunction`]'s `Display` parses back to the same function.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::star::{PhaseSpaceFunction, Var};

type F = PhaseSpaceFunction;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    column: usize,
}

fn tokenize(src: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let column = col0 + k;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            let value = text.parse::<u64>().map_err(|_| Error::Parse {
                line,
                column,
                token: text.clone(),
                message: "integer literal too large".into(),
            })?;
            out.push(Token { tok: Tok::Int(value), text, column });
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            out.push(Token { tok: Tok::Ident(text.clone()), text, column });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), text: c.to_string(), column });
            k += 1;
        } else {
            return Err(Error::Parse { line, column, token: c.to_string(), message: "unexpected character".into() });
        }
    }
    out.push(Token { tok: Tok::End, text: String::new(), column: col0 + chars.len() });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, t: &Token, message: &str) -> Error {
        let token = if t.tok == Tok::End { "end of input".to_string() } else { t.text.clone() };
        Error::Parse { line: self.line, column: t.column + 1, token, message: message.into() }
    }

    fn at_op(&self, c: char) -> bool {
        self.peek().tok == Tok::Op(c)
    }

    fn combine(&self, t: &Token, r: Result<F>) -> Result<F> {
        r.map_err(|e| self.error(t, &e.to_string()))
    }

    fn expr(&mut self) -> Result<F> {
        let mut acc = self.term()?;
        while self.at_op('+') || self.at_op('-') {
            let op = self.next();
            let rhs = self.term()?;
            acc = if op.tok == Tok::Op('+') {
                self.combine(&op, acc.checked_add(&rhs))?
            } else {
                self.combine(&op, acc.checked_sub(&rhs))?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<F> {
        let mut acc = self.unary()?;
        while self.at_op('*') || self.at_op('/') {
            let op = self.next();
            let rhs = self.unary()?;
            if op.tok == Tok::Op('*') {
                acc = self.combine(&op, acc.pointwise_mul(&rhs))?;
            } else {
                let inv = rhs
                    .as_constant()
                    .filter(|_| rhs.pi_power() == 0)
                    .and_then(|c| c.inv())
                    .ok_or_else(|| self.error(&op, "division is only allowed by a nonzero constant"))?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<F> {
        if self.at_op('-') {
            self.next();
            return Ok(-self.unary()?);
        }
        if self.at_op('+') {
            self.next();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<F> {
        let start = self.peek().clone();
        let is_pi = start.tok == Tok::Ident("pi".into());
        let base = self.atom()?;
        if !self.at_op('^') {
            return Ok(base);
        }
        let caret = self.next();
        let negative = if self.at_op('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let n = match t.tok {
            Tok::Int(n) => n,
            _ => return Err(self.error(&t, "expected an integer exponent")),
        };
        if is_pi {
            let k = i32::try_from(n).map_err(|_| self.error(&t, "exponent too large"))?;
            return Ok(F::one().times_pi_power(if negative { -k } else { k }));
        }
        if negative {
            return Err(self.error(&caret, "negative exponents are only allowed on pi"));
        }
        let n = u32::try_from(n).map_err(|_| self.error(&t, "exponent too large"))?;
        self.combine(&caret, base.pointwise_pow(n))
    }

    fn atom(&mut self) -> Result<F> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                let v = i64::try_from(*n).map_err(|_| self.error(&t, "integer literal too large"))?;
                Ok(F::constant(Scalar::from_int(v)))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.at_op(')') {
                    let here = self.peek().clone();
                    return Err(self.error(&here, "expected ')'"));
                }
                self.next();
                Ok(inner)
            }
            Tok::Ident(name) => {
                if let Some(v) = Var::from_name(name) {
                    return Ok(F::var(v));
                }
                match name.as_str() {
                    "i" => Ok(F::constant(Scalar::i())),
                    "hbar" => Ok(F::hbar()),
                    "pi" => Ok(F::one().times_pi_power(1)),
                    "vacuum" => Ok(F::vacuum()),
                    _ => match name.strip_prefix("sqrt").map(str::parse::<u64>) {
                        Some(Ok(n)) => Ok(F::constant(Scalar::sqrt(n))),
                        _ => Err(self.error(&t, "unknown identifier")),
                    },
                }
            }
            Tok::End => Err(self.error(&t, "unexpected end of input")),
            Tok::Op(_) => Err(self.error(&t, "expected a value")),
        }
    }
}

/// Parses one expression.
pub fn parse(src: &str) -> Result<F> {
    parse_at(src, 1, 0)
}

/// Parses an expression that starts at `column_offset` (0-based) of
/// `line`, so that error positions refer to the enclosing text.
pub fn parse_at(src: &str, line: usize, column_offset: usize) -> Result<F> {
    let tokens = tokenize(src, line, column_offset)?;
    let mut p = Parser { tokens, pos: 0, line };
    let out = p.expr()?;
    let rest = p.peek().clone();
    if rest.tok != Tok::End {
        return Err(p.error(&rest, "unexpected token after expression"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_expressions() {
        let f = parse("q1*p2 - q2*p1").unwrap();
        let expected = &F::q1().pointwise_mul(&F::p2()).unwrap() - &F::q2().pointwise_mul(&F::p1()).unwrap();
        assert_eq!(f, expected);
        assert_eq!(parse("(p2 + i*q2)/sqrt2").unwrap(), (&F::p2() + &F::q2().scale(&Scalar::i())).scale(&Scalar::inv_sqrt(2)));
        assert_eq!(parse("-2^2").unwrap(), F::constant(Scalar::from_int(-4)));
        assert_eq!(parse("pi^-2*vacuum").unwrap(), F::vacuum().times_pi_power(-2));
    }

    #[test]
    fn display_round_trip() {
        for src in ["q1*p2 - 1/2*q2^3*hbar", "(1 + sqrt2)*p1 - i*q2", "pi^-2*vacuum*(q1^2 - 1/3)", "0"] {
            let f = parse(src).unwrap();
            assert_eq!(parse(&f.to_string()).unwrap(), f, "{src} -> {f}");
        }
    }

    #[test]
    fn dangling_operator() {
        match parse("q1^") {
            Err(Error::Parse { column, token, .. }) => {
                assert_eq!(column, 4);
                assert_eq!(token, "end of input");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejected_forms() {
        assert!(parse("q1/q2").is_err());
        assert!(parse("q1^-1").is_err());
        assert!(parse("x1").is_err());
        assert!(parse("(q1").is_err());
        assert!(parse("q1 q2").is_err());
        assert!(parse("q1 + vacuum").is_err());
    }
}

//! Text grammar for polynomials:
//!
//! ```text
//! poly   := [sign] term { sign term }
//! term   := factor { ['*'] factor }
//! factor := rational | '(' gaussian ')' | ident ['^' int]
//! ```
//!
//! Whitespace is ignored. `int` may be negative (`X^-1`, `X^(-1)`).

use num_traits::{One, Zero};

use super::laurent::{LaurentPolynomial, Ring};
use crate::error::{Error, Result};
use crate::scalar::{parse_unsigned_rational, Scalar};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        // column numbers refer to the original text, 1-based
        let chars = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor { chars, pos: 0, text }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i + 1)
            .unwrap_or_else(|| self.text.chars().count() + 1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("column {}", self.column()), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn rest_chars(&self) -> Vec<char> {
        self.chars[self.pos..].iter().map(|&(_, c)| c).collect()
    }

    fn rational(&mut self) -> Option<Scalar> {
        let rest = self.rest_chars();
        let mut p = 0;
        let r = parse_unsigned_rational(&rest, &mut p)?;
        self.pos += p;
        Some(Scalar::real(r))
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let v: i64 = digits
            .parse()
            .map_err(|_| self.err(format!("exponent `{digits}` out of range")))?;
        if paren && !self.eat(')') {
            return Err(self.err("expected `)` after exponent"));
        }
        Ok(if neg { -v } else { v })
    }

    fn gaussian(&mut self) -> Result<Scalar> {
        // after '(' : collect up to the matching ')'
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            self.pos += 1;
        }
        if self.peek() != Some(')') {
            return Err(self.err("unclosed `(` in coefficient"));
        }
        let inner: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let col = self.chars[start].0 + 1;
        self.pos += 1;
        inner
            .parse::<Scalar>()
            .map_err(|e| Error::parse(format!("column {col}"), e.to_string()))
    }
}

impl LaurentPolynomial {
    /// Parses `text` in the polynomial grammar; every variable must belong to
    /// `ring`.
    pub fn parse(text: &str, ring: &Ring) -> Result<Self> {
        let mut cur = Cursor::new(text);
        if cur.peek().is_none() {
            return Err(cur.err("empty polynomial"));
        }
        let mut out = LaurentPolynomial::zero(ring);
        let mut first = true;
        loop {
            let mut sign = Scalar::one();
            if cur.eat('-') {
                sign = -sign;
            } else if !cur.eat('+') && !first {
                return Err(cur.err(format!(
                    "expected `+` or `-`, found `{}`",
                    cur.peek().unwrap()
                )));
            }
            first = false;
            let term = parse_term(&mut cur, ring)?;
            out = &out + &term.scale(&sign);
            if cur.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }
}

fn parse_term(cur: &mut Cursor<'_>, ring: &Ring) -> Result<LaurentPolynomial> {
    let mut coeff = Scalar::one();
    let mut exps = vec![0i64; ring.len()];
    let mut factors = 0;
    loop {
        if factors > 0 && !cur.eat('*') {
            // juxtaposition such as `2X` is accepted
            match cur.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' => {}
                _ => break,
            }
        }
        if let Some(r) = cur.rational() {
            coeff = &coeff * &r;
        } else if cur.eat('(') {
            coeff = &coeff * &cur.gaussian()?;
        } else if let Some((name, col)) = {
            let col = cur.column();
            cur.ident().map(|n| (n, col))
        } {
            let idx = ring.index_of(&name).map_err(|_| {
                Error::parse(
                    format!("column {col}"),
                    format!("unknown variable `{name}` (ring is [{ring}])"),
                )
            })?;
            let k = if cur.eat('^') { cur.signed_int()? } else { 1 };
            exps[idx] += k;
        } else {
            return Err(match cur.peek() {
                Some(c) => cur.err(format!("unexpected `{c}`")),
                None => cur.err("unexpected end of input"),
            });
        }
        factors += 1;
    }
    if coeff.is_zero() {
        return Ok(LaurentPolynomial::zero(ring));
    }
    Ok(LaurentPolynomial::monomial(ring, exps, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::torus()
    }

    #[test]
    fn parses_grammar_examples() {
        let a = LaurentPolynomial::parse("1 - X - P + Q*X*P", &ring()).unwrap();
        assert_eq!(a.num_terms(), 4);
        assert_eq!(a.to_string(), "1 - X - P + Q*X*P");
        let b = LaurentPolynomial::parse("-1/2*X^-2 + (2+3i)*P", &ring()).unwrap();
        assert_eq!(b.to_string(), "-1/2*X^-2 + (2+3i)*P");
        let c = LaurentPolynomial::parse("X^(-1)*X*X", &ring()).unwrap();
        assert_eq!(c.to_string(), "X");
        let d = LaurentPolynomial::parse(" 2 X * P ", &ring()).unwrap();
        assert_eq!(d.to_string(), "2*X*P");
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["0", "-X", "3 - (i)*Q^2", "-1/3*Q^-1*X^2*P + (1/2-i)*P^4"] {
            let p = LaurentPolynomial::parse(s, &ring()).unwrap();
            let again = LaurentPolynomial::parse(&p.to_string(), &ring()).unwrap();
            assert_eq!(p, again);
        }
    }

    #[test]
    fn reports_location() {
        let e = LaurentPolynomial::parse("1 + Y", &ring()).unwrap_err();
        match e {
            Error::Parse { location, message } => {
                assert_eq!(location, "column 5");
                assert!(message.contains("unknown variable `Y`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(LaurentPolynomial::parse("", &ring()).is_err());
        assert!(LaurentPolynomial::parse("X +", &ring()).is_err());
        assert!(LaurentPolynomial::parse("X^", &ring()).is_err());
        assert!(LaurentPolynomial::parse("(1+i", &ring()).is_err());
        assert!(LaurentPolynomial::parse("X P ) ", &ring()).is_err());
    }
}

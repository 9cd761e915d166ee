//! Text and JSON forms of Fock vectors.
//!
//! Text: `3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]`. Factors `w(-n)` are ϖ(−n);
//! the parser also accepts `a(-n)` = α(−n) = 2ϖ(−n). `e[r]` is e^{rϖ}.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockMonomial, FockVector};
use crate::scalar::{fmt_scalar, parse_scalar, qi, ExactScalar};

/// Oscillator basis used when rendering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Oscillator {
    /// ϖ(n)
    #[default]
    Varpi,
    /// α(n) = 2ϖ(n)
    Alpha,
}

fn render_monomial(m: &FockMonomial, osc: Oscillator) -> String {
    let name = match osc {
        Oscillator::Varpi => "w",
        Oscillator::Alpha => "a",
    };
    let mut out = String::new();
    let parts = m.parts();
    let mut i = 0;
    while i < parts.len() {
        let n = parts[i];
        let k = parts[i..].iter().take_while(|&&p| p == n).count();
        out.push_str(&format!("{name}(-{n})"));
        if k > 1 {
            out.push_str(&format!("^{k}"));
        }
        out.push('*');
        i += k;
    }
    out.push_str(&format!("e[{}]", m.charge()));
    out
}

/// Renders in canonical monomial order; the zero vector is `0`.
pub fn render(v: &FockVector, osc: Oscillator) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in v.terms().enumerate() {
        // ϖ(−n)^s = 2^{−s} α(−n)^s
        let c = match osc {
            Oscillator::Varpi => c.clone(),
            Oscillator::Alpha => c / ExactScalar::from_integer(num_bigint::BigInt::from(2).pow(m.parts().len() as u32)),
        };
        let body = format!("{}*{}", fmt_scalar(&c.abs()), render_monomial(m, osc));
        if idx == 0 {
            if c.is_negative() {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn posint(&mut self) -> Result<u32> {
        let d = self.digits()?;
        match d.parse::<u32>() {
            Ok(n) if n > 0 => Ok(n),
            _ => self.err("expected a positive integer"),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let n: i64 = match d.parse() {
            Ok(n) => n,
            Err(_) => return self.err("integer out of range"),
        };
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> Result<ExactScalar> {
        let start = self.pos;
        let n = self.digits()?;
        let text = if self.eat(b'/') {
            let d = self.digits()?;
            format!("{n}/{d}")
        } else {
            n.to_string()
        };
        match parse_scalar(&text) {
            Some(x) => Ok(x),
            None => {
                self.pos = start;
                self.err("bad rational")
            }
        }
    }

    /// Parses one term without its sign.
    fn term(&mut self) -> Result<FockVector> {
        let mut coeff = ExactScalar::one();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.rational()?;
            self.expect(b'*')?;
        }
        let mut parts = Vec::new();
        loop {
            match self.peek() {
                Some(c @ (b'w' | b'a')) => {
                    self.pos += 1;
                    self.expect(b'(')?;
                    self.expect(b'-')?;
                    let n = self.posint()?;
                    self.expect(b')')?;
                    let k = if self.eat(b'^') { self.posint()? } else { 1 };
                    for _ in 0..k {
                        parts.push(n);
                        if c == b'a' {
                            coeff *= qi(2);
                        }
                    }
                    self.expect(b'*')?;
                }
                Some(b'e') => {
                    self.pos += 1;
                    self.expect(b'[')?;
                    let r = self.int()?;
                    self.expect(b']')?;
                    return Ok(FockVector::monomial(FockMonomial::new(r, parts), coeff));
                }
                _ => return self.err("expected `w(-n)`, `a(-n)` or `e[r]`"),
            }
        }
    }
}

/// Parses the text grammar.
pub fn parse(text: &str) -> Result<FockVector> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    if p.peek() == Some(b'0') {
        let save = p.pos;
        p.pos += 1;
        if p.peek().is_none() {
            return Ok(FockVector::zero());
        }
        p.pos = save;
    }
    let mut out = FockVector::zero();
    let mut sign = if p.eat(b'-') { -ExactScalar::one() } else { ExactScalar::one() };
    loop {
        let t = p.term()?;
        out.add_scaled(&t, &sign);
        match p.peek() {
            None => return Ok(out),
            Some(b'+') => {
                p.pos += 1;
                sign = ExactScalar::one();
            }
            Some(b'-') => {
                p.pos += 1;
                sign = -ExactScalar::one();
            }
            Some(_) => return p.err("expected `+`, `-` or end of input"),
        }
    }
}

/// One entry of the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub charge: i64,
    pub parts: Vec<u32>,
}

pub fn to_json_terms(v: &FockVector) -> Vec<JsonTerm> {
    v.terms()
        .map(|(m, c)| JsonTerm {
            coeff: fmt_scalar(c),
            charge: m.charge(),
            parts: m.parts().to_vec(),
        })
        .collect()
}

pub fn from_json_terms(terms: &[JsonTerm]) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for (i, t) in terms.iter().enumerate() {
        let c = parse_scalar(&t.coeff)
            .ok_or_else(|| Error::Invalid(format!("term {i}: bad coefficient `{}`", t.coeff)))?;
        if t.parts.contains(&0) {
            return Err(Error::Invalid(format!("term {i}: parts must be positive")));
        }
        out.add_term(FockMonomial::new(t.charge, t.parts.clone()), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn parse_example() {
        let v = parse("3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]").unwrap();
        assert_eq!(v.coefficient(&FockMonomial::new(2, vec![1, 1])), q(3, 4));
        assert_eq!(v.coefficient(&FockMonomial::new(2, vec![2])), q(-1, 4));
        assert_eq!(render(&v, Oscillator::Varpi), "3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]");
        assert_eq!(render(&v, Oscillator::Alpha), "3/16*a(-1)^2*e[2] - 1/8*a(-2)*e[2]");
    }

    #[test]
    fn alpha_factors_and_signs() {
        let v = parse("-a(-1)*e[0]").unwrap();
        assert_eq!(v.coefficient(&FockMonomial::new(0, vec![1])), q(-2, 1));
        assert_eq!(parse("e[-3]").unwrap(), FockVector::exp(-3));
        assert_eq!(parse(" 0 ").unwrap(), FockVector::zero());
        assert_eq!(render(&FockVector::zero(), Oscillator::Varpi), "0");
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse("1/2*w(-0)*e[1]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("1/2*e[1] +").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn json_form() {
        let v = parse("1/2*w(-3)*w(-1)*e[1] + e[0]").unwrap();
        let json = serde_json::to_string(&to_json_terms(&v)).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":"1","charge":0,"parts":[]},{"coeff":"1/2","charge":1,"parts":[3,1]}]"#
        );
        let back: Vec<JsonTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(from_json_terms(&back).unwrap(), v);
    }
}

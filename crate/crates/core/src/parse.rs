//! Text form of polynomials.
//!
//! ```text
//! poly   := term (('+'|'-') term)*        (a leading sign is accepted)
//! term   := coeff ('*' varpow)* | varpow ('*' varpow)*
//! varpow := ident ('^' uint)?
//! coeff  := int ('/' uint)?
//! ```
//! Whitespace is insignificant.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("coefficient `{text}` at position {pos} is not representable in the field")]
    NotRepresentable { text: String, pos: usize },
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Some((start, std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }
}

pub fn parse_polynomial<F: Field>(text: &str, ring: &RingRef<F>) -> Result<Polynomial<F>, ParseError> {
    let field = ring.field();
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut negative = if lx.eat(b'-') {
        true
    } else {
        lx.eat(b'+');
        false
    };
    loop {
        let (mono, coeff) = parse_term(&mut lx, ring)?;
        let coeff = if negative { field.neg(&coeff) } else { coeff };
        terms.push((mono, coeff));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                lx.pos += 1;
                negative = true;
            }
            Some(c) => return Err(lx.syntax(format!("unexpected `{}`", c as char))),
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term<F: Field>(lx: &mut Lexer<'_>, ring: &RingRef<F>) -> Result<(Monomial, F::Elem), ParseError> {
    let field = ring.field();
    let mut coeff = field.one();
    let mut mono = Monomial::one();
    let mut first = true;
    if let Some((start, num)) = lx.digits() {
        let n: BigInt = num.parse().expect("digits");
        let d: BigInt = if lx.eat(b'/') {
            let (_, den) = lx.digits().ok_or_else(|| lx.syntax("expected denominator"))?;
            den.parse().expect("digits")
        } else {
            BigInt::from(1)
        };
        coeff = field.from_ratio(&n, &d).ok_or_else(|| ParseError::NotRepresentable {
            text: std::str::from_utf8(&lx.src[start..lx.pos]).unwrap().trim().to_string(),
            pos: start,
        })?;
        first = false;
    }
    loop {
        if !first && !lx.eat(b'*') {
            break;
        }
        let (pos, name) = lx.ident().ok_or_else(|| lx.syntax("expected variable"))?;
        let var = ring
            .var_index(name)
            .ok_or_else(|| ParseError::UnknownVariable { name: name.to_string(), pos })?;
        let e = if lx.eat(b'^') {
            let (p, digits) = lx.digits().ok_or_else(|| lx.syntax("expected exponent"))?;
            digits.parse::<u16>().map_err(|_| ParseError::Syntax { pos: p, msg: "exponent too large".into() })? as u32
        } else {
            1
        };
        mono = mono.with_exponent(var, mono.exponent(var) + e);
        first = false;
    }
    Ok((mono, coeff))
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let field = self.field();
        let vars = self.ring().vars();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let (neg, abs) = field.to_signed(c);
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut first = true;
            if abs != "1" || m.is_one() {
                f.write_str(&abs)?;
                first = false;
            }
            for (i, v) in vars.iter().enumerate() {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(v)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::poly::{random_homogeneous, Ring};
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let r = Ring::new(Rationals, &["z0", "z1", "z2"], MonomialOrder::GrevLex);
        let p = parse_polynomial("z0^2 - z1*z2", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.degree(), Some(2));
        let zero = parse_polynomial("0", &r).unwrap();
        assert!(zero.is_zero() && zero.terms().is_empty());

        let c = Ring::new(Rationals, &["x", "y", "z"], MonomialOrder::GrevLex);
        let curve = parse_polynomial("y^2*z - x^3 + x*z^2", &c).unwrap();
        assert_eq!(curve.num_terms(), 3);
        assert!(curve.is_homogeneous() && curve.degree() == Some(3));
    }

    #[test]
    fn rationals_and_signs() {
        let r = Ring::new(Rationals, &["x"], MonomialOrder::GrevLex);
        let p = parse_polynomial("-3/4*x + 2/4", &r).unwrap();
        assert_eq!(p.to_string(), "-3/4*x + 1/2");
        assert_eq!(parse_polynomial(" - x ^ 2 ", &r).unwrap().to_string(), "-x^2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = Ring::new(Fp::new(7).unwrap(), &["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(
            parse_polynomial("x + w", &r),
            Err(ParseError::UnknownVariable { name: "w".into(), pos: 4 })
        );
        assert!(matches!(parse_polynomial("x + + y", &r), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_polynomial("x y", &r), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x^", &r), Err(ParseError::Syntax { .. })));
        assert_eq!(
            parse_polynomial("1/7*x", &r),
            Err(ParseError::NotRepresentable { text: "1/7".into(), pos: 0 })
        );
    }

    #[test]
    fn negative_residues_print_symmetrically() {
        let r = Ring::new(Fp::new(7).unwrap(), &["x"], MonomialOrder::GrevLex);
        let p = parse_polynomial("6*x + 3", &r).unwrap();
        assert_eq!(p.to_string(), "-x + 3");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn format_parse_roundtrip(seed in any::<u64>(), deg in 0u32..5, order in 0usize..3) {
            let order = [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Elimination(1)][order];
            let r = Ring::new(Fp::new(32003).unwrap(), &["z0", "z1", "z2", "z3"], order);
            let p = &random_homogeneous(&r, deg, seed) + &random_homogeneous(&r, deg / 2, seed ^ 1);
            prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
        }

        #[test]
        fn format_parse_roundtrip_q(nums in proptest::collection::vec((-20i64..20, 1i64..9, 0u32..3, 0u32..3), 0..6)) {
            let r = Ring::new(Rationals, &["a", "b"], MonomialOrder::GrevLex);
            let q = Rationals;
            let p = Polynomial::from_terms(&r, nums.into_iter().map(|(n, d, i, j)| {
                (Monomial::from_exponents(&[i, j]), q.from_ratio(&n.into(), &d.into()).unwrap())
            }).collect());
            prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
        }
    }
}

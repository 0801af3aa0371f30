//! Text forms for elements and polynomials.
//!
//! Grammar (whitespace-insensitive between tokens):
//!   poly  := ['+'|'-'] term (('+'|'-') term)*
//!   term  := coeff ['*'] [var] | var
//!   var   := 'x' ['^' nat]
//!   coeff := int | '(' int ',' int ')'
//! Repeated powers accumulate; errors carry the 0-based byte offset.

use crate::error::{Error, Result};
use crate::poly::OkPolynomial;
use crate::ring::{OkElement, RingSpec};
use crate::scalar::Coord;

const MAX_EXPONENT: usize = 4096;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { s: text.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, b: u8, what: &str) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    /// nat := digit+ (bounded, for exponents).
    fn parse_nat(&mut self) -> Result<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value * 10 + (b - b'0') as usize;
            if value > MAX_EXPONENT {
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("exponent exceeds {MAX_EXPONENT}"),
                });
            }
            self.bump();
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        Ok(value)
    }

    /// int := ['+'|'-'] digit+, accumulated with checked arithmetic.
    /// `outer_negative` is a sign already consumed by the caller (a term
    /// separator); it combines with the literal's own sign, so the most
    /// negative bounded value round-trips no matter where its '-' sits.
    fn parse_int<I: Coord>(&mut self, outer_negative: bool) -> Result<I> {
        let start = self.pos;
        let own_negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let negative = outer_negative ^ own_negative;
        self.skip_ws();
        let digits_at = self.pos;
        let ten = I::from_u64(10).expect("small scalar");
        // Accumulate on the negative side so the most negative value of
        // bounded scalar types stays representable.
        let mut acc = I::zero();
        let overflow = || Error::Syntax {
            offset: start,
            message: "integer literal overflows the scalar type".into(),
        };
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            let d = I::from_u64((b - b'0') as u64).expect("digit");
            acc = acc
                .checked_mul(&ten)
                .and_then(|a| a.checked_sub(&d))
                .ok_or_else(overflow)?;
            self.bump();
        }
        if self.pos == digits_at {
            return self.err("expected an integer");
        }
        if negative {
            Ok(acc)
        } else {
            I::zero().checked_sub(&acc).ok_or_else(overflow)
        }
    }

    /// coeff := int | '(' int ',' int ')'; a pending outer sign negates
    /// both coordinates.
    fn parse_coeff<I: Coord>(&mut self, outer_negative: bool) -> Result<OkElement<I>> {
        if self.eat(b'(') {
            self.skip_ws();
            let u = self.parse_int(outer_negative)?;
            self.skip_ws();
            self.expect(b',', "','")?;
            self.skip_ws();
            let v = self.parse_int(outer_negative)?;
            self.skip_ws();
            self.expect(b')', "')'")?;
            Ok(OkElement::new(u, v))
        } else {
            Ok(OkElement::new(self.parse_int(outer_negative)?, I::zero()))
        }
    }

    /// var := 'x' ['^' nat]; returns the power.
    fn parse_var(&mut self) -> Result<usize> {
        self.expect(b'x', "'x'")?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            self.parse_nat()
        } else {
            Ok(1)
        }
    }

    /// term := coeff ['*'] [var] | var; returns (power, coefficient).
    fn parse_term<I: Coord>(&mut self, outer_negative: bool) -> Result<(usize, OkElement<I>)> {
        match self.peek() {
            Some(b'x') => {
                let one: OkElement<I> = OkElement::one();
                let coeff = if outer_negative { one.neg() } else { one };
                Ok((self.parse_var()?, coeff))
            }
            Some(b'(') | Some(b'+') | Some(b'-') => self.parse_term_with_coeff(outer_negative),
            Some(b) if b.is_ascii_digit() => self.parse_term_with_coeff(outer_negative),
            _ => self.err("expected a term"),
        }
    }

    fn parse_term_with_coeff<I: Coord>(
        &mut self,
        outer_negative: bool,
    ) -> Result<(usize, OkElement<I>)> {
        let coeff = self.parse_coeff(outer_negative)?;
        self.skip_ws();
        if self.eat(b'*') {
            self.skip_ws();
            Ok((self.parse_var()?, coeff))
        } else if self.peek() == Some(b'x') {
            Ok((self.parse_var()?, coeff))
        } else {
            Ok((0, coeff))
        }
    }
}

/// Parses "(u,v)" or a bare integer "n" (meaning n + 0·θ).
pub fn parse_element<I: Coord>(text: &str) -> Result<OkElement<I>> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let e = cur.parse_coeff(false)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return cur.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses polynomial text over the given ring.
pub fn parse_poly<I: Coord>(text: &str, ring: RingSpec) -> Result<OkPolynomial<I>> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let mut sign_negative = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    let mut coeffs: Vec<OkElement<I>> = Vec::new();
    loop {
        cur.skip_ws();
        let (pow, coeff) = cur.parse_term(sign_negative)?;
        if pow >= coeffs.len() {
            coeffs.resize(pow + 1, OkElement::zero());
        }
        coeffs[pow] = coeffs[pow].add(&coeff);
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                sign_negative = false;
            }
            Some(b'-') => {
                cur.bump();
                sign_negative = true;
            }
            Some(_) => return cur.err("expected '+' or '-'"),
        }
    }
    Ok(OkPolynomial::new(ring, coeffs))
}

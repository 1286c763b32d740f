//! Text grammar for polynomials.
//!
//! ```text
//! polynomial := [sign] term { sign term }
//! sign       := ('+' | '-') { '+' | '-' }
//! term       := factor { ['*'] factor }
//! factor     := integer ['/' integer]
//!             | identifier ['^' integer]
//! identifier := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! An identifier that is not itself a variable is split into variables, each optionally
//! followed by a decimal exponent (`xz` is `x*z`, `x2y` is `x^2*y`), provided exactly one
//! such split exists. A trailing `^e` applies to the last variable of the identifier.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Monomial, PolyError, Polynomial, Ring, Scalar};

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial, PolyError> {
    let mut parser = Parser { text, bytes: text.as_bytes(), pos: 0, ring };
    parser.polynomial()
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> PolyError {
        PolyError::Syntax { text: self.text.to_string(), position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let mut terms = Vec::new();
        let mut negative = self.signs(false);
        if self.peek().is_none() {
            return Err(self.syntax("empty polynomial"));
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { c.neg() } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') | Some(b'-') => {
                    negative = self.signs(true);
                    if self.peek().is_none() {
                        return Err(self.syntax("dangling sign"));
                    }
                }
                Some(_) => return Err(self.syntax("expected '+' or '-'")),
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    /// Consumes a run of signs and returns whether the net sign is negative.
    fn signs(&mut self, required: bool) -> bool {
        let mut negative = false;
        let mut seen = false;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            seen = true;
            negative ^= c == b'-';
            self.pos += 1;
        }
        debug_assert!(seen || !required);
        negative
    }

    fn term(&mut self) -> Result<(Monomial, Scalar), PolyError> {
        let ch = self.ring.characteristic();
        let mut coeff = Scalar::one(ch);
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut first = true;
        loop {
            match self.peek() {
                Some(b'*') if !first => {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                        return Err(self.syntax("expected factor after '*'"));
                    }
                }
                Some(c) if c.is_ascii_alphanumeric() => {}
                _ if first => return Err(self.syntax("expected a term")),
                _ => break,
            }
            first = false;
            let c = self.peek().unwrap();
            if c.is_ascii_digit() {
                coeff = coeff.mul(&self.coefficient()?);
            } else {
                self.identifier(&mut exps)?;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.text[start..self.pos].parse().ok()
    }

    fn coefficient(&mut self) -> Result<Scalar, PolyError> {
        let num = self.integer().ok_or_else(|| self.syntax("expected integer"))?;
        if self.bytes.get(self.pos) == Some(&b'.') {
            return Err(self.syntax("decimal coefficients are not supported"));
        }
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.integer().ok_or_else(|| self.syntax("expected denominator"))?
        } else {
            BigInt::from(1)
        };
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator { text: self.text.to_string() });
        }
        let ch = self.ring.characteristic();
        if ch == 0 {
            return Ok(Scalar::Rational(BigRational::new(num, den)));
        }
        let d = Scalar::from_bigint(&den, ch);
        let n = Scalar::from_bigint(&num, ch);
        n.div(&d).ok_or_else(|| PolyError::NotReducible { coefficient: format!("{num}/{den}"), modulus: ch })
    }

    fn identifier(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let word = &self.text[start..self.pos];
        let pieces = self.split_identifier(word)?;
        let last = pieces.last().map(|p| p.0);
        for (var, e) in &pieces {
            exps[*var] += e;
        }
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self
                .integer()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| PolyError::MalformedExponent { text: self.text.to_string() })?;
            let (var, prev) = pieces.last().copied().expect("nonempty split");
            debug_assert_eq!(Some(var), last);
            exps[var] = exps[var] - prev + prev * e;
        }
        Ok(())
    }

    /// Splits an identifier into `(variable, exponent)` pieces; the split must be unique.
    fn split_identifier(&self, word: &str) -> Result<Vec<(usize, u32)>, PolyError> {
        if let Some(i) = self.ring.index_of(word) {
            return Ok(vec![(i, 1)]);
        }
        let mut found: Vec<Vec<(usize, u32)>> = Vec::new();
        let mut stack = Vec::new();
        self.splits(word, 0, &mut stack, &mut found);
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(PolyError::UnknownVariable { name: word.to_string(), text: self.text.to_string() }),
            _ => Err(PolyError::AmbiguousIdentifier { name: word.to_string(), text: self.text.to_string() }),
        }
    }

    fn splits(&self, word: &str, at: usize, stack: &mut Vec<(usize, u32)>, found: &mut Vec<Vec<(usize, u32)>>) {
        if found.len() > 1 {
            return;
        }
        if at == word.len() {
            found.push(stack.clone());
            return;
        }
        for (i, v) in self.ring.variables().iter().enumerate() {
            if !word[at..].starts_with(v.as_str()) {
                continue;
            }
            let after = at + v.len();
            let digits = word[after..].bytes().take_while(u8::is_ascii_digit).count();
            let exp = if digits == 0 {
                1
            } else {
                match word[after..after + digits].parse::<u32>() {
                    Ok(e) => e,
                    Err(_) => continue,
                }
            };
            stack.push((i, exp));
            self.splits(word, after + digits, stack, found);
            stack.pop();
        }
    }
}

//! Text grammar for polynomials: `3*q^2*tt^-1*s1 - tt + 1`.
//!
//! Terms appear in canonical order, joined by ` + ` / ` - `; a coefficient of
//! one is omitted except on the constant term.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{LaurentPoly, VariableSet};
use crate::error::{Error, Result};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            for (v, &e) in exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars().name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars().name(v), e)),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the text grammar produced by `Display`.
    ///
    /// Exponents may be written `x^-2` or `x^(-2)`; factors of a term are
    /// joined by `*`.
    pub fn parse(vars: &Arc<VariableSet>, text: &str) -> Result<Self> {
        let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = LaurentPoly::zero(vars);
        let bytes = src.as_bytes();
        let mut start = 0;
        let mut i = 0;
        // split on top-level + and - that are not exponent signs
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut sign_negative = false;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign_negative = bytes[0] == b'-';
            start = 1;
            i = 1;
        }
        let mut depth = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' => {
                    pieces.push((sign_negative, &src[start..i]));
                    sign_negative = bytes[i] == b'-';
                    start = i + 1;
                }
                _ => {}
            }
            i += 1;
        }
        pieces.push((sign_negative, &src[start..]));
        for (negative, term) in pieces {
            let (mut c, exp) = parse_term(vars, term)?;
            if negative {
                c = -c;
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

fn parse_term(vars: &Arc<VariableSet>, term: &str) -> Result<(BigInt, Vec<i32>)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff = BigInt::one();
    let mut exp = vec![0i32; vars.len()];
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        if factor.chars().all(|c| c.is_ascii_digit()) {
            coeff *= factor
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(e.to_string()))?;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((name, p)) => {
                let p = p.trim_start_matches('(').trim_end_matches(')');
                let p: i32 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (name, p)
            }
            None => (factor, 1),
        };
        let idx = vars.require(name)?;
        exp[idx] += power;
    }
    Ok((coeff, exp))
}

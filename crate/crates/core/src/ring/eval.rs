//! Numeric evaluation of polynomials.
//!
//! Rational assignments are evaluated exactly. As soon as one assigned value
//! is complex the whole evaluation runs in `Complex<f64>`, so the result
//! carries the precision of the supplied values and nothing is rounded
//! beyond the arithmetic itself.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Complex(Complex64),
}

pub type Assignment = BTreeMap<String, Scalar>;

impl Scalar {
    pub fn integer(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    /// `exp(2πi·k/n)`.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        Scalar::Complex(Complex64::from_polar(1.0, theta))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Complex(c) => c.is_zero(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Complex(c) => *c,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Complex(c) => {
                if c.im < 0.0 {
                    write!(f, "{}-{}i", c.re, -c.im)
                } else {
                    write!(f, "{}+{}i", c.re, c.im)
                }
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `3`, `-2/5`, `0.25`, `root(k/n)`, and complex `a+bi` / `bi`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad numeric value `{s}`"));
        if let Some(inner) = s.strip_prefix("root(").and_then(|r| r.strip_suffix(')')) {
            let (k, n) = inner.split_once('/').ok_or_else(bad)?;
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Scalar::root_of_unity(k, n));
        }
        if let Some(body) = s.strip_suffix('i') {
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
                .map(|(i, _)| i)
                .last();
            let (re, im) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => 1.0,
                "-" => -1.0,
                x => x.parse::<f64>().map_err(|_| bad())?,
            };
            let re: f64 = re.parse().map_err(|_| bad())?;
            return Ok(Scalar::Complex(Complex64::new(re, im)));
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            return Ok(Scalar::Rational(BigRational::new(num, den)));
        }
        if let Ok(n) = s.parse::<BigInt>() {
            return Ok(Scalar::Rational(BigRational::from_integer(n)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                let num: BigInt = digits.parse().map_err(|_| bad())?;
                let den = num_traits::pow(BigInt::from(10), frac.len());
                let r = BigRational::new(num, den);
                return Ok(Scalar::Rational(if negative { -r } else { r }));
            }
        }
        Err(bad())
    }
}

/// Parses `"q=root(1/5),s=2/3"`.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let mut out = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected `var=value`, got `{part}`")))?;
        out.insert(name.trim().to_string(), value.parse()?);
    }
    Ok(out)
}

impl LaurentPoly {
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Scalar> {
        let complex = assignment.values().any(|v| matches!(v, Scalar::Complex(_)));
        let mut values = Vec::with_capacity(self.vars().len());
        for name in self.vars().names() {
            values.push(assignment.get(name));
        }
        // every variable actually used must be assigned; zero only where no
        // negative power occurs
        if let Some((lo, hi)) = self.degree_box() {
            for (i, v) in values.iter().enumerate() {
                if lo[i] == 0 && hi[i] == 0 {
                    continue;
                }
                let name = self.vars().name(i);
                let v = v.ok_or_else(|| Error::Unassigned(name.to_string()))?;
                if v.is_zero() && lo[i] < 0 {
                    return Err(Error::ZeroPole(name.to_string()));
                }
            }
        }
        if complex {
            let vals: Vec<Complex64> = values
                .iter()
                .map(|v| v.map(Scalar::to_complex).unwrap_or(Complex64::one()))
                .collect();
            let mut acc = Complex64::zero();
            for (e, c) in self.terms() {
                let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                for (i, &x) in e.iter().enumerate() {
                    if x != 0 {
                        t *= vals[i].powi(x);
                    }
                }
                acc += t;
            }
            Ok(Scalar::Complex(acc))
        } else {
            let vals: Vec<BigRational> = values
                .iter()
                .map(|v| match v {
                    Some(Scalar::Rational(r)) => r.clone(),
                    _ => BigRational::one(),
                })
                .collect();
            let mut acc = BigRational::zero();
            for (e, c) in self.terms() {
                let mut t = BigRational::from_integer(c.clone());
                for (i, &x) in e.iter().enumerate() {
                    if x != 0 {
                        t *= num_traits::pow::Pow::pow(&vals[i], x);
                    }
                }
                acc += t;
            }
            Ok(Scalar::Rational(acc))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::VariableSet;

    #[test]
    fn evaluate_examples() {
        let v = VariableSet::colored(1);
        let p = LaurentPoly::parse(&v, "1 + tt").unwrap();
        let a = parse_assignment("tt=1").unwrap();
        assert_eq!(p.evaluate(&a).unwrap(), Scalar::integer(2));

        let two_q = LaurentPoly::parse(&v, "q + q^-1").unwrap();
        let a = parse_assignment("q=i").unwrap();
        match two_q.evaluate(&a).unwrap() {
            Scalar::Complex(c) => assert_eq!(c, Complex64::new(0.0, 0.0)),
            other => panic!("expected complex, got {other}"),
        }

        let inv = LaurentPoly::parse(&v, "q^-1").unwrap();
        assert_eq!(
            inv.evaluate(&parse_assignment("q=0").unwrap()),
            Err(Error::ZeroPole("q".into()))
        );
        assert!(LaurentPoly::parse(&v, "q^2")
            .unwrap()
            .evaluate(&parse_assignment("q=0").unwrap())
            .is_ok());
    }

    #[test]
    fn rational_exactness() {
        let v = VariableSet::colored(1);
        let p = LaurentPoly::parse(&v, "q^-2*s1 - 3*tt").unwrap();
        let a = parse_assignment("q=2/3, s1=-1, tt=0.5").unwrap();
        // (9/4)(-1) - 3/2 = -15/4
        assert_eq!(
            p.evaluate(&a).unwrap(),
            Scalar::Rational(BigRational::new((-15).into(), 4.into()))
        );
        assert_eq!(
            p.evaluate(&parse_assignment("q=2").unwrap()),
            Err(Error::Unassigned("tt".into()))
        );
    }

    #[test]
    fn scalar_parsing() {
        assert!(matches!("1.5-2i".parse::<Scalar>().unwrap(), Scalar::Complex(c) if c == Complex64::new(1.5, -2.0)));
        assert!(matches!("-i".parse::<Scalar>().unwrap(), Scalar::Complex(c) if c == Complex64::new(0.0, -1.0)));
        assert!("root(1/5)".parse::<Scalar>().is_ok());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }
}

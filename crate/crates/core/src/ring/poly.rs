use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{check_vars, same_vars, VariableSet};
use crate::error::{Error, Result};

/// One signed exponent per variable of the owning [`VariableSet`].
pub type Exponent = Vec<i32>;

/// A Laurent polynomial with integer coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration follows the lexicographic
/// order on exponent vectors and no zero coefficient is ever stored.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Arc<VariableSet>,
    terms: BTreeMap<Exponent, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VariableSet>) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VariableSet>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &Arc<VariableSet>, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, c, vec![0; vars.len()])
    }

    pub fn monomial(vars: &Arc<VariableSet>, c: impl Into<BigInt>, exp: Exponent) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    /// `x^e` for the variable at index `var`.
    pub fn var_pow(vars: &Arc<VariableSet>, var: usize, e: i32) -> Self {
        let mut exp = vec![0; vars.len()];
        exp[var] = e;
        Self::monomial(vars, 1, exp)
    }

    pub fn var(vars: &Arc<VariableSet>, name: &str) -> Result<Self> {
        Ok(Self::var_pow(vars, vars.require(name)?, 1))
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(vars: &Arc<VariableSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (exp, c) in terms {
            if exp.len() != vars.len() {
                return Err(Error::Dimension(format!(
                    "exponent of length {} over {} variables",
                    exp.len(),
                    vars.len()
                )));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn coefficient(&self, exp: &[i32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Largest term in lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// `±x^e`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotUnit(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(
            &self.vars,
            c.clone(),
            e.iter().map(|x| -x).collect(),
        ))
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_vars(&self.vars, &other.vars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_vars(&self.vars, &other.vars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_vars(&self.vars, &other.vars)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `c·x^shift`.
    pub fn mul_monomial(&self, c: &BigInt, shift: &[i32]) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Smallest and largest exponent of each variable; `None` for zero.
    pub fn degree_box(&self) -> Option<(Vec<i32>, Vec<i32>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for e in it {
            for (i, &x) in e.iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        Some((lo, hi))
    }

    /// The unique `c` with `divisor · c = self`, if it exists.
    ///
    /// Each variable's exponent range of a quotient is forced by the ranges of
    /// dividend and divisor, which bounds the long division.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        check_vars(&self.vars, &divisor.vars)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        if divisor.is_monomial() {
            let (e, c) = divisor.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            for (ea, ca) in &self.terms {
                let (quo, rem) = ca.div_rem(c);
                if !rem.is_zero() {
                    return Err(not_divisible());
                }
                terms.insert(ea.iter().zip(e).map(|(a, b)| a - b).collect(), quo);
            }
            return Ok(Self {
                vars: self.vars.clone(),
                terms,
            });
        }
        let (alo, ahi) = self.degree_box().unwrap();
        let (blo, bhi) = divisor.degree_box().unwrap();
        let lo: Vec<i32> = alo.iter().zip(&blo).map(|(a, b)| a - b).collect();
        let hi: Vec<i32> = ahi.iter().zip(&bhi).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(not_divisible());
        }
        let (lead_e, lead_c) = divisor.leading_term().unwrap();
        let mut rem = self.terms.clone();
        let mut quotient = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back() {
            let qe: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe
                .iter()
                .enumerate()
                .any(|(i, &x)| x < lo[i] || x > hi[i])
            {
                return Err(not_divisible());
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            for (be, bc) in &divisor.terms {
                let te: Exponent = be.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let delta = -(bc * &qc);
                use std::collections::btree_map::Entry;
                match rem.entry(te) {
                    Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quotient.insert(qe, qc);
        }
        Ok(Self {
            vars: self.vars.clone(),
            terms: quotient,
        })
    }

    /// Nonnegative gcd of the integer coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Re-expresses the polynomial over a larger (or reordered) variable set,
    /// matching variables by name.
    pub fn embed(&self, target: &Arc<VariableSet>) -> Result<Self> {
        if same_vars(&self.vars, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            map.push(target.index_of(name));
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut te = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => te[j] = x,
                    None => return Err(Error::UnknownVariable(self.vars.name(i).to_string())),
                }
            }
            out.add_term(te, c.clone());
        }
        Ok(out)
    }

    /// Canonicalizes again; the internal map is already canonical, so this is
    /// the identity on every value the crate produces.
    pub fn normalized(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("polynomials over different variable sets")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        check_vars(&self.vars, &rhs.vars).expect("polynomials over different variable sets");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        check_vars(&self.vars, &rhs.vars).expect("polynomials over different variable sets");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(vars: &Arc<VariableSet>, s: &str) -> LaurentPoly {
        LaurentPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn add_examples() {
        let v = VariableSet::colored(1);
        assert_eq!(p(&v, "q + tt") + p(&v, "-tt"), p(&v, "q"));
        assert_eq!(p(&v, "1 + tt") + LaurentPoly::zero(&v), p(&v, "1 + tt"));
        assert_eq!(p(&v, "1 + tt") + p(&v, "1 + tt"), p(&v, "2 + 2*tt"));
    }

    #[test]
    fn mul_examples() {
        let v = VariableSet::colored(1);
        assert_eq!(p(&v, "1 + tt") * p(&v, "1 - tt"), p(&v, "1 - tt^2"));
        assert!((p(&v, "q^-1") * p(&v, "q")).is_one());
        // (2)_tt · (3)_tt, expanded by hand: 1 + 2tt + 2tt^2 + tt^3
        assert_eq!(
            p(&v, "1 + tt") * p(&v, "1 + tt + tt^2"),
            p(&v, "1 + 2*tt + 2*tt^2 + tt^3")
        );
    }

    #[test]
    fn exact_division_examples() {
        let v = VariableSet::colored(1);
        assert_eq!(p(&v, "1 - tt^2").exact_div(&p(&v, "1 + tt")).unwrap(), p(&v, "1 - tt"));
        let f3 = p(&v, "1 + 2*tt + 2*tt^2 + tt^3");
        assert_eq!(f3.exact_div(&p(&v, "1 + tt")).unwrap(), p(&v, "1 + tt + tt^2"));
        assert!(matches!(
            p(&v, "1 + tt").exact_div(&p(&v, "1 - tt")),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(
            p(&v, "1").exact_div(&LaurentPoly::zero(&v)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn division_by_non_monic_and_laurent_shift() {
        let v = VariableSet::colored(2);
        let a = p(&v, "2*q^-3*s1 - 2*q*s2^-1");
        let b = p(&v, "q^-1*s1 - q^3*s2^-1");
        assert_eq!(a.exact_div(&b).unwrap(), p(&v, "2*q^-2"));
        assert!(p(&v, "3 + 3*q").exact_div(&p(&v, "2 + 2*q")).is_err());
        // infinite series 1/(1-q) must be rejected, not looped on
        assert!(p(&v, "1").exact_div(&p(&v, "1 - q")).is_err());
    }

    #[test]
    fn mismatched_variables() {
        let a = LaurentPoly::one(&VariableSet::colored(1));
        let b = LaurentPoly::one(&VariableSet::colored(2));
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn embed_by_name() {
        let small = VariableSet::unicolor();
        let big = VariableSet::new(["s", "q", "tt", "x"]).unwrap();
        let e = p(&small, "q*s^-1 + 2").embed(&big).unwrap();
        assert_eq!(e, p(&big, "q*s^-1 + 2"));
        assert!(p(&small, "s").embed(&VariableSet::colored(1)).is_err());
    }
}

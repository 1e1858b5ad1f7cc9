use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{LaurentPoly, VariableSet, TT};
use crate::error::{Error, Result};

/// Ring homomorphism sending every source variable to a signed monomial of
/// the target ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: Arc<VariableSet>,
    target: Arc<VariableSet>,
    /// `(negative, exponent over target)` per source variable.
    images: Vec<(bool, Vec<i32>)>,
}

impl RingHom {
    pub fn identity(vars: &Arc<VariableSet>) -> Self {
        let images = (0..vars.len())
            .map(|i| {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                (false, e)
            })
            .collect();
        Self {
            source: vars.clone(),
            target: vars.clone(),
            images,
        }
    }

    /// Variables are sent to the same-named target variable unless listed in
    /// `overrides`, whose images must be signed monomials over `target`.
    pub fn new(
        source: &Arc<VariableSet>,
        target: &Arc<VariableSet>,
        overrides: &[(&str, LaurentPoly)],
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(source.len());
        for name in source.names() {
            if let Some((_, img)) = overrides.iter().find(|(n, _)| n == name) {
                let img = img.embed(target)?;
                if !img.is_unit() {
                    return Err(Error::NotUnit(img.to_string()));
                }
                let (e, c) = img.terms().next().unwrap();
                images.push((c.is_negative(), e.clone()));
            } else {
                let j = target.require(name)?;
                let mut e = vec![0; target.len()];
                e[j] = 1;
                images.push((false, e));
            }
        }
        for (name, _) in overrides {
            source.require(name)?;
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// `tt ↦ q^-2` on a fixed variable set.
    pub fn bridge(vars: &Arc<VariableSet>) -> Self {
        let q_inv2 = LaurentPoly::var_pow(vars, vars.q(), -2);
        Self::new(vars, vars, &[(TT, q_inv2)]).expect("bridge is well formed")
    }

    /// Sends every color of `source` to the single color `s` of
    /// [`VariableSet::unicolor`].
    pub fn unicolor(source: &Arc<VariableSet>) -> Self {
        let target = VariableSet::unicolor();
        let s = LaurentPoly::var(&target, "s").unwrap();
        let overrides: Vec<(&str, LaurentPoly)> = source
            .colors()
            .into_iter()
            .map(|i| (source.name(i), s.clone()))
            .collect();
        Self::new(source, &target, &overrides).expect("unicolor map is well formed")
    }

    /// Parses `"tt=q^-2,s1=s"` style substitutions; unlisted variables map by
    /// name into `target`.
    pub fn parse(source: &Arc<VariableSet>, target: &Arc<VariableSet>, spec: &str) -> Result<Self> {
        let mut overrides = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (lhs, rhs) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `var=monomial`, got `{part}`")))?;
            overrides.push((lhs.trim().to_string(), LaurentPoly::parse(target, rhs)?));
        }
        let borrowed: Vec<(&str, LaurentPoly)> = overrides
            .iter()
            .map(|(n, p)| (n.as_str(), p.clone()))
            .collect();
        Self::new(source, target, &borrowed)
    }

    pub fn source(&self) -> &Arc<VariableSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VariableSet> {
        &self.target
    }

    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        super::check_vars(p.vars(), &self.source)?;
        let mut out = LaurentPoly::zero(&self.target);
        for (e, c) in p.terms() {
            let mut te = vec![0i32; self.target.len()];
            let mut negative = false;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let (neg, img) = &self.images[i];
                if *neg && x % 2 != 0 {
                    negative = !negative;
                }
                for (t, m) in te.iter_mut().zip(img) {
                    *t += x * m;
                }
            }
            let c: BigInt = if negative { -c } else { c.clone() };
            out.add_term(te, c);
        }
        Ok(out)
    }
}

impl LaurentPoly {
    /// Shorthand for the `tt ↦ q^-2` specialization.
    pub fn bridge(&self) -> LaurentPoly {
        RingHom::bridge(self.vars()).apply(self).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bridge_example() {
        let v = VariableSet::colored(1);
        let p = LaurentPoly::parse(&v, "1 + tt").unwrap();
        assert_eq!(
            RingHom::bridge(&v).apply(&p).unwrap(),
            LaurentPoly::parse(&v, "1 + q^-2").unwrap()
        );
    }

    #[test]
    fn unicolor_example() {
        let v = VariableSet::colored(2);
        let h = RingHom::unicolor(&v);
        let p = LaurentPoly::parse(&v, "s1*s2").unwrap();
        let u = h.apply(&p).unwrap();
        assert_eq!(u, LaurentPoly::parse(h.target(), "s^2").unwrap());
    }

    #[test]
    fn identity_and_signs() {
        let v = VariableSet::colored(2);
        let p = LaurentPoly::parse(&v, "3*q^2*tt^-1*s1 - s2^3 + 5").unwrap();
        assert_eq!(RingHom::identity(&v).apply(&p).unwrap(), p);
        let neg = RingHom::parse(&v, &v, "tt=-q^2").unwrap();
        assert_eq!(
            neg.apply(&LaurentPoly::parse(&v, "tt + tt^2 + tt^-3").unwrap()).unwrap(),
            LaurentPoly::parse(&v, "-q^2 + q^4 - q^-6").unwrap()
        );
    }

    #[test]
    fn rejects_non_monomial_images() {
        let v = VariableSet::colored(1);
        assert!(RingHom::parse(&v, &v, "tt=1+q").is_err());
        assert!(RingHom::parse(&v, &v, "x=q").is_err());
        assert!(RingHom::parse(&v, &v, "tt").is_err());
    }
}

//! `{"vars": [...], "terms": [{"coeff": "<decimal>", "exp": [...]}]}`

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, VariableSet};

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    exp: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.vars().names().to_vec(),
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    coeff: c.to_string(),
                    exp: e.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let vars = VariableSet::new(repr.vars).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient `{}`", t.coeff)))?;
            terms.push((t.exp, c));
        }
        LaurentPoly::from_terms(&vars, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_layout() {
        let v = VariableSet::colored(1);
        let p = LaurentPoly::parse(&v, "1 - 2*q^-1*s1").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["q","tt","s1"],"terms":[{"coeff":"-2","exp":[-1,0,1]},{"coeff":"1","exp":[0,0,0]}]}"#
        );
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn big_coefficients_survive() {
        let v = VariableSet::colored(1);
        let p = LaurentPoly::parse(&v, "123456789012345678901234567890*tt").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn rejects_malformed() {
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"vars":["q"],"terms":[]}"#).is_err());
        assert!(serde_json::from_str::<LaurentPoly>(
            r#"{"vars":["q","tt"],"terms":[{"coeff":"x","exp":[0,0]}]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<LaurentPoly>(
            r#"{"vars":["q","tt"],"terms":[{"coeff":"1","exp":[0]}]}"#
        )
        .is_err());
    }
}

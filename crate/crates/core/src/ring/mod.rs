//! Exact sparse multivariate Laurent polynomials over the integers.
//!
//! Every coefficient in the crate lives in `Z[q^±1, tt^±1, s1^±1, …, sn^±1]`.
//! The deck variable is stored as `tt` (the sign-twisted `-t`), and each color
//! `q^{α_i}` is a variable `s_i` of its own, so exponent vectors stay integral.

mod eval;
mod hom;
mod json;
mod poly;
mod text;

pub use eval::{parse_assignment, Assignment, Scalar};
pub use hom::RingHom;
pub use poly::{Exponent, LaurentPoly};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const Q: &str = "q";
pub const TT: &str = "tt";

/// Ordered list of variable names a polynomial is built over.
///
/// Always contains `q` and `tt`; the remaining names are colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidVariables(format!("bad name `{name}`")));
            }
            if !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
                return Err(Error::InvalidVariables(format!("bad name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVariables(format!("duplicate `{name}`")));
            }
        }
        for required in [Q, TT] {
            if !names.iter().any(|n| n == required) {
                return Err(Error::InvalidVariables(format!("missing `{required}`")));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// `q, tt, s1, …, sn`.
    pub fn colored(n: usize) -> Arc<Self> {
        assert!(n >= 1, "need at least one color");
        let mut names = vec![Q.to_string(), TT.to_string()];
        names.extend((1..=n).map(|i| format!("s{i}")));
        Arc::new(Self { names })
    }

    /// `q, tt, s`: every factor carries the same color.
    pub fn unicolor() -> Arc<Self> {
        Arc::new(Self {
            names: vec![Q.to_string(), TT.to_string(), "s".to_string()],
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn q(&self) -> usize {
        self.index_of(Q).expect("q is always present")
    }

    pub fn tt(&self) -> usize {
        self.index_of(TT).expect("tt is always present")
    }

    /// Indices of all color variables, in declaration order.
    pub fn colors(&self) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&i| self.names[i] != Q && self.names[i] != TT)
            .collect()
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

pub(crate) fn same_vars(a: &Arc<VariableSet>, b: &Arc<VariableSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_vars(a: &Arc<VariableSet>, b: &Arc<VariableSet>) -> Result<()> {
    if same_vars(a, b) {
        Ok(())
    } else {
        Err(Error::VariableMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

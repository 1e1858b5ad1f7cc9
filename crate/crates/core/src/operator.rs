//! Operator matrices with basis, grading and color metadata.
//!
//! Matrices act on column vectors: column `j` holds the image of the `j`-th
//! source basis vector, written in the target basis. Both bases are ordered
//! lexicographically on their composition index.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::PolyMatrix;
use crate::ring::{check_vars, Assignment, LaurentPoly, RingHom, Scalar, VariableSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Code sequences.
    U,
    /// Standard multi-arcs.
    Aprime,
    /// Normalized multi-arcs.
    A,
    /// Multiforks.
    Fork,
    /// r-loops.
    Loop,
    /// Tensor basis `v_{j_1} ⊗ … ⊗ v_{j_n}` of Verma modules.
    #[serde(rename = "verma")]
    Verma,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::U => "U",
            Basis::Aprime => "Aprime",
            Basis::A => "A",
            Basis::Fork => "Fork",
            Basis::Loop => "Loop",
            Basis::Verma => "verma",
        }
    }

    pub fn is_homological(self) -> bool {
        self != Basis::Verma
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "U" => Basis::U,
            "Aprime" | "A'" => Basis::Aprime,
            "A" => Basis::A,
            "Fork" => Basis::Fork,
            "Loop" => Basis::Loop,
            "verma" | "VermaTensor" => Basis::Verma,
            _ => return Err(Error::Parse(format!("unknown basis `{s}`"))),
        })
    }
}

/// Color variable carried by each tensor position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colors(Vec<usize>);

impl Colors {
    /// Position `i` carries `s_{i+1}`.
    pub fn distinct(vars: &Arc<VariableSet>, n: usize) -> Result<Self> {
        (1..=n)
            .map(|i| vars.require(&format!("s{i}")))
            .collect::<Result<Vec<_>>>()
            .map(Colors)
    }

    /// Every position carries `s`.
    pub fn uniform(vars: &Arc<VariableSet>, n: usize) -> Result<Self> {
        Ok(Colors(vec![vars.require("s")?; n]))
    }

    pub fn from_indices(indices: Vec<usize>) -> Self {
        Colors(indices)
    }

    pub fn from_names(vars: &Arc<VariableSet>, names: &[String]) -> Result<Self> {
        names
            .iter()
            .map(|n| vars.require(n))
            .collect::<Result<Vec<_>>>()
            .map(Colors)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Variable index of the color at `position` (0-based).
    pub fn var(&self, position: usize) -> usize {
        self.0[position]
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn names(&self, vars: &VariableSet) -> Vec<String> {
        self.0.iter().map(|&i| vars.name(i).to_string()).collect()
    }

    /// Colors after the strands at positions `i-1`, `i` (1-based `σ_i`) cross.
    pub fn swapped(&self, i: usize) -> Self {
        let mut c = self.0.clone();
        c.swap(i - 1, i);
        Colors(c)
    }

    /// `s_{c(position)}^e`.
    pub fn monomial(&self, vars: &Arc<VariableSet>, position: usize, e: i32) -> LaurentPoly {
        LaurentPoly::var_pow(vars, self.0[position], e)
    }

    /// `∏_i s_{c(i)}`.
    pub fn product(&self, vars: &Arc<VariableSet>) -> LaurentPoly {
        let mut exp = vec![0; vars.len()];
        for &c in &self.0 {
            exp[c] += 1;
        }
        LaurentPoly::monomial(vars, 1, exp)
    }
}

/// Matrix of an operator `W_{n, r_source} → W_{n, r_target}`, possibly with a
/// common scalar denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub n: usize,
    pub r_source: u32,
    pub r_target: u32,
    pub basis_source: Basis,
    pub basis_target: Basis,
    pub colors_source: Colors,
    pub colors_target: Colors,
    pub matrix: PolyMatrix,
    pub denominator: LaurentPoly,
}

impl OperatorMatrix {
    pub fn vars(&self) -> &Arc<VariableSet> {
        self.matrix.vars()
    }

    pub fn identity(vars: &Arc<VariableSet>, n: usize, r: u32, basis: Basis, colors: Colors) -> Self {
        let dim = crate::compositions::count(n, r) as usize;
        Self {
            n,
            r_source: r,
            r_target: r,
            basis_source: basis,
            basis_target: basis,
            colors_source: colors.clone(),
            colors_target: colors,
            matrix: PolyMatrix::identity(vars, dim),
            denominator: LaurentPoly::one(vars),
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.n != rhs.n || self.r_source != rhs.r_target || self.basis_source != rhs.basis_target {
            return Err(Error::Dimension(format!(
                "cannot compose ({} r={} {}) after ({} r={} {})",
                self.n, self.r_source, self.basis_source, rhs.n, rhs.r_target, rhs.basis_target
            )));
        }
        if self.colors_source != rhs.colors_target {
            return Err(Error::Dimension("color mismatch in composition".into()));
        }
        let mut out = OperatorMatrix {
            n: self.n,
            r_source: rhs.r_source,
            r_target: self.r_target,
            basis_source: rhs.basis_source,
            basis_target: self.basis_target,
            colors_source: rhs.colors_source.clone(),
            colors_target: self.colors_target.clone(),
            matrix: self.matrix.try_mul(&rhs.matrix)?,
            denominator: &self.denominator * &rhs.denominator,
        };
        out.reduce_denominator();
        Ok(out)
    }

    /// Divides out a unit denominator, or cancels it if it divides every entry.
    pub fn reduce_denominator(&mut self) {
        if self.denominator.is_one() {
            return;
        }
        if let Ok(m) = self.matrix.exact_div(&self.denominator) {
            self.matrix = m;
            self.denominator = LaurentPoly::one(self.vars());
        }
    }

    /// Equality as operators over the fraction field.
    pub fn same_operator(&self, other: &OperatorMatrix) -> Result<bool> {
        check_vars(self.vars(), other.vars())?;
        if self.n != other.n
            || self.r_source != other.r_source
            || self.r_target != other.r_target
            || self.basis_source != other.basis_source
            || self.basis_target != other.basis_target
            || self.colors_source != other.colors_source
            || self.colors_target != other.colors_target
        {
            return Ok(false);
        }
        if self.denominator == other.denominator {
            return Ok(self.matrix == other.matrix);
        }
        Ok(self.matrix.scale(&other.denominator) == other.matrix.scale(&self.denominator))
    }

    /// Entry-wise ring homomorphism. Colors are carried over by name when the
    /// target still has them, and otherwise collapse onto the image variable.
    pub fn specialize(&self, hom: &RingHom) -> Result<OperatorMatrix> {
        let target = hom.target();
        let map_colors = |c: &Colors| -> Result<Colors> {
            let mut out = Vec::with_capacity(c.len());
            for &v in c.indices() {
                let img = hom.apply(&LaurentPoly::var_pow(self.vars(), v, 1))?;
                let (e, _) = img.terms().next().expect("monomial image");
                let single: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 0).collect();
                match single.as_slice() {
                    [j] if e[*j] == 1 => out.push(*j),
                    _ => {
                        let name = self.vars().name(v);
                        out.push(target.require(name)?)
                    }
                }
            }
            Ok(Colors(out))
        };
        Ok(OperatorMatrix {
            n: self.n,
            r_source: self.r_source,
            r_target: self.r_target,
            basis_source: self.basis_source,
            basis_target: self.basis_target,
            colors_source: map_colors(&self.colors_source)?,
            colors_target: map_colors(&self.colors_target)?,
            matrix: self.matrix.apply_hom(hom)?,
            denominator: hom.apply(&self.denominator)?,
        })
    }

    /// Numeric matrix, already divided by the denominator.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Vec<Vec<Scalar>>> {
        let d = self.denominator.evaluate(assignment)?;
        if d.is_zero() {
            return Err(Error::ZeroPole(format!("denominator {}", self.denominator)));
        }
        let mut out = Vec::with_capacity(self.matrix.rows());
        for i in 0..self.matrix.rows() {
            let mut row = Vec::with_capacity(self.matrix.cols());
            for j in 0..self.matrix.cols() {
                let x = self.matrix.get(i, j).evaluate(assignment)?;
                row.push(divide(&x, &d));
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Applies the operator to a coordinate column (source basis order),
    /// returning the numerator coordinates.
    pub fn apply_column(&self, column: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        let col = PolyMatrix::from_columns(self.vars(), column.len(), vec![column.to_vec()])?;
        Ok(self.matrix.try_mul(&col)?.column(0))
    }
}

fn divide(x: &Scalar, d: &Scalar) -> Scalar {
    match (x, d) {
        (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a / b),
        _ => Scalar::Complex(x.to_complex() / d.to_complex()),
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    n: usize,
    r_source: u32,
    r_target: u32,
    basis_source: Basis,
    basis_target: Basis,
    colors_source: Vec<String>,
    colors_target: Vec<String>,
    rows: Vec<Vec<LaurentPoly>>,
    denominator: LaurentPoly,
}

impl Serialize for OperatorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorRepr {
            n: self.n,
            r_source: self.r_source,
            r_target: self.r_target,
            basis_source: self.basis_source,
            basis_target: self.basis_target,
            colors_source: self.colors_source.names(self.vars()),
            colors_target: self.colors_target.names(self.vars()),
            rows: self.matrix.to_rows(),
            denominator: self.denominator.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = OperatorRepr::deserialize(d)?;
        let vars = repr.denominator.vars().clone();
        let rows_expected = crate::compositions::count(repr.n, repr.r_target) as usize;
        let cols_expected = crate::compositions::count(repr.n, repr.r_source) as usize;
        let matrix = if repr.rows.is_empty() {
            PolyMatrix::zeros(&vars, 0, cols_expected)
        } else {
            PolyMatrix::from_rows(&vars, repr.rows).map_err(D::Error::custom)?
        };
        if matrix.rows() != rows_expected || matrix.cols() != cols_expected {
            return Err(D::Error::custom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                rows_expected,
                cols_expected
            )));
        }
        let colors_source = Colors::from_names(&vars, &repr.colors_source).map_err(D::Error::custom)?;
        let colors_target = Colors::from_names(&vars, &repr.colors_target).map_err(D::Error::custom)?;
        if colors_source.len() != repr.n || colors_target.len() != repr.n {
            return Err(D::Error::custom("one color per tensor factor expected"));
        }
        Ok(OperatorMatrix {
            n: repr.n,
            r_source: repr.r_source,
            r_target: repr.r_target,
            basis_source: repr.basis_source,
            basis_target: repr.basis_target,
            colors_source,
            colors_target,
            matrix,
            denominator: repr.denominator,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_names_round_trip() {
        for b in [Basis::U, Basis::Aprime, Basis::A, Basis::Fork, Basis::Loop, Basis::Verma] {
            assert_eq!(b.name().parse::<Basis>().unwrap(), b);
            let json = serde_json::to_string(&b).unwrap();
            assert_eq!(json, format!("\"{}\"", b.name()));
        }
        assert!("B".parse::<Basis>().is_err());
    }

    #[test]
    fn identity_serializes_and_reads_back() {
        let vars = VariableSet::colored(2);
        let colors = Colors::distinct(&vars, 2).unwrap();
        let id = OperatorMatrix::identity(&vars, 2, 1, Basis::A, colors);
        let s = serde_json::to_string(&id).unwrap();
        let back: OperatorMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, id);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn compose_checks_grading() {
        let vars = VariableSet::colored(2);
        let colors = Colors::distinct(&vars, 2).unwrap();
        let a = OperatorMatrix::identity(&vars, 2, 1, Basis::A, colors.clone());
        let b = OperatorMatrix::identity(&vars, 2, 2, Basis::A, colors);
        assert!(a.compose(&b).is_err());
        assert!(a.compose(&a).unwrap().matrix.is_identity());
    }
}

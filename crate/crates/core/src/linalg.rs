//! Dense matrices over the Laurent ring and fraction-free elimination.
//!
//! Ranks, kernels and inverses are taken over the fraction field, but every
//! intermediate entry stays in the Laurent ring: elimination uses the
//! Bareiss update `(p·a_ij − a_ic·a_rj) / p_prev`, whose division is exact.
//! A failed division therefore means a bug, and surfaces as an error.

use std::ops::Mul;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{check_vars, LaurentPoly, RingHom, VariableSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Arc<VariableSet>,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

/// Result of a fraction-free Gauss–Jordan reduction.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced matrix: each pivot row has `pivot_value` at its pivot column
    /// and zeros in every other pivot column.
    pub matrix: PolyMatrix,
    pub pivot_cols: Vec<usize>,
    pub pivot_value: LaurentPoly,
    /// Parity of the row swaps performed.
    pub swaps_odd: bool,
}

impl PolyMatrix {
    pub fn zeros(vars: &Arc<VariableSet>, rows: usize, cols: usize) -> Self {
        Self {
            vars: vars.clone(),
            rows,
            cols,
            data: vec![LaurentPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Arc<VariableSet>, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(vars));
        }
        m
    }

    pub fn from_rows(vars: &Arc<VariableSet>, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for x in row {
                check_vars(x.vars(), vars)?;
                data.push(x);
            }
        }
        Ok(Self {
            vars: vars.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(
        vars: &Arc<VariableSet>,
        rows: usize,
        columns: Vec<Vec<LaurentPoly>>,
    ) -> Result<Self> {
        let mut m = Self::zeros(vars, rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension("column length".into()));
            }
            for (i, x) in col.into_iter().enumerate() {
                check_vars(x.vars(), vars)?;
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentPoly) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_vars(&self.vars, &other.vars)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Result<Self> {
        check_vars(&self.vars, &other.vars)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Self {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every entry exactly by `c`.
    pub fn exact_div(&self, c: &LaurentPoly) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.exact_div(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn apply_hom(&self, h: &RingHom) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| h.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            vars: h.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<LaurentPoly> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        check_vars(&self.vars, &other.vars)?;
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row count".into()));
        }
        let mut out = Self::zeros(&self.vars, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Fraction-free Gauss–Jordan elimination restricted to the first
    /// `pivot_limit` columns. Pivots are chosen by fewest terms.
    pub fn gauss_jordan(&self, pivot_limit: usize) -> Result<Echelon> {
        let mut m = self.clone();
        let mut prev = LaurentPoly::one(&self.vars);
        let mut pivot_cols = Vec::new();
        let mut swaps_odd = false;
        let mut row = 0;
        for col in 0..pivot_limit.min(self.cols) {
            if row == m.rows {
                break;
            }
            let pick = (row..m.rows)
                .filter(|&i| !m.get(i, col).is_zero())
                .min_by_key(|&i| (m.get(i, col).num_terms(), i));
            let Some(pick) = pick else { continue };
            if pick != row {
                for j in 0..m.cols {
                    m.data.swap(pick * m.cols + j, row * m.cols + j);
                }
                swaps_odd = !swaps_odd;
            }
            let p = m.get(row, col).clone();
            let pivot_row = m.row(row).to_vec();
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let a = m.get(i, col).clone();
                for j in 0..m.cols {
                    let x = m.get(i, j);
                    let mut val = &p * x;
                    if !a.is_zero() && !pivot_row[j].is_zero() {
                        val -= &(&a * &pivot_row[j]);
                    }
                    let val = if prev.is_one() { val } else { val.exact_div(&prev)? };
                    m.set(i, j, val);
                }
            }
            prev = p;
            pivot_cols.push(col);
            row += 1;
        }
        Ok(Echelon {
            matrix: m,
            pivot_cols,
            pivot_value: prev,
            swaps_odd,
        })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.gauss_jordan(self.cols)?.pivot_cols.len())
    }

    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(LaurentPoly::one(&self.vars));
        }
        let e = self.gauss_jordan(self.cols)?;
        if e.pivot_cols.len() < self.rows {
            return Ok(LaurentPoly::zero(&self.vars));
        }
        Ok(if e.swaps_odd { -e.pivot_value } else { e.pivot_value })
    }

    /// A basis of the right kernel over the fraction field, as integral
    /// column vectors with integer and monomial content removed.
    pub fn kernel(&self) -> Result<Vec<Vec<LaurentPoly>>> {
        let e = self.gauss_jordan(self.cols)?;
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|c| !e.pivot_cols.contains(c)) {
            let mut v = vec![LaurentPoly::zero(&self.vars); self.cols];
            v[f] = e.pivot_value.clone();
            for (i, &pc) in e.pivot_cols.iter().enumerate() {
                v[pc] = -e.matrix.get(i, f);
            }
            basis.push(primitive_vector(&v));
        }
        Ok(basis)
    }

    /// `(adj, d)` with `self⁻¹ = adj / d`; when `d` is a unit it is divided
    /// out and `d = 1` is returned.
    pub fn inverse(&self) -> Result<(PolyMatrix, LaurentPoly)> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.vars, n))?;
        let e = aug.gauss_jordan(n)?;
        if e.pivot_cols.len() < n {
            return Err(Error::Singular);
        }
        let mut right = Self::zeros(&self.vars, n, n);
        for i in 0..n {
            for j in 0..n {
                right.set(i, j, e.matrix.get(i, n + j).clone());
            }
        }
        let d = e.pivot_value;
        if d.is_unit() {
            let inv = d.unit_inverse()?;
            return Ok((right.scale(&inv), LaurentPoly::one(&self.vars)));
        }
        Ok((right, d))
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("incompatible matrices")
    }
}

/// Divides a vector by the gcd of its integer coefficients and by the largest
/// monomial dividing every entry, then fixes the sign so the first nonzero
/// entry has a positive leading coefficient.
pub fn primitive_vector(v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let vars = first.vars().clone();
    let mut g = BigInt::zero();
    let mut lo: Option<Vec<i32>> = None;
    for x in v.iter().filter(|x| !x.is_zero()) {
        g = num_integer::Integer::gcd(&g, &x.integer_content());
        let (xlo, _) = x.degree_box().unwrap();
        lo = Some(match lo {
            None => xlo,
            Some(l) => l.iter().zip(&xlo).map(|(a, b)| *a.min(b)).collect(),
        });
    }
    if first.leading_term().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    let divisor = LaurentPoly::monomial(&vars, g, lo.unwrap());
    v.iter()
        .map(|x| x.exact_div(&divisor).expect("content divides every entry"))
        .collect()
}

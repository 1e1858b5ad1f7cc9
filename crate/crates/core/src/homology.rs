//! The homology modules `H_r` of the configuration space, as free modules on
//! compositions, in five bases:
//!
//! * `U(k)`: code sequences,
//! * `A'(k)`: standard multi-arcs, `A'(k) = Σ_l ∏ binom_tt(k_i + l_{i+1}, l_{i+1}) U(…)`,
//! * `A(k)`: normalized multi-arcs, `A(k) = ∏_{p<n-1} s_{c(p)}^{k_{p+1}+…+k_{n-1}} A'(k)`,
//! * `F(k)`: multiforks, `F(k) = ∏ (k_i)_tt! U(k)`,
//! * `L(k)`: r-loops, `L(k) = ∏ (k_i)_tt! ∏_{m<k_i} (1 - s_{c(i)}^-2 tt^-m) A'(k)`.
//!
//! Operators are computed in the `A` basis; every other basis goes through
//! the change-of-basis matrices.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compositions::{self, compositions};
use crate::error::{Error, Result};
use crate::linalg::PolyMatrix;
use crate::operator::{Basis, Colors, OperatorMatrix};
use crate::qnum;
use crate::ring::{check_vars, LaurentPoly, RingHom, VariableSet};
use crate::verma::{Generator, QVector, TermRepr};

/// `(k_0, …, k_{n-1})`.
pub type CompositionIndex = Vec<u32>;

/// A vector of the homology module, tagged by the basis its coordinates
/// refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub basis: Basis,
    pub coords: QVector,
}

impl HVector {
    pub fn new(basis: Basis, coords: QVector) -> Result<Self> {
        if !basis.is_homological() {
            return Err(Error::WrongBasis {
                expected: "a homological basis".into(),
                found: basis.to_string(),
            });
        }
        Ok(Self { basis, coords })
    }

    pub fn zero(vars: &Arc<VariableSet>, basis: Basis, n: usize) -> Self {
        Self {
            basis,
            coords: QVector::zero(vars, n),
        }
    }

    pub fn basis_vector(vars: &Arc<VariableSet>, basis: Basis, index: Vec<u32>) -> Self {
        Self {
            basis,
            coords: QVector::basis_vector(vars, index),
        }
    }

    pub fn n(&self) -> usize {
        self.coords.n()
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        self.coords.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::WrongBasis {
                expected: basis.to_string(),
                found: self.basis.to_string(),
            });
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HVectorRepr {
    basis: Basis,
    n: usize,
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for HVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HVectorRepr {
            basis: self.basis,
            n: self.n(),
            vars: self.vars().names().to_vec(),
            terms: self.coords.terms_repr(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = HVectorRepr::deserialize(d)?;
        let coords = QVector::from_repr(r.n, &r.vars, r.terms).map_err(D::Error::custom)?;
        HVector::new(r.basis, coords).map_err(D::Error::custom)
    }
}

/// `A(k_0, …, k_{n-1}) ↦ v_{k_0} ⊗ … ⊗ v_{k_{n-1}}`, coefficients unchanged.
pub fn tens(v: &HVector) -> Result<QVector> {
    v.expect_basis(Basis::A)?;
    Ok(v.coords.clone())
}

pub fn untens(w: &QVector) -> HVector {
    HVector {
        basis: Basis::A,
        coords: w.clone(),
    }
}

/// `H_r` for `r ≥ 0` over `n` punctures with the given colors.
#[derive(Clone, Debug)]
pub struct HomologyModule {
    vars: Arc<VariableSet>,
    colors: Colors,
}

impl HomologyModule {
    pub fn new(vars: &Arc<VariableSet>, colors: Colors) -> Self {
        Self {
            vars: vars.clone(),
            colors,
        }
    }

    pub fn colored(n: usize) -> Self {
        let vars = VariableSet::colored(n);
        let colors = Colors::distinct(&vars, n).unwrap();
        Self::new(&vars, colors)
    }

    pub fn unicolor(n: usize) -> Self {
        let vars = VariableSet::unicolor();
        let colors = Colors::uniform(&vars, n).unwrap();
        Self::new(&vars, colors)
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn colors(&self) -> &Colors {
        &self.colors
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn dimension(&self, r: u32) -> usize {
        compositions::count(self.n(), r) as usize
    }

    fn tt(&self, e: i64) -> LaurentPoly {
        LaurentPoly::var_pow(&self.vars, self.vars.tt(), e as i32)
    }

    fn color(&self, position: usize, e: i32) -> LaurentPoly {
        self.colors.monomial(&self.vars, position, e)
    }

    /// `(∏ s_i)^p tt^{pr}`: the scalar of `K^p` on `H_r`.
    pub fn k_scalar(&self, r: u32, p: i32) -> LaurentPoly {
        let base = &self.colors.product(&self.vars) * &self.tt(r as i64);
        if p >= 0 {
            base.pow(p as u32)
        } else {
            base.unit_inverse().expect("monomial").pow((-p) as u32)
        }
    }

    /// `E·A(k) = Σ_i s_{c(0)}⋯s_{c(i-1)} tt^{k_0+…+k_{i-1}} A(k - e_i)`.
    pub fn e_on_basis(&self, k: &[u32]) -> QVector {
        let n = self.n();
        let mut out = QVector::zero(&self.vars, n);
        let mut prefix = LaurentPoly::one(&self.vars);
        let mut weight = 0i64;
        for i in 0..n {
            if k[i] > 0 {
                let mut idx = k.to_vec();
                idx[i] -= 1;
                out.add_term(idx, &prefix * &self.tt(weight));
            }
            prefix = &prefix * &self.color(i, 1);
            weight += k[i] as i64;
        }
        out
    }

    /// `F^(1)·A(k) = Σ_i (∏_{j>i} s_{c(j)}^{-1}) tt^{-Σ_{j>i} k_j}
    /// s_{c(i)} (k_i+1)_tt (1 - s_{c(i)}^{-2} tt^{-k_i}) A(k + e_i)`.
    pub fn f1_on_basis(&self, k: &[u32]) -> QVector {
        let n = self.n();
        let one = LaurentPoly::one(&self.vars);
        let mut out = QVector::zero(&self.vars, n);
        for i in 0..n {
            let mut c = one.clone();
            let mut after = 0i64;
            for (j, &kj) in k.iter().enumerate().skip(i + 1) {
                c = &c * &self.color(j, -1);
                after += kj as i64;
            }
            c = &c * &self.tt(-after);
            c = &c * &self.color(i, 1);
            c = &c * &qnum::t_integer(&self.vars, k[i] as i64 + 1).unwrap();
            let factor = &one - &(&self.color(i, -2) * &self.tt(-(k[i] as i64)));
            c = &c * &factor;
            let mut idx = k.to_vec();
            idx[i] += 1;
            out.add_term(idx, c);
        }
        out
    }

    /// `q^{m(m-1)/2} (m)_tt!`, the factor relating `(F^(1))^m` and `F^(m)`.
    pub fn divided_power_denominator(&self, m: u32) -> LaurentPoly {
        let m = m as i64;
        let q = LaurentPoly::var_pow(&self.vars, self.vars.q(), (m * (m - 1) / 2) as i32);
        &q * &qnum::t_factorial(&self.vars, m).unwrap()
    }

    fn map_a(&self, v: &QVector, f: impl Fn(&[u32]) -> QVector) -> Result<QVector> {
        check_vars(&self.vars, v.vars())?;
        if v.n() != self.n() {
            return Err(Error::Dimension(format!("{}-factor vector on {} punctures", v.n(), self.n())));
        }
        let mut out = QVector::zero(&self.vars, self.n());
        for (idx, c) in v.terms() {
            for (j, x) in f(idx).terms() {
                out.add_term(j.clone(), c * x);
            }
        }
        Ok(out)
    }

    fn image(&self, g: Generator, k: &[u32]) -> Result<QVector> {
        let r: u32 = k.iter().sum();
        Ok(match g {
            Generator::K => QVector::basis_vector(&self.vars, k.to_vec()).scale(&self.k_scalar(r, 1)),
            Generator::Kinv => QVector::basis_vector(&self.vars, k.to_vec()).scale(&self.k_scalar(r, -1)),
            Generator::E => self.e_on_basis(k),
            Generator::F(0) => QVector::basis_vector(&self.vars, k.to_vec()),
            Generator::F(1) => self.f1_on_basis(k),
            Generator::F(m) => {
                let mut w = QVector::basis_vector(&self.vars, k.to_vec());
                for _ in 0..m {
                    w = self.map_a(&w, |i| self.f1_on_basis(i))?;
                }
                w.exact_div(&self.divided_power_denominator(m))?
            }
        })
    }

    /// Action of a generator on a vector in the `A` basis. Divided powers are
    /// obtained by exact division of `(F^(1))^m`; failure of that division is
    /// reported as [`Error::NotDivisible`].
    pub fn act(&self, g: Generator, v: &HVector) -> Result<HVector> {
        v.expect_basis(Basis::A)?;
        check_vars(&self.vars, v.vars())?;
        let mut out = QVector::zero(&self.vars, self.n());
        for (idx, c) in v.coords.terms() {
            for (j, x) in self.image(g, idx)?.terms() {
                out.add_term(j.clone(), c * x);
            }
        }
        Ok(HVector {
            basis: Basis::A,
            coords: out,
        })
    }

    pub fn op_k(&self, v: &HVector) -> Result<HVector> {
        self.act(Generator::K, v)
    }

    pub fn op_kinv(&self, v: &HVector) -> Result<HVector> {
        self.act(Generator::Kinv, v)
    }

    pub fn op_e(&self, v: &HVector) -> Result<HVector> {
        self.act(Generator::E, v)
    }

    pub fn op_f1(&self, v: &HVector) -> Result<HVector> {
        self.act(Generator::F(1), v)
    }

    pub fn op_fdiv(&self, m: u32, v: &HVector) -> Result<HVector> {
        self.act(Generator::F(m), v)
    }

    /// Matrix of `g` from `H_r` to `H_{r+shift}` in the `A` basis.
    pub fn generator_matrix(&self, g: Generator, r: u32) -> Result<OperatorMatrix> {
        let target_r = r as i64 + g.shift();
        if target_r < 0 {
            return Err(Error::Dimension(format!("{g} lowers degree {r} below zero")));
        }
        let target_r = target_r as u32;
        let columns = compositions(self.n(), r)
            .par_iter()
            .map(|k| self.image(g, k).map(|v| v.to_column(target_r)))
            .collect::<Result<Vec<_>>>()?;
        let mut m = self.square(Basis::A, Basis::A, r, PolyMatrix::zeros(&self.vars, 0, 0));
        m.r_target = target_r;
        m.matrix = PolyMatrix::from_columns(&self.vars, self.dimension(target_r), columns)?;
        Ok(m)
    }

    fn square(&self, source: Basis, target: Basis, r: u32, matrix: PolyMatrix) -> OperatorMatrix {
        OperatorMatrix {
            n: self.n(),
            r_source: r,
            r_target: r,
            basis_source: source,
            basis_target: target,
            colors_source: self.colors.clone(),
            colors_target: self.colors.clone(),
            matrix,
            denominator: LaurentPoly::one(&self.vars),
        }
    }

    fn diagonal(&self, source: Basis, target: Basis, r: u32, f: impl Fn(&[u32]) -> LaurentPoly) -> OperatorMatrix {
        let basis = compositions(self.n(), r);
        let mut m = PolyMatrix::zeros(&self.vars, basis.len(), basis.len());
        for (i, k) in basis.iter().enumerate() {
            m.set(i, i, f(k));
        }
        self.square(source, target, r, m)
    }

    /// Column `k` expands `A'(k)` in the code sequences:
    /// `A'(k) = Σ_{l_{n-1}=0}^{k_{n-1}} Σ_{l_{n-2}=0}^{k_{n-2}+l_{n-1}} ⋯ Σ_{l_1=0}^{k_1+l_2}
    ///  ∏_{i=0}^{n-2} binom_tt(k_i + l_{i+1}, l_{i+1})
    ///  U(k_0+l_1, k_1+l_2-l_1, …, k_{n-1}-l_{n-1})`.
    ///
    /// In lexicographic order this is lower unitriangular; its transpose (the
    /// row-wise expansion) is upper unitriangular.
    pub fn arcs_to_codes_matrix(&self, r: u32) -> OperatorMatrix {
        let n = self.n();
        let basis = compositions(n, r);
        let columns: Vec<Vec<LaurentPoly>> = basis
            .par_iter()
            .map(|k| {
                let mut col = vec![LaurentPoly::zero(&self.vars); basis.len()];
                let mut l = vec![0u32; n + 1];
                self.arcs_sum(k, n - 1, &mut l, &basis, &mut col);
                col
            })
            .collect();
        let m = PolyMatrix::from_columns(&self.vars, basis.len(), columns).unwrap();
        self.square(Basis::Aprime, Basis::U, r, m)
    }

    /// Chooses `l_i` for `i = level, level-1, …, 1`; `l[0] = l[n] = 0`.
    fn arcs_sum(&self, k: &[u32], level: usize, l: &mut Vec<u32>, basis: &[Vec<u32>], col: &mut [LaurentPoly]) {
        let n = k.len();
        if level == 0 {
            let mut u = Vec::with_capacity(n);
            let mut c = LaurentPoly::one(&self.vars);
            for i in 0..n {
                u.push(k[i] + l[i + 1] - l[i]);
                if i + 1 < n {
                    let b = qnum::t_binomial(&self.vars, (k[i] + l[i + 1]) as i64, l[i + 1] as i64).unwrap();
                    c = &c * &b;
                }
            }
            let row = compositions::position(basis, &u).expect("same degree");
            col[row] += &c;
            return;
        }
        let upper = k[level] + l[level + 1];
        for x in 0..=upper {
            l[level] = x;
            self.arcs_sum(k, level - 1, l, basis, col);
        }
        l[level] = 0;
    }

    /// `∏_{p=0}^{n-2} s_{c(p)}^{k_{p+1}+…+k_{n-1}}`, the factor with `A(k) = d_k A'(k)`.
    pub fn normalization(&self, k: &[u32]) -> LaurentPoly {
        let n = self.n();
        let mut c = LaurentPoly::one(&self.vars);
        for p in 0..n.saturating_sub(1) {
            let tail: u32 = k[p + 1..].iter().sum();
            c = &c * &self.color(p, tail as i32);
        }
        c
    }

    /// Diagonal matrix expanding `A(k)` in the `A'` basis.
    pub fn normalize_arcs(&self, r: u32) -> OperatorMatrix {
        self.diagonal(Basis::A, Basis::Aprime, r, |k| self.normalization(k))
    }

    pub fn fork_factor(&self, k: &[u32]) -> LaurentPoly {
        k.iter().fold(LaurentPoly::one(&self.vars), |acc, &ki| {
            &acc * &qnum::t_factorial(&self.vars, ki as i64).unwrap()
        })
    }

    /// Diagonal matrix expanding `F(k)` in the `U` basis.
    pub fn fork_to_code_matrix(&self, r: u32) -> OperatorMatrix {
        self.diagonal(Basis::Fork, Basis::U, r, |k| self.fork_factor(k))
    }

    pub fn loop_factor(&self, k: &[u32]) -> LaurentPoly {
        let one = LaurentPoly::one(&self.vars);
        let mut c = self.fork_factor(k);
        for (i, &ki) in k.iter().enumerate() {
            for m in 0..ki {
                c = &c * &(&one - &(&self.color(i, -2) * &self.tt(-(m as i64))));
            }
        }
        c
    }

    /// Diagonal matrix expanding `L(k)` in the `A'` basis.
    pub fn loops_to_arcs_matrix(&self, r: u32) -> OperatorMatrix {
        self.diagonal(Basis::Loop, Basis::Aprime, r, |k| self.loop_factor(k))
    }

    /// Human-readable name of the diagonal factor of `basis` at `k`.
    fn factor_name(&self, basis: Basis, k: &[u32]) -> String {
        let mut parts: Vec<String> = k
            .iter()
            .filter(|&&ki| ki >= 2)
            .map(|ki| format!("({ki})_tt!"))
            .collect();
        if basis == Basis::Loop {
            for (i, &ki) in k.iter().enumerate() {
                let s = self.vars.name(self.colors.var(i));
                for m in 0..ki {
                    parts.push(if m == 0 {
                        format!("(1 - {s}^-2)")
                    } else {
                        format!("(1 - {s}^-2*tt^-{m})")
                    });
                }
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Matrix expanding `basis` in the code sequences `U`.
    pub fn to_codes(&self, basis: Basis, r: u32) -> Result<OperatorMatrix> {
        let p = self.arcs_to_codes_matrix(r);
        Ok(match basis {
            Basis::U => self.square(Basis::U, Basis::U, r, PolyMatrix::identity(&self.vars, self.dimension(r))),
            Basis::Aprime => p,
            Basis::A => p.compose(&self.normalize_arcs(r))?,
            Basis::Fork => self.fork_to_code_matrix(r),
            Basis::Loop => p.compose(&self.loops_to_arcs_matrix(r))?,
            Basis::Verma => {
                return Err(Error::WrongBasis {
                    expected: "a homological basis".into(),
                    found: basis.to_string(),
                })
            }
        })
    }

    /// Unitriangular inverse of [`Self::arcs_to_codes_matrix`].
    fn codes_to_arcs(&self, r: u32) -> Result<PolyMatrix> {
        let (inv, d) = self.arcs_to_codes_matrix(r).matrix.inverse()?;
        debug_assert!(d.is_one());
        Ok(inv)
    }

    /// Rewrites `v` in `target`. Going "up" through a diagonal that is not a
    /// unit succeeds only when each coefficient is divisible by it; otherwise
    /// the error names the blocking factor.
    pub fn change_basis(&self, v: &HVector, target: Basis) -> Result<HVector> {
        check_vars(&self.vars, v.vars())?;
        if v.n() != self.n() {
            return Err(Error::Dimension(format!("{}-factor vector on {} punctures", v.n(), self.n())));
        }
        if !target.is_homological() {
            return Err(Error::WrongBasis {
                expected: "a homological basis".into(),
                found: target.to_string(),
            });
        }
        if v.basis == target {
            return Ok(v.clone());
        }
        let mut degrees: Vec<u32> = v.coords.terms().map(|(k, _)| k.iter().sum()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut out = QVector::zero(&self.vars, self.n());
        for r in degrees {
            let x = v.coords.to_column(r);
            let codes = self.to_codes(v.basis, r)?.apply_column(&x)?;
            let y = self.codes_into(target, r, codes)?;
            for (k, c) in compositions(self.n(), r).into_iter().zip(y) {
                out.add_term(k, c);
            }
        }
        Ok(HVector {
            basis: target,
            coords: out,
        })
    }

    fn codes_into(&self, target: Basis, r: u32, codes: Vec<LaurentPoly>) -> Result<Vec<LaurentPoly>> {
        let basis = compositions(self.n(), r);
        let apply = |m: &PolyMatrix, x: &[LaurentPoly]| -> Result<Vec<LaurentPoly>> {
            let col = PolyMatrix::from_columns(&self.vars, x.len(), vec![x.to_vec()])?;
            Ok(m.try_mul(&col)?.column(0))
        };
        let divide = |x: Vec<LaurentPoly>, f: &dyn Fn(&[u32]) -> LaurentPoly| -> Result<Vec<LaurentPoly>> {
            x.into_iter()
                .zip(&basis)
                .map(|(c, k)| {
                    c.exact_div(&f(k)).map_err(|_| Error::NonInvertibleChange {
                        basis: target.to_string(),
                        factor: self.factor_name(target, k),
                        index: format!("{k:?}"),
                    })
                })
                .collect()
        };
        match target {
            Basis::U => Ok(codes),
            Basis::Aprime => apply(&self.codes_to_arcs(r)?, &codes),
            Basis::A => {
                let arcs = apply(&self.codes_to_arcs(r)?, &codes)?;
                divide(arcs, &|k| self.normalization(k))
            }
            Basis::Fork => divide(codes, &|k| self.fork_factor(k)),
            Basis::Loop => {
                let arcs = apply(&self.codes_to_arcs(r)?, &codes)?;
                divide(arcs, &|k| self.loop_factor(k))
            }
            Basis::Verma => unreachable!(),
        }
    }

    /// Generator matrix after `tt ↦ q^-2`, for comparison with the Verma side.
    pub fn bridged_generator_matrix(&self, g: Generator, r: u32) -> Result<OperatorMatrix> {
        self.generator_matrix(g, r)?.specialize(&RingHom::bridge(&self.vars))
    }
}

/// `F^(l)·A(k)` for one puncture of color `s`:
/// `binom_tt(k+l, k) q^{-l(l-1)/2} s^l ∏_{m=k}^{k+l-1} (1 - s^{-2} tt^{-m}) A(k+l)`.
pub fn single_puncture_divided_power(vars: &Arc<VariableSet>, s: usize, l: u32, k: u32) -> LaurentPoly {
    let (l, k) = (l as i64, k as i64);
    let one = LaurentPoly::one(vars);
    let mut c = qnum::t_binomial(vars, k + l, k).unwrap();
    c = &c * &LaurentPoly::var_pow(vars, vars.q(), (-l * (l - 1) / 2) as i32);
    c = &c * &LaurentPoly::var_pow(vars, s, l as i32);
    for m in k..k + l {
        let t = &LaurentPoly::var_pow(vars, s, -2) * &LaurentPoly::var_pow(vars, vars.tt(), -(m as i32));
        c = &c * &(&one - &t);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(vars: &Arc<VariableSet>, s: &str) -> LaurentPoly {
        LaurentPoly::parse(vars, s).unwrap()
    }

    fn a(h: &HomologyModule, k: &[u32]) -> HVector {
        HVector::basis_vector(h.vars(), Basis::A, k.to_vec())
    }

    #[test]
    fn e_examples() {
        let h = HomologyModule::colored(2);
        let e = h.op_e(&a(&h, &[0, 1])).unwrap();
        assert_eq!(e.coords.coefficient(&[0, 0]), p(h.vars(), "s1"));
        assert_eq!(e.coords.len(), 1);
        assert!(h.op_e(&a(&h, &[0, 0])).unwrap().is_zero());
        let h1 = HomologyModule::colored(1);
        let e = h1.op_e(&a(&h1, &[3])).unwrap();
        assert!(e.coords.coefficient(&[2]).is_one());
    }

    #[test]
    fn f_examples() {
        let h = HomologyModule::colored(2);
        let f = h.op_f1(&a(&h, &[0, 0])).unwrap();
        assert_eq!(f.coords.coefficient(&[1, 0]), p(h.vars(), "s1*s2^-1 - s1^-1*s2^-1"));
        assert_eq!(f.coords.coefficient(&[0, 1]), p(h.vars(), "s2 - s2^-1"));
        let h1 = HomologyModule::colored(1);
        let f = h1.op_f1(&a(&h1, &[1])).unwrap();
        assert_eq!(f.coords.coefficient(&[2]), p(h1.vars(), "s1 + tt*s1 - tt^-1*s1^-1 - s1^-1"));
    }

    #[test]
    fn k_scalars() {
        let h = HomologyModule::colored(2);
        let k = h.op_k(&a(&h, &[1, 1])).unwrap();
        assert_eq!(k.coords.coefficient(&[1, 1]), p(h.vars(), "tt^2*s1*s2"));
        let back = h.op_kinv(&k).unwrap();
        assert_eq!(back, a(&h, &[1, 1]));
    }

    #[test]
    fn single_puncture_closed_form() {
        let h = HomologyModule::colored(1);
        let s = h.vars().require("s1").unwrap();
        for l in 0..=4 {
            for k in 0..=4 {
                let v = h.op_fdiv(l, &a(&h, &[k])).unwrap();
                let expected = single_puncture_divided_power(h.vars(), s, l, k);
                assert_eq!(v.coords.coefficient(&[k + l]), expected, "l={l} k={k}");
            }
        }
    }

    #[test]
    fn arcs_to_codes_small() {
        let h = HomologyModule::colored(2);
        let m = h.arcs_to_codes_matrix(1);
        // Columns: A'(0,1), A'(1,0); rows: U(0,1), U(1,0).
        assert!(m.matrix.get(0, 0).is_one());
        assert!(m.matrix.get(1, 0).is_one());
        assert!(m.matrix.get(0, 1).is_zero());
        assert!(m.matrix.get(1, 1).is_one());
        let m2 = h.arcs_to_codes_matrix(2);
        assert!(m2.matrix.transpose().is_upper_triangular());
        assert!(m2.matrix.determinant().unwrap().is_one());
        assert!(HomologyModule::colored(1).arcs_to_codes_matrix(3).matrix.is_identity());
    }

    #[test]
    fn diagonal_changes() {
        let h = HomologyModule::colored(3);
        assert_eq!(h.normalization(&[0, 1, 1]), p(h.vars(), "s1^2*s2"));
        let h2 = HomologyModule::colored(2);
        assert_eq!(h2.fork_factor(&[2, 1]), p(h2.vars(), "1 + tt"));
        let h1 = HomologyModule::colored(1);
        assert!(h1.loop_factor(&[0]).is_one());
        assert_eq!(h1.loop_factor(&[1]), p(h1.vars(), "1 - s1^-2"));
        assert_eq!(
            h1.loop_factor(&[2]),
            &p(h1.vars(), "1 + tt") * &(&p(h1.vars(), "1 - s1^-2") * &p(h1.vars(), "1 - tt^-1*s1^-2"))
        );
    }

    #[test]
    fn change_basis_paths() {
        let h = HomologyModule::colored(2);
        let v = HVector::basis_vector(h.vars(), Basis::Aprime, vec![0, 1]);
        let u = h.change_basis(&v, Basis::U).unwrap();
        assert!(u.coords.coefficient(&[0, 1]).is_one());
        assert!(u.coords.coefficient(&[1, 0]).is_one());
        let back = h.change_basis(&u, Basis::Aprime).unwrap();
        assert_eq!(back, v);
        let fork = HVector::basis_vector(h.vars(), Basis::Fork, vec![2, 0]);
        let u = h.change_basis(&fork, Basis::U).unwrap();
        assert_eq!(u.coords.coefficient(&[2, 0]), p(h.vars(), "1 + tt"));
        let err = h
            .change_basis(&HVector::basis_vector(h.vars(), Basis::U, vec![2, 0]), Basis::Fork)
            .unwrap_err();
        assert!(err.to_string().contains("(2)_tt! not a unit"), "{err}");
        let a = HVector::basis_vector(h.vars(), Basis::A, vec![1, 1]);
        let round = h.change_basis(&h.change_basis(&a, Basis::U).unwrap(), Basis::A).unwrap();
        assert_eq!(round, a);
    }

    #[test]
    fn hvector_json() {
        let h = HomologyModule::colored(2);
        let v = h.op_fdiv(2, &a(&h, &[0, 1])).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with("{\"basis\":\"A\""));
        let back: HVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}

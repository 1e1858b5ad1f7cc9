//! Integral Verma modules `V^s`, their tensor products and weight spaces.
//!
//! On a single factor with highest weight `s = q^α`:
//! `K v_j = s q^{-2j} v_j`, `E v_j = v_{j-1}` and
//! `F^(m) v_j = qbinom(m+j, j) ∏_{k<m} (s q^{-k-j} - s^{-1} q^{j+k}) v_{j+m}`.
//!
//! Tensor products use
//! `Δ(E) = E⊗1 + K⊗E`, `Δ(K) = K⊗K` and
//! `Δ(F^(m)) = Σ_j q^{-j(m-j)} F^(m-j) ⊗ K^{j-m} F^(j)`,
//! the convention under which the homological operators are intertwined by
//! `tens` (see the decisions log of the repository for the comparison with
//! the mirrored convention).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compositions::{self, compositions};
use crate::error::{Error, Result};
use crate::linalg::PolyMatrix;
use crate::operator::{Basis, Colors, OperatorMatrix};
use crate::qnum;
use crate::ring::{check_vars, LaurentPoly, RingHom, VariableSet};

/// `(j_1, …, j_n)`, standing for `v_{j_1} ⊗ … ⊗ v_{j_n}`.
pub type VermaIndex = Vec<u32>;

/// Generators of the half-Lusztig integral form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    /// Divided power `F^(m)`; `F(0)` is the identity.
    F(u32),
    K,
    Kinv,
}

impl Generator {
    /// Change of subweight.
    pub fn shift(self) -> i64 {
        match self {
            Generator::E => -1,
            Generator::F(m) => m as i64,
            Generator::K | Generator::Kinv => 0,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E => f.write_str("E"),
            Generator::F(m) => write!(f, "F^({m})"),
            Generator::K => f.write_str("K"),
            Generator::Kinv => f.write_str("K^-1"),
        }
    }
}

/// Sparse vector on composition-indexed basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QVector {
    vars: Arc<VariableSet>,
    n: usize,
    terms: BTreeMap<Vec<u32>, LaurentPoly>,
}

impl QVector {
    pub fn zero(vars: &Arc<VariableSet>, n: usize) -> Self {
        Self {
            vars: vars.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_vector(vars: &Arc<VariableSet>, index: Vec<u32>) -> Self {
        let mut v = Self::zero(vars, index.len());
        v.add_term(index, LaurentPoly::one(vars));
        v
    }

    pub fn from_terms<I>(vars: &Arc<VariableSet>, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, LaurentPoly)>,
    {
        let mut v = Self::zero(vars, n);
        for (idx, c) in terms {
            if idx.len() != n {
                return Err(Error::Dimension(format!("index of length {} in a {n}-factor vector", idx.len())));
            }
            check_vars(vars, c.vars())?;
            v.add_term(idx, c);
        }
        Ok(v)
    }

    /// Coordinates (in `compositions(n, r)` order) of a column.
    pub fn from_column(vars: &Arc<VariableSet>, n: usize, r: u32, column: &[LaurentPoly]) -> Self {
        let mut v = Self::zero(vars, n);
        for (idx, c) in compositions(n, r).into_iter().zip(column) {
            v.add_term(idx, c.clone());
        }
        v
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &[u32]) -> LaurentPoly {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, index: Vec<u32>, c: LaurentPoly) {
        debug_assert_eq!(index.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_vars(&self.vars, &other.vars)?;
        if self.n != other.n {
            return Err(Error::Dimension("vectors over different factor counts".into()));
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-LaurentPoly::one(&self.vars)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(&self.vars, self.n);
        for (idx, x) in &self.terms {
            out.add_term(idx.clone(), x * c);
        }
        out
    }

    pub fn exact_div(&self, c: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero(&self.vars, self.n);
        for (idx, x) in &self.terms {
            out.add_term(idx.clone(), x.exact_div(c)?);
        }
        Ok(out)
    }

    pub fn apply_hom(&self, h: &RingHom) -> Result<Self> {
        let mut out = Self::zero(h.target(), self.n);
        for (idx, x) in &self.terms {
            out.add_term(idx.clone(), h.apply(x)?);
        }
        Ok(out)
    }

    /// The common subweight of all terms, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|k| k.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Component of subweight `r`.
    pub fn component(&self, r: u32) -> Self {
        let mut out = Self::zero(&self.vars, self.n);
        for (idx, x) in &self.terms {
            if idx.iter().sum::<u32>() == r {
                out.add_term(idx.clone(), x.clone());
            }
        }
        out
    }

    /// Coordinates in `compositions(n, r)` order; other degrees are ignored.
    pub fn to_column(&self, r: u32) -> Vec<LaurentPoly> {
        compositions(self.n, r)
            .iter()
            .map(|idx| self.coefficient(idx))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermRepr {
    pub(crate) index: Vec<u32>,
    pub(crate) coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct QVectorRepr {
    n: usize,
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

impl QVector {
    pub(crate) fn terms_repr(&self) -> Vec<TermRepr> {
        self.terms
            .iter()
            .map(|(i, c)| TermRepr {
                index: i.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub(crate) fn from_repr(n: usize, vars: &[String], terms: Vec<TermRepr>) -> Result<Self> {
        let vars = VariableSet::new(vars.iter().cloned())?;
        let mut out = Self::zero(&vars, n);
        for t in terms {
            if t.index.len() != n {
                return Err(Error::Dimension(format!("index {:?} in a {n}-factor vector", t.index)));
            }
            check_vars(&vars, t.coeff.vars())?;
            if t.coeff.is_zero() || out.terms.contains_key(&t.index) {
                return Err(Error::Parse(format!("zero or repeated term at {:?}", t.index)));
            }
            out.terms.insert(t.index, t.coeff.embed(&vars)?);
        }
        Ok(out)
    }
}

impl Serialize for QVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QVectorRepr {
            n: self.n,
            vars: self.vars.names().to_vec(),
            terms: self.terms_repr(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QVectorRepr::deserialize(d)?;
        QVector::from_repr(r.n, &r.vars, r.terms).map_err(serde::de::Error::custom)
    }
}

/// All `(j_1, …, j_n)` with `Σ j_i = r`, lexicographically.
pub fn weight_basis(n: usize, r: u32) -> Vec<VermaIndex> {
    compositions(n, r)
}

fn qpow(vars: &Arc<VariableSet>, e: i64) -> LaurentPoly {
    LaurentPoly::var_pow(vars, vars.q(), e as i32)
}

/// `F^(m) v_j = coeff · v_{j+m}` on a factor of color variable `s`.
pub fn divided_power_coefficient(vars: &Arc<VariableSet>, s: usize, m: u32, j: u32) -> LaurentPoly {
    let (m, j) = (m as i64, j as i64);
    let mut c = qnum::q_binomial(vars, m + j, j).expect("non-negative arguments");
    for k in 0..m {
        let mut a = LaurentPoly::var_pow(vars, s, 1);
        a = &a * &qpow(vars, -k - j);
        let b = &LaurentPoly::var_pow(vars, s, -1) * &qpow(vars, j + k);
        c = &c * &(&a - &b);
    }
    c
}

/// Internal generator alphabet: `K^p` for any integer `p` is needed by the
/// coproduct of divided powers.
#[derive(Clone, Copy, Debug)]
enum Op {
    E,
    F(u32),
    KPow(i32),
}

impl From<Generator> for Op {
    fn from(g: Generator) -> Self {
        match g {
            Generator::E => Op::E,
            Generator::F(m) => Op::F(m),
            Generator::K => Op::KPow(1),
            Generator::Kinv => Op::KPow(-1),
        }
    }
}

type Terms = Vec<(Vec<u32>, LaurentPoly)>;

/// Bracketing of the iterated coproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nesting {
    /// `(Δ ⊗ id ⊗ …) ∘ … ∘ Δ`.
    Left,
    /// `(… ⊗ id ⊗ Δ) ∘ … ∘ Δ`.
    Right,
}

/// `V^{s_{c(1)}} ⊗ … ⊗ V^{s_{c(n)}}`.
#[derive(Clone, Debug)]
pub struct VermaTensor {
    vars: Arc<VariableSet>,
    colors: Colors,
}

impl VermaTensor {
    pub fn new(vars: &Arc<VariableSet>, colors: Colors) -> Self {
        Self {
            vars: vars.clone(),
            colors,
        }
    }

    /// Distinct colors `s1, …, sn` over [`VariableSet::colored`].
    pub fn colored(n: usize) -> Self {
        let vars = VariableSet::colored(n);
        let colors = Colors::distinct(&vars, n).unwrap();
        Self::new(&vars, colors)
    }

    /// All factors colored `s` over [`VariableSet::unicolor`].
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

    fn single(&self, op: Op, position: usize, j: u32) -> Option<(u32, LaurentPoly)> {
        let s = self.colors.var(position);
        let vars = &self.vars;
        match op {
            Op::KPow(p) => {
                let c = &LaurentPoly::var_pow(vars, s, p) * &qpow(vars, -2 * p as i64 * j as i64);
                Some((j, c))
            }
            Op::E => (j > 0).then(|| (j - 1, LaurentPoly::one(vars))),
            Op::F(m) => Some((j + m, divided_power_coefficient(vars, s, m, j))),
        }
    }

    /// Action on the factors `range` of a basis vector.
    fn act_range(&self, op: Op, index: &[u32], start: usize, nesting: Nesting) -> Terms {
        let len = index.len();
        if len == 1 {
            return self
                .single(op, start, index[0])
                .map(|(j, c)| vec![(vec![j], c)])
                .unwrap_or_default();
        }
        if let Op::KPow(_) = op {
            let mut c = LaurentPoly::one(&self.vars);
            let mut out = Vec::with_capacity(len);
            for (p, &j) in index.iter().enumerate() {
                let (j, x) = self.single(op, start + p, j).unwrap();
                c = &c * &x;
                out.push(j);
            }
            return vec![(out, c)];
        }
        // Δ(x) = Σ x' ⊗ x''; `parts` lists (x', x'' as ops applied right to left, scalar).
        let one = LaurentPoly::one(&self.vars);
        let parts: Vec<(Op, Vec<Op>, LaurentPoly)> = match op {
            Op::E => vec![
                (Op::E, vec![], one.clone()),
                (Op::KPow(1), vec![Op::E], one.clone()),
            ],
            Op::F(m) => (0..=m)
                .map(|j| {
                    let (j, m) = (j as i64, m as i64);
                    let rhs = vec![Op::F(j as u32), Op::KPow((j - m) as i32)];
                    (Op::F((m - j) as u32), rhs, qpow(&self.vars, -j * (m - j)))
                })
                .collect(),
            Op::KPow(_) => unreachable!(),
        };
        let split = match nesting {
            Nesting::Left => len - 1,
            Nesting::Right => 1,
        };
        let (head, tail) = index.split_at(split);
        let mut out: BTreeMap<Vec<u32>, LaurentPoly> = BTreeMap::new();
        for (xl, xr, scalar) in parts {
            // x' acts on the head, x'' on the tail; the multi-factor side recurses.
            let lhs = self.act_chain(&[xl], head, start, nesting);
            let rhs = self.act_chain(&xr, tail, start + split, nesting);
            for (a, ca) in &lhs {
                for (b, cb) in &rhs {
                    let mut idx = a.clone();
                    idx.extend_from_slice(b);
                    let c = &(ca * cb) * &scalar;
                    let e = out.entry(idx).or_insert_with(|| LaurentPoly::zero(&self.vars));
                    *e += &c;
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Applies `ops[0]`, then `ops[1]`, … on the given factors.
    fn act_chain(&self, ops: &[Op], index: &[u32], start: usize, nesting: Nesting) -> Terms {
        let mut current: Terms = vec![(index.to_vec(), LaurentPoly::one(&self.vars))];
        for &op in ops {
            if let Op::F(0) | Op::KPow(0) = op {
                continue;
            }
            let mut next: BTreeMap<Vec<u32>, LaurentPoly> = BTreeMap::new();
            for (idx, c) in &current {
                for (j, x) in self.act_range(op, idx, start, nesting) {
                    let e = next.entry(j).or_insert_with(|| LaurentPoly::zero(&self.vars));
                    *e += &(c * &x);
                }
            }
            current = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        current
    }

    /// Image of one basis vector under the iterated coproduct of `g`.
    pub fn act_basis(&self, g: Generator, index: &[u32], nesting: Nesting) -> QVector {
        let mut v = QVector::zero(&self.vars, self.n());
        for (idx, c) in self.act_chain(&[g.into()], index, 0, nesting) {
            v.add_term(idx, c);
        }
        v
    }

    /// Left-nested coproduct action.
    pub fn act(&self, g: Generator, v: &QVector) -> Result<QVector> {
        self.act_nested(g, v, Nesting::Left)
    }

    pub fn act_nested(&self, g: Generator, v: &QVector, nesting: Nesting) -> Result<QVector> {
        check_vars(&self.vars, v.vars())?;
        if v.n() != self.n() {
            return Err(Error::Dimension(format!("{}-factor vector on {} factors", v.n(), self.n())));
        }
        let mut out = QVector::zero(&self.vars, self.n());
        for (idx, c) in v.terms() {
            for (j, x) in self.act_basis(g, idx, nesting).terms() {
                out.add_term(j.clone(), c * x);
            }
        }
        Ok(out)
    }

    /// Matrix of `g` from `W_{n,r}` to `W_{n,r+shift}` in the tensor basis.
    pub fn generator_matrix(&self, g: Generator, r: u32) -> Result<OperatorMatrix> {
        let target_r = r as i64 + g.shift();
        if target_r < 0 {
            return Err(Error::Dimension(format!("{g} lowers subweight {r} below zero")));
        }
        let target_r = target_r as u32;
        let n = self.n();
        let rows = compositions(n, target_r);
        let columns: Vec<Vec<LaurentPoly>> = compositions(n, r)
            .par_iter()
            .map(|idx| self.act_basis(g, idx, Nesting::Left).to_column(target_r))
            .collect();
        Ok(OperatorMatrix {
            n,
            r_source: r,
            r_target: target_r,
            basis_source: Basis::Verma,
            basis_target: Basis::Verma,
            colors_source: self.colors.clone(),
            colors_target: self.colors.clone(),
            matrix: PolyMatrix::from_columns(&self.vars, rows.len(), columns)?,
            denominator: LaurentPoly::one(&self.vars),
        })
    }

    /// A basis of `Ker E ∩ W_{n,r}` over the fraction field, as primitive
    /// integral vectors.
    pub fn highest_weight_basis(&self, r: u32) -> Result<Vec<QVector>> {
        let n = self.n();
        if r == 0 {
            return Ok(vec![QVector::basis_vector(&self.vars, vec![0; n])]);
        }
        let e = self.generator_matrix(Generator::E, r)?;
        Ok(e.matrix
            .kernel()?
            .into_iter()
            .map(|col| QVector::from_column(&self.vars, n, r, &col))
            .collect())
    }

    /// Rank of `E : W_{n,r} → W_{n,r-1}` over the fraction field.
    pub fn e_rank(&self, r: u32) -> Result<usize> {
        if r == 0 {
            return Ok(0);
        }
        self.generator_matrix(Generator::E, r)?.matrix.rank()
    }

    pub fn dimension(&self, r: u32) -> usize {
        compositions::count(self.n(), r) as usize
    }
}

/// `K v_j` on a single factor of color `s`.
pub fn verma_k(vars: &Arc<VariableSet>, s: usize, v: &QVector) -> Result<QVector> {
    single_factor(vars, s, Generator::K, v)
}

/// `E v_j` on a single factor.
pub fn verma_e(vars: &Arc<VariableSet>, s: usize, v: &QVector) -> Result<QVector> {
    single_factor(vars, s, Generator::E, v)
}

/// `F^(m) v_j` on a single factor of color `s`.
pub fn verma_fdiv(vars: &Arc<VariableSet>, s: usize, m: u32, v: &QVector) -> Result<QVector> {
    single_factor(vars, s, Generator::F(m), v)
}

fn single_factor(vars: &Arc<VariableSet>, s: usize, g: Generator, v: &QVector) -> Result<QVector> {
    if v.n() != 1 {
        return Err(Error::Dimension("single-factor action on a tensor".into()));
    }
    VermaTensor::new(vars, Colors::from_indices(vec![s])).act(g, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(vars: &Arc<VariableSet>, s: &str) -> LaurentPoly {
        LaurentPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn single_factor_actions() {
        let vars = VariableSet::colored(1);
        let s = vars.require("s1").unwrap();
        let v2 = QVector::basis_vector(&vars, vec![2]);
        let kv = verma_k(&vars, s, &v2).unwrap();
        assert_eq!(kv.coefficient(&[2]), p(&vars, "q^-4*s1"));
        let v0 = QVector::basis_vector(&vars, vec![0]);
        assert!(verma_e(&vars, s, &v0).unwrap().is_zero());
        let fv = verma_fdiv(&vars, s, 1, &v0).unwrap();
        assert_eq!(fv.coefficient(&[1]), p(&vars, "s1 - s1^-1"));
    }

    #[test]
    fn tensor_examples() {
        let t = VermaTensor::colored(2);
        let vars = t.vars().clone();
        let kv = t.act_basis(Generator::K, &[0, 1], Nesting::Left);
        assert_eq!(kv.coefficient(&[0, 1]), p(&vars, "q^-2*s1*s2"));
        assert!(t.act_basis(Generator::E, &[0, 0], Nesting::Left).is_zero());
        let fv = t.act_basis(Generator::F(1), &[0, 0], Nesting::Left);
        assert_eq!(fv.coefficient(&[0, 1]), p(&vars, "s2 - s2^-1"));
        assert_eq!(fv.coefficient(&[1, 0]), p(&vars, "s1*s2^-1 - s1^-1*s2^-1"));
    }

    #[test]
    fn divided_powers_are_normalized_powers() {
        // (F^(1))^m = [m]_q! F^(m) on every factor count.
        let t = VermaTensor::colored(2);
        for idx in weight_basis(2, 2) {
            let v = QVector::basis_vector(t.vars(), idx.clone());
            let mut w = v.clone();
            for _ in 0..3 {
                w = t.act(Generator::F(1), &w).unwrap();
            }
            let f3 = t.act(Generator::F(3), &v).unwrap();
            let fact = qnum::q_factorial(t.vars(), 3).unwrap();
            assert_eq!(w, f3.scale(&fact), "at {idx:?}");
        }
    }

    #[test]
    fn coassociative_on_three_factors() {
        let t = VermaTensor::colored(3);
        for g in [Generator::E, Generator::F(1), Generator::F(2), Generator::K] {
            for idx in weight_basis(3, 2) {
                assert_eq!(
                    t.act_basis(g, &idx, Nesting::Left),
                    t.act_basis(g, &idx, Nesting::Right),
                    "{g} at {idx:?}"
                );
            }
        }
    }

    #[test]
    fn highest_weight_vectors() {
        let t = VermaTensor::colored(2);
        let y = t.highest_weight_basis(1).unwrap();
        assert_eq!(y.len(), 1);
        assert!(t.act(Generator::E, &y[0]).unwrap().is_zero());
        assert_eq!(t.highest_weight_basis(2).unwrap().len(), 1);
        assert!(VermaTensor::colored(1).highest_weight_basis(3).unwrap().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let t = VermaTensor::colored(2);
        let v = t.act_basis(Generator::F(2), &[1, 0], Nesting::Left);
        let s = serde_json::to_string(&v).unwrap();
        let back: QVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}

//! Braid group actions on weight spaces.
//!
//! The generator `σ_i` acts on tensor positions `i-1, i` (0-based) by the
//! normalized braiding `𝐑 = q^{-αα'/2} q^{H⊗H/2} Σ_m q^{m(m-1)/2} E^m ⊗ F^(m) ∘ T`
//! (`T` the flip). On a pair with input colors `(a, b)`:
//!
//! `𝐑(v_{k'} ⊗ v_k) = Σ_{l=0}^{k} q^{l(l-1)/2} [F^(l) v_{k'}]_a q^{2ij} s_a^{-i} s_b^{-j} v_i ⊗ v_j`
//! with `i = k - l`, `j = k' + l`; output colors are `(b, a)`.
//!
//! The homological counterpart, in the normalized multi-arc basis:
//!
//! `A(k', k) ↦ Σ_l tt^{-(k'+l)(k-l)} s_a^{-k+2l} s_b^{-(k'+l)} binom_tt(k'+l, l)
//!  ∏_{m=k'}^{k'+l-1} (1 - s_a^{-2} tt^{-m}) A(k-l, k'+l)`.
//!
//! Word matrices act on column vectors: the last letter is applied first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::compositions::{self, compositions};
use crate::error::{Error, Result};
use crate::homology::{untens, HomologyModule};
use crate::linalg::PolyMatrix;
use crate::operator::{Basis, Colors, OperatorMatrix};
use crate::qnum;
use crate::ring::{LaurentPoly, RingHom, VariableSet};
use crate::verma::{divided_power_coefficient, Generator, VermaTensor};

/// A word in the Artin generators `σ_i^{±1}`, `1 ≤ i ≤ n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<(usize, bool)>,
}

impl BraidWord {
    /// `letters` are `(i, positive)`.
    pub fn new(n: usize, letters: Vec<(usize, bool)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBraid("need at least one strand".into()));
        }
        if let Some(&(i, _)) = letters.iter().find(|(i, _)| *i == 0 || *i >= n) {
            return Err(Error::InvalidBraid(format!("generator s{i} on {n} strands")));
        }
        Ok(Self { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, letters: vec![] }
    }

    /// Whitespace-separated `s<i>` / `s<i>^-1` tokens.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let bad = || Error::Parse(format!("bad braid letter `{token}`"));
            let body = token.strip_prefix('s').ok_or_else(bad)?;
            let (num, positive) = match body.split_once('^') {
                None => (body, true),
                Some((num, "-1")) => (num, false),
                Some((num, "1")) => (num, true),
                Some(_) => return Err(bad()),
            };
            let i: usize = num.parse().map_err(|_| bad())?;
            letters.push((i, positive));
        }
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `perm[p]` is the source position of the strand ending at position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        for &(i, _) in self.letters.iter().rev() {
            perm.swap(i - 1, i);
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(p, &q)| p == q)
    }

    /// Colors at the end of the braid, starting from `colors`.
    pub fn target_colors(&self, colors: &Colors) -> Colors {
        let perm = self.permutation();
        Colors::from_indices(perm.iter().map(|&p| colors.var(p)).collect())
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, !s)).collect(),
        }
    }

    /// Concatenation: `self` after `other` as operators, i.e. the word
    /// `self · other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidBraid("different strand counts".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { n: self.n, letters })
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize, len: usize) -> Self {
        assert!(n >= 2, "random words need two strands");
        let letters = (0..len).map(|_| (rng.gen_range(1..n), rng.gen_bool(0.5))).collect();
        Self { n, letters }
    }

    /// The pure generator `A_ij = (s_{j-1} .. s_{i+1}) s_i^2 (s_{j-1} .. s_{i+1})^-1`
    /// for `1 <= i < j <= n`, or its inverse.
    pub fn pure_generator(n: usize, i: usize, j: usize, positive: bool) -> Self {
        assert!(1 <= i && i < j && j <= n, "need 1 <= i < j <= n");
        let conj: Vec<(usize, bool)> = (i + 1..j).rev().map(|k| (k, true)).collect();
        let mut letters = conj.clone();
        letters.push((i, positive));
        letters.push((i, positive));
        letters.extend(conj.iter().rev().map(|&(k, _)| (k, false)));
        Self { n, letters }
    }

    /// A product of between one and `max_factors` random pure generators `A_ij^{±1}`.
    pub fn random_pure<R: Rng>(rng: &mut R, n: usize, max_factors: usize) -> Self {
        assert!(n >= 2, "random words need two strands");
        let count = rng.gen_range(1..=max_factors.max(1));
        let mut w = Self::identity(n);
        for _ in 0..count {
            let i = rng.gen_range(1..n);
            let j = rng.gen_range(i + 1..=n);
            w.letters.extend(Self::pure_generator(n, i, j, rng.gen_bool(0.5)).letters);
        }
        w
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, s)| if s { format!("s{i}") } else { format!("s{i}^-1") })
            .collect();
        f.write_str(&tokens.join(" "))
    }
}

/// Which model the pair blocks come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Tensor products of Verma modules, coefficients in `q`, `s_i`.
    Quantum,
    /// Normalized multi-arcs, coefficients in `q`, `tt`, `s_i`.
    Homological,
}

/// Image of `v_{k'} ⊗ v_k` (resp. `A(k', k)`) for input colors `(a, b)`.
pub fn pair_column(
    side: Side,
    vars: &Arc<VariableSet>,
    a: usize,
    b: usize,
    k1: u32,
    k: u32,
) -> Vec<((u32, u32), LaurentPoly)> {
    let mono = |var: usize, e: i64| LaurentPoly::var_pow(vars, var, e as i32);
    let (q, tt) = (vars.q(), vars.tt());
    let one = LaurentPoly::one(vars);
    let mut out = Vec::new();
    for l in 0..=k {
        let (i, j) = (k - l, k1 + l);
        let (li, lj, ll, lk1, lk) = (i as i64, j as i64, l as i64, k1 as i64, k as i64);
        let c = match side {
            Side::Quantum => {
                let mut c = mono(q, ll * (ll - 1) / 2 + 2 * li * lj);
                c = &c * &divided_power_coefficient(vars, a, l, k1);
                &(&c * &mono(a, -li)) * &mono(b, -lj)
            }
            Side::Homological => {
                let mut c = mono(tt, -lj * li);
                c = &c * &mono(a, -lk + 2 * ll);
                c = &c * &mono(b, -lj);
                c = &c * &qnum::t_binomial(vars, lk1 + ll, ll).unwrap();
                for m in lk1..lk1 + ll {
                    c = &c * &(&one - &(&mono(a, -2) * &mono(tt, -m)));
                }
                c
            }
        };
        if !c.is_zero() {
            out.push(((i, j), c));
        }
    }
    out
}

/// Matrix of the braiding on the subweight-`p` block of a pair, basis
/// `(x, p - x)` for `x = 0..=p`.
pub fn pair_block(side: Side, vars: &Arc<VariableSet>, a: usize, b: usize, p: u32) -> PolyMatrix {
    let dim = p as usize + 1;
    let mut m = PolyMatrix::zeros(vars, dim, dim);
    for x in 0..=p {
        for ((i, _), c) in pair_column(side, vars, a, b, x, p - x) {
            m.set(i as usize, x as usize, c);
        }
    }
    m
}

/// `(matrix, denominator)` of the inverse braiding on a block: it undoes
/// [`pair_block`] for input colors `(b, a)`, so it maps colors `(a, b)` to
/// `(b, a)`.
pub fn pair_block_inverse(side: Side, vars: &Arc<VariableSet>, a: usize, b: usize, p: u32) -> Result<(PolyMatrix, LaurentPoly)> {
    pair_block(side, vars, b, a, p).inverse()
}

/// Matrix of the quantum braiding on the subweight-`r` part of a pair.
pub fn rmatrix_pair(vars: &Arc<VariableSet>, a: usize, b: usize, r: u32) -> OperatorMatrix {
    pair_operator(Side::Quantum, a, b, r, pair_block(Side::Quantum, vars, a, b, r), LaurentPoly::one(vars))
}

pub fn rmatrix_inverse_pair(vars: &Arc<VariableSet>, a: usize, b: usize, r: u32) -> Result<OperatorMatrix> {
    let (m, d) = pair_block_inverse(Side::Quantum, vars, a, b, r)?;
    Ok(pair_operator(Side::Quantum, a, b, r, m, d))
}

/// Homological braiding of a pair of punctures in the `A` basis.
pub fn homological_pair(vars: &Arc<VariableSet>, a: usize, b: usize, r: u32) -> OperatorMatrix {
    pair_operator(Side::Homological, a, b, r, pair_block(Side::Homological, vars, a, b, r), LaurentPoly::one(vars))
}

fn pair_operator(side: Side, a: usize, b: usize, r: u32, matrix: PolyMatrix, denominator: LaurentPoly) -> OperatorMatrix {
    let basis = match side {
        Side::Quantum => Basis::Verma,
        Side::Homological => Basis::A,
    };
    OperatorMatrix {
        n: 2,
        r_source: r,
        r_target: r,
        basis_source: basis,
        basis_target: basis,
        colors_source: Colors::from_indices(vec![a, b]),
        colors_target: Colors::from_indices(vec![b, a]),
        matrix,
        denominator,
    }
}

/// Computes generator matrices on `W_{n,r}`, caching pair blocks.
struct GeneratorCache {
    side: Side,
    vars: Arc<VariableSet>,
    blocks: HashMap<(usize, usize, u32, bool), (PolyMatrix, LaurentPoly)>,
}

impl GeneratorCache {
    fn new(side: Side, vars: &Arc<VariableSet>) -> Self {
        Self {
            side,
            vars: vars.clone(),
            blocks: HashMap::new(),
        }
    }

    fn block(&mut self, a: usize, b: usize, p: u32, positive: bool) -> Result<&(PolyMatrix, LaurentPoly)> {
        let key = (a, b, p, positive);
        if !self.blocks.contains_key(&key) {
            let value = if positive {
                (pair_block(self.side, &self.vars, a, b, p), LaurentPoly::one(&self.vars))
            } else {
                pair_block_inverse(self.side, &self.vars, a, b, p)?
            };
            self.blocks.insert(key, value);
        }
        Ok(&self.blocks[&key])
    }

    /// `(matrix, denominator)` of `σ_i^{±1}` on `W_{n,r}` with current colors.
    fn generator(&mut self, colors: &Colors, r: u32, i: usize, positive: bool) -> Result<(PolyMatrix, LaurentPoly)> {
        let n = colors.len();
        let (a, b) = (colors.var(i - 1), colors.var(i));
        let basis = compositions(n, r);
        // Blocks may carry different denominators; bring them to a common one.
        let mut dens: Vec<LaurentPoly> = Vec::new();
        for p in 0..=r {
            let d = &self.block(a, b, p, positive)?.1;
            if !d.is_one() && !dens.contains(d) {
                dens.push(d.clone());
            }
        }
        let common = dens.iter().fold(LaurentPoly::one(&self.vars), |acc, d| &acc * d);
        let mut m = PolyMatrix::zeros(&self.vars, basis.len(), basis.len());
        for (col, k) in basis.iter().enumerate() {
            let (x, y) = (k[i - 1], k[i]);
            let p = x + y;
            let (block, d) = self.block(a, b, p, positive)?.clone();
            let scale = common.exact_div(&d)?;
            for out_x in 0..=p {
                let c = block.get(out_x as usize, x as usize);
                if c.is_zero() {
                    continue;
                }
                let mut idx = k.clone();
                idx[i - 1] = out_x;
                idx[i] = p - out_x;
                let row = compositions::position(&basis, &idx).unwrap();
                m.set(row, col, c * &scale);
            }
        }
        Ok((m, common))
    }
}

fn word_matrix(side: Side, vars: &Arc<VariableSet>, word: &BraidWord, r: u32, colors: &Colors) -> Result<(PolyMatrix, LaurentPoly, Colors)> {
    if colors.len() != word.n() {
        return Err(Error::Dimension(format!("{} colors for {} strands", colors.len(), word.n())));
    }
    let dim = compositions::count(word.n(), r) as usize;
    let mut cache = GeneratorCache::new(side, vars);
    let mut m = PolyMatrix::identity(vars, dim);
    let mut den = LaurentPoly::one(vars);
    let mut current = colors.clone();
    for &(i, positive) in word.letters().iter().rev() {
        let (g, d) = cache.generator(&current, r, i, positive)?;
        m = g.try_mul(&m)?;
        if !d.is_one() {
            den = &den * &d;
        }
        current = current.swapped(i);
    }
    Ok((m, den, current))
}

/// Matrix of `word` on the degree-`r` weight space in `basis`
/// (`Verma`, `A`, `Aprime` or `U`), starting from `colors`.
pub fn braid_matrix(vars: &Arc<VariableSet>, word: &BraidWord, r: u32, basis: Basis, colors: &Colors) -> Result<OperatorMatrix> {
    let side = match basis {
        Basis::Verma => Side::Quantum,
        Basis::A | Basis::Aprime | Basis::U => Side::Homological,
        Basis::Fork | Basis::Loop => {
            return Err(Error::WrongBasis {
                expected: "verma, A, Aprime or U".into(),
                found: basis.to_string(),
            })
        }
    };
    let (m, den, target) = word_matrix(side, vars, word, r, colors)?;
    let mut op = OperatorMatrix {
        n: word.n(),
        r_source: r,
        r_target: r,
        basis_source: if side == Side::Quantum { Basis::Verma } else { Basis::A },
        basis_target: if side == Side::Quantum { Basis::Verma } else { Basis::A },
        colors_source: colors.clone(),
        colors_target: target.clone(),
        matrix: m,
        denominator: den,
    };
    if matches!(basis, Basis::Aprime | Basis::U) {
        let src = HomologyModule::new(vars, colors.clone());
        let tgt = HomologyModule::new(vars, target);
        let into = tgt.to_codes(Basis::A, r)?;
        let from = src.to_codes(Basis::A, r)?;
        // from.matrix = P·N is invertible with unit determinant.
        let (inv, d) = from.matrix.inverse()?;
        if !d.is_one() {
            return Err(Error::Singular);
        }
        let mut m = into.matrix.try_mul(&op.matrix)?.try_mul(&inv)?;
        if basis == Basis::Aprime {
            let p = tgt.arcs_to_codes_matrix(r).matrix.inverse()?.0;
            let q = src.arcs_to_codes_matrix(r).matrix;
            m = p.try_mul(&m)?.try_mul(&q)?;
        }
        op.matrix = m;
        op.basis_source = basis;
        op.basis_target = basis;
    }
    op.reduce_denominator();
    Ok(op)
}

/// `M_{r+shift} ∘ X_source = X_target ∘ M_r` for `r ≤ r_max`, on the Verma
/// side. Returns the first failing degree, if any.
pub fn check_equivariance(tensor: &VermaTensor, word: &BraidWord, g: Generator, r_max: u32) -> Result<Option<String>> {
    let vars = tensor.vars();
    let target = VermaTensor::new(vars, word.target_colors(tensor.colors()));
    for r in 0..=r_max {
        let r2 = r as i64 + g.shift();
        if r2 < 0 {
            continue;
        }
        let r2 = r2 as u32;
        let m1 = braid_matrix(vars, word, r, Basis::Verma, tensor.colors())?;
        let m2 = braid_matrix(vars, word, r2, Basis::Verma, tensor.colors())?;
        let xs = tensor.generator_matrix(g, r)?;
        let xt = target.generator_matrix(g, r)?;
        let lhs = m2.matrix.try_mul(&xs.matrix)?.scale(&m1.denominator);
        let rhs = xt.matrix.try_mul(&m1.matrix)?.scale(&m2.denominator);
        if lhs != rhs {
            return Ok(Some(format!(
                "{g} does not commute with `{word}` on W_{{{},{r}}}",
                word.n()
            )));
        }
    }
    Ok(None)
}

/// Outcome of a Kohno stability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KohnoReport {
    pub dim_weight_space: usize,
    pub dim_kernel: usize,
    pub rank_e: usize,
    pub stable: bool,
}

/// Checks that the homological action of `word` (in the `A` basis, after
/// `tt ↦ q^-2`) maps the highest weight vectors `Ker E ∩ W_{n,r}` into the
/// span of the highest weight vectors for the target colors.
pub fn kohno_kernel_stability(tensor: &VermaTensor, r: u32, word: &BraidWord) -> Result<KohnoReport> {
    let vars = tensor.vars();
    let target = VermaTensor::new(vars, word.target_colors(tensor.colors()));
    let ys = tensor.highest_weight_basis(r)?;
    let yt = target.highest_weight_basis(r)?;
    let m = braid_matrix(vars, word, r, Basis::A, tensor.colors())?.specialize(&RingHom::bridge(vars))?;
    let dim = tensor.dimension(r);
    let columns = |ys: &[crate::verma::QVector]| -> Vec<Vec<LaurentPoly>> {
        ys.iter().map(|y| untens(y).coords.to_column(r)).collect()
    };
    let yt_mat = PolyMatrix::from_columns(vars, dim, columns(&yt))?;
    let images: Vec<Vec<LaurentPoly>> = columns(&ys)
        .into_iter()
        .map(|c| m.apply_column(&c))
        .collect::<Result<_>>()?;
    let img_mat = PolyMatrix::from_columns(vars, dim, images)?;
    let base_rank = yt_mat.rank()?;
    let stable = yt_mat.hstack(&img_mat)?.rank()? == base_rank;
    Ok(KohnoReport {
        dim_weight_space: dim,
        dim_kernel: ys.len(),
        rank_e: tensor.e_rank(r)?,
        stable,
    })
}

/// Dimension of the algebra generated by the braid generators restricted to
/// `Y_{n,r}` (unicolor, Verma side), together with `dim Y_{n,r}`. Full rank
/// means the span is all of `End(Y_{n,r})`.
pub fn irreducibility_rank(n: usize, r: u32) -> Result<(usize, usize)> {
    let tensor = VermaTensor::unicolor(n);
    let vars = tensor.vars().clone();
    let ys = tensor.highest_weight_basis(r)?;
    let d = ys.len();
    let dim = tensor.dimension(r);
    let y = PolyMatrix::from_columns(&vars, dim, ys.iter().map(|v| v.to_column(r)).collect())?;
    let gens: Vec<PolyMatrix> = (1..n)
        .map(|i| {
            let w = BraidWord::new(n, vec![(i, true)]).unwrap();
            braid_matrix(&vars, &w, r, Basis::Verma, tensor.colors()).map(|m| m.matrix)
        })
        .collect::<Result<_>>()?;
    let vectorize = |m: &PolyMatrix| -> Result<Vec<LaurentPoly>> {
        let my = m.try_mul(&y)?;
        Ok((0..my.cols()).flat_map(|j| my.column(j)).collect())
    };
    let mut span: Vec<Vec<LaurentPoly>> = vec![vectorize(&PolyMatrix::identity(&vars, dim))?];
    let mut frontier = vec![PolyMatrix::identity(&vars, dim)];
    let len = dim * d;
    while !frontier.is_empty() && span.len() < d * d {
        let mut next = Vec::new();
        for b in &frontier {
            for g in &gens {
                let c = g.try_mul(b)?;
                let v = vectorize(&c)?;
                let mut trial = span.clone();
                trial.push(v);
                if PolyMatrix::from_columns(&vars, len, trial.clone())?.rank()? > span.len() {
                    span = trial;
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    Ok((d, span.len()))
}

/// Unicolor specialization of an operator with colors `s1, …, sn`.
pub fn unicolor(m: &OperatorMatrix) -> Result<OperatorMatrix> {
    m.specialize(&RingHom::unicolor(m.vars()))
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum" => Ok(Side::Quantum),
            "homological" => Ok(Side::Homological),
            _ => Err(Error::Parse(format!("unknown side `{s}`"))),
        }
    }
}

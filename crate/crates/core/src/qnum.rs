//! Quantum integers, factorials and binomials.
//!
//! Two conventions coexist:
//! * `(i)_tt = 1 + tt + … + tt^{i-1}` and the factorials/binomials built on it,
//! * the balanced `[i]_q = q^{i-1} + q^{i-3} + … + q^{1-i}`.
//!
//! Binomials are exact quotients of factorials. Factorials are memoized per
//! entry up to [`DEFAULT_MEMO_BOUND`].

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RingHom, VariableSet};

pub const DEFAULT_MEMO_BOUND: usize = 64;

/// Write-once cache of `(k)_tt!` and `[k]_q!` for `k ≤ bound`.
pub struct FactorialTable {
    base: Arc<VariableSet>,
    t_fact: Vec<OnceLock<LaurentPoly>>,
    q_fact: Vec<OnceLock<LaurentPoly>>,
}

impl FactorialTable {
    pub fn new(bound: usize) -> Self {
        Self {
            base: VariableSet::new(["q", "tt"]).unwrap(),
            t_fact: (0..=bound).map(|_| OnceLock::new()).collect(),
            q_fact: (0..=bound).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn global() -> &'static FactorialTable {
        static TABLE: OnceLock<FactorialTable> = OnceLock::new();
        TABLE.get_or_init(|| FactorialTable::new(DEFAULT_MEMO_BOUND))
    }

    pub fn bound(&self) -> usize {
        self.t_fact.len() - 1
    }

    fn t_factorial_base(&self, k: usize) -> LaurentPoly {
        if k > self.bound() {
            return (1..=k).fold(LaurentPoly::one(&self.base), |acc, i| {
                &acc * &t_integer_raw(&self.base, i)
            });
        }
        self.t_fact[k]
            .get_or_init(|| {
                if k == 0 {
                    LaurentPoly::one(&self.base)
                } else {
                    &self.t_factorial_base(k - 1) * &t_integer_raw(&self.base, k)
                }
            })
            .clone()
    }

    fn q_factorial_base(&self, k: usize) -> LaurentPoly {
        if k > self.bound() {
            return (1..=k).fold(LaurentPoly::one(&self.base), |acc, i| {
                &acc * &q_integer_raw(&self.base, i)
            });
        }
        self.q_fact[k]
            .get_or_init(|| {
                if k == 0 {
                    LaurentPoly::one(&self.base)
                } else {
                    &self.q_factorial_base(k - 1) * &q_integer_raw(&self.base, k)
                }
            })
            .clone()
    }

    pub fn t_factorial(&self, vars: &Arc<VariableSet>, k: usize) -> LaurentPoly {
        self.t_factorial_base(k).embed(vars).expect("q and tt always exist")
    }

    pub fn q_factorial(&self, vars: &Arc<VariableSet>, k: usize) -> LaurentPoly {
        self.q_factorial_base(k).embed(vars).expect("q and tt always exist")
    }
}

fn t_integer_raw(vars: &Arc<VariableSet>, i: usize) -> LaurentPoly {
    let tt = vars.tt();
    let terms = (0..i).map(|e| {
        let mut exp = vec![0; vars.len()];
        exp[tt] = e as i32;
        (exp, 1.into())
    });
    LaurentPoly::from_terms(vars, terms).unwrap()
}

fn q_integer_raw(vars: &Arc<VariableSet>, i: usize) -> LaurentPoly {
    let q = vars.q();
    let top = i as i32 - 1;
    let terms = (0..i).map(|k| {
        let mut exp = vec![0; vars.len()];
        exp[q] = top - 2 * k as i32;
        (exp, 1.into())
    });
    LaurentPoly::from_terms(vars, terms).unwrap()
}

fn non_negative(i: i64) -> Result<usize> {
    usize::try_from(i).map_err(|_| Error::NegativeArgument(i))
}

/// `(i)_tt`, with `(0)_tt = 0`.
pub fn t_integer(vars: &Arc<VariableSet>, i: i64) -> Result<LaurentPoly> {
    Ok(t_integer_raw(vars, non_negative(i)?))
}

pub fn t_factorial(vars: &Arc<VariableSet>, k: i64) -> Result<LaurentPoly> {
    Ok(FactorialTable::global().t_factorial(vars, non_negative(k)?))
}

/// `(k)_tt! / ((k-l)_tt! (l)_tt!)`; zero outside `0 ≤ l ≤ k`.
pub fn t_binomial(vars: &Arc<VariableSet>, k: i64, l: i64) -> Result<LaurentPoly> {
    if l < 0 || k < 0 || l > k {
        return Ok(LaurentPoly::zero(vars));
    }
    let table = FactorialTable::global();
    let (k, l) = (k as usize, l as usize);
    let den = &table.t_factorial(vars, k - l) * &table.t_factorial(vars, l);
    table.t_factorial(vars, k).exact_div(&den)
}

/// `[i]_q = (q^i - q^-i)/(q - q^-1)`, with `[0]_q = 0`.
pub fn q_integer(vars: &Arc<VariableSet>, i: i64) -> Result<LaurentPoly> {
    Ok(q_integer_raw(vars, non_negative(i)?))
}

pub fn q_factorial(vars: &Arc<VariableSet>, k: i64) -> Result<LaurentPoly> {
    Ok(FactorialTable::global().q_factorial(vars, non_negative(k)?))
}

/// Gaussian binomial `[k]_q! / ([k-l]_q! [l]_q!)`; zero outside `0 ≤ l ≤ k`.
pub fn q_binomial(vars: &Arc<VariableSet>, k: i64, l: i64) -> Result<LaurentPoly> {
    if l < 0 || k < 0 || l > k {
        return Ok(LaurentPoly::zero(vars));
    }
    let table = FactorialTable::global();
    let (k, l) = (k as usize, l as usize);
    let den = &table.q_factorial(vars, k - l) * &table.q_factorial(vars, l);
    table.q_factorial(vars, k).exact_div(&den)
}

/// Checks, after `tt ↦ q^-2`:
/// `(i)_tt = q^{1-i}[i]_q`, `(k)_tt! = q^{-k(k-1)/2}[k]_q!` and
/// `binom_tt(k+l, l) = q^{-kl} qbinom(k+l, l)`.
pub fn bridge_check(vars: &Arc<VariableSet>, i: i64, k: i64, l: i64) -> bool {
    let run = || -> Result<bool> {
        let bridge = RingHom::bridge(vars);
        let q = vars.q();
        let qpow = |e: i64| LaurentPoly::var_pow(vars, q, e as i32);

        let integer_ok = i < 1
            || bridge.apply(&t_integer(vars, i)?)? == &qpow(1 - i) * &q_integer(vars, i)?;
        let factorial_ok =
            bridge.apply(&t_factorial(vars, k)?)? == &qpow(-k * (k - 1) / 2) * &q_factorial(vars, k)?;
        let binomial_ok = bridge.apply(&t_binomial(vars, k + l, l)?)?
            == &qpow(-k * l) * &q_binomial(vars, k + l, l)?;
        Ok(integer_ok && factorial_ok && binomial_ok)
    };
    run().unwrap_or(false)
}

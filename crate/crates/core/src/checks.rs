//! Verification suites. Each returns a [`Report`] naming the first
//! counterexample, with the offending polynomials written out.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::braiding::{self, BraidWord};
use crate::compositions::{self, compositions};
use crate::error::{Error, Result};
use crate::homology::HomologyModule;
use crate::linalg::PolyMatrix;
use crate::operator::{Basis, Colors};
use crate::qnum;
use crate::ring::{LaurentPoly, RingHom, VariableSet};
use crate::verma::{Generator, VermaTensor};

pub const SUITES: &[&str] = &[
    "relations",
    "hopf",
    "monoidality",
    "kohno",
    "bridge",
    "basis-change",
    "agreement",
    "equivariance",
    "irreducibility",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: usize,
    pub failure: Option<String>,
    /// Computed facts worth recording (dimensions, ranks).
    pub notes: Vec<String>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one check; keeps only the first failure.
    fn record(&mut self, failure: Option<String>) {
        self.checks += 1;
        if self.failure.is_none() {
            self.failure = failure;
        }
    }

    fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: pass ({} checks)", self.suite, self.checks)?,
            Some(msg) => write!(f, "{}: FAIL after {} checks\n  {msg}", self.suite, self.checks)?,
        }
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        Ok(())
    }
}

/// Runs a suite by name. `n` and `r_max` bound the weight spaces visited;
/// `seed` drives the random words of the randomized suites.
pub fn run(suite: &str, n: usize, r_max: u32, seed: u64) -> Result<Report> {
    if n == 0 {
        return Err(Error::Dimension("n must be at least 1".into()));
    }
    match suite {
        "relations" => braid_relations(n, r_max),
        "hopf" => hopf(n, r_max),
        "monoidality" => monoidality(n, r_max),
        "kohno" => kohno(n, r_max, 5, seed),
        "bridge" => Ok(bridge(r_max.max(8) as i64)),
        "basis-change" => basis_change(n, r_max),
        "agreement" => agreement(n, r_max),
        "equivariance" => equivariance(n, r_max, 10, 6, seed),
        "irreducibility" => irreducibility(n, r_max),
        _ => Err(Error::Parse(format!(
            "unknown suite `{suite}` (expected one of {})",
            SUITES.join(", ")
        ))),
    }
}

/// First differing entry of two equally shaped matrices.
pub fn compare(what: &str, lhs: &PolyMatrix, rhs: &PolyMatrix) -> Option<String> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Some(format!(
            "{what}: shapes {}x{} and {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        ));
    }
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Some(format!(
                    "{what}: entry ({i},{j}) is {} on the left and {} on the right",
                    lhs.get(i, j),
                    rhs.get(i, j)
                ));
            }
        }
    }
    None
}

/// The `tt`-to-`q` identities of [`qnum::bridge_check`] for every `i, k, l ≤ bound`.
pub fn bridge(bound: i64) -> Report {
    let mut rep = Report::new("bridge");
    let vars = VariableSet::colored(1);
    for i in 0..=bound {
        for k in 0..=bound {
            for l in 0..=bound {
                let ok = qnum::bridge_check(&vars, i, k, l);
                rep.record((!ok).then(|| format!("bridge identities fail at i={i}, k={k}, l={l}")));
            }
        }
    }
    rep
}

/// Triangularity, unit diagonal and determinant of the arcs-to-codes matrix,
/// and round trips through every basis.
pub fn basis_change(n: usize, r: u32) -> Result<Report> {
    let mut rep = Report::new("basis-change");
    let h = HomologyModule::colored(n);
    let m = h.arcs_to_codes_matrix(r).matrix;
    let rows = m.transpose();
    rep.record((!rows.is_upper_triangular()).then(|| format!("A'->U expansion not triangular for n={n}, r={r}")));
    rep.record(
        (!rows.diagonal().iter().all(LaurentPoly::is_one))
            .then(|| format!("A'->U diagonal not all ones for n={n}, r={r}")),
    );
    let det = m.determinant()?;
    rep.record((!det.is_one()).then(|| format!("det(A'->U) = {det} for n={n}, r={r}")));
    for k in compositions(n, r) {
        for basis in [Basis::A, Basis::Aprime, Basis::U] {
            let v = crate::homology::HVector::basis_vector(h.vars(), basis, k.clone());
            for via in [Basis::U, Basis::A, Basis::Aprime] {
                let there = h.change_basis(&v, via)?;
                let back = h.change_basis(&there, basis)?;
                rep.record((back != v).then(|| format!("{basis}{k:?} -> {via} -> {basis} is not the identity")));
            }
        }
        // Forks and loops convert down exactly and back up by exact division.
        for basis in [Basis::Fork, Basis::Loop] {
            let v = crate::homology::HVector::basis_vector(h.vars(), basis, k.clone());
            let down = h.change_basis(&v, Basis::U)?;
            let back = h.change_basis(&down, basis)?;
            rep.record((back != v).then(|| format!("{basis}{k:?} -> U -> {basis} is not the identity")));
        }
    }
    Ok(rep)
}

/// Source of generator matrices on weight spaces.
trait Model: Sync {
    fn vars(&self) -> &Arc<VariableSet>;
    fn matrix(&self, g: Generator, r: u32) -> Result<PolyMatrix>;
}

struct Homological(HomologyModule);
struct Bridged(HomologyModule, RingHom);
struct Quantum(VermaTensor);

impl Model for Homological {
    fn vars(&self) -> &Arc<VariableSet> {
        self.0.vars()
    }
    fn matrix(&self, g: Generator, r: u32) -> Result<PolyMatrix> {
        Ok(self.0.generator_matrix(g, r)?.matrix)
    }
}

impl Model for Bridged {
    fn vars(&self) -> &Arc<VariableSet> {
        self.0.vars()
    }
    fn matrix(&self, g: Generator, r: u32) -> Result<PolyMatrix> {
        self.0.generator_matrix(g, r)?.matrix.apply_hom(&self.1)
    }
}

impl Model for Quantum {
    fn vars(&self) -> &Arc<VariableSet> {
        self.0.vars()
    }
    fn matrix(&self, g: Generator, r: u32) -> Result<PolyMatrix> {
        Ok(self.0.generator_matrix(g, r)?.matrix)
    }
}

fn mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    a.try_mul(b)
}

/// `K E = c_E E K`, `K F = c_F F K` and `[E, F^(1)] = K - K^{-1}` on degree `r`.
fn basic_relations(model: &dyn Model, r: u32, k_over_e: &LaurentPoly, label: &str) -> Result<Vec<Option<String>>> {
    let mut out = Vec::new();
    let k = |r| model.matrix(Generator::K, r);
    let kinv = |r| model.matrix(Generator::Kinv, r);
    if r >= 1 {
        let e = model.matrix(Generator::E, r)?;
        let lhs = mul(&k(r - 1)?, &e)?;
        let rhs = mul(&e, &k(r)?)?.scale(k_over_e);
        out.push(compare(&format!("{label}: K E vs E K on degree {r}"), &lhs, &rhs));
    }
    let f = model.matrix(Generator::F(1), r)?;
    let lhs = mul(&k(r + 1)?, &f)?;
    let inv = k_over_e.unit_inverse()?;
    let rhs = mul(&f, &k(r)?)?.scale(&inv);
    out.push(compare(&format!("{label}: K F vs F K on degree {r}"), &lhs, &rhs));
    let ef = mul(&model.matrix(Generator::E, r + 1)?, &f)?;
    let fe = if r >= 1 {
        mul(&model.matrix(Generator::F(1), r - 1)?, &model.matrix(Generator::E, r)?)?
    } else {
        PolyMatrix::zeros(model.vars(), ef.rows(), ef.cols())
    };
    let lhs = ef.try_sub(&fe)?;
    let rhs = k(r)?.try_sub(&kinv(r)?)?;
    out.push(compare(&format!("{label}: [E, F^(1)] vs K - K^-1 on degree {r}"), &lhs, &rhs));
    Ok(out)
}

/// `F^(a) F^(b) = qbinom(a+b, a) F^(a+b)` for `a + b ≤ 4` and
/// `[E, F^(m+1)] = F^(m) (q^-m K - q^m K^-1)` for `m ≤ 3`, on degree `r`.
fn divided_relations(model: &dyn Model, r: u32, label: &str) -> Result<Vec<Option<String>>> {
    let vars = model.vars();
    let q = |e: i32| LaurentPoly::var_pow(vars, vars.q(), e);
    let mut out = Vec::new();
    for a in 1..=3u32 {
        for b in 1..=4 - a {
            let lhs = mul(&model.matrix(Generator::F(a), r + b)?, &model.matrix(Generator::F(b), r)?)?;
            let c = qnum::q_binomial(vars, (a + b) as i64, a as i64)?;
            let rhs = model.matrix(Generator::F(a + b), r)?.scale(&c);
            out.push(compare(&format!("{label}: F^({a}) F^({b}) on degree {r}"), &lhs, &rhs));
        }
    }
    for m in 0..=3u32 {
        let ef = mul(&model.matrix(Generator::E, r + m + 1)?, &model.matrix(Generator::F(m + 1), r)?)?;
        let fe = if r >= 1 {
            mul(&model.matrix(Generator::F(m + 1), r - 1)?, &model.matrix(Generator::E, r)?)?
        } else {
            PolyMatrix::zeros(vars, ef.rows(), ef.cols())
        };
        let lhs = ef.try_sub(&fe)?;
        let kk = model
            .matrix(Generator::K, r)?
            .scale(&q(-(m as i32)))
            .try_sub(&model.matrix(Generator::Kinv, r)?.scale(&q(m as i32)))?;
        let rhs = mul(&model.matrix(Generator::F(m), r)?, &kk)?;
        out.push(compare(&format!("{label}: [E, F^({})] on degree {r}", m + 1), &lhs, &rhs));
    }
    Ok(out)
}

/// Quantum-group relations on `⊕_{r ≤ r_max}` for `n` factors: generic ones
/// for the homological operators, divided-power ones after `tt ↦ q^-2`, and
/// all of them on the tensor product of Verma modules.
pub fn hopf(n: usize, r_max: u32) -> Result<Report> {
    let hom = HomologyModule::colored(n);
    let vars = hom.vars().clone();
    let tt_inv = LaurentPoly::var_pow(&vars, vars.tt(), -1);
    let q2 = LaurentPoly::var_pow(&vars, vars.q(), 2);
    let bridged = Bridged(hom.clone(), RingHom::bridge(&vars));
    let homological = Homological(hom);
    let quantum = Quantum(VermaTensor::colored(n));
    let results: Vec<Vec<Option<String>>> = (0..=r_max)
        .into_par_iter()
        .map(|r| -> Result<Vec<Option<String>>> {
            let label = |side: &str| format!("{side} n={n}");
            let mut out = basic_relations(&homological, r, &tt_inv, &label("homological"))?;
            out.extend(divided_relations(&bridged, r, &label("homological (tt=q^-2)"))?);
            out.extend(basic_relations(&quantum, r, &q2, &label("verma"))?);
            out.extend(divided_relations(&quantum, r, &label("verma"))?);
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut rep = Report::new("hopf");
    for f in results.into_iter().flatten() {
        rep.record(f);
    }
    Ok(rep)
}

/// `tens` intertwines `E, F^(1), F^(2), K, K^-1` with the coproduct action,
/// after `tt ↦ q^-2`.
pub fn monoidality(n: usize, r_max: u32) -> Result<Report> {
    let hom = HomologyModule::colored(n);
    let bridged = Bridged(hom.clone(), RingHom::bridge(hom.vars()));
    let quantum = Quantum(VermaTensor::colored(n));
    let gens = [Generator::E, Generator::F(1), Generator::F(2), Generator::K, Generator::Kinv];
    let mut rep = Report::new("monoidality");
    for r in 0..=r_max {
        for g in gens {
            if r == 0 && g == Generator::E {
                continue;
            }
            let lhs = bridged.matrix(g, r)?;
            let rhs = quantum.matrix(g, r)?;
            rep.record(compare(&format!("{g} on W_{{{n},{r}}}: homological vs verma"), &lhs, &rhs));
        }
    }
    Ok(rep)
}

/// Braid relations, colored and unicolor, in the Verma and `A` bases.
pub fn braid_relations(n: usize, r_max: u32) -> Result<Report> {
    let mut rep = Report::new("relations");
    let mut cases: Vec<(String, String)> = Vec::new();
    for i in 1..n {
        cases.push((format!("s{i} s{i}^-1"), String::new()));
        cases.push((format!("s{i}^-1 s{i}"), String::new()));
        if i + 1 < n {
            let j = i + 1;
            cases.push((format!("s{i} s{j} s{i}"), format!("s{j} s{i} s{j}")));
            cases.push((format!("s{i}^-1 s{j} s{i}"), format!("s{j} s{i} s{j}^-1")));
        }
        for j in i + 2..n {
            cases.push((format!("s{i} s{j}"), format!("s{j} s{i}")));
        }
    }
    let settings: Vec<(Arc<VariableSet>, Colors, &str)> = {
        let c = VariableSet::colored(n);
        let u = VariableSet::unicolor();
        vec![
            (c.clone(), Colors::distinct(&c, n)?, "colored"),
            (u.clone(), Colors::uniform(&u, n)?, "unicolor"),
        ]
    };
    let mut jobs = Vec::new();
    for (vars, colors, label) in &settings {
        for basis in [Basis::Verma, Basis::A] {
            for r in 0..=r_max {
                for (l, rr) in &cases {
                    jobs.push((vars, colors, *label, basis, r, l.clone(), rr.clone()));
                }
            }
        }
    }
    let results: Vec<Option<String>> = jobs
        .par_iter()
        .map(|(vars, colors, label, basis, r, l, rr)| -> Result<Option<String>> {
            let wl = BraidWord::parse(n, l)?;
            let wr = BraidWord::parse(n, rr)?;
            let ml = braiding::braid_matrix(vars, &wl, *r, *basis, colors)?;
            let mr = braiding::braid_matrix(vars, &wr, *r, *basis, colors)?;
            let what = format!("`{l}` vs `{}` ({label}, {basis}, n={n}, r={r})", if rr.is_empty() { "1" } else { rr });
            if ml.colors_target != mr.colors_target {
                return Ok(Some(format!("{what}: color permutations differ")));
            }
            let lhs = ml.matrix.scale(&mr.denominator);
            let rhs = mr.matrix.scale(&ml.denominator);
            Ok(compare(&what, &lhs, &rhs))
        })
        .collect::<Result<_>>()?;
    for f in results {
        rep.record(f);
    }
    Ok(rep)
}

/// `untens ∘ Q(σ_i^{±1}) ∘ tens = R^hom(σ_i^{±1})` after `tt ↦ q^-2`.
pub fn agreement(n: usize, r_max: u32) -> Result<Report> {
    let vars = VariableSet::colored(n);
    let colors = Colors::distinct(&vars, n)?;
    let bridge = RingHom::bridge(&vars);
    let mut rep = Report::new("agreement");
    for r in 0..=r_max {
        for i in 1..n {
            for positive in [true, false] {
                let w = BraidWord::new(n, vec![(i, positive)])?;
                let q = braiding::braid_matrix(&vars, &w, r, Basis::Verma, &colors)?;
                let h = braiding::braid_matrix(&vars, &w, r, Basis::A, &colors)?;
                let hb = h.matrix.apply_hom(&bridge)?.scale(&q.denominator);
                let qm = q.matrix.scale(&bridge.apply(&h.denominator)?);
                rep.record(compare(&format!("`{w}` on W_{{{n},{r}}}: verma vs homological"), &qm, &hb));
            }
        }
    }
    Ok(rep)
}

/// Commutation of random pure braids with `E, F^(1), K`.
pub fn equivariance(n: usize, r_max: u32, words: usize, max_factors: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("equivariance");
    if n < 2 {
        return Ok(rep);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tensor = VermaTensor::colored(n);
    let ws: Vec<BraidWord> = (0..words).map(|_| BraidWord::random_pure(&mut rng, n, max_factors)).collect();
    let results: Vec<Option<String>> = ws
        .par_iter()
        .flat_map_iter(|w| {
            [Generator::E, Generator::F(1), Generator::K]
                .into_iter()
                .map(|g| braiding::check_equivariance(&tensor, w, g, r_max))
                .collect::<Vec<_>>()
        })
        .collect::<Result<_>>()?;
    for f in results {
        rep.record(f);
    }
    rep.notes.push(format!(
        "words: {}",
        ws.iter().map(|w| format!("`{w}`")).collect::<Vec<_>>().join(", ")
    ));
    Ok(rep)
}

/// Stability of `Ker E` under random unicolor braids, plus
/// `dim Ker E + rank E = dim W_{n,r}`.
pub fn kohno(n: usize, r: u32, words: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("kohno");
    let tensor = VermaTensor::unicolor(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ws = vec![BraidWord::identity(n)];
    if n >= 2 {
        ws.extend((0..words).map(|_| BraidWord::random(&mut rng, n, 4)));
    }
    for w in &ws {
        let k = braiding::kohno_kernel_stability(&tensor, r, w)?;
        rep.record((!k.stable).then(|| format!("Ker E on W_{{{n},{r}}} not stable under `{w}`")));
        rep.record((k.dim_kernel + k.rank_e != k.dim_weight_space).then(|| {
            format!(
                "dim Ker E ({}) + rank E ({}) != dim W_{{{n},{r}}} ({})",
                k.dim_kernel, k.rank_e, k.dim_weight_space
            )
        }));
    }
    let dim = compositions::count(n, r);
    let y = tensor.highest_weight_basis(r)?.len();
    rep.notes.push(format!("dim W_{{{n},{r}}} = {dim}, dim Y_{{{n},{r}}} = {y}"));
    Ok(rep)
}

/// Whether the braid generators span `End(Y_{n,r})`; recorded, not assumed.
pub fn irreducibility(n: usize, r: u32) -> Result<Report> {
    let mut rep = Report::new("irreducibility");
    let (d, rank) = braiding::irreducibility_rank(n, r)?;
    rep.record((rank != d * d).then(|| format!("braid algebra on Y_{{{n},{r}}} has rank {rank} < {}", d * d)));
    rep.notes.push(format!("dim Y_{{{n},{r}}} = {d}, algebra rank = {rank}"));
    Ok(rep)
}

/// Runs several suites over a range of `n`, merging into one report.
pub fn over_n(suite: &str, ns: impl IntoIterator<Item = usize>, r_max: u32, seed: u64) -> Result<Report> {
    let mut rep = Report::new(suite);
    for n in ns {
        rep.merge(run(suite, n, r_max, seed)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run("nope", 2, 1, 0).is_err());
    }

    #[test]
    fn small_suites_pass() {
        for suite in ["hopf", "monoidality", "relations", "agreement", "basis-change"] {
            let rep = run(suite, 2, 2, 1).unwrap();
            assert!(rep.passed(), "{rep}");
            assert!(rep.checks > 0, "{suite}");
        }
    }

    #[test]
    fn compare_reports_entries() {
        let vars = VariableSet::colored(1);
        let a = PolyMatrix::identity(&vars, 2);
        let b = a.scale(&LaurentPoly::parse(&vars, "q").unwrap());
        let msg = compare("id", &a, &b).unwrap();
        assert!(msg.contains("(0,0) is 1 on the left and q on the right"), "{msg}");
    }
}

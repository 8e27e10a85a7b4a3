//! Gram and Weingarten matrices over the easy categories, Haar integrals of
//! coordinate monomials, spherical integrals and truncated characters.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcount::{double_factorial, factorial, falling, stirling2};
use crate::matrix::{bareiss_det, exact_inverse, to_rational, Matrix};
use crate::partitions::{enumerate, kernel, mobius, mobius_in, Category, ColoredWord, Lattice, Modulus, Partition};
use crate::scalar::Rational;

/// Largest word length accepted by the Gram/Weingarten builders.
pub const DEFAULT_MAX_WORD_LENGTH: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSeries {
    S,
    O,
    U,
    B,
    H,
    K,
    Hs(Modulus),
}

/// An easy group (`free = false`) or its free version.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EasyGroup {
    pub series: GroupSeries,
    pub free: bool,
}

impl EasyGroup {
    pub fn classical(series: GroupSeries) -> Self {
        EasyGroup { series, free: false }
    }

    pub fn free(series: GroupSeries) -> Self {
        EasyGroup { series, free: true }
    }

    pub fn category(self) -> Category {
        use Category::*;
        match (self.series, self.free) {
            (GroupSeries::S, false) => P,
            (GroupSeries::S, true) => NC,
            (GroupSeries::O, false) => P2,
            (GroupSeries::O, true) => NC2,
            (GroupSeries::U, false) => MatchP2,
            (GroupSeries::U, true) => MatchNC2,
            (GroupSeries::B, false) => P12,
            (GroupSeries::B, true) => NC12,
            (GroupSeries::H, false) => Peven,
            (GroupSeries::H, true) => NCeven,
            (GroupSeries::K, false) => MatchPeven,
            (GroupSeries::K, true) => MatchNCeven,
            (GroupSeries::Hs(s), false) => Ps(s),
            (GroupSeries::Hs(s), true) => NCs(s),
        }
    }

    pub fn parse(name: &str, free: bool) -> Result<Self> {
        let s = name.trim().trim_end_matches('+');
        let series = match s {
            "S" => GroupSeries::S,
            "O" => GroupSeries::O,
            "U" => GroupSeries::U,
            "B" => GroupSeries::B,
            "H" => GroupSeries::H,
            "K" => GroupSeries::K,
            _ => match s.strip_prefix("Hs").or_else(|| s.strip_prefix('H')) {
                Some(rest) => {
                    let rest = rest.trim_start_matches('(').trim_end_matches(')');
                    GroupSeries::Hs(Modulus::parse(rest)?)
                }
                None => return Err(Error::InvalidParameter(format!("unknown group {name:?}"))),
            },
        };
        Ok(EasyGroup { series, free: free || name.trim().ends_with('+') })
    }
}

impl fmt::Display for EasyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.series {
            GroupSeries::Hs(s) => write!(f, "H^{s}")?,
            other => write!(f, "{other:?}")?,
        }
        if self.free {
            write!(f, "+")?;
        }
        Ok(())
    }
}

/// Integer Gram matrix `N^{|π∨ν|}` over `D(word)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gram {
    pub partitions: Vec<Partition>,
    pub entries: Vec<Vec<BigInt>>,
}

fn check_length(word: &ColoredWord) -> Result<()> {
    if word.len() > DEFAULT_MAX_WORD_LENGTH {
        return Err(Error::TooLarge { size: word.len(), cap: DEFAULT_MAX_WORD_LENGTH });
    }
    Ok(())
}

pub fn gram_over(partitions: Vec<Partition>, n: u64) -> Result<Gram> {
    let mut entries = Vec::with_capacity(partitions.len());
    for a in &partitions {
        let mut row = Vec::with_capacity(partitions.len());
        for b in &partitions {
            row.push(num_traits::pow(BigInt::from(n), a.join(b)?.block_count()));
        }
        entries.push(row);
    }
    Ok(Gram { partitions, entries })
}

pub fn gram(group: EasyGroup, word: &ColoredWord, n: u64) -> Result<Gram> {
    check_length(word)?;
    gram_over(enumerate(group.category(), word)?, n)
}

/// Exact Gram and Weingarten matrices at `(group, word, N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeingartenTable {
    pub group: EasyGroup,
    pub word: ColoredWord,
    pub n: u64,
    pub partitions: Vec<Partition>,
    pub gram: Matrix<Rational>,
    pub wg: Matrix<Rational>,
}

impl WeingartenTable {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    pub fn entry(&self, a: &Partition, b: &Partition) -> Option<&Rational> {
        Some(&self.wg[(self.index_of(a)?, self.index_of(b)?)])
    }
}

type TableKey = (EasyGroup, ColoredWord, u64);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<WeingartenTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<WeingartenTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Weingarten table, built once per `(group, word, N)` and shared.
pub fn weingarten(group: EasyGroup, word: &ColoredWord, n: u64) -> Result<Arc<WeingartenTable>> {
    let key = (group, word.clone(), n);
    if let Some(t) = table_cache().lock().expect("weingarten cache").get(&key) {
        return Ok(t.clone());
    }
    let g = gram(group, word, n)?;
    let wg = match exact_inverse(&g.entries) {
        Ok(w) => w,
        Err(Error::Singular) => return Err(Error::SingularGram { k: word.len(), n }),
        Err(e) => return Err(e),
    };
    let table = Arc::new(WeingartenTable {
        group,
        word: word.clone(),
        n,
        gram: to_rational(&g.entries),
        partitions: g.partitions,
        wg,
    });
    Ok(table_cache().lock().expect("weingarten cache").entry(key).or_insert(table).clone())
}

/// Uncolored convenience wrapper: word length `k`.
pub fn weingarten_k(group: EasyGroup, k: usize, n: u64) -> Result<Arc<WeingartenTable>> {
    weingarten(group, &ColoredWord::uncolored(k), n)
}

/// `det G_{kN}` over the full lattice `P(k)`, by fraction-free elimination.
pub fn gram_determinant(k: usize, n: u64) -> Result<BigInt> {
    let g = gram(EasyGroup::classical(GroupSeries::S), &ColoredWord::uncolored(k), n)?;
    Ok(bareiss_det(&g.entries))
}

/// `Π_{π∈P(k)} N!/(N−|π|)!`, zero when `N < k`.
pub fn gram_determinant_formula(k: usize, n: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, b| {
        let mult = stirling2(k, b);
        let e: usize = mult.try_into().expect("small exponent");
        acc * num_traits::pow(falling(n, b as u64), e)
    })
}

/// `∫_G g_{i₁j₁}^{e₁} ⋯ g_{i_kj_k}^{e_k}` with 1-based indices and colors `e`.
pub fn integrate_monomial(
    group: EasyGroup,
    n: u64,
    rows: &[usize],
    cols: &[usize],
    colors: &ColoredWord,
) -> Result<Rational> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch { left: rows.len(), right: cols.len() });
    }
    if rows.len() != colors.len() {
        return Err(Error::SizeMismatch { left: rows.len(), right: colors.len() });
    }
    if rows.iter().chain(cols).any(|&i| i == 0 || i as u64 > n) {
        return Err(Error::InvalidParameter(format!("indices must lie in 1..={n}")));
    }
    let table = weingarten(group, colors, n)?;
    let ki = kernel(rows);
    let kj = kernel(cols);
    let fits_i: Vec<bool> = table.partitions.iter().map(|p| p.leq_unchecked(&ki)).collect();
    let fits_j: Vec<bool> = table.partitions.iter().map(|p| p.leq_unchecked(&kj)).collect();
    let mut acc = Rational::zero();
    for (a, &fa) in fits_i.iter().enumerate() {
        if !fa {
            continue;
        }
        for (b, &fb) in fits_j.iter().enumerate() {
            if fb {
                acc += &table.wg[(a, b)];
            }
        }
    }
    Ok(acc)
}

/// `∫_{S_N} g_{i₁j₁}⋯g_{i_kj_k} = (N−|ker i|)!/N!` if `ker i = ker j`, else 0.
pub fn sn_integral_closed_form(n: u64, rows: &[usize], cols: &[usize]) -> Rational {
    let ki = kernel(rows);
    if ki != kernel(cols) || (ki.block_count() as u64) > n {
        return Rational::zero();
    }
    Rational::new(factorial(n - ki.block_count() as u64), factorial(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Real,
    Complex,
}

/// Sphere integrals. Real: `∫ x₁^{k₁}⋯x_N^{k_N}` equals
/// `(N−1)!!·Πk_a!! / (N+Σk_a−1)!!` when every `k_a` is even (double
/// factorials in the `m!! = (m−1)(m−3)···` convention), else 0.
/// Complex: `exponents` are the `k_a` of `|z₁|^{2k₁}⋯`, giving
/// `(N−1)!·Πk_a!/(N+Σk_a−1)!`.
pub fn sphere_integrate(field: Field, n: u64, exponents: &[u64]) -> Result<Rational> {
    if n == 0 || exponents.len() as u64 > n {
        return Err(Error::InvalidParameter("need N ≥ number of coordinates ≥ 0, N ≥ 1".into()));
    }
    let total: u64 = exponents.iter().sum();
    Ok(match field {
        Field::Real => {
            if exponents.iter().any(|k| k % 2 == 1) {
                return Ok(Rational::zero());
            }
            let num = double_factorial(n - 1) * exponents.iter().map(|&k| double_factorial(k)).product::<BigInt>();
            Rational::new(num, double_factorial(n + total - 1))
        }
        Field::Complex => {
            let num = factorial(n - 1) * exponents.iter().map(|&k| factorial(k)).product::<BigInt>();
            Rational::new(num, factorial(n + total - 1))
        }
    })
}

/// `∫ z^a z̄^b` over the complex sphere: zero unless `a = b`.
pub fn complex_sphere_monomial(n: u64, a: &[u64], b: &[u64]) -> Result<Rational> {
    if a != b {
        return Ok(Rational::zero());
    }
    sphere_integrate(Field::Complex, n, a)
}

/// `∫_G (g₁₁ + ⋯ + g_ss)^k = Tr(W_{kN} G_{ks})` with `s = ⌊tN⌋`.
pub fn truncated_character_moments(group: EasyGroup, n: u64, t: &Rational, k: usize) -> Result<Rational> {
    let s = (t * Rational::from_integer(BigInt::from(n))).floor().to_integer();
    let s: u64 = s.try_into().map_err(|_| Error::InvalidParameter("s = ⌊tN⌋ out of range".into()))?;
    if s == 0 || t > &Rational::one() {
        return Err(Error::InvalidParameter("need t in (0,1] with ⌊tN⌋ ≥ 1".into()));
    }
    truncated_character_trace(group, n, s, k)
}

/// `Tr(W_{kN} G_{ks})` for an explicit truncation `s`.
pub fn truncated_character_trace(group: EasyGroup, n: u64, s: u64, k: usize) -> Result<Rational> {
    let word = ColoredWord::uncolored(k);
    let table = weingarten(group, &word, n)?;
    let gs = gram_over(table.partitions.clone(), s)?;
    let mut acc = Rational::zero();
    let m = table.partitions.len();
    for a in 0..m {
        for b in 0..m {
            acc += &table.wg[(a, b)] * Rational::from_integer(gs.entries[b][a].clone());
        }
    }
    Ok(acc)
}

/// `Σ_b S(k,b)·s!/(s−b)!·(N−b)!/N!`, the fixed-point count form for `S_N`.
pub fn truncated_character_stirling(n: u64, s: u64, k: usize) -> Rational {
    (1..=k).fold(Rational::zero(), |acc, b| {
        let b64 = b as u64;
        if b64 > n {
            return acc;
        }
        acc + Rational::new(stirling2(k, b) * falling(s, b64), falling(n, b64))
    })
}

/// Large-N behaviour of `W_{kN}(π, ν)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeingartenAsymptotic {
    /// `|π∨ν| − |π| − |ν|`.
    pub exponent: i64,
    /// `W ≈ coefficient · N^{leading_exponent}` when known.
    pub leading_exponent: i64,
    pub coefficient: Option<BigInt>,
    pub kind: AsymptoticKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AsymptoticKind {
    /// `π ≤ ν` or `ν ≤ π`: leading term `N^{−|min|}·μ(min, max)`.
    Comparable,
    /// Classical `S_N`: `N^{−|π∧ν|}·μ(π∧ν, π)·μ(π∧ν, ν)`.
    Meet,
    /// Incomparable pair: path-count coefficient, not computed.
    PathCountNotComputed,
}

pub fn weingarten_asymptotics(
    group: EasyGroup,
    pi: &Partition,
    nu: &Partition,
    word: &ColoredWord,
) -> Result<WeingartenAsymptotic> {
    let elements = enumerate(group.category(), word)?;
    if !elements.contains(pi) || !elements.contains(nu) {
        return Err(Error::NotInLattice);
    }
    let exponent = pi.join(nu)?.block_count() as i64 - pi.block_count() as i64 - nu.block_count() as i64;
    let (lo, hi) = if pi.leq(nu)? {
        (Some(pi), nu)
    } else if nu.leq(pi)? {
        (Some(nu), pi)
    } else {
        (None, pi)
    };
    if let Some(lo) = lo {
        let mu = mobius_in(&elements, lo, hi)?;
        return Ok(WeingartenAsymptotic {
            exponent,
            leading_exponent: -(lo.block_count() as i64),
            coefficient: Some(mu),
            kind: AsymptoticKind::Comparable,
        });
    }
    if group == EasyGroup::classical(GroupSeries::S) {
        let m = pi.meet(nu)?;
        let c = mobius(&m, pi, Lattice::P)? * mobius(&m, nu, Lattice::P)?;
        return Ok(WeingartenAsymptotic {
            exponent,
            leading_exponent: -(m.block_count() as i64),
            coefficient: Some(c),
            kind: AsymptoticKind::Meet,
        });
    }
    Ok(WeingartenAsymptotic {
        exponent,
        leading_exponent: exponent,
        coefficient: None,
        kind: AsymptoticKind::PathCountNotComputed,
    })
}

/// `∫_{O_N} v₁₂^α v₂₁^β` in closed form:
/// `(N−2)!·α!!·β!!·(α+β+N−2)!! / ((α+N−2)!!·(β+N−2)!!·(α+β+N−1)!!)`
/// with `m!! = (m−1)(m−3)···`.
pub fn on_two_generic_coordinates(n: u64, alpha: u64, beta: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidParameter("need N ≥ 2".into()));
    }
    if alpha % 2 == 1 || beta % 2 == 1 {
        return Ok(Rational::zero());
    }
    let df = double_factorial;
    let num = factorial(n - 2) * df(alpha) * df(beta) * df(alpha + beta + n - 2);
    let den = df(alpha + n - 2) * df(beta + n - 2) * df(alpha + beta + n - 1);
    Ok(Rational::new(num, den))
}

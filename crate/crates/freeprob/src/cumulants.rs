//! Classical and free moment–cumulant conversion.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcount::factorial;
use crate::partitions::{enumerate, mobius, Category, ColoredWord, Lattice, Partition};
use crate::scalar::{IntPoly, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    Classical,
    Free,
}

impl Flavor {
    pub fn lattice(self) -> Lattice {
        match self {
            Flavor::Classical => Lattice::P,
            Flavor::Free => Lattice::NC,
        }
    }

    pub fn other(self) -> Flavor {
        match self {
            Flavor::Classical => Flavor::Free,
            Flavor::Free => Flavor::Classical,
        }
    }
}

/// Moments `M_1 … M_n`; `M_0 = 1` is implicit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence<T> {
    pub values: Vec<T>,
}

/// Cumulants `c_1 … c_n` of the stated flavor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CumulantSequence<T> {
    pub values: Vec<T>,
    pub flavor: Flavor,
}

impl<T: Scalar> MomentSequence<T> {
    pub fn new(values: Vec<T>) -> Self {
        MomentSequence { values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `M_j` with `M_0 = 1`.
    pub fn get(&self, j: usize) -> T {
        if j == 0 {
            T::one()
        } else {
            self.values[j - 1].clone()
        }
    }

    pub fn truncate(&self, n: usize) -> Self {
        MomentSequence { values: self.values[..n.min(self.values.len())].to_vec() }
    }

    pub fn as_f64(&self) -> MomentSequence<f64> {
        MomentSequence { values: self.values.iter().map(|v| v.as_f64()).collect() }
    }
}

impl<T: Scalar> CumulantSequence<T> {
    pub fn new(values: Vec<T>, flavor: Flavor) -> Self {
        CumulantSequence { values, flavor }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }
}

/// Block-size multiset with the number of partitions of that type.
#[derive(Clone, Debug)]
pub struct TypeCoefficient {
    pub block_sizes: Vec<usize>,
    pub count: BigInt,
}

type Table = Arc<Vec<TypeCoefficient>>;

fn table_cache() -> &'static Mutex<HashMap<(Flavor, usize), Table>> {
    static CACHE: OnceLock<Mutex<HashMap<(Flavor, usize), Table>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Partitions of `{1..n}` grouped by block type, for `P(n)` or `NC(n)`.
pub fn coefficient_table(flavor: Flavor, n: usize) -> Table {
    if let Some(t) = table_cache().lock().expect("table cache").get(&(flavor, n)) {
        return t.clone();
    }
    let table = Arc::new(build_table(flavor, n));
    table_cache().lock().expect("table cache").entry((flavor, n)).or_insert(table).clone()
}

fn build_table(flavor: Flavor, n: usize) -> Vec<TypeCoefficient> {
    let mut out = Vec::new();
    for lambda in integer_partitions(n) {
        let b = lambda.len();
        let mut mult: HashMap<usize, u64> = HashMap::new();
        for &part in &lambda {
            *mult.entry(part).or_default() += 1;
        }
        let sym: BigInt = mult.values().map(|&m| factorial(m)).product();
        let count = match flavor {
            Flavor::Classical => {
                let blocks: BigInt = lambda.iter().map(|&p| factorial(p as u64)).product();
                factorial(n as u64) / (blocks * sym)
            }
            // Kreweras: n! / ((n − b + 1)! Π m_j!)
            Flavor::Free => factorial(n as u64) / (factorial((n - b + 1) as u64) * sym),
        };
        out.push(TypeCoefficient { block_sizes: lambda, count });
    }
    out
}

/// Integer partitions of n as non-increasing part lists.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn type_product<T: Scalar>(sizes: &[usize], c: &[T]) -> T {
    sizes.iter().fold(T::one(), |acc, &s| acc * c[s - 1].clone())
}

/// `M_n = Σ_{ν ∈ L(n)} c_ν` with `c_ν` multiplicative over blocks.
pub fn moments_from_cumulants<T: Scalar>(c: &CumulantSequence<T>) -> MomentSequence<T> {
    let values = (1..=c.order())
        .map(|j| {
            coefficient_table(c.flavor, j).iter().fold(T::zero(), |acc, tc| {
                acc + T::from_bigint(&tc.count) * type_product(&tc.block_sizes, &c.values)
            })
        })
        .collect();
    MomentSequence { values }
}

/// Inverse of [`moments_from_cumulants`], solving the unitriangular system
/// order by order (Möbius inversion on the lattice).
pub fn cumulants_from_moments<T: Scalar>(m: &MomentSequence<T>, flavor: Flavor) -> CumulantSequence<T> {
    let mut c: Vec<T> = Vec::with_capacity(m.order());
    for j in 1..=m.order() {
        c.push(T::zero());
        let lower = coefficient_table(flavor, j).iter().fold(T::zero(), |acc, tc| {
            if tc.block_sizes.len() == 1 {
                acc
            } else {
                acc + T::from_bigint(&tc.count) * type_product(&tc.block_sizes, &c)
            }
        });
        c[j - 1] = m.values[j - 1].clone() - lower;
    }
    CumulantSequence { values: c, flavor }
}

/// `c_n = Σ_{π ∈ L(n)} M_π μ(π, 1_n)` evaluated literally over the lattice.
/// Exponential in n; meant for small orders and cross-checks.
pub fn cumulants_by_mobius<T: Scalar>(m: &MomentSequence<T>, flavor: Flavor) -> Result<CumulantSequence<T>> {
    let cat = match flavor {
        Flavor::Classical => Category::P,
        Flavor::Free => Category::NC,
    };
    let mut values = Vec::with_capacity(m.order());
    for n in 1..=m.order() {
        let top = Partition::one_block(n);
        let mut acc = T::zero();
        for pi in enumerate(cat, &ColoredWord::uncolored(n))? {
            let mu = mobius(&pi, &top, flavor.lattice())?;
            acc = acc + T::from_bigint(&mu) * type_product(&pi.block_sizes(), &m.values);
        }
        values.push(acc);
    }
    Ok(CumulantSequence { values, flavor })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BpDirection {
    ClassicalToFree,
    FreeToClassical,
}

/// Reads the cumulants in the source flavor as cumulants of the target flavor.
pub fn bercovici_pata<T: Scalar>(m: &MomentSequence<T>, direction: BpDirection) -> MomentSequence<T> {
    let (from, to) = match direction {
        BpDirection::ClassicalToFree => (Flavor::Classical, Flavor::Free),
        BpDirection::FreeToClassical => (Flavor::Free, Flavor::Classical),
    };
    let c = cumulants_from_moments(m, from);
    moments_from_cumulants(&CumulantSequence { values: c.values, flavor: to })
}

/// `Σ_{π ∈ D} t^{|π|}` as a polynomial in t with integer coefficients.
pub fn partition_weighted_polynomial(cat: Category, word: &ColoredWord) -> Result<IntPoly> {
    let mut coeffs = vec![BigInt::zero(); word.len() + 1];
    for p in enumerate(cat, word)? {
        coeffs[p.block_count()] += BigInt::one();
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

pub fn partition_weighted_moment(cat: Category, t: &Rational, word: &ColoredWord) -> Result<Rational> {
    Ok(partition_weighted_polynomial(cat, word)?.eval(t))
}

/// Checks that two sequences have the same order.
pub fn same_order<T>(a: &[T], b: &[T]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::OrderMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

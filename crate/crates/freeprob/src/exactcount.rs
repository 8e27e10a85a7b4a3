//! Exact special numbers: Catalan, Bell, Stirling, Fuss–Catalan/Narayana,
//! derangements, poker odds and sphere volumes.
//!
//! Double factorials come in two flavours here. [`double_factorial`] follows
//! the convention `m!! = (m−1)(m−3)(m−5)···` (positive factors only, so
//! `0!! = 1!! = 2!! = 1`, `4!! = 3`, `5!! = 8`). [`odd_double_factorial`]
//! is the pairing count `(k−1)(k−3)···1` of `k` points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{int, Rational};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// n(n−1)···(n−b+1).
pub fn falling(n: u64, b: u64) -> BigInt {
    if b > n {
        return BigInt::zero();
    }
    (n - b + 1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `m!! = (m−1)(m−3)···` down to 1 or 2.
pub fn double_factorial(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut f = m.saturating_sub(1);
    while f >= 2 {
        acc *= f;
        f -= 2;
    }
    acc
}

/// Number of pairings of `k` points: `(k−1)·(k−3)···1` for even `k`, 0 for odd.
pub fn odd_double_factorial(k: usize) -> BigInt {
    if k % 2 == 1 {
        return BigInt::zero();
    }
    double_factorial(k as u64)
}

pub fn catalan(k: usize) -> BigInt {
    binomial(2 * k as u64, k as u64) / (k + 1)
}

pub fn bell(k: usize) -> BigInt {
    // Bell triangle
    let mut row = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

pub fn stirling2(r: usize, b: usize) -> BigInt {
    let mut table = vec![vec![BigInt::zero(); b + 1]; r + 1];
    table[0][0] = BigInt::one();
    for n in 1..=r {
        for j in 1..=b.min(n) {
            table[n][j] = &table[n - 1][j - 1] + &table[n - 1][j] * j;
        }
    }
    table[r][b].clone()
}

/// `binom(sk+k, k)/(sk+1)` through the product form `(sk+2)(sk+3)···(sk+k)/k!`,
/// valid for any rational `s`.
pub fn fuss_catalan(s: &Rational, k: usize) -> Rational {
    let sk = s * int(k as i64);
    let mut acc = Rational::one();
    for j in 2..=k {
        acc *= &sk + int(j as i64);
    }
    acc / Rational::from_integer(factorial(k as u64))
}

pub fn fuss_catalan_int(s: u64, k: usize) -> BigInt {
    let k64 = k as u64;
    binomial(s * k64 + k64, k64) / (s * k64 + 1)
}

/// `Σ_{b=1}^{k} (1/b)·binom(k−1, b−1)·binom(sk, b−1)·t^b` for rational `s`,
/// with `binom(x, j)` the generalized binomial.
pub fn fuss_narayana(s: &Rational, k: usize, t: &Rational) -> Rational {
    fuss_narayana_coeffs(s, k)
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (b, c)| acc + c * num_traits::pow(t.clone(), b))
}

/// Coefficients of the Fuss–Narayana polynomial, index = power of t.
pub fn fuss_narayana_coeffs(s: &Rational, k: usize) -> Vec<Rational> {
    let sk = s * int(k as i64);
    let mut out = vec![Rational::zero(); k + 1];
    for (b, slot) in out.iter_mut().enumerate().skip(1) {
        let c = Rational::from_integer(binomial(k as u64 - 1, b as u64 - 1)) * general_binomial(&sk, b - 1)
            / int(b as i64);
        *slot = c;
    }
    out
}

pub fn general_binomial(x: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (x - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// Derangement count `D_m = m! Σ_{j≤m} (−1)^j / j!`.
pub fn derangements(m: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=m {
        let term = falling(m, m - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Probability that a uniform permutation of N points has exactly r fixed points.
pub fn derangement_profile(n: u64, r: u64) -> Rational {
    if r > n {
        return Rational::zero();
    }
    Rational::new(binomial(n, r) * derangements(n - r), factorial(n))
}

/// Returns `(c, e)` with `V/2^N = c·(π/2)^e` for the unit ball of `R^N`.
pub fn sphere_volume_ratio(n: u64) -> (Rational, u64) {
    (Rational::new(BigInt::one(), double_factorial(n + 1)), n / 2)
}

/// Volume of the unit ball of `R^N` as a float.
pub fn sphere_volume(n: u64) -> f64 {
    let (c, e) = sphere_volume_ratio(n);
    use crate::scalar::Scalar;
    c.as_f64() * (std::f64::consts::FRAC_PI_2).powi(e as i32) * 2f64.powi(n as i32)
}

pub const POKER_HANDS: [&str; 8] = [
    "one_pair",
    "two_pairs",
    "three_of_a_kind",
    "full_house",
    "straight",
    "four_of_a_kind",
    "flush",
    "straight_flush",
];

fn poker_total() -> BigInt {
    binomial(32, 5)
}

/// Hand counts on the 32-card deck by direct binomial counting.
pub fn poker_counts() -> BTreeMap<&'static str, BigInt> {
    let b = |n, k| binomial(n, k);
    let four_pow5 = BigInt::from(4u64.pow(5));
    let mut m = BTreeMap::new();
    m.insert("one_pair", 8 * b(4, 2) * b(7, 3) * BigInt::from(64));
    m.insert("two_pairs", b(8, 2) * b(4, 2) * b(4, 2) * 6 * 4);
    m.insert("three_of_a_kind", 8 * b(4, 3) * b(7, 2) * 16);
    m.insert("full_house", 8 * b(4, 3) * 7 * b(4, 2));
    m.insert("straight", 4 * (four_pow5 - 4));
    m.insert("four_of_a_kind", BigInt::from(8 * 28));
    m.insert("flush", 4 * (b(8, 5) - 4));
    m.insert("straight_flush", BigInt::from(16));
    m
}

/// Hand probabilities, highest class winning ties.
pub fn poker_probabilities() -> BTreeMap<&'static str, Rational> {
    poker_counts().into_iter().map(|(k, v)| (k, Rational::new(v, poker_total()))).collect()
}

/// Counts by classifying all `binom(32,5)` hands; includes `high_card`.
pub fn poker_enumeration() -> BTreeMap<&'static str, BigInt> {
    let mut m: BTreeMap<&'static str, BigInt> = BTreeMap::new();
    let mut hand = [0usize; 5];
    enumerate_hands(0, 0, &mut hand, &mut m);
    m
}

fn enumerate_hands(depth: usize, from: usize, hand: &mut [usize; 5], m: &mut BTreeMap<&'static str, BigInt>) {
    if depth == 5 {
        *m.entry(classify(hand)).or_insert_with(BigInt::zero) += 1;
        return;
    }
    for c in from..32 {
        hand[depth] = c;
        enumerate_hands(depth + 1, c + 1, hand, m);
    }
}

/// Card `c` has rank `c / 4` (7..A as 0..7) and suit `c % 4`.
fn classify(hand: &[usize; 5]) -> &'static str {
    let mut ranks = [0u8; 8];
    for &c in hand {
        ranks[c / 4] += 1;
    }
    let flush = hand.iter().all(|&c| c % 4 == hand[0] % 4);
    let straight = (0..4).any(|lo| (lo..lo + 5).all(|r| ranks[r] == 1));
    let mut mult: Vec<u8> = ranks.iter().copied().filter(|&x| x > 0).collect();
    mult.sort_unstable_by(|a, b| b.cmp(a));
    match (straight, flush, mult.as_slice()) {
        (true, true, _) => "straight_flush",
        (_, _, [4, ..]) => "four_of_a_kind",
        (_, _, [3, 2]) => "full_house",
        (_, true, _) => "flush",
        (true, _, _) => "straight",
        (_, _, [3, ..]) => "three_of_a_kind",
        (_, _, [2, 2, ..]) => "two_pairs",
        (_, _, [2, ..]) => "one_pair",
        _ => "high_card",
    }
}

//! Rooted bipartite graphs: loop counts, Poincaré and theta series, circular
//! measures and the ADE list.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcount::binomial;
use crate::scalar::{int, Rational};
use crate::series::FormalSeries;

/// Bipartite graph with edge multiplicities `E` over `a × b` and a root in
/// the `a`-part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct RootedBipartiteGraph {
    a: Vec<String>,
    b: Vec<String>,
    edges: Vec<Vec<u32>>,
    root: usize,
}

/// `{"parts": [[…], […]], "edges": [[…]], "root": "…"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub parts: (Vec<String>, Vec<String>),
    pub edges: Vec<Vec<u32>>,
    pub root: String,
}

impl TryFrom<GraphJson> for RootedBipartiteGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let root = j
            .parts
            .0
            .iter()
            .position(|v| *v == j.root)
            .ok_or_else(|| Error::InvalidGraph(format!("root {:?} is not in the first part", j.root)))?;
        RootedBipartiteGraph::new(j.parts.0, j.parts.1, j.edges, root)
    }
}

impl From<RootedBipartiteGraph> for GraphJson {
    fn from(g: RootedBipartiteGraph) -> Self {
        GraphJson { root: g.a[g.root].clone(), parts: (g.a, g.b), edges: g.edges }
    }
}

impl RootedBipartiteGraph {
    pub fn new(a: Vec<String>, b: Vec<String>, edges: Vec<Vec<u32>>, root: usize) -> Result<Self> {
        if root >= a.len() {
            return Err(Error::InvalidGraph("root index out of range".into()));
        }
        if edges.len() != a.len() || edges.iter().any(|r| r.len() != b.len()) {
            return Err(Error::InvalidGraph(format!("edge matrix must be {}×{}", a.len(), b.len())));
        }
        let names: BTreeSet<&String> = a.iter().chain(&b).collect();
        if names.len() != a.len() + b.len() {
            return Err(Error::InvalidGraph("vertex names must be distinct".into()));
        }
        let g = RootedBipartiteGraph { a, b, edges, root };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Builds from an undirected multigraph on `0..n`, splitting by parity of
    /// the distance to `root`.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidGraph(format!("bad edge ({u},{v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut side = vec![None; n];
        side[root] = Some(0u8);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match side[v] {
                    None => {
                        side[v] = Some(1 - side[u].unwrap());
                        queue.push_back(v);
                    }
                    Some(s) if s == side[u].unwrap() => return Err(Error::InvalidGraph("graph is not bipartite".into())),
                    _ => {}
                }
            }
        }
        if side.iter().any(|s| s.is_none()) {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        let a: Vec<usize> = (0..n).filter(|&v| side[v] == Some(0)).collect();
        let b: Vec<usize> = (0..n).filter(|&v| side[v] == Some(1)).collect();
        let mut e = vec![vec![0u32; b.len()]; a.len()];
        for &(u, v) in edges {
            let (x, y) = if side[u] == Some(0) { (u, v) } else { (v, u) };
            let i = a.iter().position(|&w| w == x).unwrap();
            let j = b.iter().position(|&w| w == y).unwrap();
            e[i][j] += 1;
        }
        let root_idx = a.iter().position(|&w| w == root).unwrap();
        let name = |v: &usize| format!("v{v}");
        RootedBipartiteGraph::new(a.iter().map(name).collect(), b.iter().map(name).collect(), e, root_idx)
    }

    fn is_connected(&self) -> bool {
        let (na, nb) = (self.a.len(), self.b.len());
        let mut seen = vec![false; na + nb];
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        while let Some(u) = queue.pop_front() {
            let nbrs: Vec<usize> = if u < na {
                (0..nb).filter(|&j| self.edges[u][j] > 0).map(|j| na + j).collect()
            } else {
                (0..na).filter(|&i| self.edges[i][u - na] > 0).collect()
            };
            for v in nbrs {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.iter().flatten().map(|&m| m as u64).sum()
    }

    pub fn parts(&self) -> (&[String], &[String]) {
        (&self.a, &self.b)
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// `L = EEᵗ` over the `a`-part.
    pub fn laplacian_square(&self) -> Vec<Vec<BigInt>> {
        let na = self.a.len();
        let mut l = vec![vec![BigInt::zero(); na]; na];
        for i in 0..na {
            for k in 0..na {
                let s: u64 = (0..self.b.len()).map(|j| self.edges[i][j] as u64 * self.edges[k][j] as u64).sum();
                l[i][k] = BigInt::from(s);
            }
        }
        l
    }

    pub fn to_json(&self) -> GraphJson {
        self.clone().into()
    }
}

impl fmt::Display for RootedBipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{} vertices, {} edges, root {}", self.a.len(), self.b.len(), self.edge_count(), self.a[self.root])
    }
}

/// Number of `2n`-loops at the root: `(Lⁿ)_{root,root}`.
pub fn loop_count(g: &RootedBipartiteGraph, n: usize) -> BigInt {
    poincare(g, n).pop().unwrap()
}

/// `c_0 … c_order` of `f(z) = Σ loop(2n) zⁿ`.
pub fn poincare(g: &RootedBipartiteGraph, order: usize) -> Vec<BigInt> {
    let l = g.laplacian_square();
    let na = l.len();
    let mut v = vec![BigInt::zero(); na];
    v[g.root] = BigInt::one();
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        out.push(v[g.root].clone());
        if n < order {
            v = (0..na).map(|i| (0..na).map(|k| &l[i][k] * &v[k]).sum()).collect();
        }
    }
    out
}

/// Coefficients of `Θ`. The sum `Σ_{n≤s} (−1)^{s−n}·(2s/(s+n))·C(s+n, s−n)·c_n`
/// expands `((1−q)/(1+q))·f(q/(1+q)²)` for `s ≥ 1`; the leading `q` of `Θ` is
/// added to `a_1`, and `a_0 = c_0`.
pub fn theta_from_poincare(c: &[BigInt], order: usize) -> Result<Vec<BigInt>> {
    if c.len() <= order {
        return Err(Error::OrderMismatch { left: c.len(), right: order + 1 });
    }
    let mut a = vec![c[0].clone()];
    for s in 1..=order as u64 {
        let mut acc = Rational::zero();
        for n in 0..=s {
            let term = Rational::new(BigInt::from(2 * s) * binomial(s + n, s - n), BigInt::from(s + n))
                * Rational::from_integer(c[n as usize].clone());
            if (s - n) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if !acc.is_integer() {
            return Err(Error::InvalidParameter(format!("non-integral theta coefficient at s={s}")));
        }
        if s == 1 {
            acc += int(1);
        }
        a.push(acc.to_integer());
    }
    Ok(a)
}

/// `Θ(q) = q + ((1−q)/(1+q))·f(q/(1+q)²)` by direct series substitution.
pub fn theta_by_substitution(c: &[BigInt], order: usize) -> Result<Vec<Rational>> {
    if c.len() <= order {
        return Err(Error::OrderMismatch { left: c.len(), right: order + 1 });
    }
    let pad = |mut v: Vec<Rational>| {
        v.resize(order + 1, Rational::zero());
        FormalSeries::in_z(v)
    };
    let f = pad(c[..=order].iter().cloned().map(Rational::from_integer).collect());
    let one_plus = pad(vec![int(1), int(1)]);
    let inner = pad(vec![int(0), int(1)]).div(&one_plus.mul(&one_plus))?;
    let outer = pad(vec![int(1), int(-1)]).div(&one_plus)?;
    let theta = outer.mul(&f.compose(&inner)?).add(&pad(vec![int(0), int(1)]));
    Ok(theta.into_coeffs())
}

/// `∫u^{2n} dε` for `n = 0 … order`, read from `1 + T(q)(1−q) = 1 + Θ(q) − q`.
pub fn circular_even_moments(g: &RootedBipartiteGraph, order: usize) -> Result<Vec<Rational>> {
    circular_moments_from_poincare(&poincare(g, order), order)
}

pub fn circular_moments_from_poincare(c: &[BigInt], order: usize) -> Result<Vec<Rational>> {
    let theta = theta_from_poincare(c, order)?;
    Ok(theta
        .into_iter()
        .enumerate()
        .map(|(n, a)| {
            let mut v = Rational::from_integer(a);
            if n == 0 {
                v += int(1);
            }
            if n == 1 {
                v -= int(1);
            }
            v / int(2)
        })
        .collect())
}

/// Recovers `c_n = ∫ (u + u⁻¹)^{2n} dε` from the even circular moments,
/// using the `u ↦ u⁻¹` symmetry of `ε`.
pub fn pushforward_moments(eps: &[Rational], order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|n| {
            (0..=2 * n).fold(Rational::zero(), |acc, j| {
                let shift = (j as i64 - n as i64).unsigned_abs() as usize;
                acc + Rational::from_integer(binomial(2 * n as u64, j as u64)) * &eps[shift]
            })
        })
        .collect()
}

/// Atoms of `ε` for `Ã_{2k}`: `K` is the cycle shift, so `ε` is uniform on
/// the `2k`-th roots of unity.
pub fn cycle_circular_atoms(k: usize) -> Vec<(num_complex::Complex64, Rational)> {
    let m = 2 * k;
    (0..m)
        .map(|j| {
            let theta = std::f64::consts::PI * j as f64 / k as f64;
            (num_complex::Complex64::from_polar(1.0, theta), Rational::new(BigInt::one(), BigInt::from(m)))
        })
        .collect()
}

/// Names of the ADE graphs and truncations of the infinite ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdeName {
    A(usize),
    D(usize),
    /// `Ã_{2k}`, parameter `k`.
    ATilde(usize),
    /// `D̃_k`.
    DTilde(usize),
    E6,
    E7,
    E8,
    E6Tilde,
    E7Tilde,
    E8Tilde,
    /// `A_∞` cut at the given depth.
    AInfinity(usize),
    DInfinity(usize),
}

impl AdeName {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let num = |r: &str| -> Result<usize> {
            r.trim_start_matches('_')
                .trim_matches(|c| c == '(' || c == ')')
                .parse()
                .map_err(|_| Error::InvalidGraph(format!("cannot parse graph name {s:?}")))
        };
        let lower = t.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "e6" => AdeName::E6,
            "e7" => AdeName::E7,
            "e8" => AdeName::E8,
            "e6~" | "e~6" | "etilde6" => AdeName::E6Tilde,
            "e7~" | "e~7" | "etilde7" => AdeName::E7Tilde,
            "e8~" | "e~8" | "etilde8" => AdeName::E8Tilde,
            _ => {
                if let Some(r) = lower.strip_prefix("ainf") {
                    AdeName::AInfinity(num(r)?)
                } else if let Some(r) = lower.strip_prefix("dinf") {
                    AdeName::DInfinity(num(r)?)
                } else if let Some(r) = lower.strip_prefix("a~").or(lower.strip_prefix("atilde")) {
                    let two_k = num(r)?;
                    if two_k % 2 == 1 {
                        return Err(Error::InvalidGraph("Ã takes an even subscript".into()));
                    }
                    AdeName::ATilde(two_k / 2)
                } else if let Some(r) = lower.strip_prefix("d~").or(lower.strip_prefix("dtilde")) {
                    AdeName::DTilde(num(r)?)
                } else if let Some(r) = lower.strip_prefix('a') {
                    AdeName::A(num(r)?)
                } else if let Some(r) = lower.strip_prefix('d') {
                    AdeName::D(num(r)?)
                } else {
                    return Err(Error::InvalidGraph(format!("unknown graph {s:?}")));
                }
            }
        })
    }
}

impl fmt::Display for AdeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeName::A(k) => write!(f, "A{k}"),
            AdeName::D(k) => write!(f, "D{k}"),
            AdeName::ATilde(k) => write!(f, "A~{}", 2 * k),
            AdeName::DTilde(k) => write!(f, "D~{k}"),
            AdeName::E6 => write!(f, "E6"),
            AdeName::E7 => write!(f, "E7"),
            AdeName::E8 => write!(f, "E8"),
            AdeName::E6Tilde => write!(f, "E~6"),
            AdeName::E7Tilde => write!(f, "E~7"),
            AdeName::E8Tilde => write!(f, "E~8"),
            AdeName::AInfinity(d) => write!(f, "Ainf({d})"),
            AdeName::DInfinity(d) => write!(f, "Dinf({d})"),
        }
    }
}

fn path_edges(vertices: &[usize]) -> Vec<(usize, usize)> {
    vertices.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Star with the given arm lengths; the root is the end of the first arm.
fn star(arms: &[usize]) -> Result<RootedBipartiteGraph> {
    let mut edges = Vec::new();
    let mut next = 1;
    let mut root = 0;
    for (i, &len) in arms.iter().enumerate() {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        if i == 0 {
            root = prev;
        }
    }
    RootedBipartiteGraph::from_edge_list(next, &edges, root)
}

pub fn ade_graph(name: AdeName) -> Result<RootedBipartiteGraph> {
    let bad = |msg: &str| Err(Error::InvalidGraph(format!("{name}: {msg}")));
    match name {
        AdeName::A(k) | AdeName::AInfinity(k) => {
            let n = if let AdeName::AInfinity(d) = name { d + 1 } else { k };
            if n < 2 {
                return bad("needs k ≥ 2");
            }
            let v: Vec<usize> = (0..n).collect();
            RootedBipartiteGraph::from_edge_list(n, &path_edges(&v), 0)
        }
        AdeName::D(k) => {
            if k < 3 {
                return bad("needs k ≥ 3");
            }
            // path 0 … k−3, then two leaves on k−3
            let v: Vec<usize> = (0..=k - 3).collect();
            let mut e = path_edges(&v);
            e.push((k - 3, k - 2));
            e.push((k - 3, k - 1));
            RootedBipartiteGraph::from_edge_list(k, &e, 0)
        }
        AdeName::DInfinity(d) => {
            if d < 1 {
                return bad("needs depth ≥ 1");
            }
            // root 0 and leaf 1 on vertex 2, then the half-line 2, 3, …
            let n = d + 2;
            let mut e = vec![(0, 2), (1, 2)];
            let v: Vec<usize> = (2..n).collect();
            e.extend(path_edges(&v));
            RootedBipartiteGraph::from_edge_list(n, &e, 0)
        }
        AdeName::ATilde(k) => {
            if k < 1 {
                return bad("needs k ≥ 1");
            }
            if k == 1 {
                return RootedBipartiteGraph::from_edge_list(2, &[(0, 1), (0, 1)], 0);
            }
            let m = 2 * k;
            let e: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
            RootedBipartiteGraph::from_edge_list(m, &e, 0)
        }
        AdeName::DTilde(k) => {
            if k < 4 {
                return bad("needs k ≥ 4");
            }
            // root 0 and leaf 1 on c_1 = 2; path c_1 … c_{k−3}; two leaves at the end
            let last = k - 3 + 1;
            let mut e = vec![(0, 2), (1, 2)];
            let v: Vec<usize> = (2..=last).collect();
            e.extend(path_edges(&v));
            e.push((last, last + 1));
            e.push((last, last + 2));
            RootedBipartiteGraph::from_edge_list(k + 1, &e, 0)
        }
        AdeName::E6 => branched_path(5, 2),
        AdeName::E7 => branched_path(6, 3),
        AdeName::E8 => branched_path(7, 4),
        AdeName::E6Tilde => star(&[2, 2, 2]),
        AdeName::E7Tilde => star(&[3, 3, 1]),
        AdeName::E8Tilde => star(&[5, 2, 1]),
    }
}

/// Path `0 … len−1` rooted at 0 with one extra leaf on vertex `at`.
fn branched_path(len: usize, at: usize) -> Result<RootedBipartiteGraph> {
    let v: Vec<usize> = (0..len).collect();
    let mut e = path_edges(&v);
    e.push((at, len));
    RootedBipartiteGraph::from_edge_list(len + 1, &e, 0)
}

/// Linear combination of measures `ω·d_k` on the unit circle, where `d_k`
/// is uniform on the `2k`-th roots of unity and `ω(q) = Σ c_j q^j` is a
/// Laurent polynomial weight.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CyclotomicMeasure {
    pub terms: Vec<(Rational, i64, usize)>,
}

impl CyclotomicMeasure {
    /// `d_k`.
    pub fn d(k: usize) -> Self {
        CyclotomicMeasure { terms: vec![(int(1), 0, k)] }
    }

    /// `d'_k = 2d_{2k} − d_k`, uniform on the odd `4k`-th roots.
    pub fn d_prime(k: usize) -> Self {
        Self::d(2 * k).scale(&int(2)).add(&Self::d(k).scale(&int(-1)))
    }

    /// Weight `Re(1 − q^{2j})` applied to `d_k` (α, β, γ for j = 1, 2, 3).
    pub fn re_one_minus(j: i64, base: &Self) -> Self {
        let mut out = CyclotomicMeasure::default();
        for (c, s, k) in &base.terms {
            out.terms.push((c.clone(), *s, *k));
            out.terms.push((-c / int(2), s + 2 * j, *k));
            out.terms.push((-c / int(2), s - 2 * j, *k));
        }
        out
    }

    pub fn alpha(k: usize) -> Self {
        Self::re_one_minus(1, &Self::d(k))
    }

    pub fn alpha_prime(k: usize) -> Self {
        Self::re_one_minus(1, &Self::d_prime(k))
    }

    pub fn beta_prime(k: usize) -> Self {
        Self::re_one_minus(2, &Self::d_prime(k))
    }

    pub fn gamma_prime(k: usize) -> Self {
        Self::re_one_minus(3, &Self::d_prime(k))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        CyclotomicMeasure { terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicMeasure { terms: self.terms.iter().map(|(a, s, k)| (a * c, *s, *k)).collect() }
    }

    /// `∫ q^m`, using `∫ q^j dd_k = [2k | j]`.
    pub fn moment(&self, m: i64) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (c, s, k)| {
            if (m + s).rem_euclid(2 * *k as i64) == 0 {
                acc + c
            } else {
                acc
            }
        })
    }

    pub fn even_moments(&self, order: usize) -> Vec<Rational> {
        (0..=order as i64).map(|n| self.moment(2 * n)).collect()
    }
}

/// Circular measures of the ADE graphs in terms of `d_k`, `d'_k` and the
/// densities `α = Re(1−q²)`, `β = Re(1−q⁴)`, `γ = Re(1−q⁶)`.
pub fn claimed_circular_measure(name: AdeName) -> Option<CyclotomicMeasure> {
    type C = CyclotomicMeasure;
    let half = crate::scalar::rat(1, 2);
    Some(match name {
        AdeName::A(n) => C::alpha(n + 1),
        AdeName::ATilde(k) => C::d(k),
        AdeName::D(n) => C::alpha_prime(n - 1),
        AdeName::DTilde(n) => C::d(n - 2).add(&C::d_prime(1)).scale(&half),
        AdeName::E6 => C::alpha(12).add(&C::d(12).add(&C::d(6).scale(&int(-1))).add(&C::d(4).scale(&int(-1))).add(&C::d(3)).scale(&half)),
        AdeName::E7 => C::beta_prime(9).add(&C::d_prime(1).add(&C::d_prime(3).scale(&int(-1))).scale(&half)),
        AdeName::E8 => C::alpha_prime(15).add(&C::gamma_prime(15)).add(&C::d_prime(5).add(&C::d_prime(3)).scale(&(-half.clone()))),
        AdeName::E6Tilde | AdeName::E7Tilde | AdeName::E8Tilde => {
            let k = match name {
                AdeName::E6Tilde => 3,
                AdeName::E7Tilde => 4,
                _ => 5,
            };
            C::d(k).add(&C::d(3)).add(&C::d(2)).add(&C::d(1).scale(&int(-1))).scale(&half)
        }
        AdeName::AInfinity(_) | AdeName::DInfinity(_) => return None,
    })
}

/// Smallest exact depth for infinite graphs at a given order.
pub fn truncation_depth(order: usize) -> usize {
    (2 * order).max(2)
}

//! Set partitions in restricted-growth form, the easy categories, lattice
//! operations and the Möbius function.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcount;

/// A partition of `{0, …, k-1}` stored as a restricted-growth string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    labels: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::from_labels(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.labels
    }
}

impl Partition {
    /// Accepts any labelling and canonicalises it; use [`Partition::from_labels`]
    /// to insist on restricted-growth input.
    pub fn canonical(labels: &[usize]) -> Partition {
        let mut map = HashMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { labels }
    }

    pub fn from_labels(labels: Vec<usize>) -> Result<Partition> {
        let mut next = 0;
        for &l in &labels {
            if l > next {
                return Err(Error::InvalidParameter(format!(
                    "labels {labels:?} are not a restricted-growth string"
                )));
            }
            if l == next {
                next += 1;
            }
        }
        Ok(Partition { labels })
    }

    /// Builds a partition from 0-based blocks covering `0..k` exactly once.
    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let mut labels = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                if i >= k || labels[i] != usize::MAX {
                    return Err(Error::InvalidParameter(format!("bad block list {blocks:?}")));
                }
                labels[i] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::InvalidParameter(format!("blocks {blocks:?} do not cover 0..{k}")));
        }
        Ok(Partition::canonical(&labels))
    }

    /// The finest partition `|||…`.
    pub fn singletons(k: usize) -> Partition {
        Partition { labels: (0..k).collect() }
    }

    /// The one-block partition.
    pub fn one_block(k: usize) -> Partition {
        Partition { labels: vec![0; k] }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.block_count()];
        for &l in &self.labels {
            out[l] += 1;
        }
        out
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    pub fn is_noncrossing(&self) -> bool {
        // a < b < c < d with a~c, b~d, a≁b is a crossing
        let k = self.size();
        let l = &self.labels;
        for a in 0..k {
            for b in a + 1..k {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..k {
                    if l[c] != l[a] {
                        continue;
                    }
                    if (c + 1..k).any(|d| l[d] == l[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_pairing(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    /// Number of blocks of even size.
    pub fn even_block_count(&self) -> usize {
        self.block_sizes().iter().filter(|&&s| s % 2 == 0).count()
    }

    pub(crate) fn check_size(&self, other: &Partition) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch { left: self.size(), right: other.size() });
        }
        Ok(())
    }

    pub fn leq(&self, other: &Partition) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &Partition) -> bool {
        // every block of self sits in one block of other
        let mut image = vec![usize::MAX; self.block_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            let o = other.labels[i];
            if image[l] == usize::MAX {
                image[l] = o;
            } else if image[l] != o {
                return false;
            }
        }
        true
    }

    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_size(other)?;
        let k = self.size();
        let mut uf = UnionFind::new(k);
        for labels in [&self.labels, &other.labels] {
            let mut first = HashMap::new();
            for (i, &l) in labels.iter().enumerate() {
                match first.get(&l) {
                    Some(&j) => uf.union(i, j),
                    None => {
                        first.insert(l, i);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..k).map(|i| uf.find(i)).collect();
        Ok(Partition::canonical(&roots))
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_size(other)?;
        let pairs: Vec<(usize, usize)> =
            self.labels.iter().zip(&other.labels).map(|(&a, &b)| (a, b)).collect();
        let mut map = HashMap::new();
        let labels = pairs
            .iter()
            .map(|p| {
                let next = map.len();
                *map.entry(*p).or_insert(next)
            })
            .collect();
        Ok(Partition { labels })
    }

    /// Doubles every leg: a noncrossing partition of k points becomes a
    /// noncrossing pairing of 2k points.
    pub fn fatten(&self) -> Result<Partition> {
        if !self.is_noncrossing() {
            return Err(Error::Crossing);
        }
        let k = self.size();
        let mut pairs = Vec::with_capacity(k);
        for block in self.blocks() {
            let r = block.len();
            pairs.push(vec![2 * block[0], 2 * block[r - 1] + 1]);
            for w in block.windows(2) {
                pairs.push(vec![2 * w[0] + 1, 2 * w[1]]);
            }
        }
        Partition::from_blocks(2 * k, &pairs)
    }

    /// Inverse of [`Partition::fatten`].
    pub fn shrink(&self) -> Result<Partition> {
        let n = self.size();
        if n % 2 != 0 || !self.is_pairing() {
            return Err(Error::InvalidParameter("shrink expects a pairing of an even number of points".into()));
        }
        if !self.is_noncrossing() {
            return Err(Error::Crossing);
        }
        let mut uf = UnionFind::new(n);
        for block in self.blocks() {
            uf.union(block[0], block[1]);
        }
        for p in 0..n / 2 {
            uf.union(2 * p, 2 * p + 1);
        }
        let roots: Vec<usize> = (0..n / 2).map(|p| uf.find(2 * p)).collect();
        Ok(Partition::canonical(&roots))
    }

    /// Permutation cycling through each block in increasing order.
    pub fn to_permutation(&self) -> Vec<usize> {
        let mut perm = vec![0; self.size()];
        for block in self.blocks() {
            for (j, &i) in block.iter().enumerate() {
                perm[i] = block[(j + 1) % block.len()];
            }
        }
        perm
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() == 0 {
            return write!(f, "∅");
        }
        for block in self.blocks() {
            let inner: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        Ok(())
    }
}

/// Number of cycles of a permutation given as an image vector.
pub fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// The full cycle `i ↦ i+1 mod k`.
pub fn full_cycle(k: usize) -> Vec<usize> {
    (0..k).map(|i| (i + 1) % k).collect()
}

/// Partition whose blocks collect equal indices.
pub fn kernel<T: Eq + std::hash::Hash>(indices: &[T]) -> Partition {
    let mut map = HashMap::new();
    let labels = indices
        .iter()
        .map(|x| {
            let next = map.len();
            *map.entry(x).or_insert(next)
        })
        .collect();
    Partition { labels }
}

/// Partition of `upper + lower` points with the first `upper` on the top row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoRowPartition {
    pub partition: Partition,
    pub upper: usize,
}

impl TwoRowPartition {
    pub fn new(partition: Partition, upper: usize) -> Result<Self> {
        if upper > partition.size() {
            return Err(Error::InvalidParameter("split index beyond partition size".into()));
        }
        Ok(TwoRowPartition { partition, upper })
    }

    pub fn lower(&self) -> usize {
        self.partition.size() - self.upper
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut i = i;
        while self.parent[i] != r {
            let next = self.parent[i];
            self.parent[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

/// Word over {○, ●}; written with the letters `o` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ColoredWord {
    pub letters: Vec<Color>,
}

impl ColoredWord {
    /// All-white word of length k; uncolored categories only see the length.
    pub fn uncolored(k: usize) -> Self {
        ColoredWord { letters: vec![Color::White; k] }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'o' | '○' => Ok(Color::White),
                'b' | '●' => Ok(Color::Black),
                _ => Err(Error::InvalidParameter(format!("color letter {c:?}, expected o or b"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ColoredWord { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn whites(&self) -> usize {
        self.letters.iter().filter(|&&c| c == Color::White).count()
    }

    pub fn blacks(&self) -> usize {
        self.len() - self.whites()
    }
}

impl fmt::Display for ColoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            f.write_str(match c {
                Color::White => "o",
                Color::Black => "b",
            })?;
        }
        Ok(())
    }
}

/// Modulus `s ∈ {1, 2, …} ∪ {∞}` of the block condition `#○ − #● ≡ 0 (mod s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    Finite(u32),
    Infinite,
}

impl Modulus {
    pub fn divides(self, n: i64) -> bool {
        match self {
            Modulus::Finite(s) => n.rem_euclid(s as i64) == 0,
            Modulus::Infinite => n == 0,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Modulus::Infinite),
            t => t
                .parse::<u32>()
                .map(Modulus::Finite)
                .map_err(|_| Error::InvalidParameter(format!("bad modulus {s:?}"))),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(s) => write!(f, "{s}"),
            Modulus::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    P,
    P2,
    Peven,
    Ps(Modulus),
    P12,
    NC,
    NC2,
    NCeven,
    NCs(Modulus),
    NC12,
    MatchP2,
    MatchNC2,
    MatchPeven,
    MatchNCeven,
}

/// Lattice in which the Möbius function is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lattice {
    P,
    NC,
}

impl Category {
    pub fn is_noncrossing(self) -> bool {
        matches!(
            self,
            Category::NC
                | Category::NC2
                | Category::NCeven
                | Category::NCs(_)
                | Category::NC12
                | Category::MatchNC2
                | Category::MatchNCeven
        )
    }

    pub fn is_colored(self) -> bool {
        matches!(
            self,
            Category::Ps(_)
                | Category::NCs(_)
                | Category::MatchP2
                | Category::MatchNC2
                | Category::MatchPeven
                | Category::MatchNCeven
        )
    }

    fn validate(self) -> Result<()> {
        match self {
            Category::Ps(Modulus::Finite(0)) | Category::NCs(Modulus::Finite(0)) => {
                Err(Error::InvalidParameter("modulus s must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    fn max_block(self) -> Option<usize> {
        match self {
            Category::P2 | Category::NC2 | Category::MatchP2 | Category::MatchNC2 => Some(2),
            Category::P12 | Category::NC12 => Some(2),
            _ => None,
        }
    }

    /// Admissibility of a single block with the given ○ and ● counts.
    pub fn admits_block(self, whites: usize, blacks: usize) -> bool {
        let size = whites + blacks;
        let diff = whites as i64 - blacks as i64;
        match self {
            Category::P | Category::NC => true,
            Category::P2 | Category::NC2 => size == 2,
            Category::Peven | Category::NCeven => size % 2 == 0,
            Category::P12 | Category::NC12 => size <= 2,
            Category::Ps(s) | Category::NCs(s) => s.divides(diff),
            Category::MatchP2 | Category::MatchNC2 => size == 2 && diff == 0,
            Category::MatchPeven | Category::MatchNCeven => diff == 0,
        }
    }

    pub fn contains(self, p: &Partition, word: &ColoredWord) -> bool {
        if p.size() != word.len() {
            return false;
        }
        if self.is_noncrossing() && !p.is_noncrossing() {
            return false;
        }
        block_color_counts(p, word).into_iter().all(|(w, b)| self.admits_block(w, b))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let with_mod = |prefix: &str| -> Option<Result<Modulus>> {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .map(Modulus::parse)
        };
        if let Some(m) = with_mod("Ps") {
            return Ok(Category::Ps(m?));
        }
        if let Some(m) = with_mod("NCs") {
            return Ok(Category::NCs(m?));
        }
        Ok(match s {
            "P" => Category::P,
            "P2" => Category::P2,
            "Peven" => Category::Peven,
            "P12" => Category::P12,
            "NC" => Category::NC,
            "NC2" => Category::NC2,
            "NCeven" => Category::NCeven,
            "NC12" => Category::NC12,
            "MatchP2" => Category::MatchP2,
            "MatchNC2" => Category::MatchNC2,
            "MatchPeven" => Category::MatchPeven,
            "MatchNCeven" => Category::MatchNCeven,
            _ => return Err(Error::InvalidParameter(format!("unknown category {s:?}"))),
        })
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Ps(s) => write!(f, "Ps({s})"),
            Category::NCs(s) => write!(f, "NCs({s})"),
            other => write!(f, "{other:?}"),
        }
    }
}

fn block_color_counts(p: &Partition, word: &ColoredWord) -> Vec<(usize, usize)> {
    let mut counts = vec![(0, 0); p.block_count()];
    for (i, &l) in p.labels.iter().enumerate() {
        match word.letters[i] {
            Color::White => counts[l].0 += 1,
            Color::Black => counts[l].1 += 1,
        }
    }
    counts
}

/// Canonical order: more blocks first, then lexicographic labels.
pub fn canonical_cmp(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    b.block_count().cmp(&a.block_count()).then_with(|| a.labels.cmp(&b.labels))
}

/// Every partition of the word's points in the category, in canonical order.
pub fn enumerate(cat: Category, word: &ColoredWord) -> Result<Vec<Partition>> {
    cat.validate()?;
    let k = word.len();
    let mut out = if cat.is_noncrossing() {
        let points: Vec<usize> = (0..k).collect();
        nc_blocks(&points, &|block: &[usize]| block_ok(cat, word, block))
            .into_iter()
            .map(|blocks| Partition::from_blocks(k, &blocks).expect("blocks cover the points"))
            .collect()
    } else {
        let mut out = Vec::new();
        let mut labels = Vec::with_capacity(k);
        let mut sizes = Vec::new();
        rgs(cat, word, &mut labels, &mut sizes, &mut out);
        out
    };
    out.sort_by(canonical_cmp);
    Ok(out)
}

fn block_ok(cat: Category, word: &ColoredWord, block: &[usize]) -> bool {
    let whites = block.iter().filter(|&&i| word.letters[i] == Color::White).count();
    cat.admits_block(whites, block.len() - whites)
}

fn rgs(
    cat: Category,
    word: &ColoredWord,
    labels: &mut Vec<usize>,
    sizes: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    let k = word.len();
    let i = labels.len();
    if i == k {
        let p = Partition { labels: labels.clone() };
        if block_color_counts(&p, word).into_iter().all(|(w, b)| cat.admits_block(w, b)) {
            out.push(p);
        }
        return;
    }
    let cap = cat.max_block().unwrap_or(usize::MAX);
    for l in 0..=sizes.len() {
        if l < sizes.len() && sizes[l] >= cap {
            continue;
        }
        if l == sizes.len() {
            sizes.push(0);
        }
        sizes[l] += 1;
        labels.push(l);
        rgs(cat, word, labels, sizes, out);
        labels.pop();
        sizes[l] -= 1;
        if sizes[l] == 0 {
            sizes.pop();
        }
    }
}

/// Noncrossing partitions of the ordered point list: the block holding the
/// first point splits the rest into independent gaps.
fn nc_blocks(points: &[usize], ok: &dyn Fn(&[usize]) -> bool) -> Vec<Vec<Vec<usize>>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let rest = &points[1..];
    let mut out = Vec::new();
    let mut chosen = vec![points[0]];
    first_block(rest, 0, &mut chosen, ok, &mut out);
    out
}

fn first_block(
    rest: &[usize],
    start: usize,
    chosen: &mut Vec<usize>,
    ok: &dyn Fn(&[usize]) -> bool,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    // the block is closed here; the tail rest[start..] forms the final gap
    if ok(chosen) {
        let mut pieces: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
        let mut gap_start = 0;
        let mut feasible = true;
        for &c in chosen.iter().skip(1) {
            let idx = rest.iter().position(|&x| x == c).expect("chosen point in rest");
            let sub = nc_blocks(&rest[gap_start..idx], ok);
            if sub.is_empty() {
                feasible = false;
                break;
            }
            pieces.push(sub);
            gap_start = idx + 1;
        }
        if feasible {
            let tail = nc_blocks(&rest[gap_start..], ok);
            if !tail.is_empty() {
                pieces.push(tail);
                let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![chosen.clone()]];
                for piece in &pieces {
                    let mut next = Vec::with_capacity(acc.len() * piece.len());
                    for a in &acc {
                        for p in piece {
                            let mut merged = a.clone();
                            merged.extend(p.iter().cloned());
                            next.push(merged);
                        }
                    }
                    acc = next;
                }
                out.extend(acc);
            }
        }
    }
    for j in start..rest.len() {
        chosen.push(rest[j]);
        first_block(rest, j + 1, chosen, ok, out);
        chosen.pop();
    }
}

/// Size of the category on the word, by closed form when one is known.
pub fn count(cat: Category, word: &ColoredWord) -> Result<BigInt> {
    cat.validate()?;
    let k = word.len();
    let closed = match cat {
        Category::P => Some(exactcount::bell(k)),
        Category::NC => Some(exactcount::catalan(k)),
        Category::P2 => Some(if k % 2 == 0 { exactcount::odd_double_factorial(k) } else { BigInt::zero() }),
        Category::NC2 => Some(if k % 2 == 0 { exactcount::catalan(k / 2) } else { BigInt::zero() }),
        Category::NCeven => Some(if k % 2 == 0 {
            exactcount::fuss_catalan_int(2, k / 2)
        } else {
            BigInt::zero()
        }),
        Category::NCs(Modulus::Finite(s)) if word.blacks() == 0 => {
            let s = s as usize;
            Some(if k % s == 0 { exactcount::fuss_catalan_int(s as u64, k / s) } else { BigInt::zero() })
        }
        Category::MatchP2 => Some(if word.whites() == word.blacks() {
            exactcount::factorial(word.whites() as u64)
        } else {
            BigInt::zero()
        }),
        _ => None,
    };
    match closed {
        Some(c) => Ok(c),
        None => Ok(BigInt::from(enumerate(cat, word)?.len())),
    }
}

/// Möbius function of `P(k)` or `NC(k)` by the defining recursion
/// `μ(a,a) = 1`, `μ(a,b) = −Σ_{a ≤ c < b} μ(a,c)`.
pub fn mobius(a: &Partition, b: &Partition, lattice: Lattice) -> Result<BigInt> {
    a.check_size(b)?;
    if lattice == Lattice::NC && (!a.is_noncrossing() || !b.is_noncrossing()) {
        return Err(Error::Crossing);
    }
    if !a.leq_unchecked(b) {
        return Ok(BigInt::zero());
    }
    if a == b {
        return Ok(BigInt::one());
    }
    let interval = interval(a, b, lattice);
    let values = mobius_from(a, &interval);
    Ok(values[interval.len() - 1].clone())
}

/// Elements c with a ≤ c ≤ b, sorted so that c precedes everything above it.
fn interval(a: &Partition, b: &Partition, lattice: Lattice) -> Vec<Partition> {
    // refine b's blocks by merging a's blocks inside each of them
    let a_blocks = a.blocks();
    let a_reps: Vec<usize> = a_blocks.iter().map(|bl| bl[0]).collect();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); b.block_count()];
    for (ai, &r) in a_reps.iter().enumerate() {
        groups[b.labels[r]].push(ai);
    }
    // each a-block gets a label inside its b-group: a set partition per group
    let mut per_group: Vec<Vec<Vec<usize>>> = Vec::new();
    for g in &groups {
        let mut parts = Vec::new();
        let mut labels = Vec::new();
        let mut sizes = Vec::new();
        let word = ColoredWord::uncolored(g.len());
        rgs(Category::P, &word, &mut labels, &mut sizes, &mut parts);
        per_group.push(parts.into_iter().map(|p| p.labels).collect());
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; groups.len()];
    loop {
        let mut block_of_a = vec![0usize; a_blocks.len()];
        let mut offset = 0;
        for (gi, g) in groups.iter().enumerate() {
            let labels = &per_group[gi][choice[gi]];
            for (j, &ai) in g.iter().enumerate() {
                block_of_a[ai] = offset + labels[j];
            }
            offset += labels.iter().max().map_or(0, |m| m + 1);
        }
        let point_labels: Vec<usize> = a.labels.iter().map(|&l| block_of_a[l]).collect();
        let c = Partition::canonical(&point_labels);
        if lattice == Lattice::P || c.is_noncrossing() {
            out.push(c);
        }
        let mut gi = 0;
        loop {
            if gi == groups.len() {
                out.sort_by(canonical_cmp);
                return out;
            }
            choice[gi] += 1;
            if choice[gi] < per_group[gi].len() {
                break;
            }
            choice[gi] = 0;
            gi += 1;
        }
    }
}

fn mobius_from(a: &Partition, interval: &[Partition]) -> Vec<BigInt> {
    let mut mu: Vec<BigInt> = Vec::with_capacity(interval.len());
    for (j, c) in interval.iter().enumerate() {
        if c == a {
            mu.push(BigInt::one());
            continue;
        }
        let mut s = BigInt::zero();
        for i in 0..j {
            if interval[i].leq_unchecked(c) {
                s += &mu[i];
            }
        }
        mu.push(-s);
    }
    mu
}

/// Möbius function on an arbitrary finite family of partitions ordered by
/// refinement (a sub-poset such as `P_even(k)`).
pub fn mobius_in(elements: &[Partition], a: &Partition, b: &Partition) -> Result<BigInt> {
    a.check_size(b)?;
    if !elements.contains(a) || !elements.contains(b) {
        return Err(Error::NotInLattice);
    }
    if !a.leq_unchecked(b) {
        return Ok(BigInt::zero());
    }
    let mut interval: Vec<Partition> = elements
        .iter()
        .filter(|c| a.leq_unchecked(c) && c.leq_unchecked(b))
        .cloned()
        .collect();
    interval.sort_by(canonical_cmp);
    let values = mobius_from(a, &interval);
    let pos = interval.iter().position(|c| c == b).expect("b in interval");
    Ok(values[pos].clone())
}

/// Möbius matrix over a list of elements of one lattice.
pub fn mobius_matrix(elements: &[Partition], lattice: Lattice) -> Result<Vec<Vec<BigInt>>> {
    elements
        .iter()
        .map(|a| elements.iter().map(|b| mobius(a, b, lattice)).collect())
        .collect()
}

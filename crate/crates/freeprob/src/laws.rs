//! Parametric limit laws: exact moments, densities, atoms and compound
//! (free) Poisson constructions.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::cumulants::{moments_from_cumulants, partition_weighted_polynomial, CumulantSequence, Flavor, MomentSequence};
use crate::error::{Error, Result};
use crate::exactcount::{catalan, fuss_narayana, odd_double_factorial, stirling2};
use crate::partitions::{enumerate, Category, ColoredWord, Modulus};
use crate::scalar::{int, IntPoly, Rational, Scalar};
use crate::weingarten::{weingarten, EasyGroup, GroupSeries};

/// Finite positive measure: real atoms plus mass spread uniformly over
/// scaled roots of unity `r·{1, w, …, w^{s−1}}`, `w = e^{2πi/s}`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DiscreteMeasure {
    pub real: Vec<(Rational, Rational)>,
    pub roots: Vec<RootComponent>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootComponent {
    pub s: u32,
    pub radius: Rational,
    /// Total mass of the component, split evenly over the `s` roots.
    pub mass: Rational,
}

impl DiscreteMeasure {
    pub fn dirac(x: Rational, mass: Rational) -> Self {
        DiscreteMeasure { real: vec![(x, mass)], roots: Vec::new() }
    }

    /// `mass · ε_s`, the uniform measure on the s-th roots of unity.
    pub fn roots_of_unity(s: u32, mass: Rational) -> Self {
        DiscreteMeasure { real: Vec::new(), roots: vec![RootComponent { s, radius: Rational::one(), mass }] }
    }

    pub fn from_atoms(atoms: Vec<(Rational, Rational)>) -> Self {
        DiscreteMeasure { real: atoms, roots: Vec::new() }
    }

    pub fn total_mass(&self) -> Rational {
        self.real.iter().map(|a| &a.1).chain(self.roots.iter().map(|c| &c.mass)).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass().is_one()
    }

    pub fn validate(&self) -> Result<()> {
        if self.real.iter().any(|a| a.1.is_negative()) || self.roots.iter().any(|c| c.mass.is_negative() || c.s == 0) {
            return Err(Error::InvalidParameter("measure masses must be nonnegative, s ≥ 1".into()));
        }
        Ok(())
    }

    /// `∫ x^n dρ`.
    pub fn moment(&self, n: usize) -> Rational {
        let mut acc = Rational::zero();
        for (x, m) in &self.real {
            acc += m * num_traits::pow(x.clone(), n);
        }
        for c in &self.roots {
            if n % c.s as usize == 0 {
                acc += &c.mass * num_traits::pow(c.radius.clone(), n);
            }
        }
        acc
    }

    pub fn moments(&self, order: usize) -> Vec<Rational> {
        (1..=order).map(|n| self.moment(n)).collect()
    }
}

/// The parametric families. Parameters are exact.
#[derive(Clone, Debug, PartialEq)]
pub enum LawSpec {
    PointMass(Rational),
    /// `g_t`, centered normal of variance t.
    Gaussian(Rational),
    /// `G_t`, complex Gaussian.
    ComplexGaussian(Rational),
    /// `p_t`.
    Poisson(Rational),
    /// `b^s_t`, compound Poisson with base `t·ε_s`.
    Bessel(Modulus, Rational),
    /// `γ_t`.
    Semicircle(Rational),
    /// `π_t`.
    MarchenkoPastur(Rational),
    /// `Γ_t`, circular.
    Circular(Rational),
    /// `β^s_t` as the compound free Poisson law with base `t·ε_s`.
    FreeBessel(Modulus, Rational),
    /// `π^{⊠ s−1} ⊠ π^{⊞ t}` for real `s > 0`, Fuss–Narayana moments.
    FreeBesselPower(Rational, Rational),
    CompoundPoisson(DiscreteMeasure),
    CompoundFreePoisson(DiscreteMeasure),
    /// Law of `z₁` on the free real sphere `S^{N−1}_{ℝ,+}`.
    FreeHyperspherical(u64),
}

/// Either an integer order or a colored word.
#[derive(Clone, Debug, PartialEq)]
pub enum MomentArg {
    Order(usize),
    Word(ColoredWord),
}

impl MomentArg {
    pub fn len(&self) -> usize {
        match self {
            MomentArg::Order(k) => *k,
            MomentArg::Word(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentPath {
    ClosedForm,
    PartitionSum,
}

fn positive(t: &Rational, what: &str) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

impl LawSpec {
    pub fn name(&self) -> &'static str {
        match self {
            LawSpec::PointMass(_) => "PointMass",
            LawSpec::Gaussian(_) => "Gaussian",
            LawSpec::ComplexGaussian(_) => "ComplexGaussian",
            LawSpec::Poisson(_) => "Poisson",
            LawSpec::Bessel(..) => "Bessel",
            LawSpec::Semicircle(_) => "Semicircle",
            LawSpec::MarchenkoPastur(_) => "MarchenkoPastur",
            LawSpec::Circular(_) => "Circular",
            LawSpec::FreeBessel(..) => "FreeBessel",
            LawSpec::FreeBesselPower(..) => "FreeBesselPower",
            LawSpec::CompoundPoisson(_) => "CompoundPoisson",
            LawSpec::CompoundFreePoisson(_) => "CompoundFreePoisson",
            LawSpec::FreeHyperspherical(_) => "FreeHyperspherical",
        }
    }

    pub fn is_colored(&self) -> bool {
        matches!(self, LawSpec::ComplexGaussian(_) | LawSpec::Circular(_))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LawSpec::PointMass(_) => Ok(()),
            LawSpec::Gaussian(t)
            | LawSpec::ComplexGaussian(t)
            | LawSpec::Poisson(t)
            | LawSpec::Semicircle(t)
            | LawSpec::MarchenkoPastur(t)
            | LawSpec::Circular(t) => positive(t, "t"),
            LawSpec::Bessel(s, t) | LawSpec::FreeBessel(s, t) => {
                if *s == Modulus::Finite(0) {
                    return Err(Error::InvalidParameter("s must be ≥ 1".into()));
                }
                positive(t, "t")
            }
            LawSpec::FreeBesselPower(s, t) => {
                positive(s, "s")?;
                positive(t, "t")?;
                if s < &Rational::one() && t > &Rational::one() {
                    return Err(Error::InvalidParameter("(s,t) lies in the excluded rectangle (0,1)×(1,∞)".into()));
                }
                Ok(())
            }
            LawSpec::CompoundPoisson(rho) | LawSpec::CompoundFreePoisson(rho) => rho.validate(),
            LawSpec::FreeHyperspherical(n) => {
                if *n < 2 {
                    return Err(Error::InvalidParameter("N must be ≥ 2".into()));
                }
                Ok(())
            }
        }
    }

    /// Category whose weighted sum `Σ t^{|π|}` gives the moments.
    pub fn category(&self) -> Option<Category> {
        Some(match self {
            LawSpec::Gaussian(_) => Category::P2,
            LawSpec::ComplexGaussian(_) => Category::MatchP2,
            LawSpec::Poisson(_) => Category::P,
            LawSpec::Bessel(s, _) => Category::Ps(*s),
            LawSpec::Semicircle(_) => Category::NC2,
            LawSpec::MarchenkoPastur(_) => Category::NC,
            LawSpec::Circular(_) => Category::MatchNC2,
            LawSpec::FreeBessel(s, _) => Category::NCs(*s),
            _ => return None,
        })
    }

    fn weight(&self) -> Option<&Rational> {
        match self {
            LawSpec::Gaussian(t)
            | LawSpec::ComplexGaussian(t)
            | LawSpec::Poisson(t)
            | LawSpec::Bessel(_, t)
            | LawSpec::Semicircle(t)
            | LawSpec::MarchenkoPastur(t)
            | LawSpec::Circular(t)
            | LawSpec::FreeBessel(_, t) => Some(t),
            _ => None,
        }
    }
}

fn word_of(law: &LawSpec, arg: &MomentArg) -> Result<ColoredWord> {
    match (law.is_colored(), arg) {
        (true, MomentArg::Word(w)) => Ok(w.clone()),
        (true, MomentArg::Order(_)) => {
            Err(Error::InvalidParameter(format!("{} moments are indexed by a colored word", law.name())))
        }
        (false, MomentArg::Order(k)) => Ok(ColoredWord::uncolored(*k)),
        (false, MomentArg::Word(w)) => {
            if w.blacks() > 0 {
                Err(Error::ColoredWordNotAllowed)
            } else {
                Ok(w.clone())
            }
        }
    }
}

/// Exact moment by the family's closed form.
pub fn law_moment(law: &LawSpec, arg: &MomentArg) -> Result<Rational> {
    law_moment_via(law, arg, MomentPath::ClosedForm)
}

pub fn law_moment_via(law: &LawSpec, arg: &MomentArg, path: MomentPath) -> Result<Rational> {
    law.validate()?;
    let word = word_of(law, arg)?;
    let k = word.len();
    if k == 0 {
        return Ok(Rational::one());
    }
    if path == MomentPath::PartitionSum {
        if let (Some(cat), Some(t)) = (law.category(), law.weight()) {
            return Ok(partition_weighted_polynomial(cat, &word)?.eval(t));
        }
        match law {
            LawSpec::CompoundPoisson(rho) => return Ok(compound_partition_sum(rho, Category::P, k)?),
            LawSpec::CompoundFreePoisson(rho) => return Ok(compound_partition_sum(rho, Category::NC, k)?),
            _ => {}
        }
    }
    Ok(match law {
        LawSpec::PointMass(c) => num_traits::pow(c.clone(), k),
        LawSpec::Gaussian(t) => {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                num_traits::pow(t.clone(), k / 2) * Rational::from_integer(odd_double_factorial(k))
            }
        }
        LawSpec::ComplexGaussian(t) => {
            if word.whites() != word.blacks() {
                Rational::zero()
            } else {
                let p = word.whites();
                num_traits::pow(t.clone(), p) * Rational::from_integer(crate::exactcount::factorial(p as u64))
            }
        }
        LawSpec::Poisson(t) => (1..=k).fold(Rational::zero(), |acc, b| {
            acc + Rational::from_integer(stirling2(k, b)) * num_traits::pow(t.clone(), b)
        }),
        LawSpec::Bessel(s, t) => {
            let rho = base_roots(*s, t);
            compound_poisson(&rho, Flavor::Classical, k).values[k - 1].clone()
        }
        LawSpec::Semicircle(t) => {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                num_traits::pow(t.clone(), k / 2) * Rational::from_integer(catalan(k / 2))
            }
        }
        LawSpec::MarchenkoPastur(t) => fuss_narayana(&Rational::one(), k, t),
        LawSpec::Circular(t) => {
            if word.whites() != word.blacks() {
                Rational::zero()
            } else {
                num_traits::pow(t.clone(), k / 2) * Rational::from_integer(nc_matching_count(&word))
            }
        }
        LawSpec::FreeBessel(s, t) => match s {
            Modulus::Finite(s) if k % *s as usize == 0 => fuss_narayana(&int(*s as i64), k / *s as usize, t),
            _ => Rational::zero(),
        },
        LawSpec::FreeBesselPower(s, t) => fuss_narayana(s, k, t),
        LawSpec::CompoundPoisson(rho) => compound_poisson(rho, Flavor::Classical, k).values[k - 1].clone(),
        LawSpec::CompoundFreePoisson(rho) => compound_poisson(rho, Flavor::Free, k).values[k - 1].clone(),
        LawSpec::FreeHyperspherical(n) => {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                free_hyperspherical_exact(*n, k / 2)?
            }
        }
    })
}

/// `Σ_{π∈D(k)} t^{|π|}` as an integer polynomial in `t`.
pub fn moment_polynomial(law: &LawSpec, arg: &MomentArg) -> Result<IntPoly> {
    let cat = law
        .category()
        .ok_or_else(|| Error::InvalidParameter(format!("{} has no partition-sum form", law.name())))?;
    partition_weighted_polynomial(cat, &word_of(law, arg)?)
}

pub fn law_moments(law: &LawSpec, order: usize) -> Result<MomentSequence<Rational>> {
    Ok(MomentSequence::new((1..=order).map(|k| law_moment(law, &MomentArg::Order(k))).collect::<Result<_>>()?))
}

fn base_roots(s: Modulus, t: &Rational) -> DiscreteMeasure {
    match s {
        Modulus::Finite(s) => DiscreteMeasure::roots_of_unity(s, t.clone()),
        // ε_∞ is the uniform measure on the circle: all nonzero moments vanish
        Modulus::Infinite => DiscreteMeasure::roots_of_unity(u32::MAX, t.clone()),
    }
}

/// Number of noncrossing pairings of the word joining ○ to ●.
fn nc_matching_count(word: &ColoredWord) -> BigInt {
    let k = word.len();
    let letters = &word.letters;
    // f[i][j]: count for the half-open interval [i, j)
    let mut f = vec![vec![BigInt::zero(); k + 1]; k + 1];
    for (i, row) in f.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    for len in (2..=k).step_by(2) {
        for i in 0..=k - len {
            let j = i + len;
            let mut acc = BigInt::zero();
            for m in (i + 1..j).step_by(2) {
                if letters[i] != letters[m] {
                    acc += &f[i + 1][m] * &f[m + 1][j];
                }
            }
            f[i][j] = acc;
        }
    }
    f[0][k].clone()
}

fn compound_partition_sum(rho: &DiscreteMeasure, cat: Category, k: usize) -> Result<Rational> {
    let m = rho.moments(k);
    let mut acc = Rational::zero();
    for p in enumerate(cat, &ColoredWord::uncolored(k))? {
        acc += p.block_sizes().iter().fold(Rational::one(), |a, &b| a * &m[b - 1]);
    }
    Ok(acc)
}

/// Moments of `p_ρ` (classical) or `π_ρ` (free): the cumulants of the
/// stated flavor are the moments of `ρ`.
pub fn compound_poisson(rho: &DiscreteMeasure, flavor: Flavor, order: usize) -> MomentSequence<Rational> {
    moments_from_cumulants(&CumulantSequence::new(rho.moments(order), flavor))
}

/// `∫ z₁^{2l}` over the free real sphere by the q-series
/// `(N+2)^{−l}·(q+1)/(q−1)·1/(l+1)·Σ_{r=−l−1}^{l+1} (−1)^r·C(2l+2, l+r+1)·r/(1+q^r)`
/// with `q + q⁻¹ = −N`, `q ∈ (−1, 0)`.
pub fn free_hyperspherical_moment(n: u64, l: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidParameter("N must be ≥ 3".into()));
    }
    let nf = n as f64;
    let q = (-nf + (nf * nf - 4.0).sqrt()) / 2.0;
    let li = l as i64;
    let mut sum = 0.0;
    let mut binom = vec![1.0f64; 2 * l as usize + 3];
    for i in 1..binom.len() {
        binom[i] = binom[i - 1] * (2 * li + 3 - i as i64) as f64 / i as f64;
    }
    for r in -li - 1..=li + 1 {
        if r == 0 {
            continue;
        }
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let c = binom[(li + r + 1) as usize];
        sum += sign * c * r as f64 / (1.0 + q.powi(r as i32));
    }
    Ok((q + 1.0) / (q - 1.0) / (l as f64 + 1.0) * sum / (nf + 2.0).powi(l as i32))
}

/// Same moment from the `O_N^+` Weingarten function: `Σ_{π,ν∈NC₂(2l)} W(π,ν)`.
pub fn free_hyperspherical_exact(n: u64, l: usize) -> Result<Rational> {
    let table = weingarten(EasyGroup::free(GroupSeries::O), &ColoredWord::uncolored(2 * l), n)?;
    let m = table.partitions.len();
    let mut acc = Rational::zero();
    for a in 0..m {
        for b in 0..m {
            acc += &table.wg[(a, b)];
        }
    }
    Ok(acc)
}

/// Atoms of an atomic law with the mass dropped by truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomList {
    pub atoms: Vec<(Complex64, f64)>,
    pub truncated_mass: f64,
}

impl AtomList {
    pub fn real_atoms(&self) -> Vec<(f64, f64)> {
        self.atoms.iter().filter(|(z, _)| z.im.abs() < 1e-12).map(|(z, m)| (z.re, *m)).collect()
    }

    pub fn mass_at(&self, z: Complex64) -> f64 {
        self.atoms.iter().filter(|(w, _)| (w - z).norm() < 1e-9).map(|a| a.1).sum()
    }
}

/// Tail mass below which atomic laws are truncated.
pub const TAIL_TOLERANCE: f64 = 1e-12;

fn poisson_atoms(t: f64, tol: f64) -> (Vec<f64>, f64) {
    let mut p = (-t).exp();
    let mut out = Vec::new();
    let mut total = 0.0;
    let mut k = 0usize;
    loop {
        out.push(p);
        total += p;
        k += 1;
        if (k as f64) > t && 1.0 - total < tol {
            break;
        }
        if k > 100_000 {
            break;
        }
        p *= t / k as f64;
    }
    (out, (1.0 - total).max(0.0))
}

/// Atoms of `δ_c`, `p_t` and `b^s_t` (finite s).
pub fn law_atoms(law: &LawSpec) -> Result<AtomList> {
    law.validate()?;
    match law {
        LawSpec::PointMass(c) => Ok(AtomList { atoms: vec![(Complex64::new(c.as_f64(), 0.0), 1.0)], truncated_mass: 0.0 }),
        LawSpec::Poisson(t) => {
            let (p, tail) = poisson_atoms(t.as_f64(), TAIL_TOLERANCE);
            Ok(AtomList {
                atoms: p.into_iter().enumerate().map(|(k, m)| (Complex64::new(k as f64, 0.0), m)).collect(),
                truncated_mass: tail,
            })
        }
        LawSpec::Bessel(Modulus::Finite(s), t) => Ok(bessel_atoms(*s, t.as_f64())),
        LawSpec::MarchenkoPastur(t) => {
            let m = (1.0 - t.as_f64()).max(0.0);
            Ok(AtomList {
                atoms: if m > 0.0 { vec![(Complex64::new(0.0, 0.0), m)] } else { Vec::new() },
                truncated_mass: 0.0,
            })
        }
        LawSpec::Gaussian(_) | LawSpec::Semicircle(_) => Ok(AtomList { atoms: Vec::new(), truncated_mass: 0.0 }),
        LawSpec::Circular(_) | LawSpec::ComplexGaussian(_) => Err(Error::NoRealDensity(law.name().into())),
        _ => Err(Error::InvalidParameter(format!("{} has no closed atomic form", law.name()))),
    }
}

/// `b^s_t = e^{−t} Σ_{c} Π (t/s)^{c_k}/c_k! · δ_{Σ w^k c_k}`, computed as the
/// law of `Σ_k w^k X_k` with independent `X_k ~ p_{t/s}`.
fn bessel_atoms(s: u32, t: f64) -> AtomList {
    if s == 2 {
        // closed form: e^{−t} Σ_p (t/2)^{|r|+2p} / ((|r|+p)! p!)
        let half = t / 2.0;
        let mut atoms = Vec::new();
        let mut total = 0.0;
        for r in 0i64.. {
            let mut m = 0.0;
            let mut term = (-t).exp() * (0..r).fold(1.0, |a, j| a * half / (j + 1) as f64);
            for p in 0.. {
                m += term;
                term *= half * half / ((p + 1) as f64 * (r + p + 1) as f64);
                if term < 1e-300 || (p as f64 > half && term < m * 1e-17) {
                    break;
                }
            }
            let weight = if r == 0 { m } else { 2.0 * m };
            total += weight;
            atoms.push((Complex64::new(r as f64, 0.0), m));
            if r > 0 {
                atoms.push((Complex64::new(-r as f64, 0.0), m));
            }
            if r as f64 > half && 1.0 - total < TAIL_TOLERANCE {
                break;
            }
        }
        atoms.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
        return AtomList { atoms, truncated_mass: (1.0 - total).max(0.0) };
    }
    let (p, _) = poisson_atoms(t / s as f64, TAIL_TOLERANCE / s as f64);
    let mut dist: Vec<(Complex64, f64)> = vec![(Complex64::new(0.0, 0.0), 1.0)];
    for k in 0..s {
        let w = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / s as f64);
        let mut next: Vec<(Complex64, f64)> = Vec::with_capacity(dist.len() * p.len());
        for (z, m) in &dist {
            for (c, pc) in p.iter().enumerate() {
                next.push((z + w * c as f64, m * pc));
            }
        }
        dist = merge_atoms(next);
    }
    let total: f64 = dist.iter().map(|a| a.1).sum();
    dist.retain(|a| a.1 > 0.0);
    AtomList { atoms: dist, truncated_mass: (1.0 - total).max(0.0) }
}

fn merge_atoms(mut atoms: Vec<(Complex64, f64)>) -> Vec<(Complex64, f64)> {
    let key = |z: &Complex64| ((z.re * 1e8).round() as i64, (z.im * 1e8).round() as i64);
    atoms.sort_by_key(|a| key(&a.0));
    let mut out: Vec<(Complex64, f64)> = Vec::new();
    for (z, m) in atoms {
        match out.last_mut() {
            Some(last) if key(&last.0) == key(&z) => last.1 += m,
            _ => out.push((z, m)),
        }
    }
    for a in &mut out {
        if a.0.im.abs() < 1e-9 {
            a.0.im = 0.0;
        }
    }
    out
}

/// Absolutely continuous density at `x`; atoms come from [`law_atoms`].
pub fn law_density(law: &LawSpec, x: f64) -> Result<f64> {
    law.validate()?;
    Ok(match law {
        LawSpec::Gaussian(t) => {
            let t = t.as_f64();
            (-x * x / (2.0 * t)).exp() / (2.0 * PI * t).sqrt()
        }
        LawSpec::Semicircle(t) => {
            let t = t.as_f64();
            let v = 4.0 * t - x * x;
            if v > 0.0 {
                v.sqrt() / (2.0 * PI * t)
            } else {
                0.0
            }
        }
        LawSpec::MarchenkoPastur(t) => {
            let t = t.as_f64();
            let v = 4.0 * t - (x - 1.0 - t).powi(2);
            if v > 0.0 && x > 0.0 {
                v.sqrt() / (2.0 * PI * x)
            } else {
                0.0
            }
        }
        LawSpec::PointMass(_) | LawSpec::Poisson(_) => 0.0,
        LawSpec::Bessel(Modulus::Finite(s), _) if *s <= 2 => 0.0,
        LawSpec::Circular(_) | LawSpec::ComplexGaussian(_) | LawSpec::Bessel(..) => {
            return Err(Error::NoRealDensity(law.name().into()))
        }
        _ => return Err(Error::InvalidParameter(format!("{} has no closed-form density", law.name()))),
    })
}

/// Support interval of the continuous part, for grid construction.
pub fn law_support(law: &LawSpec) -> Option<(f64, f64)> {
    match law {
        LawSpec::Semicircle(t) => {
            let r = 2.0 * t.as_f64().sqrt();
            Some((-r, r))
        }
        LawSpec::MarchenkoPastur(t) => {
            let r = t.as_f64().sqrt();
            Some(((1.0 - r).powi(2), (1.0 + r).powi(2)))
        }
        LawSpec::Gaussian(t) => {
            let r = 8.0 * t.as_f64().sqrt();
            Some((-r, r))
        }
        _ => None,
    }
}

/// Density on a grid together with the real atoms.
pub fn law_density_grid(law: &LawSpec, grid: &[f64]) -> Result<crate::transforms::DensityGrid> {
    let densities = grid.iter().map(|&x| law_density(law, x)).collect::<Result<Vec<_>>>()?;
    let atoms = law_atoms(law)?.real_atoms();
    let mut out = crate::transforms::DensityGrid { points: grid.to_vec(), densities, atoms, mass_defect: 0.0 };
    out.mass_defect = (out.continuous_mass() + out.atom_mass() - 1.0).abs();
    Ok(out)
}

//! Cauchy, R and S transforms on truncated series, free and classical
//! convolution of moment sequences, Stieltjes inversion and Hankel checks.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cumulants::{
    cumulants_from_moments, moments_from_cumulants, same_order, CumulantSequence, Flavor, MomentSequence,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::series::{FormalSeries, SeriesVar};

/// `G(ξ) = ξ⁻¹ + M₁ξ⁻² + … + M_nξ^{-(n+1)}`; coefficient `i` multiplies `ξ^{-i}`.
pub fn cauchy_from_moments<T: Scalar>(m: &MomentSequence<T>) -> FormalSeries<T> {
    let mut coeffs = vec![T::zero(), T::one()];
    coeffs.extend(m.values.iter().cloned());
    FormalSeries::new(coeffs, SeriesVar::InvXi)
}

/// R-transform `Σ κ_n z^{n−1}`, found by inverting `G` compositionally.
pub fn r_from_moments<T: Scalar>(m: &MomentSequence<T>) -> Result<FormalSeries<T>> {
    if m.order() == 0 {
        return Err(Error::InvalidParameter("need at least one moment".into()));
    }
    // G as a power series in w = 1/ξ
    let g = cauchy_from_moments(m).with_var(SeriesVar::Z);
    let h = g.reverse()?;
    let u = h.shift_down()?;
    let one = FormalSeries::one(u.order());
    u.reciprocal()?.sub(&one).shift_down()
}

/// Free moments from an R-series of order n−1.
pub fn moments_from_r<T: Scalar>(r: &FormalSeries<T>) -> MomentSequence<T> {
    moments_from_cumulants(&CumulantSequence::new(r.coeffs().to_vec(), Flavor::Free))
}

/// `K(z) = 1/z + R(z)` multiplied by z, i.e. `1 + z R(z)`.
pub fn k_times_z<T: Scalar>(r: &FormalSeries<T>) -> FormalSeries<T> {
    let zr = r.shift_up();
    let mut c = zr.into_coeffs();
    c[0] = T::one();
    FormalSeries::in_z(c)
}

/// S-transform: `ψ = Σ_{k≥1} M_k z^k`, `χ = ψ^{⟨−1⟩}`, `S = (1 + z)·χ(z)/z`.
pub fn s_from_moments<T: Scalar>(m: &MomentSequence<T>) -> Result<FormalSeries<T>> {
    if m.order() == 0 || m.values[0].is_negligible() {
        return Err(Error::UndefinedSTransform);
    }
    let mut psi = vec![T::zero()];
    psi.extend(m.values.iter().cloned());
    let chi = FormalSeries::in_z(psi).reverse()?;
    let chi_over_z = chi.shift_down()?;
    let one_plus_z = FormalSeries::in_z(vec![T::one(), T::one()]);
    Ok(chi_over_z.mul(&pad(&one_plus_z, chi_over_z.order())))
}

/// Moments `M_1 … M_{n+1}` recovered from an S-series of order n.
pub fn moments_from_s<T: Scalar>(s: &FormalSeries<T>) -> Result<MomentSequence<T>> {
    if s.coeff(0).is_negligible() {
        return Err(Error::UndefinedSTransform);
    }
    let one_plus_z = FormalSeries::in_z(vec![T::one(), T::one()]);
    let chi = s.div(&pad(&one_plus_z, s.order()))?.shift_up();
    let psi = chi.reverse()?;
    Ok(MomentSequence::new(psi.coeffs()[1..].to_vec()))
}

fn pad<T: Scalar>(s: &FormalSeries<T>, order: usize) -> FormalSeries<T> {
    let mut c = s.coeffs().to_vec();
    c.resize(order + 1, T::zero());
    c.truncate(order + 1);
    FormalSeries::new(c, s.var())
}

/// Free cumulants add.
pub fn free_additive_convolution<T: Scalar>(a: &MomentSequence<T>, b: &MomentSequence<T>) -> Result<MomentSequence<T>> {
    add_cumulants(a, b, Flavor::Free)
}

/// Classical cumulants add.
pub fn classical_convolution<T: Scalar>(a: &MomentSequence<T>, b: &MomentSequence<T>) -> Result<MomentSequence<T>> {
    add_cumulants(a, b, Flavor::Classical)
}

fn add_cumulants<T: Scalar>(a: &MomentSequence<T>, b: &MomentSequence<T>, flavor: Flavor) -> Result<MomentSequence<T>> {
    same_order(&a.values, &b.values)?;
    let ca = cumulants_from_moments(a, flavor);
    let cb = cumulants_from_moments(b, flavor);
    let values = ca.values.into_iter().zip(cb.values).map(|(x, y)| x + y).collect();
    Ok(moments_from_cumulants(&CumulantSequence::new(values, flavor)))
}

/// S-transforms multiply; the product is re-expanded to moments.
pub fn free_multiplicative_convolution<T: Scalar>(
    a: &MomentSequence<T>,
    b: &MomentSequence<T>,
) -> Result<MomentSequence<T>> {
    same_order(&a.values, &b.values)?;
    let s = s_from_moments(a)?.mul(&s_from_moments(b)?);
    moments_from_s(&s)
}

/// Anything that can be evaluated off the real axis as a Cauchy transform.
pub trait CauchyTransform {
    fn eval(&self, xi: Complex64) -> Complex64;
}

impl<F: Fn(Complex64) -> Complex64> CauchyTransform for F {
    fn eval(&self, xi: Complex64) -> Complex64 {
        self(xi)
    }
}

/// Cauchy transforms with closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ClosedCauchy {
    /// `γ_t`: `(ξ − √(ξ−2√t)√(ξ+2√t)) / (2t)`.
    Semicircle { t: f64 },
    /// `π_t`: `(ξ + 1 − t − √(ξ−a)√(ξ−b)) / (2ξ)`, `a, b = (1 ∓ √t)²`.
    MarchenkoPastur { t: f64 },
    /// `δ_c`: `1/(ξ − c)`.
    PointMass { c: f64 },
}

impl CauchyTransform for ClosedCauchy {
    fn eval(&self, xi: Complex64) -> Complex64 {
        match *self {
            ClosedCauchy::Semicircle { t } => {
                let r = 2.0 * t.sqrt();
                (xi - (xi - r).sqrt() * (xi + r).sqrt()) / (2.0 * t)
            }
            ClosedCauchy::MarchenkoPastur { t } => {
                let a = (1.0 - t.sqrt()).powi(2);
                let b = (1.0 + t.sqrt()).powi(2);
                (xi + 1.0 - t - (xi - a).sqrt() * (xi - b).sqrt()) / (2.0 * xi)
            }
            ClosedCauchy::PointMass { c } => 1.0 / (xi - c),
        }
    }
}

/// `(n, n)` Padé approximant of `Σ M_k w^k`, evaluated as `G(ξ) = w P(w)/Q(w)`
/// with `w = 1/ξ`. Approximate away from the support only.
#[derive(Clone, Debug)]
pub struct PadeCauchy {
    p: Vec<f64>,
    q: Vec<f64>,
}

impl PadeCauchy {
    /// Uses the moments `M_0 … M_{2n}`; `n = ⌊order/2⌋`.
    pub fn from_moments<T: Scalar>(m: &MomentSequence<T>) -> Result<Self> {
        let n = m.order() / 2;
        let mom = |k: usize| m.get(k).as_f64();
        let mut q = vec![1.0];
        if n > 0 {
            let a = Matrix::from_fn(n, n, |r, c| mom(n + r - c));
            let rhs: Vec<f64> = (0..n).map(|r| -mom(n + 1 + r)).collect();
            q.extend(a.solve(&rhs)?);
        }
        let p = (0..=n).map(|k| (0..=k).map(|j| q[j] * mom(k - j)).sum()).collect();
        Ok(PadeCauchy { p, q })
    }
}

impl CauchyTransform for PadeCauchy {
    fn eval(&self, xi: Complex64) -> Complex64 {
        let w = 1.0 / xi;
        let horner = |c: &[f64]| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| acc * w + x);
        w * horner(&self.p) / horner(&self.q)
    }
}

/// Density samples with separately detected atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub points: Vec<f64>,
    pub densities: Vec<f64>,
    pub atoms: Vec<(f64, f64)>,
    /// `|Σ atoms + ∫ density − 1|` with the trapezoid rule on the grid.
    pub mass_defect: f64,
}

impl DensityGrid {
    pub fn continuous_mass(&self) -> f64 {
        trapezoid(&self.points, &self.densities)
    }

    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,density\n");
        for (x, d) in self.points.iter().zip(&self.densities) {
            s.push_str(&format!("{x},{d}\n"));
        }
        s
    }
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2).zip(y.windows(2)).map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1])).sum()
}

/// `ε·|Im G|` above this multiple of `ε` marks an atom candidate.
pub const ATOM_THRESHOLD: f64 = 10.0;

/// Density `−Im G(x + iε)/π` on the grid. Points where `|Im G| > 10` are
/// atom candidates: each contiguous run is refined to the peak of `|Im G|`
/// and its mass estimated by Richardson extrapolation `2m(ε/2) − m(ε)` of
/// `m(ε) = ε|Im G(x + iε)|`. Densities at candidate points are reported as 0.
pub fn stieltjes_invert<G>(g: &G, grid: &[f64], eps: f64) -> Result<DensityGrid>
where
    G: CauchyTransform + Sync + ?Sized,
{
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("grid must be strictly increasing".into()));
    }
    let im: Vec<f64> = grid.par_iter().map(|&x| g.eval(Complex64::new(x, eps)).im).collect();
    let candidate: Vec<bool> = im.iter().map(|v| v.abs() > ATOM_THRESHOLD).collect();
    let mut densities: Vec<f64> =
        im.iter().zip(&candidate).map(|(v, &c)| if c { 0.0 } else { -v / std::f64::consts::PI }).collect();
    let mut atoms = Vec::new();
    let mut i = 0;
    while i < grid.len() {
        if !candidate[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < grid.len() && candidate[i] {
            i += 1;
        }
        let lo = if start > 0 { grid[start - 1] } else { grid[start] };
        let hi = if i < grid.len() { grid[i] } else { grid[i - 1] };
        let peak = (start..i).max_by(|&a, &b| im[a].abs().total_cmp(&im[b].abs())).unwrap();
        let x0 = refine_peak(g, lo, hi, grid[peak], eps);
        let m = |e: f64| e * g.eval(Complex64::new(x0, e)).im.abs();
        atoms.push((x0, 2.0 * m(eps / 2.0) - m(eps)));
    }
    for d in densities.iter_mut() {
        if *d < 0.0 && *d > -1e-12 {
            *d = 0.0;
        }
    }
    let mut out = DensityGrid { points: grid.to_vec(), densities, atoms, mass_defect: 0.0 };
    out.mass_defect = (out.continuous_mass() + out.atom_mass() - 1.0).abs();
    Ok(out)
}

fn refine_peak<G: CauchyTransform + ?Sized>(g: &G, mut lo: f64, mut hi: f64, start: f64, eps: f64) -> f64 {
    let f = |x: f64| g.eval(Complex64::new(x, eps)).im.abs();
    if hi <= lo {
        return start;
    }
    // golden-section search for the maximum
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        if hi - lo < eps * 1e-3 {
            break;
        }
        let a = hi - r * (hi - lo);
        let b = lo + r * (hi - lo);
        if f(a) >= f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let x = 0.5 * (lo + hi);
    if f(x) >= f(start) {
        x
    } else {
        start
    }
}

/// Evenly spaced grid including both end points.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HankelReport<T> {
    pub passed: bool,
    /// Smallest `d` with a negative determinant.
    pub first_failure: Option<usize>,
    /// `det(M_{i+j})_{0≤i,j≤d}` for `d = 0, 1, …`.
    pub determinants: Vec<T>,
}

/// Hankel determinants up to the available order must all be nonnegative.
pub fn hankel_check<T: Scalar>(m: &MomentSequence<T>) -> Result<HankelReport<T>> {
    let mut determinants = Vec::new();
    let mut first_failure = None;
    for d in 0..=m.order() / 2 {
        let h = Matrix::from_fn(d + 1, d + 1, |i, j| m.get(i + j));
        let det = h.det()?;
        let negative = if T::is_exact() {
            !det.is_zero() && det.as_f64() < 0.0
        } else {
            let scale = (0..=2 * d).map(|k| m.get(k).magnitude()).fold(1.0, f64::max).powi(d as i32 + 1);
            det.as_f64() < -1e-10 * scale
        };
        if negative && first_failure.is_none() {
            first_failure = Some(d);
        }
        determinants.push(det);
    }
    Ok(HankelReport { passed: first_failure.is_none(), first_failure, determinants })
}

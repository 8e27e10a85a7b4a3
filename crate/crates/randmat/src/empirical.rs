use freeprob::partitions::{Color, ColoredWord};
use freeprob::transforms::DensityGrid;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::{eigenvalues, sample_trial, CMatrix, EnsembleSpec};
use crate::rng::trial_rng;
use crate::{Error, Result};

/// What to average: `tr(A^j)` for `j = 1..=k`, or one colored word in `(Z, Z*)`.
#[derive(Clone, Debug, PartialEq)]
pub enum MomentRequest {
    Orders(usize),
    Word(ColoredWord),
}

/// Trial means with standard errors of the mean.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    pub trials: usize,
}

impl MomentEstimate {
    /// Reduces per-trial rows already sorted by trial index.
    fn from_rows(rows: &[Vec<f64>]) -> Self {
        let t = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut values = vec![0.0; width];
        for r in rows {
            for (v, x) in values.iter_mut().zip(r) {
                *v += x;
            }
        }
        values.iter_mut().for_each(|v| *v /= t as f64);
        let stderr = (0..width)
            .map(|j| {
                if t < 2 {
                    return 0.0;
                }
                let ss: f64 = rows.iter().map(|r| (r[j] - values[j]).powi(2)).sum();
                (ss / (t - 1) as f64 / t as f64).sqrt()
            })
            .collect();
        MomentEstimate { values, stderr, trials: t }
    }
}

/// Pooled eigenvalues of the rescaled samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub seed: u64,
    pub trials: usize,
    pub eigenvalues: Vec<f64>,
}

impl SpectrumSample {
    pub fn mean(&self) -> f64 {
        self.eigenvalues.iter().sum::<f64>() / self.eigenvalues.len() as f64
    }

    /// Pooled `tr(A^j)` for `j = 1..=k`.
    pub fn moments(&self, k: usize) -> Vec<f64> {
        let len = self.eigenvalues.len() as f64;
        (1..=k as i32).map(|j| self.eigenvalues.iter().map(|x| x.powi(j)).sum::<f64>() / len).collect()
    }

    /// Normalized histogram on bins of width `bin` aligned to multiples of `bin`.
    pub fn histogram(&self, bin: f64) -> Result<DensityGrid> {
        if !(bin > 0.0 && bin.is_finite()) {
            return Err(Error::InvalidParameter(format!("bin width {bin}")));
        }
        let (Some(&lo), Some(&hi)) = (self.eigenvalues.first(), self.eigenvalues.last()) else {
            return Err(Error::InvalidParameter("empty spectrum".into()));
        };
        let start = (lo / bin).floor();
        let nbins = ((hi / bin).floor() - start) as usize + 1;
        let mut counts = vec![0usize; nbins];
        for &x in &self.eigenvalues {
            let b = ((x / bin).floor() - start) as usize;
            counts[b.min(nbins - 1)] += 1;
        }
        let total = self.eigenvalues.len() as f64;
        Ok(DensityGrid {
            points: (0..nbins).map(|b| (start + b as f64 + 0.5) * bin).collect(),
            densities: counts.iter().map(|&c| c as f64 / (total * bin)).collect(),
            atoms: Vec::new(),
            mass_defect: 0.0,
        })
    }
}

fn sorted(trials: &[u64]) -> Result<Vec<u64>> {
    if trials.is_empty() {
        return Err(Error::InvalidParameter("no trials".into()));
    }
    let mut t = trials.to_vec();
    t.sort_unstable();
    Ok(t)
}

fn scaled(spec: &EnsembleSpec, seed: u64, trial: u64) -> Result<CMatrix> {
    Ok(sample_trial(spec, seed, trial)? * Complex64::new(spec.rescaling(), 0.0))
}

fn normalized_trace(a: &CMatrix) -> Complex64 {
    a.trace() / a.nrows() as f64
}

fn word_moment(z: &CMatrix, word: &ColoredWord) -> f64 {
    let zs = z.adjoint();
    let mut acc = CMatrix::identity(z.nrows(), z.ncols());
    for c in &word.letters {
        acc = match c {
            Color::White => &acc * z,
            Color::Black => &acc * &zs,
        };
    }
    normalized_trace(&acc).re
}

fn trial_moments(spec: &EnsembleSpec, seed: u64, trial: u64, req: &MomentRequest) -> Result<Vec<f64>> {
    let z = scaled(spec, seed, trial)?;
    Ok(match req {
        MomentRequest::Word(w) => vec![word_moment(&z, w)],
        MomentRequest::Orders(k) if spec.is_self_adjoint() => {
            let ev = eigenvalues(&z);
            (1..=*k as i32).map(|j| ev.iter().map(|x| x.powi(j)).sum::<f64>() / ev.len() as f64).collect()
        }
        MomentRequest::Orders(k) => {
            let mut out = Vec::with_capacity(*k);
            let mut p = z.clone();
            for j in 1..=*k {
                if j > 1 {
                    p = &p * &z;
                }
                out.push(normalized_trace(&p).re);
            }
            out
        }
    })
}

/// Averages normalized traces over the listed trials of `seed`; the
/// result does not depend on the order of `trials`.
pub fn empirical_moments(spec: &EnsembleSpec, seed: u64, trials: &[u64], req: &MomentRequest) -> Result<MomentEstimate> {
    spec.validate()?;
    let trials = sorted(trials)?;
    let rows = trials
        .par_iter()
        .map(|&t| trial_moments(spec, seed, t, req))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentEstimate::from_rows(&rows))
}

pub fn spectrum_sample(spec: &EnsembleSpec, seed: u64, trials: &[u64]) -> Result<SpectrumSample> {
    if !spec.is_self_adjoint() {
        return Err(Error::NotSelfAdjoint(spec.name().into()));
    }
    spec.validate()?;
    let trials = sorted(trials)?;
    let per = trials
        .par_iter()
        .map(|&t| scaled(spec, seed, t).map(|z| eigenvalues(&z)))
        .collect::<Result<Vec<_>>>()?;
    let mut eigenvalues: Vec<f64> = per.into_iter().flatten().collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(SpectrumSample { seed, trials: trials.len(), eigenvalues })
}

/// Pooled eigenvalue histogram with bin width `bin`.
pub fn empirical_spectrum(spec: &EnsembleSpec, seed: u64, trials: &[u64], bin: f64) -> Result<DensityGrid> {
    spectrum_sample(spec, seed, trials)?.histogram(bin)
}

/// `tr(ABAB)` for independent rescaled Wigner matrices of variance 1;
/// trial `t` uses streams `2t` and `2t + 1`.
pub fn abab_moment(n: usize, seed: u64, trials: &[u64]) -> Result<MomentEstimate> {
    let spec = EnsembleSpec::Wigner { n, t: 1.0 };
    spec.validate()?;
    let trials = sorted(trials)?;
    let rows = trials
        .par_iter()
        .map(|&t| {
            let a = scaled(&spec, seed, 2 * t)?;
            let b = scaled(&spec, seed, 2 * t + 1)?;
            let ab = &a * &b;
            Ok(vec![normalized_trace(&(&ab * &ab)).re])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentEstimate::from_rows(&rows))
}

/// Moments `E[X^j]`, `j = 1..=k`, of the number of fixed points among the
/// first `s` letters of a uniform permutation of `n`; `samples` draws split
/// into chunks of 1000, one stream per chunk.
pub fn permutation_fixed_point_moments(n: usize, s: usize, samples: usize, k: usize, seed: u64) -> Result<Vec<f64>> {
    if s > n || samples == 0 {
        return Err(Error::InvalidParameter(format!("need 0 < samples and s <= n, got s = {s}, n = {n}")));
    }
    const CHUNK: usize = 1000;
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = trial_rng(seed, c as u64);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut acc = vec![0.0; k];
            for _ in 0..CHUNK.min(samples - c * CHUNK) {
                perm.shuffle(&mut rng);
                let x = (0..s).filter(|&i| perm[i] == i).count() as f64;
                for (j, a) in acc.iter_mut().enumerate() {
                    *a += x.powi(j as i32 + 1);
                }
            }
            acc
        })
        .collect();
    let mut out = vec![0.0; k];
    for row in sums {
        for (o, v) in out.iter_mut().zip(row) {
            *o += v;
        }
    }
    Ok(out.into_iter().map(|v| v / samples as f64).collect())
}

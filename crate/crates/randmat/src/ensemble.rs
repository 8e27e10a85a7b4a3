use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::rng::{trial_rng, GaussianSource};
use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Largest matrix dimension accepted by [`EnsembleSpec::validate`].
pub const MAX_DIMENSION: usize = 1000;

/// Linear map applied to the `n × n` tensor factor of a block matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockMap {
    Identity,
    Transpose,
    /// `A ↦ tr(A)·1` with the normalized trace.
    TraceOne,
    /// `A ↦ A^δ`, the diagonal part.
    Diagonal,
}

impl BlockMap {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "identity" | "id" => Ok(BlockMap::Identity),
            "transpose" | "t" => Ok(BlockMap::Transpose),
            "trace_one" | "trace" => Ok(BlockMap::TraceOne),
            "diagonal" | "delta" => Ok(BlockMap::Diagonal),
            _ => Err(Error::InvalidParameter(format!("block map {s:?}"))),
        }
    }
}

/// Normalization of `W = YY*` before the block map is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockScale {
    Raw,
    /// `W/d`.
    OverD,
    /// `W/(dm)`; the block-transposed matrix then has mean 1.
    OverDm,
}

impl BlockScale {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "raw" | "1" => Ok(BlockScale::Raw),
            "d" => Ok(BlockScale::OverD),
            "dm" => Ok(BlockScale::OverDm),
            _ => Err(Error::InvalidParameter(format!("block scale {s:?}, expected raw, d or dm"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleSpec {
    Wigner { n: usize, t: f64 },
    ComplexGaussian { n: usize, t: f64 },
    /// `W = YY*`, `Y` of size `n × m`.
    Wishart { n: usize, m: usize },
    /// `(id ⊗ map)(YY*)`, `Y` of size `dn × dm`.
    BlockWishart { d: usize, n: usize, m: usize, map: BlockMap, scale: BlockScale },
}

impl EnsembleSpec {
    pub fn dimension(&self) -> usize {
        match *self {
            EnsembleSpec::Wigner { n, .. } | EnsembleSpec::ComplexGaussian { n, .. } => n,
            EnsembleSpec::Wishart { n, .. } => n,
            EnsembleSpec::BlockWishart { d, n, .. } => d * n,
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        !matches!(self, EnsembleSpec::ComplexGaussian { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            EnsembleSpec::Wigner { .. } => "wigner",
            EnsembleSpec::ComplexGaussian { .. } => "complex_gaussian",
            EnsembleSpec::Wishart { .. } => "wishart",
            EnsembleSpec::BlockWishart { .. } => "block_wishart",
        }
    }

    /// Factor applied to a sample before moments or spectra are taken:
    /// `1/√N` for Wigner and Gaussian matrices, `1/N` for Wishart, the
    /// chosen [`BlockScale`] for block-modified Wishart.
    pub fn rescaling(&self) -> f64 {
        match *self {
            EnsembleSpec::Wigner { n, .. } | EnsembleSpec::ComplexGaussian { n, .. } => 1.0 / (n as f64).sqrt(),
            EnsembleSpec::Wishart { n, .. } => 1.0 / n as f64,
            EnsembleSpec::BlockWishart { d, m, scale, .. } => match scale {
                BlockScale::Raw => 1.0,
                BlockScale::OverD => 1.0 / d as f64,
                BlockScale::OverDm => 1.0 / (d * m) as f64,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = match *self {
            EnsembleSpec::Wigner { n, t } | EnsembleSpec::ComplexGaussian { n, t } => {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::InvalidParameter(format!("variance t = {t} must be positive")));
                }
                n > 0
            }
            EnsembleSpec::Wishart { n, m } => n > 0 && m > 0,
            EnsembleSpec::BlockWishart { d, n, m, .. } => d > 0 && n > 0 && m > 0,
        };
        if !positive {
            return Err(Error::InvalidParameter("dimensions must be positive".into()));
        }
        let size = self.dimension();
        let inner = match *self {
            EnsembleSpec::Wishart { m, .. } => m,
            EnsembleSpec::BlockWishart { d, m, .. } => d * m,
            _ => 0,
        };
        for s in [size, inner] {
            if s > MAX_DIMENSION {
                return Err(Error::TooLarge { size: s, cap: MAX_DIMENSION });
            }
        }
        Ok(())
    }
}

fn gaussian_matrix<R: rand::Rng>(g: &mut GaussianSource<R>, rows: usize, cols: usize, var: f64) -> CMatrix {
    // row-major fill so the stream layout does not depend on nalgebra's storage
    let mut a = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            a[(i, j)] = g.complex(var);
        }
    }
    a
}

/// Unscaled sample of trial `trial` under master seed `seed`.
pub fn sample_trial(spec: &EnsembleSpec, seed: u64, trial: u64) -> Result<CMatrix> {
    spec.validate()?;
    let mut g = GaussianSource::new(trial_rng(seed, trial));
    Ok(match *spec {
        EnsembleSpec::ComplexGaussian { n, t } => gaussian_matrix(&mut g, n, n, t),
        EnsembleSpec::Wigner { n, t } => {
            let mut a = CMatrix::zeros(n, n);
            for i in 0..n {
                a[(i, i)] = Complex64::new(t.sqrt() * g.normal(), 0.0);
                for j in i + 1..n {
                    let z = g.complex(t);
                    a[(i, j)] = z;
                    a[(j, i)] = z.conj();
                }
            }
            a
        }
        EnsembleSpec::Wishart { n, m } => {
            let y = gaussian_matrix(&mut g, n, m, 1.0);
            &y * y.adjoint()
        }
        EnsembleSpec::BlockWishart { d, n, m, map, .. } => {
            let y = gaussian_matrix(&mut g, d * n, d * m, 1.0);
            block_modify(&(&y * y.adjoint()), n, map)?
        }
    })
}

/// Unscaled sample for `(spec, seed)`; equal to trial 0 of that seed.
pub fn sample(spec: &EnsembleSpec, seed: u64) -> Result<CMatrix> {
    sample_trial(spec, seed, 0)
}

/// Applies `map` to the second factor of `M_d ⊗ M_n`, rows and columns
/// indexed by `(i, a) ↦ i·n + a`.
pub fn block_modify(w: &CMatrix, n: usize, map: BlockMap) -> Result<CMatrix> {
    let size = w.nrows();
    if n == 0 || w.ncols() != size || size % n != 0 {
        return Err(Error::BadDivisibility { size, d: if n == 0 { 0 } else { size / n }, n });
    }
    let d = size / n;
    let at = |i: usize, a: usize| i * n + a;
    let mut out = CMatrix::zeros(size, size);
    for i in 0..d {
        for j in 0..d {
            match map {
                BlockMap::Identity => {
                    for a in 0..n {
                        for b in 0..n {
                            out[(at(i, a), at(j, b))] = w[(at(i, a), at(j, b))];
                        }
                    }
                }
                BlockMap::Transpose => {
                    for a in 0..n {
                        for b in 0..n {
                            out[(at(i, a), at(j, b))] = w[(at(i, b), at(j, a))];
                        }
                    }
                }
                BlockMap::TraceOne => {
                    let tr: Complex64 = (0..n).map(|c| w[(at(i, c), at(j, c))]).sum::<Complex64>() / n as f64;
                    for a in 0..n {
                        out[(at(i, a), at(j, a))] = tr;
                    }
                }
                BlockMap::Diagonal => {
                    for a in 0..n {
                        out[(at(i, a), at(j, a))] = w[(at(i, a), at(j, a))];
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Sorted eigenvalues of the Hermitian part `(A + A*)/2`.
pub fn eigenvalues(a: &CMatrix) -> Vec<f64> {
    let h = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for trial `trial` of a run seeded with `master`.
pub fn trial_rng(master: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(trial);
    rng
}

/// Box–Muller normals drawn from the raw uniform stream.
pub struct GaussianSource<R> {
    rng: R,
    spare: Option<f64>,
}

impl<R: Rng> GaussianSource<R> {
    pub fn new(rng: R) -> Self {
        GaussianSource { rng, spare: None }
    }

    fn pair(&mut self) -> (f64, f64) {
        // 53-bit uniforms; 1 - u keeps the logarithm finite
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2 = self.rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let th = std::f64::consts::TAU * u2;
        (r * th.cos(), r * th.sin())
    }

    /// Standard real normal.
    pub fn normal(&mut self) -> f64 {
        if let Some(x) = self.spare.take() {
            return x;
        }
        let (a, b) = self.pair();
        self.spare = Some(b);
        a
    }

    /// Complex normal with `E|z|² = var`.
    pub fn complex(&mut self, var: f64) -> num_complex::Complex64 {
        let s = (var / 2.0).sqrt();
        let (a, b) = self.pair();
        num_complex::Complex64::new(s * a, s * b)
    }

    pub fn rng_mut(&mut self) -> &mut R {
        &mut self.rng
    }
}

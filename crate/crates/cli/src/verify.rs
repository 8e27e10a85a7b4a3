//! Acceptance criteria, each a self-contained check with a short verdict.

use std::time::{Duration, Instant};

use anyhow::Result;
use freeprob::cumulants::{
    bercovici_pata, cumulants_from_moments, moments_from_cumulants, BpDirection, Flavor, MomentSequence,
};
use freeprob::exactcount::{bell, binomial, catalan, odd_double_factorial, poker_enumeration, poker_probabilities};
use freeprob::graphs::{ade_graph, circular_even_moments, theta_by_substitution, theta_from_poincare, AdeName};
use freeprob::laws::{
    compound_poisson, free_hyperspherical_exact, free_hyperspherical_moment, law_density, law_moments, DiscreteMeasure,
    LawSpec,
};
use freeprob::partitions::{count, enumerate, Category, ColoredWord, Partition};
use freeprob::scalar::{fmt_rational, int, rat};
use freeprob::series::FormalSeries;
use freeprob::transforms::{free_additive_convolution, linspace, r_from_moments, s_from_moments, stieltjes_invert, ClosedCauchy};
use freeprob::weingarten::{
    gram_determinant, gram_determinant_formula, integrate_monomial, sn_integral_closed_form,
    truncated_character_stirling, truncated_character_trace, weingarten_k, EasyGroup, GroupSeries,
};
use freeprob::{ExactSeries, Rational, Scalar};
use freeprob_randmat as rm;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::commands::Suite;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(rename = "seconds", serialize_with = "seconds")]
    pub elapsed: Duration,
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, Check); 14] = [
    (1, "poker exactness", poker),
    (2, "Gram determinant", gram_det),
    (3, "Weingarten O_N at k=2", o_table),
    (4, "S_N integrals", sn_oracle),
    (5, "moment-cumulant", moment_cumulant),
    (6, "transform identities", transform_identities),
    (7, "Stieltjes inversion", stieltjes),
    (8, "Monte Carlo Wigner", mc_wigner),
    (9, "Monte Carlo Wishart", mc_wishart),
    (10, "block-transposed Wishart", mc_block),
    (11, "truncated characters", truncated),
    (12, "free hyperspherical", hyperspherical),
    (13, "graphs", graphs),
    (14, "category counts", category_counts),
];

pub fn suite_ids(suite: Suite) -> Vec<u8> {
    match suite {
        Suite::Exact => vec![1, 2, 3, 4, 5, 6, 7, 12, 13, 14],
        Suite::Montecarlo => vec![8, 9, 10, 11],
        Suite::All => (1..=14).collect(),
    }
}

pub fn run_criteria(ids: &[u8], seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .filter(|(id, ..)| ids.contains(id))
        .map(|&(id, name, check)| {
            let start = Instant::now();
            let (passed, detail) = match check(seed) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e:#}")),
            };
            CriterionOutcome { id, name: name.to_string(), passed, detail, elapsed: start.elapsed() }
        })
        .collect()
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    run_criteria(&(1..=14).collect::<Vec<_>>(), seed)
}

fn verdict(failures: Vec<String>, ok: impl Into<String>) -> (bool, String) {
    if failures.is_empty() {
        (true, ok.into())
    } else {
        (false, failures.join("; "))
    }
}

fn poker(_: u64) -> Result<(bool, String)> {
    let expected = [
        ("one_pair", rat(480, 899)),
        ("two_pairs", rat(108, 899)),
        ("three_of_a_kind", rat(48, 899)),
        ("full_house", rat(6, 899)),
        ("straight", rat(9, 1798)),
        ("four_of_a_kind", rat(1, 899)),
        ("flush", rat(9, 25172)),
        ("straight_flush", rat(1, 12586)),
    ];
    let probs = poker_probabilities();
    let counts = poker_enumeration();
    let total = Rational::from_integer(binomial(32, 5));
    let mut failures = Vec::new();
    for (hand, paper) in &expected {
        let ours = &probs[hand];
        let enumerated = Rational::from_integer(counts.get(hand).cloned().unwrap_or_default()) / &total;
        if ours != paper {
            failures.push(format!("{hand}: {} vs stated {}", fmt_rational(ours), fmt_rational(paper)));
        }
        if &enumerated != ours {
            failures.push(format!("{hand}: enumeration gives {}", fmt_rational(&enumerated)));
        }
    }
    Ok(verdict(failures, "8 fractions match the enumeration"))
}

fn gram_det(_: u64) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for k in 1..=5 {
        for n in 1..=8u64 {
            let det = gram_determinant(k, n)?;
            if det != gram_determinant_formula(k, n) {
                failures.push(format!("k={k} N={n}"));
            }
            if (n as usize) < k && !det.is_zero() {
                failures.push(format!("k={k} N={n} should vanish"));
            }
        }
    }
    Ok(verdict(failures, "k<=5, N<=8 exact"))
}

fn o_table(_: u64) -> Result<(bool, String)> {
    let o = EasyGroup::classical(GroupSeries::O);
    let w4 = ColoredWord::uncolored(4);
    let mut failures = Vec::new();
    for n in 3..=10i64 {
        let t = weingarten_k(o, 4, n as u64)?;
        let c = rat(1, n * (n - 1) * (n + 2));
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { int(n + 1) } else { int(-1) };
                if t.wg[(i, j)] != &c * e {
                    failures.push(format!("table N={n} ({i},{j})"));
                }
            }
        }
        let nn = n as u64;
        let integrals = [
            (integrate_monomial(o, nn, &[1, 1, 1, 1], &[1, 1, 1, 1], &w4)?, rat(3, n * (n + 2))),
            (integrate_monomial(o, nn, &[1, 1, 1, 1], &[1, 1, 2, 2], &w4)?, rat(1, n * (n + 2))),
            (integrate_monomial(o, nn, &[1, 1, 2, 2], &[1, 1, 2, 2], &w4)?, rat(n + 1, n * (n - 1) * (n + 2))),
        ];
        for (idx, (got, want)) in integrals.iter().enumerate() {
            if got != want {
                failures.push(format!("integral {} at N={n}: {}", idx + 1, fmt_rational(got)));
            }
        }
    }
    Ok(verdict(failures, "N=3..10 tables and three integrals exact"))
}

fn patterns(len: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n.pow(len as u32))
        .map(|mut x| {
            (0..len)
                .map(|_| {
                    let d = x % n;
                    x /= n;
                    d + 1
                })
                .collect()
        })
        .collect()
}

fn sn_oracle(_: u64) -> Result<(bool, String)> {
    let s = EasyGroup::classical(GroupSeries::S);
    let n = 5;
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for len in 1..=4 {
        let word = ColoredWord::uncolored(len);
        let ps = patterns(len, n);
        for i in &ps {
            for j in &ps {
                checked += 1;
                if integrate_monomial(s, n as u64, i, j, &word)? != sn_integral_closed_form(n as u64, i, j) {
                    failures.push(format!("{i:?} {j:?}"));
                }
            }
        }
    }
    failures.truncate(5);
    Ok(verdict(failures, format!("{checked} index patterns at N=5")))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-20..=20), rng.random_range(1..=9))
}

fn moment_cumulant(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for point in 0..10 {
        let m: Vec<Rational> = (0..4).map(|_| random_rational(&mut rng)).collect();
        let (m1, m2, m3, m4) = (&m[0], &m[1], &m[2], &m[3]);
        let k2 = m2 - m1 * m1;
        let k3 = m3 - int(3) * m1 * m2 + int(2) * m1 * m1 * m1;
        let classical = vec![
            m1.clone(),
            k2.clone(),
            k3.clone(),
            m4 - int(4) * m1 * m3 - int(3) * m2 * m2 + int(12) * m1 * m1 * m2 - int(6) * m1 * m1 * m1 * m1,
        ];
        let free = vec![
            m1.clone(),
            k2,
            k3,
            m4 - int(4) * m1 * m3 - int(2) * m2 * m2 + int(10) * m1 * m1 * m2 - int(5) * m1 * m1 * m1 * m1,
        ];
        let seq = MomentSequence::new(m.clone());
        if cumulants_from_moments(&seq, Flavor::Classical).values != classical {
            failures.push(format!("classical closed form at point {point}"));
        }
        if cumulants_from_moments(&seq, Flavor::Free).values != free {
            failures.push(format!("free closed form at point {point}"));
        }
        let long = MomentSequence::new((0..10).map(|_| random_rational(&mut rng)).collect());
        for flavor in [Flavor::Classical, Flavor::Free] {
            if moments_from_cumulants(&cumulants_from_moments(&long, flavor)) != long {
                failures.push(format!("{flavor:?} round trip at point {point}"));
            }
        }
    }
    let bell5 = MomentSequence::new([1, 2, 5, 15, 52].iter().map(|&x| int(x)).collect());
    let catalan5: Vec<Rational> = [1, 2, 5, 14, 42].iter().map(|&x| int(x)).collect();
    if bercovici_pata(&bell5, BpDirection::ClassicalToFree).values != catalan5 {
        failures.push("Bercovici-Pata image of (1,2,5,15,52)".into());
    }
    Ok(verdict(failures, "closed forms at 10 points, round trip to order 10, BP map exact"))
}

fn padded(s: &ExactSeries, order: usize) -> Vec<Rational> {
    let mut c = s.coeffs().to_vec();
    c.resize(order + 1, Rational::zero());
    c.truncate(order + 1);
    c
}

fn transform_identities(_: u64) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mp = |t: &Rational, k| law_moments(&LawSpec::MarchenkoPastur(t.clone()), k);
    let sc = |t: &Rational, k| law_moments(&LawSpec::Semicircle(t.clone()), k);
    for t in [rat(1, 2), int(1), int(2)] {
        let r = r_from_moments(&mp(&t, 11)?)?;
        if padded(&r, 10) != vec![t.clone(); 11] {
            failures.push(format!("R(pi_{}) != t/(1-z)", fmt_rational(&t)));
        }
        let s = s_from_moments(&mp(&t, 12)?)?;
        let want: Vec<Rational> = (0..=10).map(|j| num_traits::pow(int(-1) / &t, j) / &t).collect();
        if padded(&s, 10) != want {
            failures.push(format!("S(pi_{}) != 1/(t+z)", fmt_rational(&t)));
        }
    }
    for (s, t) in [(rat(1, 3), rat(5, 2)), (int(1), int(2)), (rat(1, 2), rat(1, 2))] {
        let st = &s + &t;
        if free_additive_convolution(&sc(&s, 8)?, &sc(&t, 8)?)? != sc(&st, 8)? {
            failures.push("semicircle semigroup".into());
        }
        if free_additive_convolution(&mp(&s, 8)?, &mp(&t, 8)?)? != mp(&st, 8)? {
            failures.push("free Poisson semigroup".into());
        }
    }
    for (m, n) in [(1i64, 3i64), (2, 2), (4, 5)] {
        let s = rat(m * (n + 1), 2);
        let t = rat(m * (n - 1), 2);
        let rho = DiscreteMeasure::from_atoms(vec![(int(-1), t.clone()), (int(1), s.clone())]);
        let r = r_from_moments(&compound_poisson(&rho, Flavor::Free, 9))?;
        let want = FormalSeries::geometric(s, int(1), 8).sub(&FormalSeries::geometric(t, int(-1), 8));
        if padded(&r, 8) != want.coeffs() {
            failures.push(format!("R decomposition at m={m}, n={n}"));
        }
    }
    Ok(verdict(failures, "R and S closed forms to order 10, semigroups and R decomposition to order 8"))
}

fn stieltjes(_: u64) -> Result<(bool, String)> {
    let grid = linspace(-1.9, 1.9, 381);
    let d = stieltjes_invert(&ClosedCauchy::Semicircle { t: 1.0 }, &grid, 1e-4)?;
    let law = LawSpec::Semicircle(int(1));
    let mut err: f64 = 0.0;
    for (&x, &y) in grid.iter().zip(&d.densities) {
        err = err.max((y - law_density(&law, x)?).abs());
    }
    let mp = stieltjes_invert(&ClosedCauchy::MarchenkoPastur { t: 0.5 }, &linspace(-0.5, 3.5, 801), 1e-4)?;
    let atom = mp.atoms.iter().filter(|a| a.0.abs() < 1e-2).map(|a| a.1).sum::<f64>();
    let ok = err <= 1e-3 && (atom - 0.5).abs() <= 0.01;
    Ok((ok, format!("semicircle sup error {err:.2e}, pi_1/2 atom at 0 {atom:.4}")))
}

fn trials(n: u64) -> Vec<u64> {
    (0..n).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn mc_wigner(seed: u64) -> Result<(bool, String)> {
    let spec = rm::EnsembleSpec::Wigner { n: 300, t: 1.0 };
    let s = rm::spectrum_sample(&spec, seed, &trials(20))?;
    let m = s.moments(4);
    let bin = 0.1;
    let hist = s.histogram(bin)?;
    let law = LawSpec::Semicircle(int(1));
    let mut l1 = 0.0;
    for (&x, &h) in hist.points.iter().zip(&hist.densities) {
        l1 += (h - law_density(&law, x)?).abs() * bin;
    }
    let ok = (0.95..=1.05).contains(&m[1]) && (1.9..=2.1).contains(&m[3]) && l1 < 0.05;
    Ok((ok, format!("M2 = {:.4}, M4 = {:.4}, L1 = {l1:.4}", m[1], m[3])))
}

fn mc_wishart(seed: u64) -> Result<(bool, String)> {
    let spec = rm::EnsembleSpec::Wishart { n: 400, m: 200 };
    let m = rm::spectrum_sample(&spec, seed, &trials(10))?.moments(4);
    let exact = law_moments(&LawSpec::MarchenkoPastur(rat(1, 2)), 4)?;
    let errs: Vec<f64> = (1..=4).map(|k| rel(m[k - 1], exact.get(k).as_f64())).collect();
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    Ok((worst < 0.05, format!("moments {m:.4?}, worst relative error {worst:.4}")))
}

fn mc_block(seed: u64) -> Result<(bool, String)> {
    let (d, n, m) = (150, 2usize, 2usize);
    let spec = rm::EnsembleSpec::BlockWishart { d, n, m, map: rm::BlockMap::Transpose, scale: rm::BlockScale::OverDm };
    let s = rm::spectrum_sample(&spec, seed, &trials(6))?;
    let moments = s.moments(3);
    let mut worst: f64 = 0.0;
    for p in 1..=3 {
        let target: f64 = enumerate(Category::NC, &ColoredWord::uncolored(p))?
            .iter()
            .map(|pi| (m as f64).powi(pi.block_count() as i32) * (n as f64).powi(pi.even_block_count() as i32))
            .sum();
        worst = worst.max(rel((m as f64).powi(p as i32) * moments[p - 1], target));
    }
    let mean = s.mean();
    let ok = worst < 0.10 && (mean - 1.0).abs() < 0.05;
    Ok((ok, format!("worst relative error {worst:.4}, spectral mean {mean:.4}")))
}

fn truncated(seed: u64) -> Result<(bool, String)> {
    let s = EasyGroup::classical(GroupSeries::S);
    let mut failures = Vec::new();
    for n in 4..=8u64 {
        for k in 1..=4 {
            for cut in 1..=n {
                if truncated_character_trace(s, n, cut, k)? != truncated_character_stirling(n, cut, k) {
                    failures.push(format!("N={n} k={k} s={cut}"));
                }
            }
        }
    }
    let mc = rm::permutation_fixed_point_moments(200, 100, 100_000, 3, seed)?;
    let poisson = law_moments(&LawSpec::Poisson(rat(1, 2)), 3)?;
    for k in 1..=3 {
        let e = poisson.get(k).as_f64();
        if rel(mc[k - 1], e) >= 0.02 {
            failures.push(format!("Monte Carlo k={k}: {:.4} vs {e:.4}", mc[k - 1]));
        }
    }
    Ok(verdict(failures, format!("exact for N=4..8, Monte Carlo moments {mc:.4?}")))
}

fn hyperspherical(_: u64) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for n in 3..=10u64 {
        let v = free_hyperspherical_moment(n, 1)?;
        if (v - 1.0 / n as f64).abs() >= 1e-12 {
            failures.push(format!("l=1, N={n}: {v}"));
        }
    }
    for n in 4..=8u64 {
        let v = free_hyperspherical_moment(n, 2)?;
        let exact = free_hyperspherical_exact(n, 2)?.as_f64();
        if (v - exact).abs() >= 1e-8 {
            failures.push(format!("l=2, N={n}: {v} vs {exact}"));
        }
    }
    let n = 10_000u64;
    for l in 1..=3u32 {
        let scaled = (n as f64).powi(l as i32) * free_hyperspherical_moment(n, l)?;
        let c = Rational::from_integer(catalan(l as usize)).as_f64();
        if rel(scaled, c) >= 0.01 {
            failures.push(format!("N=10^4, l={l}: {scaled} vs {c}"));
        }
    }
    Ok(verdict(failures, "l=1 and l=2 exact, Catalan limit within 1%"))
}

fn graphs(seed: u64) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for k in 1..=5 {
        let eps = circular_even_moments(&ade_graph(AdeName::ATilde(k))?, 10)?;
        for (n, m) in eps.iter().enumerate() {
            let want = if n % k == 0 { Rational::one() } else { Rational::zero() };
            if *m != want {
                failures.push(format!("A~{}: moment {n}", 2 * k));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let c: Vec<BigInt> = (0..=12).map(|_| BigInt::from(rng.random_range(-50i64..50))).collect();
        let a = theta_from_poincare(&c, 12)?;
        let sub = theta_by_substitution(&c, 12)?;
        let agree = a.len() == sub.len()
            && a.iter().zip(&sub).all(|(x, y)| y.is_integer() && Rational::from_integer(x.clone()) == *y);
        if !agree {
            failures.push(format!("theta mismatch for {c:?}"));
            break;
        }
    }
    Ok(verdict(failures, "A~2k uniform measures and 50 random theta checks"))
}

fn category_counts(_: u64) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for k in 0..=8 {
        let w = ColoredWord::uncolored(k);
        let w2 = ColoredWord::uncolored(2 * k);
        let checks = [
            ("NC", BigInt::from(enumerate(Category::NC, &w)?.len()), catalan(k)),
            ("NC2", count(Category::NC2, &w2)?, catalan(k)),
            ("P", BigInt::from(enumerate(Category::P, &w)?.len()), bell(k)),
            ("P2", count(Category::P2, &w2)?, odd_double_factorial(2 * k)),
        ];
        for (name, got, want) in checks {
            if got != want {
                failures.push(format!("{name} at k={k}: {got} vs {want}"));
            }
        }
    }
    for k in 1..=5 {
        let nc = enumerate(Category::NC, &ColoredWord::uncolored(k))?;
        let mut images: Vec<Partition> = Vec::new();
        for p in &nc {
            let f = p.fatten()?;
            if !(f.is_pairing() && f.is_noncrossing()) || &f.shrink()? != p {
                failures.push(format!("fatten/shrink at {p}"));
            }
            images.push(f);
        }
        images.sort_by(freeprob::partitions::canonical_cmp);
        if images != enumerate(Category::NC2, &ColoredWord::uncolored(2 * k))? {
            failures.push(format!("fattening is not onto NC2({})", 2 * k));
        }
    }
    Ok(verdict(failures, "k<=8 counts exact, bijection at k<=5"))
}

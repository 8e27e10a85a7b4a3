use freeprob::laws::{law_density, law_moments, LawSpec};
use freeprob::partitions::{enumerate, Category, ColoredWord};
use freeprob::scalar::{int, rat};
use freeprob_randmat::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn trials(n: u64) -> Vec<u64> {
    (0..n).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn samples_are_deterministic() {
    let spec = EnsembleSpec::Wigner { n: 20, t: 1.0 };
    assert_eq!(sample(&spec, 7).unwrap(), sample(&spec, 7).unwrap());
    assert_ne!(sample(&spec, 7).unwrap(), sample(&spec, 8).unwrap());
    assert_ne!(sample_trial(&spec, 7, 0).unwrap(), sample_trial(&spec, 7, 1).unwrap());
}

#[test]
fn wigner_is_exactly_self_adjoint() {
    let a = sample(&EnsembleSpec::Wigner { n: 40, t: 2.0 }, 3).unwrap();
    assert_eq!(a, a.adjoint());
}

#[test]
fn wishart_is_positive_semidefinite() {
    let w = sample(&EnsembleSpec::Wishart { n: 60, m: 20 }, 5).unwrap();
    let ev = eigenvalues(&w);
    let norm = ev.last().unwrap().abs();
    assert!(ev[0] >= -1e-10 * norm);
    // rank at most m
    assert!(ev[..40].iter().all(|x| x.abs() < 1e-8 * norm));
}

#[test]
fn block_maps_on_small_matrices() {
    let w = sample(&EnsembleSpec::ComplexGaussian { n: 6, t: 1.0 }, 1).unwrap();
    assert_eq!(block_modify(&w, 3, BlockMap::Identity).unwrap(), w);
    let t = block_modify(&w, 3, BlockMap::Transpose).unwrap();
    assert_eq!(t[(1, 3 + 2)], w[(2, 3 + 1)]);
    assert_eq!(block_modify(&t, 3, BlockMap::Transpose).unwrap(), w);
    let id = DMatrix::<Complex64>::identity(6, 6);
    assert_eq!(block_modify(&id, 2, BlockMap::TraceOne).unwrap(), id);
    let diag = block_modify(&w, 2, BlockMap::Diagonal).unwrap();
    assert_eq!(diag[(0, 3)], Complex64::new(0.0, 0.0));
    assert_eq!(diag[(0, 2)], w[(0, 2)]);
    assert!(matches!(block_modify(&w, 4, BlockMap::Transpose), Err(Error::BadDivisibility { .. })));
}

#[test]
fn wigner_moments_and_histogram() {
    let spec = EnsembleSpec::Wigner { n: 300, t: 1.0 };
    let est = empirical_moments(&spec, 1, &trials(20), &MomentRequest::Orders(4)).unwrap();
    assert!((0.95..=1.05).contains(&est.values[1]), "{:?}", est.values);
    assert!((1.9..=2.1).contains(&est.values[3]), "{:?}", est.values);
    assert!(est.values[0].abs() < 0.05);
    let pooled = spectrum_sample(&spec, 1, &trials(20)).unwrap();
    let m = pooled.moments(4);
    assert!((m[3] - est.values[3]).abs() < 1e-9);
    let hist = pooled.histogram(0.1).unwrap();
    let law = LawSpec::Semicircle(int(1));
    let l1: f64 =
        hist.points.iter().zip(&hist.densities).map(|(&x, &h)| (h - law_density(&law, x).unwrap()).abs() * 0.1).sum();
    assert!(l1 < 0.05, "L1 = {l1}");
}

#[test]
fn wigner_variance_scales_with_t() {
    let spec = EnsembleSpec::Wigner { n: 200, t: 2.0 };
    let est = empirical_moments(&spec, 4, &trials(10), &MomentRequest::Orders(2)).unwrap();
    assert!(rel(est.values[1], 2.0) < 0.05);
}

#[test]
fn complex_gaussian_colored_words() {
    let t = 0.5;
    let spec = EnsembleSpec::ComplexGaussian { n: 300, t };
    let word = |s: &str| MomentRequest::Word(ColoredWord::parse(s).unwrap());
    let obob = empirical_moments(&spec, 2, &trials(4), &word("obob")).unwrap();
    assert!(rel(obob.values[0], 2.0 * t * t) < 0.05, "{:?}", obob);
    // one noncrossing matching pairing for oobb
    let oobb = empirical_moments(&spec, 2, &trials(4), &word("oobb")).unwrap();
    assert!(rel(oobb.values[0], t * t) < 0.05, "{:?}", oobb);
    let ob = empirical_moments(&spec, 2, &trials(4), &word("ob")).unwrap();
    assert!(rel(ob.values[0], t) < 0.02);
}

#[test]
fn wishart_moments_follow_marchenko_pastur() {
    let spec = EnsembleSpec::Wishart { n: 400, m: 200 };
    let est = empirical_moments(&spec, 1, &trials(10), &MomentRequest::Orders(4)).unwrap();
    let exact = law_moments(&LawSpec::MarchenkoPastur(rat(1, 2)), 4).unwrap();
    for k in 1..=4 {
        let e = exact.get(k).to_f64().unwrap();
        assert!(rel(est.values[k - 1], e) < 0.05, "k={k}: {} vs {e}", est.values[k - 1]);
    }
}

#[test]
fn wishart_spectrum_has_half_mass_at_zero() {
    let spec = EnsembleSpec::Wishart { n: 300, m: 150 };
    let s = spectrum_sample(&spec, 3, &trials(4)).unwrap();
    let near_zero = s.eigenvalues.iter().filter(|x| x.abs() < 1e-6).count() as f64;
    assert!((near_zero / s.eigenvalues.len() as f64 - 0.5).abs() < 0.01);
}

fn block_transpose_target(p: usize, n: i64, m: i64) -> f64 {
    enumerate(Category::NC, &ColoredWord::uncolored(p))
        .unwrap()
        .iter()
        .map(|pi| (m as f64).powi(pi.block_count() as i32) * (n as f64).powi(pi.even_block_count() as i32))
        .sum()
}

#[test]
fn block_transposed_wishart() {
    let (d, n, m) = (150, 2, 2);
    let spec = EnsembleSpec::BlockWishart { d, n, m, map: BlockMap::Transpose, scale: BlockScale::OverDm };
    let est = empirical_moments(&spec, 1, &trials(6), &MomentRequest::Orders(3)).unwrap();
    for p in 1..=3 {
        let got = (m as f64).powi(p as i32) * est.values[p - 1];
        let want = block_transpose_target(p, n as i64, m as i64);
        assert!(rel(got, want) < 0.10, "p={p}: {got} vs {want}");
    }
    let s = spectrum_sample(&spec, 1, &trials(2)).unwrap();
    assert!((s.mean() - 1.0).abs() < 0.05);
}

#[test]
fn trace_one_block_map_gives_marchenko_pastur() {
    let (d, n, m) = (150, 2, 2);
    let spec = EnsembleSpec::BlockWishart { d, n, m, map: BlockMap::TraceOne, scale: BlockScale::OverD };
    let est = empirical_moments(&spec, 2, &trials(6), &MomentRequest::Orders(3)).unwrap();
    let exact = law_moments(&LawSpec::MarchenkoPastur(int((m * n) as i64)), 3).unwrap();
    for p in 1..=3 {
        let got = (n as f64).powi(p as i32) * est.values[p - 1];
        let e = exact.get(p).to_f64().unwrap();
        assert!(rel(got, e) < 0.10, "p={p}: {got} vs {e}");
    }
}

#[test]
fn independent_wigner_matrices_are_asymptotically_free() {
    let est = abab_moment(300, 1, &trials(10)).unwrap();
    assert!(est.values[0].abs() <= 0.05, "{:?}", est);
}

#[test]
fn trial_order_does_not_matter() {
    let spec = EnsembleSpec::Wishart { n: 30, m: 40 };
    let a = empirical_moments(&spec, 9, &[0, 1, 2, 3, 4, 5], &MomentRequest::Orders(3)).unwrap();
    let b = empirical_moments(&spec, 9, &[5, 3, 1, 0, 4, 2], &MomentRequest::Orders(3)).unwrap();
    assert_eq!(a, b);
    let h1 = empirical_spectrum(&spec, 9, &[2, 0, 1], 0.1).unwrap();
    let h2 = empirical_spectrum(&spec, 9, &[0, 1, 2], 0.1).unwrap();
    assert_eq!(h1, h2);
}

#[test]
fn histogram_is_normalized() {
    let h = empirical_spectrum(&EnsembleSpec::Wigner { n: 50, t: 1.0 }, 0, &trials(3), 0.25).unwrap();
    let mass: f64 = h.densities.iter().sum::<f64>() * 0.25;
    assert!((mass - 1.0).abs() < 1e-12);
}

#[test]
fn fixed_points_of_truncated_permutations() {
    let m = permutation_fixed_point_moments(200, 100, 100_000, 3, 1).unwrap();
    let exact = law_moments(&LawSpec::Poisson(rat(1, 2)), 3).unwrap();
    for k in 1..=3 {
        let e = exact.get(k).to_f64().unwrap();
        assert!(rel(m[k - 1], e) < 0.02, "k={k}: {} vs {e}", m[k - 1]);
    }
    assert!(permutation_fixed_point_moments(5, 6, 10, 1, 0).is_err());
}

#[test]
fn rejected_configurations() {
    let cg = EnsembleSpec::ComplexGaussian { n: 10, t: 1.0 };
    assert!(matches!(empirical_spectrum(&cg, 0, &[0], 0.1), Err(Error::NotSelfAdjoint(_))));
    assert!(matches!(sample(&EnsembleSpec::Wishart { n: 1001, m: 2 }, 0), Err(Error::TooLarge { .. })));
    assert!(sample(&EnsembleSpec::Wigner { n: 3, t: 0.0 }, 0).is_err());
    assert!(empirical_moments(&cg, 0, &[], &MomentRequest::Orders(2)).is_err());
    assert!(BlockMap::parse("swap").is_err());
    assert_eq!(BlockScale::parse("dm").unwrap(), BlockScale::OverDm);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transpose_is_an_involution(d in 1usize..4, n in 1usize..4, seed in any::<u64>()) {
        let w = sample(&EnsembleSpec::ComplexGaussian { n: d * n, t: 1.0 }, seed).unwrap();
        let t = block_modify(&w, n, BlockMap::Transpose).unwrap();
        prop_assert_eq!(block_modify(&t, n, BlockMap::Transpose).unwrap(), w.clone());
        // all maps preserve the trace
        for map in [BlockMap::Transpose, BlockMap::TraceOne, BlockMap::Diagonal] {
            let m = block_modify(&w, n, map).unwrap();
            prop_assert!((m.trace() - w.trace()).norm() < 1e-9);
        }
    }
}

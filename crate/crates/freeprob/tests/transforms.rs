use freeprob::cumulants::{cumulants_from_moments, Flavor, MomentSequence};
use freeprob::laws::{compound_poisson, law_density, law_moments, DiscreteMeasure, LawSpec};
use freeprob::scalar::{int, rat};
use freeprob::series::FormalSeries;
use freeprob::transforms::*;
use freeprob::{ExactMoments, ExactSeries, Rational};
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;

fn semicircle(t: &Rational, order: usize) -> ExactMoments {
    law_moments(&LawSpec::Semicircle(t.clone()), order).unwrap()
}

fn mp(t: &Rational, order: usize) -> ExactMoments {
    law_moments(&LawSpec::MarchenkoPastur(t.clone()), order).unwrap()
}

fn point(c: &Rational, order: usize) -> ExactMoments {
    MomentSequence::new((1..=order).map(|n| num_traits::pow(c.clone(), n)).collect())
}

fn padded(s: &ExactSeries, order: usize) -> ExactSeries {
    let mut c = s.coeffs().to_vec();
    c.resize(order + 1, Rational::zero());
    c.truncate(order + 1);
    FormalSeries::in_z(c)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

#[test]
fn cauchy_examples() {
    let c = rat(2, 3);
    let g = cauchy_from_moments(&point(&c, 5));
    let expect: Vec<Rational> =
        std::iter::once(int(0)).chain((0..=5).map(|n| num_traits::pow(c.clone(), n))).collect();
    assert_eq!(g.coeffs(), &expect[..]);
    let g = cauchy_from_moments(&semicircle(&int(1), 6));
    let expect: Vec<Rational> = [0, 1, 0, 1, 0, 2, 0, 5].iter().map(|&x| int(x)).collect();
    assert_eq!(g.coeffs(), &expect[..]);
    let g = cauchy_from_moments(&MomentSequence::<Rational>::new(vec![]));
    assert_eq!(g.coeffs(), &[int(0), int(1)]);
}

#[test]
fn r_transform_examples() {
    for t in [rat(1, 2), int(1), int(2)] {
        let r = r_from_moments(&semicircle(&t, 10)).unwrap();
        for (j, c) in r.coeffs().iter().enumerate() {
            assert_eq!(c, &if j == 1 { t.clone() } else { int(0) });
        }
        let r = r_from_moments(&mp(&t, 10)).unwrap();
        assert!(r.coeffs().iter().all(|c| c == &t));
        assert_eq!(r.order(), 9);
    }
    let r = r_from_moments(&point(&rat(-5, 4), 6)).unwrap();
    assert_eq!(r.coeff(0), &rat(-5, 4));
    assert!(r.coeffs()[1..].iter().all(Zero::is_zero));
}

#[test]
fn s_transform_examples() {
    for t in [rat(1, 2), int(1), int(2)] {
        // 1/(t+z) = Σ (−1)^j z^j / t^{j+1}
        let s = s_from_moments(&mp(&t, 11)).unwrap();
        assert!(s.order() >= 10);
        for (j, c) in s.coeffs().iter().enumerate() {
            let expect = num_traits::pow(rat(-1, 1) / &t, j) / &t;
            assert_eq!(c, &expect);
        }
    }
    let s = s_from_moments(&point(&int(1), 8)).unwrap();
    assert_eq!(s.coeff(0), &int(1));
    assert!(s.coeffs()[1..].iter().all(Zero::is_zero));
    let t = rat(2, 5);
    let bernoulli = MomentSequence::new(vec![t.clone(); 8]);
    let s = s_from_moments(&bernoulli).unwrap();
    let expect = padded(&FormalSeries::in_z(vec![int(1), int(1)]), s.order())
        .mul(&FormalSeries::geometric(int(1) / &t, int(-1) / &t, s.order()));
    assert_eq!(s, expect);
    assert!(matches!(
        s_from_moments(&semicircle(&int(1), 4)),
        Err(freeprob::Error::UndefinedSTransform)
    ));
}

#[test]
fn additive_semigroups() {
    let (s, t) = (rat(1, 3), rat(5, 2));
    let st = &s + &t;
    assert_eq!(free_additive_convolution(&semicircle(&s, 8), &semicircle(&t, 8)).unwrap(), semicircle(&st, 8));
    assert_eq!(free_additive_convolution(&mp(&s, 8), &mp(&t, 8)).unwrap(), mp(&st, 8));
    let (a, b) = (rat(-1, 2), int(3));
    assert_eq!(free_additive_convolution(&point(&a, 8), &point(&b, 8)).unwrap(), point(&(&a + &b), 8));
    assert_eq!(classical_convolution(&point(&a, 8), &point(&b, 8)).unwrap(), point(&(&a + &b), 8));
    let poisson = |x: &Rational| law_moments(&LawSpec::Poisson(x.clone()), 8).unwrap();
    let gauss = |x: &Rational| law_moments(&LawSpec::Gaussian(x.clone()), 8).unwrap();
    assert_eq!(classical_convolution(&poisson(&s), &poisson(&t)).unwrap(), poisson(&st));
    assert_eq!(classical_convolution(&gauss(&s), &gauss(&t)).unwrap(), gauss(&st));
    assert!(free_additive_convolution(&point(&a, 3), &point(&b, 4)).is_err());
}

#[test]
fn multiplicative_examples() {
    let pi = mp(&int(1), 6);
    let sq = free_multiplicative_convolution(&pi, &pi).unwrap();
    assert_eq!(sq.get(2), int(3));
    assert_eq!(sq.get(3), int(12));
    let mu = MomentSequence::new(vec![int(2), int(7), rat(1, 3), int(-4), int(5)]);
    let same = free_multiplicative_convolution(&mu, &point(&int(1), 5)).unwrap();
    assert_eq!(same.truncate(5), mu);
}

#[test]
fn block_wishart_r_decomposition() {
    for (m, n) in [(1i64, 3i64), (2, 2), (4, 5)] {
        let rho = DiscreteMeasure::from_atoms(vec![(int(-1), rat(m * (n - 1), 2)), (int(1), rat(m * (n + 1), 2))]);
        let r = r_from_moments(&compound_poisson(&rho, Flavor::Free, 9)).unwrap();
        let s = rat(m * (n + 1), 2);
        let t = rat(m * (n - 1), 2);
        let rs = FormalSeries::geometric(s.clone(), int(1), 8);
        let rt_reflected = FormalSeries::geometric(t.clone(), int(-1), 8);
        assert_eq!(padded(&r, 8), rs.sub(&rt_reflected));
    }
}

#[test]
fn stieltjes_semicircle() {
    let grid = linspace(-1.9, 1.9, 381);
    let d = stieltjes_invert(&ClosedCauchy::Semicircle { t: 1.0 }, &grid, 1e-4).unwrap();
    let err = grid
        .iter()
        .zip(&d.densities)
        .map(|(&x, &y)| (y - law_density(&LawSpec::Semicircle(int(1)), x).unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(err < 1e-3, "sup error {err}");
    assert!(d.atoms.is_empty());
    let full = stieltjes_invert(&ClosedCauchy::Semicircle { t: 1.0 }, &linspace(-3.0, 3.0, 601), 1e-4).unwrap();
    assert!(full.mass_defect < 1e-2);
}

#[test]
fn stieltjes_atoms() {
    let d = stieltjes_invert(&ClosedCauchy::PointMass { c: 0.3 }, &linspace(-1.0, 1.0, 201), 1e-4).unwrap();
    assert_eq!(d.atoms.len(), 1);
    assert!((d.atoms[0].0 - 0.3).abs() < 1e-6);
    assert!((d.atoms[0].1 - 1.0).abs() < 1e-6);
    let d = stieltjes_invert(&ClosedCauchy::MarchenkoPastur { t: 0.5 }, &linspace(-0.5, 3.5, 801), 1e-4).unwrap();
    assert_eq!(d.atoms.len(), 1);
    assert!(d.atoms[0].0.abs() < 1e-3);
    assert!((d.atoms[0].1 - 0.5).abs() < 0.01);
    assert!(stieltjes_invert(&ClosedCauchy::PointMass { c: 0.0 }, &[0.0, 1.0], 0.0).is_err());
}

#[test]
fn closure_cauchy_transforms_are_accepted() {
    let g = |xi: Complex64| 0.5 / (xi - 1.0) + 0.5 / (xi + 1.0);
    let d = stieltjes_invert(&g, &linspace(-2.0, 2.0, 401), 1e-4).unwrap();
    assert_eq!(d.atoms.len(), 2);
    assert!(d.atoms.iter().all(|a| (a.1 - 0.5).abs() < 1e-6));
}

#[test]
fn pade_tracks_closed_form_off_axis() {
    let m = semicircle(&int(1), 16);
    let pade = PadeCauchy::from_moments(&m).unwrap();
    for xi in [Complex64::new(3.0, 0.5), Complex64::new(0.0, 2.0), Complex64::new(-2.5, 1.0)] {
        let exact = ClosedCauchy::Semicircle { t: 1.0 }.eval(xi);
        assert!((pade.eval(xi) - exact).norm() < 1e-6);
    }
}

#[test]
fn hankel_examples() {
    let catalan = MomentSequence::new([1, 2, 5, 14, 42, 132, 429, 1430].iter().map(|&x| int(x)).collect());
    assert!(hankel_check(&catalan).unwrap().passed);
    assert!(hankel_check(&semicircle(&int(1), 8)).unwrap().passed);
    let bad = hankel_check(&MomentSequence::new(vec![int(0), int(-1)])).unwrap();
    assert!(!bad.passed);
    assert_eq!(bad.first_failure, Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn r_coefficients_are_free_cumulants(v in (1usize..=10).prop_flat_map(|n| proptest::collection::vec(rational(), n))) {
        let m = MomentSequence::new(v);
        let r = r_from_moments(&m).unwrap();
        prop_assert_eq!(r.coeffs(), &cumulants_from_moments(&m, Flavor::Free).values[..]);
    }

    #[test]
    fn k_inverts_g(v in proptest::collection::vec(rational(), 8)) {
        let m = MomentSequence::new(v);
        let r = r_from_moments(&m).unwrap();
        let g = cauchy_from_moments(&m).with_var(freeprob::series::SeriesVar::Z);
        let n = 8;
        // 1/K(z) = z / (1 + zR(z)) as a series in z
        let inv_k = FormalSeries::identity(n).mul(&padded(&k_times_z(&r), n).reciprocal().unwrap());
        let gk = padded(&g, n).compose(&inv_k).unwrap();
        prop_assert_eq!(gk, FormalSeries::identity(n));
        // w·K(G(w)) = w/G(w) + w·R(G(w)) = 1
        let gw = padded(&g, n);
        let w_over_g = gw.shift_down().unwrap().reciprocal().unwrap();
        let r_of_g = padded(&r, n).compose(&gw).unwrap().shift_up();
        prop_assert_eq!(padded(&w_over_g.add(&padded(&r_of_g, n - 1)), n - 1), FormalSeries::one(n - 1));
    }

    #[test]
    fn s_is_multiplicative(a in proptest::collection::vec(rational(), 6), b in proptest::collection::vec(rational(), 6)) {
        prop_assume!(!a[0].is_zero() && !b[0].is_zero());
        let ma = MomentSequence::new(a);
        let mb = MomentSequence::new(b);
        let prod = free_multiplicative_convolution(&ma, &mb).unwrap();
        let lhs = s_from_moments(&prod).unwrap();
        let rhs = s_from_moments(&ma).unwrap().mul(&s_from_moments(&mb).unwrap());
        let n = lhs.order().min(rhs.order());
        prop_assert_eq!(padded(&lhs, n), padded(&rhs, n));
    }

    #[test]
    fn free_convolution_commutes_and_associates(
        a in proptest::collection::vec(rational(), 8),
        b in proptest::collection::vec(rational(), 8),
        c in proptest::collection::vec(rational(), 8),
    ) {
        let (ma, mb, mc) = (MomentSequence::new(a), MomentSequence::new(b), MomentSequence::new(c));
        let ab = free_additive_convolution(&ma, &mb).unwrap();
        prop_assert_eq!(&ab, &free_additive_convolution(&mb, &ma).unwrap());
        let left = free_additive_convolution(&ab, &mc).unwrap();
        let right = free_additive_convolution(&ma, &free_additive_convolution(&mb, &mc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

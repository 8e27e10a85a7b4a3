use freeprob::partitions::{enumerate, kernel, ColoredWord, Modulus, Partition};
use freeprob::scalar::{int, rat};
use freeprob::weingarten::*;
use freeprob::{Error, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn all_series() -> Vec<GroupSeries> {
    vec![
        GroupSeries::S,
        GroupSeries::O,
        GroupSeries::U,
        GroupSeries::B,
        GroupSeries::H,
        GroupSeries::K,
        GroupSeries::Hs(Modulus::Finite(3)),
    ]
}

fn all_groups() -> Vec<EasyGroup> {
    all_series().into_iter().flat_map(|s| [EasyGroup::classical(s), EasyGroup::free(s)]).collect()
}

fn words(len: usize) -> Vec<ColoredWord> {
    (0..1usize << len)
        .map(|bits| ColoredWord::parse(&(0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'o' }).collect::<String>()).unwrap())
        .collect()
}

fn patterns(len: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|p| (1..=n).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

#[test]
fn weingarten_inverts_gram_everywhere() {
    for group in all_groups() {
        for n in [5u64, 7] {
            for len in 0..=4 {
                for word in words(len) {
                    let t = weingarten(group, &word, n).unwrap();
                    assert!(t.gram.mul(&t.wg).unwrap().is_identity(), "{group} {word} N={n}");
                    assert!(t.wg.mul(&t.gram).unwrap().is_identity());
                }
            }
        }
    }
    // uncolored words of length 8 for the lighter free categories
    for group in [EasyGroup::free(GroupSeries::O), EasyGroup::free(GroupSeries::H)] {
        let t = weingarten_k(group, 8, 5).unwrap();
        assert!(t.gram.mul(&t.wg).unwrap().is_identity());
    }
}

#[test]
fn gram_entries_are_powers_of_n() {
    let n = 6u64;
    for group in all_groups() {
        let g = gram(group, &ColoredWord::parse("obob").unwrap(), n).unwrap();
        for (i, a) in g.partitions.iter().enumerate() {
            assert_eq!(g.entries[i][i], BigInt::from(n).pow(a.block_count() as u32));
            for (j, b) in g.partitions.iter().enumerate() {
                assert_eq!(g.entries[i][j], g.entries[j][i]);
                assert_eq!(g.entries[i][j], BigInt::from(n).pow(a.join(b).unwrap().block_count() as u32));
            }
        }
    }
}

#[test]
fn o_four_point_table() {
    for n in 3..=10i64 {
        let t = weingarten_k(EasyGroup::classical(GroupSeries::O), 4, n as u64).unwrap();
        let c = Rational::new(BigInt::one(), BigInt::from(n * (n - 1) * (n + 2)));
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { int(n + 1) } else { int(-1) };
                assert_eq!(t.wg[(i, j)], &c * e);
            }
        }
    }
    let t = weingarten_k(EasyGroup::free(GroupSeries::O), 2, 9).unwrap();
    assert_eq!(t.wg[(0, 0)], rat(1, 9));
}

#[test]
fn o_integrals() {
    let o = EasyGroup::classical(GroupSeries::O);
    for n in 3..=8i64 {
        let w4 = ColoredWord::uncolored(4);
        let v = integrate_monomial(o, n as u64, &[1, 1, 1, 1], &[1, 1, 1, 1], &w4).unwrap();
        assert_eq!(v, rat(3, n * (n + 2)));
        let v = integrate_monomial(o, n as u64, &[1, 1, 2, 2], &[1, 1, 2, 2], &w4).unwrap();
        assert_eq!(v, rat(n + 1, n * (n - 1) * (n + 2)));
        let v = integrate_monomial(o, n as u64, &[1, 1, 2, 2], &[2, 2, 1, 1], &w4).unwrap();
        assert_eq!(v, on_two_generic_coordinates(n as u64, 2, 2).unwrap());
        let v = integrate_monomial(o, n as u64, &[1, 2, 1, 2], &[1, 1, 2, 2], &w4).unwrap();
        assert_eq!(v, rat(-1, n * (n - 1) * (n + 2)));
    }
    let s = EasyGroup::classical(GroupSeries::S);
    let v = integrate_monomial(s, 6, &[1, 2], &[1, 2], &ColoredWord::uncolored(2)).unwrap();
    assert_eq!(v, rat(1, 30));
}

#[test]
fn generic_coordinates() {
    let o = EasyGroup::classical(GroupSeries::O);
    for n in 3..=6u64 {
        for (a, b) in [(2u64, 0u64), (0, 2), (4, 2), (2, 4), (4, 0), (2, 2)] {
            let rows: Vec<usize> = [vec![1; a as usize], vec![2; b as usize]].concat();
            let cols: Vec<usize> = [vec![2; a as usize], vec![1; b as usize]].concat();
            let w = ColoredWord::uncolored(rows.len());
            assert_eq!(on_two_generic_coordinates(n, a, b).unwrap(), integrate_monomial(o, n, &rows, &cols, &w).unwrap());
        }
    }
    assert_eq!(on_two_generic_coordinates(5, 1, 2).unwrap(), int(0));
    assert_eq!(on_two_generic_coordinates(5, 0, 0).unwrap(), int(1));
}

#[test]
fn sn_closed_form_exhaustive() {
    let s = EasyGroup::classical(GroupSeries::S);
    let n = 5;
    for len in 1..=4 {
        let w = ColoredWord::uncolored(len);
        let pats = patterns(len, n);
        for i in &pats {
            for j in &pats {
                let v = integrate_monomial(s, n as u64, i, j, &w).unwrap();
                assert_eq!(v, sn_integral_closed_form(n as u64, i, j), "{i:?} {j:?}");
            }
        }
    }
}

#[test]
fn orthogonality() {
    let n = 5;
    let w = ColoredWord::uncolored(2);
    let o = EasyGroup::classical(GroupSeries::O);
    let s = EasyGroup::classical(GroupSeries::S);
    for i in patterns(2, n) {
        for j in patterns(2, n) {
            let v = integrate_monomial(o, n as u64, &i, &j, &w).unwrap();
            let expect = if i[0] == i[1] && j[0] == j[1] { rat(1, n as i64) } else { int(0) };
            assert_eq!(v, expect);
            let v = integrate_monomial(s, n as u64, &i, &j, &w).unwrap();
            let expect = match (i[0] == i[1], j[0] == j[1]) {
                (true, true) => rat(1, n as i64),
                (false, false) => rat(1, (n * (n - 1)) as i64),
                _ => int(0),
            };
            assert_eq!(v, expect);
        }
    }
}

#[test]
fn small_free_and_classical_symmetric_groups_coincide() {
    for k in 0..=3 {
        for n in [4u64, 5, 9] {
            let a = weingarten_k(EasyGroup::classical(GroupSeries::S), k, n).unwrap();
            let b = weingarten_k(EasyGroup::free(GroupSeries::S), k, n).unwrap();
            assert_eq!(a.partitions, b.partitions);
            assert_eq!(a.wg, b.wg);
        }
    }
}

#[test]
fn unitarity_sums() {
    let w = ColoredWord::parse("ob").unwrap();
    for group in [EasyGroup::classical(GroupSeries::U), EasyGroup::free(GroupSeries::U)] {
        for n in 2..=6u64 {
            let total: Rational = (1..=n as usize)
                .map(|j| integrate_monomial(group, n, &[1, 1], &[j, j], &w).unwrap())
                .sum();
            assert_eq!(total, int(1));
        }
    }
}

#[test]
fn unbalanced_index_classes_vanish() {
    let u = EasyGroup::classical(GroupSeries::U);
    let n = 4;
    for len in 1..=4 {
        for word in words(len) {
            let pats = patterns(len, n);
            let unbalanced = |p: &[usize]| {
                kernel(p).blocks().iter().any(|b| {
                    let whites = b.iter().filter(|&&x| word.letters[x] == freeprob::partitions::Color::White).count();
                    2 * whites != b.len()
                })
            };
            for i in &pats {
                for j in &pats {
                    if unbalanced(i) || unbalanced(j) {
                        assert!(integrate_monomial(u, n as u64, i, j, &word).unwrap().is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn gram_determinants() {
    assert_eq!(gram_determinant(2, 3).unwrap(), BigInt::from(18));
    for n in 2..=10u64 {
        assert_eq!(gram_determinant(2, n).unwrap(), BigInt::from(n * n * (n - 1)));
    }
    assert!(gram_determinant(3, 2).unwrap().is_zero());
    for k in 1..=5 {
        for n in 1..=8 {
            assert_eq!(gram_determinant(k, n).unwrap(), gram_determinant_formula(k, n), "k={k} N={n}");
        }
    }
}

#[test]
fn singular_gram_is_an_error() {
    let s = EasyGroup::classical(GroupSeries::S);
    assert_eq!(weingarten_k(s, 3, 2).unwrap_err(), Error::SingularGram { k: 3, n: 2 });
    assert!(matches!(weingarten_k(s, 11, 20), Err(Error::TooLarge { .. })));
}

#[test]
fn spheres() {
    for n in 2..=9i64 {
        let nu = n as u64;
        assert_eq!(sphere_integrate(Field::Real, nu, &[2]).unwrap(), rat(1, n));
        assert_eq!(sphere_integrate(Field::Real, nu, &[2, 2]).unwrap(), rat(1, n * (n + 2)));
        assert_eq!(sphere_integrate(Field::Real, nu, &[3, 1]).unwrap(), int(0));
        assert_eq!(sphere_integrate(Field::Complex, nu, &[2]).unwrap(), rat(2, n * (n + 1)));
        assert_eq!(sphere_integrate(Field::Complex, nu, &[1]).unwrap(), rat(1, n));
    }
}

#[test]
fn truncated_characters() {
    let s = EasyGroup::classical(GroupSeries::S);
    for n in 4..=8u64 {
        for k in 1..=4 {
            for cut in 1..=n {
                assert_eq!(
                    truncated_character_trace(s, n, cut, k).unwrap(),
                    truncated_character_stirling(n, cut, k),
                    "N={n} k={k} s={cut}"
                );
            }
        }
    }
    // t = 1 at k = 2: two fixed-point moments collapse to 2
    assert_eq!(truncated_character_moments(s, 6, &int(1), 2).unwrap(), int(2));
    let poisson = freeprob::laws::law_moments(&freeprob::laws::LawSpec::Poisson(rat(1, 2)), 5).unwrap().values;
    for k in 1..=5 {
        let v = truncated_character_moments(s, 2000, &rat(1, 2), k).unwrap().as_f64();
        assert!((v - poisson[k - 1].as_f64()).abs() < 1e-2, "k={k}: {v}");
    }
    let v = truncated_character_moments(EasyGroup::free(GroupSeries::O), 1000, &int(1), 4).unwrap().as_f64();
    assert!((v - 2.0).abs() < 1e-2);
    assert!(truncated_character_moments(s, 5, &rat(1, 10), 2).is_err());
}

#[test]
fn asymptotics_of_comparable_pairs() {
    let n = 1_000_000u64;
    for group in [EasyGroup::classical(GroupSeries::O), EasyGroup::free(GroupSeries::S), EasyGroup::classical(GroupSeries::S)] {
        let word = ColoredWord::uncolored(4);
        let t = weingarten(group, &word, n).unwrap();
        for a in &t.partitions {
            for b in &t.partitions {
                let est = weingarten_asymptotics(group, a, b, &word).unwrap();
                assert_eq!(est.exponent, a.join(b).unwrap().block_count() as i64 - a.block_count() as i64 - b.block_count() as i64);
                if est.kind != AsymptoticKind::Comparable {
                    continue;
                }
                let coef = Rational::from_integer(est.coefficient.clone().unwrap()).as_f64();
                let predicted = coef * (n as f64).powi(est.leading_exponent as i32);
                let exact = t.entry(a, b).unwrap().as_f64();
                assert!((exact - predicted).abs() <= 0.01 * predicted.abs(), "{group} {a} {b}");
            }
        }
    }
    let s = EasyGroup::classical(GroupSeries::S);
    let p = Partition::singletons(2);
    let est = weingarten_asymptotics(s, &p, &p, &ColoredWord::uncolored(2)).unwrap();
    assert_eq!((est.leading_exponent, est.coefficient), (-2, Some(BigInt::one())));
}

#[test]
fn meet_form_for_symmetric_groups() {
    let s = EasyGroup::classical(GroupSeries::S);
    let n = 100_000u64;
    for k in 2..=4 {
        let word = ColoredWord::uncolored(k);
        let t = weingarten(s, &word, n).unwrap();
        for a in &t.partitions {
            for b in &t.partitions {
                let est = weingarten_asymptotics(s, a, b, &word).unwrap();
                let coef = Rational::from_integer(est.coefficient.clone().unwrap()).as_f64();
                let predicted = coef * (n as f64).powi(est.leading_exponent as i32);
                let exact = t.entry(a, b).unwrap().as_f64();
                assert!((exact - predicted).abs() <= 0.01 * predicted.abs(), "{a} {b}");
            }
        }
    }
}

#[test]
fn incomparable_pairs_are_flagged() {
    let o = EasyGroup::classical(GroupSeries::O);
    let word = ColoredWord::uncolored(4);
    let pairings = enumerate(o.category(), &word).unwrap();
    let est = weingarten_asymptotics(o, &pairings[0], &pairings[1], &word).unwrap();
    assert_eq!(est.kind, AsymptoticKind::PathCountNotComputed);
    assert!(est.coefficient.is_none());
}

#[test]
fn group_names() {
    assert_eq!(EasyGroup::parse("O+", false).unwrap(), EasyGroup::free(GroupSeries::O));
    assert_eq!(EasyGroup::parse("Hs(3)", true).unwrap(), EasyGroup::free(GroupSeries::Hs(Modulus::Finite(3))));
    assert!(EasyGroup::parse("Q", false).is_err());
}

use freeprob::exactcount::*;
use freeprob::partitions::{count, enumerate, Category, ColoredWord};
use freeprob::scalar::{int, rat, Scalar};
use freeprob::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

// Oracle values frozen from independent brute-force counts.
const CATALAN: [u64; 10] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
const BELL: [u64; 9] = [1, 1, 2, 5, 15, 52, 203, 877, 4140];

#[test]
fn catalan_and_bell_against_tables_and_counts() {
    for (k, &c) in CATALAN.iter().enumerate() {
        assert_eq!(catalan(k), BigInt::from(c));
        let nc = enumerate(Category::NC, &ColoredWord::uncolored(k)).unwrap().len();
        assert_eq!(nc as u64, c);
    }
    for (k, &b) in BELL.iter().enumerate() {
        assert_eq!(bell(k), BigInt::from(b));
        assert_eq!(count(Category::P, &ColoredWord::uncolored(k)).unwrap(), BigInt::from(b));
        let rec: BigInt = if k == 0 {
            BigInt::one()
        } else {
            (0..k).map(|s| binomial((k - 1) as u64, s as u64) * bell(k - 1 - s)).sum()
        };
        assert_eq!(rec, bell(k));
    }
}

#[test]
fn stirling_rows() {
    assert_eq!(stirling2(3, 2), BigInt::from(3));
    for r in 1..=8 {
        assert_eq!(stirling2(r, 1), BigInt::one());
        let row: BigInt = (0..=r).map(|b| stirling2(r, b)).sum();
        assert_eq!(row, bell(r));
        for b in 0..=r {
            let listed = enumerate(Category::P, &ColoredWord::uncolored(r))
                .unwrap()
                .iter()
                .filter(|p| p.block_count() == b)
                .count();
            assert_eq!(BigInt::from(listed), stirling2(r, b));
        }
    }
}

#[test]
fn fuss_catalan_values() {
    assert_eq!(fuss_catalan(&int(1), 3), int(5));
    assert_eq!(fuss_catalan(&int(2), 2), int(3));
    assert_eq!(fuss_catalan(&int(2), 3), int(12));
    for s in 1..=4u64 {
        for k in 0..=8 {
            let v = fuss_catalan(&int(s as i64), k);
            assert!(v.is_integer());
            assert_eq!(v.to_integer(), fuss_catalan_int(s, k));
        }
    }
    // NCs(2) on 2k points counts NC partitions with even blocks
    for k in 0..=4 {
        let n = count(Category::NCeven, &ColoredWord::uncolored(2 * k)).unwrap();
        assert_eq!(n, fuss_catalan_int(2, k));
    }
}

#[test]
fn fuss_catalan_is_polynomial_of_degree_k_minus_one() {
    // finite differences of order k vanish in s
    for k in 1..=6usize {
        let vals: Vec<Rational> = (0..=k + 1).map(|s| fuss_catalan(&rat(2 * s as i64 + 1, 3), k)).collect();
        let mut d = vals;
        for _ in 0..k {
            d = d.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        assert!(d.iter().all(|x| x.is_zero()), "k = {k}");
    }
}

#[test]
fn fuss_narayana_values() {
    let t = rat(3, 7);
    assert_eq!(fuss_narayana(&int(1), 2, &t), &t + &t * &t);
    assert_eq!(fuss_narayana(&int(1), 3, &int(1)), int(5));
    assert_eq!(fuss_narayana(&int(2), 2, &int(1)), int(3));
    for k in 1..=6 {
        assert_eq!(fuss_narayana(&int(2), k, &int(1)), fuss_catalan(&int(2), k));
    }
}

#[test]
fn derangement_profiles() {
    assert_eq!(derangement_profile(4, 0), rat(9, 24));
    for n in 1..=10u64 {
        assert_eq!(derangement_profile(n, n), Rational::new(BigInt::one(), factorial(n)));
        let total: Rational = (0..=n).map(|r| derangement_profile(n, r)).sum();
        assert_eq!(total, int(1));
    }
    let v = derangement_profile(12, 0).as_f64();
    assert!((v - (-1f64).exp()).abs() < 1.0 / factorial(12).to_string().parse::<f64>().unwrap());
}

#[test]
fn derangement_profile_brute_force() {
    // fixed points over all permutations of 5 points
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let all = perms(5);
    for r in 0..=5 {
        let c = all.iter().filter(|p| p.iter().enumerate().filter(|(i, &x)| *i == x).count() == r).count();
        assert_eq!(derangement_profile(5, r as u64), rat(c as i64, 120));
    }
}

#[test]
fn poker_against_enumeration() {
    let probs = poker_probabilities();
    assert_eq!(probs["one_pair"], rat(480, 899));
    assert_eq!(probs["four_of_a_kind"], rat(1, 899));
    assert_eq!(probs["straight_flush"], rat(1, 12586));
    assert_eq!(probs["two_pairs"], rat(108, 899));
    assert_eq!(probs["three_of_a_kind"], rat(48, 899));
    assert_eq!(probs["full_house"], rat(6, 899));
    let enumerated = poker_enumeration();
    let total: BigInt = enumerated.values().sum();
    assert_eq!(total, binomial(32, 5));
    for (name, c) in poker_counts() {
        assert_eq!(enumerated[name], c, "{name}");
    }
    let all: Rational = probs.values().sum::<Rational>() + Rational::new(enumerated["high_card"].clone(), binomial(32, 5));
    assert_eq!(all, int(1));
}

#[test]
fn sphere_volumes() {
    let pi = std::f64::consts::PI;
    assert!((sphere_volume(2) - pi).abs() < 1e-12);
    assert!((sphere_volume(3) - 4.0 * pi / 3.0).abs() < 1e-12);
    assert!((sphere_volume(4) - pi * pi / 2.0).abs() < 1e-12);
    assert_eq!(sphere_volume_ratio(3), (rat(1, 3), 1));
}

#[test]
fn double_factorial_convention() {
    assert_eq!(double_factorial(6), BigInt::from(15));
    assert_eq!(double_factorial(5), BigInt::from(8));
    assert_eq!(double_factorial(0), BigInt::one());
    for k in 0..=8 {
        assert_eq!(count(Category::P2, &ColoredWord::uncolored(2 * k)).unwrap(), double_factorial(2 * k as u64));
    }
}

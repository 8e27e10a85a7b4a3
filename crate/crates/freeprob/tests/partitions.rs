use std::collections::HashSet;

use freeprob::exactcount::{bell, catalan, odd_double_factorial};
use freeprob::partitions::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn all(k: usize) -> Vec<Partition> {
    enumerate(Category::P, &ColoredWord::uncolored(k)).unwrap()
}

fn rgs_strategy(max_k: usize) -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (1..=max_k).prop_flat_map(|k| {
        let labels = || proptest::collection::vec(0..k, k).prop_map(|v| Partition::canonical(&v));
        (labels(), labels(), labels())
    })
}

#[test]
fn enumerate_examples() {
    assert_eq!(all(3).len(), 5);
    let nc2 = enumerate(Category::NC2, &ColoredWord::uncolored(6)).unwrap();
    assert_eq!(nc2.len(), 5);
    assert!(nc2.iter().all(|p| p.is_pairing() && p.is_noncrossing()));
    let w = ColoredWord::parse("obob").unwrap();
    assert_eq!(enumerate(Category::MatchNC2, &w).unwrap().len(), 2);
    assert_eq!(count(Category::MatchNC2, &ColoredWord::parse("oobb").unwrap()).unwrap(), BigInt::one());
}

#[test]
fn count_examples() {
    assert_eq!(count(Category::P2, &ColoredWord::uncolored(4)).unwrap(), BigInt::from(3));
    assert_eq!(count(Category::NC, &ColoredWord::uncolored(4)).unwrap(), BigInt::from(14));
    assert_eq!(count(Category::P, &ColoredWord::uncolored(0)).unwrap(), BigInt::one());
    assert_eq!(all(0).len(), 1);
}

#[test]
fn zero_modulus_rejected() {
    let w = ColoredWord::uncolored(3);
    assert!(enumerate(Category::Ps(Modulus::Finite(0)), &w).is_err());
    assert!(count(Category::NCs(Modulus::Finite(0)), &w).is_err());
}

#[test]
fn join_meet_examples() {
    let a = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
    let b = Partition::from_blocks(3, &[vec![0], vec![1, 2]]).unwrap();
    assert_eq!(a.join(&b).unwrap(), Partition::one_block(3));
    assert_eq!(a.meet(&b).unwrap(), Partition::singletons(3));
    assert_eq!(Partition::singletons(2).join(&Partition::one_block(2)).unwrap(), Partition::one_block(2));
    assert!(a.join(&Partition::singletons(4)).is_err());
}

#[test]
fn leq_examples() {
    let cap_bar = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
    let bar_cap = Partition::from_blocks(3, &[vec![0], vec![1, 2]]).unwrap();
    assert!(Partition::singletons(3).leq(&cap_bar).unwrap());
    assert!(!cap_bar.leq(&bar_cap).unwrap());
    assert!(cap_bar.leq(&Partition::singletons(2)).is_err());
}

#[test]
fn mobius_examples() {
    let bottom = Partition::singletons(2);
    let top = Partition::one_block(2);
    assert_eq!(mobius(&bottom, &top, Lattice::P).unwrap(), BigInt::from(-1));
    let row: Vec<BigInt> =
        all(3).iter().map(|b| mobius(&Partition::singletons(3), b, Lattice::P).unwrap()).collect();
    let expected: Vec<BigInt> = [1, -1, -1, -1, 2].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(row, expected);
    for p in all(4) {
        assert_eq!(mobius(&p, &p, Lattice::P).unwrap(), BigInt::one());
    }
    let crossing = Partition::canonical(&[0, 1, 0, 1]);
    assert!(mobius(&Partition::singletons(4), &crossing, Lattice::NC).is_err());
}

#[test]
fn kernel_examples() {
    assert_eq!(kernel(&[1, 2, 1]), Partition::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap());
    assert_eq!(kernel(&[7, 7, 7]), Partition::one_block(3));
    assert_eq!(kernel(&[1, 2, 3]), Partition::singletons(3));
}

#[test]
fn even_block_count_examples() {
    assert_eq!(Partition::one_block(2).even_block_count(), 1);
    assert_eq!(Partition::singletons(3).even_block_count(), 0);
    let p = Partition::from_blocks(6, &[vec![0, 1], vec![2, 3, 4, 5]]).unwrap();
    assert_eq!(p.even_block_count(), 2);
}

#[test]
fn serializes_as_label_array() {
    let p = Partition::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
    assert_eq!(serde_json::to_string(&p).unwrap(), "[0,1,0]");
    let back: Partition = serde_json::from_str("[0,1,0]").unwrap();
    assert_eq!(back, p);
    assert!(serde_json::from_str::<Partition>("[1,0]").is_err());
}

proptest! {
    #[test]
    fn lattice_laws((a, b, c) in rgs_strategy(6)) {
        let j = a.join(&b).unwrap();
        let m = a.meet(&b).unwrap();
        prop_assert!(a.leq(&j).unwrap() && b.leq(&j).unwrap());
        prop_assert!(m.leq(&a).unwrap() && m.leq(&b).unwrap());
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert_eq!(&a.join(&a).unwrap(), &a);
        prop_assert_eq!(&a.meet(&a).unwrap(), &a);
        prop_assert_eq!(a.join(&m).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&j).unwrap(), a.clone());
        prop_assert_eq!(j.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(m.meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        // join is the least upper bound
        if a.leq(&c).unwrap() && b.leq(&c).unwrap() {
            prop_assert!(j.leq(&c).unwrap());
        }
    }

    #[test]
    fn kernel_collects_equal_indices(v in proptest::collection::vec(0u8..4, 1..8)) {
        let p = kernel(&v);
        for i in 0..v.len() {
            for j in 0..v.len() {
                prop_assert_eq!(p.same_block(i, j), v[i] == v[j]);
            }
        }
    }
}

#[test]
fn mobius_inverts_adjacency() {
    for k in 0..=5 {
        let elems = all(k);
        let mu = mobius_matrix(&elems, Lattice::P).unwrap();
        for (ai, _) in elems.iter().enumerate() {
            for (ci, c) in elems.iter().enumerate() {
                let s: BigInt = elems
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.leq(c).unwrap())
                    .map(|(bi, _)| mu[ai][bi].clone())
                    .sum();
                let delta = if ai == ci { BigInt::one() } else { BigInt::zero() };
                assert_eq!(s, delta, "k={k}");
            }
        }
    }
}

#[test]
fn nc_mobius_matches_recursion() {
    for k in 1..=5 {
        let nc = enumerate(Category::NC, &ColoredWord::uncolored(k)).unwrap();
        let mu = mobius_matrix(&nc, Lattice::NC).unwrap();
        for (i, a) in nc.iter().enumerate() {
            for (j, b) in nc.iter().enumerate() {
                assert_eq!(mu[i][j], mobius(a, b, Lattice::NC).unwrap());
            }
        }
        // μ_NC(0, 1) = (−1)^{k−1} C_{k−1}
        let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let bottom = Partition::singletons(k);
        let top = Partition::one_block(k);
        assert_eq!(mobius(&bottom, &top, Lattice::NC).unwrap(), sign * catalan(k - 1));
    }
}

#[test]
fn category_sizes() {
    for k in 0..=8 {
        let w = ColoredWord::uncolored(k);
        let w2 = ColoredWord::uncolored(2 * k);
        let nc = enumerate(Category::NC, &w).unwrap().len();
        assert_eq!(BigInt::from(nc), catalan(k));
        assert_eq!(BigInt::from(enumerate(Category::NC2, &w2).unwrap().len()), catalan(k));
        assert_eq!(count(Category::NC2, &w2).unwrap(), catalan(k));
        assert_eq!(BigInt::from(all(k).len()), bell(k));
        assert_eq!(count(Category::P2, &w2).unwrap(), odd_double_factorial(2 * k));
        if k <= 5 {
            let p2 = enumerate(Category::P2, &w2).unwrap().len();
            assert_eq!(BigInt::from(p2), odd_double_factorial(2 * k));
        }
    }
}

#[test]
fn counts_match_enumeration_for_all_categories() {
    let cats = [
        Category::P,
        Category::P2,
        Category::Peven,
        Category::P12,
        Category::Ps(Modulus::Finite(3)),
        Category::NC,
        Category::NC2,
        Category::NCeven,
        Category::NC12,
        Category::NCs(Modulus::Finite(3)),
        Category::NCs(Modulus::Infinite),
        Category::MatchP2,
        Category::MatchNC2,
        Category::MatchPeven,
        Category::MatchNCeven,
    ];
    for word in ["", "o", "ob", "oob", "obob", "oobb", "obbo", "oooooo", "obobob"] {
        let w = ColoredWord::parse(word).unwrap();
        for cat in cats {
            let listed = enumerate(cat, &w).unwrap();
            assert_eq!(BigInt::from(listed.len()), count(cat, &w).unwrap(), "{cat} on {word}");
            let every = all(w.len());
            let filtered: Vec<_> = every.iter().filter(|p| cat.contains(p, &w)).cloned().collect();
            let mut sorted = listed.clone();
            sorted.sort_by(canonical_cmp);
            assert_eq!(listed, sorted, "{cat} order");
            assert_eq!(filtered, listed, "{cat} on {word}");
        }
    }
}

#[test]
fn enumeration_is_deterministic_and_duplicate_free() {
    for cat in [Category::P, Category::NC, Category::NCeven] {
        let w = ColoredWord::uncolored(6);
        let a = enumerate(cat, &w).unwrap();
        let b = enumerate(cat, &w).unwrap();
        assert_eq!(a, b);
        let set: HashSet<_> = a.iter().collect();
        assert_eq!(set.len(), a.len());
        assert!(a.windows(2).all(|p| canonical_cmp(&p[0], &p[1]).is_lt()));
    }
}

#[test]
fn fatten_shrink_bijection() {
    assert_eq!(
        Partition::one_block(1).fatten().unwrap(),
        enumerate(Category::NC2, &ColoredWord::uncolored(2)).unwrap()[0]
    );
    for k in 1..=5 {
        let nc = enumerate(Category::NC, &ColoredWord::uncolored(k)).unwrap();
        let nc2: HashSet<Partition> =
            enumerate(Category::NC2, &ColoredWord::uncolored(2 * k)).unwrap().into_iter().collect();
        let images: HashSet<Partition> = nc
            .iter()
            .map(|p| {
                let f = p.fatten().unwrap();
                assert!(f.is_pairing() && f.is_noncrossing());
                assert_eq!(&f.shrink().unwrap(), p);
                f
            })
            .collect();
        assert_eq!(images, nc2);
    }
    assert!(Partition::canonical(&[0, 1, 0, 1]).fatten().is_err());
}

#[test]
fn cycle_relations_on_noncrossing() {
    for p in 1..=6 {
        let gamma = full_cycle(p);
        let gamma_inv = invert(&gamma);
        for sigma in enumerate(Category::NC, &ColoredWord::uncolored(p)).unwrap() {
            let perm = sigma.to_permutation();
            assert_eq!(cycle_count(&perm), sigma.block_count());
            assert_eq!(cycle_count(&compose(&perm, &gamma_inv)) - 1, p - sigma.block_count());
            assert_eq!(cycle_count(&compose(&perm, &gamma)) - 1, sigma.even_block_count());
        }
    }
}

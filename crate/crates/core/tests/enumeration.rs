use std::collections::BTreeSet;

use psl2z_core::arith::{divisor_count, factorize, is_squarefree};
use psl2z_core::enumerate::{
    a_plus_diagonal, enumerate_a_minus, enumerate_a_plus, enumerate_t_plus, norm_zero_elements,
};
use psl2z_core::oracle::brute_force_a_plus;
use psl2z_core::Signature;

fn squarefree_upto(max: u64) -> impl Iterator<Item = u64> {
    (1..=max).filter(|&n| is_squarefree(n).unwrap())
}

#[test]
fn a_plus_bounds_up_to_500() {
    for n in squarefree_upto(500) {
        let set = enumerate_a_plus(n).unwrap();
        for s in &set.elements {
            let (a, b, c) = s.triple();
            assert!(2 * a <= n as i64, "n={n} {s}");
            assert!(2 * b <= n as i64 + 1 && 2 * c <= n as i64 + 1, "n={n} {s}");
        }
        assert!(4 * set.len() as u64 <= n * (n + 1), "n={n}");
    }
}

#[test]
fn a_plus_structure() {
    for n in squarefree_upto(500) {
        let set = enumerate_a_plus(n).unwrap();
        for s in &set.elements {
            let (a, b, c) = s.triple();
            assert!(a >= 1 && b > a && c > a);
            // b <-> c symmetry
            assert!(set.contains(&Signature::new(n, a, b).unwrap()), "n={n} {s}");
            // closed under y
            assert!(set.contains(&s.apply_y()), "n={n} {s}");
        }
        if n == 3 {
            assert_eq!(set.len(), 1);
        } else {
            assert_eq!(set.len() % 3, 0, "n={n}");
            assert_ne!(set.len(), 1);
        }
    }
}

#[test]
fn a_minus_is_negation() {
    for n in squarefree_upto(200) {
        let plus = enumerate_a_plus(n).unwrap();
        let minus = enumerate_a_minus(n).unwrap();
        assert_eq!(plus.len(), minus.len());
        assert!(plus.elements.iter().all(|s| minus.contains(&s.negated())));
    }
}

#[test]
fn triples_partition_a_plus_and_a_minus() {
    for n in squarefree_upto(300) {
        let plus = enumerate_a_plus(n).unwrap();
        let minus = enumerate_a_minus(n).unwrap();
        let triples = enumerate_t_plus(n).unwrap();
        let mut union: Vec<Signature> = plus.elements.clone();
        union.extend(&minus.elements);
        union.sort_unstable();

        let mut covered: Vec<Signature> =
            triples.iter().flat_map(|t| t.members().iter().copied()).collect();
        covered.sort_unstable();
        assert_eq!(covered, union, "n={n}");

        let distinct: BTreeSet<_> = triples.iter().collect();
        assert_eq!(distinct.len(), triples.len());
        for t in &triples {
            assert_eq!(t.members().len(), if n == 3 { 1 } else { 3 });
        }
        if n != 3 {
            assert_eq!(3 * triples.len(), 2 * plus.len(), "n={n}");
        }
    }
}

#[test]
fn norm_zero_count_is_twice_divisor_count() {
    for n in squarefree_upto(1000) {
        let zero = norm_zero_elements(n).unwrap();
        assert_eq!(zero.len() as u64, 2 * divisor_count(n).unwrap());
        assert!(zero.elements.iter().all(|s| s.a() == 0));
    }
}

#[test]
fn divisor_enumeration_matches_triple_loop() {
    for n in squarefree_upto(60) {
        let limit = n.div_ceil(2) + 1;
        assert_eq!(
            brute_force_a_plus(n, limit).unwrap(),
            enumerate_a_plus(n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn diagonal_by_factor_pairs() {
    // independent route: b = c iff n = (b + a)(b - a) with b + a > b - a
    for n in squarefree_upto(400) {
        let mut expected = Vec::new();
        for low in 1..=n {
            if low * low >= n {
                break;
            }
            if n % low == 0 {
                let high = n / low;
                if (high - low) % 2 == 0 {
                    let a = ((high - low) / 2) as i64;
                    let b = ((high + low) / 2) as i64;
                    expected.push((a, b, b));
                }
            }
        }
        expected.sort_unstable();
        let got: Vec<_> = a_plus_diagonal(n).unwrap().elements.iter().map(Signature::triple).collect();
        assert_eq!(got, expected, "n={n}");
        let r = factorize(n).unwrap().prime_count() as u32;
        if n % 2 == 1 && r >= 2 {
            assert_eq!(got.len(), 1 << (r - 1));
        }
    }
}

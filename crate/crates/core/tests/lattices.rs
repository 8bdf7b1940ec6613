use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use orbifold_verify::arith::{FiniteField, F3};
use orbifold_verify::lattice::{coset_min_norm, short_vector_counts, LeechConstruction};
use std::collections::{BTreeMap, HashSet};

fn all_labels() -> Vec<Vec<F3>> {
    (0..729u32).map(|mut n| (0..6).map(|_| { let d = F3::new((n % 3) as i64); n /= 3; d }).collect()).collect()
}

#[test]
fn k12_discriminant_group_is_elementary_abelian() {
    let k = LeechConstruction::new().unwrap();
    let disc = k.k12.discriminant_group().unwrap();
    assert_eq!(disc.invariants, vec![3; 6]);
    assert!(k.leech.discriminant_group().unwrap().invariants.is_empty());
    assert_eq!(k.k12.det(), BigRational::from_integer(BigInt::from(729)));
}

#[test]
fn fixed_coordinates_cover_k12_dual_cosets() {
    let k = LeechConstruction::new().unwrap();
    let dual = k.k12.dual().unwrap();
    assert_eq!(k.k12.index_in(&dual).unwrap(), BigInt::from(729));
    let mut classes = HashSet::new();
    for a in all_labels() {
        let rep = LeechConstruction::k12_dual_rep(&a);
        assert!(dual.contains(&rep));
        assert_eq!(LeechConstruction::k12_label(&rep), a);
        // labels are constant on cosets
        for b in k.k12.basis() {
            let moved: Vec<i64> = rep.iter().zip(b).map(|(x, y)| x + y).collect();
            assert_eq!(LeechConstruction::k12_label(&moved), a);
        }
        classes.insert(a);
    }
    assert_eq!(classes.len(), 729);
}

#[test]
fn k12_coset_minimum_norms() {
    let k = LeechConstruction::new().unwrap();
    let mut by_norm: BTreeMap<Rational64, usize> = BTreeMap::new();
    let mut singular = 0;
    for a in all_labels() {
        let rep = LeechConstruction::k12_dual_rep(&a);
        let (m, v) = coset_min_norm(&k.k12, &rep).unwrap();
        assert_eq!(LeechConstruction::k12_label(&v), a);
        let weight = a.iter().filter(|x| !x.is_zero()).count();
        // q_K12 = 3|x|^2 mod 3 equals the Hamming weight mod 3
        let three_norm = m * 3;
        assert!(three_norm.is_integer());
        assert_eq!(three_norm.to_integer().rem_euclid(3), (weight % 3) as i64);
        if weight > 0 {
            *by_norm.entry(m).or_insert(0) += 1;
            if weight % 3 == 0 {
                singular += 1;
            }
        }
    }
    let allowed = [Rational64::new(4, 3), Rational64::from_integer(2), Rational64::new(8, 3), Rational64::new(10, 3)];
    assert!(by_norm.keys().all(|n| allowed.contains(n)), "{by_norm:?}");
    assert_eq!(by_norm.values().sum::<usize>(), 728);
    assert_eq!(singular, 224);
}

#[test]
fn leech_norm_four_shell_by_generic_search() {
    let k = LeechConstruction::new().unwrap();
    let counts = short_vector_counts(&k.leech, Rational64::from_integer(4)).unwrap();
    assert_eq!(counts.len(), 1);
    assert_eq!(counts[&Rational64::from_integer(4)], 196560);
}

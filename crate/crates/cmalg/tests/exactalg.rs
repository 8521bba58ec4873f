use cmalg::exactalg::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn int_matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_dense(&dense, cols)
}

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // Bareiss fraction-free determinant, used as an independent check of unimodularity
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn check_smith(m: &IntMatrix) {
    let snf = smith_normal_form(m).unwrap();
    let prod = snf.u.mul(&Integers, m).unwrap().mul(&Integers, &snf.v).unwrap();
    assert_eq!(prod, snf.s, "U·m·V = S");
    let diag = snf.diagonal();
    for w in diag.windows(2) {
        if !w[1].is_zero() {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain {:?}", diag);
        } else {
            // zeros only at the end
        }
        assert!(!(w[0].is_zero() && !w[1].is_zero()));
    }
    for (i, row) in snf.s.to_dense().iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                assert!(x.is_zero());
            }
        }
    }
    let du = det(&snf.u.to_dense());
    let dv = det(&snf.v.to_dense());
    assert!(du == bi(1) || du == bi(-1));
    assert!(dv == bi(1) || dv == bi(-1));
}

#[test]
fn smith_diagonal_input() {
    let m = int_matrix(&[vec![2, 0], vec![0, 0]], 2);
    let snf = smith_normal_form(&m).unwrap();
    assert_eq!(snf.diagonal(), vec![bi(2), bi(0)]);
    let g = fp_group(&Integers, 2, &m).unwrap();
    assert_eq!(g.invariants(), Invariants { free_rank: 1, torsion: vec![bi(2)] });
    assert_eq!(g.to_string(), "Z + Z/2");
}

#[test]
fn smith_identity() {
    let m = int_matrix(&[vec![1]], 1);
    let snf = smith_normal_form(&m).unwrap();
    assert_eq!(snf.diagonal(), vec![bi(1)]);
    assert!(fp_group(&Integers, 1, &m).unwrap().is_trivial());
}

#[test]
fn smith_random_sparse_20x12() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let rows: Vec<Vec<i64>> = (0..20)
            .map(|_| (0..12).map(|_| if rng.gen_bool(0.25) { rng.gen_range(-9..=9) } else { 0 }).collect())
            .collect();
        check_smith(&int_matrix(&rows, 12));
    }
}

#[test]
fn smith_capacity_guard() {
    let m = IntMatrix::zeros(100, 100);
    let cap = Capacity { max_dense: 50, ..Capacity::default() };
    let r = with_capacity(cap, || smith_normal_form(&m));
    assert!(matches!(r, Err(cmalg::Error::CapacityExceeded { .. })));
}

#[test]
fn fp_group_examples() {
    let m = int_matrix(&[vec![2, 0]], 2);
    let g = fp_group(&Integers, 2, &m).unwrap();
    assert_eq!(g.invariants(), Invariants { free_rank: 1, torsion: vec![bi(2)] });
    let m = int_matrix(&[vec![1]], 1);
    assert!(fp_group(&Integers, 1, &m).unwrap().is_trivial());
}

#[test]
fn fp_group_over_field_has_no_torsion() {
    let q = Coefficients::Rationals;
    let m = SparseMatrix::from_dense(&[vec![q.from_i64(2), q.from_i64(4)]], 2);
    let g = fp_group(&q, 2, &m).unwrap();
    assert_eq!(g.free_rank, 1);
    assert!(g.torsion.is_empty());
}

#[test]
fn map_kernel_identity_and_zero() {
    let z6 = fp_group(&Integers, 1, &int_matrix(&[vec![6]], 1)).unwrap();
    let id = int_matrix(&[vec![1]], 1);
    let k = map_kernel(&z6, &z6, &id).unwrap();
    assert!(k.group.is_trivial());
    let z = FPAbelianGroup::free(&Integers, 1);
    let zero = IntMatrix::zeros(1, 1);
    let k = map_kernel(&z6, &z, &zero).unwrap();
    assert_eq!(k.group.invariants(), Invariants { free_rank: 0, torsion: vec![bi(6)] });
}

#[test]
fn map_kernel_rejects_ill_defined() {
    // Z/2 → Z/3 sending the generator to the generator is not a homomorphism
    let z2 = fp_group(&Integers, 1, &int_matrix(&[vec![2]], 1)).unwrap();
    let z3 = fp_group(&Integers, 1, &int_matrix(&[vec![3]], 1)).unwrap();
    let r = map_kernel(&z2, &z3, &int_matrix(&[vec![1]], 1));
    assert!(matches!(r, Err(cmalg::Error::IllDefinedMap { .. })));
}

#[test]
fn map_kernel_projection_z4_to_z2() {
    let z4 = fp_group(&Integers, 1, &int_matrix(&[vec![4]], 1)).unwrap();
    let z2 = fp_group(&Integers, 1, &int_matrix(&[vec![2]], 1)).unwrap();
    let k = map_kernel(&z4, &z2, &int_matrix(&[vec![1]], 1)).unwrap();
    assert_eq!(k.group.invariants(), Invariants { free_rank: 0, torsion: vec![bi(2)] });
    // the kernel generator is 2 in Z/4
    let incl = &k.inclusion[0];
    assert!(z4.element_equal(incl, &[bi(2)]).unwrap());
}

#[test]
fn element_equal_examples() {
    let z2 = fp_group(&Integers, 1, &int_matrix(&[vec![2]], 1)).unwrap();
    assert!(z2.element_equal(&[bi(2)], &[bi(0)]).unwrap());
    assert!(z2.element_equal(&[bi(5)], &[bi(5)]).unwrap());
    assert!(!z2.element_equal(&[bi(1)], &[bi(0)]).unwrap());
}

#[test]
fn homology_small_complexes() {
    // 0 → Z → 0
    let c = GradedComplexSlice::new(Integers, 0, vec![1], vec![]).unwrap();
    assert_eq!(complex_homology(&c, 0).unwrap().invariants(), Invariants { free_rank: 1, torsion: vec![] });
    // 0 → Z -2-> Z → 0 in degrees 1, 0
    let c = GradedComplexSlice::new(Integers, 0, vec![1, 1], vec![int_matrix(&[vec![2]], 1)]).unwrap();
    assert_eq!(complex_homology(&c, 0).unwrap().invariants(), Invariants { free_rank: 0, torsion: vec![bi(2)] });
    assert!(complex_homology(&c, 1).unwrap().is_trivial());
}

#[test]
fn homology_detects_non_complex() {
    let c = GradedComplexSlice::new(
        Integers,
        0,
        vec![1, 1, 1],
        vec![int_matrix(&[vec![1]], 1), int_matrix(&[vec![1]], 1)],
    )
    .unwrap();
    assert!(matches!(complex_homology(&c, 1), Err(cmalg::Error::NotAComplex { .. })));
}

#[test]
fn invariants_direct_sum_is_normalized() {
    let a = Invariants { free_rank: 0, torsion: vec![bi(2)] };
    let b = Invariants { free_rank: 1, torsion: vec![bi(3)] };
    assert_eq!(a.direct_sum(&b), Invariants { free_rank: 1, torsion: vec![bi(6)] });
}

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..6, 0usize..6).prop_flat_map(|(c, r)| {
        (Just(c), prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_is_exact((c, rows) in small_matrix()) {
        let m = int_matrix(&rows, c);
        if m.rows() > 0 {
            check_smith(&m);
        }
    }

    #[test]
    fn fp_group_ignores_redundant_relation((c, rows) in small_matrix(), coeffs in prop::collection::vec(-3i64..=3, 6)) {
        let m = int_matrix(&rows, c);
        let g = fp_group(&Integers, c, &m).unwrap();
        let mut extra = vec![0i64; c];
        for (r, k) in rows.iter().zip(&coeffs) {
            for j in 0..c { extra[j] += k * r[j]; }
        }
        let mut rows2 = rows.clone();
        rows2.push(extra);
        let g2 = fp_group(&Integers, c, &int_matrix(&rows2, c)).unwrap();
        prop_assert_eq!(g.invariants(), g2.invariants());
    }

    #[test]
    fn fp_group_matches_smith_diagonal((c, rows) in small_matrix()) {
        let m = int_matrix(&rows, c);
        let g = fp_group(&Integers, c, &m).unwrap();
        let expected = if m.rows() == 0 {
            Invariants { free_rank: c, torsion: vec![] }
        } else {
            let d = smith_normal_form(&m).unwrap().diagonal();
            let nonzero = d.iter().filter(|x| !x.is_zero()).count();
            Invariants::from_moduli(c - nonzero, &d.into_iter().filter(|x| !x.is_zero()).collect::<Vec<_>>())
        };
        prop_assert_eq!(g.invariants(), expected);
    }

    #[test]
    fn element_equal_is_an_equivalence((c, rows) in small_matrix(),
        a in prop::collection::vec(-5i64..=5, 6), b in prop::collection::vec(-5i64..=5, 6), e in prop::collection::vec(-5i64..=5, 6)) {
        let m = int_matrix(&rows, c);
        let g = fp_group(&Integers, c, &m).unwrap();
        let v = |x: &[i64]| x[..c].iter().map(|&t| bi(t)).collect::<Vec<_>>();
        let (a, b, e) = (v(&a), v(&b), v(&e));
        prop_assert!(g.element_equal(&a, &a).unwrap());
        prop_assert_eq!(g.element_equal(&a, &b).unwrap(), g.element_equal(&b, &a).unwrap());
        if g.element_equal(&a, &b).unwrap() && g.element_equal(&b, &e).unwrap() {
            prop_assert!(g.element_equal(&a, &e).unwrap());
        }
        // adding a relation row never changes the class
        if let Some(r) = rows.first() {
            let shifted: Vec<BigInt> = a.iter().zip(r).map(|(x, y)| x + bi(*y)).collect();
            prop_assert!(g.element_equal(&a, &shifted).unwrap());
        }
    }

    #[test]
    fn reduce_then_lift_round_trips((c, rows) in small_matrix(), a in prop::collection::vec(-5i64..=5, 6)) {
        let g = fp_group(&Integers, c, &int_matrix(&rows, c)).unwrap();
        let a: Vec<BigInt> = a[..c].iter().map(|&t| bi(t)).collect();
        let z = g.reduce(&a).unwrap();
        let back = g.lift_nf(&z).unwrap();
        prop_assert!(g.element_equal(&a, &back).unwrap());
    }

    #[test]
    fn single_term_complex_homology(n in 0usize..5) {
        let c = GradedComplexSlice::new(Integers, 3, vec![n], vec![]).unwrap();
        prop_assert_eq!(complex_homology(&c, 3).unwrap().invariants(), Invariants { free_rank: n, torsion: vec![] });
    }
}

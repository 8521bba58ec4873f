mod common;

use cmalg::cyclic::{operator, OperatorKind};
use cmalg::error::Error;
use cmalg::exactalg::{complex_homology, Coefficients, GradedComplexSlice, Invariants};
use cmalg::specseq::*;
use cmalg::{Domain, SparseMatrix};
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn mat(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| b(x)).collect()).collect()
}

fn z(r: usize) -> Invariants {
    Invariants { free_rank: r, torsion: vec![] }
}

fn zmod(m: i64) -> Invariants {
    Invariants::from_moduli(0, &[b(m)])
}

fn trivial() -> Invariants {
    Invariants::trivial()
}

/// A single row 0 → ... with C^{p,0} given and horizontal maps given.
fn row_bicomplex(moduli: Vec<Vec<i64>>, maps: Vec<Mat>) -> Bicomplex {
    let cols = moduli.len();
    let m: Vec<Vec<Vec<BigInt>>> = moduli.iter().map(|c| vec![c.iter().map(|&x| b(x)).collect()]).collect();
    let mut h = Vec::new();
    for p in 0..cols {
        let next = if p + 1 < cols { moduli[p + 1].len() } else { 0 };
        h.push(vec![maps.get(p).cloned().unwrap_or_else(|| vec![vec![]; moduli[p].len()].into_iter().map(|_: Vec<BigInt>| vec![BigInt::zero(); next]).collect())]);
    }
    let v = moduli.iter().map(|c| vec![vec![Vec::new(); c.len()]]).collect();
    Bicomplex::new(m, h, v).unwrap()
}

#[test]
fn single_entry() {
    let bc = row_bicomplex(vec![vec![0]], vec![]);
    let c = couple_from_bicomplex(&bc).unwrap();
    assert_eq!(c.e_support(), vec![(0, 0)]);
    assert_eq!(c.e_term(0, 0).unwrap().invariants(), z(1));
    let t = bc.filtered_totals().unwrap();
    let rep = converges_check(&c, &t, 5).unwrap();
    assert!(rep.converges);
    assert_eq!(rep.stable_page, 1);
}

#[test]
fn two_columns_times_two() {
    let bc = row_bicomplex(vec![vec![0], vec![0]], vec![mat(&[&[2]])]);
    let c = couple_from_bicomplex(&bc).unwrap();
    assert_eq!(c.e_term(0, 0).unwrap().invariants(), z(1));
    assert_eq!(c.e_term(1, 0).unwrap().invariants(), z(1));
    assert_eq!(page(&c, 2, 1, 0).unwrap().invariants(), zmod(2));
    assert!(page(&c, 2, 0, 0).unwrap().is_trivial());
    assert_eq!(bc.total_homology(1).unwrap().invariants(), zmod(2));
    assert!(bc.total_homology(0).unwrap().is_trivial());
    assert!(converges_check(&c, &bc.filtered_totals().unwrap(), 5).unwrap().converges);
}

#[test]
fn staircase_has_a_d2() {
    let bc = staircase(3).unwrap();
    let c = couple_from_bicomplex(&bc).unwrap();
    let c2 = derive(&c).unwrap();
    assert_eq!(c2.r, 2);
    assert_eq!(c2.e_term(0, 1).unwrap().invariants(), z(1));
    assert_eq!(c2.e_term(2, 0).unwrap().invariants(), z(1));
    assert_eq!(c2.e_term(1, 1).unwrap().invariants(), zmod(3));
    let d2 = c2.differential((0, 1));
    assert!(d2.iter().flatten().any(|x| !x.is_zero()));
    let c3 = derive(&c2).unwrap();
    assert_eq!(c3.e_support(), vec![(1, 1)]);
    assert_eq!(bc.total_homology(2).unwrap().invariants(), zmod(3));
    assert!(bc.total_homology(1).unwrap().is_trivial());
    let rep = converges_check(&c, &bc.filtered_totals().unwrap(), 5).unwrap();
    assert!(rep.converges);
    assert_eq!(rep.stable_page, 3);
}

#[test]
fn not_stabilized() {
    let c = couple_from_bicomplex(&staircase(2).unwrap()).unwrap();
    assert!(matches!(stabilize(&c, 2), Err(Error::NotStabilized(2))));
    assert!(matches!(page(&derive(&c).unwrap(), 1, 0, 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn invalid_bicomplexes() {
    // d_h² ≠ 0
    let m = vec![vec![vec![b(0)]], vec![vec![b(0)]], vec![vec![b(0)]]];
    let h = vec![vec![mat(&[&[1]])], vec![mat(&[&[1]])], vec![vec![vec![]]]];
    let v = vec![vec![vec![vec![]]]; 3];
    assert!(matches!(Bicomplex::new(m, h, v), Err(Error::NotAComplex { degree: 0 })));
    // ℤ/2 → ℤ by 1 is not a homomorphism
    let m = vec![vec![vec![b(2)]], vec![vec![b(0)]]];
    let h = vec![vec![mat(&[&[1]])], vec![vec![vec![]]]];
    let v = vec![vec![vec![vec![]]]; 2];
    assert!(matches!(Bicomplex::new(m, h, v), Err(Error::IllDefinedMap { relation: 0 })));
    // squares commuting instead of anticommuting
    let one = || mat(&[&[1]]);
    let m = vec![vec![vec![b(0)], vec![b(0)]]; 2];
    let h = vec![vec![one(), one()], vec![vec![vec![]], vec![vec![]]]];
    let v = vec![vec![one(), vec![vec![]]], vec![one(), vec![vec![]]]];
    assert!(matches!(Bicomplex::new(m, h, v), Err(Error::NotAComplex { degree: 0 })));
}

#[test]
fn invalid_basis_change() {
    let a = Cochain { moduli: vec![vec![b(2), b(0)]], maps: vec![] };
    let one = Cochain { moduli: vec![vec![b(0)]], maps: vec![] };
    let mut bc = Bicomplex::tensor(&a, &one).unwrap();
    // e_0 + e_1 would give ℤ/2 an element of infinite order
    assert!(bc.change_basis(0, 0, 0, 1, &b(1)).is_err());
    assert!(bc.change_basis(0, 0, 1, 0, &b(1)).is_ok());
}

/// D = ℤ along total degree 0 with i = id, capped by E^{0,0} = ℤ; k = 0 so nothing changes
/// except the shift of j.
#[test]
fn identity_couple_derives_to_itself() {
    let mut parts = CoupleParts::default();
    for p in -3..=0 {
        parts.d.insert((p, -p), vec![b(0)]);
        if p > -3 {
            parts.i.insert((p, -p), mat(&[&[1]]));
        }
    }
    parts.e.insert((0, 0), vec![b(0)]);
    parts.j.insert((0, 0), mat(&[&[1]]));
    let c = ExactCouple::from_parts(1, &parts).unwrap();
    let d = derive(&c).unwrap();
    assert_eq!(d.e_support(), vec![(0, 0)]);
    assert_eq!(d.e_term(0, 0).unwrap().invariants(), z(1));
    for p in -3..0 {
        assert_eq!(d.d_term(p, -p).map(|g| g.invariants()), Some(z(1)));
    }
    assert!(d.d_term(0, 0).is_none_or(|g| g.is_trivial()));
    let e = derive(&d).unwrap();
    assert_eq!(e.e_support(), vec![(0, 0)]);
}

#[test]
fn zero_couple_stays_zero() {
    let mut parts = CoupleParts::default();
    parts.e.insert((0, 0), vec![b(1)]);
    parts.e.insert((2, -1), vec![b(1)]);
    let c = ExactCouple::from_parts(1, &parts).unwrap();
    assert!(c.e_support().is_empty());
    assert!(derive(&c).unwrap().e_support().is_empty());
}

#[test]
fn from_parts_checks_exactness() {
    // j must see the cokernel of i = 2; E = ℤ with j = 1 does not
    let mut parts = CoupleParts::default();
    parts.d.insert((0, 0), vec![b(0)]);
    parts.d.insert((-1, 1), vec![b(0)]);
    parts.i.insert((0, 0), mat(&[&[2]]));
    parts.e.insert((-1, 1), vec![b(0)]);
    parts.j.insert((-1, 1), mat(&[&[1]]));
    assert!(matches!(ExactCouple::from_parts(1, &parts), Err(Error::NotExact(_))));
    // ℤ -2-> ℤ → ℤ/2 → 0, with E^{0,0} = ℤ capping the top of D
    let mut parts = CoupleParts::default();
    parts.d.insert((0, 0), vec![b(0)]);
    parts.d.insert((-1, 1), vec![b(0)]);
    parts.i.insert((0, 0), mat(&[&[2]]));
    parts.e.insert((-1, 1), vec![b(2)]);
    parts.j.insert((-1, 1), mat(&[&[1]]));
    parts.e.insert((0, 0), vec![b(0)]);
    parts.j.insert((0, 0), mat(&[&[1]]));
    let c = ExactCouple::from_parts(1, &parts).unwrap();
    assert_eq!(c.e_term(-1, 1).unwrap().invariants(), zmod(2));
}

fn mod7_entries(m: &SparseMatrix<cmalg::Scalar>) -> Mat {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(|x| x.to_integer().mod_floor(&b(7))).collect())
        .collect()
}

/// Columns 0, 1 and rows 0, 1 of the cyclic bicomplex, reversed into cohomological degrees.
fn cc_truncation(r: &cmalg::algebra::FinAlgebra) -> Bicomplex {
    let f = r.coeffs();
    let op = |n: usize, k: OperatorKind| operator(r, n, k).unwrap().matrix;
    let one_minus_t = |n: usize| {
        let t = op(n, OperatorKind::Cyclic);
        SparseMatrix::identity(&f, t.rows()).sub(&f, &t).unwrap()
    };
    let neg = |m: SparseMatrix<cmalg::Scalar>| m.scale(&f, &f.from_i64(-1));
    let d0 = r.dim();
    let d1 = d0 * d0;
    let seven = |n: usize| vec![b(7); n];
    // entry (p', q') holds CC_{1−p', 1−q'} = C_{1−q'}
    let moduli = vec![vec![seven(d1), seven(d0)], vec![seven(d1), seven(d0)]];
    let horizontal = vec![
        vec![mod7_entries(&one_minus_t(1)), mod7_entries(&one_minus_t(0))],
        vec![vec![vec![]; d1], vec![vec![]; d0]],
    ];
    let vertical = vec![
        vec![mod7_entries(&neg(op(1, OperatorKind::BPrime))), vec![vec![]; d0]],
        vec![mod7_entries(&op(1, OperatorKind::B)), vec![vec![]; d0]],
    ];
    Bicomplex::new(moduli, horizontal, vertical).unwrap()
}

/// Total homology over 𝔽_7 from the exact-linear-algebra layer, as groups (ℤ/7)^k.
fn total_over_f7(bc: &Bicomplex) -> BTreeMap<i64, Invariants> {
    let f = Coefficients::PrimeField(7);
    let top = bc.top_degree();
    let dims: Vec<usize> = (0..=top).map(|k| bc.tot_dim(top - k)).collect();
    let boundaries = (0..top)
        .map(|k| {
            let d = bc.tot_differential(top - k - 1);
            let rows: Vec<Vec<cmalg::Scalar>> = d.iter().map(|r| r.iter().map(|x| cmalg::Scalar::from_integer(x.mod_floor(&b(7)))).collect()).collect();
            SparseMatrix::from_dense(&rows, dims[k as usize])
        })
        .collect();
    let c = GradedComplexSlice::new(f, 0, dims, boundaries).unwrap();
    (0..=top)
        .map(|n| (n, complex_homology(&c, top - n).unwrap().invariants()))
        .collect()
}

#[test]
fn cyclic_bicomplex_truncation() {
    for r in [prime_field(7), trunc(Coefficients::PrimeField(7), &[("e", 2)])] {
        let bc = cc_truncation(&r);
        let c = couple_from_bicomplex(&bc).unwrap();
        let totals = bc.filtered_totals().unwrap();
        let oracle = total_over_f7(&bc);
        for (n, t) in &totals.degrees {
            assert_eq!(&t.total, &oracle[n]);
        }
        let rep = converges_check(&c, &totals, 6).unwrap();
        assert!(rep.converges);
    }
}

#[test]
fn random_f7_bicomplexes_match_total_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let bc = random_f7_bicomplex(&mut rng);
        let c = couple_from_bicomplex(&bc).unwrap();
        let inf = stabilize(&c, 8).unwrap();
        let oracle = total_over_f7(&bc);
        for (n, expected) in oracle {
            let mut sum = Invariants::trivial();
            for p in 0..=n {
                if let Some(g) = inf.e_term(p, n - p) {
                    sum = sum.direct_sum(&g.invariants());
                }
            }
            assert_eq!(sum, expected, "degree {n}");
        }
    }
}

/// 3×3 bicomplex of 𝔽_7-vector spaces: a tensor product of two random complexes.
fn random_f7_bicomplex(rng: &mut ChaCha8Rng) -> Bicomplex {
    use rand::Rng;
    let complex = |rng: &mut ChaCha8Rng| {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
        // d1 = 0 after a random d0 keeps d² = 0; d1 random after d0 = 0 likewise
        let first = rng.gen_bool(0.5);
        let maps = (0..2)
            .map(|n| {
                (0..dims[n])
                    .map(|_| (0..dims[n + 1]).map(|_| b(if (n == 0) == first { rng.gen_range(0..7) } else { 0 })).collect())
                    .collect()
            })
            .collect();
        Cochain { moduli: dims.iter().map(|&d| vec![b(7); d]).collect(), maps }
    };
    let a = complex(rng);
    let c = complex(rng);
    Bicomplex::tensor(&a, &c).unwrap()
}

#[test]
fn one_column_collapses() {
    // column ℤ -3-> ℤ ⊕ ℤ/4
    let m = vec![vec![vec![b(0)], vec![b(0), b(4)]]];
    let h = vec![vec![vec![vec![]], vec![vec![], vec![]]]];
    let v = vec![vec![mat(&[&[3, 1]]), vec![vec![], vec![]]]];
    let bc = Bicomplex::new(m, h, v).unwrap();
    let c = couple_from_bicomplex(&bc).unwrap();
    let c2 = derive(&c).unwrap();
    for n in 0..=1 {
        let e1 = c.e_term(0, n).map(|g| g.invariants()).unwrap_or_else(trivial);
        let e2 = c2.e_term(0, n).map(|g| g.invariants()).unwrap_or_else(trivial);
        assert_eq!(e1, e2);
        assert_eq!(e1, bc.total_homology(n).unwrap().invariants());
    }
    // (0,1) = −3·(1,0) and 4·(0,1) = 0
    assert_eq!(bc.total_homology(1).unwrap().invariants(), zmod(12));
}

#[test]
fn zero_differentials() {
    let a = Cochain { moduli: vec![vec![b(0)], vec![b(2), b(0)]], maps: vec![mat(&[&[0, 0]])] };
    let c = Cochain { moduli: vec![vec![b(3)], vec![b(0)]], maps: vec![mat(&[&[0]])] };
    let bc = Bicomplex::tensor(&a, &c).unwrap();
    let cp = couple_from_bicomplex(&bc).unwrap();
    let inf = stabilize(&cp, 5).unwrap();
    let totals = bc.filtered_totals().unwrap();
    for n in 0..=2 {
        let mut sum = trivial();
        for p in 0..=n {
            let e1 = cp.e_term(p, n - p).map(|g| g.invariants()).unwrap_or_else(trivial);
            let ei = inf.e_term(p, n - p).map(|g| g.invariants()).unwrap_or_else(trivial);
            assert_eq!(e1, ei);
            let raw: Vec<BigInt> = bc.entry(p as usize, (n - p) as usize).to_vec();
            if (n - p) < 2 && p < 2 {
                assert_eq!(e1, Invariants::from_moduli(0, &raw));
            }
            sum = sum.direct_sum(&e1);
        }
        assert_eq!(sum, totals.degrees[&n].total);
    }
}

/// derive agrees with ker d_r / im d_r on the page, with the filtration formula for E_r, and
/// zero terms stay zero.
#[test]
fn derived_pages_agree_with_filtration_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..6 {
        let bc = random_bicomplex(&mut rng, 3, 3).unwrap();
        let mut c = couple_from_bicomplex(&bc).unwrap();
        for r in 1..=4 {
            let pg = c.page();
            assert!(pg.d_squared_zero());
            for p in 0..3 {
                for q in 0..3 {
                    assert_eq!(pg.term(p, q), bc.filtration_page(r, p, q).unwrap().invariants(), "E_{r}^({p},{q})");
                }
            }
            let next = derive(&c).unwrap();
            for p in 0..3 {
                for q in 0..3 {
                    let got = next.e_term(p, q).map(|g| g.invariants()).unwrap_or_else(trivial);
                    assert_eq!(got, pg.homology(p, q).unwrap());
                    if pg.term(p, q).is_trivial() {
                        assert!(got.is_trivial());
                    }
                }
            }
            c = next;
        }
    }
}

#[test]
fn random_bicomplexes_converge() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..25 {
        let bc = random_bicomplex(&mut rng, 4, 4).unwrap();
        let c = couple_from_bicomplex(&bc).unwrap();
        let rep = converges_check(&c, &bc.filtered_totals().unwrap(), 8).unwrap();
        assert!(rep.converges, "{rep:?}");
        assert!(rep.stable_page <= 4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tensor_bicomplexes_converge(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bc = random_bicomplex(&mut rng, 2, 3).unwrap();
        let c = couple_from_bicomplex(&bc).unwrap();
        let rep = converges_check(&c, &bc.filtered_totals().unwrap(), 6).unwrap();
        prop_assert!(rep.converges);
    }
}


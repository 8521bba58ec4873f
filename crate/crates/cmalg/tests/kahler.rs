use cmalg::algebra::*;
use cmalg::exactalg::{Coefficients, Invariants};
use cmalg::kahler::*;
use cmalg::Scalar;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn trunc(c: Coefficients, vars: &[(&str, usize)]) -> FinAlgebra {
    let v: Vec<(String, usize)> = vars.iter().map(|(n, e)| (n.to_string(), *e)).collect();
    truncated_polynomial(c, &v).unwrap()
}

fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

fn square_zero_xy() -> FinAlgebra {
    let mut t = vec![vec![vec![q(0); 3]; 3]; 3];
    for i in 0..3 {
        t[0][i][i] = q(1);
        t[i][0][i] = q(1);
    }
    make_structure_algebra(Coefficients::Rationals, 3, vec![q(1), q(0), q(0)], t, Some(vec!["1".into(), "x".into(), "y".into()]))
        .unwrap()
}

fn pair(r: &FinAlgebra, names: &[&str]) -> SplitNilpotentPair {
    let gens: Vec<RingElement> = names.iter().map(|n| r.parse_element(n).unwrap()).collect();
    split_nilpotent_pair(r, &gens).unwrap()
}

fn el(r: &FinAlgebra, s: &str) -> RingElement {
    r.parse_element(s).unwrap()
}

fn elementary(p: u64, k: usize) -> Invariants {
    Invariants::from_moduli(0, &vec![BigInt::from(p); k])
}

#[test]
fn omega_one_examples() {
    let r = trunc(Coefficients::Rationals, &[("e", 2)]);
    let w = omega(&r, 1).unwrap();
    assert_eq!(w.rank(), 1);
    // ε dε = 0 because 2ε dε = d(ε²) = 0
    let ede = w.form(&el(&r, "e"), &[el(&r, "e")]).unwrap();
    assert!(w.is_zero(&ede).unwrap());
    assert!(!w.is_zero(&w.form(&el(&r, "1"), &[el(&r, "e")]).unwrap()).unwrap());

    let r = square_zero_xy();
    let w = omega(&r, 1).unwrap();
    assert_eq!(w.rank(), 3);
    let ydx = w.form(&el(&r, "y"), &[el(&r, "x")]).unwrap();
    let xdy = w.form(&el(&r, "x"), &[el(&r, "y")]).unwrap();
    let neg: Vec<Scalar> = xdy.iter().map(|c| -c).collect();
    assert!(w.element_equal(&ydx, &neg).unwrap());
    assert!(w.is_zero(&w.form(&el(&r, "x"), &[el(&r, "x")]).unwrap()).unwrap());

    let f7 = make_structure_algebra(Coefficients::PrimeField(7), 1, vec![q(1)], vec![vec![vec![q(1)]]], None).unwrap();
    assert!(omega(&f7, 1).unwrap().group.is_trivial());
}

#[test]
fn omega_zero_is_the_ring() {
    let r = square_zero_xy();
    assert_eq!(omega(&r, 0).unwrap().rank(), 3);
}

#[test]
fn omega_three_of_square_zero_plane_vanishes() {
    let r = square_zero_xy();
    assert_eq!(omega(&r, 2).unwrap().rank(), 1);
    assert!(omega(&r, 3).unwrap().group.is_trivial());
}

#[test]
fn de_rham_examples() {
    let r = trunc(Coefficients::Rationals, &[("e", 2)]);
    let d0 = de_rham_d(&r, 0).unwrap();
    let e = d0.source.form(&el(&r, "e"), &[]).unwrap();
    let de = d0.target.form(&el(&r, "1"), &[el(&r, "e")]).unwrap();
    assert!(d0.target.element_equal(&d0.apply(&e), &de).unwrap());

    let r = square_zero_xy();
    let d1 = de_rham_d(&r, 1).unwrap();
    let xdy = d1.source.form(&el(&r, "x"), &[el(&r, "y")]).unwrap();
    let dxdy = d1.target.form(&el(&r, "1"), &[el(&r, "x"), el(&r, "y")]).unwrap();
    assert!(d1.target.element_equal(&d1.apply(&xdy), &dxdy).unwrap());
}

#[test]
fn d_squared_is_zero_as_matrices() {
    for r in [
        trunc(Coefficients::Rationals, &[("e", 3)]),
        square_zero_xy(),
        trunc(Coefficients::PrimeField(3), &[("x", 2), ("y", 2)]),
    ] {
        for n in 0..2 {
            let a = de_rham_d(&r, n).unwrap().nf_matrix().unwrap();
            let b = de_rham_d(&r, n + 1).unwrap().nf_matrix().unwrap();
            let f = r.coeffs();
            for row in &a {
                for j in 0..b.first().map_or(0, |x| x.len()) {
                    let mut s = Scalar::zero();
                    for (k, c) in row.iter().enumerate() {
                        s += c * &b[k][j];
                    }
                    assert!(f.from_rational(&s).unwrap().is_zero(), "{r} n={n}");
                }
            }
        }
    }
}

#[test]
fn relative_examples() {
    let r = trunc(Coefficients::Rationals, &[("e", 2)]);
    let p = pair(&r, &["e"]);
    assert_eq!(relative_omega(&p, 1).unwrap().invariants(), Invariants { free_rank: 1, torsion: vec![] });
    let rel0 = relative_omega(&p, 0).unwrap();
    assert_eq!(rel0.invariants().free_rank, 1);
    assert_eq!(rel0.generators().len(), 1);
    assert!(rel0.generators()[0][0].is_zero());

    let r2 = trunc(Coefficients::PrimeField(2), &[("x", 2)]);
    let p2 = pair(&r2, &["x"]);
    let rel = relative_omega(&p2, 1).unwrap();
    assert_eq!(rel.invariants(), elementary(2, 2));
    assert_eq!(rel.invariants().order(), Some(BigInt::from(4)));
}

#[test]
fn omega_mod_exact_examples() {
    let r = trunc(Coefficients::PrimeField(7), &[("e", 2)]);
    assert!(omega_mod_exact(&pair(&r, &["e"]), 1).unwrap().group().is_trivial());
    let r = trunc(Coefficients::Rationals, &[("e", 2)]);
    assert!(omega_mod_exact(&pair(&r, &["e"]), 1).unwrap().group().is_trivial());

    let r = trunc(Coefficients::PrimeField(2), &[("x", 2)]);
    let qt = omega_mod_exact(&pair(&r, &["x"]), 1).unwrap();
    assert_eq!(qt.invariants(), elementary(2, 1));
    let w = &qt.relative.absolute;
    assert!(!qt.is_zero(&w.form(&el(&r, "x"), &[el(&r, "x")]).unwrap()).unwrap());
    assert!(qt.is_zero(&w.form(&el(&r, "1"), &[el(&r, "x")]).unwrap()).unwrap());
}

#[test]
fn c_d_epsilon_equals_minus_epsilon_dc() {
    for coeffs in [Coefficients::Rationals, Coefficients::PrimeField(5)] {
        let r = trunc(coeffs, &[("x", 2), ("e", 2)]);
        let p = pair(&r, &["e", "x*e"]);
        let qt = omega_mod_exact(&p, 1).unwrap();
        let w = &qt.relative.absolute;
        for c in ["x", "1+x", "2-3*x"] {
            let lhs = w.form(&el(&r, c), &[el(&r, "e")]).unwrap();
            let rhs: Vec<Scalar> = w.form(&el(&r, "e"), &[el(&r, c)]).unwrap().iter().map(|v| -v).collect();
            let a = qt.reduce(&lhs).unwrap();
            let b = qt.reduce(&rhs).unwrap();
            let f = r.coeffs();
            assert!(a.iter().zip(&b).all(|(x, y)| f.from_rational(&(x - y)).unwrap().is_zero()), "c = {c}");
        }
    }
}

#[test]
fn base_change_consistency() {
    for (p, vars) in [(2u64, vec![("x", 2)]), (3, vec![("e", 3)]), (2, vec![("x", 2), ("y", 2)]), (7, vec![("e", 2)])] {
        let r = trunc(Coefficients::PrimeField(p), &vars);
        for n in 0..3 {
            let over_fp = omega(&r, n).unwrap().invariants();
            let over_z = integer_cross_check(&r, n).unwrap();
            assert_eq!(over_fp, Invariants { free_rank: over_z.free_rank, torsion: over_z.torsion.clone() }, "{r} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn d_of_d_vanishes_on_random_elements(c in prop::collection::vec(-9i64..=9, 4), which in 0usize..3) {
        let r = match which {
            0 => trunc(Coefficients::Rationals, &[("e", 4)]),
            1 => trunc(Coefficients::Rationals, &[("x", 2), ("y", 2)]),
            _ => trunc(Coefficients::PrimeField(5), &[("x", 2), ("y", 2)]),
        };
        let x = r.element_from_ints(&c[..r.dim()]);
        let d0 = de_rham_d(&r, 0).unwrap();
        let d1 = de_rham_d(&r, 1).unwrap();
        let dx = d0.apply(&d0.source.form(&x, &[]).unwrap());
        prop_assert!(d1.target.is_zero(&d1.apply(&dx)).unwrap());
        // d(r) agrees with the form 1·dr
        let one = r.unit().clone();
        prop_assert!(d0.target.element_equal(&dx, &d0.target.form(&one, std::slice::from_ref(&x)).unwrap()).unwrap());
    }

    #[test]
    fn leibniz_holds(a in prop::collection::vec(-5i64..=5, 3), b in prop::collection::vec(-5i64..=5, 3)) {
        let r = trunc(Coefficients::Rationals, &[("e", 3)]);
        let (x, y) = (r.element_from_ints(&a), r.element_from_ints(&b));
        let w = omega(&r, 1).unwrap();
        let one = r.unit().clone();
        let lhs = w.form(&one, &[r.mul(&x, &y)]).unwrap();
        let t1 = w.form(&x, std::slice::from_ref(&y)).unwrap();
        let t2 = w.form(&y, std::slice::from_ref(&x)).unwrap();
        let rhs: Vec<Scalar> = t1.iter().zip(&t2).map(|(u, v)| u + v).collect();
        prop_assert!(w.element_equal(&lhs, &rhs).unwrap());
    }
}

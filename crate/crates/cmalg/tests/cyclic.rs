mod common;

use cmalg::algebra::*;
use cmalg::cyclic::*;
use cmalg::exactalg::{Coefficients, Invariants};
use cmalg::kahler::omega_mod_d;
use cmalg::{Domain, Error, Scalar};
use common::*;
use proptest::prelude::*;

fn el(r: &FinAlgebra, s: &str) -> RingElement {
    r.parse_element(s).unwrap()
}

fn combo(r: &FinAlgebra, terms: &[(i64, &[&str])]) -> Vec<Scalar> {
    let f = r.coeffs();
    let mut acc: Option<Vec<Scalar>> = None;
    for (c, names) in terms {
        let xs: Vec<RingElement> = names.iter().map(|s| el(r, s)).collect();
        let v: Vec<Scalar> = tensor(r, &xs).iter().map(|x| f.mul(x, &q(*c))).collect();
        acc = Some(match acc {
            None => v,
            Some(a) => a.iter().zip(&v).map(|(x, y)| f.add(x, y)).collect(),
        });
    }
    acc.unwrap()
}

fn rank(g: &cmalg::VectorSpace) -> usize {
    g.rank_nf()
}

#[test]
fn operator_examples() {
    let r = square_zero_xy();
    let f = r.coeffs();
    let d2 = operator(&r, 2, OperatorKind::Face(2)).unwrap();
    assert_eq!((d2.source.dim, d2.target.dim), (27, 9));
    // (r₀, r₁, r₂) ↦ (r₂r₀, r₁) on (1+x, y, 2+y)
    let got = apply(&f, &combo(&r, &[(1, &["1+x", "y", "2+y"])]), &d2.matrix);
    let want = combo(&r, &[(1, &["2+2*x+y", "y"])]);
    assert!(same(&f, &got, &want));

    let t = operator(&r, 1, OperatorKind::Cyclic).unwrap();
    let got = apply(&f, &combo(&r, &[(1, &["x", "1+y"])]), &t.matrix);
    assert!(same(&f, &got, &combo(&r, &[(-1, &["1+y", "x"])])));

    for i in 0..3 {
        let s = operator(&r, 2, OperatorKind::Degeneracy(i)).unwrap().matrix;
        let d = operator(&r, 3, OperatorKind::Face(i)).unwrap().matrix;
        let prod = s.mul(&f, &d).unwrap();
        let id = cmalg::SparseMatrix::identity(&f, 27);
        assert!(prod.sub(&f, &id).unwrap().is_zero());
    }
}

#[test]
fn operator_index_errors() {
    let r = square_zero_xy();
    assert!(matches!(operator(&r, 2, OperatorKind::Face(3)), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(operator(&r, 0, OperatorKind::Face(0)), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(operator(&r, 1, OperatorKind::Degeneracy(2)), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(operator(&r, 0, OperatorKind::B), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn connes_b_examples() {
    for r in [square_zero_xy(), trunc(Coefficients::PrimeField(5), &[("x", 2), ("y", 2)])] {
        let f = r.coeffs();
        let b0 = connes_b(&r, 0).unwrap();
        let b1 = connes_b(&r, 1).unwrap();
        for s in ["x", "1+2*y", "x*y-3"] {
            if r.parse_element(s).is_err() {
                continue;
            }
            let got = apply(&f, &combo(&r, &[(1, &[s])]), &b0.matrix);
            assert!(same(&f, &got, &combo(&r, &[(1, &["1", s]), (1, &[s, "1"])])));
        }
        for (a, b) in [("x", "y"), ("1+x", "2*y"), ("y", "y")] {
            let got = apply(&f, &combo(&r, &[(1, &[a, b])]), &b1.matrix);
            let want = combo(&r, &[(1, &["1", a, b]), (-1, &["1", b, a]), (-1, &[b, "1", a]), (1, &[a, "1", b])]);
            assert!(same(&f, &got, &want), "{r}: B1({a},{b})");
        }
        assert!(b0.matrix.mul(&f, &b1.matrix).unwrap().is_zero());
    }
}

#[test]
fn operator_identities_hold() {
    let mut tally = Tally::default();
    for r in small_algebras() {
        operator_identities(&r, 4, &mut tally);
    }
    assert!(tally.failed.is_empty(), "{:?}", tally.failed);
    assert!(tally.passed >= 200, "{}", tally.passed);
}

#[test]
fn hochschild_examples() {
    let r: CyclicTarget = square_zero_xy().into();
    assert_eq!(rank(&hh(&r, 0).unwrap()), 3);
    let f7: CyclicTarget = prime_field(7).into();
    assert_eq!(hh(&f7, 0).unwrap().invariants(), Invariants::from_moduli(0, &[7.into()]));
    assert!(hh(&f7, 1).unwrap().is_trivial());
    let dual = trunc(Coefficients::Rationals, &[("e", 2)]);
    assert_eq!(naive_hh_dim(&dual, 1), 1);
    assert_eq!(rank(&hh(&dual.into(), 1).unwrap()), 1);
}

#[test]
fn hochschild_matches_direct_boundaries() {
    for r in small_algebras() {
        let max = if r.dim() >= 3 { 2 } else { 3 };
        for n in 0..=max {
            assert_eq!(rank(&hh(&r.clone().into(), n).unwrap()), naive_hh_dim(&r, n), "{r} HH_{n}");
        }
    }
}

#[test]
fn hc_zero_is_the_ring() {
    for r in small_algebras() {
        let t: CyclicTarget = r.clone().into();
        for route in [HcRoute::Cyclic, HcRoute::Connes] {
            assert_eq!(rank(&hc(&t, 0, route).unwrap()), r.dim(), "{r}");
        }
    }
}

#[test]
fn hc_one_examples() {
    let r: CyclicTarget = square_zero_xy().into();
    assert_eq!(rank(&hc(&r, 1, HcRoute::Cyclic).unwrap()), 1);
    let dual: CyclicTarget = trunc(Coefficients::Rationals, &[("e", 2)]).into();
    assert!(hc(&dual, 1, HcRoute::Cyclic).unwrap().is_trivial());
}

#[test]
fn routes_agree() {
    for r in small_algebras() {
        let t: CyclicTarget = r.clone().into();
        let max = if r.dim() >= 3 { 2 } else { 3 };
        for n in 0..=max {
            let a = hc(&t, n, HcRoute::Cyclic).unwrap().invariants();
            let b = hc(&t, n, HcRoute::Connes).unwrap().invariants();
            assert_eq!(a, b, "{r} HC_{n}");
        }
    }
}

#[test]
fn hc_one_is_omega_mod_exact() {
    for r in small_algebras() {
        let a = hc(&r.clone().into(), 1, HcRoute::Cyclic).unwrap().invariants();
        let b = omega_mod_d(&r, 1).unwrap().invariants();
        assert_eq!(a, b, "{r}");
    }
}

#[test]
fn totals_are_complexes() {
    let t: CyclicTarget = trunc(Coefficients::Rationals, &[("e", 3)]).into();
    let cc = cc_total(&t, 0, 4).unwrap();
    let tb = connes_total(&t, 0, 4).unwrap();
    let tn = negative_total(&t, 0, 3, 2).unwrap();
    let hoch = hochschild_complex(&t, 0, 4).unwrap();
    for n in 1..4 {
        cc.check_at(n).unwrap();
        tb.check_at(n).unwrap();
        hoch.check_at(n).unwrap();
    }
    tn.check_at(1).unwrap();
    tn.check_at(2).unwrap();
}

#[test]
fn hn_examples() {
    let f7: CyclicTarget = prime_field(7).into();
    let a = hn_truncated(&f7, 0, 1).unwrap();
    let b = hn_truncated(&f7, 0, 2).unwrap();
    assert_eq!(a.group.invariants(), b.group.invariants());
    assert!(b.stabilized);
    assert!(matches!(hn_truncated(&f7, 0, 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn hn_relative_shift() {
    let r = trunc(Coefficients::Rationals, &[("e", 2)]);
    let t: CyclicTarget = pair(&r, &["e"]).into();
    for depth in 2..=5 {
        let h = hn_truncated(&t, 1, depth).unwrap();
        assert_eq!(rank(&h.group), 1, "depth {depth}");
        assert!(h.stabilized, "depth {depth}");
    }
    for n in 1..=2 {
        let h = hn_truncated(&t, n, 5).unwrap();
        assert!(h.stabilized);
        assert_eq!(h.group.invariants(), hc(&t, n - 1, HcRoute::Cyclic).unwrap().invariants(), "n = {n}");
    }
}

#[test]
fn relative_groups_are_differences() {
    // split pairs: H(R) = H(S) ⊕ H(R, I)
    let r = trunc(Coefficients::Rationals, &[("x", 2), ("e", 2)]);
    let p = pair(&r, &["e", "x*e"]);
    let s: CyclicTarget = p.s.clone().into();
    let rel: CyclicTarget = p.clone().into();
    let abs: CyclicTarget = r.into();
    for n in 0..=2 {
        assert_eq!(rank(&hh(&abs, n).unwrap()), rank(&hh(&s, n).unwrap()) + rank(&hh(&rel, n).unwrap()), "HH_{n}");
        assert_eq!(
            rank(&hc(&abs, n, HcRoute::Cyclic).unwrap()),
            rank(&hc(&s, n, HcRoute::Cyclic).unwrap()) + rank(&hc(&rel, n, HcRoute::Cyclic).unwrap()),
            "HC_{n}"
        );
    }
}

#[test]
fn keller_examples() {
    let r: CyclicTarget = trunc(Coefficients::Rationals, &[("e", 2)]).into();
    let m = keller_mixed_complex(&r, 3).unwrap();
    assert_eq!(m.dims, vec![2, 6, 12, 24]);
    assert!(m.d_squared(1).unwrap().is_zero());
    assert!(m.anticommutator(1).unwrap().is_zero());
    assert!(m.identities_hold().unwrap());
    for r in small_algebras() {
        let t: CyclicTarget = r.into();
        assert!(keller_mixed_complex(&t, 3).unwrap().identities_hold().unwrap());
        assert!(standard_mixed_complex(&t, 3).unwrap().identities_hold().unwrap());
    }
}

#[test]
fn periodicity_examples() {
    for (r, n_max) in [
        (trunc(Coefficients::Rationals, &[("e", 2)]), 2),
        (prime_field(7), 2),
        (square_zero_xy(), 1),
    ] {
        let t: CyclicTarget = r.clone().into();
        let rep = connes_periodicity_check(&t, n_max).unwrap();
        assert!(rep.all_exact(), "{r}: {:?}", rep.joints);
        for n in 0..=n_max {
            assert_eq!(rep.hh[n], naive_hh_dim(&r, n));
            assert_eq!(rep.hc[n], rank(&hc(&t, n, HcRoute::Connes).unwrap()));
        }
    }
    let rep = connes_periodicity_check(&square_zero_xy().into(), 1).unwrap();
    assert_eq!(rep.hc[1], 1);
    let rep = connes_periodicity_check(&prime_field(7).into(), 2).unwrap();
    assert_eq!(rep.hc, vec![1, 0, 1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn b_then_b_vanishes_on_random_tensors(c in prop::collection::vec(-6i64..=6, 9), which in 0usize..3) {
        let r = match which {
            0 => trunc(Coefficients::Rationals, &[("e", 3)]),
            1 => square_zero_xy(),
            _ => trunc(Coefficients::PrimeField(3), &[("e", 3)]),
        };
        let f = r.coeffs();
        let xs: Vec<RingElement> = c.chunks(3).map(|ch| r.element_from_ints(ch)).collect();
        let v = tensor(&r, &xs);
        let b2 = operator(&r, 2, OperatorKind::B).unwrap().matrix;
        let b1 = operator(&r, 1, OperatorKind::B).unwrap().matrix;
        let big = connes_b(&r, 2).unwrap().matrix;
        let b3 = operator(&r, 3, OperatorKind::B).unwrap().matrix;
        let zero1 = vec![q(0); b1.cols()];
        prop_assert!(same(&f, &apply(&f, &apply(&f, &v, &b2), &b1), &zero1));
        // bB + Bb = 0 on the element
        let lhs = apply(&f, &apply(&f, &v, &big), &b3);
        let rhs = apply(&f, &apply(&f, &v, &b2), &connes_b(&r, 1).unwrap().matrix);
        let sum: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| f.add(a, b)).collect();
        prop_assert!(same(&f, &sum, &vec![q(0); sum.len()]));
    }
}

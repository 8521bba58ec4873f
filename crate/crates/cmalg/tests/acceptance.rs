//! The twelve acceptance checks, run in sequence with their time budgets. Prints one
//! PASS/FAIL line per check.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cmalg::algebra::{is_m_fold_stable, stability_criterion, FinAlgebra};
use cmalg::cyclic::{connes_periodicity_check, hc, hn_truncated, keller_mixed_complex, CyclicTarget, HcRoute};
use cmalg::exactalg::Coefficients;
use cmalg::kahler::omega_mod_d;
use cmalg::milnork::{dennis_stein_d2, goodwillie_milnor_check, milnor_k, Verdict};
use cmalg::specseq::{converges_check, couple_from_bicomplex, random_bicomplex};
use cmalg::Invariants;
use common::*;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f7eps() -> FinAlgebra {
    trunc(Coefficients::PrimeField(7), &[("e", 2)])
}

fn f2x() -> FinAlgebra {
    trunc(Coefficients::PrimeField(2), &[("x", 2)])
}

fn qeps(k: usize) -> FinAlgebra {
    trunc(Coefficients::Rationals, &[("e", k)])
}

fn rank(g: &cmalg::VectorSpace) -> usize {
    g.invariants().free_rank + g.invariants().torsion.len()
}

fn k2_of_z2x() {
    let k = milnor_k(&f2x(), 2, false).unwrap();
    assert_eq!(k.counts.steinberg, 0);
    assert_eq!(k.invariants(), Invariants::from_moduli(0, &[BigInt::from(2)]));
}

fn goodwillie_f7() {
    let rep = goodwillie_milnor_check(&pair(&f7eps(), &["e"]), 1).unwrap();
    assert!(rep.stable && rep.stable_by_residue_fields && rep.non_invertible.is_none());
    assert!(rep.k_side.is_trivial() && rep.omega_side.is_trivial());
    assert_eq!(rep.k_generators, 1764);
    assert!(rep.k_relations > 100_000, "{} relations", rep.k_relations);
    assert_eq!(rep.phi_well_defined, Some(true));
    assert_eq!(rep.psi_generates, Some(true));
    assert_eq!(rep.verdict, Verdict::Yes);
}

fn goodwillie_f2() {
    let rep = goodwillie_milnor_check(&pair(&f2x(), &["x"]), 1).unwrap();
    let z2 = Invariants::from_moduli(0, &[BigInt::from(2)]);
    assert_eq!(rep.k_side, z2);
    assert_eq!(rep.omega_side, z2);
    assert!(!rep.hypotheses_hold());
    assert!(matches!(rep.verdict, Verdict::HypothesesViolatedYes | Verdict::HypothesesViolatedNo));
}

fn hc1_is_omega_mod_exact() {
    let cases = [(qeps(2), 0), (qeps(3), 0), (square_zero_xy(), 1), (f7eps(), 0)];
    for (r, expected) in cases {
        let bicomplex = hc(&r.clone().into(), 1, HcRoute::Cyclic).unwrap();
        let presented = omega_mod_d(&r, 1).unwrap();
        assert_eq!(bicomplex.invariants(), presented.invariants(), "{r}");
        assert_eq!(rank(&presented), expected, "{r}");
    }
}

fn hc0_is_the_ring() {
    for r in small_algebras() {
        for route in [HcRoute::Cyclic, HcRoute::Connes] {
            assert_eq!(rank(&hc(&r.clone().into(), 0, route).unwrap()), r.dim(), "{r}");
        }
    }
}

fn operator_identity_suite() {
    let mut tally = Tally::default();
    for r in small_algebras().into_iter().filter(|r| r.dim() <= 4) {
        operator_identities(&r, 4, &mut tally);
    }
    assert!(tally.failed.is_empty(), "{:?}", tally.failed);
    assert!(tally.passed >= 200, "only {} assertions", tally.passed);
}

fn keller_cone() {
    for r in small_algebras() {
        assert!(keller_mixed_complex(&r.into(), 3).unwrap().identities_hold().unwrap());
    }
}

fn sbi_shift() {
    let t = CyclicTarget::Relative(pair(&qeps(2), &["e"]));
    for n in 1..=2 {
        let h = hn_truncated(&t, n, 5).unwrap();
        assert!(h.stabilized, "HN_{n} not stable at depth 5");
        assert_eq!(rank(&h.group), rank(&hc(&t, n - 1, HcRoute::Cyclic).unwrap()), "n = {n}");
    }
}

fn periodicity() {
    for r in [qeps(2), square_zero_xy()] {
        let rep = connes_periodicity_check(&r.clone().into(), 2).unwrap();
        assert!(rep.all_exact(), "{r}: {:?}", rep.joints);
    }
}

fn van_der_kallen() {
    let r = f7eps();
    let k = milnor_k(&r, 2, false).unwrap();
    let d = dennis_stein_d2(&r, None).unwrap();
    assert_eq!(k.invariants(), d.invariants());
}

fn stability_oracle() {
    let rings = [prime_field(5), prime_field(7), f7eps(), f2x()];
    for r in &rings {
        for m in 1..=5 {
            assert_eq!(is_m_fold_stable(r, m).unwrap(), stability_criterion(r, m).unwrap(), "{r}, m = {m}");
        }
    }
}

fn spectral_sequence_convergence() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_612);
    for _ in 0..25 {
        let (cols, rows) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let bc = random_bicomplex(&mut rng, cols, rows).unwrap();
        let c = couple_from_bicomplex(&bc).unwrap();
        let rep = converges_check(&c, &bc.filtered_totals().unwrap(), 10).unwrap();
        assert!(rep.converges, "{cols}x{rows}: {rep:?}");
    }
}

#[test]
fn acceptance() {
    let checks: [(&str, u64, fn()); 12] = [
        ("K2 of F2[x]/x^2 is Z/2 with no Steinberg relations", 1, k2_of_z2x),
        ("relative K2 against Omega/dI for (F7[e]/e^2, (e))", 300, goodwillie_f7),
        ("hypotheses-violated run on (F2[x]/x^2, (x))", 5, goodwillie_f2),
        ("HC1 equals Omega^1/dR by both routes", 60, hc1_is_omega_mod_exact),
        ("HC0 has the rank of the ring", 10, hc0_is_the_ring),
        ("simplicial, cyclic and mixed-complex identities", 60, operator_identity_suite),
        ("Keller mapping cone is a mixed complex", 30, keller_cone),
        ("relative HN_n matches HC_(n-1)", 120, sbi_shift),
        ("Connes periodicity sequence is exact", 120, periodicity),
        ("K2 Milnor equals Dennis-Stein D2 for F7[e]/e^2", 600, van_der_kallen),
        ("m-fold stability agrees with residue fields", 60, stability_oracle),
        ("spectral sequences converge to total homology", 120, spectral_sequence_convergence),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*budget);
        let ok = outcome.is_ok() && within;
        let note = match (&outcome, within) {
            (Err(_), _) => " (check failed)".to_string(),
            (Ok(()), false) => format!(" (over the {budget} s budget)"),
            _ => String::new(),
        };
        println!("{:>2} {} {name} [{:.2?}]{note}", i + 1, if ok { "PASS" } else { "FAIL" }, elapsed);
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

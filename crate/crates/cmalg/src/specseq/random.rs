//! Random bicomplexes with free and torsion entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::error::Result;

use super::bicomplex::{Bicomplex, Cochain};
use super::lattice::Mat;

const MODULI: [i64; 6] = [0, 0, 2, 3, 4, 6];

fn modulus<R: Rng>(rng: &mut R) -> BigInt {
    BigInt::from(MODULI[rng.gen_range(0..MODULI.len())])
}

/// A random well-defined map between ⊕ ℤ/a_i and ⊕ ℤ/b_j: entry (i,j) is a multiple of
/// b_j / gcd(a_i, b_j), and zero when a_i ≠ 0 = b_j.
fn random_map<R: Rng>(rng: &mut R, src: &[BigInt], tgt: &[BigInt]) -> Mat {
    src.iter()
        .map(|a| {
            tgt.iter()
                .map(|b| {
                    let c = BigInt::from(rng.gen_range(-2i64..=3));
                    if b.is_zero() {
                        if a.is_zero() {
                            c
                        } else {
                            BigInt::zero()
                        }
                    } else {
                        b / a.gcd(b) * c
                    }
                })
                .collect()
        })
        .collect()
}

/// A random two-term complex (or a single group).
fn random_cochain<R: Rng>(rng: &mut R, len: usize) -> Cochain {
    let moduli: Vec<Vec<BigInt>> = (0..len)
        .map(|_| (0..rng.gen_range(1..=2)).map(|_| modulus(rng)).collect())
        .collect();
    let maps = (0..len.saturating_sub(1)).map(|n| random_map(rng, &moduli[n], &moduli[n + 1])).collect();
    Cochain { moduli, maps }
}

/// x at (0,1), y at (1,1), z at (1,0), w at (2,0) with d_h x = k·y, d_v z = k·y, d_h z = w:
/// the class of x survives to E_2 and d_2 sends it to w.
pub fn staircase(k: i64) -> Result<Bicomplex> {
    let z = || BigInt::zero();
    let one = |v: i64| vec![vec![BigInt::from(v)]];
    let moduli = vec![
        vec![vec![], vec![z()]],
        vec![vec![z()], vec![z()]],
        vec![vec![z()], vec![]],
    ];
    let empty = |rows: usize| vec![Vec::new(); rows];
    let horizontal = vec![
        vec![Vec::new(), one(k)],
        vec![one(1), empty(1)],
        vec![empty(1), Vec::new()],
    ];
    let vertical = vec![
        vec![Vec::new(), empty(1)],
        vec![one(k), empty(1)],
        vec![vec![vec![]], Vec::new()],
    ];
    Bicomplex::new(moduli, horizontal, vertical)
}

/// A random first-quadrant bicomplex of the given shape: a direct sum of tensor products of
/// random two-term complexes and staircases, mixed by random changes of basis.
pub fn random_bicomplex<R: Rng>(rng: &mut R, cols: usize, rows: usize) -> Result<Bicomplex> {
    let mut bc = Bicomplex::zero(cols, rows);
    for _ in 0..rng.gen_range(2..=4) {
        let piece = if cols >= 3 && rows >= 2 && rng.gen_bool(0.3) {
            staircase(rng.gen_range(1..=4))?
        } else {
            let (la, lb) = (rng.gen_range(1..=2.min(cols)), rng.gen_range(1..=2.min(rows)));
            let a = random_cochain(rng, la);
            let b = random_cochain(rng, lb);
            Bicomplex::tensor(&a, &b)?
        };
        let dp = rng.gen_range(0..=cols - piece.cols());
        let dq = rng.gen_range(0..=rows - piece.rows());
        bc.add_summand(&piece, dp, dq)?;
    }
    for _ in 0..2 * cols * rows {
        let (p, q) = (rng.gen_range(0..cols), rng.gen_range(0..rows));
        let m = bc.entry(p, q).to_vec();
        if m.len() < 2 {
            continue;
        }
        let i = rng.gen_range(0..m.len());
        let j = (i + rng.gen_range(1..m.len())) % m.len();
        // smallest c with m_j | c·m_i, then a random multiple
        let base = if m[j].is_zero() {
            if m[i].is_zero() {
                BigInt::from(1)
            } else {
                continue;
            }
        } else {
            &m[j] / m[i].gcd(&m[j])
        };
        let c = base * BigInt::from(rng.gen_range(-2i64..=2));
        if !c.is_zero() {
            bc.change_basis(p, q, i, j, &c)?;
        }
    }
    Ok(bc)
}

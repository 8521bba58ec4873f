//! Brute-force check of K^M_{n+1}(R, I) ≅ Ω^n_{R,I}/dΩ^{n−1}_{R,I} for a split nilpotent pair.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{is_m_fold_stable, stability_criterion, RingElement, SplitNilpotentPair};
use crate::error::Result;
use crate::exactalg::{fp_group, FPAbelianGroup, Integers, Invariants, SparseMatrix};
use crate::kahler::omega_mod_exact;

use super::maps::{denominator_obstruction, GoodwillieMaps};
use super::symbols::{milnor_k_relative, RelativeMilnorK};

/// Stability required of the quotient ring.
pub const STABILITY_FOLD: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// Hypotheses fail; the groups were compared anyway.
    HypothesesViolatedYes,
    HypothesesViolatedNo,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::HypothesesViolatedYes => "hypotheses-violated-yes",
            Verdict::HypothesesViolatedNo => "hypotheses-violated-no",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GoodwillieReport {
    pub n: usize,
    /// S is 5-fold stable, by exhaustive search.
    pub stable: bool,
    /// The residue-field criterion, as a cross-check of `stable`.
    pub stable_by_residue_fields: bool,
    pub nilpotency_index: usize,
    /// First k ≤ N not invertible, if any.
    pub non_invertible: Option<u64>,
    pub k_generators: usize,
    pub k_relations: usize,
    pub k_side: Invariants,
    pub omega_side: Invariants,
    /// Every presentation relation among relative symbols maps to zero under φ.
    pub phi_well_defined: Option<bool>,
    /// The ψ-images of the Ω-side generators generate K^M_{n+1}(R, I).
    pub psi_generates: Option<bool>,
    /// The Ω-side generators used for ψ span the quotient.
    pub forms_generate: Option<bool>,
    /// φ∘ψ and ψ∘φ are the identity on generators.
    pub round_trip: Option<bool>,
    pub verdict: Verdict,
}

impl GoodwillieReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.stable && self.non_invertible.is_none()
    }
}

/// Tests the hypotheses, computes both sides, and when the hypotheses hold checks φ and ψ.
pub fn goodwillie_milnor_check(pair: &SplitNilpotentPair, n: usize) -> Result<GoodwillieReport> {
    let stable = is_m_fold_stable(&pair.s, STABILITY_FOLD)?;
    let stable_by_residue_fields = stability_criterion(&pair.s, STABILITY_FOLD)?;
    let non_invertible = denominator_obstruction(pair);
    let k = milnor_k_relative(pair, n + 1)?;
    let omega_side = omega_mod_exact(pair, n)?.invariants();
    let k_side = k.invariants();
    let k_relations = k.absolute.group.presentation.as_ref().map_or(0, |p| p.rows());
    let mut report = GoodwillieReport {
        n,
        stable,
        stable_by_residue_fields,
        nilpotency_index: pair.nilpotency_index,
        non_invertible,
        k_generators: k.absolute.n_gens(),
        k_relations,
        k_side: k_side.clone(),
        omega_side: omega_side.clone(),
        phi_well_defined: None,
        psi_generates: None,
        forms_generate: None,
        round_trip: None,
        verdict: Verdict::No,
    };
    let same = k_side == omega_side;
    if !report.hypotheses_hold() {
        report.verdict = if same { Verdict::HypothesesViolatedYes } else { Verdict::HypothesesViolatedNo };
        return Ok(report);
    }
    let maps = GoodwillieMaps::new(pair, n)?;
    let checks = MapChecks::new(&maps, &k)?;
    report.phi_well_defined = Some(checks.phi_well_defined()?);
    let forms = checks.omega_generators();
    report.forms_generate = Some(checks.forms_generate(&forms)?);
    report.psi_generates = Some(checks.psi_generates(&forms)?);
    report.round_trip = Some(checks.phi_psi(&forms)? && checks.psi_phi()?);
    let maps_ok = report.phi_well_defined == Some(true)
        && report.psi_generates == Some(true)
        && report.forms_generate == Some(true)
        && report.round_trip == Some(true);
    report.verdict = if same && maps_ok { Verdict::Yes } else { Verdict::No };
    Ok(report)
}

struct MapChecks<'a> {
    maps: &'a GoodwillieMaps,
    k: &'a RelativeMilnorK,
    /// Whether each symbol generator has an entry in (1+I)*.
    relative: Vec<bool>,
}

impl<'a> MapChecks<'a> {
    fn new(maps: &'a GoodwillieMaps, k: &'a RelativeMilnorK) -> Result<Self> {
        let p = &k.absolute;
        let r = &maps.pair.r;
        let in_one_plus_i: Vec<bool> = (0..p.units.len())
            .map(|u| maps.pair.in_ideal(&r.sub(&p.units.element(u), r.unit())))
            .collect();
        let relative = (0..p.n_gens())
            .map(|g| p.tuple(g).iter().any(|&u| in_one_plus_i[u]))
            .collect();
        Ok(MapChecks { maps, k, relative })
    }

    fn entries(&self, g: usize) -> Vec<RingElement> {
        let p = &self.k.absolute;
        p.tuple(g).iter().map(|&u| p.units.element(u)).collect()
    }

    fn phi_well_defined(&self) -> Result<bool> {
        let Some(pres) = self.k.absolute.group.presentation.clone() else {
            return Ok(true);
        };
        let f = self.maps.pair.r.coeffs();
        let mut cache: Vec<Option<Vec<crate::Scalar>>> = vec![None; self.relative.len()];
        for row in pres.row_vecs() {
            if !row.iter().all(|(c, _)| self.relative[*c]) {
                continue;
            }
            let mut acc: Option<Vec<crate::Scalar>> = None;
            for (c, a) in row {
                if cache[*c].is_none() {
                    cache[*c] = Some(self.maps.phi_form(&self.entries(*c))?);
                }
                let v = cache[*c].as_ref().unwrap();
                let a = f.from_rational(&crate::Scalar::from_integer(a.clone()))?;
                let scaled = v.iter().map(|x| crate::Domain::mul(&f, &a, x));
                acc = Some(match acc {
                    None => scaled.collect(),
                    Some(prev) => prev.iter().zip(scaled).map(|(x, y)| crate::Domain::add(&f, x, &y)).collect(),
                });
            }
            if let Some(v) = acc {
                if !self.maps.target.is_zero(&v)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// r_0 dr_1∧…∧dr_n with r_0 in a basis of I, then entries from a basis of I followed by units.
    fn omega_generators(&self) -> Vec<(RingElement, Vec<RingElement>)> {
        let n = self.maps.n;
        let ideal = self.maps.pair.ideal_basis.clone();
        let p = &self.k.absolute;
        let units: Vec<RingElement> = (0..p.units.len()).map(|u| p.units.element(u)).collect();
        let mut out = Vec::new();
        for r0 in &ideal {
            for m in 0..=n {
                let mut slots: Vec<&Vec<RingElement>> = vec![&ideal; m];
                slots.extend(std::iter::repeat_n(&units, n - m));
                let total: usize = slots.iter().map(|s| s.len()).product();
                for mut idx in 0..total {
                    let mut diffs = vec![RingElement::new(); n];
                    for (s, choices) in slots.iter().enumerate().rev() {
                        diffs[s] = choices[idx % choices.len()].clone();
                        idx /= choices.len();
                    }
                    out.push((r0.clone(), diffs));
                }
            }
        }
        out
    }

    fn forms_generate(&self, forms: &[(RingElement, Vec<RingElement>)]) -> Result<bool> {
        let w = &self.maps.target.relative.absolute;
        let q = self.maps.target.group();
        let mut rows = Vec::new();
        for (r0, diffs) in forms {
            rows.push(self.maps.target.reduce(&w.form(r0, diffs)?)?);
        }
        Ok(crate::exactalg::dense::echelon(q.domain(), &rows, q.rank_nf(), false).rank() == q.rank_nf())
    }

    fn psi_generates(&self, forms: &[(RingElement, Vec<RingElement>)]) -> Result<bool> {
        let p = &self.k.absolute;
        let mut images = Vec::new();
        for (r0, diffs) in forms {
            let symbol = self.maps.psi(r0, diffs)?;
            images.push(self.k.coords_of(&p.symbol_vector(&symbol)?)?);
        }
        generates(self.k.group(), &images)
    }

    fn phi_psi(&self, forms: &[(RingElement, Vec<RingElement>)]) -> Result<bool> {
        let w = &self.maps.target.relative.absolute;
        let f = self.maps.pair.r.coeffs();
        for (r0, diffs) in forms {
            let back = self.maps.phi_form(&self.maps.psi(r0, diffs)?)?;
            let orig = w.form(r0, diffs)?;
            let diff: Vec<crate::Scalar> = back.iter().zip(&orig).map(|(a, b)| crate::Domain::sub(&f, a, b)).collect();
            if !self.maps.target.is_zero(&diff)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn psi_phi(&self) -> Result<bool> {
        let p = &self.k.absolute;
        let r = &self.maps.pair.r;
        for g in (0..p.n_gens()).filter(|&g| self.relative[g]) {
            let symbol = self.entries(g);
            // φ{…} = c·dr_1∧…∧dr_n with c ∈ I and units r_i; rebuild (c, r_i) directly
            let j = symbol
                .iter()
                .position(|x| self.maps.pair.in_ideal(&r.sub(x, r.unit())))
                .unwrap();
            let mut c = crate::algebra::log_one_plus(r, &r.sub(&symbol[j], r.unit()))?;
            if j % 2 == 1 {
                c = r.neg(&c);
            }
            let mut diffs = Vec::new();
            for (_, x) in symbol.iter().enumerate().filter(|(i, _)| *i != j) {
                c = r.mul(&c, &r.inverse(x).unwrap());
                diffs.push(x.clone());
            }
            let back = self.maps.psi(&c, &diffs)?;
            let a = p.symbol_vector(&back)?;
            let b = p.symbol_vector(&symbol)?;
            if !p.group.element_equal(&a, &b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether the elements (normal coordinates) generate the group.
fn generates(g: &FPAbelianGroup<Integers>, elems: &[Vec<BigInt>]) -> Result<bool> {
    let k = g.rank_nf();
    let z = Integers;
    let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
    for (j, m) in g.moduli().iter().enumerate() {
        if !m.is_zero() {
            rows.push(vec![(j, m.clone())]);
        }
    }
    for e in elems {
        rows.push(e.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect());
    }
    let quotient = fp_group(&z, k, &SparseMatrix::from_unsorted_rows(&z, k, rows))?;
    Ok(quotient.is_trivial() || (quotient.free_rank == 0 && quotient.torsion.iter().all(|t| t.is_one())))
}

//! Exact couples D -i-> D -j-> E -k-> D of bigraded groups, derived couples and pages.
//!
//! Bidegrees: i is (−1, 1), k is (1, 0) and j is (r−1, 1−r) on the r-th couple (so (0,0) at
//! r = 1). The differential d_r = j∘k has bidegree (r, 1−r).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{FPAbelianGroup, Integers, Invariants};

use super::bicomplex::Bicomplex;
use super::lattice::{induced, mod_rows, preimage, same_lattice, solve_mod, unit_rows, vanishes_mod, vec_mat, Mat, Node};

type Key = (i64, i64);

#[derive(Debug, Clone)]
pub struct ExactCouple {
    /// Page index of E.
    pub r: usize,
    /// D^{p,q} is recorded for d_lo ≤ p ≤ d_hi and vanishes for p > d_hi.
    d_lo: i64,
    d_hi: i64,
    d: BTreeMap<Key, Node>,
    e: BTreeMap<Key, Node>,
    i: BTreeMap<Key, Mat>,
    j: BTreeMap<Key, Mat>,
    k: BTreeMap<Key, Mat>,
    zero: Node,
}

/// E_r with its differentials, in normal coordinates of each term.
#[derive(Debug, Clone)]
pub struct Page {
    pub r: usize,
    pub terms: BTreeMap<Key, FPAbelianGroup<Integers>>,
    /// d_r^{p,q}: E_r^{p,q} → E_r^{p+r,q−r+1}, one row per normal coordinate of the source.
    pub differentials: BTreeMap<Key, Mat>,
}

/// Maps of an exact couple given on generators, for [`ExactCouple::from_parts`].
#[derive(Debug, Clone, Default)]
pub struct CoupleParts {
    pub d: BTreeMap<Key, Vec<BigInt>>,
    pub e: BTreeMap<Key, Vec<BigInt>>,
    pub i: BTreeMap<Key, Mat>,
    pub j: BTreeMap<Key, Mat>,
    pub k: BTreeMap<Key, Mat>,
}

impl ExactCouple {
    /// Builds a couple from groups ⊕ ℤ/m and maps on their generators; missing maps are zero.
    /// D must be given on a contiguous range of p; exactness is checked where all neighbours
    /// are recorded.
    pub fn from_parts(r: usize, parts: &CoupleParts) -> Result<ExactCouple> {
        if r == 0 {
            return Err(Error::InvalidArgument("pages start at r = 1".into()));
        }
        let d_lo = parts.d.keys().map(|k| k.0).min().unwrap_or(0);
        let d_hi = parts.d.keys().map(|k| k.0).max().unwrap_or(-1);
        let mut c = ExactCouple {
            r,
            d_lo,
            d_hi,
            d: BTreeMap::new(),
            e: BTreeMap::new(),
            i: BTreeMap::new(),
            j: BTreeMap::new(),
            k: BTreeMap::new(),
            zero: Node::zero(),
        };
        for (key, m) in &parts.d {
            c.d.insert(*key, Node::from_moduli(m)?);
        }
        for (key, m) in &parts.e {
            c.e.insert(*key, Node::from_moduli(m)?);
        }
        let on_generators = |m: Option<&Mat>| {
            let m = m.cloned();
            move |x: &[BigInt]| match &m {
                Some(m) => vec_mat(x, m, m.first().map_or(0, |r| r.len())),
                None => Vec::new(),
            }
        };
        let dk: Vec<Key> = c.d.keys().cloned().collect();
        for key in &dk {
            let (p, q) = *key;
            let src = &c.d[key];
            if p > d_lo {
                let tgt = c.d_node((p - 1, q + 1));
                let m = fill(parts.i.get(key), src.ambient_dim(), tgt.ambient_dim())?;
                let mat = induced(src, tgt, on_generators(Some(&m)))?;
                c.i.insert(*key, mat);
            }
            let tgt = c.e_node(c.j_target(*key));
            let m = fill(parts.j.get(key), src.ambient_dim(), tgt.ambient_dim())?;
            let mat = induced(src, tgt, on_generators(Some(&m)))?;
            c.j.insert(*key, mat);
        }
        let ek: Vec<Key> = c.e.keys().cloned().collect();
        for key in &ek {
            let src = &c.e[key];
            let tgt = c.d_node((key.0 + 1, key.1));
            let m = fill(parts.k.get(key), src.ambient_dim(), tgt.ambient_dim())?;
            let mat = induced(src, tgt, on_generators(Some(&m)))?;
            c.k.insert(*key, mat);
        }
        c.check_exact()?;
        Ok(c)
    }

    fn d_node(&self, key: Key) -> &Node {
        self.d.get(&key).unwrap_or(&self.zero)
    }

    fn e_node(&self, key: Key) -> &Node {
        self.e.get(&key).unwrap_or(&self.zero)
    }

    fn d_known(&self, p: i64) -> bool {
        p >= self.d_lo
    }

    fn j_target(&self, (p, q): Key) -> Key {
        let s = self.r as i64 - 1;
        (p + s, q - s)
    }

    fn map(&self, m: &BTreeMap<Key, Mat>, key: Key, rows: usize, cols: usize) -> Mat {
        match m.get(&key) {
            Some(x) if x.len() == rows && x.iter().all(|r| r.len() == cols) => x.clone(),
            _ => vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    fn i_mat(&self, key: Key) -> Mat {
        self.map(&self.i, key, self.d_node(key).rank(), self.d_node((key.0 - 1, key.1 + 1)).rank())
    }

    fn j_mat(&self, key: Key) -> Mat {
        self.map(&self.j, key, self.d_node(key).rank(), self.e_node(self.j_target(key)).rank())
    }

    fn k_mat(&self, key: Key) -> Mat {
        self.map(&self.k, key, self.e_node(key).rank(), self.d_node((key.0 + 1, key.1)).rank())
    }

    /// d_r at E^{p,q}.
    pub fn differential(&self, key: Key) -> Mat {
        let via = (key.0 + 1, key.1);
        let tgt = self.e_node(self.j_target(via)).rank();
        let km = self.k_mat(key);
        let jm = self.j_mat(via);
        km.iter().map(|r| reduce(&vec_mat(r, &jm, tgt), &self.e_node(self.j_target(via)).moduli())).collect()
    }

    fn d_target(&self, (p, q): Key) -> Key {
        let r = self.r as i64;
        (p + r, q - r + 1)
    }

    pub fn d_term(&self, p: i64, q: i64) -> Option<&FPAbelianGroup<Integers>> {
        self.d.get(&(p, q)).map(|n| n.group())
    }

    pub fn e_term(&self, p: i64, q: i64) -> Option<&FPAbelianGroup<Integers>> {
        self.e.get(&(p, q)).map(|n| n.group())
    }

    /// Keys of the nonzero E terms.
    pub fn e_support(&self) -> Vec<Key> {
        self.e.iter().filter(|(_, n)| !n.is_zero()).map(|(k, _)| *k).collect()
    }

    /// im(into) = ker(out) at a node, all in the node's normal coordinates.
    fn exact_at(node: &Node, into: &Mat, out: &Mat, out_moduli: &[BigInt]) -> bool {
        let k = node.rank();
        let lx = mod_rows(&node.moduli());
        let mut im: Mat = into.clone();
        im.extend(lx.iter().cloned());
        let mut ker = preimage(&unit_rows(k), k, out, out_moduli.len(), &mod_rows(out_moduli));
        ker.extend(lx);
        same_lattice(k, &im, &ker)
    }

    /// Checks im k = ker i, im i = ker j and im j = ker k wherever the neighbours are recorded.
    pub fn check_exact(&self) -> Result<()> {
        for (&(p, q), node) in &self.d {
            if self.d_known(p - 1) {
                let into = self.k_mat((p - 1, q));
                let tgt = self.d_node((p - 1, q + 1));
                if !Self::exact_at(node, &into, &self.i_mat((p, q)), &tgt.moduli()) {
                    return Err(Error::NotExact(format!("im k ≠ ker i at D^({p},{q})")));
                }
            }
            let into = self.i_mat((p + 1, q - 1));
            let tgt = self.e_node(self.j_target((p, q)));
            if !Self::exact_at(node, &into, &self.j_mat((p, q)), &tgt.moduli()) {
                return Err(Error::NotExact(format!("im i ≠ ker j at D^({p},{q})")));
            }
        }
        let s = self.r as i64 - 1;
        for (&(p, q), node) in &self.e {
            let src = (p - s, q + s);
            if !self.d_known(src.0) {
                continue;
            }
            let into = self.j_mat(src);
            let tgt = self.d_node((p + 1, q));
            if !Self::exact_at(node, &into, &self.k_mat((p, q)), &tgt.moduli()) {
                return Err(Error::NotExact(format!("im j ≠ ker k at E^({p},{q})")));
            }
        }
        Ok(())
    }

    /// The current page with its differentials.
    pub fn page(&self) -> Page {
        let terms = self.e.iter().map(|(k, n)| (*k, n.group().clone())).collect();
        let differentials = self.e.keys().map(|k| (*k, self.differential(*k))).collect();
        Page {
            r: self.r,
            terms,
            differentials,
        }
    }
}

fn reduce(v: &[BigInt], moduli: &[BigInt]) -> Vec<BigInt> {
    use crate::exactalg::Domain;
    v.iter().zip(moduli).map(|(x, m)| Integers.reduce_mod(x, m)).collect()
}

fn fill(m: Option<&Mat>, rows: usize, cols: usize) -> Result<Mat> {
    match m {
        None => Ok(vec![vec![BigInt::zero(); cols]; rows]),
        Some(m) if m.len() == rows && m.iter().all(|r| r.len() == cols) => Ok(m.clone()),
        Some(_) => Err(Error::DimensionMismatch(format!("map must be {rows}x{cols}"))),
    }
}

/// The couple of the column filtration: D_1^{p,q} = H^{p+q}(F^p Tot), E_1^{p,q} = H^{p+q}(F^p/F^{p+1}).
/// i is induced by F^{p+1} ⊂ F^p, j by the projection and k is the connecting map.
pub fn couple_from_bicomplex(bc: &Bicomplex) -> Result<ExactCouple> {
    let cols = bc.cols() as i64;
    let rows = bc.rows() as i64;
    // below p = 0 the filtration is constant; keep enough of it for every page to be checkable
    let d_lo = -(cols + rows);
    let d_hi = cols - 1;
    let top = bc.top_degree();
    let mut c = ExactCouple {
        r: 1,
        d_lo,
        d_hi,
        d: BTreeMap::new(),
        e: BTreeMap::new(),
        i: BTreeMap::new(),
        j: BTreeMap::new(),
        k: BTreeMap::new(),
        zero: Node::zero(),
    };
    for n in 0..=top {
        for p in d_lo..=d_hi {
            let node = bc.filtered_homology_node(n, p)?;
            if !node.is_zero() {
                c.d.insert((p, n - p), node);
            }
        }
        for p in 0..cols {
            let node = bc.filtration_node(1, p, n - p)?;
            if !node.is_zero() {
                c.e.insert((p, n - p), node);
            }
        }
    }
    let id = |x: &[BigInt]| x.to_vec();
    let keys: Vec<Key> = c.d.keys().cloned().collect();
    for key in keys {
        let (p, q) = key;
        let src = &c.d[&key];
        if p > d_lo {
            if let Some(tgt) = c.d.get(&(p - 1, q + 1)) {
                c.i.insert(key, induced(src, tgt, id)?);
            }
        }
        if let Some(tgt) = c.e.get(&key) {
            c.j.insert(key, induced(src, tgt, id)?);
        }
    }
    let keys: Vec<Key> = c.e.keys().cloned().collect();
    for key in keys {
        let (p, q) = key;
        let n = p + q;
        if let Some(tgt) = c.d.get(&(p + 1, q)) {
            let d = bc.tot_differential(n);
            let dim = bc.tot_dim(n + 1);
            let cols_next = column_of(bc, n + 1);
            let src = &c.e[&key];
            let mat = induced(src, tgt, |x| {
                let y = vec_mat(x, &d, dim);
                // the part of dx in columns ≤ p is a relation
                y.into_iter()
                    .zip(&cols_next)
                    .map(|(v, &col)| if col <= p { BigInt::zero() } else { v })
                    .collect()
            })?;
            c.k.insert(key, mat);
        }
    }
    c.check_exact()?;
    Ok(c)
}

fn column_of(bc: &Bicomplex, n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for p in 0..bc.cols() {
        let q = n - p as i64;
        if q >= 0 && (q as usize) < bc.rows() {
            out.extend(std::iter::repeat_n(p as i64, bc.dim(p, q as usize)));
        }
    }
    out
}

/// The derived couple: D′ = i(D), E′ = ker d / im d, i′ = i, j′(i a) = [j a], k′[e] = k e.
pub fn derive(c: &ExactCouple) -> Result<ExactCouple> {
    let r = c.r as i64;
    let mut e = BTreeMap::new();
    for (&key, node) in &c.e {
        let out_key = c.d_target(key);
        let out = c.differential(key);
        let tgt_moduli = c.e_node(out_key).moduli();
        let ker = preimage(&unit_rows(node.rank()), node.rank(), &out, tgt_moduli.len(), &mod_rows(&tgt_moduli));
        let in_key = (key.0 - r, key.1 + r - 1);
        let im = if c.e.contains_key(&in_key) { c.differential(in_key) } else { Vec::new() };
        let sub = node.sub(&ker, &im)?;
        if !sub.is_zero() {
            e.insert(key, sub);
        }
    }
    let mut d = BTreeMap::new();
    for (&(p, q), node) in &c.d {
        let src = (p + 1, q - 1);
        if !c.d.contains_key(&src) {
            continue;
        }
        let sub = node.sub(&c.i_mat(src), &Vec::new())?;
        if !sub.is_zero() {
            d.insert((p, q), sub);
        }
    }
    let mut out = ExactCouple {
        r: c.r + 1,
        d_lo: c.d_lo,
        d_hi: c.d_hi,
        d,
        e,
        i: BTreeMap::new(),
        j: BTreeMap::new(),
        k: BTreeMap::new(),
        zero: Node::zero(),
    };
    let keys: Vec<Key> = out.d.keys().cloned().collect();
    for key in keys {
        let (p, q) = key;
        let src = &out.d[&key];
        if let Some(tgt) = out.d.get(&(p - 1, q + 1)) {
            let im = c.i_mat(key);
            let cols = c.d_node((p - 1, q + 1)).rank();
            out.i.insert(key, induced(src, tgt, |x| vec_mat(x, &im, cols))?);
        }
        let jt = out.j_target(key);
        if let Some(tgt) = out.e.get(&jt) {
            // j′(x) = [j(a)] for any a with i(a) = x
            let pre = (p + 1, q - 1);
            let im = c.i_mat(pre);
            let jm = c.j_mat(pre);
            let here = c.d_node(key);
            let rel = mod_rows(&here.moduli());
            let jcols = c.e_node(c.j_target(pre)).rank();
            let mut rows = Vec::new();
            for x in src.basis()? {
                let a = solve_mod(&im, here.rank(), &rel, &x)
                    .ok_or_else(|| Error::NotExact(format!("D′^({p},{q}) is not in the image of i")))?;
                let y = vec_mat(&a, &jm, jcols);
                rows.push(tgt.project(&y).map_err(|_| Error::NotExact(format!("j′ leaves E′ at ({},{})", jt.0, jt.1)))?);
            }
            out.j.insert(key, rows);
        }
    }
    let keys: Vec<Key> = out.e.keys().cloned().collect();
    for key in keys {
        let src = &out.e[&key];
        let dk = (key.0 + 1, key.1);
        if let Some(tgt) = out.d.get(&dk) {
            let km = c.k_mat(key);
            let cols = c.d_node(dk).rank();
            out.k.insert(key, induced(src, tgt, |x| vec_mat(x, &km, cols))?);
        }
    }
    out.check_exact()?;
    Ok(out)
}

/// E_r^{p,q}, deriving the couple as often as needed.
pub fn page(c: &ExactCouple, r: usize, p: i64, q: i64) -> Result<FPAbelianGroup<Integers>> {
    if r < c.r {
        return Err(Error::InvalidArgument(format!("page {r} precedes the couple's page {}", c.r)));
    }
    let mut cur = c.clone();
    while cur.r < r {
        cur = derive(&cur)?;
    }
    Ok(cur.e_term(p, q).cloned().unwrap_or_else(|| FPAbelianGroup::free(&Integers, 0)))
}

/// Derives until no differential can be nonzero any more (r exceeds the width of the support of
/// E). Fails with `NotStabilized` past `max_r`.
pub fn stabilize(c: &ExactCouple, max_r: usize) -> Result<ExactCouple> {
    let mut cur = c.clone();
    loop {
        let support = cur.e_support();
        let width = match (support.iter().map(|k| k.0).min(), support.iter().map(|k| k.0).max()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        };
        if cur.r as i64 > width {
            return Ok(cur);
        }
        if cur.r >= max_r {
            return Err(Error::NotStabilized(max_r));
        }
        cur = derive(&cur)?;
    }
}

impl Page {
    /// d_r ∘ d_r = 0 everywhere.
    pub fn d_squared_zero(&self) -> bool {
        let r = self.r as i64;
        self.differentials.iter().all(|(&(p, q), dm)| {
            let next = (p + r, q - r + 1);
            let (Some(d2), Some(tgt)) = (self.differentials.get(&next), self.terms.get(&(next.0 + r, next.1 - r + 1))) else {
                return true;
            };
            let cols = tgt.rank_nf();
            dm.iter().all(|row| vanishes_mod(&vec_mat(row, d2, cols), &tgt.moduli()))
        })
    }

    pub fn term(&self, p: i64, q: i64) -> Invariants {
        self.terms.get(&(p, q)).map_or_else(Invariants::trivial, |g| g.invariants())
    }

    /// ker d_r / im d_r at (p, q), computed on this page.
    pub fn homology(&self, p: i64, q: i64) -> Result<Invariants> {
        let r = self.r as i64;
        let Some(g) = self.terms.get(&(p, q)) else {
            return Ok(Invariants::trivial());
        };
        let k = g.rank_nf();
        let out_key = (p + r, q - r + 1);
        let ker = match (self.differentials.get(&(p, q)), self.terms.get(&out_key)) {
            (Some(dm), Some(t)) => preimage(&unit_rows(k), k, dm, t.rank_nf(), &mod_rows(&t.moduli())),
            _ => unit_rows(k),
        };
        let im = self.differentials.get(&(p - r, q + r - 1)).cloned().unwrap_or_default();
        Ok(g.subquotient_nf(&ker, &im)?.group().invariants())
    }
}

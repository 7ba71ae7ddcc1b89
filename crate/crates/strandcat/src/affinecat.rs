//! The category of `n`-periodic bijections between subsets of `Z/n`, its
//! graded pointed version with differential, and the strands algebra.
//!
//! A subset `I ⊂ Z/n` is stored by its representatives in `[1, n]`, and
//! `Ĩ` denotes its preimage in `Z`. A map `σ: Ĩ → J̃` is stored by the
//! images of `Ĩ ∩ [1, n]`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::f2core::{BasisToken, DegreeData, F2Sum, GammaLayout};
use crate::hecke::AffinePerm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("subset {0:?} is not inside [1, {1}]")]
    BadSubset(Vec<usize>, usize),
    #[error("images do not induce a bijection onto the target")]
    NotBijective,
    #[error("target of the first map differs from the source of the second")]
    ObjectMismatch,
}

/// A subset of `Z/n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubsetZn {
    pub n: usize,
    pub members: Vec<usize>,
}

impl SubsetZn {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self, AffineError> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m == 0 || m > n) {
            return Err(AffineError::BadSubset(members, n));
        }
        Ok(SubsetZn { n, members })
    }

    pub fn full(n: usize) -> Self {
        SubsetZn { n, members: (1..=n).collect() }
    }

    pub fn all(n: usize) -> Vec<SubsetZn> {
        (0u32..(1 << n))
            .map(|mask| SubsetZn { n, members: (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect() })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether `x ∈ Z` lies in the preimage `Ĩ`.
    pub fn contains_lift(&self, x: i64) -> bool {
        let r = ((x - 1).rem_euclid(self.n as i64) + 1) as usize;
        self.members.binary_search(&r).is_ok()
    }

    /// The increasing bijection `β_I: Z → Ĩ` with `β_I(1) = min I`.
    pub fn beta(&self, x: i64) -> i64 {
        let k = self.len() as i64;
        let q = (x - 1).div_euclid(k);
        let r = (x - 1).rem_euclid(k) as usize;
        self.members[r] as i64 + q * self.n as i64
    }

    /// Inverse of [`SubsetZn::beta`] on `Ĩ`.
    pub fn beta_inv(&self, y: i64) -> i64 {
        let n = self.n as i64;
        let q = (y - 1).div_euclid(n);
        let r = ((y - 1).rem_euclid(n) + 1) as usize;
        let pos = self.members.binary_search(&r).expect("not in the lift") as i64;
        pos + 1 + q * self.len() as i64
    }
}

/// The variants of the category: all maps, `+` (never going below 1),
/// `++` (weakly increasing), `f` (images in `[1, n]`) and `f++`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    All,
    Plus,
    PlusPlus,
    Finite,
    FinitePlusPlus,
}

/// A morphism `Ĩ → J̃` of the periodic category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicMap {
    pub n: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// Images of the members of `source`, in order.
    pub images: Vec<i64>,
}

impl fmt::Debug for PeriodicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl BasisToken for PeriodicMap {
    fn encode(&self) -> String {
        let parts: Vec<String> =
            self.source.iter().zip(&self.images).map(|(i, j)| format!("{i}>{j}")).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PeriodicMap {
    pub fn new(n: usize, source: &SubsetZn, images: Vec<i64>) -> Result<Self, AffineError> {
        if images.len() != source.len() {
            return Err(AffineError::NotBijective);
        }
        let mut target: Vec<usize> =
            images.iter().map(|&y| ((y - 1).rem_euclid(n as i64) + 1) as usize).collect();
        target.sort_unstable();
        let len = target.len();
        target.dedup();
        if target.len() != len {
            return Err(AffineError::NotBijective);
        }
        Ok(PeriodicMap { n, source: source.members.clone(), target, images })
    }

    pub fn identity(i: &SubsetZn) -> Self {
        PeriodicMap {
            n: i.n,
            source: i.members.clone(),
            target: i.members.clone(),
            images: i.members.iter().map(|&x| x as i64).collect(),
        }
    }

    pub fn source_set(&self) -> SubsetZn {
        SubsetZn { n: self.n, members: self.source.clone() }
    }

    pub fn target_set(&self) -> SubsetZn {
        SubsetZn { n: self.n, members: self.target.clone() }
    }

    /// `σ(x)` for `x ∈ Ĩ`.
    pub fn apply(&self, x: i64) -> i64 {
        let n = self.n as i64;
        let q = (x - 1).div_euclid(n);
        let r = ((x - 1).rem_euclid(n) + 1) as usize;
        let pos = self.source.binary_search(&r).expect("point outside the source lift");
        self.images[pos] + q * n
    }

    pub fn compose(&self, f: &PeriodicMap) -> Result<PeriodicMap, AffineError> {
        if f.target != self.source || f.n != self.n {
            return Err(AffineError::ObjectMismatch);
        }
        Ok(PeriodicMap {
            n: self.n,
            source: f.source.clone(),
            target: self.target.clone(),
            images: f.images.iter().map(|&y| self.apply(y)).collect(),
        })
    }

    /// Length by the floor formula over pairs of source representatives.
    pub fn length(&self) -> usize {
        let n = self.n as i64;
        let mut l = 0;
        for a in 0..self.images.len() {
            for b in a + 1..self.images.len() {
                l += (self.images[b] - self.images[a]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        l
    }

    fn lift_span(&self) -> i64 {
        let lo = self.images.iter().copied().min().unwrap_or(0);
        let hi = self.images.iter().copied().max().unwrap_or(0);
        hi - lo + self.n as i64
    }

    /// `L̃(σ)` with first entry in `[1, n]`: pairs `i < j` of `Ĩ` with
    /// `σ(i) > σ(j)`.
    pub fn inversions(&self) -> Vec<(i64, i64)> {
        let src = self.source_set();
        let mut out = Vec::new();
        for &i in &self.source {
            let i = i as i64;
            for j in i + 1..=i + self.lift_span() {
                if src.contains_lift(j) && self.apply(i) > self.apply(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn swapped(&self, a: i64, b: i64) -> PeriodicMap {
        let n = self.n as i64;
        let (sa, sb) = (self.apply(a), self.apply(b));
        let mut out = self.clone();
        for (x, v) in [(a, sb), (b, sa)] {
            let q = (x - 1).div_euclid(n);
            let r = ((x - 1).rem_euclid(n) + 1) as usize;
            let pos = self.source.binary_search(&r).unwrap();
            out.images[pos] = v - q * n;
        }
        out
    }

    /// The pairs of `D̃(σ)` (first entry in `[1, n]`).
    pub fn d_pairs(&self) -> Vec<(i64, i64)> {
        let n = self.n as i64;
        let src = self.source_set();
        self.inversions()
            .into_iter()
            .filter(|&(i1, i2)| {
                let (a, b) = (self.apply(i1), self.apply(i2));
                let cond_a = i2 - i1 < n || a - b < n;
                let cond_b = !(i1 + 1..i2).any(|i| src.contains_lift(i) && {
                    let s = self.apply(i);
                    b < s && s < a
                });
                cond_a && cond_b
            })
            .collect()
    }

    pub fn differential(&self) -> F2Sum<PeriodicMap> {
        self.d_pairs().into_iter().map(|(a, b)| self.swapped(a, b)).collect()
    }

    pub fn satisfies(&self, v: Variant) -> bool {
        let n = self.n as i64;
        let pairs = || self.source.iter().zip(&self.images).map(|(&i, &y)| (i as i64, y));
        match v {
            Variant::All => true,
            Variant::Plus => pairs().all(|(_, y)| y >= 1),
            Variant::PlusPlus => pairs().all(|(i, y)| y >= i),
            Variant::Finite => pairs().all(|(_, y)| (1..=n).contains(&y)),
            Variant::FinitePlusPlus => pairs().all(|(i, y)| y >= i && y <= n),
        }
    }

    /// `⟦σ⟧ = Σ α_{i, σ(i)}` as a vector over the arcs `α_1..α_n`.
    pub fn arc_class(&self) -> Vec<i64> {
        let n = self.n as i64;
        let mut v = vec![0; self.n];
        for (&i, &y) in self.source.iter().zip(&self.images) {
            let i = i as i64;
            if y >= i {
                for r in i..y {
                    v[(r - 1).rem_euclid(n) as usize] += 1;
                }
            } else {
                for r in y..i {
                    v[(r - 1).rem_euclid(n) as usize] -= 1;
                }
            }
        }
        v
    }

    /// `m(σ) = ⟦σ⟧ · ε_I`.
    pub fn m_part(&self, layout: &GammaLayout) -> Vec<i64> {
        let alpha = self.arc_class();
        let mut m = vec![0; self.n];
        for &b in &self.source {
            m[b - 1] = layout.flux(&alpha, b - 1);
        }
        m
    }
}

/// `dm(σ) = (−m(σ), ⟦σ⟧)` in the group `Γ'_n` (Maslov part zero).
pub fn dm(sigma: &PeriodicMap, layout: &Arc<GammaLayout>) -> DegreeData {
    DegreeData {
        layout: layout.clone(),
        maslov2: vec![0],
        m: sigma.m_part(layout).iter().map(|v| -v).collect(),
        r: sigma.arc_class(),
    }
}

/// `deg(σ) = (−ℓ(σ), −dm(σ))`, the second entry read as the group inverse.
pub fn degree(sigma: &PeriodicMap, layout: &Arc<GammaLayout>) -> DegreeData {
    let mut d = dm(sigma, layout).inverse();
    d.maslov2 = vec![-2 * sigma.length() as i64];
    d
}

/// `g ∘ f`, kept only when lengths add.
pub fn graded_product(g: &PeriodicMap, f: &PeriodicMap) -> Result<Option<PeriodicMap>, AffineError> {
    let gf = g.compose(f)?;
    Ok((gf.length() == g.length() + f.length()).then_some(gf))
}

/// The functor `F_I: Ŝ_{|I|} → End(I)`, `σ ↦ β_I σ β_I^{-1}`.
pub fn f_transport(i: &SubsetZn, s: &AffinePerm) -> PeriodicMap {
    let images = i.members.iter().map(|&x| i.beta(s.apply(i.beta_inv(x as i64)))).collect();
    PeriodicMap { n: i.n, source: i.members.clone(), target: i.members.clone(), images }
}

/// Inverse of [`f_transport`] on `End(I)`.
pub fn f_transport_inv(i: &SubsetZn, sigma: &PeriodicMap) -> AffinePerm {
    let k = i.len() as i64;
    AffinePerm::new((1..=k).map(|x| i.beta_inv(sigma.apply(i.beta(x)))).collect()).unwrap()
}

/// All maps `I → J` of a variant with `ℓ ≤ lmax` and every displacement
/// `|σ(i) − i| ≤ wmax · n`, sorted by (length, images).
pub fn enumerate_hom(
    i: &SubsetZn,
    j: &SubsetZn,
    variant: Variant,
    lmax: usize,
    wmax: usize,
) -> Vec<PeriodicMap> {
    let n = i.n as i64;
    let k = i.len();
    if k != j.len() {
        return Vec::new();
    }
    let reach = wmax as i64 * n;
    // candidate images of each source point
    let cands: Vec<Vec<i64>> = i
        .members
        .iter()
        .map(|&x| {
            let x = x as i64;
            (x - reach..=x + reach).filter(|&y| j.contains_lift(y)).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = BTreeSet::new();
    fn rec(
        pos: usize,
        cands: &[Vec<i64>],
        n: i64,
        cur: &mut Vec<i64>,
        used: &mut BTreeSet<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == cands.len() {
            out.push(cur.clone());
            return;
        }
        for &y in &cands[pos] {
            let r = y.rem_euclid(n);
            if used.insert(r) {
                cur.push(y);
                rec(pos + 1, cands, n, cur, used, out);
                cur.pop();
                used.remove(&r);
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, &cands, n, &mut cur, &mut used, &mut raw);
    for images in raw {
        let m = PeriodicMap::new(i.n, i, images).unwrap();
        if m.length() <= lmax && m.satisfies(variant) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| (a.length(), &a.images).cmp(&(b.length(), &b.images)));
    out
}

/// The strands algebra with `n` places: all `f++` maps between subsets.
#[derive(Clone, Debug)]
pub struct StrandsAlgebra {
    pub n: usize,
    pub basis: Vec<PeriodicMap>,
}

impl StrandsAlgebra {
    pub fn new(n: usize) -> Self {
        let mut basis = Vec::new();
        for i in SubsetZn::all(n) {
            for j in SubsetZn::all(n) {
                basis.extend(enumerate_hom(&i, &j, Variant::FinitePlusPlus, usize::MAX, 1));
            }
        }
        basis.sort_by(|a, b| (a.length(), &a.source, &a.images).cmp(&(b.length(), &b.source, &b.images)));
        StrandsAlgebra { n, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Product `a · b` (`b` first); zero when objects do not match.
    pub fn mult(&self, a: &PeriodicMap, b: &PeriodicMap) -> Option<PeriodicMap> {
        graded_product(a, b).ok().flatten()
    }
}

/// Counts partial bijections `f` of `[1, n]` with `f(i) ≥ i`, by a
/// recursion independent of the periodic-map code.
pub fn count_increasing_partial_bijections(n: usize) -> usize {
    fn rec(i: usize, n: usize, used: &mut Vec<bool>) -> usize {
        if i > n {
            return 1;
        }
        let mut total = rec(i + 1, n, used);
        for y in i..=n {
            if !used[y] {
                used[y] = true;
                total += rec(i + 1, n, used);
                used[y] = false;
            }
        }
        total
    }
    rec(1, n, &mut vec![false; n + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke;

    fn sub(n: usize, m: &[usize]) -> SubsetZn {
        SubsetZn::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn composition_basics() {
        let i = sub(2, &[1]);
        let c = f_transport(&i, &AffinePerm::c(1));
        assert_eq!(c.images, vec![3]);
        let c2 = f_transport(&i, &AffinePerm::c(1).compose(&AffinePerm::c(1)));
        assert_eq!(c.compose(&c).unwrap(), c2);
        let id = PeriodicMap::identity(&i);
        assert_eq!(id.compose(&c).unwrap(), c);
        assert_eq!(c.length(), 0);
        assert_eq!(c.compose(&c).unwrap().length(), 0);
        assert!(c.compose(&PeriodicMap::identity(&sub(2, &[2]))).is_err());
    }

    #[test]
    fn graded_product_and_d() {
        let full = SubsetZn::full(2);
        let s = PeriodicMap::new(2, &full, vec![2, 1]).unwrap();
        assert_eq!(s.length(), 1);
        assert_eq!(graded_product(&s, &s).unwrap(), None);
        assert_eq!(s.differential(), F2Sum::single(PeriodicMap::identity(&full)));
        let inc = PeriodicMap::new(2, &full, vec![2, 3]).unwrap();
        assert!(inc.differential().is_zero());
        let p = graded_product(&inc, &s).unwrap().unwrap();
        assert_eq!(p.length(), 1);
    }

    #[test]
    fn classes_of_shift() {
        for n in 1..=4 {
            let lay = Arc::new(GammaLayout::circle(n));
            let c = f_transport(&SubsetZn::full(n), &AffinePerm::c(n));
            assert_eq!(c.arc_class(), vec![1; n]);
            assert_eq!(c.m_part(&lay), vec![2; n]);
        }
    }

    #[test]
    fn dm_is_multiplicative() {
        let n = 3;
        let lay = Arc::new(GammaLayout::circle(n));
        let objs = SubsetZn::all(n);
        for i in &objs {
            for j in &objs {
                for k in &objs {
                    for f in enumerate_hom(i, j, Variant::All, 2, 1) {
                        for g in enumerate_hom(j, k, Variant::All, 2, 1).into_iter().take(6) {
                            let gf = g.compose(&f).unwrap();
                            assert_eq!(dm(&gf, &lay), dm(&g, &lay).mul(&dm(&f, &lay)).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transport_matches_hecke() {
        let i = sub(4, &[1, 3]);
        for s in AffinePerm::enumerate(2, 4, -2..=2) {
            let t = f_transport(&i, &s);
            assert_eq!(t.length(), s.length());
            assert_eq!(f_transport_inv(&i, &t), s);
            let ds = hecke::d_basis(&s).map_partial(|x| Some(f_transport(&i, x)));
            assert_eq!(t.differential(), ds);
        }
    }

    #[test]
    fn strands_algebra_dims() {
        assert_eq!(StrandsAlgebra::new(0).dim(), 1);
        assert_eq!(StrandsAlgebra::new(1).dim(), 2);
        assert_eq!(StrandsAlgebra::new(2).dim(), 5);
        for n in 0..=4 {
            assert_eq!(StrandsAlgebra::new(n).dim(), count_increasing_partial_bijections(n));
        }
    }
}

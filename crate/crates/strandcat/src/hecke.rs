//! Symmetric and extended affine symmetric groups and their nil Hecke
//! algebras over F2.
//!
//! Permutations compose as functions: `a.compose(&b)` is `a ∘ b`, so `b`
//! acts first. The basis element `T_w` is represented by `w` itself and a
//! product `T_a T_b` survives exactly when `ℓ(ab) = ℓ(a) + ℓ(b)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::f2core::{BasisToken, F2Sum};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeckeError {
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<i64>),
    #[error("ambient algebra mismatch: {0:?} vs {1:?}")]
    AmbientMismatch(Ambient, Ambient),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("element {0} is not positive")]
    NotPositive(String),
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// A permutation of `{1..n}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl BasisToken for Perm {
    fn encode(&self) -> String {
        let v: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        format!("[{}]", v.join(","))
    }
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, HeckeError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(HeckeError::NotPermutation(images.iter().map(|&v| v as i64).collect()));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (1..=n).collect() }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} not in S_{n}");
        Self::transposition(n, i, i + 1)
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Perm { images }
    }

    /// The longest element `w_n(i) = n - i + 1`.
    pub fn longest(n: usize) -> Self {
        Perm { images: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm { images: other.images.iter().map(|&x| self.images[x - 1]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Perm { images: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// All of `S_n`, sorted by length then lexicographically by images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        permutations(&mut cur, 0, &mut out);
        out.sort_by(|a, b| (a.length(), &a.images).cmp(&(b.length(), &b.images)));
        out
    }

    /// The embedding `S_n -> S_m` fixing `n+1..m`.
    pub fn embed(&self, m: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.n() + 1..=m);
        Perm { images }
    }

    /// The shift `f_r`: `T_i -> T_{r+i}`, from `S_n` to `S_{r+n}`.
    pub fn shift(&self, r: usize) -> Perm {
        let mut images: Vec<usize> = (1..=r).collect();
        images.extend(self.images.iter().map(|x| x + r));
        Perm { images }
    }

    /// The involution `ι_n`: `T_i -> T_{n-i}`, i.e. conjugation by `w_n`.
    pub fn iota(&self) -> Perm {
        let w = Perm::longest(self.n());
        w.compose(self).compose(&w)
    }

    /// Restriction to `{1..r}` when the permutation fixes `r+1..n` setwise
    /// pointwise; `None` otherwise.
    pub fn restrict(&self, r: usize) -> Option<Perm> {
        if self.images[r..].iter().enumerate().all(|(k, &x)| x == r + k + 1) {
            Some(Perm { images: self.images[..r].to_vec() })
        } else {
            None
        }
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(Perm { images: cur.clone() });
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// An element of the extended affine symmetric group: an `n`-periodic
/// bijection of `Z`, stored by its window `σ(1), ..., σ(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePerm {
    n: usize,
    window: Vec<i64>,
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl BasisToken for AffinePerm {
    fn encode(&self) -> String {
        let v: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        format!("[{}]", v.join(","))
    }
}

impl AffinePerm {
    pub fn new(window: Vec<i64>) -> Result<Self, HeckeError> {
        let n = window.len() as i64;
        let mut seen = vec![false; n as usize];
        for &x in &window {
            let r = x.rem_euclid(n) as usize;
            if n == 0 || seen[r] {
                return Err(HeckeError::NotPermutation(window));
            }
            seen[r] = true;
        }
        Ok(AffinePerm { n: n as usize, window })
    }

    pub fn identity(n: usize) -> Self {
        AffinePerm { n, window: (1..=n as i64).collect() }
    }

    /// The shift `c(i) = i + 1`.
    pub fn c(n: usize) -> Self {
        AffinePerm { n, window: (2..=n as i64 + 1).collect() }
    }

    /// `s_i` for `i in 1..=n`; `s_n` swaps `n` and `n+1`.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::reflection(n, i as i64, i as i64 + 1)
    }

    /// The periodic transposition `s_{a,b}` swapping `a + kn` and `b + kn`.
    pub fn reflection(n: usize, a: i64, b: i64) -> Self {
        let mut s = Self::identity(n);
        s.swap_positions(a, b);
        s
    }

    pub fn from_perm(p: &Perm) -> Self {
        AffinePerm { n: p.n(), window: p.images().iter().map(|&x| x as i64).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn apply(&self, i: i64) -> i64 {
        let n = self.n as i64;
        let r = (i - 1).rem_euclid(n);
        self.window[r as usize] + (i - 1 - r)
    }

    pub fn compose(&self, other: &AffinePerm) -> AffinePerm {
        assert_eq!(self.n, other.n);
        AffinePerm { n: self.n, window: other.window.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.n as i64;
        let mut inv = vec![0; self.n];
        for i in 1..=n {
            let y = self.apply(i);
            let r = (y - 1).rem_euclid(n);
            inv[r as usize] = i - (y - 1 - r);
        }
        AffinePerm { n: self.n, window: inv }
    }

    /// `σ ∘ s_{a,b}`: swaps the images of `a` and `b` periodically.
    fn swap_positions(&mut self, a: i64, b: i64) {
        let n = self.n as i64;
        let (sa, sb) = (self.apply(a), self.apply(b));
        let ra = (a - 1).rem_euclid(n);
        let rb = (b - 1).rem_euclid(n);
        self.window[ra as usize] = sb - (a - 1 - ra);
        self.window[rb as usize] = sa - (b - 1 - rb);
    }

    /// Length by the floor formula `Σ_{i<j} |⌊(σ(j) − σ(i))/n⌋|`.
    pub fn length(&self) -> usize {
        let n = self.n as i64;
        let mut l = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                l += (self.window[j] - self.window[i]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        l
    }

    /// Length as the number of inversions `(i, j)` with `i ∈ [1, n]`,
    /// `i < j` and `σ(i) > σ(j)`.
    pub fn crossing_count(&self) -> usize {
        self.inversions().len()
    }

    /// The pairs of `L̃(σ)` with first entry in `[1, n]`.
    pub fn inversions(&self) -> Vec<(i64, i64)> {
        let n = self.n as i64;
        let span = self.window.iter().max().unwrap_or(&0) - self.window.iter().min().unwrap_or(&0);
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=i + span + n {
                if self.apply(i) > self.apply(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `Σ(σ(i) − i)/n`, the exponent of `c`.
    pub fn c_degree(&self) -> i64 {
        let n = self.n as i64;
        let s: i64 = self.window.iter().enumerate().map(|(i, &x)| x - (i as i64 + 1)).sum();
        s / n
    }

    /// `σ(r) > 0` for all `r > 0`.
    pub fn is_positive(&self) -> bool {
        self.window.iter().all(|&x| x >= 1)
    }

    /// The terms of the differential: covers `σ s_{j1,j2}` over pairs of
    /// `L̃(σ)` with `j1 ∈ [1, n]` satisfying (a) `j2 − j1 < n` or
    /// `σ(j1) − σ(j2) < n`, and (b) no `i` strictly between with image
    /// strictly between.
    pub fn covers(&self) -> Vec<AffinePerm> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for (j1, j2) in self.inversions() {
            let (a, b) = (self.apply(j1), self.apply(j2));
            if !(j2 - j1 < n || a - b < n) {
                continue;
            }
            if (j1 + 1..j2).any(|i| {
                let s = self.apply(i);
                b < s && s < a
            }) {
                continue;
            }
            let mut t = self.clone();
            t.swap_positions(j1, j2);
            out.push(t);
        }
        out
    }

    /// Enumerates `σ` with `ℓ(σ) ≤ lmax` and c-degree in `degrees`, sorted
    /// by (length, window).
    pub fn enumerate(n: usize, lmax: usize, degrees: std::ops::RangeInclusive<i64>) -> Vec<AffinePerm> {
        let mut out = Vec::new();
        let ni = n as i64;
        let slack = lmax as i64 + 2;
        for p in Perm::all(n) {
            for d in degrees.clone() {
                let lo = d.div_euclid(ni) - slack;
                let hi = d.div_euclid(ni) + slack + 1;
                let mut ks = vec![lo; n];
                loop {
                    if ks.iter().sum::<i64>() == d {
                        let window: Vec<i64> =
                            (0..n).map(|i| p.images()[i] as i64 + ks[i] * ni).collect();
                        let s = AffinePerm { n, window };
                        if s.length() <= lmax {
                            out.push(s);
                        }
                    }
                    let mut k = 0;
                    while k < n {
                        ks[k] += 1;
                        if ks[k] <= hi {
                            break;
                        }
                        ks[k] = lo;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                }
            }
        }
        out.sort_by(|a, b| (a.length(), &a.window).cmp(&(b.length(), &b.window)));
        out.dedup();
        out
    }

    /// Positive elements of c-degree `d`: windows `π(i) + k_i n` with
    /// `k_i ≥ 0` and `Σ k_i = d`.
    pub fn positive_of_degree(n: usize, d: i64) -> Vec<AffinePerm> {
        let mut out = Vec::new();
        let ni = n as i64;
        let mut comps = Vec::new();
        compositions(d, n, &mut Vec::new(), &mut comps);
        for p in Perm::all(n) {
            for k in &comps {
                let window = (0..n).map(|i| p.images()[i] as i64 + k[i] * ni).collect();
                out.push(AffinePerm { n, window });
            }
        }
        out.sort();
        out
    }
}

fn compositions(d: i64, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if parts == 0 {
        if d == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if parts == 1 {
        cur.push(d);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in 0..=d {
        cur.push(k);
        compositions(d - k, parts - 1, cur, out);
        cur.pop();
    }
}

/// The group-theoretic data a nil Hecke algebra needs from its basis.
#[allow(clippy::len_without_is_empty)]
pub trait HeckeBasis: BasisToken {
    fn rank(&self) -> usize;
    fn len(&self) -> usize;
    fn compose(&self, other: &Self) -> Self;
    /// Elements `w'` below `w` in Bruhat order with `ℓ(w') = ℓ(w) − 1`.
    fn bruhat_covers(&self) -> Vec<Self>;
}

impl HeckeBasis for Perm {
    fn rank(&self) -> usize {
        self.n()
    }
    fn len(&self) -> usize {
        self.length()
    }
    fn compose(&self, other: &Self) -> Self {
        Perm::compose(self, other)
    }
    fn bruhat_covers(&self) -> Vec<Self> {
        let n = self.n();
        let l = self.length();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let w = Perm::compose(self, &Perm::transposition(n, i, j));
                if w.length() + 1 == l {
                    out.push(w);
                }
            }
        }
        out.sort();
        out
    }
}

impl HeckeBasis for AffinePerm {
    fn rank(&self) -> usize {
        self.n
    }
    fn len(&self) -> usize {
        self.length()
    }
    fn compose(&self, other: &Self) -> Self {
        AffinePerm::compose(self, other)
    }
    fn bruhat_covers(&self) -> Vec<Self> {
        let mut c = self.covers();
        c.sort();
        c
    }
}

/// `T_a T_b`, or `None` when the lengths do not add.
pub fn mult_basis<T: HeckeBasis>(a: &T, b: &T) -> Option<T> {
    let ab = a.compose(b);
    (ab.len() == a.len() + b.len()).then_some(ab)
}

pub fn mult<T: HeckeBasis>(a: &F2Sum<T>, b: &F2Sum<T>) -> F2Sum<T> {
    a.bilinear(b, mult_basis)
}

pub fn d_basis<T: HeckeBasis>(w: &T) -> F2Sum<T> {
    w.bruhat_covers().into_iter().collect()
}

pub fn differential<T: HeckeBasis>(x: &F2Sum<T>) -> F2Sum<T> {
    x.map_linear(d_basis)
}

/// Which algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Finite,
    Affine,
    AffinePositive,
}

/// An element of `H_n`, `Ĥ_n` or `Ĥ_n^+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilHeckeElem<T: HeckeBasis> {
    pub ambient: Ambient,
    pub n: usize,
    pub sum: F2Sum<T>,
}

impl NilHeckeElem<Perm> {
    pub fn finite(n: usize, sum: F2Sum<Perm>) -> Self {
        NilHeckeElem { ambient: Ambient::Finite, n, sum }
    }
}

impl NilHeckeElem<AffinePerm> {
    pub fn affine(n: usize, sum: F2Sum<AffinePerm>) -> Self {
        NilHeckeElem { ambient: Ambient::Affine, n, sum }
    }

    pub fn positive(n: usize, sum: F2Sum<AffinePerm>) -> Result<Self, HeckeError> {
        if let Some(bad) = sum.iter().find(|s| !s.is_positive()) {
            return Err(HeckeError::NotPositive(bad.encode()));
        }
        Ok(NilHeckeElem { ambient: Ambient::AffinePositive, n, sum })
    }
}

impl<T: HeckeBasis> NilHeckeElem<T> {
    pub fn mult(&self, other: &Self) -> Result<Self, HeckeError> {
        if self.ambient != other.ambient {
            return Err(HeckeError::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.n != other.n {
            return Err(HeckeError::RankMismatch(self.n, other.n));
        }
        Ok(NilHeckeElem { ambient: self.ambient, n: self.n, sum: mult(&self.sum, &other.sum) })
    }

    pub fn differential(&self) -> Self {
        NilHeckeElem { ambient: self.ambient, n: self.n, sum: differential(&self.sum) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// The trace `t^±_{r+n, r}: H_{r+n} → H_r` on a basis element.
///
/// `t^+(T_w) = T_{w_r w_{r+n} w}` when `w ∈ w_{r+n} S_r`, and
/// `t^-(T_w) = T_{w w_{r+n} w_r}` when `w ∈ S_r w_{r+n}`.
pub fn trace_basis(sign: Sign, r: usize, w: &Perm) -> Option<Perm> {
    let m = w.n();
    let wm = Perm::longest(m);
    let wr = Perm::longest(r).embed(m);
    let u = match sign {
        Sign::Plus => wm.compose(w),
        Sign::Minus => w.compose(&wm),
    };
    u.restrict(r)?;
    let res = match sign {
        Sign::Plus => wr.compose(&wm).compose(w),
        Sign::Minus => w.compose(&wm).compose(&wr),
    };
    res.restrict(r)
}

pub fn trace(sign: Sign, r: usize, x: &F2Sum<Perm>) -> F2Sum<Perm> {
    x.map_partial(|w| trace_basis(sign, r, w))
}

/// The four regular bimodules with underlying space `H_{r+n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BimoduleSide {
    LPlus,
    LMinus,
    RPlus,
    RMinus,
}

/// The image of `h_r ∈ H_r` and `h_n ∈ H_n` inside `H_{r+n}` for a side.
fn bimodule_embeddings(side: BimoduleSide, r: usize, n: usize, hr: &Perm, hn: &Perm) -> (Perm, Perm) {
    match side {
        BimoduleSide::LPlus | BimoduleSide::RPlus => (hr.embed(r + n), hn.iota().shift(r)),
        BimoduleSide::LMinus | BimoduleSide::RMinus => (hr.shift(n), hn.embed(r + n)),
    }
}

/// The action of `(h_r ⊗ h_n)` and `h2 ∈ H_{r+n}` on `x ∈ H_{r+n}`.
///
/// For `L^±` this is `A(h_r) A(h_n) x h2`; for `R^±` it is
/// `h2 x A(h_r) A(h_n)`.
pub fn bimodule_action(
    side: BimoduleSide,
    r: usize,
    n: usize,
    h: (&F2Sum<Perm>, &F2Sum<Perm>),
    x: &F2Sum<Perm>,
    h2: &F2Sum<Perm>,
) -> Result<F2Sum<Perm>, HeckeError> {
    for t in h.0.iter() {
        if t.n() != r {
            return Err(HeckeError::RankMismatch(t.n(), r));
        }
    }
    for t in h.1.iter() {
        if t.n() != n {
            return Err(HeckeError::RankMismatch(t.n(), n));
        }
    }
    for t in x.iter().chain(h2.iter()) {
        if t.n() != r + n {
            return Err(HeckeError::RankMismatch(t.n(), r + n));
        }
    }
    let mut a = F2Sum::zero();
    for hr in h.0.iter() {
        for hn in h.1.iter() {
            let (er, en) = bimodule_embeddings(side, r, n, hr, hn);
            // disjoint supports: the product always survives
            a.toggle(er.compose(&en));
        }
    }
    Ok(match side {
        BimoduleSide::LPlus | BimoduleSide::LMinus => mult(&mult(&a, x), h2),
        BimoduleSide::RPlus | BimoduleSide::RMinus => mult(&mult(h2, x), &a),
    })
}

/// Minimal coset representatives `W^I` (for `+`) or `^IW` (for `−`) of
/// `S_r` inside `S_{r+n}`.
pub fn coset_representatives(sign: Sign, r: usize, n: usize) -> Vec<Perm> {
    Perm::all(r + n)
        .into_iter()
        .filter(|w| {
            let v = match sign {
                Sign::Plus => w.clone(),
                Sign::Minus => w.inverse(),
            };
            (1..r).all(|i| v.apply(i) < v.apply(i + 1))
        })
        .collect()
}

/// Entries of the dual-basis pairing matrix.
///
/// For `+`, entry `(v, w)` is `t^+(T_{w_S w_I v^{-1}} T_w)`; for `−` it is
/// `t^-(T_v T_{w^{-1} w_I w_S})`. Each entry is `Some(true)` for `T_e`,
/// `Some(false)` for 0, and `None` for anything else.
pub fn dual_basis_pairing(sign: Sign, r: usize, n: usize) -> Vec<Vec<Option<bool>>> {
    let m = r + n;
    let ws = Perm::longest(m);
    let wi = Perm::longest(r).embed(m);
    let reps = coset_representatives(sign, r, n);
    let mut rows = Vec::new();
    for v in &reps {
        let mut row = Vec::new();
        for w in &reps {
            let (a, b) = match sign {
                Sign::Plus => (ws.compose(&wi).compose(&v.inverse()), w.clone()),
                Sign::Minus => (v.clone(), w.inverse().compose(&wi).compose(&ws)),
            };
            let t = trace(sign, r, &F2Sum::from_option(mult_basis(&a, &b)));
            row.push(if t.is_zero() {
                Some(false)
            } else if t.len() == 1 && t.iter().next().unwrap().is_identity() {
                Some(true)
            } else {
                None
            });
        }
        rows.push(row);
    }
    rows
}

pub fn is_identity_matrix(m: &[Vec<Option<bool>>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &e)| e == Some(i == j)))
}

/// Outcome of the positive presentation check.
#[derive(Clone, Debug, Default)]
pub struct PresentationReport {
    pub failed_relations: Vec<String>,
    pub chains: usize,
    pub positive_elements: usize,
    pub zero_products: Vec<String>,
    pub collisions: Vec<String>,
    pub missed: Vec<String>,
}

impl PresentationReport {
    pub fn ok(&self) -> bool {
        self.failed_relations.is_empty()
            && self.zero_products.is_empty()
            && self.collisions.is_empty()
            && self.missed.is_empty()
            && self.chains == self.positive_elements
    }
}

fn word(n: usize, letters: &[Option<usize>]) -> F2Sum<AffinePerm> {
    // `None` is c, `Some(i)` is T_i; the word is read left to right as a product
    let mut acc = F2Sum::single(AffinePerm::identity(n));
    for l in letters {
        let g = match l {
            None => AffinePerm::c(n),
            Some(i) => AffinePerm::simple(n, *i),
        };
        acc = mult(&acc, &F2Sum::single(g));
    }
    acc
}

/// `β_i = c T_{n−1} ⋯ T_i` as a word.
fn beta_word(n: usize, i: usize) -> Vec<Option<usize>> {
    let mut w = vec![None];
    w.extend((i..n).rev().map(Some));
    w
}

/// `γ_I = β_{i_1+r−1} β_{i_2+r−2} ⋯ β_{i_r}` for `I = {i_1 < ... < i_r}`.
pub fn gamma_word(n: usize, set: &[usize]) -> Vec<Option<usize>> {
    let r = set.len();
    let mut w = Vec::new();
    for (k, &i) in set.iter().enumerate() {
        w.extend(beta_word(n, i + r - 1 - k));
    }
    w
}

fn subsets_nonempty(m: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << m))
        .map(|mask| (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// Chains `(I_1, ..., I_m)` of non-empty sets with `I_1 ⊂ {1..n}`,
/// `I_k ⊂ {1..|I_{k−1}|}` and `Σ |I_k| ≤ budget`.
pub fn chains(n: usize, budget: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(top: usize, budget: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        out.push(cur.clone());
        for s in subsets_nonempty(top) {
            if s.len() <= budget {
                let k = s.len();
                cur.push(s);
                rec(k, budget - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, budget, &mut Vec::new(), &mut out);
    out
}

/// Checks the defining relations of `Ĥ_n^+` inside `Ĥ_n`, and that
/// `(w, (I_1..I_m)) ↦ T_w γ_{I_m} ⋯ γ_{I_1}` is a bijection onto positive
/// elements of c-degree at most `c_bound`.
pub fn positive_presentation_check(n: usize, c_bound: usize) -> PresentationReport {
    let mut rep = PresentationReport::default();
    let t = |i: usize| Some(i);
    let c = None;
    type Relation = (String, Vec<Option<usize>>, Vec<Option<usize>>);
    let mut rels: Vec<Relation> = Vec::new();
    for i in 1..n {
        rels.push((format!("T{i}^2=0"), vec![t(i), t(i)], vec![]));
        for j in i + 2..n {
            rels.push((format!("T{i}T{j}=T{j}T{i}"), vec![t(i), t(j)], vec![t(j), t(i)]));
        }
        if i + 1 < n {
            rels.push((
                format!("T{i}T{}T{i}=T{}T{i}T{}", i + 1, i + 1, i + 1),
                vec![t(i), t(i + 1), t(i)],
                vec![t(i + 1), t(i), t(i + 1)],
            ));
            rels.push((format!("cT{i}=T{}c", i + 1), vec![c, t(i)], vec![t(i + 1), c]));
        }
    }
    if n >= 2 {
        rels.push((format!("c^2T{}=T1c^2", n - 1), vec![c, c, t(n - 1)], vec![t(1), c, c]));
    }
    for (name, lhs, rhs) in rels {
        let l = word(n, &lhs);
        let r = if rhs.is_empty() && name.ends_with("=0") { F2Sum::zero() } else { word(n, &rhs) };
        if l != r {
            rep.failed_relations.push(name);
        }
    }

    let mut hit: BTreeMap<AffinePerm, String> = BTreeMap::new();
    for w in Perm::all(n) {
        for ch in chains(n, c_bound) {
            rep.chains += 1;
            let mut letters: Vec<Option<usize>> = Vec::new();
            let label = format!("{}·{:?}", w.encode(), ch);
            let mut acc = F2Sum::single(AffinePerm::from_perm(&w));
            for set in ch.iter().rev() {
                letters.extend(gamma_word(n, set));
            }
            acc = mult(&acc, &word(n, &letters));
            if acc.len() != 1 {
                rep.zero_products.push(label);
                continue;
            }
            let s = acc.iter().next().unwrap().clone();
            if let Some(prev) = hit.insert(s.clone(), label.clone()) {
                rep.collisions.push(format!("{label} and {prev} -> {}", s.encode()));
            }
        }
    }
    let mut targets = BTreeSet::new();
    for d in 0..=c_bound as i64 {
        targets.extend(AffinePerm::positive_of_degree(n, d));
    }
    rep.positive_elements = targets.len();
    for s in &targets {
        if !hit.contains_key(s) {
            rep.missed.push(s.encode());
        }
    }
    for s in hit.keys() {
        if !targets.contains(s) {
            rep.missed.push(format!("unexpected {}", s.encode()));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: &[i64]) -> AffinePerm {
        AffinePerm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Perm::identity(4).length(), 0);
        assert_eq!(Perm::new(vec![3, 1, 2]).unwrap().length(), 2);
        assert!(Perm::new(vec![1, 1]).is_err());
        assert_eq!(AffinePerm::c(2).length(), 0);
        assert_eq!(a(&[4, 3]).length(), 1);
        assert_eq!(a(&[4, 3]).crossing_count(), 1);
    }

    #[test]
    fn finite_products_and_d() {
        let s1 = Perm::simple(3, 1);
        let s2 = Perm::simple(3, 2);
        assert_eq!(mult_basis(&s1, &s1), None);
        assert_eq!(mult_basis(&s1, &s2), Some(s1.compose(&s2)));
        assert_eq!(d_basis(&Perm::simple(2, 1)), F2Sum::single(Perm::identity(2)));
        assert!(d_basis(&Perm::identity(3)).is_zero());
        let w3 = Perm::longest(3);
        let expect: F2Sum<Perm> = [s1.compose(&s2), s2.compose(&s1)].into_iter().collect();
        assert_eq!(d_basis(&w3), expect);
    }

    #[test]
    fn ambient_mismatch() {
        let x = NilHeckeElem::affine(2, F2Sum::single(AffinePerm::identity(2)));
        let y = NilHeckeElem::positive(2, F2Sum::single(AffinePerm::identity(2))).unwrap();
        assert!(x.mult(&y).is_err());
        assert!(NilHeckeElem::positive(2, F2Sum::single(a(&[0, 3]))).is_err());
    }

    #[test]
    fn trace_examples() {
        let w3 = Perm::longest(3);
        assert_eq!(trace_basis(Sign::Plus, 2, &w3), Some(Perm::simple(2, 1)));
        assert_eq!(trace_basis(Sign::Plus, 2, &Perm::identity(3)), None);
        for w in Perm::all(3) {
            assert_eq!(trace_basis(Sign::Plus, 3, &w), Some(w.clone()));
            assert_eq!(trace_basis(Sign::Minus, 3, &w), Some(w));
        }
    }

    #[test]
    fn bimodule_examples() {
        let e3 = F2Sum::single(Perm::identity(3));
        let one1 = F2Sum::single(Perm::identity(1));
        let t1 = F2Sum::single(Perm::simple(2, 1));
        let out = bimodule_action(BimoduleSide::LPlus, 1, 2, (&one1, &t1), &e3, &e3).unwrap();
        assert_eq!(out, F2Sum::single(Perm::simple(3, 2)));
        let one2 = F2Sum::single(Perm::identity(2));
        let unit = bimodule_action(BimoduleSide::RMinus, 1, 2, (&one1, &one2), &t1.map_partial(|w| Some(w.embed(3))), &e3).unwrap();
        assert_eq!(unit, F2Sum::single(Perm::simple(3, 1)));
        assert!(bimodule_action(BimoduleSide::LPlus, 1, 1, (&t1, &one1), &e3, &e3).is_err());
    }

    #[test]
    fn dual_pairing_examples() {
        let m = dual_basis_pairing(Sign::Plus, 2, 1);
        assert_eq!(m.len(), 3);
        assert!(is_identity_matrix(&m));
        assert!(is_identity_matrix(&dual_basis_pairing(Sign::Plus, 0, 0)));
        assert!(is_identity_matrix(&dual_basis_pairing(Sign::Minus, 1, 2)));
    }

    #[test]
    fn gamma_example() {
        // n = 2, I = {1}: c_I = c s_1 with c_I(1) = 3
        let g = word(2, &gamma_word(2, &[1]));
        let expect = AffinePerm::c(2).compose(&AffinePerm::simple(2, 1));
        assert_eq!(g, F2Sum::single(expect.clone()));
        assert_eq!(expect.apply(1), 3);
        // s_{r-1}...s_1 c s_{n-1}...s_r moves only r, by n
        let n = 3;
        for r in 1..=n {
            let mut x = AffinePerm::identity(n);
            for i in (1..r).rev() {
                x = x.compose(&AffinePerm::simple(n, i));
            }
            x = x.compose(&AffinePerm::c(n));
            for i in (r..n).rev() {
                x = x.compose(&AffinePerm::simple(n, i));
            }
            for i in 1..=n as i64 {
                let shift = if i == r as i64 { n as i64 } else { 0 };
                assert_eq!(x.apply(i), i + shift);
            }
        }
    }

    #[test]
    fn presentation_small() {
        let r = positive_presentation_check(2, 2);
        assert!(r.ok(), "{r:?}");
        let r = positive_presentation_check(3, 2);
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn affine_covers_match_brute_reflections() {
        for s in AffinePerm::enumerate(3, 4, -1..=1) {
            let mut brute = BTreeSet::new();
            let l = s.length();
            for aa in 1..=3i64 {
                for b in aa + 1..aa + 20 {
                    if (b - aa) % 3 == 0 {
                        continue;
                    }
                    let mut t = s.clone();
                    t.swap_positions(aa, b);
                    if t.length() + 1 == l {
                        brute.insert(t);
                    }
                }
            }
            let fast: BTreeSet<_> = s.covers().into_iter().collect();
            assert_eq!(fast, brute, "{s:?}");
        }
    }
}

//! Formal sums over F2, differential contracts, and the grading group.
//!
//! A pointed set with a differential is modelled as a basis of tokens plus a
//! map sending each token to an [`F2Sum`]. The pointed zero is the empty sum,
//! and partial products of tokens return `Option<T>`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// A basis element with a canonical textual encoding.
///
/// Two tokens compare equal exactly when their encodings agree, and the
/// derived ordering is used everywhere a deterministic order is needed.
pub trait BasisToken: Ord + Clone + fmt::Debug {
    fn encode(&self) -> String;
}

impl BasisToken for String {
    fn encode(&self) -> String {
        self.clone()
    }
}

impl BasisToken for u32 {
    fn encode(&self) -> String {
        self.to_string()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum F2Error {
    #[error("differential image of {source_token} contains unknown token {unknown}")]
    UnknownToken { source_token: String, unknown: String },
    #[error("degree data built over different curve layouts")]
    LayoutMismatch,
}

/// An element of the F2 vector space spanned by tokens of type `T`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Sum<T: Ord> {
    terms: BTreeSet<T>,
}

impl<T: Ord> Default for F2Sum<T> {
    fn default() -> Self {
        F2Sum { terms: BTreeSet::new() }
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for F2Sum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}

impl<T: Ord + Clone> F2Sum<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(t: T) -> Self {
        let mut s = Self::zero();
        s.terms.insert(t);
        s
    }

    pub fn from_option(t: Option<T>) -> Self {
        t.map(Self::single).unwrap_or_default()
    }

    /// Adds one basis token (removing it if already present).
    pub fn toggle(&mut self, t: T) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        F2Sum { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.terms.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.terms.iter()
    }

    /// Extends a map on tokens linearly.
    pub fn map_linear<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> F2Sum<U>) -> F2Sum<U> {
        let mut out = F2Sum::zero();
        for t in &self.terms {
            out.add_assign(&f(t));
        }
        out
    }

    /// Extends a partial map on tokens linearly; `None` is the pointed zero.
    pub fn map_partial<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> Option<U>) -> F2Sum<U> {
        let mut out = F2Sum::zero();
        for t in &self.terms {
            if let Some(u) = f(t) {
                out.toggle(u);
            }
        }
        out
    }

    /// Bilinear extension of a partial product of tokens.
    pub fn bilinear<U: Ord + Clone, V: Ord + Clone>(
        &self,
        other: &F2Sum<U>,
        mut f: impl FnMut(&T, &U) -> Option<V>,
    ) -> F2Sum<V> {
        let mut out = F2Sum::zero();
        for a in &self.terms {
            for b in &other.terms {
                if let Some(v) = f(a, b) {
                    out.toggle(v);
                }
            }
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<T> for F2Sum<T> {
    /// Collects with F2 coefficients, so repeated tokens cancel in pairs.
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = F2Sum::zero();
        for t in iter {
            s.toggle(t);
        }
        s
    }
}

impl<T: BasisToken> F2Sum<T> {
    pub fn encode(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| t.encode()).collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Returns the tokens `x` of `basis` with `d(d(x)) != 0`.
///
/// Every token appearing in an image of `d` must belong to `basis`.
pub fn check_d_squared<T: BasisToken>(
    basis: &[T],
    d: impl Fn(&T) -> F2Sum<T>,
) -> Result<Vec<T>, F2Error> {
    let known: BTreeSet<&T> = basis.iter().collect();
    let mut images = std::collections::BTreeMap::new();
    for x in basis {
        let dx = d(x);
        for y in dx.iter() {
            if !known.contains(y) {
                return Err(F2Error::UnknownToken {
                    source_token: x.encode(),
                    unknown: y.encode(),
                });
            }
        }
        images.insert(x.clone(), dx);
    }
    let mut bad = Vec::new();
    for x in basis {
        let dd = images[x].map_linear(|y| images[y].clone());
        if !dd.is_zero() {
            bad.push(x.clone());
        }
    }
    Ok(bad)
}

/// Returns the pairs `(a, b)` where the Leibniz rule fails.
///
/// `mult` is the partial product on tokens (`b` applied first, so the
/// product is `a * b`), `d` the differential.
pub fn check_leibniz<T: BasisToken>(
    pairs: impl IntoIterator<Item = (T, T)>,
    mult: impl Fn(&T, &T) -> Option<T>,
    d: impl Fn(&T) -> F2Sum<T>,
) -> Vec<(T, T)> {
    let mut bad = Vec::new();
    for (a, b) in pairs {
        let lhs = F2Sum::from_option(mult(&a, &b)).map_linear(&d);
        let da = d(&a);
        let db = d(&b);
        let sa = F2Sum::single(a.clone());
        let sb = F2Sum::single(b.clone());
        let rhs = da.bilinear(&sb, &mult).add(&sa.bilinear(&db, &mult));
        if lhs != rhs {
            bad.push((a, b));
        }
    }
    bad
}

/// Bookkeeping for the grading group of a curve.
///
/// `components` counts connected components (each carries one Maslov
/// coordinate). Each mark records its component and the arcs on either side
/// in the increasing direction of the reference parametrisation; an outer
/// end of an interval has no arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GammaLayout {
    pub components: usize,
    pub marks: Vec<MarkLayout>,
    pub arcs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkLayout {
    pub omega: usize,
    pub arc_before: Option<usize>,
    pub arc_after: Option<usize>,
}

impl GammaLayout {
    /// The layout of a circle with `n` marks and arcs `a -> a+1` (the arc
    /// after mark `n` wraps to mark 1), as used for the affine categories.
    pub fn circle(n: usize) -> Self {
        let marks = (0..n)
            .map(|b| MarkLayout {
                omega: 0,
                arc_before: Some((b + n - 1) % n),
                arc_after: Some(b),
            })
            .collect();
        GammaLayout { components: 1, marks, arcs: n }
    }

    /// Sum of `(alpha[A+] + alpha[A-])` at a mark, the value of
    /// `m_{c+} - m_{c-}` on a class with arc coefficients `alpha`.
    pub fn flux(&self, alpha: &[i64], mark: usize) -> i64 {
        let ml = &self.marks[mark];
        ml.arc_before.map_or(0, |a| alpha[a]) + ml.arc_after.map_or(0, |a| alpha[a])
    }

    /// The biadditive pairing of two arc vectors, valued in mark coordinates.
    pub fn pairing(&self, alpha: &[i64], beta: &[i64]) -> Vec<i64> {
        self.marks
            .iter()
            .enumerate()
            .map(|(x, ml)| {
                let rho = ml.arc_before.map_or(0, |a| beta[a]) - ml.arc_after.map_or(0, |a| beta[a]);
                self.flux(alpha, x) * rho
            })
            .collect()
    }
}

/// An element of the grading group: a doubled Maslov part per component,
/// a mark part (coefficient of the increasing direction at each mark) and
/// an arc part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DegreeData {
    pub layout: Arc<GammaLayout>,
    pub maslov2: Vec<i64>,
    pub m: Vec<i64>,
    pub r: Vec<i64>,
}

impl fmt::Debug for DegreeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Deg(maslov2={:?}, m={:?}, r={:?})", self.maslov2, self.m, self.r)
    }
}

impl DegreeData {
    pub fn identity(layout: Arc<GammaLayout>) -> Self {
        let (c, k, a) = (layout.components, layout.marks.len(), layout.arcs);
        DegreeData { layout, maslov2: vec![0; c], m: vec![0; k], r: vec![0; a] }
    }

    pub fn is_identity(&self) -> bool {
        self.maslov2.iter().chain(&self.m).chain(&self.r).all(|&v| v == 0)
    }

    fn same_layout(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.layout, &other.layout) || self.layout == other.layout
    }

    /// Group product `(l, a)(l', a') = (l + l' + <a, a'>, a + a')`.
    pub fn mul(&self, other: &Self) -> Result<Self, F2Error> {
        if !self.same_layout(other) {
            return Err(F2Error::LayoutMismatch);
        }
        let pair = self.layout.pairing(&self.r, &other.r);
        Ok(DegreeData {
            layout: self.layout.clone(),
            maslov2: zip_add(&self.maslov2, &other.maslov2),
            m: zip_add(&zip_add(&self.m, &other.m), &pair),
            r: zip_add(&self.r, &other.r),
        })
    }

    pub fn inverse(&self) -> Self {
        let pair = self.layout.pairing(&self.r, &self.r);
        DegreeData {
            layout: self.layout.clone(),
            maslov2: self.maslov2.iter().map(|v| -v).collect(),
            m: self.m.iter().zip(&pair).map(|(v, p)| -v + p).collect(),
            r: self.r.iter().map(|v| -v).collect(),
        }
    }
}

fn zip_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Gaussian elimination over F2 on dense bit rows.
///
/// Rows are `Vec<u64>` bitsets of a common width. Returns the rank.
pub fn f2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Packs a set of column indices into a bit row of `width` columns.
pub fn bit_row(width: usize, cols: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut row = vec![0u64; width.div_ceil(64).max(1)];
    for c in cols {
        row[c / 64] ^= 1 << (c % 64);
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[&str]) -> F2Sum<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn addition_is_xor() {
        assert!(s(&["x"]).add(&s(&["x"])).is_zero());
        assert_eq!(s(&[]).add(&s(&["y"])), s(&["y"]));
        assert_eq!(s(&["x"]).add(&s(&["y"])), s(&["x", "y"]));
    }

    #[test]
    fn d_squared_report() {
        let basis: Vec<String> = ["x", "y", "z"].iter().map(|v| v.to_string()).collect();
        let zero = check_d_squared(&basis, |_| F2Sum::zero()).unwrap();
        assert!(zero.is_empty());
        let d = |t: &String| match t.as_str() {
            "x" => s(&["y"]),
            "y" => s(&["z"]),
            _ => s(&[]),
        };
        assert_eq!(check_d_squared(&basis, d).unwrap(), vec!["x".to_string()]);
        let err = check_d_squared(&basis, |_| s(&["w"])).unwrap_err();
        assert!(matches!(err, F2Error::UnknownToken { .. }));
    }

    #[test]
    fn gamma_identity_inverse_and_disjoint_support() {
        let lay = Arc::new(GammaLayout::circle(3));
        let g = DegreeData { layout: lay.clone(), maslov2: vec![3], m: vec![1, -2, 0], r: vec![1, 0, 2] };
        let e = DegreeData::identity(lay.clone());
        assert_eq!(g.mul(&e).unwrap(), g);
        assert!(g.mul(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().mul(&g).unwrap().is_identity());

        // two components: pairing between vectors on different components vanishes
        let two = Arc::new(GammaLayout {
            components: 2,
            marks: vec![
                MarkLayout { omega: 0, arc_before: None, arc_after: Some(0) },
                MarkLayout { omega: 0, arc_before: Some(0), arc_after: None },
                MarkLayout { omega: 1, arc_before: None, arc_after: Some(1) },
                MarkLayout { omega: 1, arc_before: Some(1), arc_after: None },
            ],
            arcs: 2,
        });
        assert_eq!(two.pairing(&[3, 0], &[0, 5]), vec![0, 0, 0, 0]);
    }

    #[test]
    fn mismatched_layouts_error() {
        let a = DegreeData::identity(Arc::new(GammaLayout::circle(2)));
        let b = DegreeData::identity(Arc::new(GammaLayout::circle(3)));
        assert_eq!(a.mul(&b).unwrap_err(), F2Error::LayoutMismatch);
    }

    #[test]
    fn rank_small() {
        let rows = vec![bit_row(3, [0, 1]), bit_row(3, [1, 2]), bit_row(3, [0, 2])];
        assert_eq!(f2_rank(rows), 2);
    }
}

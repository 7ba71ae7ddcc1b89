//! Braids on a curve and its strand category.
//!
//! A braid is a family of admissible path classes, one per source point,
//! whose end points are pairwise distinct. Composition is strandwise; the
//! strand category keeps a composite only when the degree is multiplicative.
//! The differential resolves the crossings in `D(θ)`, computed on the
//! non-singular cover.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::affinecat::{self, PeriodicMap, SubsetZn, Variant};
use crate::curve::{ComponentSpec, CurveError, CurveModel, DiagramFile, Path, Topology};
use crate::f2core::{BasisToken, DegreeData, F2Sum};

#[derive(Debug, Error)]
pub enum StrandError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not a braid: {0}")]
    NotBraid(String),
    #[error("crossing does not belong to the braid")]
    NotInL,
    #[error("mu(theta) = {0} < 2")]
    MuTooSmall(usize),
    #[error("{0} is not a regular oriented point")]
    BadBasePoint(usize),
    #[error("no factorization found")]
    NoFactorization,
    #[error("point {0} of the source curve has no image in the target curve")]
    NotStrict(usize),
}

/// A braid: `strands[k]` starts at `source[k]`; `source` is sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Braid {
    pub source: Vec<usize>,
    pub strands: Vec<Path>,
}

impl fmt::Debug for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.strands)
    }
}

impl BasisToken for Braid {
    fn encode(&self) -> String {
        let parts: Vec<String> = self.strands.iter().map(|p| p.encode()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// One element of `L(θ)/inv`: lift `a` of strand `s1` crosses the
/// (translated) lift `b` of strand `s2` on the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub s1: usize,
    pub s2: usize,
    pub a: Path,
    pub b: Path,
    pub in_d: bool,
}

/// `deg(g)·deg(f)·deg(g∘f)^{-1}`, projected. `halves[Ω]` counts half units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub halves: Vec<i64>,
    /// Whether the mark and arc parts vanished, as they must.
    pub residual_zero: bool,
}

impl Defect {
    pub fn is_zero(&self) -> bool {
        self.halves.iter().all(|&h| h == 0)
    }
}

/// The strand category of a curve.
#[derive(Clone, Debug)]
pub struct StrandCat {
    pub z: CurveModel,
}

impl StrandCat {
    pub fn new(z: CurveModel) -> Self {
        StrandCat { z }
    }

    pub fn from_json(text: &str) -> Result<Self, StrandError> {
        Ok(StrandCat::new(CurveModel::from_json(text)?))
    }

    // -----------------------------------------------------------------------
    // Braids

    /// Builds a braid from `(start point, path)` pairs.
    pub fn braid(&self, strands: Vec<Path>) -> Result<Braid, StrandError> {
        let mut pairs: Vec<(usize, Path)> = strands.into_iter().map(|p| (self.z.start_point(&p), p)).collect();
        pairs.sort();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(StrandError::NotBraid(format!("two strands start at point {}", w[0].0)));
            }
        }
        let mut ends: Vec<usize> = pairs.iter().map(|(_, p)| self.z.end_point(p)).collect();
        ends.sort();
        if ends.windows(2).any(|w| w[0] == w[1]) {
            return Err(StrandError::NotBraid("two strands end at the same point".into()));
        }
        for (_, p) in &pairs {
            if !self.z.admissible(p) {
                return Err(StrandError::NotBraid(format!("{} is not admissible", self.z.encode_path(p))));
            }
        }
        Ok(Braid { source: pairs.iter().map(|x| x.0).collect(), strands: pairs.into_iter().map(|x| x.1).collect() })
    }

    pub fn identity(&self, object: &[usize]) -> Braid {
        let mut source = object.to_vec();
        source.sort();
        let strands = source.iter().map(|&p| self.z.identity_path(p)).collect();
        Braid { source, strands }
    }

    pub fn target(&self, b: &Braid) -> Vec<usize> {
        let mut t: Vec<usize> = b.strands.iter().map(|p| self.z.end_point(p)).collect();
        t.sort();
        t
    }

    pub fn encode(&self, b: &Braid) -> String {
        let parts: Vec<String> = b.strands.iter().map(|p| self.z.encode_path(p)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Total arc length of the strands.
    pub fn mu_total(&self, b: &Braid) -> usize {
        b.strands.iter().map(|p| self.z.path_length(p)).sum()
    }

    /// `g ∘ f` in the pre-strand category (`f` first).
    pub fn compose(&self, g: &Braid, f: &Braid) -> Result<Option<Braid>, StrandError> {
        if self.target(f) != g.source {
            return Err(StrandError::ObjectMismatch(format!("{} then {}", self.encode(f), self.encode(g))));
        }
        let mut out = Vec::with_capacity(f.strands.len());
        for p in &f.strands {
            let e = self.z.end_point(p);
            let k = g.source.binary_search(&e).unwrap();
            match self.z.compose(&g.strands[k], p)? {
                Some(c) => out.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(Braid { source: f.source.clone(), strands: out }))
    }

    /// The product in the strand category.
    pub fn product(&self, g: &Braid, f: &Braid) -> Result<Option<Braid>, StrandError> {
        let Some(gf) = self.compose(g, f)? else { return Ok(None) };
        Ok(self.defect_of(g, f, &gf).is_zero().then_some(gf))
    }

    /// Product of sums in the additive closure: terms whose objects do not
    /// match multiply to zero.
    pub fn product_sum(&self, g: &F2Sum<Braid>, f: &F2Sum<Braid>) -> Result<F2Sum<Braid>, StrandError> {
        let mut out = F2Sum::zero();
        for x in g.iter() {
            for y in f.iter() {
                if self.target(y) != x.source {
                    continue;
                }
                if let Some(p) = self.product(x, y)? {
                    out.toggle(p);
                }
            }
        }
        Ok(out)
    }

    // -----------------------------------------------------------------------
    // Degree

    /// All cover lifts of all strands, tagged by strand index.
    fn cover_lifts(&self, b: &Braid) -> Vec<(usize, Path)> {
        let mut v = Vec::new();
        for (k, p) in b.strands.iter().enumerate() {
            for l in self.z.lifts(p) {
                v.push((k, l));
            }
        }
        v
    }

    /// `i(θ)` per connected component.
    pub fn i_vec(&self, b: &Braid) -> Vec<i64> {
        let mut out = vec![0; self.z.omega_count];
        for s in 0..b.strands.len() {
            for t in s + 1..b.strands.len() {
                for la in self.z.lifts(&b.strands[s]) {
                    for lb in self.z.lifts(&b.strands[t]) {
                        let c = self.z.cover_intersection(&la, &lb);
                        if c > 0 {
                            out[self.z.components[la.comp].omega] += c as i64;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn i_total(&self, b: &Braid) -> usize {
        self.i_vec(b).iter().sum::<i64>() as usize
    }

    pub fn arc_class(&self, b: &Braid) -> Vec<i64> {
        let mut v = vec![0; self.z.layout.arcs];
        for p in &b.strands {
            for (a, s) in self.z.traversed(p) {
                v[a] += s;
            }
        }
        v
    }

    /// `m(θ)` in mark coordinates (coefficient of the increasing germ).
    pub fn m_vec(&self, b: &Braid) -> Vec<i64> {
        let alpha = self.arc_class(b);
        let mut m = vec![0; self.z.marks.len()];
        for p in &b.strands {
            let marks: Vec<usize> = if p.is_identity() {
                self.z.points[self.z.start_point(p)].clone()
            } else {
                vec![self.z.start_mark(p)]
            };
            for x in marks {
                m[x] += self.z.layout.flux(&alpha, x);
            }
        }
        m
    }

    /// `deg'(θ) = (i(θ), (−m(θ), ⟦θ⟧))` in the unprojected group.
    pub fn degree_full(&self, b: &Braid) -> DegreeData {
        DegreeData {
            layout: self.z.layout.clone(),
            maslov2: self.i_vec(b).iter().map(|v| 2 * v).collect(),
            m: self.m_vec(b).iter().map(|v| -v).collect(),
            r: self.arc_class(b),
        }
    }

    /// Image in the quotient where the increasing germ at a singular mark
    /// equals half the component generator.
    pub fn project(&self, d: &DegreeData) -> DegreeData {
        let mut d = d.clone();
        for (x, mk) in self.z.marks.iter().enumerate() {
            if self.z.is_singular_mark(x) {
                let om = self.z.components[mk.comp].omega;
                d.maslov2[om] += d.m[x];
                d.m[x] = 0;
            }
        }
        d
    }

    pub fn degree(&self, b: &Braid) -> DegreeData {
        self.project(&self.degree_full(b))
    }

    fn defect_of(&self, g: &Braid, f: &Braid, gf: &Braid) -> Defect {
        let full = self
            .degree_full(g)
            .mul(&self.degree_full(f))
            .and_then(|x| x.mul(&self.degree_full(gf).inverse()))
            .expect("one layout");
        let p = self.project(&full);
        Defect { residual_zero: p.m.iter().chain(&p.r).all(|&v| v == 0), halves: p.maslov2 }
    }

    /// The degree defect of a composable pair whose composite exists.
    pub fn degree_defect(&self, g: &Braid, f: &Braid) -> Result<Option<Defect>, StrandError> {
        Ok(self.compose(g, f)?.map(|gf| self.defect_of(g, f, &gf)))
    }

    /// The same defect through the explicit intersection formula, with the
    /// correction terms at singular points where an identity meets a
    /// moving strand.
    pub fn defect_by_formula(&self, g: &Braid, f: &Braid) -> Result<Option<Vec<i64>>, StrandError> {
        let Some(gf) = self.compose(g, f)? else { return Ok(None) };
        let (ig, i_f, igf) = (self.i_vec(g), self.i_vec(f), self.i_vec(&gf));
        let mut out: Vec<i64> = (0..self.z.omega_count).map(|o| 2 * (ig[o] + i_f[o] - igf[o])).collect();
        let (ag, af) = (self.arc_class(g), self.arc_class(f));
        let other = |x: usize| {
            let pt = &self.z.points[self.z.mark_point[x]];
            pt.iter().copied().find(|&y| y != x)
        };
        for p in &f.strands {
            let s = self.z.start_point(p);
            let e = self.z.end_point(p);
            let gk = &g.strands[g.source.binary_search(&e).unwrap()];
            // an identity of f at a singular point followed by a moving strand
            if p.is_identity() && self.z.is_singular_point(s) && !gk.is_identity() {
                if let Some(y) = other(self.z.start_mark(gk)) {
                    out[self.z.components[self.z.marks[y].comp].omega] -= self.z.layout.flux(&af, y);
                }
            }
            // a moving strand of f arriving at a singular point kept fixed by g
            if !p.is_identity() && gk.is_identity() && self.z.is_singular_point(e) {
                if let Some(y) = other(self.z.end_mark(p)) {
                    out[self.z.components[self.z.marks[y].comp].omega] -= self.z.layout.flux(&ag, y);
                }
            }
        }
        Ok(Some(out))
    }

    // -----------------------------------------------------------------------
    // Crossings and differential

    /// `L(θ)/inv` with the `D(θ)` flags.
    pub fn crossings(&self, b: &Braid) -> Vec<Crossing> {
        let lifts = self.cover_lifts(b);
        let mut out = Vec::new();
        for (i, &(s1, a)) in lifts.iter().enumerate() {
            for &(s2, lb) in &lifts[i + 1..] {
                if s1 == s2 {
                    continue;
                }
                for k in self.z.crossing_shifts(&a, &lb) {
                    let bt = Path { comp: lb.comp, from: lb.from + k, to: lb.to + k };
                    let in_d = self.in_d(&lifts, &a, &bt);
                    out.push(Crossing { s1, s2, a, b: bt, in_d });
                }
            }
        }
        out
    }

    fn in_d(&self, lifts: &[(usize, Path)], a: &Path, b: &Path) -> bool {
        let c = &self.z.components[a.comp];
        let (lo, hi) = if a.from < b.from { (a, b) } else { (b, a) };
        let (x, y, sx, sy) = (lo.from, hi.from, lo.to, hi.to);
        debug_assert!(sx > sy);
        let circle = c.topology == Topology::Circle;
        let m = c.m() as i64;
        if circle && !(y - x < m || sx - sy < m) {
            return false;
        }
        for &(_, w) in lifts {
            if w.comp != a.comp {
                continue;
            }
            let shifts: Vec<i64> = if circle {
                let j0 = (x - w.from).div_euclid(m) - 1;
                let j1 = (y - w.from).div_euclid(m) + 1;
                (j0..=j1).map(|j| j * m).collect()
            } else {
                vec![0]
            };
            for k in shifts {
                let wt = Path { comp: w.comp, from: w.from + k, to: w.to + k };
                if wt == *a || wt == *b {
                    continue;
                }
                if x < wt.from && wt.from < y && sy < wt.to && wt.to < sx {
                    return false;
                }
            }
        }
        true
    }

    /// `θ^ζ` for a crossing of `θ`.
    pub fn resolve(&self, b: &Braid, c: &Crossing) -> Result<Braid, StrandError> {
        let lifts = self.cover_lifts(b);
        if !lifts.contains(&(c.s1, c.a)) || !self.z.crossing_shifts(&c.a, &c.b).contains(&0) {
            return Err(StrandError::NotInL);
        }
        let mut strands = b.strands.clone();
        strands[c.s1] = self.z.path(c.a.comp, c.a.from, c.b.to);
        strands[c.s2] = self.z.path(c.a.comp, c.b.from, c.a.to);
        for k in [c.s1, c.s2] {
            assert!(self.z.admissible(&strands[k]), "resolution produced a non-admissible strand");
        }
        Ok(Braid { source: b.source.clone(), strands })
    }

    pub fn differential(&self, b: &Braid) -> F2Sum<Braid> {
        self.crossings(b)
            .into_iter()
            .filter(|c| c.in_d)
            .map(|c| self.resolve(b, &c).expect("crossing of the braid"))
            .collect()
    }

    pub fn differential_sum(&self, x: &F2Sum<Braid>) -> F2Sum<Braid> {
        x.map_linear(|b| self.differential(b))
    }

    /// `|L(θ)/inv|` per component.
    pub fn crossing_counts(&self, b: &Braid) -> Vec<i64> {
        let mut out = vec![0; self.z.omega_count];
        for c in self.crossings(b) {
            out[self.z.components[c.a.comp].omega] += 1;
        }
        out
    }

    /// Intersections counted from the straight-line homotopies between the
    /// actual coordinates of the lifted end points.
    pub fn sampled_intersections(&self, b: &Braid) -> Vec<i64> {
        let mut out = vec![0; self.z.omega_count];
        let lifts = self.cover_lifts(b);
        for (i, &(s1, a)) in lifts.iter().enumerate() {
            for &(s2, lb) in &lifts[i + 1..] {
                if s1 == s2 || a.comp != lb.comp {
                    continue;
                }
                let c = &self.z.components[a.comp];
                let d0 = c.lifted_coord(lb.from) - c.lifted_coord(a.from);
                let d1 = c.lifted_coord(lb.to) - c.lifted_coord(a.to);
                let (lo, hi) = if d0 < d1 { (d0, d1) } else { (d1, d0) };
                let n = match c.topology {
                    Topology::Line => i64::from(lo < 0.into() && hi > 0.into()),
                    Topology::Circle => {
                        // integers strictly between lo and hi
                        let first = lo.floor().to_integer() + 1;
                        let last = hi.ceil().to_integer() - 1;
                        (last - first + 1).max(0)
                    }
                };
                out[c.omega] += n;
            }
        }
        out
    }

    // -----------------------------------------------------------------------
    // Hom sets

    /// All braids `S → T` with winding bound `w` on circles and total arc
    /// length at most `mu`, ordered by (length, encoding).
    pub fn hom(&self, s: &[usize], t: &[usize], w: usize, mu: usize) -> Vec<Braid> {
        let mut s = s.to_vec();
        s.sort();
        let mut t = t.to_vec();
        t.sort();
        if s.len() != t.len() {
            return vec![];
        }
        let mut out = BTreeSet::new();
        let cand: Vec<Vec<Vec<Path>>> =
            s.iter().map(|&x| t.iter().map(|&y| self.z.paths_between(x, y, w, mu)).collect()).collect();
        let mut used = vec![false; t.len()];
        let mut cur = Vec::new();
        self.hom_rec(&s, &cand, 0, mu, &mut used, &mut cur, &mut out);
        let mut v: Vec<Braid> = out.into_iter().collect();
        v.sort_by_cached_key(|b| (self.mu_total(b), self.encode(b)));
        v
    }

    #[allow(clippy::too_many_arguments)]
    fn hom_rec(
        &self,
        s: &[usize],
        cand: &[Vec<Vec<Path>>],
        k: usize,
        budget: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Path>,
        out: &mut BTreeSet<Braid>,
    ) {
        if k == s.len() {
            out.insert(Braid { source: s.to_vec(), strands: cur.clone() });
            return;
        }
        for j in 0..used.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            for p in &cand[k][j] {
                let len = self.z.path_length(p);
                if len <= budget {
                    cur.push(*p);
                    self.hom_rec(s, cand, k + 1, budget - len, used, cur, out);
                    cur.pop();
                }
            }
            used[j] = false;
        }
    }

    /// Subsets of `points` with size in `sizes`.
    pub fn objects(points: &[usize], sizes: std::ops::RangeInclusive<usize>) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let n = points.len();
        for mask in 0u64..(1 << n) {
            let k = mask.count_ones() as usize;
            if sizes.contains(&k) {
                out.push((0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect());
            }
        }
        out.sort_by_key(|o: &Vec<usize>| (o.len(), o.clone()));
        out
    }

    // -----------------------------------------------------------------------
    // Factorization at a point

    /// `μ(ζ) = i(ζ, id_{z0})`.
    pub fn mu_at(&self, p: &Path, z0: usize) -> usize {
        if p.is_identity() && self.z.start_point(p) == z0 {
            return 0;
        }
        self.z.intersection(p, &self.z.identity_path(z0))
    }

    pub fn mu_braid(&self, b: &Braid, z0: usize) -> usize {
        b.strands.iter().map(|p| self.mu_at(p, z0)).sum()
    }

    /// Arcs (local, mod the circle) of the initial piece of `p` up to its
    /// first arrival at `z0`.
    fn first_passage_support(&self, p: &Path, z0: usize) -> Option<BTreeSet<usize>> {
        let x0 = self.z.points[z0][0];
        let mk = &self.z.marks[x0];
        if mk.comp != p.comp || p.is_identity() {
            return None;
        }
        let c = &self.z.components[p.comp];
        let step = if p.to > p.from { 1 } else { -1 };
        let mut l = p.from;
        let mut arcs = BTreeSet::new();
        while l != p.to {
            let arc = if step > 0 { l } else { l - 1 };
            arcs.insert(c.arc_offset + self.arc_local(c.topology, c.m(), arc));
            l += step;
            if self.z.mark_at(p.comp, l) == x0 {
                return Some(arcs);
            }
        }
        None
    }

    fn arc_local(&self, t: Topology, m: usize, l: i64) -> usize {
        match t {
            Topology::Line => l as usize,
            Topology::Circle => l.rem_euclid(m as i64) as usize,
        }
    }

    /// `θ = r' · r` with `μ(r) = 1` and intermediate object avoiding `z0`,
    /// subject to the support condition at the strand of `r` through `z0`.
    pub fn factorize(&self, b: &Braid, z0: usize) -> Result<(Braid, Braid), StrandError> {
        let x0 = self.z.points[z0][0];
        let comp = &self.z.components[self.z.marks[x0].comp];
        if self.z.is_singular_point(z0)
            || self.z.marks[x0].slot.is_some()
            || !matches!(comp.orientation, crate::curve::Orientation::Full) && !self.mark_oriented(x0)
        {
            return Err(StrandError::BadBasePoint(z0));
        }
        if b.source.contains(&z0) || self.target(b).contains(&z0) {
            return Err(StrandError::BadBasePoint(z0));
        }
        let mu = self.mu_braid(b, z0);
        if mu < 2 {
            return Err(StrandError::MuTooSmall(mu));
        }
        // prefixes of each strand: lifted indices between from and to
        let prefixes: Vec<Vec<Path>> = b
            .strands
            .iter()
            .map(|p| {
                let step = if p.to >= p.from { 1 } else { -1 };
                let mut v = Vec::new();
                let mut l = p.from;
                loop {
                    let q = self.z.path(p.comp, p.from, l);
                    if self.z.end_point(&q) != z0 {
                        v.push(q);
                    }
                    if l == p.to {
                        break;
                    }
                    l += step;
                }
                v
            })
            .collect();
        let supports: Vec<Option<BTreeSet<usize>>> =
            b.strands.iter().map(|p| self.first_passage_support(p, z0)).collect();
        let mut choice = vec![0usize; b.strands.len()];
        loop {
            let r_strands: Vec<Path> = choice.iter().enumerate().map(|(k, &c)| prefixes[k][c]).collect();
            let mu_r: usize = r_strands.iter().map(|p| self.mu_at(p, z0)).sum();
            if mu_r == 1 {
                if let Ok(r) = self.braid(r_strands.clone()) {
                    let rest: Vec<Path> = b
                        .strands
                        .iter()
                        .zip(&r_strands)
                        .map(|(p, q)| {
                            let start = q.to;
                            let shift = p.to - p.from;
                            let pre = q.to - q.from;
                            self.z.path(p.comp, start, start + shift - pre)
                        })
                        .collect();
                    if let Ok(rp) = self.braid(rest) {
                        if self.product(&rp, &r).ok().flatten().as_ref() == Some(b) {
                            let s = r_strands.iter().position(|p| self.mu_at(p, z0) == 1).unwrap();
                            let minimal = supports[s].as_ref().is_some_and(|ss| {
                                (0..b.strands.len()).all(|t| {
                                    t == s
                                        || self.mu_at(&b.strands[t], z0) == 0
                                        || !supports[t].as_ref().is_some_and(|st| st.is_subset(ss))
                                })
                            });
                            if minimal {
                                return Ok((rp, r));
                            }
                        }
                    }
                }
            }
            // next choice
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return Err(StrandError::NoFactorization);
                }
                choice[k] += 1;
                if choice[k] < prefixes[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn mark_oriented(&self, x: usize) -> bool {
        let mk = &self.z.marks[x];
        let c = &self.z.components[mk.comp];
        // both neighbouring arcs forbid decreasing moves
        let m = c.m();
        let before = match c.topology {
            Topology::Line => mk.local.checked_sub(1),
            Topology::Circle => Some((mk.local + m - 1) % m),
        };
        let after = (mk.local < c.arc_count()).then_some(mk.local);
        before.is_none_or(|a| !c.dec_ok[a]) && after.is_none_or(|a| !c.dec_ok[a])
    }
}

/// `f^#(θ)` for the quotient map from `fine` to `coarse`, two models of
/// the same diagram where every matched pair of `fine` is matched in
/// `coarse`.
pub fn pullback(fine: &StrandCat, coarse: &StrandCat, b: &Braid) -> Result<F2Sum<Braid>, StrandError> {
    let options: Vec<Vec<Path>> = b
        .strands
        .iter()
        .map(|p| {
            if p.is_identity() {
                let pt = coarse.z.start_point(p);
                let mut fine_pts: Vec<usize> =
                    coarse.z.points[pt].iter().map(|&x| fine.z.mark_point[x]).collect();
                fine_pts.sort();
                fine_pts.dedup();
                fine_pts.into_iter().map(|q| fine.z.identity_path(q)).collect()
            } else {
                vec![fine.z.path(p.comp, p.from, p.to)]
            }
        })
        .collect();
    if fine.z.marks.len() != coarse.z.marks.len() {
        return Err(StrandError::NotStrict(0));
    }
    let mut out = F2Sum::zero();
    let mut choice = vec![0usize; options.len()];
    'outer: loop {
        let strands: Vec<Path> = choice.iter().enumerate().map(|(k, &c)| options[k][c]).collect();
        if let Ok(x) = fine.braid(strands) {
            out.toggle(x);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                break 'outer;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
    Ok(out)
}

/// Pullback of a sum.
pub fn pullback_sum(fine: &StrandCat, coarse: &StrandCat, x: &F2Sum<Braid>) -> Result<F2Sum<Braid>, StrandError> {
    let mut out = F2Sum::zero();
    for b in x.iter() {
        out.add_assign(&pullback(fine, coarse, b)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Dictionary with the periodic categories

/// The curve carrying `n` marks whose strand category matches a variant of
/// the periodic category: unoriented circle, circle oriented near one
/// point, oriented circle, unoriented interval, oriented interval.
pub fn dictionary_model(n: usize, variant: Variant) -> CurveModel {
    let circle_marks: Vec<String> = (1..=n).map(|r| format!("{}/{}", r, n + 1)).collect();
    let line_marks: Vec<String> = (1..=n).map(|r| r.to_string()).collect();
    let comp = match variant {
        Variant::All => ComponentSpec::UnorientedCircle { marks: circle_marks },
        Variant::Plus => ComponentSpec::DottedCircle {
            marks: circle_marks,
            arc: [format!("{}/{}", 2 * n + 1, 2 * n + 2), format!("1/{}", 2 * n + 2)],
        },
        Variant::PlusPlus => ComponentSpec::OrientedCircle { marks: circle_marks },
        Variant::Finite => ComponentSpec::UnorientedInterval { marks: line_marks },
        Variant::FinitePlusPlus => ComponentSpec::OrientedInterval { marks: line_marks, bounds: None },
    };
    CurveModel::from_spec(DiagramFile { components: vec![comp], matching: vec![], ray_ends: vec![] })
        .expect("dictionary model")
}

/// The braid `F(σ)`: the strand at `a_j` runs `σ(j) − j` marks upward.
pub fn from_periodic(cat: &StrandCat, sigma: &PeriodicMap) -> Braid {
    let strands =
        sigma.source.iter().zip(&sigma.images).map(|(&j, &y)| cat.z.path(0, j as i64 - 1, y - 1)).collect();
    cat.braid(strands).expect("F(σ) is a braid")
}

#[derive(Clone, Debug, Default)]
pub struct DictionaryReport {
    pub hom_pairs: usize,
    pub morphisms: usize,
    pub products: usize,
    pub differentials: usize,
    pub failures: Vec<String>,
}

impl DictionaryReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the truncated periodic category with the strand category of
/// the matching curve: Hom sets (with `ℓ = i`), products of pairs with
/// `ℓ(g) + ℓ(f) ≤ lmax`, and differentials.
pub fn dictionary_check(n: usize, variant: Variant, lmax: usize, wmax: usize) -> DictionaryReport {
    let cat = StrandCat::new(dictionary_model(n, variant));
    let mut rep = DictionaryReport::default();
    let subsets = SubsetZn::all(n);
    let mu = wmax * n * n + n;
    let mut homs: BTreeMap<(usize, usize), Vec<(PeriodicMap, Braid)>> = BTreeMap::new();
    for (a, i) in subsets.iter().enumerate() {
        for (b, j) in subsets.iter().enumerate() {
            if i.len() != j.len() {
                continue;
            }
            rep.hom_pairs += 1;
            let aff = affinecat::enumerate_hom(i, j, variant, lmax, wmax);
            let pts = |s: &SubsetZn| s.members.iter().map(|&x| x - 1).collect::<Vec<_>>();
            let curve: BTreeSet<Braid> = cat
                .hom(&pts(i), &pts(j), wmax, mu)
                .into_iter()
                .filter(|x| cat.i_total(x) <= lmax)
                .collect();
            let mapped: Vec<(PeriodicMap, Braid)> = aff.iter().map(|s| (s.clone(), from_periodic(&cat, s))).collect();
            let image: BTreeSet<Braid> = mapped.iter().map(|x| x.1.clone()).collect();
            if image != curve {
                rep.failures.push(format!(
                    "Hom({:?},{:?}): {} periodic maps vs {} braids",
                    i.members,
                    j.members,
                    image.len(),
                    curve.len()
                ));
            }
            for (s, x) in &mapped {
                rep.morphisms += 1;
                if s.length() != cat.i_total(x) {
                    rep.failures.push(format!("length {} vs i {} for {:?}", s.length(), cat.i_total(x), s));
                }
                let d_aff: F2Sum<Braid> = s.differential().iter().map(|t| from_periodic(&cat, t)).collect();
                rep.differentials += 1;
                if d_aff != cat.differential(x) {
                    rep.failures.push(format!("d mismatch at {:?}", s));
                }
            }
            homs.insert((a, b), mapped);
        }
    }
    for ((a, b), fs) in &homs {
        for ((b2, c), gs) in &homs {
            if b2 != b {
                continue;
            }
            let _ = (a, c);
            for (sf, xf) in fs {
                for (sg, xg) in gs {
                    if sf.length() + sg.length() > lmax {
                        continue;
                    }
                    rep.products += 1;
                    let aff = affinecat::graded_product(sg, sf).expect("composable").map(|p| from_periodic(&cat, &p));
                    let cur = cat.product(xg, xf).expect("composable");
                    if aff != cur {
                        rep.failures.push(format!("product {:?}·{:?}", sg, sf));
                    }
                }
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Random chord diagrams

/// A random chord diagram with at most three components, at most four
/// marks per component and at most six matched pairs.
pub fn random_diagram<R: rand::Rng>(rng: &mut R) -> CurveModel {
    loop {
        let ncomp = rng.gen_range(1..=3);
        let mut comps = Vec::new();
        for _ in 0..ncomp {
            let k = rng.gen_range(1..=4);
            let kind = rng.gen_range(0..6);
            if kind < 2 || kind == 5 {
                let mut xs: Vec<i64> = rand::seq::index::sample(rng, 6, k).into_iter().map(|x| x as i64 + 1).collect();
                xs.sort();
                let marks = xs.iter().map(|x| x.to_string()).collect();
                comps.push(match kind {
                    0 => ComponentSpec::OrientedInterval { marks, bounds: None },
                    1 => ComponentSpec::UnorientedInterval { marks },
                    _ => {
                        let a = rng.gen_range(0..=6);
                        let b = rng.gen_range(a + 1..=7);
                        let lo = (a > 0).then(|| format!("{}/2", 2 * a - 1));
                        let hi = (b < 7).then(|| format!("{}/2", 2 * b + 1));
                        ComponentSpec::OrientedInterval { marks, bounds: Some([lo, hi]) }
                    }
                });
            } else {
                let mut xs: Vec<usize> = rand::seq::index::sample(rng, 8, k).into_iter().collect();
                xs.sort();
                let marks = xs.iter().map(|x| format!("{x}/8")).collect();
                comps.push(match kind {
                    2 => ComponentSpec::OrientedCircle { marks },
                    3 => ComponentSpec::UnorientedCircle { marks },
                    _ => {
                        let a = rng.gen_range(0..16);
                        let len = rng.gen_range(1..16);
                        ComponentSpec::DottedCircle {
                            marks,
                            arc: [format!("{}/16", 2 * a + 1), format!("{}/16", (2 * a + 1 + 2 * len) % 32)],
                        }
                    }
                });
            }
        }
        let bare = DiagramFile { components: comps, matching: vec![], ray_ends: vec![] };
        let Ok(model) = CurveModel::from_spec(bare.clone()) else { continue };
        let mut free: Vec<usize> = (0..model.marks.len())
            .filter(|&x| {
                let mk = &model.marks[x];
                model.components[mk.comp].point_oriented(mk.coord)
            })
            .collect();
        let mut matching = Vec::new();
        while free.len() >= 2 && matching.len() < 6 && rng.gen_bool(0.6) {
            let i = rng.gen_range(0..free.len());
            let a = free.swap_remove(i);
            let j = rng.gen_range(0..free.len());
            let b = free.swap_remove(j);
            matching.push([a + 1, b + 1]);
        }
        let spec = DiagramFile { matching, ..bare };
        if let Ok(m) = CurveModel::from_spec(spec) {
            return m;
        }
    }
}

/// A random braid on `k` points of the curve, each strand of length at
/// most `len` (and winding at most `w`), or `None` when the draw fails.
pub fn random_braid<R: rand::Rng>(cat: &StrandCat, rng: &mut R, k: usize, w: usize, len: usize) -> Option<Braid> {
    let npts = cat.z.points.len();
    if k > npts {
        return None;
    }
    let src: Vec<usize> = rand::seq::index::sample(rng, npts, k).into_iter().collect();
    let mut strands = Vec::new();
    let mut ends = BTreeSet::new();
    for &s in &src {
        let mut opts = Vec::new();
        for t in 0..npts {
            if !ends.contains(&t) {
                opts.extend(cat.z.paths_between(s, t, w, len));
            }
        }
        if opts.is_empty() {
            return None;
        }
        let p = opts[rng.gen_range(0..opts.len())];
        ends.insert(cat.z.end_point(&p));
        strands.push(p);
    }
    cat.braid(strands).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(json: &str) -> StrandCat {
        StrandCat::from_json(json).unwrap()
    }

    fn torus() -> StrandCat {
        cat(r#"{"components":[{"kind":"OrientedInterval","marks":["1","2","3","4"]}],"matching":[[1,3],[2,4]]}"#)
    }

    #[test]
    fn torus_algebra() {
        let t = torus();
        let (p1, p2) = (t.z.mark_point[0], t.z.mark_point[1]);
        let alpha_p = t.braid(vec![t.z.path(0, 0, 1)]).unwrap();
        let beta = t.braid(vec![t.z.path(0, 1, 2)]).unwrap();
        let alpha = t.braid(vec![t.z.path(0, 2, 3)]).unwrap();
        assert_eq!(t.product(&beta, &alpha).unwrap(), None);
        assert_eq!(t.product(&alpha_p, &beta).unwrap(), None);
        let ba = t.product(&beta, &alpha_p).unwrap().unwrap();
        assert_eq!(ba.strands[0], t.z.path(0, 0, 2));
        let aba = t.product(&alpha, &ba).unwrap().unwrap();
        assert_eq!(aba.strands[0], t.z.path(0, 0, 3));
        let mut all = 0;
        for s in [p1, p2] {
            for u in [p1, p2] {
                all += t.hom(&[s], &[u], 2, 10).len();
            }
        }
        assert_eq!(all, 8);
    }

    #[test]
    fn defect_formulas_agree_on_torus() {
        let t = torus();
        let pts = [t.z.mark_point[0], t.z.mark_point[1]];
        let mut homs = vec![];
        for &s in &pts {
            for &u in &pts {
                homs.extend(t.hom(&[s], &[u], 2, 10));
            }
        }
        for g in &homs {
            for f in &homs {
                if t.target(f) != g.source {
                    continue;
                }
                if let Some(d) = t.degree_defect(g, f).unwrap() {
                    assert!(d.residual_zero);
                    assert!(d.halves.iter().all(|&h| h >= 0));
                    assert_eq!(Some(d.halves), t.defect_by_formula(g, f).unwrap());
                }
            }
        }
    }

    #[test]
    fn ray_crossing_resolves_to_identity() {
        let r = cat(r#"{"components":[{"kind":"UnorientedInterval","marks":["1","2"]}]}"#);
        let tau = r.braid(vec![r.z.path(0, 0, 1), r.z.path(0, 1, 0)]).unwrap();
        let d = r.differential(&tau);
        assert_eq!(d, F2Sum::single(r.identity(&[0, 1])));
        assert_eq!(r.product(&tau, &tau).unwrap(), None);
        assert!(r.differential(&r.identity(&[0, 1])).is_zero());
        let c = r.crossings(&tau)[0];
        let swapped = Crossing { s1: c.s2, s2: c.s1, a: r.z.path(0, 1, 0), b: r.z.path(0, 0, 1), in_d: true };
        assert_eq!(r.resolve(&tau, &c).unwrap(), r.resolve(&tau, &swapped).unwrap());
    }

    #[test]
    fn double_crossing_has_positive_defect() {
        let r = cat(r#"{"components":[{"kind":"UnorientedInterval","marks":["1","2"]}]}"#);
        let tau = r.braid(vec![r.z.path(0, 0, 1), r.z.path(0, 1, 0)]).unwrap();
        let d = r.degree_defect(&tau, &tau).unwrap().unwrap();
        assert_eq!(d.halves, vec![4]);
        let id = r.identity(&[0, 1]);
        assert!(r.degree_defect(&tau, &id).unwrap().unwrap().is_zero());
        let apart = cat(r#"{"components":[{"kind":"UnorientedInterval","marks":["1","2","3","4"]}]}"#);
        let f = apart.braid(vec![apart.z.path(0, 0, 1), apart.z.path(0, 3, 2)]).unwrap();
        let g = apart.braid(vec![apart.z.path(0, 1, 0), apart.z.path(0, 2, 3)]).unwrap();
        assert!(apart.degree_defect(&g, &f).unwrap().unwrap().is_zero());
    }

    #[test]
    fn crossings_match_sampler() {
        let c = cat(r#"{"components":[{"kind":"UnorientedCircle","marks":["0","1/3","2/3"]}]}"#);
        for b in c.hom(&[0, 1], &[1, 2], 2, 6) {
            assert_eq!(c.crossing_counts(&b), c.sampled_intersections(&b), "{b:?}");
            assert_eq!(c.crossing_counts(&b), c.i_vec(&b));
        }
    }

    #[test]
    fn pullback_of_singular_identity() {
        let t = torus();
        let cover = StrandCat::new(t.z.nonsingular_cover());
        let id = t.identity(&[t.z.mark_point[0]]);
        let up = pullback(&cover, &t, &id).unwrap();
        assert_eq!(up.len(), 2);
        let beta = t.braid(vec![t.z.path(0, 1, 2)]).unwrap();
        assert_eq!(pullback(&cover, &t, &beta).unwrap().len(), 1);
    }

    #[test]
    fn pullback_two_steps() {
        let t = torus();
        let mid = StrandCat::new(t.z.with_matching(&[0]));
        let cover = StrandCat::new(t.z.nonsingular_cover());
        let p: Vec<usize> = (0..t.z.points.len()).collect();
        for s in StrandCat::objects(&p, 1..=2) {
            for u in StrandCat::objects(&p, 1..=2) {
                for b in t.hom(&s, &u, 2, 3) {
                    let one = pullback(&cover, &t, &b).unwrap();
                    let two = pullback_sum(&cover, &mid, &pullback(&mid, &t, &b).unwrap()).unwrap();
                    assert_eq!(one, two);
                }
            }
        }
    }

    #[test]
    fn factorize_winding_two() {
        let c = cat(r#"{"components":[{"kind":"OrientedCircle","marks":["0","1/2"]}]}"#);
        let theta = c.braid(vec![c.z.path(0, 0, 4)]).unwrap();
        assert_eq!(c.mu_braid(&theta, 1), 2);
        let (rp, r) = c.factorize(&theta, 1).unwrap();
        assert_eq!(r.strands[0], c.z.path(0, 0, 2));
        assert_eq!(rp.strands[0], c.z.path(0, 0, 2));
        let once = c.braid(vec![c.z.path(0, 0, 2)]).unwrap();
        assert!(matches!(c.factorize(&once, 1), Err(StrandError::MuTooSmall(1))));
    }

    #[test]
    fn small_dictionaries() {
        for v in [Variant::All, Variant::Plus, Variant::PlusPlus, Variant::Finite, Variant::FinitePlusPlus] {
            let rep = dictionary_check(2, v, 3, 1);
            assert!(rep.ok(), "{v:?}: {:?}", rep.failures);
            assert!(rep.products > 0);
        }
    }
}

//! Strands on a ray and the end actions they generate.
//!
//! `U` is realized as the strand category of an unoriented interval: the
//! endomorphisms of `n` marks form the nil Hecke algebra `H_n`. A ray end
//! of a curve gives a left action `L_ξ(T,S,e^n) = Hom(S, T ⊔ ξ(1..n))` when
//! it is outgoing and a right action `R_ξ(S,T,e^n) = Hom(T ⊔ ξ(−1..−n), S)`
//! when it is incoming. On top of these the module builds the twisted
//! decomposition of `L_ξ`, the duality pairing between the two sides of a
//! line, the gluing of an outgoing end to an incoming end (the quotient
//! `Δ_E` and the comparison map `q`), the tensor description of the
//! positive affine nil Hecke algebra, and the diagonal action on a union of
//! two curves.
//!
//! Position `i` of `e^n` sits on the slot `ξ(n + 1 − i)`: the first tensor
//! factor is the farthest slot. With this convention the line instance
//! reproduces the regular bimodules of [`crate::hecke`] on both sides.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::curve::{
    format_q, ComponentSpec, CurveError, CurveModel, DiagramFile, Orientation, Path, RayEndSpec, Role, Side,
    Topology, Q,
};
use crate::f2core::{bit_row, f2_rank, F2Sum};
use crate::hecke::{self, AffinePerm, BimoduleSide, Perm};
use crate::strands::{Braid, StrandCat, StrandError};

#[derive(Debug, Error)]
pub enum TwoRepError {
    #[error(transparent)]
    Strand(#[from] StrandError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("ray end {end} has {have} slots, {need} needed")]
    MissingSlots { end: usize, need: usize, have: usize },
}

// ---------------------------------------------------------------------------
// Reports

/// Outcome of a family of checks: how many were run and the first few
/// failures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub counts: BTreeMap<String, usize>,
}

const KEEP_FAILURES: usize = 12;

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond {
            self.fail(msg());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEEP_FAILURES {
            self.failures.push(msg);
        }
    }

    pub fn count(&mut self, key: &str, by: usize) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < KEEP_FAILURES {
                self.failures.push(format!("{}: {}", other.name, f));
            }
        }
        for (k, v) in other.counts {
            *self.counts.entry(format!("{}.{}", other.name, k)).or_default() += v;
        }
    }
}

// ---------------------------------------------------------------------------
// Braid helpers

/// `a ⊠ b`: the union of the strands.
pub fn boxtimes(cat: &StrandCat, a: &Braid, b: &Braid) -> Result<Braid, StrandError> {
    let mut v = a.strands.clone();
    v.extend(b.strands.iter().copied());
    cat.braid(v)
}

/// The strands of `b` starting in `pts`.
pub fn restrict(b: &Braid, pts: &[usize]) -> Braid {
    let mut source = Vec::new();
    let mut strands = Vec::new();
    for (s, p) in b.source.iter().zip(&b.strands) {
        if pts.contains(s) {
            source.push(*s);
            strands.push(*p);
        }
    }
    Braid { source, strands }
}

/// The strand of `b` starting at `p`.
pub fn strand_at(b: &Braid, p: usize) -> Option<Path> {
    b.source.binary_search(&p).ok().map(|k| b.strands[k])
}

/// Product of two optional braids, zero propagating.
fn mul(cat: &StrandCat, g: Option<Braid>, f: Option<Braid>) -> Result<Option<Braid>, StrandError> {
    match (g, f) {
        (Some(g), Some(f)) => cat.product(&g, &f),
        _ => Ok(None),
    }
}

/// Local index of the mark of point `p` on component `comp`.
fn local_on(cat: &StrandCat, p: usize, comp: usize) -> Option<i64> {
    cat.z.points[p].iter().map(|&x| &cat.z.marks[x]).find(|m| m.comp == comp).map(|m| m.local as i64)
}

/// Points sorted along a line component.
fn sorted_on(cat: &StrandCat, pts: &[usize], comp: usize) -> Vec<usize> {
    let mut v: Vec<(i64, usize)> = pts.iter().map(|&p| (local_on(cat, p, comp).expect("point on component"), p)).collect();
    v.sort();
    v.into_iter().map(|x| x.1).collect()
}

/// The braid of a permutation between two objects on one line component,
/// both ordered by position: the `i`-th source point goes to the `w(i)`-th
/// target point.
pub fn line_braid(cat: &StrandCat, comp: usize, src: &[usize], tgt: &[usize], w: &Perm) -> Result<Braid, StrandError> {
    let s = sorted_on(cat, src, comp);
    let t = sorted_on(cat, tgt, comp);
    let strands = (0..s.len())
        .map(|i| {
            let a = local_on(cat, s[i], comp).unwrap();
            let b = local_on(cat, t[w.apply(i + 1) - 1], comp).unwrap();
            cat.z.path(comp, a, b)
        })
        .collect();
    cat.braid(strands)
}

/// `φ(S, T)`: the permutation read off a braid between two objects of one
/// line component, positions counted along the line.
pub fn line_perm(cat: &StrandCat, comp: usize, b: &Braid) -> Perm {
    let s = sorted_on(cat, &b.source, comp);
    let t = sorted_on(cat, &cat.target(b), comp);
    let images = s
        .iter()
        .map(|&p| {
            let e = cat.z.end_point(&strand_at(b, p).unwrap());
            t.iter().position(|&q| q == e).unwrap() + 1
        })
        .collect();
    Perm::new(images).expect("a bijection")
}

fn subsets_of_size(v: &[usize], k: usize) -> Vec<Vec<usize>> {
    StrandCat::objects(v, k..=k)
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort();
    v.dedup();
    v
}

// ---------------------------------------------------------------------------
// U as strands on a ray

/// An endomorphism of `e^n` in `U`, stored in `H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UMorphism {
    pub n: usize,
    pub value: F2Sum<Perm>,
}

impl UMorphism {
    pub fn basis(w: Perm) -> Self {
        UMorphism { n: w.n(), value: F2Sum::single(w) }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Perm::identity(n))
    }

    /// The crossing `τ ∈ End(e²)`.
    pub fn tau() -> Self {
        Self::basis(Perm::simple(2, 1))
    }

    pub fn zero(n: usize) -> Self {
        UMorphism { n, value: F2Sum::zero() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UMorphism) -> UMorphism {
        assert_eq!(self.n, other.n);
        UMorphism { n: self.n, value: hecke::mult(&self.value, &other.value) }
    }

    /// `self ⊗ other`: `self` on the first positions.
    pub fn tensor(&self, other: &UMorphism) -> UMorphism {
        let n = self.n + other.n;
        let value = self
            .value
            .iter()
            .flat_map(|a| other.value.iter().map(move |b| a.embed(n).compose(&b.shift(a.n()))))
            .collect();
        UMorphism { n, value }
    }

    pub fn differential(&self) -> UMorphism {
        UMorphism { n: self.n, value: hecke::differential(&self.value) }
    }
}

/// The ray piece carrying `n` marks.
pub fn u_ray(n: usize) -> StrandCat {
    let marks = (1..=n).map(|i| i.to_string()).collect();
    let spec = DiagramFile { components: vec![ComponentSpec::UnorientedInterval { marks }], matching: vec![], ray_ends: vec![] };
    StrandCat::new(CurveModel::from_spec(spec).expect("an interval"))
}

/// The strands image of `T_w`.
pub fn u_braid(cat: &StrandCat, w: &Perm) -> Braid {
    let pts: Vec<usize> = (0..w.n()).collect();
    line_braid(cat, 0, &pts, &pts, w).expect("a braid on the ray")
}

pub fn u_sum(cat: &StrandCat, x: &UMorphism) -> F2Sum<Braid> {
    x.value.iter().map(|w| u_braid(cat, w)).collect()
}

/// Compares `End(e^k)` for `k ≤ n` with the strands on a ray: Hom sets,
/// products, differentials, juxtaposition, and the defining relations of
/// `τ`.
pub fn u_category(n: usize) -> CheckReport {
    let mut rep = CheckReport::new("u_category");
    for k in 1..=n {
        let cat = u_ray(k);
        let pts: Vec<usize> = (0..k).collect();
        let hom: BTreeSet<Braid> = cat.hom(&pts, &pts, 0, k * k).into_iter().collect();
        let perms = Perm::all(k);
        let image: BTreeSet<Braid> = perms.iter().map(|w| u_braid(&cat, w)).collect();
        rep.check(hom == image && image.len() == perms.len(), || format!("End(e^{k}) has {} braids", hom.len()));
        rep.count(&format!("dim{k}"), image.len());
        for a in &perms {
            let ba = u_braid(&cat, a);
            let d: F2Sum<Braid> = hecke::d_basis(a).iter().map(|w| u_braid(&cat, w)).collect();
            rep.check(cat.differential(&ba) == d, || format!("d(T_{a:?})"));
            for b in &perms {
                let prod = cat.product(&ba, &u_braid(&cat, b)).unwrap();
                let expect = hecke::mult_basis(a, b).map(|w| u_braid(&cat, &w));
                rep.check(prod == expect, || format!("T_{a:?} T_{b:?}"));
            }
        }
        // juxtaposition against the union of strands
        for j in 1..k {
            let left = u_ray(j);
            let right = u_ray(k - j);
            for a in Perm::all(j) {
                for b in Perm::all(k - j) {
                    let t = UMorphism::basis(a.clone()).tensor(&UMorphism::basis(b.clone()));
                    let w = t.value.iter().next().unwrap().clone();
                    let la = u_braid(&left, &a);
                    let rb = u_braid(&right, &b);
                    let shifted: Vec<Path> =
                        rb.strands.iter().map(|p| cat.z.path(0, p.from + j as i64, p.to + j as i64)).collect();
                    let mut all: Vec<Path> = la.strands.clone();
                    all.extend(shifted);
                    rep.check(cat.braid(all).ok() == Some(u_braid(&cat, &w)), || format!("T_{a:?} ⊗ T_{b:?}"));
                }
            }
        }
    }
    let tau = UMorphism::tau();
    rep.check(tau.compose(&tau).value.is_zero(), || "τ² ≠ 0".into());
    rep.check(tau.differential() == UMorphism::identity(2), || "d(τ) ≠ id".into());
    if n >= 3 {
        let e = UMorphism::identity(1);
        let (et, te) = (e.tensor(&tau), tau.tensor(&e));
        let lhs = et.compose(&te).compose(&et);
        let rhs = te.compose(&et).compose(&te);
        rep.check(lhs == rhs && !lhs.value.is_zero(), || "braid relation".into());
        let cat = u_ray(3);
        let on_strands = |x: &UMorphism, y: &UMorphism, z: &UMorphism| {
            let xy = cat.product_sum(&u_sum(&cat, x), &u_sum(&cat, y)).unwrap();
            cat.product_sum(&xy, &u_sum(&cat, z)).unwrap()
        };
        rep.check(on_strands(&et, &te, &et) == u_sum(&cat, &lhs), || "eτ∘τe∘eτ on strands".into());
        rep.check(on_strands(&te, &et, &te) == u_sum(&cat, &rhs), || "τe∘eτ∘τe on strands".into());
    }
    rep
}

// ---------------------------------------------------------------------------
// End actions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActionKind {
    /// `L_ξ`, from an outgoing end.
    Left,
    /// `R_ξ`, from an incoming end.
    Right,
}

/// A curve with one ray end, acting on the strand category of the
/// non-slot points `M`.
#[derive(Clone, Debug)]
pub struct EndContext {
    pub cat: StrandCat,
    pub end: usize,
    pub kind: ActionKind,
    pub m: Vec<usize>,
}

impl EndContext {
    /// Checks that the end is terminal (resp. initial) for `(Z, M)`: no
    /// admissible path from `M` reaches `ξ(2)` without passing `ξ(1)`.
    pub fn new(cat: StrandCat, end: usize) -> Result<Self, TwoRepError> {
        let re = cat.z.ray_ends.get(end).ok_or_else(|| TwoRepError::Hypothesis(format!("no ray end {end}")))?;
        let kind = match re.role {
            Role::Outgoing => ActionKind::Left,
            Role::Incoming => ActionKind::Right,
        };
        let m = cat.z.regular_points();
        if re.slots.len() >= 2 {
            let (x1, x2) = (cat.z.marks[re.slots[0]].local as i64, cat.z.marks[re.slots[1]].local as i64);
            let p2 = cat.z.slot_point(end, 2);
            for &p in &m {
                let paths = match kind {
                    ActionKind::Left => cat.z.paths_between(p, p2, 1, usize::MAX / 4),
                    ActionKind::Right => cat.z.paths_between(p2, p, 1, usize::MAX / 4),
                };
                for q in paths {
                    let (lo, hi) = (q.from.min(q.to), q.from.max(q.to));
                    if q.comp == re.comp && !(lo < x1 && x1 < hi) {
                        return Err(TwoRepError::Hypothesis(format!("{} avoids ξ(1)", cat.z.encode_path(&q))));
                    }
                    let _ = x2;
                }
            }
        }
        Ok(EndContext { cat, end, kind, m })
    }

    pub fn capacity(&self) -> usize {
        self.cat.z.ray_ends[self.end].slots.len()
    }

    pub fn comp(&self) -> usize {
        self.cat.z.ray_ends[self.end].comp
    }

    pub fn side(&self) -> Side {
        self.cat.z.ray_ends[self.end].side
    }

    fn need(&self, n: usize) -> Result<(), TwoRepError> {
        if n > self.capacity() {
            return Err(TwoRepError::MissingSlots { end: self.end, need: n, have: self.capacity() });
        }
        Ok(())
    }

    /// The slot point `ξ(j)` (or `ξ(−j)`).
    pub fn slot(&self, j: usize) -> usize {
        self.cat.z.slot_point(self.end, j)
    }

    pub fn slots(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|j| self.slot(j)).collect()
    }

    /// The slot holding position `i` of `e^n`.
    pub fn slot_at(&self, n: usize, i: usize) -> usize {
        self.slot(n + 1 - i)
    }

    /// `ξ(σ)` for a basis element `σ = T_w` of `End(e^n)`.
    pub fn xi(&self, n: usize, w: &Perm) -> Result<Braid, TwoRepError> {
        self.need(n)?;
        let c = self.comp();
        let strands = (1..=n)
            .map(|i| {
                let a = local_on(&self.cat, self.slot_at(n, i), c).unwrap();
                let b = local_on(&self.cat, self.slot_at(n, w.apply(i)), c).unwrap();
                self.cat.z.path(c, a, b)
            })
            .collect();
        Ok(self.cat.braid(strands)?)
    }

    /// `σ ↦ σ^{rev opp}` on basis elements.
    pub fn rev_opp(w: &Perm) -> Perm {
        w.iota().inverse()
    }

    /// The basis of `L(T,S,e^n)` or `R(S,T,e^n)` with total length at most
    /// `mu`.
    pub fn module(&self, t: &[usize], s: &[usize], n: usize, w: usize, mu: usize) -> Result<Vec<Braid>, TwoRepError> {
        self.need(n)?;
        let ext = union(t, &self.slots(n));
        Ok(match self.kind {
            ActionKind::Left => self.cat.hom(s, &ext, w, mu),
            ActionKind::Right => self.cat.hom(&ext, s, w, mu),
        })
    }

    /// `L(β,α,σ)(f) = (β ⊠ ξ(σ))·f·α` or `R(β,α,σ)(f) = β·f·(α ⊠ ξ(σ^{rev opp}))`.
    pub fn act(&self, beta: &Braid, alpha: &Braid, sigma: &Perm, f: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let n = sigma.n();
        let c = &self.cat;
        Ok(match self.kind {
            ActionKind::Left => {
                let left = boxtimes(c, beta, &self.xi(n, sigma)?)?;
                mul(c, mul(c, Some(left), Some(f.clone()))?, Some(alpha.clone()))?
            }
            ActionKind::Right => {
                let right = boxtimes(c, alpha, &self.xi(n, &Self::rev_opp(sigma))?)?;
                mul(c, mul(c, Some(beta.clone()), Some(f.clone()))?, Some(right))?
            }
        })
    }

    /// The action on sums.
    pub fn act_sum(
        &self,
        beta: &F2Sum<Braid>,
        alpha: &F2Sum<Braid>,
        sigma: &F2Sum<Perm>,
        f: &F2Sum<Braid>,
    ) -> Result<F2Sum<Braid>, TwoRepError> {
        let mut out = F2Sum::zero();
        for b in beta.iter() {
            for a in alpha.iter() {
                for s in sigma.iter() {
                    for x in f.iter() {
                        let ok = match self.kind {
                            ActionKind::Left => self.cat.target(x) == union(&b.source, &self.slots(s.n())) && self.cat.target(a) == x.source,
                            ActionKind::Right => x.source == union(&self.cat.target(a), &self.slots(s.n())) && b.source == self.cat.target(x),
                        };
                        if ok {
                            if let Some(y) = self.act(b, a, s, x)? {
                                out.toggle(y);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Functoriality, the Leibniz rule and the slot crossings on every
    /// element of `L(T,S,e^n)` (or `R`) for objects of size at most `kmax`.
    pub fn equivariance_check(&self, kmax: usize, n: usize, w: usize, mu: usize) -> Result<CheckReport, TwoRepError> {
        let mut rep = CheckReport::new("end_action");
        let c = &self.cat;
        for i in 1..n {
            let xi = self.xi(n, &Perm::simple(n, i))?;
            let (a, b) = (self.slot(n + 1 - i), self.slot(n - i));
            let crossing: Vec<Path> = self
                .slots(n)
                .iter()
                .map(|&p| {
                    let q = if p == a { b } else if p == b { a } else { p };
                    c.z.path(self.comp(), local_on(c, p, self.comp()).unwrap(), local_on(c, q, self.comp()).unwrap())
                })
                .collect();
            rep.check(c.braid(crossing).ok() == Some(xi), || format!("ξ(T_{i}) is not the slot crossing"));
        }
        let objs = StrandCat::objects(&self.m, 0..=kmax);
        let perms = Perm::all(n);
        for t in &objs {
            for s in &objs {
                if s.len() != t.len() + n || s.len() > kmax {
                    continue;
                }
                let (xs, xt) = (s, t);
                let elems = self.module(xt, xs, n, w, mu)?;
                let end_s = c.hom(xs, xs, w, mu);
                let end_t = c.hom(xt, xt, w, mu);
                for f in &elems {
                    rep.count("elements", 1);
                    let (id_s, id_t) = (c.identity(xs), c.identity(xt));
                    let (bid, aid) = match self.kind {
                        ActionKind::Left => (id_t.clone(), id_s.clone()),
                        ActionKind::Right => (id_s.clone(), id_t.clone()),
                    };
                    rep.check(self.act(&bid, &aid, &Perm::identity(n), f)?.as_ref() == Some(f), || {
                        format!("identity action moves {}", c.encode(f))
                    });
                    let (betas, alphas) = match self.kind {
                        ActionKind::Left => (&end_t, &end_s),
                        ActionKind::Right => (&end_s, &end_t),
                    };
                    // two-step action against the composite action
                    for (k, b1) in betas.iter().enumerate().take(4) {
                        for a1 in alphas.iter().take(4) {
                            for s1 in perms.iter().take(3) {
                                let b2 = &betas[(k + 1) % betas.len()];
                                let a2 = &alphas[(k + 2) % alphas.len()];
                                let s2 = &perms[k % perms.len()];
                                let step = match self.act(b1, a1, s1, f)? {
                                    Some(y) => self.act(b2, a2, s2, &y)?,
                                    None => None,
                                };
                                let b21 = c.product(b2, b1)?;
                                let a12 = c.product(a1, a2)?;
                                let s21 = hecke::mult_basis(s2, s1);
                                let once = match (b21, a12, s21) {
                                    (Some(b), Some(a), Some(s)) => self.act(&b, &a, &s, f)?,
                                    _ => None,
                                };
                                rep.check(step == once, || format!("functoriality at {}", c.encode(f)));
                            }
                        }
                    }
                    // Leibniz for the action of generators
                    for b in betas.iter().take(3) {
                        for a in alphas.iter().take(3) {
                            for s in &perms {
                                let one = |x: &Braid| F2Sum::single(x.clone());
                                let lhs = self.act_sum(&one(b), &one(a), &F2Sum::single(s.clone()), &one(f))?;
                                let lhs = c.differential_sum(&lhs);
                                let mut rhs = self.act_sum(&c.differential(b), &one(a), &F2Sum::single(s.clone()), &one(f))?;
                                rhs.add_assign(&self.act_sum(&one(b), &c.differential(a), &F2Sum::single(s.clone()), &one(f))?);
                                rhs.add_assign(&self.act_sum(&one(b), &one(a), &hecke::d_basis(s), &one(f))?);
                                rhs.add_assign(&self.act_sum(&one(b), &one(a), &F2Sum::single(s.clone()), &c.differential(f))?);
                                rep.check(lhs == rhs, || format!("Leibniz at {}", c.encode(f)));
                            }
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    // -----------------------------------------------------------------------
    // Twisted description

    /// Splits `θ ∈ L(T,S,e^n)` as `α ⊠ β` with `α` ending in the slots.
    pub fn split(&self, theta: &Braid) -> (Braid, Braid) {
        let slots = &self.cat.z.ray_ends[self.end].slots;
        let into: Vec<usize> = theta
            .source
            .iter()
            .zip(&theta.strands)
            .filter(|(_, p)| slots.contains(&self.cat.z.end_mark(p)))
            .map(|(s, _)| *s)
            .collect();
        let rest = minus(&theta.source, &into);
        (restrict(theta, &into), restrict(theta, &rest))
    }

    fn positive(&self, p: &Path) -> bool {
        p.comp == self.comp()
            && match self.side() {
                Side::Right => p.to > p.from,
                Side::Left => p.to < p.from,
            }
    }

    /// Whether `x` comes before `y` in the direction of the ray.
    fn before(&self, x: i64, y: i64) -> bool {
        match self.side() {
            Side::Right => x < y,
            Side::Left => x > y,
        }
    }

    /// `g_{S'',ζ}(α) = v ∧ u`, or `None` when it vanishes.
    pub fn g_map(&self, alpha: &Braid, zeta: &Path, s_rest: &[usize]) -> Result<Option<(Braid, Braid)>, TwoRepError> {
        let c = &self.cat;
        let s2 = c.z.start_point(zeta);
        let s1 = c.z.end_point(zeta);
        let Some(a2) = strand_at(alpha, s2) else { return Ok(None) };
        if a2.comp != zeta.comp || a2.from != zeta.from {
            return Ok(None);
        }
        // α_{s''} ∘ ζ^{-1}
        let back = c.z.path(zeta.comp, zeta.to, a2.to);
        if !c.z.admissible(&back) {
            return Ok(None);
        }
        // intermediate points of S'' on ζ
        for (&s, a_s) in alpha.source.iter().zip(&alpha.strands) {
            if s == s2 {
                continue;
            }
            let Some(l) = local_on(c, s, zeta.comp) else { continue };
            if !(self.before(zeta.from, l) && self.before(l, zeta.to)) {
                continue;
            }
            let mid = c.z.path(zeta.comp, l, a2.to);
            if !c.z.admissible(&mid) {
                continue;
            }
            if !self.before(a2.to, a_s.to) {
                return Ok(None);
            }
        }
        let mut v = restrict(alpha, &minus(&alpha.source, &[s2])).strands;
        v.push(back);
        let v = c.braid(v)?;
        let keep = minus(s_rest, &[s1]);
        let mut u: Vec<Path> = keep.iter().map(|&p| c.z.identity_path(p)).collect();
        u.push(*zeta);
        let u = c.braid(u)?;
        Ok(Some((v, u)))
    }

    /// `d_V(α ⊠ β) = dα ⊠ β + α ⊠ dβ + Σ_ζ v ⊠ (β·u)`.
    pub fn d_twisted(&self, theta: &Braid, w: usize, mu: usize) -> Result<F2Sum<Braid>, TwoRepError> {
        let c = &self.cat;
        let (alpha, beta) = self.split(theta);
        let mut out = F2Sum::zero();
        for a in c.differential(&alpha).iter() {
            out.toggle(boxtimes(c, a, &beta)?);
        }
        for b in c.differential(&beta).iter() {
            out.toggle(boxtimes(c, &alpha, b)?);
        }
        for &s2 in &alpha.source {
            for &s1 in &beta.source {
                for zeta in c.z.paths_between(s2, s1, w, mu) {
                    if !self.positive(&zeta) {
                        continue;
                    }
                    if let Some((v, u)) = self.g_map(&alpha, &zeta, &beta.source)? {
                        if let Some(bu) = c.product(&beta, &u)? {
                            out.toggle(boxtimes(c, &v, &bu)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The decomposition of `L(T,S,e^n)` over the subsets `S'' ⊂ S`: the
    /// map `(α, β) ↦ α ⊠ β` is a bijection, `d_V` equals the native
    /// differential and squares to zero.
    pub fn decompose(&self, t: &[usize], s: &[usize], n: usize, w: usize, mu: usize) -> Result<CheckReport, TwoRepError> {
        if self.kind != ActionKind::Left {
            return Err(TwoRepError::Hypothesis("the twisted description is built for an outgoing end".into()));
        }
        let mut rep = CheckReport::new("decompose");
        let c = &self.cat;
        let slots = self.slots(n);
        let direct: BTreeSet<Braid> = self.module(t, s, n, w, mu)?.into_iter().collect();
        let mut image = BTreeSet::new();
        let mut summands = 0;
        for s2 in subsets_of_size(s, n) {
            let rest = minus(s, &s2);
            summands += 1;
            for alpha in c.hom(&s2, &slots, w, mu) {
                for beta in c.hom(&rest, t, w, mu) {
                    if c.mu_total(&alpha) + c.mu_total(&beta) > mu {
                        continue;
                    }
                    let theta = boxtimes(c, &alpha, &beta)?;
                    rep.check(image.insert(theta.clone()), || format!("{} hit twice", c.encode(&theta)));
                    rep.check(self.split(&theta) == (alpha.clone(), beta), || "split is not inverse".into());
                }
            }
        }
        rep.count("summands", summands);
        rep.count("elements", image.len());
        rep.check(image == direct, || format!("{} pairs vs {} braids", image.len(), direct.len()));
        for theta in &direct {
            let dv = self.d_twisted(theta, w, mu)?;
            rep.check(dv == c.differential(theta), || format!("d_V differs at {}", c.encode(theta)));
            let mut dd = F2Sum::zero();
            for x in dv.iter() {
                dd.add_assign(&self.d_twisted(x, w, mu)?);
            }
            rep.check(dd.is_zero(), || format!("d_V² ≠ 0 at {}", c.encode(theta)));
        }
        Ok(rep)
    }
}

// ---------------------------------------------------------------------------
// Line instance

fn side_of(bs: BimoduleSide) -> (Side, Role) {
    match bs {
        BimoduleSide::LPlus => (Side::Right, Role::Outgoing),
        BimoduleSide::LMinus => (Side::Left, Role::Outgoing),
        BimoduleSide::RPlus => (Side::Right, Role::Incoming),
        BimoduleSide::RMinus => (Side::Left, Role::Incoming),
    }
}

/// The unoriented line with `k` marks and one ray end with `n` slots.
pub fn line_context(k: usize, n: usize, side: Side, role: Role) -> EndContext {
    let marks = (1..=k).map(|i| i.to_string()).collect();
    let base = match side {
        Side::Right => format!("{}/2", 2 * k + 1),
        Side::Left => "1/2".to_string(),
    };
    let spec = DiagramFile {
        components: vec![ComponentSpec::UnorientedInterval { marks }],
        matching: vec![],
        ray_ends: vec![RayEndSpec { component: 0, side, role, base, slots: n }],
    };
    EndContext::new(StrandCat::new(CurveModel::from_spec(spec).expect("a line")), 0).expect("an end of a line")
}

/// The line instance of `L_{ξ±}` and `R_{ξ±}` against the regular
/// bimodules `L^±(r,n)` and `R^±(r,n)`: for every basis element and every
/// acting triple the two sides agree under `φ`.
pub fn line_instance_check(side: BimoduleSide, r: usize, n: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("line_{side:?}_{r}_{n}"));
    let (sd, role) = side_of(side);
    let ctx = line_context(r + n, n, sd, role);
    let c = &ctx.cat;
    let s: Vec<usize> = ctx.m.clone();
    let t: Vec<usize> = s[..r].to_vec();
    let big = (r + 2 * n) * (r + 2 * n);
    let elems = ctx.module(&t, &s, n, 0, big).unwrap();
    rep.check(elems.len() == (1..=r + n).product::<usize>(), || format!("{} elements", elems.len()));
    let phi = |b: &Braid| line_perm(c, 0, b);
    for f in &elems {
        let x = F2Sum::single(phi(f));
        for hr in Perm::all(r) {
            let bt = line_braid(c, 0, &t, &t, &hr).unwrap();
            for hn in Perm::all(n) {
                for h2 in Perm::all(r + n) {
                    let bs = line_braid(c, 0, &s, &s, &h2).unwrap();
                    let got: F2Sum<Perm> = match ctx.kind {
                        ActionKind::Left => F2Sum::from_option(ctx.act(&bt, &bs, &hn, f).unwrap().map(|y| phi(&y))),
                        ActionKind::Right => F2Sum::from_option(
                            ctx.act(&bs, &bt, &EndContext::rev_opp(&hn), f).unwrap().map(|y| phi(&y)),
                        ),
                    };
                    let want = hecke::bimodule_action(
                        side,
                        r,
                        n,
                        (&F2Sum::single(hr.clone()), &F2Sum::single(hn.clone())),
                        &x,
                        &F2Sum::single(h2.clone()),
                    )
                    .unwrap();
                    rep.check(got == want, || format!("{hr:?} {hn:?} {h2:?} on {:?}", phi(f)));
                }
            }
        }
        let d: F2Sum<Perm> = c.differential(f).iter().map(phi).collect();
        rep.check(d == hecke::d_basis(&phi(f)), || format!("d on {:?}", phi(f)));
    }
    rep
}

// ---------------------------------------------------------------------------
// Duality

/// A line component with an outgoing end `ξ^+` on the right and an
/// incoming end `ξ^−` on the left, the slots `ξ̃(±i)` sitting beyond the
/// non-slot marks.
#[derive(Clone, Debug)]
pub struct DualContext {
    pub cat: StrandCat,
    pub plus: usize,
    pub minus: usize,
    pub comp: usize,
    pub m: Vec<usize>,
}

impl DualContext {
    pub fn new(cat: StrandCat) -> Result<Self, TwoRepError> {
        let ends = &cat.z.ray_ends;
        let plus = ends
            .iter()
            .position(|e| e.side == Side::Right && e.role == Role::Outgoing)
            .ok_or_else(|| TwoRepError::Hypothesis("no outgoing right end".into()))?;
        let minus = ends
            .iter()
            .position(|e| e.side == Side::Left && e.role == Role::Incoming && e.comp == ends[plus].comp)
            .ok_or_else(|| TwoRepError::Hypothesis("no incoming left end on the same line".into()))?;
        let comp = ends[plus].comp;
        let m = cat.z.regular_points();
        Ok(DualContext { cat, plus, minus, comp, m })
    }

    /// A line with `k` marks inside `(−3/4, 3/4)`, oriented on `(−1/2, 1/2)`
    /// when `oriented`, and `n` slots on each side.
    pub fn line(k: usize, n: usize, oriented: bool) -> Self {
        let marks = (1..=k).map(|i| format!("{}/{}", 2 * i as i64 - k as i64 - 1, 2 * k + 2)).collect();
        let comp = if oriented {
            ComponentSpec::Line { marks, oriented: vec![[Some("-1/2".into()), Some("1/2".into())]] }
        } else {
            ComponentSpec::UnorientedInterval { marks }
        };
        let spec = DiagramFile {
            components: vec![comp],
            matching: vec![],
            ray_ends: vec![
                RayEndSpec { component: 0, side: Side::Right, role: Role::Outgoing, base: "3/4".into(), slots: n },
                RayEndSpec { component: 0, side: Side::Left, role: Role::Incoming, base: "-3/4".into(), slots: n },
            ],
        };
        DualContext::new(StrandCat::new(CurveModel::from_spec(spec).expect("a line"))).unwrap()
    }

    pub fn left(&self) -> EndContext {
        EndContext { cat: self.cat.clone(), end: self.plus, kind: ActionKind::Left, m: self.m.clone() }
    }

    pub fn right(&self) -> EndContext {
        EndContext { cat: self.cat.clone(), end: self.minus, kind: ActionKind::Right, m: self.m.clone() }
    }

    /// `ξ̃(i)` for `i ≠ 0`.
    pub fn tilde(&self, i: i64) -> usize {
        if i > 0 {
            self.cat.z.slot_point(self.plus, i as usize)
        } else {
            self.cat.z.slot_point(self.minus, (-i) as usize)
        }
    }

    fn local(&self, p: usize) -> i64 {
        local_on(&self.cat, p, self.comp).expect("point on the line")
    }

    /// `ξ̃([a → b])` between two points of the line.
    pub fn segment(&self, a: usize, b: usize) -> Path {
        self.cat.z.path(self.comp, self.local(a), self.local(b))
    }

    /// `κ_I`: keeps `θ` when each `ξ̃(−i)` goes to `ξ̃(i)` and drops those
    /// strands.
    pub fn kappa_set(&self, set: &[usize], theta: &Braid) -> Result<Option<Braid>, TwoRepError> {
        for &i in set {
            let need = self.cat.z.ray_ends[self.plus].slots.len().min(self.cat.z.ray_ends[self.minus].slots.len());
            if i > need {
                return Err(TwoRepError::MissingSlots { end: self.plus, need: i, have: need });
            }
        }
        let mut drop = Vec::new();
        for &i in set {
            let from = self.tilde(-(i as i64));
            let Some(p) = strand_at(theta, from) else {
                return Err(TwoRepError::Hypothesis(format!("ξ̃(−{i}) is not in the source")));
            };
            if self.cat.z.end_point(&p) != self.tilde(i as i64) {
                return Ok(None);
            }
            drop.push(from);
        }
        Ok(Some(restrict(theta, &minus(&theta.source, &drop))))
    }

    pub fn kappa(&self, n: usize, theta: &Braid) -> Result<Option<Braid>, TwoRepError> {
        self.kappa_set(&(1..=n).collect::<Vec<_>>(), theta)
    }

    fn kappa_sum(&self, n: usize, x: &F2Sum<Braid>) -> Result<F2Sum<Braid>, TwoRepError> {
        let mut out = F2Sum::zero();
        for b in x.iter() {
            if let Some(y) = self.kappa(n, b)? {
                out.toggle(y);
            }
        }
        Ok(out)
    }

    /// `κ̂(θ', θ) = κ_n(θ'·θ)`.
    pub fn pairing(&self, n: usize, left: &Braid, right: &Braid) -> Result<Option<Braid>, TwoRepError> {
        match self.cat.product(left, right)? {
            Some(p) => self.kappa(n, &p),
            None => Ok(None),
        }
    }

    /// The matrix of `κ̂(∅, S)`: rows `L(∅,S,e^n)`, columns `R(S,∅,e^n)`.
    #[allow(clippy::type_complexity)]
    pub fn duality_matrix(&self, s: &[usize], n: usize) -> Result<(Vec<Braid>, Vec<Braid>, Vec<Vec<bool>>), TwoRepError> {
        let big = self.big();
        let rows = self.left().module(&[], s, n, 0, big)?;
        let cols = self.right().module(&[], s, n, 0, big)?;
        let mut mat = Vec::new();
        for a in &rows {
            let mut row = Vec::new();
            for b in &cols {
                row.push(self.pairing(n, a, b)?.is_some());
            }
            mat.push(row);
        }
        Ok((rows, cols, mat))
    }

    fn big(&self) -> usize {
        let m = self.cat.z.components[self.comp].m();
        m * m
    }

    /// Invertibility of `κ̂(∅, S)` for all `|S| = n`, injectivity of
    /// `κ̂(T, S)` for larger `S`, `κ` against `d` and its factorization,
    /// and on an unoriented line the comparison with the pairing computed
    /// in `H_n`.
    pub fn duality_check(&self, smax: usize, nmax: usize) -> Result<CheckReport, TwoRepError> {
        let mut rep = CheckReport::new("duality");
        let c = &self.cat;
        let big = self.big();
        let unoriented = self.cat.z.components[self.comp].dec_ok.iter().all(|&x| x);
        for n in 0..=nmax {
            for s in StrandCat::objects(&self.m, n..=n) {
                let (rows, cols, mat) = self.duality_matrix(&s, n)?;
                let bits: Vec<Vec<u64>> = mat
                    .iter()
                    .map(|r| bit_row(cols.len(), r.iter().enumerate().filter(|x| *x.1).map(|x| x.0)))
                    .collect();
                let full = rows.len() == cols.len() && f2_rank(bits) == rows.len();
                rep.check(full, || format!("κ̂(∅,{s:?}) singular ({}×{})", rows.len(), cols.len()));
                rep.count("matrices", 1);
                if unoriented {
                    for (i, a) in rows.iter().enumerate() {
                        for (j, b) in cols.iter().enumerate() {
                            let pa = line_perm(c, self.comp, a);
                            let pb = line_perm(c, self.comp, b);
                            let oracle = hecke::mult_basis(&pa, &pb) == Some(Perm::longest(n));
                            rep.check(mat[i][j] == oracle, || format!("pairing vs H_{n} at ({i},{j})"));
                        }
                    }
                }
            }
            // κ̂(T,S) is injective for T ≠ ∅
            for s in StrandCat::objects(&self.m, n + 1..=smax) {
                for t in StrandCat::objects(&self.m, s.len() - n..=s.len() - n) {
                    let rows = self.left().module(&t, &s, n, 0, big)?;
                    let mut cols: Vec<(Braid, Braid)> = Vec::new();
                    for tp in StrandCat::objects(&self.m, t.len()..=t.len()) {
                        let homs = c.hom(&tp, &t, 0, big);
                        for r in self.right().module(&tp, &s, n, 0, big)? {
                            for h in &homs {
                                cols.push((r.clone(), h.clone()));
                            }
                        }
                    }
                    let index: BTreeMap<(Braid, Braid), usize> =
                        cols.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
                    let mut bits = Vec::new();
                    for a in &rows {
                        let mut on = Vec::new();
                        let mut seen = BTreeSet::new();
                        for (r, _) in &cols {
                            if !seen.insert(r.clone()) {
                                continue;
                            }
                            if let Some(p) = self.pairing(n, a, r)? {
                                on.push(index[&(r.clone(), p)]);
                            }
                        }
                        bits.push(bit_row(cols.len(), on));
                    }
                    rep.check(f2_rank(bits) == rows.len(), || format!("κ̂({t:?},{s:?}) not injective"));
                    rep.count("injective", 1);
                }
            }
        }
        // κ commutes with d and factors through the κ_{i}
        for n in 1..=nmax {
            for k in n..=smax.max(n) {
                for tp in StrandCat::objects(&self.m, k - n..=k - n) {
                    let src = union(&tp, &self.right().slots(n));
                    for t in StrandCat::objects(&self.m, k - n..=k - n) {
                        let tgt = union(&t, &self.left().slots(n));
                        for theta in c.hom(&src, &tgt, 0, big) {
                            let once = self.kappa(n, &theta)?;
                            let mut step = Some(theta.clone());
                            for i in 1..=n {
                                step = match step {
                                    Some(x) => self.kappa_set(&[i], &x)?,
                                    None => None,
                                };
                            }
                            rep.check(once == step, || format!("κ_{n} ≠ κ_{{n}}∘…∘κ_{{1}} at {}", c.encode(&theta)));
                            let lhs = self.kappa_sum(n, &c.differential(&theta))?;
                            let rhs = once.map(|x| c.differential(&x)).unwrap_or_default();
                            rep.check(lhs == rhs, || format!("κ_{n}∘d ≠ d∘κ_{n} at {}", c.encode(&theta)));
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `η(γ) = Σ_x γ·(id ⊠ ξ̃([−1→x])) ⊗ (id ⊠ ξ̃([x→1]))` for `γ: S → T`, as
    /// pairs `(R(T,U), L(U,S))`.
    pub fn unit(&self, gamma: &Braid) -> Result<Vec<(Braid, Braid)>, TwoRepError> {
        let c = &self.cat;
        let (m1, p1) = (self.tilde(-1), self.tilde(1));
        let s = gamma.source.clone();
        let mut out = Vec::new();
        for &x in &s {
            if local_on(c, x, self.comp).is_none() {
                continue;
            }
            let rest = minus(&s, &[x]);
            let mut lv: Vec<Path> = rest.iter().map(|&p| c.z.identity_path(p)).collect();
            lv.push(self.segment(x, p1));
            let l = c.braid(lv)?;
            let mut rv: Vec<Path> = rest.iter().map(|&p| c.z.identity_path(p)).collect();
            rv.push(self.segment(m1, x));
            let r0 = c.braid(rv)?;
            if let Some(r) = c.product(gamma, &r0)? {
                out.push((r, l));
            }
        }
        Ok(out)
    }

    /// `ε = κ_1 ∘ mult` on `L(T,S) ⊗ R(S,U)`.
    pub fn counit(&self, l: &Braid, r: &Braid) -> Result<Option<Braid>, TwoRepError> {
        self.pairing(1, l, r)
    }

    /// The two zigzag identities and the composite of the unit with the
    /// embedding into `Hom(S ⊔ ξ^−(−1), T ⊔ ξ^+(1))`.
    pub fn zigzag_check(&self, kmax: usize) -> Result<CheckReport, TwoRepError> {
        let mut rep = CheckReport::new("zigzag");
        let c = &self.cat;
        let big = self.big();
        let (m1, p1) = (self.tilde(-1), self.tilde(1));
        let right = self.right();
        let left = self.left();
        let objs = StrandCat::objects(&self.m, 0..=kmax);
        for t in &objs {
            for s in &objs {
                // γ ∈ R(T,S) = Hom(S ⊔ ξ^−(−1), T)
                if t.len() == s.len() + 1 {
                    for gamma in right.module(s, t, 1, 0, big)? {
                        let mut total = F2Sum::zero();
                        let id_t = c.identity(t);
                        for (r, l) in self.unit(&id_t)? {
                            if let Some(k) = self.counit(&l, &gamma)? {
                                let kk = boxtimes(c, &k, &c.identity(&[m1]))?;
                                if let Some(y) = c.product(&r, &kk)? {
                                    total.toggle(y);
                                }
                            }
                        }
                        rep.check(total == F2Sum::single(gamma.clone()), || format!("R zigzag at {}", c.encode(&gamma)));
                    }
                }
                // θ ∈ L(T,S) = Hom(S, T ⊔ ξ^+(1))
                if s.len() == t.len() + 1 {
                    for theta in left.module(t, s, 1, 0, big)? {
                        let mut total = F2Sum::zero();
                        for (r, l) in self.unit(&c.identity(s))? {
                            if let Some(k) = self.counit(&theta, &r)? {
                                let kk = boxtimes(c, &k, &c.identity(&[p1]))?;
                                if let Some(y) = c.product(&kk, &l)? {
                                    total.toggle(y);
                                }
                            }
                        }
                        rep.check(total == F2Sum::single(theta.clone()), || format!("L zigzag at {}", c.encode(&theta)));
                    }
                }
                // the unit followed by (β ⊠ id)·(α ⊠ id)
                if s.len() == t.len() {
                    for gamma in c.hom(s, t, 0, big) {
                        let mut lhs = F2Sum::zero();
                        for (r, l) in self.unit(&gamma)? {
                            let a = boxtimes(c, &l, &c.identity(&[m1]))?;
                            let b = boxtimes(c, &r, &c.identity(&[p1]))?;
                            if let Some(y) = c.product(&b, &a)? {
                                lhs.toggle(y);
                            }
                        }
                        let mut lv: Vec<Path> = s.iter().map(|&p| c.z.identity_path(p)).collect();
                        lv.push(self.segment(m1, p1));
                        let through = c.braid(lv)?;
                        let g1 = boxtimes(c, &gamma, &c.identity(&[p1]))?;
                        let rhs = c.product_sum(&F2Sum::single(g1), &c.differential(&through))?;
                        rep.check(lhs == rhs, || format!("unit composite at {}", c.encode(&gamma)));
                    }
                }
            }
        }
        Ok(rep)
    }
}

// ---------------------------------------------------------------------------
// Gluing

/// The curve `Z_ξ`: the outgoing right end `out_end` of `z` is joined to
/// the incoming left end `in_end` by an oriented segment carrying a new
/// mark `z0`. The slots of both ends become ordinary marks, placed so that
/// slot `1` of either end is farthest from `z0`. Returns the new model, the
/// image of every mark of `z`, and the mark id of `z0`.
#[allow(clippy::needless_range_loop)]
pub fn glue_curve(z: &CurveModel, out_end: usize, in_end: usize) -> Result<(CurveModel, Vec<usize>, usize), TwoRepError> {
    let (Some(eo), Some(ei)) = (z.ray_ends.get(out_end), z.ray_ends.get(in_end)) else {
        return Err(TwoRepError::Hypothesis("no such ray end".into()));
    };
    if eo.side != Side::Right || eo.role != Role::Outgoing {
        return Err(TwoRepError::Hypothesis("the first end must be an outgoing right end".into()));
    }
    if ei.side != Side::Left || ei.role != Role::Incoming {
        return Err(TwoRepError::Hypothesis("the second end must be an incoming left end".into()));
    }
    let kept = |x: usize| z.marks[x].slot.is_none_or(|(e, _)| e == out_end || e == in_end);
    let listed = |c: usize| -> Vec<usize> { z.components[c].marks.iter().copied().filter(|&x| kept(x)).collect() };
    let coord = |x: usize| z.marks[x].coord;
    let fq = |q: Q| format_q(&q);
    let fo = |q: Option<Q>| q.map(|q| format_q(&q));
    let regions = |c: usize| match &z.components[c].orientation {
        Orientation::Full => vec![(None, None)],
        Orientation::Regions(r) => r.clone(),
    };

    let mut comps = Vec::new();
    let mut source: Vec<Option<usize>> = Vec::new();
    let mut comp_map = vec![usize::MAX; z.components.len()];
    let mut z0 = usize::MAX;
    let mut shift_b = Q::from_integer(0);
    for ci in 0..z.components.len() {
        if ci == ei.comp && ei.comp != eo.comp {
            continue;
        }
        comp_map[ci] = comps.len();
        if ci == eo.comp && ei.comp == eo.comp {
            let xs = listed(ci);
            if xs.is_empty() {
                return Err(TwoRepError::Hypothesis("nothing to glue".into()));
            }
            let (lo, hi) = (coord(xs[0]), coord(*xs.last().unwrap()));
            let len = hi - lo + Q::from_integer(2);
            let f = |x: Q| (x - lo + Q::from_integer(1)) / len;
            let mut marks = vec!["0".to_string()];
            z0 = source.len();
            source.push(None);
            for &x in &xs {
                marks.push(fq(f(coord(x))));
                source.push(Some(x));
            }
            let mut oriented = vec![[fq(f(hi)), fq(f(lo))]];
            for (a, b) in regions(ci) {
                let (Some(a), Some(b)) = (a, b) else {
                    return Err(TwoRepError::Hypothesis("unbounded oriented region".into()));
                };
                oriented.push([fq(f(a)), fq(f(b))]);
            }
            comps.push(ComponentSpec::Circle { marks, oriented });
        } else if ci == eo.comp {
            let xs = listed(ci);
            let ys = listed(ei.comp);
            let top = xs.iter().map(|&x| coord(x)).chain([eo.base]).max().unwrap();
            let bottom = ys.iter().map(|&x| coord(x)).chain([ei.base]).min().unwrap();
            shift_b = top + Q::from_integer(2) - bottom;
            let mut marks = Vec::new();
            for &x in &xs {
                marks.push(fq(coord(x)));
                source.push(Some(x));
            }
            z0 = source.len();
            marks.push(fq(top + Q::from_integer(1)));
            source.push(None);
            for &y in &ys {
                marks.push(fq(coord(y) + shift_b));
                source.push(Some(y));
            }
            let mut oriented: Vec<[Option<String>; 2]> = regions(ci).into_iter().map(|(a, b)| [fo(a), fo(b)]).collect();
            oriented.push([Some(fq(top)), Some(fq(top + Q::from_integer(2)))]);
            for (a, b) in regions(ei.comp) {
                oriented.push([fo(a.map(|a| a + shift_b)), fo(b.map(|b| b + shift_b))]);
            }
            comps.push(ComponentSpec::Line { marks, oriented });
        } else {
            let xs = listed(ci);
            let marks: Vec<String> = xs.iter().map(|&x| fq(coord(x))).collect();
            source.extend(xs.iter().map(|&x| Some(x)));
            let c = &z.components[ci];
            comps.push(match c.topology {
                Topology::Line => {
                    ComponentSpec::Line { marks, oriented: regions(ci).into_iter().map(|(a, b)| [fo(a), fo(b)]).collect() }
                }
                Topology::Circle => {
                    let oriented = match &c.orientation {
                        Orientation::Full => vec![["0".to_string(), "1".to_string()], ["1/2".to_string(), "1/2".to_string()]],
                        Orientation::Regions(r) => r.iter().map(|(a, b)| [fq(a.unwrap()), fq(b.unwrap())]).collect(),
                    };
                    ComponentSpec::Circle { marks, oriented }
                }
            });
        }
    }
    if ei.comp != eo.comp {
        comp_map[ei.comp] = comp_map[eo.comp];
    }
    let mut end_map = vec![usize::MAX; z.ray_ends.len()];
    let mut ray_ends = Vec::new();
    for (e, re) in z.ray_ends.iter().enumerate() {
        if e == out_end || e == in_end {
            continue;
        }
        end_map[e] = ray_ends.len();
        let base = if re.comp == ei.comp && ei.comp != eo.comp { re.base + shift_b } else { re.base };
        ray_ends.push(RayEndSpec {
            component: comp_map[re.comp],
            side: re.side,
            role: re.role,
            base: fq(base),
            slots: re.slots.len(),
        });
    }
    let id_of = |x: usize| source.iter().position(|&s| s == Some(x));
    let matching = z.matching.iter().map(|&(a, b)| [id_of(a).unwrap() + 1, id_of(b).unwrap() + 1]).collect();
    let zx = CurveModel::from_spec(DiagramFile { components: comps, matching, ray_ends })?;
    let mark_map = (0..z.marks.len())
        .map(|x| match id_of(x) {
            Some(i) => i,
            None => {
                let (e, j) = z.marks[x].slot.unwrap();
                zx.ray_ends[end_map[e]].slots[j - 1]
            }
        })
        .collect();
    Ok((zx, mark_map, z0))
}

/// The disjoint union of two diagrams, the second listed after the first.
pub fn disjoint_union(a: &DiagramFile, b: &DiagramFile) -> DiagramFile {
    let user_marks = |d: &DiagramFile| -> usize {
        d.components
            .iter()
            .map(|c| match c {
                ComponentSpec::OrientedInterval { marks, .. }
                | ComponentSpec::UnorientedInterval { marks }
                | ComponentSpec::OrientedCircle { marks }
                | ComponentSpec::UnorientedCircle { marks }
                | ComponentSpec::DottedCircle { marks, .. }
                | ComponentSpec::Ray { marks, .. }
                | ComponentSpec::Line { marks, .. }
                | ComponentSpec::Circle { marks, .. } => marks.len(),
            })
            .sum()
    };
    let (ca, ma) = (a.components.len(), user_marks(a));
    let mut out = a.clone();
    out.components.extend(b.components.iter().cloned());
    out.matching.extend(b.matching.iter().map(|[x, y]| [x + ma, y + ma]));
    out.ray_ends.extend(b.ray_ends.iter().cloned().map(|mut r| {
        r.component += ca;
        r
    }));
    out
}

/// Two oriented intervals with `k1` and `k2` marks, the first with an
/// outgoing right end and the second with an incoming left end, each with
/// `slots` slots. `matching` pairs 1-based mark ids across the union.
pub fn intervals_spec(k1: usize, k2: usize, slots: usize, matching: Vec<[usize; 2]>) -> DiagramFile {
    let marks = |k: usize| (1..=k).map(|i| i.to_string()).collect::<Vec<_>>();
    DiagramFile {
        components: vec![
            ComponentSpec::Line { marks: marks(k1), oriented: vec![[None, Some(format!("{}/2", 2 * k1 + 1))]] },
            ComponentSpec::Line { marks: marks(k2), oriented: vec![[Some("1/2".into()), None]] },
        ],
        matching,
        ray_ends: vec![
            RayEndSpec { component: 0, side: Side::Right, role: Role::Outgoing, base: (k1 + 1).to_string(), slots },
            RayEndSpec { component: 1, side: Side::Left, role: Role::Incoming, base: "0".into(), slots },
        ],
    }
}

/// An oriented interval with `k` marks and a ray end with `slots` slots on
/// each side, ready to be glued to a circle.
pub fn self_glue_spec(k: usize, slots: usize, matching: Vec<[usize; 2]>) -> DiagramFile {
    DiagramFile {
        components: vec![ComponentSpec::Line {
            marks: (1..=k).map(|i| i.to_string()).collect(),
            oriented: vec![[Some("1/4".into()), Some(format!("{}/4", 4 * k + 3))]],
        }],
        matching,
        ray_ends: vec![
            RayEndSpec { component: 0, side: Side::Right, role: Role::Outgoing, base: (k + 1).to_string(), slots },
            RayEndSpec { component: 0, side: Side::Left, role: Role::Incoming, base: "0".into(), slots },
        ],
    }
}

/// Where the strand from an incoming slot of an element of `E_{m,n}`
/// arrives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Landing {
    Body(usize),
    Slot(usize),
}

/// Membership of an element of `G_n` in the distinguished subsets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Classes {
    pub a: bool,
    pub d: bool,
    pub e: bool,
    pub f: bool,
}

/// A morphism of `Δ_E`: the class of `rep` in `G_n/∼`, with `rep` the
/// least element of `F ∩ C` in the class, and its image under `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMorphism {
    pub n: usize,
    pub rep: Braid,
    pub image: Braid,
}

/// Union-find over `0..n`.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A curve `Z` with an outgoing right end `ξ1` and an incoming left end
/// `ξ2`, and the glued curve `Z_ξ`. Objects are subsets of `M`, the points
/// of `Z` away from all slots.
#[derive(Clone, Debug)]
pub struct GluedContext {
    pub z: StrandCat,
    pub zx: StrandCat,
    pub out_end: usize,
    pub in_end: usize,
    pub m: Vec<usize>,
    pub mark_map: Vec<usize>,
    pub point_map: Vec<usize>,
    pub z0: usize,
    /// Winding bound for circles of `Z`.
    pub w: usize,
    out_pts: Vec<usize>,
    in_pts: Vec<usize>,
}

impl GluedContext {
    pub fn new(z: StrandCat, out_end: usize, in_end: usize, w: usize) -> Result<Self, TwoRepError> {
        let (zx, mark_map, z0m) = glue_curve(&z.z, out_end, in_end)?;
        let point_map = z.z.points.iter().map(|xs| zx.mark_point[mark_map[xs[0]]]).collect();
        let out_pts = (1..=z.z.ray_ends[out_end].slots.len()).map(|j| z.z.slot_point(out_end, j)).collect();
        let in_pts = (1..=z.z.ray_ends[in_end].slots.len()).map(|j| z.z.slot_point(in_end, j)).collect();
        Ok(GluedContext {
            m: z.z.regular_points(),
            z0: zx.mark_point[z0m],
            zx: StrandCat::new(zx),
            z,
            out_end,
            in_end,
            mark_map,
            point_map,
            w,
            out_pts,
            in_pts,
        })
    }

    pub fn from_json(text: &str, w: usize) -> Result<Self, TwoRepError> {
        Self::from_spec(serde_json::from_str(text).map_err(CurveError::from)?, w)
    }

    /// Glues the first outgoing right end to the first incoming left end.
    pub fn from_spec(spec: DiagramFile, w: usize) -> Result<Self, TwoRepError> {
        let cat = StrandCat::new(CurveModel::from_spec(spec)?);
        let outs: Vec<usize> = (0..cat.z.ray_ends.len())
            .filter(|&e| cat.z.ray_ends[e].side == Side::Right && cat.z.ray_ends[e].role == Role::Outgoing)
            .collect();
        let ins: Vec<usize> = (0..cat.z.ray_ends.len())
            .filter(|&e| cat.z.ray_ends[e].side == Side::Left && cat.z.ray_ends[e].role == Role::Incoming)
            .collect();
        match (outs.first(), ins.first()) {
            (Some(&o), Some(&i)) => Self::new(cat, o, i, w),
            _ => Err(TwoRepError::Hypothesis("need an outgoing right end and an incoming left end".into())),
        }
    }

    /// Number of slots usable on each side.
    pub fn capacity(&self) -> usize {
        self.out_pts.len().min(self.in_pts.len())
    }

    /// The point `ξ1(r)`.
    pub fn out_slot(&self, r: usize) -> usize {
        self.out_pts[r - 1]
    }

    /// The point `ξ2(−k)`.
    pub fn in_slot(&self, k: usize) -> usize {
        self.in_pts[k - 1]
    }

    fn out_index(&self, p: usize) -> Option<usize> {
        self.out_pts.iter().position(|&q| q == p).map(|i| i + 1)
    }

    fn in_index(&self, p: usize) -> Option<usize> {
        self.in_pts.iter().position(|&q| q == p).map(|i| i + 1)
    }

    fn big(&self) -> usize {
        let n = self.z.z.marks.len();
        n * n
    }

    /// The image of a path of `Z` in `Z_ξ`.
    pub fn map_path(&self, p: &Path) -> Path {
        if p.is_identity() {
            return self.zx.z.identity_path(self.point_map[self.z.z.start_point(p)]);
        }
        let x = self.mark_map[self.z.z.start_mark(p)];
        let mk = &self.zx.z.marks[x];
        let from = mk.local as i64;
        self.zx.z.path(mk.comp, from, from + p.to - p.from)
    }

    pub fn map_braid(&self, b: &Braid) -> Result<Braid, TwoRepError> {
        Ok(self.zx.braid(b.strands.iter().map(|p| self.map_path(p)).collect())?)
    }

    /// The path `[r → −k]` of `Z_ξ` through `z0`.
    pub fn connector(&self, r: usize, k: usize) -> Path {
        let zx = &self.zx.z;
        let a = &zx.marks[self.mark_map[self.z.z.points[self.out_slot(r)][0]]];
        let b = &zx.marks[self.mark_map[self.z.z.points[self.in_slot(k)][0]]];
        let mut to = b.local as i64;
        if to <= a.local as i64 {
            to += zx.components[a.comp].m() as i64;
        }
        zx.path(a.comp, a.local as i64, to)
    }

    /// `(m, n)` for an element of `E_{m,n}`.
    pub fn bidegree(&self, b: &Braid) -> (usize, usize) {
        let n = b.source.iter().filter(|&&p| self.in_index(p).is_some()).count();
        let m = self.z.target(b).iter().filter(|&&p| self.out_index(p).is_some()).count();
        (m, n)
    }

    /// `E_{m,n}(T,S) = Hom_Z(S ⊔ ξ2(−n..−1), T ⊔ ξ1(1..m))`.
    pub fn e_set(&self, t: &[usize], s: &[usize], m: usize, n: usize) -> Vec<Braid> {
        if m > self.out_pts.len() || n > self.in_pts.len() {
            return vec![];
        }
        let src = union(s, &self.in_pts[..n]);
        let tgt = union(t, &self.out_pts[..m]);
        self.z.hom(&src, &tgt, self.w, self.big())
    }

    pub fn landing(&self, b: &Braid, k: usize) -> Landing {
        let e = self.z.z.end_point(&strand_at(b, self.in_slot(k)).expect("a strand at the slot"));
        match self.out_index(e) {
            Some(r) => Landing::Slot(r),
            None => Landing::Body(e),
        }
    }

    pub fn classes(&self, b: &Braid) -> Classes {
        let (_, n) = self.bidegree(b);
        let lands: Vec<Landing> = (1..=n).map(|k| self.landing(b, k)).collect();
        let a = lands.iter().enumerate().all(|(i, l)| match l {
            Landing::Body(_) => true,
            Landing::Slot(r) => *r + i < n,
        });
        let d = lands.iter().all(|l| matches!(l, Landing::Body(_)));
        let from_slots = restrict(b, &self.in_pts[..n]);
        let to_slots: Vec<usize> = b
            .source
            .iter()
            .zip(&b.strands)
            .filter(|(_, p)| self.out_index(self.z.z.end_point(p)).is_some())
            .map(|(s, _)| *s)
            .collect();
        let e = a && self.z.crossings(&from_slots).is_empty();
        let f = a && self.z.crossings(&restrict(b, &to_slots)).is_empty();
        Classes { a, d, e, f }
    }

    fn slot_perm_strands(&self, pts: &[usize], img: impl Fn(usize) -> usize) -> Vec<Path> {
        (1..=pts.len())
            .map(|i| {
                let (x, y) = (self.z.z.points[pts[i - 1]][0], self.z.z.points[pts[img(i) - 1]][0]);
                let (mx, my) = (&self.z.z.marks[x], &self.z.z.marks[y]);
                self.z.z.path(mx.comp, mx.local as i64, my.local as i64)
            })
            .collect()
    }

    /// `(T_a ∧ T_b) · σ` for `σ ∈ E_{m,n}`, `a ∈ S_m`, `b ∈ S_n`.
    pub fn act_h(&self, a: &Perm, b: &Perm, sigma: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let (m, n) = self.bidegree(sigma);
        let c = &self.z;
        let t = minus(&c.target(sigma), &self.out_pts);
        let s = minus(&sigma.source, &self.in_pts);
        let mut left: Vec<Path> = t.iter().map(|&p| c.z.identity_path(p)).collect();
        left.extend(self.slot_perm_strands(&self.out_pts[..m], |i| a.apply(i)));
        let binv = b.inverse();
        let mut right: Vec<Path> = s.iter().map(|&p| c.z.identity_path(p)).collect();
        right.extend(self.slot_perm_strands(&self.in_pts[..n], |i| n + 1 - binv.apply(n + 1 - i)));
        let right = c.braid(right)?;
        let left = c.braid(left)?;
        Ok(mul(c, Some(left), c.product(sigma, &right)?)?)
    }

    /// `α ∗ β = (α ⊠ [i → i+m]) · (β ⊠ [−n'−i → −i])`.
    pub fn star(&self, alpha: &Braid, beta: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let (m, n) = self.bidegree(alpha);
        let (m2, n2) = self.bidegree(beta);
        if m + m2 > self.out_pts.len() || n + n2 > self.in_pts.len() {
            return Err(TwoRepError::MissingSlots {
                end: self.out_end,
                need: (m + m2).max(n + n2),
                have: self.capacity(),
            });
        }
        let c = &self.z;
        let slot_path = |p: usize, q: usize| {
            let (mx, my) = (&c.z.marks[c.z.points[p][0]], &c.z.marks[c.z.points[q][0]]);
            c.z.path(mx.comp, mx.local as i64, my.local as i64)
        };
        let mut l = alpha.strands.clone();
        l.extend((1..=m2).map(|i| slot_path(self.out_slot(i), self.out_slot(i + m))));
        let mut r = beta.strands.clone();
        r.extend((1..=n).map(|i| slot_path(self.in_slot(n2 + i), self.in_slot(i))));
        Ok(c.product(&c.braid(l)?, &c.braid(r)?)?)
    }

    /// `q(α) = β^n ⋯ β^1 · α|_S` in `Z_ξ`, where `β^k` feeds each strand
    /// arriving at `ξ1(r)` through `z0` into the strand of `α` leaving
    /// `ξ2(r − n − 1)`.
    pub fn q(&self, alpha: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let (_, n) = self.bidegree(alpha);
        if !self.classes(alpha).a {
            return Ok(None);
        }
        let zx = &self.zx;
        let s = minus(&alpha.source, &self.in_pts);
        let mut cur = self.map_braid(&restrict(alpha, &s))?;
        let slot_img: Vec<usize> = self.out_pts.iter().map(|&p| self.point_map[p]).collect();
        loop {
            let tgt = zx.target(&cur);
            if !tgt.iter().any(|p| slot_img[..n].contains(p)) {
                return Ok(Some(cur));
            }
            let mut strands = Vec::new();
            for &p in &tgt {
                match slot_img[..n].iter().position(|&x| x == p) {
                    None => strands.push(zx.z.identity_path(p)),
                    Some(i) => {
                        let r = i + 1;
                        let k = n + 1 - r;
                        let conn = zx.braid(vec![self.connector(r, k)])?;
                        let next = zx.braid(vec![self.map_path(&strand_at(alpha, self.in_slot(k)).unwrap())])?;
                        match zx.product(&next, &conn)? {
                            Some(b) => strands.push(b.strands[0]),
                            None => return Ok(None),
                        }
                    }
                }
            }
            match zx.product(&zx.braid(strands)?, &cur)? {
                Some(c) => cur = c,
                None => return Ok(None),
            }
        }
    }

    /// `C_n(T,S)`, the image of `C_1^{∗n}`, with `C_0 = G_0` and
    /// `C_1 = A_1`.
    pub fn c_set(&self, t: &[usize], s: &[usize], n: usize) -> Result<BTreeSet<Braid>, TwoRepError> {
        match n {
            0 => Ok(self.e_set(t, s, 0, 0).into_iter().collect()),
            1 => Ok(self.e_set(t, s, 1, 1).into_iter().filter(|b| self.classes(b).a).collect()),
            _ => {
                let mut out = BTreeSet::new();
                for u in subsets_of_size(&self.m, s.len()) {
                    let tail = self.c_set(&u, s, n - 1)?;
                    if tail.is_empty() {
                        continue;
                    }
                    for a in self.c_set(t, &u, 1)? {
                        for b in &tail {
                            if let Some(x) = self.star(&a, b)? {
                                out.insert(x);
                            }
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// The `∼` classes of `G_n(T,S)` as class ids per element, the zero
    /// class being `usize::MAX`.
    fn sim_classes(&self, g: &[Braid], rep: &mut CheckReport) -> Result<Vec<usize>, TwoRepError> {
        let idx: BTreeMap<&Braid, usize> = g.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let zero = g.len();
        let mut uf = UnionFind::new(g.len() + 1);
        let node = |x: &Option<Braid>, rep: &mut CheckReport| match x {
            None => Some(zero),
            Some(b) => {
                let k = idx.get(b).copied();
                rep.check(k.is_some(), || "H action leaves G_n".into());
                k
            }
        };
        for (i, b) in g.iter().enumerate() {
            let (_, n) = self.bidegree(b);
            if !self.classes(b).a {
                uf.union(i, zero);
            }
            for j in 1..n {
                let s = Perm::simple(n, j);
                let l = self.act_h(&s, &Perm::identity(n), b)?;
                let r = self.act_h(&Perm::identity(n), &s, b)?;
                if let (Some(x), Some(y)) = (node(&l, rep), node(&r, rep)) {
                    uf.union(x, y);
                }
            }
        }
        let z = uf.find(zero);
        Ok((0..g.len()).map(|i| if uf.find(i) == z { usize::MAX } else { uf.find(i) }).collect())
    }

    /// The `∼'` classes on `C_n(T,S)`, generated by
    /// `α'∗(T_1α)∗α'' ∼' α'∗(αT_1)∗α''` with `α ∈ D_2`, `α', α'' ∈ C`.
    fn sim_prime_classes(
        &self,
        t: &[usize],
        s: &[usize],
        n: usize,
        c: &[Braid],
        rep: &mut CheckReport,
    ) -> Result<Vec<usize>, TwoRepError> {
        let idx: BTreeMap<&Braid, usize> = c.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let zero = c.len();
        let mut uf = UnionFind::new(c.len() + 1);
        if n >= 2 {
            let (s1, e) = (Perm::simple(2, 1), Perm::identity(2));
            for n1 in 0..=n - 2 {
                let n2 = n - 2 - n1;
                for u1 in subsets_of_size(&self.m, s.len()) {
                    let left = self.c_set(t, &u1, n1)?;
                    if left.is_empty() {
                        continue;
                    }
                    for u2 in subsets_of_size(&self.m, s.len()) {
                        let right = self.c_set(&u2, s, n2)?;
                        if right.is_empty() {
                            continue;
                        }
                        for mid in self.e_set(&u1, &u2, 2, 2) {
                            if !self.classes(&mid).d {
                                continue;
                            }
                            let x1 = self.act_h(&s1, &e, &mid)?;
                            let x2 = self.act_h(&e, &s1, &mid)?;
                            for a in &left {
                                for b in &right {
                                    let mut ends = Vec::new();
                                    for x in [&x1, &x2] {
                                        let y = match x {
                                            None => None,
                                            Some(x) => match self.star(a, x)? {
                                                None => None,
                                                Some(ax) => self.star(&ax, b)?,
                                            },
                                        };
                                        ends.push(match y {
                                            None => Some(zero),
                                            Some(y) => idx.get(&y).copied(),
                                        });
                                    }
                                    // a side outside C gives no relation on C
                                    if ends.iter().any(|e| e.is_none()) {
                                        rep.count("relations_leaving_C", 1);
                                    }
                                    if let (Some(x), Some(y)) = (ends[0], ends[1]) {
                                        uf.union(x, y);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let z = uf.find(zero);
        Ok((0..c.len()).map(|i| if uf.find(i) == z { usize::MAX } else { uf.find(i) }).collect())
    }

    /// `Hom_{Z_ξ}(S,T)` with `μ(z0) = n`, for `n ≤ nmax`.
    pub fn glued_hom(&self, s: &[usize], t: &[usize], nmax: usize) -> Vec<Vec<Braid>> {
        let sx: Vec<usize> = s.iter().map(|&p| self.point_map[p]).collect();
        let tx: Vec<usize> = t.iter().map(|&p| self.point_map[p]).collect();
        let mx = self.zx.z.marks.len();
        let w = self.w.max(nmax + 1);
        let len = (w + 1) * mx * s.len().max(1) + mx * mx;
        let mut out = vec![Vec::new(); nmax + 1];
        for b in self.zx.hom(&sx, &tx, w, len) {
            let mu = self.zx.mu_braid(&b, self.z0);
            if mu <= nmax {
                out[mu].push(b);
            }
        }
        out
    }

    /// The morphisms of `Δ_E` from `S` to `T` with `n` slots.
    pub fn delta_hom(&self, t: &[usize], s: &[usize], n: usize) -> Result<Vec<DeltaMorphism>, TwoRepError> {
        let g = self.e_set(t, s, n, n);
        let mut dummy = CheckReport::new("delta");
        let cls = self.sim_classes(&g, &mut dummy)?;
        let c = self.c_set(t, s, n)?;
        let mut best: BTreeMap<usize, &Braid> = BTreeMap::new();
        for (b, &k) in g.iter().zip(&cls) {
            if k == usize::MAX || !self.classes(b).f || !c.contains(b) {
                continue;
            }
            let e = best.entry(k).or_insert(b);
            if self.z.encode(b) < self.z.encode(e) {
                *e = b;
            }
        }
        let mut out = Vec::new();
        for b in best.into_values() {
            if let Some(image) = self.q(b)? {
                out.push(DeltaMorphism { n, rep: b.clone(), image });
            }
        }
        Ok(out)
    }

    /// All gluing checks on objects of size at most `smax` and `n ≤ nmax`:
    /// `q` is constant on `∼` classes and identifies `G_n/∼` with the
    /// morphisms of `Z_ξ` crossing `z0` exactly `n` times; `∼'` on `C_n`
    /// agrees with `∼`; `q` is injective on `E_n` and `F_n` and already
    /// surjective from `E_n ∩ C_n` and `F_n ∩ C_n`; `E_n, F_n ⊂ C_n`;
    /// every nonzero class meets `E` and `F`; `q` commutes with `d`.
    #[allow(clippy::needless_range_loop)]
    pub fn glue_check(&self, nmax: usize, smax: usize) -> Result<CheckReport, TwoRepError> {
        let mut rep = CheckReport::new("glue");
        if nmax > self.capacity() {
            return Err(TwoRepError::MissingSlots { end: self.out_end, need: nmax, have: self.capacity() });
        }
        let objs = StrandCat::objects(&self.m, 0..=smax);
        for s in &objs {
            for t in objs.iter().filter(|t| t.len() == s.len()) {
                let strata = self.glued_hom(s, t, nmax);
                for n in 0..=nmax {
                    let tag = format!("n={n} S={s:?} T={t:?}");
                    let g = self.e_set(t, s, n, n);
                    rep.count(&format!("G{n}"), g.len());
                    let qs: Vec<Option<Braid>> = g.iter().map(|b| self.q(b)).collect::<Result<_, _>>()?;
                    let cls = self.sim_classes(&g, &mut rep)?;
                    let kinds: Vec<Classes> = g.iter().map(|b| self.classes(b)).collect();

                    // q is constant on classes and separates them
                    let mut image: BTreeMap<usize, Option<Braid>> = BTreeMap::new();
                    for (i, &k) in cls.iter().enumerate() {
                        let prev = image.entry(k).or_insert_with(|| qs[i].clone());
                        rep.check(*prev == qs[i], || format!("{tag}: q not constant on a class"));
                    }
                    if let Some(v) = image.get(&usize::MAX) {
                        rep.check(v.is_none(), || format!("{tag}: zero class has nonzero image"));
                    }
                    let nonzero: Vec<&Braid> =
                        image.iter().filter(|(k, _)| **k != usize::MAX).filter_map(|(_, v)| v.as_ref()).collect();
                    let nz_classes = image.keys().filter(|k| **k != usize::MAX).count();
                    rep.check(nonzero.len() == nz_classes, || format!("{tag}: a nonzero class maps to 0"));
                    let got: BTreeSet<&Braid> = nonzero.iter().copied().collect();
                    rep.check(got.len() == nonzero.len(), || format!("{tag}: two classes with the same image"));
                    let want: BTreeSet<&Braid> = strata[n].iter().collect();
                    rep.check(got == want, || {
                        format!("{tag}: image has {} morphisms, Z_ξ has {} with μ = {n}", got.len(), want.len())
                    });
                    rep.count(&format!("classes{n}"), nz_classes);
                    rep.count(&format!("hom{n}"), want.len());

                    // E and F
                    let c: BTreeSet<Braid> = self.c_set(t, s, n)?;
                    for (name, pick) in [("E", 0usize), ("F", 1)] {
                        let sel: Vec<usize> =
                            (0..g.len()).filter(|&i| if pick == 0 { kinds[i].e } else { kinds[i].f }).collect();
                        let imgs: BTreeSet<&Braid> = sel.iter().filter_map(|&i| qs[i].as_ref()).collect();
                        rep.check(imgs.len() == sel.len(), || format!("{tag}: q not injective on {name}"));
                        for &i in &sel {
                            rep.check(c.contains(&g[i]), || format!("{tag}: {name} element outside C"));
                        }
                        let from_c: BTreeSet<&Braid> =
                            sel.iter().filter(|&&i| c.contains(&g[i])).filter_map(|&i| qs[i].as_ref()).collect();
                        rep.check(from_c == want, || format!("{tag}: q not onto from {name} ∩ C"));
                        let hit: BTreeSet<usize> = sel.iter().map(|&i| cls[i]).collect();
                        for k in image.keys().filter(|k| **k != usize::MAX) {
                            rep.check(hit.contains(k), || format!("{tag}: a class misses {name}"));
                        }
                    }

                    // ∼' on C agrees with q
                    let cv: Vec<Braid> = c.iter().cloned().collect();
                    let cp = self.sim_prime_classes(t, s, n, &cv, &mut rep)?;
                    let qc: Vec<Option<Braid>> = cv.iter().map(|b| self.q(b)).collect::<Result<_, _>>()?;
                    for i in 0..cv.len() {
                        rep.check((cp[i] == usize::MAX) == qc[i].is_none(), || format!("{tag}: ∼' zero class differs"));
                        for j in i + 1..cv.len() {
                            if cp[i] != usize::MAX && cp[j] != usize::MAX {
                                rep.check((cp[i] == cp[j]) == (qc[i] == qc[j]), || format!("{tag}: ∼' differs from q"));
                            }
                        }
                    }
                    rep.count(&format!("C{n}"), cv.len());

                    // differential; on B only recorded, since B need not be
                    // stable under d once the two ends lie on one component
                    for ((b, qb), k) in g.iter().zip(&qs).zip(&kinds) {
                        let lhs: F2Sum<Braid> = self
                            .z
                            .differential(b)
                            .iter()
                            .map(|x| self.q(x))
                            .collect::<Result<Vec<_>, _>>()?
                            .into_iter()
                            .flatten()
                            .collect();
                        let rhs = qb.as_ref().map(|x| self.zx.differential(x)).unwrap_or_else(F2Sum::zero);
                        if k.a {
                            rep.check(lhs == rhs, || format!("{tag}: q ∘ d ≠ d ∘ q at {}", self.z.encode(b)));
                        } else if lhs != rhs {
                            rep.count("d_mismatch_on_B", 1);
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `q(α ∗ β) = q(α) q(β)`, associativity of `∗`, and
    /// `(T_a ∧ T_b)α ∗ (T_a' ∧ T_b')β = (T_{a⊗a'} ∧ T_{b⊗b'})(α ∗ β)`.
    pub fn product_check(&self, nmax: usize, smax: usize) -> Result<CheckReport, TwoRepError> {
        let mut rep = CheckReport::new("glue_products");
        let objs = StrandCat::objects(&self.m, 0..=smax);
        let mut g: BTreeMap<(Vec<usize>, Vec<usize>, usize), Vec<Braid>> = BTreeMap::new();
        for s in &objs {
            for t in objs.iter().filter(|t| t.len() == s.len()) {
                for n in 0..=nmax {
                    g.insert((t.clone(), s.clone(), n), self.e_set(t, s, n, n));
                }
            }
        }
        for ((_, u, n1), left) in &g {
            for ((u2, s, n2), right) in &g {
                if u2 != u || n1 + n2 > nmax {
                    continue;
                }
                for a in left {
                    let qa = self.q(a)?;
                    for b in right {
                        let ab = self.star(a, b)?;
                        let lhs = match &ab {
                            Some(x) => self.q(x)?,
                            None => None,
                        };
                        let rhs = mul(&self.zx, qa.clone(), self.q(b)?)?;
                        rep.check(lhs == rhs, || {
                            format!("q(α∗β) ≠ q(α)q(β) for {} and {}", self.z.encode(a), self.z.encode(b))
                        });
                        for pa in Perm::all(*n1) {
                            for pb in Perm::all(*n2) {
                                let (pn, id1, id2) = (n1 + n2, Perm::identity(*n1), Perm::identity(*n2));
                                let big = pa.embed(pn).compose(&pb.shift(*n1));
                                let lhs_l = match (self.act_h(&pa, &id1, a)?, self.act_h(&pb, &id2, b)?) {
                                    (Some(x), Some(y)) => self.star(&x, &y)?,
                                    _ => None,
                                };
                                let rhs_l = match &ab {
                                    Some(x) => self.act_h(&big, &Perm::identity(pn), x)?,
                                    None => None,
                                };
                                rep.check(lhs_l == rhs_l, || format!("left H action not compatible with ∗ ({pa:?}, {pb:?})"));
                                let lhs_r = match (self.act_h(&id1, &pa, a)?, self.act_h(&id2, &pb, b)?) {
                                    (Some(x), Some(y)) => self.star(&x, &y)?,
                                    _ => None,
                                };
                                let rhs_r = match &ab {
                                    Some(x) => self.act_h(&Perm::identity(pn), &big, x)?,
                                    None => None,
                                };
                                rep.check(lhs_r == rhs_r, || format!("right H action not compatible with ∗ ({pa:?}, {pb:?})"));
                            }
                        }
                        for ((s2, _, n3), last) in &g {
                            if s2 != s || n1 + n2 + n3 > nmax {
                                continue;
                            }
                            for c in last {
                                let l = match &ab {
                                    Some(ab) => self.star(ab, c)?,
                                    None => None,
                                };
                                let r = match self.star(b, c)? {
                                    Some(bc) => self.star(a, &bc)?,
                                    None => None,
                                };
                                rep.check(l == r, || "∗ is not associative".into());
                            }
                        }
                    }
                }
            }
        }
        Ok(rep)
    }
}

// ---------------------------------------------------------------------------
// The tensor algebra of M_s

/// A basis element `T_{u_0} ⊗ ⋯ ⊗ T_{u_{k−1}} ⊗ T_w` of
/// `M_s^{⊗k} = H_s ⊗_{H_{s−1}} ⋯ ⊗_{H_{s−1}} H_s`, where `H_{s−1}` acts on
/// the right of a factor through `T_i ↦ T_{i+1}` and on the left of the next
/// factor through `T_i ↦ T_i`. Each `u_i` is the shortest element of its
/// coset modulo the permutations fixing 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord {
    pub cosets: Vec<Perm>,
    pub tail: Perm,
}

impl TensorWord {
    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    pub fn length(&self) -> usize {
        self.cosets.iter().map(|u| u.length()).sum::<usize>() + self.tail.length()
    }

    fn factors(&self) -> Vec<Perm> {
        let mut v = self.cosets.clone();
        v.push(self.tail.clone());
        v
    }
}

/// `x = u ∘ f_1(v)` with `u` shortest in `x·Stab(1)` and `v ∈ S_{s−1}`.
fn coset_split(x: &Perm) -> (Perm, Perm) {
    let s = x.n();
    let first = x.apply(1);
    let mut images = vec![first];
    images.extend((1..=s).filter(|&j| j != first));
    let u = Perm::new(images).expect("a permutation");
    let v = u.inverse().compose(x);
    let v = Perm::new((2..=s).map(|i| v.apply(i) - 1).collect()).expect("fixes 1");
    (u, v)
}

/// Normal form of `f_0 ⊗ f_1 ⊗ ⋯ ⊗ f_k`, or `None` when it vanishes.
pub fn tensor_normal_form(factors: &[Perm]) -> Option<TensorWord> {
    let s = factors[0].n();
    let mut carry = factors[0].clone();
    let mut cosets = Vec::new();
    for f in &factors[1..] {
        let (u, v) = coset_split(&carry);
        cosets.push(u);
        carry = hecke::mult_basis(&v.embed(s), f)?;
    }
    Some(TensorWord { cosets, tail: carry })
}

/// The basis of `M_s^{⊗k}`.
pub fn tensor_basis(s: usize, k: usize) -> Vec<TensorWord> {
    let reps: Vec<Perm> = Perm::all(s).into_iter().filter(|p| coset_split(p).1.is_identity()).collect();
    let mut out: Vec<Vec<Perm>> = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|w| reps.iter().map(move |u| [w.clone(), vec![u.clone()]].concat())).collect();
    }
    let mut basis: Vec<TensorWord> = out
        .into_iter()
        .flat_map(|c| Perm::all(s).into_iter().map(move |t| TensorWord { cosets: c.clone(), tail: t }))
        .collect();
    basis.sort();
    basis
}

/// `x ⊗ y` for factor lists: the last factor of `x` meets the first of `y`.
fn concat_factors(x: &[Perm], y: &[Perm]) -> Option<Vec<Perm>> {
    let mid = hecke::mult_basis(x.last().unwrap(), &y[0])?;
    let mut v = x[..x.len() - 1].to_vec();
    v.push(mid);
    v.extend(y[1..].iter().cloned());
    Some(v)
}

pub fn tensor_product(x: &TensorWord, y: &TensorWord) -> Option<TensorWord> {
    tensor_normal_form(&concat_factors(&x.factors(), &y.factors())?)
}

pub fn tensor_differential(x: &TensorWord) -> F2Sum<TensorWord> {
    let f = x.factors();
    let mut out = F2Sum::zero();
    for i in 0..f.len() {
        for t in hecke::d_basis(&f[i]).iter() {
            let mut g = f.clone();
            g[i] = t.clone();
            if let Some(w) = tensor_normal_form(&g) {
                out.toggle(w);
            }
        }
    }
    out
}

/// `a_0 ⊗ a_1 ⊗ ⋯ ⊗ a_k ↦ a_0 c a_1 c ⋯ c a_k` in `Ĥ_s^+`.
pub fn theta_image(x: &TensorWord) -> F2Sum<AffinePerm> {
    let s = x.tail.n();
    let c = F2Sum::single(AffinePerm::c(s));
    let f = x.factors();
    let mut acc = F2Sum::single(AffinePerm::from_perm(&f[0]));
    for a in &f[1..] {
        acc = hecke::mult(&hecke::mult(&acc, &c), &F2Sum::single(AffinePerm::from_perm(a)));
    }
    acc
}

/// `κ = 1⊗1⊗1⊗T_{s−1} + T_1⊗1⊗1⊗1` as three-factor lists (the middle pair
/// multiplied out).
fn kappa_terms(s: usize) -> Vec<Vec<Perm>> {
    if s < 2 {
        return vec![];
    }
    let e = Perm::identity(s);
    vec![vec![e.clone(), e.clone(), Perm::simple(s, s - 1)], vec![Perm::simple(s, 1), e.clone(), e]]
}

/// `T_{H_s}(M_s)/(κ) → Ĥ_s^+` in c-degrees `≤ c_bound`: per c-degree and
/// length, the quotient has the dimension of the positive elements, the map
/// kills exactly the ideal, and it is multiplicative and commutes with `d`.
pub fn theta_check(s: usize, c_bound: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("theta_s{s}_c{c_bound}"));
    let bases: Vec<Vec<TensorWord>> = (0..=c_bound).map(|k| tensor_basis(s, k)).collect();
    let kappa = kappa_terms(s);
    for k in 0..=c_bound {
        let basis = &bases[k];
        let index: BTreeMap<&TensorWord, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let positive = AffinePerm::positive_of_degree(s, k as i64);
        let pindex: BTreeMap<&AffinePerm, usize> = positive.iter().enumerate().map(|(i, w)| (w, i)).collect();

        // ideal generators x ⊗ κ ⊗ y
        let mut ideal: Vec<F2Sum<TensorWord>> = Vec::new();
        if k >= 2 {
            for a in 0..=k - 2 {
                for x in &bases[a] {
                    for y in &bases[k - 2 - a] {
                        let mut g = F2Sum::zero();
                        for t in &kappa {
                            let w = concat_factors(&x.factors(), t)
                                .and_then(|v| concat_factors(&v, &y.factors()))
                                .and_then(|v| tensor_normal_form(&v));
                            if let Some(w) = w {
                                g.toggle(w);
                            }
                        }
                        if !g.is_zero() {
                            ideal.push(g);
                        }
                    }
                }
            }
        }
        for g in &ideal {
            let img: F2Sum<AffinePerm> = g.map_linear(theta_image);
            rep.check(img.is_zero(), || format!("k={k}: Θ does not kill {g:?}"));
        }

        let lmax = basis.iter().map(|w| w.length()).max().unwrap_or(0);
        for l in 0..=lmax {
            let block: Vec<&TensorWord> = basis.iter().filter(|w| w.length() == l).collect();
            let pos_l = positive.iter().filter(|p| p.length() == l).count();
            let frows: Vec<Vec<u64>> = block
                .iter()
                .map(|w| {
                    let cols: Vec<usize> = theta_image(w).iter().map(|p| pindex[p]).collect();
                    bit_row(positive.len(), cols)
                })
                .collect();
            let rank_f = f2_rank(frows);
            let irows: Vec<Vec<u64>> = ideal
                .iter()
                .filter(|g| g.iter().next().is_some_and(|w| w.length() == l))
                .map(|g| bit_row(basis.len(), g.iter().map(|w| index[w])))
                .collect();
            let rank_i = f2_rank(irows);
            let quotient = block.len() - rank_i;
            rep.check(rank_f == pos_l, || format!("k={k} ℓ={l}: Θ has rank {rank_f}, {pos_l} positive elements"));
            rep.check(quotient == pos_l, || format!("k={k} ℓ={l}: quotient dimension {quotient}, expected {pos_l}"));
            rep.count(&format!("dim_c{k}_l{l}"), quotient);
        }
        rep.count(&format!("dim_c{k}"), positive.len());

        // differential
        for w in basis {
            let lhs: F2Sum<AffinePerm> = tensor_differential(w).map_linear(theta_image);
            let rhs = hecke::differential(&theta_image(w));
            rep.check(lhs == rhs, || format!("Θ ∘ d ≠ d ∘ Θ at {w:?}"));
        }
        if k == 2 && s >= 2 {
            // d κ lies in the ideal
            let mut dk = F2Sum::zero();
            for t in &kappa {
                let w = tensor_normal_form(t).unwrap();
                dk.add_assign(&tensor_differential(&w));
            }
            let mut rows: Vec<Vec<u64>> =
                ideal.iter().map(|g| bit_row(basis.len(), g.iter().map(|w| index[w]))).collect();
            let r0 = f2_rank(rows.clone());
            rows.push(bit_row(basis.len(), dk.iter().map(|w| index[w])));
            rep.check(f2_rank(rows) == r0, || "d κ is not in the ideal".into());
        }
    }

    // products
    for a in 0..=c_bound {
        for b in 0..=c_bound - a {
            for x in &bases[a] {
                let fx = theta_image(x);
                for y in &bases[b] {
                    let lhs = F2Sum::from_option(tensor_product(x, y)).map_linear(theta_image);
                    let rhs = hecke::mult(&fx, &theta_image(y));
                    rep.check(lhs == rhs, || format!("Θ(xy) ≠ Θ(x)Θ(y) at {x:?}, {y:?}"));
                }
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Diagonal action

mod diagonal;
pub use diagonal::*;

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_with_ray(slots: usize) -> EndContext {
        let spec = r#"{"components":[{"kind":"Line","marks":["1","2","3","4"],"oriented":[["0","9/2"]]}],
            "matching":[[1,3],[2,4]],
            "rayEnds":[{"component":0,"side":"right","role":"outgoing","base":"5","slots":SLOTS}]}"#
            .replace("SLOTS", &slots.to_string());
        EndContext::new(StrandCat::from_json(&spec).unwrap(), 0).unwrap()
    }

    #[test]
    fn u_is_nil_hecke() {
        let rep = u_category(3);
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(rep.counts["dim3"], 6);
    }

    #[test]
    fn line_instances() {
        for side in [BimoduleSide::LPlus, BimoduleSide::LMinus, BimoduleSide::RPlus, BimoduleSide::RMinus] {
            for (r, n) in [(0, 1), (1, 1), (0, 2), (1, 2), (2, 1), (0, 3)] {
                let rep = line_instance_check(side, r, n);
                assert!(rep.ok(), "{side:?} {r} {n}: {:?}", rep.failures);
            }
        }
    }

    #[test]
    fn torus_end_action() {
        let ctx = torus_with_ray(2);
        let rep = ctx.equivariance_check(2, 1, 1, 6).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        let rep = ctx.equivariance_check(2, 2, 1, 6).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
    }

    #[test]
    fn torus_decomposition() {
        let ctx = torus_with_ray(2);
        let m = ctx.m.clone();
        for n in 0..=2 {
            for s in StrandCat::objects(&m, n..=2) {
                for t in StrandCat::objects(&m, s.len() - n..=s.len() - n) {
                    let rep = ctx.decompose(&t, &s, n, 1, 8).unwrap();
                    assert!(rep.ok(), "n={n} S={s:?} T={t:?}: {:?}", rep.failures);
                }
            }
        }
    }

    #[test]
    fn duality_on_lines() {
        for oriented in [false, true] {
            let ctx = DualContext::line(3, 2, oriented);
            let rep = ctx.duality_check(3, 2).unwrap();
            assert!(rep.ok(), "oriented={oriented}: {:?}", rep.failures);
            let rep = ctx.zigzag_check(2).unwrap();
            assert!(rep.ok(), "oriented={oriented}: {:?}", rep.failures);
        }
    }

    #[test]
    fn kappa_examples() {
        let ctx = DualContext::line(1, 1, true);
        let c = &ctx.cat;
        let t = ctx.m[0];
        let through = c.braid(vec![c.z.identity_path(t), ctx.segment(ctx.tilde(-1), ctx.tilde(1))]).unwrap();
        assert_eq!(ctx.kappa(1, &through).unwrap(), Some(c.identity(&[t])));
        let swap = c.braid(vec![ctx.segment(t, ctx.tilde(1)), ctx.segment(ctx.tilde(-1), t)]).unwrap();
        assert_eq!(ctx.kappa(1, &swap).unwrap(), None);
    }

    #[test]
    fn theta_small() {
        for (s, c) in [(1, 3), (2, 2), (3, 2)] {
            let rep = theta_check(s, c);
            assert!(rep.ok(), "s={s}: {:?}", rep.failures);
        }
        let rep = theta_check(1, 3);
        for k in 0..=3 {
            assert_eq!(rep.counts[&format!("dim_c{k}")], 1);
        }
    }

    #[test]
    fn tensor_normal_form_moves_generators() {
        // T_{i+1} ⊗ 1 = 1 ⊗ T_i
        let s = 4;
        let e = Perm::identity(s);
        for i in 1..s - 1 {
            let l = tensor_normal_form(&[Perm::simple(s, i + 1), e.clone()]);
            let r = tensor_normal_form(&[e.clone(), Perm::simple(s, i)]);
            assert_eq!(l, r);
        }
        assert_eq!(tensor_basis(3, 2).len(), 9 * 6);
    }

    #[test]
    fn glue_two_intervals() {
        for matching in [vec![], vec![[2, 3]], vec![[1, 4]]] {
            let ctx = GluedContext::from_spec(intervals_spec(2, 2, 2, matching.clone()), 2).unwrap();
            assert_eq!(ctx.zx.z.components.len(), 1);
            let rep = ctx.glue_check(2, 2).unwrap();
            assert!(rep.ok(), "{matching:?}: {:?}", rep.failures);
            assert!(rep.counts["hom1"] > 0 && rep.counts["hom2"] > 0);
            let rep = ctx.product_check(2, 1).unwrap();
            assert!(rep.ok(), "{matching:?}: {:?}", rep.failures);
        }
    }

    #[test]
    fn self_glue_to_circle() {
        for matching in [vec![], vec![[1, 2]]] {
            let ctx = GluedContext::from_spec(self_glue_spec(2, 2, matching.clone()), 2).unwrap();
            assert_eq!(ctx.zx.z.components[0].topology, Topology::Circle);
            let rep = ctx.glue_check(2, 2).unwrap();
            assert!(rep.ok(), "{matching:?}: {:?}", rep.failures);
            let rep = ctx.product_check(2, 1).unwrap();
            assert!(rep.ok(), "{matching:?}: {:?}", rep.failures);
        }
    }

    #[test]
    fn empty_m_has_only_identities() {
        let ctx = GluedContext::from_spec(self_glue_spec(0, 2, vec![]), 2).unwrap();
        assert!(ctx.m.is_empty());
        let rep = ctx.glue_check(2, 0).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(rep.counts["hom0"], 1);
        assert_eq!(rep.counts["classes1"] + rep.counts["classes2"], 0);
    }

    #[test]
    fn delta_representatives() {
        let ctx = GluedContext::from_spec(self_glue_spec(2, 2, vec![]), 2).unwrap();
        let m = ctx.m.clone();
        for n in 0..=2 {
            let hom = ctx.glued_hom(&m[..1], &m[..1], 2);
            let delta = ctx.delta_hom(&m[..1], &m[..1], n).unwrap();
            let images: BTreeSet<Braid> = delta.iter().map(|d| d.image.clone()).collect();
            assert_eq!(images, hom[n].iter().cloned().collect());
            for d in &delta {
                assert!(ctx.classes(&d.rep).f);
                assert_eq!(ctx.zx.mu_braid(&d.image, ctx.z0), n);
            }
        }
    }

    // Three passes through z0 on the self-glued circle: the crossing of the
    // slot strands can be moved across z0 only on one side, and q sees a
    // nonzero braid where the other side is zero.
    #[test]
    fn self_glue_three_passes() {
        let ctx = GluedContext::from_spec(self_glue_spec(2, 3, vec![]), 2).unwrap();
        let c = &ctx.z;
        let (x1, x2) = (ctx.m[0], ctx.m[1]);
        let seg = |p: usize, q: usize| {
            let (a, b) = (&c.z.marks[c.z.points[p][0]], &c.z.marks[c.z.points[q][0]]);
            c.z.path(a.comp, a.local as i64, b.local as i64)
        };
        let sigma = c
            .braid(vec![
                seg(x1, ctx.out_slot(1)),
                seg(x2, ctx.out_slot(3)),
                seg(ctx.in_slot(1), ctx.out_slot(2)),
                seg(ctx.in_slot(2), x2),
                seg(ctx.in_slot(3), x1),
            ])
            .unwrap();
        let (s1, e) = (Perm::simple(3, 1), Perm::identity(3));
        assert_eq!(ctx.act_h(&s1, &e, &sigma).unwrap(), None);
        let right = ctx.act_h(&e, &s1, &sigma).unwrap().unwrap();
        assert!(ctx.classes(&right).a);
        assert!(ctx.q(&right).unwrap().is_some());
    }
}

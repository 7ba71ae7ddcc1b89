//! The diagonal action on a disjoint union `Z = Z1 ⊔ Z2`.
//!
//! `Z1` is a line with an outgoing right end `ξ1^+` and an incoming left end
//! `ξ1^−`, `Z2` carries an incoming left end `ξ2^−`. Gluing `ξ1^+` to `ξ2^−`
//! gives `Z_ξ`, whose remaining left end is `ξ^−`. The maps `λ`, `σ`, `ρ`,
//! `u`, `ε`, `f1`, `f2` and the block endomorphism `τ` are implemented by
//! their explicit formulas on normal forms and compared with the action of
//! `R_{ξ^−}` on `Z_ξ`.
//!
//! Tensor products over `S_M(Z)` are stored as words `[h_1, …, h_{k−1}, y]`
//! where every `h_j ∈ R_{ξ_i^−}(U_{j−1}, U_j)` is a head `id ⊠ [ξ_i^−(−1) → t]`
//! and only the last factor is arbitrary. Any word reduces to this form by
//! pushing `x|_U` to the right.

use super::*;

/// Kind of the last factor of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// `R_{ξ_i^−}` on `Z`.
    R,
    /// `L_{ξ1^+}` on `Z`.
    L,
    /// `Hom_{S(Z_ξ)}`.
    X,
}

pub type Word = Vec<Braid>;

/// Two lines, the first with `k1` marks in `(−1/2, 1/2)` and ends `ξ1^+`,
/// `ξ1^−`, the second with `k2` marks and the end `ξ2^−`.
pub fn diagonal_spec(k1: usize, k2: usize, slots: usize) -> DiagramFile {
    let marks1 = (1..=k1).map(|i| format!("{}/{}", 2 * i as i64 - k1 as i64 - 1, 2 * k1 + 2)).collect();
    DiagramFile {
        components: vec![
            ComponentSpec::Line { marks: marks1, oriented: vec![[Some("-1/2".into()), Some("1/2".into())]] },
            ComponentSpec::Line {
                marks: (1..=k2).map(|i| i.to_string()).collect(),
                oriented: vec![[Some("1/2".into()), None]],
            },
        ],
        matching: vec![],
        ray_ends: vec![
            RayEndSpec { component: 0, side: Side::Right, role: Role::Outgoing, base: "3/4".into(), slots },
            RayEndSpec { component: 0, side: Side::Left, role: Role::Incoming, base: "-3/4".into(), slots },
            RayEndSpec { component: 1, side: Side::Left, role: Role::Incoming, base: "0".into(), slots },
        ],
    }
}

#[derive(Clone, Debug)]
pub struct DiagonalContext {
    /// `Z` with `ξ1^+` glued to `ξ2^−`.
    pub glued: GluedContext,
    pub plus1: usize,
    pub minus1: usize,
    pub minus2: usize,
    /// `ξ^−` among the ray ends of `Z_ξ`.
    pub minus: usize,
}

impl DiagonalContext {
    pub fn new(cat: StrandCat, plus1: usize, minus1: usize, minus2: usize) -> Result<Self, TwoRepError> {
        let ends = &cat.z.ray_ends;
        let get = |e: usize| ends.get(e).ok_or_else(|| TwoRepError::Hypothesis(format!("no ray end {e}")));
        let (ep, e1, e2) = (get(plus1)?, get(minus1)?, get(minus2)?);
        if ep.side != Side::Right || ep.role != Role::Outgoing {
            return Err(TwoRepError::Hypothesis("ξ1^+ must be an outgoing right end".into()));
        }
        for e in [e1, e2] {
            if e.side != Side::Left || e.role != Role::Incoming {
                return Err(TwoRepError::Hypothesis("ξ1^− and ξ2^− must be incoming left ends".into()));
            }
        }
        if ep.comp != e1.comp {
            return Err(TwoRepError::Hypothesis("ξ1^+ and ξ1^− must lie on one line".into()));
        }
        if ep.comp == e2.comp {
            return Err(TwoRepError::Hypothesis("Z(ξ1^+) = Z(ξ2^−)".into()));
        }
        if cat.z.components[ep.comp].topology != Topology::Line {
            return Err(TwoRepError::Hypothesis("Z(ξ1) must be a line".into()));
        }
        if ep.slots.is_empty() || e1.slots.len() < 2 || e2.slots.len() < 2 {
            return Err(TwoRepError::MissingSlots { end: minus1, need: 2, have: e1.slots.len().min(e2.slots.len()) });
        }
        // both incoming ends act, and nothing runs from ξ2^− to ξ1^+
        EndContext::new(cat.clone(), minus1)?;
        EndContext::new(cat.clone(), minus2)?;
        let (p2, q1) = (cat.z.slot_point(minus2, 1), cat.z.slot_point(plus1, 1));
        if !cat.z.paths_between(p2, q1, 1, usize::MAX / 4).is_empty() {
            return Err(TwoRepError::Hypothesis("an admissible path joins ξ2^−(−1) to ξ1^+(1)".into()));
        }
        let p1 = cat.z.slot_point(minus1, 1);
        let glued = GluedContext::new(cat, plus1, minus2, 0)?;
        let img = glued.point_map[p1];
        let minus = (0..glued.zx.z.ray_ends.len())
            .find(|&e| glued.zx.z.slot_point(e, 1) == img)
            .ok_or_else(|| TwoRepError::Hypothesis("ξ^− lost in the gluing".into()))?;
        Ok(DiagonalContext { glued, plus1, minus1, minus2, minus })
    }

    /// Picks the ends by shape: the outgoing right end, the incoming left end
    /// on its line, and an incoming left end elsewhere.
    pub fn from_spec(spec: DiagramFile) -> Result<Self, TwoRepError> {
        let cat = StrandCat::new(CurveModel::from_spec(spec)?);
        let ends = &cat.z.ray_ends;
        let find = |f: &dyn Fn(usize) -> bool| (0..ends.len()).find(|&e| f(e));
        let plus1 = find(&|e| ends[e].side == Side::Right && ends[e].role == Role::Outgoing)
            .ok_or_else(|| TwoRepError::Hypothesis("no outgoing right end".into()))?;
        let left = |e: usize| ends[e].side == Side::Left && ends[e].role == Role::Incoming;
        let minus1 = find(&|e| left(e) && ends[e].comp == ends[plus1].comp)
            .ok_or_else(|| TwoRepError::Hypothesis("no incoming left end on the line of ξ1^+".into()))?;
        let minus2 = find(&|e| left(e) && ends[e].comp != ends[plus1].comp)
            .ok_or_else(|| TwoRepError::Hypothesis("no incoming left end on another component".into()))?;
        Self::new(cat, plus1, minus1, minus2)
    }

    pub fn intervals(k1: usize, k2: usize, slots: usize) -> Self {
        Self::from_spec(diagonal_spec(k1, k2, slots)).expect("a diagonal context")
    }

    pub fn z(&self) -> &StrandCat {
        &self.glued.z
    }

    pub fn zx(&self) -> &StrandCat {
        &self.glued.zx
    }

    pub fn m(&self) -> &[usize] {
        &self.glued.m
    }

    /// `ξ_i^−(−j)` in `Z`.
    pub fn p(&self, i: usize, j: usize) -> usize {
        self.z().z.slot_point(if i == 1 { self.minus1 } else { self.minus2 }, j)
    }

    /// `ξ1^+(1)` in `Z`.
    pub fn q1(&self) -> usize {
        self.z().z.slot_point(self.plus1, 1)
    }

    /// `ξ^−(−j)` in `Z_ξ`.
    pub fn px(&self, j: usize) -> usize {
        self.zx().z.slot_point(self.minus, j)
    }

    /// An object of `S_M(Z)` seen in `Z_ξ`.
    pub fn obj(&self, s: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|&p| self.glued.point_map[p]).collect();
        v.sort();
        v
    }

    fn big(cat: &StrandCat) -> usize {
        let n = cat.z.marks.len();
        n * n
    }

    /// `R_{ξ_i^−}(T,U) = Hom_Z(U ⊔ ξ_i^−(−1), T)`.
    pub fn r_set(&self, i: usize, t: &[usize], u: &[usize]) -> Vec<Braid> {
        let z = self.z();
        z.hom(&union(u, &[self.p(i, 1)]), t, 0, Self::big(z))
    }

    /// `L_{ξ1^+}(T,U) = Hom_Z(U, T ⊔ ξ1^+(1))`.
    pub fn l_set(&self, t: &[usize], u: &[usize]) -> Vec<Braid> {
        let z = self.z();
        z.hom(u, &union(t, &[self.q1()]), 0, Self::big(z))
    }

    /// `Hom_{S(Z_ξ)}(S,U)`.
    pub fn x_set(&self, s: &[usize], u: &[usize]) -> Vec<Braid> {
        let zx = self.zx();
        zx.hom(&self.obj(s), &self.obj(u), 0, Self::big(zx))
    }

    /// `R_{ξ^−}(T,S,e^n) = Hom_{Z_ξ}(S ⊔ ξ^−(−n..−1), T)`.
    pub fn rx_set(&self, t: &[usize], s: &[usize], n: usize) -> Vec<Braid> {
        let zx = self.zx();
        let slots: Vec<usize> = (1..=n).map(|j| self.px(j)).collect();
        zx.hom(&union(&self.obj(s), &slots), &self.obj(t), 0, Self::big(zx))
    }

    /// The end (`1` or `2`) whose first slot starts a strand of `x`.
    pub fn which(&self, x: &Braid) -> usize {
        if x.source.contains(&self.p(1, 1)) {
            1
        } else {
            2
        }
    }

    /// The single-strand path between two points of one component.
    fn seg(cat: &StrandCat, a: usize, b: usize) -> Path {
        for &x in &cat.z.points[a] {
            let c = cat.z.marks[x].comp;
            if let Some(l) = local_on(cat, b, c) {
                return cat.z.path(c, cat.z.marks[x].local as i64, l);
            }
        }
        panic!("points {a} and {b} share no component")
    }

    fn strand_product(cat: &StrandCat, g: Path, f: Path) -> Result<Option<Path>, TwoRepError> {
        Ok(cat.product(&cat.braid(vec![g])?, &cat.braid(vec![f])?)?.map(|b| b.strands[0]))
    }

    /// `id_{T∖t} ⊠ γ` for a path `γ` ending at `t ∈ T`.
    fn with_identity(cat: &StrandCat, t: &[usize], gamma: Path) -> Result<Braid, TwoRepError> {
        let end = cat.z.end_point(&gamma);
        let mut v: Vec<Path> = minus(t, &[end]).iter().map(|&y| cat.z.identity_path(y)).collect();
        v.push(gamma);
        Ok(cat.braid(v)?)
    }

    /// `x = (id ⊠ x_p)·(x|_U ⊠ id_p)`: the head `id ⊠ x_p` and `x|_U`.
    pub fn split_head(&self, x: &Braid) -> Result<(Braid, Braid), TwoRepError> {
        let z = self.z();
        let p = self.p(self.which(x), 1);
        let xp = strand_at(x, p).expect("a slot strand");
        let head = Self::with_identity(z, &z.target(x), xp)?;
        Ok((head, restrict(x, &minus(&x.source, &[p]))))
    }

    pub fn is_head(&self, x: &Braid) -> bool {
        let rest = minus(&x.source, &[self.p(self.which(x), 1)]);
        rest.iter().all(|&p| strand_at(x, p).is_some_and(|s| s.is_identity()))
    }

    /// `r · y` with `r` a morphism of `S_M(Z)` acting on the last factor.
    fn act_tail(&self, r: &Braid, y: &Braid, tail: Tail) -> Result<Option<Braid>, TwoRepError> {
        let z = self.z();
        Ok(match tail {
            Tail::R => z.product(r, y)?,
            Tail::L => z.product(&boxtimes(z, r, &z.identity(&[self.q1()]))?, y)?,
            Tail::X => self.zx().product(&self.glued.map_braid(r)?, y)?,
        })
    }

    /// The normal form of a word, or zero.
    pub fn nf(&self, mut w: Word, tail: Tail) -> Result<Option<Word>, TwoRepError> {
        let n = w.len();
        for i in 0..n.saturating_sub(1) {
            let (h, rest) = self.split_head(&w[i])?;
            let kind = if i + 2 == n { tail } else { Tail::R };
            match self.act_tail(&rest, &w[i + 1], kind)? {
                Some(y) => {
                    w[i] = h;
                    w[i + 1] = y;
                }
                None => return Ok(None),
            }
        }
        Ok(Some(w))
    }

    fn nf_into(&self, out: &mut F2Sum<Word>, w: Word, tail: Tail) -> Result<(), TwoRepError> {
        if let Some(x) = self.nf(w, tail)? {
            out.toggle(x);
        }
        Ok(())
    }

    /// Heads `id ⊠ [ξ_i^−(−1) → t]` in `R_{ξ_i^−}(T, T∖t)`.
    pub fn heads(&self, i: usize, t: &[usize]) -> Vec<Braid> {
        let mut out = Vec::new();
        for &x in t {
            let u = minus(t, &[x]);
            out.extend(self.r_set(i, t, &u).into_iter().filter(|b| self.is_head(b)));
        }
        out
    }

    /// Normal-form basis of `R_{i_1} ⊗ ⋯ ⊗ R_{i_k} ⊗ tail (T,S)`, the tail
    /// factor being `R_{last}` when `tail = Tail::R`.
    pub fn word_basis(&self, ends: &[usize], tail: Tail, last: usize, t: &[usize], s: &[usize]) -> Vec<Word> {
        match ends.split_first() {
            None => {
                let ys = match tail {
                    Tail::R if t.len() == s.len() + 1 => self.r_set(last, t, s),
                    Tail::L if s.len() == t.len() + 1 => self.l_set(t, s),
                    Tail::X if s.len() == t.len() => self.x_set(s, t),
                    _ => vec![],
                };
                ys.into_iter().map(|y| vec![y]).collect()
            }
            Some((&i, rest)) => {
                let mut out = Vec::new();
                for h in self.heads(i, t) {
                    let u = minus(&self.z().target(&h), &[self.z().z.end_point(&strand_at(&h, self.p(i, 1)).unwrap())]);
                    for mut w in self.word_basis(rest, tail, last, &u, s) {
                        w.insert(0, h.clone());
                        out.push(w);
                    }
                }
                out
            }
        }
    }

    /// `d` on a word: the Leibniz sum, renormalized.
    pub fn d_word(&self, w: &Word, tail: Tail) -> Result<F2Sum<Word>, TwoRepError> {
        let mut out = F2Sum::zero();
        for k in 0..w.len() {
            let cat = if k + 1 == w.len() && tail == Tail::X { self.zx() } else { self.z() };
            for dx in cat.differential(&w[k]).iter() {
                let mut v = w.clone();
                v[k] = dx.clone();
                self.nf_into(&mut out, v, tail)?;
            }
        }
        Ok(out)
    }

    // -----------------------------------------------------------------------
    // λ, σ, ρ, ε, Ξ

    /// `ν(x ∧ y) = (x ⊠ id_{ξ1^+(1)}) · (y ⊠ id_{ξ2^−(−1)})` for
    /// `x ∈ R_{ξ2^−}(T,U)`, `y ∈ L_{ξ1^+}(U,S)`.
    pub fn nu(&self, x: &Braid, y: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let z = self.z();
        let a = boxtimes(z, x, &z.identity(&[self.q1()]))?;
        let b = boxtimes(z, y, &z.identity(&[self.p(2, 1)]))?;
        Ok(z.product(&a, &b)?)
    }

    /// `λ(α ∧ β) = ν^{−1}(α·β)` for `α ∈ L_{ξ1^+}(T,U)`, `β ∈ R_{ξ2^−}(U,S)`.
    pub fn lambda(&self, alpha: &Braid, beta: &Braid) -> Result<Option<Word>, TwoRepError> {
        let z = self.z();
        let Some(g) = z.product(alpha, beta)? else { return Ok(None) };
        let gp = strand_at(&g, self.p(2, 1)).unwrap();
        if z.z.end_point(&gp) == self.q1() {
            return Err(TwoRepError::Hypothesis("a strand runs from ξ2^−(−1) to ξ1^+(1)".into()));
        }
        let t = minus(&z.target(&g), &[self.q1()]);
        let head = Self::with_identity(z, &t, gp)?;
        Ok(Some(vec![head, restrict(&g, &minus(&g.source, &[self.p(2, 1)]))]))
    }

    /// The displayed formula for `σ` on `R_{ξ2^−} ⊗ R_{ξ1^−}`, which also
    /// gives `σ^{−1}` on `R_{ξ1^−} ⊗ R_{ξ2^−}` with the ends exchanged.
    pub fn swap(&self, alpha: &Braid, beta: &Braid) -> Result<Option<Word>, TwoRepError> {
        let z = self.z();
        let (pa, pb) = (self.p(self.which(alpha), 1), self.p(self.which(beta), 1));
        let u_set = minus(&alpha.source, &[pa]);
        if z.product(&restrict(alpha, &u_set), beta)?.is_none() {
            return Ok(None);
        }
        let bp = strand_at(beta, pb).unwrap();
        let u = z.z.end_point(&bp);
        let au = strand_at(alpha, u).unwrap();
        let Some(path) = Self::strand_product(z, au, bp)? else { return Ok(None) };
        let first = Self::with_identity(z, &z.target(alpha), path)?;
        let Some(inner) = z.product(&restrict(alpha, &minus(&u_set, &[u])), &restrict(beta, &minus(&beta.source, &[pb])))?
        else {
            return Ok(None);
        };
        let second = boxtimes(z, &inner, &z.braid(vec![strand_at(alpha, pa).unwrap()])?)?;
        Ok(Some(vec![first, second]))
    }

    /// `ρ(α ⊗ β)` for `α ∈ L_{ξ1^+}(T,U)`, `β ∈ R_{ξ1^−}(U,S)`, as a word of
    /// `R_{ξ1^−} ⊗ L_{ξ1^+}`.
    pub fn rho(&self, alpha: &Braid, beta: &Braid) -> Result<Option<Word>, TwoRepError> {
        let z = self.z();
        let (p1, q1) = (self.p(1, 1), self.q1());
        let x = alpha.source.iter().copied().find(|&s| z.z.end_point(&strand_at(alpha, s).unwrap()) == q1).unwrap();
        let bp = strand_at(beta, p1).unwrap();
        let b1 = z.z.end_point(&bp);
        if b1 == x {
            return Ok(None);
        }
        let ax = strand_at(alpha, x).unwrap();
        let two_a = z.braid(vec![z.z.identity_path(b1), ax])?;
        let two_b = z.braid(vec![bp, z.z.identity_path(x)])?;
        if z.product(&two_a, &two_b)?.is_none() {
            return Ok(None);
        }
        let u2 = minus(&alpha.source, &[x, b1]);
        let id2 = z.identity(&u2);
        let Some(first) = z.product(&restrict(alpha, &minus(&alpha.source, &[x])), &boxtimes(z, &z.braid(vec![bp])?, &id2)?)?
        else {
            return Ok(None);
        };
        let Some(second) = z.product(&boxtimes(z, &z.braid(vec![ax])?, &id2)?, &restrict(beta, &minus(&beta.source, &[p1])))?
        else {
            return Ok(None);
        };
        self.nf(vec![first, second], Tail::L)
    }

    /// `ε(β ⊗ γ) = κ_1(β·γ)` for `β ∈ L_{ξ1^+}(V,U)`, `γ ∈ R_{ξ1^−}(U,S)`.
    pub fn epsilon(&self, beta: &Braid, gamma: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let z = self.z();
        let Some(g) = z.product(beta, gamma)? else { return Ok(None) };
        let p1 = self.p(1, 1);
        if z.z.end_point(&strand_at(&g, p1).unwrap()) != self.q1() {
            return Ok(None);
        }
        Ok(Some(restrict(&g, &minus(&g.source, &[p1]))))
    }

    /// `Ξ(x ⊗ y) = q(ν(x ∧ y))` in `Hom_{Z_ξ}(S,T)`.
    pub fn xi(&self, x: &Braid, y: &Braid) -> Result<Option<Braid>, TwoRepError> {
        match self.nu(x, y)? {
            Some(g) => self.glued.q(&g),
            None => Ok(None),
        }
    }

    // -----------------------------------------------------------------------
    // u, f1, f2

    /// `f_i(a ∧ b)` for `a ∈ R_{ξ_i^−}(T,U)` and `b ∈ Hom_{Z_ξ}(S,U)`.
    pub fn f(&self, a: &Braid, b: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let zx = self.zx();
        let extra = if self.which(a) == 1 {
            zx.z.identity_path(self.px(1))
        } else {
            Self::seg(zx, self.px(1), self.glued.point_map[self.p(2, 1)])
        };
        let right = boxtimes(zx, b, &zx.braid(vec![extra])?)?;
        Ok(zx.product(&self.glued.map_braid(a)?, &right)?)
    }

    pub fn f_word(&self, w: &Word) -> Result<Option<Braid>, TwoRepError> {
        self.f(&w[0], &w[1])
    }

    /// `u(α ⊗ β)` for a head `α ∈ R_{ξ2^−}(T,U)` and `β ∈ Hom_{Z_ξ}(S,U)`.
    pub fn u_map(&self, alpha: &Braid, beta: &Braid) -> Result<F2Sum<Word>, TwoRepError> {
        let (z, zx) = (self.z(), self.zx());
        let comp1 = z.z.ray_ends[self.plus1].comp;
        let ap = strand_at(alpha, self.p(2, 1)).unwrap();
        let t = z.target(alpha);
        let u = minus(&alpha.source, &[self.p(2, 1)]);
        let mut out = F2Sum::zero();
        for &x in &u {
            if local_on(z, x, comp1).is_none() {
                continue;
            }
            let head = Self::with_identity(z, &t, Self::seg(z, self.p(1, 1), x))?;
            let up = self.glued.map_path(&Self::seg(z, x, self.q1()));
            let Some(p) = Self::strand_product(zx, self.glued.connector(1, 1), up)? else { continue };
            let Some(p) = Self::strand_product(zx, self.glued.map_path(&ap), p)? else { continue };
            let mut v: Vec<Path> = self.obj(&minus(&u, &[x])).iter().map(|&y| zx.z.identity_path(y)).collect();
            v.push(p);
            if let Some(second) = zx.product(&zx.braid(v)?, beta)? {
                out.toggle(vec![head, second]);
            }
        }
        Ok(out)
    }

    /// The differential of `E'(T,S)`, the cone of `u`.
    pub fn d_e(&self, w: &Word) -> Result<F2Sum<Word>, TwoRepError> {
        let mut out = self.d_word(w, Tail::X)?;
        if self.which(&w[0]) == 2 {
            out.add_assign(&self.u_map(&w[0], &w[1])?);
        }
        Ok(out)
    }

    // -----------------------------------------------------------------------
    // τ

    /// `μ(x1 ⊗ x2) = x1 · (x2 ⊠ [c(−2) → c(−1)])` in `R_c(T,S,e²)` for
    /// the end `c` of either curve.
    fn mu_on(cat: &StrandCat, m1: usize, m2: usize, x1: &Braid, x2: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let right = boxtimes(cat, x2, &cat.braid(vec![Self::seg(cat, m2, m1)])?)?;
        Ok(cat.product(x1, &right)?)
    }

    /// `μ` on `Z` for two factors of the same end.
    pub fn mu(&self, x1: &Braid, x2: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let i = self.which(x1);
        Self::mu_on(self.z(), self.p(i, 1), self.p(i, 2), x1, x2)
    }

    /// `μ` on `Z_ξ`.
    pub fn mu_x(&self, x1: &Braid, x2: &Braid) -> Result<Option<Braid>, TwoRepError> {
        Self::mu_on(self.zx(), self.px(1), self.px(2), x1, x2)
    }

    /// The inverse of `μ` on `Z`: head from `c(−2)`, remainder from `c(−1)`.
    pub fn split_mu(&self, i: usize, theta: &Braid) -> Result<Option<Word>, TwoRepError> {
        let z = self.z();
        let (m1, m2) = (self.p(i, 1), self.p(i, 2));
        let s2 = strand_at(theta, m2).unwrap();
        let Some(path) = Self::strand_product(z, s2, Self::seg(z, m1, m2))? else { return Ok(None) };
        let head = Self::with_identity(z, &z.target(theta), path)?;
        Ok(Some(vec![head, restrict(theta, &minus(&theta.source, &[m2]))]))
    }

    /// The crossing of the two first slots of an end: `θ ↦ θ·(id ⊠ τ)`.
    fn cross(cat: &StrandCat, m1: usize, m2: usize, theta: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let s = minus(&theta.source, &[m1, m2]);
        let tau = boxtimes(cat, &cat.identity(&s), &cat.braid(vec![Self::seg(cat, m1, m2), Self::seg(cat, m2, m1)])?)?;
        Ok(cat.product(theta, &tau)?)
    }

    /// The block endomorphism `τ` on `R_a ⊗ R_b`: `τ_2`, `σ^{−1}`, `0`, `τ_1`.
    pub fn tau_block(&self, x1: &Braid, x2: &Braid) -> Result<F2Sum<Word>, TwoRepError> {
        let (a, b) = (self.which(x1), self.which(x2));
        let mut out = F2Sum::zero();
        match (a, b) {
            (2, 1) => {}
            (1, 2) => {
                if let Some(w) = self.swap(x1, x2)? {
                    out.toggle(w);
                }
            }
            _ => {
                let Some(theta) = self.mu(x1, x2)? else { return Ok(out) };
                let Some(t2) = Self::cross(self.z(), self.p(a, 1), self.p(a, 2), &theta)? else { return Ok(out) };
                if let Some(w) = self.split_mu(a, &t2)? {
                    self.nf_into(&mut out, w, Tail::R)?;
                }
            }
        }
        Ok(out)
    }

    /// `τ` on the factors `k, k+1` of a word of `R`'s.
    pub fn tau_at(&self, w: &Word, k: usize) -> Result<F2Sum<Word>, TwoRepError> {
        let mut out = F2Sum::zero();
        for pair in self.tau_block(&w[k], &w[k + 1])?.iter() {
            let mut v = w[..k].to_vec();
            v.extend(pair.iter().cloned());
            v.extend(w[k + 2..].iter().cloned());
            self.nf_into(&mut out, v, Tail::R)?;
        }
        Ok(out)
    }

    fn tau_at_sum(&self, x: &F2Sum<Word>, k: usize) -> Result<F2Sum<Word>, TwoRepError> {
        let mut out = F2Sum::zero();
        for w in x.iter() {
            out.add_assign(&self.tau_at(w, k)?);
        }
        Ok(out)
    }

    /// The crossing of `ξ^−(−k)` and `ξ^−(−k−1)` acting on `R_{ξ^−}(T,S,e^n)`.
    pub fn tau_x(&self, theta: &Braid, k: usize) -> Result<Option<Braid>, TwoRepError> {
        Self::cross(self.zx(), self.px(k), self.px(k + 1), theta)
    }

    fn tau_x_sum(&self, x: &F2Sum<Braid>, k: usize) -> Result<F2Sum<Braid>, TwoRepError> {
        let mut out = F2Sum::zero();
        for b in x.iter() {
            if let Some(y) = self.tau_x(b, k)? {
                out.toggle(y);
            }
        }
        Ok(out)
    }

    /// `(f_a ⊗ f_b)(x1 ⊗ x2)` in `R_{ξ^−}(T,S,e²)`, the factors taken with
    /// identity `Z_ξ` parts.
    pub fn ff(&self, x1: &Braid, x2: &Braid) -> Result<Option<Braid>, TwoRepError> {
        let zx = self.zx();
        let u = self.z().target(x2);
        let s = minus(&x2.source, &[self.p(self.which(x2), 1)]);
        let (Some(a), Some(b)) = (self.f(x1, &zx.identity(&self.obj(&u)))?, self.f(x2, &zx.identity(&self.obj(&s)))?)
        else {
            return Ok(None);
        };
        self.mu_x(&a, &b)
    }

    // -----------------------------------------------------------------------
    // Checks

    /// Runs every check on objects of size at most `smax`.
    pub fn diagonal_tau_check(&self, smax: usize) -> Result<CheckReport, TwoRepError> {
        let mut rep = CheckReport::new("diagonal");
        let objs = StrandCat::objects(self.m(), 0..=smax.min(self.m().len()));
        for t in &objs {
            for s in &objs {
                self.check_lambda(&mut rep, t, s)?;
                self.check_sigma(&mut rep, t, s)?;
                self.check_rho(&mut rep, t, s)?;
                self.check_f(&mut rep, t, s)?;
                self.check_square(&mut rep, t, s)?;
                self.check_tau(&mut rep, t, s)?;
            }
        }
        Ok(rep)
    }

    fn check_lambda(&self, rep: &mut CheckReport, t: &[usize], s: &[usize]) -> Result<(), TwoRepError> {
        let z = self.z();
        if t.len() != s.len() {
            return Ok(());
        }
        // ν is a bijection onto Hom(S ⊔ ξ2^−(−1), T ⊔ ξ1^+(1))
        let target: BTreeSet<Braid> =
            z.hom(&union(s, &[self.p(2, 1)]), &union(t, &[self.q1()]), 0, Self::big(z)).into_iter().collect();
        let mut image = BTreeSet::new();
        let words = self.word_basis(&[2], Tail::L, 0, t, s);
        for w in &words {
            match self.nu(&w[0], &w[1])? {
                Some(g) => {
                    rep.check(image.insert(g), || format!("ν not injective at {t:?},{s:?}"));
                }
                None => rep.fail(format!("ν vanishes at {}", z.encode(&w[1]))),
            }
        }
        rep.check(image == target, || format!("ν not onto at {t:?},{s:?}: {} of {}", image.len(), target.len()));
        rep.count("nu_basis", words.len());
        // ν∘λ = mult, and λ commutes with d
        for u in StrandCat::objects(self.m(), s.len() + 1..=s.len() + 1) {
            for a in self.l_set(t, &u) {
                for b in self.r_set(2, &u, s) {
                    let lam = self.lambda(&a, &b)?;
                    let back = match &lam {
                        Some(w) => self.nu(&w[0], &w[1])?,
                        None => None,
                    };
                    rep.check(back == z.product(&a, &b)?, || format!("ν∘λ ≠ mult at {}", z.encode(&a)));
                    let lhs = match &lam {
                        Some(w) => self.d_word(w, Tail::L)?,
                        None => F2Sum::zero(),
                    };
                    let mut rhs = F2Sum::zero();
                    for da in z.differential(&a).iter() {
                        if let Some(w) = self.lambda(da, &b)? {
                            rhs.toggle(w);
                        }
                    }
                    for db in z.differential(&b).iter() {
                        if let Some(w) = self.lambda(&a, db)? {
                            rhs.toggle(w);
                        }
                    }
                    rep.check(lhs == rhs, || format!("λ∘d ≠ d∘λ at {} ⊗ {}", z.encode(&a), z.encode(&b)));
                }
            }
        }
        Ok(())
    }

    fn swap_sum(&self, x: &F2Sum<Word>) -> Result<F2Sum<Word>, TwoRepError> {
        let mut out = F2Sum::zero();
        for w in x.iter() {
            if let Some(y) = self.swap(&w[0], &w[1])? {
                out.toggle(y);
            }
        }
        Ok(out)
    }

    fn check_sigma(&self, rep: &mut CheckReport, t: &[usize], s: &[usize]) -> Result<(), TwoRepError> {
        if t.len() != s.len() + 2 {
            return Ok(());
        }
        let z = self.z();
        for (a, b) in [(2, 1), (1, 2)] {
            let basis = self.word_basis(&[a], Tail::R, b, t, s);
            let mut images = BTreeSet::new();
            for w in &basis {
                let once = self.swap(&w[0], &w[1])?;
                if let Some(y) = &once {
                    rep.check(images.insert(y.clone()), || format!("σ not injective at {}", z.encode(&w[1])));
                }
                let twice = match &once {
                    Some(y) => self.swap(&y[0], &y[1])?,
                    None => None,
                };
                let name = if a == 2 { "σ^{−1}∘σ" } else { "σ∘σ^{−1}" };
                rep.check(twice.as_ref() == Some(w), || {
                    format!("{name} ≠ id at {} ⊗ {}", z.encode(&w[0]), z.encode(&w[1]))
                });
                // σ is a chain map
                let lhs = self.swap_sum(&self.d_word(w, Tail::R)?)?;
                let rhs = match &once {
                    Some(y) => self.d_word(y, Tail::R)?,
                    None => F2Sum::zero(),
                };
                rep.check(lhs == rhs, || format!("d∘σ ≠ σ∘d at {} ⊗ {}", z.encode(&w[0]), z.encode(&w[1])));
            }
            rep.count(if a == 2 { "sigma_basis" } else { "sigma_inv_basis" }, basis.len());
        }
        // the formula does not depend on the representative of the tensor
        for u in StrandCat::objects(self.m(), s.len() + 1..=s.len() + 1) {
            for x in self.r_set(2, t, &u) {
                for y in self.r_set(1, &u, s) {
                    let direct = self.swap(&x, &y)?;
                    let viaf = match self.nf(vec![x.clone(), y.clone()], Tail::R)? {
                        Some(w) => self.swap(&w[0], &w[1])?,
                        None => None,
                    };
                    rep.check(direct == viaf, || format!("σ depends on the representative at {}", z.encode(&x)));
                }
            }
        }
        Ok(())
    }

    fn check_rho(&self, rep: &mut CheckReport, t: &[usize], s: &[usize]) -> Result<(), TwoRepError> {
        if t.len() != s.len() {
            return Ok(());
        }
        let z = self.z();
        let k = s.len() + 1;
        for u in StrandCat::objects(self.m(), k..=k) {
            for up in StrandCat::objects(self.m(), k..=k) {
                let homs = z.hom(&up, &u, 0, Self::big(z));
                for a in self.l_set(t, &u) {
                    for b in self.r_set(1, &up, s) {
                        for h in &homs {
                            let lhs = match z.product(&a, h)? {
                                Some(ah) => self.rho(&ah, &b)?,
                                None => None,
                            };
                            let rhs = match z.product(h, &b)? {
                                Some(hb) => self.rho(&a, &hb)?,
                                None => None,
                            };
                            rep.check(lhs == rhs, || {
                                format!("ρ(αh ⊗ β) ≠ ρ(α ⊗ hβ) at {} {} {}", z.encode(&a), z.encode(h), z.encode(&b))
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_f(&self, rep: &mut CheckReport, t: &[usize], s: &[usize]) -> Result<(), TwoRepError> {
        if t.len() != s.len() + 1 {
            return Ok(());
        }
        let (z, zx) = (self.z(), self.zx());
        let target: BTreeSet<Braid> = self.rx_set(t, s, 1).into_iter().collect();
        let mut image = BTreeSet::new();
        let mut basis = self.word_basis(&[2], Tail::X, 0, t, s);
        basis.extend(self.word_basis(&[1], Tail::X, 0, t, s));
        let fsum = |x: &F2Sum<Word>| -> Result<F2Sum<Braid>, TwoRepError> {
            let mut out = F2Sum::zero();
            for w in x.iter() {
                if let Some(y) = self.f_word(w)? {
                    out.toggle(y);
                }
            }
            Ok(out)
        };
        for w in &basis {
            let fw = self.f_word(w)?;
            match &fw {
                Some(y) => rep.check(image.insert(y.clone()), || format!("f2 ∨ f1 not injective at {}", zx.encode(y))),
                None => rep.fail(format!("f vanishes at {} ∧ {}", z.encode(&w[0]), zx.encode(&w[1]))),
            }
            // d(f1) = 0 and d(f2) = f1∘u
            let lhs = fsum(&self.d_e(w)?)?;
            let rhs = match &fw {
                Some(y) => zx.differential(y),
                None => F2Sum::zero(),
            };
            let name = if self.which(&w[0]) == 1 { "d(f1) ≠ 0" } else { "d(f2) ≠ f1∘u" };
            rep.check(lhs == rhs, || format!("{name} at {} ∧ {}", z.encode(&w[0]), zx.encode(&w[1])));
            // functoriality in T
            for tp in StrandCat::objects(self.m(), t.len()..=t.len()) {
                for g in z.hom(t, &tp, 0, Self::big(z)) {
                    let moved = match z.product(&g, &w[0])? {
                        Some(gh) => match self.nf(vec![gh, w[1].clone()], Tail::X)? {
                            Some(v) => self.f_word(&v)?,
                            None => None,
                        },
                        None => None,
                    };
                    let gx = self.glued.map_braid(&g)?;
                    let acted = match &fw {
                        Some(y) => zx.product(&gx, y)?,
                        None => None,
                    };
                    rep.check(moved == acted, || format!("f not natural in T at {}", z.encode(&g)));
                }
            }
        }
        rep.check(image == target, || {
            format!("f2 ∨ f1 not onto R_ξ^−({t:?},{s:?}): {} of {}", image.len(), target.len())
        });
        rep.count("f_basis", basis.len());
        Ok(())
    }

    /// The square relating `w` and the action of `Hom_{Z_ξ}` on `R_{ξ^−}`.
    fn check_square(&self, rep: &mut CheckReport, t: &[usize], s: &[usize]) -> Result<(), TwoRepError> {
        if t.len() != s.len() + 1 {
            return Ok(());
        }
        let (z, zx) = (self.z(), self.zx());
        let f_in = |out: &mut F2Sum<Braid>, a: &Braid, b: &Braid| -> Result<(), TwoRepError> {
            if let Some(y) = self.f(a, b)? {
                out.toggle(y);
            }
            Ok(())
        };
        let u = s.len() + 1;
        for alpha in self.heads(2, t) {
            let v = minus(&alpha.source, &[self.p(2, 1)]);
            {
                for uu in StrandCat::objects(self.m(), u..=u) {
                    for beta in self.l_set(&v, &uu) {
                        let xi = self.xi(&alpha, &beta)?;
                        for i in [2, 1] {
                            for gamma in self.r_set(i, &uu, s) {
                                // action ∘ (Ξ ⊗ f)
                                let mut lhs = F2Sum::zero();
                                if let Some(x) = &xi {
                                    if let Some(fg) = self.f(&gamma, &zx.identity(&self.obj(s)))? {
                                        if let Some(y) = zx.product(x, &fg)? {
                                            lhs.toggle(y);
                                        }
                                    }
                                }
                                let mut rhs = F2Sum::zero();
                                if i == 2 {
                                    // w11 = R(mult∘Ξ) ∘ τL ∘ Rλ
                                    if let Some(lw) = self.lambda(&beta, &gamma)? {
                                        for pair in self.tau_block(&alpha, &lw[0])?.iter() {
                                            if let Some(x) = self.xi(&pair[1], &lw[1])? {
                                                f_in(&mut rhs, &pair[0], &x)?;
                                            }
                                        }
                                    }
                                } else {
                                    // w12 = Rε
                                    if let Some(e) = self.epsilon(&beta, &gamma)? {
                                        let e2 = boxtimes(z, &e, &z.identity(&[self.p(2, 1)]))?;
                                        if let Some(ae) = z.product(&alpha, &e2)? {
                                            f_in(&mut rhs, &ae, &zx.identity(&self.obj(s)))?;
                                        }
                                    }
                                    // w22 = R(mult∘Ξ) ∘ σL ∘ Rρ
                                    if let Some(rw) = self.rho(&beta, &gamma)? {
                                        if let Some(sw) = self.swap(&alpha, &rw[0])? {
                                            if let Some(x) = self.xi(&sw[1], &rw[1])? {
                                                f_in(&mut rhs, &sw[0], &x)?;
                                            }
                                        }
                                    }
                                }
                                let name = if i == 2 { "f2∘w11" } else { "f2∘w12 + f1∘w22" };
                                rep.check(lhs == rhs, || {
                                    format!(
                                        "square fails ({name}) at {} ⊗ {} ⊗ {}",
                                        z.encode(&alpha),
                                        z.encode(&beta),
                                        z.encode(&gamma)
                                    )
                                });
                                rep.count("square", 1);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_tau(&self, rep: &mut CheckReport, t: &[usize], s: &[usize]) -> Result<(), TwoRepError> {
        let (z, zx) = (self.z(), self.zx());
        if t.len() == s.len() + 2 {
            // μ and its inverse on Z
            for i in [1, 2] {
                let slots = [self.p(i, 1), self.p(i, 2)];
                for theta in z.hom(&union(s, &slots), t, 0, Self::big(z)) {
                    let back = match self.split_mu(i, &theta)? {
                        Some(w) => self.mu(&w[0], &w[1])?,
                        None => None,
                    };
                    rep.check(back.as_ref() == Some(&theta), || format!("μ∘split ≠ id at {}", z.encode(&theta)));
                }
            }
            // τ commutes with (f2,f1)⊗(f2,f1), and τ² = 0 on the blocks
            for (a, b) in [(2, 2), (2, 1), (1, 2), (1, 1)] {
                for w in self.word_basis(&[a], Tail::R, b, t, s) {
                    let mut lhs = F2Sum::zero();
                    if let Some(y) = self.ff(&w[0], &w[1])? {
                        if let Some(x) = self.tau_x(&y, 1)? {
                            lhs.toggle(x);
                        }
                    }
                    let tw = self.tau_block(&w[0], &w[1])?;
                    let mut rhs = F2Sum::zero();
                    for v in tw.iter() {
                        if let Some(y) = self.ff(&v[0], &v[1])? {
                            rhs.toggle(y);
                        }
                    }
                    rep.check(lhs == rhs, || {
                        format!("τ∘(f⊗f) ≠ (f⊗f)∘τ on R{a}R{b} at {} ⊗ {}", z.encode(&w[0]), z.encode(&w[1]))
                    });
                    rep.check(self.tau_at_sum(&tw, 0)?.is_zero(), || format!("τ² ≠ 0 on R{a}R{b}"));
                    rep.count(&format!("tau_R{a}R{b}"), 1);
                }
            }
            // (f2,f1)^{⊗2} is a bijection onto R_ξ^−(T,S,e²)
            let target: BTreeSet<Braid> = self.rx_set(t, s, 2).into_iter().collect();
            let mut image = BTreeSet::new();
            for ends in [[2, 2], [2, 1], [1, 2], [1, 1]] {
                for w in self.word_basis(&ends, Tail::X, 0, t, s) {
                    let u1 = z.target(&w[1]);
                    let y = match (self.f(&w[0], &zx.identity(&self.obj(&u1)))?, self.f(&w[1], &w[2])?) {
                        (Some(a), Some(b)) => self.mu_x(&a, &b)?,
                        _ => None,
                    };
                    match y {
                        Some(y) => rep.check(image.insert(y), || "(f⊗f) not injective".into()),
                        None => rep.fail(format!("(f⊗f) vanishes at {}", z.encode(&w[0]))),
                    }
                }
            }
            rep.check(image == target, || {
                format!("(f⊗f) not onto R_ξ^−({t:?},{s:?},e²): {} of {}", image.len(), target.len())
            });
            // τ² = 0 and d(τ) = id on Z_ξ
            for theta in &target {
                let once = F2Sum::from_option(self.tau_x(theta, 1)?);
                rep.check(self.tau_x_sum(&once, 1)?.is_zero(), || format!("τ² ≠ 0 at {}", zx.encode(theta)));
                let mut dt = zx.differential_sum(&once);
                dt.add_assign(&self.tau_x_sum(&zx.differential(theta), 1)?);
                rep.check(dt == F2Sum::single(theta.clone()), || format!("d(τ) ≠ id at {}", zx.encode(theta)));
                rep.count("tau_glued", 1);
            }
        }
        if t.len() == s.len() + 3 && self.zx().z.ray_ends[self.minus].slots.len() >= 3 {
            // braid relation on Z_ξ
            for theta in self.rx_set(t, s, 3) {
                let x = F2Sum::single(theta.clone());
                let lhs = self.tau_x_sum(&self.tau_x_sum(&self.tau_x_sum(&x, 1)?, 2)?, 1)?;
                let rhs = self.tau_x_sum(&self.tau_x_sum(&self.tau_x_sum(&x, 2)?, 1)?, 2)?;
                rep.check(lhs == rhs, || format!("braid relation fails at {}", zx.encode(&theta)));
                rep.count("braid_glued", 1);
            }
            // braid relation for the block τ on words of three R's
            for a in [1, 2] {
                for b in [1, 2] {
                    for c in [1, 2] {
                        for w in self.word_basis(&[a, b], Tail::R, c, t, s) {
                            let x = F2Sum::single(w.clone());
                            let lhs = self.tau_at_sum(&self.tau_at_sum(&self.tau_at_sum(&x, 1)?, 0)?, 1)?;
                            let rhs = self.tau_at_sum(&self.tau_at_sum(&self.tau_at_sum(&x, 0)?, 1)?, 0)?;
                            rep.check(lhs == rhs, || format!("block braid relation fails on R{a}R{b}R{c}"));
                            rep.count("braid_block", 1);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_mark_intervals() {
        let ctx = DiagonalContext::intervals(1, 1, 2);
        let rep = ctx.diagonal_tau_check(2).unwrap();
        assert!(rep.ok(), "{rep:#?}");
        assert!(rep.counts["square"] > 0 && rep.counts["tau_glued"] > 0, "{:?}", rep.counts);
    }

    #[test]
    fn braid_relation_with_three_marks() {
        let ctx = DiagonalContext::intervals(2, 1, 3);
        let rep = ctx.diagonal_tau_check(3).unwrap();
        assert!(rep.ok(), "{rep:#?}");
        assert!(rep.counts["braid_block"] > 0 && rep.counts["braid_glued"] > 0, "{:?}", rep.counts);
    }

    #[test]
    fn same_component_is_rejected() {
        let spec = self_glue_spec(1, 2, vec![]);
        assert!(matches!(DiagonalContext::from_spec(spec), Err(TwoRepError::Hypothesis(_))));
    }
}

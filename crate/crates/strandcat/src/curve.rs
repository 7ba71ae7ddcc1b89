//! Curves given by chord diagrams: oriented or unoriented lines and
//! circles with marked points, a matching that glues pairs of marks into
//! singular points, and optional ray ends carrying integer slots.
//!
//! Everything is computed on the non-singular cover. A path class is stored
//! as a monotone lift `from -> to` in lifted mark indices: on a line the
//! index is the rank of a mark, on a circle with `m` marks the index `L`
//! stands for mark `L mod m` on sheet `floor(L / m)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2core::{BasisToken, GammaLayout, MarkLayout};

pub type Q = Rational64;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("component {0}: {1}")]
    BadComponent(usize, String),
    #[error("matching: {0}")]
    BadMatching(String),
    #[error("ray end: {0}")]
    BadRayEnd(String),
    #[error("paths do not meet: {0} then {1}")]
    EndpointMismatch(String, String),
    #[error("endpoints coincide: {0}")]
    EndpointsEqual(String),
}

fn parse_q(s: &str) -> Result<Q, CurveError> {
    s.trim().parse::<Q>().map_err(|_| CurveError::BadRational(s.to_string()))
}

pub fn format_q(q: &Q) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct DiagramFile {
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub matching: Vec<[usize; 2]>,
    #[serde(default)]
    pub ray_ends: Vec<RayEndSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ComponentSpec {
    /// A line; oriented on `bounds` (open, `null` for an infinite end),
    /// or everywhere when `bounds` is absent.
    OrientedInterval {
        marks: Vec<String>,
        #[serde(default)]
        bounds: Option<[Option<String>; 2]>,
    },
    UnorientedInterval {
        marks: Vec<String>,
    },
    OrientedCircle {
        marks: Vec<String>,
    },
    UnorientedCircle {
        marks: Vec<String>,
    },
    /// A circle oriented only on the open arc running upward from
    /// `arc[0]` to `arc[1]` (wrapping through 0 when needed).
    DottedCircle {
        marks: Vec<String>,
        arc: [String; 2],
    },
    /// A line whose part beyond `cut` (towards `direction`) is an
    /// unoriented ray; the finite part is oriented when `orientedFinite`.
    Ray {
        marks: Vec<String>,
        direction: Side,
        cut: String,
        #[serde(default, rename = "orientedFinite")]
        oriented_finite: bool,
    },
    /// A line oriented on a list of open intervals (`null` for an
    /// infinite end).
    Line {
        marks: Vec<String>,
        #[serde(default)]
        oriented: Vec<[Option<String>; 2]>,
    },
    /// A circle oriented on a list of upward arcs, each as in
    /// `DottedCircle`.
    Circle {
        marks: Vec<String>,
        #[serde(default)]
        oriented: Vec<[String; 2]>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Outgoing,
    Incoming,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayEndSpec {
    /// Index of the component in the `components` array (0-based).
    pub component: usize,
    pub side: Side,
    pub role: Role,
    pub base: String,
    pub slots: usize,
}

// ---------------------------------------------------------------------------
// Model

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Line,
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orientation {
    Full,
    /// Open intervals; on a line `None` is an infinite end, on a circle the
    /// pair is a lifted arc `(a, b)` with `a < b <= a + 1`.
    Regions(Vec<(Option<Q>, Option<Q>)>),
}

#[derive(Clone, Debug)]
pub struct Component {
    pub topology: Topology,
    pub kind: String,
    /// Global mark ids, sorted by coordinate.
    pub marks: Vec<usize>,
    pub coords: Vec<Q>,
    pub orientation: Orientation,
    /// Whether each arc may be traversed downward (no oriented part).
    pub dec_ok: Vec<bool>,
    pub arc_offset: usize,
    pub omega: usize,
}

impl Component {
    pub fn m(&self) -> usize {
        self.marks.len()
    }

    pub fn arc_count(&self) -> usize {
        match self.topology {
            Topology::Line => self.m().saturating_sub(1),
            Topology::Circle => self.m(),
        }
    }

    /// Local arc index for the arc from lifted index `l` to `l + 1`.
    fn arc_index(&self, l: i64) -> usize {
        match self.topology {
            Topology::Line => l as usize,
            Topology::Circle => l.rem_euclid(self.m() as i64) as usize,
        }
    }

    fn normalize(&self, l: i64) -> (usize, i64) {
        match self.topology {
            Topology::Line => (l as usize, 0),
            Topology::Circle => {
                let m = self.m() as i64;
                (l.rem_euclid(m) as usize, l.div_euclid(m))
            }
        }
    }

    /// Coordinate of a lifted index.
    pub fn lifted_coord(&self, l: i64) -> Q {
        let (k, w) = self.normalize(l);
        self.coords[k] + Q::from_integer(w)
    }

    pub fn point_oriented(&self, x: Q) -> bool {
        match &self.orientation {
            Orientation::Full => true,
            Orientation::Regions(rs) => rs.iter().any(|(a, b)| match self.topology {
                Topology::Line => a.is_none_or(|a| a < x) && b.is_none_or(|b| x < b),
                Topology::Circle => {
                    let (a, b) = (a.unwrap(), b.unwrap());
                    [x - 1, x, x + 1].iter().any(|&y| a < y && y < b)
                }
            }),
        }
    }

    fn interval_meets_orientation(&self, lo: Q, hi: Q) -> bool {
        match &self.orientation {
            Orientation::Full => true,
            Orientation::Regions(rs) => rs.iter().any(|(a, b)| match self.topology {
                Topology::Line => a.is_none_or(|a| a < hi) && b.is_none_or(|b| lo < b),
                Topology::Circle => {
                    let (a, b) = (a.unwrap(), b.unwrap());
                    (-2..=2).any(|k| {
                        let s = Q::from_integer(k);
                        a + s < hi && lo < b + s
                    })
                }
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Mark {
    pub comp: usize,
    pub local: usize,
    pub coord: Q,
    /// `(ray end, j)` for slot marks.
    pub slot: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct RayEnd {
    pub comp: usize,
    pub side: Side,
    pub role: Role,
    pub base: Q,
    /// Mark ids of the slots `ξ(1), ξ(2), ...` (nearest first).
    pub slots: Vec<usize>,
}

/// A curve given by a chord diagram, with its non-singular cover.
#[derive(Clone, Debug)]
pub struct CurveModel {
    pub components: Vec<Component>,
    pub marks: Vec<Mark>,
    /// Marks of each point of the curve (one, or two for a singular point).
    pub points: Vec<Vec<usize>>,
    pub mark_point: Vec<usize>,
    pub matching: Vec<(usize, usize)>,
    pub omega_count: usize,
    pub ray_ends: Vec<RayEnd>,
    pub layout: Arc<GammaLayout>,
    pub spec: DiagramFile,
}

impl CurveModel {
    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let spec: DiagramFile = serde_json::from_str(text)?;
        Self::from_spec(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).unwrap()
    }

    pub fn from_spec(spec: DiagramFile) -> Result<Self, CurveError> {
        Self::build(spec.clone(), &spec.matching.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>())
    }

    fn build(spec: DiagramFile, matching_ids: &[(usize, usize)]) -> Result<Self, CurveError> {
        let mut components = Vec::new();
        let mut marks: Vec<Mark> = Vec::new();
        // user marks first, in listing order
        let mut comp_marks: Vec<Vec<(Q, usize)>> = Vec::new();
        for (ci, cs) in spec.components.iter().enumerate() {
            let (topology, kind, raw, orientation) = match cs {
                ComponentSpec::OrientedInterval { marks, bounds } => {
                    let o = match bounds {
                        None => Orientation::Full,
                        Some([a, b]) => {
                            let a = a.as_deref().map(parse_q).transpose()?;
                            let b = b.as_deref().map(parse_q).transpose()?;
                            if let (Some(a), Some(b)) = (a, b) {
                                if a >= b {
                                    return Err(CurveError::BadComponent(ci, "empty bounds".into()));
                                }
                            }
                            Orientation::Regions(vec![(a, b)])
                        }
                    };
                    (Topology::Line, "OrientedInterval", marks, o)
                }
                ComponentSpec::UnorientedInterval { marks } => {
                    (Topology::Line, "UnorientedInterval", marks, Orientation::Regions(vec![]))
                }
                ComponentSpec::OrientedCircle { marks } => (Topology::Circle, "OrientedCircle", marks, Orientation::Full),
                ComponentSpec::UnorientedCircle { marks } => {
                    (Topology::Circle, "UnorientedCircle", marks, Orientation::Regions(vec![]))
                }
                ComponentSpec::DottedCircle { marks, arc } => {
                    let a = parse_q(&arc[0])?;
                    let mut b = parse_q(&arc[1])?;
                    if b <= a {
                        b += 1;
                    }
                    (Topology::Circle, "DottedCircle", marks, Orientation::Regions(vec![(Some(a), Some(b))]))
                }
                ComponentSpec::Ray { marks, direction, cut, oriented_finite } => {
                    let c = parse_q(cut)?;
                    let o = if *oriented_finite {
                        match direction {
                            Side::Right => Orientation::Regions(vec![(None, Some(c))]),
                            Side::Left => Orientation::Regions(vec![(Some(c), None)]),
                        }
                    } else {
                        Orientation::Regions(vec![])
                    };
                    (Topology::Line, "Ray", marks, o)
                }
                ComponentSpec::Line { marks, oriented } => {
                    let mut rs = Vec::new();
                    for [a, b] in oriented {
                        let a = a.as_deref().map(parse_q).transpose()?;
                        let b = b.as_deref().map(parse_q).transpose()?;
                        if let (Some(a), Some(b)) = (a, b) {
                            if a >= b {
                                return Err(CurveError::BadComponent(ci, "empty oriented interval".into()));
                            }
                        }
                        rs.push((a, b));
                    }
                    (Topology::Line, "Line", marks, Orientation::Regions(rs))
                }
                ComponentSpec::Circle { marks, oriented } => {
                    let mut rs = Vec::new();
                    for [a, b] in oriented {
                        let a = parse_q(a)?;
                        let mut b = parse_q(b)?;
                        if b <= a {
                            b += 1;
                        }
                        rs.push((Some(a), Some(b)));
                    }
                    (Topology::Circle, "Circle", marks, Orientation::Regions(rs))
                }
            };
            let mut list = Vec::new();
            let mut prev: Option<Q> = None;
            for s in raw {
                let q = parse_q(s)?;
                if topology == Topology::Circle && (q < Q::from_integer(0) || q >= Q::from_integer(1)) {
                    return Err(CurveError::BadComponent(ci, format!("circle mark {s} outside [0,1)")));
                }
                if prev.is_some_and(|p| p >= q) {
                    return Err(CurveError::BadComponent(ci, "marks must be strictly increasing".into()));
                }
                prev = Some(q);
                let id = marks.len();
                marks.push(Mark { comp: ci, local: 0, coord: q, slot: None });
                list.push((q, id));
            }
            comp_marks.push(list);
            components.push(Component {
                topology,
                kind: kind.to_string(),
                marks: vec![],
                coords: vec![],
                orientation,
                dec_ok: vec![],
                arc_offset: 0,
                omega: 0,
            });
        }
        let user_mark_count = marks.len();

        // slots of ray ends
        let mut ray_ends = Vec::new();
        for (ei, re) in spec.ray_ends.iter().enumerate() {
            let comp = components
                .get(re.component)
                .ok_or_else(|| CurveError::BadRayEnd(format!("no component {}", re.component)))?;
            if comp.topology != Topology::Line {
                return Err(CurveError::BadRayEnd("ray ends live on lines".into()));
            }
            let base = parse_q(&re.base)?;
            let beyond = |x: Q| match re.side {
                Side::Right => x > base,
                Side::Left => x < base,
            };
            if comp_marks[re.component].iter().any(|(x, _)| beyond(*x) || *x == base) {
                return Err(CurveError::BadRayEnd("marks beyond the base of the ray".into()));
            }
            let far = match re.side {
                Side::Right => comp.interval_meets_orientation(base, base + Q::from_integer(re.slots as i64 + 1)),
                Side::Left => comp.interval_meets_orientation(base - Q::from_integer(re.slots as i64 + 1), base),
            };
            let unbounded_oriented = match &comp.orientation {
                Orientation::Full => true,
                Orientation::Regions(rs) => rs.iter().any(|(a, b)| match re.side {
                    Side::Right => b.is_none() || b.is_some_and(|b| b > base),
                    Side::Left => a.is_none() || a.is_some_and(|a| a < base),
                }),
            };
            if far || unbounded_oriented {
                return Err(CurveError::BadRayEnd("ray part must be unoriented".into()));
            }
            let mut slots = Vec::new();
            for j in 1..=re.slots {
                let x = match re.side {
                    Side::Right => base + Q::from_integer(j as i64),
                    Side::Left => base - Q::from_integer(j as i64),
                };
                let id = marks.len();
                marks.push(Mark { comp: re.component, local: 0, coord: x, slot: Some((ei, j)) });
                comp_marks[re.component].push((x, id));
                slots.push(id);
            }
            ray_ends.push(RayEnd { comp: re.component, side: re.side, role: re.role, base, slots });
        }
        let _ = user_mark_count;

        // sort marks per component and set arcs
        let mut arc_offset = 0;
        for (ci, list) in comp_marks.iter_mut().enumerate() {
            list.sort();
            let comp = &mut components[ci];
            comp.marks = list.iter().map(|(_, id)| *id).collect();
            comp.coords = list.iter().map(|(q, _)| *q).collect();
            for (k, (_, id)) in list.iter().enumerate() {
                marks[*id].local = k;
            }
            comp.arc_offset = arc_offset;
            let m = comp.m();
            let arcs = comp.arc_count();
            comp.dec_ok = (0..arcs)
                .map(|k| {
                    let lo = comp.coords[k];
                    let hi = if k + 1 < m { comp.coords[k + 1] } else { comp.coords[0] + Q::from_integer(1) };
                    !comp.interval_meets_orientation(lo, hi)
                })
                .collect();
            arc_offset += arcs;
        }

        // matching
        let mut mark_point = vec![usize::MAX; marks.len()];
        let mut points: Vec<Vec<usize>> = Vec::new();
        let mut matching = Vec::new();
        let mut parent: Vec<usize> = (0..components.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(a1, b1) in matching_ids {
            if a1 == 0 || b1 == 0 || a1 > user_mark_count || b1 > user_mark_count || a1 == b1 {
                return Err(CurveError::BadMatching(format!("bad pair ({a1}, {b1})")));
            }
            let (a, b) = (a1 - 1, b1 - 1);
            if mark_point[a] != usize::MAX || mark_point[b] != usize::MAX {
                return Err(CurveError::BadMatching(format!("mark reused in ({a1}, {b1})")));
            }
            for &x in &[a, b] {
                let c = &components[marks[x].comp];
                if !c.point_oriented(marks[x].coord) {
                    return Err(CurveError::BadMatching(format!("mark {} is not in an oriented region", x + 1)));
                }
            }
            mark_point[a] = points.len();
            mark_point[b] = points.len();
            points.push(vec![a, b]);
            matching.push((a, b));
            let (ra, rb) = (find(&mut parent, marks[a].comp), find(&mut parent, marks[b].comp));
            parent[ra] = rb;
        }
        for (x, mp) in mark_point.iter_mut().enumerate() {
            if *mp == usize::MAX {
                *mp = points.len();
                points.push(vec![x]);
            }
        }
        let mut roots: Vec<usize> = (0..components.len()).map(|c| find(&mut parent, c)).collect();
        let mut uniq = roots.clone();
        uniq.sort();
        uniq.dedup();
        for (ci, r) in roots.iter_mut().enumerate() {
            components[ci].omega = uniq.binary_search(r).unwrap();
        }

        let layout = Arc::new(GammaLayout {
            components: uniq.len(),
            marks: marks
                .iter()
                .map(|mk| {
                    let c = &components[mk.comp];
                    let m = c.m();
                    let (before, after) = match c.topology {
                        Topology::Line => (
                            (mk.local > 0).then(|| c.arc_offset + mk.local - 1),
                            (mk.local + 1 < m).then(|| c.arc_offset + mk.local),
                        ),
                        Topology::Circle => {
                            (Some(c.arc_offset + (mk.local + m - 1) % m), Some(c.arc_offset + mk.local))
                        }
                    };
                    MarkLayout { omega: c.omega, arc_before: before, arc_after: after }
                })
                .collect(),
            arcs: arc_offset,
        });

        Ok(CurveModel {
            components,
            marks,
            points,
            mark_point,
            matching,
            omega_count: uniq.len(),
            ray_ends,
            layout,
            spec,
        })
    }

    /// The non-singular cover: the same diagram with the matching erased.
    /// Mark ids are shared, so the projection on marks is the identity and
    /// on points it is `mark_point`.
    pub fn nonsingular_cover(&self) -> CurveModel {
        self.with_matching(&[])
    }

    /// The same diagram with only some of the matched pairs (given by
    /// index into `matching`).
    pub fn with_matching(&self, keep: &[usize]) -> CurveModel {
        let mut spec = self.spec.clone();
        spec.matching = keep.iter().map(|&k| [self.matching[k].0 + 1, self.matching[k].1 + 1]).collect();
        Self::from_spec(spec).expect("sub-matching of a valid model")
    }

    pub fn is_singular_point(&self, p: usize) -> bool {
        self.points[p].len() > 1
    }

    pub fn is_singular_mark(&self, x: usize) -> bool {
        self.is_singular_point(self.mark_point[x])
    }

    /// Points carrying no slot.
    pub fn regular_points(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.marks[self.points[p][0]].slot.is_none()).collect()
    }

    /// Mark id (0-based) given a 1-based id from a file.
    pub fn point_of_mark_id(&self, id1: usize) -> Option<usize> {
        (id1 >= 1 && id1 <= self.marks.len()).then(|| self.mark_point[id1 - 1])
    }

    pub fn slot_point(&self, end: usize, j: usize) -> usize {
        self.mark_point[self.ray_ends[end].slots[j - 1]]
    }

    // -----------------------------------------------------------------------
    // Paths

    pub fn path(&self, comp: usize, from: i64, to: i64) -> Path {
        let c = &self.components[comp];
        let (from, to) = match c.topology {
            Topology::Line => (from, to),
            Topology::Circle => {
                let m = c.m() as i64;
                let k = from.div_euclid(m);
                (from - k * m, to - k * m)
            }
        };
        let p = Path { comp, from, to };
        if from == to {
            self.identity_path(self.mark_point[c.marks[from as usize]])
        } else {
            p
        }
    }

    /// The identity at a point, on the canonical (first) mark.
    pub fn identity_path(&self, point: usize) -> Path {
        let x = self.points[point][0];
        let mk = &self.marks[x];
        Path { comp: mk.comp, from: mk.local as i64, to: mk.local as i64 }
    }

    pub fn identity_at_mark(&self, x: usize) -> Path {
        let mk = &self.marks[x];
        Path { comp: mk.comp, from: mk.local as i64, to: mk.local as i64 }
    }

    pub fn mark_at(&self, comp: usize, l: i64) -> usize {
        let c = &self.components[comp];
        c.marks[c.normalize(l).0]
    }

    pub fn start_mark(&self, p: &Path) -> usize {
        self.mark_at(p.comp, p.from)
    }

    pub fn end_mark(&self, p: &Path) -> usize {
        self.mark_at(p.comp, p.to)
    }

    pub fn start_point(&self, p: &Path) -> usize {
        self.mark_point[self.start_mark(p)]
    }

    pub fn end_point(&self, p: &Path) -> usize {
        self.mark_point[self.end_mark(p)]
    }

    /// Traversed arcs as global arc ids with signs.
    pub fn traversed(&self, p: &Path) -> Vec<(usize, i64)> {
        let c = &self.components[p.comp];
        let (lo, hi, s) = if p.to >= p.from { (p.from, p.to, 1) } else { (p.to, p.from, -1) };
        (lo..hi).map(|l| (c.arc_offset + c.arc_index(l), s)).collect()
    }

    pub fn admissible(&self, p: &Path) -> bool {
        if p.to >= p.from {
            return true;
        }
        let c = &self.components[p.comp];
        (p.to..p.from).all(|l| c.dec_ok[c.arc_index(l)])
    }

    /// `⟦ζ⟧` as a vector over all arcs.
    pub fn arc_class(&self, p: &Path) -> Vec<i64> {
        let mut v = vec![0; self.layout.arcs];
        for (a, s) in self.traversed(p) {
            v[a] += s;
        }
        v
    }

    /// `b ∘ a` (`a` first). Errors when `a` does not end where `b` starts;
    /// `Ok(None)` when the composite is not smooth or not admissible.
    pub fn compose(&self, b: &Path, a: &Path) -> Result<Option<Path>, CurveError> {
        if self.end_point(a) != self.start_point(b) {
            return Err(CurveError::EndpointMismatch(self.encode_path(a), self.encode_path(b)));
        }
        if a.is_identity() {
            return Ok(Some(*b));
        }
        if b.is_identity() {
            return Ok(Some(*a));
        }
        if a.comp != b.comp || self.end_mark(a) != self.start_mark(b) {
            return Ok(None);
        }
        let c = &self.components[a.comp];
        let shift = match c.topology {
            Topology::Line => 0,
            Topology::Circle => {
                let m = c.m() as i64;
                a.to.div_euclid(m) * m
            }
        };
        let to = b.to + shift;
        let p = self.path(a.comp, a.from, to);
        Ok(self.admissible(&p).then_some(p))
    }

    /// Cover lifts of a class: both constant lifts for the identity at a
    /// singular point, the class itself otherwise.
    pub fn lifts(&self, p: &Path) -> Vec<Path> {
        if p.is_identity() {
            let pt = self.start_point(p);
            self.points[pt].iter().map(|&x| self.identity_at_mark(x)).collect()
        } else {
            vec![*p]
        }
    }

    /// Intersection count of two lifts on the cover.
    pub fn cover_intersection(&self, a: &Path, b: &Path) -> usize {
        if a.comp != b.comp || (a.is_identity() && b.is_identity()) {
            return 0;
        }
        let c = &self.components[a.comp];
        if a.is_identity() || b.is_identity() {
            let (id, p) = if a.is_identity() { (a, b) } else { (b, a) };
            let (lo, hi) = (p.from.min(p.to), p.from.max(p.to));
            return match c.topology {
                Topology::Line => usize::from(lo <= id.from && id.from <= hi),
                Topology::Circle => {
                    let m = c.m() as i64;
                    (lo..=hi).filter(|l| (l - id.from).rem_euclid(m) == 0).count()
                }
            };
        }
        match c.topology {
            Topology::Line => usize::from((b.from - a.from).signum() != (b.to - a.to).signum()),
            Topology::Circle => {
                let m = c.m() as i64;
                ((b.to - a.to).div_euclid(m) - (b.from - a.from).div_euclid(m)).unsigned_abs() as usize
            }
        }
    }

    /// Intersection count on the curve: the sum over cover lifts.
    pub fn intersection(&self, a: &Path, b: &Path) -> usize {
        let mut t = 0;
        for la in self.lifts(a) {
            for lb in self.lifts(b) {
                t += self.cover_intersection(&la, &lb);
            }
        }
        t
    }

    /// Translates of `b` that cross `a` on the cover, as the connector
    /// `ζ: a(0) -> b(0)` in lifted indices.
    pub fn crossing_shifts(&self, a: &Path, b: &Path) -> Vec<i64> {
        if a.comp != b.comp {
            return vec![];
        }
        let c = &self.components[a.comp];
        let crosses = |k: i64| {
            let s0 = (b.from + k - a.from).signum();
            let s1 = (b.to + k - a.to).signum();
            s0 != 0 && s1 != 0 && s0 != s1
        };
        match c.topology {
            Topology::Line => {
                if crosses(0) {
                    vec![0]
                } else {
                    vec![]
                }
            }
            Topology::Circle => {
                let m = c.m() as i64;
                let span = (a.from - b.from).abs() + (a.to - b.to).abs() + 2 * m;
                let kmax = span / m + 1;
                (-kmax..=kmax).map(|k| k * m).filter(|&k| crosses(k)).collect()
            }
        }
    }

    /// The connecting classes `I(a, b)` together with `I(b, a)` on the
    /// cover: every `ζ` between starting points whose transport `ζ̄`
    /// between end points has the opposite orientation. Requires distinct
    /// start points and distinct end points.
    pub fn connecting_classes(&self, a: &Path, b: &Path) -> Result<Vec<Connector>, CurveError> {
        if self.start_point(a) == self.start_point(b) || self.end_point(a) == self.end_point(b) {
            return Err(CurveError::EndpointsEqual(format!("{} / {}", self.encode_path(a), self.encode_path(b))));
        }
        let mut out = Vec::new();
        for la in self.lifts(a) {
            for lb in self.lifts(b) {
                for k in self.crossing_shifts(&la, &lb) {
                    out.push(Connector { comp: la.comp, from: la.from, to: lb.from + k });
                    out.push(Connector { comp: la.comp, from: lb.from, to: la.from - k });
                }
            }
        }
        Ok(out)
    }

    /// `m_c^±` at the germ of direction `dir` at a mark: departures (`+`)
    /// or arrivals (`−`) of the minimal lift through that germ.
    pub fn tangential_multiplicity(&self, mark: usize, dir: Direction, plus: bool, p: &Path) -> usize {
        let mk = &self.marks[mark];
        if p.comp != mk.comp || p.is_identity() {
            return 0;
        }
        let c = &self.components[p.comp];
        let at = |l: i64| match c.topology {
            Topology::Line => l == mk.local as i64,
            Topology::Circle => (l - mk.local as i64).rem_euclid(c.m() as i64) == 0,
        };
        let up = p.to > p.from;
        let range: Box<dyn Iterator<Item = i64>> = match (up, dir, plus) {
            // departures through the upward germ
            (true, Direction::Up, true) => Box::new(p.from..p.to),
            // arrivals from below: through the downward germ
            (true, Direction::Down, false) => Box::new(p.from + 1..=p.to),
            (false, Direction::Down, true) => Box::new(p.to + 1..=p.from),
            (false, Direction::Up, false) => Box::new(p.to..p.from),
            _ => Box::new(std::iter::empty()),
        };
        range.filter(|&l| at(l)).count()
    }

    pub fn encode_path(&self, p: &Path) -> String {
        let c = &self.components[p.comp];
        let wind = match c.topology {
            Topology::Line => 0,
            Topology::Circle => p.to.div_euclid(c.m() as i64),
        };
        format!("({}, {}, {}, {})", p.comp, self.start_mark(p) + 1, self.end_mark(p) + 1, wind)
    }

    /// Every admissible class from `s` to `t` (points) with
    /// `|to − from| ≤ min(mu, W·m)` on circles and `≤ mu` on lines.
    pub fn paths_between(&self, s: usize, t: usize, winding: usize, mu: usize) -> Vec<Path> {
        let mut out = BTreeSet::new();
        if s == t {
            out.insert(self.identity_path(s));
        }
        for &x in &self.points[s] {
            for &y in &self.points[t] {
                let (mx, my) = (&self.marks[x], &self.marks[y]);
                if mx.comp != my.comp {
                    continue;
                }
                let c = &self.components[mx.comp];
                let from = mx.local as i64;
                match c.topology {
                    Topology::Line => {
                        let to = my.local as i64;
                        if (to - from).unsigned_abs() as usize <= mu {
                            let p = self.path(mx.comp, from, to);
                            if self.admissible(&p) {
                                out.insert(p);
                            }
                        }
                    }
                    Topology::Circle => {
                        let m = c.m() as i64;
                        let reach = (winding as i64 * m).min(mu as i64);
                        let base = my.local as i64;
                        let kmax = reach / m + 1;
                        for k in -kmax..=kmax {
                            let to = base + k * m;
                            if (to - from).abs() <= reach {
                                let p = self.path(mx.comp, from, to);
                                if self.admissible(&p) {
                                    out.insert(p);
                                }
                            }
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn path_length(&self, p: &Path) -> usize {
        (p.to - p.from).unsigned_abs() as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// A monotone lift of a path class on the cover.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub comp: usize,
    pub from: i64,
    pub to: i64,
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}->{}]", self.comp, self.from, self.to)
    }
}

impl Path {
    pub fn is_identity(&self) -> bool {
        self.from == self.to
    }
}

impl BasisToken for Path {
    fn encode(&self) -> String {
        format!("({}, {}, {})", self.comp, self.from, self.to)
    }
}

/// A homotopy class between two lifted marks, not necessarily admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Connector {
    pub comp: usize,
    pub from: i64,
    pub to: i64,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn torus() -> CurveModel {
        CurveModel::from_json(
            r#"{"components":[{"kind":"OrientedInterval","marks":["1","2","3","4"]}],
                "matching":[[1,3],[2,4]]}"#,
        )
        .unwrap()
    }

    #[test]
    fn parse_and_reject() {
        let t = torus();
        assert_eq!(t.points.len(), 2);
        assert_eq!(t.omega_count, 1);
        assert!(CurveModel::from_json(r#"{"components":[],"extra":1}"#).is_err());
        assert!(CurveModel::from_json(
            r#"{"components":[{"kind":"UnorientedInterval","marks":["1","2"]}],"matching":[[1,2]]}"#
        )
        .is_err());
        assert!(CurveModel::from_json(r#"{"components":[{"kind":"OrientedCircle","marks":["3/2"]}]}"#).is_err());
        assert!(CurveModel::from_json(
            r#"{"components":[{"kind":"UnorientedInterval","marks":["1"],"bogus":2}]}"#
        )
        .is_err());
    }

    #[test]
    fn cover_of_unmatched_is_itself() {
        let m = CurveModel::from_json(r#"{"components":[{"kind":"UnorientedCircle","marks":["0","1/2"]}]}"#).unwrap();
        let c = m.nonsingular_cover();
        assert_eq!(c.points, m.points);
        let t = torus().nonsingular_cover();
        assert_eq!(t.points.len(), 4);
    }

    #[test]
    fn composition_on_lines() {
        let m = CurveModel::from_json(r#"{"components":[{"kind":"OrientedInterval","marks":["0","1","2"]}]}"#).unwrap();
        let a = m.path(0, 0, 1);
        let b = m.path(0, 1, 2);
        assert_eq!(m.compose(&b, &a).unwrap(), Some(m.path(0, 0, 2)));
        let id = m.identity_path(m.mark_point[0]);
        assert_eq!(m.compose(&a, &id).unwrap(), Some(a));
        assert!(!m.admissible(&m.path(0, 1, 0)));
        assert!(m.compose(&a, &b).is_err());
    }

    #[test]
    fn torus_composites_across_singular_points() {
        let t = torus();
        let alpha_p = t.path(0, 0, 1);
        let beta = t.path(0, 1, 2);
        let alpha = t.path(0, 2, 3);
        // β then α: β ends at mark 3, α starts at mark 3
        assert_eq!(t.compose(&alpha, &beta).unwrap(), Some(t.path(0, 1, 3)));
        // α' then β: α' ends at mark 2, β starts at mark 2
        assert_eq!(t.compose(&beta, &alpha_p).unwrap(), Some(t.path(0, 0, 2)));
        // α then β: α ends at mark 4, β starts at mark 2, same point but no lift
        assert_eq!(t.compose(&beta, &alpha).unwrap(), None);
    }

    #[test]
    fn intersection_examples() {
        let l = CurveModel::from_json(r#"{"components":[{"kind":"UnorientedInterval","marks":["0","1/2","1"]}]}"#).unwrap();
        assert_eq!(l.intersection(&l.path(0, 0, 2), &l.path(0, 2, 0)), 1);
        assert_eq!(l.intersection(&l.path(0, 0, 2), &l.identity_path(l.mark_point[1])), 1);
        // circumference 1, marks every quarter: 0 -> 1.25 against 0.5 -> 0.75
        let c = CurveModel::from_json(
            r#"{"components":[{"kind":"UnorientedCircle","marks":["0","1/4","1/2","3/4"]}]}"#,
        )
        .unwrap();
        assert_eq!(c.intersection(&c.path(0, 0, 5), &c.path(0, 2, 3)), 1);
    }

    #[test]
    fn identity_count_matches_multiplicity_formula() {
        let c = CurveModel::from_json(
            r#"{"components":[{"kind":"UnorientedCircle","marks":["0","1/3","2/3"]}]}"#,
        )
        .unwrap();
        for from in 0..3 {
            for to in -7..8 {
                let p = c.path(0, from, to);
                if p.is_identity() {
                    continue;
                }
                for x in 0..3 {
                    let id = c.identity_at_mark(x);
                    let mut twice = 0;
                    for dir in [Direction::Up, Direction::Down] {
                        twice += c.tangential_multiplicity(x, dir, true, &p);
                        twice += c.tangential_multiplicity(x, dir, false, &p);
                    }
                    twice += usize::from(c.start_mark(&p) == x) + usize::from(c.end_mark(&p) == x);
                    assert_eq!(2 * c.cover_intersection(&p, &id), twice, "{p:?} at {x}");
                    // the flux identity m_{c+} - m_{c-} = α[A+] + α[A-]
                    let m = |d| {
                        c.tangential_multiplicity(x, d, true, &p) as i64
                            - c.tangential_multiplicity(x, d, false, &p) as i64
                    };
                    assert_eq!(m(Direction::Up) - m(Direction::Down), c.layout.flux(&c.arc_class(&p), x));
                }
            }
        }
    }

    #[test]
    fn tangential_examples() {
        let l = CurveModel::from_json(r#"{"components":[{"kind":"UnorientedInterval","marks":["0","1","2"]}]}"#).unwrap();
        let p = l.path(0, 0, 2);
        assert_eq!(l.tangential_multiplicity(1, Direction::Up, true, &p), 1);
        assert_eq!(l.tangential_multiplicity(1, Direction::Down, false, &p), 1);
        let id = l.identity_path(0);
        assert_eq!(l.tangential_multiplicity(0, Direction::Up, true, &id), 0);
        let c = CurveModel::from_json(r#"{"components":[{"kind":"OrientedCircle","marks":["0","1/2"]}]}"#).unwrap();
        let w = c.path(0, 1, 5);
        assert_eq!(c.tangential_multiplicity(0, Direction::Up, true, &w), 2);
    }

    #[test]
    fn connecting_class_examples() {
        let l = CurveModel::from_json(
            r#"{"components":[{"kind":"UnorientedInterval","marks":["0","1","2","3"]}]}"#,
        )
        .unwrap();
        assert!(l.connecting_classes(&l.path(0, 0, 1), &l.path(0, 2, 3)).unwrap().is_empty());
        assert_eq!(l.connecting_classes(&l.path(0, 0, 1), &l.path(0, 1, 0)).unwrap().len(), 2);
        let mid = l.identity_path(l.mark_point[1]);
        assert_eq!(l.connecting_classes(&mid, &l.path(0, 0, 2)).unwrap().len(), 2);
        assert!(l.connecting_classes(&l.path(0, 0, 1), &l.path(0, 0, 2)).is_err());
    }
}

//! Lattice paths, dual paths, ribbons and semi-infinite rays, with their
//! string operators.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{parse_bond, plaquette_bonds, Bond, Face, Region, Vertex, Window};
use crate::pauli::PauliOp;
use crate::text::Cursor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    X,
    Y,
    Z,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::X => "X",
            Kind::Y => "Y",
            Kind::Z => "Z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    E,
    N,
    S,
    W,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
            Step::S => 'S',
            Step::W => 'W',
        }
    }
}

/// End of a dual path: a face, or the outside of the lattice west of column 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum XEnd {
    Boundary,
    Face(Face),
}

impl fmt::Display for XEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XEnd::Boundary => f.write_str("boundary"),
            XEnd::Face(p) => write!(f, "face({},{})", p.i, p.j),
        }
    }
}

/// Dual-lattice neighbor of `at` across `b`, if `b` lies on `at`.
fn across_dual(at: XEnd, b: &Bond) -> Option<XEnd> {
    match at {
        XEnd::Boundary => b.is_boundary().then_some(XEnd::Face(Face::new(0, b.j))),
        XEnd::Face(f) => {
            if !plaquette_bonds(f).contains(b) {
                return None;
            }
            if b.is_boundary() {
                return Some(XEnd::Boundary);
            }
            b.faces().into_iter().find(|g| *g != f).map(XEnd::Face)
        }
    }
}

fn z_step(v: Vertex, s: Step) -> Option<(Bond, Vertex)> {
    match s {
        Step::E => Some((Bond::h(v.i, v.j), Vertex::new(v.i + 1, v.j))),
        Step::W if v.i > 0 => Some((Bond::h(v.i - 1, v.j), Vertex::new(v.i - 1, v.j))),
        Step::N => Some((Bond::v(v.i, v.j), Vertex::new(v.i, v.j + 1))),
        Step::S => Some((Bond::v(v.i, v.j - 1), Vertex::new(v.i, v.j - 1))),
        Step::W => None,
    }
}

/// Dual step from face `(i, j)`; column `-1` stands for the outside.
fn x_step(f: (i32, i32), s: Step) -> Option<(Bond, (i32, i32))> {
    let (i, j) = f;
    if i < 0 && s != Step::E {
        return None;
    }
    match s {
        Step::E => Some((Bond::v(i + 1, j), (i + 1, j))),
        Step::W if i > 0 => Some((Bond::v(i, j), (i - 1, j))),
        Step::N => Some((Bond::h(i, j + 1), (i, j + 1))),
        Step::S => Some((Bond::h(i, j), (i, j - 1))),
        Step::W => None,
    }
}

/// Edge path on the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZPath {
    bonds: Vec<Bond>,
}

impl ZPath {
    pub fn empty() -> ZPath {
        ZPath { bonds: Vec::new() }
    }

    /// Checks that consecutive bonds share a vertex.
    pub fn new(bonds: Vec<Bond>) -> Result<ZPath> {
        for w in bonds.windows(2) {
            let [a, b] = [w[0].endpoints(), w[1].endpoints()];
            if !a.iter().any(|v| b.contains(v)) {
                return Err(Error::InvalidPath(format!("{} and {} share no vertex", w[0], w[1])));
            }
        }
        let distinct: BTreeSet<&Bond> = bonds.iter().collect();
        if distinct.len() != bonds.len() {
            return Err(Error::InvalidPath("z-path repeats a bond".into()));
        }
        Ok(ZPath { bonds })
    }

    pub fn walk(start: Vertex, steps: &[Step]) -> Result<ZPath> {
        let mut v = start;
        let mut bonds = Vec::with_capacity(steps.len());
        for s in steps {
            let (b, next) =
                z_step(v, *s).ok_or_else(|| Error::InvalidPath(format!("step {s:?} from {v} leaves the half-plane")))?;
            bonds.push(b);
            v = next;
        }
        ZPath::new(bonds)
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    /// Vertices where an odd number of path bonds meet.
    pub fn endpoints(&self) -> Vec<Vertex> {
        let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
        for b in &self.bonds {
            for v in b.endpoints() {
                *deg.entry(v).or_default() += 1;
            }
        }
        deg.into_iter().filter(|(_, d)| d % 2 == 1).map(|(v, _)| v).collect()
    }

    pub fn op(&self) -> PauliOp {
        PauliOp::z_on(self.bonds.iter().copied())
    }

    pub fn parse(text: &str) -> Result<ZPath> {
        let mut cur = Cursor::new(text);
        cur.expect("zpath")?;
        cur.expect(":")?;
        let mut bonds = Vec::new();
        while !cur.at_end() {
            bonds.push(parse_bond(&mut cur)?);
        }
        ZPath::new(bonds)
    }
}

impl fmt::Display for ZPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("zpath:")?;
        for b in &self.bonds {
            write!(f, " {b}")?;
        }
        Ok(())
    }
}

impl FromStr for ZPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<ZPath> {
        ZPath::parse(s)
    }
}

/// Dual-lattice path recorded by the bonds it crosses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XPath {
    start: XEnd,
    crossings: Vec<Bond>,
    end: XEnd,
}

impl XPath {
    pub fn empty(at: XEnd) -> XPath {
        XPath {
            start: at,
            crossings: Vec::new(),
            end: at,
        }
    }

    /// Walks the crossings from `start`; each must lie on the current face.
    /// The path may touch the outside only at its ends.
    pub fn new(start: XEnd, crossings: Vec<Bond>) -> Result<XPath> {
        let mut at = start;
        for (k, b) in crossings.iter().enumerate() {
            if at == XEnd::Boundary && k > 0 {
                return Err(Error::InvalidPath(format!("x-path re-enters the lattice at {b}")));
            }
            at = across_dual(at, b).ok_or_else(|| Error::InvalidPath(format!("{b} does not lie on {at}")))?;
        }
        let distinct: BTreeSet<&Bond> = crossings.iter().collect();
        if distinct.len() != crossings.len() {
            return Err(Error::InvalidPath("x-path crosses a bond twice".into()));
        }
        Ok(XPath {
            start,
            crossings,
            end: at,
        })
    }

    pub fn start(&self) -> XEnd {
        self.start
    }

    pub fn end(&self) -> XEnd {
        self.end
    }

    pub fn crossings(&self) -> &[Bond] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn op(&self) -> PauliOp {
        PauliOp::x_on(self.crossings.iter().copied())
    }

    pub fn parse(text: &str) -> Result<XPath> {
        let mut cur = Cursor::new(text);
        cur.expect("xpath")?;
        cur.expect(":")?;
        let mut start = None;
        if cur.eat("from") {
            start = Some(parse_xend(&mut cur)?);
        }
        let mut crossings = Vec::new();
        while !cur.at_end() {
            cur.expect("cross")?;
            crossings.push(parse_bond(&mut cur)?);
        }
        let start = match (start, crossings.first()) {
            (Some(s), _) => s,
            (None, Some(b)) if b.is_boundary() => XEnd::Boundary,
            (None, None) => XEnd::Boundary,
            (None, Some(_)) => return cur.err("an x-path not starting at the boundary needs `from face(i,j)`"),
        };
        XPath::new(start, crossings)
    }
}

fn parse_xend(cur: &mut Cursor<'_>) -> Result<XEnd> {
    if cur.eat("boundary") {
        return Ok(XEnd::Boundary);
    }
    cur.expect("face")?;
    let (i, j) = parse_pair(cur)?;
    Ok(XEnd::Face(Face::new(i, j)))
}

fn parse_pair(cur: &mut Cursor<'_>) -> Result<(i32, i32)> {
    cur.expect("(")?;
    let at = cur.pos();
    let i = cur.int32()?;
    cur.expect(",")?;
    let j = cur.int32()?;
    cur.expect(")")?;
    if i < 0 {
        return Err(Error::Parse {
            pos: at,
            msg: format!("column {i} is west of the boundary"),
        });
    }
    Ok((i, j))
}

impl fmt::Display for XPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("xpath:")?;
        let implicit = self.start == XEnd::Boundary;
        if !implicit {
            write!(f, " from {}", self.start)?;
        }
        for b in &self.crossings {
            write!(f, " cross {b}")?;
        }
        Ok(())
    }
}

impl FromStr for XPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<XPath> {
        XPath::parse(s)
    }
}

/// Type-Y path: a dual path and a lattice path running side by side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ribbon {
    x: XPath,
    z: ZPath,
}

impl Ribbon {
    /// Requires equal lengths, disjoint supports, and the `k`-th crossing and
    /// `k`-th bond lying on a common face.
    pub fn new(x: XPath, z: ZPath) -> Result<Ribbon> {
        if x.len() != z.len() {
            return Err(Error::InvalidPath(format!(
                "ribbon parts have lengths {} and {}",
                x.len(),
                z.len()
            )));
        }
        let zs: BTreeSet<&Bond> = z.bonds().iter().collect();
        if let Some(b) = x.crossings().iter().find(|b| zs.contains(b)) {
            return Err(Error::InvalidPath(format!("ribbon parts overlap at {b}")));
        }
        for (a, b) in x.crossings().iter().zip(z.bonds()) {
            let fa = a.faces();
            if !b.faces().iter().any(|f| fa.contains(f)) {
                return Err(Error::InvalidPath(format!("{a} and {b} share no face")));
            }
        }
        Ok(Ribbon { x, z })
    }

    pub fn x_part(&self) -> &XPath {
        &self.x
    }

    pub fn z_part(&self) -> &ZPath {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `Γ^X · Γ^Z`.
    pub fn op(&self) -> PauliOp {
        self.x.op().mul(&self.z.op())
    }
}

/// A finite path of any kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FinitePath {
    Z(ZPath),
    X(XPath),
    Y(Ribbon),
}

impl FinitePath {
    pub fn kind(&self) -> Kind {
        match self {
            FinitePath::Z(_) => Kind::Z,
            FinitePath::X(_) => Kind::X,
            FinitePath::Y(_) => Kind::Y,
        }
    }

    pub fn op(&self) -> PauliOp {
        match self {
            FinitePath::Z(p) => p.op(),
            FinitePath::X(p) => p.op(),
            FinitePath::Y(r) => r.op(),
        }
    }

    pub fn bonds(&self) -> BTreeSet<Bond> {
        match self {
            FinitePath::Z(p) => p.bonds().iter().copied().collect(),
            FinitePath::X(p) => p.crossings().iter().copied().collect(),
            FinitePath::Y(r) => r.x.crossings().iter().chain(r.z.bonds()).copied().collect(),
        }
    }
}

/// Where a ray starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Anchor {
    /// Z- and Y-rays: the spine's first vertex.
    Vertex(Vertex),
    /// X-rays: a face.
    Face(Face),
    /// X-rays entering from the outside through `V(0, row)`.
    Boundary(i32),
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Vertex(v) => write!(f, "({},{})", v.i, v.j),
            Anchor::Face(p) => write!(f, "face({},{})", p.i, p.j),
            Anchor::Boundary(j) => write!(f, "boundary({j})"),
        }
    }
}

/// Semi-infinite string: an anchor, a finite prefix of steps, then a
/// periodic tail drawn from `{E, N}` or `{E, S}` with at least one `E`.
///
/// A Y-ray follows a monotone spine; its dual part runs along the faces on
/// the west side of the spine (north-going) or the south-west (south-going).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RayPath {
    kind: Kind,
    anchor: Anchor,
    prefix: Vec<Step>,
    tail: Vec<Step>,
}

/// One step of a ray: the crossed bond (X part) and/or the traversed bond (Z part).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayElement {
    pub x: Option<Bond>,
    pub z: Option<Bond>,
}

#[derive(Debug, Clone, Copy)]
struct WalkState {
    spine: (i32, i32),
    dual: (i32, i32),
}

impl RayPath {
    pub fn new(kind: Kind, anchor: Anchor, prefix: Vec<Step>, tail: Vec<Step>) -> Result<RayPath> {
        if tail.is_empty() || !tail.contains(&Step::E) || tail.contains(&Step::W) {
            return Err(Error::InvalidPath("ray tail must use E with N or S only".into()));
        }
        if tail.contains(&Step::N) && tail.contains(&Step::S) {
            return Err(Error::InvalidPath("ray tail mixes N and S".into()));
        }
        match (kind, anchor) {
            (Kind::X, Anchor::Face(_) | Anchor::Boundary(_)) | (Kind::Y | Kind::Z, Anchor::Vertex(_)) => {}
            _ => return Err(Error::InvalidPath(format!("anchor {anchor} does not fit a {kind}-ray"))),
        }
        if kind == Kind::Y {
            let all: Vec<Step> = prefix.iter().chain(&tail).copied().collect();
            if all.contains(&Step::W) || (all.contains(&Step::N) && all.contains(&Step::S)) {
                return Err(Error::InvalidPath("Y-ray spine must be monotone".into()));
            }
        }
        let ray = RayPath {
            kind,
            anchor,
            prefix,
            tail,
        };
        // Validates the prefix and one tail period.
        let steps = ray.prefix.len() + ray.tail.len();
        let mut state = ray.start_state();
        let mut seen = BTreeSet::new();
        for k in 0..steps {
            let (e, next) = ray.advance(state, ray.step(k))?;
            if e.x.iter().chain(&e.z).any(|b| !seen.insert(*b)) {
                return Err(Error::InvalidPath(format!("{ray} reuses a bond")));
            }
            state = next;
        }
        Ok(ray)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    pub fn prefix(&self) -> &[Step] {
        &self.prefix
    }

    pub fn tail(&self) -> &[Step] {
        &self.tail
    }

    pub fn is_boundary_anchored(&self) -> bool {
        match self.anchor {
            Anchor::Vertex(v) => v.i == 0,
            Anchor::Boundary(_) => true,
            Anchor::Face(_) => false,
        }
    }

    fn goes_south(&self) -> bool {
        self.prefix.iter().chain(&self.tail).any(|s| *s == Step::S)
    }

    fn step(&self, k: usize) -> Step {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.tail[(k - self.prefix.len()) % self.tail.len()]
        }
    }

    fn start_state(&self) -> WalkState {
        match self.anchor {
            Anchor::Vertex(v) => {
                let dj = if self.goes_south() { 1 } else { 0 };
                WalkState {
                    spine: (v.i, v.j),
                    dual: (v.i - 1, v.j - dj),
                }
            }
            Anchor::Face(f) => WalkState {
                spine: (f.i, f.j),
                dual: (f.i, f.j),
            },
            Anchor::Boundary(j) => WalkState {
                spine: (-1, j),
                dual: (-1, j),
            },
        }
    }

    fn advance(&self, st: WalkState, s: Step) -> Result<(RayElement, WalkState)> {
        let bad = || Error::InvalidPath(format!("{self}: step {s:?} leaves the half-plane"));
        match self.kind {
            Kind::Z => {
                let (b, v) = z_step(Vertex::new(st.spine.0, st.spine.1), s).ok_or_else(bad)?;
                Ok((
                    RayElement { x: None, z: Some(b) },
                    WalkState {
                        spine: (v.i, v.j),
                        dual: st.dual,
                    },
                ))
            }
            Kind::X => {
                let (b, f) = x_step(st.dual, s).ok_or_else(bad)?;
                if f.0 < 0 {
                    return Err(bad());
                }
                Ok((RayElement { x: Some(b), z: None }, WalkState { spine: f, dual: f }))
            }
            Kind::Y => {
                let (zb, v) = z_step(Vertex::new(st.spine.0, st.spine.1), s).ok_or_else(bad)?;
                let (xb, f) = x_step(st.dual, s).ok_or_else(bad)?;
                if f.0 < 0 {
                    return Err(bad());
                }
                Ok((
                    RayElement { x: Some(xb), z: Some(zb) },
                    WalkState {
                        spine: (v.i, v.j),
                        dual: f,
                    },
                ))
            }
        }
    }

    /// The first `n` elements.
    pub fn elements(&self, n: usize) -> Vec<RayElement> {
        let mut st = self.start_state();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let (e, next) = self.advance(st, self.step(k)).expect("validated ray");
            out.push(e);
            st = next;
        }
        out
    }

    /// Spine vertex after `n` steps (Z- and Y-rays).
    pub fn vertex_after(&self, n: usize) -> Option<Vertex> {
        if self.kind == Kind::X {
            return None;
        }
        let mut st = self.start_state();
        for k in 0..n {
            st = self.advance(st, self.step(k)).expect("validated ray").1;
        }
        Some(Vertex::new(st.spine.0, st.spine.1))
    }

    /// Dual end after `n` steps (X-rays and the dual part of Y-rays).
    pub fn dual_after(&self, n: usize) -> Option<XEnd> {
        if self.kind == Kind::Z {
            return None;
        }
        let mut st = self.start_state();
        for k in 0..n {
            st = self.advance(st, self.step(k)).expect("validated ray").1;
        }
        Some(if st.dual.0 < 0 {
            XEnd::Boundary
        } else {
            XEnd::Face(Face::new(st.dual.0, st.dual.1))
        })
    }

    /// First `n` steps as a finite path.
    pub fn truncate(&self, n: usize) -> FinitePath {
        let els = self.elements(n);
        let xs: Vec<Bond> = els.iter().filter_map(|e| e.x).collect();
        let zs: Vec<Bond> = els.iter().filter_map(|e| e.z).collect();
        let x_start = match self.anchor {
            Anchor::Face(f) => XEnd::Face(f),
            Anchor::Boundary(_) => XEnd::Boundary,
            Anchor::Vertex(_) => self.dual_after(0).unwrap_or(XEnd::Boundary),
        };
        match self.kind {
            Kind::Z => FinitePath::Z(ZPath::new(zs).expect("validated ray")),
            Kind::X => FinitePath::X(XPath::new(x_start, xs).expect("validated ray")),
            Kind::Y => FinitePath::Y(
                Ribbon::new(
                    XPath::new(x_start, xs).expect("validated ray"),
                    ZPath::new(zs).expect("validated ray"),
                )
                .expect("validated ray"),
            ),
        }
    }

    /// Smallest `n` such that no element past step `n` touches `support`.
    pub fn covering_len(&self, support: &BTreeSet<Bond>) -> usize {
        let Some(max_i) = support.iter().map(|b| b.i).max() else {
            return 0;
        };
        let mut st = self.start_state();
        let mut last = 0;
        let mut k = 0;
        loop {
            let past_prefix = k >= self.prefix.len();
            let col = match self.kind {
                Kind::Z => st.spine.0,
                Kind::X => st.dual.0,
                Kind::Y => st.spine.0.min(st.dual.0),
            };
            if past_prefix && col > max_i + 2 {
                return last;
            }
            let (e, next) = self.advance(st, self.step(k)).expect("validated ray");
            if e.x.iter().chain(&e.z).any(|b| support.contains(b)) {
                last = k + 1;
            }
            st = next;
            k += 1;
        }
    }

    /// The Z-ray along the spine of a Y-ray.
    pub fn z_part(&self) -> Option<RayPath> {
        (self.kind == Kind::Y).then(|| RayPath {
            kind: Kind::Z,
            ..self.clone()
        })
    }

    /// The X-ray along the dual part of a Y-ray.
    pub fn x_part(&self) -> Option<RayPath> {
        if self.kind != Kind::Y {
            return None;
        }
        let anchor = match self.dual_after(0)? {
            XEnd::Face(f) => Anchor::Face(f),
            XEnd::Boundary => {
                let Anchor::Vertex(v) = self.anchor else { return None };
                Anchor::Boundary(if self.goes_south() { v.j - 1 } else { v.j })
            }
        };
        RayPath::new(Kind::X, anchor, self.prefix.clone(), self.tail.clone()).ok()
    }

    /// Same ray with the kind replaced; the anchor is kept for Y and Z and
    /// converted for X.
    pub fn with_kind(&self, kind: Kind) -> Result<RayPath> {
        match (self.kind, kind) {
            (a, b) if a == b => Ok(self.clone()),
            (Kind::Y | Kind::Z, Kind::Y | Kind::Z) => RayPath::new(kind, self.anchor, self.prefix.clone(), self.tail.clone()),
            (Kind::Y, Kind::X) => self.x_part().ok_or_else(|| Error::InvalidPath("no dual part".into())),
            (Kind::Z, Kind::X) => self.with_kind(Kind::Y)?.with_kind(Kind::X),
            _ => Err(Error::InvalidPath(format!("cannot turn an X-ray into a {kind}-ray"))),
        }
    }

    /// Prepends eastward steps from the boundary so a bulk ray starts on it.
    pub fn extend_to_boundary(&self) -> RayPath {
        let (anchor, lead) = match self.anchor {
            Anchor::Vertex(v) => (Anchor::Vertex(Vertex::new(0, v.j)), v.i as usize),
            Anchor::Face(f) => (Anchor::Boundary(f.j), f.i as usize + 1),
            Anchor::Boundary(_) => return self.clone(),
        };
        let mut prefix = vec![Step::E; lead];
        prefix.extend(&self.prefix);
        RayPath::new(self.kind, anchor, prefix, self.tail.clone()).expect("eastward extension is valid")
    }

    pub fn translate_j(&self, n: i32) -> RayPath {
        let anchor = match self.anchor {
            Anchor::Vertex(v) => Anchor::Vertex(Vertex::new(v.i, v.j + n)),
            Anchor::Face(f) => Anchor::Face(Face::new(f.i, f.j + n)),
            Anchor::Boundary(j) => Anchor::Boundary(j + n),
        };
        RayPath { anchor, ..self.clone() }
    }

    pub fn parse(text: &str) -> Result<RayPath> {
        let mut cur = Cursor::new(text);
        cur.expect("ray")?;
        cur.expect(":")?;
        let kind = match cur.ident()? {
            "X" => Kind::X,
            "Y" => Kind::Y,
            "Z" => Kind::Z,
            _ => return cur.err("expected ray kind X, Y or Z"),
        };
        cur.expect("anchor")?;
        cur.expect("=")?;
        let anchor = if cur.eat("face") {
            let (i, j) = parse_pair(&mut cur)?;
            Anchor::Face(Face::new(i, j))
        } else if cur.eat("boundary") {
            cur.expect("(")?;
            let j = cur.int32()?;
            cur.expect(")")?;
            Anchor::Boundary(j)
        } else {
            let (i, j) = parse_pair(&mut cur)?;
            Anchor::Vertex(Vertex::new(i, j))
        };
        cur.expect("prefix")?;
        cur.expect("=")?;
        let prefix = parse_steps(&mut cur)?;
        cur.expect("tail")?;
        cur.expect("=")?;
        let tail = parse_steps(&mut cur)?;
        cur.finish()?;
        RayPath::new(kind, anchor, prefix, tail)
    }
}

fn parse_steps(cur: &mut Cursor<'_>) -> Result<Vec<Step>> {
    cur.expect("[")?;
    let mut out = Vec::new();
    if cur.eat("]") {
        return Ok(out);
    }
    loop {
        out.push(match cur.ident()? {
            "E" => Step::E,
            "N" => Step::N,
            "S" => Step::S,
            "W" => Step::W,
            _ => return cur.err("expected a step E, N, S or W"),
        });
        if cur.eat("]") {
            return Ok(out);
        }
        cur.expect(",")?;
    }
}

fn fmt_steps(steps: &[Step]) -> String {
    let letters: Vec<String> = steps.iter().map(|s| s.letter().to_string()).collect();
    format!("[{}]", letters.join(","))
}

impl fmt::Display for RayPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ray: {} anchor={} prefix={} tail={}",
            self.kind,
            self.anchor,
            fmt_steps(&self.prefix),
            fmt_steps(&self.tail)
        )
    }
}

impl FromStr for RayPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<RayPath> {
        RayPath::parse(s)
    }
}

/// Neighbors in ascending (row, column, orientation) order of the connecting bond.
fn sorted_by_bond<T>(mut v: Vec<(Bond, T)>) -> Vec<(Bond, T)> {
    v.sort_by_key(|(b, _)| (b.j, b.i, b.orient));
    v
}

/// Shortest lattice path from `v1` to `v2` using only bonds in both
/// `region` and `bounds`.
pub fn connect_z(v1: Vertex, v2: Vertex, region: &dyn Region, bounds: &Window) -> Result<ZPath> {
    if v1 == v2 {
        return Ok(ZPath::empty());
    }
    let allowed = |b: &Bond| bounds.contains(b) && region.contains(b);
    let incident = |v: Vertex| -> Vec<(Bond, Vertex)> {
        let cands = [Step::E, Step::W, Step::N, Step::S]
            .into_iter()
            .filter_map(|s| z_step(v, s))
            .filter(|(b, _)| allowed(b))
            .collect();
        sorted_by_bond(cands)
    };
    let mut parent: BTreeMap<Vertex, (Vertex, Bond)> = BTreeMap::new();
    let mut queue = VecDeque::from([v1]);
    let mut seen = BTreeSet::from([v1]);
    while let Some(v) = queue.pop_front() {
        if v == v2 {
            let mut bonds = Vec::new();
            let mut at = v2;
            while at != v1 {
                let (prev, b) = parent[&at];
                bonds.push(b);
                at = prev;
            }
            bonds.reverse();
            return ZPath::new(bonds);
        }
        for (b, u) in incident(v) {
            if seen.insert(u) {
                parent.insert(u, (v, b));
                queue.push_back(u);
            }
        }
    }
    Err(Error::NoPath(format!("no z-path from {v1} to {v2} inside {bounds}")))
}

/// Shortest dual path from `a` to `b` crossing only bonds in both `region`
/// and `bounds`; the outside is a single node reached through `V(0, j)`.
pub fn connect_x(a: XEnd, b: XEnd, region: &dyn Region, bounds: &Window) -> Result<XPath> {
    if a == b {
        return Ok(XPath::empty(a));
    }
    let allowed = |c: &Bond| bounds.contains(c) && region.contains(c);
    let neighbors = |at: XEnd| -> Vec<(Bond, XEnd)> {
        let cands: Vec<Bond> = match at {
            XEnd::Boundary => (bounds.row_min..=bounds.row_max).map(|j| Bond::v(0, j)).collect(),
            XEnd::Face(f) => plaquette_bonds(f).to_vec(),
        };
        let out = cands
            .into_iter()
            .filter(|c| allowed(c))
            .filter_map(|c| across_dual(at, &c).map(|n| (c, n)))
            .collect();
        sorted_by_bond(out)
    };
    let mut parent: BTreeMap<XEnd, (XEnd, Bond)> = BTreeMap::new();
    let mut queue = VecDeque::from([a]);
    let mut seen = BTreeSet::from([a]);
    while let Some(at) = queue.pop_front() {
        if at == b {
            let mut crossings = Vec::new();
            let mut cur = b;
            while cur != a {
                let (prev, c) = parent[&cur];
                crossings.push(c);
                cur = prev;
            }
            crossings.reverse();
            return XPath::new(a, crossings);
        }
        for (c, n) in neighbors(at) {
            if seen.insert(n) {
                parent.insert(n, (at, c));
                queue.push_back(n);
            }
        }
    }
    Err(Error::NoPath(format!("no x-path from {a} to {b} inside {bounds}")))
}

/// Boundary-to-boundary dual loop around the smallest vertex rectangle
/// `[0, c] × [r0, r1]` (ties broken by `(c, r0, r1)`) that holds an endpoint
/// of every bond in `support`. Its operator is the product of the stars in
/// the rectangle.
pub fn enclosing_loop(support: &BTreeSet<Bond>, w: &Window) -> Result<XPath> {
    let Some(first) = support.iter().next() else {
        return Ok(XPath::empty(XEnd::Boundary));
    };
    let max_i = support.iter().map(|b| b.i).max().unwrap_or(first.i) + 1;
    let lo = support.iter().map(|b| b.j).min().unwrap_or(first.j);
    let hi = support.iter().map(|b| b.j).max().unwrap_or(first.j) + 1;
    let mut best: Option<(i64, (i32, i32, i32))> = None;
    for c in 0..=max_i {
        for r0 in lo..=hi {
            for r1 in r0..=hi {
                let inside = |v: &Vertex| v.i <= c && v.j >= r0 && v.j <= r1;
                if !support.iter().all(|b| b.endpoints().iter().any(inside)) {
                    continue;
                }
                let area = (c as i64 + 1) * (r1 - r0 + 1) as i64;
                let key = (area, (c, r0, r1));
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    let (_, (c, r0, r1)) = best.ok_or_else(|| Error::NoClearance("support cannot be enclosed".into()))?;
    let mut crossings: Vec<Bond> = (0..=c).map(|i| Bond::v(i, r0 - 1)).collect();
    crossings.extend((r0..=r1).map(|j| Bond::h(c, j)));
    crossings.extend((0..=c).rev().map(|i| Bond::v(i, r1)));
    if let Some(b) = crossings.iter().find(|b| !w.contains(b)) {
        return Err(Error::NoClearance(format!("loop bond {b} leaves {w}")));
    }
    XPath::new(XEnd::Boundary, crossings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundstate::{eval_ground, GroundValue};
    use crate::lattice::{ConeRegion, Everywhere, Stabilizer};
    use crate::pauli::Sign;
    use proptest::prelude::*;

    fn z_ray(i: i32, j: i32, prefix: Vec<Step>, tail: Vec<Step>) -> RayPath {
        RayPath::new(Kind::Z, Anchor::Vertex(Vertex::new(i, j)), prefix, tail).unwrap()
    }

    #[test]
    fn zpath_around_face_is_plaquette() {
        let p = ZPath::walk(Vertex::new(2, 2), &[Step::E, Step::N, Step::W, Step::S]).unwrap();
        assert_eq!(p.op(), PauliOp::stabilizer(&Stabilizer::Plaquette(Face::new(2, 2))));
        assert!(p.endpoints().is_empty());
    }

    #[test]
    fn zpath_rejects_gaps() {
        assert!(matches!(ZPath::new(vec![Bond::h(0, 0), Bond::h(2, 0)]), Err(Error::InvalidPath(_))));
        let p = ZPath::parse("zpath: V(0,1) V(0,2) H(0,3)").unwrap();
        assert_eq!(p.endpoints(), vec![Vertex::new(0, 1), Vertex::new(1, 3)]);
        assert_eq!(ZPath::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn xpath_boundary_exit() {
        let p = XPath::parse("xpath: cross V(0,2) cross H(0,3)").unwrap();
        assert_eq!(p.start(), XEnd::Boundary);
        assert_eq!(p.end(), XEnd::Face(Face::new(0, 3)));
        assert_eq!(p.op().x, [Bond::v(0, 2), Bond::h(0, 3)].into());
        assert_eq!(XPath::parse(&p.to_string()).unwrap(), p);
        assert!(XPath::parse("xpath: cross V(0,2) cross H(3,3)").is_err());
        assert!(XPath::parse("xpath: cross H(1,1)").is_err());
        let q = XPath::parse("xpath: from face(1,1) cross H(1,1)").unwrap();
        assert_eq!(q.end(), XEnd::Face(Face::new(1, 0)));
    }

    #[test]
    fn ribbon_is_commuting_involution() {
        let y = RayPath::new(Kind::Y, Anchor::Vertex(Vertex::new(2, 0)), vec![Step::N], vec![Step::E, Step::N]).unwrap();
        for n in 0..10 {
            let op = y.truncate(n).op();
            assert!(op.is_involution());
            assert_eq!(op.commutation_sign(&op), Sign::Plus);
            assert!(op.mul(&op).is_identity());
        }
    }

    #[test]
    fn truncation_nests() {
        let rays = [
            z_ray(0, 3, vec![Step::E, Step::N], vec![Step::E, Step::N]),
            RayPath::parse("ray: X anchor=boundary(2) prefix=[] tail=[E]").unwrap(),
            RayPath::parse("ray: Y anchor=(0,-1) prefix=[E,S] tail=[E,E,S]").unwrap(),
        ];
        for r in &rays {
            assert!(r.truncate(0).op().is_identity());
            let b5 = r.truncate(5).bonds();
            let b9 = r.truncate(9).bonds();
            assert!(b5.is_subset(&b9) && b5 != b9);
        }
    }

    #[test]
    fn ray_text_round_trips() {
        for s in [
            "ray: Z anchor=(0,5) prefix=[E,N] tail=[E,N]",
            "ray: X anchor=face(2,3) prefix=[] tail=[E]",
            "ray: X anchor=boundary(-1) prefix=[E,S] tail=[E,S,E]",
            "ray: Y anchor=(3,6) prefix=[] tail=[E,N]",
        ] {
            let r = RayPath::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!(RayPath::parse("ray: Z anchor=(0,0) prefix=[] tail=[N]").is_err());
        assert!(RayPath::parse("ray: Z anchor=(0,0) prefix=[W] tail=[E]").is_err());
        assert!(RayPath::parse("ray: X anchor=(0,0) prefix=[] tail=[E]").is_err());
        assert!(RayPath::parse("ray: Y anchor=(0,0) prefix=[N] tail=[E]").is_err());
    }

    #[test]
    fn boundary_y_ray_components() {
        let y = RayPath::parse("ray: Y anchor=(0,4) prefix=[] tail=[E,N]").unwrap();
        let FinitePath::Y(r) = y.truncate(4) else { panic!() };
        assert_eq!(r.x_part().start(), XEnd::Boundary);
        assert_eq!(r.x_part().crossings(), &[Bond::v(0, 4), Bond::h(0, 5), Bond::v(1, 5), Bond::h(1, 6)]);
        assert_eq!(r.z_part().bonds(), &[Bond::h(0, 4), Bond::v(1, 4), Bond::h(1, 5), Bond::v(2, 5)]);
        let x = y.x_part().unwrap();
        assert_eq!(x.anchor(), Anchor::Boundary(4));
        assert_eq!(x.truncate(4).bonds(), r.x_part().crossings().iter().copied().collect());
    }

    #[test]
    fn extension_to_boundary_keeps_the_tail() {
        let bulk = RayPath::parse("ray: Y anchor=(3,6) prefix=[] tail=[E,N]").unwrap();
        let ext = bulk.extend_to_boundary();
        assert!(ext.is_boundary_anchored());
        let far = ext.truncate(23).bonds();
        assert!(bulk.truncate(20).bonds().is_subset(&far));
        let xr = RayPath::parse("ray: X anchor=face(2,1) prefix=[] tail=[E]").unwrap();
        let xe = xr.extend_to_boundary();
        assert_eq!(xe.anchor(), Anchor::Boundary(1));
        assert_eq!(xe.truncate(3).bonds(), [Bond::v(0, 1), Bond::v(1, 1), Bond::v(2, 1)].into());
    }

    #[test]
    fn covering_len_covers_support() {
        let r = z_ray(0, 0, vec![], vec![Step::E, Step::N]);
        let support: BTreeSet<Bond> = [Bond::h(3, 3), Bond::v(2, 1), Bond::h(9, 0)].into();
        let n = r.covering_len(&support);
        let full: BTreeSet<Bond> = r.truncate(n + 40).bonds();
        let cut: BTreeSet<Bond> = r.truncate(n).bonds();
        assert_eq!(
            full.intersection(&support).collect::<Vec<_>>(),
            cut.intersection(&support).collect::<Vec<_>>()
        );
        assert_eq!(r.covering_len(&BTreeSet::new()), 0);
    }

    #[test]
    fn connect_z_hugs_the_boundary() {
        let cone = ConeRegion::up(0, 1, 1);
        let w = Window::new(10, -2, 12).unwrap();
        let p = connect_z(Vertex::new(0, 2), Vertex::new(0, 6), &cone, &w).unwrap();
        assert_eq!(p.bonds(), &[Bond::v(0, 2), Bond::v(0, 3), Bond::v(0, 4), Bond::v(0, 5)]);
        assert!(connect_z(Vertex::new(0, 2), Vertex::new(0, 2), &cone, &w).unwrap().is_empty());
        assert!(matches!(
            connect_z(Vertex::new(0, 2), Vertex::new(0, -2), &cone, &w),
            Err(Error::NoPath(_))
        ));
    }

    fn bfs_distance_z(v1: Vertex, v2: Vertex, w: &Window) -> usize {
        // Plain distance scan over the window's vertices, independent of connect_z.
        let mut dist: BTreeMap<Vertex, usize> = BTreeMap::from([(v1, 0)]);
        let bonds = w.bonds();
        for round in 0..bonds.len() {
            let mut changed = false;
            for b in &bonds {
                let [a, c] = b.endpoints();
                for (x, y) in [(a, c), (c, a)] {
                    if dist.get(&x) == Some(&round) && !dist.contains_key(&y) {
                        dist.insert(y, round + 1);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist[&v2]
    }

    proptest! {
        #[test]
        fn connect_z_is_shortest(a in (0..6i32, -4..5i32), b in (0..6i32, -4..5i32)) {
            let w = Window::new(6, -5, 6).unwrap();
            let (v1, v2) = (Vertex::new(a.0, a.1), Vertex::new(b.0, b.1));
            let p = connect_z(v1, v2, &Everywhere, &w).unwrap();
            prop_assert_eq!(p.len(), bfs_distance_z(v1, v2, &w));
            prop_assert!(p.bonds().iter().all(|b| w.contains(b)));
            if v1 != v2 {
                let mut ends = vec![v1, v2];
                ends.sort();
                prop_assert_eq!(p.endpoints(), ends);
            }
        }

        #[test]
        fn connect_x_stays_in_region(a in (0..5i32, 0..8i32), b in (0..5i32, 0..8i32), to_boundary in any::<bool>()) {
            let cone = ConeRegion::up(0, 1, 2);
            let w = Window::new(8, -2, 12).unwrap();
            let fa = XEnd::Face(Face::new(a.0, a.1));
            let fb = if to_boundary { XEnd::Boundary } else { XEnd::Face(Face::new(b.0, b.1)) };
            let inside = |e: &XEnd| match e {
                XEnd::Boundary => true,
                XEnd::Face(f) => plaquette_bonds(*f).iter().any(|c| cone.contains(c)),
            };
            prop_assume!(inside(&fa) && inside(&fb));
            if let Ok(p) = connect_x(fa, fb, &cone, &w) {
                prop_assert!(p.crossings().iter().all(|c| cone.contains(c) && w.contains(c)));
                prop_assert_eq!(p.end(), fb);
            }
        }

        #[test]
        fn z_and_x_strings_commute_by_crossing_parity(
            zs in proptest::collection::vec(0..4usize, 0..8),
            xs in proptest::collection::vec(0..4usize, 0..8),
            i in 0..3i32, j in -2..3i32,
        ) {
            let steps = [Step::E, Step::N, Step::S, Step::E];
            let zp: Vec<Step> = zs.iter().map(|k| steps[*k]).collect();
            let xp: Vec<Step> = xs.iter().map(|k| steps[*k]).collect();
            let Ok(z) = ZPath::walk(Vertex::new(i, j), &zp) else { return Ok(()) };
            let Ok(x) = RayPath::new(Kind::X, Anchor::Boundary(j), xp.clone(), vec![Step::E]).map(|r| r.truncate(xp.len())) else { return Ok(()) };
            let shared = x.bonds().intersection(&z.bonds().iter().copied().collect()).count();
            prop_assert_eq!(z.op().commutation_sign(&x.op()), Sign::from_parity(shared % 2 == 1));
        }

        #[test]
        fn boundary_to_boundary_x_paths_are_stabilizers(r0 in -4..4i32, h in 0..4i32, c in 0..4i32) {
            let support: BTreeSet<Bond> = [Bond::v(c, r0), Bond::v(0, r0 + h)].into();
            let w = Window::new(8, -8, 10).unwrap();
            let lp = enclosing_loop(&support, &w).unwrap();
            prop_assert_eq!(lp.start(), XEnd::Boundary);
            prop_assert_eq!(lp.end(), XEnd::Boundary);
            prop_assert_eq!(eval_ground(&lp.op()).unwrap(), GroundValue::ONE);
        }
    }

    #[test]
    fn enclosing_loop_of_boundary_star() {
        let star: BTreeSet<Bond> = crate::lattice::star_bonds(Vertex::new(0, 5)).into_iter().collect();
        let w = Window::new(4, 0, 10).unwrap();
        let lp = enclosing_loop(&star, &w).unwrap();
        assert_eq!(lp.crossings(), &[Bond::v(0, 4), Bond::h(0, 5), Bond::v(0, 5)]);
        assert_eq!(lp.op(), PauliOp::stabilizer(&Stabilizer::Star(Vertex::new(0, 5))));
        assert_eq!(eval_ground(&lp.op()).unwrap(), GroundValue::ONE);
        assert!(matches!(enclosing_loop(&star, &Window::new(4, 5, 10).unwrap()), Err(Error::NoClearance(_))));
    }

    #[test]
    fn enclosing_loop_is_product_of_enclosed_stars() {
        let support: BTreeSet<Bond> = [Bond::h(1, 2), Bond::v(2, 3)].into();
        let w = Window::new(6, -2, 8).unwrap();
        let lp = enclosing_loop(&support, &w).unwrap();
        // Every stabilizer commutes with the loop.
        for s in w.stabilizers_inside() {
            assert!(PauliOp::stabilizer(&s).commutes_with(&lp.op()));
        }
        let mut stars = PauliOp::identity();
        // Enclosed region from the loop geometry: vertices (0..=c, r0..=r1).
        let c = lp.crossings().iter().filter(|b| b.is_horizontal()).map(|b| b.i).max().unwrap();
        let rows: Vec<i32> = lp.crossings().iter().filter(|b| b.is_horizontal()).map(|b| b.j).collect();
        for i in 0..=c {
            for j in rows.iter().copied() {
                stars = stars.mul(&PauliOp::stabilizer(&Stabilizer::Star(Vertex::new(i, j))));
            }
        }
        assert_eq!(stars, lp.op());
    }
}

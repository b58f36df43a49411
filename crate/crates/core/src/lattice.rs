//! Half-plane square lattice with a smooth boundary at column 0.
//!
//! Vertex `(i, j)` sits at the planar point `(i, j)`. `H(i,j)` joins `(i,j)`
//! to `(i+1,j)` and `V(i,j)` joins `(i,j)` to `(i,j+1)`. The boundary is the
//! column of vertical bonds `V(0, j)`, so boundary stars have three bonds.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::Cursor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    H,
    V,
}

/// A lattice bond. Ordered by row-rank, then column, so the largest bond in
/// a set is the north-most one and ties run west to east.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bond {
    pub orient: Orientation,
    pub i: i32,
    pub j: i32,
}

impl Ord for Bond {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j, self.orient, self.i).cmp(&(other.j, other.orient, other.i))
    }
}

impl PartialOrd for Bond {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Bond {
    pub const fn h(i: i32, j: i32) -> Bond {
        Bond { orient: Orientation::H, i, j }
    }

    pub const fn v(i: i32, j: i32) -> Bond {
        Bond { orient: Orientation::V, i, j }
    }

    pub fn is_horizontal(&self) -> bool {
        self.orient == Orientation::H
    }

    /// `2j` for horizontal bonds, `2j + 1` for vertical ones.
    pub fn row_rank(&self) -> i64 {
        2 * self.j as i64 + i64::from(self.orient == Orientation::V)
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        match self.orient {
            Orientation::H => [Vertex::new(self.i, self.j), Vertex::new(self.i + 1, self.j)],
            Orientation::V => [Vertex::new(self.i, self.j), Vertex::new(self.i, self.j + 1)],
        }
    }

    /// Faces containing this bond: two, except one for boundary bonds.
    pub fn faces(&self) -> Vec<Face> {
        match self.orient {
            Orientation::H => vec![Face::new(self.i, self.j - 1), Face::new(self.i, self.j)],
            Orientation::V if self.i == 0 => vec![Face::new(0, self.j)],
            Orientation::V => vec![Face::new(self.i - 1, self.j), Face::new(self.i, self.j)],
        }
    }

    pub fn is_boundary(&self) -> bool {
        self.orient == Orientation::V && self.i == 0
    }

    pub fn translate_j(&self, n: i32) -> Bond {
        Bond { j: self.j + n, ..*self }
    }

    /// Mirror through the horizontal line `y = axis2 / 2`.
    pub fn mirror(&self, axis2: i32) -> Bond {
        match self.orient {
            Orientation::H => Bond::h(self.i, axis2 - self.j),
            Orientation::V => Bond::v(self.i, axis2 - self.j - 1),
        }
    }

    pub fn parse(text: &str) -> Result<Bond> {
        let mut cur = Cursor::new(text);
        let b = parse_bond(&mut cur)?;
        cur.finish()?;
        Ok(b)
    }
}

pub(crate) fn parse_bond(cur: &mut Cursor<'_>) -> Result<Bond> {
    let orient = if cur.eat("H") {
        Orientation::H
    } else if cur.eat("V") {
        Orientation::V
    } else {
        return cur.err("expected a bond `H(i,j)` or `V(i,j)`");
    };
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
    Ok(Bond { orient, i, j })
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orient {
            Orientation::H => 'H',
            Orientation::V => 'V',
        };
        write!(f, "{o}({},{})", self.i, self.j)
    }
}

impl FromStr for Bond {
    type Err = Error;
    fn from_str(s: &str) -> Result<Bond> {
        Bond::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub i: i32,
    pub j: i32,
}

impl Vertex {
    pub const fn new(i: i32, j: i32) -> Vertex {
        Vertex { i, j }
    }

    pub fn is_boundary(&self) -> bool {
        self.i == 0
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The face with south-west corner `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub i: i32,
    pub j: i32,
}

impl Face {
    pub const fn new(i: i32, j: i32) -> Face {
        Face { i, j }
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({},{})", self.i, self.j)
    }
}

pub fn star_bonds(v: Vertex) -> Vec<Bond> {
    let mut out = vec![Bond::v(v.i, v.j - 1), Bond::h(v.i, v.j), Bond::v(v.i, v.j)];
    if v.i > 0 {
        out.push(Bond::h(v.i - 1, v.j));
    }
    out.sort();
    out
}

pub fn plaquette_bonds(f: Face) -> [Bond; 4] {
    [
        Bond::h(f.i, f.j),
        Bond::v(f.i, f.j),
        Bond::v(f.i + 1, f.j),
        Bond::h(f.i, f.j + 1),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stabilizer {
    Star(Vertex),
    Plaquette(Face),
}

impl Stabilizer {
    pub fn bonds(&self) -> Vec<Bond> {
        match *self {
            Stabilizer::Star(v) => star_bonds(v),
            Stabilizer::Plaquette(f) => plaquette_bonds(f).to_vec(),
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(self, Stabilizer::Star(_))
    }
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilizer::Star(v) => write!(f, "A{v}"),
            Stabilizer::Plaquette(p) => write!(f, "B{p}"),
        }
    }
}

/// Stabilizers acting on a given bond: its endpoint stars and adjacent plaquettes.
pub fn stabilizers_on(b: &Bond) -> impl Iterator<Item = Stabilizer> {
    let [a, c] = b.endpoints();
    [Stabilizer::Star(a), Stabilizer::Star(c)]
        .into_iter()
        .chain(b.faces().into_iter().map(Stabilizer::Plaquette))
}

/// Every star and plaquette whose bond set meets `support`, each once, sorted.
pub fn stabilizers_meeting<'a>(support: impl IntoIterator<Item = &'a Bond>) -> Vec<Stabilizer> {
    let set: BTreeSet<Stabilizer> = support.into_iter().flat_map(stabilizers_on).collect();
    set.into_iter().collect()
}

/// A set of bonds given by a membership predicate.
pub trait Region {
    fn contains(&self, b: &Bond) -> bool;
}

impl<R: Region + ?Sized> Region for &R {
    fn contains(&self, b: &Bond) -> bool {
        (**self).contains(b)
    }
}

impl<R: Region + ?Sized> Region for Box<R> {
    fn contains(&self, b: &Bond) -> bool {
        (**self).contains(b)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Everywhere;

impl Region for Everywhere {
    fn contains(&self, _: &Bond) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct Complement<R>(pub R);

impl<R: Region> Region for Complement<R> {
    fn contains(&self, b: &Bond) -> bool {
        !self.0.contains(b)
    }
}

#[derive(Debug, Clone)]
pub struct Intersection<A, B>(pub A, pub B);

impl<A: Region, B: Region> Region for Intersection<A, B> {
    fn contains(&self, b: &Bond) -> bool {
        self.0.contains(b) && self.1.contains(b)
    }
}

#[derive(Debug, Clone)]
pub struct Union<A, B>(pub A, pub B);

impl<A: Region, B: Region> Region for Union<A, B> {
    fn contains(&self, b: &Bond) -> bool {
        self.0.contains(b) || self.1.contains(b)
    }
}

/// Bonds at column `i >= self.0`.
#[derive(Debug, Clone, Copy)]
pub struct EastOf(pub i32);

impl Region for EastOf {
    fn contains(&self, b: &Bond) -> bool {
        b.i >= self.0
    }
}

/// Adapter for closures.
pub struct Predicate<F>(pub F);

impl<F: Fn(&Bond) -> bool> Region for Predicate<F> {
    fn contains(&self, b: &Bond) -> bool {
        (self.0)(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
}

/// Positive rational slope `p/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slope {
    pub p: u32,
    pub q: u32,
}

impl Slope {
    pub fn new(p: u32, q: u32) -> Result<Slope> {
        if p == 0 || q == 0 {
            return Err(Error::Geometry(format!("slope {p}/{q} must be positive")));
        }
        Ok(Slope { p, q })
    }
}

/// Cone along the boundary: for `Up`, the closed set
/// `{x >= 0, y >= apex_row, y - apex_row >= slope * x}`; `Down` is its mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeRegion {
    pub apex_row: i32,
    pub direction: Direction,
    pub slope: Slope,
}

impl ConeRegion {
    pub fn up(apex_row: i32, p: u32, q: u32) -> ConeRegion {
        ConeRegion {
            apex_row,
            direction: Direction::Up,
            slope: Slope::new(p, q).expect("positive slope"),
        }
    }

    pub fn down(apex_row: i32, p: u32, q: u32) -> ConeRegion {
        ConeRegion {
            apex_row,
            direction: Direction::Down,
            slope: Slope::new(p, q).expect("positive slope"),
        }
    }

    /// The same cone reflected through its apex row.
    pub fn mirrored(&self) -> ConeRegion {
        let direction = match self.direction {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        };
        ConeRegion { direction, ..*self }
    }

    /// Exact segment-versus-cone test. The region is convex and its defining
    /// constraints are monotone along each bond, so one endpoint decides.
    pub fn contains(&self, b: &Bond) -> bool {
        let p = self.slope.p as i64;
        let q = self.slope.q as i64;
        let (i, j, j0) = (b.i as i64, b.j as i64, self.apex_row as i64);
        let dy = match (self.direction, b.orient) {
            (Direction::Up, Orientation::H) => j - j0,
            (Direction::Up, Orientation::V) => j + 1 - j0,
            (Direction::Down, _) => j0 - j,
        };
        dy * q >= p * i
    }

    pub fn parse(text: &str) -> Result<ConeRegion> {
        let mut cur = Cursor::new(text);
        let c = parse_cone(&mut cur)?;
        cur.finish()?;
        Ok(c)
    }
}

pub(crate) fn parse_cone(cur: &mut Cursor<'_>) -> Result<ConeRegion> {
    cur.expect("cone")?;
    cur.expect("(")?;
    let direction = match cur.ident()? {
        "up" => Direction::Up,
        "down" => Direction::Down,
        _ => return cur.err("expected `up` or `down`"),
    };
    cur.expect(",")?;
    cur.expect("apex")?;
    cur.expect("=")?;
    let apex_row = cur.int32()?;
    cur.expect(",")?;
    cur.expect("slope")?;
    cur.expect("=")?;
    let at = cur.pos();
    let p = cur.int()?;
    let q = if cur.eat("/") { cur.int()? } else { 1 };
    cur.expect(")")?;
    let (p, q) = match (u32::try_from(p), u32::try_from(q)) {
        (Ok(p), Ok(q)) if p > 0 && q > 0 => (p, q),
        _ => {
            return Err(Error::Parse {
                pos: at,
                msg: "slope must be a positive fraction".into(),
            })
        }
    };
    Ok(ConeRegion {
        apex_row,
        direction,
        slope: Slope { p, q },
    })
}

impl Region for ConeRegion {
    fn contains(&self, b: &Bond) -> bool {
        ConeRegion::contains(self, b)
    }
}

impl fmt::Display for ConeRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            Direction::Up => "up",
            Direction::Down => "down",
        };
        write!(
            f,
            "cone({d}, apex={}, slope={}/{})",
            self.apex_row, self.slope.p, self.slope.q
        )
    }
}

impl FromStr for ConeRegion {
    type Err = Error;
    fn from_str(s: &str) -> Result<ConeRegion> {
        ConeRegion::parse(s)
    }
}

/// Finite window: bonds `H(i,j)` and `V(i,j)` with `0 <= i <= max_col` and
/// `row_min <= j <= row_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub max_col: i32,
    pub row_min: i32,
    pub row_max: i32,
}

impl Window {
    pub fn new(max_col: i32, row_min: i32, row_max: i32) -> Result<Window> {
        if max_col < 0 || row_min > row_max {
            return Err(Error::Config(format!(
                "empty window cols={max_col}, rows={row_min}..{row_max}"
            )));
        }
        Ok(Window { max_col, row_min, row_max })
    }

    /// Smallest window containing every bond of `bonds`, grown by `margin`
    /// away from the boundary.
    pub fn around<'a>(bonds: impl IntoIterator<Item = &'a Bond>, margin: i32) -> Option<Window> {
        let mut it = bonds.into_iter();
        let first = it.next()?;
        let (mut c, mut lo, mut hi) = (first.i, first.j, first.j);
        for b in it {
            c = c.max(b.i);
            lo = lo.min(b.j);
            hi = hi.max(b.j);
        }
        Some(Window {
            max_col: c + margin,
            row_min: lo - margin,
            row_max: hi + margin,
        })
    }

    pub fn grow(&self, margin: i32) -> Window {
        Window {
            max_col: self.max_col + margin,
            row_min: self.row_min - margin,
            row_max: self.row_max + margin,
        }
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Window) -> Window {
        Window {
            max_col: self.max_col.max(other.max_col),
            row_min: self.row_min.min(other.row_min),
            row_max: self.row_max.max(other.row_max),
        }
    }

    pub fn contains(&self, b: &Bond) -> bool {
        b.i >= 0 && b.i <= self.max_col && b.j >= self.row_min && b.j <= self.row_max
    }

    pub fn len(&self) -> usize {
        2 * (self.max_col as usize + 1) * (self.row_max - self.row_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Bonds in ascending bond order.
    pub fn bonds(&self) -> Vec<Bond> {
        let mut out = Vec::with_capacity(self.len());
        for j in self.row_min..=self.row_max {
            for i in 0..=self.max_col {
                out.push(Bond::h(i, j));
            }
            for i in 0..=self.max_col {
                out.push(Bond::v(i, j));
            }
        }
        out
    }

    /// Stars and plaquettes whose bonds all lie in the window.
    pub fn stabilizers_inside(&self) -> Vec<Stabilizer> {
        let mut out = Vec::new();
        for j in self.row_min..=self.row_max + 1 {
            for i in 0..=self.max_col + 1 {
                let s = Stabilizer::Star(Vertex::new(i, j));
                if s.bonds().iter().all(|b| self.contains(b)) {
                    out.push(s);
                }
            }
        }
        for j in self.row_min..=self.row_max {
            for i in 0..=self.max_col {
                let s = Stabilizer::Plaquette(Face::new(i, j));
                if s.bonds().iter().all(|b| self.contains(b)) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    /// Stars and plaquettes with at least one bond in the window.
    pub fn stabilizers_meeting(&self) -> Vec<Stabilizer> {
        stabilizers_meeting(self.bonds().iter())
    }

    pub fn parse(text: &str) -> Result<Window> {
        let mut cur = Cursor::new(text);
        let w = parse_window(&mut cur)?;
        cur.finish()?;
        Ok(w)
    }
}

pub(crate) fn parse_window(cur: &mut Cursor<'_>) -> Result<Window> {
    cur.expect("window")?;
    cur.expect("(")?;
    cur.expect("cols")?;
    cur.expect("=")?;
    let at = cur.pos();
    let max_col = cur.int32()?;
    cur.expect(",")?;
    cur.expect("rows")?;
    cur.expect("=")?;
    let row_min = cur.int32()?;
    cur.expect("..")?;
    let row_max = cur.int32()?;
    cur.expect(")")?;
    Window::new(max_col, row_min, row_max).map_err(|e| Error::Parse {
        pos: at,
        msg: e.to_string(),
    })
}

impl Region for Window {
    fn contains(&self, b: &Bond) -> bool {
        Window::contains(self, b)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window(cols={}, rows={}..{})",
            self.max_col, self.row_min, self.row_max
        )
    }
}

impl FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Window> {
        Window::parse(s)
    }
}

/// True iff `c1 ⊆ c2` on `w` and no star or plaquette meeting `w` that lies
/// in `c1 ∪ c2ᶜ` touches both pieces.
pub fn distal_pair_check(c1: &ConeRegion, c2: &ConeRegion, w: &Window) -> bool {
    if w.bonds().iter().any(|b| c1.contains(b) && !c2.contains(b)) {
        return false;
    }
    w.stabilizers_meeting().iter().all(|s| {
        let bonds = s.bonds();
        let in1 = bonds.iter().filter(|b| c1.contains(b)).count();
        let out2 = bonds.iter().filter(|b| !c2.contains(b)).count();
        let inside_union = bonds.iter().all(|b| c1.contains(b) || !c2.contains(b));
        !inside_union || in1 == bonds.len() || out2 == bonds.len()
    })
}

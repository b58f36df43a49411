//! SVG diagrams of windows, cones and string operators.
//!
//! Lattice coordinates map to pixels with column `-1` (the outside of the
//! half-plane) drawn as a grey strip. Z-strings are solid red, X-strings
//! dashed green along the dual lattice, cones shaded.

use std::fmt::Write as _;
use std::str::FromStr;

use toric_boundary::duality::build_f0_family;
use toric_boundary::error::Result;
use toric_boundary::lattice::{Bond, ConeRegion, Direction, Face, Vertex, Window};
use toric_boundary::pauli::PauliOp;
use toric_boundary::sectors::CondensationGeometry;
use toric_boundary::strings::{connect_x, connect_z, XEnd};

use crate::config::{ConfigError, RunConfig};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Lattice,
    Cone,
    Paths,
    Condensation,
    Distal,
}

impl Fixture {
    pub const ALL: [Fixture; 5] = [Fixture::Lattice, Fixture::Cone, Fixture::Paths, Fixture::Condensation, Fixture::Distal];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Lattice => "lattice",
            Fixture::Cone => "cone",
            Fixture::Paths => "paths",
            Fixture::Condensation => "condensation",
            Fixture::Distal => "distal",
        }
    }
}

impl FromStr for Fixture {
    type Err = ConfigError;
    fn from_str(s: &str) -> std::result::Result<Fixture, ConfigError> {
        Fixture::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Fixture::ALL.iter().map(|f| f.name()).collect();
            ConfigError(format!("unknown fixture `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

struct Canvas {
    w: Window,
    body: String,
}

impl Canvas {
    fn new(w: Window) -> Canvas {
        Canvas { w, body: String::new() }
    }

    fn x(&self, i: f64) -> f64 {
        MARGIN + SCALE * (i + 1.0)
    }

    fn y(&self, j: f64) -> f64 {
        MARGIN + SCALE * (self.w.row_max as f64 + 1.0 - j)
    }

    fn size(&self) -> (f64, f64) {
        let width = 2.0 * MARGIN + SCALE * (self.w.max_col as f64 + 3.0);
        let height = 2.0 * MARGIN + SCALE * ((self.w.row_max - self.w.row_min) as f64 + 2.0);
        (width, height)
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" {style}/>"#,
            self.x(a.0),
            self.y(a.1),
            self.x(b.0),
            self.y(b.1)
        );
    }

    fn bond(&mut self, b: &Bond, style: &str) {
        let [p, q] = b.endpoints();
        self.line((p.i as f64, p.j as f64), (q.i as f64, q.j as f64), style);
    }

    /// Dual edge crossing `b`, between the centres of its two faces.
    fn dual(&mut self, b: &Bond, style: &str) {
        let (i, j) = (b.i as f64, b.j as f64);
        if b.is_horizontal() {
            self.line((i + 0.5, j - 0.5), (i + 0.5, j + 0.5), style);
        } else {
            self.line((i - 0.5, j + 0.5), (i + 0.5, j + 0.5), style);
        }
    }

    fn lattice(&mut self) {
        let (top, bottom) = (self.w.row_max as f64 + 1.0, self.w.row_min as f64);
        let _ = writeln!(
            self.body,
            r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="#e6e6e6"/>"##,
            self.x(-1.0),
            self.y(top),
            SCALE,
            self.y(bottom) - self.y(top)
        );
        for b in self.w.bonds() {
            let style = if b.is_boundary() {
                r##"stroke="#1f4e9c" stroke-width="4""##
            } else {
                r##"stroke="#9a9a9a" stroke-width="1""##
            };
            self.bond(&b, style);
        }
    }

    fn cone(&mut self, c: &ConeRegion, fill: &str) {
        let right = self.w.max_col as f64 + 1.0;
        let (p, q) = (c.slope.p as f64, c.slope.q as f64);
        let a = c.apex_row as f64;
        let (edge, far) = match c.direction {
            Direction::Up => (a + p * right / q, self.w.row_max as f64 + 1.0),
            Direction::Down => (a - p * right / q, self.w.row_min as f64),
        };
        let far = match c.direction {
            Direction::Up => far.max(edge),
            Direction::Down => far.min(edge),
        };
        let pts = [(0.0, a), (right, edge), (right, far), (0.0, far)];
        let pts: Vec<String> = pts.iter().map(|(i, j)| format!("{:.1},{:.1}", self.x(*i), self.y(*j))).collect();
        let _ = writeln!(self.body, r#"<polygon points="{}" fill="{fill}" fill-opacity="0.25"/>"#, pts.join(" "));
    }

    fn members(&mut self, c: &ConeRegion) {
        for b in self.w.bonds().iter().filter(|b| c.contains(b)) {
            self.bond(b, r##"stroke="#d9822b" stroke-width="2""##);
        }
    }

    fn operator(&mut self, p: &PauliOp) {
        for b in &p.z {
            self.bond(b, r##"stroke="#c62828" stroke-width="3""##);
        }
        for b in &p.x {
            self.dual(b, r##"stroke="#2e7d32" stroke-width="3" stroke-dasharray="6,4""##);
        }
    }

    fn caption(&mut self, text: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12">{}</text>"#,
            MARGIN,
            MARGIN - 10.0,
            escape(text)
        );
    }

    fn finish(self) -> String {
        let (width, height) = self.size();
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn in_window(p: &PauliOp, w: &Window) -> PauliOp {
    PauliOp {
        x: p.x.iter().copied().filter(|b| w.contains(b)).collect(),
        z: p.z.iter().copied().filter(|b| w.contains(b)).collect(),
        phase: 0,
    }
}

pub fn render(fixture: Fixture, cfg: &RunConfig) -> Result<String> {
    let w = cfg.diagram_window;
    let mut c = Canvas::new(w);
    match fixture {
        Fixture::Lattice => {
            c.lattice();
            c.caption(&w.to_string());
        }
        Fixture::Cone => {
            let cone = cfg.haag_cones[0];
            c.cone(&cone, "#f5a623");
            c.lattice();
            c.members(&cone);
            c.caption(&cone.to_string());
        }
        Fixture::Paths => {
            c.lattice();
            let mid = (w.row_min + w.row_max).div_euclid(2);
            let z = connect_z(Vertex::new(1, w.row_min + 1), Vertex::new(w.max_col, w.row_max), &w, &w)?;
            let x = connect_x(XEnd::Face(Face::new(w.max_col / 2, mid)), XEnd::Boundary, &w, &w)?;
            c.operator(&z.op().mul(&x.op()));
            c.caption("Z path (solid), X path to the boundary (dashed)");
        }
        Fixture::Condensation => {
            c.lattice();
            let geo = CondensationGeometry::standard(&w)?;
            let ray = geo.x_ray.truncate((w.max_col as usize) * 2 + 2).op();
            c.operator(&in_window(&ray, &w));
            c.operator(&geo.x_conjugator.op());
            c.caption("X ray and its conjugating path to the boundary");
        }
        Fixture::Distal => {
            c.cone(&cfg.split_outer, "#4a90d9");
            c.cone(&cfg.split_inner, "#f5a623");
            c.lattice();
            let fam = build_f0_family(&cfg.split_inner, &cfg.split_outer, &w)?;
            if let Some((_, bridge)) = fam.members.first() {
                c.operator(bridge);
            }
            c.caption(&format!("{} inside {}", cfg.split_inner, cfg.split_outer));
        }
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_renders_deterministically() {
        let cfg = RunConfig::default();
        for f in Fixture::ALL {
            let a = render(f, &cfg).unwrap();
            assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"), "{}", f.name());
            assert_eq!(a, render(f, &cfg).unwrap());
        }
    }

    #[test]
    fn styles_by_fixture() {
        let cfg = RunConfig::default();
        assert!(render(Fixture::Cone, &cfg).unwrap().contains("<polygon"));
        let cond = render(Fixture::Condensation, &cfg).unwrap();
        assert!(cond.contains("stroke-dasharray"));
        let paths = render(Fixture::Paths, &cfg).unwrap();
        assert!(paths.contains("#c62828") && paths.contains("stroke-dasharray"));
        assert!("nope".parse::<Fixture>().is_err());
    }
}

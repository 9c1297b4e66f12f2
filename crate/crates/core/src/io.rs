//! JSON formats and SVG rendering.
//!
//! Rationals are written as `"p/q"` strings (integers as `"n"`); on input a
//! bare JSON integer is accepted as well.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rat, parse_rat, Rat};
use crate::hyperelliptic::ChainLengths;
use crate::lattice::{
    classify, column_vectors, interior_hull, is_maximal, InteriorHull, LatticePoint, LatticePolygon,
    PolygonClass,
};
use crate::moduli::{DimensionReport, Method};
use crate::subdivision::{HeightFunction, Triangulation};
use crate::tropical::{skeleton_map, TropicalCurve};

/// A rational on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Fraction {
    Int(i64),
    Str(String),
}

impl Fraction {
    fn from_rat(q: &Rat) -> Self {
        Fraction::Str(format_rat(q))
    }

    fn to_rat(&self) -> Result<Rat> {
        match self {
            Fraction::Int(n) => Ok(Rat::from_integer((*n).into())),
            Fraction::Str(s) => parse_rat(s),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn xy(p: LatticePoint) -> [i64; 2] {
    [p.x, p.y]
}

fn from_xy(c: [i64; 2]) -> LatticePoint {
    LatticePoint::new(c[0], c[1])
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<[i64; 2]>,
}

pub fn parse_polygon(s: &str) -> Result<LatticePolygon> {
    let j: PolygonJson = serde_json::from_str(s).map_err(parse_err)?;
    let pts: Vec<LatticePoint> = j.vertices.into_iter().map(from_xy).collect();
    LatticePolygon::new(&pts).map_err(|e| Error::Parse(format!("invalid polygon: {e}")))
}

pub fn polygon_json(p: &LatticePolygon) -> String {
    to_json(&PolygonJson { vertices: p.vertices().iter().map(|&v| xy(v)).collect() })
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    points: Vec<[i64; 2]>,
    triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    heights: Option<Vec<Fraction>>,
}

fn heights_from(points: &[[i64; 2]], values: &[Fraction]) -> Result<HeightFunction> {
    if points.len() != values.len() {
        return Err(Error::Parse(format!("{} points but {} heights", points.len(), values.len())));
    }
    let mut map = BTreeMap::new();
    for (&c, v) in points.iter().zip(values) {
        if map.insert(from_xy(c), v.to_rat()?).is_some() {
            return Err(Error::Parse(format!("repeated point {}", from_xy(c))));
        }
    }
    Ok(HeightFunction::new(map))
}

/// A triangulation and its optional heights, one per listed point.
pub fn parse_triangulation(s: &str) -> Result<(Triangulation, Option<HeightFunction>)> {
    let j: TriangulationJson = serde_json::from_str(s).map_err(parse_err)?;
    let heights = j.heights.as_ref().map(|h| heights_from(&j.points, h)).transpose()?;
    let points = j.points.iter().map(|&c| from_xy(c)).collect();
    let t = Triangulation::new(points, j.triangles).map_err(|e| Error::Parse(format!("invalid triangulation: {e}")))?;
    Ok((t, heights))
}

pub fn triangulation_json(t: &Triangulation, heights: Option<&HeightFunction>) -> String {
    to_json(&TriangulationJson {
        points: t.points().iter().map(|&p| xy(p)).collect(),
        triangles: t.triangles().to_vec(),
        heights: heights.map(|h| t.points().iter().map(|&p| Fraction::from_rat(h.at(p))).collect()),
    })
}

#[derive(Serialize, Deserialize)]
struct HeightsJson {
    points: Vec<[i64; 2]>,
    heights: Vec<Fraction>,
}

/// Heights file: `{"points": [[x,y],...], "heights": ["p/q",...]}`. Other
/// fields are ignored, so a triangulation file with heights also parses.
pub fn parse_heights(s: &str) -> Result<HeightFunction> {
    let j: HeightsJson = serde_json::from_str(s).map_err(parse_err)?;
    heights_from(&j.points, &j.heights)
}

pub fn heights_json(h: &HeightFunction) -> String {
    to_json(&HeightsJson {
        points: h.iter().map(|(&p, _)| xy(p)).collect(),
        heights: h.iter().map(|(_, v)| Fraction::from_rat(v)).collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    value: i64,
    method: String,
    witnesses: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    lower_bound: bool,
}

pub fn parse_report(s: &str) -> Result<DimensionReport> {
    let j: ReportJson = serde_json::from_str(s).map_err(parse_err)?;
    let method = Method::from_name(&j.method).ok_or_else(|| Error::Parse(format!("unknown method {:?}", j.method)))?;
    Ok(DimensionReport { value: j.value, method, witnesses: j.witnesses, lower_bound: j.lower_bound })
}

pub fn report_json(r: &DimensionReport) -> String {
    to_json(&ReportJson {
        value: r.value,
        method: r.method.name().to_string(),
        witnesses: r.witnesses.clone(),
        lower_bound: r.lower_bound,
    })
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    genus: usize,
    l_start: Fraction,
    h: Vec<Fraction>,
    u: Vec<Fraction>,
    w: Vec<Fraction>,
    l_end: Fraction,
}

pub fn parse_chain(s: &str) -> Result<ChainLengths> {
    let j: ChainJson = serde_json::from_str(s).map_err(parse_err)?;
    let all = |v: &[Fraction]| v.iter().map(Fraction::to_rat).collect::<Result<Vec<_>>>();
    let c = ChainLengths {
        l_start: j.l_start.to_rat()?,
        l_end: j.l_end.to_rat()?,
        h: all(&j.h)?,
        u: all(&j.u)?,
        w: all(&j.w)?,
    };
    let g = j.genus;
    if g < 2 || c.h.len() + 1 != g || c.u.len() + 2 != g || c.w.len() + 2 != g {
        return Err(Error::Parse(format!("chain lengths do not match genus {g}")));
    }
    Ok(c)
}

pub fn chain_json(c: &ChainLengths) -> String {
    let all = |v: &[Rat]| v.iter().map(Fraction::from_rat).collect();
    to_json(&ChainJson {
        genus: c.genus(),
        l_start: Fraction::from_rat(&c.l_start),
        h: all(&c.h),
        u: all(&c.u),
        w: all(&c.w),
        l_end: Fraction::from_rat(&c.l_end),
    })
}

#[derive(Serialize)]
struct BoundedEdgeJson {
    dual: [[i64; 2]; 2],
    from: usize,
    to: usize,
    direction: [i64; 2],
    length: Fraction,
}

#[derive(Serialize)]
struct RayJson {
    dual: [[i64; 2]; 2],
    vertex: usize,
    direction: [i64; 2],
}

#[derive(Serialize)]
struct CurveJson {
    vertices: Vec<[Fraction; 2]>,
    bounded_edges: Vec<BoundedEdgeJson>,
    rays: Vec<RayJson>,
}

pub fn curve_json(c: &TropicalCurve) -> String {
    let t = &c.triangulation;
    let dual = |e| {
        let (a, b) = t.edge_points(e);
        [xy(a), xy(b)]
    };
    to_json(&CurveJson {
        vertices: c.vertices.iter().map(|(x, y)| [Fraction::from_rat(x), Fraction::from_rat(y)]).collect(),
        bounded_edges: c
            .bounded_edges
            .iter()
            .map(|e| BoundedEdgeJson {
                dual: dual(e.dual),
                from: e.from,
                to: e.to,
                direction: xy(e.direction),
                length: Fraction::from_rat(&e.length),
            })
            .collect(),
        rays: c
            .rays
            .iter()
            .map(|r| RayJson { dual: dual(r.dual), vertex: r.triangle, direction: xy(r.direction) })
            .collect(),
    })
}

#[derive(Serialize)]
struct AnalysisJson {
    vertices: Vec<[i64; 2]>,
    g: usize,
    r: usize,
    lattice_points: usize,
    interior_polygon: Vec<[i64; 2]>,
    interior_dimension: Option<usize>,
    interior_genus: usize,
    maximal: Option<bool>,
    c: usize,
    classification: &'static str,
}

/// Polygon invariants as JSON. Maximality is `null` when the interior
/// polygon is not two-dimensional.
pub fn analysis_json(p: &LatticePolygon) -> String {
    let h = interior_hull(p);
    let interior_polygon = match &h {
        InteriorHull::Empty => vec![],
        InteriorHull::Point(q) => vec![xy(*q)],
        InteriorHull::Segment(a, b) => vec![xy(*a), xy(*b)],
        InteriorHull::Polygon(q) => q.vertices().iter().map(|&v| xy(v)).collect(),
    };
    let interior_genus = h.as_polygon().map_or(0, |q| q.genus());
    let classification = match classify(p) {
        PolygonClass::Nonhyperelliptic => "nonhyperelliptic",
        PolygonClass::Hyperelliptic => "hyperelliptic",
        PolygonClass::LowGenus(_) => "low_genus",
    };
    to_json(&AnalysisJson {
        vertices: p.vertices().iter().map(|&v| xy(v)).collect(),
        g: p.genus(),
        r: p.boundary_count(),
        lattice_points: p.all_lattice_points().len(),
        interior_polygon,
        interior_dimension: h.dimension(),
        interior_genus,
        maximal: if h.dimension() == Some(2) { is_maximal(p).ok() } else { None },
        c: column_vectors(p).len(),
        classification,
    })
}

/// What to draw. Panels, left to right: the polygon with its triangulation,
/// the dual curve, and the skeleton drawn on the curve.
#[derive(Debug, Clone, Default)]
pub struct Scene<'a> {
    pub polygon: Option<&'a LatticePolygon>,
    pub triangulation: Option<&'a Triangulation>,
    pub curve: Option<&'a TropicalCurve>,
    pub skeleton: bool,
}

const UNIT: f64 = 40.0;

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
    offset: f64,
}

impl Frame {
    fn around(points: &[(f64, f64)], offset: f64) -> Frame {
        let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
            points.iter().map(pick).fold(init, f)
        };
        let min = (fold(f64::min, f64::INFINITY, |p| p.0) - 1.0, fold(f64::min, f64::INFINITY, |p| p.1) - 1.0);
        let max = (fold(f64::max, f64::NEG_INFINITY, |p| p.0) + 1.0, fold(f64::max, f64::NEG_INFINITY, |p| p.1) + 1.0);
        Frame { min, max, offset }
    }

    fn width(&self) -> f64 {
        (self.max.0 - self.min.0) * UNIT
    }

    fn height(&self) -> f64 {
        (self.max.1 - self.min.1) * UNIT
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        (self.offset + (p.0 - self.min.0) * UNIT, (self.max.1 - p.1) * UNIT)
    }

    /// Where the ray from `p` in direction `d` leaves the frame.
    fn exit(&self, p: (f64, f64), d: (f64, f64)) -> (f64, f64) {
        let bound = |x: f64, dx: f64, lo: f64, hi: f64| {
            if dx > 0.0 {
                (hi - x) / dx
            } else if dx < 0.0 {
                (lo - x) / dx
            } else {
                f64::INFINITY
            }
        };
        let s = bound(p.0, d.0, self.min.0, self.max.0).min(bound(p.1, d.1, self.min.1, self.max.1));
        (p.0 + s * d.0, p.1 + s * d.1)
    }
}

fn fp(p: LatticePoint) -> (f64, f64) {
    (p.x as f64, p.y as f64)
}

fn fq(q: &(Rat, Rat)) -> (f64, f64) {
    (q.0.to_f64().unwrap_or(0.0), q.1.to_f64().unwrap_or(0.0))
}

fn line(out: &mut String, f: &Frame, a: (f64, f64), b: (f64, f64), class: &str) {
    let (a, b) = (f.map(a), f.map(b));
    let _ = writeln!(out, r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, a.0, a.1, b.0, b.1);
}

fn dot(out: &mut String, f: &Frame, p: (f64, f64), class: &str) {
    let p = f.map(p);
    let _ = writeln!(out, r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="3"/>"#, p.0, p.1);
}

/// Deterministic SVG: one lattice unit is 40px and every panel has a margin
/// of one unit. Triangulation edges are `line` elements, lattice points are
/// `circle` elements; rays are clipped at the panel border.
pub fn render_svg(scene: &Scene) -> Result<String> {
    let polygon = scene.polygon.cloned().or_else(|| scene.triangulation.map(Triangulation::polygon));
    if polygon.is_none() && scene.curve.is_none() {
        return Err(Error::precondition("empty scene"));
    }
    if scene.skeleton && scene.curve.is_none() {
        return Err(Error::precondition("drawing a skeleton requires a curve"));
    }
    let mut body = String::new();
    let mut width = 0.0;
    let mut height: f64 = 0.0;
    if let Some(p) = &polygon {
        let pts = p.all_lattice_points();
        let f = Frame::around(&pts.iter().map(|&q| fp(q)).collect::<Vec<_>>(), width);
        body.push_str("<g class=\"polygon\">\n");
        let outline: Vec<String> = p
            .vertices()
            .iter()
            .map(|&v| {
                let m = f.map(fp(v));
                format!("{:.2},{:.2}", m.0, m.1)
            })
            .collect();
        let _ = writeln!(body, r#"<polygon class="hull" points="{}"/>"#, outline.join(" "));
        if let Some(t) = scene.triangulation {
            for e in t.edges() {
                let (a, b) = t.edge_points(e);
                line(&mut body, &f, fp(a), fp(b), "edge");
            }
        }
        for &q in &pts {
            dot(&mut body, &f, fp(q), if p.strictly_contains(q) { "interior" } else { "boundary" });
        }
        body.push_str("</g>\n");
        width += f.width();
        height = height.max(f.height());
    }
    if let Some(c) = scene.curve {
        let verts: Vec<(f64, f64)> = c.vertices.iter().map(fq).collect();
        let mut panels = vec![("curve", None)];
        if scene.skeleton {
            panels.push(("skeleton", Some(skeleton_map(&c.triangulation))));
        }
        for (name, skel) in panels {
            let f = Frame::around(&verts, width);
            let _ = writeln!(body, "<g class=\"{name}\">");
            match &skel {
                None => {
                    for e in &c.bounded_edges {
                        line(&mut body, &f, verts[e.from], verts[e.to], "edge");
                    }
                    for r in &c.rays {
                        let p = verts[r.triangle];
                        line(&mut body, &f, p, f.exit(p, fp(r.direction)), "ray");
                    }
                    for &v in &verts {
                        dot(&mut body, &f, v, "vertex");
                    }
                }
                Some(m) => {
                    for chain in &m.chains {
                        for &e in chain {
                            let e = &c.bounded_edges[e];
                            line(&mut body, &f, verts[e.from], verts[e.to], "edge");
                        }
                    }
                    let mut ends: Vec<usize> = m.ends.iter().flat_map(|&(a, b)| [a, b]).collect();
                    ends.sort();
                    ends.dedup();
                    for v in ends {
                        dot(&mut body, &f, verts[v], "vertex");
                    }
                }
            }
            body.push_str("</g>\n");
            width += f.width();
            height = height.max(f.height());
        }
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    out.push_str("<style>line{stroke:#222;stroke-width:1.5}.ray{stroke:#888}.hull{fill:#f4f1e8;stroke:#222;stroke-width:2}circle{fill:#222}.interior{fill:#c33}</style>\n");
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn square() -> LatticePolygon {
        LatticePolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn polygon_round_trip() {
        let p = parse_polygon(r#"{"vertices": [[3,0],[0,0],[0,3],[1,1]]}"#).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(parse_polygon(&polygon_json(&p)).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_polygon("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_polygon(r#"{"vertices": [[0,0],[1,1],[2,2]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_heights(r#"{"points": [[0,0]], "heights": ["1/0"]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn heights_accept_integers() {
        let h = parse_heights(r#"{"points": [[0,0],[1,0]], "heights": [2, "-1/3"]}"#).unwrap();
        assert_eq!(*h.at(LatticePoint::new(0, 0)), rat(2));
        assert_eq!(*h.at(LatticePoint::new(1, 0)), frac(-1, 3));
        assert_eq!(parse_heights(&heights_json(&h)).unwrap(), h);
    }

    #[test]
    fn report_omits_false_lower_bound() {
        let r = DimensionReport {
            value: 9,
            method: Method::ClosedForm,
            witnesses: [("c".to_string(), 4)].into_iter().collect(),
            lower_bound: false,
        };
        let s = report_json(&r);
        assert!(!s.contains("lower_bound"));
        assert_eq!(parse_report(&s).unwrap(), r);
    }

    #[test]
    fn unit_square_svg() {
        let p = square();
        let t = Triangulation::new(p.all_lattice_points(), vec![[0, 1, 3], [0, 2, 3]]).unwrap();
        let svg = render_svg(&Scene { polygon: Some(&p), triangulation: Some(&t), ..Default::default() }).unwrap();
        assert_eq!(svg.matches("<line").count(), 5);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains(r#"width="120" height="120""#));
        assert_eq!(render_svg(&Scene { polygon: Some(&p), triangulation: Some(&t), ..Default::default() }).unwrap(), svg);
    }

    #[test]
    fn empty_scene() {
        assert!(render_svg(&Scene::default()).is_err());
    }
}

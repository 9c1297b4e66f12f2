//! Lattice polygon calculus: hulls, interior and relaxed polygons,
//! maximality, column vectors and lattice width.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

pub const fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint { x, y }
}

impl LatticePoint {
    pub fn new(x: i64, y: i64) -> Self {
        pt(x, y)
    }

    pub fn sub(self, o: LatticePoint) -> LatticePoint {
        pt(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: LatticePoint) -> LatticePoint {
        pt(self.x + o.x, self.y + o.y)
    }

    pub fn dot(self, o: LatticePoint) -> i64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: LatticePoint) -> i64 {
        self.x * o.y - self.y * o.x
    }

    /// Counterclockwise quarter turn.
    pub fn rot90(self) -> LatticePoint {
        pt(-self.y, self.x)
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// gcd of the coordinates: the lattice length of the segment from the origin.
    pub fn lattice_length(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn primitive(self) -> LatticePoint {
        let g = self.lattice_length();
        pt(self.x / g, self.y / g)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Twice the signed area of `o a b`; positive when counterclockwise.
pub fn orient(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    a.sub(o).cross(b.sub(o))
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: LatticePoint, a: LatticePoint, b: LatticePoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Whether the open segments `ab` and `cd` cross at a single interior point.
pub fn segments_cross(a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// A half-plane `alpha x + beta y <= c` with `gcd(alpha, beta) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPlane {
    pub alpha: i64,
    pub beta: i64,
    pub c: i64,
}

impl HalfPlane {
    /// The half-plane to the left of the directed line `a -> b`.
    pub fn left_of(a: LatticePoint, b: LatticePoint) -> Self {
        let n = pt(b.y - a.y, a.x - b.x).primitive();
        HalfPlane {
            alpha: n.x,
            beta: n.y,
            c: n.x * a.x + n.y * a.y,
        }
    }

    pub fn eval(&self, p: LatticePoint) -> i64 {
        self.alpha * p.x + self.beta * p.y
    }

    /// Signed lattice distance beyond the boundary line: `<= 0` inside.
    pub fn excess(&self, p: LatticePoint) -> i64 {
        self.eval(p) - self.c
    }

    pub fn relaxed(&self) -> HalfPlane {
        HalfPlane { c: self.c + 1, ..*self }
    }

    pub fn normal(&self) -> LatticePoint {
        pt(self.alpha, self.beta)
    }
}

/// A two-dimensional convex lattice polygon with counterclockwise, strictly
/// convex vertex list starting at the lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// The convex hull of a finite lattice point set, by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InteriorHull {
    Empty,
    Point(LatticePoint),
    Segment(LatticePoint, LatticePoint),
    Polygon(LatticePolygon),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonClass {
    Nonhyperelliptic,
    Hyperelliptic,
    /// Genus zero or one.
    LowGenus(usize),
}

/// Boundary and interior lattice points, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoints {
    pub boundary: Vec<LatticePoint>,
    pub interior: Vec<LatticePoint>,
}

fn strict_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Convex hull of a nonempty point set, with the variant matching its dimension.
pub fn hull(points: &[LatticePoint]) -> Result<InteriorHull> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let h = strict_hull(points);
    Ok(match h.len() {
        1 => InteriorHull::Point(h[0]),
        2 => InteriorHull::Segment(h[0], h[1]),
        _ => InteriorHull::Polygon(LatticePolygon { vertices: h }),
    })
}

impl LatticePolygon {
    /// Convex hull of `points`, which must not be collinear.
    pub fn new(points: &[LatticePoint]) -> Result<Self> {
        match hull(points)? {
            InteriorHull::Polygon(p) => Ok(p),
            _ => Err(Error::NotTwoDimensional),
        }
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        let pts: Vec<LatticePoint> = coords.iter().map(|&(x, y)| pt(x, y)).collect();
        Self::new(&pts)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Directed edges `(v_i, v_{i+1})`, counterclockwise.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// One half-plane per edge, in edge order.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        self.edges().map(|(a, b)| HalfPlane::left_of(a, b)).collect()
    }

    pub fn twice_area(&self) -> i64 {
        let v = &self.vertices;
        (1..v.len() - 1).map(|i| orient(v[0], v[i], v[i + 1])).sum()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) >= 0)
    }

    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        self.contains(p) && self.edges().any(|(a, b)| orient(a, b, p) == 0)
    }

    pub fn strictly_contains(&self, p: LatticePoint) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) > 0)
    }

    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|&v| self.contains(v))
    }

    pub fn bbox(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            pt(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            pt(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// All lattice points, sorted.
    pub fn all_lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bbox();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                let p = pt(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn lattice_points(&self) -> LatticePoints {
        let (boundary, interior) = self
            .all_lattice_points()
            .into_iter()
            .partition(|&p| self.on_boundary(p));
        LatticePoints { boundary, interior }
    }

    pub fn genus(&self) -> usize {
        self.lattice_points().interior.len()
    }

    /// Number of boundary lattice points.
    pub fn boundary_count(&self) -> usize {
        self.edges().map(|(a, b)| b.sub(a).lattice_length() as usize).sum()
    }

    /// Lattice points on the line `h.alpha x + h.beta y = h.c` inside the polygon,
    /// sorted.
    pub fn points_on_line(&self, h: &HalfPlane) -> Vec<LatticePoint> {
        self.all_lattice_points()
            .into_iter()
            .filter(|&p| h.excess(p) == 0)
            .collect()
    }

    pub fn translate(&self, by: LatticePoint) -> LatticePolygon {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|&v| v.add(by)).collect();
        LatticePolygon::new(&pts).expect("translation preserves dimension")
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl InteriorHull {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            InteriorHull::Empty => None,
            InteriorHull::Point(_) => Some(0),
            InteriorHull::Segment(..) => Some(1),
            InteriorHull::Polygon(_) => Some(2),
        }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self {
            InteriorHull::Empty => false,
            InteriorHull::Point(q) => *q == p,
            InteriorHull::Segment(a, b) => on_segment(p, *a, *b),
            InteriorHull::Polygon(poly) => poly.contains(p),
        }
    }

    pub fn as_polygon(&self) -> Option<&LatticePolygon> {
        match self {
            InteriorHull::Polygon(p) => Some(p),
            _ => None,
        }
    }

    /// Whether the closed segment `ab` meets the hull.
    pub fn meets_segment(&self, a: LatticePoint, b: LatticePoint) -> bool {
        match self {
            InteriorHull::Empty => false,
            InteriorHull::Point(q) => on_segment(*q, a, b),
            InteriorHull::Segment(c, d) => {
                on_segment(*c, a, b)
                    || on_segment(*d, a, b)
                    || on_segment(a, *c, *d)
                    || on_segment(b, *c, *d)
                    || segments_cross(a, b, *c, *d)
            }
            InteriorHull::Polygon(poly) => {
                // Clip the parameter interval [0, 1] against every half-plane.
                let (mut lo, mut hi) = (Rat::zero(), crate::exact::rat(1));
                for h in poly.half_planes() {
                    let start = h.excess(a);
                    let slope = h.eval(b) - h.eval(a);
                    // start + t * slope <= 0
                    if slope == 0 {
                        if start > 0 {
                            return false;
                        }
                    } else {
                        let t = crate::exact::frac(-start, slope);
                        if slope > 0 {
                            hi = hi.min(t);
                        } else {
                            lo = lo.max(t);
                        }
                    }
                }
                lo <= hi
            }
        }
    }

    /// Lattice points of the hull, sorted.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        match self {
            InteriorHull::Empty => Vec::new(),
            InteriorHull::Point(p) => vec![*p],
            InteriorHull::Segment(a, b) => {
                let d = b.sub(*a);
                let g = d.lattice_length();
                let step = d.primitive();
                let mut v: Vec<LatticePoint> = (0..=g).map(|k| pt(a.x + k * step.x, a.y + k * step.y)).collect();
                v.sort();
                v
            }
            InteriorHull::Polygon(p) => p.all_lattice_points(),
        }
    }
}

/// Convex hull of the interior lattice points.
pub fn interior_hull(p: &LatticePolygon) -> InteriorHull {
    let interior = p.lattice_points().interior;
    if interior.is_empty() {
        InteriorHull::Empty
    } else {
        hull(&interior).expect("nonempty")
    }
}

pub fn classify(p: &LatticePolygon) -> PolygonClass {
    match interior_hull(p) {
        InteriorHull::Empty => PolygonClass::LowGenus(0),
        InteriorHull::Point(_) => PolygonClass::LowGenus(1),
        InteriorHull::Segment(..) => PolygonClass::Hyperelliptic,
        InteriorHull::Polygon(_) => PolygonClass::Nonhyperelliptic,
    }
}

/// A convex polygon with rational vertices, counterclockwise from the
/// lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolygon {
    vertices: Vec<(Rat, Rat)>,
}

fn rat_orient(o: &(Rat, Rat), a: &(Rat, Rat), b: &(Rat, Rat)) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl RationalPolygon {
    fn from_points(mut pts: Vec<(Rat, Rat)>) -> Self {
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return RationalPolygon { vertices: pts };
        }
        let chain = |iter: Vec<(Rat, Rat)>| {
            let mut out: Vec<(Rat, Rat)> = Vec::new();
            for p in iter {
                while out.len() >= 2 && !rat_orient(&out[out.len() - 2], &out[out.len() - 1], &p).is_positive() {
                    out.pop();
                }
                out.push(p);
            }
            out.pop();
            out
        };
        let mut lower = chain(pts.clone());
        lower.extend(chain(pts.into_iter().rev().collect()));
        RationalPolygon { vertices: lower }
    }

    pub fn vertices(&self) -> &[(Rat, Rat)] {
        &self.vertices
    }

    /// The polygon as a lattice polygon, when every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticePolygon> {
        let pts: Option<Vec<LatticePoint>> = self
            .vertices
            .iter()
            .map(|(x, y)| {
                (x.is_integer() && y.is_integer()).then(|| {
                    let xi: i64 = x.to_integer().try_into().ok()?;
                    let yi: i64 = y.to_integer().try_into().ok()?;
                    Some(pt(xi, yi))
                })?
            })
            .collect();
        LatticePolygon::new(&pts?).ok()
    }

    pub fn same_set_as(&self, p: &LatticePolygon) -> bool {
        self.to_lattice().as_ref() == Some(p)
    }
}

/// Intersection of the half-planes `alpha x + beta y <= c + 1` over all
/// edges. Requires the half-plane system to be bounded, which holds for any
/// polygon.
pub fn relax(p: &LatticePolygon) -> RationalPolygon {
    let planes: Vec<HalfPlane> = p.half_planes().iter().map(HalfPlane::relaxed).collect();
    let mut candidates = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            let (a, b) = (planes[i], planes[j]);
            let det = a.alpha * b.beta - a.beta * b.alpha;
            if det == 0 {
                continue;
            }
            let x = crate::exact::frac(a.c * b.beta - a.beta * b.c, det);
            let y = crate::exact::frac(a.alpha * b.c - a.c * b.alpha, det);
            let inside = planes.iter().all(|h| {
                Rat::from_integer(h.alpha.into()) * &x + Rat::from_integer(h.beta.into()) * &y
                    <= Rat::from_integer(h.c.into())
            });
            if inside {
                candidates.push((x, y));
            }
        }
    }
    RationalPolygon::from_points(candidates)
}

fn require_nonhyperelliptic(p: &LatticePolygon) -> Result<LatticePolygon> {
    match interior_hull(p) {
        InteriorHull::Polygon(q) => Ok(q),
        _ => Err(Error::precondition(
            "maximality test requires nonhyperelliptic polygon",
        )),
    }
}

pub fn is_maximal(p: &LatticePolygon) -> Result<bool> {
    let inner = require_nonhyperelliptic(p)?;
    Ok(relax(&inner).same_set_as(p))
}

/// The unique maximal polygon with the same interior polygon.
pub fn maximal_model(p: &LatticePolygon) -> Result<LatticePolygon> {
    let inner = require_nonhyperelliptic(p)?;
    relax(&inner).to_lattice().ok_or_else(|| {
        Error::Internal(format!("relaxed interior polygon of {p} is not a lattice polygon"))
    })
}

/// A column vector together with the index of its base facet in
/// [`LatticePolygon::edges`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnVector {
    pub v: LatticePoint,
    pub base_facet: usize,
}

/// All (vector, base facet) pairs with `v + ((P - facet) ∩ Z²) ⊆ P`.
pub fn column_vectors(p: &LatticePolygon) -> Vec<ColumnVector> {
    let points = p.all_lattice_points();
    let set: BTreeSet<LatticePoint> = points.iter().copied().collect();
    let (lo, hi) = p.bbox();
    let (dx, dy) = (hi.x - lo.x, hi.y - lo.y);
    let mut out = Vec::new();
    for (f, h) in p.half_planes().iter().enumerate() {
        let off_facet: Vec<LatticePoint> = points.iter().copied().filter(|&q| h.excess(q) != 0).collect();
        for vx in -dx..=dx {
            for vy in -dy..=dy {
                let v = pt(vx, vy);
                if v.is_zero() {
                    continue;
                }
                if off_facet.iter().all(|&q| set.contains(&q.add(v))) {
                    out.push(ColumnVector { v, base_facet: f });
                }
            }
        }
    }
    out.sort();
    out
}

/// Column-vector bookkeeping for one edge of the interior polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceColumns {
    /// The edge of the interior polygon.
    pub face: (LatticePoint, LatticePoint),
    /// Lattice points on the edge.
    pub face_points: usize,
    /// Lattice points of the polygon on the relaxed line of the edge.
    pub relaxed_points: usize,
    pub count: usize,
}

/// Per interior edge `tau`, `max(0, |tau^(-1)| - 1 - |tau|)`, for a maximal
/// nonhyperelliptic polygon.
pub fn column_count_by_face(p: &LatticePolygon) -> Result<Vec<FaceColumns>> {
    if !is_maximal(p)? {
        return Err(Error::precondition(
            "column count by face requires a maximal polygon",
        ));
    }
    let inner = require_nonhyperelliptic(p)?;
    Ok(inner
        .edges()
        .map(|(a, b)| {
            let h = HalfPlane::left_of(a, b);
            let face_points = b.sub(a).lattice_length() as usize + 1;
            let relaxed_points = p.points_on_line(&h.relaxed()).len();
            FaceColumns {
                face: (a, b),
                face_points,
                relaxed_points,
                count: relaxed_points.saturating_sub(1 + face_points),
            }
        })
        .collect())
}

/// Lattice width of a polygon; zero for a segment or point.
pub fn lattice_width(h: &InteriorHull) -> u64 {
    let poly = match h {
        InteriorHull::Polygon(p) => p,
        _ => return 0,
    };
    let (lo, hi) = poly.bbox();
    let bound = (hi.x - lo.x).max(hi.y - lo.y).max(1);
    let mut best = u64::MAX;
    for ux in 0..=bound {
        for uy in -bound..=bound {
            if (ux == 0 && uy <= 0) || ux.gcd(&uy) != 1 {
                continue;
            }
            let u = pt(ux, uy);
            let vals = poly.vertices().iter().map(|&v| u.dot(v));
            let w = (vals.clone().max().unwrap() - vals.min().unwrap()) as u64;
            best = best.min(w);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_coords(c).unwrap()
    }

    #[test]
    fn hull_variants() {
        let h = hull(&[pt(0, 0), pt(4, 0), pt(0, 4), pt(1, 1)]).unwrap();
        assert_eq!(h, InteriorHull::Polygon(poly(&[(0, 0), (4, 0), (0, 4)])));
        assert_eq!(
            poly(&[(0, 0), (4, 0), (0, 4)]).vertices(),
            &[pt(0, 0), pt(4, 0), pt(0, 4)]
        );
        assert_eq!(hull(&[pt(1, 1)]).unwrap(), InteriorHull::Point(pt(1, 1)));
        assert_eq!(
            hull(&[pt(1, 1), pt(3, 1), pt(2, 1)]).unwrap(),
            InteriorHull::Segment(pt(1, 1), pt(3, 1))
        );
        assert_eq!(hull(&[]), Err(Error::EmptyPointSet));
    }

    #[test]
    fn collinear_boundary_points_are_dropped() {
        let p = poly(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (0, 1)]);
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn lattice_point_counts() {
        let t = poly(&[(0, 0), (4, 0), (0, 4)]);
        let lp = t.lattice_points();
        assert_eq!(lp.boundary.len(), 12);
        assert_eq!(lp.interior, vec![pt(1, 1), pt(1, 2), pt(2, 1)]);
        let unit = poly(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!((unit.boundary_count(), unit.genus()), (3, 0));
        let sq = poly(&[(0, 0), (3, 0), (3, 3), (0, 3)]);
        assert_eq!((sq.boundary_count(), sq.genus()), (12, 4));
    }

    #[test]
    fn interior_hulls_and_classes() {
        let t = poly(&[(0, 0), (4, 0), (0, 4)]);
        assert_eq!(interior_hull(&t), InteriorHull::Polygon(poly(&[(1, 1), (2, 1), (1, 2)])));
        assert_eq!(classify(&t), PolygonClass::Nonhyperelliptic);
        let sq = poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(interior_hull(&sq), InteriorHull::Point(pt(1, 1)));
        assert_eq!(classify(&sq), PolygonClass::LowGenus(1));
        let e13 = poly(&[(0, 0), (0, 2), (4, 0), (4, 2)]);
        assert_eq!(interior_hull(&e13), InteriorHull::Segment(pt(1, 1), pt(3, 1)));
        assert_eq!(classify(&e13), PolygonClass::Hyperelliptic);
        assert_eq!(classify(&poly(&[(0, 0), (1, 0), (0, 1)])), PolygonClass::LowGenus(0));
    }

    #[test]
    fn relaxation() {
        let r = relax(&poly(&[(1, 1), (2, 1), (1, 2)]));
        assert!(r.same_set_as(&poly(&[(0, 0), (4, 0), (0, 4)])));
        let r = relax(&poly(&[(1, 1), (2, 1), (2, 2), (1, 2)]));
        assert!(r.same_set_as(&poly(&[(0, 0), (3, 0), (3, 3), (0, 3)])));
        let r = relax(&poly(&[(0, 0), (1, 0), (0, 1)]));
        assert!(r.same_set_as(&poly(&[(-1, -1), (3, -1), (-1, 3)])));
    }

    #[test]
    fn relaxation_can_be_non_lattice() {
        let r = relax(&poly(&[(0, 0), (3, 1), (1, 2)]));
        assert!(r.to_lattice().is_none());
    }

    #[test]
    fn maximality() {
        assert!(is_maximal(&poly(&[(0, 0), (4, 0), (0, 4)])).unwrap());
        let chopped = poly(&[(0, 0), (3, 0), (0, 3), (3, 2), (2, 3)]);
        assert!(!is_maximal(&chopped).unwrap());
        let sq = poly(&[(0, 0), (3, 0), (3, 3), (0, 3)]);
        assert!(is_maximal(&sq).unwrap());
        assert_eq!(maximal_model(&chopped).unwrap(), sq);
        let t = poly(&[(0, 0), (4, 0), (0, 4)]);
        assert_eq!(maximal_model(&t).unwrap(), t);
        assert!(is_maximal(&poly(&[(0, 0), (0, 2), (4, 0), (4, 2)])).is_err());
    }

    #[test]
    fn column_vector_counts() {
        assert_eq!(column_vectors(&poly(&[(0, 0), (4, 0), (0, 4)])).len(), 6);
        assert_eq!(column_vectors(&poly(&[(0, 0), (3, 0), (3, 3), (0, 3)])).len(), 4);
        assert_eq!(column_vectors(&poly(&[(0, 0), (4, 0), (4, 4), (0, 4)])).len(), 4);
        let sq = column_vectors(&poly(&[(0, 0), (3, 0), (3, 3), (0, 3)]));
        assert!(sq.iter().any(|c| c.v == pt(0, -1)));
    }

    #[test]
    fn column_counts_per_face() {
        let t = column_count_by_face(&poly(&[(0, 0), (4, 0), (0, 4)])).unwrap();
        assert!(t.iter().all(|f| f.count == 2 && f.relaxed_points == 5 && f.face_points == 2));
        let s = column_count_by_face(&poly(&[(0, 0), (3, 0), (3, 3), (0, 3)])).unwrap();
        assert!(s.iter().all(|f| f.count == 1));
        let chopped = poly(&[(0, 0), (3, 0), (0, 3), (3, 2), (2, 3)]);
        assert!(column_count_by_face(&chopped).is_err());
    }

    #[test]
    fn widths() {
        let e13 = poly(&[(0, 0), (0, 2), (4, 0), (4, 2)]);
        assert_eq!(lattice_width(&InteriorHull::Polygon(e13)), 2);
        let unit = poly(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(lattice_width(&InteriorHull::Polygon(unit)), 1);
        assert_eq!(lattice_width(&InteriorHull::Segment(pt(0, 0), pt(3, 1))), 0);
    }

    #[test]
    fn segment_meets_polygon() {
        let inner = InteriorHull::Polygon(poly(&[(1, 1), (2, 1), (1, 2)]));
        assert!(inner.meets_segment(pt(0, 0), pt(1, 1)));
        assert!(!inner.meets_segment(pt(0, 0), pt(1, 0)));
        assert!(inner.meets_segment(pt(0, 2), pt(3, 0)));
        assert!(inner.meets_segment(pt(0, 3), pt(3, 0)));
        assert!(!inner.meets_segment(pt(0, 4), pt(4, 0)));
        let seg = InteriorHull::Segment(pt(1, 1), pt(3, 1));
        assert!(seg.meets_segment(pt(0, 0), pt(2, 2)));
        assert!(!seg.meets_segment(pt(0, 0), pt(4, 0)));
    }
}

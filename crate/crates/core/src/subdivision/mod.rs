//! Regular subdivisions and lattice triangulations.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, Rat};
use crate::lattice::{hull, orient, pt, InteriorHull, LatticePoint, LatticePolygon};

mod beehive;
mod enumerate;
mod honeycomb;
mod prune;
mod regular;

pub use beehive::{beehive, beehive_initial_heights, BeehiveResult};
pub use enumerate::{enumerate_unimodular, enumerate_unimodular_parallel, for_each_unimodular, ENUMERATION_GUARD};
pub use honeycomb::{honeycomb, is_honeycomb_polygon};
pub use prune::{is_pruned, prune};
pub use regular::{
    fold_forms, lift_with_fixed_values, refine_regular, regularity_witness, solve_fold_system, verify_witness,
    ConeWitness, Fold,
};

/// Heights on the lattice points of a polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction {
    values: BTreeMap<LatticePoint, Rat>,
}

impl HeightFunction {
    pub fn new(values: BTreeMap<LatticePoint, Rat>) -> Self {
        HeightFunction { values }
    }

    pub fn from_fn(points: &[LatticePoint], mut f: impl FnMut(LatticePoint) -> Rat) -> Self {
        HeightFunction {
            values: points.iter().map(|&p| (p, f(p))).collect(),
        }
    }

    pub fn zero(p: &LatticePolygon) -> Self {
        Self::from_fn(&p.all_lattice_points(), |_| Rat::zero())
    }

    pub fn get(&self, p: LatticePoint) -> Option<&Rat> {
        self.values.get(&p)
    }

    /// The height at `p`; panics if `p` is not in the domain.
    pub fn at(&self, p: LatticePoint) -> &Rat {
        self.values
            .get(&p)
            .unwrap_or_else(|| panic!("no height at {p}"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Rat)> {
        self.values.iter()
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        self.values.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn set(&mut self, p: LatticePoint, v: Rat) {
        self.values.insert(p, v);
    }

    /// `self + eps * other` on the common domain of `self`.
    pub fn plus_scaled(&self, other: &HeightFunction, eps: &Rat) -> HeightFunction {
        HeightFunction {
            values: self
                .values
                .iter()
                .map(|(p, v)| (*p, v + eps * other.get(*p).cloned().unwrap_or_default()))
                .collect(),
        }
    }

    /// Adds the affine function `c + a x + b y`.
    pub fn plus_affine(&self, c: &Rat, a: &Rat, b: &Rat) -> HeightFunction {
        HeightFunction {
            values: self
                .values
                .iter()
                .map(|(p, v)| (*p, v + c + a * Rat::from_integer(p.x.into()) + b * Rat::from_integer(p.y.into())))
                .collect(),
        }
    }

    pub fn covers(&self, p: &LatticePolygon) -> bool {
        p.all_lattice_points().iter().all(|q| self.values.contains_key(q))
    }
}

/// A polyhedral subdivision of a polygon. Each cell records the lattice
/// points lying on its lower-hull face, which may include non-vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    parent: LatticePolygon,
    cells: Vec<LatticePolygon>,
    marked: Vec<Vec<LatticePoint>>,
}

impl Subdivision {
    /// Builds a subdivision from marked point sets, one per cell. Cells are
    /// sorted for a canonical representation.
    pub fn from_marked(parent: LatticePolygon, marked: Vec<Vec<LatticePoint>>) -> Result<Self> {
        let mut pairs: Vec<(Vec<LatticePoint>, LatticePolygon)> = Vec::new();
        for mut m in marked {
            m.sort();
            m.dedup();
            let poly = LatticePolygon::new(&m)?;
            pairs.push((m, poly));
        }
        pairs.sort();
        let (marked, cells) = pairs.into_iter().unzip();
        Ok(Subdivision { parent, cells, marked })
    }

    pub fn parent(&self) -> &LatticePolygon {
        &self.parent
    }

    pub fn cells(&self) -> &[LatticePolygon] {
        &self.cells
    }

    /// Lattice points on the face of cell `i`, sorted.
    pub fn cell_points(&self, i: usize) -> &[LatticePoint] {
        &self.marked[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Index of a cell containing every given point.
    pub fn cell_containing(&self, pts: &[LatticePoint]) -> Option<usize> {
        (0..self.cells.len()).find(|&i| pts.iter().all(|&p| self.cells[i].contains(p)))
    }

    /// Whether every cell is a unimodular triangle with no extra marked points
    /// and every lattice point of the parent is used.
    pub fn is_unimodular_triangulation(&self) -> bool {
        let used: BTreeSet<LatticePoint> = self.marked.iter().flatten().copied().collect();
        self.marked.iter().all(|m| m.len() == 3)
            && self.cells.iter().all(|c| c.twice_area() == 1)
            && used.len() == self.parent.all_lattice_points().len()
    }

    pub fn to_triangulation(&self) -> Result<Triangulation> {
        if self.marked.iter().any(|m| m.len() != 3) {
            return Err(Error::precondition("subdivision is not a triangulation"));
        }
        let tris: Vec<[LatticePoint; 3]> = self.marked.iter().map(|m| [m[0], m[1], m[2]]).collect();
        Triangulation::from_point_triangles(&tris)
    }

    /// Whether every cell of `self` lies inside some cell of `coarser`.
    pub fn refines(&self, coarser: &Subdivision) -> bool {
        self.marked.iter().all(|m| coarser.cell_containing(m).is_some())
    }
}

/// An undirected edge between two point indices, with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
}

impl Edge {
    pub fn new(i: usize, j: usize) -> Self {
        Edge { a: i.min(j), b: i.max(j) }
    }
}

/// Triangles on the two sides of an edge `a -> b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSides {
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// A triangulation of a lattice point configuration. Points are sorted;
/// every triangle is counterclockwise and starts at its smallest index;
/// triangles are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    points: Vec<LatticePoint>,
    triangles: Vec<[usize; 3]>,
}

fn canonical_triangle(t: [usize; 3], points: &[LatticePoint]) -> [usize; 3] {
    let [i, j, k] = t;
    let ccw = if orient(points[i], points[j], points[k]) > 0 { [i, j, k] } else { [i, k, j] };
    let m = (0..3).min_by_key(|&s| ccw[s]).unwrap();
    [ccw[m], ccw[(m + 1) % 3], ccw[(m + 2) % 3]]
}

impl Triangulation {
    /// Validates that the triangles form a triangulation of the convex hull of
    /// the points: nondegenerate, no overlaps, no gaps.
    pub fn new(points: Vec<LatticePoint>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let n = points.len();
        if triangles.is_empty() {
            return Err(Error::precondition("triangulation has no triangles"));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| points[i]);
        let mut remap = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let sorted: Vec<LatticePoint> = order.iter().map(|&i| points[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::precondition("repeated point in triangulation"));
        }
        let mut tris = Vec::with_capacity(triangles.len());
        for t in &triangles {
            if t.iter().any(|&i| i >= n) {
                return Err(Error::precondition("triangle index out of range"));
            }
            let t = [remap[t[0]], remap[t[1]], remap[t[2]]];
            if orient(sorted[t[0]], sorted[t[1]], sorted[t[2]]) == 0 {
                return Err(Error::precondition("degenerate triangle"));
            }
            tris.push(canonical_triangle(t, &sorted));
        }
        tris.sort();
        let t = Triangulation { points: sorted, triangles: tris };
        t.validate()?;
        Ok(t)
    }

    pub fn from_point_triangles(tris: &[[LatticePoint; 3]]) -> Result<Self> {
        let mut pts: Vec<LatticePoint> = tris.iter().flatten().copied().collect();
        pts.sort();
        pts.dedup();
        let idx = |p: &LatticePoint| pts.binary_search(p).unwrap();
        let triangles = tris.iter().map(|t| [idx(&t[0]), idx(&t[1]), idx(&t[2])]).collect();
        Triangulation::new(pts.clone(), triangles)
    }

    fn validate(&self) -> Result<()> {
        let poly = LatticePolygon::new(&self.points)?;
        let mut directed = BTreeSet::new();
        for t in &self.triangles {
            for s in 0..3 {
                if !directed.insert((t[s], t[(s + 1) % 3])) {
                    return Err(Error::precondition("overlapping triangles"));
                }
            }
        }
        for &(a, b) in &directed {
            if !directed.contains(&(b, a)) {
                let (pa, pb) = (self.points[a], self.points[b]);
                let on_hull = poly.edges().any(|(u, v)| orient(u, v, pa) == 0 && orient(u, v, pb) == 0);
                if !on_hull {
                    return Err(Error::precondition("triangles leave a gap"));
                }
            }
        }
        let total: i64 = self.triangles.iter().map(|t| self.twice_area(t)).sum();
        if total != poly.twice_area() {
            return Err(Error::precondition("triangles do not tile the convex hull"));
        }
        Ok(())
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_points(&self, t: usize) -> [LatticePoint; 3] {
        let [i, j, k] = self.triangles[t];
        [self.points[i], self.points[j], self.points[k]]
    }

    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    pub fn polygon(&self) -> LatticePolygon {
        LatticePolygon::new(&self.points).expect("validated triangulation")
    }

    fn twice_area(&self, t: &[usize; 3]) -> i64 {
        orient(self.points[t[0]], self.points[t[1]], self.points[t[2]])
    }

    /// Sides of every edge, keyed by the undirected edge with sides taken
    /// relative to the direction `a -> b`.
    pub fn edge_sides(&self) -> BTreeMap<Edge, EdgeSides> {
        let mut out: BTreeMap<Edge, EdgeSides> = BTreeMap::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            for s in 0..3 {
                let (i, j) = (t[s], t[(s + 1) % 3]);
                let e = Edge::new(i, j);
                let entry = out.entry(e).or_insert(EdgeSides { left: None, right: None });
                // Counterclockwise triangles lie to the left of their directed edges.
                if i == e.a {
                    entry.left = Some(ti);
                } else {
                    entry.right = Some(ti);
                }
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edge_sides().into_keys().collect()
    }

    /// Edges shared by two triangles, sorted.
    pub fn interior_edges(&self) -> Vec<Edge> {
        self.edge_sides()
            .into_iter()
            .filter(|(_, s)| s.left.is_some() && s.right.is_some())
            .map(|(e, _)| e)
            .collect()
    }

    pub fn boundary_edges(&self) -> Vec<Edge> {
        self.edge_sides()
            .into_iter()
            .filter(|(_, s)| s.left.is_none() || s.right.is_none())
            .map(|(e, _)| e)
            .collect()
    }

    pub fn edge_points(&self, e: Edge) -> (LatticePoint, LatticePoint) {
        (self.points[e.a], self.points[e.b])
    }

    /// True iff every triangle has area 1/2 and every lattice point of the
    /// hull is a vertex.
    pub fn is_unimodular(&self) -> bool {
        self.triangles.iter().all(|t| self.twice_area(t) == 1)
            && self.polygon().all_lattice_points().len() == self.points.len()
    }

    /// Interior edges as point pairs, sorted; identifies the triangulation
    /// of a fixed point set.
    pub fn canonical_key(&self) -> Vec<(LatticePoint, LatticePoint)> {
        self.interior_edges().into_iter().map(|e| self.edge_points(e)).collect()
    }

    /// The triangulation as a subdivision whose cells are its triangles.
    pub fn as_subdivision(&self) -> Subdivision {
        let marked = (0..self.triangles.len()).map(|t| self.triangle_points(t).to_vec()).collect();
        Subdivision::from_marked(self.polygon(), marked).expect("triangles are two-dimensional")
    }

    /// Sub-triangulation made of the triangles with the given indices.
    pub fn subset(&self, keep: &[usize]) -> Result<Triangulation> {
        let tris: Vec<[LatticePoint; 3]> = keep.iter().map(|&t| self.triangle_points(t)).collect();
        Triangulation::from_point_triangles(&tris)
    }

    /// Number of triangles containing each point.
    pub fn triangles_at(&self, i: usize) -> Vec<usize> {
        (0..self.triangles.len()).filter(|&t| self.triangles[t].contains(&i)).collect()
    }
}

fn to_i128(v: &BigInt) -> Option<i128> {
    v.to_i128().filter(|x| x.abs() < (1i128 << 80))
}

/// Lower faces of the lifted point set `(x, y, z)`, as sets of indices.
fn lower_faces<T>(pts: &[LatticePoint], plane: impl Fn(usize, usize, usize, usize) -> T) -> Vec<Vec<usize>>
where
    T: PartialOrd + Zero,
{
    let n = pts.len();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let zero = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let o = orient(pts[i], pts[j], pts[k]);
                if o == 0 {
                    continue;
                }
                let (j2, k2) = if o > 0 { (j, k) } else { (k, j) };
                let mut on = Vec::new();
                let mut lower = true;
                for q in 0..n {
                    let s = plane(i, j2, k2, q);
                    if s < zero {
                        lower = false;
                        break;
                    }
                    if s == zero {
                        on.push(q);
                    }
                }
                if lower {
                    faces.insert(on);
                }
            }
        }
    }
    faces.into_iter().collect()
}

/// Regular subdivision induced by `w`: the projection of the lower faces of
/// the lifted lattice points.
pub fn induce(p: &LatticePolygon, w: &HeightFunction) -> Result<Subdivision> {
    let pts = p.all_lattice_points();
    let heights: Vec<Rat> = pts
        .iter()
        .map(|&q| {
            w.get(q)
                .cloned()
                .ok_or_else(|| Error::precondition(format!("height function missing point {q}")))
        })
        .collect::<Result<_>>()?;
    let ints = exact::to_integers(&heights);
    let small: Option<Vec<i128>> = ints.iter().map(to_i128).collect();
    // Sign of the lifted orientation of (i, j, k, q): positive when q is above
    // the plane through the counterclockwise triangle (i, j, k).
    let faces = match small {
        Some(z) => lower_faces(&pts, |i, j, k, q| {
            let (a, b, c) = (pts[j].sub(pts[i]), pts[k].sub(pts[i]), pts[q].sub(pts[i]));
            let (za, zb, zc) = (z[j] - z[i], z[k] - z[i], z[q] - z[i]);
            let (ax, ay, bx, by, cx, cy) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128, c.x as i128, c.y as i128);
            ax * (by * zc - zb * cy) - ay * (bx * zc - zb * cx) + za * (bx * cy - by * cx)
        }),
        None => lower_faces(&pts, |i, j, k, q| {
            let (a, b, c) = (pts[j].sub(pts[i]), pts[k].sub(pts[i]), pts[q].sub(pts[i]));
            let (za, zb, zc) = (&ints[j] - &ints[i], &ints[k] - &ints[i], &ints[q] - &ints[i]);
            let big = |v: i64| BigInt::from(v);
            big(a.x) * (big(b.y) * &zc - &zb * big(c.y)) - big(a.y) * (big(b.x) * &zc - &zb * big(c.x))
                + za * big(b.x * c.y - b.y * c.x)
        }),
    };
    let marked = faces
        .into_iter()
        .map(|f| f.into_iter().map(|i| pts[i]).collect())
        .collect();
    Subdivision::from_marked(p.clone(), marked)
}

/// The affine function `c + a x + b y` through three lifted points.
pub(crate) fn affine_through(pts: [LatticePoint; 3], z: [&Rat; 3]) -> (Rat, Rat, Rat) {
    let d = orient(pts[0], pts[1], pts[2]);
    assert!(d != 0, "affinely dependent points");
    let (u, v) = (pts[1].sub(pts[0]), pts[2].sub(pts[0]));
    let (dz1, dz2) = (z[1] - z[0], z[2] - z[0]);
    let r = |n: i64| Rat::from_integer(n.into());
    // a u.x + b u.y = dz1, a v.x + b v.y = dz2
    let det = r(d);
    let a = (&dz1 * r(v.y) - &dz2 * r(u.y)) / &det;
    let b = (&dz2 * r(u.x) - &dz1 * r(v.x)) / &det;
    let c = z[0] - &a * r(pts[0].x) - &b * r(pts[0].y);
    (c, a, b)
}

pub(crate) fn eval_affine(f: &(Rat, Rat, Rat), p: LatticePoint) -> Rat {
    &f.0 + &f.1 * Rat::from_integer(p.x.into()) + &f.2 * Rat::from_integer(p.y.into())
}

/// Three affinely independent points among `pts`, if any.
pub(crate) fn affine_basis(pts: &[LatticePoint]) -> Option<[LatticePoint; 3]> {
    match hull(pts).ok()? {
        InteriorHull::Polygon(p) => {
            let v = p.vertices();
            Some([v[0], v[1], v[2]])
        }
        _ => None,
    }
}

#[allow(dead_code)]
pub(crate) fn lattice_line_points(a: LatticePoint, b: LatticePoint) -> Vec<LatticePoint> {
    let d = b.sub(a);
    let g = d.lattice_length();
    let s = d.primitive();
    (0..=g).map(|k| pt(a.x + k * s.x, a.y + k * s.y)).collect()
}

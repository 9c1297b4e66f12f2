//! Dual tropical curves, the edge-length map `lambda`, the skeleton map
//! `kappa`, and skeletonization.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Rat};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::linalg::Matrix;
use crate::subdivision::{is_pruned, verify_witness, ConeWitness, Edge, Triangulation};

/// Row or column label of a [`LinearMap`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Point(LatticePoint),
    Edge(LatticePoint, LatticePoint),
    Skeleton(usize),
}

/// A rational matrix with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: Matrix,
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
}

impl LinearMap {
    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(self.cols, inner.rows, "incompatible labels");
        LinearMap {
            matrix: self.matrix.mul(&inner.matrix),
            rows: self.rows.clone(),
            cols: inner.cols.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedEdge {
    pub dual: Edge,
    /// Triangle on the left of `dual.a -> dual.b`.
    pub from: usize,
    /// Triangle on the right.
    pub to: usize,
    /// Primitive direction from `from` to `to`.
    pub direction: LatticePoint,
    pub length: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub dual: Edge,
    pub triangle: usize,
    pub direction: LatticePoint,
}

/// The tropical curve of a regular unimodular triangulation at given heights,
/// in the min convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve {
    pub triangulation: Triangulation,
    /// One vertex per triangle.
    pub vertices: Vec<(Rat, Rat)>,
    pub bounded_edges: Vec<BoundedEdge>,
    pub rays: Vec<Ray>,
}

/// Coefficients of the dual vertex of a triangle as linear forms in the
/// heights: the point where the three affine functions `w(p) + <p, x>` agree.
fn vertex_forms(t: &Triangulation, tri: usize) -> [Vec<Rat>; 2] {
    let n = t.points().len();
    let [i1, i2, i3] = t.triangles()[tri];
    let pts = t.points();
    let (u, v) = (pts[i2].sub(pts[i1]), pts[i3].sub(pts[i1]));
    // [u; v] x = (w1 - w2, w1 - w3)
    let det = rat(u.x * v.y - u.y * v.x);
    let mut fx = vec![Rat::zero(); n];
    let mut fy = vec![Rat::zero(); n];
    let r1 = [(i1, 1), (i2, -1)];
    let r2 = [(i1, 1), (i3, -1)];
    for &(i, c) in &r1 {
        fx[i] += rat(c * v.y) / &det;
        fy[i] += rat(-c * v.x) / &det;
    }
    for &(i, c) in &r2 {
        fx[i] += rat(-c * u.y) / &det;
        fy[i] += rat(c * u.x) / &det;
    }
    [fx, fy]
}

fn length_form(t: &Triangulation, e: Edge, left: usize, right: usize) -> Vec<Rat> {
    let (a, b) = t.edge_points(e);
    let mu = b.sub(a).primitive().rot90();
    let (l, r) = (vertex_forms(t, left), vertex_forms(t, right));
    let (k, m) = if mu.x != 0 { (0, mu.x) } else { (1, mu.y) };
    r[k].iter().zip(&l[k]).map(|(x, y)| (x - y) / rat(m)).collect()
}

/// The map from heights to lengths of the bounded edges, one row per interior
/// edge.
pub fn lambda_matrix(t: &Triangulation) -> LinearMap {
    let sides = t.edge_sides();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (e, s) in &sides {
        if let (Some(l), Some(r)) = (s.left, s.right) {
            rows.push(length_form(t, *e, l, r));
            let (a, b) = t.edge_points(*e);
            labels.push(Label::Edge(a, b));
        }
    }
    LinearMap {
        matrix: Matrix::from_rows(rows, t.points().len()),
        rows: labels,
        cols: t.points().iter().map(|&p| Label::Point(p)).collect(),
    }
}

/// The dual vertex of a triangle at the given heights, the same solve as
/// [`vertex_forms`] without building dense forms.
fn vertex_at(t: &Triangulation, tri: usize, w: &[Rat]) -> (Rat, Rat) {
    let [i1, i2, i3] = t.triangles()[tri];
    let pts = t.points();
    let (u, v) = (pts[i2].sub(pts[i1]), pts[i3].sub(pts[i1]));
    let det = rat(u.x * v.y - u.y * v.x);
    let (d2, d3) = (&w[i1] - &w[i2], &w[i1] - &w[i3]);
    let x = (&d2 * rat(v.y) - &d3 * rat(u.y)) / &det;
    let y = (&d3 * rat(u.x) - &d2 * rat(v.x)) / &det;
    (x, y)
}

pub fn dual_curve(t: &Triangulation, w: &ConeWitness) -> Result<TropicalCurve> {
    verify_witness(t, &w.heights)?;
    let heights: Vec<Rat> = t.points().iter().map(|&p| w.heights.at(p).clone()).collect();
    let vertices: Vec<(Rat, Rat)> = (0..t.triangles().len()).map(|tri| vertex_at(t, tri, &heights)).collect();
    let mut bounded_edges = Vec::new();
    let mut rays = Vec::new();
    for (e, s) in t.edge_sides() {
        let (a, b) = t.edge_points(e);
        let mu = b.sub(a).primitive().rot90();
        match (s.left, s.right) {
            (Some(l), Some(r)) => {
                let length = if mu.x != 0 {
                    (&vertices[r].0 - &vertices[l].0) / rat(mu.x)
                } else {
                    (&vertices[r].1 - &vertices[l].1) / rat(mu.y)
                };
                if !length.is_positive() {
                    return Err(Error::precondition("heights not in open secondary cone"));
                }
                bounded_edges.push(BoundedEdge { dual: e, from: l, to: r, direction: mu, length });
            }
            (Some(l), None) => rays.push(Ray { dual: e, triangle: l, direction: mu }),
            (None, Some(r)) => rays.push(Ray { dual: e, triangle: r, direction: pt_neg(mu) }),
            (None, None) => unreachable!("edge without triangles"),
        }
    }
    Ok(TropicalCurve { triangulation: t.clone(), vertices, bounded_edges, rays })
}

fn pt_neg(p: LatticePoint) -> LatticePoint {
    LatticePoint::new(-p.x, -p.y)
}

/// How bounded edges concatenate into skeleton edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonMap {
    /// Per skeleton edge, the indices of its constituent graph edges, sorted;
    /// chains are sorted.
    pub chains: Vec<Vec<usize>>,
    /// Endpoints (graph nodes) of each chain.
    pub ends: Vec<(usize, usize)>,
    /// Graph edges removed while pruning leaves.
    pub deleted: Vec<usize>,
}

/// Skeleton combinatorics of a graph on `nodes` with the given edges:
/// strip leaves repeatedly, then smooth 2-valent nodes.
pub fn skeleton_of_graph(nodes: usize, edges: &[(usize, usize)]) -> SkeletonMap {
    let mut alive = vec![true; edges.len()];
    let mut degree = vec![0usize; nodes];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, &(u, v)) in edges.iter().enumerate() {
        degree[u] += 1;
        degree[v] += 1;
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut stack: Vec<usize> = (0..nodes).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if degree[v] != 1 {
            continue;
        }
        let e = *incident[v].iter().find(|&&e| alive[e]).unwrap();
        alive[e] = false;
        let (a, b) = edges[e];
        let w = if a == v { b } else { a };
        degree[v] -= 1;
        degree[w] -= 1;
        if degree[w] == 1 {
            stack.push(w);
        }
    }
    let deleted: Vec<usize> = (0..edges.len()).filter(|&e| !alive[e]).collect();
    let other = |e: usize, v: usize| if edges[e].0 == v { edges[e].1 } else { edges[e].0 };
    let mut used = vec![false; edges.len()];
    let mut chains = Vec::new();
    let mut ends = Vec::new();
    let branch: Vec<usize> = (0..nodes).filter(|&v| degree[v] >= 3).collect();
    let starts: Vec<usize> = if branch.is_empty() {
        (0..nodes).filter(|&v| degree[v] == 2).take(1).collect()
    } else {
        branch
    };
    for &s in &starts {
        for &e0 in &incident[s] {
            if !alive[e0] || used[e0] {
                continue;
            }
            let mut chain = vec![e0];
            used[e0] = true;
            let (mut prev_edge, mut v) = (e0, other(e0, s));
            while degree[v] == 2 && v != s {
                let next = *incident[v].iter().find(|&&e| alive[e] && e != prev_edge).unwrap();
                if used[next] {
                    break;
                }
                used[next] = true;
                chain.push(next);
                prev_edge = next;
                v = other(next, v);
            }
            chain.sort();
            chains.push((chain, (s.min(v), s.max(v))));
        }
    }
    chains.sort();
    let (chains, ends_sorted): (Vec<_>, Vec<_>) = chains.into_iter().unzip();
    ends.extend(ends_sorted);
    SkeletonMap { chains, ends, deleted }
}

/// Skeleton combinatorics of the curve dual to `t`, with graph edges indexed
/// like `interior_edges`.
pub fn skeleton_map(t: &Triangulation) -> SkeletonMap {
    let edges: Vec<(usize, usize)> = t
        .edge_sides()
        .into_values()
        .filter_map(|s| Some((s.left?, s.right?)))
        .collect();
    skeleton_of_graph(t.triangles().len(), &edges)
}

/// The 0/1 map from bounded edge lengths to skeleton edge lengths, for a
/// pruned triangulation of genus at least 2.
pub fn kappa_matrix(t: &Triangulation) -> Result<LinearMap> {
    if !is_pruned(t)? {
        return Err(Error::precondition("apply prune first"));
    }
    let m = skeleton_map(t);
    if !m.deleted.is_empty() {
        return Err(Error::Internal("pruned triangulation lost bounded edges in skeletonization".into()));
    }
    Ok(kappa_from_map(t, &m))
}

/// Skeleton length map from explicit combinatorics; deleted edges get zero
/// columns.
pub fn kappa_from_map(t: &Triangulation, m: &SkeletonMap) -> LinearMap {
    let interior = t.interior_edges();
    let mut matrix = Matrix::zeros(m.chains.len(), interior.len());
    for (i, chain) in m.chains.iter().enumerate() {
        for &e in chain {
            matrix[(i, e)] = rat(1);
        }
    }
    LinearMap {
        matrix,
        rows: (0..m.chains.len()).map(Label::Skeleton).collect(),
        cols: interior
            .iter()
            .map(|&e| {
                let (a, b) = t.edge_points(e);
                Label::Edge(a, b)
            })
            .collect(),
    }
}

/// An abstract metric graph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize, Rat)>,
    pub genus: usize,
}

impl MetricGraph {
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b, _)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_trivalent(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.valence(v) == 3)
    }
}

/// Removes rays, strips leaves and smooths 2-valent vertices.
pub fn skeletonize(c: &TropicalCurve) -> Result<MetricGraph> {
    let graph: Vec<(usize, usize)> = c.bounded_edges.iter().map(|e| (e.from, e.to)).collect();
    let nodes = c.vertices.len();
    let genus = graph.len() + 1 - nodes;
    if genus < 2 {
        return Err(Error::precondition("skeletonization requires genus at least 2"));
    }
    let m = skeleton_of_graph(nodes, &graph);
    let mut names: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &m.ends {
        for v in [a, b] {
            let k = names.len();
            names.entry(v).or_insert(k);
        }
    }
    let mut vertices: Vec<(usize, usize)> = names.iter().map(|(&v, &k)| (k, v)).collect();
    vertices.sort();
    let edges = m
        .chains
        .iter()
        .zip(&m.ends)
        .map(|(chain, &(a, b))| {
            let len: Rat = chain.iter().map(|&e| c.bounded_edges[e].length.clone()).sum();
            (names[&a], names[&b], len)
        })
        .collect();
    Ok(MetricGraph { vertices: vertices.into_iter().map(|(_, v)| v).collect(), edges, genus })
}

/// Sum of `length * direction` around the loop of the curve that encloses
/// the region of the given interior lattice point; zero for a genuine curve.
pub fn cycle_closure_residual(c: &TropicalCurve, p: LatticePoint) -> Result<(Rat, Rat)> {
    let t = &c.triangulation;
    let poly: LatticePolygon = t.polygon();
    if !poly.strictly_contains(p) {
        return Err(Error::precondition(format!("{p} is not an interior lattice point")));
    }
    let i = t
        .index_of(p)
        .ok_or_else(|| Error::precondition(format!("{p} is not a vertex")))?;
    let (mut sx, mut sy) = (Rat::zero(), Rat::zero());
    for e in &c.bounded_edges {
        if e.dual.a != i && e.dual.b != i {
            continue;
        }
        let q = t.points()[if e.dual.a == i { e.dual.b } else { e.dual.a }];
        let mu = q.sub(p).primitive().rot90();
        sx += &e.length * rat(mu.x);
        sy += &e.length * rat(mu.y);
    }
    Ok((sx, sy))
}

/// Interior lattice points of the triangulated polygon.
pub fn interior_points(t: &Triangulation) -> BTreeSet<LatticePoint> {
    t.polygon().lattice_points().interior.into_iter().collect()
}

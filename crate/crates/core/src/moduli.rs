//! Radial edges, dimension formulas for moduli of tropical curves with a
//! fixed Newton polygon, their rank oracles, and the algebraic-side counts.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{
    classify, column_vectors, interior_hull, is_maximal, maximal_model, orient, HalfPlane, InteriorHull,
    LatticePoint, LatticePolygon, PolygonClass,
};
use crate::subdivision::{for_each_unimodular, prune, regularity_witness, Triangulation};
use crate::tropical::{kappa_matrix, lambda_matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointType {
    /// One radial edge.
    Type1,
    /// Several radial edges with collinear far endpoints.
    Type2,
    /// Several radial edges with non-collinear far endpoints.
    Type3,
}

/// Radial edges of a pruned triangulation and the induced typing of the
/// boundary lattice points of the interior polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialReport {
    /// `(point on the interior polygon, point on the outer boundary)`, sorted.
    pub radial_edges: Vec<(LatticePoint, LatticePoint)>,
    pub point_types: BTreeMap<LatticePoint, PointType>,
    pub b1: usize,
    pub b2: usize,
    pub b3: usize,
}

impl RadialReport {
    /// `b2 + 2 b3`.
    pub fn score(&self) -> usize {
        self.b2 + 2 * self.b3
    }
}

fn interior_polygon(p: &LatticePolygon) -> Result<LatticePolygon> {
    match interior_hull(p) {
        InteriorHull::Polygon(q) => Ok(q),
        _ => Err(Error::precondition("operation requires a nonhyperelliptic polygon")),
    }
}

/// Classifies radial edges after pruning `t` (pruning does not change the
/// moduli of the triangulation).
pub fn radial_classification(t: &Triangulation) -> Result<RadialReport> {
    let inner = interior_polygon(&t.polygon())?;
    let t = prune(t)?;
    let outer = t.polygon();
    let facets = inner.half_planes();
    let on_inner: Vec<LatticePoint> = inner.all_lattice_points().into_iter().filter(|&q| inner.on_boundary(q)).collect();
    let leaves = |q: LatticePoint, b: LatticePoint| {
        facets.iter().any(|h: &HalfPlane| h.excess(q) == 0 && h.eval(b) > h.eval(q))
    };
    let mut fans: BTreeMap<LatticePoint, Vec<LatticePoint>> = on_inner.iter().map(|&q| (q, Vec::new())).collect();
    let mut radial_edges = Vec::new();
    for e in t.edges() {
        let (a, b) = t.edge_points(e);
        for (q, far) in [(a, b), (b, a)] {
            if inner.on_boundary(q) && outer.on_boundary(far) && leaves(q, far) {
                radial_edges.push((q, far));
                fans.get_mut(&q).expect("boundary point").push(far);
            }
        }
    }
    radial_edges.sort();
    let mut point_types = BTreeMap::new();
    let (mut b1, mut b2, mut b3) = (0, 0, 0);
    for (q, ends) in fans {
        let ty = match ends.len() {
            0 => return Err(Error::Internal(format!("no radial edge at {q}"))),
            1 => {
                b1 += 1;
                PointType::Type1
            }
            _ => {
                let collinear = ends.iter().all(|&x| orient(ends[0], ends[1], x) == 0);
                if collinear {
                    b2 += 1;
                    PointType::Type2
                } else {
                    b3 += 1;
                    PointType::Type3
                }
            }
        };
        point_types.insert(q, ty);
    }
    Ok(RadialReport { radial_edges, point_types, b1, b2, b3 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Formula,
    RankOracle,
    ClosedForm,
    Exhaustive,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::RankOracle => "rank_oracle",
            Method::ClosedForm => "closed_form",
            Method::Exhaustive => "exhaustive",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Method::Formula, Method::RankOracle, Method::ClosedForm, Method::Exhaustive]
            .into_iter()
            .find(|m| m.name() == s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A dimension together with the quantities it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub value: i64,
    pub method: Method,
    pub witnesses: BTreeMap<String, i64>,
    /// Set when the value is only a certified lower bound.
    pub lower_bound: bool,
}

impl DimensionReport {
    fn new(value: i64, method: Method, witnesses: &[(&str, i64)]) -> Self {
        DimensionReport {
            value,
            method,
            witnesses: witnesses.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lower_bound: false,
        }
    }

    pub fn witness(&self, key: &str) -> Option<i64> {
        self.witnesses.get(key).copied()
    }
}

/// `3g - 3 - 2 g1 - 2 b1 - b2`.
pub fn dim_from_counts(g: i64, g1: i64, b1: i64, b2: i64) -> i64 {
    3 * g - 3 - 2 * g1 - 2 * b1 - b2
}

/// `3g - 3 - 2 g1 - b`, the value for honeycomb triangulations with `b`
/// boundary points of the interior polygon that are not vertices.
pub fn honeycomb_dim(g: i64, g1: i64, b: i64) -> i64 {
    dim_from_counts(g, g1, 0, b)
}

/// `|lattice points| - c - 3`.
pub fn algebraic_dim_from_counts(points: i64, columns: i64) -> i64 {
    points - columns - 3
}

fn require_genus(p: &LatticePolygon) -> Result<usize> {
    let g = p.genus();
    if g < 2 {
        return Err(Error::precondition("dimension formulas require genus at least 2"));
    }
    Ok(g)
}

/// Dimension of the moduli of a triangulation from its radial counts.
pub fn dim_mt_formula(t: &Triangulation) -> Result<DimensionReport> {
    let p = t.polygon();
    let g = require_genus(&p)? as i64;
    let inner = interior_polygon(&p)?;
    let g1 = inner.genus() as i64;
    let r = radial_classification(t)?;
    let (b1, b2, b3) = (r.b1 as i64, r.b2 as i64, r.b3 as i64);
    Ok(DimensionReport::new(
        dim_from_counts(g, g1, b1, b2),
        Method::Formula,
        &[("g", g), ("g1", g1), ("b1", b1), ("b2", b2), ("b3", b3)],
    ))
}

/// Rank of the composite map from heights to skeleton lengths, cross-checked
/// by restricting the skeleton map to a basis of the image of the edge-length map.
pub fn dim_mt_oracle(t: &Triangulation) -> Result<DimensionReport> {
    let g = require_genus(&t.polygon())? as i64;
    if !t.is_unimodular() {
        return Err(Error::precondition("rank oracle requires a unimodular triangulation"));
    }
    let t = prune(t)?;
    let kappa = kappa_matrix(&t)?;
    let lambda = lambda_matrix(&t);
    let rank = kappa.compose(&lambda).rank();
    let basis = lambda.matrix.column_basis();
    let restricted = kappa.matrix.mul(&lambda.matrix.select_columns(&basis)).rank();
    if rank != restricted {
        return Err(Error::Internal(format!(
            "composite rank {rank} differs from restricted rank {restricted}"
        )));
    }
    Ok(DimensionReport::new(
        rank as i64,
        Method::RankOracle,
        &[("g", g), ("edges", lambda.rows.len() as i64), ("lambda_rank", basis.len() as i64)],
    ))
}

/// Formula and oracle together; they must agree when both apply.
pub fn dim_mt(t: &Triangulation) -> Result<DimensionReport> {
    let oracle = dim_mt_oracle(t)?;
    if classify(&t.polygon()) != PolygonClass::Nonhyperelliptic {
        return Ok(oracle);
    }
    let formula = dim_mt_formula(t)?;
    if formula.value != oracle.value {
        return Err(Error::Mismatch { formula: formula.value, oracle: oracle.value });
    }
    Ok(formula)
}

/// Formula value for a triangulation: radial counts when nonhyperelliptic,
/// otherwise the rank oracle.
fn cheap_dim(t: &Triangulation) -> Result<i64> {
    if classify(&t.polygon()) == PolygonClass::Nonhyperelliptic {
        Ok(dim_mt_formula(t)?.value)
    } else {
        Ok(dim_mt_oracle(t)?.value)
    }
}

/// Maximum moduli dimension over regular unimodular triangulations, by
/// enumeration. Candidates are certified for regularity in decreasing order
/// of dimension; the winner is confirmed by the rank oracle. With a cap the
/// result is a lower bound.
pub fn dim_mdelta_exhaustive(p: &LatticePolygon, cap: Option<usize>) -> Result<DimensionReport> {
    require_genus(p)?;
    let mut all = Vec::new();
    let count = for_each_unimodular(p, cap, |t| {
        all.push(t);
        true
    })?;
    let mut scored: Vec<(i64, Triangulation)> = all
        .into_par_iter()
        .map(|t| cheap_dim(&t).map(|d| (d, t)))
        .collect::<Result<_>>()?;
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let unfiltered = scored.first().map_or(0, |s| s.0);
    let mut checked = 0i64;
    for (d, t) in &scored {
        checked += 1;
        match regularity_witness(t) {
            Ok(_) => {
                let oracle = dim_mt_oracle(t)?.value;
                if oracle != *d {
                    return Err(Error::Mismatch { formula: *d, oracle });
                }
                let mut r = DimensionReport::new(
                    *d,
                    Method::Exhaustive,
                    &[
                        ("triangulations", count as i64),
                        ("regularity_checks", checked),
                        ("unfiltered_max", unfiltered),
                    ],
                );
                r.lower_bound = cap.is_some_and(|c| count >= c);
                return Ok(r);
            }
            Err(Error::NotRegular) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal("no regular unimodular triangulation found".into()))
}

/// The support pattern of the generic matrix pairing deficiency points with
/// column vectors of the maximal model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JPattern {
    pub rows: Vec<LatticePoint>,
    pub cols: Vec<LatticePoint>,
    pub support: Vec<Vec<bool>>,
}

/// Pattern for a nonmaximal nonhyperelliptic polygon: rows are the lattice
/// points of the maximal model missing from `p`.
pub fn j_pattern(p: &LatticePolygon) -> Result<JPattern> {
    let model = maximal_model(p)?;
    let rows: Vec<LatticePoint> = model
        .all_lattice_points()
        .into_iter()
        .filter(|&q| !p.contains(q))
        .collect();
    let cols: Vec<LatticePoint> = column_vectors(&model).into_iter().map(|c| c.v).collect();
    let support = rows
        .iter()
        .map(|&a| cols.iter().map(|&c| p.contains(a.sub(c))).collect())
        .collect();
    Ok(JPattern { rows, cols, support })
}

/// Term rank of the pattern: a maximum bipartite matching.
pub fn generic_rank(j: &JPattern) -> usize {
    fn augment(i: usize, j: &JPattern, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for c in 0..j.cols.len() {
            if j.support[i][c] && !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|o| augment(o, j, seen, owner)) {
                    owner[c] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; j.cols.len()];
    (0..j.rows.len())
        .filter(|&i| augment(i, j, &mut vec![false; j.cols.len()], &mut owner))
        .count()
}

/// Closed form for nonhyperelliptic polygons: `g - 3 + r - c` when maximal,
/// otherwise the maximal model's value minus the deficiency plus the rank of
/// the deficiency pattern.
pub fn dim_mdelta_closed(p: &LatticePolygon) -> Result<DimensionReport> {
    let g = require_genus(p)? as i64;
    interior_polygon(p)?;
    if is_maximal(p)? {
        let r = p.boundary_count() as i64;
        let c = column_vectors(p).len() as i64;
        return Ok(DimensionReport::new(
            g - 3 + r - c,
            Method::ClosedForm,
            &[("g", g), ("r", r), ("c", c)],
        ));
    }
    let model = dim_mdelta_closed(&maximal_model(p)?)?;
    let j = j_pattern(p)?;
    let a = j.rows.len() as i64;
    let rank = generic_rank(&j) as i64;
    Ok(DimensionReport::new(
        model.value - a + rank,
        Method::ClosedForm,
        &[("g", g), ("maximal_model", model.value), ("deficiency", a), ("rank_j", rank)],
    ))
}

/// `|lattice points| - c - 3` for a maximal nonhyperelliptic polygon.
pub fn algebraic_dim(p: &LatticePolygon) -> Result<DimensionReport> {
    interior_polygon(p)?;
    if !is_maximal(p)? {
        return Err(Error::precondition("algebraic dimension formula requires a maximal polygon"));
    }
    let n = p.all_lattice_points().len() as i64;
    let c = column_vectors(p).len() as i64;
    Ok(DimensionReport::new(
        algebraic_dim_from_counts(n, c),
        Method::ClosedForm,
        &[("points", n), ("c", c)],
    ))
}

/// Dimension of the moduli of all planar tropical curves of genus `g`.
pub fn d_planar(g: u64) -> Result<u64> {
    match g {
        0 | 1 => Err(Error::precondition("genus must be at least 2")),
        2 => Ok(3),
        3 => Ok(6),
        7 => Ok(16),
        _ => Ok(2 * g + 1),
    }
}

fn polygon(c: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::from_coords(c).expect("listed polygons are two-dimensional")
}

/// The maximal polygons of genus `g >= 4` whose moduli have dimension
/// `2g + 1`, up to equivalence.
pub fn theorem_2g1_polygons(g: u64) -> Result<Vec<LatticePolygon>> {
    if g < 4 {
        return Err(Error::precondition("list is defined for genus at least 4"));
    }
    let g = g as i64;
    let mut out = Vec::new();
    if g % 2 == 0 {
        let w = (g + 2) / 2;
        out.push(polygon(&[(0, 0), (0, 3), (w, 0), (w, 3)]));
    } else {
        out.push(polygon(&[(0, 0), ((g + 5) / 2, 0), ((g - 1) / 2, 3), (0, 3)]));
    }
    match g {
        6 => out.push(polygon(&[(0, 0), (0, 2), (2, 0), (4, 2), (2, 4)])),
        7 => out.push(polygon(&[(0, 0), (0, 2), (4, 0), (4, 2), (2, 4)])),
        8 => out.push(polygon(&[(0, 0), (0, 4), (4, 0), (4, 2), (2, 4)])),
        10 => out.push(polygon(&[(0, 0), (0, 2), (3, 0), (5, 2), (2, 4), (5, 4)])),
        _ => {}
    }
    Ok(out)
}

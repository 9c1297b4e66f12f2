//! Maximal hyperelliptic polygons and the strip triangulation whose skeleton
//! is a chain of loops.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Rat};
use crate::lattice::{classify, pt, LatticePoint, LatticePolygon, PolygonClass};
use crate::linalg::Matrix;
use crate::lp::{find_feasible, Constraint, Relation};
use crate::moduli::{dim_mt_oracle, DimensionReport, Method};
use crate::subdivision::{fold_forms, verify_witness, ConeWitness, HeightFunction, Triangulation};
use crate::tropical::{lambda_matrix, TropicalCurve};

fn require_genus(g: u64) -> Result<i64> {
    if g < 2 {
        return Err(Error::precondition("hyperelliptic constructions require genus at least 2"));
    }
    Ok(g as i64)
}

/// `conv((0,0),(0,2),(g+k,0),(g+2-k,2))` for `k = 1..=g+2`.
pub fn maximal_hyperelliptic(g: u64) -> Result<Vec<LatticePolygon>> {
    let g = require_genus(g)?;
    (1..=g + 2)
        .map(|k| LatticePolygon::from_coords(&[(0, 0), (0, 2), (g + k, 0), (g + 2 - k, 2)]))
        .collect()
}

/// The strip `conv((0,0),(0,2),(g+1,0),(g+1,1))` with its fan-and-zig-zag
/// triangulation.
pub fn strip_polygon(g: u64) -> Result<(LatticePolygon, Triangulation)> {
    let g = require_genus(g)?;
    let p = LatticePolygon::from_coords(&[(0, 0), (0, 2), (g + 1, 0), (g + 1, 1)])?;
    let mut tris = Vec::new();
    for j in 0..=g {
        tris.push([pt(0, 2), pt(j, 1), pt(j + 1, 1)]);
        tris.push([pt(j, 0), pt(j + 1, 1), pt(j, 1)]);
        tris.push([pt(j, 0), pt(j + 1, 0), pt(j + 1, 1)]);
    }
    Ok((p, Triangulation::from_point_triangles(&tris)?))
}

/// Whether no lattice point can be added without changing the interior
/// lattice points.
pub fn is_maximal_hyperelliptic(p: &LatticePolygon) -> bool {
    if classify(p) != PolygonClass::Hyperelliptic {
        return false;
    }
    let g = p.genus();
    let (lo, hi) = p.bbox();
    let pad = (hi.x - lo.x).max(hi.y - lo.y) + 1;
    for x in lo.x - pad..=hi.x + pad {
        for y in lo.y - pad..=hi.y + pad {
            let q = pt(x, y);
            if p.contains(q) {
                continue;
            }
            let mut pts = p.vertices().to_vec();
            pts.push(q);
            let bigger = LatticePolygon::new(&pts).expect("superset of a polygon");
            if bigger.genus() == g {
                return false;
            }
        }
    }
    true
}

/// `2g - 1` for maximal hyperelliptic polygons.
pub fn hyperelliptic_dim(p: &LatticePolygon) -> Result<DimensionReport> {
    if classify(p) != PolygonClass::Hyperelliptic {
        return Err(Error::precondition("polygon is not hyperelliptic"));
    }
    if !is_maximal_hyperelliptic(p) {
        return Err(Error::NonmaximalHyperelliptic);
    }
    let g = p.genus() as i64;
    Ok(DimensionReport {
        value: 2 * g - 1,
        method: Method::ClosedForm,
        witnesses: [("g".to_string(), g)].into_iter().collect(),
        lower_bound: false,
    })
}

/// Rank oracle on the strip triangulation.
pub fn strip_dimension(g: u64) -> Result<DimensionReport> {
    let (_, t) = strip_polygon(g)?;
    dim_mt_oracle(&t)
}

/// Skeleton lengths of the chain of loops, swept by increasing `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLengths {
    pub l_start: Rat,
    pub l_end: Rat,
    /// `h_1, ..., h_{g-1}`: edges shared by consecutive loops.
    pub h: Vec<Rat>,
    /// `u_2, ..., u_{g-1}`: upper arcs of the middle loops.
    pub u: Vec<Rat>,
    /// `w_2, ..., w_{g-1}`: lower arcs of the middle loops.
    pub w: Vec<Rat>,
}

impl ChainLengths {
    pub fn genus(&self) -> usize {
        self.h.len() + 1
    }

    /// Coordinates in the order `l_start, h, u, w, l_end`.
    pub fn to_vec(&self) -> Vec<Rat> {
        let mut v = vec![self.l_start.clone()];
        v.extend(self.h.iter().cloned());
        v.extend(self.u.iter().cloned());
        v.extend(self.w.iter().cloned());
        v.push(self.l_end.clone());
        v
    }

    pub fn from_vec(g: usize, v: &[Rat]) -> Self {
        assert_eq!(v.len(), 3 * g - 3);
        let m = g - 2;
        ChainLengths {
            l_start: v[0].clone(),
            h: v[1..g].to_vec(),
            u: v[g..g + m].to_vec(),
            w: v[g + m..g + 2 * m].to_vec(),
            l_end: v[3 * g - 4].clone(),
        }
    }

    /// The same graph traversed from the other end.
    pub fn reversed(&self) -> Self {
        let rev = |v: &[Rat]| v.iter().rev().cloned().collect::<Vec<_>>();
        ChainLengths {
            l_start: self.l_end.clone(),
            l_end: self.l_start.clone(),
            h: rev(&self.h),
            u: rev(&self.u),
            w: rev(&self.w),
        }
    }
}

/// Triangulation edges (as point pairs) whose dual lengths sum to each chain
/// coordinate, in [`ChainLengths::to_vec`] order.
pub fn chain_label_edges(g: u64) -> Result<Vec<Vec<(LatticePoint, LatticePoint)>>> {
    let g = require_genus(g)?;
    let (_, t) = strip_polygon(g as u64)?;
    let at = |q: LatticePoint, skip: LatticePoint| -> Vec<(LatticePoint, LatticePoint)> {
        t.interior_edges()
            .into_iter()
            .map(|e| t.edge_points(e))
            .filter(|&(a, b)| (a == q || b == q) && a != skip && b != skip)
            .collect()
    };
    let e = |a: LatticePoint, b: LatticePoint| if a < b { (a, b) } else { (b, a) };
    let mut out = vec![at(pt(1, 1), pt(2, 1))];
    for j in 1..g {
        out.push(vec![e(pt(j, 1), pt(j + 1, 1))]);
    }
    for j in 2..g {
        out.push(vec![e(pt(0, 2), pt(j, 1))]);
    }
    for j in 2..g {
        out.push(vec![e(pt(j - 1, 0), pt(j, 1)), e(pt(j, 0), pt(j, 1))]);
    }
    out.push(at(pt(g, 1), pt(g - 1, 1)));
    Ok(out)
}

/// Chain coordinates as linear forms in the heights of the strip points.
fn chain_forms(g: u64) -> Result<(Triangulation, Vec<Vec<Rat>>)> {
    let (_, t) = strip_polygon(g)?;
    let lambda = lambda_matrix(&t);
    let interior: Vec<(LatticePoint, LatticePoint)> =
        t.interior_edges().into_iter().map(|e| t.edge_points(e)).collect();
    let n = t.points().len();
    let forms = chain_label_edges(g)?
        .into_iter()
        .map(|edges| {
            let mut f = vec![Rat::zero(); n];
            for e in edges {
                let row = interior.iter().position(|&x| x == e).expect("label edge is interior");
                for (k, v) in lambda.matrix.row(row).iter().enumerate() {
                    f[k] += v;
                }
            }
            f
        })
        .collect();
    Ok((t, forms))
}

/// Chain coordinates of a curve dual to the strip triangulation of genus `g`.
pub fn chain_lengths(c: &TropicalCurve, g: u64) -> Result<ChainLengths> {
    let labels = chain_label_edges(g)?;
    let t = &c.triangulation;
    let lookup = |e: (LatticePoint, LatticePoint)| -> Result<Rat> {
        c.bounded_edges
            .iter()
            .find(|b| t.edge_points(b.dual) == e)
            .map(|b| b.length.clone())
            .ok_or_else(|| Error::precondition("curve is not dual to the strip triangulation"))
    };
    let v: Vec<Rat> = labels
        .into_iter()
        .map(|edges| edges.into_iter().map(lookup).sum::<Result<Rat>>())
        .collect::<Result<_>>()?;
    Ok(ChainLengths::from_vec(g as usize, &v))
}

fn satisfies(c: &ChainLengths) -> bool {
    let g = c.genus();
    let h = |j: usize| &c.h[j - 1];
    let u = |j: usize| &c.u[j - 2];
    let w = |j: usize| &c.w[j - 2];
    let equal = (2..g).all(|j| u(j) == w(j));
    let ends = h(1) <= &c.l_start && c.l_start <= h(1) * rat(2) && h(g - 1) <= &c.l_end;
    let steps = (2..g).all(|j| {
        let lo = h(j - 1) + u(j) * rat(j as i64);
        let hi = h(j - 1) + u(j) * rat(j as i64 + 1);
        &lo <= h(j) && h(j) <= &hi
    });
    equal && ends && steps
}

/// Membership in the closure of the moduli of the strip triangulation, up to
/// reversing the chain:
///
/// - `u_j = w_j`;
/// - `h_1 <= l_start <= 2 h_1` and `h_{g-1} <= l_end`;
/// - `h_{j-1} + j u_j <= h_j <= h_{j-1} + (j+1) u_j` for `2 <= j <= g-1`.
pub fn chain_membership(c: &ChainLengths, g: u64) -> Result<bool> {
    let g = require_genus(g)? as usize;
    if c.h.len() != g - 1 || c.u.len() != g - 2 || c.w.len() != g - 2 {
        return Err(Error::precondition("chain lengths do not match the genus"));
    }
    if c.to_vec().iter().any(|x| x.is_negative()) {
        return Err(Error::precondition("chain lengths must be nonnegative"));
    }
    Ok(satisfies(c) || satisfies(&c.reversed()))
}

/// The equalities `u_j - w_j = 0` as rows over the chain coordinates.
pub fn chain_equality_matrix(g: u64) -> Result<Matrix> {
    let g = require_genus(g)? as usize;
    let m = g - 2;
    let rows = (0..m)
        .map(|i| {
            let mut r = vec![Rat::zero(); 3 * g - 3];
            r[g + i] = rat(1);
            r[g + m + i] = rat(-1);
            r
        })
        .collect();
    Ok(Matrix::from_rows(rows, 3 * g - 3))
}

/// Heights on the strip whose dual curve has the given chain lengths, found
/// by exact LP with every fold at least a shrinking margin.
pub fn realize_chain(c: &ChainLengths, g: u64) -> Result<ConeWitness> {
    let (t, forms) = chain_forms(g)?;
    let target = c.to_vec();
    let n = t.points().len();
    let folds = fold_forms(&t);
    let gauge = t.triangles()[0];
    let smallest = target.iter().filter(|x| x.is_positive()).min().cloned().unwrap_or_else(|| rat(1));
    let mut margin = smallest / rat(4);
    for _ in 0..48 {
        let mut cons: Vec<Constraint> = forms
            .iter()
            .zip(&target)
            .map(|(f, v)| Constraint::new(f.clone(), Relation::Equal, v.clone()))
            .collect();
        for f in &folds {
            let mut row = vec![Rat::zero(); n];
            for &(i, k) in &f.coeffs {
                row[i] += rat(k);
            }
            cons.push(Constraint::new(row, Relation::AtLeast, margin.clone()));
        }
        for &i in &gauge {
            let mut row = vec![Rat::zero(); n];
            row[i] = rat(1);
            cons.push(Constraint::new(row, Relation::Equal, Rat::zero()));
        }
        if let Some(x) = find_feasible(n, &cons) {
            let heights = HeightFunction::new(t.points().iter().copied().zip(x).collect());
            return verify_witness(&t, &heights);
        }
        margin /= rat(2);
    }
    Err(Error::precondition("chain lengths are not realized by the strip triangulation"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_polygons() {
        assert_eq!(maximal_hyperelliptic(3).unwrap().len(), 5);
        assert_eq!(
            maximal_hyperelliptic(3).unwrap()[0],
            LatticePolygon::from_coords(&[(0, 0), (0, 2), (4, 0), (4, 2)]).unwrap()
        );
        for g in 2..=5 {
            for p in maximal_hyperelliptic(g).unwrap() {
                assert_eq!(p.genus() as u64, g);
                assert!(is_maximal_hyperelliptic(&p));
            }
        }
        assert!(maximal_hyperelliptic(1).is_err());
    }

    #[test]
    fn strip_is_nonmaximal() {
        let (p, t) = strip_polygon(3).unwrap();
        assert_eq!(p.lattice_points().interior, vec![pt(1, 1), pt(2, 1), pt(3, 1)]);
        assert!(t.is_unimodular());
        assert_eq!(t.triangles().len(), 12);
        assert!(!is_maximal_hyperelliptic(&p));
        assert_eq!(hyperelliptic_dim(&p).unwrap_err(), Error::NonmaximalHyperelliptic);
    }

    #[test]
    fn strip_dimension_is_two_g_minus_one() {
        assert_eq!(strip_dimension(3).unwrap().value, 5);
    }

    #[test]
    fn closure_boundary_point() {
        let c = ChainLengths {
            l_start: rat(1),
            l_end: rat(1),
            h: vec![rat(1), rat(1)],
            u: vec![rat(0)],
            w: vec![rat(0)],
        };
        assert!(chain_membership(&c, 3).unwrap());
        let mut bad = c.clone();
        bad.u = vec![rat(1)];
        assert!(!chain_membership(&bad, 3).unwrap());
        bad.u = vec![rat(-1)];
        assert!(chain_membership(&bad, 3).is_err());
    }

    #[test]
    fn equality_rank() {
        for g in 2..=8 {
            assert_eq!(chain_equality_matrix(g).unwrap().rank() as u64, g - 2);
        }
    }
}

//! Regularity: fold inequalities, exact witnesses and regular refinement.

use num_traits::{One, Zero};

use super::{affine_basis, affine_through, eval_affine, induce, Edge, HeightFunction, Subdivision, Triangulation};
use crate::error::{Error, Result};
use crate::exact::{frac, rat, Rat};
use crate::lattice::{orient, LatticePoint};
use crate::linalg::Matrix;
use crate::lp::{find_feasible, Constraint, Relation};

/// The fold inequality across one interior edge `a -> b` with apex `c` on the
/// left and `d` on the right: the 4x4 determinant with rows `1, x, y, w` on
/// the columns `c, a, b, d` must be positive. `coeffs` expresses it as a
/// linear form in the heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub edge: Edge,
    pub left_apex: usize,
    pub right_apex: usize,
    pub coeffs: [(usize, i64); 4],
}

impl Fold {
    pub fn eval(&self, heights: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .map(|&(i, c)| &heights[i] * Rat::from_integer(c.into()))
            .sum()
    }
}

/// Heights together with the value of every fold determinant, in
/// `interior_edges` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeWitness {
    pub heights: HeightFunction,
    pub margins: Vec<Rat>,
}

fn third(t: &[usize; 3], e: Edge) -> usize {
    *t.iter().find(|&&v| v != e.a && v != e.b).unwrap()
}

/// One fold per interior edge, in `interior_edges` order.
pub fn fold_forms(t: &Triangulation) -> Vec<Fold> {
    let pts = t.points();
    t.edge_sides()
        .into_iter()
        .filter_map(|(e, s)| {
            let (l, r) = (s.left?, s.right?);
            let c = third(&t.triangles()[l], e);
            let d = third(&t.triangles()[r], e);
            let cols = [c, e.a, e.b, d];
            let mut coeffs = [(0usize, 0i64); 4];
            for j in 0..4 {
                let others: Vec<LatticePoint> = (0..4).filter(|&k| k != j).map(|k| pts[cols[k]]).collect();
                let sign = if (3 + j) % 2 == 0 { 1 } else { -1 };
                coeffs[j] = (cols[j], sign * orient(others[0], others[1], others[2]));
            }
            Some(Fold { edge: e, left_apex: c, right_apex: d, coeffs })
        })
        .collect()
}

/// Finds `w` with every form at least 1 and `w = 0` on `fixed`, by exact
/// simplex. `None` proves infeasibility.
pub fn solve_fold_system(n: usize, forms: &[Vec<(usize, i64)>], fixed: &[usize]) -> Option<Vec<Rat>> {
    let mut column = vec![None; n];
    let mut free = 0;
    for (i, c) in column.iter_mut().enumerate() {
        if !fixed.contains(&i) {
            *c = Some(free);
            free += 1;
        }
    }
    let constraints: Vec<Constraint> = forms
        .iter()
        .map(|f| {
            let mut coeffs = vec![Rat::zero(); free];
            for &(i, c) in f {
                if let Some(j) = column[i] {
                    coeffs[j] += Rat::from_integer(c.into());
                }
            }
            Constraint::new(coeffs, Relation::AtLeast, Rat::one())
        })
        .collect();
    let x = find_feasible(free, &constraints)?;
    Some(column.iter().map(|c| c.map_or_else(Rat::zero, |j| x[j].clone())).collect())
}

fn require_unimodular(t: &Triangulation) -> Result<()> {
    if t.is_unimodular() {
        Ok(())
    } else {
        Err(Error::precondition("determinant criterion requires unimodular triangulation"))
    }
}

/// An exact point of the open secondary cone of `t`, or `NotRegular`.
pub fn regularity_witness(t: &Triangulation) -> Result<ConeWitness> {
    require_unimodular(t)?;
    let folds = fold_forms(t);
    let forms: Vec<Vec<(usize, i64)>> = folds.iter().map(|f| f.coeffs.to_vec()).collect();
    let gauge = t.triangles()[0];
    let w = solve_fold_system(t.points().len(), &forms, &gauge).ok_or(Error::NotRegular)?;
    let margins = folds.iter().map(|f| f.eval(&w)).collect();
    let heights = HeightFunction::new(t.points().iter().copied().zip(w).collect());
    Ok(ConeWitness { heights, margins })
}

/// Fold margins of `heights` on `t`; fails unless all are positive.
pub fn verify_witness(t: &Triangulation, heights: &HeightFunction) -> Result<ConeWitness> {
    let w: Vec<Rat> = t
        .points()
        .iter()
        .map(|&p| {
            heights
                .get(p)
                .cloned()
                .ok_or_else(|| Error::precondition(format!("heights missing point {p}")))
        })
        .collect::<Result<_>>()?;
    let margins: Vec<Rat> = fold_forms(t).iter().map(|f| f.eval(&w)).collect();
    if margins.iter().any(|m| *m <= Rat::zero()) {
        return Err(Error::precondition("heights not in open secondary cone"));
    }
    Ok(ConeWitness { heights: heights.clone(), margins })
}

/// Heights inducing `s`, shifted by an affine function so that the anchors
/// take the prescribed values.
pub fn lift_with_fixed_values(
    s: &Subdivision,
    base: &HeightFunction,
    anchors: &[(LatticePoint, Rat)],
) -> Result<HeightFunction> {
    if anchors.len() > 3 {
        return Err(Error::precondition("at most three anchors"));
    }
    let pts: Vec<LatticePoint> = anchors.iter().map(|a| a.0).collect();
    let independent = match pts.len() {
        0 | 1 => true,
        2 => pts[0] != pts[1],
        _ => orient(pts[0], pts[1], pts[2]) != 0,
    };
    if !independent {
        return Err(Error::precondition("anchor points are affinely dependent"));
    }
    if induce(s.parent(), base)? != *s {
        return Err(Error::precondition("heights do not induce the subdivision"));
    }
    let targets: Vec<Rat> = anchors
        .iter()
        .map(|(p, v)| base.get(*p).map(|b| v - b).ok_or_else(|| Error::precondition(format!("anchor {p} outside polygon"))))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Rat>> = pts.iter().map(|p| vec![rat(1), rat(p.x), rat(p.y)]).collect();
    let coeffs = if rows.is_empty() {
        vec![Rat::zero(); 3]
    } else {
        Matrix::from_rows(rows, 3)
            .solve(&targets)
            .ok_or_else(|| Error::Internal("affine correction has no solution".into()))?
    };
    Ok(base.plus_affine(&coeffs[0], &coeffs[1], &coeffs[2]))
}

fn tie_break(p: LatticePoint, seed: u64) -> Rat {
    let mut h = (p.x as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (p.y as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F) ^ seed;
    h ^= h >> 31;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^= h >> 29;
    frac((h % 1000) as i64, 100_000)
}

/// A regular unimodular triangulation refining `s`, where `s` is induced by
/// `base`, with its witness heights.
///
/// Points above the lower hull are first lowered onto it; then a strictly
/// convex perturbation, scaled down until the outer cells survive, splits
/// every cell into unimodular triangles.
pub fn refine_regular(s: &Subdivision, base: &HeightFunction) -> Result<(Triangulation, ConeWitness)> {
    let pts = s.parent().all_lattice_points();
    let planes: Vec<(Rat, Rat, Rat)> = (0..s.len())
        .map(|i| {
            let b = affine_basis(s.cell_points(i)).expect("two-dimensional cell");
            affine_through(b, [base.at(b[0]), base.at(b[1]), base.at(b[2])])
        })
        .collect();
    let leveled = HeightFunction::from_fn(&pts, |q| {
        planes.iter().map(|f| eval_affine(f, q)).max().expect("at least one cell")
    });
    for seed in 0..16u64 {
        let bump = HeightFunction::from_fn(&pts, |q| rat(q.x * q.x + q.y * q.y) + tie_break(q, seed));
        let mut eps = Rat::one();
        for _ in 0..80 {
            let w = leveled.plus_scaled(&bump, &eps);
            let fine = induce(s.parent(), &w)?;
            if fine.refines(s) && fine.is_unimodular_triangulation() {
                let t = fine.to_triangulation()?;
                let witness = verify_witness(&t, &w)?;
                return Ok((t, witness));
            }
            eps /= rat(2);
        }
    }
    Err(Error::Internal("no regular refinement found".into()))
}

//! Structural checks shared by the integration tests.

#![allow(dead_code)]

use num_traits::Zero;

use tropmod::lattice::interior_hull;
use tropmod::moduli::radial_classification;
use tropmod::subdivision::{induce, prune, ConeWitness};
use tropmod::tropical::{cycle_closure_residual, dual_curve, interior_points, lambda_matrix, skeletonize};
use tropmod::{Rat, Triangulation};

/// Every structural invariant of a certified regular unimodular
/// triangulation of genus at least 2 with a two-dimensional interior polygon.
pub fn check_structure(t: &Triangulation, w: &ConeWitness) -> Result<(), String> {
    let p = t.polygon();
    let g = p.genus();
    let n = t.points().len();

    let induced = induce(&p, &w.heights).map_err(|e| e.to_string())?;
    if induced != t.as_subdivision() {
        return Err("witness heights induce a different subdivision".into());
    }

    let lambda = lambda_matrix(t);
    let edges = lambda.rows.len();
    let rank = lambda.rank();
    if rank + 2 * g != edges || rank + 3 != n {
        return Err(format!("rank(lambda) = {rank} with {edges} edges, {n} points, genus {g}"));
    }

    let pruned = prune(t).map_err(|e| e.to_string())?;
    let r = pruned.polygon().boundary_count();
    let g1 = interior_hull(&p).as_polygon().map_or(0, |q| q.genus());
    let radial = radial_classification(t).map_err(|e| e.to_string())?.radial_edges.len();
    if radial != g + r - g1 {
        return Err(format!("{radial} radial edges, expected {}", g + r - g1));
    }

    let curve = dual_curve(t, w).map_err(|e| e.to_string())?;
    for q in interior_points(t) {
        let (x, y) = cycle_closure_residual(&curve, q).map_err(|e| e.to_string())?;
        if !x.is_zero() || !y.is_zero() {
            return Err(format!("loop around {q} does not close"));
        }
    }

    let skeleton = skeletonize(&curve).map_err(|e| e.to_string())?;
    let total: Rat = skeleton.edges.iter().map(|e| e.2.clone()).sum();
    if skeleton.genus != g
        || skeleton.vertices.len() != 2 * g - 2
        || skeleton.edges.len() != 3 * g - 3
        || !skeleton.is_trivalent()
        || total <= Rat::zero()
    {
        return Err(format!(
            "skeleton has {} vertices and {} edges for genus {g}",
            skeleton.vertices.len(),
            skeleton.edges.len()
        ));
    }
    Ok(())
}

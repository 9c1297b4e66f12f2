//! Removal of triangles cut off by chords that miss the interior polygon.

use super::Triangulation;
use crate::error::{Error, Result};
use crate::lattice::{interior_hull, orient, InteriorHull};

fn interior_of(t: &Triangulation) -> Result<InteriorHull> {
    let poly = t.polygon();
    if poly.genus() < 2 {
        return Err(Error::precondition("prune requires genus at least 2"));
    }
    Ok(interior_hull(&poly))
}

/// Whether every interior edge meets the interior polygon.
pub fn is_pruned(t: &Triangulation) -> Result<bool> {
    let inner = interior_of(t)?;
    Ok(t.interior_edges().into_iter().all(|e| {
        let (a, b) = t.edge_points(e);
        inner.meets_segment(a, b)
    }))
}

/// Repeatedly cuts the triangulation along an interior edge missing the
/// interior polygon, keeping the side that contains it. The result
/// triangulates a convex subpolygon with the same interior lattice points.
pub fn prune(t: &Triangulation) -> Result<Triangulation> {
    if !t.is_unimodular() {
        return Err(Error::precondition("prune requires a unimodular triangulation"));
    }
    let inner = interior_of(t)?;
    let anchor = inner.lattice_points()[0];
    let mut cur = t.clone();
    loop {
        let chord = cur.interior_edges().into_iter().find(|&e| {
            let (a, b) = cur.edge_points(e);
            !inner.meets_segment(a, b)
        });
        let Some(e) = chord else {
            return Ok(cur);
        };
        let (a, b) = cur.edge_points(e);
        let side = orient(a, b, anchor).signum();
        let keep: Vec<usize> = (0..cur.triangles().len())
            .filter(|&ti| {
                cur.triangle_points(ti)
                    .iter()
                    .map(|&q| orient(a, b, q).signum())
                    .any(|s| s == side)
            })
            .collect();
        cur = cur.subset(&keep)?;
    }
}

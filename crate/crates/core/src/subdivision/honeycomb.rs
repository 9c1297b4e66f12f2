//! Honeycomb triangulations: slicing by the lines `x = k`, `y = k`, `x + y = k`.

use super::{verify_witness, ConeWitness, HeightFunction, Triangulation};
use crate::error::{Error, Result};
use crate::exact::rat;
use crate::lattice::{pt, LatticePoint, LatticePolygon};

/// Every edge direction is `(1,0)`, `(0,1)` or `(1,-1)` up to sign.
pub fn is_honeycomb_polygon(p: &LatticePolygon) -> bool {
    p.edges().all(|(a, b)| {
        let d = b.sub(a).primitive();
        matches!((d.x, d.y), (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1))
    })
}

/// The honeycomb triangulation with quadratic witness heights `x² + xy + y²`.
pub fn honeycomb(p: &LatticePolygon) -> Result<(Triangulation, ConeWitness)> {
    if !is_honeycomb_polygon(p) {
        return Err(Error::NotHoneycomb);
    }
    let (lo, hi) = p.bbox();
    let mut tris: Vec<[LatticePoint; 3]> = Vec::new();
    for i in lo.x..hi.x {
        for j in lo.y..hi.y + 1 {
            let candidates = [
                [pt(i, j), pt(i + 1, j), pt(i, j + 1)],
                [pt(i + 1, j), pt(i + 1, j + 1), pt(i, j + 1)],
            ];
            for c in candidates {
                if c.iter().all(|&q| p.contains(q)) {
                    tris.push(c);
                }
            }
        }
    }
    let t = Triangulation::from_point_triangles(&tris)?;
    debug_assert!(t.is_unimodular());
    let heights = HeightFunction::from_fn(t.points(), |q| rat(q.x * q.x + q.x * q.y + q.y * q.y));
    let witness = verify_witness(&t, &heights)?;
    Ok((t, witness))
}

//! Properties of the coarse beehive subdivision and of beehive output that
//! go beyond a single score.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropmod::lattice::{interior_hull, lattice_width};
use tropmod::subdivision::{beehive, enumerate_unimodular, induce, regularity_witness};
use tropmod::{InteriorHull, LatticePoint, LatticePolygon, Triangulation};

fn poly(c: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::from_coords(c).unwrap()
}

fn maximal_corpus() -> Vec<LatticePolygon> {
    vec![
        poly(&[(0, 0), (4, 0), (0, 4)]),
        poly(&[(0, 0), (3, 0), (3, 3), (0, 3)]),
        poly(&[(0, 0), (4, 0), (4, 3), (0, 3)]),
        poly(&[(0, 0), (0, 2), (2, 0), (4, 2), (2, 4)]),
    ]
}

/// Triangles of `t` inside `cell`.
fn restrict(t: &Triangulation, cell: &LatticePolygon) -> Vec<[LatticePoint; 3]> {
    (0..t.triangles().len())
        .map(|i| t.triangle_points(i))
        .filter(|tri| tri.iter().all(|&q| cell.contains(q)))
        .collect()
}

/// Any unimodular triangulation of each width-one cell outside the interior
/// polygon extends to a regular triangulation; the other cells keep the
/// beehive triangles.
#[test]
fn width_one_cells_refine_independently() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for p in maximal_corpus().into_iter().chain([poly(&[(0, 0), (3, 0), (0, 3), (3, 2), (2, 3)])]) {
        let b = beehive(&p).unwrap();
        let s = &b.initial;
        let mut choices: Vec<Vec<Vec<[LatticePoint; 3]>>> = Vec::new();
        let mut width_one = 0;
        for (i, cell) in s.cells().iter().enumerate() {
            let outside = s.cell_points(i).iter().any(|&q| !p.strictly_contains(q));
            if outside && lattice_width(&InteriorHull::Polygon(cell.clone())) == 1 {
                width_one += 1;
                let all = enumerate_unimodular(cell, None).unwrap();
                choices.push(all.iter().map(|t| restrict(t, cell)).collect());
            } else {
                choices.push(vec![restrict(&b.triangulation, cell)]);
            }
        }
        assert!(width_one >= 3, "{p}: {width_one} width-one cells");
        for _ in 0..25 {
            let tris: Vec<[LatticePoint; 3]> =
                choices.iter().flat_map(|c| c.choose(&mut rng).unwrap().iter().copied()).collect();
            let t = Triangulation::from_point_triangles(&tris).unwrap();
            assert!(t.is_unimodular());
            let w = regularity_witness(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
            assert!(induce(&p, &w.heights).unwrap().refines(s));
        }
    }
}

/// Per facet `tau` of the interior polygon, at least
/// `min(|tau|, |tau'| - 1)` of its lattice points are joined to two or more
/// points of the parallel facet `tau'` of the polygon.
#[test]
fn zig_zag_connections() {
    for p in maximal_corpus() {
        let b = beehive(&p).unwrap();
        let t = &b.triangulation;
        let edges: BTreeSet<(LatticePoint, LatticePoint)> = t
            .edges()
            .into_iter()
            .flat_map(|e| {
                let (a, c) = t.edge_points(e);
                [(a, c), (c, a)]
            })
            .collect();
        let inner = interior_hull(&p).as_polygon().unwrap().clone();
        for h in inner.half_planes() {
            let tau = inner.points_on_line(&h);
            let outer = p.points_on_line(&h.relaxed());
            let joined = tau
                .iter()
                .filter(|&&a| outer.iter().filter(|&&o| edges.contains(&(a, o))).count() >= 2)
                .count();
            let need = tau.len().min(outer.len().saturating_sub(1));
            assert!(joined >= need, "{p}: facet {h:?} joins {joined}, needs {need}");
        }
    }
}

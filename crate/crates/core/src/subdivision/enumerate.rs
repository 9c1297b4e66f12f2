//! Exhaustive enumeration of unimodular triangulations.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::Triangulation;
use crate::error::{Error, Result};
use crate::lattice::{orient, segments_cross, LatticePoint, LatticePolygon};

/// Largest lattice point count enumerated without an explicit cap.
pub const ENUMERATION_GUARD: usize = 18;

/// Receives each complete triangulation; returns false to stop.
type Emit<'a> = dyn FnMut(&[LatticePoint], &[[usize; 3]]) -> bool + 'a;

/// Backtracking state. A directed edge `(a, b)` is covered once a triangle
/// lies on its left; it is open while that side still has to be filled.
struct Search {
    n: usize,
    candidates: Vec<Vec<usize>>,
    pts: Vec<LatticePoint>,
    covered: Vec<bool>,
    open: BTreeSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
}

impl Search {
    fn new(p: &LatticePolygon) -> Self {
        let pts = p.all_lattice_points();
        let n = pts.len();
        let mut candidates = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    candidates[a * n + b] = (0..n).filter(|&c| orient(pts[a], pts[b], pts[c]) == 1).collect();
                }
            }
        }
        let mut open = BTreeSet::new();
        let mut edges = Vec::new();
        let idx = |q: LatticePoint| pts.binary_search(&q).unwrap();
        for (u, v) in p.edges() {
            let d = v.sub(u);
            let (g, s) = (d.lattice_length(), d.primitive());
            for k in 0..g {
                let a = idx(LatticePoint::new(u.x + k * s.x, u.y + k * s.y));
                let b = idx(LatticePoint::new(u.x + (k + 1) * s.x, u.y + (k + 1) * s.y));
                open.insert((a, b));
                edges.push((a, b));
            }
        }
        Search {
            n,
            candidates,
            covered: vec![false; n * n],
            pts,
            open,
            edges,
            triangles: Vec::new(),
        }
    }

    /// Feasibility of placing triangle `(a, b, c)` on the open edge `(a, b)`.
    fn fits(&self, b: usize, c: usize, a: usize) -> bool {
        for (u, v) in [(b, c), (c, a)] {
            if self.open.contains(&(u, v)) {
                continue;
            }
            if self.covered[u * self.n + v] {
                return false;
            }
            let (pu, pv) = (self.pts[u], self.pts[v]);
            if self
                .edges
                .iter()
                .any(|&(x, y)| segments_cross(pu, pv, self.pts[x], self.pts[y]))
            {
                return false;
            }
        }
        true
    }

    /// Places the triangle; returns the undo record (edges opened, edges closed).
    fn place(&mut self, a: usize, b: usize, c: usize) -> [(usize, usize, bool); 3] {
        let mut rec = [(a, b, true), (b, c, false), (c, a, false)];
        for r in rec.iter_mut() {
            let (u, v) = (r.0, r.1);
            self.covered[u * self.n + v] = true;
            if self.open.remove(&(u, v)) {
                r.2 = true;
            } else {
                self.open.insert((v, u));
                self.edges.push((u, v));
            }
        }
        self.triangles.push([a, b, c]);
        rec
    }

    fn undo(&mut self, rec: [(usize, usize, bool); 3]) {
        for &(u, v, closed) in rec.iter().rev() {
            self.covered[u * self.n + v] = false;
            if closed {
                self.open.insert((u, v));
            } else {
                self.open.remove(&(v, u));
                self.edges.pop();
            }
        }
        self.triangles.pop();
    }

    /// Choices available for the current frontier edge.
    fn choices(&self) -> Option<((usize, usize), Vec<usize>)> {
        let &(a, b) = self.open.iter().next()?;
        let cs = self.candidates[a * self.n + b]
            .iter()
            .copied()
            .filter(|&c| self.fits(b, c, a))
            .collect();
        Some(((a, b), cs))
    }

    /// Depth-first search; `emit` returns false to stop.
    fn run(&mut self, emit: &mut Emit) -> bool {
        let Some(((a, b), cs)) = self.choices() else {
            return emit(&self.pts, &self.triangles);
        };
        for c in cs {
            let rec = self.place(a, b, c);
            let go_on = self.run(emit);
            self.undo(rec);
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn check_guard(p: &LatticePolygon, cap: Option<usize>) -> Result<()> {
    let points = p.all_lattice_points().len();
    if cap.is_none() && points > ENUMERATION_GUARD {
        return Err(Error::InstanceTooLarge { points });
    }
    Ok(())
}

fn build(pts: &[LatticePoint], tris: &[[usize; 3]]) -> Triangulation {
    Triangulation::new(pts.to_vec(), tris.to_vec()).expect("enumerated triangulation is valid")
}

/// Streams every unimodular triangulation of `p` to `f` (which returns
/// false to stop), at most `cap` of them. Returns the number produced.
pub fn for_each_unimodular(
    p: &LatticePolygon,
    cap: Option<usize>,
    mut f: impl FnMut(Triangulation) -> bool,
) -> Result<usize> {
    check_guard(p, cap)?;
    let mut count = 0;
    let mut search = Search::new(p);
    search.run(&mut |pts, tris| {
        count += 1;
        f(build(pts, tris)) && cap.is_none_or(|c| count < c)
    });
    Ok(count)
}

/// Every unimodular triangulation of `p`, sorted, at most `cap` of them.
pub fn enumerate_unimodular(p: &LatticePolygon, cap: Option<usize>) -> Result<Vec<Triangulation>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_unimodular(p, cap, |t| {
        if seen.insert(t.canonical_key()) {
            out.push(t);
        }
        true
    })?;
    out.sort();
    Ok(out)
}

/// Same result as [`enumerate_unimodular`], splitting the search tree on the
/// first frontier edge across the rayon pool. With a cap, each branch is
/// capped and the merged, sorted list is truncated.
pub fn enumerate_unimodular_parallel(p: &LatticePolygon, cap: Option<usize>) -> Result<Vec<Triangulation>> {
    check_guard(p, cap)?;
    let root = Search::new(p);
    let Some(((a, b), cs)) = root.choices() else {
        return Ok(Vec::new());
    };
    let mut all: Vec<Triangulation> = cs
        .par_iter()
        .flat_map_iter(|&c| {
            let mut search = Search::new(p);
            search.place(a, b, c);
            let mut out = Vec::new();
            search.run(&mut |pts, tris| {
                out.push(build(pts, tris));
                cap.is_none_or(|k| out.len() < k)
            });
            out
        })
        .collect();
    all.sort();
    all.dedup();
    if let Some(k) = cap {
        all.truncate(k);
    }
    Ok(all)
}

//! Beehive triangulations: regular unimodular triangulations maximizing the
//! number of interior-boundary points joined to several outer points.
//!
//! A coarse regular subdivision is induced by heights that vanish inside and
//! rise on the boundary. Its cells outside the interior polygon are mostly
//! strips of lattice width one, whose triangulations are interleavings of
//! their two rows. Each strip starts from the zig-zag interleaving; the
//! combination is then improved by search, realized by one joint LP for a
//! secondary height function, and completed by a regular refinement.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{induce, refine_regular, solve_fold_system, fold_forms, ConeWitness, HeightFunction, Subdivision, Triangulation};
use crate::error::{Error, Result};
use crate::exact::{frac, rat, Rat};
use crate::lattice::{classify, is_maximal, LatticePoint, LatticePolygon, PolygonClass};
use crate::moduli::radial_classification;

/// Product size up to which strip interleavings are searched exhaustively.
const EXHAUSTIVE_LIMIT: usize = 20_000;

#[derive(Debug, Clone)]
pub struct BeehiveResult {
    pub triangulation: Triangulation,
    pub witness: ConeWitness,
    /// The coarse subdivision the triangulation refines.
    pub initial: Subdivision,
    /// `b2 + 2 b3` of the triangulation.
    pub score: usize,
}

fn require_input(p: &LatticePolygon) -> Result<()> {
    if classify(p) != PolygonClass::Nonhyperelliptic {
        return Err(Error::precondition("beehive requires a nonhyperelliptic polygon of genus at least 2"));
    }
    Ok(())
}

/// Heights for the coarse subdivision: zero inside, one on the boundary,
/// except that for a maximal polygon with an edge of at least three lattice
/// points the lattice points strictly between the ends of the first such
/// edge get `1/2`.
pub fn beehive_initial_heights(p: &LatticePolygon) -> Result<HeightFunction> {
    require_input(p)?;
    let mut special: BTreeSet<LatticePoint> = BTreeSet::new();
    if is_maximal(p)? {
        let mut edges: Vec<(LatticePoint, LatticePoint)> =
            p.edges().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort();
        if let Some(&(a, b)) = edges.iter().find(|(a, b)| b.sub(*a).lattice_length() >= 2) {
            let d = b.sub(a);
            let (k, s) = (d.lattice_length(), d.primitive());
            special.extend((1..k).map(|i| LatticePoint::new(a.x + i * s.x, a.y + i * s.y)));
        }
    }
    Ok(HeightFunction::from_fn(&p.all_lattice_points(), |q| {
        if special.contains(&q) {
            frac(1, 2)
        } else if p.on_boundary(q) {
            rat(1)
        } else {
            Rat::zero()
        }
    }))
}

/// A width-one cell with its two rows, listed in the same direction.
#[derive(Debug, Clone)]
struct Strip {
    inner: Vec<LatticePoint>,
    outer: Vec<LatticePoint>,
}

impl Strip {
    fn detect(points: &[LatticePoint], polygon: &LatticePolygon, outer_poly: &LatticePolygon) -> Option<Strip> {
        for (a, b) in polygon.edges() {
            let d = b.sub(a).primitive();
            let n = d.rot90();
            let vals: Vec<i64> = points.iter().map(|q| n.dot(*q)).collect();
            let (lo, hi) = (*vals.iter().min()?, *vals.iter().max()?);
            if hi - lo != 1 {
                continue;
            }
            let row = |v: i64| {
                let mut r: Vec<LatticePoint> = points.iter().copied().filter(|q| n.dot(*q) == v).collect();
                r.sort_by_key(|q| d.dot(*q));
                r
            };
            let (r0, r1) = (row(lo), row(hi));
            let interior = |r: &[LatticePoint]| r.iter().any(|&q| outer_poly.strictly_contains(q));
            let (inner, outer) = if interior(&r1) && !interior(&r0) { (r1, r0) } else { (r0, r1) };
            return Some(Strip { inner, outer });
        }
        None
    }

    /// Interleavings: `true` advances along the inner row.
    fn options(&self) -> Vec<Vec<bool>> {
        let (p, q) = (self.inner.len() - 1, self.outer.len() - 1);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(p: usize, q: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
            if p == 0 && q == 0 {
                out.push(cur.clone());
                return;
            }
            if p > 0 {
                cur.push(true);
                rec(p - 1, q, cur, out);
                cur.pop();
            }
            if q > 0 {
                cur.push(false);
                rec(p, q - 1, cur, out);
                cur.pop();
            }
        }
        rec(p, q, &mut cur, &mut out);
        out
    }

    /// Outer step first, then alternate until one row runs out.
    fn zig_zag(&self) -> Vec<bool> {
        let (mut p, mut q) = (self.inner.len() - 1, self.outer.len() - 1);
        let mut out = Vec::new();
        let mut take_outer = true;
        while p + q > 0 {
            if (take_outer && q > 0) || p == 0 {
                out.push(false);
                q -= 1;
            } else {
                out.push(true);
                p -= 1;
            }
            take_outer = !take_outer;
        }
        out
    }

    fn triangles(&self, steps: &[bool]) -> Vec<[LatticePoint; 3]> {
        let (mut i, mut j) = (0, 0);
        steps
            .iter()
            .map(|&inner_step| {
                if inner_step {
                    i += 1;
                    [self.inner[i - 1], self.inner[i], self.outer[j]]
                } else {
                    j += 1;
                    [self.outer[j - 1], self.outer[j], self.inner[i]]
                }
            })
            .collect()
    }
}

struct Layout {
    strips: Vec<Strip>,
    /// Triangles of a fixed refinement of every other cell.
    fixed: Vec<[LatticePoint; 3]>,
}

impl Layout {
    fn build(&self, choice: &[usize], options: &[Vec<Vec<bool>>]) -> Result<Triangulation> {
        let mut tris = self.fixed.clone();
        for (k, s) in self.strips.iter().enumerate() {
            tris.extend(s.triangles(&options[k][choice[k]]));
        }
        Triangulation::from_point_triangles(&tris)
    }

    fn score(&self, choice: &[usize], options: &[Vec<Vec<bool>>]) -> Result<usize> {
        Ok(radial_classification(&self.build(choice, options)?)?.score())
    }
}

/// Exhaustive search over all strip combinations when small, else
/// coordinate ascent from the zig-zag choice. Returns choices sorted by
/// decreasing score.
fn search(layout: &Layout, options: &[Vec<Vec<bool>>], start: Vec<usize>) -> Result<Vec<(usize, Vec<usize>)>> {
    let total = options.iter().try_fold(1usize, |acc, o| acc.checked_mul(o.len()));
    let mut ranked = Vec::new();
    match total {
        Some(n) if n <= EXHAUSTIVE_LIMIT => {
            let mut choice = vec![0; options.len()];
            for _ in 0..n {
                ranked.push((layout.score(&choice, options)?, choice.clone()));
                for k in 0..choice.len() {
                    choice[k] += 1;
                    if choice[k] < options[k].len() {
                        break;
                    }
                    choice[k] = 0;
                }
            }
        }
        _ => {
            let mut best = (layout.score(&start, options)?, start);
            ranked.push(best.clone());
            loop {
                let mut improved = false;
                for k in 0..options.len() {
                    for o in 0..options[k].len() {
                        let mut c = best.1.clone();
                        c[k] = o;
                        let s = layout.score(&c, options)?;
                        ranked.push((s, c.clone()));
                        if s > best.0 {
                            best = (s, c);
                            improved = true;
                        }
                    }
                }
                if !improved {
                    break;
                }
            }
        }
    }
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    ranked.dedup();
    Ok(ranked)
}

/// Secondary heights inducing the chosen triangulation on every strip.
fn strip_heights(t: &Triangulation, strips: &[Vec<[LatticePoint; 3]>]) -> Option<HeightFunction> {
    let n = t.points().len();
    let mut forms = Vec::new();
    for tris in strips {
        let local = Triangulation::from_point_triangles(tris).ok()?;
        for f in fold_forms(&local) {
            forms.push(
                f.coeffs
                    .iter()
                    .map(|&(i, c)| (t.index_of(local.points()[i]).expect("strip point"), c))
                    .collect(),
            );
        }
    }
    let gauge = t.triangles()[0];
    let w = solve_fold_system(n, &forms, &gauge)?;
    Some(HeightFunction::new(t.points().iter().copied().zip(w).collect()))
}

fn contains_all(s: &Subdivision, tris: &[[LatticePoint; 3]]) -> bool {
    let cells: BTreeSet<Vec<LatticePoint>> = (0..s.len()).map(|i| s.cell_points(i).to_vec()).collect();
    tris.iter().all(|t| {
        let mut v = t.to_vec();
        v.sort();
        cells.contains(&v)
    })
}

/// A regular unimodular beehive triangulation of a nonhyperelliptic polygon.
pub fn beehive(p: &LatticePolygon) -> Result<BeehiveResult> {
    require_input(p)?;
    let base = beehive_initial_heights(p)?;
    let initial = induce(p, &base)?;
    let (reference, _) = refine_regular(&initial, &base)?;
    let mut strips = Vec::new();
    let mut fixed = Vec::new();
    for i in 0..initial.len() {
        let pts = initial.cell_points(i);
        let inside = pts.iter().all(|&q| p.strictly_contains(q));
        let strip = if inside { None } else { Strip::detect(pts, &initial.cells()[i], p) };
        match strip {
            Some(s) if s.inner.len() > 1 && s.outer.len() > 1 => strips.push(s),
            _ => {
                let cell = &initial.cells()[i];
                fixed.extend(
                    (0..reference.triangles().len())
                        .map(|t| reference.triangle_points(t))
                        .filter(|tri| tri.iter().all(|&q| cell.contains(q))),
                );
            }
        }
    }
    let options: Vec<Vec<Vec<bool>>> = strips.iter().map(Strip::options).collect();
    let start: Vec<usize> = strips
        .iter()
        .zip(&options)
        .map(|(s, o)| o.iter().position(|x| *x == s.zig_zag()).expect("zig-zag is an interleaving"))
        .collect();
    let layout = Layout { strips, fixed };
    for (_, choice) in search(&layout, &options, start)? {
        let t = layout.build(&choice, &options)?;
        let chosen: Vec<Vec<[LatticePoint; 3]>> = layout
            .strips
            .iter()
            .enumerate()
            .map(|(k, s)| s.triangles(&options[k][choice[k]]))
            .collect();
        let Some(secondary) = strip_heights(&t, &chosen) else {
            continue;
        };
        let flat: Vec<[LatticePoint; 3]> = chosen.iter().flatten().copied().collect();
        let mut eps = Rat::one();
        for _ in 0..64 {
            let w = base.plus_scaled(&secondary, &eps);
            let s = induce(p, &w)?;
            if s.refines(&initial) && contains_all(&s, &flat) {
                let (triangulation, witness) = refine_regular(&s, &w)?;
                let score = radial_classification(&triangulation)?.score();
                return Ok(BeehiveResult { triangulation, witness, initial, score });
            }
            eps /= rat(2);
        }
    }
    Err(Error::Internal("no strip combination extends to a regular triangulation".into()))
}

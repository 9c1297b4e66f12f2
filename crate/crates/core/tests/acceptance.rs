//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL
//! line; the binary exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::check_structure;
use tropmod::exact::rat;
use tropmod::hyperelliptic::{chain_equality_matrix, maximal_hyperelliptic, strip_polygon};
use tropmod::lattice::{classify, interior_hull, is_maximal};
use tropmod::moduli::{
    algebraic_dim, algebraic_dim_from_counts, d_planar, dim_mdelta_closed, dim_mdelta_exhaustive, dim_mt,
    dim_mt_formula, dim_mt_oracle, generic_rank, honeycomb_dim, j_pattern, radial_classification,
    theorem_2g1_polygons,
};
use tropmod::subdivision::{
    beehive, enumerate_unimodular_parallel, honeycomb, induce, regularity_witness, verify_witness, ConeWitness,
};
use tropmod::{Error, HeightFunction, LatticePolygon, PolygonClass, Triangulation};

type Outcome = Result<String, String>;

fn poly(c: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::from_coords(c).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn ok<T>(r: tropmod::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Interior lattice points, interior-polygon genus and non-vertex boundary
/// points of the interior polygon.
fn honeycomb_counts(p: &LatticePolygon) -> (i64, i64, i64) {
    let g = p.genus() as i64;
    let inner = interior_hull(p);
    let inner = inner.as_polygon().expect("nonhyperelliptic");
    let g1 = inner.genus() as i64;
    let b = g - g1 - inner.vertices().len() as i64;
    (g, g1, b)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let corpus = vec![
        poly(&[(0, 0), (4, 0), (0, 4)]),
        poly(&[(0, 0), (5, 0), (0, 5)]),
        poly(&[(0, 0), (4, 0), (4, 4), (0, 4)]),
        poly(&[(0, 0), (5, 0), (5, 3), (0, 3)]),
        poly(&[(2, 0), (5, 0), (5, 3), (3, 5), (0, 5), (0, 2)]),
        poly(&[(1, 0), (4, 0), (4, 2), (2, 4), (0, 4), (0, 1)]),
    ];
    let mut seen = Vec::new();
    for p in &corpus {
        let (t, _) = ok(honeycomb(p))?;
        let (g, g1, b) = honeycomb_counts(p);
        let expected = honeycomb_dim(g, g1, b);
        let formula = ok(dim_mt_formula(&t))?.value;
        let oracle = ok(dim_mt_oracle(&t))?.value;
        ensure(formula == expected && oracle == expected, || {
            format!("{p}: formula {formula}, oracle {oracle}, expected {expected}")
        })?;
        seen.push(expected);
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{} honeycomb polygons, dimensions {seen:?}", corpus.len()))
}

fn criterion_2() -> Outcome {
    let d: Vec<u64> = [2, 3, 7, 9].iter().map(|&g| d_planar(g).unwrap()).collect();
    ensure(d == [3, 6, 16, 19], || format!("planar dimensions {d:?}"))?;
    let (a, b) = (honeycomb_dim(9, 1, 4), algebraic_dim_from_counts(25, 4));
    ensure(a == 18 && b == 18, || format!("worked values {a}, {b}"))?;
    Ok("d(2,3,7,9) = 3,6,16,19; 3*9-3-2*1-4 = 18; 25-4-3 = 18".into())
}

struct Certified {
    polygon: LatticePolygon,
    triangulation: Triangulation,
    witness: ConeWitness,
}

fn corpus_3() -> Vec<LatticePolygon> {
    vec![
        poly(&[(1, 0), (4, 0), (0, 4), (0, 1)]),
        poly(&[(1, 0), (3, 0), (3, 1), (0, 4), (0, 1)]),
        poly(&[(1, 0), (3, 0), (3, 1), (1, 3), (0, 3), (0, 1)]),
        poly(&[(1, 0), (3, 0), (3, 2), (2, 3), (0, 3), (0, 1)]),
        poly(&[(0, 0), (3, 0), (3, 1), (1, 3), (0, 3)]),
        poly(&[(1, 0), (2, 0), (3, 1), (3, 2), (2, 3), (0, 3), (0, 1)]),
        poly(&[(1, 0), (2, 0), (3, 1), (3, 2), (2, 3), (1, 3), (0, 2), (0, 1)]),
    ]
}

/// Every regular unimodular triangulation of the corpus with its LP witness.
fn certify(corpus: &[LatticePolygon]) -> Result<(Vec<Certified>, usize), String> {
    let mut out = Vec::new();
    let mut total = 0;
    for p in corpus {
        let all = ok(enumerate_unimodular_parallel(p, None))?;
        total += all.len();
        let regular: Vec<Certified> = all
            .into_par_iter()
            .filter_map(|t| match regularity_witness(&t) {
                Ok(w) => Some(Ok(Certified { polygon: p.clone(), triangulation: t, witness: w })),
                Err(Error::NotRegular) => None,
                Err(e) => Some(Err(e.to_string())),
            })
            .collect::<Result<_, String>>()?;
        out.extend(regular);
    }
    Ok((out, total))
}

fn criterion_3(certified: &Result<(Vec<Certified>, usize), String>, setup: Duration) -> Outcome {
    let start = Instant::now();
    let (certified, total) = certified.as_ref().map_err(Clone::clone)?;
    let corpus = corpus_3();
    for p in &corpus {
        ensure(classify(p) == PolygonClass::Nonhyperelliptic, || format!("{p} is not nonhyperelliptic"))?;
        ensure(p.all_lattice_points().len() <= 14, || format!("{p} has too many lattice points"))?;
    }
    let mismatches: Vec<String> = certified
        .par_iter()
        .filter_map(|c| {
            let f = dim_mt_formula(&c.triangulation).map(|r| r.value);
            let o = dim_mt_oracle(&c.triangulation).map(|r| r.value);
            match (f, o) {
                (Ok(f), Ok(o)) if f == o => None,
                (f, o) => Some(format!("{}: formula {f:?}, oracle {o:?}", c.polygon)),
            }
        })
        .collect();
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
    within(start - setup, Duration::from_secs(300))?;
    Ok(format!(
        "{} polygons, {} regular of {} unimodular triangulations agree",
        corpus.len(),
        certified.len(),
        total
    ))
}

fn score(t: &Triangulation) -> tropmod::Result<usize> {
    Ok(radial_classification(t)?.score())
}

/// Highest score among regular triangulations in `candidates`, certifying
/// regularity only where the score could beat `bound`.
fn best_regular_above(candidates: &[Triangulation], bound: usize) -> Result<Option<usize>, String> {
    let beating: Vec<(usize, &Triangulation)> = candidates
        .par_iter()
        .map(|t| score(t).map(|s| (s, t)))
        .collect::<tropmod::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|(s, _)| *s > bound)
        .collect();
    let mut best = None;
    for (s, t) in beating {
        match regularity_witness(t) {
            Ok(_) => best = best.max(Some(s)),
            Err(Error::NotRegular) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(best)
}

/// Regular unimodular triangulations induced by random heights.
fn sampled(p: &LatticePolygon, count: usize, seed: u64) -> Vec<Triangulation> {
    let pts = p.all_lattice_points();
    (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i as u64);
            // a strictly convex lift keeps every point on the lower hull;
            // the noise level decides how far the result strays from it
            let noise = rng.gen_range(1..=400);
            let h = HeightFunction::from_fn(&pts, |q| {
                rat(100_000 * (q.x * q.x + q.y * q.y) + rng.gen_range(0..noise * 1000))
            });
            let s = induce(p, &h).ok()?;
            s.is_unimodular_triangulation().then(|| s.to_triangulation().unwrap())
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let cases = [
        (poly(&[(0, 0), (4, 0), (0, 4)]), 6, 6, None),
        (poly(&[(0, 0), (3, 0), (3, 3), (0, 3)]), 8, 9, Some(20_000)),
    ];
    let mut notes = Vec::new();
    for (p, target, dim, cap) in cases {
        let b = ok(beehive(&p))?;
        let t = &b.triangulation;
        ensure(t.is_unimodular(), || format!("{p}: beehive output is not unimodular"))?;
        ok(verify_witness(t, &b.witness.heights))?;
        let s = ok(score(t))?;
        let r = p.boundary_count();
        let c = tropmod::lattice::column_vectors(&p).len();
        ensure(s == target && s == r - c, || format!("{p}: score {s}, r - c = {}", r - c))?;

        let listed = ok(enumerate_unimodular_parallel(&p, cap))?;
        let samples = sampled(&p, 10_000, 17);
        let better = best_regular_above(&listed, s)?.max(best_regular_above(&samples, s)?);
        ensure(better.is_none(), || format!("{p}: a regular triangulation scores {better:?} > {s}"))?;

        let from_beehive = ok(dim_mt(t))?.value;
        let closed = ok(dim_mdelta_closed(&p))?.value;
        let algebraic = ok(algebraic_dim(&p))?.value;
        ensure(from_beehive == dim && closed == dim && algebraic == dim, || {
            format!("{p}: beehive {from_beehive}, closed {closed}, algebraic {algebraic}, expected {dim}")
        })?;
        notes.push(format!(
            "score {s} over {} listed and {} sampled, dim {dim}",
            listed.len(),
            samples.len()
        ));
    }
    within(start, Duration::from_secs(600))?;
    Ok(notes.join("; "))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let p = poly(&[(0, 0), (3, 0), (3, 2), (2, 3), (0, 3)]);
    ensure(!ok(is_maximal(&p))?, || "chopped square reported maximal".into())?;
    let j = ok(j_pattern(&p))?;
    let rank = generic_rank(&j);
    ensure(j.rows.len() == 1 && rank == 1, || format!("|A| = {}, rank J = {rank}", j.rows.len()))?;
    let closed = ok(dim_mdelta_closed(&p))?;
    ensure(closed.value == 9 && closed.witness("maximal_model") == Some(9), || format!("closed form {closed:?}"))?;
    let search = ok(dim_mdelta_exhaustive(&p, None))?;
    ensure(search.value == 9 && !search.lower_bound, || format!("exhaustive {search:?}"))?;
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "|A| = 1, rank J = 1, 9 - 1 + 1 = 9 = maximum over {} triangulations",
        search.witness("triangulations").unwrap_or(0)
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for g in [4u64, 5, 6, 7, 8, 10, 11, 12] {
        let list = ok(theorem_2g1_polygons(g))?;
        if g >= 11 {
            ensure(list.len() == 1, || format!("genus {g}: {} polygons", list.len()))?;
        }
        for p in &list {
            ensure(p.genus() as u64 == g, || format!("{p}: genus {}", p.genus()))?;
            ensure(classify(p) == PolygonClass::Nonhyperelliptic, || format!("{p}: hyperelliptic"))?;
            ensure(ok(is_maximal(p))?, || format!("{p}: not maximal"))?;
            let d = ok(dim_mdelta_closed(p))?.value;
            ensure(d == 2 * g as i64 + 1, || format!("{p}: dimension {d}"))?;
        }
        total += list.len();
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{total} polygons attain 2g + 1"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for g in 2u64..=8 {
        let polys = ok(maximal_hyperelliptic(g))?;
        ensure(polys.len() == g as usize + 2, || format!("genus {g}: {} polygons", polys.len()))?;
        for p in &polys {
            ensure(p.genus() as u64 == g && classify(p) == PolygonClass::Hyperelliptic, || {
                format!("{p} is not hyperelliptic of genus {g}")
            })?;
        }
        let (_, t) = ok(strip_polygon(g))?;
        ensure(t.is_unimodular(), || format!("genus {g}: strip not unimodular"))?;
        ok(regularity_witness(&t))?;
        let d = ok(dim_mt_oracle(&t))?.value;
        ensure(d == 2 * g as i64 - 1, || format!("genus {g}: strip dimension {d}"))?;
        let rank = ok(chain_equality_matrix(g))?.rank();
        ensure(rank == g as usize - 2, || format!("genus {g}: chain equality rank {rank}"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok("g = 2..8: g + 2 polygons, strip dimension 2g - 1, equality rank g - 2".into())
}

fn criterion_8(certified: &Result<(Vec<Certified>, usize), String>) -> Outcome {
    let start = Instant::now();
    let (certified, _) = certified.as_ref().map_err(Clone::clone)?;
    let failures: Vec<String> = certified
        .par_iter()
        .filter_map(|c| {
            check_structure(&c.triangulation, &c.witness)
                .err()
                .map(|e| format!("{}: {e}", c.polygon))
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} certified triangulations", certified.len()))
}

fn report(n: usize, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let t = start.elapsed();
    match outcome {
        Ok(note) => {
            println!("PASS criterion {n} ({t:.2?}): {note}");
            true
        }
        Err(why) => {
            println!("FAIL criterion {n} ({t:.2?}): {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    // `cargo test` forwards harness flags; listing must not run the suite.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let setup = Instant::now();
    let certified = certify(&corpus_3());
    let setup = setup.elapsed();
    let results = [
        report(1, criterion_1),
        report(2, criterion_2),
        report(3, || criterion_3(&certified, setup)),
        report(4, criterion_4),
        report(5, criterion_5),
        report(6, criterion_6),
        report(7, criterion_7),
        report(8, || criterion_8(&certified)),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

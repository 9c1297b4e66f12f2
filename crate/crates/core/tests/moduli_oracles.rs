//! Term rank of deficiency patterns against the rank of random matrices with
//! the same support over a large prime field, and closed forms against
//! exhaustive search on small polygons.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropmod::lattice::{classify, is_maximal};
use tropmod::moduli::{dim_mdelta_closed, dim_mdelta_exhaustive, generic_rank, j_pattern, JPattern};
use tropmod::{LatticePoint, LatticePolygon, PolygonClass};

const P: u64 = 1_000_000_007;

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], P - 2);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % P;
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Maximum rank over a few random fillings of the support.
fn sampled_rank(j: &JPattern, rng: &mut ChaCha8Rng) -> usize {
    (0..4)
        .map(|_| {
            let m = j
                .support
                .iter()
                .map(|row| row.iter().map(|&s| if s { rng.gen_range(1..P) } else { 0 }).collect())
                .collect();
            rank_mod_p(m)
        })
        .max()
        .unwrap_or(0)
}

fn pattern(rows: usize, cols: usize, bits: &[bool]) -> JPattern {
    let o = LatticePoint::new(0, 0);
    JPattern {
        rows: vec![o; rows],
        cols: vec![o; cols],
        support: (0..rows).map(|i| bits[i * cols..(i + 1) * cols].to_vec()).collect(),
    }
}

proptest! {
    #[test]
    fn term_rank_matches_random_rank(
        (rows, cols, bits) in (1usize..7, 1usize..7)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(prop::bool::weighted(0.35), r * c)))
    ) {
        let j = pattern(rows, cols, &bits);
        let mut rng = ChaCha8Rng::seed_from_u64(bits.len() as u64);
        prop_assert_eq!(generic_rank(&j), sampled_rank(&j, &mut rng));
    }

    #[test]
    fn polygon_patterns_match_random_rank(
        c in prop::collection::vec((-3i64..=4, -3i64..=4), 4..9)
    ) {
        let pts: Vec<LatticePoint> = c.into_iter().map(|(x, y)| LatticePoint::new(x, y)).collect();
        let Ok(p) = LatticePolygon::new(&pts) else { return Ok(()) };
        prop_assume!(classify(&p) == PolygonClass::Nonhyperelliptic);
        prop_assume!(!is_maximal(&p).unwrap());
        let Ok(j) = j_pattern(&p) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        prop_assert_eq!(generic_rank(&j), sampled_rank(&j, &mut rng));
        prop_assert!(generic_rank(&j) <= j.rows.len().min(j.cols.len()));
    }
}

fn poly(c: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::from_coords(c).unwrap()
}

#[test]
fn closed_form_matches_exhaustive_search() {
    let corpus: &[&[(i64, i64)]] = &[
        &[(0, 0), (4, 0), (0, 4)],
        &[(0, 0), (3, 0), (3, 3), (0, 3)],
        &[(0, 0), (3, 0), (0, 3), (3, 2), (2, 3)],
        &[(1, 0), (4, 0), (0, 4), (0, 1)],
        &[(0, 0), (3, 0), (3, 2), (2, 3), (0, 3)],
        &[(0, 0), (3, 0), (3, 1), (1, 3), (0, 3)],
    ];
    for c in corpus {
        let p = poly(c);
        let closed = dim_mdelta_closed(&p).unwrap();
        let search = dim_mdelta_exhaustive(&p, None).unwrap();
        assert_eq!(closed.value, search.value, "{p}");
        assert!(!search.lower_bound);
    }
}

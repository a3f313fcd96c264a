//! Brute-force references for the fundamental cycle and stabilizer ranks.

use std::time::Instant;

mod common;

use common::{compare_laufer, minor_rank};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unimodal::curves::{stabilizer_constraints, stabilizer_dim, Line, Marking, ProjPoint};
use unimodal::rational::int;

#[test]
fn laufer_matches_exhaustive_search() {
    let start = Instant::now();
    assert_eq!(compare_laufer(17, 250), Ok(250));
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());
}

fn p(x: i64, y: i64, z: i64) -> Marking {
    Marking::Point(ProjPoint::from_ints(x, y, z))
}

#[test]
fn stabilizer_dimensions_agree_with_minor_ranks() {
    let cases: Vec<(Vec<Marking>, i64)> = vec![
        (vec![], 8),
        (vec![p(1, 0, 0), p(0, 1, 0)], 4),
        (vec![p(1, 0, 0), Marking::Line(Line::from_ints(0, 0, 1))], 5),
        (vec![p(1, 0, 0), p(0, 1, 0), p(0, 0, 1), p(1, 1, 1)], 0),
    ];
    for (markings, expected) in cases {
        let oracle = 9 - minor_rank(&stabilizer_constraints(&markings)) as i64;
        assert_eq!(oracle, expected);
        assert_eq!(stabilizer_dim(&markings), expected);
    }
}

#[test]
fn random_markings_agree_with_minor_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let count = rng.gen_range(0..=3);
        let markings: Vec<Marking> = (0..count)
            .map(|_| {
                let mut c = [0i64; 3];
                while c.iter().all(|&v| v == 0) {
                    c = [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
                }
                if rng.gen_bool(0.5) {
                    p(c[0], c[1], c[2])
                } else {
                    Marking::Line(Line::from_ints(c[0], c[1], c[2]))
                }
            })
            .collect();
        let rows = stabilizer_constraints(&markings);
        assert_eq!(stabilizer_dim(&markings), 9 - minor_rank(&rows) as i64);
    }
    assert_eq!(minor_rank(&vec![vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
}

//! Brute-force references shared by the oracle and acceptance targets.

#![allow(dead_code)]

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unimodal::graphs::{fundamental_cycle, is_negative_definite, Component, Contact, CurveConfiguration};
use unimodal::rational::det;
use unimodal::Matrix;

pub fn random_config(rng: &mut ChaCha8Rng) -> CurveConfiguration {
    let n = rng.gen_range(1..=5);
    let components = (0..n)
        .map(|i| Component::new(&format!("E{i}"), -rng.gen_range(1..=5), i64::from(rng.gen_bool(0.15))))
        .collect();
    let mut contacts = Vec::new();
    for j in 1..n {
        let i = rng.gen_range(0..j);
        contacts.push(Contact { i, j, mult: rng.gen_range(1..=2), points: 1 });
    }
    // Close a cycle through E0 unless E0 and the last curve already meet.
    if n >= 3 && rng.gen_bool(0.2) && !contacts.iter().any(|c| (c.i, c.j) == (0, n - 1)) {
        contacts.push(Contact { i: 0, j: n - 1, mult: 1, points: 1 });
    }
    CurveConfiguration::new(components, contacts, vec![]).expect("valid by construction")
}

/// Smallest cycle ≥ the reduced one meeting every component non-positively,
/// among all cycles with coefficients up to `bound`. Anti-nef cycles are closed
/// under componentwise minimum, so the answer is exact whenever any exists.
pub fn anti_nef_search(config: &CurveConfiguration, bound: i64) -> Option<Vec<i64>> {
    let n = config.len();
    let mut best: Option<Vec<i64>> = None;
    let mut z = vec![1i64; n];
    loop {
        if config.pairing_vector(&z).iter().all(|&p| p <= 0) {
            best = Some(match best {
                None => z.clone(),
                Some(b) => b.iter().zip(&z).map(|(a, c)| *a.min(c)).collect(),
            });
        }
        let mut k = 0;
        while k < n && z[k] == bound {
            z[k] = 1;
            k += 1;
        }
        if k == n {
            return best;
        }
        z[k] += 1;
    }
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Rank as the size of the largest nonvanishing minor.
pub fn minor_rank(rows: &Matrix) -> usize {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            combinations(r, k).iter().any(|ri| {
                combinations(c, k).iter().any(|ci| {
                    let sub: Matrix = ri.iter().map(|&i| ci.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                    !det(&sub).is_zero()
                })
            })
        })
        .unwrap_or(0)
}

/// Compares Laufer's cycle with the exhaustive search on `target` random
/// negative definite configurations.
pub fn compare_laufer(seed: u64, target: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut compared, mut tried) = (0, 0);
    while compared < target {
        tried += 1;
        if tried > 100 * target {
            return Err(format!("only {compared} usable configurations in {tried} draws"));
        }
        let config = random_config(&mut rng);
        if !is_negative_definite(&config) {
            continue;
        }
        let Some(oracle) = anti_nef_search(&config, 6) else { continue };
        let laufer = fundamental_cycle(&config).map_err(|e| e.to_string())?;
        if laufer.coeffs != oracle {
            return Err(format!("{:?}: Laufer {:?}, search {oracle:?}", config.to_spec(), laufer.coeffs));
        }
        compared += 1;
    }
    Ok(compared)
}

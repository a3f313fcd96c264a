//! Exact rational scalars and the small amount of dense linear algebra the
//! engine needs (rank, determinants, linear solves).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// The scalar type used throughout the engine.
pub type Rat = BigRational;

/// Dense row-major matrix over [`Rat`].
pub type Matrix = Vec<Vec<Rat>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {input:?} as an exact rational")]
pub struct ParseRatError {
    pub input: String,
}

#[must_use]
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[must_use]
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `3`, `-3/2`; never a decimal point.
#[must_use]
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"7"`, `"-3/2"`, also accepting the typographic minus sign.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError { input: s.to_string() };
    let cleaned = s.trim().replace('\u{2212}', "-");
    if cleaned.is_empty() {
        return Err(err());
    }
    match cleaned.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = cleaned.parse().map_err(|_| err())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Returns the value as `i64` when it is an integer that fits.
#[must_use]
pub fn as_i64(q: &Rat) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Display adapter so callers can write `format!("{}", Show(&q))`.
pub struct Show<'a>(pub &'a Rat);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rat(self.0))
    }
}

#[must_use]
pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rat::zero(); cols]; rows]
}

#[must_use]
pub fn from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
}

#[must_use]
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// `a^T M b`.
#[must_use]
pub fn bilinear(m: &Matrix, a: &[Rat], b: &[Rat]) -> Rat {
    let mut total = Rat::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() || m[i][j].is_zero() {
                continue;
            }
            total += ai * &m[i][j] * bj;
        }
    }
    total
}

#[must_use]
pub fn mat_vec(m: &Matrix, v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

#[must_use]
pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

#[must_use]
pub fn is_symmetric(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, row)| row.len() == m.len() && row.iter().enumerate().all(|(j, v)| *v == m[j][i]))
}

/// Reduces `rows` in place to row echelon form and returns the rank.
fn echelon(rows: &mut Matrix) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over the rationals.
#[must_use]
pub fn rank(rows: &Matrix) -> usize {
    let mut work = rows.clone();
    echelon(&mut work)
}

/// Determinant by exact elimination.
#[must_use]
pub fn det(m: &Matrix) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut result = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            result = -result;
        }
        result *= &a[col][col];
        let inv = a[col][col].recip();
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot = &upper[col];
        for row in lower.iter_mut().filter(|row| !row[col].is_zero()) {
            let factor = &row[col] * &inv;
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= &factor * p;
            }
        }
    }
    result
}

/// Solves `A x = b` for square nonsingular `A`.
#[must_use]
pub fn solve(a: &Matrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap_or_default()).collect())
}

/// Principal submatrix on the given index set.
#[must_use]
pub fn principal(m: &Matrix, idx: &[usize]) -> Matrix {
    idx.iter().map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

#[must_use]
pub fn is_nonneg_integer(q: &Rat) -> bool {
    q.is_integer() && !q.is_negative()
}

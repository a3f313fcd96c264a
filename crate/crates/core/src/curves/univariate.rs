//! Dense univariate polynomials over ℚ, coefficients stored low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rat>);

impl UniPoly {
    #[must_use]
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    #[must_use]
    pub fn eval(&self, t: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }

    #[must_use]
    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(BigInt::from(i))).collect())
    }

    #[must_use]
    pub fn monic(&self) -> Self {
        match self.0.last() {
            Some(lead) => Self(self.0.iter().map(|c| c / lead).collect()),
            None => self.clone(),
        }
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    #[must_use]
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = &d.0[dd];
        let mut rem = self.0.clone();
        let mut quot = vec![Rat::zero(); self.0.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] / lead;
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    #[must_use]
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
    /// pairwise coprime monic square-free factors of positive degree.
    #[must_use]
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = sub(&c, &b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = sub(&c, &b.derivative());
            i += 1;
        }
        out
    }

    /// Distinct rational roots, by the rational root test on the
    /// integer-cleared polynomial.
    #[must_use]
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut p = self.clone();
        // Strip the root 0 first so the constant term is nonzero.
        if p.0[0].is_zero() {
            out.push(Rat::zero());
            let k = p.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
            p = Self::new(p.0[k..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        let ints = clear_denominators(&p.0);
        let lead = ints.last().expect("nonzero").abs();
        let cst = ints[0].abs();
        let nums = divisors(&cst);
        let dens = divisors(&lead);
        let mut seen = std::collections::BTreeSet::new();
        for n in &nums {
            for d in &dens {
                for sign in [1, -1] {
                    let r = Rat::new(BigInt::from(sign) * n, d.clone());
                    if seen.insert(r.clone()) && p.eval(&r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

fn sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.0.len().max(b.0.len());
    let z = Rat::zero();
    UniPoly::new((0..n).map(|i| a.0.get(i).unwrap_or(&z) - b.0.get(i).unwrap_or(&z)).collect())
}

fn clear_denominators(coeffs: &[Rat]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn yun_decomposition() {
        // (t − 1)² (t + 2) t³
        let f = p(&[-1, 2, -1]).mul(&p(&[2, 1])).mul(&p(&[0, 0, 0, 1]));
        let dec = f.squarefree_decomposition();
        let mults: Vec<(Option<usize>, u32)> = dec.iter().map(|(g, m)| (g.degree(), *m)).collect();
        assert_eq!(mults, vec![(Some(1), 1), (Some(1), 2), (Some(1), 3)]);
        assert_eq!(f.rational_roots(), vec![int(-2), int(0), int(1)]);
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2t − 3)(t² + 1)
        let f = p(&[-3, 2]).mul(&p(&[1, 0, 1]));
        assert_eq!(f.rational_roots(), vec![frac(3, 2)]);
        assert!(p(&[1, 1, 1]).rational_roots().is_empty());
    }

    #[test]
    fn division_identity() {
        let a = p(&[5, -3, 0, 2, 7]);
        let b = p(&[1, 0, 3]);
        let (q, r) = a.div_rem(&b);
        let back = q.mul(&b);
        let n = a.coeffs().len();
        for i in 0..n {
            let lhs = back.coeffs().get(i).cloned().unwrap_or_else(Rat::zero)
                + r.coeffs().get(i).cloned().unwrap_or_else(Rat::zero);
            assert_eq!(lhs, a.coeffs()[i]);
        }
        assert!(r.degree() < b.degree());
    }
}

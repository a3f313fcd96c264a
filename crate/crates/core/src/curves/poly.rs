//! Sparse multivariate polynomials over ℚ and a small expression parser.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{fmt_rat, int, parse_rat, Rat};

pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at column {column}")]
pub struct ParsePolyError {
    pub message: String,
    pub column: usize,
}

impl Poly {
    #[must_use]
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    #[must_use]
    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    #[must_use]
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    #[must_use]
    pub fn monomial(nvars: usize, exps: Exponents, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    #[must_use]
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn terms(&self) -> &BTreeMap<Exponents, Rat> {
        &self.terms
    }

    #[must_use]
    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    #[must_use]
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term: the multiplicity at the origin.
    #[must_use]
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    #[must_use]
    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.order()
    }

    #[must_use]
    pub fn homogeneous_part(&self, k: u32) -> Self {
        self.filter(|e| e.iter().sum::<u32>() == k)
    }

    /// Drops every term of total degree ≥ `n`.
    #[must_use]
    pub fn truncate(&self, n: u32) -> Self {
        self.filter(|e| e.iter().sum::<u32>() < n)
    }

    fn filter(&self, keep: impl Fn(&Exponents) -> bool) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    #[must_use]
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    #[must_use]
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, Rat::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    #[must_use]
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, &(c * int(i64::from(e[i]))));
            }
        }
        out
    }

    /// Substitutes `subs[i]` for variable `i`; the result lives in the
    /// ring of the substituted polynomials.
    #[must_use]
    pub fn compose(&self, subs: &[Poly]) -> Self {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let target = subs.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> =
            subs.iter().map(|s| vec![Self::constant(target, Rat::one()), s.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k];
            }
            out = &out + &term;
        }
        out
    }

    #[must_use]
    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc + t
        })
    }

    /// Divides by `var^k`, returning `None` unless every term is divisible.
    #[must_use]
    pub fn div_var_power(&self, var: usize, k: u32) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] < k {
                return None;
            }
            let mut f = e.clone();
            f[var] -= k;
            out.terms.insert(f, c.clone());
        }
        Some(out)
    }

    /// Parses expressions such as `y^3+y^2*z^2+z^6` or `3/2*x*(y-z)^2`.
    pub fn parse(input: &str, vars: &[&str]) -> Result<Self, ParsePolyError> {
        let mut p = Parser { chars: input.char_indices().collect(), pos: 0, vars, input };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(out)
    }

    /// Renders with the given variable names.
    #[must_use]
    pub fn render(&self, vars: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mono: Vec<String> = e
                .iter()
                .zip(vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { (*v).to_string() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_rat(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rat(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["x0", "x1", "x2", "x3", "x4", "x5"];
        f.write_str(&self.render(&NAMES[..self.nvars.min(NAMES.len())]))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: Self) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: Self) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Self) -> Poly {
        let mut acc: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    vars: &'a [&'a str],
    input: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParsePolyError {
        ParsePolyError { message: message.to_string(), column: self.pos + 1 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<Poly, ParsePolyError> {
        self.skip_ws();
        let mut negate = false;
        if let Some(c @ ('-' | '+' | '\u{2212}')) = self.peek() {
            negate = c != '+';
            self.pos += 1;
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-' | '\u{2212}') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParsePolyError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    acc = acc.scale(&d.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParsePolyError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let k = crate::rational::as_i64(&e)
                .and_then(|k| u32::try_from(k).ok())
                .ok_or_else(|| self.error("exponent must be a non-negative integer"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParsePolyError> {
        self.skip_ws();
        let n = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(n, self.number()?)),
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let (from, to) = (self.chars[start].0, self.chars.get(self.pos).map_or(self.input.len(), |&(i, _)| i));
                let name = &self.input[from..to];
                let i = self.vars.iter().position(|v| *v == name).ok_or_else(|| ParsePolyError {
                    message: format!("unknown variable {name:?}"),
                    column: start + 1,
                })?;
                Ok(Poly::var(n, i))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }

    fn number(&mut self) -> Result<Rat, ParsePolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        parse_rat(&digits).map_err(|_| self.error("bad number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn parse_and_render() {
        let p = Poly::parse("y^3+y^2*z^2+z^6", &XYZ).unwrap();
        assert_eq!(p.total_degree(), Some(6));
        assert_eq!(p.order(), Some(3));
        let q = Poly::parse("(x-y)^2 - x^2 + 2*x*y", &XYZ).unwrap();
        assert_eq!(q.render(&XYZ), "y^2");
        let r = Poly::parse("-3/2*x + x/2", &XYZ).unwrap();
        assert_eq!(r.render(&XYZ), "-x");
    }

    #[test]
    fn parse_errors_have_columns() {
        let e = Poly::parse("y^2 + w", &XYZ).unwrap_err();
        assert_eq!(e.column, 7);
        assert!(Poly::parse("(x+y", &XYZ).is_err());
        assert!(Poly::parse("x^-1", &XYZ).is_err());
    }

    #[test]
    fn compose_and_derivative() {
        let f = Poly::parse("x^2*y", &["x", "y"]).unwrap();
        let u = Poly::var(2, 0);
        let sub = [u.clone(), &u * &Poly::parse("y+1", &["x", "y"]).unwrap()];
        let g = f.compose(&sub);
        assert_eq!(g.render(&["u", "w"]), "u^3*w+u^3");
        assert_eq!(f.derivative(0).render(&["x", "y"]), "2*x*y");
        assert_eq!(g.div_var_power(0, 3).unwrap().render(&["u", "w"]), "w+1");
        assert!(g.div_var_power(0, 4).is_none());
    }
}

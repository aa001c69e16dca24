//! Sparse polynomials in `x1, y1, x2, y2` with coefficients in Q(sqrt(D)).

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use crate::quadring::{Discriminant, QuadElem};

/// Exponents of `(x1, y1, x2, y2)`.
pub type Monomial = [u32; 4];

pub const X1: usize = 0;
pub const Y1: usize = 1;
pub const X2: usize = 2;
pub const Y2: usize = 3;

/// The four bilinear monomials `x1 x2, x1 y2, y1 x2, y1 y2`, in that order.
pub const BILINEAR: [Monomial; 4] = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    disc: Discriminant,
    terms: BTreeMap<Monomial, QuadElem>,
}

impl MultiPoly {
    pub fn zero(disc: &Discriminant) -> Self {
        MultiPoly {
            disc: disc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: QuadElem) -> Self {
        let mut p = Self::zero(c.discriminant());
        p.add_term([0; 4], c);
        p
    }

    pub fn monomial(m: Monomial, c: QuadElem) -> Self {
        let mut p = Self::zero(c.discriminant());
        p.add_term(m, c);
        p
    }

    /// `sum c_i * m_i`.
    pub fn linear_combination(disc: &Discriminant, terms: &[(Monomial, QuadElem)]) -> Self {
        let mut p = Self::zero(disc);
        for (m, c) in terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    /// A cubic `sum coef_i * u^(3-i) v^i` in the two variables `u`, `v`
    /// (indices into the monomial), given plain coefficients.
    pub fn binary_cubic(coefs: &[QuadElem; 4], u: usize, v: usize) -> Self {
        let disc = coefs[0].discriminant().clone();
        let mut p = Self::zero(&disc);
        for (i, c) in coefs.iter().enumerate() {
            let mut m = [0; 4];
            m[u] = 3 - i as u32;
            m[v] += i as u32;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn discriminant(&self) -> &Discriminant {
        &self.disc
    }

    pub fn add_term(&mut self, m: Monomial, c: QuadElem) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> QuadElem {
        self.terms.get(m).cloned().unwrap_or_else(|| QuadElem::zero(&self.disc))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QuadElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.disc.one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.disc);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &QuadElem) -> Self {
        let mut out = Self::zero(&self.disc);
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.disc.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rational parts of all coefficients.
    pub fn rational_part(&self) -> Self {
        self.map_coefficients(|c| c.rational_part().clone())
    }

    /// Coefficients of `tau` (twice the `sqrt(D)` coordinate).
    pub fn tau_part(&self) -> Self {
        self.map_coefficients(QuadElem::tau_part)
    }

    fn map_coefficients(&self, f: impl Fn(&QuadElem) -> BigRational) -> Self {
        let mut out = Self::zero(&self.disc);
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.add_term(*m, QuadElem::from_rational(&self.disc, v));
            }
        }
        out
    }

    /// `f(X, Y)` for a plain-coefficient cubic `f`.
    pub fn substitute_cubic(coefs: &[QuadElem; 4], x: &Self, y: &Self) -> Self {
        let disc = x.disc.clone();
        let x2 = x.mul(x);
        let y2 = y.mul(y);
        let powers = [x2.mul(x), x2.mul(y), x.mul(&y2), y2.mul(y)];
        powers
            .iter()
            .zip(coefs)
            .fold(Self::zero(&disc), |acc, (p, c)| acc.add(&p.scale(c)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["x1", "y1", "x2", "y2"];
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = NAMES
                .iter()
                .zip(m)
                .filter(|(_, e)| **e > 0)
                .map(|(name, e)| {
                    if *e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            if c.sqrt_part().is_zero() {
                let v = c.rational_part();
                let sign = if v.is_negative() { "-" } else { "+" };
                match (k, sign) {
                    (0, "-") => write!(f, "-")?,
                    (0, _) => {}
                    _ => write!(f, " {sign} ")?,
                }
                let v = v.abs();
                if mono.is_empty() {
                    write!(f, "{v}")?;
                } else if v.is_one() {
                    write!(f, "{mono}")?;
                } else {
                    write!(f, "{v}*{mono}")?;
                }
            } else {
                if k > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({c})")?;
                if !mono.is_empty() {
                    write!(f, "*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

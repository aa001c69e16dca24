//! Binary cubic forms `a0 x^3 + 3 a1 x^2 y + 3 a2 x y^2 + a3 y^3`.
//!
//! Forms are always stored in the triplicate convention: the quadruple
//! `(a0, a1, a2, a3)`, not the displayed polynomial coefficients. A form
//! written `x^3 - 6x^2y + y^3` is stored as `(1, -2, 0, 1)`.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadring::Discriminant;

/// Integral cubic form in the triplicate convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicForm {
    pub a: [BigInt; 4],
}

/// The half-integral covariant `p'`, also in the triplicate convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CovariantForm {
    pub c: [BigRational; 4],
}

/// `q0 x^2 + q1 x y + q2 y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HessianQuad {
    pub q: [BigInt; 3],
}

/// An element `[[p, q], [r, s]]` of SL2(Z).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unimodular {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl Unimodular {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        if &p * &s - &q * &r != BigInt::one() {
            return Err(Error::NotUnimodular(format!("{p},{q},{r},{s}")));
        }
        Ok(Unimodular { p, q, r, s })
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    pub fn identity() -> Self {
        Unimodular {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// `[[1, 1], [0, 1]]`
    pub fn t() -> Self {
        Self::from_i64(1, 1, 0, 1).unwrap()
    }

    /// `[[1, -1], [0, 1]]`
    pub fn t_inv() -> Self {
        Self::from_i64(1, -1, 0, 1).unwrap()
    }

    /// `[[0, -1], [1, 0]]`
    pub fn s() -> Self {
        Self::from_i64(0, -1, 1, 0).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Unimodular {
            p: &self.p * &other.p + &self.q * &other.r,
            q: &self.p * &other.q + &self.q * &other.s,
            r: &self.r * &other.p + &self.s * &other.r,
            s: &self.r * &other.q + &self.s * &other.s,
        }
    }

    pub fn inverse(&self) -> Self {
        Unimodular {
            p: self.s.clone(),
            q: -&self.q,
            r: -&self.r,
            s: self.p.clone(),
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }
}

impl fmt::Display for Unimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.p, self.q, self.r, self.s)
    }
}

impl FromStr for Unimodular {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let [p, q, r, s] = parse_ints::<4>(s)?;
        Unimodular::new(p, q, r, s)
    }
}

pub(crate) fn parse_ints<const N: usize>(text: &str) -> Result<[BigInt; N]> {
    let parts: Vec<BigInt> = text
        .split(',')
        .map(|p| p.trim().parse::<BigInt>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("expected {N} comma-separated integers, got {text:?}")))?;
    parts
        .try_into()
        .map_err(|_| Error::Parse(format!("expected {N} comma-separated integers, got {text:?}")))
}

/// Product of two binary forms given by coefficient vectors of
/// `x^n, x^(n-1) y, ..., y^n`.
pub(crate) fn binary_mul<T: Clone + Num>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

/// `f(p x + q y, r x + s y)` for a cubic with plain coefficients.
pub(crate) fn substitute<T: Clone + Num + From<BigInt>>(raw: &[T; 4], g: &Unimodular) -> [T; 4] {
    let lx = [T::from(g.p.clone()), T::from(g.q.clone())];
    let ly = [T::from(g.r.clone()), T::from(g.s.clone())];
    let x2 = binary_mul(&lx, &lx);
    let y2 = binary_mul(&ly, &ly);
    let terms = [
        binary_mul(&x2, &lx),
        binary_mul(&x2, &ly),
        binary_mul(&lx, &y2),
        binary_mul(&y2, &ly),
    ];
    let mut out: [T; 4] = std::array::from_fn(|_| T::zero());
    for (coef, term) in raw.iter().zip(terms.iter()) {
        for (o, t) in out.iter_mut().zip(term.iter()) {
            *o = o.clone() + coef.clone() * t.clone();
        }
    }
    out
}

impl CubicForm {
    pub fn new(a: [BigInt; 4]) -> Self {
        CubicForm { a }
    }

    pub fn from_i64(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        CubicForm::new([a0.into(), a1.into(), a2.into(), a3.into()])
    }

    /// From plain polynomial coefficients `b0 x^3 + b1 x^2 y + b2 x y^2 + b3 y^3`;
    /// `b1` and `b2` must be divisible by 3.
    pub fn from_expanded(b: [BigInt; 4]) -> Result<Self> {
        let three = BigInt::from(3);
        let [b0, b1, b2, b3] = b;
        for m in [&b1, &b2] {
            if !m.is_multiple_of(&three) {
                return Err(Error::Parse(format!("middle coefficient {m} is not divisible by 3")));
            }
        }
        Ok(CubicForm::new([b0, b1 / &three, b2 / &three, b3]))
    }

    /// Plain polynomial coefficients `(a0, 3a1, 3a2, a3)`.
    pub fn expanded(&self) -> [BigInt; 4] {
        let [a0, a1, a2, a3] = &self.a;
        [a0.clone(), a1 * 3, a2 * 3, a3.clone()]
    }

    pub fn discriminant(&self) -> BigInt {
        let [a0, a1, a2, a3] = &self.a;
        a0 * a0 * a3 * a3 - 3 * a1 * a1 * a2 * a2 + 4 * a1 * a1 * a1 * a3 + 4 * a0 * a2 * a2 * a2
            - 6 * a0 * a1 * a2 * a3
    }

    /// Hessian coefficients `(a1^2 - a0 a2, a1 a2 - a0 a3, a2^2 - a1 a3)`.
    pub fn hessian(&self) -> HessianQuad {
        let [a0, a1, a2, a3] = &self.a;
        HessianQuad {
            q: [a1 * a1 - a0 * a2, a1 * a2 - a0 * a3, a2 * a2 - a1 * a3],
        }
    }

    pub fn is_projective(&self) -> bool {
        self.hessian().content().is_one()
    }

    pub fn act(&self, g: &Unimodular) -> CubicForm {
        let raw = substitute(&self.expanded(), g);
        CubicForm::from_expanded(raw).expect("integral substitution keeps middle coefficients divisible by 3")
    }

    pub fn covariant(&self) -> CovariantForm {
        let [a0, a1, a2, a3] = &self.a;
        let twice: [BigInt; 4] = [
            2 * a1 * a1 * a1 - 3 * a0 * a1 * a2 + a0 * a0 * a3,
            a1 * a1 * a2 - 2 * a0 * a2 * a2 + a0 * a1 * a3,
            2 * a1 * a1 * a3 - a1 * a2 * a2 - a0 * a2 * a3,
            3 * a1 * a2 * a3 - 2 * a2 * a2 * a2 - a0 * a3 * a3,
        ];
        CovariantForm {
            c: twice.map(|v| BigRational::new(v, BigInt::from(2))),
        }
    }

    /// Checks `p'^2 - (D/4) p^2 = q^3` as a polynomial identity, where `q`
    /// is the Hessian.
    pub fn syzygy_check(&self) -> bool {
        let p: Vec<BigRational> = self.expanded().into_iter().map(BigRational::from_integer).collect();
        let pc = self.covariant().expanded().to_vec();
        let q: Vec<BigRational> = self.hessian().q.into_iter().map(BigRational::from_integer).collect();
        let quarter = BigRational::new(self.discriminant(), BigInt::from(4));
        let lhs: Vec<BigRational> = binary_mul(&pc, &pc)
            .into_iter()
            .zip(binary_mul(&p, &p))
            .map(|(a, b)| a - &quarter * b)
            .collect();
        let rhs = binary_mul(&binary_mul(&q, &q), &q);
        lhs == rhs
    }

    /// Checks that this form is projective with discriminant `disc`.
    pub fn require(&self, disc: &Discriminant) -> Result<()> {
        let own = self.discriminant();
        if &own != disc.value() {
            return Err(Error::DiscriminantMismatch {
                left: own.to_string(),
                right: disc.to_string(),
            });
        }
        if !self.is_projective() {
            return Err(Error::NotProjective(self.to_string()));
        }
        Ok(())
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.a.iter().map(|v| v.abs()).max().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = &self.a;
        write!(f, "{a0},{a1},{a2},{a3}")
    }
}

impl FromStr for CubicForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(CubicForm::new(parse_ints::<4>(s)?))
    }
}

impl CovariantForm {
    /// Plain polynomial coefficients `(c0, 3c1, 3c2, c3)`.
    pub fn expanded(&self) -> [BigRational; 4] {
        let three = BigInt::from(3);
        let [c0, c1, c2, c3] = &self.c;
        [c0.clone(), c1 * &three, c2 * &three, c3.clone()]
    }

    pub fn act(&self, g: &Unimodular) -> CovariantForm {
        let [b0, b1, b2, b3] = substitute(&self.expanded(), g);
        let three = BigInt::from(3);
        CovariantForm {
            c: [b0, b1 / &three, b2 / &three, b3],
        }
    }

    /// `2 c_i` as integers, or `None` when some coefficient is not a half-integer.
    pub fn doubled(&self) -> Option<[BigInt; 4]> {
        let two = BigInt::from(2);
        let v: Vec<BigInt> = self
            .c
            .iter()
            .map(|c| c * &two)
            .filter(|c| c.is_integer())
            .map(|c| c.to_integer())
            .collect();
        v.try_into().ok()
    }
}

impl fmt::Display for CovariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = &self.c;
        write!(f, "{c0},{c1},{c2},{c3}")
    }
}

impl HessianQuad {
    pub fn content(&self) -> BigInt {
        self.q.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
    }

    /// `q1^2 - 4 q0 q2`.
    pub fn discriminant(&self) -> BigInt {
        let [q0, q1, q2] = &self.q;
        q1 * q1 - 4 * q0 * q2
    }
}

impl fmt::Display for HessianQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [q0, q1, q2] = &self.q;
        write!(f, "{q0},{q1},{q2}")
    }
}

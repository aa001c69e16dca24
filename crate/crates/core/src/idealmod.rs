//! Oriented rank-2 modules over R_D given by an ordered Z-basis.
//!
//! The norm of an ideal is signed: it is the orientation of its ordered
//! basis, i.e. the determinant of the basis in `(1, omega)` coordinates.
//! Balanced pairs compare this signed norm against the norm of `delta`.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadring::{Discriminant, QuadElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedIdeal {
    alpha: QuadElem,
    beta: QuadElem,
}

impl OrientedIdeal {
    /// Checks that `(alpha, beta)` is a nondegenerate basis of a module
    /// over R_D.
    pub fn new(alpha: QuadElem, beta: QuadElem) -> Result<Self> {
        if QuadElem::orientation(&alpha, &beta)?.is_zero() {
            return Err(Error::DegenerateBasis);
        }
        let ideal = OrientedIdeal { alpha, beta };
        let omega = ideal.discriminant().omega();
        for e in [&ideal.alpha, &ideal.beta] {
            ideal.express_in_basis(&(&omega * e)).map_err(|_| Error::NotAnIdeal)?;
        }
        Ok(ideal)
    }

    /// R_D with basis `(1, omega)`.
    pub fn unit(disc: &Discriminant) -> Self {
        OrientedIdeal {
            alpha: disc.one(),
            beta: disc.omega(),
        }
    }

    /// The principal ideal `e R_D` with basis `(e, e*omega)`.
    pub fn principal(e: &QuadElem) -> Result<Self> {
        if e.is_zero() {
            return Err(Error::DegenerateBasis);
        }
        let omega = e.discriminant().omega();
        Ok(OrientedIdeal {
            alpha: e.clone(),
            beta: e * &omega,
        })
    }

    pub fn alpha(&self) -> &QuadElem {
        &self.alpha
    }

    pub fn beta(&self) -> &QuadElem {
        &self.beta
    }

    pub fn discriminant(&self) -> &Discriminant {
        self.alpha.discriminant()
    }

    pub fn signed_norm(&self) -> BigRational {
        QuadElem::orientation(&self.alpha, &self.beta).expect("basis shares a discriminant")
    }

    pub fn is_integral(&self) -> bool {
        self.alpha.is_in_ring() && self.beta.is_in_ring()
    }

    /// The same module with `beta` negated, flipping the orientation.
    pub fn flipped(&self) -> Self {
        OrientedIdeal {
            alpha: self.alpha.clone(),
            beta: -&self.beta,
        }
    }

    /// Canonical basis `(a, b + c*omega)` with `a, c > 0` and `0 <= b < a`,
    /// and `beta` negated when the input orientation is negative.
    pub fn hnf(&self) -> Self {
        let positive = self.signed_norm().is_positive();
        hnf_of_span(self.discriminant(), &[self.alpha.clone(), self.beta.clone()], positive)
            .expect("a valid ideal has full rank")
    }

    /// Module equality, ignoring orientation.
    pub fn same_module(&self, other: &Self) -> bool {
        let a = self.hnf();
        let b = other.hnf();
        let a = if a.signed_norm().is_negative() { a.flipped() } else { a };
        let b = if b.signed_norm().is_negative() { b.flipped() } else { b };
        a == b
    }

    /// Ideal product, oriented so that its signed norm is the product of
    /// the factors' signed norms.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.discriminant() != other.discriminant() {
            return Err(Error::DiscriminantMismatch {
                left: self.discriminant().to_string(),
                right: other.discriminant().to_string(),
            });
        }
        let gens = self.generator_products(other);
        let positive = (self.signed_norm() * other.signed_norm()).is_positive();
        hnf_of_span(self.discriminant(), &gens, positive)
    }

    /// `u1 u2, u1 v2, v1 u2, v1 v2`.
    pub fn generator_products(&self, other: &Self) -> [QuadElem; 4] {
        [
            &self.alpha * &other.alpha,
            &self.alpha * &other.beta,
            &self.beta * &other.alpha,
            &self.beta * &other.beta,
        ]
    }

    /// Integers `(m, n)` with `e = m*alpha + n*beta`.
    pub fn express_in_basis(&self, e: &QuadElem) -> Result<(BigInt, BigInt)> {
        let det = self.signed_norm();
        let m = QuadElem::orientation(e, &self.beta)? / &det;
        let n = QuadElem::orientation(&self.alpha, e)? / &det;
        if !m.is_integer() || !n.is_integer() {
            return Err(Error::NotInModule(e.to_string()));
        }
        Ok((m.to_integer(), n.to_integer()))
    }

    pub fn contains(&self, e: &QuadElem) -> bool {
        self.express_in_basis(e).is_ok()
    }

    /// `|[R_D : J]|` from the integer coordinate matrix, for integral `J`.
    pub fn index_in_ring(&self) -> Option<BigInt> {
        if !self.is_integral() {
            return None;
        }
        let (ax, ay) = self.alpha.omega_coords();
        let (bx, by) = self.beta.omega_coords();
        let det = ax.to_integer() * by.to_integer() - bx.to_integer() * ay.to_integer();
        Some(det.abs())
    }
}

impl fmt::Display for OrientedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}]", self.alpha, self.beta)
    }
}

/// Hermite form of the Z-span of `gens`, computed on `(1, omega)`
/// coordinates scaled to integers.
pub(crate) fn hnf_of_span(disc: &Discriminant, gens: &[QuadElem], positive: bool) -> Result<OrientedIdeal> {
    let coords: Vec<(BigRational, BigRational)> = gens.iter().map(QuadElem::omega_coords).collect();
    let scale = coords
        .iter()
        .flat_map(|(x, y)| [x.denom(), y.denom()])
        .fold(BigInt::one(), |l, d| l.lcm(d));
    let mut rows: Vec<[BigInt; 2]> = coords
        .iter()
        .map(|(x, y)| [(x * &scale).to_integer(), (y * &scale).to_integer()])
        .collect();

    // Euclid on the omega column until a single row carries it.
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[1].is_zero())
            .min_by_key(|(_, r)| r[1].abs())
            .map(|(i, _)| i);
        let Some(pivot) = pivot else {
            return Err(Error::DegenerateBasis);
        };
        let prow = rows[pivot].clone();
        let mut done = true;
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot || row[1].is_zero() {
                continue;
            }
            let k = row[1].div_floor(&prow[1]);
            row[0] -= &k * &prow[0];
            row[1] -= &k * &prow[1];
            if !row[1].is_zero() {
                done = false;
            }
        }
        if done {
            let mut pivot_row = rows.swap_remove(pivot);
            let a = rows.iter().fold(BigInt::zero(), |g, r| g.gcd(&r[0]));
            if a.is_zero() {
                return Err(Error::DegenerateBasis);
            }
            if pivot_row[1].is_negative() {
                pivot_row = [-&pivot_row[0], -&pivot_row[1]];
            }
            let b = pivot_row[0].mod_floor(&a);
            let c = pivot_row[1].clone();
            let to_rat = |v: BigInt| BigRational::new(v, scale.clone());
            let alpha = QuadElem::from_omega_coords(disc, to_rat(a), BigRational::zero());
            let beta = QuadElem::from_omega_coords(disc, to_rat(b), to_rat(c));
            let beta = if positive { beta } else { -beta };
            return Ok(OrientedIdeal { alpha, beta });
        }
    }
}

/// An oriented ideal `J` together with `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPair {
    pub ideal: OrientedIdeal,
    pub delta: QuadElem,
}

/// Outcome of checking the two balanced-pair conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    /// `delta^-1 alpha^(3-i) beta^i` lies in R_D for `i = 0..3`.
    pub cube_contained: bool,
    /// `N(J)^3 = N(delta)` with the signed ideal norm.
    pub norm_balanced: bool,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.cube_contained && self.norm_balanced
    }
}

impl BalancedPair {
    pub fn new(ideal: OrientedIdeal, delta: QuadElem) -> Self {
        BalancedPair { ideal, delta }
    }

    /// The quotients `delta^-1 alpha^(3-i) beta^i`.
    pub fn cube_quotients(&self) -> Result<[QuadElem; 4]> {
        let inv = self.delta.inv()?;
        let a = self.ideal.alpha();
        let b = self.ideal.beta();
        let a2 = a * a;
        let b2 = b * b;
        Ok([
            &(&a2 * a) * &inv,
            &(&a2 * b) * &inv,
            &(a * &b2) * &inv,
            &(&b2 * b) * &inv,
        ])
    }

    pub fn validate(&self) -> PairReport {
        let cube_contained = match self.cube_quotients() {
            Ok(qs) => qs.iter().all(QuadElem::is_in_ring),
            Err(_) => false,
        };
        let n = self.ideal.signed_norm();
        let norm_balanced = !self.delta.is_zero() && &n * &n * &n == self.delta.norm();
        PairReport {
            cube_contained,
            norm_balanced,
        }
    }
}

impl fmt::Display for BalancedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ideal, self.delta)
    }
}

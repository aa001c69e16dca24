//! Composition of projective cubic forms of a fixed discriminant.
//!
//! Given `p1`, `p2` with pairs `(J1, d1)`, `(J2, d2)`, the composite `P`
//! is read off `(J1 J2, d1 d2)` and the bilinear maps `X`, `Y` come from
//! writing the four generator products of `J1 J2` in the basis of the
//! product. Every result is checked symbolically:
//!
//! ```text
//! P(X, Y)  = p1' p2 + p1 p2'
//! P'(X, Y) = p1' p2' + (D/4) p1 p2
//! ```

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};

use crate::bijection::{form_to_pair, pair_to_form};
use crate::cubicform::{parse_ints, CovariantForm, CubicForm};
use crate::error::{Error, Result};
use crate::idealmod::BalancedPair;
use crate::poly::{MultiPoly, BILINEAR, X1, X2, Y1, Y2};
use crate::quadring::{Discriminant, QuadElem};

/// `p' + p tau`, with coefficients `c_i + a_i tau` in the triplicate
/// convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeForm {
    pub coefs: [QuadElem; 4],
}

impl TildeForm {
    /// Plain polynomial coefficients.
    pub fn expanded(&self) -> [QuadElem; 4] {
        let three = BigRational::from_integer(BigInt::from(3));
        let [t0, t1, t2, t3] = &self.coefs;
        [t0.clone(), t1.scale(&three), t2.scale(&three), t3.clone()]
    }
}

impl fmt::Display for TildeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t0, t1, t2, t3] = &self.coefs;
        write!(f, "{t0}, {t1}, {t2}, {t3}")
    }
}

pub fn tilde(f: &CubicForm, disc: &Discriminant) -> TildeForm {
    let cov = f.covariant();
    let coefs = std::array::from_fn(|i| {
        QuadElem::from_tau_coords(disc, cov.c[i].clone(), BigRational::from_integer(f.a[i].clone()))
    });
    TildeForm { coefs }
}

/// `X = m1 x1x2 + m2 x1y2 + m3 y1x2 + m4 y1y2`, `Y` likewise with `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    pub m: [BigInt; 4],
    pub n: [BigInt; 4],
}

impl BilinearMap {
    pub fn new(m: [BigInt; 4], n: [BigInt; 4]) -> Self {
        BilinearMap { m, n }
    }

    pub fn from_i64(m: [i64; 4], n: [i64; 4]) -> Self {
        BilinearMap::new(m.map(BigInt::from), n.map(BigInt::from))
    }

    pub fn x_poly(&self, disc: &Discriminant) -> MultiPoly {
        bilinear_poly(&self.m, disc)
    }

    pub fn y_poly(&self, disc: &Discriminant) -> MultiPoly {
        bilinear_poly(&self.n, disc)
    }
}

fn bilinear_poly(coefs: &[BigInt; 4], disc: &Discriminant) -> MultiPoly {
    let terms: Vec<_> = BILINEAR
        .iter()
        .zip(coefs)
        .map(|(mono, c)| (*mono, QuadElem::from_integer(disc, c.clone())))
        .collect();
    MultiPoly::linear_combination(disc, &terms)
}

/// Parses `"m1,m2,m3,m4"`.
pub fn parse_bilinear_coefficients(text: &str) -> Result<[BigInt; 4]> {
    parse_ints::<4>(text)
}

impl fmt::Display for BilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [m1, m2, m3, m4] = &self.m;
        let [n1, n2, n3, n4] = &self.n;
        write!(f, "X={m1},{m2},{m3},{m4} Y={n1},{n2},{n3},{n4}")
    }
}

impl FromStr for BilinearMap {
    type Err = Error;

    /// `"m1,m2,m3,m4;n1,n2,n3,n4"`.
    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected X;Y, got {s:?}")))?;
        Ok(BilinearMap::new(parse_ints::<4>(x)?, parse_ints::<4>(y)?))
    }
}

fn form_coefs(f: &CubicForm, disc: &Discriminant) -> [QuadElem; 4] {
    f.expanded().map(|a| QuadElem::from_integer(disc, a))
}

fn covariant_coefs(c: &CovariantForm, disc: &Discriminant) -> [QuadElem; 4] {
    c.expanded().map(|v| QuadElem::from_rational(disc, v))
}

/// `p(x1, y1)` style embedding of a plain cubic.
fn left(coefs: &[QuadElem; 4]) -> MultiPoly {
    MultiPoly::binary_cubic(coefs, X1, Y1)
}

fn right(coefs: &[QuadElem; 4]) -> MultiPoly {
    MultiPoly::binary_cubic(coefs, X2, Y2)
}

/// `p~1(x1, y1) p~2(x2, y2)`.
pub fn tilde_product(f1: &CubicForm, f2: &CubicForm, disc: &Discriminant) -> Result<MultiPoly> {
    for f in [f1, f2] {
        let own = f.discriminant();
        if &own != disc.value() {
            return Err(Error::DiscriminantMismatch {
                left: own.to_string(),
                right: disc.to_string(),
            });
        }
    }
    let t1 = left(&tilde(f1, disc).expanded());
    let t2 = right(&tilde(f2, disc).expanded());
    Ok(t1.mul(&t2))
}

/// `p1' p2 + p1 p2'`, the `tau` part of the tilde product.
pub fn mixed_product(f1: &CubicForm, f2: &CubicForm, disc: &Discriminant) -> MultiPoly {
    let p1 = left(&form_coefs(f1, disc));
    let p2 = right(&form_coefs(f2, disc));
    let q1 = left(&covariant_coefs(&f1.covariant(), disc));
    let q2 = right(&covariant_coefs(&f2.covariant(), disc));
    q1.mul(&p2).add(&p1.mul(&q2))
}

/// `p1' p2' + (D/4) p1 p2`, the rational part of the tilde product.
pub fn rational_product(f1: &CubicForm, f2: &CubicForm, disc: &Discriminant) -> MultiPoly {
    let p1 = left(&form_coefs(f1, disc));
    let p2 = right(&form_coefs(f2, disc));
    let q1 = left(&covariant_coefs(&f1.covariant(), disc));
    let q2 = right(&covariant_coefs(&f2.covariant(), disc));
    let quarter = QuadElem::from_rational(disc, disc.quarter());
    q1.mul(&q2).add(&p1.mul(&p2).scale(&quarter))
}

/// Outcome of the two symbolic identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    /// `P(X, Y) = p1' p2 + p1 p2'`.
    pub form_identity: bool,
    /// `P'(X, Y) = p1' p2' + (D/4) p1 p2`.
    pub covariant_identity: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.form_identity && self.covariant_identity
    }
}

fn check_identities(
    f1: &CubicForm,
    f2: &CubicForm,
    big: &CubicForm,
    xy: &BilinearMap,
    disc: &Discriminant,
) -> Verification {
    let x = xy.x_poly(disc);
    let y = xy.y_poly(disc);
    let lhs = MultiPoly::substitute_cubic(&form_coefs(big, disc), &x, &y);
    let form_identity = lhs == mixed_product(f1, f2, disc);
    let lhs = MultiPoly::substitute_cubic(&covariant_coefs(&big.covariant(), disc), &x, &y);
    let covariant_identity = lhs == rational_product(f1, f2, disc);
    Verification {
        form_identity,
        covariant_identity,
    }
}

/// Checks the defining identity `P(X, Y) = p1' p2 + p1 p2'` for a given
/// candidate. Returns `false` on any precondition failure.
pub fn verify_composition(f1: &CubicForm, f2: &CubicForm, big: &CubicForm, xy: &BilinearMap) -> bool {
    let Ok(disc) = Discriminant::new(f1.discriminant()) else {
        return false;
    };
    if f2.discriminant() != *disc.value() || big.require(&disc).is_err() {
        return false;
    }
    check_identities(f1, f2, big, xy, &disc).form_identity
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub form: CubicForm,
    pub xy: BilinearMap,
    pub pair: BalancedPair,
    pub verification: Verification,
}

pub fn compose(f1: &CubicForm, f2: &CubicForm, disc: &Discriminant) -> Result<CompositionResult> {
    let pair1 = form_to_pair(f1, disc)?;
    let pair2 = form_to_pair(f2, disc)?;
    let ideal = pair1.ideal.product(&pair2.ideal)?;
    let mut m: Vec<BigInt> = Vec::with_capacity(4);
    let mut n: Vec<BigInt> = Vec::with_capacity(4);
    for g in pair1.ideal.generator_products(&pair2.ideal) {
        let (mi, ni) = ideal
            .express_in_basis(&g)
            .map_err(|e| Error::Internal(format!("generator outside product ideal: {e}")))?;
        m.push(mi);
        n.push(ni);
    }
    let xy = BilinearMap::new(m.try_into().unwrap(), n.try_into().unwrap());
    let pair = BalancedPair::new(ideal, &pair1.delta * &pair2.delta);
    let form = pair_to_form(&pair)?;
    form.require(disc)
        .map_err(|e| Error::Internal(format!("composite {form} is invalid: {e}")))?;
    let verification = check_identities(f1, f2, &form, &xy, disc);
    if !verification.passed() {
        return Err(Error::Internal(format!(
            "composition of {f1} and {f2} failed verification: {verification:?}"
        )));
    }
    Ok(CompositionResult {
        form,
        xy,
        pair,
        verification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadring::rat;

    fn d(v: i64) -> Discriminant {
        Discriminant::from_i64(v).unwrap()
    }

    fn cf(a0: i64, a1: i64, a2: i64, a3: i64) -> CubicForm {
        CubicForm::from_i64(a0, a1, a2, a3)
    }

    #[test]
    fn tilde_coefficients() {
        let disc = d(5);
        let t = tilde(&cf(-1, 1, 0, 1), &disc);
        let expect = [
            QuadElem::new(&disc, rat(3, 2), rat(-1, 2)),
            QuadElem::new(&disc, rat(-1, 2), rat(1, 2)),
            QuadElem::new(&disc, rat(1, 1), rat(0, 1)),
            QuadElem::new(&disc, rat(1, 2), rat(1, 2)),
        ];
        assert_eq!(t.coefs, expect);

        let disc = d(-20);
        let tau = disc.tau();
        let q = QuadElem::from_rational(&disc, disc.quarter());
        let t = tilde(&cf(0, 1, 0, -5), &disc);
        assert_eq!(t.coefs, [disc.one(), tau.clone(), q.clone(), &q * &tau]);
    }

    #[test]
    fn tilde_product_parts() {
        let disc = d(-31);
        let (f1, f2) = (cf(-1, -1, 1, 4), cf(1, -2, 0, 1));
        let prod = tilde_product(&f1, &f2, &disc).unwrap();
        assert_eq!(prod.tau_part(), mixed_product(&f1, &f2, &disc));
        assert_eq!(prod.rational_part(), rational_product(&f1, &f2, &disc));
        let tau = prod.tau_part();
        assert_eq!(tau.coefficient(&[3, 0, 3, 0]).rational_part(), &rat(7, 1));
        assert_eq!(tau.coefficient(&[2, 1, 2, 1]).rational_part(), &rat(-54, 1));
        assert!(tilde_product(&f1, &cf(-1, 1, 0, 1), &disc).is_err());
    }

    #[test]
    fn reference_witnesses_verify() {
        let xy = BilinearMap::from_i64([1, 0, 1, -1], [0, 2, 4, 1]);
        assert!(verify_composition(
            &cf(-1, -1, 1, 4),
            &cf(1, -2, 0, 1),
            &cf(7, 1, -1, 0),
            &xy
        ));
        let xy = BilinearMap::from_i64([1, 0, 0, 1], [0, 1, 1, 1]);
        assert!(verify_composition(
            &cf(-1, 1, 0, 1),
            &cf(-3, 2, -1, 1),
            &cf(-8, 5, -3, 2),
            &xy
        ));
        let bad = BilinearMap::from_i64([1, 0, 0, 2], [0, 1, 1, 1]);
        assert!(!verify_composition(
            &cf(-1, 1, 0, 1),
            &cf(-3, 2, -1, 1),
            &cf(-8, 5, -3, 2),
            &bad
        ));
    }

    #[test]
    fn compose_verifies() {
        let disc = d(-31);
        let r = compose(&cf(-1, -1, 1, 4), &cf(1, -2, 0, 1), &disc).unwrap();
        assert!(r.verification.passed());
        assert_eq!(r.form.discriminant(), BigInt::from(-31));
        assert!(verify_composition(&cf(-1, -1, 1, 4), &cf(1, -2, 0, 1), &r.form, &r.xy));
        let disc = d(5);
        let r = compose(&cf(-1, 1, 0, 1), &cf(-3, 2, -1, 1), &disc).unwrap();
        assert!(r.verification.passed());
    }

    #[test]
    fn compose_rejects_bad_input() {
        let disc = d(5);
        assert!(compose(&cf(-1, 1, 0, 1), &cf(-1, -1, 1, 4), &disc).is_err());
        assert!(matches!(
            compose(&cf(-2, 2, 0, 2), &cf(-1, 1, 0, 1), &disc),
            Err(Error::DiscriminantMismatch { .. })
        ));
    }

    #[test]
    fn bilinear_parse() {
        let xy: BilinearMap = "1,0,1,-1;0,2,4,1".parse().unwrap();
        assert_eq!(xy, BilinearMap::from_i64([1, 0, 1, -1], [0, 2, 4, 1]));
        assert!("1,0,1".parse::<BilinearMap>().is_err());
    }
}

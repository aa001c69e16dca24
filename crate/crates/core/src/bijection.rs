//! The correspondence between cubic forms of discriminant `D` and balanced
//! pairs `(J, delta)`.
//!
//! Forward: `alpha = c1 + a1 tau`, `beta = c2 + a2 tau`, `delta = alpha beta`.
//! Backward: `delta^-1 alpha^(3-i) beta^i = c_i + a_i tau`.

use num::{BigInt, BigRational, Signed};

use crate::composition::tilde;
use crate::cubicform::{CovariantForm, CubicForm};
use crate::error::{Error, Result};
use crate::idealmod::{BalancedPair, OrientedIdeal};
use crate::poly::{MultiPoly, X1, Y1};
use crate::quadring::{Discriminant, QuadElem};

/// Maps a projective form of discriminant `disc` to its balanced pair.
///
/// The basis `(alpha, beta)` is kept exactly as produced, even when its
/// orientation is negative.
pub fn form_to_pair(f: &CubicForm, disc: &Discriminant) -> Result<BalancedPair> {
    f.require(disc)?;
    let cov = f.covariant();
    let alpha = QuadElem::from_tau_coords(disc, cov.c[1].clone(), BigRational::from_integer(f.a[1].clone()));
    let beta = QuadElem::from_tau_coords(disc, cov.c[2].clone(), BigRational::from_integer(f.a[2].clone()));
    let ideal = OrientedIdeal::new(alpha, beta).map_err(|e| match e {
        Error::DegenerateBasis => Error::Internal(format!("degenerate basis for form {f}")),
        other => Error::Internal(format!("form {f} does not give an ideal: {other}")),
    })?;
    let delta = ideal.alpha() * ideal.beta();
    let pair = BalancedPair::new(ideal, delta);
    if !pair.validate().passed() {
        return Err(Error::Internal(format!("pair for form {f} is not balanced")));
    }
    Ok(pair)
}

/// Reads the form and its covariant off a balanced pair.
pub fn read_pair(pair: &BalancedPair) -> Result<(CubicForm, CovariantForm)> {
    let report = pair.validate();
    if !report.norm_balanced {
        return Err(Error::UnbalancedPair("N(J)^3 != N(delta)".into()));
    }
    if !report.cube_contained {
        return Err(Error::UnbalancedPair("J^3 is not contained in delta*R_D".into()));
    }
    let quotients = pair.cube_quotients()?;
    let mut a: Vec<BigInt> = Vec::with_capacity(4);
    let mut c: Vec<BigRational> = Vec::with_capacity(4);
    for q in &quotients {
        let ai = q.tau_part();
        if !ai.is_integer() {
            return Err(Error::UnbalancedPair(format!("tau coefficient {ai} is not an integer")));
        }
        let ci = q.rational_part().clone();
        if !(&ci * BigInt::from(2)).is_integer() {
            return Err(Error::UnbalancedPair(format!(
                "rational part {ci} is not a half-integer"
            )));
        }
        a.push(ai.to_integer());
        c.push(ci);
    }
    let form = CubicForm::new(a.try_into().unwrap());
    let cov = CovariantForm {
        c: c.try_into().unwrap(),
    };
    Ok((form, cov))
}

/// Maps a balanced pair back to a cubic form, checking that the rational
/// parts agree with the covariant of the result and that the discriminant
/// is `D`.
pub fn pair_to_form(pair: &BalancedPair) -> Result<CubicForm> {
    let (form, cov) = read_pair(pair)?;
    let disc = pair.ideal.discriminant();
    if &form.discriminant() != disc.value() {
        return Err(Error::Internal(format!(
            "form {form} read from pair has discriminant {} instead of {disc}",
            form.discriminant()
        )));
    }
    if cov != form.covariant() {
        return Err(Error::Internal(format!(
            "rational parts {cov} differ from the covariant {} of {form}",
            form.covariant()
        )));
    }
    Ok(form)
}

/// Expands `delta^-1 (alpha x + beta y)^3` and compares it with
/// `p'(x, y) + p(x, y) tau` coefficientwise.
pub fn lemma_check(f: &CubicForm, pair: &BalancedPair) -> bool {
    let Ok(inv) = pair.delta.inv() else {
        return false;
    };
    let disc = pair.ideal.discriminant();
    let linear = MultiPoly::linear_combination(
        disc,
        &[
            ([1, 0, 0, 0], pair.ideal.alpha().clone()),
            ([0, 1, 0, 0], pair.ideal.beta().clone()),
        ],
    );
    let lhs = linear.pow(3).scale(&inv);
    let rhs = MultiPoly::binary_cubic(&tilde(f, disc).expanded(), X1, Y1);
    lhs == rhs
}

/// `true` when `J` has a positively oriented basis.
pub fn is_positively_oriented(pair: &BalancedPair) -> bool {
    pair.ideal.signed_norm().is_positive()
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
    fn forward_map_d5() {
        let disc = d(5);
        let pair = form_to_pair(&cf(-1, 1, 0, 1), &disc).unwrap();
        let omega_minus_one = QuadElem::new(&disc, rat(-1, 2), rat(1, 2));
        assert_eq!(pair.ideal.alpha(), &omega_minus_one);
        assert_eq!(pair.ideal.beta(), &disc.one());
        assert_eq!(pair.delta, omega_minus_one);
        assert_eq!(pair.ideal.signed_norm(), rat(-1, 1));
    }

    #[test]
    fn forward_map_d_minus_31() {
        let disc = d(-31);
        let pair = form_to_pair(&cf(-1, -1, 1, 4), &disc).unwrap();
        assert_eq!(pair.ideal.alpha(), &QuadElem::new(&disc, rat(7, 2), rat(-1, 2)));
        assert_eq!(pair.ideal.beta(), &QuadElem::new(&disc, rat(13, 2), rat(1, 2)));
        assert_eq!(pair.delta, pair.ideal.alpha() * pair.ideal.beta());
        assert!(pair.validate().passed());
    }

    #[test]
    fn rejects_bad_forms() {
        let disc = d(5);
        assert!(matches!(
            form_to_pair(&cf(2, 0, 0, 2), &d(-63)),
            Err(Error::DiscriminantMismatch { .. })
        ));
        assert!(matches!(
            form_to_pair(&cf(-1, -1, 1, 4), &disc),
            Err(Error::DiscriminantMismatch { .. })
        ));
        // 2*(-1,1,0,1) has discriminant 16*5 and Hessian content 4
        let scaled = cf(-2, 2, 0, 2);
        let big = Discriminant::new(scaled.discriminant()).unwrap();
        assert!(matches!(form_to_pair(&scaled, &big), Err(Error::NotProjective(_))));
    }

    #[test]
    fn unit_pair_gives_identity_forms() {
        let even = d(-20);
        let pair = BalancedPair::new(OrientedIdeal::new(even.one(), even.tau()).unwrap(), even.one());
        assert_eq!(pair_to_form(&pair).unwrap(), cf(0, 1, 0, -5));
        let odd = d(-31);
        let pair = BalancedPair::new(OrientedIdeal::unit(&odd), odd.one());
        assert_eq!(pair_to_form(&pair).unwrap(), cf(0, 1, 1, -7));
    }

    #[test]
    fn identity_form_pair_is_principal() {
        for v in [-31, -20, -23, 5, 8, 12, 13] {
            let disc = d(v);
            let e = crate::classgroup::identity_form(&disc);
            let pair = form_to_pair(&e, &disc).unwrap();
            // J = alpha R_D and delta = alpha^3, i.e. (R_D, 1) after rescaling.
            let k = pair.ideal.alpha().inv().unwrap();
            let scaled = OrientedIdeal::new(pair.ideal.alpha() * &k, pair.ideal.beta() * &k).unwrap();
            assert!(scaled.same_module(&OrientedIdeal::unit(&disc)), "D={v}");
            let unit_delta = &pair.delta * &k.pow(3);
            assert!(unit_delta.is_one(), "D={v}: {unit_delta}");
            assert!(pair.delta.norm().abs() == pair.ideal.signed_norm().pow(3).abs());
        }
        // Literally R_D only when the rescaling factor is itself a unit.
        let disc = d(-31);
        let pair = form_to_pair(&crate::classgroup::identity_form(&disc), &disc).unwrap();
        assert!(!pair.ideal.same_module(&OrientedIdeal::unit(&disc)));
        let disc = d(5);
        let pair = form_to_pair(&crate::classgroup::identity_form(&disc), &disc).unwrap();
        assert!(pair.ideal.same_module(&OrientedIdeal::unit(&disc)));
        assert_eq!(pair.delta.norm().abs(), rat(1, 1));
    }

    #[test]
    fn round_trips_on_worked_forms() {
        for (v, f) in [
            (-31, cf(-1, -1, 1, 4)),
            (-31, cf(1, -2, 0, 1)),
            (-31, cf(7, 1, -1, 0)),
            (5, cf(-1, 1, 0, 1)),
            (5, cf(-3, 2, -1, 1)),
            (5, cf(-8, 5, -3, 2)),
        ] {
            let disc = d(v);
            let pair = form_to_pair(&f, &disc).unwrap();
            assert_eq!(pair_to_form(&pair).unwrap(), f);
            assert!(lemma_check(&f, &pair));
        }
    }

    #[test]
    fn lemma_check_rejects_mismatch() {
        let disc = d(5);
        let f = cf(-1, 1, 0, 1);
        let unit = BalancedPair::new(OrientedIdeal::unit(&disc), disc.one());
        assert!(!lemma_check(&f, &unit));
        let disc = d(-31);
        let g = cf(1, -2, 0, 1);
        assert!(lemma_check(&g, &form_to_pair(&g, &disc).unwrap()));
    }

    #[test]
    fn unbalanced_pairs_are_rejected() {
        let disc = d(8);
        let pair = BalancedPair::new(OrientedIdeal::unit(&disc), disc.tau());
        assert!(matches!(pair_to_form(&pair), Err(Error::UnbalancedPair(_))));
        // norm 1 but not a unit: J^3 is not inside delta R_D
        let disc = d(-4);
        let delta = QuadElem::new(&disc, rat(3, 5), rat(2, 5));
        assert_eq!(delta.norm(), rat(1, 1));
        let pair = BalancedPair::new(OrientedIdeal::unit(&disc), delta);
        let report = pair.validate();
        assert!(report.norm_balanced && !report.cube_contained);
        assert!(matches!(pair_to_form(&pair), Err(Error::UnbalancedPair(_))));
    }
}

//! Composition of projective binary cubic forms `a0 x^3 + 3a1 x^2 y + 3a2 x y^2 + a3 y^3`
//! of a fixed discriminant, computed through balanced pairs `(J, delta)`
//! in the quadratic order of that discriminant and verified symbolically.

pub mod bijection;
pub mod classgroup;
pub mod cli;
pub mod composition;
pub mod cubicform;
pub mod error;
pub mod idealmod;
pub mod json;
pub mod poly;
pub mod quadring;

pub use bijection::{form_to_pair, lemma_check, pair_to_form};
pub use classgroup::{
    classify, enumerate_classes, enumerate_forms, equivalent, identity_form, inverse, ClassTable, EquivalenceVerdict,
    SearchLimits,
};
pub use composition::{compose, tilde, tilde_product, verify_composition, BilinearMap, CompositionResult};
pub use cubicform::{CovariantForm, CubicForm, HessianQuad, Unimodular};
pub use error::{Error, Result};
pub use idealmod::{BalancedPair, OrientedIdeal, PairReport};
pub use poly::MultiPoly;
pub use quadring::{Discriminant, QuadElem};

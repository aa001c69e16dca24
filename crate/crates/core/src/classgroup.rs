//! SL2(Z)-equivalence of cubic forms and the group of classes under
//! composition.
//!
//! Both forms are first moved to a Hessian-reduced representative, then
//! joined by a bounded breadth-first search over the generators `T`,
//! `T^-1`, `S`. A witness is always exact; failing to find one within the
//! bound is reported as such and never as inequivalence.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use num::{BigInt, Integer, Signed, Zero};
use rayon::prelude::*;

use crate::bijection::pair_to_form;
use crate::composition::compose;
use crate::cubicform::{CubicForm, Unimodular};
use crate::error::{Error, Result};
use crate::idealmod::{BalancedPair, OrientedIdeal};
use crate::quadring::Discriminant;

pub const DEFAULT_MAX_DEPTH: usize = 24;
pub const DEFAULT_CEILING_FACTOR: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_depth: usize,
    /// Forms whose largest coefficient exceeds this multiple of the
    /// reduced inputs' largest coefficient are pruned.
    pub ceiling_factor: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: DEFAULT_MAX_DEPTH,
            ceiling_factor: DEFAULT_CEILING_FACTOR,
        }
    }
}

impl SearchLimits {
    pub fn with_depth(max_depth: usize) -> Self {
        SearchLimits {
            max_depth,
            ..Self::default()
        }
    }

    fn ceiling(&self, forms: &[&CubicForm]) -> BigInt {
        let top = forms
            .iter()
            .map(|f| f.max_abs_coefficient())
            .max()
            .unwrap_or_default()
            .max(BigInt::from(1));
        top * self.ceiling_factor
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    /// `act(f, witness) = h`.
    Equivalent(Unimodular),
    NotFoundWithinBound {
        depth: usize,
        ceiling: BigInt,
    },
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&Unimodular> {
        match self {
            EquivalenceVerdict::Equivalent(g) => Some(g),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Generator {
    T,
    TInv,
    S,
}

const GENERATORS: [Generator; 3] = [Generator::T, Generator::TInv, Generator::S];

impl Generator {
    fn matrix(self) -> Unimodular {
        match self {
            Generator::T => Unimodular::t(),
            Generator::TInv => Unimodular::t_inv(),
            Generator::S => Unimodular::s(),
        }
    }

    /// Closed forms of `f.act(self.matrix())`.
    fn apply(self, f: &CubicForm) -> CubicForm {
        let [a0, a1, a2, a3] = &f.a;
        let a = match self {
            Generator::T => [a0.clone(), a0 + a1, a0 + 2 * a1 + a2, a0 + 3 * a1 + 3 * a2 + a3],
            Generator::TInv => [a0.clone(), a1 - a0, a0 - 2 * a1 + a2, -a0 + 3 * a1 - 3 * a2 + a3],
            Generator::S => [a3.clone(), -a2, a1.clone(), -a0],
        };
        CubicForm::new(a)
    }
}

/// Breadth-first search from `start`, stopping at the first form for which
/// `hit` returns `Some`. Returns that value, the word of generators leading
/// there, and every form visited.
fn search<T>(
    start: &CubicForm,
    limits: &SearchLimits,
    ceiling: &BigInt,
    mut hit: impl FnMut(&CubicForm) -> Option<T>,
) -> (Option<(T, Unimodular)>, Vec<CubicForm>) {
    // (form, parent index, generator used, depth)
    let mut nodes: Vec<(CubicForm, usize, Option<Generator>, usize)> = vec![(start.clone(), 0, None, 0)];
    let mut seen: HashSet<CubicForm> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([0usize]);

    let word = |nodes: &[(CubicForm, usize, Option<Generator>, usize)], mut i: usize| {
        let mut gens = Vec::new();
        while let Some(g) = nodes[i].2 {
            gens.push(g);
            i = nodes[i].1;
        }
        gens.iter()
            .rev()
            .fold(Unimodular::identity(), |acc, g| acc.mul(&g.matrix()))
    };

    if let Some(v) = hit(start) {
        return (Some((v, Unimodular::identity())), vec![start.clone()]);
    }
    while let Some(i) = queue.pop_front() {
        let depth = nodes[i].3;
        if depth >= limits.max_depth {
            continue;
        }
        for g in GENERATORS {
            let next = g.apply(&nodes[i].0);
            if next.max_abs_coefficient() > *ceiling || seen.contains(&next) {
                continue;
            }
            seen.insert(next.clone());
            nodes.push((next, i, Some(g), depth + 1));
            let j = nodes.len() - 1;
            if let Some(v) = hit(&nodes[j].0) {
                let gamma = word(&nodes, j);
                let visited = nodes.into_iter().map(|n| n.0).collect();
                return (Some((v, gamma)), visited);
            }
            queue.push_back(j);
        }
    }
    (None, nodes.into_iter().map(|n| n.0).collect())
}

/// Moves `f` to a form whose Hessian `A x^2 + B xy + C y^2` satisfies
/// `|B| <= |A| <= |C|`, returning it with `g` such that `act(f, g)` is the
/// result. Such Hessians are bounded in terms of the discriminant. For
/// `D > 0` the Hessian is indefinite and has infinitely many automorphs, so
/// the form is then also walked along the unit automorph to where its
/// coefficients are smallest. Together this undoes the coefficient growth of
/// repeated composition.
pub fn reduce(f: &CubicForm) -> (CubicForm, Unimodular) {
    let (mut form, mut g) = reduce_hessian(f);
    let unit = Discriminant::new(f.discriminant()).ok().and_then(|d| d.norm_one_unit());
    if let Some((t, u)) = unit {
        let [a, b, c] = form.hessian().q;
        let gamma =
            Unimodular::new((&t - &b * &u) / 2, -(&c * &u), &a * &u, (&t + &b * &u) / 2).expect("t^2 - D u^2 = 4");
        let size = |f: &CubicForm| f.a.iter().map(|x| x * x).sum::<BigInt>();
        for step in [gamma.inverse(), gamma] {
            loop {
                let next = form.act(&step);
                if size(&next) >= size(&form) {
                    break;
                }
                form = next;
                g = g.mul(&step);
            }
        }
    }
    // -I negates a cubic form.
    if form.a.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        let minus = Unimodular::from_i64(-1, 0, 0, -1).expect("det 1");
        form = form.act(&minus);
        g = g.mul(&minus);
    }
    (form, g)
}

fn reduce_hessian(f: &CubicForm) -> (CubicForm, Unimodular) {
    let mut form = f.clone();
    let mut g = Unimodular::identity();
    loop {
        let [a, b, _] = form.hessian().q;
        if a.is_zero() {
            break;
        }
        // x -> x + k y sends B to B + 2kA; pick k with |B + 2kA| <= |A|.
        let k = (a.abs() - &b * a.signum()).div_floor(&(2 * a.abs()));
        if !k.is_zero() {
            let shift = Unimodular::new(1.into(), k, 0.into(), 1.into()).expect("det 1");
            form = form.act(&shift);
            g = g.mul(&shift);
        }
        let [a, _, c2] = form.hessian().q;
        if a.abs() > c2.abs() {
            form = Generator::S.apply(&form);
            g = g.mul(&Unimodular::s());
        } else {
            break;
        }
    }
    (form, g)
}

/// Bounded search for `g` in SL2(Z) with `act(f, g) = h`.
pub fn equivalent(f: &CubicForm, h: &CubicForm, limits: &SearchLimits) -> Result<EquivalenceVerdict> {
    let (df, dh) = (f.discriminant(), h.discriminant());
    if df != dh {
        return Err(Error::DiscriminantMismatch {
            left: df.to_string(),
            right: dh.to_string(),
        });
    }
    let (fr, gf) = reduce(f);
    let (hr, gh) = reduce(h);
    let ceiling = limits.ceiling(&[&fr, &hr]);
    let (found, _) = search(&fr, limits, &ceiling, |g| (g == &hr).then_some(()));
    Ok(match found {
        Some(((), middle)) => {
            let gamma = gf.mul(&middle).mul(&gh.inverse());
            if &f.act(&gamma) != h {
                return Err(Error::Internal(format!("bad equivalence witness {gamma}")));
            }
            EquivalenceVerdict::Equivalent(gamma)
        }
        None => EquivalenceVerdict::NotFoundWithinBound {
            depth: limits.max_depth,
            ceiling,
        },
    })
}

/// The form of the unit pair `(R_D, 1)` with basis `(1, omega)`.
pub fn identity_form(disc: &Discriminant) -> CubicForm {
    let pair = BalancedPair::new(OrientedIdeal::unit(disc), disc.one());
    pair_to_form(&pair).expect("the unit pair is balanced")
}

/// `f` composed with itself; in a group of exponent 3 this is `f^-1`.
pub fn inverse(f: &CubicForm, disc: &Discriminant) -> Result<CubicForm> {
    Ok(compose(f, f, disc)?.form)
}

/// All projective forms with `|a_i| <= bound` and discriminant `D`, in
/// lexicographic order.
pub fn enumerate_forms(disc: &Discriminant, bound: u32) -> Vec<CubicForm> {
    let target = disc.value();
    let b = bound as i64;
    let mut forms: Vec<CubicForm> = (-b..=b)
        .into_par_iter()
        .flat_map_iter(|a0| {
            let mut out = Vec::new();
            for a1 in -b..=b {
                for a2 in -b..=b {
                    for a3 in -b..=b {
                        let (x0, x1, x2, x3) = (a0 as i128, a1 as i128, a2 as i128, a3 as i128);
                        let d =
                            x0 * x0 * x3 * x3 - 3 * x1 * x1 * x2 * x2 + 4 * x1 * x1 * x1 * x3 + 4 * x0 * x2 * x2 * x2
                                - 6 * x0 * x1 * x2 * x3;
                        if BigInt::from(d) != *target {
                            continue;
                        }
                        let f = CubicForm::from_i64(a0, a1, a2, a3);
                        if f.is_projective() {
                            out.push(f);
                        }
                    }
                }
            }
            out
        })
        .collect();
    forms.sort();
    forms
}

/// Memo of forms whose class is already known.
#[derive(Clone, Debug, Default)]
pub struct ClassIndex {
    known: HashMap<CubicForm, usize>,
}

impl ClassIndex {
    pub fn class_of(&self, f: &CubicForm) -> Option<usize> {
        self.known.get(f).copied()
    }

    fn absorb(&mut self, forms: Vec<CubicForm>, class: usize) {
        for f in forms {
            self.known.entry(f).or_insert(class);
        }
    }
}

/// Finds the class of `f` by searching until any already-classified form
/// is reached. Everything visited on the way joins that class.
pub fn classify(f: &CubicForm, index: &mut ClassIndex, limits: &SearchLimits, scale: &BigInt) -> Option<usize> {
    if let Some(c) = index.class_of(f) {
        return Some(c);
    }
    let (fr, _) = reduce(f);
    let ceiling = (fr.max_abs_coefficient().max(scale.clone()).max(BigInt::from(1))) * limits.ceiling_factor;
    let (found, mut visited) = search(&fr, limits, &ceiling, |g| index.class_of(g));
    let (class, _) = found?;
    visited.push(f.clone());
    index.absorb(visited, class);
    Some(class)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub identity: bool,
    pub inverses: bool,
    pub associative: bool,
    pub commutative: bool,
    pub exponent_three: bool,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.identity && self.inverses && self.associative && self.commutative && self.exponent_three
    }
}

/// Classes of projective forms of one discriminant under composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    pub disc: Discriminant,
    /// One form per class: the least enumerated one where the class meets
    /// the enumeration box, otherwise a reduced form.
    pub reps: Vec<CubicForm>,
    pub identity: usize,
    /// `table[i][j]` is the class of `reps[i]` composed with `reps[j]`.
    pub table: Vec<Vec<usize>>,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn check_group(&self) -> GroupReport {
        let n = self.len();
        let e = self.identity;
        let all = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
        GroupReport {
            identity: (0..n).all(|i| self.op(e, i) == i && self.op(i, e) == i),
            inverses: (0..n).all(|i| (0..n).any(|j| self.op(i, j) == e)),
            associative: all().all(|(i, j)| (0..n).all(|k| self.op(self.op(i, j), k) == self.op(i, self.op(j, k)))),
            commutative: all().all(|(i, j)| self.op(i, j) == self.op(j, i)),
            exponent_three: (0..n).all(|i| self.op(self.op(i, i), i) == e),
        }
    }

    /// `true` when some element generates the whole table.
    pub fn is_cyclic(&self) -> bool {
        (0..self.len()).any(|g| {
            let mut seen = HashSet::new();
            let mut x = g;
            for _ in 0..self.len() {
                seen.insert(x);
                x = self.op(x, g);
            }
            seen.len() == self.len()
        })
    }
}

/// Upper limit on the number of classes a table may grow to.
const MAX_CLASSES: usize = 2048;

/// Opens a new class for `f`: everything reachable from its reduction
/// within the limits is recorded as belonging to it.
fn open_class(
    f: &CubicForm,
    rep: CubicForm,
    reps: &mut Vec<CubicForm>,
    index: &mut ClassIndex,
    limits: &SearchLimits,
    scale: &BigInt,
) -> usize {
    let class = reps.len();
    let (r, _) = reduce(f);
    let ceiling = limits.ceiling(&[&r]).max(scale * limits.ceiling_factor);
    let (_, mut visited) = search(&r, limits, &ceiling, |_| None::<()>);
    visited.push(f.clone());
    index.absorb(visited, class);
    reps.push(rep);
    class
}

/// Enumerates forms with `|a_i| <= bound`, partitions them into
/// SL2(Z)-classes and builds the composition table. The identity and any
/// product falling outside the known classes are added as further classes,
/// so the table is always closed under composition.
pub fn enumerate_classes(disc: &Discriminant, bound: u32, limits: &SearchLimits) -> Result<ClassTable> {
    let scale = BigInt::from(bound.max(1));
    let mut index = ClassIndex::default();
    let mut reps: Vec<CubicForm> = Vec::new();
    let locate = |f: &CubicForm, reps: &mut Vec<CubicForm>, index: &mut ClassIndex, enumerated: bool| {
        if let Some(c) = classify(f, index, limits, &scale) {
            return Ok(c);
        }
        if reps.len() >= MAX_CLASSES {
            return Err(Error::ClassNotFound(f.to_string()));
        }
        let rep = if enumerated { f.clone() } else { reduce(f).0 };
        Ok(open_class(f, rep, reps, index, limits, &scale))
    };
    for f in &enumerate_forms(disc, bound) {
        locate(f, &mut reps, &mut index, true)?;
    }
    let identity = locate(&identity_form(disc), &mut reps, &mut index, false)?;

    let mut products: HashMap<(usize, usize), usize> = HashMap::new();
    loop {
        let n = reps.len();
        for i in 0..n {
            for j in 0..n {
                if let Entry::Vacant(slot) = products.entry((i, j)) {
                    let p = compose(&reps[i], &reps[j], disc)?.form;
                    slot.insert(locate(&p, &mut reps, &mut index, false)?);
                }
            }
        }
        if reps.len() == n {
            break;
        }
    }
    let n = reps.len();
    let table = (0..n).map(|i| (0..n).map(|j| products[&(i, j)]).collect()).collect();
    let table = ClassTable {
        disc: disc.clone(),
        reps,
        identity,
        table,
    };
    let report = table.check_group();
    if !report.passed() {
        return Err(Error::Internal(format!(
            "class table is not a group of exponent 3: {report:?}"
        )));
    }
    Ok(table)
}

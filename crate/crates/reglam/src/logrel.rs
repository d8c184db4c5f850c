//! Logical relations between two finite-set interpretations.
//!
//! A [`FinRelation`] relates points of a left and a right base domain,
//! extensionally. [`lift_relation`] pushes it through a type: products
//! componentwise, and at an arrow two functions are related exactly when
//! they send related arguments to related results. The fundamental lemma
//! — both interpretations of one closed term are always related — is
//! exposed as a *check* ([`fundamental_lemma_check`]) so the property
//! batteries can falsify it if the evaluator ever drifts.
//!
//! Partial surjections (functional and surjective relations) are closed
//! under lifting; that closure ([`partial_surjection_closure_check`]) is
//! what lets recognizers transfer along them, and the identity-shaped
//! [`point_relation`] instance transfers verdicts between a model and
//! itself ([`membership_transfer_check`]).

use crate::finsem::{
    apply_value, denote_type, elem_at, enumerate, eval_value, materialize, reflect, Card,
    FinDomain, FinsemError, SemValue,
};
use crate::recognizers::SemRecognizer;
use crate::syntax::{SimpleType, Term};
use crate::typecheck::{synthesize, TypeError};
use std::collections::BTreeSet;

/// Relation lifting at an arrow enumerates candidate pairs; default cap.
pub const DEFAULT_MAX_PAIRS: u64 = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum LogrelError {
    #[error("{candidates} candidate pairs exceed the bound {max}")]
    TooManyPairs { candidates: u64, max: u64 },
    #[error("candidate-pair count overflows u64")]
    Overflow,
    #[error("pair ({left}, {right}) lies outside the stated domains")]
    OutOfRange { left: Card, right: Card },
    #[error("the base relation is not a partial surjection: {0}")]
    NotPartialSurjection(String),
    #[error("the recognizer spans several bases; check each leaf separately")]
    MixedBases,
    #[error("recognizer: {0}")]
    Recognizer(String),
    #[error(transparent)]
    Finsem(#[from] FinsemError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// An extensional relation between two finite domains, stored as pairs of
/// canonical indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinRelation {
    left: FinDomain,
    right: FinDomain,
    pairs: BTreeSet<(Card, Card)>,
}

impl FinRelation {
    pub fn new(
        left: FinDomain,
        right: FinDomain,
        pairs: BTreeSet<(Card, Card)>,
    ) -> Result<FinRelation, LogrelError> {
        for &(l, r) in &pairs {
            if l == 0 || l > left.size() || r == 0 || r > right.size() {
                return Err(LogrelError::OutOfRange { left: l, right: r });
            }
        }
        Ok(FinRelation { left, right, pairs })
    }

    /// A relation between plain cardinal bases of the given sizes.
    pub fn on_cardinals(
        left: u64,
        right: u64,
        pairs: BTreeSet<(Card, Card)>,
    ) -> Result<FinRelation, LogrelError> {
        let l = FinDomain::base(left, Card::MAX)?;
        let r = FinDomain::base(right, Card::MAX)?;
        FinRelation::new(l, r, pairs)
    }

    pub fn identity(dom: &FinDomain) -> FinRelation {
        FinRelation {
            left: dom.clone(),
            right: dom.clone(),
            pairs: (1..=dom.size()).map(|i| (i, i)).collect(),
        }
    }

    pub fn full(left: &FinDomain, right: &FinDomain) -> FinRelation {
        let pairs = (1..=left.size())
            .flat_map(|l| (1..=right.size()).map(move |r| (l, r)))
            .collect();
        FinRelation {
            left: left.clone(),
            right: right.clone(),
            pairs,
        }
    }

    /// The graph of a total function, `table[i−1]` being the image of the
    /// `i`-th left point.
    pub fn graph(
        table: &[Card],
        left: &FinDomain,
        right: &FinDomain,
    ) -> Result<FinRelation, LogrelError> {
        if table.len() as Card != left.size() {
            return Err(LogrelError::OutOfRange {
                left: table.len() as Card,
                right: right.size(),
            });
        }
        let pairs = table
            .iter()
            .enumerate()
            .map(|(i, &r)| (i as Card + 1, r))
            .collect();
        FinRelation::new(left.clone(), right.clone(), pairs)
    }

    pub fn left(&self) -> &FinDomain {
        &self.left
    }

    pub fn right(&self) -> &FinDomain {
        &self.right
    }

    pub fn pairs(&self) -> &BTreeSet<(Card, Card)> {
        &self.pairs
    }

    pub fn contains(&self, l: Card, r: Card) -> bool {
        self.pairs.contains(&(l, r))
    }
}

/// The identity relation on a domain — relating a model to itself point
/// for point.
pub fn point_relation(e: &FinDomain) -> FinRelation {
    FinRelation::identity(e)
}

fn candidate_guard(l: Card, r: Card, max: u64) -> Result<u64, LogrelError> {
    match l.checked_mul(r) {
        Some(c) if c <= max => Ok(c),
        Some(c) => Err(LogrelError::TooManyPairs {
            candidates: c,
            max,
        }),
        None => Err(LogrelError::Overflow),
    }
}

fn mul_size(a: Card, b: Card) -> Result<Card, LogrelError> {
    a.checked_mul(b).ok_or(LogrelError::Overflow)
}

fn pow_size(cod: Card, dom: Card) -> Result<Card, LogrelError> {
    if cod == 1 {
        return Ok(1);
    }
    u32::try_from(dom)
        .ok()
        .and_then(|d| cod.checked_pow(d))
        .ok_or(LogrelError::Overflow)
}

/// Lift a base relation through a type, tabulating the result. Candidate
/// pairs at every connective are capped by `max_pairs`.
pub fn lift_relation(
    a: &SimpleType,
    base: &FinRelation,
    max_pairs: u64,
) -> Result<FinRelation, LogrelError> {
    match a {
        SimpleType::Base => Ok(base.clone()),
        SimpleType::Unit => {
            let u = FinDomain::unit();
            Ok(FinRelation {
                left: u.clone(),
                right: u,
                pairs: std::iter::once((1, 1)).collect(),
            })
        }
        SimpleType::Prod(x, y) => {
            let rx = lift_relation(x, base, max_pairs)?;
            let ry = lift_relation(y, base, max_pairs)?;
            // Guard on the arithmetic before building the domains: the
            // sizes themselves can overflow the cardinal type.
            candidate_guard(
                mul_size(rx.left.size(), ry.left.size())?,
                mul_size(rx.right.size(), ry.right.size())?,
                max_pairs,
            )?;
            let left = FinDomain::prod(rx.left.clone(), ry.left.clone(), Card::MAX)?;
            let right = FinDomain::prod(rx.right.clone(), ry.right.clone(), Card::MAX)?;
            let mut pairs = BTreeSet::new();
            for &(la, ra) in &rx.pairs {
                for &(lb, rb) in &ry.pairs {
                    pairs.insert((
                        (la - 1) * ry.left.size() + lb,
                        (ra - 1) * ry.right.size() + rb,
                    ));
                }
            }
            Ok(FinRelation { left, right, pairs })
        }
        SimpleType::Arrow(x, y) => {
            let rx = lift_relation(x, base, max_pairs)?;
            let ry = lift_relation(y, base, max_pairs)?;
            candidate_guard(
                pow_size(ry.left.size(), rx.left.size())?,
                pow_size(ry.right.size(), rx.right.size())?,
                max_pairs,
            )?;
            let left = FinDomain::fun(rx.left.clone(), ry.left.clone(), Card::MAX)?;
            let right = FinDomain::fun(rx.right.clone(), ry.right.clone(), Card::MAX)?;
            let mut pairs = BTreeSet::new();
            for f in enumerate(&left) {
                'g: for g in enumerate(&right) {
                    for &(xa, xb) in &rx.pairs {
                        let fa = apply_elem_idx(&f, xa)?;
                        let gb = apply_elem_idx(&g, xb)?;
                        if !ry.contains(fa, gb) {
                            continue 'g;
                        }
                    }
                    pairs.insert((f.index(), g.index()));
                }
            }
            Ok(FinRelation { left, right, pairs })
        }
    }
}

fn apply_elem_idx(f: &crate::finsem::FinElem, arg_index: Card) -> Result<Card, LogrelError> {
    let dom = match f.domain().view() {
        crate::finsem::DomView::Fun(d, _) => d.clone(),
        _ => unreachable!("lifting built a function domain"),
    };
    Ok(crate::finsem::apply_elem(f, &elem_at(&dom, arg_index)?)?.index())
}

/// Whether two values of type `a` are related over `base`, by recursive
/// descent: the argument side of each arrow is tabulated, the function
/// side is only ever *applied* — so large function spaces stay lazy.
pub fn related(
    a: &SimpleType,
    va: &SemValue,
    vb: &SemValue,
    base: &FinRelation,
    max_pairs: u64,
) -> Result<bool, LogrelError> {
    match a {
        SimpleType::Base => Ok(base.contains(
            materialize(va, &base.left)?.index(),
            materialize(vb, &base.right)?.index(),
        )),
        SimpleType::Unit => Ok(true),
        SimpleType::Prod(x, y) => {
            let (a1, a2) = split_value(va, x, y, &base.left)?;
            let (b1, b2) = split_value(vb, x, y, &base.right)?;
            Ok(related(x, &a1, &b1, base, max_pairs)?
                && related(y, &a2, &b2, base, max_pairs)?)
        }
        SimpleType::Arrow(x, y) => {
            let args = lift_relation(x, base, max_pairs)?;
            for &(i, j) in &args.pairs {
                let vx = reflect(&elem_at(&args.left, i)?);
                let vy = reflect(&elem_at(&args.right, j)?);
                if !related(
                    y,
                    &apply_value(va, &vx),
                    &apply_value(vb, &vy),
                    base,
                    max_pairs,
                )? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Components of a product-typed value; odd shapes are canonicalized by
/// materializing over the given base first.
fn split_value(
    v: &SemValue,
    x: &SimpleType,
    y: &SimpleType,
    base: &FinDomain,
) -> Result<(SemValue, SemValue), LogrelError> {
    if let SemValue::Pair(a, b) = v {
        return Ok((a.as_ref().clone(), b.as_ref().clone()));
    }
    let prod_ty = SimpleType::Prod(
        std::rc::Rc::new(x.clone()),
        std::rc::Rc::new(y.clone()),
    );
    let dom = denote_type(&prod_ty, base, Card::MAX)?;
    let e = materialize(v, &dom)?;
    let (a, b) = crate::finsem::split_elem(&e)?;
    Ok((reflect(&a), reflect(&b)))
}

/// The fundamental lemma, as a runnable check: a closed term's two
/// interpretations are related. (Evaluation is base-agnostic here, so one
/// evaluated value stands on both sides; the relation structure does all
/// the distinguishing.)
pub fn fundamental_lemma_check(
    t: &Term,
    base: &FinRelation,
    max_pairs: u64,
) -> Result<bool, LogrelError> {
    let ty = synthesize(t, &Vec::new())?;
    let v = eval_value(t, &[]);
    related(&ty, &v, &v, base, max_pairs)
}

pub fn is_functional(r: &FinRelation) -> bool {
    let mut seen = std::collections::BTreeMap::new();
    r.pairs
        .iter()
        .all(|&(l, rt)| *seen.entry(l).or_insert(rt) == rt)
}

pub fn is_surjective(r: &FinRelation) -> bool {
    let hit: BTreeSet<Card> = r.pairs.iter().map(|&(_, rt)| rt).collect();
    hit.len() as Card == r.right.size()
}

pub fn is_partial_surjection(r: &FinRelation) -> bool {
    is_functional(r) && is_surjective(r)
}

/// Closure of partial surjections under lifting: with a partial
/// surjection at the base, the lifted relation is one too. Precondition
/// violations are errors, not `false` — `false` would mean the closure
/// property itself failed.
pub fn partial_surjection_closure_check(
    a: &SimpleType,
    base: &FinRelation,
    max_pairs: u64,
) -> Result<bool, LogrelError> {
    if !is_functional(base) {
        return Err(LogrelError::NotPartialSurjection(
            "a left point has two mates".into(),
        ));
    }
    if !is_surjective(base) {
        return Err(LogrelError::NotPartialSurjection(
            "a right point has no mate".into(),
        ));
    }
    Ok(is_partial_surjection(&lift_relation(a, base, max_pairs)?))
}

/// Verdict transfer along the point relation: the verdict on a term
/// equals the verdict on every mate of its denotation under the lifted
/// identity. Requires a single-base recognizer.
pub fn membership_transfer_check(
    r: &SemRecognizer,
    t: &Term,
    max_pairs: u64,
) -> Result<bool, LogrelError> {
    let bases = r.bases();
    if bases.len() != 1 {
        return Err(LogrelError::MixedBases);
    }
    let e = &bases[0];
    let subject = r.subject().clone();
    let lifted = lift_relation(&subject, &point_relation(e), max_pairs)?;
    let dom = denote_type(&subject, e, Card::MAX)?;
    let direct = r
        .accepts(t)
        .map_err(|err| LogrelError::Recognizer(err.to_string()))?;
    let idx = materialize(&eval_value(t, &[]), &dom)?.index();
    for &(l, rt) in lifted.pairs() {
        if l != idx {
            continue;
        }
        let mate = reflect(&elem_at(&dom, rt)?);
        if r.verdict_on_value(&mate)? != direct {
            return Ok(false);
        }
    }
    Ok(true)
}

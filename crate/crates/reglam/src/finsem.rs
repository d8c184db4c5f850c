//! Finite-set semantics.
//!
//! A [`FinDomain`] is a hereditarily finite set built from non-empty base
//! sets, unit, binary products, and full function spaces. Every domain
//! carries a *canonical enumeration* — a bijection with `1..=size` — and a
//! [`FinElem`] is just a domain together with a 1-based index:
//!
//! * base `k`: elements `1..=k` in order;
//! * unit: the single element `1`;
//! * products, left-major: `index((a, b)) = (index(a) - 1) * size(B) + index(b)`;
//! * functions, as radix-`size(C)` numerals over the enumeration of the
//!   domain with the **first** domain element most significant:
//!   `index(f) = 1 + Σ_j (index(f(d_j)) - 1) * size(C)^(m - j)`.
//!
//! This enumeration is load-bearing: the λ-definable index combinators in
//! [`crate::compiler`] do arithmetic on exactly these indices, so the two
//! modules must agree digit for digit.
//!
//! Evaluation of terms is *lazy*: [`eval_value`] produces closure-based
//! [`SemValue`]s and never materializes a function table, so a term can be
//! evaluated and applied even when intermediate function spaces are
//! astronomically large. [`materialize`] and [`reflect`] convert between
//! values and canonical elements on demand; they are the only places where
//! tables are actually built, and they only ever enumerate domains that
//! passed the construction-size guard.

use crate::syntax::{Ctx, SimpleType, Term};
use crate::typecheck::synthesize;
use std::fmt;
use std::rc::Rc;

/// Cardinalities and canonical indices.
pub type Card = u64;

/// Default bound on the size of any constructed domain (`2^24`).
pub const DEFAULT_MAX_DOMAIN: Card = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinsemError {
    #[error("base domains must be non-empty")]
    EmptyBase,
    #[error("domain of size {size} exceeds the bound {max}")]
    TooLarge { size: Card, max: Card },
    #[error("domain size exceeds 2^64")]
    Overflow,
    #[error("index {index} out of range 1..={size}")]
    BadIndex { index: Card, size: Card },
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("value does not fit the domain {dom}: {msg}")]
    Shape { dom: String, msg: String },
    #[error(transparent)]
    Type(#[from] crate::typecheck::TypeError),
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum DomKind {
    Base(Card),
    Unit,
    Prod(FinDomain, FinDomain),
    Fun(FinDomain, FinDomain),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct DomNode {
    kind: DomKind,
    size: Card,
}

/// A hereditarily finite domain with its size cached at every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinDomain(Rc<DomNode>);

/// A borrowed view of the top-level shape of a domain.
pub enum DomView<'a> {
    Base(Card),
    Unit,
    Prod(&'a FinDomain, &'a FinDomain),
    Fun(&'a FinDomain, &'a FinDomain),
}

impl FinDomain {
    pub fn base(k: Card, max: Card) -> Result<FinDomain, FinsemError> {
        if k == 0 {
            return Err(FinsemError::EmptyBase);
        }
        if k > max {
            return Err(FinsemError::TooLarge { size: k, max });
        }
        Ok(FinDomain(Rc::new(DomNode {
            kind: DomKind::Base(k),
            size: k,
        })))
    }

    pub fn unit() -> FinDomain {
        FinDomain(Rc::new(DomNode {
            kind: DomKind::Unit,
            size: 1,
        }))
    }

    pub fn prod(a: FinDomain, b: FinDomain, max: Card) -> Result<FinDomain, FinsemError> {
        let size = a
            .size()
            .checked_mul(b.size())
            .ok_or(FinsemError::Overflow)?;
        if size > max {
            return Err(FinsemError::TooLarge { size, max });
        }
        Ok(FinDomain(Rc::new(DomNode {
            kind: DomKind::Prod(a, b),
            size,
        })))
    }

    pub fn fun(dom: FinDomain, cod: FinDomain, max: Card) -> Result<FinDomain, FinsemError> {
        let size = checked_pow(cod.size(), dom.size(), max)?;
        Ok(FinDomain(Rc::new(DomNode {
            kind: DomKind::Fun(dom, cod),
            size,
        })))
    }

    pub fn size(&self) -> Card {
        self.0.size
    }

    pub fn view(&self) -> DomView<'_> {
        match &self.0.kind {
            DomKind::Base(k) => DomView::Base(*k),
            DomKind::Unit => DomView::Unit,
            DomKind::Prod(a, b) => DomView::Prod(a, b),
            DomKind::Fun(a, b) => DomView::Fun(a, b),
        }
    }
}

/// `base^exp`, failing beyond `max` (or u64). Cheap even for huge
/// exponents: a base of 1 short-circuits and any other base overflows the
/// bound within ~64 steps.
fn checked_pow(base: Card, exp: Card, max: Card) -> Result<Card, FinsemError> {
    if base == 1 {
        return Ok(1);
    }
    let mut acc: Card = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(FinsemError::Overflow)?;
        if acc > max {
            return Err(FinsemError::TooLarge { size: acc, max });
        }
    }
    Ok(acc)
}

impl fmt::Display for FinDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            DomView::Base(k) => write!(f, "{k}"),
            DomView::Unit => write!(f, "1"),
            DomView::Prod(a, b) => write!(f, "({a} * {b})"),
            DomView::Fun(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

/// Interpret a simple type over the given base domain: `o` becomes `base`,
/// and the connectives become products, function spaces, and unit.
pub fn denote_type(ty: &SimpleType, base: &FinDomain, max: Card) -> Result<FinDomain, FinsemError> {
    match ty {
        SimpleType::Base => Ok(base.clone()),
        SimpleType::Unit => Ok(FinDomain::unit()),
        SimpleType::Arrow(a, b) => FinDomain::fun(
            denote_type(a, base, max)?,
            denote_type(b, base, max)?,
            max,
        ),
        SimpleType::Prod(a, b) => FinDomain::prod(
            denote_type(a, base, max)?,
            denote_type(b, base, max)?,
            max,
        ),
    }
}

/// An element of a [`FinDomain`], as its canonical 1-based index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinElem {
    dom: FinDomain,
    index: Card,
}

impl FinElem {
    pub fn domain(&self) -> &FinDomain {
        &self.dom
    }

    /// Canonical 1-based index.
    pub fn index(&self) -> Card {
        self.index
    }
}

impl fmt::Display for FinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.dom.size())
    }
}

/// The element of `dom` with canonical index `index` (1-based).
pub fn elem_at(dom: &FinDomain, index: Card) -> Result<FinElem, FinsemError> {
    if index == 0 || index > dom.size() {
        return Err(FinsemError::BadIndex {
            index,
            size: dom.size(),
        });
    }
    Ok(FinElem {
        dom: dom.clone(),
        index,
    })
}

/// Canonical index of an element (inverse of [`elem_at`]).
pub fn index_of(e: &FinElem) -> Card {
    e.index
}

/// All elements of `dom` in canonical order.
pub fn enumerate(dom: &FinDomain) -> impl Iterator<Item = FinElem> + '_ {
    (1..=dom.size()).map(move |i| FinElem {
        dom: dom.clone(),
        index: i,
    })
}

/// Pair two elements into a product domain (left-major).
pub fn pair_elem(a: &FinElem, b: &FinElem, max: Card) -> Result<FinElem, FinsemError> {
    let dom = FinDomain::prod(a.dom.clone(), b.dom.clone(), max)?;
    let index = (a.index - 1) * b.dom.size() + b.index;
    Ok(FinElem { dom, index })
}

/// Split an element of a product domain into its components.
pub fn split_elem(e: &FinElem) -> Result<(FinElem, FinElem), FinsemError> {
    match e.dom.view() {
        DomView::Prod(a, b) => {
            let bs = b.size();
            Ok((
                FinElem {
                    dom: a.clone(),
                    index: (e.index - 1) / bs + 1,
                },
                FinElem {
                    dom: b.clone(),
                    index: (e.index - 1) % bs + 1,
                },
            ))
        }
        _ => Err(FinsemError::Shape {
            dom: e.dom.to_string(),
            msg: "not a product element".into(),
        }),
    }
}

/// Build a function element from its table of codomain indices, listed in
/// the canonical order of the domain (`table.len() == size(dom)`).
pub fn fun_elem_from_table(
    dom: &FinDomain,
    cod: &FinDomain,
    table: &[Card],
    max: Card,
) -> Result<FinElem, FinsemError> {
    let fun_dom = FinDomain::fun(dom.clone(), cod.clone(), max)?;
    if table.len() as Card != dom.size() {
        return Err(FinsemError::Shape {
            dom: fun_dom.to_string(),
            msg: format!("table has {} entries, domain has {}", table.len(), dom.size()),
        });
    }
    let c = cod.size();
    let mut acc: Card = 0;
    for &digit in table {
        if digit == 0 || digit > c {
            return Err(FinsemError::BadIndex { index: digit, size: c });
        }
        // First domain element is the most significant digit.
        acc = acc * c + (digit - 1);
    }
    Ok(FinElem {
        dom: fun_dom,
        index: acc + 1,
    })
}

/// Apply a function element to an argument element by radix arithmetic on
/// its canonical index.
pub fn apply_elem(f: &FinElem, x: &FinElem) -> Result<FinElem, FinsemError> {
    let (dom, cod) = match f.dom.view() {
        DomView::Fun(d, c) => (d, c),
        _ => {
            return Err(FinsemError::Shape {
                dom: f.dom.to_string(),
                msg: "not a function element".into(),
            })
        }
    };
    if x.dom != *dom {
        return Err(FinsemError::DomainMismatch {
            expected: dom.to_string(),
            found: x.dom.to_string(),
        });
    }
    let m = dom.size();
    let c = cod.size();
    // Digit j (1-based) has weight c^(m - j).
    let digit = if c == 1 {
        0
    } else {
        let weight = c.pow((m - x.index) as u32);
        ((f.index - 1) / weight) % c
    };
    Ok(FinElem {
        dom: cod.clone(),
        index: digit + 1,
    })
}

/// The table of a function element, in canonical domain order.
pub fn fun_table(f: &FinElem) -> Result<Vec<Card>, FinsemError> {
    let dom = match f.dom.view() {
        DomView::Fun(d, _) => d.clone(),
        _ => {
            return Err(FinsemError::Shape {
                dom: f.dom.to_string(),
                msg: "not a function element".into(),
            })
        }
    };
    enumerate(&dom)
        .map(|x| apply_elem(f, &x).map(|r| r.index))
        .collect()
}

// ---------------------------------------------------------------------
// Lazy evaluation values
// ---------------------------------------------------------------------

/// A point of `⟦A⟧` over some base domain, in applicable form: atoms are
/// canonical elements of the base, functions are closures. Conversion to
/// and from canonical indices happens in [`materialize`] / [`reflect`].
#[derive(Clone)]
pub enum SemValue {
    Atom(FinElem),
    Unit,
    Pair(Rc<SemValue>, Rc<SemValue>),
    Fun(Rc<dyn Fn(&SemValue) -> SemValue>),
}

impl fmt::Debug for SemValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemValue::Atom(e) => write!(f, "Atom({e})"),
            SemValue::Unit => write!(f, "Unit"),
            SemValue::Pair(a, b) => write!(f, "Pair({a:?}, {b:?})"),
            SemValue::Fun(_) => write!(f, "Fun(..)"),
        }
    }
}

#[derive(Clone)]
struct VEnv(Option<Rc<VEnvNode>>);

struct VEnvNode {
    head: SemValue,
    tail: VEnv,
}

impl VEnv {
    fn from_slice(vals: &[SemValue]) -> VEnv {
        let mut env = VEnv(None);
        for v in vals {
            env = env.push(v.clone());
        }
        env
    }

    fn push(&self, v: SemValue) -> VEnv {
        VEnv(Some(Rc::new(VEnvNode {
            head: v,
            tail: self.clone(),
        })))
    }

    fn get(&self, i: usize) -> SemValue {
        let mut cur = self;
        let mut k = i;
        loop {
            let node = cur.0.as_ref().expect("value environment too short");
            if k == 0 {
                return node.head.clone();
            }
            k -= 1;
            cur = &node.tail;
        }
    }
}

/// Evaluate a term; `env` lists the values of the free variables in
/// context order (innermost binder last, matching [`crate::syntax::Ctx`]).
/// Total on well-typed input and never builds a table, so arbitrarily
/// large intermediate function spaces are fine.
pub fn eval_value(t: &Term, env: &[SemValue]) -> SemValue {
    ev(t, &VEnv::from_slice(env))
}

fn ev(t: &Term, env: &VEnv) -> SemValue {
    match t {
        Term::Var(i) => env.get(*i),
        Term::Lam(_, body) => {
            let body = body.clone();
            let env = env.clone();
            SemValue::Fun(Rc::new(move |v| ev(&body, &env.push(v.clone()))))
        }
        Term::App(f, a) => apply_value(&ev(f, env), &ev(a, env)),
        Term::Pair(a, b) => SemValue::Pair(Rc::new(ev(a, env)), Rc::new(ev(b, env))),
        Term::Fst(p) => match ev(p, env) {
            SemValue::Pair(a, _) => (*a).clone(),
            _ => panic!("Fst of non-pair value (ill-typed input)"),
        },
        Term::Snd(p) => match ev(p, env) {
            SemValue::Pair(_, b) => (*b).clone(),
            _ => panic!("Snd of non-pair value (ill-typed input)"),
        },
        Term::Unit => SemValue::Unit,
    }
}

pub fn apply_value(f: &SemValue, x: &SemValue) -> SemValue {
    match f {
        SemValue::Fun(g) => g(x),
        _ => panic!("applied a non-function value (ill-typed input)"),
    }
}

/// Convert a value into the canonical element of `dom`, building function
/// tables by enumerating argument domains. `dom` must have passed the
/// construction guard, so this is the point where sizes actually bite.
pub fn materialize(v: &SemValue, dom: &FinDomain) -> Result<FinElem, FinsemError> {
    match (v, dom.view()) {
        (SemValue::Atom(e), _) => {
            if e.dom == *dom {
                Ok(e.clone())
            } else {
                Err(FinsemError::DomainMismatch {
                    expected: dom.to_string(),
                    found: e.dom.to_string(),
                })
            }
        }
        (SemValue::Unit, DomView::Unit) => Ok(FinElem {
            dom: dom.clone(),
            index: 1,
        }),
        (SemValue::Pair(a, b), DomView::Prod(da, db)) => {
            let ea = materialize(a, da)?;
            let eb = materialize(b, db)?;
            let index = (ea.index - 1) * db.size() + eb.index;
            Ok(FinElem {
                dom: dom.clone(),
                index,
            })
        }
        (SemValue::Fun(g), DomView::Fun(da, dc)) => {
            let c = dc.size();
            let mut acc: Card = 0;
            for x in enumerate(da) {
                let r = materialize(&g(&reflect(&x)), dc)?;
                acc = acc * c + (r.index - 1);
            }
            Ok(FinElem {
                dom: dom.clone(),
                index: acc + 1,
            })
        }
        _ => Err(FinsemError::Shape {
            dom: dom.to_string(),
            msg: format!("{v:?}"),
        }),
    }
}

/// Expand a canonical element back into an applicable value. The inverse
/// of [`materialize`]; function elements become closures that materialize
/// their argument and look it up by radix arithmetic.
pub fn reflect(e: &FinElem) -> SemValue {
    match e.dom.view() {
        DomView::Base(_) => SemValue::Atom(e.clone()),
        DomView::Unit => SemValue::Unit,
        DomView::Prod(..) => {
            let (a, b) = split_elem(e).expect("product element");
            SemValue::Pair(Rc::new(reflect(&a)), Rc::new(reflect(&b)))
        }
        DomView::Fun(da, _) => {
            let e = e.clone();
            let da = da.clone();
            SemValue::Fun(Rc::new(move |v| {
                let x = materialize(v, &da)
                    .expect("argument value fits the function's domain");
                reflect(&apply_elem(&e, &x).expect("application within domain"))
            }))
        }
    }
}

/// Equality of two values at a common (guard-passing) domain.
pub fn value_eq(a: &SemValue, b: &SemValue, dom: &FinDomain) -> Result<bool, FinsemError> {
    Ok(materialize(a, dom)? == materialize(b, dom)?)
}

/// Evaluate to a canonical element: synthesize the type of `t`, interpret
/// it over `base`, and materialize. The environment gives canonical
/// elements for the free variables (context order).
pub fn eval_elem(
    t: &Term,
    ctx: &Ctx,
    base: &FinDomain,
    env: &[FinElem],
    max: Card,
) -> Result<FinElem, FinsemError> {
    let ty = synthesize(t, ctx)?;
    let dom = denote_type(&ty, base, max)?;
    let vals: Vec<SemValue> = env.iter().map(reflect).collect();
    materialize(&eval_value(t, &vals), &dom)
}

// ---------------------------------------------------------------------
// Base flattening: ⟦A⟧ over ⟦B⟧_D  ≅  ⟦A{o:=B}⟧ over D
// ---------------------------------------------------------------------

/// Transport a value of type `A` over the composite base `inner` (the
/// denotation of some type `B`) into the value of `A{o:=B}` over the base
/// underlying `inner`: atoms expand into structured values via [`reflect`].
pub fn flatten_value(a_ty: &SimpleType, v: &SemValue, inner: &FinDomain) -> SemValue {
    match (a_ty, v) {
        (SimpleType::Base, _) => {
            let e = materialize(v, inner).expect("base value fits the composite base");
            reflect(&e)
        }
        (SimpleType::Unit, _) => SemValue::Unit,
        (SimpleType::Prod(a, b), SemValue::Pair(x, y)) => SemValue::Pair(
            Rc::new(flatten_value(a, x, inner)),
            Rc::new(flatten_value(b, y, inner)),
        ),
        (SimpleType::Arrow(a, b), SemValue::Fun(_)) => {
            let (a, b) = (a.clone(), b.clone());
            let v = v.clone();
            let inner = inner.clone();
            SemValue::Fun(Rc::new(move |w| {
                let arg = unflatten_value(&a, w, &inner);
                flatten_value(&b, &apply_value(&v, &arg), &inner)
            }))
        }
        _ => panic!("value shape does not match type in flatten"),
    }
}

/// Carry a value of type `a_ty` over base `from` to the same type over
/// base `to`, where the two bases have equal size: base atoms map by
/// canonical index, and the connectives transport structurally. This is
/// the canonical isomorphism ⟦A⟧_from ≅ ⟦A⟧_to induced by enumeration.
pub fn transport_value(
    a_ty: &SimpleType,
    v: &SemValue,
    from: &FinDomain,
    to: &FinDomain,
) -> SemValue {
    assert_eq!(from.size(), to.size(), "transport needs equinumerous bases");
    match (a_ty, v) {
        // Values at base type over a structured domain may be atoms or
        // structural; materializing canonicalizes either shape.
        (SimpleType::Base, _) => {
            let e = materialize(v, from).expect("base value fits the source base");
            SemValue::Atom(elem_at(to, e.index()).expect("equal sizes"))
        }
        (SimpleType::Unit, _) => SemValue::Unit,
        (SimpleType::Prod(a, b), SemValue::Pair(x, y)) => SemValue::Pair(
            Rc::new(transport_value(a, x, from, to)),
            Rc::new(transport_value(b, y, from, to)),
        ),
        (SimpleType::Arrow(a, b), SemValue::Fun(_)) => {
            let (a, b) = (a.clone(), b.clone());
            let v = v.clone();
            let (from, to) = (from.clone(), to.clone());
            SemValue::Fun(Rc::new(move |w| {
                let arg = transport_value(&a, w, &to, &from);
                transport_value(&b, &apply_value(&v, &arg), &from, &to)
            }))
        }
        _ => panic!("value shape does not match type in transport"),
    }
}

/// Inverse transport: a value of `A{o:=B}` over the base of `inner`
/// becomes a value of `A` over the composite base `inner`, materializing
/// at the (guard-passing) `inner` domain at the base type.
pub fn unflatten_value(a_ty: &SimpleType, v: &SemValue, inner: &FinDomain) -> SemValue {
    match a_ty {
        SimpleType::Base => SemValue::Atom(
            materialize(v, inner).expect("value of the substituted type fits its denotation"),
        ),
        SimpleType::Unit => SemValue::Unit,
        SimpleType::Prod(a, b) => match v {
            SemValue::Pair(x, y) => SemValue::Pair(
                Rc::new(unflatten_value(a, x, inner)),
                Rc::new(unflatten_value(b, y, inner)),
            ),
            _ => panic!("non-pair at product type in unflatten"),
        },
        SimpleType::Arrow(a, b) => {
            let (a, b) = (a.clone(), b.clone());
            let v = v.clone();
            let inner = inner.clone();
            SemValue::Fun(Rc::new(move |x| {
                let arg = flatten_value(&a, x, &inner);
                unflatten_value(&b, &apply_value(&v, &arg), &inner)
            }))
        }
    }
}

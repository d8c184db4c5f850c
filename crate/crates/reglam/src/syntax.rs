//! Core syntax: simple types over a single base `o` with products and unit,
//! and λ-terms in de Bruijn form.
//!
//! Internally variables are de Bruijn indices (`Var(0)` is the innermost
//! binder); the surface syntax with named binders lives in [`crate::parse`]
//! and [`crate::print`]. Products are binary; the n-ary notation `A^n` and
//! the component projection `t.i` are sugar, expanded right-nested:
//! `A^3 = A * (A * A)` and `t.2` on a three-component product is
//! `Fst (Snd t)`.

use std::fmt;
use std::rc::Rc;

/// Simple types: the base type `o`, functions, binary products, and unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SimpleType {
    /// The single base type `o`.
    Base,
    /// `A -> B`.
    Arrow(Ty, Ty),
    /// `A * B`.
    Prod(Ty, Ty),
    /// The unit type `1`.
    Unit,
}

pub type Ty = Rc<SimpleType>;

pub fn base() -> Ty {
    Rc::new(SimpleType::Base)
}

pub fn unit_ty() -> Ty {
    Rc::new(SimpleType::Unit)
}

pub fn arrow(a: Ty, b: Ty) -> Ty {
    Rc::new(SimpleType::Arrow(a, b))
}

pub fn prod(a: Ty, b: Ty) -> Ty {
    Rc::new(SimpleType::Prod(a, b))
}

/// `A^n`, right-nested: `A^1 = A`, `A^n = A * A^(n-1)`. Requires `n >= 1`.
pub fn pow(a: &Ty, n: usize) -> Ty {
    assert!(n >= 1, "A^n requires n >= 1");
    let mut t = a.clone();
    for _ in 1..n {
        t = prod(a.clone(), t);
    }
    t
}

/// Curried arrow `A -> A -> ... -> B`.
pub fn arrows(args: &[Ty], result: Ty) -> Ty {
    args.iter()
        .rev()
        .fold(result, |acc, a| arrow(a.clone(), acc))
}

/// Components of the maximal right-spine unfolding: a non-product type has
/// one component (itself), `A * B` has `A` followed by the components of
/// `B`. This is the product shape that `t.i` projections address.
pub fn components(t: &Ty) -> Vec<Ty> {
    let mut comps = Vec::new();
    let mut cur = t.clone();
    loop {
        let (a, b) = match &*cur {
            SimpleType::Prod(a, b) => (a.clone(), b.clone()),
            _ => break,
        };
        comps.push(a);
        cur = b;
    }
    comps.push(cur);
    comps
}

impl SimpleType {
    /// Substitute `b` for the base type `o` everywhere: `A{o := B}`.
    pub fn subst_base(&self, b: &Ty) -> Ty {
        match self {
            SimpleType::Base => b.clone(),
            SimpleType::Arrow(s, t) => arrow(s.subst_base(b), t.subst_base(b)),
            SimpleType::Prod(s, t) => prod(s.subst_base(b), t.subst_base(b)),
            SimpleType::Unit => unit_ty(),
        }
    }
}

/// λ-terms in de Bruijn form. Binders carry their domain type, so every
/// subterm of a well-typed term has a unique synthesizable type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// de Bruijn index; 0 is the innermost binder.
    Var(usize),
    /// `\(x: A). t`
    Lam(Ty, Rc<Term>),
    App(Rc<Term>, Rc<Term>),
    Pair(Rc<Term>, Rc<Term>),
    /// First projection of a binary product.
    Fst(Rc<Term>),
    /// Second projection of a binary product.
    Snd(Rc<Term>),
    /// The unit value `()`.
    Unit,
}

pub type Tm = Rc<Term>;

pub fn var(i: usize) -> Tm {
    Rc::new(Term::Var(i))
}

pub fn lam(ty: Ty, body: Tm) -> Tm {
    Rc::new(Term::Lam(ty, body))
}

pub fn app(f: Tm, a: Tm) -> Tm {
    Rc::new(Term::App(f, a))
}

/// Left-nested application `f a1 a2 ... an`.
pub fn apps(f: Tm, args: impl IntoIterator<Item = Tm>) -> Tm {
    args.into_iter().fold(f, app)
}

pub fn pair(a: Tm, b: Tm) -> Tm {
    Rc::new(Term::Pair(a, b))
}

/// Right-nested tuple `<t1, t2, ..., tn>`; a one-element tuple is the
/// element itself. Requires a non-empty list.
pub fn tuple(items: Vec<Tm>) -> Tm {
    let mut it = items.into_iter().rev();
    let last = it.next().expect("tuple of at least one component");
    it.fold(last, |acc, x| pair(x, acc))
}

pub fn fst(t: Tm) -> Tm {
    Rc::new(Term::Fst(t))
}

pub fn snd(t: Tm) -> Tm {
    Rc::new(Term::Snd(t))
}

pub fn unit_tm() -> Tm {
    Rc::new(Term::Unit)
}

/// The projection chain selecting component `i` (1-based) of a term whose
/// type has `n` components in its maximal right-spine unfolding:
/// `Fst (Snd^(i-1) t)` for `i < n`, `Snd^(n-1) t` for `i = n`, and `t`
/// itself when `n = 1`.
pub fn select(t: Tm, i: usize, n: usize) -> Tm {
    assert!(1 <= i && i <= n, "component {i} out of 1..={n}");
    let mut cur = t;
    for _ in 1..i {
        cur = snd(cur);
    }
    if i < n {
        cur = fst(cur);
    }
    cur
}

impl Term {
    /// AST node count; type annotations are not counted.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Unit => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) | Term::Pair(f, a) => 1 + f.size() + a.size(),
            Term::Fst(t) | Term::Snd(t) => 1 + t.size(),
        }
    }

    /// Replace every binder annotation `A` by `A{o := B}`. Since the
    /// substitution leaves the term structure untouched, a well-typed
    /// `t : A` yields `t{o := B} : A{o := B}`.
    pub fn cast(&self, b: &Ty) -> Tm {
        match self {
            Term::Var(i) => var(*i),
            Term::Lam(ty, body) => lam(ty.subst_base(b), body.cast(b)),
            Term::App(f, a) => app(f.cast(b), a.cast(b)),
            Term::Pair(x, y) => pair(x.cast(b), y.cast(b)),
            Term::Fst(t) => fst(t.cast(b)),
            Term::Snd(t) => snd(t.cast(b)),
            Term::Unit => unit_tm(),
        }
    }
}

/// Typing context; the innermost binder is the **last** entry, so
/// `Var(i)` refers to `ctx[ctx.len() - 1 - i]`.
pub type Ctx = Vec<Ty>;

/// Untyped λ-terms with 1-based de Bruijn indices: `Var(1)` is the
/// innermost binder. A term is *scoped in* `n` when every variable points
/// either at a binder or at one of `n` ambient free variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UTerm {
    Var(usize),
    Abs(Rc<UTerm>),
    App(Rc<UTerm>, Rc<UTerm>),
}

pub type UTm = Rc<UTerm>;

pub fn uvar(i: usize) -> UTm {
    assert!(i >= 1, "untyped variables are 1-based");
    Rc::new(UTerm::Var(i))
}

pub fn uabs(body: UTm) -> UTm {
    Rc::new(UTerm::Abs(body))
}

pub fn uapp(f: UTm, a: UTm) -> UTm {
    Rc::new(UTerm::App(f, a))
}

impl UTerm {
    /// Number of constructors (nodes).
    pub fn size(&self) -> usize {
        match self {
            UTerm::Var(_) => 1,
            UTerm::Abs(b) => 1 + b.size(),
            UTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Is this term scoped in `n` free variables?
    pub fn scoped_in(&self, n: usize) -> bool {
        match self {
            UTerm::Var(i) => 1 <= *i && *i <= n,
            UTerm::Abs(b) => b.scoped_in(n + 1),
            UTerm::App(f, a) => f.scoped_in(n) && a.scoped_in(n),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::print::fmt_type(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_is_right_nested() {
        let o = base();
        assert_eq!(pow(&o, 1), o);
        assert_eq!(pow(&o, 3), prod(o.clone(), prod(o.clone(), o.clone())));
    }

    #[test]
    fn components_unfold_right_spine_maximally() {
        let o = base();
        let oo = arrow(o.clone(), o.clone());
        assert_eq!(components(&pow(&o, 3)).len(), 3);
        assert_eq!(components(&pow(&oo, 2)).len(), 2);
        // A left-nested product does not unfold its first component.
        let left = prod(prod(o.clone(), o.clone()), o.clone());
        assert_eq!(components(&left).len(), 2);
        assert_eq!(components(&o), vec![o.clone()]);
    }

    #[test]
    fn select_builds_projection_chains() {
        let x = var(0);
        assert_eq!(select(x.clone(), 1, 1), x);
        assert_eq!(select(x.clone(), 1, 2), fst(x.clone()));
        assert_eq!(select(x.clone(), 2, 2), snd(x.clone()));
        assert_eq!(select(x.clone(), 2, 3), fst(snd(x.clone())));
        assert_eq!(select(x.clone(), 3, 3), snd(snd(x)));
    }

    #[test]
    fn size_counts_ast_nodes() {
        // \(x: o). x  has two nodes; annotations don't count.
        let id = lam(base(), var(0));
        assert_eq!(id.size(), 2);
        let t = app(id.clone(), unit_tm());
        assert_eq!(t.size(), 4);
    }

    #[test]
    fn cast_rewrites_annotations_only() {
        let o = base();
        let bool_ty = arrow(prod(o.clone(), o.clone()), o.clone());
        // true = \(x: o*o). x.1
        let tru = lam(prod(o.clone(), o.clone()), fst(var(0)));
        let casted = tru.cast(&bool_ty);
        assert_eq!(
            casted,
            lam(prod(bool_ty.clone(), bool_ty.clone()), fst(var(0)))
        );
        assert_eq!(casted.size(), tru.size());
    }
}

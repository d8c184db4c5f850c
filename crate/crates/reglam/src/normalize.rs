//! βη-normalization by evaluation.
//!
//! Terms are evaluated into a semantic domain of closures, pairs, unit,
//! and neutral *term families* (functions from binder depth to syntax),
//! then read back type-directedly. Readback η-expands along the way, so
//! the result is the unique η-long β-normal form: every value of function
//! type is a λ, every value of product type a pair, every value of unit
//! type `()`, and neutral applications are fully applied. βη-equality is
//! therefore structural equality of normal forms (de Bruijn indices make
//! α-equivalence free).

use crate::syntax::{
    app, fst, lam, pair, snd, unit_tm, var, Ctx, SimpleType, Term, Tm, Ty,
};
use crate::typecheck::{synthesize, TypeError};
use std::rc::Rc;

/// Neutral syntax as a function of the number of binders in scope; de
/// Bruijn levels are resolved to indices only when the depth is known.
type TermFam = Rc<dyn Fn(usize) -> Tm>;

#[derive(Clone)]
enum V {
    Base(TermFam),
    Fun(Rc<dyn Fn(V) -> V>),
    Pair(Rc<V>, Rc<V>),
    Unit,
}

#[derive(Clone)]
struct Env(Option<Rc<EnvNode>>);

struct EnvNode {
    head: V,
    tail: Env,
}

impl Env {
    fn empty() -> Env {
        Env(None)
    }

    fn push(&self, v: V) -> Env {
        Env(Some(Rc::new(EnvNode {
            head: v,
            tail: self.clone(),
        })))
    }

    fn get(&self, i: usize) -> V {
        let mut cur = self;
        let mut k = i;
        loop {
            let node = cur.0.as_ref().expect("evaluation environment too short");
            if k == 0 {
                return node.head.clone();
            }
            k -= 1;
            cur = &node.tail;
        }
    }
}

fn eval(t: &Term, env: &Env) -> V {
    match t {
        Term::Var(i) => env.get(*i),
        Term::Lam(_, body) => {
            let body = body.clone();
            let env = env.clone();
            V::Fun(Rc::new(move |v| eval(&body, &env.push(v))))
        }
        Term::App(f, a) => apply(eval(f, env), eval(a, env)),
        Term::Pair(a, b) => V::Pair(Rc::new(eval(a, env)), Rc::new(eval(b, env))),
        Term::Fst(p) => match eval(p, env) {
            V::Pair(a, _) => (*a).clone(),
            _ => panic!("Fst of a non-pair value (ill-typed input)"),
        },
        Term::Snd(p) => match eval(p, env) {
            V::Pair(_, b) => (*b).clone(),
            _ => panic!("Snd of a non-pair value (ill-typed input)"),
        },
        Term::Unit => V::Unit,
    }
}

fn apply(f: V, a: V) -> V {
    match f {
        V::Fun(g) => g(a),
        _ => panic!("applied a non-function value (ill-typed input)"),
    }
}

fn var_fam(level: usize) -> TermFam {
    Rc::new(move |depth| var(depth - level - 1))
}

/// η-expand a neutral term family at the given type.
fn reflect(ty: &Ty, ne: TermFam) -> V {
    match &**ty {
        SimpleType::Base => V::Base(ne),
        SimpleType::Arrow(a, b) => {
            let (a, b) = (a.clone(), b.clone());
            V::Fun(Rc::new(move |v| {
                let arg = reify(&a, &v);
                let ne = ne.clone();
                reflect(&b, Rc::new(move |d| app(ne(d), arg(d))))
            }))
        }
        SimpleType::Prod(a, b) => {
            let ne2 = ne.clone();
            V::Pair(
                Rc::new(reflect(a, Rc::new(move |d| fst(ne(d))))),
                Rc::new(reflect(b, Rc::new(move |d| snd(ne2(d))))),
            )
        }
        SimpleType::Unit => V::Unit,
    }
}

/// Read a value back into η-long normal syntax at the given type.
fn reify(ty: &Ty, v: &V) -> TermFam {
    match &**ty {
        SimpleType::Base => match v {
            V::Base(f) => f.clone(),
            _ => panic!("non-neutral value at base type (ill-typed input)"),
        },
        SimpleType::Arrow(a, b) => {
            let g = match v {
                V::Fun(g) => g.clone(),
                _ => panic!("non-function value at arrow type (ill-typed input)"),
            };
            let (a, b) = (a.clone(), b.clone());
            Rc::new(move |d| {
                let fresh = reflect(&a, var_fam(d));
                let body = reify(&b, &g(fresh));
                lam(a.clone(), body(d + 1))
            })
        }
        SimpleType::Prod(a, b) => {
            let (x, y) = match v {
                V::Pair(x, y) => (x.clone(), y.clone()),
                _ => panic!("non-pair value at product type (ill-typed input)"),
            };
            let (fx, fy) = (reify(a, &x), reify(b, &y));
            Rc::new(move |d| pair(fx(d), fy(d)))
        }
        SimpleType::Unit => Rc::new(|_| unit_tm()),
    }
}

/// βη-normalize a term in context `ctx` (innermost binder last). Fails only
/// if the input is ill-typed.
pub fn normalize(t: &Term, ctx: &Ctx) -> Result<Tm, TypeError> {
    let ty = synthesize(t, ctx)?;
    let mut env = Env::empty();
    for (level, ann) in ctx.iter().enumerate() {
        env = env.push(reflect(ann, var_fam(level)));
    }
    Ok(reify(&ty, &eval(t, &env))(ctx.len()))
}

/// βη-equality of two terms of the same type, decided by comparing η-long
/// normal forms structurally.
pub fn beta_eta_equal(t: &Term, u: &Term, ctx: &Ctx) -> Result<bool, TypeError> {
    let ty_t = synthesize(t, ctx)?;
    let ty_u = synthesize(u, ctx)?;
    if ty_t != ty_u {
        return Err(TypeError::Mismatch {
            expected: ty_t,
            actual: ty_u,
            at: crate::typecheck::Location(Vec::new()),
        });
    }
    Ok(normalize(t, ctx)? == normalize(u, ctx)?)
}

/// Structural check that `t` is the η-long β-normal shape at `ty`: λ at
/// arrows, pairs at products, `()` at unit, and at base type a neutral
/// spine whose head is a variable and whose arguments are themselves
/// η-long normal. Independent of the normalizer; used as its test oracle.
pub fn is_eta_long_normal(t: &Term, ctx: &Ctx, ty: &Ty) -> bool {
    fn check(t: &Term, ctx: &mut Ctx, ty: &Ty) -> bool {
        match (&**ty, t) {
            (SimpleType::Arrow(a, b), Term::Lam(ann, body)) => {
                if ann != a {
                    return false;
                }
                ctx.push(a.clone());
                let ok = check(body, ctx, b);
                ctx.pop();
                ok
            }
            (SimpleType::Prod(a, b), Term::Pair(x, y)) => check(x, ctx, a) && check(y, ctx, b),
            (SimpleType::Unit, Term::Unit) => true,
            (SimpleType::Base, t) => matches!(neutral(t, ctx), Some(ref nt) if **nt == SimpleType::Base),
            _ => false,
        }
    }

    // A neutral spine synthesizes a type bottom-up; arguments must be
    // η-long normal at the domained type.
    fn neutral(t: &Term, ctx: &mut Ctx) -> Option<Ty> {
        match t {
            Term::Var(i) => ctx.len().checked_sub(1 + i).map(|k| ctx[k].clone()),
            Term::App(f, a) => {
                let ft = neutral(f, ctx)?;
                match &*ft {
                    SimpleType::Arrow(dom, cod) => {
                        if check(a, ctx, dom) {
                            Some(cod.clone())
                        } else {
                            None
                        }
                    }
                    _ => None,
                }
            }
            Term::Fst(p) => match &*neutral(p, ctx)? {
                SimpleType::Prod(a, _) => Some(a.clone()),
                _ => None,
            },
            Term::Snd(p) => match &*neutral(p, ctx)? {
                SimpleType::Prod(_, b) => Some(b.clone()),
                _ => None,
            },
            _ => None,
        }
    }

    let mut ctx = ctx.clone();
    check(t, &mut ctx, ty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::syntax::*;

    fn norm(src: &str) -> Tm {
        normalize(&parse_term(src).unwrap(), &Vec::new()).unwrap()
    }

    #[test]
    fn beta_reduces() {
        assert_eq!(
            norm("(\\(b: o*o -> o). b) (\\(x: o*o). x.1)"),
            norm("\\(x: o*o). x.1")
        );
    }

    #[test]
    fn eta_expands_functions() {
        // \f. f  at (o->o) -> o -> o  η-expands to \f. \x. f x.
        let t = norm("\\(f: o -> o). f");
        assert_eq!(t, parse_term("\\(f: o -> o). \\(x: o). f x").unwrap());
    }

    #[test]
    fn eta_expands_pairs_surjectively() {
        let t = norm("\\(p: o * o). p");
        assert_eq!(t, parse_term("\\(p: o * o). <p.1, p.2>").unwrap());
    }

    #[test]
    fn every_unit_term_normalizes_to_unit() {
        let t = norm("\\(u: 1). u");
        assert_eq!(t, parse_term("\\(u: 1). ()").unwrap());
        // Even a projection of unit type.
        let t = norm("\\(p: o * 1). p.2");
        assert_eq!(t, parse_term("\\(p: o * 1). ()").unwrap());
    }

    #[test]
    fn normal_forms_are_fixed_points() {
        for src in [
            "\\(x: o*o). x.1",
            "\\(a: (o -> o)^2). \\(e: o). a.2 (a.1 (a.2 (a.2 (a.1 e))))",
            "\\(f: (o -> o) -> o). f (\\(x: o). x)",
        ] {
            let once = norm(src);
            let twice = normalize(&once, &Vec::new()).unwrap();
            assert_eq!(once, twice, "{src}");
            let ty = crate::typecheck::synthesize(&once, &Vec::new()).unwrap();
            assert!(is_eta_long_normal(&once, &Vec::new(), &ty), "{src}");
        }
    }

    #[test]
    fn beta_eta_equality_is_decided_on_normal_forms() {
        let t = parse_term("\\(f: o -> o). f").unwrap();
        let u = parse_term("\\(f: o -> o). \\(x: o). f x").unwrap();
        assert!(beta_eta_equal(&t, &u, &Vec::new()).unwrap());
        let w = parse_term("\\(f: o -> o). \\(x: o). x").unwrap();
        assert!(!beta_eta_equal(&t, &w, &Vec::new()).unwrap());
        // Different types are an error, not inequality.
        let v = parse_term("\\(x: o). x").unwrap();
        assert!(beta_eta_equal(&t, &v, &Vec::new()).is_err());
    }

    #[test]
    fn normalizes_open_terms() {
        let ctx = vec![arrow(base(), base())];
        let t = parse_term_open_helper("x0", &ctx);
        let nf = normalize(&t, &ctx).unwrap();
        // x0 : o -> o  η-expands to  \(y: o). x0 y.
        assert_eq!(nf, lam(base(), app(var(1), var(0))));
    }

    fn parse_term_open_helper(src: &str, ctx: &Ctx) -> Tm {
        let free: Vec<(String, Ty)> = ctx
            .iter()
            .enumerate()
            .map(|(i, t)| (format!("x{i}"), t.clone()))
            .collect();
        let free_refs: Vec<(&str, Ty)> = free
            .iter()
            .map(|(n, t)| (n.as_str(), t.clone()))
            .collect();
        crate::parse::parse_term_with(src, &free_refs).unwrap()
    }

    #[test]
    fn subject_reduction_on_samples() {
        for src in [
            "(\\(p: (o -> o) * (o -> o)). p.2) <\\(x: o). x, \\(y: o). (\\(w: o). w) y>",
            "(\\(f: 1 -> o * o). <(f ()).2, (f ()).1>) (\\(u: 1). <(\\(z: o*o). z.1) <x0, x0>, x0>)",
        ] {
            // Messy but well-typed terms: normalization preserves the type.
            let ctx = vec![base()];
            let t = parse_term_open_helper(src, &ctx);
            let ty = crate::typecheck::synthesize(&t, &ctx).unwrap();
            let nf = normalize(&t, &ctx).unwrap();
            assert_eq!(crate::typecheck::synthesize(&nf, &ctx).unwrap(), ty);
            assert!(is_eta_long_normal(&nf, &ctx, &ty));
        }
    }
}

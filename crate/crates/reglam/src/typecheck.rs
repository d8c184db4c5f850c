//! Type synthesis for de Bruijn terms. Binders are annotated, so every
//! well-scoped term either synthesizes a unique type or fails with a
//! located error.

use crate::syntax::{arrow, prod, unit_ty, Ctx, SimpleType, Term, Ty};
use std::fmt;

/// Breadcrumb into a term, recorded on the way down so errors can point
/// at the offending subterm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    LamBody,
    AppFun,
    AppArg,
    PairLeft,
    PairRight,
    Proj,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::LamBody => "body",
            Step::AppFun => "fn",
            Step::AppArg => "arg",
            Step::PairLeft => "pair.1",
            Step::PairRight => "pair.2",
            Step::Proj => "proj",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location(pub Vec<Step>);

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("at the root");
        }
        f.write_str("at ")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("unbound variable {index} under {depth} binders, {at}")]
    UnboundVar {
        index: usize,
        depth: usize,
        at: Location,
    },
    #[error("type mismatch {at}: expected {expected}, found {actual}")]
    Mismatch {
        expected: Ty,
        actual: Ty,
        at: Location,
    },
    #[error("applied a term of non-function type {actual}, {at}")]
    NotAFunction { actual: Ty, at: Location },
    #[error("projected from a term of non-product type {actual}, {at}")]
    NotAProduct { actual: Ty, at: Location },
}

/// Synthesize the unique type of `t` in context `ctx` (innermost binder
/// last).
pub fn synthesize(t: &Term, ctx: &Ctx) -> Result<Ty, TypeError> {
    let mut local = ctx.clone();
    let mut path = Vec::new();
    synth(t, &mut local, &mut path)
}

/// Check that `t` has type `expected` in `ctx`.
pub fn typecheck(t: &Term, ctx: &Ctx, expected: &Ty) -> Result<(), TypeError> {
    let actual = synthesize(t, ctx)?;
    if actual != *expected {
        return Err(TypeError::Mismatch {
            expected: expected.clone(),
            actual,
            at: Location(Vec::new()),
        });
    }
    Ok(())
}

fn synth(t: &Term, ctx: &mut Ctx, path: &mut Vec<Step>) -> Result<Ty, TypeError> {
    match t {
        Term::Var(i) => match ctx.len().checked_sub(1 + i).map(|k| ctx[k].clone()) {
            Some(ty) => Ok(ty),
            None => Err(TypeError::UnboundVar {
                index: *i,
                depth: ctx.len(),
                at: Location(path.clone()),
            }),
        },
        Term::Lam(ann, body) => {
            ctx.push(ann.clone());
            path.push(Step::LamBody);
            let cod = synth(body, ctx, path);
            path.pop();
            ctx.pop();
            Ok(arrow(ann.clone(), cod?))
        }
        Term::App(f, a) => {
            path.push(Step::AppFun);
            let fun_ty = synth(f, ctx, path)?;
            path.pop();
            let (dom, cod) = match &*fun_ty {
                SimpleType::Arrow(dom, cod) => (dom.clone(), cod.clone()),
                _ => {
                    return Err(TypeError::NotAFunction {
                        actual: fun_ty,
                        at: Location(path.clone()),
                    })
                }
            };
            path.push(Step::AppArg);
            let arg_ty = synth(a, ctx, path)?;
            let res = if arg_ty == dom {
                Ok(cod)
            } else {
                Err(TypeError::Mismatch {
                    expected: dom,
                    actual: arg_ty,
                    at: Location(path.clone()),
                })
            };
            path.pop();
            res
        }
        Term::Pair(a, b) => {
            path.push(Step::PairLeft);
            let ta = synth(a, ctx, path)?;
            path.pop();
            path.push(Step::PairRight);
            let tb = synth(b, ctx, path)?;
            path.pop();
            Ok(prod(ta, tb))
        }
        Term::Fst(p) | Term::Snd(p) => {
            path.push(Step::Proj);
            let tp = synth(p, ctx, path)?;
            path.pop();
            match &*tp {
                SimpleType::Prod(a, b) => Ok(if matches!(t, Term::Fst(_)) {
                    a.clone()
                } else {
                    b.clone()
                }),
                _ => Err(TypeError::NotAProduct {
                    actual: tp,
                    at: Location(path.clone()),
                }),
            }
        }
        Term::Unit => Ok(unit_ty()),
    }
}

//! Rendering types and terms back into surface syntax.
//!
//! Printing is the inverse of parsing on everything this crate emits:
//! parsing the output reproduces the internal term exactly. Projection
//! chains are rendered as `t.i` against the maximal right-spine product
//! unfolding of the synthesized type of `t`, which is how the parser reads
//! them; right-nested pair spines print as n-ary tuples `<a, b, c>` and
//! right-nested equal products as powers `A^n` for the same reason.
//!
//! A term containing a *partial* projection chain (a bare `Snd` landing in
//! the middle of an n-ary product) has no surface form. Such terms are
//! never produced by normalization, encoding, or compilation; printing one
//! panics rather than emit text that would re-parse as a different term.

use crate::syntax::{components, Ctx, SimpleType, Term, Ty};
use crate::typecheck::synthesize;
use std::fmt;

pub fn print_type(t: &SimpleType) -> String {
    let mut s = String::new();
    go_ty(t, 0, &mut s);
    s
}

pub(crate) fn fmt_type(t: &SimpleType, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(&print_type(t))
}

// Precedence: 0 admits arrows, 1 admits products, 2 atoms only.
fn go_ty(t: &SimpleType, min: u8, out: &mut String) {
    match t {
        SimpleType::Base => out.push('o'),
        SimpleType::Unit => out.push('1'),
        SimpleType::Arrow(a, b) => {
            let paren = min > 0;
            if paren {
                out.push('(');
            }
            go_ty(a, 1, out);
            out.push_str(" -> ");
            go_ty(b, 0, out);
            if paren {
                out.push(')');
            }
        }
        SimpleType::Prod(a, b) => {
            let paren = min > 1;
            if paren {
                out.push('(');
            }
            let mut comps = vec![a.clone()];
            comps.extend(components(b));
            if comps.iter().all(|c| *c == comps[0]) {
                go_ty(&comps[0], 2, out);
                out.push('^');
                out.push_str(&comps.len().to_string());
            } else {
                // `*` is left-associative, so the left operand may be a bare
                // product but the right one must be parenthesized.
                go_ty(a, 1, out);
                out.push_str(" * ");
                go_ty(b, 2, out);
            }
            if paren {
                out.push(')');
            }
        }
    }
}

/// Print a closed term.
pub fn print_term(t: &Term) -> String {
    print_term_open(t, &Vec::new())
}

/// Print a term whose free variables are typed by `ctx` (innermost last);
/// free variables are named `x0, x1, ...` outermost first.
pub fn print_term_open(t: &Term, ctx: &Ctx) -> String {
    let mut names: Vec<String> = (0..ctx.len()).map(|i| format!("x{i}")).collect();
    let mut tys = ctx.clone();
    let mut out = String::new();
    go_tm(t, 0, &mut names, &mut tys, &mut out);
    out
}

// Precedence: 0 admits lambdas, 1 application spines, 2 atoms/postfix.
fn go_tm(t: &Term, min: u8, names: &mut Vec<String>, tys: &mut Ctx, out: &mut String) {
    match t {
        Term::Var(i) => match names.len().checked_sub(1 + i) {
            Some(k) => out.push_str(&names[k]),
            None => panic!("cannot print open term: variable {i} escapes the context"),
        },
        Term::Unit => out.push_str("()"),
        Term::Lam(ann, body) => {
            let paren = min > 0;
            if paren {
                out.push('(');
            }
            let name = format!("x{}", names.len());
            out.push_str("\\(");
            out.push_str(&name);
            out.push_str(": ");
            go_ty(ann, 0, out);
            out.push_str("). ");
            names.push(name);
            tys.push(ann.clone());
            go_tm(body, 0, names, tys, out);
            names.pop();
            tys.pop();
            if paren {
                out.push(')');
            }
        }
        Term::App(f, a) => {
            let paren = min > 1;
            if paren {
                out.push('(');
            }
            go_tm(f, 1, names, tys, out);
            out.push(' ');
            go_tm(a, 2, names, tys, out);
            if paren {
                out.push(')');
            }
        }
        Term::Pair(..) => {
            // Flatten the right-nested pair spine into an n-ary tuple.
            out.push('<');
            let mut cur = t;
            loop {
                match cur {
                    Term::Pair(a, b) => {
                        go_tm(a, 0, names, tys, out);
                        out.push_str(", ");
                        cur = b;
                    }
                    last => {
                        go_tm(last, 0, names, tys, out);
                        break;
                    }
                }
            }
            out.push('>');
        }
        Term::Fst(_) | Term::Snd(_) => {
            // Collect the chain outside-in, then decode it against the type
            // of the head into component indices, innermost step first.
            let mut steps = Vec::new(); // true = Snd
            let mut head = t;
            loop {
                match head {
                    Term::Fst(inner) => {
                        steps.push(false);
                        head = inner;
                    }
                    Term::Snd(inner) => {
                        steps.push(true);
                        head = inner;
                    }
                    _ => break,
                }
            }
            steps.reverse(); // application order: innermost first
            let head_ty = synthesize(head, tys)
                .expect("cannot print projection of an ill-typed term");
            let indices = decode_chain(&steps, &head_ty).unwrap_or_else(|| {
                panic!(
                    "term has no surface form: partial projection chain on {}",
                    print_type(&head_ty)
                )
            });
            go_tm(head, 2, names, tys, out);
            for i in indices {
                out.push('.');
                out.push_str(&i.to_string());
            }
        }
    }
}

/// Decode a binary projection chain (innermost step first, `true` = Snd)
/// into n-ary component indices, or `None` if the chain stops in the
/// middle of a product spine.
fn decode_chain(steps: &[bool], head_ty: &Ty) -> Option<Vec<usize>> {
    let mut indices = Vec::new();
    let mut ty = head_ty.clone();
    let mut rest = steps;
    while !rest.is_empty() {
        let comps = components(&ty);
        let n = comps.len();
        let snds = rest.iter().take_while(|s| **s).count();
        if snds == rest.len() {
            // Chain of Snds with nothing after: only complete if it reaches
            // the last component.
            if snds == n - 1 && n >= 2 {
                indices.push(n);
                return Some(indices);
            }
            return None;
        }
        // `rest[snds]` is a Fst selecting component snds+1, valid while the
        // spine is still a product there.
        if snds + 1 > n - 1 {
            return None;
        }
        indices.push(snds + 1);
        ty = comps[snds].clone();
        rest = &rest[snds + 1..];
    }
    Some(indices)
}

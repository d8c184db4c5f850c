//! Bounded-exhaustive enumeration of closed η-long β-normal terms.
//!
//! η-long normal forms have a rigid shape — λ at arrows, pairs at products,
//! `()` at unit, and at base type a variable-headed elimination spine — so
//! they can be enumerated directly by structural recursion without ever
//! generating a redex or a duplicate. Size is the AST node count (types are
//! not counted), matching [`crate::syntax::Term::size`].

use crate::syntax::{
    app, fst, lam, pair, snd, uabs, uapp, unit_tm, uvar, var, Ctx, SimpleType, Tm, Ty, UTm,
};

/// All closed η-long β-normal terms of type `ty` with at most `max_size`
/// AST nodes, each exactly once, in a fixed deterministic order.
pub fn enumerate_normal_terms(ty: &Ty, max_size: usize) -> Vec<Tm> {
    let mut ctx: Ctx = Vec::new();
    gen(&mut ctx, ty, max_size)
        .into_iter()
        .map(|(t, _)| t)
        .collect()
}

/// Normal terms paired with their exact size, in context.
fn gen(ctx: &mut Ctx, ty: &Ty, budget: usize) -> Vec<(Tm, usize)> {
    if budget == 0 {
        return Vec::new();
    }
    match &**ty {
        SimpleType::Arrow(a, b) => {
            ctx.push(a.clone());
            let bodies = gen(ctx, b, budget - 1);
            ctx.pop();
            bodies
                .into_iter()
                .map(|(t, s)| (lam(a.clone(), t), s + 1))
                .collect()
        }
        SimpleType::Prod(a, b) => {
            let mut out = Vec::new();
            // A pair costs 1 + left + right; the right side needs >= 1 node.
            if budget >= 3 {
                for (x, sx) in gen(ctx, a, budget - 2) {
                    for (y, sy) in gen(ctx, b, budget - 1 - sx) {
                        out.push((pair(x.clone(), y), 1 + sx + sy));
                    }
                }
            }
            out
        }
        SimpleType::Unit => vec![(unit_tm(), 1)],
        SimpleType::Base => {
            let mut out = Vec::new();
            // Eliminate each variable in scope down to base type; innermost
            // binders first for a stable order.
            for i in 0..ctx.len() {
                let head_ty = ctx[ctx.len() - 1 - i].clone();
                spine(ctx, &var(i), &head_ty, 1, budget, &mut out);
            }
            out
        }
    }
}

/// Extend the neutral `ne : ty` (already `used` nodes) by eliminations
/// until base type, collecting completed spines.
fn spine(
    ctx: &mut Ctx,
    ne: &Tm,
    ty: &Ty,
    used: usize,
    budget: usize,
    out: &mut Vec<(Tm, usize)>,
) {
    if used > budget {
        return;
    }
    match &**ty {
        SimpleType::Base => out.push((ne.clone(), used)),
        SimpleType::Arrow(a, b) => {
            if used + 1 < budget {
                for (arg, sa) in gen(ctx, a, budget - used - 1) {
                    spine(ctx, &app(ne.clone(), arg), b, used + 1 + sa, budget, out);
                }
            }
        }
        SimpleType::Prod(a, b) => {
            spine(ctx, &fst(ne.clone()), a, used + 1, budget, out);
            spine(ctx, &snd(ne.clone()), b, used + 1, budget, out);
        }
        // Unit cannot be eliminated to base type: dead end.
        SimpleType::Unit => {}
    }
}

/// All untyped terms scoped in `n` free variables with at most `max_size`
/// constructors, each exactly once, in a fixed deterministic order.
pub fn enumerate_scoped_terms(n: usize, max_size: usize) -> Vec<UTm> {
    fn go(n: usize, budget: usize) -> Vec<(UTm, usize)> {
        let mut out = Vec::new();
        if budget == 0 {
            return out;
        }
        for i in 1..=n {
            out.push((uvar(i), 1));
        }
        for (b, s) in go(n + 1, budget - 1) {
            out.push((uabs(b), s + 1));
        }
        if budget >= 3 {
            for (f, sf) in go(n, budget - 2) {
                for (a, sa) in go(n, budget - 1 - sf) {
                    out.push((uapp(f.clone(), a), 1 + sf + sa));
                }
            }
        }
        out
    }
    go(n, max_size).into_iter().map(|(t, _)| t).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::is_eta_long_normal;
    use crate::syntax::*;
    use std::collections::HashSet;

    #[test]
    fn bool_has_exactly_two_inhabitants() {
        let o = base();
        let bool_ty = arrow(prod(o.clone(), o.clone()), o.clone());
        let terms = enumerate_normal_terms(&bool_ty, 8);
        assert_eq!(
            terms,
            vec![
                lam(prod(o.clone(), o.clone()), fst(var(0))),
                lam(prod(o.clone(), o.clone()), snd(var(0))),
            ]
        );
    }

    #[test]
    fn unit_has_exactly_one_inhabitant() {
        assert_eq!(enumerate_normal_terms(&unit_ty(), 50), vec![unit_tm()]);
    }

    #[test]
    fn identity_is_the_only_closed_endofunction() {
        let oo = arrow(base(), base());
        assert_eq!(
            enumerate_normal_terms(&oo, 20),
            vec![lam(base(), var(0))]
        );
    }

    #[test]
    fn base_and_empty_products_are_uninhabited() {
        assert!(enumerate_normal_terms(&base(), 20).is_empty());
        // o * 1 requires a closed term of type o in its first component.
        assert!(enumerate_normal_terms(&prod(base(), unit_ty()), 20).is_empty());
    }

    #[test]
    fn terms_are_distinct_normal_and_within_bound() {
        let o = base();
        let oo = arrow(o.clone(), o.clone());
        for (ty, bound) in [
            (arrow(pow(&oo, 2), oo.clone()), 13),      // binary words
            (arrow(oo.clone(), oo.clone()), 11),       // unary words
            (arrow(prod(o.clone(), unit_ty()), prod(unit_ty(), o.clone())), 12),
            (arrow(arrow(oo.clone(), o.clone()), o.clone()), 12),
        ] {
            let terms = enumerate_normal_terms(&ty, bound);
            assert!(!terms.is_empty(), "{ty}");
            let mut seen = HashSet::new();
            for t in &terms {
                assert!(t.size() <= bound, "{t} exceeds {bound}");
                assert!(is_eta_long_normal(t, &Vec::new(), &ty), "{t} not normal at {ty}");
                assert!(seen.insert(t.clone()), "duplicate {t}");
            }
        }
    }

    #[test]
    fn unary_words_count_matches_size_bound() {
        // Church terms over a one-letter alphabet: \(a: o->o). \(e: o). a^j e
        // has size 2j + 3, so a bound of k admits words of length <= (k-3)/2.
        let oo = arrow(base(), base());
        let church_1 = arrow(oo.clone(), oo.clone());
        for k in [3usize, 5, 9, 19] {
            let expect = (k.saturating_sub(3)) / 2 + 1;
            assert_eq!(enumerate_normal_terms(&church_1, k).len(), expect, "bound {k}");
        }
    }

    #[test]
    fn scoped_terms_enumerate_exactly_once() {
        let ts = enumerate_scoped_terms(0, 7);
        let mut seen = HashSet::new();
        for t in &ts {
            assert!(t.size() <= 7);
            assert!(t.scoped_in(0));
            assert!(seen.insert(t.clone()));
        }
        // Closed terms need a leading abstraction; smallest is \x. x (2 nodes).
        assert!(ts.contains(&uabs(uvar(1))));
        assert!(!ts.is_empty());
        // One free variable: the new smallest term is the variable itself.
        assert!(enumerate_scoped_terms(1, 7).contains(&uvar(1)));
    }
}
